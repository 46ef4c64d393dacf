use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use goss_zeta::compositions::{enumerate, greedy, optimal_bruteforce};
use goss_zeta::lattice::{in_frak_j, in_i_m, in_j_m, in_j_m_i, scaled_inverse_coords};
use goss_zeta::powersums::{predicted_degree, s_prime_combinatorial, s_prime_direct, FqField};
use goss_zeta::zeta::{newton_polygon, PadicExponent, StabilizeOptions};
use goss_zeta::{DigitVector, Error, FieldShape, Mode, Numeral};

use crate::args::{CompositionArgs, Format, GridArgs, ModeArg};
use crate::records::{render_flat, to_json, CompositionRecord};
use crate::report::{
    render_optimum, render_power_sums, shape_label, sweep_optimum, sweep_power_sums, Grid, PowerSumGrid,
};

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub shape: FieldShape,
    pub budget: u128,
    pub jobs: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

/// What a command produced: the text for stdout (or `--output`) and the
/// exit status.
#[derive(Debug)]
pub struct Done {
    pub text: String,
    pub code: u8,
    pub note: Option<String>,
}

impl Done {
    fn ok(text: String) -> Done {
        Done {
            text,
            code: 0,
            note: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 2 empty, 3 over budget, 4 inconclusive, 5 bad input, 1 anything that
    /// points at a defect.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::EmptySet) => 2,
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::Inconclusive { .. }) => 4,
            CliError::Core(Error::InvariantViolation(_)) => 1,
            CliError::Core(_) | CliError::Usage(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

type CmdResult = Result<Done, CliError>;

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::V => "V",
        Mode::U => "U",
    }
}

fn positive_m(m: usize) -> Result<(), CliError> {
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    Ok(())
}

pub fn enumerate_cmd(cfg: &RunConfig, args: &CompositionArgs) -> CmdResult {
    positive_m(args.m)?;
    let n = Numeral::parse(&args.n, cfg.shape.p())?;
    let mode = Mode::from(args.mode);
    let all = enumerate(args.m, &n, cfg.shape, mode, cfg.budget)?;
    let records = all
        .iter()
        .map(CompositionRecord::new)
        .collect::<goss_zeta::Result<Vec<_>>>()?;
    let mut text = String::new();
    match cfg.format {
        Format::Json => records.iter().for_each(|r| text += &(to_json(r) + "\n")),
        Format::Csv => {
            text += CompositionRecord::CSV_HEADER;
            text.push('\n');
            records.iter().for_each(|r| text += &(r.csv_row() + "\n"));
        }
        Format::Table => records.iter().for_each(|r| text += &(r.table_line() + "\n")),
    }
    if records.is_empty() {
        let note = format!("{}_{}({}) is empty", mode_name(mode), args.m, n.labelled());
        return Ok(Done {
            text,
            code: 2,
            note: Some(note),
        });
    }
    Ok(Done::ok(text))
}

fn render_composition(record: &CompositionRecord, format: Format) -> String {
    match format {
        Format::Json => to_json(record) + "\n",
        Format::Csv => format!("{}\n{}\n", CompositionRecord::CSV_HEADER, record.csv_row()),
        Format::Table => record.table_line() + "\n",
    }
}

pub fn greedy_cmd(cfg: &RunConfig, args: &CompositionArgs) -> CmdResult {
    positive_m(args.m)?;
    let n = Numeral::parse(&args.n, cfg.shape.p())?;
    let g = greedy(args.m, &n, cfg.shape, args.mode.into())?;
    Ok(Done::ok(render_composition(&CompositionRecord::new(&g)?, cfg.format)))
}

#[derive(Debug, Serialize, Deserialize)]
struct OptimalRecord {
    optimal: CompositionRecord,
    greedy: Option<CompositionRecord>,
    unique: bool,
    searched: u128,
    agrees: bool,
}

#[derive(Serialize)]
struct OptimalRow {
    optimal: String,
    greedy: String,
    unique: bool,
    searched: u128,
    agrees: bool,
}

pub fn optimal_cmd(cfg: &RunConfig, args: &CompositionArgs) -> CmdResult {
    positive_m(args.m)?;
    let n = Numeral::parse(&args.n, cfg.shape.p())?;
    let mode = Mode::from(args.mode);
    let opt = optimal_bruteforce(args.m, &n, cfg.shape, mode, cfg.budget)?;
    let g = greedy(args.m, &n, cfg.shape, mode).ok();
    let record = OptimalRecord {
        optimal: CompositionRecord::new(&opt.composition)?,
        greedy: g.as_ref().map(CompositionRecord::new).transpose()?,
        unique: opt.unique,
        searched: opt.searched,
        agrees: g.as_ref() == Some(&opt.composition),
    };
    let text = match cfg.format {
        Format::Json => to_json(&record) + "\n",
        Format::Csv | Format::Table => {
            let cell = |r: &CompositionRecord| match cfg.format {
                Format::Csv => crate::records::join(&r.parts),
                _ => r.table_line(),
            };
            let row = OptimalRow {
                optimal: cell(&record.optimal),
                greedy: record.greedy.as_ref().map(cell).unwrap_or_default(),
                unique: record.unique,
                searched: record.searched,
                agrees: record.agrees,
            };
            render_flat(&row, cfg.format)
        }
    };
    let code = if record.unique && record.agrees { 0 } else { 1 };
    Ok(Done { text, code, note: None })
}

#[derive(Debug, Serialize, Deserialize)]
struct MemberRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<String>,
    gamma: Vec<u64>,
    m: usize,
    numerators: Vec<i128>,
    denominator: i128,
    in_frak_j: bool,
    in_i_m: bool,
    in_j_m: bool,
    j_m_classes: Vec<usize>,
}

pub fn member_cmd(cfg: &RunConfig, n: Option<&str>, gamma: Option<&str>, m: usize) -> CmdResult {
    positive_m(m)?;
    let sh = cfg.shape;
    let (label, u) = match (n, gamma) {
        (Some(text), _) => {
            let n = Numeral::parse(text, sh.p())?;
            (Some(n.labelled()), n.gamma(sh))
        }
        (None, Some(text)) => {
            let coords = text
                .split(',')
                .map(|c| c.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("cannot read --gamma {text:?}")))?;
            if coords.len() != sh.s() as usize {
                return Err(CliError::Usage(format!(
                    "--gamma needs {} entries, got {}",
                    sh.s(),
                    coords.len()
                )));
            }
            (None, DigitVector::new(coords))
        }
        (None, None) => return Err(CliError::Usage("give --n or --gamma".into())),
    };
    let c = scaled_inverse_coords(&u, sh);
    let record = MemberRecord {
        n: label,
        gamma: u.coords().to_vec(),
        m,
        numerators: c.numerators().to_vec(),
        denominator: c.denominator(),
        in_frak_j: in_frak_j(&u, sh),
        in_i_m: in_i_m(&u, m, sh),
        in_j_m: in_j_m(&u, m, sh),
        j_m_classes: (0..sh.s() as usize).filter(|&i| in_j_m_i(&u, m, i, sh)).collect(),
    };
    Ok(Done::ok(render_flat(&record, cfg.format)))
}

#[derive(Debug, Serialize, Deserialize)]
struct PowerSumRecord {
    p: u32,
    s: u32,
    k: usize,
    n: u128,
    direct: String,
    combinatorial: String,
    /// `null` for the zero polynomial.
    degree: Option<u128>,
    predicted_degree: Option<u128>,
    u_nonempty: bool,
    agree_value: bool,
    agree_degree: bool,
    agree_vanishing: bool,
    agree: bool,
}

pub fn power_sum_cmd(cfg: &RunConfig, k: usize, nv: u128) -> CmdResult {
    let sh = cfg.shape;
    if nv == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let field = FqField::new(sh)?;
    let n = Numeral::from_u128(nv, sh.p());
    let direct = s_prime_direct(k, nv, &field, cfg.budget)?;
    let comb = s_prime_combinatorial(k, &n, sh, cfg.budget)?;
    let predicted = predicted_degree(k, &n, sh)?;
    let u_nonempty = greedy(k + 1, &n, sh, Mode::U).is_ok();
    let agree_value = direct == comb;
    let agree_degree = direct.degree() == predicted;
    let agree_vanishing = direct.is_zero() != u_nonempty;
    let record = PowerSumRecord {
        p: sh.p(),
        s: sh.s(),
        k,
        n: nv,
        direct: field.render_poly(&direct),
        combinatorial: field.render_poly(&comb),
        degree: direct.degree().finite(),
        predicted_degree: predicted.finite(),
        u_nonempty,
        agree_value,
        agree_degree,
        agree_vanishing,
        agree: agree_value && agree_degree && agree_vanishing,
    };
    let code = if record.agree { 0 } else { 1 };
    Ok(Done {
        text: render_flat(&record, cfg.format),
        code,
        note: None,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct PolygonRecord {
    p: u32,
    s: u32,
    y: String,
    points: Vec<(usize, u128)>,
    slopes: Vec<i128>,
    hull_ok: bool,
    degree: Option<usize>,
    thresholds: Option<Vec<usize>>,
}

pub struct PolygonArgs<'a> {
    pub y: &'a str,
    pub max_m: usize,
    pub t_cap: usize,
    pub window: Option<usize>,
    pub svg: Option<&'a PathBuf>,
}

pub fn newton_polygon_cmd(cfg: &RunConfig, args: PolygonArgs<'_>) -> CmdResult {
    let sh = cfg.shape;
    if args.window == Some(0) {
        return Err(CliError::Usage("--window must be positive".into()));
    }
    let y = PadicExponent::parse(args.y, sh.p())?;
    let opts = StabilizeOptions {
        window: args.window,
        t_cap: args.t_cap,
    };
    let poly = newton_polygon(&y, args.max_m, sh, opts)?;
    if let Some(path) = args.svg {
        std::fs::write(path, poly.to_svg())?;
    }
    let record = PolygonRecord {
        p: sh.p(),
        s: sh.s(),
        y: y.to_string(),
        points: poly.points.clone(),
        slopes: poly.slopes(),
        hull_ok: poly.hull_ok(),
        degree: poly.degree,
        thresholds: poly.thresholds.clone(),
    };
    let text = match cfg.format {
        Format::Json => to_json(&record) + "\n",
        Format::Csv => poly.to_csv(),
        Format::Table => {
            let mut out = format!("y = {} over F_{}\n m  v_m  slope  t_m\n", record.y, sh.q());
            for (i, &(m, v)) in record.points.iter().enumerate() {
                let slope = if i == 0 {
                    "-".to_string()
                } else {
                    record.slopes[i - 1].to_string()
                };
                let t = record.thresholds.as_ref().map_or("-".to_string(), |t| t[i].to_string());
                out += &format!("{m:>2}  {v:>3}  {slope:>5}  {t:>3}\n");
            }
            let degree = record.degree.map_or("-".to_string(), |d| d.to_string());
            out += &format!(
                "degree {degree}\nhull {}\n",
                if record.hull_ok { "ok" } else { "FAILED" }
            );
            out
        }
    };
    let code = if record.hull_ok { 0 } else { 1 };
    Ok(Done { text, code, note: None })
}

/// Reads `P^S`, or a prime power `q` written plainly.
pub fn parse_shape(text: &str) -> Result<FieldShape, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "cannot read field shape {text:?}; expected P^S or a prime power"
        ))
    };
    if let Some((p, s)) = text.split_once('^') {
        let p = p.trim().parse().map_err(|_| bad())?;
        let s = s.trim().parse().map_err(|_| bad())?;
        return Ok(FieldShape::new(p, s)?);
    }
    let q: u64 = text.trim().parse().map_err(|_| bad())?;
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(bad)?;
    let mut s = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        s += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok(FieldShape::new(u32::try_from(p).map_err(|_| bad())?, s)?)
}

fn shapes_or_default(cfg: &RunConfig, texts: &[String]) -> Result<Vec<FieldShape>, CliError> {
    if texts.is_empty() {
        return Ok(vec![cfg.shape]);
    }
    texts.iter().map(|t| parse_shape(t)).collect()
}

fn range<T: Copy + PartialOrd + std::fmt::Display>(
    single: Option<T>,
    lo: Option<T>,
    hi: Option<T>,
    defaults: (T, T),
    least: T,
    name: &str,
) -> Result<(T, T), CliError> {
    let (lo, hi) = match single {
        Some(v) => (v, v),
        None => (lo.unwrap_or(defaults.0), hi.unwrap_or(defaults.1)),
    };
    if lo < least || hi < lo {
        return Err(CliError::Usage(format!("empty or invalid range {name} in {lo}..={hi}")));
    }
    Ok((lo, hi))
}

pub fn verify_optimum_cmd(cfg: &RunConfig, grid: &GridArgs, mode: ModeArg) -> CmdResult {
    let shapes = shapes_or_default(cfg, &grid.shapes)?;
    let (m_min, m_max) = range(grid.m, grid.m_min, grid.m_max, (1, 4), 1, "m")?;
    let (n_min, n_max) = range(grid.n, grid.n_min, grid.n_max, (1, 200), 1, "N")?;
    let mode = Mode::from(mode);
    let description = Grid {
        shapes: shapes.iter().map(|&s| shape_label(s)).collect(),
        m_min,
        m_max,
        n_min,
        n_max,
        mode: mode_name(mode).into(),
    };
    let report = sweep_optimum(&shapes, description, mode, cfg.budget, cfg.jobs);
    Ok(Done {
        text: render_optimum(&report, cfg.format),
        code: report.totals.exit_code(),
        note: None,
    })
}

pub fn verify_power_sums_cmd(cfg: &RunConfig, shapes: &[String], k_max: usize, n_max: u128) -> CmdResult {
    let shapes = shapes_or_default(cfg, shapes)?;
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be positive".into()));
    }
    let fields = shapes
        .iter()
        .map(|&s| FqField::new(s))
        .collect::<goss_zeta::Result<Vec<_>>>()?;
    let description = PowerSumGrid {
        shapes: shapes.iter().map(|&s| shape_label(s)).collect(),
        k_max,
        n_max,
    };
    let report = sweep_power_sums(&fields, description, cfg.budget, cfg.jobs);
    Ok(Done {
        text: render_power_sums(&report, cfg.format),
        code: report.totals.exit_code(),
        note: None,
    })
}
