//! Grid sweeps and their reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use goss_zeta::compositions::{greedy, is_nonempty_bruteforce, optimal_bruteforce, Mode};
use goss_zeta::powersums::{predicted_degree, s_direct, s_prime_combinatorial, s_prime_direct, FqField};
use goss_zeta::{Error, FieldShape, Numeral};

use crate::args::Format;
use crate::records::{to_json, CompositionRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Empty,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pass: u64,
    pub empty: u64,
    pub fail: u64,
    pub skipped: u64,
}

impl Totals {
    fn count(outcomes: impl Iterator<Item = Outcome>) -> Totals {
        let mut t = Totals::default();
        for o in outcomes {
            match o {
                Outcome::Pass => t.pass += 1,
                Outcome::Empty => t.empty += 1,
                Outcome::Fail => t.fail += 1,
                Outcome::Skipped => t.skipped += 1,
            }
        }
        t
    }

    /// 1 on any failure, 3 when some cell was over budget, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.fail > 0 {
            1
        } else if self.skipped > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub shapes: Vec<String>,
    pub m_min: usize,
    pub m_max: usize,
    pub n_min: u128,
    pub n_max: u128,
    pub mode: String,
}

/// One `(q, m, N)` cell of the greedy/optimum sweep. Failures carry both
/// compositions so the cell can be replayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimumCell {
    pub p: u32,
    pub s: u32,
    pub m: usize,
    pub n: u128,
    pub outcome: Outcome,
    pub optimal: Option<CompositionRecord>,
    pub greedy: Option<CompositionRecord>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumGrid {
    pub shapes: Vec<String>,
    pub k_max: usize,
    pub n_max: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumCell {
    pub p: u32,
    pub s: u32,
    pub k: usize,
    pub n: u128,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport<G, C> {
    pub grid: G,
    pub cells: Vec<C>,
    pub totals: Totals,
    pub wall_clock_ms: u128,
}

pub fn shape_label(sh: FieldShape) -> String {
    format!("{}^{}", sh.p(), sh.s())
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

fn optimum_cell(sh: FieldShape, m: usize, nv: u128, mode: Mode, budget: u128) -> OptimumCell {
    let n = Numeral::from_u128(nv, sh.p());
    let mut cell = OptimumCell {
        p: sh.p(),
        s: sh.s(),
        m,
        n: nv,
        outcome: Outcome::Pass,
        optimal: None,
        greedy: None,
        detail: None,
    };
    let g = greedy(m, &n, sh, mode);
    cell.greedy = g.as_ref().ok().and_then(|c| CompositionRecord::new(c).ok());
    match optimal_bruteforce(m, &n, sh, mode, budget) {
        Err(Error::BudgetExceeded { needed, .. }) => {
            cell.outcome = Outcome::Skipped;
            cell.detail = Some(format!("{needed} splits"));
        }
        Err(Error::EmptySet) => {
            if g.is_ok() {
                cell.outcome = Outcome::Fail;
                cell.detail = Some("set is empty but greedy returned an element".into());
            } else {
                cell.outcome = Outcome::Empty;
            }
        }
        Err(e) => {
            cell.outcome = Outcome::Fail;
            cell.detail = Some(e.to_string());
        }
        Ok(opt) => {
            cell.optimal = CompositionRecord::new(&opt.composition).ok();
            let agrees = g.as_ref().ok() == Some(&opt.composition);
            if !opt.unique || !agrees {
                cell.outcome = Outcome::Fail;
                cell.detail = Some(if opt.unique {
                    "greedy differs".into()
                } else {
                    "optimum not unique".into()
                });
            }
        }
    }
    cell
}

pub fn sweep_optimum(
    shapes: &[FieldShape],
    grid: Grid,
    mode: Mode,
    budget: u128,
    jobs: usize,
) -> VerificationReport<Grid, OptimumCell> {
    let start = Instant::now();
    let cells: Vec<(FieldShape, usize, u128)> = shapes
        .iter()
        .flat_map(|&sh| (grid.m_min..=grid.m_max).flat_map(move |m| (grid.n_min..=grid.n_max).map(move |n| (sh, m, n))))
        .collect();
    let cells: Vec<OptimumCell> = pool(jobs).install(|| {
        cells
            .par_iter()
            .map(|&(sh, m, n)| optimum_cell(sh, m, n, mode, budget))
            .collect()
    });
    let totals = Totals::count(cells.iter().map(|c| c.outcome));
    VerificationReport {
        grid,
        cells,
        totals,
        wall_clock_ms: start.elapsed().as_millis(),
    }
}

fn power_sum_cell(field: &FqField, k: usize, nv: u128, budget: u128) -> PowerSumCell {
    let sh = field.shape();
    let mut cell = PowerSumCell {
        p: sh.p(),
        s: sh.s(),
        k,
        n: nv,
        outcome: Outcome::Pass,
        detail: None,
    };
    let n = Numeral::from_u128(nv, sh.p());
    let run = || -> goss_zeta::Result<Option<String>> {
        let direct = s_prime_direct(k, nv, field, budget)?;
        let below = s_direct(k, nv, field, budget)?;
        let comb = s_prime_combinatorial(k, &n, sh, budget)?;
        let u_nonempty = is_nonempty_bruteforce(k + 1, &n, sh, Mode::U, budget)?;
        let v_nonempty = k >= 1 && is_nonempty_bruteforce(k, &n, sh, Mode::V, budget)?;
        let divisible = nv.is_multiple_of(u128::from(sh.q_minus_one()));
        let predicted = predicted_degree(k, &n, sh)?;
        let mut problems = Vec::new();
        if direct.is_zero() == u_nonempty {
            problems.push("S'_k vanishing disagrees with U_{k+1}");
        }
        if below.is_zero() == (v_nonempty && divisible) {
            problems.push("S_k vanishing disagrees with V_k and divisibility");
        }
        if !direct.is_zero() && direct.degree() != predicted {
            problems.push("degree differs from the greedy prediction");
        }
        if direct != comb {
            problems.push("direct and multinomial sums differ");
        }
        Ok((!problems.is_empty()).then(|| problems.join("; ")))
    };
    match run() {
        Ok(None) => {}
        Ok(Some(msg)) => {
            cell.outcome = Outcome::Fail;
            cell.detail = Some(msg);
        }
        Err(Error::BudgetExceeded { needed, .. }) => {
            cell.outcome = Outcome::Skipped;
            cell.detail = Some(format!("needs {needed}"));
        }
        Err(e) => {
            cell.outcome = Outcome::Fail;
            cell.detail = Some(e.to_string());
        }
    }
    cell
}

pub fn sweep_power_sums(
    fields: &[FqField],
    grid: PowerSumGrid,
    budget: u128,
    jobs: usize,
) -> VerificationReport<PowerSumGrid, PowerSumCell> {
    let start = Instant::now();
    let cells: Vec<(usize, usize, u128)> = (0..fields.len())
        .flat_map(|f| (0..=grid.k_max).flat_map(move |k| (1..=grid.n_max).map(move |n| (f, k, n))))
        .collect();
    let cells: Vec<PowerSumCell> = pool(jobs).install(|| {
        cells
            .par_iter()
            .map(|&(f, k, n)| power_sum_cell(&fields[f], k, n, budget))
            .collect()
    });
    let totals = Totals::count(cells.iter().map(|c| c.outcome));
    VerificationReport {
        grid,
        cells,
        totals,
        wall_clock_ms: start.elapsed().as_millis(),
    }
}

fn table_totals(t: &Totals, ms: u128) -> String {
    format!(
        "pass {}  empty {}  fail {}  skipped {}  ({ms} ms)\n",
        t.pass, t.empty, t.fail, t.skipped
    )
}

fn opt_parts(r: &Option<CompositionRecord>) -> String {
    r.as_ref().map(|c| crate::records::join(&c.parts)).unwrap_or_default()
}

pub fn render_optimum(report: &VerificationReport<Grid, OptimumCell>, format: Format) -> String {
    match format {
        Format::Json => to_json(report) + "\n",
        Format::Csv => {
            let mut out = String::from("p,s,m,n,outcome,optimal,greedy\n");
            for c in &report.cells {
                out += &format!(
                    "{},{},{},{},{},{},{}\n",
                    c.p,
                    c.s,
                    c.m,
                    c.n,
                    to_json(&c.outcome).trim_matches('"'),
                    opt_parts(&c.optimal),
                    opt_parts(&c.greedy)
                );
            }
            out
        }
        Format::Table => {
            let g = &report.grid;
            let mut out = format!(
                "q in {{{}}}, m in {}..={}, N in {}..={}, mode {}\n",
                g.shapes.join(", "),
                g.m_min,
                g.m_max,
                g.n_min,
                g.n_max,
                g.mode
            );
            for c in report.cells.iter().filter(|c| c.outcome == Outcome::Fail) {
                out += &format!(
                    "FAIL q={}^{} m={} N={}: optimal {} greedy {} ({})\n",
                    c.p,
                    c.s,
                    c.m,
                    c.n,
                    c.optimal.as_ref().map_or("-".into(), |r| r.table_line()),
                    c.greedy.as_ref().map_or("-".into(), |r| r.table_line()),
                    c.detail.as_deref().unwrap_or("")
                );
            }
            if report.cells.len() == 1 {
                if let Some(r) = report.cells[0]
                    .greedy
                    .as_ref()
                    .filter(|_| report.cells[0].outcome == Outcome::Pass)
                {
                    out += &format!("witness {}\n", r.table_line());
                }
            }
            out + &table_totals(&report.totals, report.wall_clock_ms)
        }
    }
}

pub fn render_power_sums(report: &VerificationReport<PowerSumGrid, PowerSumCell>, format: Format) -> String {
    match format {
        Format::Json => to_json(report) + "\n",
        Format::Csv => {
            let mut out = String::from("p,s,k,n,outcome,detail\n");
            for c in &report.cells {
                out += &format!(
                    "{},{},{},{},{},{}\n",
                    c.p,
                    c.s,
                    c.k,
                    c.n,
                    to_json(&c.outcome).trim_matches('"'),
                    c.detail.as_deref().unwrap_or("")
                );
            }
            out
        }
        Format::Table => {
            let g = &report.grid;
            let mut out = format!(
                "q in {{{}}}, k in 0..={}, N in 1..={}\n",
                g.shapes.join(", "),
                g.k_max,
                g.n_max
            );
            for c in report.cells.iter().filter(|c| c.outcome == Outcome::Fail) {
                out += &format!(
                    "FAIL q={}^{} k={} N={}: {}\n",
                    c.p,
                    c.s,
                    c.k,
                    c.n,
                    c.detail.as_deref().unwrap_or("")
                );
            }
            out + &table_totals(&report.totals, report.wall_clock_ms)
        }
    }
}
