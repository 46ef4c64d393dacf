//! Newton polygons of `ζ(x, -y)`.
//!
//! The coefficient of `x^{-m}` has valuation `v_m(y)`, read off the greedy
//! element `G` of `U_{m+1}(y)` as `m G_1 + (m-1) G_2 + … + G_m`. For a
//! positive integer `y` this is exact. For `y ∈ Z_p` given by an eventually
//! periodic digit stream we follow the truncations `ỹ(t)` until the value
//! settles, tracking the quantity `ỹ(t) - G_{m+1}` that can only decrease.

use std::fmt;
use std::fmt::Write as _;

use crate::compositions::{greedy, Composition, Mode};
use crate::error::{Error, Result};
use crate::numerals::{FieldShape, Numeral};

/// A `p`-adic exponent `y`: either a nonnegative integer or an eventually
/// periodic digit stream `y_0, y_1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PadicExponent {
    Integer(Numeral),
    Periodic {
        p: u32,
        preperiod: Vec<u32>,
        period: Vec<u32>,
    },
}

fn parse_digits(text: &str, p: u32) -> Result<Vec<u32>> {
    let bad = || Error::InvalidExponent(format!("bad digit string {text:?} for p = {p}"));
    let digits: Vec<u32> = if text.contains(',') {
        text.split(',')
            .map(|d| d.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    if digits.iter().any(|&d| d >= p) {
        return Err(bad());
    }
    Ok(digits)
}

fn render_digits(digits: &[u32], p: u32) -> String {
    let sep = if p > 10 { "," } else { "" };
    digits.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

impl PadicExponent {
    pub fn integer(n: Numeral) -> Self {
        PadicExponent::Integer(n)
    }

    /// The stream `preperiod, period, period, …`. A zero period gives back
    /// an ordinary integer.
    pub fn periodic(p: u32, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|&d| d >= p) {
            return Err(Error::InvalidExponent(format!("digits must lie in [0, {}]", p - 1)));
        }
        if period.is_empty() {
            return Err(Error::InvalidExponent("empty period".into()));
        }
        if period.iter().all(|&d| d == 0) {
            return Ok(PadicExponent::Integer(Numeral::from_digits(p, preperiod)?));
        }
        Ok(PadicExponent::Periodic { p, preperiod, period })
    }

    /// `-n` as a `p`-adic integer: `p^L - n` followed by all `(p-1)`s.
    pub fn negative(n: &Numeral) -> Self {
        let p = n.base();
        if n.is_zero() {
            return PadicExponent::Integer(n.clone());
        }
        let len = n.len();
        let complement = Numeral::power(p, len).checked_sub(n).expect("p^len exceeds n");
        let mut pre = complement.digits().to_vec();
        pre.resize(len, 0);
        PadicExponent::Periodic {
            p,
            preperiod: pre,
            period: vec![p - 1],
        }
    }

    /// Accepts a decimal integer (possibly negative), a base-`p` numeral such
    /// as `11212_3`, or a stream `pre:period` with both blocks written from
    /// `y_0` upward. Blocks use one character per digit, or commas between
    /// digits when `p > 10`.
    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let text = text.trim();
        if let Some((pre, per)) = text.split_once(':') {
            return PadicExponent::periodic(p, parse_digits(pre, p)?, parse_digits(per, p)?);
        }
        if let Some(rest) = text.strip_prefix('-') {
            let n = Numeral::parse(rest, p).map_err(|e| Error::InvalidExponent(e.to_string()))?;
            return Ok(PadicExponent::negative(&n));
        }
        Numeral::parse(text, p)
            .map(PadicExponent::Integer)
            .map_err(|e| Error::InvalidExponent(e.to_string()))
    }

    pub fn base(&self) -> u32 {
        match self {
            PadicExponent::Integer(n) => n.base(),
            PadicExponent::Periodic { p, .. } => *p,
        }
    }

    pub fn as_integer(&self) -> Option<&Numeral> {
        match self {
            PadicExponent::Integer(n) => Some(n),
            PadicExponent::Periodic { .. } => None,
        }
    }

    pub fn period_len(&self) -> usize {
        match self {
            PadicExponent::Integer(_) => 0,
            PadicExponent::Periodic { period, .. } => period.len(),
        }
    }

    /// `y_i`.
    pub fn digit(&self, i: usize) -> u32 {
        match self {
            PadicExponent::Integer(n) => n.digit(i),
            PadicExponent::Periodic { preperiod, period, .. } => match preperiod.get(i) {
                Some(&d) => d,
                None => period[(i - preperiod.len()) % period.len()],
            },
        }
    }
}

impl fmt::Display for PadicExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicExponent::Integer(n) => write!(f, "{n}"),
            PadicExponent::Periodic { p, preperiod, period } => {
                write!(f, "{}:{}", render_digits(preperiod, *p), render_digits(period, *p))
            }
        }
    }
}

/// `ỹ(t) = y_0 + y_1 p + … + y_t p^t`.
pub fn truncation(y: &PadicExponent, t: usize) -> Numeral {
    let digits = (0..=t).map(|i| y.digit(i)).collect();
    Numeral::from_digits(y.base(), digits).expect("stream digits are below p")
}

/// A coefficient valuation; `Infinite` marks a vanishing coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u128),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u128> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `m G_1 + (m-1) G_2 + … + 1 G_m` for the first `m` parts of `g`.
fn prefix_valuation(g: &Composition, m: usize) -> Result<u128> {
    g.parts()[..m].iter().enumerate().try_fold(0u128, |acc, (i, x)| {
        ((m - i) as u128)
            .checked_mul(x.to_u128()?)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow)
    })
}

/// `v_m(y)` for an integer `y ≥ 0`, from the greedy element of `U_{m+1}(y)`.
pub fn valuation_v(m: usize, y: &Numeral, shape: FieldShape) -> Result<Valuation> {
    if m == 0 {
        return Ok(Valuation::Finite(0));
    }
    match greedy(m + 1, y, shape, Mode::U) {
        Ok(g) => prefix_valuation(&g, m).map(Valuation::Finite),
        Err(Error::EmptySet) => Ok(Valuation::Infinite),
        Err(e) => Err(e),
    }
}

/// A truncation threshold `t'` together with a member of `U_m(ỹ(t'))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationWitness {
    pub t: usize,
    pub composition: Composition,
    /// The residue class whose powers fill the first `m - 1` parts.
    pub class: u32,
}

/// Classes `h` in which the stream has infinitely many nonzero digits.
fn recurring_classes(y: &PadicExponent, shape: FieldShape) -> Vec<u32> {
    let s = shape.s() as usize;
    let PadicExponent::Periodic { preperiod, period, .. } = y else {
        return Vec::new();
    };
    let start = preperiod.len();
    let mut classes: Vec<u32> = (start..start + period.len() * s)
        .filter(|&i| y.digit(i) != 0)
        .map(|i| (i % s) as u32)
        .collect();
    classes.sort_unstable();
    classes.dedup();
    debug_assert!(!period.is_empty());
    classes
}

/// Builds `t'` and a member `(X_1, …, X_m)` of `U_m(ỹ(t'))`.
///
/// One class `h'` carrying infinitely many nonzero digits is fixed. Its
/// powers, smallest first and with multiplicity, are cut into consecutive
/// blocks of `q - 1` terms giving `X_1, …, X_{m-1}`; `p^{t'}` is the smallest
/// power left over and `X_m` is whatever remains of `ỹ(t')`. For `m = 1` the
/// threshold is the first nonzero digit.
pub fn truncation_witness(m: usize, y: &PadicExponent, shape: FieldShape) -> Result<TruncationWitness> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if y.base() != shape.p() {
        return Err(Error::BaseMismatch {
            left: y.base(),
            right: shape.p(),
        });
    }
    let Some(&class) = recurring_classes(y, shape).first() else {
        return Err(Error::InvalidExponent(format!("{y} has finitely many nonzero digits")));
    };
    let p = shape.p();
    if m == 1 {
        let t = (0..).find(|&i| y.digit(i) != 0).expect("stream has nonzero digits");
        let whole = truncation(y, t);
        return Ok(TruncationWitness {
            t,
            composition: Composition::new(vec![whole]),
            class,
        });
    }
    let block = shape.q_minus_one();
    let s = shape.s() as usize;
    let mut parts: Vec<Vec<u32>> = Vec::with_capacity(m - 1);
    let mut current: Vec<u32> = Vec::new();
    let mut filled = 0u64;
    let mut pos = class as usize;
    let t = loop {
        let mut avail = u64::from(y.digit(pos));
        if parts.len() == m - 1 && avail > 0 {
            break pos;
        }
        while avail > 0 && parts.len() < m - 1 {
            let take = avail.min(block - filled);
            if current.len() <= pos {
                current.resize(pos + 1, 0);
            }
            current[pos] += take as u32;
            filled += take;
            avail -= take;
            if filled == block {
                parts.push(std::mem::take(&mut current));
                filled = 0;
            }
        }
        if parts.len() == m - 1 && avail > 0 {
            break pos;
        }
        pos += s;
    };
    let mut xs: Vec<Numeral> = parts
        .into_iter()
        .map(|d| Numeral::from_digits(p, d))
        .collect::<Result<_>>()?;
    let whole = truncation(y, t);
    let used = xs.iter().fold(Numeral::zero(p), |acc, x| acc.add(x));
    let last = whole
        .checked_sub(&used)
        .ok_or_else(|| Error::InvariantViolation("blocks exceed the truncation".into()))?;
    xs.push(last);
    Ok(TruncationWitness {
        t,
        composition: Composition::new(xs),
        class,
    })
}

/// Stopping rule for [`stabilize_v`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizeOptions {
    /// Consecutive equal tracked values required; `None` means
    /// `s + period length`.
    pub window: Option<usize>,
    /// Largest truncation index tried.
    pub t_cap: usize,
}

impl Default for StabilizeOptions {
    fn default() -> Self {
        StabilizeOptions {
            window: None,
            t_cap: 64,
        }
    }
}

/// Outcome of a stabilization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    /// First truncation index of the accepted run.
    pub t_m: usize,
    pub v_m: u128,
    /// `ỹ(t) - G^t_{m+1}` over the accepted run.
    pub tracked: Numeral,
    /// First truncation index examined.
    pub t_start: usize,
}

/// `v_m(y)` for a periodic stream, taken as the settled value of
/// `v_m(ỹ(t))`.
///
/// Starting from the first `t` with `U_{m+1}(ỹ(t))` nonempty, each step computes
/// the greedy element `G^t` of `U_{m+1}(ỹ(t))`. The value `ỹ(t) - G^t_{m+1}`
/// must never increase; once it holds still for `window` consecutive `t`
/// the run is accepted. Passing `t_cap` first is reported as
/// [`Error::Inconclusive`].
pub fn stabilize_v(m: usize, y: &PadicExponent, shape: FieldShape, opts: StabilizeOptions) -> Result<Stabilized> {
    let p = shape.p();
    if m == 0 {
        return Ok(Stabilized {
            t_m: 0,
            v_m: 0,
            tracked: Numeral::zero(p),
            t_start: 0,
        });
    }
    if let PadicExponent::Integer(n) = y {
        let v = valuation_v(m, n, shape)?.finite().ok_or(Error::EmptySet)?;
        let t = n.len().saturating_sub(1);
        return Ok(Stabilized {
            t_m: t,
            v_m: v,
            tracked: Numeral::zero(p),
            t_start: t,
        });
    }
    let window = opts.window.unwrap_or(shape.s() as usize + y.period_len()).max(1);
    // Adding y_{t+1} p^{t+1} to the last part keeps a member valid, so the
    // sets stay nonempty from the first nonempty truncation on. The witness
    // threshold bounds where that happens.
    let bound = truncation_witness(m + 1, y, shape)?.t;
    let start = (0..bound)
        .find(|&t| greedy(m + 1, &truncation(y, t), shape, Mode::U).is_ok())
        .unwrap_or(bound);
    let mut prev: Option<Numeral> = None;
    let mut run_start = start;
    let mut run = 0usize;
    let mut run_value: Option<Result<u128>> = None;
    for t in start..=opts.t_cap {
        let whole = truncation(y, t);
        let g = greedy(m + 1, &whole, shape, Mode::U).map_err(|e| match e {
            Error::EmptySet => Error::InvariantViolation(format!("U_{}(ỹ({t})) is empty past the threshold", m + 1)),
            e => e,
        })?;
        let tracked = whole
            .checked_sub(g.last().expect("m + 1 parts"))
            .expect("part below total");
        let value = prefix_valuation(&g, m);
        match &prev {
            Some(old) if tracked > *old => {
                return Err(Error::InvariantViolation(format!(
                    "ỹ(t) - G_{} rose from {old} to {tracked} at t = {t}",
                    m + 1
                )));
            }
            Some(old) if tracked == *old => {
                run += 1;
                if run_value.as_ref() != Some(&value) {
                    return Err(Error::InvariantViolation(format!(
                        "v_{m} moved at t = {t} while ỹ(t) - G_{} held still",
                        m + 1
                    )));
                }
            }
            _ => {
                run = 1;
                run_start = t;
                run_value = Some(value);
            }
        }
        prev = Some(tracked);
        if run >= window {
            let v_m = run_value.expect("run has a value")?;
            return Ok(Stabilized {
                t_m: run_start,
                v_m,
                tracked: prev.unwrap(),
                t_start: start,
            });
        }
    }
    Err(Error::Inconclusive {
        m,
        t_cap: opts.t_cap as u64,
    })
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Vertices of the lower convex hull, sorted by abscissa. Points lying on a
/// hull edge are not vertices.
pub fn lower_hull(points: &[(i128, i128)]) -> Vec<(i128, i128)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup_by_key(|pt| pt.0);
    let mut hull: Vec<(i128, i128)> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

/// True iff the points start at `(0, 0)`, sit at consecutive abscissae, and
/// are all vertices of their own lower convex hull, so every side has
/// horizontal length one.
pub fn hull_check(points: &[(i128, i128)]) -> bool {
    if points.first() != Some(&(0, 0)) {
        return false;
    }
    if points.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return false;
    }
    lower_hull(points) == points
}

/// Finite points `(m, v_m)` of a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, u128)>,
    /// `Some(d)` when `v_m` is infinite for all `m > d`; `None` when the
    /// polygon was cut off at a requested `max_m`.
    pub degree: Option<usize>,
    /// Stabilization thresholds `t_m`, for stream exponents.
    pub thresholds: Option<Vec<usize>>,
}

impl NewtonPolygon {
    /// `λ(m) = v_m - v_{m-1}` for `m = 1, 2, …`.
    pub fn slopes(&self) -> Vec<i128> {
        self.points
            .windows(2)
            .map(|w| w[1].1 as i128 - w[0].1 as i128)
            .collect()
    }

    pub fn integer_points(&self) -> Vec<(i128, i128)> {
        self.points.iter().map(|&(m, v)| (m as i128, v as i128)).collect()
    }

    pub fn hull_ok(&self) -> bool {
        hull_check(&self.integer_points())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,v_m\n");
        for (m, v) in &self.points {
            let _ = writeln!(out, "{m},{v}");
        }
        out
    }

    /// A standalone SVG: the hull as one polyline, a circle per point, and
    /// each side labelled with its slope.
    pub fn to_svg(&self) -> String {
        let (w, h, pad) = (480.0f64, 360.0f64, 40.0f64);
        let max_m = self.points.last().map_or(1, |p| p.0).max(1) as f64;
        let max_v = self.points.iter().map(|p| p.1).max().unwrap_or(1).max(1) as f64;
        let sx = |m: usize| pad + (w - 2.0 * pad) * m as f64 / max_m;
        let sy = |v: u128| h - pad - (h - 2.0 * pad) * v as f64 / max_v;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let coords: Vec<String> = self
            .points
            .iter()
            .map(|&(m, v)| format!("{:.2},{:.2}", sx(m), sy(v)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        for &(m, v) in &self.points {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#,
                sx(m),
                sy(v)
            );
        }
        for (pair, slope) in self.points.windows(2).zip(self.slopes()) {
            let x = (sx(pair[0].0) + sx(pair[1].0)) / 2.0;
            let y = (sy(pair[0].1) + sy(pair[1].1)) / 2.0 - 6.0;
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-size="11">{slope}</text>"#);
        }
        out.push_str("</svg>\n");
        out
    }
}

/// The Newton polygon of `ζ(x, -y)` up to `m = max_m`.
///
/// Integer exponents stop early at the degree `d`; stream exponents are
/// stabilized one `m` at a time.
pub fn newton_polygon(
    y: &PadicExponent,
    max_m: usize,
    shape: FieldShape,
    opts: StabilizeOptions,
) -> Result<NewtonPolygon> {
    match y {
        PadicExponent::Integer(n) => {
            let mut points = vec![(0, 0)];
            for m in 1..=max_m {
                match valuation_v(m, n, shape)? {
                    Valuation::Finite(v) => points.push((m, v)),
                    Valuation::Infinite => {
                        return Ok(NewtonPolygon {
                            points,
                            degree: Some(m - 1),
                            thresholds: None,
                        });
                    }
                }
            }
            let degree = (valuation_v(max_m + 1, n, shape)? == Valuation::Infinite).then_some(max_m);
            Ok(NewtonPolygon {
                points,
                degree,
                thresholds: None,
            })
        }
        PadicExponent::Periodic { .. } => {
            let mut points = vec![(0, 0)];
            let mut thresholds = vec![0];
            for m in 1..=max_m {
                let st = stabilize_v(m, y, shape, opts)?;
                points.push((m, st.v_m));
                thresholds.push(st.t_m);
            }
            Ok(NewtonPolygon {
                points,
                degree: None,
                thresholds: Some(thresholds),
            })
        }
    }
}

/// `λ_y(1), λ_y(2), …` up to `max_m`, or up to the degree for integers.
pub fn slopes(y: &PadicExponent, max_m: usize, shape: FieldShape, opts: StabilizeOptions) -> Result<Vec<i128>> {
    newton_polygon(y, max_m, shape, opts).map(|poly| poly.slopes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: u32, s: u32) -> FieldShape {
        FieldShape::new(p, s).unwrap()
    }

    fn int(v: u128, p: u32) -> PadicExponent {
        PadicExponent::Integer(Numeral::from_u128(v, p))
    }

    #[test]
    fn valuation_examples() {
        let sh = shape(3, 1);
        for y in [1u128, 2, 17, 100] {
            assert_eq!(
                valuation_v(0, &Numeral::from_u128(y, 3), sh).unwrap(),
                Valuation::Finite(0)
            );
        }
        let two = Numeral::from_u128(2, 3);
        assert_eq!(valuation_v(1, &two, sh).unwrap(), Valuation::Finite(2));
        assert_eq!(valuation_v(2, &two, sh).unwrap(), Valuation::Infinite);
    }

    #[test]
    fn slope_examples() {
        let opts = StabilizeOptions::default();
        assert_eq!(slopes(&int(2, 3), 10, shape(3, 1), opts).unwrap(), vec![2]);
        // 1 is not a multiple of 2, so U_2(1) is empty and d = 0.
        assert!(slopes(&int(1, 3), 10, shape(3, 1), opts).unwrap().is_empty());
        let sl = slopes(&int(3, 2), 10, shape(2, 1), opts).unwrap();
        assert!(!sl.is_empty());
        assert!(sl.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn stream_parsing() {
        let y = PadicExponent::parse("1:1", 2).unwrap();
        assert_eq!(y, PadicExponent::parse("-1", 2).unwrap());
        assert_eq!((0..6).map(|i| y.digit(i)).collect::<Vec<_>>(), vec![1; 6]);
        let z = PadicExponent::parse("1:01", 2).unwrap();
        assert_eq!((0..5).map(|i| z.digit(i)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1]);
        assert_eq!(z.to_string(), "1:01");
        assert_eq!(PadicExponent::parse("12:0", 3).unwrap(), int(7, 3));
        assert_eq!(PadicExponent::parse("131", 3).unwrap(), int(131, 3));
        assert!(PadicExponent::parse("3:1", 3).is_err());
        assert!(PadicExponent::parse("1:", 3).is_err());
        // -5 in Z_3: 3^2 - 5 = 4 = 11_3, then 2s.
        let m5 = PadicExponent::parse("-5", 3).unwrap();
        assert_eq!((0..5).map(|i| m5.digit(i)).collect::<Vec<_>>(), vec![1, 1, 2, 2, 2]);
        assert_eq!(truncation(&m5, 4).to_u128().unwrap() + 5, 3u128.pow(5));
        let big = PadicExponent::parse("10,12:3", 13).unwrap();
        assert_eq!(big.to_string(), "10,12:3");
    }

    #[test]
    fn truncation_examples() {
        let twos = PadicExponent::parse(":2", 3).unwrap();
        assert_eq!(truncation(&twos, 2).to_u128().unwrap(), 26);
        let z = PadicExponent::parse("0:1", 2).unwrap();
        assert_eq!(truncation(&z, 0).to_u128().unwrap(), 0);
        let y = PadicExponent::parse("1:01", 2).unwrap();
        assert_eq!(truncation(&y, 3).to_u128().unwrap(), 5);
    }

    #[test]
    fn witness_examples() {
        let sh = shape(2, 1);
        let ones = PadicExponent::parse(":1", 2).unwrap();
        let w = truncation_witness(2, &ones, sh).unwrap();
        assert_eq!(w.t, 1);
        assert_eq!(w.composition.to_u128_vec().unwrap(), vec![1, 2]);

        let y = PadicExponent::parse("00:01", 2).unwrap();
        let w = truncation_witness(1, &y, sh).unwrap();
        assert_eq!(w.t, 3);
        assert_eq!(w.composition.to_u128_vec().unwrap(), vec![8]);

        let sh = shape(3, 2);
        let twos = PadicExponent::parse(":2", 3).unwrap();
        for m in 1..=4 {
            let w = truncation_witness(m, &twos, sh).unwrap();
            let whole = truncation(&twos, w.t);
            assert!(crate::compositions::is_valid(&w.composition, &whole, sh, Mode::U));
            let first = &w.composition.parts()[0];
            if m >= 2 {
                assert_eq!(first.digit_sum(), 8);
            }
        }
        assert!(truncation_witness(2, &int(5, 3), sh).is_err());
    }

    #[test]
    fn stabilization_small() {
        let sh = shape(2, 1);
        let ones = PadicExponent::parse(":1", 2).unwrap();
        let st = stabilize_v(1, &ones, sh, StabilizeOptions::default()).unwrap();
        for t in st.t_m..st.t_m + 8 {
            let v = valuation_v(1, &truncation(&ones, t), sh).unwrap();
            assert_eq!(v, Valuation::Finite(st.v_m));
        }
        assert_eq!(stabilize_v(0, &ones, sh, StabilizeOptions::default()).unwrap().v_m, 0);
        let tight = StabilizeOptions {
            window: Some(5),
            t_cap: 2,
        };
        assert_eq!(
            stabilize_v(3, &ones, sh, tight),
            Err(Error::Inconclusive { m: 3, t_cap: 2 })
        );
    }

    #[test]
    fn hull_examples() {
        assert!(hull_check(&[(0, 0), (1, 2)]));
        assert!(hull_check(&[(0, 0), (1, 1), (2, 3)]));
        assert!(!hull_check(&[(0, 0), (1, 2), (2, 3)]));
        assert!(!hull_check(&[(0, 0), (1, 1), (2, 2)]));
        assert!(hull_check(&[(0, 0)]));
        assert!(!hull_check(&[]));
        assert!(!hull_check(&[(0, 1), (1, 2)]));
        assert!(!hull_check(&[(0, 0), (2, 3)]));
        assert_eq!(lower_hull(&[(0, 0), (1, 2), (2, 3)]), vec![(0, 0), (2, 3)]);
    }

    #[test]
    fn polygon_exports() {
        let poly = newton_polygon(&int(2, 3), 10, shape(3, 1), StabilizeOptions::default()).unwrap();
        assert_eq!(poly.points, vec![(0, 0), (1, 2)]);
        assert_eq!(poly.degree, Some(1));
        assert_eq!(poly.to_csv(), "m,v_m\n0,0\n1,2\n");
        let svg = poly.to_svg();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains(">2</text>"));
        let zero = newton_polygon(&int(0, 3), 5, shape(3, 1), StabilizeOptions::default()).unwrap();
        assert_eq!(zero.points, vec![(0, 0)]);
        assert_eq!(zero.degree, Some(0));
    }
}
