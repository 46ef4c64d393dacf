//! Valid compositions and their greedy and optimal elements.
//!
//! An `m`-tuple `(X_1, …, X_m)` summing to `N` belongs to `U_m(N)` when the
//! sum has no base-`p` carries and `X_1, …, X_{m-1}` are positive multiples of
//! `p^s - 1`. It belongs to `V_m(N)` when in addition `X_m > 0`.
//!
//! Two independent routes live here. [`visit`] walks every member of the set
//! by splitting each digit of `N` among the parts; it backs [`enumerate`] and
//! the weight-maximising oracle [`optimal_bruteforce`]. [`greedy`] instead
//! builds the reverse-lexicographically largest member directly from the
//! lattice description of which digit-count vectors can be split further.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::lattice::{in_frak_j, in_i_m, psi_inner};
use crate::numerals::{carry_free, DigitVector, FieldShape, Numeral};

/// Which of the two composition families is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `V_m(N)`: the last part is positive.
    V,
    /// `U_m(N)`: the last part may be zero.
    U,
}

/// An ordered tuple of numerals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<Numeral>,
}

impl Composition {
    pub fn new(parts: Vec<Numeral>) -> Self {
        Composition { parts }
    }

    pub fn from_values(values: &[u128], base: u32) -> Self {
        Composition::new(values.iter().map(|&v| Numeral::from_u128(v, base)).collect())
    }

    pub fn parts(&self) -> &[Numeral] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Numeral> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn last(&self) -> Option<&Numeral> {
        self.parts.last()
    }

    pub fn to_u128_vec(&self) -> Result<Vec<u128>> {
        self.parts.iter().map(Numeral::to_u128).collect()
    }

    /// `wt(X) = X_1 + 2 X_2 + … + m X_m`.
    pub fn weight(&self) -> Result<u128> {
        weight_of(&self.to_u128_vec()?)
    }

    /// Sum of the parts.
    pub fn total(&self) -> Option<Numeral> {
        let first = self.parts.first()?;
        Some(self.parts[1..].iter().fold(first.clone(), |acc, x| acc.add(x)))
    }

    /// `ΓX`, the matrix whose columns are `Γ(X_j)`.
    pub fn gamma_matrix(&self, shape: FieldShape) -> ColumnMatrix {
        ColumnMatrix::new(self.parts.iter().map(|x| x.gamma(shape)).collect())
    }

    /// The parts with `p^n` multiplied in.
    pub fn shifted(&self, n: usize) -> Composition {
        Composition::new(self.parts.iter().map(|x| x.shifted(n)).collect())
    }

    /// The tuple with its last part dropped.
    pub fn without_last(&self) -> Composition {
        Composition::new(self.parts[..self.parts.len().saturating_sub(1)].to_vec())
    }

    /// True iff, for every residue class `h`, the class-`h` powers of the
    /// parts read left to right are nondecreasing.
    pub fn is_tau_monotonic(&self, shape: FieldShape) -> bool {
        (0..shape.s()).all(|h| {
            let mut prev = None;
            self.parts.iter().all(|x| {
                let t = x.tau(shape, h);
                let ok = match (prev, t.first()) {
                    (Some(top), Some(&low)) => top <= low,
                    _ => true,
                };
                if let Some(&top) = t.last() {
                    prev = Some(top);
                }
                ok
            })
        })
    }
}

fn weight_of(values: &[u128]) -> Result<u128> {
    values.iter().enumerate().try_fold(0u128, |acc, (j, &x)| {
        (j as u128 + 1)
            .checked_mul(x)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow)
    })
}

/// `wt(X)`.
pub fn weight(x: &Composition) -> Result<u128> {
    x.weight()
}

/// Membership of `x` in `V_m(N)` or `U_m(N)` with `m = x.len()`.
pub fn is_valid(x: &Composition, n: &Numeral, shape: FieldShape, mode: Mode) -> bool {
    let parts = x.parts();
    let Some((last, init)) = parts.split_last() else {
        return false;
    };
    if parts.iter().any(|y| y.base() != shape.p()) || n.base() != shape.p() {
        return false;
    }
    if x.total().as_ref() != Some(n) || !carry_free(parts) {
        return false;
    }
    if mode == Mode::V && last.is_zero() {
        return false;
    }
    init.iter().all(|y| !y.is_zero() && y.rem_q_minus_one(shape) == 0)
}

fn binomial_saturating(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of ways to split every digit of `N` into `m` ordered summands,
/// `∏_j C(n_j + m - 1, m - 1)`, saturating at `u128::MAX`.
pub fn split_count(m: usize, n: &Numeral) -> u128 {
    let m = m as u128;
    n.digits().iter().fold(1u128, |acc, &d| {
        acc.saturating_mul(binomial_saturating(u128::from(d) + m - 1, m - 1))
    })
}

struct Walker<'a, F> {
    m: usize,
    mode: Mode,
    q_minus_one: u128,
    powers: Vec<u128>,
    rem: Vec<u32>,
    parts: Vec<u128>,
    f: &'a mut F,
}

impl<F: FnMut(&[u128]) -> ControlFlow<()>> Walker<'_, F> {
    fn value_of_rem(&self) -> u128 {
        self.rem
            .iter()
            .zip(&self.powers)
            .map(|(&d, &w)| u128::from(d) * w)
            .sum()
    }

    fn run(&mut self, depth: usize) -> ControlFlow<()> {
        if depth + 1 == self.m {
            let last = self.value_of_rem();
            if self.mode == Mode::V && last == 0 {
                return ControlFlow::Continue(());
            }
            self.parts.push(last);
            let flow = (self.f)(&self.parts);
            self.parts.pop();
            return flow;
        }
        let len = self.rem.len();
        let bound = self.rem.clone();
        let mut a = vec![0u32; len];
        let mut value = 0u128;
        loop {
            if value > 0 && value.is_multiple_of(self.q_minus_one) {
                self.rem.iter_mut().zip(&a).for_each(|(r, d)| *r -= d);
                self.parts.push(value);
                let flow = self.run(depth + 1);
                self.parts.pop();
                self.rem.iter_mut().zip(&a).for_each(|(r, d)| *r += d);
                flow?;
            }
            // Odometer step over all digit vectors a <= bound.
            let mut j = 0;
            loop {
                if j == len {
                    return ControlFlow::Continue(());
                }
                if a[j] < bound[j] {
                    a[j] += 1;
                    value += self.powers[j];
                    break;
                }
                value -= u128::from(a[j]) * self.powers[j];
                a[j] = 0;
                j += 1;
            }
        }
    }
}

/// Calls `f` with the part values of every member of `V_m(N)` (or `U_m(N)`),
/// stopping early if `f` breaks.
///
/// Carry-freeness is structural: each digit of `N` is distributed among the
/// parts. Fails with [`Error::BudgetExceeded`] before doing any work when the
/// number of digit splits exceeds `budget`.
pub fn visit<F>(m: usize, n: &Numeral, shape: FieldShape, mode: Mode, budget: u128, mut f: F) -> Result<()>
where
    F: FnMut(&[u128]) -> ControlFlow<()>,
{
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if n.base() != shape.p() {
        return Err(Error::BaseMismatch {
            left: n.base(),
            right: shape.p(),
        });
    }
    let needed = split_count(m, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    n.to_u128()?;
    let p = u128::from(shape.p());
    let powers: Vec<u128> = (0..n.len()).map(|j| p.pow(j as u32)).collect();
    let mut walker = Walker {
        m,
        mode,
        q_minus_one: u128::from(shape.q_minus_one()),
        powers,
        rem: n.digits().to_vec(),
        parts: Vec::with_capacity(m),
        f: &mut f,
    };
    let _ = walker.run(0);
    Ok(())
}

/// Every member of `V_m(N)` (or `U_m(N)`), sorted lexicographically.
pub fn enumerate(m: usize, n: &Numeral, shape: FieldShape, mode: Mode, budget: u128) -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    visit(m, n, shape, mode, budget, |parts| {
        out.push(parts.to_vec());
        ControlFlow::Continue(())
    })?;
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|v| Composition::from_values(&v, shape.p()))
        .collect())
}

/// Brute-force emptiness test.
pub fn is_nonempty_bruteforce(m: usize, n: &Numeral, shape: FieldShape, mode: Mode, budget: u128) -> Result<bool> {
    let mut found = false;
    visit(m, n, shape, mode, budget, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Result of the brute-force weight maximisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub composition: Composition,
    pub weight: u128,
    /// True when no other member reaches the same weight.
    pub unique: bool,
    /// Size of the set searched.
    pub searched: u128,
}

/// The element of maximal weight, found by exhaustive search.
pub fn optimal_bruteforce(m: usize, n: &Numeral, shape: FieldShape, mode: Mode, budget: u128) -> Result<Optimum> {
    let mut best: Option<(u128, Vec<u128>)> = None;
    let mut ties = 0u64;
    let mut searched = 0u128;
    let mut overflow = false;
    visit(m, n, shape, mode, budget, |parts| {
        searched += 1;
        let Ok(w) = weight_of(parts) else {
            overflow = true;
            return ControlFlow::Break(());
        };
        match &best {
            Some((bw, _)) if w < *bw => {}
            Some((bw, _)) if w == *bw => ties += 1,
            _ => {
                best = Some((w, parts.to_vec()));
                ties = 0;
            }
        }
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::Overflow);
    }
    let (weight, parts) = best.ok_or(Error::EmptySet)?;
    Ok(Optimum {
        composition: Composition::from_values(&parts, shape.p()),
        weight,
        unique: ties == 0,
        searched,
    })
}

/// The largest numeral `X ≤ N` (digitwise) with `Γ(X) = b`: in every class
/// `h`, take the top `b_h` powers of `τ_h(N)`.
fn top_selection(n: &Numeral, b: &[u64], s: usize) -> Numeral {
    let mut want = b.to_vec();
    let mut digits = vec![0u32; n.len()];
    for j in (0..n.len()).rev() {
        let h = j % s;
        let take = u64::from(n.digit(j)).min(want[h]);
        digits[j] = take as u32;
        want[h] -= take;
    }
    Numeral::from_digits(n.base(), digits).expect("digits bounded by N")
}

/// The largest last part `X_m` among members of `V_m(N)`, `m >= 2`.
///
/// Candidates are the count vectors `b = Γ(X_m)` with `0 < b ≤ Γ(N)` such
/// that `Γ(N) - b` splits into `m - 1` members of `𝔍`, which happens iff it
/// is an integer `E`-image whose scaled coordinates are all at least `m - 1`.
fn largest_last_part(m: usize, n: &Numeral, shape: FieldShape) -> Option<Numeral> {
    let u = n.gamma(shape);
    let s = u.len();
    let den = i128::from(shape.q_minus_one());
    let floor = (m as i128 - 1) * den;
    let mut b = vec![0u64; s];
    let mut best: Option<Numeral> = None;
    loop {
        let nonzero = b.iter().any(|&x| x > 0);
        if nonzero {
            let rest: Vec<i128> = u.coords().iter().zip(&b).map(|(&a, &c)| i128::from(a - c)).collect();
            let feasible =
                psi_inner(shape, 0, &rest).rem_euclid(den) == 0 && (0..s).all(|i| psi_inner(shape, i, &rest) >= floor);
            if feasible {
                let cand = top_selection(n, &b, s);
                if best.as_ref().is_none_or(|cur| cand > *cur) {
                    best = Some(cand);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == s {
                return best;
            }
            if b[i] < u.coords()[i] {
                b[i] += 1;
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

fn greedy_v(m: usize, n: &Numeral, shape: FieldShape) -> Result<Composition> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if n.base() != shape.p() {
        return Err(Error::BaseMismatch {
            left: n.base(),
            right: shape.p(),
        });
    }
    if !in_i_m(&n.gamma(shape), m, shape) {
        return Err(Error::EmptySet);
    }
    let mut parts = Vec::with_capacity(m);
    let mut rest = n.clone();
    for k in (2..=m).rev() {
        let last = largest_last_part(k, &rest, shape).ok_or_else(|| {
            Error::InvariantViolation(format!("no last part for V_{k}({rest}) although Γ lies in I_{k}"))
        })?;
        rest = rest.checked_sub(&last).expect("last part is a sub-numeral");
        parts.push(last);
    }
    parts.push(rest);
    parts.reverse();
    Ok(Composition::new(parts))
}

/// The greedy element: the member whose reversed tuple `(X_m, …, X_1)` is
/// lexicographically largest.
///
/// For `V_m(N)` the last part is maximised first and the remaining parts are
/// the greedy element of `V_{m-1}(N - X_m)`. `U_m(N)` agrees with `V_m(N)`
/// when the latter is nonempty; otherwise its members all end in zero and
/// come from `V_{m-1}(N)`.
pub fn greedy(m: usize, n: &Numeral, shape: FieldShape, mode: Mode) -> Result<Composition> {
    match mode {
        Mode::V => greedy_v(m, n, shape),
        Mode::U => match greedy_v(m, n, shape) {
            Err(Error::EmptySet) if m == 1 => Ok(Composition::new(vec![n.clone()])),
            Err(Error::EmptySet) if n.rem_q_minus_one(shape) == 0 => {
                let mut parts = greedy_v(m - 1, n, shape)?.into_parts();
                parts.push(Numeral::zero(shape.p()));
                Ok(Composition::new(parts))
            }
            other => other,
        },
    }
}

/// An `s × m` integer matrix stored by columns `b_1, …, b_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnMatrix {
    columns: Vec<DigitVector>,
}

impl ColumnMatrix {
    pub fn new(columns: Vec<DigitVector>) -> Self {
        ColumnMatrix { columns }
    }

    /// Builds the matrix from its rows, row `h` holding the counts for
    /// residue class `h`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        ColumnMatrix::new(
            (0..m)
                .map(|j| DigitVector::new(rows.iter().map(|r| r[j]).collect()))
                .collect(),
        )
    }

    pub fn columns(&self) -> &[DigitVector] {
        &self.columns
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        let s = self.columns.first().map_or(0, DigitVector::len);
        (0..s)
            .map(|h| self.columns.iter().map(|c| c.coords()[h]).collect())
            .collect()
    }

    fn check_feasible(&self, n: &Numeral, shape: FieldShape) -> Result<()> {
        let s = shape.s() as usize;
        let Some((last, init)) = self.columns.split_last() else {
            return Err(Error::InfeasibleMatrix("no columns".into()));
        };
        if self.columns.iter().any(|c| c.len() != s) {
            return Err(Error::InfeasibleMatrix(format!("columns must have length {s}")));
        }
        let sum = init.iter().fold(last.clone(), |acc, c| acc.add(c));
        if sum != n.gamma(shape) {
            return Err(Error::InfeasibleMatrix(format!(
                "columns sum to {sum}, not Γ(N) = {}",
                n.gamma(shape)
            )));
        }
        if let Some(bad) = init.iter().find(|c| !in_frak_j(c, shape)) {
            return Err(Error::InfeasibleMatrix(format!("column {bad} is not in 𝔍")));
        }
        if last.is_zero() {
            return Err(Error::InfeasibleMatrix("last column is zero".into()));
        }
        Ok(())
    }
}

/// The unique τ-monotonic member of `V_m(N)` with `ΓX = B`.
///
/// Part `j` receives the next `b_{h,j}` unused entries of `τ_h(N)`, scanning
/// parts left to right.
pub fn tau_monotonic_from_matrix(b: &ColumnMatrix, n: &Numeral, shape: FieldShape) -> Result<Composition> {
    if n.base() != shape.p() {
        return Err(Error::BaseMismatch {
            left: n.base(),
            right: shape.p(),
        });
    }
    b.check_feasible(n, shape)?;
    let mut digits = vec![vec![0u32; n.len()]; b.columns().len()];
    for h in 0..shape.s() {
        let mut tau = n.tau(shape, h).into_iter();
        for (j, col) in b.columns().iter().enumerate() {
            for k in tau.by_ref().take(col.coords()[h as usize] as usize) {
                digits[j][k as usize] += 1;
            }
        }
    }
    digits
        .into_iter()
        .map(|d| Numeral::from_digits(shape.p(), d))
        .collect::<Result<Vec<_>>>()
        .map(Composition::new)
}
