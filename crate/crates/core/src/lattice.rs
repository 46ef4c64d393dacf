//! The `E`-matrix calculus on `N^s`.
//!
//! `E` has columns `ε_i = p·e_{i-1} - e_i` (indices mod `s`), so for
//! `u = E a` we get `u_j = p·a_{j+1} - a_j`. Its inverse is
//! `(p^s - 1)^{-1} [ψ_0, …, ψ_{s-1}]^t` with `ψ_0 = [1, p, …, p^{s-1}]` and
//! `ψ_i = R^i ψ_0`, where `R` rotates coordinates to the right.
//!
//! Every quantity here is kept as an integer numerator over the fixed
//! denominator `p^s - 1`, so membership tests are comparisons between
//! integers.

use crate::error::{Error, Result};
use crate::numerals::{DigitVector, FieldShape};

/// The `s × s` matrix `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EMatrix {
    shape: FieldShape,
    entries: Vec<Vec<i128>>,
}

impl EMatrix {
    pub fn new(shape: FieldShape) -> Self {
        let s = shape.s() as usize;
        let p = i128::from(shape.p());
        let mut entries = vec![vec![0i128; s]; s];
        for i in 0..s {
            entries[i][i] -= 1;
            entries[(i + s - 1) % s][i] += p;
        }
        EMatrix { shape, entries }
    }

    pub fn shape(&self) -> FieldShape {
        self.shape
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Vec<i128>] {
        &self.entries
    }

    /// `E x`.
    pub fn apply(&self, x: &[i128]) -> Vec<i128> {
        let s = x.len();
        assert_eq!(s, self.shape.s() as usize);
        let p = i128::from(self.shape.p());
        (0..s).map(|j| p * x[(j + 1) % s] - x[j]).collect()
    }

    /// The integer matrix `(p^s - 1) E^{-1}`, whose rows are the `ψ_i`.
    pub fn scaled_inverse(&self) -> Vec<Vec<i128>> {
        (0..self.shape.s() as usize).map(|i| psi(self.shape, i)).collect()
    }
}

/// `ψ_i = R^i ψ_0`; entry `k` is `p^{(k - i) mod s}`.
pub fn psi(shape: FieldShape, i: usize) -> Vec<i128> {
    let s = shape.s() as usize;
    let p = i128::from(shape.p());
    (0..s).map(|k| p.pow(((k + s - i % s) % s) as u32)).collect()
}

/// `⟨ψ_i, u⟩` for an arbitrary integer vector.
pub fn psi_inner(shape: FieldShape, i: usize, u: &[i128]) -> i128 {
    psi(shape, i).iter().zip(u).map(|(a, b)| a * b).sum()
}

/// The permutation matrix `R` (`R e_i = e_{i+1}`).
pub fn rotation_matrix(s: usize) -> Vec<Vec<i128>> {
    let mut r = vec![vec![0; s]; s];
    for i in 0..s {
        r[(i + 1) % s][i] = 1;
    }
    r
}

/// `R^k x` for an integer vector.
pub fn rotate_ints(x: &[i128], k: usize) -> Vec<i128> {
    let s = x.len();
    let mut out = vec![0; s];
    for (i, &c) in x.iter().enumerate() {
        out[(i + k) % s] = c;
    }
    out
}

/// `E^{-1} u` as integer numerators over `p^s - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCoords {
    numerators: Vec<i128>,
    denominator: i128,
}

impl ScaledCoords {
    pub fn numerators(&self) -> &[i128] {
        &self.numerators
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    pub fn min(&self) -> i128 {
        *self.numerators.iter().min().expect("s >= 1")
    }

    /// First index attaining the minimum.
    pub fn argmin(&self) -> usize {
        let m = self.min();
        self.numerators.iter().position(|&x| x == m).expect("s >= 1")
    }

    /// True when `E^{-1} u` is an integer vector.
    pub fn is_integral(&self) -> bool {
        self.numerators.iter().all(|x| x.rem_euclid(self.denominator) == 0)
    }

    /// Smallest integer `≥` coordinate `i`.
    pub fn ceil(&self, i: usize) -> i128 {
        let (n, d) = (self.numerators[i], self.denominator);
        n.div_euclid(d) + i128::from(n.rem_euclid(d) != 0)
    }

    /// Largest integer `≤` coordinate `i`.
    pub fn floor(&self, i: usize) -> i128 {
        self.numerators[i].div_euclid(self.denominator)
    }
}

/// `E^{-1} u` for an arbitrary integer vector.
pub fn scaled_inverse_of(u: &[i128], shape: FieldShape) -> ScaledCoords {
    assert_eq!(u.len(), shape.s() as usize);
    ScaledCoords {
        numerators: (0..u.len()).map(|i| psi_inner(shape, i, u)).collect(),
        denominator: i128::from(shape.q_minus_one()),
    }
}

/// `E^{-1} u` for `u ∈ N^s`.
pub fn scaled_inverse_coords(u: &DigitVector, shape: FieldShape) -> ScaledCoords {
    scaled_inverse_of(&u.to_ints(), shape)
}

/// `u ∈ 𝔍 = E Z^s ∩ (N^s \ {0})`, i.e. `u = Γ(k)` for a positive multiple
/// `k` of `p^s - 1`.
pub fn in_frak_j(u: &DigitVector, shape: FieldShape) -> bool {
    !u.is_zero() && psi_inner(shape, 0, &u.to_ints()).rem_euclid(i128::from(shape.q_minus_one())) == 0
}

/// `u ∈ I_m`: some `k` with `Γ(k) = u` has `V_m(k) ≠ ∅`. Holds iff every
/// coordinate of `E^{-1} u` exceeds `m - 1`.
pub fn in_i_m(u: &DigitVector, m: usize, shape: FieldShape) -> bool {
    assert!(m >= 1, "m must be positive");
    let c = scaled_inverse_coords(u, shape);
    c.min() > (m as i128 - 1) * c.denominator()
}

/// `u ∈ J_m`: `u ∈ 𝔍` and the minimal coordinate of `E^{-1} u` is exactly `m`.
pub fn in_j_m(u: &DigitVector, m: usize, shape: FieldShape) -> bool {
    assert!(m >= 1, "m must be positive");
    if !in_frak_j(u, shape) {
        return false;
    }
    let c = scaled_inverse_coords(u, shape);
    c.min() == m as i128 * c.denominator()
}

/// `u ∈ J_m^i`: `u ∈ J_m` with the minimum attained at coordinate `i`.
pub fn in_j_m_i(u: &DigitVector, m: usize, i: usize, shape: FieldShape) -> bool {
    if !in_j_m(u, m, shape) {
        return false;
    }
    let c = scaled_inverse_coords(u, shape);
    c.numerators()[i] == c.min()
}

/// One descent step inside the `𝔍`-cone.
///
/// Given `v = E c` with `1 < c_0 = min c_i`, returns `w = E d ∈ 𝔍` with
/// `w < v` and `c_0 - 1 ≤ d_0 = min d_i`, where `d_0 = ⌈c_0⌉ - 1` and
/// `d_i = min(⌈c_i⌉ - 1, p·d_{i+1})` for `i = s-1, …, 1`.
pub fn descend(v: &DigitVector, shape: FieldShape) -> Result<DigitVector> {
    let c = scaled_inverse_coords(v, shape);
    if c.numerators()[0] != c.min() {
        return Err(Error::Precondition(format!(
            "coordinate 0 of E^-1 {v} is not minimal; rotate first"
        )));
    }
    if c.numerators()[0] <= c.denominator() {
        return Err(Error::Precondition(format!("E^-1 {v} has minimum at most 1")));
    }
    let s = v.len();
    let p = i128::from(shape.p());
    let mut d = vec![0i128; s];
    d[0] = c.ceil(0) - 1;
    for i in (1..s).rev() {
        let next = d[(i + 1) % s];
        d[i] = (c.ceil(i) - 1).min(p * next);
    }
    let w = EMatrix::new(shape).apply(&d);
    Ok(DigitVector::from_ints(&w).expect("descent stays in the nonnegative orthant"))
}

/// A strictly increasing chain `η_1 < … < η_{m-1} < u` of members of `𝔍`
/// witnessing `u ∈ I_m`.
///
/// Consecutive differences (and `η_1` itself) also lie in `𝔍`, so the chain
/// yields a column matrix for an element of `V_m`.
pub fn eta_chain(u: &DigitVector, m: usize, shape: FieldShape) -> Result<Vec<DigitVector>> {
    if m == 0 || u.len() != shape.s() as usize || !in_i_m(u, m, shape) {
        return Err(Error::Precondition(format!("{u} is not in I_{m}")));
    }
    let s = u.len();
    let k = scaled_inverse_coords(u, shape).argmin();
    // R^{s-k} moves the minimal coordinate of E^{-1} u to index 0.
    let mut current = u.rotated((s - k) % s);
    let mut chain = Vec::with_capacity(m.saturating_sub(1));
    for _ in 1..m {
        let w = descend(&current, shape)?;
        chain.push(w.rotated(k));
        current = w;
    }
    chain.reverse();
    Ok(chain)
}
