//! Power sums of polynomials over a finite field.
//!
//! `S'_k(N)` sums `n^N` over the monic `n ∈ F_q[T]` of degree `k`, and
//! `S_k(N)` sums it over all `n` of degree below `k`. The direct routines do
//! exactly that, with plain binary powering. [`s_prime_combinatorial`]
//! instead sums multinomial coefficients over `U_{k+1}(N)`, so comparing the
//! two checks the composition machinery against honest field arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use crate::compositions::{greedy, visit, Mode};
use crate::error::{Error, Result};
use crate::numerals::{FieldShape, Numeral};

/// Largest field order supported by the table-driven arithmetic.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// A field element, encoded as the base-`p` number whose digit `i` is the
/// coefficient of `x^i` in its residue modulo the defining polynomial.
///
/// Under this encoding the prime field is exactly the codes below `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// Dense arithmetic on F_p[x], ascending coefficients, used only while the
// field is being set up.
fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic.
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let off = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[off + i] = (r[off + i] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    fp_trim(r)
}

fn fp_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    fp_rem(&c, m, p)
}

/// All monic polynomials of degree `d` over `F_p`, ascending coefficients,
/// ordered lexicographically with the constant term most significant.
fn monic_of_degree(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = u64::from(p).pow(d);
    (0..count).map(move |mut idx| {
        let mut c = vec![0u32; d as usize + 1];
        for i in (0..d as usize).rev() {
            c[i] = (idx % u64::from(p)) as u32;
            idx /= u64::from(p);
        }
        c[d as usize] = 1;
        c
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let s = f.len() as u32 - 1;
    (1..=s / 2).all(|d| monic_of_degree(p, d).all(|g| !fp_rem(f, &g, p).is_empty()))
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut code: u32, p: u32, s: u32) -> Vec<u32> {
    (0..s)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// `F_q = F_p[x]/(f)` with log/antilog tables.
#[derive(Clone)]
pub struct FqField {
    shape: FieldShape,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqField")
            .field("shape", &self.shape)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl FqField {
    /// Builds the field using the lexicographically least monic irreducible
    /// of degree `s`, ordered with the constant term most significant.
    pub fn new(shape: FieldShape) -> Result<Self> {
        let (p, s) = (shape.p(), shape.s());
        if shape.q() > u64::from(MAX_FIELD_ORDER) {
            return Err(Error::Precondition(format!(
                "field order {} exceeds {MAX_FIELD_ORDER}",
                shape.q()
            )));
        }
        let q = shape.q() as u32;
        let modulus = monic_of_degree(p, s)
            .find(|f| is_irreducible(f, p))
            .expect("irreducibles exist in every degree");

        let mul_codes = |a: u32, b: u32| {
            encode(
                &fp_mul_mod(&fp_trim(decode(a, p, s)), &fp_trim(decode(b, p, s)), &modulus, p),
                p,
            )
        };
        let order = q as usize - 1;
        let mut exp = vec![0u32; order];
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1u32;
                for (i, slot) in exp.iter_mut().enumerate() {
                    if i > 0 && x == 1 {
                        return false;
                    }
                    *slot = x;
                    x = mul_codes(x, g);
                }
                x == 1
            })
            .expect("the multiplicative group is cyclic");
        debug_assert!(generator < q);
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }

        let add_digits = |a: u32, b: u32| {
            let (da, db) = (decode(a, p, s), decode(b, p, s));
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            encode(&sum, p)
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| encode(&decode(a, p, s).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p))
            .collect();
        let add = (q <= 256).then(|| (0..q * q).map(|i| add_digits(i / q, i % q)).collect::<Vec<u32>>());
        Ok(FqField {
            shape,
            modulus,
            exp,
            log,
            add,
            neg,
        })
    }

    pub fn shape(&self) -> FieldShape {
        self.shape
    }

    /// The defining polynomial over `F_p`, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.shape.q() as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order()).map(Fq)
    }

    /// The image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, v: i128) -> Fq {
        Fq(v.rem_euclid(i128::from(self.shape.p())) as u32)
    }

    pub fn is_prime_field(&self, a: Fq) -> bool {
        a.0 < self.shape.p()
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let q = self.order();
        match &self.add {
            Some(t) => Fq(t[(a.0 * q + b.0) as usize]),
            None => {
                let (p, s) = (self.shape.p(), self.shape.s());
                let (da, db) = (decode(a.0, p, s), decode(b.0, p, s));
                Fq(encode(
                    &da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect::<Vec<_>>(),
                    p,
                ))
            }
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let order = self.exp.len();
        let l = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Fq(self.exp[l % order])
    }

    /// `a^h`, with `0^0 = 1`.
    pub fn pow(&self, a: Fq, h: u128) -> Fq {
        if h == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        let order = self.exp.len() as u128;
        let l = u128::from(self.log[a.0 as usize]) * (h % order) % order;
        Fq(self.exp[l as usize])
    }

    /// Prime-field elements as a bare digit, others as the coefficient tuple
    /// `(a_0,a_1,…)`.
    pub fn render(&self, a: Fq) -> String {
        if self.shape.s() == 1 {
            return a.0.to_string();
        }
        let digits: Vec<String> = decode(a.0, self.shape.p(), self.shape.s())
            .iter()
            .map(u32::to_string)
            .collect();
        format!("({})", digits.join(","))
    }

    pub fn poly_add(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut c = long.coeffs.clone();
        for (x, &y) in c.iter_mut().zip(&short.coeffs) {
            *x = self.add(*x, y);
        }
        FqPolynomial::new(c)
    }

    pub fn poly_mul(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        if a.is_zero() || b.is_zero() {
            return FqPolynomial::zero();
        }
        let order = self.exp.len();
        let logs_b: Vec<Option<usize>> = b
            .coeffs
            .iter()
            .map(|c| (!c.is_zero()).then(|| self.log[c.0 as usize] as usize))
            .collect();
        let mut c = vec![Fq::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let lx = self.log[x.0 as usize] as usize;
            for (j, ly) in logs_b.iter().enumerate() {
                if let Some(ly) = ly {
                    let prod = Fq(self.exp[(lx + ly) % order]);
                    c[i + j] = self.add(c[i + j], prod);
                }
            }
        }
        FqPolynomial::new(c)
    }

    /// `a^n` by square-and-multiply, with `a^0 = 1`.
    pub fn poly_pow(&self, a: &FqPolynomial, mut n: u128) -> FqPolynomial {
        let mut acc = FqPolynomial::one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// `c_d*T^d + … + c_0`, dropping zero terms.
    pub fn render_poly(&self, a: &FqPolynomial) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, &c)| match d {
                0 => self.render(c),
                1 => format!("{}*T", self.render(c)),
                _ => format!("{}*T^{d}", self.render(c)),
            })
            .collect();
        terms.join(" + ")
    }
}

/// Degree of a polynomial; the zero polynomial has its own marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u128),
}

impl Degree {
    pub fn finite(self) -> Option<u128> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `T` over `F_q`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FqPolynomial {
    coeffs: Vec<Fq>,
}

impl FqPolynomial {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        FqPolynomial::default()
    }

    pub fn one() -> Self {
        FqPolynomial { coeffs: vec![Fq::ONE] }
    }

    /// The monic polynomial `T^k + a_{k-1} T^{k-1} + … + a_0`.
    pub fn monic(lower: &[Fq]) -> Self {
        let mut c = lower.to_vec();
        c.push(Fq::ONE);
        FqPolynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coefficient(&self, d: usize) -> Fq {
        self.coeffs.get(d).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fq::ONE)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n as u128 - 1),
        }
    }

    pub fn leading(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }
}

fn check_count(field: &FqField, k: usize, budget: u128) -> Result<()> {
    let needed = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(field.order())));
    match needed {
        Some(n) if n <= budget => Ok(()),
        other => Err(Error::BudgetExceeded {
            needed: other.unwrap_or(u128::MAX),
            cap: budget,
        }),
    }
}

/// Calls `f` with every coefficient vector in `F_q^k`.
fn for_each_vector(field: &FqField, k: usize, mut f: impl FnMut(&[Fq])) {
    let mut a = vec![Fq::ZERO; k];
    loop {
        f(&a);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            if a[i].0 + 1 < field.order() {
                a[i].0 += 1;
                break;
            }
            a[i] = Fq::ZERO;
            i += 1;
        }
    }
}

/// `S'_k(N)`, summed directly over the `q^k` monic polynomials of degree `k`.
pub fn s_prime_direct(k: usize, n: u128, field: &FqField, budget: u128) -> Result<FqPolynomial> {
    check_count(field, k, budget)?;
    let mut total = FqPolynomial::zero();
    for_each_vector(field, k, |lower| {
        let term = field.poly_pow(&FqPolynomial::monic(lower), n);
        total = field.poly_add(&total, &term);
    });
    Ok(total)
}

/// `S_k(N)`, summed directly over the `q^k` polynomials of degree below `k`.
/// The zero polynomial contributes `0^N = 0` for `N ≥ 1`.
pub fn s_direct(k: usize, n: u128, field: &FqField, budget: u128) -> Result<FqPolynomial> {
    check_count(field, k, budget)?;
    let mut total = FqPolynomial::zero();
    if k == 0 {
        return Ok(total);
    }
    for_each_vector(field, k, |coeffs| {
        let term = field.poly_pow(&FqPolynomial::new(coeffs.to_vec()), n);
        total = field.poly_add(&total, &term);
    });
    Ok(total)
}

fn factorials_mod(p: u32) -> Vec<u64> {
    let p = u64::from(p);
    let mut f = vec![1u64; p as usize];
    for i in 1..p as usize {
        f[i] = f[i - 1] * i as u64 % p;
    }
    f
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is a unit.
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `N! / (r_0! ⋯ r_k!) mod p` for a carry-free split, via Lucas: the
/// coefficient factors over base-`p` digit positions.
pub fn multinomial_mod_p(n: &Numeral, parts: &[Numeral]) -> u32 {
    let p = n.base();
    let fact = factorials_mod(p);
    let p64 = u64::from(p);
    let mut acc = 1u64;
    for j in 0..n.len() {
        let split: u32 = parts.iter().map(|x| x.digit(j)).sum();
        if split != n.digit(j) {
            return 0;
        }
        acc = acc * fact[n.digit(j) as usize] % p64;
        for x in parts {
            acc = acc * inverse_mod(fact[x.digit(j) as usize], p64) % p64;
        }
    }
    acc as u32
}

/// `S'_k(N)` from the composition side: the sum over `R ∈ U_{k+1}(N)` of
/// `(-1)^k · multinomial(N; R) · T^{wt(R) - N}`.
///
/// Coefficients lie in the prime field, encoded as in [`Fq`].
pub fn s_prime_combinatorial(k: usize, n: &Numeral, shape: FieldShape, budget: u128) -> Result<FqPolynomial> {
    let p = shape.p();
    let n_val = n.to_u128()?;
    let mut terms: BTreeMap<u128, u32> = BTreeMap::new();
    let mut overflow = false;
    visit(k + 1, n, shape, Mode::U, budget, |parts| {
        let nums: Vec<Numeral> = parts.iter().map(|&v| Numeral::from_u128(v, p)).collect();
        let mut c = multinomial_mod_p(n, &nums);
        if k % 2 == 1 {
            c = (p - c) % p;
        }
        let deg = parts.iter().enumerate().try_fold(0u128, |acc, (j, &x)| {
            (j as u128).checked_mul(x).and_then(|t| acc.checked_add(t))
        });
        let Some(deg) = deg else {
            overflow = true;
            return ControlFlow::Break(());
        };
        let slot = terms.entry(deg).or_insert(0);
        *slot = (*slot + c) % p;
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::Overflow);
    }
    debug_assert!(terms.keys().all(|&d| d <= k as u128 * n_val));
    let top = terms.iter().rev().find(|(_, &c)| c != 0).map(|(&d, _)| d);
    let Some(top) = top else {
        return Ok(FqPolynomial::zero());
    };
    let len = usize::try_from(top).map_err(|_| Error::Overflow)? + 1;
    let mut coeffs = vec![Fq::ZERO; len];
    for (d, c) in terms {
        if let Some(slot) = coeffs.get_mut(d as usize) {
            *slot = Fq(c);
        }
    }
    Ok(FqPolynomial::new(coeffs))
}

/// `wt(G) - N` for the greedy element `G` of `U_{k+1}(N)`, or
/// [`Degree::MinusInfinity`] when that set is empty.
pub fn predicted_degree(k: usize, n: &Numeral, shape: FieldShape) -> Result<Degree> {
    match greedy(k + 1, n, shape, Mode::U) {
        Ok(g) => {
            let w = g.weight()?;
            Ok(Degree::Finite(w - n.to_u128()?))
        }
        Err(Error::EmptySet) => Ok(Degree::MinusInfinity),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn field(p: u32, s: u32) -> FqField {
        FqField::new(FieldShape::new(p, s).unwrap()).unwrap()
    }

    fn constant(c: u32) -> FqPolynomial {
        FqPolynomial::new(vec![Fq(c)])
    }

    #[test]
    fn modulus_choice() {
        assert_eq!(field(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(field(3, 1).modulus(), &[0, 1]);
        // x^2 + 1 is irreducible over F_3 and has constant term 1.
        assert_eq!(field(3, 2).modulus(), &[1, 0, 1]);
        // Over F_2 in degree 3 the candidates with constant 0 are reducible.
        assert_eq!(field(2, 3).modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = field(p, s);
            let els: Vec<Fq> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                assert_eq!(f.mul(a, Fq::ONE), a);
                if !a.is_zero() {
                    let inv = f.pow(a, u128::from(f.order()) - 2);
                    assert_eq!(f.mul(a, inv), Fq::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Prime field is closed under the operations.
            for a in 0..p {
                for b in 0..p {
                    assert!(f.is_prime_field(f.mul(Fq(a), Fq(b))));
                    assert_eq!(f.add(Fq(a), Fq(b)), Fq((a + b) % p));
                    assert_eq!(f.mul(Fq(a), Fq(b)), Fq(a * b % p));
                }
            }
        }
    }

    #[test]
    fn character_sums() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = field(p, s);
            let qm1 = u128::from(f.order() - 1);
            for h in 1..=3 * qm1 {
                let sum = f.elements().fold(Fq::ZERO, |acc, a| f.add(acc, f.pow(a, h)));
                let want = if h % qm1 == 0 { f.from_int(-1) } else { Fq::ZERO };
                assert_eq!(sum, want, "p={p} s={s} h={h}");
            }
        }
    }

    #[test]
    fn polynomial_basics() {
        let f = field(3, 1);
        let t_plus_one = FqPolynomial::monic(&[Fq(1)]);
        let sq = f.poly_pow(&t_plus_one, 2);
        assert_eq!(sq.coeffs(), &[Fq(1), Fq(2), Fq(1)]);
        assert!(sq.is_monic());
        assert_eq!(sq.degree(), Degree::Finite(2));
        assert_eq!(f.render_poly(&sq), "1*T^2 + 2*T + 1");
        assert_eq!(FqPolynomial::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(f.poly_pow(&t_plus_one, 0), FqPolynomial::one());
        // (T+1)^3 = T^3 + 1 in characteristic 3.
        assert_eq!(f.poly_pow(&t_plus_one, 3).coeffs(), &[Fq(1), Fq(0), Fq(0), Fq(1)]);
        let f4 = field(2, 2);
        assert_eq!(f4.render(Fq(2)), "(0,1)");
        assert_eq!(
            f4.render_poly(&FqPolynomial::new(vec![Fq(3), Fq(1)])),
            "(1,0)*T + (1,1)"
        );
    }

    #[test]
    fn direct_examples() {
        let f3 = field(3, 1);
        assert_eq!(s_prime_direct(1, 1, &f3, DEFAULT_BUDGET).unwrap(), FqPolynomial::zero());
        assert_eq!(s_prime_direct(1, 2, &f3, DEFAULT_BUDGET).unwrap(), constant(2));
        let f2 = field(2, 1);
        for n in 1..10 {
            assert_eq!(s_prime_direct(0, n, &f2, DEFAULT_BUDGET).unwrap(), FqPolynomial::one());
            assert_eq!(s_direct(0, n, &f2, DEFAULT_BUDGET).unwrap(), FqPolynomial::zero());
        }
        assert_eq!(s_direct(1, 2, &f3, DEFAULT_BUDGET).unwrap(), constant(2));
        assert_eq!(s_direct(1, 1, &f3, DEFAULT_BUDGET).unwrap(), FqPolynomial::zero());
        assert!(matches!(
            s_prime_direct(3, 1, &f3, 26),
            Err(Error::BudgetExceeded { needed: 27, cap: 26 })
        ));
    }

    #[test]
    fn combinatorial_examples() {
        let sh3 = FieldShape::new(3, 1).unwrap();
        let sh2 = FieldShape::new(2, 1).unwrap();
        let n = |v: u128, p| Numeral::from_u128(v, p);
        assert_eq!(
            s_prime_combinatorial(1, &n(2, 3), sh3, DEFAULT_BUDGET).unwrap(),
            constant(2)
        );
        assert_eq!(
            s_prime_combinatorial(1, &n(1, 3), sh3, DEFAULT_BUDGET).unwrap(),
            FqPolynomial::zero()
        );
        assert_eq!(
            s_prime_combinatorial(1, &n(1, 2), sh2, DEFAULT_BUDGET).unwrap(),
            constant(1)
        );
    }

    #[test]
    fn multinomials_match_integers() {
        for p in [2u32, 3, 5, 7] {
            for a in 0..40u128 {
                for b in 0..40u128 {
                    let c = 0u128;
                    let total = a + b + c;
                    let mut binom = 1u128;
                    for i in 0..b {
                        binom = binom * (total - i) / (i + 1);
                    }
                    let parts = [Numeral::from_u128(a, p), Numeral::from_u128(b, p)];
                    let got = multinomial_mod_p(&Numeral::from_u128(total, p), &parts);
                    assert_eq!(u128::from(got), binom % u128::from(p), "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn predicted_degree_examples() {
        let sh3 = FieldShape::new(3, 1).unwrap();
        let sh2 = FieldShape::new(2, 1).unwrap();
        assert_eq!(
            predicted_degree(1, &Numeral::from_u128(2, 3), sh3).unwrap(),
            Degree::Finite(0)
        );
        assert_eq!(
            predicted_degree(1, &Numeral::from_u128(1, 3), sh3).unwrap(),
            Degree::MinusInfinity
        );
        assert_eq!(
            predicted_degree(1, &Numeral::from_u128(1, 2), sh2).unwrap(),
            Degree::Finite(0)
        );
    }
}
