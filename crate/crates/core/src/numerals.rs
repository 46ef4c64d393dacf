//! Base-`p` numerals and the digit-level maps built on them.
//!
//! A [`Numeral`] is a nonnegative integer stored as its little-endian base-`p`
//! digits. Everything in this module is digit-local: `σ(N)` is the multiset of
//! powers `p^k` with multiplicity the `k`-th digit, `τ_h(N)` keeps the powers
//! whose exponent is `≡ h (mod s)`, and `Γ(N)` counts those powers per class.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The pair `(p, s)` fixing `q = p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldShape {
    p: u32,
    s: u32,
    q: u64,
}

impl FieldShape {
    pub fn new(p: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidShape(format!("p = {p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidShape("s must be at least 1".into()));
        }
        let q = u64::from(p)
            .checked_pow(s)
            .filter(|q| *q <= u64::from(u32::MAX))
            .ok_or_else(|| Error::InvalidShape(format!("{p}^{s} is too large")))?;
        Ok(FieldShape { p, s, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p^s - 1`, the modulus of every divisibility condition.
    pub fn q_minus_one(&self) -> u64 {
        self.q - 1
    }
}

impl fmt::Display for FieldShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}^{}", self.p, self.s)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = u64::from(n);
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A nonnegative integer held as canonical little-endian base-`p` digits.
///
/// The highest stored digit is nonzero; zero has no digits at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    base: u32,
    digits: Vec<u32>,
}

impl Numeral {
    pub fn zero(base: u32) -> Self {
        Numeral {
            base,
            digits: Vec::new(),
        }
    }

    pub fn from_u128(mut value: u128, base: u32) -> Self {
        assert!(base >= 2, "base must be at least 2");
        let b = u128::from(base);
        let mut digits = Vec::new();
        while value > 0 {
            digits.push((value % b) as u32);
            value /= b;
        }
        Numeral { base, digits }
    }

    /// Builds a numeral from little-endian digits, trimming high zeros.
    pub fn from_digits(base: u32, mut digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidNumeral(format!("base {base} is below 2")));
        }
        if let Some(d) = digits.iter().find(|d| **d >= base) {
            return Err(Error::InvalidNumeral(format!("digit {d} out of range for base {base}")));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(Numeral { base, digits })
    }

    /// `p^k`.
    pub fn power(base: u32, k: usize) -> Self {
        let mut digits = vec![0; k + 1];
        digits[k] = 1;
        Numeral { base, digits }
    }

    /// Parses either a decimal integer (`"131"`) or an explicit base-`p`
    /// digit string with the base after an underscore (`"11212_3"`).
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        let text = text.trim();
        if let Some((body, radix)) = text.rsplit_once('_') {
            let radix: u32 = radix
                .parse()
                .map_err(|_| Error::InvalidNumeral(format!("bad base in {text:?}")))?;
            if radix != base {
                return Err(Error::BaseMismatch {
                    left: radix,
                    right: base,
                });
            }
            if body.is_empty() || radix > 36 {
                return Err(Error::InvalidNumeral(format!("cannot read {text:?}")));
            }
            let digits = body
                .chars()
                .rev()
                .map(|c| {
                    c.to_digit(36)
                        .filter(|d| *d < radix)
                        .ok_or_else(|| Error::InvalidNumeral(format!("bad digit {c:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Numeral::from_digits(base, digits);
        }
        let value: u128 = text
            .parse()
            .map_err(|_| Error::InvalidNumeral(format!("cannot read {text:?}")))?;
        if base < 2 {
            return Err(Error::InvalidNumeral(format!("base {base} is below 2")));
        }
        Ok(Numeral::from_u128(value, base))
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Little-endian digits with no trailing zeros.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The `j`-th digit, zero past the top.
    pub fn digit(&self, j: usize) -> u32 {
        self.digits.get(j).copied().unwrap_or(0)
    }

    /// Number of stored digits (zero for the zero numeral).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn to_u128(&self) -> Result<u128> {
        let b = u128::from(self.base);
        self.digits.iter().rev().try_fold(0u128, |acc, &d| {
            acc.checked_mul(b)
                .and_then(|v| v.checked_add(u128::from(d)))
                .ok_or(Error::Overflow)
        })
    }

    /// Exponents of `σ(N)` in nondecreasing order, each repeated as often as
    /// its digit says.
    pub fn sigma(&self) -> impl Iterator<Item = u32> + '_ {
        self.sigma_runs()
            .flat_map(|(k, mult)| std::iter::repeat_n(k, mult as usize))
    }

    /// Run-length form of `σ(N)`: `(exponent, multiplicity)` for every
    /// nonzero digit.
    pub fn sigma_runs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(k, d)| (k as u32, *d))
    }

    /// Exponent of the largest power in `σ(N)`.
    pub fn deg_p(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroNumeral);
        }
        Ok(self.digits.len() as u32 - 1)
    }

    /// `ℓ(N)`, the sum of the base-`p` digits.
    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| u64::from(d)).sum()
    }

    /// `Γ(N)`: coordinate `i` sums the digits in positions `≡ i (mod s)`.
    pub fn gamma(&self, shape: FieldShape) -> DigitVector {
        debug_assert_eq!(self.base, shape.p());
        let s = shape.s() as usize;
        let mut coords = vec![0u64; s];
        for (j, &d) in self.digits.iter().enumerate() {
            coords[j % s] += u64::from(d);
        }
        DigitVector(coords)
    }

    /// `τ_h(N)` as a nondecreasing list of exponents.
    pub fn tau(&self, shape: FieldShape, h: u32) -> Vec<u32> {
        let s = shape.s();
        self.sigma().filter(|k| k % s == h % s).collect()
    }

    /// True when every digit of `self` is at most the matching digit of
    /// `other`, i.e. `σ(self)` is a sub-multiset of `σ(other)`.
    pub fn is_digitwise_le(&self, other: &Numeral) -> bool {
        self.base == other.base
            && self.digits.len() <= other.digits.len()
            && self.digits.iter().zip(&other.digits).all(|(a, b)| a <= b)
    }

    /// Ordinary addition with carries.
    ///
    /// # Panics
    ///
    /// Panics if the bases differ.
    pub fn add(&self, other: &Numeral) -> Numeral {
        assert_eq!(self.base, other.base, "base mismatch");
        let len = self.digits.len().max(other.digits.len());
        let mut digits = Vec::with_capacity(len + 1);
        let mut carry = 0u64;
        for j in 0..len {
            let t = u64::from(self.digit(j)) + u64::from(other.digit(j)) + carry;
            digits.push((t % u64::from(self.base)) as u32);
            carry = t / u64::from(self.base);
        }
        if carry > 0 {
            digits.push(carry as u32);
        }
        Numeral::from_digits(self.base, digits).expect("digits reduced mod base")
    }

    /// Subtraction with borrows; `None` when `other > self`.
    pub fn checked_sub(&self, other: &Numeral) -> Option<Numeral> {
        if self.base != other.base || other > self {
            return None;
        }
        let b = i64::from(self.base);
        let mut digits = Vec::with_capacity(self.digits.len());
        let mut borrow = 0i64;
        for j in 0..self.digits.len() {
            let mut t = i64::from(self.digit(j)) - i64::from(other.digit(j)) - borrow;
            borrow = 0;
            if t < 0 {
                t += b;
                borrow = 1;
            }
            digits.push(t as u32);
        }
        Some(Numeral::from_digits(self.base, digits).expect("digits reduced mod base"))
    }

    /// `p^k · N`.
    pub fn shifted(&self, k: usize) -> Numeral {
        if self.is_zero() {
            return self.clone();
        }
        let mut digits = vec![0; k];
        digits.extend_from_slice(&self.digits);
        Numeral {
            base: self.base,
            digits,
        }
    }

    /// Remainder modulo `p^s - 1`, read off the digits.
    pub fn rem_q_minus_one(&self, shape: FieldShape) -> u64 {
        let m = shape.q_minus_one();
        if m == 1 {
            return 0;
        }
        let s = shape.s() as usize;
        let p = u64::from(shape.p());
        let mut weights = vec![1u64; s];
        for i in 1..s {
            weights[i] = weights[i - 1] * p % m;
        }
        self.digits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &d)| (acc + u64::from(d) * weights[j % s]) % m)
    }

    /// Digits written big-endian followed by `_p`, e.g. `"1012_3"`.
    pub fn to_base_string(&self) -> String {
        let mut out: String = if self.is_zero() {
            "0".into()
        } else {
            self.digits
                .iter()
                .rev()
                .map(|&d| char::from_digit(d, 36).unwrap_or('?'))
                .collect()
        };
        out.push('_');
        out.push_str(&self.base.to_string());
        out
    }

    /// Decimal followed by the base-`p` form, e.g. `"32 (1012_3)"`.
    pub fn labelled(&self) -> String {
        format!("{self} ({})", self.to_base_string())
    }
}

impl Ord for Numeral {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.digits.len().cmp(&other.digits.len()))
            .then_with(|| self.digits.iter().rev().cmp(other.digits.iter().rev()))
    }
}

impl PartialOrd for Numeral {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u128() {
            Ok(v) => write!(f, "{v}"),
            Err(_) => f.write_str(&self.to_base_string()),
        }
    }
}

/// True iff no digit position overflows when the parts are added, so that
/// the `σ(part)` partition `σ(Σ parts)`.
pub fn carry_free(parts: &[Numeral]) -> bool {
    let Some(base) = parts.first().map(Numeral::base) else {
        return true;
    };
    if parts.iter().any(|x| x.base() != base) {
        return false;
    }
    let len = parts.iter().map(Numeral::len).max().unwrap_or(0);
    (0..len).all(|j| parts.iter().map(|x| u64::from(x.digit(j))).sum::<u64>() < u64::from(base))
}

/// An element of `N^s`.
///
/// `PartialOrd` is the componentwise order: `a < b` means `a ≤ b`
/// coordinatewise with at least one strict coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector(Vec<u64>);

impl DigitVector {
    pub fn new(coords: Vec<u64>) -> Self {
        assert!(!coords.is_empty(), "a digit vector has at least one coordinate");
        DigitVector(coords)
    }

    pub fn zeros(s: usize) -> Self {
        DigitVector::new(vec![0; s])
    }

    /// Converts signed coordinates, failing on any negative entry.
    pub fn from_ints(coords: &[i128]) -> Option<Self> {
        coords
            .iter()
            .map(|&c| u64::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(DigitVector::new)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn to_ints(&self) -> Vec<i128> {
        self.0.iter().map(|&c| i128::from(c)).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &DigitVector) -> DigitVector {
        assert_eq!(self.len(), other.len());
        DigitVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &DigitVector) -> Option<DigitVector> {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DigitVector)
    }

    /// `R^k v`: coordinate `i` moves to `i + k (mod s)`.
    pub fn rotated(&self, k: usize) -> DigitVector {
        let s = self.len();
        let mut out = vec![0; s];
        for (i, &c) in self.0.iter().enumerate() {
            out[(i + k) % s] = c;
        }
        DigitVector(out)
    }
}

impl PartialOrd for DigitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.len() != other.len() {
            return None;
        }
        let le = self.0.iter().zip(&other.0).all(|(a, b)| a <= b);
        let ge = self.0.iter().zip(&other.0).all(|(a, b)| a >= b);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
