//! Exact arithmetic behind the Riemann hypothesis analogue for the Goss zeta
//! function of `F_q[T]`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerals`]: base-`p` digit sequences, the power multiset `σ(N)`, the
//!   residue-class views `τ_h(N)` and the folding map `Γ`.
//! - [`lattice`]: the matrix `E`, its scaled inverse `ψ_i`, and membership in
//!   the sets `𝔍`, `I_m`, `J_m`, `J_m^i`.
//! - [`compositions`]: valid compositions `V_m(N)` and `U_m(N)`, brute-force
//!   optimal elements, and the greedy element.
//! - [`powersums`]: arithmetic in `F_q` and `F_q[T]`, and the Carlitz power
//!   sums `S'_k(N)`, `S_k(N)` computed directly and combinatorially.
//! - [`zeta`]: Newton polygon data for `ζ(x, -y)` with integer or eventually
//!   periodic `p`-adic `y`.
//!
//! All arithmetic is exact. Nothing in the crate uses floating point except
//! the coordinate scaling of the SVG export.
//!
//! ```
//! use goss_zeta::{compositions, FieldShape, Numeral};
//!
//! let shape = FieldShape::new(3, 2).unwrap();
//! let n = Numeral::parse("11212_3", 3).unwrap();
//! let g = compositions::greedy(2, &n, shape, compositions::Mode::V).unwrap();
//! assert_eq!(g.to_u128_vec().unwrap(), vec![32, 99]);
//! ```

pub mod compositions;
pub mod error;
pub mod lattice;
pub mod numerals;
pub mod powersums;
pub mod zeta;

pub use compositions::{ColumnMatrix, Composition, Mode};
pub use error::{Error, Result};
pub use numerals::{carry_free, DigitVector, FieldShape, Numeral};

/// Default cap on the number of candidate tuples a brute-force enumeration
/// may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;
