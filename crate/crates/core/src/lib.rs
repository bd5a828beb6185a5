//! Exact and asymptotic enumeration of plane partitions.
//!
//! A plane partition of `n` is a two-dimensional array of positive integers
//! with weakly decreasing rows and columns whose entries sum to `n`. Their
//! counting sequence `q(n)` has the Euler-type generating function
//! `prod_{j>=1} (1 - x^j)^{-j}`, and more generally this crate works with
//! products `prod_{j>=1} (1 - x^j)^{-a_j}` for non-negative integer
//! exponents `a_j`.
//!
//! The crate provides:
//!
//! - [`sieve`]: divisor-power sums `beta_r(k) = sum_{d|k} d^r` and the
//!   convolution weights they induce on product coefficients.
//! - [`series`]: exact coefficient tables from three independent methods:
//!   the logarithmic-derivative recurrence, truncated product expansion,
//!   and brute-force enumeration for tiny `n`.
//! - [`hp`]: arbitrary-precision fixed-point ball arithmetic; every value
//!   carries a rigorous bound on its distance from the ideal real number.
//! - [`constants`]: `zeta(3)`, the Euler-Mascheroni constant, and
//!   `c = zeta'(-1)/2`, each with a proven error bound at a requested
//!   precision.
//! - [`meinardus`]: the generic leading asymptotic `C n^K exp(...)` for
//!   product generating functions, and the corrected plane-partition
//!   formula with a selectable leading constant `gamma_0`.
//! - [`condition_iv`]: numerical certification of the saddle-point
//!   bounding inequality `Re g(v) - g(y) <= -C2 * y^(-eps)` on a grid,
//!   together with the Stirling-number derivative identities used to
//!   analyse it.

pub mod condition_iv;
pub mod constants;
pub mod error;
pub mod hp;
pub mod meinardus;
pub mod series;
pub mod sieve;

mod limbs;

pub use error::{Error, Result};
