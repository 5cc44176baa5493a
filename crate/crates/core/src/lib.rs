//! Exact arithmetic for degenerating abelian varieties over a complete
//! discretely valued field with algebraically closed residue field.
//!
//! The input data is a *jump spectrum*: finitely many rational numbers in
//! `[0, 1)` with multiplicities summing to the dimension `g`, together with
//! the residue characteristic exponent `p` (`1` for equal characteristic
//! zero).  The jumps record how the connected Néron model of the variety
//! changes along the tower of tame extensions; everything this crate
//! computes is an exact function of that data plus a small amount of
//! per-extension reduction bookkeeping (the [`jumps::ReductionProfile`]).
//!
//! From the spectrum the crate derives, in exact rational/bigint arithmetic:
//!
//! * the base-change conductor `c = Σ m·j` and its elementary divisors
//!   ([`jumps`]);
//! * the characteristic polynomial of the tame monodromy operator on the
//!   first cohomology, its exterior powers, and the Lefschetz-style
//!   alternating traces ([`monodromy`]);
//! * the motivic generating series `Σ_d [fibre over the degree-d extension]
//!   · T^d` as an element of a Grothendieck-style value ring, its closed
//!   rational form, and the location/order/residue of its unique pole
//!   ([`zeta`], [`gring`], [`laurent`]);
//! * the specialised elliptic-curve tables indexed by Kodaira symbols
//!   ([`elliptic`]).
//!
//! All computations are exact; no floating point is used anywhere.

pub mod elliptic;
pub mod error;
pub mod gring;
pub mod jumps;
pub mod laurent;
pub mod monodromy;
pub mod zeta;

pub use error::Error;

/// Small exact rational used for jumps, conductors and eigenvalue
/// exponents.  Magnitudes stay tiny (denominators divide the degree of a
/// tame extension), so a machine-word ratio is plenty.
pub type Frac = num_rational::Rational64;

/// Convenience constructor for [`Frac`] (panics on zero denominator).
pub fn frac(num: i64, den: i64) -> Frac {
    Frac::new(num, den)
}
