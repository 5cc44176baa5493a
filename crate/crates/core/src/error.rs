//! Crate-wide error type.
//!
//! Every fallible operation in the crate reports through [`Error`].  The
//! variants distinguish *invalid input data* (spectra or profiles that
//! violate their defining constraints) from *arithmetic impossibilities*
//! (non-integral coefficients, wild ramification) so callers can map them
//! onto user-facing diagnostics without string matching.

use std::fmt;

use crate::Frac;

/// Errors produced while validating reduction data or evaluating the exact
/// formulas on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A jump spectrum violated one of its defining constraints
    /// (multiplicity sum, jump range, `p` not 1 or prime, ...).
    InvalidSpectrum(String),
    /// The spectrum requires an extension degree `e` sharing a factor with
    /// the residue characteristic: the data is wildly ramified and outside
    /// the scope of the tame formulas.
    WildRamification { e: u64, p: u64 },
    /// A base-change degree must be prime to the residue characteristic.
    InvalidBaseChange { d: u64, p: u64 },
    /// A reduction profile violated one of its per-divisor constraints.
    InvalidProfile(String),
    /// A purely additive fibre stores a component count different from
    /// the one forced by the trace formula.
    TraceFormulaMismatch {
        divisor: u64,
        stored: u64,
        expected: num_bigint::BigInt,
    },
    /// The jump multiplicities are incompatible with an integral
    /// characteristic polynomial (some `φ(d)` does not divide `ν_d`).
    InconsistentSpectrum(String),
    /// A quantity that must be a rational integer (polynomial coefficient,
    /// trace, numerator coefficient) failed integrality recognition.
    IntegralityFailure(String),
    /// The Poincaré specialisation of a zeta numerator vanished
    /// identically (or left no pole at the conductor), so pole data is
    /// undefined.
    DegenerateSpecialization(String),
    /// An elliptic reduction-type tag was not recognised.
    UnknownKodairaTag(String),
    /// The requested Kodaira type is not tame at the given `p`.
    WildKodaira { tag: String, e: u64, p: u64 },
    /// A component count overflowed the machine range.
    Overflow(String),
    /// A pole was requested at a point where the function is regular.
    NoPole { location: Frac },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpectrum(msg) => write!(f, "invalid jump spectrum: {msg}"),
            Error::WildRamification { e, p } => write!(
                f,
                "wild ramification: extension degree {e} is not prime to residue characteristic {p}"
            ),
            Error::InvalidBaseChange { d, p } => write!(
                f,
                "base-change degree {d} is not prime to residue characteristic {p}"
            ),
            Error::InvalidProfile(msg) => write!(f, "invalid reduction profile: {msg}"),
            Error::TraceFormulaMismatch {
                divisor,
                stored,
                expected,
            } => write!(
                f,
                "component count {stored} at divisor {divisor} contradicts the trace formula (expected {expected})"
            ),
            Error::InconsistentSpectrum(msg) => {
                write!(f, "spectrum is not Galois-consistent: {msg}")
            }
            Error::IntegralityFailure(msg) => write!(f, "integrality failure: {msg}"),
            Error::DegenerateSpecialization(msg) => {
                write!(f, "degenerate specialisation: {msg}")
            }
            Error::UnknownKodairaTag(tag) => write!(f, "unknown Kodaira tag {tag:?}"),
            Error::WildKodaira { tag, e, p } => write!(
                f,
                "Kodaira type {tag} needs a degree-{e} extension, which is wild at p = {p}"
            ),
            Error::Overflow(msg) => write!(f, "arithmetic overflow: {msg}"),
            Error::NoPole { location } => {
                write!(f, "function is regular at T = L^-({location}); no pole data")
            }
        }
    }
}

impl std::error::Error for Error {}
