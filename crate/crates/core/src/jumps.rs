//! Jump spectra of semi-abelian reductions and their per-extension
//! bookkeeping.
//!
//! A *jump spectrum* records, for a `g`-dimensional semi-abelian variety
//! over a complete discretely valued field with residue characteristic
//! exponent `p`, the finitely many rationals `j ∈ [0, 1)` where the
//! filtration of the Néron model jumps, each with a positive multiplicity;
//! the multiplicities sum to `g`.  The sole arithmetic constraint is
//! *tameness*: the least common multiple `e` of the orders of the jumps in
//! `Q/Z` must be prime to `p`.  `e` is the degree of the minimal tame
//! extension after which the reduction is semi-abelian.
//!
//! Everything else is elementary arithmetic on the multiset:
//!
//! * base change along a degree-`d` tame extension replaces each jump `j`
//!   by the fractional part of `d·j` (multiplicities merging on collision);
//! * the base-change conductor is `c = Σ m·j`, and the nonzero jumps,
//!   repeated with multiplicity, are its elementary divisors;
//! * the order function is `ord(d) = Σ m·⌊j·d⌋`; it satisfies
//!   `ord(d + q·e) = ord(d) + q·c·e` and `ord(d) ≤ c·d` with equality
//!   exactly when `e | d`.
//!
//! A [`ReductionProfile`] adds, for every divisor `α` of `e`, the shape of
//! the fibre over the degree-`α` extension: toric rank `t`, abelian rank
//! `a` (with `u + t + a = g` for `u` the unipotent rank forced by the
//! spectrum), the component count `φ(α)` of the Néron special fibre, and a
//! symbol for the class of its abelian quotient.  Component counts scale
//! multiplicatively in towers: for `gcd(d, p) = 1` and `α' = gcd(d, e)`,
//! `φ(d) = (d/α')^{t(α')} · φ(α')`.  At purely additive fibres (`u = g`)
//! the count is not free data: it must equal the alternating trace of the
//! `d`-th power of the monodromy operator, and the profile constructor
//! enforces (or, in lenient mode, warns about) that trace formula.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::gring::AbelianClassSymbol;
use crate::monodromy;
use crate::Frac;

/// Returns true when `p` is `1` (equal characteristic zero) or a prime.
pub fn valid_char_exponent(p: u64) -> bool {
    if p == 1 {
        return true;
    }
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiset of jumps of a `g`-dimensional semi-abelian variety, tame at
/// residue characteristic exponent `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpSpectrum {
    g: u32,
    p: u64,
    entries: BTreeMap<Frac, u32>,
}

impl JumpSpectrum {
    /// Validates and builds a spectrum.  Duplicate jump values merge their
    /// multiplicities.
    pub fn new(
        g: u32,
        p: u64,
        jumps: impl IntoIterator<Item = (Frac, u32)>,
    ) -> Result<Self, Error> {
        if g == 0 {
            return Err(Error::InvalidSpectrum("dimension g must be positive".into()));
        }
        if !valid_char_exponent(p) {
            return Err(Error::InvalidSpectrum(format!(
                "residue characteristic exponent {p} is neither 1 nor prime"
            )));
        }
        let mut entries: BTreeMap<Frac, u32> = BTreeMap::new();
        for (j, m) in jumps {
            if j < Frac::zero() || j >= Frac::one() {
                return Err(Error::InvalidSpectrum(format!(
                    "jump {j} lies outside [0, 1)"
                )));
            }
            if m == 0 {
                return Err(Error::InvalidSpectrum(format!(
                    "jump {j} has zero multiplicity"
                )));
            }
            *entries.entry(j).or_insert(0) += m;
        }
        let total: u32 = entries.values().sum();
        if total != g {
            return Err(Error::InvalidSpectrum(format!(
                "multiplicities sum to {total}, expected g = {g}"
            )));
        }
        let spectrum = JumpSpectrum { g, p, entries };
        let e = spectrum.semiabelian_degree();
        if e.gcd(&p) != 1 {
            return Err(Error::WildRamification { e, p });
        }
        Ok(spectrum)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Iterates jumps with multiplicities in increasing jump order.
    pub fn entries(&self) -> impl Iterator<Item = (Frac, u32)> + '_ {
        self.entries.iter().map(|(j, m)| (*j, *m))
    }

    /// Degree `e` of the minimal extension with semi-abelian reduction:
    /// the lcm of the orders of the jumps in `Q/Z`.
    pub fn semiabelian_degree(&self) -> u64 {
        self.entries
            .keys()
            .map(|j| *j.denom() as u64)
            .fold(1u64, |acc, d| acc.lcm(&d))
    }

    /// Spectrum after base change along a degree-`d` tame extension: each
    /// jump `j` becomes the fractional part of `d·j`.
    pub fn base_change(&self, d: u64) -> Result<JumpSpectrum, Error> {
        if d == 0 || d.gcd(&self.p) != 1 {
            return Err(Error::InvalidBaseChange { d, p: self.p });
        }
        let jumps = self.entries().map(|(j, m)| ((j * Frac::from(d as i64)).fract(), m));
        JumpSpectrum::new(self.g, self.p, jumps)
    }

    /// The jumps rescaled to integers on a lattice `e'` divisible by `e`:
    /// the multiset `{j·e'}` as a map to multiplicities.
    pub fn integer_jumps(&self, e_prime: u64) -> Result<BTreeMap<u64, u32>, Error> {
        let e = self.semiabelian_degree();
        if e_prime == 0 || !e_prime.is_multiple_of(e) {
            return Err(Error::InvalidSpectrum(format!(
                "lattice {e_prime} is not a multiple of e = {e}"
            )));
        }
        let mut out: BTreeMap<u64, u32> = BTreeMap::new();
        for (j, m) in self.entries() {
            let scaled = j * Frac::from(e_prime as i64);
            debug_assert!(scaled.is_integer());
            *out.entry(scaled.to_integer() as u64).or_insert(0) += m;
        }
        Ok(out)
    }

    /// Base-change conductor `c = Σ m·j`.
    pub fn conductor(&self) -> Frac {
        self.entries()
            .map(|(j, m)| j * Frac::from(m as i64))
            .sum()
    }

    /// Elementary divisors of the conductor: the nonzero jumps repeated
    /// with multiplicity, in increasing order.
    pub fn elementary_divisors(&self) -> Vec<Frac> {
        let mut out = Vec::new();
        for (j, m) in self.entries() {
            if !j.is_zero() {
                out.extend(std::iter::repeat_n(j, m as usize));
            }
        }
        out
    }

    /// Order function `ord(d) = Σ m·⌊j·d⌋`, defined for every `d ≥ 1`.
    /// (The zeta assembly also evaluates it at indices divisible by `p`.)
    pub fn ord(&self, d: u64) -> Result<u64, Error> {
        if d == 0 {
            return Err(Error::InvalidBaseChange { d, p: self.p });
        }
        let mut total: u64 = 0;
        for (j, m) in self.entries() {
            let floor = (j * Frac::from(d as i64)).floor().to_integer();
            debug_assert!(floor >= 0);
            total += floor as u64 * u64::from(m);
        }
        Ok(total)
    }

    /// Unipotent rank of the fibre over the degree-`d` extension: the
    /// total multiplicity of jumps with `d·j` non-integral.
    pub fn unipotent_rank(&self, d: u64) -> u32 {
        self.entries()
            .filter(|(j, _)| !(*j * Frac::from(d as i64)).is_integer())
            .map(|(_, m)| m)
            .sum()
    }
}

/// Reduction shape over the extension indexed by one divisor of `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorData {
    pub toric_rank: u32,
    pub abelian_rank: u32,
    /// Component count `φ(α)` of the Néron special fibre.
    pub components: u64,
    /// Class symbol of the abelian quotient (dimension = `abelian_rank`).
    pub abelian_class: AbelianClassSymbol,
}

/// Fibre invariants over the degree-`d` extension, for any `d` prime to
/// `p`, as produced by [`ReductionProfile::profile_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub unipotent_rank: u32,
    pub toric_rank: u32,
    pub abelian_rank: u32,
    pub components: u64,
    pub abelian_class: AbelianClassSymbol,
}

/// How strictly the trace formula is enforced at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    /// A component count contradicting the trace formula is an error.
    Strict,
    /// Contradictions are reported as warnings and the stored counts kept.
    Lenient,
}

/// A jump spectrum together with per-divisor reduction data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionProfile {
    spectrum: JumpSpectrum,
    divisors: BTreeMap<u64, DivisorData>,
}

impl ReductionProfile {
    /// Builds a profile under strict trace-formula validation.
    ///
    /// `supplied` need not mention every divisor of `e`: entries for
    /// purely additive fibres (`u(α) = g`) are derivable — toric and
    /// abelian rank are forced to zero and the component count to the
    /// trace-formula value — and are filled in automatically.  A missing
    /// entry at a divisor with `u(α) < g` is an error, as is a supplied
    /// entry violating `u + t + a = g`, `dim = a`, `t(α) ≤ t(e)` or the
    /// trace formula.
    pub fn new(
        spectrum: JumpSpectrum,
        supplied: BTreeMap<u64, DivisorData>,
    ) -> Result<Self, Error> {
        let (profile, warnings) = Self::build(spectrum, supplied, ValidationMode::Strict)?;
        debug_assert!(warnings.is_empty());
        Ok(profile)
    }

    /// Like [`ReductionProfile::new`] but downgrades trace-formula
    /// mismatches at supplied entries to warnings.
    pub fn new_lenient(
        spectrum: JumpSpectrum,
        supplied: BTreeMap<u64, DivisorData>,
    ) -> Result<(Self, Vec<String>), Error> {
        Self::build(spectrum, supplied, ValidationMode::Lenient)
    }

    fn build(
        spectrum: JumpSpectrum,
        supplied: BTreeMap<u64, DivisorData>,
        mode: ValidationMode,
    ) -> Result<(Self, Vec<String>), Error> {
        let g = spectrum.g();
        let e = spectrum.semiabelian_degree();
        let divisor_list = monodromy::divisors(e);

        for key in supplied.keys() {
            if !divisor_list.contains(key) {
                return Err(Error::InvalidProfile(format!(
                    "divisor {key} does not divide e = {e}"
                )));
            }
        }

        // Eigenvalue exponents are needed for every trace-formula value;
        // compute them lazily since good-reduction data never asks.
        let mut exponents: Option<monodromy::UnityRootMultiset> = None;
        let trace_at = |alpha: u64,
                            exponents: &mut Option<monodromy::UnityRootMultiset>|
         -> Result<BigInt, Error> {
            if exponents.is_none() {
                *exponents = Some(monodromy::eigen_exponents(&spectrum)?);
            }
            monodromy::alternating_trace(exponents.as_ref().unwrap(), alpha)
        };

        let mut warnings = Vec::new();
        let mut divisors: BTreeMap<u64, DivisorData> = BTreeMap::new();
        for &alpha in &divisor_list {
            let u = spectrum.unipotent_rank(alpha);
            match supplied.get(&alpha) {
                Some(data) => {
                    if u + data.toric_rank + data.abelian_rank != g {
                        return Err(Error::InvalidProfile(format!(
                            "divisor {alpha}: u + t + a = {} + {} + {} does not equal g = {g}",
                            u, data.toric_rank, data.abelian_rank
                        )));
                    }
                    if data.abelian_class.dim() != data.abelian_rank {
                        return Err(Error::InvalidProfile(format!(
                            "divisor {alpha}: class symbol {} has dimension {}, expected {}",
                            data.abelian_class,
                            data.abelian_class.dim(),
                            data.abelian_rank
                        )));
                    }
                    if data.components == 0 {
                        return Err(Error::InvalidProfile(format!(
                            "divisor {alpha}: component count must be positive"
                        )));
                    }
                    if u == g {
                        let expected = trace_at(alpha, &mut exponents)?;
                        if expected != BigInt::from(data.components) {
                            match mode {
                                ValidationMode::Strict => {
                                    return Err(Error::TraceFormulaMismatch {
                                        divisor: alpha,
                                        stored: data.components,
                                        expected,
                                    });
                                }
                                ValidationMode::Lenient => warnings.push(format!(
                                    "divisor {alpha}: component count {} differs from trace-formula value {expected}",
                                    data.components
                                )),
                            }
                        }
                    }
                    divisors.insert(alpha, data.clone());
                }
                None => {
                    if u != g {
                        return Err(Error::InvalidProfile(format!(
                            "missing entry for divisor {alpha} of e = {e} (fibre is not purely additive, so its data cannot be derived)"
                        )));
                    }
                    let expected = trace_at(alpha, &mut exponents)?;
                    let components = expected.to_u64().filter(|c| *c > 0).ok_or_else(|| {
                        Error::InvalidProfile(format!(
                            "divisor {alpha}: trace-formula component count {expected} is not a positive machine integer"
                        ))
                    })?;
                    divisors.insert(
                        alpha,
                        DivisorData {
                            toric_rank: 0,
                            abelian_rank: 0,
                            components,
                            abelian_class: AbelianClassSymbol::point(),
                        },
                    );
                }
            }
        }

        // Toric ranks may not exceed the potential toric rank t(e).
        let t_pot = divisors[&e].toric_rank;
        for (alpha, data) in &divisors {
            if data.toric_rank > t_pot {
                return Err(Error::InvalidProfile(format!(
                    "divisor {alpha}: toric rank {} exceeds potential toric rank {t_pot}",
                    data.toric_rank
                )));
            }
        }

        // One id, one dimension: symbols are global to the profile.
        let mut dims: BTreeMap<&str, u32> = BTreeMap::new();
        for data in divisors.values() {
            let sym = &data.abelian_class;
            if let Some(prev) = dims.insert(sym.id(), sym.dim()) {
                if prev != sym.dim() {
                    return Err(Error::InvalidProfile(format!(
                        "class symbol {:?} used with dimensions {prev} and {}",
                        sym.id(),
                        sym.dim()
                    )));
                }
            }
        }

        Ok((ReductionProfile { spectrum, divisors }, warnings))
    }

    pub fn spectrum(&self) -> &JumpSpectrum {
        &self.spectrum
    }

    /// Stored data at a divisor of `e`.
    pub fn divisor_data(&self, alpha: u64) -> Option<&DivisorData> {
        self.divisors.get(&alpha)
    }

    pub fn divisors(&self) -> impl Iterator<Item = (u64, &DivisorData)> {
        self.divisors.iter().map(|(a, d)| (*a, d))
    }

    /// Potential toric rank `t(e)`.
    pub fn potential_toric_rank(&self) -> u32 {
        let e = self.spectrum.semiabelian_degree();
        self.divisors[&e].toric_rank
    }

    /// True when the reduction over the degree-`e` extension is an abelian
    /// variety (no toric part — equivalently the abelian rank there is `g`).
    pub fn has_potential_good_reduction(&self) -> bool {
        self.potential_toric_rank() == 0
    }

    /// Fibre invariants over the degree-`d` extension, `gcd(d, p) = 1`:
    /// ranks and class are those stored at `α' = gcd(d, e)`, and the
    /// component count scales as `φ(d) = (d/α')^{t(α')}·φ(α')`.
    pub fn profile_at(&self, d: u64) -> Result<Fiber, Error> {
        if d == 0 || d.gcd(&self.spectrum.p()) != 1 {
            return Err(Error::InvalidBaseChange {
                d,
                p: self.spectrum.p(),
            });
        }
        let e = self.spectrum.semiabelian_degree();
        let alpha = d.gcd(&e);
        let data = &self.divisors[&alpha];
        let ratio = d / alpha;
        let mut components: u128 = u128::from(data.components);
        for _ in 0..data.toric_rank {
            components = components.checked_mul(u128::from(ratio)).ok_or_else(|| {
                Error::Overflow(format!("component count at d = {d} exceeds u128"))
            })?;
        }
        let components = components
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("component count at d = {d} exceeds u64")))?;
        Ok(Fiber {
            unipotent_rank: self.spectrum.unipotent_rank(d),
            toric_rank: data.toric_rank,
            abelian_rank: data.abelian_rank,
            components,
            abelian_class: data.abelian_class.clone(),
        })
    }
}
