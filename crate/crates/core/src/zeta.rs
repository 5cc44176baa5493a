//! The motivic zeta function of a reduction profile: power series,
//! closed rational form, pole analysis and the trace-formula identity.
//!
//! For a profile with spectrum of dimension `g`, semi-abelian degree `e`
//! and residue characteristic exponent `p`, the zeta function is the
//! series
//!
//! ```text
//!     Z(T) = Σ_{d ≥ 1, gcd(d, p) = 1}
//!            φ(d) · (L − 1)^{t(d)} · L^{u(d) + ord(d)} · [B(d)] · T^d
//! ```
//!
//! whose ingredients all come from [`crate::jumps`].  Every datum in the
//! `d`-th coefficient depends on `d` only through `gcd(d, e)` and the two
//! staircase functions `ord(d)` and `φ(d)`; grouping indices by residue
//! class `α (mod e)` and summing the resulting staircase-times-geometric
//! series therefore yields an exact rational form
//!
//! ```text
//!     Z(T) = N(T) / ( (1 − L^{ce} T^e)^{t(e)+1} · (1 − L^{cep} T^{ep})^{t(e)+1 if p > 1} )
//! ```
//!
//! with `c` the base-change conductor and `N` a polynomial over the value
//! ring.  Within a class `α`, `φ(α + qe) = ((α + qe)/α')^{t} φ(α')` is a
//! polynomial in `q` of degree `t = t(α')`, and `Σ_q P(q) x^q` for such a
//! polynomial is `N_P(x)/(1 − x)^{t+1}` with `N_P` of degree ≤ `t` (the
//! `(t+1)`-st finite difference of `P` vanishes).  When `p > 1` the
//! indices divisible by `p` form one sub-progression of each class mod
//! `ep`, and the same identity subtracts them exactly.
//!
//! [`MotivicRational::pole_analysis`] certifies the expected analytic
//! shape — a pole at `T = L^{−c}` of order `t(e) + 1`, no other poles,
//! and the sign `(−1)^{t(e)+1}` for the leading coefficient of the
//! residue under the Poincaré specialisation — by exact arithmetic:
//! whole denominator factors are cancelled by exact division, the
//! remaining vanishing order at `T = L^{−c}` is measured by synthetic
//! division over Laurent polynomials in `u^{1/b₀}` (keeping the abelian
//! class symbols formal throughout), and only the final sign reading
//! specialises the symbols.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::gring::{chi_top, ClassMonomial, GRingElement, GRingQ};
use crate::jumps::ReductionProfile;
use crate::laurent::LaurentPoly;
use crate::monodromy;
use crate::Frac;

/// Truncated zeta series: the exact coefficients for `1 ≤ d ≤ truncation`
/// (zero coefficients — in particular all `d` divisible by `p` — are not
/// stored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicSeries {
    truncation: u64,
    coeffs: BTreeMap<u64, GRingElement>,
}

impl MotivicSeries {
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// Coefficient of `T^d`; panics beyond the truncation order.
    pub fn coefficient(&self, d: u64) -> GRingElement {
        assert!(
            d >= 1 && d <= self.truncation,
            "coefficient index {d} outside 1..={}",
            self.truncation
        );
        self.coeffs.get(&d).cloned().unwrap_or_else(GRingElement::zero)
    }

    /// Nonzero coefficients in increasing degree.
    pub fn coefficients(&self) -> impl Iterator<Item = (u64, &GRingElement)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }
}

impl fmt::Display for MotivicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, c) in &self.coeffs {
            write!(f, "{} + ", render_term(c, *d))?;
        }
        write!(f, "O(T^{})", self.truncation + 1)
    }
}

fn render_term(coeff: &GRingElement, degree: u64) -> String {
    let t_part = match degree {
        0 => return format!("{coeff}"),
        1 => "T".to_string(),
        d => format!("T^{d}"),
    };
    if coeff == &GRingElement::one() {
        t_part
    } else {
        format!("({coeff})*{t_part}")
    }
}

/// The `d`-th series coefficient
/// `φ(d)·(L − 1)^{t(d)}·L^{u(d)+ord(d)}·[B(d)]` (requires `gcd(d, p) = 1`).
fn series_coefficient(profile: &ReductionProfile, d: u64) -> Result<GRingElement, Error> {
    let s = profile.spectrum();
    let fiber = profile.profile_at(d)?;
    let l_minus_one = &GRingElement::lefschetz() - &GRingElement::one();
    Ok(GRingElement::from_int(fiber.components)
        * l_minus_one.pow(fiber.toric_rank)
        * GRingElement::lefschetz_pow(i64::from(fiber.unipotent_rank) + s.ord(d)? as i64)
        * GRingElement::class_of(&fiber.abelian_class))
}

/// Zeta series of a profile, exact to order `n`.
pub fn series(profile: &ReductionProfile, n: u64) -> Result<MotivicSeries, Error> {
    let p = profile.spectrum().p();
    let mut coeffs = BTreeMap::new();
    for d in 1..=n {
        if d.gcd(&p) != 1 {
            continue;
        }
        coeffs.insert(d, series_coefficient(profile, d)?);
    }
    Ok(MotivicSeries {
        truncation: n,
        coeffs,
    })
}

/// Zeta function as an exact rational function: a numerator polynomial
/// over the value ring divided by a product of factors `(1 − L^s T^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicRational {
    /// T-degree ↦ coefficient; no zero coefficients stored.
    numerator: BTreeMap<u64, GRingElement>,
    /// `(s, b) ↦ m` for the factor `(1 − L^s T^b)^m`.
    denominator: BTreeMap<(u64, u64), u32>,
}

/// Report on the pole of the zeta function at `T = L^{−location}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub location: Frac,
    /// Pole order after all exact cancellation.
    pub order: u32,
    /// True when every surviving denominator factor vanishes at the same
    /// point, i.e. the function has no pole anywhere else.
    pub unique: bool,
    /// Sign of the leading coefficient of the residue under the Poincaré
    /// specialisation (`L ↦ u²`, class of dimension `a` ↦ `(1+u)^{2a}`).
    pub residue_leading_sign: i8,
}

/// Exact leading data of `Z` at a pole, kept as a fraction
/// `residue_num / residue_den` because non-matching denominator factors
/// evaluate to non-invertible Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PoleData {
    order: u32,
    unique: bool,
    residue_num: SymLaurent,
    residue_den: LaurentPoly,
}

impl MotivicRational {
    pub(crate) fn from_parts(
        numerator: BTreeMap<u64, GRingElement>,
        denominator: BTreeMap<(u64, u64), u32>,
    ) -> Self {
        MotivicRational {
            numerator: numerator.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            denominator: denominator.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    /// Numerator terms `(T-degree, coefficient)` in increasing degree.
    pub fn numerator(&self) -> impl Iterator<Item = (u64, &GRingElement)> {
        self.numerator.iter().map(|(d, c)| (*d, c))
    }

    /// Denominator factors `((s, b), m)` for `(1 − L^s T^b)^m`.
    pub fn denominator_factors(&self) -> impl Iterator<Item = ((u64, u64), u32)> + '_ {
        self.denominator.iter().map(|(k, m)| (*k, *m))
    }

    /// Degree in `T` (numerator degree minus denominator degree).
    pub fn degree(&self) -> i64 {
        let num: i64 = self.numerator.keys().next_back().map_or(0, |d| *d as i64);
        let den: i64 = self
            .denominator
            .iter()
            .map(|((_, b), m)| (*b * u64::from(*m)) as i64)
            .sum();
        num - den
    }

    /// Series expansion, exact to order `n`.
    pub fn expand(&self, n: u64) -> MotivicSeries {
        let len = (n + 1) as usize;
        let mut coeffs: Vec<GRingElement> = vec![GRingElement::zero(); len];
        for (d, c) in &self.numerator {
            if *d <= n {
                coeffs[*d as usize] = c.clone();
            }
        }
        // 1/(1 − L^s T^b) is the recurrence new[d] = acc[d] + L^s·new[d−b].
        for ((s, b), m) in &self.denominator {
            let l_pow = GRingElement::lefschetz_pow(*s as i64);
            let b = *b as usize;
            for _ in 0..*m {
                for d in b..len {
                    let lift = &coeffs[d - b] * &l_pow;
                    coeffs[d] = &coeffs[d] + &lift;
                }
            }
        }
        let coeffs: BTreeMap<u64, GRingElement> = coeffs
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d as u64, c))
            .collect();
        MotivicSeries {
            truncation: n,
            coeffs,
        }
    }

    /// The denominator multiplied out as a `T`-polynomial.
    fn denominator_poly(&self) -> BTreeMap<u64, GRingElement> {
        let mut out = BTreeMap::from([(0u64, GRingElement::one())]);
        for ((s, b), m) in &self.denominator {
            let factor = BTreeMap::from([
                (0u64, GRingElement::one()),
                (*b, -&GRingElement::lefschetz_pow(*s as i64)),
            ]);
            for _ in 0..*m {
                out = tp_mul_int(&out, &factor);
            }
        }
        out
    }

    /// Equality as rational functions (cross-multiplication over the value
    /// ring, which has no zero divisors).
    pub fn equivalent(&self, other: &MotivicRational) -> bool {
        let lhs = tp_mul_int(&self.numerator, &other.denominator_poly());
        let rhs = tp_mul_int(&other.numerator, &self.denominator_poly());
        lhs == rhs
    }

    /// Analyses the pole at `T = L^{−location}`; fails with
    /// [`Error::NoPole`] when the function has no pole there.
    pub fn pole_analysis(&self, location: Frac) -> Result<PoleReport, Error> {
        let data = self.pole_data(location)?;
        let sign = data.residue_num.realize().leading_sign() * data.residue_den.leading_sign();
        Ok(PoleReport {
            location,
            order: data.order,
            unique: data.unique,
            residue_leading_sign: sign,
        })
    }

    fn pole_data(&self, location: Frac) -> Result<PoleData, Error> {
        let a0 = *location.numer();
        let b0 = *location.denom();
        debug_assert!(b0 >= 1);

        let mut num = to_dense(&self.numerator);
        trim_dense(&mut num);
        if num.is_empty() {
            return Err(Error::NoPole { location });
        }

        // Cancel whole denominator factors that divide the numerator
        // exactly, so orders are read off the reduced fraction.
        let mut den: Vec<(u64, u64, u32)> = self
            .denominator
            .iter()
            .map(|((s, b), m)| (*s, *b, *m))
            .collect();
        for (s, b, m) in den.iter_mut() {
            while *m > 0 {
                match factor_exact_div(&num, *s, *b) {
                    Some(q) => {
                        num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }

        let is_matching = |s: u64, b: u64| Frac::new(s as i64, b as i64) == location;
        let matching: u32 = den
            .iter()
            .filter(|(s, b, _)| is_matching(*s, *b))
            .map(|(_, _, m)| *m)
            .sum();
        let unique = den.iter().all(|(s, b, m)| *m == 0 || is_matching(*s, *b));
        if matching == 0 {
            return Err(Error::NoPole { location });
        }

        // Vanishing order of the numerator at T = r = u^{−2·a0/b0}
        // (Poincaré weight convention L = u²), by synthetic division.
        let r = LaurentPoly::monomial(BigRational::one(), -2 * a0, b0 as u32);
        let mut n_ord = 0u32;
        while n_ord < matching {
            let (q, rem) = synth_div(&num, &r);
            if !rem.is_zero() {
                break;
            }
            num = q;
            trim_dense(&mut num);
            n_ord += 1;
        }
        if n_ord >= matching {
            return Err(Error::NoPole { location });
        }
        let order = matching - n_ord;

        // Leading coefficient at the pole: with T = r(1 + h), a matching
        // factor (1 − L^s T^b) contributes −b·h + O(h²), the cancelled
        // (T − r)^{n_ord} contributes (r·h)^{n_ord}, and non-matching
        // factors contribute their nonzero value at r.
        let (_, value) = synth_div(&num, &r);
        let mut scale_den = BigInt::one();
        for (s, b, m) in &den {
            if is_matching(*s, *b) {
                scale_den *= BigInt::from(*b).pow(*m);
            }
        }
        let sign = if matching.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let residue_num = value
            .mul_lp(&r.pow(n_ord))
            .scale(&BigRational::new(sign, scale_den));
        let mut residue_den = LaurentPoly::one();
        for (s, b, m) in &den {
            if *m > 0 && !is_matching(*s, *b) {
                let ex = (Frac::from(*s as i64) - location * Frac::from(*b as i64))
                    * Frac::from(2);
                let factor = &LaurentPoly::one()
                    - &LaurentPoly::monomial(BigRational::one(), *ex.numer(), *ex.denom() as u32);
                residue_den = &residue_den * &factor.pow(*m);
            }
        }
        Ok(PoleData {
            order,
            unique,
            residue_num,
            residue_den,
        })
    }
}

impl fmt::Display for MotivicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (d, c) in &self.numerator {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", render_term(c, *d))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        write!(f, " / ")?;
        for ((s, b), m) in &self.denominator {
            let l_part = match s {
                0 => String::new(),
                1 => "L*".to_string(),
                s => format!("L^{s}*"),
            };
            let t_part = match b {
                1 => "T".to_string(),
                b => format!("T^{b}"),
            };
            write!(f, "(1 - {l_part}{t_part})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Closed rational form of the zeta function of a profile.
///
/// Indices are grouped by residue class `α ∈ {1, …, e}` modulo `e`; each
/// class contributes a staircase-times-geometric sum with denominator
/// `(1 − L^{ce} T^e)^{t(α')+1}`, and for `p > 1` the single
/// sub-progression of `p`-divisible indices inside the class (smallest
/// element `n_α`, step `ep`) is subtracted with denominator
/// `(1 − L^{cep} T^{ep})^{t(α')+1}`.  Everything is placed over the
/// common denominator with exponent `t(e) + 1` and the numerator is
/// verified to be integral over the value ring.
pub fn closed_form(profile: &ReductionProfile) -> Result<MotivicRational, Error> {
    let s = profile.spectrum();
    let e = s.semiabelian_degree();
    let p = s.p();
    let eps = p > 1;
    let ce = (s.conductor() * Frac::from(e as i64)).to_integer() as u64;
    let t_pot = profile.potential_toric_rank();

    let mut num: BTreeMap<u64, GRingQ> = BTreeMap::new();
    for alpha in 1..=e {
        let a_rep = alpha.gcd(&e);
        let data = profile
            .divisor_data(a_rep)
            .expect("profiles store every divisor of e");
        let t = data.toric_rank;
        let u = s.unipotent_rank(alpha);
        let ord_alpha = s.ord(alpha)?;

        // C_α = φ(α')/(α')^t · (L−1)^t · L^{u+ord(α)} · [B(α')].
        let scalar = BigRational::new(
            BigInt::from(data.components),
            BigInt::from(a_rep).pow(t),
        );
        let l_minus_one = &GRingQ::lefschetz() - &GRingQ::one();
        let c_alpha = (l_minus_one.pow(t)
            * GRingQ::lefschetz_pow(i64::from(u) + ord_alpha as i64)
            * GRingQ::class_of(&data.abelian_class))
        .scale(&scalar);

        // Main branch: T^α·N_α(x)·(1−x)^{t_pot−t}·(1−x')^{ε(t_pot+1)}.
        let mut branch = progression_poly(
            &progression_numerator(alpha, e, t),
            ce,
            e,
            0,
            alpha,
        );
        branch = tp_mul(&branch, &one_minus_pow(ce, e, t_pot - t));
        if eps {
            branch = tp_mul(&branch, &one_minus_pow(ce * p, e * p, t_pot + 1));
            // Subtract the p-divisible sub-progression n_α + N·ep.
            let q0 = (0..p)
                .find(|q| (alpha + q * e).is_multiple_of(p))
                .expect("gcd(e, p) = 1 makes the class hit every residue mod p");
            let n_alpha = alpha + q0 * e;
            let mut sub = progression_poly(
                &progression_numerator(n_alpha, e * p, t),
                ce * p,
                e * p,
                q0 * ce,
                n_alpha,
            );
            sub = tp_mul(&sub, &one_minus_pow(ce * p, e * p, t_pot - t));
            sub = tp_mul(&sub, &one_minus_pow(ce, e, t_pot + 1));
            branch = tp_sub(branch, sub);
        }
        tp_add_assign(&mut num, tp_scale(&branch, &c_alpha));
    }

    let mut numerator = BTreeMap::new();
    for (d, coeff) in &num {
        numerator.insert(*d, coeff.try_into_integral()?);
    }
    let mut denominator = BTreeMap::from([((ce, e), t_pot + 1)]);
    if eps {
        denominator.insert((ce * p, e * p), t_pot + 1);
    }
    Ok(MotivicRational::from_parts(numerator, denominator))
}

/// One failure of the trace-formula identity: the Euler characteristic of
/// the `d`-th zeta coefficient differs from the alternating monodromy
/// trace at `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiFailure {
    pub d: u64,
    pub chi: BigInt,
    pub trace: BigInt,
}

/// Outcome of checking `χ(coefficient of T^d) = Σᵢ (−1)ⁱ Tr(σ^d | Hⁱ)`
/// for all `d ≤ truncation` prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiIdentityReport {
    pub truncation: u64,
    pub failures: Vec<ChiFailure>,
}

impl ChiIdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Machine check of the trace-formula identity on a profile: for every
/// `d ≤ n` prime to `p`, the topological Euler characteristic of the
/// `d`-th series coefficient must equal the alternating trace of the
/// `d`-th power of the tame monodromy operator.
pub fn chi_identity_check(profile: &ReductionProfile, n: u64) -> Result<ChiIdentityReport, Error> {
    let s = profile.spectrum();
    let roots = monodromy::eigen_exponents(s)?;
    let mut failures = Vec::new();
    for d in 1..=n {
        if d.gcd(&s.p()) != 1 {
            continue;
        }
        let chi = chi_top(&series_coefficient(profile, d)?);
        let trace = monodromy::alternating_trace(&roots, d)?;
        if chi != trace {
            failures.push(ChiFailure { d, chi, trace });
        }
    }
    Ok(ChiIdentityReport {
        truncation: n,
        failures,
    })
}

// ---------------------------------------------------------------------
// T-polynomials over the rational value ring (closed-form assembly).

type TPoly = BTreeMap<u64, GRingQ>;

fn tp_add_assign(a: &mut TPoly, b: TPoly) {
    for (d, g) in b {
        if g.is_zero() {
            continue;
        }
        match a.entry(d) {
            Entry::Vacant(v) => {
                v.insert(g);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &g;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

fn tp_sub(a: TPoly, b: TPoly) -> TPoly {
    let mut out = a;
    let negated = b.into_iter().map(|(d, g)| (d, -&g)).collect::<TPoly>();
    tp_add_assign(&mut out, negated);
    out
}

fn tp_mul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for (da, ga) in a {
        for (db, gb) in b {
            let mut prod = TPoly::from([(da + db, ga * gb)]);
            tp_add_assign(&mut out, std::mem::take(&mut prod));
        }
    }
    out
}

fn tp_scale(a: &TPoly, s: &GRingQ) -> TPoly {
    a.iter()
        .map(|(d, g)| (*d, g * s))
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

/// Generic multiplication for integer-coefficient T-polynomials
/// (cross-multiplication in [`MotivicRational::equivalent`], numerator
/// assembly in [`crate::elliptic`]).
pub(crate) fn tp_mul_int(
    a: &BTreeMap<u64, GRingElement>,
    b: &BTreeMap<u64, GRingElement>,
) -> BTreeMap<u64, GRingElement> {
    let mut out: BTreeMap<u64, GRingElement> = BTreeMap::new();
    for (da, ga) in a {
        for (db, gb) in b {
            let prod = ga * gb;
            match out.entry(da + db) {
                Entry::Vacant(v) => {
                    if !prod.is_zero() {
                        v.insert(prod);
                    }
                }
                Entry::Occupied(mut o) => {
                    let sum = o.get() + &prod;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
    }
    out
}

fn binom_big(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Numerator of `Σ_{q ≥ 0} (start + q·step)^t x^q` over `(1 − x)^{t+1}`:
/// coefficients `n_k = Σ_{i≤k} (−1)^i C(t+1, i) P(k − i)` for `k ≤ t`.
fn progression_numerator(start: u64, step: u64, t: u32) -> Vec<BigInt> {
    let p_val = |q: u64| BigInt::from(start + q * step).pow(t);
    (0..=u64::from(t))
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let term = binom_big(t + 1, i as u32) * p_val(k - i);
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

/// `Σ_k coeffs[k] · L^{l_shift + l_step·k} · T^{t_shift + t_step·k}`.
fn progression_poly(
    coeffs: &[BigInt],
    l_step: u64,
    t_step: u64,
    l_shift: u64,
    t_shift: u64,
) -> TPoly {
    let mut out = TPoly::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u64;
        let coeff = GRingQ::lefschetz_pow((l_shift + l_step * k) as i64)
            .scale(&BigRational::from_integer(c.clone()));
        tp_add_assign(&mut out, TPoly::from([(t_shift + t_step * k, coeff)]));
    }
    out
}

/// `(1 − L^{l_step} T^{t_step})^m` expanded binomially.
fn one_minus_pow(l_step: u64, t_step: u64, m: u32) -> TPoly {
    let mut out = TPoly::new();
    for i in 0..=m {
        let mut c = BigRational::from_integer(binom_big(m, i));
        if i % 2 == 1 {
            c = -c;
        }
        let coeff = GRingQ::lefschetz_pow((l_step * u64::from(i)) as i64).scale(&c);
        tp_add_assign(
            &mut out,
            TPoly::from([(t_step * u64::from(i), coeff)]),
        );
    }
    out
}

// ---------------------------------------------------------------------
// Pole analysis: T-polynomials whose coefficients pair class monomials
// with Laurent polynomials in a fractional power of the weight variable.

/// Value-ring element after the substitution `L ↦ u²`, with the abelian
/// class symbols kept formal: a finite sum `Σ_M f_M(u)·M` over class
/// monomials `M` with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SymLaurent {
    parts: BTreeMap<ClassMonomial, LaurentPoly>,
}

impl SymLaurent {
    fn zero() -> Self {
        SymLaurent {
            parts: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn from_gring(x: &GRingElement) -> Self {
        let mut parts: BTreeMap<ClassMonomial, LaurentPoly> = BTreeMap::new();
        for (key, coeff) in x.terms() {
            let mono = LaurentPoly::monomial(
                BigRational::from_integer(coeff.clone()),
                2 * key.lefschetz_exp,
                1,
            );
            match parts.entry(key.monomial.clone()) {
                Entry::Vacant(v) => {
                    v.insert(mono);
                }
                Entry::Occupied(mut o) => {
                    let sum = o.get() + &mono;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        SymLaurent { parts }
    }

    fn add(&self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.parts.clone();
        for (m, lp) in &rhs.parts {
            match out.entry(m.clone()) {
                Entry::Vacant(v) => {
                    v.insert(lp.clone());
                }
                Entry::Occupied(mut o) => {
                    let sum = o.get() + lp;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        SymLaurent { parts: out }
    }

    fn mul_lp(&self, f: &LaurentPoly) -> SymLaurent {
        if f.is_zero() {
            return SymLaurent::zero();
        }
        SymLaurent {
            parts: self.parts.iter().map(|(m, lp)| (m.clone(), lp * f)).collect(),
        }
    }

    fn scale(&self, q: &BigRational) -> SymLaurent {
        if q.is_zero() {
            return SymLaurent::zero();
        }
        SymLaurent {
            parts: self.parts.iter().map(|(m, lp)| (m.clone(), lp.scale(q))).collect(),
        }
    }

    /// Poincaré specialisation of the symbols: a class monomial of total
    /// dimension `a` becomes `(1 + u)^{2a}`.
    fn realize(&self) -> LaurentPoly {
        let one_plus_u = LaurentPoly::from_u_coeffs(&[1, 1], 1);
        let mut out = LaurentPoly::zero(1);
        for (m, lp) in &self.parts {
            out = &out + &(lp * &one_plus_u.pow(2 * m.total_dim()));
        }
        out
    }
}

/// Dense T-polynomial (index = degree) over [`SymLaurent`].
fn to_dense(num: &BTreeMap<u64, GRingElement>) -> Vec<SymLaurent> {
    let deg = num.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![SymLaurent::zero(); deg + 1];
    for (d, c) in num {
        out[*d as usize] = SymLaurent::from_gring(c);
    }
    out
}

fn trim_dense(v: &mut Vec<SymLaurent>) {
    while v.last().is_some_and(SymLaurent::is_zero) {
        v.pop();
    }
}

/// Exact quotient by `(1 − u^{2s} T^b)` if it divides, else `None`.
fn factor_exact_div(num: &[SymLaurent], s: u64, b: u64) -> Option<Vec<SymLaurent>> {
    let n = num.len();
    let b = b as usize;
    if n == 0 {
        return Some(Vec::new());
    }
    let lf = LaurentPoly::monomial(BigRational::one(), 2 * s as i64, 1);
    let mut q = vec![SymLaurent::zero(); n];
    for d in 0..n {
        let mut v = num[d].clone();
        if d >= b {
            v = v.add(&q[d - b].mul_lp(&lf));
        }
        q[d] = v;
    }
    // The quotient is a polynomial of degree n−1−b exactly when the top
    // b slots vanish.
    if q[n.saturating_sub(b)..].iter().all(SymLaurent::is_zero) {
        q.truncate(n.saturating_sub(b));
        Some(q)
    } else {
        None
    }
}

/// Synthetic division by `(T − r)`: returns `(quotient, remainder)`, the
/// remainder being the value at `T = r`.
fn synth_div(num: &[SymLaurent], r: &LaurentPoly) -> (Vec<SymLaurent>, SymLaurent) {
    let n = num.len();
    if n == 0 {
        return (Vec::new(), SymLaurent::zero());
    }
    let mut q = vec![SymLaurent::zero(); n - 1];
    let mut acc = SymLaurent::zero();
    for d in (1..n).rev() {
        acc = num[d].add(&acc.mul_lp(r));
        q[d - 1] = acc.clone();
    }
    let rem = num[0].add(&acc.mul_lp(r));
    (q, rem)
}
