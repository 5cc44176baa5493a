//! Tame monodromy: characteristic polynomials, exterior powers, traces.
//!
//! The tame monodromy operator `σ` acts on the first cohomology of a
//! `g`-dimensional semi-abelian variety quasi-unipotently; for tame
//! reduction data its eigenvalues are roots of unity determined by the
//! jump spectrum.  Writing `ν_d` for twice the total multiplicity of the
//! jumps of order exactly `d` in `Q/Z`, the characteristic polynomial on
//! `H¹` is
//!
//! ```text
//!     P(t) = ∏_{d | e} Φ_d(t)^{ν_d / φ(d)}
//! ```
//!
//! with `Φ_d` the `d`-th cyclotomic polynomial and `φ` Euler's totient;
//! integrality of the exponents is a nontrivial consistency condition on
//! the spectrum and is reported as an error when violated.  Equivalently,
//! the eigenvalue *exponents* (arguments in `Q/Z`) form a Galois-stable
//! multiset: every primitive residue `k/d` appears `ν_d/φ(d)` times.
//!
//! The action on higher cohomology `H^i = Λ^i H¹` has eigenvalue
//! exponents given by `i`-fold subset sums.  [`exterior_char_poly`]
//! expands the product `∏ (t − ζ^s)` literally in the ring of cyclotomic
//! integers `Z[y]/Φ_E(y)` and recognises each coefficient as a rational
//! integer; a second route through the Galois-orbit factorisation must
//! agree, and the two are compared on every call.
//!
//! [`alternating_trace`] computes `Σ_i (−1)^i Tr(σ^d | H^i) =
//! ∏_x (1 − ζ^{d·x})`, the quantity the trace formula matches against
//! component counts of purely additive fibres.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::jumps::JumpSpectrum;
use crate::Frac;

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are not defined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            phi -= phi / p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Dense univariate polynomial over `Z`, coefficients in ascending degree
/// order.  Canonical form: no trailing zero coefficients (the zero
/// polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Test/readability helper: builds from machine-integer coefficients
    /// in ascending degree order.
    pub fn from_i64_coeffs(cs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(cs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by a monic divisor (exact in `Z[t]`).
    ///
    /// Panics if `divisor` is not monic; callers in this crate only ever
    /// divide by cyclotomic polynomials and their products.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "division requires a monic divisor");
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[k], BigInt::zero());
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate().take(d) {
                let delta = c * &lead;
                rem[k - d + i] -= delta;
            }
            quot[k - d] = lead;
        }
        rem.truncate(d);
        (
            IntPolynomial::from_coeffs(quot),
            IntPolynomial::from_coeffs(rem),
        )
    }

    /// Exact quotient by a monic divisor; `None` when the remainder is
    /// nonzero.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Whether the monic polynomial `self` divides `other` in `Z[t]`.
    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other.div_rem_monic(self).1.is_zero()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders in descending powers of `t`, e.g. `t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial `Φ_n`, computed by exact division of
/// `t^n − 1` by the cyclotomic polynomials of the proper divisors of `n`.
/// Results are memoised process-wide.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut quotient = &IntPolynomial::monomial(BigInt::one(), n as usize)
        - &IntPolynomial::one();
    for d in divisors(n) {
        if d < n {
            quotient = quotient
                .exact_div(&cyclotomic(d))
                .expect("t^n - 1 is divisible by the cyclotomics of the divisors");
        }
    }
    debug_assert_eq!(quotient.degree(), Some(euler_phi(n) as usize));
    cache.lock().unwrap().insert(n, quotient.clone());
    quotient
}

/// Element of `Z[y]/Φ_E(y)`, the ring generated by a primitive `E`-th
/// root of unity `y`.  The canonical representative has degree `< φ(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloInteger {
    modulus: u64,
    residue: IntPolynomial,
}

impl CycloInteger {
    fn reduce(modulus: u64, poly: IntPolynomial) -> Self {
        let phi = cyclotomic(modulus);
        let (_, residue) = poly.div_rem_monic(&phi);
        CycloInteger { modulus, residue }
    }

    pub fn zero(modulus: u64) -> Self {
        CycloInteger {
            modulus,
            residue: IntPolynomial::zero(),
        }
    }

    pub fn one(modulus: u64) -> Self {
        CycloInteger::from_int(modulus, BigInt::one())
    }

    pub fn from_int(modulus: u64, n: BigInt) -> Self {
        CycloInteger::reduce(modulus, IntPolynomial::constant(n))
    }

    /// The root power `y^k` (exponent taken modulo `E`).
    pub fn root_power(modulus: u64, k: u64) -> Self {
        let k = (k % modulus) as usize;
        CycloInteger::reduce(modulus, IntPolynomial::monomial(BigInt::one(), k))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Recognises a rational integer: the canonical representative must
    /// have degree ≤ 0.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.residue.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            Some(_) => None,
        }
    }
}

impl Add for &CycloInteger {
    type Output = CycloInteger;
    fn add(self, rhs: &CycloInteger) -> CycloInteger {
        assert_eq!(self.modulus, rhs.modulus, "mixed cyclotomic moduli");
        CycloInteger {
            modulus: self.modulus,
            residue: &self.residue + &rhs.residue,
        }
    }
}

impl Sub for &CycloInteger {
    type Output = CycloInteger;
    fn sub(self, rhs: &CycloInteger) -> CycloInteger {
        assert_eq!(self.modulus, rhs.modulus, "mixed cyclotomic moduli");
        CycloInteger {
            modulus: self.modulus,
            residue: &self.residue - &rhs.residue,
        }
    }
}

impl Mul for &CycloInteger {
    type Output = CycloInteger;
    fn mul(self, rhs: &CycloInteger) -> CycloInteger {
        assert_eq!(self.modulus, rhs.modulus, "mixed cyclotomic moduli");
        CycloInteger::reduce(self.modulus, &self.residue * &rhs.residue)
    }
}

/// Dense polynomial in `t` with cyclotomic-integer coefficients; the
/// working representation for products of linear factors `t − y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CPoly {
    modulus: u64,
    coeffs: Vec<CycloInteger>,
}

impl CPoly {
    fn one(modulus: u64) -> Self {
        CPoly {
            modulus,
            coeffs: vec![CycloInteger::one(modulus)],
        }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The linear factor `t − root`.
    fn linear(root: CycloInteger) -> Self {
        let modulus = root.modulus();
        CPoly {
            modulus,
            coeffs: vec![
                &CycloInteger::zero(modulus) - &root,
                CycloInteger::one(modulus),
            ],
        }
    }

    fn from_int_poly(modulus: u64, p: &IntPolynomial) -> Self {
        CPoly {
            modulus,
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| CycloInteger::from_int(modulus, c.clone()))
                .collect(),
        }
        .trim()
    }

    fn mul(&self, rhs: &CPoly) -> CPoly {
        assert_eq!(self.modulus, rhs.modulus);
        if self.is_zero() || rhs.is_zero() {
            return CPoly {
                modulus: self.modulus,
                coeffs: Vec::new(),
            };
        }
        let mut coeffs =
            vec![CycloInteger::zero(self.modulus); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        CPoly {
            modulus: self.modulus,
            coeffs,
        }
        .trim()
    }

    /// Division with remainder by a divisor whose leading coefficient
    /// is 1.
    fn div_rem_monic(&self, divisor: &CPoly) -> (CPoly, CPoly) {
        assert_eq!(self.modulus, divisor.modulus);
        let d = divisor.coeffs.len() - 1;
        assert!(
            divisor
                .coeffs
                .last()
                .is_some_and(|c| c == &CycloInteger::one(self.modulus)),
            "division requires a monic divisor"
        );
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (
                CPoly {
                    modulus: self.modulus,
                    coeffs: Vec::new(),
                },
                self.clone().trim(),
            );
        }
        let mut quot = vec![CycloInteger::zero(self.modulus); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let lead = rem[k].clone();
            if lead.is_zero() {
                continue;
            }
            rem[k] = CycloInteger::zero(self.modulus);
            for (i, c) in divisor.coeffs.iter().enumerate().take(d) {
                rem[k - d + i] = &rem[k - d + i] - &(c * &lead);
            }
            quot[k - d] = lead;
        }
        rem.truncate(d);
        (
            CPoly {
                modulus: self.modulus,
                coeffs: quot,
            }
            .trim(),
            CPoly {
                modulus: self.modulus,
                coeffs: rem,
            }
            .trim(),
        )
    }

    /// Converts to an integer polynomial if every coefficient is a
    /// rational integer.
    fn try_into_int_poly(&self) -> Option<IntPolynomial> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.as_integer()?);
        }
        Some(IntPolynomial::from_coeffs(coeffs))
    }
}

/// Galois-stable multiset of eigenvalue exponents in `Q/Z`.
///
/// Entries are reduced fractions in `[0, 1)` with positive multiplicities;
/// for every order `d` occurring, all `φ(d)` primitive residues `k/d`
/// must be present with one common multiplicity.  This is exactly the
/// condition for the induced characteristic polynomial to have integer
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnityRootMultiset {
    entries: BTreeMap<Frac, u64>,
}

fn normalize_mod1(x: Frac) -> Frac {
    x - x.floor()
}

impl UnityRootMultiset {
    /// Validates Galois stability; exponents are reduced modulo 1 first.
    pub fn new(entries: impl IntoIterator<Item = (Frac, u64)>) -> Result<Self, Error> {
        let mut map: BTreeMap<Frac, u64> = BTreeMap::new();
        for (x, m) in entries {
            if m == 0 {
                continue;
            }
            *map.entry(normalize_mod1(x)).or_insert(0) += m;
        }
        // Group by order and check each orbit is full and equi-multiple.
        let mut orbits: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (x, m) in &map {
            orbits.entry(*x.denom() as u64).or_default().push(*m);
        }
        for (d, mults) in &orbits {
            let phi = euler_phi(*d);
            if mults.len() as u64 != phi || mults.iter().any(|m| m != &mults[0]) {
                return Err(Error::InconsistentSpectrum(format!(
                    "exponents of order {d} do not form full Galois orbits"
                )));
            }
        }
        Ok(UnityRootMultiset { entries: map })
    }

    /// Total size counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Frac, u64)> + '_ {
        self.entries.iter().map(|(x, m)| (*x, *m))
    }

    /// The exponents repeated with multiplicity, ascending.
    pub fn expanded(&self) -> Vec<Frac> {
        let mut out = Vec::new();
        for (x, m) in self.entries() {
            out.extend(std::iter::repeat_n(x, m as usize));
        }
        out
    }

    /// Galois orbits as `(order, common multiplicity)` pairs.
    pub fn orbits(&self) -> Vec<(u64, u64)> {
        let mut seen: BTreeMap<u64, u64> = BTreeMap::new();
        for (x, m) in self.entries() {
            seen.insert(*x.denom() as u64, m);
        }
        seen.into_iter().collect()
    }

    /// Least common multiple of the exponent orders.
    pub fn lattice(&self) -> u64 {
        self.orbits().iter().fold(1, |acc, (d, _)| acc.lcm(d))
    }

    /// The monic integer polynomial with these roots:
    /// `∏_d Φ_d^{multiplicity}`.
    pub fn char_poly(&self) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for (d, m) in self.orbits() {
            out = &out * &cyclotomic(d).pow(m as u32);
        }
        out
    }
}

/// Eigenvalue exponents of the tame monodromy operator on `H¹`: each jump
/// of order `d` contributes two copies of the full primitive orbit of
/// order `d`, scaled down by `φ(d)`.
pub fn eigen_exponents(s: &JumpSpectrum) -> Result<UnityRootMultiset, Error> {
    let mut nu: BTreeMap<u64, u64> = BTreeMap::new();
    for (j, m) in s.entries() {
        *nu.entry(*j.denom() as u64).or_insert(0) += 2 * u64::from(m);
    }
    let mut entries = Vec::new();
    for (d, nu_d) in nu {
        let phi = euler_phi(d);
        if nu_d % phi != 0 {
            return Err(Error::InconsistentSpectrum(format!(
                "eigenvalue count {nu_d} at order {d} is not divisible by phi({d}) = {phi}"
            )));
        }
        let mult = nu_d / phi;
        for k in 1..=d {
            if k.gcd(&d) == 1 {
                entries.push((Frac::new(k as i64, d as i64), mult));
            }
        }
    }
    UnityRootMultiset::new(entries)
}

/// Characteristic polynomial of the tame monodromy operator on `H¹`
/// (degree `2g`, a product of cyclotomics `Φ_d` with `d | e`).
pub fn monodromy_char_poly(s: &JumpSpectrum) -> Result<IntPolynomial, Error> {
    let poly = eigen_exponents(s)?.char_poly();
    debug_assert_eq!(poly.degree(), Some(2 * s.g() as usize));
    Ok(poly)
}

/// Characteristic polynomial on `H^i = Λ^i H¹`: the roots are the `i`-fold
/// subset sums of the exponents.  The product is expanded in cyclotomic
/// integers, every coefficient is recognised as a rational integer, and
/// the result is cross-checked against the Galois-orbit factorisation.
pub fn exterior_char_poly(roots: &UnityRootMultiset, i: u32) -> Result<IntPolynomial, Error> {
    let expanded = roots.expanded();
    let n = expanded.len();
    assert!(
        (i as usize) <= n,
        "exterior power {i} exceeds the space dimension {n}"
    );

    let mut sums: BTreeMap<Frac, u64> = BTreeMap::new();
    for combo in (0..n).combinations(i as usize) {
        let total: Frac = combo.iter().map(|idx| expanded[*idx]).sum();
        *sums.entry(normalize_mod1(total)).or_insert(0) += 1;
    }

    let lattice = sums
        .keys()
        .fold(1u64, |acc, s| acc.lcm(&(*s.denom() as u64)));

    // Primary route: literal expansion of ∏ (t − y^{s·E})^{mult} in
    // Z[y]/Φ_E followed by integer recognition.
    let mut product = CPoly::one(lattice);
    for (s, mult) in &sums {
        let exponent = (s * Frac::from(lattice as i64)).to_integer() as u64;
        let factor = CPoly::linear(CycloInteger::root_power(lattice, exponent));
        for _ in 0..*mult {
            product = product.mul(&factor);
        }
    }
    let expanded_poly = product.try_into_int_poly().ok_or_else(|| {
        Error::IntegralityFailure(format!(
            "exterior characteristic polynomial (i = {i}) has a non-integral coefficient"
        ))
    })?;

    // Cross-check: the subset sums must form full Galois orbits, and the
    // orbit factorisation must reproduce the same polynomial.
    let orbit_poly = UnityRootMultiset::new(sums)?.char_poly();
    if orbit_poly != expanded_poly {
        return Err(Error::IntegralityFailure(format!(
            "exterior characteristic polynomial (i = {i}) disagrees with its Galois-orbit factorisation"
        )));
    }
    Ok(expanded_poly)
}

/// Alternating trace `Σ_i (−1)^i Tr(σ^d | H^i) = ∏_x (1 − ζ^{d·x})` as an
/// exact integer.
pub fn alternating_trace(roots: &UnityRootMultiset, d: u64) -> Result<BigInt, Error> {
    let lattice = roots.lattice();
    let mut product = CycloInteger::one(lattice);
    for (x, m) in roots.entries() {
        let scaled = normalize_mod1(x * Frac::from(d as i64));
        let exponent = (scaled * Frac::from(lattice as i64)).to_integer() as u64;
        let factor =
            &CycloInteger::one(lattice) - &CycloInteger::root_power(lattice, exponent);
        for _ in 0..m {
            product = &product * &factor;
        }
    }
    product.as_integer().ok_or_else(|| {
        Error::IntegralityFailure(format!(
            "alternating trace at d = {d} is not a rational integer"
        ))
    })
}

/// Verifies that `∏_j (t − ζ_e^{e·j})^{m_j}` (jumps scaled to the lattice
/// `e`) divides the characteristic polynomial on `H¹` over the cyclotomic
/// integers of modulus `e`.
pub fn check_jump_divisor(s: &JumpSpectrum) -> Result<bool, Error> {
    let e = s.semiabelian_degree();
    let char_poly = monodromy_char_poly(s)?;
    let mut divisor = CPoly::one(e);
    for (scaled, m) in s.integer_jumps(e)? {
        let factor = CPoly::linear(CycloInteger::root_power(e, scaled));
        for _ in 0..m {
            divisor = divisor.mul(&factor);
        }
    }
    let lifted = CPoly::from_int_poly(e, &char_poly);
    let (_, rem) = lifted.div_rem_monic(&divisor);
    Ok(rem.is_zero())
}

/// Verifies that `Φ_{τ(c)}`, for `c` the base-change conductor, divides
/// the characteristic polynomial on `H^g = Λ^g H¹`.
pub fn check_hg_cyclotomic(s: &JumpSpectrum) -> Result<bool, Error> {
    let roots = eigen_exponents(s)?;
    let hg = exterior_char_poly(&roots, s.g())?;
    let tau_c = *s.conductor().denom() as u64;
    Ok(cyclotomic(tau_c).divides(&hg))
}

/// Verifies the multiplicity bound: every jump multiplicity is at most
/// the orbit multiplicity `ν_{τ(j)}/φ(τ(j))` of its order.
pub fn check_multiplicity_bound(s: &JumpSpectrum) -> Result<bool, Error> {
    let roots = eigen_exponents(s)?;
    let orbit_mult: BTreeMap<u64, u64> = roots.orbits().into_iter().collect();
    for (j, m) in s.entries() {
        let d = *j.denom() as u64;
        let bound = orbit_mult.get(&d).copied().unwrap_or(0);
        if u64::from(m) > bound {
            return Ok(false);
        }
    }
    Ok(true)
}
