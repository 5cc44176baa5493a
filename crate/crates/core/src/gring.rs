//! The value ring for motivic coefficients.
//!
//! Zeta coefficients live in a commutative ring freely generated (as a
//! `Z`-algebra) by an invertible symbol `L` — the class of the affine line,
//! carried with integer exponents of either sign — and finitely many
//! *abelian class symbols* `[B]`, each tagged with the dimension of the
//! abelian variety it denotes.  An element is a finite `Z`-linear
//! combination of monomials `L^k · [B_1]^{m_1} ··· [B_r]^{m_r}`.
//!
//! Canonical form: terms are kept in a sorted map keyed by
//! `(L-exponent, class monomial)`; zero coefficients are never stored, and
//! a symbol of dimension `0` (a point) is the multiplicative identity and
//! never appears inside a monomial.  Equality of canonical forms is
//! semantic equality.
//!
//! Two ring homomorphisms out of the ring do all the verification work:
//!
//! * [`chi_top`], the topological Euler characteristic: `L ↦ 1` and
//!   `[B] ↦ 0` whenever `dim B > 0`;
//! * [`poincare`], the Poincaré specialisation into Laurent polynomials in
//!   a root `z = u^(1/D)` of the weight variable: `L ↦ u²` and
//!   `[B] ↦ (1 + u)^(2·dim B)` (the Betti realisation of an abelian
//!   variety of that dimension).
//!
//! Evaluating the Poincaré image at `u = -1` recovers `chi_top`; that
//! consistency is pinned down by the tests.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPoly;

/// Coefficient rings the free module is defined over (`BigInt` for the
/// public ring, `BigRational` for intermediate scalars).
pub trait Coefficient: Clone + Eq + Ord + Signed + fmt::Display {}
impl<T: Clone + Eq + Ord + Signed + fmt::Display> Coefficient for T {}

/// Symbol for the class of an abelian variety of a known dimension.
///
/// Symbols compare by `(id, dim)`; a profile guarantees that equal ids
/// carry equal dimensions, so within one computation the id alone
/// identifies the class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianClassSymbol {
    id: String,
    dim: u32,
}

impl AbelianClassSymbol {
    pub fn new(id: impl Into<String>, dim: u32) -> Self {
        AbelianClassSymbol { id: id.into(), dim }
    }

    /// The class of a point (dimension 0); acts as `1` in the ring.
    pub fn point() -> Self {
        AbelianClassSymbol::new("pt", 0)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }
}

impl fmt::Display for AbelianClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.id)
    }
}

/// Multiset of class symbols with positive exponents; dimension-0 symbols
/// are never stored (they are the identity).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassMonomial(BTreeMap<AbelianClassSymbol, u32>);

impl ClassMonomial {
    pub fn one() -> Self {
        ClassMonomial::default()
    }

    pub fn symbol(sym: AbelianClassSymbol) -> Self {
        let mut m = ClassMonomial::default();
        m.mul_symbol(sym, 1);
        m
    }

    fn mul_symbol(&mut self, sym: AbelianClassSymbol, power: u32) {
        if sym.dim() == 0 || power == 0 {
            return;
        }
        *self.0.entry(sym).or_insert(0) += power;
    }

    fn mul(&self, other: &ClassMonomial) -> ClassMonomial {
        let mut out = self.clone();
        for (sym, pow) in &other.0 {
            out.mul_symbol(sym.clone(), *pow);
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total dimension of the product variety the monomial denotes.
    pub fn total_dim(&self) -> u32 {
        self.0.iter().map(|(s, m)| s.dim() * m).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&AbelianClassSymbol, u32)> {
        self.0.iter().map(|(s, m)| (s, *m))
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, pow) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{sym}")?;
            if *pow > 1 {
                write!(f, "^{pow}")?;
            }
        }
        Ok(())
    }
}

/// Key of one canonical term: the `L`-exponent and the class monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermKey {
    pub lefschetz_exp: i64,
    pub monomial: ClassMonomial,
}

/// Element of the value ring over an arbitrary coefficient ring `C`.
///
/// The public instantiation is [`GRingElement`] (integer coefficients);
/// rational coefficients appear only transiently while assembling closed
/// forms and are converted back with [`GRing::try_into_integral`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRing<C: Coefficient> {
    terms: BTreeMap<TermKey, C>,
}

/// The ring the rest of the crate computes in: integer coefficients.
pub type GRingElement = GRing<BigInt>;

/// Rational-coefficient variant used internally by the zeta assembly.
pub type GRingQ = GRing<BigRational>;

impl<C: Coefficient> GRing<C> {
    pub fn zero() -> Self {
        GRing {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        GRing::term(C::one(), 0, ClassMonomial::one())
    }

    pub fn from_coeff(c: C) -> Self {
        GRing::term(c, 0, ClassMonomial::one())
    }

    /// The Lefschetz symbol `L^k` (negative `k` is allowed: `L` is
    /// invertible in the ring).
    pub fn lefschetz_pow(k: i64) -> Self {
        GRing::term(C::one(), k, ClassMonomial::one())
    }

    pub fn lefschetz() -> Self {
        GRing::lefschetz_pow(1)
    }

    /// The class of the abelian variety denoted by `sym`; a dimension-0
    /// symbol yields `1`.
    pub fn class_of(sym: &AbelianClassSymbol) -> Self {
        GRing::term(C::one(), 0, ClassMonomial::symbol(sym.clone()))
    }

    pub fn term(coeff: C, lefschetz_exp: i64, monomial: ClassMonomial) -> Self {
        let mut e = GRing::zero();
        e.add_term(coeff, lefschetz_exp, monomial);
        e
    }

    fn add_term(&mut self, coeff: C, lefschetz_exp: i64, monomial: ClassMonomial) {
        if coeff.is_zero() {
            return;
        }
        let key = TermKey {
            lefschetz_exp,
            monomial,
        };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &C)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = GRing::zero();
        for (key, coeff) in &self.terms {
            out.add_term(coeff.clone() * c.clone(), key.lefschetz_exp, key.monomial.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GRing::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrites every coefficient through `f`, dropping terms that map to
    /// zero; used for the integral/rational conversions.
    pub fn map_coeff<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> GRing<D> {
        let mut out = GRing::zero();
        for (key, coeff) in &self.terms {
            out.add_term(f(coeff), key.lefschetz_exp, key.monomial.clone());
        }
        out
    }
}

impl GRingElement {
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GRing::from_coeff(n.into())
    }

    pub fn to_rational(&self) -> GRingQ {
        self.map_coeff(|c| BigRational::from_integer(c.clone()))
    }
}

impl GRingQ {
    /// Converts back to integer coefficients, failing if any coefficient
    /// has a nontrivial denominator.
    pub fn try_into_integral(&self) -> Result<GRingElement, crate::Error> {
        for (key, coeff) in self.terms() {
            if !coeff.is_integer() {
                return Err(crate::Error::IntegralityFailure(format!(
                    "coefficient {coeff} of L^{}*{} is not an integer",
                    key.lefschetz_exp, key.monomial
                )));
            }
        }
        Ok(self.map_coeff(|c| c.to_integer()))
    }
}

impl<C: Coefficient> Add for &GRing<C> {
    type Output = GRing<C>;
    fn add(self, rhs: &GRing<C>) -> GRing<C> {
        let mut out = self.clone();
        for (key, coeff) in &rhs.terms {
            out.add_term(coeff.clone(), key.lefschetz_exp, key.monomial.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &GRing<C> {
    type Output = GRing<C>;
    fn sub(self, rhs: &GRing<C>) -> GRing<C> {
        let mut out = self.clone();
        for (key, coeff) in &rhs.terms {
            out.add_term(-coeff.clone(), key.lefschetz_exp, key.monomial.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &GRing<C> {
    type Output = GRing<C>;
    fn neg(self) -> GRing<C> {
        self.map_coeff(|c| -c.clone())
    }
}

impl<C: Coefficient> Mul for &GRing<C> {
    type Output = GRing<C>;
    fn mul(self, rhs: &GRing<C>) -> GRing<C> {
        let mut out = GRing::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(
                    ca.clone() * cb.clone(),
                    ka.lefschetz_exp + kb.lefschetz_exp,
                    ka.monomial.mul(&kb.monomial),
                );
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($op:ident, $fn:ident) => {
        impl<C: Coefficient> $op for GRing<C> {
            type Output = GRing<C>;
            fn $fn(self, rhs: GRing<C>) -> GRing<C> {
                (&self).$fn(&rhs)
            }
        }
        impl<C: Coefficient> $op<&GRing<C>> for GRing<C> {
            type Output = GRing<C>;
            fn $fn(self, rhs: &GRing<C>) -> GRing<C> {
                (&self).$fn(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coefficient> fmt::Display for GRing<C> {
    /// Canonical rendering: terms in descending `L`-exponent (ties broken
    /// by the class monomial), coefficients folded into leading signs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in self.terms.iter().rev() {
            let negative = coeff.is_negative();
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

            let abs = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            match key.lefschetz_exp {
                0 => {}
                1 => factors.push("L".to_string()),
                k => factors.push(format!("L^{k}")),
            }
            if !key.monomial.is_one() {
                factors.push(key.monomial.to_string());
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Topological Euler characteristic: the ring homomorphism sending `L` to
/// `1` and every positive-dimensional class symbol to `0`.
pub fn chi_top(x: &GRingElement) -> BigInt {
    let mut total = BigInt::zero();
    for (key, coeff) in x.terms() {
        if key.monomial.is_one() {
            total += coeff;
        }
    }
    total
}

/// Poincaré specialisation on the exponent lattice `(1/D)Z`: the ring
/// homomorphism into Laurent polynomials in `z = u^(1/D)` sending `L` to
/// `u² = z^(2D)` and a class symbol of dimension `a` to `(1 + u)^(2a)`.
///
/// The image of a ring element therefore only involves integer powers of
/// `u`; fractional powers arise later, when zeta numerators are evaluated
/// at fractional powers of `L`.
pub fn poincare(x: &GRingElement, lattice: u32) -> LaurentPoly {
    let d = i64::from(lattice);
    let one_plus_u = LaurentPoly::monomial(BigRational::one(), 0, lattice)
        + LaurentPoly::monomial(BigRational::one(), d, lattice);
    let mut out = LaurentPoly::zero(lattice);
    for (key, coeff) in x.terms() {
        let mut term = LaurentPoly::monomial(
            BigRational::from_integer(coeff.clone()),
            2 * d * key.lefschetz_exp,
            lattice,
        );
        let betti_exp: u32 = 2 * key.monomial.total_dim();
        if betti_exp > 0 {
            term = &term * &one_plus_u.pow(betti_exp);
        }
        out = &out + &term;
    }
    out
}
