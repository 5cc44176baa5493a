//! Laurent polynomials in a fractional power of the weight variable.
//!
//! Poincaré specialisation sends `L` to `u²`, but zeta functions are
//! evaluated at points like `T = u^(-2c)` where the conductor `c` is a
//! rational `a₀/b₀`.  All exponents in sight then live in the lattice
//! `(1/D)Z` for `D = b₀`, so we compute with honest Laurent polynomials in
//! the symbol `z = u^(1/D)`: a sorted map from `z`-exponents to rational
//! coefficients.
//!
//! Canonical form: zero coefficients are never stored, and the lattice is
//! minimal — the constructor divides `D` and every exponent by their
//! common gcd, so structural equality is semantic equality even across
//! values built on different lattices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Frac;

/// Laurent polynomial in `z = u^(1/lattice)` with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    lattice: u32,
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero(_lattice: u32) -> Self {
        LaurentPoly {
            lattice: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), 0, 1)
    }

    /// The single term `coeff · z^exp` on the given lattice.
    pub fn monomial(coeff: BigRational, exp: i64, lattice: u32) -> Self {
        assert!(lattice >= 1, "lattice must be positive");
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { lattice, coeffs }.normalized()
    }

    /// Builds `Σ cs[i] · u^i` (integer powers of `u`) on the given lattice;
    /// convenient for spelling expected values in tests.
    pub fn from_u_coeffs(cs: &[i64], lattice: u32) -> Self {
        let mut out = LaurentPoly::zero(lattice);
        for (i, c) in cs.iter().enumerate() {
            out = &out
                + &LaurentPoly::monomial(
                    BigRational::from_integer(BigInt::from(*c)),
                    i as i64 * i64::from(lattice),
                    lattice,
                );
        }
        out
    }

    fn normalized(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.coeffs.is_empty() {
            self.lattice = 1;
            return self;
        }
        let mut g = u64::from(self.lattice);
        for exp in self.coeffs.keys() {
            g = g.gcd(&exp.unsigned_abs());
            if g == 1 {
                return self;
            }
        }
        let g = g as i64;
        self.lattice = (u64::from(self.lattice) / g as u64) as u32;
        self.coeffs = std::mem::take(&mut self.coeffs)
            .into_iter()
            .map(|(e, c)| (e / g, c))
            .collect();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    /// Highest term as `(z-exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i64, BigRational)> {
        self.coeffs
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Lowest term as `(z-exponent, coefficient)`.
    pub fn trailing(&self) -> Option<(i64, BigRational)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c.clone()))
    }

    /// Degree of the top term measured in powers of `u`.
    pub fn degree_u(&self) -> Option<Frac> {
        self.leading().map(|(e, _)| Frac::new(e, i64::from(self.lattice)))
    }

    /// Sign of the leading coefficient: `1`, `-1`, or `0` for the zero
    /// polynomial.
    pub fn leading_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            _ => 1,
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero(1);
        }
        LaurentPoly {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrites both operands on the least common lattice.
    fn unify(&self, other: &Self) -> (Self, Self, u32) {
        let l = u64::from(self.lattice).lcm(&u64::from(other.lattice)) as u32;
        (self.rescaled(l), other.rescaled(l), l)
    }

    fn rescaled(&self, lattice: u32) -> Self {
        debug_assert_eq!(lattice % self.lattice, 0);
        let f = i64::from(lattice / self.lattice);
        LaurentPoly {
            lattice,
            coeffs: self.coeffs.iter().map(|(e, c)| (e * f, c.clone())).collect(),
        }
    }

    /// Evaluates at an integer-lattice point `u = v`; `None` when the
    /// polynomial genuinely involves fractional powers of `u` (or when a
    /// negative power meets `v = 0`).
    pub fn eval_at_u(&self, v: &BigRational) -> Option<BigRational> {
        let d = i64::from(self.lattice);
        let mut total = BigRational::zero();
        for (exp, c) in &self.coeffs {
            if exp % d != 0 {
                return None;
            }
            let k = exp / d;
            let power = if k >= 0 {
                num_traits::pow::pow(v.clone(), k as usize)
            } else {
                if v.is_zero() {
                    return None;
                }
                num_traits::pow::pow(v.recip(), (-k) as usize)
            };
            total += c * power;
        }
        Some(total)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b, _) = self.unify(rhs);
        for (e, c) in b.coeffs {
            let entry = a.coeffs.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        a.normalized()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b, lattice) = self.unify(rhs);
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                let entry = coeffs.entry(ea + eb).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        LaurentPoly { lattice, coeffs }.normalized()
    }
}

macro_rules! forward_owned_laurent {
    ($op:ident, $fn:ident) => {
        impl $op for LaurentPoly {
            type Output = LaurentPoly;
            fn $fn(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$fn(&rhs)
            }
        }
    };
}
forward_owned_laurent!(Add, add);
forward_owned_laurent!(Sub, sub);
forward_owned_laurent!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Renders in descending `u`-powers, e.g. `u^2 - 1/6*u^(-1/3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let d = i64::from(self.lattice);
        let mut first = true;
        for (exp, c) in self.coeffs.iter().rev() {
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
            let u_exp = Frac::new(*exp, d);
            let var = if u_exp == Frac::from(0) {
                None
            } else if u_exp == Frac::from(1) {
                Some("u".to_string())
            } else if u_exp.is_integer() && u_exp > Frac::from(0) {
                Some(format!("u^{u_exp}"))
            } else {
                Some(format!("u^({u_exp})"))
            };
            match var {
                None => write!(f, "{abs}")?,
                Some(v) if abs.is_one() => write!(f, "{v}")?,
                Some(v) => write!(f, "{abs}*{v}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn lattice_normalisation_gives_semantic_equality() {
        let a = LaurentPoly::monomial(q(1), 12, 6);
        let b = LaurentPoly::monomial(q(1), 2, 1);
        assert_eq!(a, b);
        assert_eq!(a.lattice(), 1);
    }

    #[test]
    fn arithmetic_across_lattices() {
        // u^(1/2) * u^(1/3) = u^(5/6)
        let a = LaurentPoly::monomial(q(1), 1, 2);
        let b = LaurentPoly::monomial(q(1), 1, 3);
        let prod = &a * &b;
        assert_eq!(prod, LaurentPoly::monomial(q(1), 5, 6));
        assert_eq!(prod.degree_u(), Some(Frac::new(5, 6)));
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = LaurentPoly::from_u_coeffs(&[1, 2], 1);
        let b = LaurentPoly::from_u_coeffs(&[1, 2], 3);
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn eval_handles_negative_exponents() {
        // 3u^2 - u^(-1)
        let p = &LaurentPoly::monomial(q(3), 2, 1) - &LaurentPoly::monomial(q(1), -1, 1);
        assert_eq!(p.eval_at_u(&q(2)), Some(BigRational::new(BigInt::from(23), BigInt::from(2))));
        assert_eq!(p.eval_at_u(&q(0)), None);
        let frac = LaurentPoly::monomial(q(1), 1, 2);
        assert_eq!(frac.eval_at_u(&q(4)), None);
    }

    #[test]
    fn leading_and_trailing() {
        let p = &LaurentPoly::monomial(q(-5), 7, 2) + &LaurentPoly::monomial(q(2), -3, 2);
        assert_eq!(p.leading(), Some((7, q(-5))));
        assert_eq!(p.trailing(), Some((-3, q(2))));
        assert_eq!(p.leading_sign(), -1);
        assert_eq!(LaurentPoly::zero(4).leading_sign(), 0);
    }

    #[test]
    fn rendering() {
        let p = &LaurentPoly::monomial(q(1), 2, 1)
            - &LaurentPoly::monomial(BigRational::new(BigInt::from(1), BigInt::from(6)), -1, 3);
        assert_eq!(p.to_string(), "u^2 - 1/6*u^(-1/3)");
        assert_eq!(LaurentPoly::zero(1).to_string(), "0");
    }
}
