use std::fmt;

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Residue class in Q[x]/(modulus).
///
/// The modulus is monic and squarefree. When it is irreducible the ring is a
/// number field; for a reducible squarefree modulus it is a product of fields
/// and [`QuotientElement::inverse`] fails on zero divisors.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientElement {
    modulus: Polynomial,
    residue: Polynomial,
}

impl QuotientElement {
    pub fn new(residue: Polynomial, modulus: &Polynomial) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("modulus must be nonconstant".into()));
        }
        let modulus = modulus.monic();
        let residue = residue.rem(&modulus)?;
        Ok(QuotientElement { modulus, residue })
    }

    pub fn from_rational(c: Rational, modulus: &Polynomial) -> Result<Self> {
        Self::new(Polynomial::constant(c), modulus)
    }

    /// Class of `x`, i.e. a generic root of the modulus.
    pub fn generator(modulus: &Polynomial) -> Result<Self> {
        Self::new(Polynomial::x(), modulus)
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn residue(&self) -> &Polynomial {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn wrap(&self, residue: Polynomial) -> Self {
        QuotientElement {
            residue: residue.rem(&self.modulus).expect("nonzero modulus"),
            modulus: self.modulus.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.wrap(&self.residue + &other.residue)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.wrap(&self.residue - &other.residue)
    }

    pub fn neg(&self) -> Self {
        self.wrap(-&self.residue)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.wrap(&self.residue * &other.residue)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.wrap(self.residue.scale(c))
    }

    /// Inverse via the extended Euclidean algorithm. Fails when the residue
    /// shares a factor with the modulus.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.residue.xgcd(&self.modulus);
        if !g.is_one() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(s))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.wrap(Polynomial::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Image of a polynomial with rational coefficients.
    pub fn eval_poly(p: &Polynomial, modulus: &Polynomial) -> Result<Self> {
        Self::new(p.clone(), modulus)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.residue
            .is_constant()
            .then(|| self.residue.coeff(0))
            .or_else(|| self.residue.is_zero().then(Rational::zero))
    }
}

impl fmt::Debug for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.residue, self.modulus)
    }
}
