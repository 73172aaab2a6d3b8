use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::{rat, serde_rational_vec, Rational};
use crate::error::{Error, Result};

/// Reduced quotient `num / den` of polynomials with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Truncated Laurent expansion at 0: `sum_k coeffs[k] z^(valuation + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentWindow {
    pub valuation: i64,
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl RationalFunction {
    /// Reduces to lowest terms; errors on a zero denominator.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.degree_i64() - self.den.degree_i64())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        // (n/d)' = (n' d - n d') / d^2
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(z + shift)`.
    pub fn taylor_shift(&self, shift: &Rational) -> Self {
        Self::new(self.num.taylor_shift(shift), self.den.taylor_shift(shift))
            .expect("nonzero denominator")
    }

    /// `f(1/z)`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let n = dn.max(dd);
        // num(1/z)/den(1/z) = z^(n-dn) rev(num) / (z^(n-dd) rev(den))
        let num = self.num.reversed(dn).shift_up(n - dn);
        let den = self.den.reversed(dd).shift_up(n - dd);
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Order of vanishing at 0 (negative for a pole); `None` for zero.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let a = self.num.low_order()? as i64;
        let b = self.den.low_order().expect("nonzero denominator") as i64;
        Some(a - b)
    }

    /// Laurent coefficients at 0 from the valuation up to (excluding)
    /// absolute order `until`. Zero gives an empty window at valuation 0.
    pub fn laurent_until(&self, until: i64) -> LaurentWindow {
        let Some(v) = self.valuation_at_zero() else {
            return LaurentWindow {
                valuation: 0,
                coeffs: Vec::new(),
            };
        };
        let len = (until - v).max(0) as usize;
        let a = self.num.low_order().unwrap();
        let b = self.den.low_order().unwrap();
        let n = self.num.shift_down(a);
        let d = self.den.shift_down(b);
        LaurentWindow {
            valuation: v,
            coeffs: power_series_quotient(&n, &d, len),
        }
    }

    /// First `len` Laurent coefficients starting at the valuation.
    pub fn laurent_window(&self, len: usize) -> LaurentWindow {
        let v = self.valuation_at_zero().unwrap_or(0);
        self.laurent_until(v + len as i64)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.fmt_var(var);
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

/// First `len` Taylor coefficients of `n/d`, with `d(0) != 0`.
pub(crate) fn power_series_quotient(n: &Polynomial, d: &Polynomial, len: usize) -> Vec<Rational> {
    let d0_inv = d.coeff(0).recip();
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.coeff(k);
        for i in 1..=k.min(d.degree().unwrap_or(0)) {
            acc -= d.coeff(i) * &out[k - i];
        }
        out.push(acc * &d0_inv);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFunctionRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalFunctionRepr::deserialize(d)?;
        RationalFunction::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::constant(rat(c))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.fmt_var("z"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::new(num, &a * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
