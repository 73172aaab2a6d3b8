//! Linear differential operators `sum_j c_j(z) D^j` with rational function
//! coefficients, `D = d/dz`, and the ring structure of Q(z)[D].

mod text;
mod theta;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

pub use text::parse_operator;
pub use theta::{localize, stirling_rows, ThetaForm};

pub const DEFAULT_VAR: &str = "z";

/// An element of Q(z)[D], stored in D-form with the coefficient of `D^j` at
/// index `j`. The zero operator has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<RationalFunction>,
    var: String,
}

/// Order and degree data of the monic form `sum_j (U_j / V) D^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub order: usize,
    /// `max(deg U_0, ..., deg U_{order-1}, deg V)`
    pub degree_z: usize,
    pub denominator_degree: usize,
}

impl DiffOperator {
    pub fn new(coeffs: Vec<RationalFunction>) -> Self {
        Self::with_var(coeffs, DEFAULT_VAR)
    }

    pub fn with_var(mut coeffs: Vec<RationalFunction>, var: &str) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        DiffOperator {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn from_polys(polys: Vec<Polynomial>) -> Self {
        Self::new(polys.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// The derivation `D`.
    pub fn d() -> Self {
        Self::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    /// Multiplication by a rational function (an order-0 operator).
    pub fn scalar(c: RationalFunction) -> Self {
        Self::new(vec![c])
    }

    /// Multiplication by the variable `z`.
    pub fn var_z() -> Self {
        Self::scalar(Polynomial::x().into())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn set_var(&mut self, var: &str) {
        self.var = var.to_string();
    }

    fn same_var(&self, coeffs: Vec<RationalFunction>) -> Self {
        Self::with_var(coeffs, &self.var)
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RationalFunction {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order with the sentinel `-1` for the zero operator.
    pub fn order_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> RationalFunction {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    fn require_nonzero(&self) -> Result<usize> {
        self.order()
            .ok_or_else(|| Error::InvalidInput("zero operator".into()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.same_var((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.same_var(self.coeffs.iter().map(|c| -c).collect())
    }

    /// `f * self` for a rational function `f`.
    pub fn scale_left(&self, f: &RationalFunction) -> Self {
        self.same_var(self.coeffs.iter().map(|c| f * c).collect())
    }

    /// `D * self`, by `D c = c D + c'`.
    pub fn derive_left(&self) -> Self {
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j] = &out[j] + &c.derivative();
            out[j + 1] = &out[j + 1] + c;
        }
        self.same_var(out)
    }

    /// The composition `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc = self.same_var(Vec::new());
        let mut power = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.derive_left();
            }
            if !a.is_zero() {
                acc = acc.add(&power.scale_left(a));
            }
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.same_var(vec![RationalFunction::one()]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Right Euclidean division: `self = q * divisor + r` with
    /// `order(r) < order(divisor)`.
    pub fn right_divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dm) = divisor.order() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = divisor.leading().recip()?;
        let mut rem = self.clone();
        let mut quot = vec![RationalFunction::zero(); self.coeffs.len().saturating_sub(dm)];
        while let Some(o) = rem.order().filter(|&o| o >= dm) {
            let k = o - dm;
            let t = &rem.leading() * &lc_inv;
            let mut term = vec![RationalFunction::zero(); k + 1];
            term[k] = t.clone();
            let step = self.same_var(term).mul(divisor);
            rem = rem.sub(&step);
            quot[k] = &quot[k] + &t;
            debug_assert!(rem.order_i64() < o as i64);
        }
        Ok((self.same_var(quot), rem))
    }

    /// Formal adjoint `sum_j (-D)^j * c_j`.
    pub fn adjoint(&self) -> Self {
        let mut acc = self.same_var(Vec::new());
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = self.same_var(vec![c.clone()]);
            for _ in 0..j {
                term = term.derive_left().neg();
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute `z -> z + shift`, moving the point `shift` to 0.
    pub fn shift_point(&self, shift: &Rational) -> Self {
        self.same_var(self.coeffs.iter().map(|c| c.taylor_shift(shift)).collect())
    }

    /// Image under `z -> 1/z`, where `D` becomes `-z^2 D`.
    pub fn invert_variable(&self) -> Self {
        let minus_z2 = Polynomial::monomial(rat(-1), 2);
        let t = self.same_var(vec![RationalFunction::zero(), minus_z2.into()]);
        let mut acc = self.same_var(Vec::new());
        let mut power = self.same_var(vec![RationalFunction::one()]);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = power.mul(&t);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale_left(&c.invert_variable()));
            }
        }
        acc
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        self.require_nonzero()?;
        let inv = self.leading().recip()?;
        Ok(self.scale_left(&inv))
    }

    /// Common denominator `V` (monic) and numerators `U_j` of the monic form.
    pub fn monic_parts(&self) -> Result<(Vec<Polynomial>, Polynomial)> {
        let monic = self.monic()?;
        let v = monic
            .coeffs
            .iter()
            .fold(Polynomial::one(), |acc, c| acc.lcm(c.den()));
        let us = monic
            .coeffs
            .iter()
            .map(|c| &c.num().clone() * &v.exact_div(c.den()).expect("lcm"))
            .collect();
        Ok((us, v))
    }

    /// Coprime polynomial coefficients `p_j` with `self = f * sum p_j D^j` for a
    /// rational function `f`. The `p_j` have integer coefficients with no
    /// common integer factor and the leading coefficient of `p_m` is positive.
    pub fn polynomial_form(&self) -> Result<Vec<Polynomial>> {
        self.require_nonzero()?;
        let den = self
            .coeffs
            .iter()
            .fold(Polynomial::one(), |acc, c| acc.lcm(c.den()));
        let mut polys: Vec<Polynomial> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Polynomial::zero()
                } else {
                    c.num() * &den.exact_div(c.den()).expect("lcm")
                }
            })
            .collect();
        let g = polys.iter().fold(Polynomial::zero(), |acc, p| acc.gcd(p));
        if !g.is_one() {
            polys = polys.iter().map(|p| p.exact_div(&g).expect("gcd")).collect();
        }
        // Integer content over all coefficients.
        let l = polys
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let ints: Vec<Vec<BigInt>> = polys
            .iter()
            .map(|p| {
                p.coeffs()
                    .iter()
                    .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        let content = ints
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut scale = Rational::new(l, content);
        if polys.last().unwrap().leading().is_negative() {
            scale = -scale;
        }
        Ok(polys.iter().map(|p| p.scale(&scale)).collect())
    }

    /// `q = max_j deg p_j` of the polynomial form.
    pub fn polynomial_degree(&self) -> Result<usize> {
        Ok(self
            .polynomial_form()?
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0))
    }

    /// Naive height: largest absolute integer coefficient of the polynomial form.
    pub fn height(&self) -> Result<BigInt> {
        Ok(self
            .polynomial_form()?
            .iter()
            .flat_map(|p| p.coeffs().iter().map(|c| c.numer().abs()))
            .max()
            .unwrap_or_else(BigInt::zero))
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        let order = self.require_nonzero()?;
        let (us, v) = self.monic_parts()?;
        let degree_z = us[..order]
            .iter()
            .filter_map(Polynomial::degree)
            .chain(v.degree())
            .max()
            .unwrap_or(0);
        Ok(DegreeProfile {
            order,
            degree_z,
            denominator_degree: v.degree().unwrap_or(0),
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(RationalFunction::is_polynomial)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_operator(self))
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({})", self)
    }
}

/// JSON coefficient: a bare ascending array for polynomials, `{num, den}`
/// otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Poly(Polynomial),
    Frac(RationalFunction),
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    #[serde(default = "default_var")]
    var: String,
    coeffs: Vec<CoeffRepr>,
}

fn default_var() -> String {
    DEFAULT_VAR.to_string()
}

impl Serialize for DiffOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let polynomial = self.is_polynomial();
        OperatorRepr {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    if polynomial {
                        CoeffRepr::Poly(c.num().clone())
                    } else {
                        CoeffRepr::Frac(c.clone())
                    }
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = OperatorRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|c| match c {
                CoeffRepr::Poly(p) => RationalFunction::from_poly(p),
                CoeffRepr::Frac(f) => f,
            })
            .collect();
        Ok(DiffOperator::with_var(coeffs, &repr.var))
    }
}
