use num_traits::{Signed, Zero};
use serde::Serialize;

use super::newton::newton_polygon;
use super::valuation::{multiplicity, require_uniform};
use super::PointSpec;
use crate::algebra::{
    cauchy_root_bound, integer_nodes, interpolate, rational_roots, resultant, serde_rational,
    serde_rational_opt, Polynomial, QuotientElement, Rational,
};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, ThetaForm};

/// Indicial polynomial at a point of Katz rank 0.
///
/// At rational points and infinity `coefficients` is over Q. At an orbit
/// `p`, `residues[k]` is the coefficient of `lambda^k` as an element of
/// Q[x]/(p) and `norm` is `Res_x(p, I(x, lambda))`, a polynomial over Q whose
/// roots are the exponents at all conjugate points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Indicial {
    pub point: PointSpec,
    pub polynomial: Option<Polynomial>,
    pub residues: Option<Vec<Polynomial>>,
    pub norm: Option<Polynomial>,
}

impl Indicial {
    /// The polynomial over Q used for root data: the indicial polynomial
    /// itself, or its norm at an orbit.
    pub fn rational_form(&self) -> &Polynomial {
        self.polynomial
            .as_ref()
            .or(self.norm.as_ref())
            .expect("one form is always present")
    }
}

/// Rational exponents with multiplicities, plus a modulus bound on the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exponents {
    pub rational: Vec<ExponentRoot>,
    /// Degree of the cofactor without rational roots.
    pub remaining_degree: usize,
    /// Cauchy bound on the cofactor's roots, when it is nonconstant.
    #[serde(with = "serde_rational_opt")]
    pub remaining_bound: Option<Rational>,
    /// `max(|rational roots|, remaining_bound)`.
    #[serde(with = "serde_rational")]
    pub modulus_bound: Rational,
    /// Sum of all roots with multiplicity, exact.
    #[serde(with = "serde_rational")]
    pub sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRoot {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub multiplicity: usize,
}

impl Exponents {
    pub fn of(p: &Polynomial) -> Result<Self> {
        let roots = rational_roots(p)?;
        let mut rest = p.clone();
        for (r, m) in &roots {
            for _ in 0..*m {
                rest = rest.exact_div(&Polynomial::linear(r))?;
            }
        }
        let remaining_bound = if rest.is_constant() {
            None
        } else {
            Some(cauchy_root_bound(&rest)?)
        };
        let modulus_bound = roots
            .iter()
            .map(|(r, _)| r.abs())
            .chain(remaining_bound.clone())
            .max()
            .unwrap_or_else(Rational::zero);
        let sum = if p.is_constant() {
            Rational::zero()
        } else {
            crate::algebra::sum_of_roots(p)?
        };
        Ok(Exponents {
            rational: roots
                .into_iter()
                .map(|(value, multiplicity)| ExponentRoot { value, multiplicity })
                .collect(),
            remaining_degree: rest.degree().unwrap_or(0),
            remaining_bound,
            modulus_bound,
            sum,
        })
    }

    /// Distinct integer exponents, if every exponent is a simple integer root.
    pub fn distinct_integers(&self, order: usize) -> Option<Vec<i64>> {
        let all_simple = self.remaining_degree == 0
            && self.rational.len() == order
            && self.rational.iter().all(|r| r.multiplicity == 1 && r.value.is_integer());
        if !all_simple {
            return None;
        }
        self.rational
            .iter()
            .map(|r| i64::try_from(r.value.to_integer()).ok())
            .collect()
    }
}

fn require_regular(op: &DiffOperator, point: &PointSpec) -> Result<()> {
    let rank = newton_polygon(op, point)?.katz_rank();
    if !rank.is_zero() {
        return Err(Error::Unsupported(format!(
            "point {} is irregular (Katz rank {}); generalized exponents are not computed",
            point.fmt_var(op.var()),
            rank
        )));
    }
    Ok(())
}

/// Indicial polynomial from the lowest layer of the theta-form.
pub fn indicial_polynomial(op: &DiffOperator, point: &PointSpec) -> Result<Indicial> {
    require_regular(op, point)?;
    match point {
        PointSpec::Orbit(p) => orbit_indicial(op, p),
        _ => {
            let theta = ThetaForm::new(op, point, 1)?;
            Ok(Indicial {
                point: point.clone(),
                polynomial: Some(theta.layer(theta.min_valuation())),
                residues: None,
                norm: None,
            })
        }
    }
}

/// Leading Laurent coefficient of `c` at a root `alpha` of `p`, as an element
/// of Q[x]/(p), together with the valuation. With `c = g * p^v`,
/// `c ~ g(alpha) p'(alpha)^v (z - alpha)^v`.
pub(crate) fn orbit_leading(
    num: &Polynomial,
    den: &Polynomial,
    p: &Polynomial,
) -> Result<(i64, QuotientElement)> {
    let vn = multiplicity(num, p);
    let vd = multiplicity(den, p);
    let pk = |k: i64| p.pow(k as u32);
    let gn = num.exact_div(&pk(vn))?;
    let gd = den.exact_div(&pk(vd))?;
    let v = vn - vd;
    let g = QuotientElement::new(gn, p)?.mul(&QuotientElement::new(gd, p)?.inverse()?);
    let dp = QuotientElement::new(p.derivative(), p)?;
    Ok((v, g.mul(&dp.pow(v)?)))
}

fn orbit_indicial(op: &DiffOperator, p: &Polynomial) -> Result<Indicial> {
    let p = p.monic();
    let d = p.degree().unwrap_or(0);
    let mu = op.order().expect("nonzero");
    require_uniform(op, &p)?;
    let data: Vec<Option<(i64, QuotientElement)>> = op
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                Ok(None)
            } else {
                orbit_leading(c.num(), c.den(), &p).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let ymin = data
        .iter()
        .enumerate()
        .filter_map(|(j, x)| x.as_ref().map(|(v, _)| v - j as i64))
        .min()
        .expect("nonzero operator");
    // I(x, lambda) = sum over the lowest layer of lc_j(x) P_j(lambda)
    let zero = QuotientElement::from_rational(Rational::zero(), &p)?;
    let mut residues = vec![zero; mu + 1];
    for (j, x) in data.iter().enumerate() {
        let Some((v, lc)) = x else { continue };
        if v - j as i64 != ymin {
            continue;
        }
        let pj = Polynomial::falling_factorial(j);
        for (k, s) in pj.coeffs().iter().enumerate() {
            residues[k] = residues[k].add(&lc.scale(s));
        }
    }
    let residues: Vec<Polynomial> = residues.into_iter().map(|e| e.residue().clone()).collect();
    // Norm by evaluation at integer nodes and interpolation.
    let n = mu * d;
    let xs = integer_nodes(n + 1);
    let ys = xs
        .iter()
        .map(|lam| {
            let mut acc = Polynomial::zero();
            let mut pow = Rational::from_integer(1.into());
            for r in &residues {
                acc = &acc + &r.scale(&pow);
                pow *= lam;
            }
            if acc.is_zero() {
                Ok(Rational::zero())
            } else {
                resultant(&p, &acc)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let norm = interpolate(&xs, &ys)?;
    Ok(Indicial {
        point: PointSpec::Orbit(p),
        polynomial: None,
        residues: Some(residues),
        norm: Some(norm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::operator::parse_operator;

    fn op(s: &str) -> DiffOperator {
        parse_operator(s, "z").unwrap()
    }

    #[test]
    fn examples() {
        let i = indicial_polynomial(&op("z*D^2 + (2-z)*D + 3"), &PointSpec::zero()).unwrap();
        assert_eq!(i.polynomial.unwrap(), Polynomial::from_ints(&[0, 1, 1]));
        // ordinary point: lambda (lambda - 1)
        let i = indicial_polynomial(&op("z*D^2 + (2-z)*D + 3"), &PointSpec::Rational(rat(5))).unwrap();
        assert_eq!(i.polynomial.unwrap().monic(), Polynomial::falling_factorial(2));
        let gauss = op("z*(1-z)*D^2 + (1 - 2*z)*D - 1/4");
        let i = indicial_polynomial(&gauss, &PointSpec::zero()).unwrap();
        assert_eq!(i.polynomial.unwrap(), Polynomial::from_ints(&[0, 0, 1]));
        let i = indicial_polynomial(&gauss, &PointSpec::Infinity).unwrap();
        let e = Exponents::of(&i.polynomial.unwrap()).unwrap();
        assert_eq!(e.rational, vec![ExponentRoot { value: ratio(1, 2), multiplicity: 2 }]);
        assert!(matches!(
            indicial_polynomial(&op("z^2*D + 1"), &PointSpec::zero()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn orbit_norm_matches_rational_split() {
        // Singular at z^2 = 2 with exponents {0, 3/4} at both roots.
        let l = op("(z^2-2)*D^2 + (z/2)*D + 1");
        let orbit = Polynomial::from_ints(&[-2, 0, 1]);
        let i = indicial_polynomial(&l, &PointSpec::Orbit(orbit)).unwrap();
        // near alpha: (z^2-2) ~ 2 alpha t, lc of D^1 is alpha/2, I = 2a l(l-1) + (a/2) l
        // = 2a (l^2 - 3/4 l); norm over both roots is (-8) (l^2 - 3/4 l)^2.
        let base = Polynomial::new(vec![rat(0), ratio(-3, 4), rat(1)]);
        assert_eq!(i.norm.unwrap(), (&base * &base).scale(&rat(-8)));
    }

    #[test]
    fn exponent_data() {
        let e = Exponents::of(&Polynomial::from_ints(&[-2, 0, 1])).unwrap();
        assert!(e.rational.is_empty());
        assert_eq!(e.modulus_bound, rat(3));
        assert_eq!(e.sum, rat(0));
        let e = Exponents::of(&Polynomial::from_ints(&[0, -2, 1])).unwrap();
        assert_eq!(e.distinct_integers(2), Some(vec![0, 2]));
        assert_eq!(e.modulus_bound, rat(2));
    }
}
