use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

use super::PointSpec;

/// Number of times `p` divides `f` exactly; `f` nonzero, `p` nonconstant.
pub(crate) fn multiplicity(f: &Polynomial, p: &Polynomial) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    loop {
        match f.divrem(p) {
            Ok((q, r)) if r.is_zero() => {
                f = q;
                k += 1;
            }
            _ => return k,
        }
    }
}

/// Whether `f` vanishes to the same order at every root of `p`.
pub(crate) fn uniform_on(f: &Polynomial, p: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let v = multiplicity(f, p);
    let g = f.exact_div(&p.pow(v as u32)).expect("multiplicity divides");
    g.gcd(p).is_constant()
}

/// Orbit data is only meaningful when every coefficient has the same
/// valuation at all roots of `p`.
pub(crate) fn require_uniform(op: &DiffOperator, p: &Polynomial) -> Result<()> {
    let ok = op
        .coeffs()
        .iter()
        .all(|c| uniform_on(c.num(), p) && uniform_on(c.den(), p));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "valuations differ across the roots of {}; split the factor first",
            p.fmt_var("z")
        )))
    }
}

/// Order of `c` at a point. `None` stands for `+infinity` (the zero function).
///
/// At an orbit `p` this is the multiplicity of `p` in the numerator minus that
/// in the denominator; it equals the valuation at each root when the
/// irreducible factors of `p` occur uniformly.
pub fn valuation(c: &RationalFunction, point: &PointSpec) -> Option<i64> {
    if c.is_zero() {
        return None;
    }
    match point {
        PointSpec::Infinity => Some(c.den().degree_i64() - c.num().degree_i64()),
        PointSpec::Rational(r) => {
            let lin = Polynomial::linear(r);
            Some(multiplicity(c.num(), &lin) - multiplicity(c.den(), &lin))
        }
        PointSpec::Orbit(p) => Some(multiplicity(c.num(), p) - multiplicity(c.den(), p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn examples() {
        let z2 = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(valuation(&z2, &PointSpec::zero()), Some(-2));
        let k = RationalFunction::new(Polynomial::from_ints(&[2, -1]), Polynomial::x()).unwrap();
        assert_eq!(valuation(&k, &PointSpec::Infinity), Some(0));
        let orbit = Polynomial::from_ints(&[-2, 0, 1]);
        let c = RationalFunction::new(Polynomial::one(), orbit.clone()).unwrap();
        assert_eq!(valuation(&c, &PointSpec::Orbit(orbit)), Some(-1));
        assert_eq!(valuation(&RationalFunction::zero(), &PointSpec::zero()), None);
        let c: RationalFunction = Polynomial::from_ints(&[1, -2, 1]).into();
        assert_eq!(valuation(&c, &PointSpec::Rational(rat(1))), Some(2));
        assert_eq!(valuation(&c, &PointSpec::Infinity), Some(-2));
    }
}
