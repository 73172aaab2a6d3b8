use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::integer::divisors;
use super::poly::Polynomial;
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

fn nonzero(p: &Polynomial) -> Result<()> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    Ok(())
}

/// Yun's squarefree decomposition.
///
/// Returns monic, squarefree, pairwise coprime factors `f_i` with
/// multiplicities `m_i` such that `prod f_i^m_i = p / lc(p)`. Constant
/// polynomials give an empty list.
pub fn squarefree_factorization(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    nonzero(p)?;
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let f = p.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.exact_div(&a)?;
    let mut c = df.exact_div(&a)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// All rational roots with multiplicities, ascending.
///
/// Candidates `±u/v` come from the divisors `u | a_0`, `v | a_n` of the
/// primitive integer polynomial after removing the power of `x`.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, usize)>> {
    nonzero(p)?;
    let mut roots = Vec::new();
    let zero_mult = p.low_order().unwrap();
    let mut rest = p.shift_down(zero_mult);
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if rest.is_constant() {
        return Ok(roots);
    }
    // Only the squarefree part matters for candidates.
    let sqf = rest.exact_div(&rest.gcd(&rest.derivative()))?;
    let ints = sqf.primitive_integer_coeffs();
    let a0 = ints.first().unwrap().magnitude().clone();
    let an = ints.last().unwrap().magnitude().clone();
    let bound = cauchy_root_bound(&sqf)?;
    let num_divs = divisors(&a0);
    let den_divs = divisors(&an);
    let mut found: Vec<Rational> = Vec::new();
    for v in &den_divs {
        for u in &num_divs {
            for sign in [Sign::Plus, Sign::Minus] {
                let cand = Rational::new(
                    BigInt::from_biguint(sign, u.clone()),
                    BigInt::from_biguint(Sign::Plus, v.clone()),
                );
                // Non-reduced candidates duplicate a reduced one.
                if cand.denom().magnitude() != v || cand.abs() > bound {
                    continue;
                }
                if sqf.eval(&cand).is_zero() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
    }
    for r in found {
        let lin = Polynomial::linear(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Cauchy's bound `1 + max_{i<n} |a_i / a_n|` on the modulus of every
/// complex root.
pub fn cauchy_root_bound(p: &Polynomial) -> Result<Rational> {
    let n = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("root bound of a constant polynomial".into()))?;
    let lc = p.leading();
    let m = p.coeffs()[..n]
        .iter()
        .map(|c| (c / &lc).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(m + Rational::one())
}

/// Resultant `Res(p, q)` by the Euclidean algorithm over Q.
///
/// Normalised so that `Res(p, q) = lc(p)^deg q * prod q(alpha)` over the
/// roots `alpha` of `p`; for constants `Res(c, q) = c^deg q`.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    nonzero(p)?;
    nonzero(q)?;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut acc = Rational::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return Ok(acc * num_traits::pow(b.leading(), da));
        }
        if da == 0 {
            return Ok(acc * num_traits::pow(a.leading(), db));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(Rational::zero());
        }
        // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        let dr = r.degree().unwrap();
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.leading(), da - dr);
        a = b;
        b = r;
    }
}

/// Sum of the complex roots counted with multiplicity: `-a_{n-1} / a_n`.
pub fn sum_of_roots(p: &Polynomial) -> Result<Rational> {
    let n = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("root sum of a constant polynomial".into()))?;
    Ok(-(p.coeff(n - 1) / p.leading()))
}

/// Newton interpolation through `(xs[i], ys[i])`; the nodes must be distinct.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Result<Polynomial> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput("node and value counts differ".into()));
    }
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = &xs[i] - &xs[i - level];
            if den.is_zero() {
                return Err(Error::InvalidInput("repeated interpolation node".into()));
            }
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut acc = Polynomial::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &Polynomial::linear(&xs[i])) + &Polynomial::constant(dd[i].clone());
    }
    Ok(acc)
}

/// Integer nodes `0, 1, ..., n-1` as rationals.
pub(crate) fn integer_nodes(n: usize) -> Vec<Rational> {
    (0..n as i64).map(rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Sylvester-matrix determinant: independent resultant oracle.
    pub(crate) fn sylvester_resultant(f: &Polynomial, g: &Polynomial) -> Rational {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        let size = m + n;
        if size == 0 {
            return Rational::one();
        }
        let mut mat = vec![vec![Rational::zero(); size]; size];
        for i in 0..n {
            for k in 0..=m {
                mat[i][i + k] = f.coeff(m - k);
            }
        }
        for i in 0..m {
            for k in 0..=n {
                mat[n + i][i + k] = g.coeff(n - k);
            }
        }
        let mut det = Rational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let factor = &mat[r][col] / &pv;
                if factor.is_zero() {
                    continue;
                }
                let pivot_row = mat[col].clone();
                for (x, y) in mat[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * y;
                }
            }
        }
        det
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_factorization(&p(&[1, -2, 1])).unwrap(), vec![(p(&[-1, 1]), 1 + 1)]);
        assert_eq!(squarefree_factorization(&p(&[0, 1])).unwrap(), vec![(p(&[0, 1]), 1)]);
        assert_eq!(
            squarefree_factorization(&p(&[0, -1, 0, 1])).unwrap(),
            vec![(p(&[0, -1, 0, 1]), 1)]
        );
        // 3 x^2 (x+1)^3
        let f = &p(&[0, 0, 3]) * &p(&[1, 1]).pow(3);
        assert_eq!(
            squarefree_factorization(&f).unwrap(),
            vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3)]
        );
        assert!(squarefree_factorization(&Polynomial::zero()).is_err());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[0, 1, 1])).unwrap(), vec![(rat(-1), 1), (rat(0), 1)]);
        assert!(rational_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
        assert_eq!(
            rational_roots(&p(&[1, -5, 6])).unwrap(),
            vec![(ratio(1, 3), 1), (ratio(1, 2), 1)]
        );
        let f = &p(&[-1, 2]).pow(3) * &p(&[2, 0, 1]);
        assert_eq!(rational_roots(&f).unwrap(), vec![(ratio(1, 2), 3)]);
        assert!(rational_roots(&Polynomial::zero()).is_err());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_root_bound(&p(&[-5, 1])).unwrap(), rat(6));
        assert_eq!(cauchy_root_bound(&p(&[1, 0, 1])).unwrap(), rat(2));
        assert_eq!(cauchy_root_bound(&p(&[0, 1, 1])).unwrap(), rat(2));
        assert!(cauchy_root_bound(&p(&[3])).is_err());
    }

    #[test]
    fn resultant_examples() {
        let a = p(&[-1, 1]);
        let b = p(&[-2, 1]);
        assert_eq!(sylvester_resultant(&a, &b), rat(-1));
        assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[0, 1])).unwrap(), rat(0));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(), rat(0));
        let f = p(&[3, -1, 0, 2]);
        let g = p(&[1, 4, 5]);
        assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
        assert_eq!(resultant(&g, &f).unwrap(), sylvester_resultant(&g, &f));
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[3, -1, 0, 2]);
        let xs = integer_nodes(4);
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys).unwrap(), f);
        assert_eq!(sum_of_roots(&p(&[0, 1, 1])).unwrap(), rat(-1));
    }
}
