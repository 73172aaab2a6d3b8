use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Row-reduced integer matrix: every pivot column is zero outside its pivot
/// row and each row is primitive.
pub struct IntegerEchelon {
    pub rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, columns ascending.
    pub pivots: Vec<(usize, usize)>,
    pub cols: usize,
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
            make_primitive(&mut out);
            out
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination with content removal after each
/// row operation, so entries stay small.
pub fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> IntegerEchelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(p) = (next..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].magnitude().bits())
        else {
            continue;
        };
        rows.swap(next, p);
        let piv_row = rows[next].clone();
        let a = &piv_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let b = row[col].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (a / &g, &b / &g);
            for (x, y) in row.iter_mut().zip(&piv_row) {
                *x = &*x * &fa - y * &fb;
            }
            make_primitive(row);
        }
        pivots.push((next, col));
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    IntegerEchelon { rows, pivots, cols }
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    echelon(integer_rows(rows), cols).pivots.len()
}

impl IntegerEchelon {
    /// Kernel basis, one primitive integer vector per free column in
    /// ascending order.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|p| p.1).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for &(r, c) in &self.pivots {
                    x[c] = -Rational::new(self.rows[r][free].clone(), self.rows[r][c].clone());
                }
                let mut v = integer_rows(&[x]).pop().unwrap();
                if v.iter().rev().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
                    v.iter_mut().for_each(|e| *e = -&*e);
                }
                v
            })
            .collect()
    }
}
