use num_traits::Zero;
use serde::Serialize;

use super::valuation::{require_uniform, valuation};
use super::PointSpec;
use crate::algebra::{serde_rational, Rational};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, ThetaForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    #[serde(with = "serde_rational")]
    pub slope: Rational,
    pub length: usize,
}

/// Lower-left boundary of the hull of the quadrants `{x <= j, y >= y_j}`.
///
/// Vertices run from `(0, y_min)` to `(order, y_order)`; a slope-0 edge is
/// present when the minimum is attained at a positive abscissa, so edge
/// lengths always add up to the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
    pub edges: Vec<Edge>,
}

impl NewtonPolygon {
    /// Build from `(j, y_j)` pairs; absent `j` (zero coefficients) are skipped.
    pub fn from_points(points: &[(i64, i64)]) -> Result<Self> {
        let Some(&(mu, _)) = points.iter().max_by_key(|p| p.0) else {
            return Err(Error::InvalidInput("no points".into()));
        };
        let ymin = points.iter().map(|p| p.1).min().unwrap();
        let jstar = points.iter().filter(|p| p.1 == ymin).map(|p| p.0).max().unwrap();
        let mut right: Vec<(i64, i64)> = points.iter().copied().filter(|p| p.0 > jstar).collect();
        right.sort();
        let mut hull: Vec<(i64, i64)> = vec![(jstar, ymin)];
        for p in right {
            // Same abscissa cannot repeat for valuation data; keep the lower.
            if hull.last().unwrap().0 == p.0 {
                if p.1 < hull.last().unwrap().1 {
                    hull.pop();
                } else {
                    continue;
                }
            }
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let mut vertices = Vec::new();
        if jstar > 0 {
            vertices.push((0, ymin));
        }
        vertices.extend(hull);
        debug_assert_eq!(vertices.last().unwrap().0, mu);
        let edges = vertices
            .windows(2)
            .map(|w| Edge {
                slope: Rational::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into()),
                length: (w[1].0 - w[0].0) as usize,
            })
            .collect();
        Ok(NewtonPolygon { vertices, edges })
    }

    pub fn order(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0 as usize)
    }

    pub fn min_height(&self) -> i64 {
        self.vertices[0].1
    }

    /// Largest slope, or 0 for an order-0 operator.
    pub fn katz_rank(&self) -> Rational {
        self.edges
            .iter()
            .map(|e| e.slope.clone())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Slopes with their horizontal lengths.
    pub fn slopes(&self) -> Vec<(Rational, usize)> {
        self.edges.iter().map(|e| (e.slope.clone(), e.length)).collect()
    }

    /// Minkowski sum: heights add and edges merge by slope.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut edges: Vec<Edge> = Vec::new();
        let mut all: Vec<&Edge> = self.edges.iter().chain(&other.edges).collect();
        all.sort_by(|a, b| a.slope.cmp(&b.slope));
        for e in all {
            match edges.last_mut() {
                Some(last) if last.slope == e.slope => last.length += e.length,
                _ => edges.push(e.clone()),
            }
        }
        let mut vertices = vec![(0, self.min_height() + other.min_height())];
        for e in &edges {
            let (x, y) = *vertices.last().unwrap();
            let dy = &e.slope * Rational::from_integer(e.length.into());
            let dy: i64 = i64::try_from(dy.to_integer()).expect("small height");
            vertices.push((x + e.length as i64, y + dy));
        }
        NewtonPolygon { vertices, edges }
    }
}

/// Polygon from the D-form valuations `(j, val_rho(c_j) - j)`.
///
/// At infinity the valuations are read after `z -> 1/z`.
pub fn newton_polygon(op: &DiffOperator, point: &PointSpec) -> Result<NewtonPolygon> {
    if op.is_zero() {
        return Err(Error::InvalidInput("zero operator".into()));
    }
    if let PointSpec::Orbit(p) = point {
        require_uniform(op, p)?;
    }
    let (op, point) = match point {
        PointSpec::Infinity => (op.invert_variable(), PointSpec::zero()),
        _ => (op.clone(), point.clone()),
    };
    let points: Vec<(i64, i64)> = op
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| valuation(c, &point).map(|v| (j as i64, v - j as i64)))
        .collect();
    NewtonPolygon::from_points(&points)
}

/// Polygon from the theta-form valuations `(k, val(b_k))`; rational points and
/// infinity only.
pub fn newton_polygon_theta(op: &DiffOperator, point: &PointSpec) -> Result<NewtonPolygon> {
    let theta = ThetaForm::new(op, point, 1)?;
    let points: Vec<(i64, i64)> = theta
        .valuations()
        .into_iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| (k as i64, v)))
        .collect();
    NewtonPolygon::from_points(&points)
}

pub fn katz_rank(op: &DiffOperator, point: &PointSpec) -> Result<Rational> {
    Ok(newton_polygon(op, point)?.katz_rank())
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
        let p = newton_polygon(&op("D + 1/z^2"), &PointSpec::zero()).unwrap();
        assert_eq!(p.slopes(), vec![(rat(1), 1)]);
        let p = newton_polygon(&op("D - 1"), &PointSpec::Infinity).unwrap();
        assert_eq!(p.slopes(), vec![(rat(1), 1)]);
        let h = op("z*(1-z)*D^2 + (1-2*z)*D");
        for pt in [PointSpec::zero(), PointSpec::Rational(rat(1)), PointSpec::Infinity] {
            assert_eq!(katz_rank(&h, &pt).unwrap(), rat(0));
        }
        assert_eq!(katz_rank(&op("z*D"), &PointSpec::zero()).unwrap(), rat(0));
        assert_eq!(katz_rank(&op("z^2*D + 1"), &PointSpec::zero()).unwrap(), rat(1));
        let k = op("z*D^2 + (2-z)*D + 3");
        assert_eq!(katz_rank(&k, &PointSpec::Infinity).unwrap(), rat(1));
    }

    #[test]
    fn shapes() {
        // y = (5, 0, 3, -1) at j = 0..3: minimum at j = 3, no slope-0 edge part
        let p = NewtonPolygon::from_points(&[(0, 5), (1, 0), (2, 3), (3, -1)]).unwrap();
        assert_eq!(p.vertices, vec![(0, -1), (3, -1)]);
        let p = NewtonPolygon::from_points(&[(0, -3), (1, -1), (2, 0), (3, 4)]).unwrap();
        assert_eq!(p.vertices, vec![(0, -3), (2, 0), (3, 4)]);
        assert_eq!(p.slopes(), vec![(ratio(3, 2), 2), (rat(4), 1)]);
        let p = NewtonPolygon::from_points(&[(0, 0), (2, 1)]).unwrap();
        assert_eq!(p.slopes(), vec![(ratio(1, 2), 2)]);
        let p = NewtonPolygon::from_points(&[(0, 7)]).unwrap();
        assert_eq!(p.katz_rank(), rat(0));
        assert!(p.edges.is_empty());
    }

    #[test]
    fn theta_route_agrees() {
        for s in ["z^3*D^2 + D + 1", "z*D^2 + (2-z)*D + 3", "D^2 - z", "z^2*D^3 + (z-1)*D + 1/z"] {
            let l = op(s);
            for pt in [PointSpec::zero(), PointSpec::Rational(rat(1)), PointSpec::Infinity] {
                assert_eq!(
                    newton_polygon(&l, &pt).unwrap(),
                    newton_polygon_theta(&l, &pt).unwrap(),
                    "{s} at {pt}"
                );
            }
        }
    }

    #[test]
    fn minkowski_of_product() {
        let n = op("z^2*D + 1");
        let m = op("D - 1/z");
        let l = n.mul(&m);
        for pt in [PointSpec::zero(), PointSpec::Infinity] {
            let sum = newton_polygon(&n, &pt).unwrap().minkowski_sum(&newton_polygon(&m, &pt).unwrap());
            assert_eq!(newton_polygon(&l, &pt).unwrap(), sum);
        }
    }
}
