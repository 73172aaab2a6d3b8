//! Python bindings. Structured results come back as plain dicts and lists
//! with rationals as `"p/q"` strings, matching the CLI's JSON.

use diffop::algebra::{fmt_rational, parse_rational};
use diffop::bounds::{
    bcy_exponent_bound, bound_from_operator, fuchs_summary, theorem1_bound, valuation_bound,
    BoundInputs, Refinements,
};
use diffop::local::{global_census, katz_rank, newton_polygon, singular_points, PointSpec};
use diffop::series::{minimize, operator_to_recurrence, SeriesContext};
use diffop::{parse_operator, DiffOperator, Rational};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

create_exception!(diffop, DiffopError, PyValueError, "Raised with args (message, code).");

fn py_err(e: diffop::Error) -> PyErr {
    DiffopError::new_err((e.to_string(), e.code()))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py)?,
            (None, Some(u)) => u.into_bound_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialized<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// Accepts `int`, `str` or `fractions.Fraction`.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_string()).map_err(py_err)
}

fn rationals(xs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    xs.iter().map(rational).collect()
}

fn opt_rational(x: Option<&Bound<'_, PyAny>>) -> PyResult<Option<Rational>> {
    x.map(rational).transpose()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// A linear differential operator `sum_j a_j(z) D^j` with rational function
/// coefficients.
#[pyclass(name = "Operator", module = "diffop", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Operator {
    inner: DiffOperator,
}

impl From<DiffOperator> for Operator {
    fn from(inner: DiffOperator) -> Self {
        Operator { inner }
    }
}

#[pymethods]
impl Operator {
    #[new]
    #[pyo3(signature = (text, var = "z"))]
    fn new(text: &str, var: &str) -> PyResult<Self> {
        parse_operator(text, var).map(Operator::from).map_err(py_err)
    }

    /// Builds an operator from its JSON form (`{"var": ..., "coeffs": [...]}`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str::<DiffOperator>(text)
            .map(Operator::from)
            .map_err(|e| DiffopError::new_err((format!("operator JSON: {e}"), "invalid-input")))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &self.inner)
    }

    #[getter]
    fn order(&self) -> Option<usize> {
        self.inner.order()
    }

    #[getter]
    fn var(&self) -> String {
        self.inner.var().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Operator({:?})", self.inner.to_string())
    }

    fn __add__(&self, other: &Operator) -> Operator {
        self.inner.add(&other.inner).into()
    }

    fn __sub__(&self, other: &Operator) -> Operator {
        self.inner.sub(&other.inner).into()
    }

    fn __neg__(&self) -> Operator {
        self.inner.neg().into()
    }

    fn __mul__(&self, other: &Operator) -> Operator {
        self.inner.mul(&other.inner).into()
    }

    fn __pow__(&self, k: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Operator {
        self.inner.pow(k).into()
    }

    /// Right division: returns `(q, r)` with `self = q * other + r`.
    fn divmod(&self, other: &Operator) -> PyResult<(Operator, Operator)> {
        let (q, r) = self.inner.right_divmod(&other.inner).map_err(py_err)?;
        Ok((q.into(), r.into()))
    }

    fn adjoint(&self) -> Operator {
        self.inner.adjoint().into()
    }

    fn monic(&self) -> PyResult<Operator> {
        self.inner.monic().map(Operator::from).map_err(py_err)
    }

    /// Finite singular points (rationals and `roots:` clusters).
    fn singular_points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &singular_points(&self.inner).map_err(py_err)?)
    }

    /// Local data at every singular point plus the global counts.
    fn census<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &global_census(&self.inner).map_err(py_err)?)
    }

    /// Newton polygon at `inf`, a rational, or `roots:<polynomial>`.
    fn newton<'py>(&self, py: Python<'py>, point: &str) -> PyResult<Bound<'py, PyAny>> {
        let p = PointSpec::parse(point, self.inner.var()).map_err(py_err)?;
        serialized(py, &newton_polygon(&self.inner, &p).map_err(py_err)?)
    }

    fn katz_rank(&self, point: &str) -> PyResult<String> {
        let p = PointSpec::parse(point, self.inner.var()).map_err(py_err)?;
        katz_rank(&self.inner, &p).map(|r| fmt_rational(&r)).map_err(py_err)
    }

    fn fuchs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &fuchs_summary(&self.inner).map_err(py_err)?)
    }

    /// Degree bounds for monic right factors of every order.
    #[pyo3(signature = (E = None, S = None, refine = ""))]
    #[allow(non_snake_case)]
    fn bounds<'py>(
        &self,
        py: Python<'py>,
        E: Option<&Bound<'py, PyAny>>,
        S: Option<usize>,
        refine: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let wanted = Refinements::parse(refine).map_err(py_err)?;
        let b = bound_from_operator(&self.inner, opt_rational(E)?, S, wanted).map_err(py_err)?;
        serialized(py, &b)
    }

    fn recurrence<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rec = operator_to_recurrence(&self.inner).map_err(py_err)?;
        let dict = PyDict::new(py);
        dict.set_item("text", rec.to_string())?;
        dict.set_item("terms", serialized(py, &rec)?.get_item("terms")?)?;
        dict.set_item("s_min", rec.s_min())?;
        dict.set_item("s_max", rec.s_max())?;
        dict.set_item("undetermined", rec.undetermined_indices(0))?;
        Ok(dict.into_any())
    }

    /// The first `terms` Taylor coefficients at 0 of the solution with the
    /// given initial coefficients.
    fn expand(&self, initial: Vec<Bound<'_, PyAny>>, terms: usize) -> PyResult<Vec<String>> {
        let mut ctx = SeriesContext::from_operator(&self.inner, rationals(&initial)?).map_err(py_err)?;
        if terms > 0 {
            ctx.extend_to(terms - 1).map_err(py_err)?;
        }
        Ok(strings(&ctx.coefficients()[..terms]))
    }

    /// Smallest-order operator annihilating the solution with the given
    /// initial coefficients.
    #[pyo3(signature = (initial, degree_cap = None, E = None))]
    #[allow(non_snake_case)]
    fn minimize<'py>(
        &self,
        py: Python<'py>,
        initial: Vec<Bound<'py, PyAny>>,
        degree_cap: Option<usize>,
        E: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let res = minimize(&self.inner, &rationals(&initial)?, degree_cap, opt_rational(E)?).map_err(py_err)?;
        let out = serialized(py, &res)?;
        out.set_item("factor", Operator::from(res.operator.clone()))?;
        Ok(out)
    }
}

#[pyfunction]
#[pyo3(signature = (text, var = "z"))]
fn parse(text: &str, var: &str) -> PyResult<Operator> {
    Operator::new(text, var)
}

/// The degree bound from explicit inputs.
#[pyfunction]
#[pyo3(signature = (r, E, N, S, refine = "", E_per_point = None, q = None, sing_count = None))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn bound<'py>(
    py: Python<'py>,
    r: usize,
    E: &Bound<'py, PyAny>,
    N: &Bound<'py, PyAny>,
    S: usize,
    refine: &str,
    E_per_point: Option<Vec<Bound<'py, PyAny>>>,
    q: Option<usize>,
    sing_count: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut inputs = BoundInputs::new(r, rational(E)?, rational(N)?, S);
    inputs.e_per_point = rationals(&E_per_point.unwrap_or_default())?;
    inputs.q = q;
    inputs.sing_count = sing_count;
    let wanted = Refinements::parse(refine).map_err(py_err)?;
    serialized(py, &theorem1_bound(&inputs, wanted).map_err(py_err)?)
}

/// Exponent bound for operators of degree `q` and order `m` with naive
/// height `height`.
#[pyfunction]
fn exponent_tower<'py>(py: Python<'py>, q: u64, m: u64, kappa: u64, height: BigInt) -> PyResult<Bound<'py, PyAny>> {
    serialized(py, &bcy_exponent_bound(q, m, kappa, &height).map_err(py_err)?)
}

/// Valuation cutoff for the minimizer.
#[pyfunction]
#[allow(non_snake_case)]
fn valuation_cutoff(r: u64, n: u64, q: u64, m: u64, E: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    valuation_bound(r, n, q, m, &rational(E)?).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "diffop")]
fn diffop_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Operator>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_tower, m)?)?;
    m.add_function(wrap_pyfunction!(valuation_cutoff, m)?)?;
    m.add("DiffopError", m.py().get_type::<DiffopError>())?;
    Ok(())
}
