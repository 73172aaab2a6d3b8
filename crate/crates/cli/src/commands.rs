use std::fmt::Write as _;

use diffop::algebra::fmt_rational;
use diffop::bounds::{
    bcy_exponent_bound, bound_from_operator, fuchs_summary, BoundReport, Refinements,
};
use diffop::local::{global_census, katz_rank, newton_polygon, singular_points, PointSpec};
use diffop::series::{minimize, operator_to_recurrence, SeriesContext};
use diffop::{DiffOperator, Error, Rational, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::{Conventions, Outcome};

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn operator_value(op: &DiffOperator) -> Value {
    json!({ "text": op.to_string(), "json": value(op) })
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn analyze(op: &DiffOperator) -> Result<Outcome> {
    let census = global_census(op)?;
    let var = op.var();
    let mut text = String::new();
    for r in census.reports() {
        let _ = write!(
            text,
            "{}: {}",
            r.point.fmt_var(var),
            value(&r.classification).as_str().unwrap_or("")
        );
        if r.katz_rank != Rational::from_integer(0.into()) {
            let _ = write!(text, ", Katz rank {}", fmt_rational(&r.katz_rank));
        }
        if let Some(ind) = &r.indicial {
            let _ = write!(text, ", indicial {}", ind.rational_form().fmt_var("l"));
        }
        if let Some(a) = r.apparent {
            let _ = write!(text, ", apparent {}", value(&a).as_str().unwrap_or(""));
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "S = {} (relaxed {}), N = {}, E = {}",
        census.s_strict,
        census.s_relaxed,
        fmt_rational(&census.n_max),
        census.e_fuchsian.as_ref().map(fmt_rational).unwrap_or_else(|| "n/a".into())
    );
    let mut conv = Conventions::new(var);
    conv.e_provenance = census.e_fuchsian.as_ref().map(|_| "computed".to_string());
    let result = json!({ "operator": operator_value(op), "census": value(&census) });
    Ok(Outcome::new("analyze", conv, result, text))
}

pub struct BoundArgs {
    pub e: Option<Rational>,
    pub s: Option<usize>,
    pub kappa: Option<u64>,
    pub height: Option<BigInt>,
    pub refine: Refinements,
    pub per_r: bool,
    pub r: Option<usize>,
}

fn bound_line(b: &BoundReport) -> String {
    format!(
        "r = {}: plain {} (ceiling {}), refined {} (ceiling {}); terms {}",
        b.inputs.r,
        fmt_rational(&b.plain_bound),
        b.plain_ceiling,
        fmt_rational(&b.refined_bound),
        b.refined_ceiling,
        rationals(&b.refined_terms.terms).join(" + ")
    )
}

pub fn bound(op: &DiffOperator, args: &BoundArgs) -> Result<Outcome> {
    let ob = bound_from_operator(op, args.e.clone(), args.s, args.refine)?;
    let m = ob.m;
    let orders: Vec<usize> = match (args.r, args.per_r) {
        (Some(r), _) if r == 0 || r > m => {
            return Err(Error::InvalidInput(format!("r = {r} must lie in 1..={m}")))
        }
        (Some(r), _) => vec![r],
        (None, true) => (1..=m).collect(),
        // the largest proper order dominates the others
        (None, false) => vec![m.saturating_sub(1).max(1)],
    };
    let reports: Vec<&BoundReport> = orders.iter().map(|&r| &ob.per_r[r - 1]).collect();
    let relaxed: Vec<&BoundReport> = orders.iter().map(|&r| &ob.per_r_relaxed[r - 1]).collect();
    let coarse: Vec<&BoundReport> = orders.iter().map(|&r| &ob.coarse[r - 1]).collect();
    let tower = match args.kappa {
        Some(kappa) => {
            let height = match &args.height {
                Some(h) => h.clone(),
                None => op.height()?,
            };
            Some(bcy_exponent_bound(ob.q as u64, m as u64, kappa, &height)?)
        }
        None if args.height.is_some() => {
            return Err(Error::InvalidInput("--height needs --kappa".into()));
        }
        None => None,
    };
    let mut text = format!(
        "m = {}, q = {}, S = {} (relaxed {}, used {}), N = {}, E = {} ({})\n",
        m,
        ob.q,
        ob.s,
        ob.s_relaxed,
        ob.s_used,
        fmt_rational(&ob.n),
        fmt_rational(&ob.e),
        value(&ob.e_provenance).as_str().unwrap_or("")
    );
    for b in &reports {
        text.push_str(&bound_line(b));
        text.push('\n');
    }
    if let Some(t) = &tower {
        let _ = writeln!(
            text,
            "exponent tower: 2^({}^{}) * H^({}^{}), H = {}",
            t.base2_exponent.0, t.base2_exponent.1, t.height_exponent.0, t.height_exponent.1, t.height
        );
    }
    let mut conv = Conventions::new(op.var());
    conv.s_used = Some(if ob.s_overridden { "user-supplied" } else { "strict" });
    conv.e_provenance = Some(value(&ob.e_provenance).as_str().unwrap_or("").to_string());
    let mut result = json!({
        "operator": operator_value(op),
        "m": m,
        "q": ob.q,
        "S": ob.s,
        "S_relaxed": ob.s_relaxed,
        "S_used": ob.s_used,
        "N": fmt_rational(&ob.n),
        "E": fmt_rational(&ob.e),
        "E_census": ob.e_census.as_ref().map(fmt_rational),
        "E_provenance": value(&ob.e_provenance),
        "sing_count": ob.sing_count,
        "fuchsian": ob.fuchsian,
        "reports": value(&reports),
        "relaxed_reports": value(&relaxed),
        "coarse_reports": value(&coarse),
    });
    if let Some(t) = tower {
        result["tower"] = value(&t);
    }
    Ok(Outcome::new("bound", conv, result, text))
}

pub fn newton(op: &DiffOperator, points: Vec<PointSpec>) -> Result<Outcome> {
    let points = if points.is_empty() {
        let mut p = singular_points(op)?;
        p.push(PointSpec::Infinity);
        p
    } else {
        points
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for point in points {
        let polygon = newton_polygon(op, &point)?;
        let rank = katz_rank(op, &point)?;
        let slopes: Vec<String> = polygon
            .edges
            .iter()
            .map(|e| format!("{} (length {})", fmt_rational(&e.slope), e.length))
            .collect();
        let _ = writeln!(
            text,
            "{}: vertices {:?}, slopes [{}], Katz rank {}",
            point.fmt_var(op.var()),
            polygon.vertices,
            slopes.join(", "),
            fmt_rational(&rank)
        );
        entries.push(json!({
            "point": value(&point),
            "polygon": value(&polygon),
            "katz_rank": fmt_rational(&rank),
        }));
    }
    let result = json!({ "operator": operator_value(op), "points": entries });
    Ok(Outcome::new("newton", Conventions::new(op.var()), result, text))
}

pub fn fuchs_check(op: &DiffOperator) -> Result<Outcome> {
    let s = fuchs_summary(op)?;
    let mut text = String::new();
    for e in &s.per_point {
        let _ = writeln!(text, "{}: S_rho = {}", e.point.fmt_var(op.var()), fmt_rational(&e.s_rho));
    }
    let _ = writeln!(
        text,
        "total {} expected {}: {}",
        fmt_rational(&s.total),
        fmt_rational(&s.expected),
        if s.holds { "pass" } else { "FAIL" }
    );
    let passed = s.holds;
    let result = json!({ "operator": operator_value(op), "summary": value(&s), "pass": passed });
    let mut out = Outcome::new("fuchs-check", Conventions::new(op.var()), result, text);
    out.passed = passed;
    Ok(out)
}

pub fn multiply(a: &DiffOperator, b: &DiffOperator) -> Result<Outcome> {
    let p = a.mul(b);
    let text = format!("{p}\n");
    let result = json!({ "left": operator_value(a), "right": operator_value(b), "product": operator_value(&p) });
    Ok(Outcome::new("multiply", Conventions::new(a.var()), result, text))
}

pub fn divmod(a: &DiffOperator, b: &DiffOperator) -> Result<Outcome> {
    let (q, r) = a.right_divmod(b)?;
    let text = format!("quotient: {q}\nremainder: {r}\n");
    let result = json!({
        "dividend": operator_value(a),
        "divisor": operator_value(b),
        "quotient": operator_value(&q),
        "remainder": operator_value(&r),
        "exact": r.is_zero(),
    });
    Ok(Outcome::new("divmod", Conventions::new(a.var()), result, text))
}

pub fn adjoint(a: &DiffOperator) -> Result<Outcome> {
    let adj = a.adjoint();
    let text = format!("{adj}\n");
    let result = json!({ "operator": operator_value(a), "adjoint": operator_value(&adj) });
    Ok(Outcome::new("adjoint", Conventions::new(a.var()), result, text))
}

pub fn to_recurrence(op: &DiffOperator) -> Result<Outcome> {
    let rec = operator_to_recurrence(op)?;
    let text = format!("{rec}\n");
    let result = json!({
        "operator": operator_value(op),
        "recurrence": {
            "text": rec.to_string(),
            "terms": value(&rec),
            "s_min": rec.s_min(),
            "s_max": rec.s_max(),
            "undetermined": rec.undetermined_indices(0),
        },
    });
    Ok(Outcome::new("to-recurrence", Conventions::new(op.var()), result, text))
}

pub fn expand(op: &DiffOperator, initial: Vec<Rational>, terms: usize) -> Result<Outcome> {
    if terms == 0 {
        return Err(Error::InvalidInput("--terms must be positive".into()));
    }
    let mut ctx = SeriesContext::from_operator(op, initial)?;
    ctx.extend_to(terms - 1)?;
    let coeffs = rationals(&ctx.coefficients()[..terms]);
    let text = format!("{}\n", coeffs.join(", "));
    let result = json!({ "operator": operator_value(op), "coefficients": coeffs, "series": value(&ctx) });
    Ok(Outcome::new("expand", Conventions::new(op.var()), result, text))
}

pub fn minimize_cmd(
    op: &DiffOperator,
    initial: &[Rational],
    degree_cap: Option<usize>,
    e: Option<Rational>,
) -> Result<Outcome> {
    let res = minimize(op, initial, degree_cap, e)?;
    let c = &res.certificate;
    let text = format!(
        "order {}: {}\ndegree cap {}, cutoff {} (q = {}, m = {}, E = {}), divides: {}\n",
        res.order,
        res.operator,
        res.degree_cap,
        res.cutoff,
        c.q,
        c.m,
        fmt_rational(&c.e),
        res.divides
    );
    let mut conv = Conventions::new(op.var());
    conv.e_provenance = Some(value(&res.e_provenance).as_str().unwrap_or("").to_string());
    let result = json!({ "operator": operator_value(op), "minimization": value(&res) });
    let mut out = Outcome::new("minimize", conv, result, text);
    out.passed = res.divides && c.residual_zero;
    Ok(out)
}
