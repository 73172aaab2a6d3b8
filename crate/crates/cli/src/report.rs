use serde::Serialize;
use serde_json::{json, Value};

/// Notation and counting conventions, attached to every report.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub var: String,
    pub derivation: String,
    pub rationals: &'static str,
    pub polynomials: &'static str,
    pub adjoint: &'static str,
    #[serde(rename = "S")]
    pub s: &'static str,
    #[serde(rename = "S_used", skip_serializing_if = "Option::is_none")]
    pub s_used: Option<&'static str>,
    #[serde(rename = "E_provenance", skip_serializing_if = "Option::is_none")]
    pub e_provenance: Option<String>,
}

impl Conventions {
    pub fn new(var: &str) -> Self {
        Conventions {
            var: var.to_string(),
            derivation: format!("D = d/d{var}"),
            rationals: "exact strings \"p/q\"",
            polynomials: "ascending coefficient arrays",
            adjoint: "sum_j (-D)^j a_j",
            s: "strict: a singular point is apparent when it has a basis of power series solutions; \
                S_relaxed also accepts Laurent series",
            s_used: None,
            e_provenance: None,
        }
    }
}

/// What a subcommand produced: the JSON result, a text rendering and whether
/// its check (if any) passed.
pub struct Outcome {
    pub command: &'static str,
    pub conventions: Conventions,
    pub result: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn new(command: &'static str, conventions: Conventions, result: Value, text: String) -> Self {
        Outcome {
            command,
            conventions,
            result,
            text,
            passed: true,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "conventions": self.conventions,
            "result": self.result,
        })
    }
}

pub fn error_json(command: &str, err: &diffop::Error) -> Value {
    let mut detail = json!({ "code": err.code(), "message": err.to_string() });
    if let diffop::Error::NeedsMoreInitialTerms { index, blocking } = err {
        detail["index"] = json!(index);
        detail["blocking"] = json!(blocking);
    }
    if let diffop::Error::Parse { pos, .. } = err {
        detail["position"] = json!(pos);
    }
    json!({ "command": command, "error": detail })
}
