use std::io::Read;
use std::path::Path;

use diffop::algebra::parse_rational;
use diffop::{parse_operator, DiffOperator, Error, Rational, Result};

/// Operator text from an inline expression, a file, or `-` for stdin. JSON
/// input (`{"var": ..., "coeffs": [...]}`) is recognised by its leading brace.
pub fn read_operator(arg: &str, var: &str) -> Result<DiffOperator> {
    let text = read_source(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        let mut op: DiffOperator = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("operator JSON: {e}")))?;
        if op.var() != var {
            op.set_var(var);
        }
        return Ok(op);
    }
    parse_operator(text, var)
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

/// Rationals one per line (blank lines and `#` comments skipped), or a
/// comma-separated inline list.
pub fn read_rationals(arg: &str) -> Result<Vec<Rational>> {
    let text = read_source(arg)?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .flat_map(|l| l.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}
