//! Text syntax for operators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | VAR | 'D' | '(' expr ')'
//! ```
//!
//! `*` is the product of Q(z)[D] (composition), so `D*z` is `z*D + 1`.
//! `a/b` means `a * b^-1` and requires `b` to be a nonzero rational function.

use num_traits::Signed;

use super::DiffOperator;
use crate::algebra::{fmt_rational, parse_rational, Polynomial};
use crate::error::{Error, Result};

pub fn parse_operator(text: &str, var: &str) -> Result<DiffOperator> {
    if var == "D" || var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(Error::InvalidInput(format!("bad variable name {var:?}")));
    }
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        var,
        end: text.len(),
    };
    let mut op = p.expr()?;
    if let Some((at, tok)) = p.tokens.get(p.pos) {
        return Err(Error::Parse {
            pos: *at,
            msg: format!("unexpected {}", tok.describe()),
        });
    }
    op.set_var(var);
    Ok(op)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number {s}"),
            Tok::Ident(s) => format!("symbol {s}"),
            Tok::Sym(c) => format!("'{c}'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() || d == '.' {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Num(s)));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    var: &'a str,
    end: usize,
}

impl Parser<'_> {
    fn peek_sym(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: at, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<DiffOperator> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DiffOperator> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc.mul(&rhs);
            } else {
                if rhs.order_i64() > 0 {
                    return self.err(at, "divisor must not involve D");
                }
                if rhs.is_zero() {
                    return self.err(at, "division by zero");
                }
                let inv = rhs.leading().recip()?;
                acc = acc.mul(&DiffOperator::scalar(inv));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DiffOperator> {
        match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<DiffOperator> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        match self.tokens.get(self.pos) {
            Some((_, Tok::Num(s))) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let k: u32 = s
                    .parse()
                    .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => self.err(at, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<DiffOperator> {
        let at = self.here();
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return self.err(at, "unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(s) => {
                let q = parse_rational(&s).or_else(|_| self.err(at, format!("bad number {s}")))?;
                Ok(DiffOperator::scalar(q.into()))
            }
            Tok::Ident(s) if s == "D" => Ok(DiffOperator::d()),
            Tok::Ident(s) if s == self.var => Ok(DiffOperator::var_z()),
            Tok::Ident(s) => self.err(at, format!("unknown symbol {s}")),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return self.err(self.here(), "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Sym(c) => self.err(at, format!("unexpected '{c}'")),
        }
    }
}

/// A polynomial that can be printed without parentheses as a factor: a
/// nonnegative constant or a single monomial with positive coefficient.
fn is_atomic(p: &Polynomial) -> bool {
    p.term_count() == 1 && p.leading().is_positive()
}

fn factor(p: &Polynomial, var: &str) -> String {
    if is_atomic(p) {
        p.fmt_var(var)
    } else {
        format!("({})", p.fmt_var(var))
    }
}

/// Prints terms in descending order of `D`, e.g. `z*D^2 - (z - 2)*D + 3`.
pub(crate) fn format_operator(op: &DiffOperator) -> String {
    let var = op.var();
    let mut out = String::new();
    for (j, c) in op.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.num().leading().is_negative();
        let num = if negative { -c.num() } else { c.num().clone() };
        let d = match j {
            0 => String::new(),
            1 => "D".to_string(),
            _ => format!("D^{j}"),
        };
        let coef = if c.den().is_one() {
            if num.is_one() && j > 0 {
                String::new()
            } else if num.is_constant() {
                fmt_rational(&num.leading())
            } else if j == 0 || num.term_count() == 1 {
                num.fmt_var(var)
            } else {
                format!("({})", num.fmt_var(var))
            }
        } else {
            format!("{}/{}", factor(&num, var), factor(c.den(), var))
        };
        let body = match (coef.is_empty(), d.is_empty()) {
            (true, _) => d,
            (false, true) => coef,
            (false, false) => format!("{coef}*{d}"),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        // A leading minus directly before a sum would bind to its first term.
        if negative && j == 0 && c.den().is_one() && num.term_count() > 1 {
            out.push_str(&format!("({body})"));
        } else {
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn parse_examples() {
        let k = parse_operator("z*D^2 + (2-z)*D + 3", "z").unwrap();
        assert_eq!(k.order(), Some(2));
        assert_eq!(k.coeff(1), Polynomial::from_ints(&[2, -1]).into());
        assert_eq!(k.coeff(0), rat(3).into());
        assert_eq!(parse_operator("D", "z").unwrap(), DiffOperator::d());
        let r = parse_operator("(1/2)*D - z^2", "z").unwrap();
        assert_eq!(r.order(), Some(1));
        assert_eq!(r.coeff(1), ratio(1, 2).into());
        // composition semantics
        assert_eq!(
            parse_operator("D*z", "z").unwrap(),
            parse_operator("z*D + 1", "z").unwrap()
        );
        assert_eq!(parse_operator("x*D", "x").unwrap().var(), "x");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_operator("z*D +", "z"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_operator("y*D", "z"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_operator("z # D", "z"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_operator("1/D", "z").is_err());
        assert!(parse_operator("1/(z-z)", "z").is_err());
        assert!(parse_operator("D^-1", "z").is_err());
        assert!(parse_operator("(D", "z").is_err());
    }

    #[test]
    fn printer() {
        let p = |s: &str| parse_operator(s, "z").unwrap().to_string();
        assert_eq!(p("D^2 - 1"), "D^2 - 1");
        assert_eq!(p("z*D^2 + (2-z)*D + 3"), "z*D^2 - (z - 2)*D + 3");
        assert_eq!(p("(1/2)*D - z^2"), "1/2*D - z^2");
        assert_eq!(p("-D + 1 - z"), "-D - (z - 1)");
        assert_eq!(p("(2-z)/z*D + 3/z"), "-(z - 2)/z*D + 3/z");
        assert_eq!(p("1/(z^2-2)*D"), "1/(z^2 - 2)*D");
        assert_eq!(p("D/z"), "1/z*D - 1/z^2");
        assert_eq!(p("0*D"), "0");
        for s in ["z*D^2 + (2-z)*D + 3", "(3*z-1)/(z^2+1)*D - 2*z/(z-1)", "-D^3 + 5/7"] {
            let a = parse_operator(s, "z").unwrap();
            assert_eq!(parse_operator(&a.to_string(), "z").unwrap(), a);
        }
    }
}
