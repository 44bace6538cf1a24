//! Text syntax for expressions: a small Pratt grammar and a deterministic
//! canonical printer that round-trips through it.
//!
//! Grammar atoms: rationals, `i`, `sqrt2`, `sqrt3`, `alpha`, chart variables,
//! `exp(<linear form>)`, `sqrt(<root-bearing variable>)`. Operators `+ - * /`
//! and `^` with integer exponents; `^` binds tighter than unary minus;
//! implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::Constant;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::num::{NumElem, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Sp>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |ch: char, line: &mut usize, col: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Sp {
                    tok: Tok::Int(s.parse().unwrap()),
                    line: tl,
                    col: tc,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Sp {
                    tok: Tok::Ident(s),
                    line: tl,
                    col: tc,
                });
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                bump(c, &mut line, &mut col);
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Sp { tok, line: tl, col: tc });
            }
            other => {
                return Err(Error::SyntaxError {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    out.push(Sp {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Sp>,
    pos: usize,
    chart: &'a Arc<Chart>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Sp {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Sp {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, sp: &Sp, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            line: sp.line,
            col: sp.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let sp = self.next();
        if sp.tok == tok {
            Ok(())
        } else {
            self.err(&sp, format!("expected {}", what))
        }
    }

    /// Pratt loop. Binding powers: + - (10), * / (20), unary - (25), ^ (30).
    fn expr_bp(&mut self, min_bp: u8) -> Result<Expr> {
        let sp = self.next();
        let mut lhs = match sp.tok {
            Tok::Int(ref n) => {
                Expr::constant(self.chart, Constant::from_rat(&self.chart.mode, Rat::from(n.clone())))
            }
            Tok::Minus => {
                let inner = self.expr_bp(25)?;
                inner.neg()
            }
            Tok::LParen => {
                let inner = self.expr_bp(0)?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                inner
            }
            Tok::Ident(ref name) => self.atom(name, &sp)?,
            _ => return self.err(&sp, "expected an expression"),
        };
        loop {
            let op = self.peek().clone();
            let (lbp, rbp) = match op.tok {
                Tok::Plus | Tok::Minus => (10, 11),
                Tok::Star | Tok::Slash => (20, 21),
                Tok::Caret => (30, 31),
                Tok::RParen | Tok::End => break,
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.err(&op, "implicit multiplication is not allowed")
                }
            };
            if lbp < min_bp {
                break;
            }
            self.next();
            match op.tok {
                Tok::Caret => {
                    let k = self.integer_exponent()?;
                    lhs = lhs.pow(k)?;
                }
                Tok::Plus => {
                    let rhs = self.expr_bp(rbp)?;
                    lhs = lhs.add(&rhs)?;
                }
                Tok::Minus => {
                    let rhs = self.expr_bp(rbp)?;
                    lhs = lhs.sub(&rhs)?;
                }
                Tok::Star => {
                    let rhs = self.expr_bp(rbp)?;
                    lhs = lhs.mul(&rhs)?;
                }
                Tok::Slash => {
                    let rhs = self.expr_bp(rbp)?;
                    lhs = lhs.div(&rhs)?;
                }
                _ => unreachable!(),
            }
        }
        Ok(lhs)
    }

    fn integer_exponent(&mut self) -> Result<i32> {
        let sp = self.next();
        match sp.tok {
            Tok::Int(ref n) => int_to_i32(n, || self.err_sp(&sp)),
            Tok::Minus => {
                let sp2 = self.next();
                match sp2.tok {
                    Tok::Int(ref n) => Ok(-int_to_i32(n, || self.err_sp(&sp2))?),
                    _ => self.err(&sp2, "expected an integer exponent"),
                }
            }
            Tok::LParen => {
                let neg = if self.peek().tok == Tok::Minus {
                    self.next();
                    true
                } else {
                    false
                };
                let sp2 = self.next();
                let k = match sp2.tok {
                    Tok::Int(ref n) => int_to_i32(n, || self.err_sp(&sp2))?,
                    _ => return self.err(&sp2, "expected an integer exponent"),
                };
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(if neg { -k } else { k })
            }
            _ => self.err(&sp, "expected an integer exponent"),
        }
    }

    fn err_sp(&self, sp: &Sp) -> Error {
        Error::SyntaxError {
            line: sp.line,
            col: sp.col,
            msg: "integer exponent out of range".into(),
        }
    }

    fn atom(&mut self, name: &str, sp: &Sp) -> Result<Expr> {
        match name {
            "i" => Ok(Expr::i(self.chart)),
            "sqrt2" => Ok(Expr::constant(
                self.chart,
                Constant::sqrt2(&self.chart.mode),
            )),
            "sqrt3" => Ok(Expr::constant(
                self.chart,
                Constant::sqrt3(&self.chart.mode),
            )),
            "alpha" => Ok(Expr::alpha(self.chart)),
            "exp" => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let argpos = self.peek().clone();
                let inner = self.expr_bp(0)?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                let form = inner.as_linear_form().ok_or(Error::NonLinearExponent(
                    format!(
                        "exp argument at line {}, column {} is not a linear form",
                        argpos.line, argpos.col
                    ),
                ))?;
                Expr::exp_form(self.chart, form)
            }
            "sqrt" => {
                self.expect(Tok::LParen, "`(` after sqrt")?;
                let sp2 = self.next();
                let var = match sp2.tok {
                    Tok::Ident(ref v) => v.clone(),
                    _ => return self.err(&sp2, "expected a variable under sqrt"),
                };
                self.expect(Tok::RParen, "closing parenthesis")?;
                let idx = self
                    .chart
                    .index_of(&var)
                    .map_err(|_| Error::UnknownSymbol(var.clone()))?;
                Expr::sqrt_var(self.chart, idx)
            }
            _ => {
                let idx = self.chart.index_of(name).map_err(|_| {
                    Error::SyntaxError {
                        line: sp.line,
                        col: sp.col,
                        msg: format!("unknown symbol `{}`", name),
                    }
                })?;
                Ok(Expr::var(self.chart, idx))
            }
        }
    }
}

/// Parse a textual expression on the given chart.
pub fn parse_expr(text: &str, chart: &Arc<Chart>) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        chart,
    };
    let e = p.expr_bp(0)?;
    let sp = p.peek().clone();
    if sp.tok != Tok::End {
        return p.err(&sp, "trailing input");
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// canonical printer
// ---------------------------------------------------------------------------

fn rat_body(q: &Rat) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render a number-field element as (negated, body, needs_parens_in_product).
fn numelem_parts(e: &NumElem) -> (bool, String, bool) {
    let names: [&str; 8] = ["", "i", "sqrt2", "i*sqrt2", "sqrt3", "i*sqrt3", "sqrt2*sqrt3", "i*sqrt2*sqrt3"];
    let mono: Vec<(usize, Rat)> = (0..8)
        .filter(|&m| !e.coord(m).is_zero())
        .map(|m| (m, e.coord(m).clone()))
        .collect();
    if mono.is_empty() {
        return (false, "0".into(), false);
    }
    let neg = mono[0].1.is_negative();
    let render_one = |(m, q): &(usize, Rat), flip: bool| -> String {
        let q = if flip { -q.clone() } else { q.clone() };
        if names[*m].is_empty() {
            rat_body(&q)
        } else if q.is_one() {
            names[*m].to_string()
        } else if q == -Rat::one() {
            format!("-{}", names[*m])
        } else {
            format!("{}*{}", rat_body(&q), names[*m])
        }
    };
    if mono.len() == 1 {
        let body = render_one(&mono[0], neg);
        (neg, body, false)
    } else {
        let mut s = String::new();
        for (k, t) in mono.iter().enumerate() {
            let flip = neg;
            let piece = render_one(t, flip);
            if k == 0 {
                s.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(s, " - {}", rest).unwrap();
            } else {
                write!(s, " + {}", piece).unwrap();
            }
        }
        (neg, s, true)
    }
}

/// Render a constant as (negated, body, needs_parens_in_product).
fn constant_parts(c: &Constant) -> (bool, String, bool) {
    if c.is_zero() {
        return (false, "0".into(), false);
    }
    if let Some(e) = c.as_numelem() {
        return numelem_parts(&e);
    }
    // alpha polynomial or fraction
    let poly_parts = |coeffs: &[NumElem]| -> (bool, String, bool) {
        let terms: Vec<(usize, &NumElem)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .collect();
        let neg = {
            let (_, e) = terms[0];
            numelem_parts(e).0
        };
        let mut s = String::new();
        let mut count = 0usize;
        for (k, e) in &terms {
            let (tn, body, complex) = numelem_parts(&if neg { e.neg() } else { (*e).clone() });
            let alpha_part = match k {
                0 => String::new(),
                1 => "alpha".to_string(),
                _ => format!("alpha^{}", k),
            };
            // single-monomial bodies come back positive with the sign in
            // `tn`; multi-part bodies already carry their signs
            let piece = if alpha_part.is_empty() {
                if tn && complex {
                    format!("-({})", body)
                } else if tn {
                    format!("-{}", body)
                } else {
                    body.clone()
                }
            } else if complex {
                if tn {
                    format!("-({})*{}", body, alpha_part)
                } else {
                    format!("({})*{}", body, alpha_part)
                }
            } else if body == "1" {
                if tn {
                    format!("-{}", alpha_part)
                } else {
                    alpha_part.clone()
                }
            } else if tn {
                format!("-{}*{}", body, alpha_part)
            } else {
                format!("{}*{}", body, alpha_part)
            };
            if count == 0 {
                s.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(s, " - {}", rest).unwrap();
            } else {
                write!(s, " + {}", piece).unwrap();
            }
            count += 1;
        }
        (neg, s, count > 1)
    };
    match c.alpha_poly_coeffs() {
        Some(coeffs) => poly_parts(coeffs),
        None => {
            let (np, dp) = c.fraction_parts();
            let (nn, ns, _) = poly_parts(&np);
            let (_, ds, _) = poly_parts(&dp);
            (nn, format!("({})/({})", ns, ds), true)
        }
    }
}

fn poly_to_string(e: &Expr, p: &crate::poly::MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let dim = e.chart.dim();
    let mut out = String::new();
    let mut first = true;
    for (m, c) in p.terms.iter().rev() {
        let mut factors: Vec<String> = Vec::new();
        for v in 0..dim {
            let k = m.0[v];
            if k == 0 {
                continue;
            }
            let name = &e.chart.vars[v];
            if e.chart.root[v] {
                let whole = k.div_euclid(2);
                let odd = k.rem_euclid(2) == 1;
                if whole == 1 {
                    factors.push(name.clone());
                } else if whole != 0 {
                    factors.push(format!("{}^{}", name, whole));
                }
                if odd {
                    factors.push(format!("sqrt({})", name));
                }
            } else if k == 1 {
                factors.push(name.clone());
            } else {
                factors.push(format!("{}^{}", name, k));
            }
        }
        for (b, form) in e.atoms.iter().enumerate() {
            let k = m.0[dim + b];
            if k == 0 {
                continue;
            }
            let fs = form_to_string(e, form);
            if k == 1 {
                factors.push(format!("exp({})", fs));
            } else {
                factors.push(format!("exp({})^{}", fs, k));
            }
        }
        let (neg, cbody, cparens) = constant_parts(c);
        let piece = if factors.is_empty() {
            // a negated composite constant needs parentheses so the sign
            // applies to the whole sum
            if neg && cparens {
                format!("({})", cbody)
            } else {
                cbody.clone()
            }
        } else {
            let coeff = if cbody == "1" {
                String::new()
            } else if cparens {
                format!("({})*", cbody)
            } else {
                format!("{}*", cbody)
            };
            format!("{}{}", coeff, factors.join("*"))
        };
        if first {
            if neg {
                write!(out, "-{}", piece).unwrap();
            } else {
                out.push_str(&piece);
            }
            first = false;
        } else if neg {
            write!(out, " - {}", piece).unwrap();
        } else {
            write!(out, " + {}", piece).unwrap();
        }
    }
    out
}

pub fn form_to_string(e: &Expr, form: &crate::lattice::ExpForm) -> String {
    let mut out = String::new();
    let mut first = true;
    for (v, c) in form.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, body, parens) = constant_parts(c);
        let var = &e.chart.vars[v];
        let piece = if body == "1" {
            var.clone()
        } else if parens {
            format!("({})*{}", body, var)
        } else {
            format!("{}*{}", body, var)
        };
        if first {
            if neg {
                write!(out, "-{}", piece).unwrap();
            } else {
                out.push_str(&piece);
            }
            first = false;
        } else if neg {
            write!(out, " - {}", piece).unwrap();
        } else {
            write!(out, " + {}", piece).unwrap();
        }
    }
    if first {
        out.push('0');
    }
    out
}

/// Deterministic canonical rendering; round-trips through `parse_expr`.
pub fn format_expr(e: &Expr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let num = poly_to_string(e, &e.num);
    if e.den.is_constant() && e.den.constant_value(&e.chart.mode).map_or(false, |c| c.is_one()) {
        num
    } else {
        let den = poly_to_string(e, &e.den);
        format!("({})/({})", num, den)
    }
}

fn int_to_i32(n: &BigInt, err: impl FnOnce() -> Error) -> Result<i32> {
    use num_traits::ToPrimitive;
    n.to_i32().ok_or_else(err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;

    fn monge() -> Arc<Chart> {
        Chart::with_roots(
            "monge",
            &["x", "y", "z", "p", "q"],
            &["x", "q"],
            &ConstMode::generic(),
        )
    }

    #[test]
    fn parse_zero_and_format() {
        let ch = monge();
        let z = parse_expr("0", &ch).unwrap();
        assert!(z.is_zero());
        assert_eq!(format_expr(&z), "0");
    }

    #[test]
    fn fixed_example_format() {
        // alpha*exp(alpha*x)
        let ch = Chart::new("roll", &["x", "y", "z", "p", "q"], &ConstMode::generic());
        let e = parse_expr("exp(alpha*x)*alpha", &ch).unwrap();
        assert_eq!(format_expr(&e), "alpha*exp(alpha*x)");
    }

    #[test]
    fn theorem_f_parses() {
        let ch = monge();
        let f = parse_expr(
            "q*z^2 - 1/(alpha^2+1)*(sqrt(q)*z - 1/(2*sqrt(q)*x))^2",
            &ch,
        )
        .unwrap();
        // the square expands radical-free
        let txt = format_expr(&f);
        assert!(!txt.contains("sqrt(q)"), "canonical F is sqrt-free: {}", txt);
        let back = parse_expr(&txt, &ch).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn nonlinear_exponent_rejected() {
        let ch = monge();
        let r = parse_expr("exp(x*y)", &ch);
        assert!(matches!(r, Err(Error::NonLinearExponent(_))));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let ch = monge();
        let r = parse_expr("2 x", &ch);
        assert!(matches!(r, Err(Error::SyntaxError { .. })));
    }

    #[test]
    fn caret_binds_tighter_than_unary_minus() {
        let ch = monge();
        let a = parse_expr("-y^2", &ch).unwrap();
        let b = parse_expr("-(y^2)", &ch).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn syntax_error_position() {
        let ch = monge();
        match parse_expr("x + $", &ch) {
            Err(Error::SyntaxError { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("expected syntax error, got {:?}", other.map(|e| format_expr(&e))),
        }
    }

    #[test]
    fn unknown_symbol_positioned() {
        let ch = monge();
        match parse_expr("x + w", &ch) {
            Err(Error::SyntaxError { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected error, got {:?}", other.map(|e| format_expr(&e))),
        }
    }

    #[test]
    fn roundtrip_assorted() {
        let ch = monge();
        for text in [
            "x + y",
            "1/2*x - 3*y^4",
            "(x + y)/(x*y)",
            "sqrt(x)*sqrt(q)^3",
            "alpha^2*x/(alpha + 1)",
            "exp(alpha*x)^-2*y",
            "i*x - sqrt2*y + sqrt3*z",
            "(1 + 2*i)*p + (3/4 - i)*q",
        ] {
            let e = parse_expr(text, &ch).unwrap();
            let printed = format_expr(&e);
            let back = parse_expr(&printed, &ch).unwrap();
            assert_eq!(back, e, "round-trip failed for `{}` -> `{}`", text, printed);
        }
    }
}
