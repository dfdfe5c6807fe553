//! Arithmetic expressions over declared variables.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := name | integer | 'omega' | '(' expr ')' | '-' base
//! ```

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::fields::{Field, FieldError};
use crate::poly::{Poly, PolyRing, RatFunc, RatFuncField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Int(BigUint),
    Omega,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("undeclared variable {0:?}")]
    Undeclared(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(BigUint),
    Op(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name {n:?}"),
            Tok::Int(n) => format!("number {n}"),
            Tok::Op(c) => format!("{c:?}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, first_line: usize) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (first_line, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n = s.parse::<BigUint>().expect("digits");
            out.push(Spanned { tok: Tok::Int(n), line: l, col: cc });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned { tok: Tok::Name(s), line: l, col: cc });
        } else if "+-*/^()".contains(c) {
            chars.next();
            col += 1;
            out.push(Spanned { tok: Tok::Op(c), line: l, col: cc });
        } else {
            return Err(ParseError { line: l, col: cc, kind: ParseErrorKind::BadChar(c) });
        }
    }
    Ok((out, (line, col)))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn err_here(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some(s) => ParseError {
                line: s.line,
                col: s.col,
                kind: ParseErrorKind::Unexpected { expected, found: s.tok.describe() },
            },
            None => ParseError { line: self.end.0, col: self.end.1, kind: ParseErrorKind::UnexpectedEnd(expected) },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.toks[self.pos].clone();
                self.pos += 1;
                let rhs = self.factor()?;
                if matches!(&rhs, Expr::Int(n) if n.is_zero()) {
                    return Err(ParseError { line: at.line, col: at.col, kind: ParseErrorKind::ZeroDenominator });
                }
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.toks.get(self.pos).cloned() {
            Some(Spanned { tok: Tok::Int(n), line, col }) => {
                self.pos += 1;
                let e = n.to_u32().ok_or(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::ExponentTooLarge(n.to_string()),
                })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.err_here("a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let Some(s) = self.toks.get(self.pos).cloned() else {
            return Err(self.err_here("an operand"));
        };
        match s.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Name(name) => {
                self.pos += 1;
                if name == "omega" {
                    Ok(Expr::Omega)
                } else if self.vars.contains(&name.as_str()) {
                    Ok(Expr::Var(name))
                } else {
                    Err(ParseError { line: s.line, col: s.col, kind: ParseErrorKind::Undeclared(name) })
                }
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err_here("')'"));
                }
                Ok(e)
            }
            Tok::Op('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            _ => Err(self.err_here("an operand")),
        }
    }
}

fn parse_at(src: &str, vars: &[&str], first_line: usize) -> Result<Expr, ParseError> {
    let (toks, end) = lex(src, first_line)?;
    let mut p = Parser { toks, pos: 0, end, vars };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err_here("an operator or end of input"));
    }
    Ok(e)
}

pub fn parse_expr(src: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    parse_at(src, vars, 1)
}

/// Lines of the form `name = expr`; blank lines and `#` comments are skipped.
pub fn parse_assignments(src: &str, vars: &[&str]) -> Result<Vec<(String, Expr)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((name, rhs)) = line.split_once('=') else {
            return Err(ParseError {
                line: i + 1,
                col: 1,
                kind: ParseErrorKind::Unexpected { expected: "name = expr", found: line.trim().to_string() },
            });
        };
        let offset = name.len() + 1;
        let e = parse_at(rhs, vars, i + 1).map_err(|mut e| {
            if e.line == i + 1 {
                e.col += offset;
            }
            e
        })?;
        out.push((name.trim().to_string(), e));
    }
    Ok(out)
}

impl Expr {
    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Expr::Var(v) => v == name,
            Expr::Int(_) | Expr::Omega => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions(name) || b.mentions(name),
            Expr::Pow(a, _) | Expr::Neg(a) => a.mentions(name),
        }
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

struct Wrap<'a>(&'a Expr, bool);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Omega => write!(f, "omega"),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrap(a, prec(a) < 1), Wrap(b, prec(b) <= 1)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrap(a, prec(a) < 1), Wrap(b, prec(b) <= 1)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrap(a, prec(a) < 2), Wrap(b, prec(b) <= 2)),
            Expr::Div(a, b) => write!(f, "{}/{}", Wrap(a, prec(a) < 2), Wrap(b, prec(b) <= 2)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", Wrap(a, prec(a) < 4)),
            Expr::Neg(a) => write!(f, "-{}", Wrap(a, prec(a) < 4)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("unknown variable {0:?}")]
    Unknown(String),
    #[error("omega is not available in this field")]
    NoOmega,
    #[error("the expression is not a polynomial")]
    NotPolynomial,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn int_to_field<F: Field>(f: &F, n: &BigUint) -> F::Elem {
    let base = f.from_i64(1 << 32);
    n.to_u32_digits()
        .iter()
        .rev()
        .fold(f.zero(), |acc, &d| f.add(&f.mul(&acc, &base), &f.from_i64(d as i64)))
}

/// Lowers to a rational function in the variables of `k`'s ring.
pub fn lower_ratfunc<F: Field>(e: &Expr, k: &RatFuncField<F>) -> Result<RatFunc<F::Elem>, LowerError> {
    let rec = |x: &Expr| lower_ratfunc(x, k);
    Ok(match e {
        Expr::Var(v) => k.var(k.ring().var_index(v).ok_or_else(|| LowerError::Unknown(v.clone()))?),
        Expr::Int(n) => k.constant(int_to_field(k.ring().field(), n)),
        Expr::Omega => {
            if !k.has_omega() {
                return Err(LowerError::NoOmega);
            }
            k.omega()
        }
        Expr::Add(a, b) => k.add(&rec(a)?, &rec(b)?),
        Expr::Sub(a, b) => k.sub(&rec(a)?, &rec(b)?),
        Expr::Mul(a, b) => k.mul(&rec(a)?, &rec(b)?),
        Expr::Div(a, b) => k.div(&rec(a)?, &rec(b)?)?,
        Expr::Pow(a, n) => k.pow(&rec(a)?, *n as u64),
        Expr::Neg(a) => k.neg(&rec(a)?),
    })
}

/// Lowers to a polynomial; division is allowed only when the result is one.
pub fn lower_poly<F: Field>(e: &Expr, ring: &PolyRing<F>) -> Result<Poly<F>, LowerError> {
    let k = RatFuncField::new(ring.clone());
    let r = lower_ratfunc(e, &k)?;
    let den = ring.constant_value(r.den()).ok_or(LowerError::NotPolynomial)?;
    Ok(ring.scale(r.num(), &ring.field().inv(&den)?))
}

/// Lowers a constant expression to a field element.
pub fn lower_const<F: Field>(e: &Expr, f: &F) -> Result<F::Elem, LowerError> {
    let ring = PolyRing::new(f.clone(), &[] as &[&str]);
    let p = lower_poly(e, &ring)?;
    Ok(ring.constant_value(&p).unwrap_or_else(|| f.zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::CycloField;

    #[test]
    fn coefficient_a() {
        let e = parse_expr("(s3-s4)*s3*s4", &["s3", "s4"]).unwrap();
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let p = lower_poly(&e, &r).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn omega_cubed() {
        let e = parse_expr("omega^3 - 1", &[]).unwrap();
        assert!(CycloField.is_zero(&lower_const(&e, &CycloField).unwrap()));
        let e = parse_expr("omega^2 + omega + 1", &[]).unwrap();
        assert!(CycloField.is_zero(&lower_const(&e, &CycloField).unwrap()));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("s3 +", &["s3"]).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnexpectedEnd(_)));
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse_expr("s3 + t", &["s3"]).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Undeclared("t".into()));
        assert_eq!(e.col, 6);
        let e = parse_expr("1/0", &[]).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);
        let e = parse_expr("x^y", &["x", "y"]).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
        let e = parse_expr("(x", &["x"]).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnexpectedEnd("')'")));
        assert!(parse_expr("x $", &["x"]).is_err());
    }

    #[test]
    fn printing_round_trips() {
        let vars = ["a", "b", "c"];
        for src in ["a - (b - c)", "a/(b*c)", "-a^2", "-(a^2)", "(a^2)^3", "a*b/c", "--a", "(a + b)*-c", "2^10/3"] {
            let e = parse_expr(src, &vars).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed, &vars).unwrap(), e, "{src} -> {printed}");
        }
        assert_eq!(parse_expr("a - (b - c)", &vars).unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse_expr("(a - b) - c", &vars).unwrap().to_string(), "a - b - c");
    }

    #[test]
    fn assignments() {
        let src = "# coefficients\na = (s3-s4)*s3*s4\nb = -(s3-1)*s3\n\nc = (s4-1)*s4 # last\n";
        let v = parse_assignments(src, &["s3", "s4"]).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].0, "b");
        let e = parse_assignments("a = 1\nb = s3 +", &["s3"]).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn rational_functions() {
        let k = RatFuncField::new(PolyRing::new(CycloField, &["t"]));
        let e = parse_expr("1/t + 1", &["t"]).unwrap();
        let r = lower_ratfunc(&e, &k).unwrap();
        assert!(!k.is_polynomial(&r));
        assert_eq!(lower_poly(&e, k.ring()), Err(LowerError::NotPolynomial));
        let big = parse_expr("123456789012345678901234567890", &[]).unwrap();
        let v = lower_const(&big, &crate::fields::prime_field(1_000_003).unwrap()).unwrap();
        assert_eq!(v, (123456789012345678901234567890u128 % 1_000_003) as u64);
    }
}
