//! Polynomial literal syntax: integers, names, `+ - * / ^`, parentheses and
//! implicit multiplication (`2x0^3 x1` is not allowed because whitespace
//! separates scenario values, but `2x0^3*x1` and `2(x1-x2)` are).
//!
//! Names resolve, in order, to ring variables, caller-supplied bindings, and
//! finally `w`/`omega` as the cube root of unity. `omega` always means the
//! root of unity, even when a variable is named `w`.
//!
//! The AST is kept flat (no Add directly inside Add, no Mul inside Mul) so that
//! printing and re-parsing is the identity.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::coeff::Field;
use crate::poly::{PolyError, Polynomial, RationalFunction, RingRef};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Name(String),
    Add(Vec<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    /// 1-based column within the parsed text.
    Syntax { col: usize, msg: String },
    Unresolved(String),
    NotPolynomial,
    Poly(PolyError),
}

impl From<PolyError> for ExprError {
    fn from(e: PolyError) -> Self {
        ExprError::Poly(e)
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { col, msg } => write!(f, "column {col}: {msg}"),
            ExprError::Unresolved(n) => write!(f, "unresolved name `{n}`"),
            ExprError::NotPolynomial => f.write_str("expression is not a polynomial"),
            ExprError::Poly(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ExprError::Syntax { col, msg: alloc::format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax { col: self.col(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut items = Vec::new();
        push_add(&mut items, self.term()?);
        loop {
            if self.eat('+') {
                push_add(&mut items, self.term()?);
            } else if self.eat('-') {
                items.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Add(items) })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.product()
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = mul(acc, self.power()?);
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
            } else if self.starts_factor() {
                acc = mul(acc, self.power()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(&n).or_else(|_| self.err("exponent too large"))?;
                    if self.peek() == Some(&Tok::Op('^')) {
                        return self.err("chained exponents need parentheses");
                    }
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, name or `(`"),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn push_add(items: &mut Vec<Expr>, e: Expr) {
    match e {
        Expr::Add(v) => items.extend(v),
        other => items.push(other),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    let mut items = Vec::new();
    for e in [a, b] {
        match e {
            Expr::Mul(v) => items.extend(v),
            other => items.push(other),
        }
    }
    Expr::Mul(items)
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end_col: s.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl core::str::FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_expr(s)
    }
}

const P_ADD: u8 = 0;
const P_NEG: u8 = 1;
const P_MUL: u8 = 2;
const P_POW: u8 = 3;
const P_ATOM: u8 = 4;

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(_) => P_ADD,
            Expr::Neg(_) => P_NEG,
            Expr::Mul(_) | Expr::Div(..) => P_MUL,
            Expr::Pow(..) => P_POW,
            Expr::Int(_) | Expr::Name(_) => P_ATOM,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.prec() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(n) => write!(f, "{n}")?,
            Expr::Name(s) => f.write_str(s)?,
            Expr::Add(items) => {
                for (i, it) in items.iter().enumerate() {
                    match (i, it) {
                        (0, _) => it.write(f, P_NEG)?,
                        (_, Expr::Neg(inner)) => {
                            f.write_str(" - ")?;
                            inner.write(f, P_NEG)?;
                        }
                        _ => {
                            f.write_str(" + ")?;
                            it.write(f, P_NEG)?;
                        }
                    }
                }
            }
            Expr::Neg(inner) => {
                f.write_str("-")?;
                inner.write(f, P_NEG)?;
            }
            Expr::Mul(items) => {
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    it.write(f, P_POW)?;
                }
            }
            Expr::Div(a, b) => {
                a.write(f, P_MUL)?;
                f.write_str("/")?;
                b.write(f, P_POW)?;
            }
            Expr::Pow(b, e) => {
                b.write(f, P_ATOM)?;
                write!(f, "^{e}")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Names that are not ring variables or the root of unity.
    pub fn free_names(&self, vars: &[String], out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Name(s) => {
                if !vars.contains(s) && s != "w" && s != "omega" && !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.free_names(vars, out)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.free_names(vars, out),
            Expr::Div(a, b) => {
                a.free_names(vars, out);
                b.free_names(vars, out);
            }
        }
    }

    /// Split a top-level `base^k` into (base, k); anything else has k = 1.
    pub fn split_power(&self) -> (&Expr, u32) {
        match self {
            Expr::Pow(b, e) => (b, *e),
            other => (other, 1),
        }
    }

    pub fn to_rational<F: Field>(
        &self,
        ring: &RingRef<F>,
        env: &dyn Fn(&str) -> Option<RationalFunction<F>>,
    ) -> Result<RationalFunction<F>, ExprError> {
        let field = &ring.field;
        Ok(match self {
            Expr::Int(n) => RationalFunction::from_poly(Polynomial::constant(ring, field.from_bigint(n))),
            Expr::Name(s) => {
                if let Some(i) = ring.index_of(s) {
                    RationalFunction::from_poly(Polynomial::var(ring, i))
                } else if let Some(v) = env(s) {
                    v
                } else if s == "w" || s == "omega" {
                    let w = field.omega().ok_or(PolyError::Coeff(crate::coeff::CoeffError::NoOmega))?;
                    RationalFunction::from_poly(Polynomial::constant(ring, w))
                } else {
                    return Err(ExprError::Unresolved(s.clone()));
                }
            }
            Expr::Add(items) => {
                let mut acc: Option<RationalFunction<F>> = None;
                for it in items {
                    let v = it.to_rational(ring, env)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => add_rational(&a, &v),
                    });
                }
                acc.expect("nonempty sum")
            }
            Expr::Neg(e) => {
                let v = e.to_rational(ring, env)?;
                RationalFunction { num: v.num.neg(), den: v.den }
            }
            Expr::Mul(items) => {
                let mut acc = RationalFunction::from_poly(Polynomial::one(ring));
                for it in items {
                    acc = acc.mul(&it.to_rational(ring, env)?);
                }
                acc
            }
            Expr::Div(a, b) => {
                let b = b.to_rational(ring, env)?;
                if b.is_zero() {
                    return Err(ExprError::Poly(PolyError::ZeroInput));
                }
                a.to_rational(ring, env)?.mul(&b.inv()?)
            }
            Expr::Pow(b, e) => b.to_rational(ring, env)?.pow(*e as i32),
        })
    }

    pub fn to_poly<F: Field>(
        &self,
        ring: &RingRef<F>,
        env: &dyn Fn(&str) -> Option<RationalFunction<F>>,
    ) -> Result<Polynomial<F>, ExprError> {
        let r = self.to_rational(ring, env)?;
        rational_to_poly(&r)
    }
}

fn add_rational<F: Field>(a: &RationalFunction<F>, b: &RationalFunction<F>) -> RationalFunction<F> {
    if a.den == b.den {
        return RationalFunction { num: &a.num + &b.num, den: a.den.clone() };
    }
    RationalFunction { num: &(&a.num * &b.den) + &(&b.num * &a.den), den: &a.den * &b.den }
}

pub fn rational_to_poly<F: Field>(r: &RationalFunction<F>) -> Result<Polynomial<F>, ExprError> {
    if let Some(c) = r.den.constant_value() {
        let inv = r.num.field().inv(&c).map_err(PolyError::from)?;
        return Ok(r.num.scale(&inv));
    }
    r.num.exact_div(&r.den)?.ok_or(ExprError::NotPolynomial)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, P_ADD)
    }
}

/// Parse straight to a polynomial with no extra bindings.
pub fn poly<F: Field>(ring: &RingRef<F>, s: &str) -> Result<Polynomial<F>, ExprError> {
    parse_expr(s)?.to_poly(ring, &|_| None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Eisenstein, PrimeField, QOmega, Rationals};
    use crate::poly::tests::{fs1, ring4};
    use crate::poly::Ring;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn parses_fs1() {
        let r = ring4(Rationals);
        let p = poly(&r, "x0^9 + (x1^3-x2^3)*(x2^3-x3^3)*(x3^3-x1^3)").unwrap();
        assert_eq!(p, fs1(&r));
        let q = poly(&r, "x0^9 + (x1^3-x2^3)(x2^3-x3^3)(x3^3-x1^3)").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn omega_and_w_variable() {
        let r = Ring::new(Eisenstein, &["x"]);
        let p = poly(&r, "w^2 + w + 1").unwrap();
        assert!(p.is_zero());
        let r2 = Ring::new(Eisenstein, &["x", "w"]);
        let p2 = poly(&r2, "w - omega").unwrap();
        assert_eq!(p2.len(), 2);
        assert_eq!(p2.terms()[1].1, QOmega::from_ints(0, -1));
        assert!(poly(&Ring::new(Rationals, &["x"]), "w").is_err());
    }

    #[test]
    fn syntax_errors_have_columns() {
        assert!(matches!(parse_expr(""), Err(ExprError::Syntax { col: 1, .. })));
        assert!(matches!(parse_expr("x0 + $"), Err(ExprError::Syntax { col: 6, .. })));
        assert!(matches!(parse_expr("(x0"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("x^y"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn rational_and_division() {
        let k = PrimeField::new(10009).unwrap();
        let r = ring4(k);
        let e = parse_expr("(x2^3-x3^3)/x0^3").unwrap();
        let v = e.to_rational(&r, &|_| None).unwrap();
        assert_eq!(v.den, poly(&r, "x0^3").unwrap());
        assert_eq!(poly(&r, "(x1^2-x2^2)/(x1-x2)").unwrap(), poly(&r, "x1+x2").unwrap());
        assert_eq!(e.to_poly(&r, &|_| None), Err(ExprError::NotPolynomial));
    }

    #[test]
    fn bindings() {
        let r = ring4(Rationals);
        let f = fs1(&r);
        let env = |n: &str| (n == "FS1").then(|| RationalFunction::from_poly(f.clone()));
        let p = parse_expr("FS1 - x0^9").unwrap().to_poly(&r, &env).unwrap();
        assert_eq!(&p + &poly(&r, "x0^9").unwrap(), f);
        assert_eq!(parse_expr("FS9").unwrap().to_poly(&r, &env), Err(ExprError::Unresolved("FS9".into())));
    }

    #[test]
    fn printing_examples() {
        for s in ["x0^9 + (x1^3 - x2^3)*(x2^3 - x3^3)", "-x - -y", "a/b/c*(d/e)", "(x^2)^3", "-(a + b)*c"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0u32..30).prop_map(|n| n.to_string()),
            prop_oneof![Just("x0"), Just("x1"), Just("w"), Just("FS1")].prop_map(|s| s.to_string()),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a})+({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a})-({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a})*({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a})/({b})")),
                (inner.clone(), 0u32..4).prop_map(|(a, e)| alloc::format!("({a})^{e}")),
                inner.prop_map(|a| alloc::format!("-({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(s in arb_expr()) {
            let e = parse_expr(&s).unwrap();
            let printed = e.to_string();
            prop_assert_eq!(parse_expr(&printed).unwrap(), e);
        }
    }
}
