//! Tokenizer and expression parser shared by the polynomial, function and
//! matrix text formats.
//!
//! Grammar (usual precedence, `^` binds tightest and takes an integer):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | '[' INT (',' INT)* ']' | IDENT | '(' expr ')'
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// Extension-field literal, high-order digit first.
    Digits(Vec<u32>),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

/// Target of expression evaluation.
pub trait Algebra {
    type Value: Clone;
    fn int(&self, n: i64, pos: usize) -> Result<Self::Value>;
    fn digits(&self, ds: &[u32], pos: usize) -> Result<Self::Value>;
    fn var(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
    fn one(&self) -> Self::Value;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Value> {
    fn go<A: Algebra>(alg: &A, e: &Expr, pos: usize) -> Result<A::Value> {
        Ok(match e {
            Expr::Int(n) => alg.int(*n, pos)?,
            Expr::Digits(ds) => alg.digits(ds, pos)?,
            Expr::Var(v) => alg.var(v, pos)?,
            Expr::Neg(a) => alg.neg(go(alg, a, pos)?),
            Expr::Add(a, b) => alg.add(go(alg, a, pos)?, go(alg, b, pos)?),
            Expr::Sub(a, b) => alg.sub(go(alg, a, pos)?, go(alg, b, pos)?),
            Expr::Mul(a, b) => alg.mul(go(alg, a, pos)?, go(alg, b, pos)?),
            Expr::Div(a, b, at) => alg.div(go(alg, a, pos)?, go(alg, b, pos)?, *at)?,
            Expr::Pow(a, k) => {
                let base = go(alg, a, pos)?;
                let mut acc = alg.one();
                for _ in 0..*k {
                    acc = alg.mul(acc, base.clone());
                }
                acc
            }
        })
    }
    go(alg, e, 0)
}

/// Parses and evaluates `src` in one step.
pub fn parse_eval<A: Algebra>(alg: &A, src: &str) -> Result<A::Value> {
    let e = parse(src)?;
    eval(alg, &e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| Error::parse(start, "integer too large"))?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()[],".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected '{c}'")))
        }
    }
    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            _ => Err(Error::parse(self.pos(), "expected integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }
    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos();
            let k = self.int()?;
            let k = u32::try_from(k).map_err(|_| Error::parse(at, "exponent out of range"))?;
            Ok(Expr::Pow(Box::new(base), k))
        } else {
            Ok(base)
        }
    }
    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let mut ds = Vec::new();
                loop {
                    let at = self.pos();
                    let n = self.int()?;
                    ds.push(u32::try_from(n).map_err(|_| Error::parse(at, "digit out of range"))?);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                Ok(Expr::Digits(ds))
            }
            _ => Err(Error::parse(pos, "expected a term")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;
    impl Algebra for Ints {
        type Value = i64;
        fn int(&self, n: i64, _: usize) -> Result<i64> {
            Ok(n)
        }
        fn digits(&self, _: &[u32], pos: usize) -> Result<i64> {
            Err(Error::parse(pos, "no digits"))
        }
        fn var(&self, _: &str, _: usize) -> Result<i64> {
            Ok(10)
        }
        fn add(&self, a: i64, b: i64) -> i64 {
            a + b
        }
        fn sub(&self, a: i64, b: i64) -> i64 {
            a - b
        }
        fn mul(&self, a: i64, b: i64) -> i64 {
            a * b
        }
        fn neg(&self, a: i64) -> i64 {
            -a
        }
        fn div(&self, a: i64, b: i64, pos: usize) -> Result<i64> {
            if b == 0 {
                Err(Error::parse(pos, "division by zero"))
            } else {
                Ok(a / b)
            }
        }
        fn one(&self) -> i64 {
            1
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_eval(&Ints, "2*t^2+t+1").unwrap(), 211);
        assert_eq!(parse_eval(&Ints, "-t^2").unwrap(), -100);
        assert_eq!(parse_eval(&Ints, "(t+2)/(t-8)").unwrap(), 6);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("t+").unwrap_err(), Error::parse(2, "expected a term"));
        assert_eq!(parse("t $").unwrap_err(), Error::parse(2, "unexpected character '$'"));
        assert_eq!(parse_eval(&Ints, "t/0").unwrap_err(), Error::parse(1, "division by zero"));
        assert!(matches!(parse("(t"), Err(Error::Parse { pos: 2, .. })));
    }
}
