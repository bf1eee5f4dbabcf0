//! Arithmetic expressions and manifold expressions appearing in table cells.
//!
//! Expressions use `+ - * /`, parentheses, integer literals, `inf`, and
//! single-letter variables. Juxtaposition multiplies, so `6b-1`,
//! `2n(t+3u)` and `(2n+1)(2m+1)` all parse.
//!
//! Values live on the projective line: a finite shift of `∞` is `∞`,
//! `x/∞ = 0`, `x/0 = ∞` for `x ≠ 0`, and `x·∞ = ∞` for `x ≠ 0`.
//! The forms `∞ ± ∞`, `0·∞` and `0/0` are errors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lens::{canonicalize, chain_eval, ChainDescription, ClosedManifold};
use crate::ExtRational;

pub type Env = BTreeMap<char, ExtRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(i128),
    Inf,
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i128),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut v: i128 = 0;
            while let Some(d) = it.peek().and_then(|c| c.to_digit(10)) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as i128))
                    .ok_or_else(|| Error::Parse(format!("literal too large in `{s}`")))?;
                it.next();
            }
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            let mut w = String::new();
            while let Some(&c) = it.peek().filter(|c| c.is_ascii_alphabetic()) {
                w.push(c);
                it.next();
            }
            // `inf` is a keyword; other words are runs of one-letter variables
            if w == "inf" {
                out.push(Tok::Ident(w));
            } else {
                out.extend(w.chars().map(|c| Tok::Ident(c.to_string())));
            }
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            it.next();
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn fail(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => {
                    let c = *c;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = if c == '*' {
                        Expr::Mul(Box::new(lhs), Box::new(rhs))
                    } else {
                        Expr::Div(Box::new(lhs), Box::new(rhs))
                    };
                }
                Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let rhs = self.atom()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned().ok_or_else(|| self.fail("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Ident(w) if w == "inf" => Ok(Expr::Inf),
            Tok::Ident(w) => Ok(Expr::Var(w.chars().next().expect("non-empty identifier"))),
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.fail("missing `)`")),
                }
            }
            Tok::Op(c) => Err(self.fail(&format!("unexpected `{c}`"))),
        }
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser {
            toks: lex(s)?,
            pos: 0,
            src: s,
        };
        if p.toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(e)
    }

    pub fn vars(&self, out: &mut Vec<char>) {
        match self {
            Self::Num(_) | Self::Inf => {}
            Self::Var(c) => {
                if !out.contains(c) {
                    out.push(*c);
                }
            }
            Self::Neg(a) => a.vars(out),
            Self::Add(a, b) | Self::Sub(a, b) | Self::Mul(a, b) | Self::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn eval(&self, env: &Env) -> Result<ExtRational> {
        let undefined = |what: String| Error::Arithmetic(what);
        Ok(match self {
            Self::Num(v) => ExtRational::from_integer(*v),
            Self::Inf => ExtRational::infinity(),
            Self::Var(c) => env
                .get(c)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("unbound variable `{c}`")))?,
            Self::Neg(a) => -a.eval(env)?,
            Self::Add(a, b) => a.eval(env)?.checked_add(&b.eval(env)?)?,
            Self::Sub(a, b) => a.eval(env)?.checked_sub(&b.eval(env)?)?,
            Self::Mul(a, b) => projective_mul(&a.eval(env)?, &b.eval(env)?).ok_or_else(|| undefined("0 * ∞".into()))?,
            Self::Div(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                projective_mul(&x, &y.recip()).ok_or_else(|| undefined(format!("{x} / {y}")))?
            }
        })
    }
}

fn projective_mul(x: &ExtRational, y: &ExtRational) -> Option<ExtRational> {
    match (x.is_infinite(), y.is_infinite()) {
        (false, false) => x.checked_mul(y).ok(),
        (true, true) => Some(ExtRational::infinity()),
        (true, false) => (!y.is_zero()).then(ExtRational::infinity),
        (false, true) => (!x.is_zero()).then(ExtRational::infinity),
    }
}

/// Evaluate an arithmetic expression in an environment.
pub fn eval_expr(s: &str, env: &Env) -> Result<ExtRational> {
    Expr::parse(s)?.eval(env)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    Lens(Expr, Expr),
    Chain(Vec<Expr>),
    Sphere,
    S1xS2,
}

/// A `#`-separated sum of `L(p,q)`, `L[a,b,...]`, `S3` and `S1xS2` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldExpr {
    pub summands: Vec<Summand>,
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl ManifoldExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a manifold expression: `{s}`"));
        let mut summands = Vec::new();
        for part in s.split('#') {
            let part = part.trim();
            let summand = if part == "S3" {
                Summand::Sphere
            } else if part == "S1xS2" {
                Summand::S1xS2
            } else if let Some(inner) = part.strip_prefix("L(").and_then(|t| t.strip_suffix(')')) {
                match split_top(inner).as_slice() {
                    [p, q] => Summand::Lens(Expr::parse(p)?, Expr::parse(q)?),
                    _ => return Err(bad()),
                }
            } else if let Some(inner) = part.strip_prefix("L[").and_then(|t| t.strip_suffix(']')) {
                Summand::Chain(split_top(inner).into_iter().map(Expr::parse).collect::<Result<_>>()?)
            } else {
                return Err(bad());
            };
            summands.push(summand);
        }
        Ok(Self { summands })
    }

    pub fn vars(&self, out: &mut Vec<char>) {
        for s in &self.summands {
            match s {
                Summand::Lens(p, q) => {
                    p.vars(out);
                    q.vars(out);
                }
                Summand::Chain(es) => es.iter().for_each(|e| e.vars(out)),
                Summand::Sphere | Summand::S1xS2 => {}
            }
        }
    }

    pub fn eval(&self, env: &Env) -> Result<ClosedManifold<i128>> {
        self.summands.iter().try_fold(ClosedManifold::sphere(), |acc, s| {
            let m = match s {
                Summand::Sphere => ClosedManifold::sphere(),
                Summand::S1xS2 => ClosedManifold::s1xs2(),
                Summand::Lens(p, q) => {
                    let int = |e: &Expr| {
                        e.eval(env)?
                            .to_integer()
                            .ok_or_else(|| Error::InvalidCoefficient("L(p,q) needs integers".into()))
                    };
                    canonicalize(int(p)?, int(q)?)?
                }
                Summand::Chain(es) => {
                    let coeffs = es.iter().map(|e| e.eval(env)).collect::<Result<Vec<_>>>()?;
                    chain_eval(&ChainDescription::new(coeffs))?
                }
            };
            Ok(acc.connected_sum(&m))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(char, &str)]) -> Env {
        pairs.iter().map(|(c, v)| (*c, v.parse().unwrap())).collect()
    }

    fn ev(s: &str, e: &Env) -> String {
        eval_expr(s, e)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("error: {e}"))
    }

    #[test]
    fn arithmetic() {
        let e = env(&[
            ('n', "2"),
            ('m', "-3"),
            ('t', "5"),
            ('u', "2"),
            ('b', "inf"),
            ('z', "0"),
        ]);
        assert_eq!(ev("-4+1/n", &e), "-7/2");
        assert_eq!(ev("(2n+1)(2m+1)-4", &e), "-29");
        assert_eq!(ev("2n(t+3u)-t-u", &e), "37");
        assert_eq!(ev("6n-1", &e), "11");
        assert_eq!(ev("-b-1", &e), "inf");
        assert_eq!(ev("1+1/b", &e), "1");
        assert_eq!(ev("-4+1/z", &e), "inf");
        assert_eq!(ev("3/2", &e), "3/2");
        assert!(ev("-k+1", &e).starts_with("error"));
        assert!(ev("b-b", &e).starts_with("error"));
        assert!(ev("z*b", &e).starts_with("error"));
        assert!(ev("z/z", &e).starts_with("error"));
        assert!(Expr::parse("2+").is_err());
        assert!(Expr::parse("(1").is_err());
        assert!(Expr::parse("").is_err());
    }

    #[test]
    fn manifolds() {
        let e = env(&[('n', "1"), ('b', "1"), ('k', "3")]);
        let m = ManifoldExpr::parse("L(2,1) # L[4,-b]").unwrap();
        assert_eq!(m.eval(&e).unwrap().to_string(), "L(2,1)#L(5,4)");
        let m = ManifoldExpr::parse("L(6b-1,2b-1)").unwrap();
        assert_eq!(m.eval(&e).unwrap().to_string(), "L(5,1)");
        let mut vs = Vec::new();
        ManifoldExpr::parse("L[-n,-4,-b-1,k,-k]").unwrap().vars(&mut vs);
        assert_eq!(vs, vec!['n', 'b', 'k']);
        assert!(ManifoldExpr::parse("L[-n, ,2]").is_err());
        assert!(ManifoldExpr::parse("M(2,1)").is_err());
    }
}
