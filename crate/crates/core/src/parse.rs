//! Text grammar for polynomials, poly vector fields and poly differential
//! operators.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := rational | 't' index ['^' exp] | wedge | 'D[' multi (';' multi)* ']'
//! wedge   := 'd' index (('/\' | '∧') 'd' index)*
//! multi   := exp (',' exp)*
//! ```
//!
//! Indices are 1-based. The variable count is either supplied or taken as
//! the largest index (or multi-index length) that occurs.

use crate::dpoly::PolyDiffOp;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;
use crate::tpoly::PolyVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Poly,
    PolyVec,
    PolyDiffOp,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Poly(Poly),
    PolyVec(PolyVec),
    PolyDiffOp(PolyDiffOp),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Poly(p) => write!(f, "{p}"),
            Element::PolyVec(p) => write!(f, "{p}"),
            Element::PolyDiffOp(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Default)]
struct RawTerm {
    coeff: Option<Rational>,
    vars: Vec<(usize, u32)>,
    wedge: Option<Vec<usize>>,
    slots: Option<Vec<Vec<u32>>>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    kind: Kind,
}

impl Parser<'_> {
    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    fn err_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(at);
        Error::Parse {
            message: message.into(),
            line,
            column,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.pos, message)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn uint<T: std::str::FromStr>(&mut self) -> Result<T> {
        let at = self.pos;
        let d = self.digits()?.to_string();
        d.parse().map_err(|_| self.err_at(at, format!("number `{d}` out of range")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?.to_string();
        let save = self.pos;
        if self.eat("/") {
            self.skip_ws();
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let at = self.pos;
                let den = self.digits()?.to_string();
                return format!("{num}/{den}")
                    .parse()
                    .map_err(|_| self.err_at(at, "zero denominator"));
            }
            self.pos = save;
        }
        num.parse()
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let i: usize = self.uint()?;
        if i == 0 {
            return Err(self.err_at(at, "indices start at 1"));
        }
        Ok(i)
    }

    fn factor(&mut self, t: &mut RawTerm) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                t.coeff = Some(t.coeff.take().map_or(r.clone(), |c| &c * &r));
            }
            Some('t') => {
                self.pos += 1;
                let i = self.index()?;
                let e = if self.eat("^") { self.uint()? } else { 1 };
                t.vars.push((i, e));
            }
            Some('d') if self.kind == Kind::PolyVec => {
                if t.wedge.is_some() {
                    return Err(self.err("a term has at most one wedge of partials"));
                }
                let mut idx = Vec::new();
                loop {
                    self.expect("d")?;
                    idx.push(self.index()?);
                    if !(self.eat("/\\") || self.eat("∧")) {
                        break;
                    }
                }
                t.wedge = Some(idx);
            }
            Some('D') if self.kind == Kind::PolyDiffOp => {
                if t.slots.is_some() {
                    return Err(self.err("a term has at most one `D[...]`"));
                }
                self.pos += 1;
                self.expect("[")?;
                let mut slots = Vec::new();
                if !self.eat("]") {
                    loop {
                        let mut m = vec![self.uint()?];
                        while self.eat(",") {
                            m.push(self.uint()?);
                        }
                        slots.push(m);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(";")?;
                    }
                }
                t.slots = Some(slots);
            }
            Some(c) => return Err(self.err_at(at, format!("unexpected `{c}`"))),
            None => return Err(self.err_at(at, "unexpected end of input")),
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut neg = self.eat("-");
        loop {
            let mut t = RawTerm::default();
            self.factor(&mut t)?;
            while self.eat("*") {
                self.factor(&mut t)?;
            }
            if neg {
                t.coeff = Some(-t.coeff.unwrap_or_else(Rational::one));
            }
            out.push(t);
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err(format!("unexpected `{}`", self.peek().unwrap_or(' '))));
        }
        Ok(out)
    }
}

fn infer_n(terms: &[RawTerm]) -> usize {
    let mut n = 1;
    for t in terms {
        n = n.max(t.vars.iter().map(|v| v.0).max().unwrap_or(0));
        n = n.max(t.wedge.iter().flatten().copied().max().unwrap_or(0));
        n = n.max(t.slots.iter().flatten().map(Vec::len).max().unwrap_or(0));
    }
    n
}

fn coefficient(t: &RawTerm, n: usize) -> Result<Poly> {
    let mut e = vec![0u32; n];
    for &(i, k) in &t.vars {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        e[i - 1] += k;
    }
    Ok(Poly::term(n, Monomial(e), t.coeff.clone().unwrap_or_else(Rational::one)))
}

/// Parses `text` as an element of the given kind in `n` variables (or the
/// smallest `n` that fits).
pub fn parse_element(text: &str, kind: Kind, n: Option<usize>) -> Result<Element> {
    let terms = Parser { src: text, pos: 0, kind }.expr()?;
    let n = n.unwrap_or_else(|| infer_n(&terms));
    if n == 0 {
        return Err(Error::Structural("at least one variable is required".into()));
    }
    Ok(match kind {
        Kind::Poly => {
            let mut p = Poly::zero(n);
            for t in &terms {
                p = p.add(&coefficient(t, n)?);
            }
            Element::Poly(p)
        }
        Kind::PolyVec => {
            let mut v = PolyVec::zero(n);
            for t in &terms {
                let f = coefficient(t, n)?;
                let idx = t.wedge.clone().unwrap_or_default();
                v = v.add(&PolyVec::term(f, &idx)?);
            }
            Element::PolyVec(v)
        }
        Kind::PolyDiffOp => {
            let mut v = PolyDiffOp::zero(n);
            for t in &terms {
                let f = coefficient(t, n)?;
                let mut slots = Vec::new();
                for m in t.slots.iter().flatten() {
                    if m.len() != n {
                        return Err(Error::Arity {
                            expected: n,
                            got: m.len(),
                        });
                    }
                    slots.push(Monomial(m.clone()));
                }
                v = v.add(&PolyDiffOp::term(f, slots)?);
            }
            Element::PolyDiffOp(v)
        }
    })
}

pub fn parse_poly(text: &str, n: Option<usize>) -> Result<Poly> {
    match parse_element(text, Kind::Poly, n)? {
        Element::Poly(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_polyvec(text: &str, n: Option<usize>) -> Result<PolyVec> {
    match parse_element(text, Kind::PolyVec, n)? {
        Element::PolyVec(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_polydiff(text: &str, n: Option<usize>) -> Result<PolyDiffOp> {
    match parse_element(text, Kind::PolyDiffOp, n)? {
        Element::PolyDiffOp(p) => Ok(p),
        _ => unreachable!(),
    }
}
