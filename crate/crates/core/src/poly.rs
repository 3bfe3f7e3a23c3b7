//! Sparse multivariate polynomials over Q with an optional truncation
//! threshold, the desk-scale stand-in for power series.
//!
//! A polynomial with truncation `N` carries only its terms of total degree
//! `< N`; everything from degree `N` up is unknown. Arithmetic propagates the
//! tightest threshold that keeps the stored terms exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Product of factorials of the exponents.
    pub fn factorial(&self) -> Rational {
        self.0
            .iter()
            .fold(Rational::one(), |acc, &e| acc * Rational::factorial(e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(d as usize + n - 1, n - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
    trunc: Option<u32>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(n, Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `t_i`, with `i` counted from 1.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        Ok(Self::term(n, Monomial::var(n, i - 1), Rational::one()))
    }

    pub fn term(n: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.num_vars(), n, "monomial arity");
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> Option<u32> {
        self.trunc
    }

    /// Sets the truncation threshold, dropping terms at or above it.
    pub fn with_truncation(mut self, trunc: Option<u32>) -> Self {
        self.trunc = trunc;
        if let Some(t) = trunc {
            self.terms.retain(|m, _| m.degree() < t);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a stored term; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(t) = self.trunc {
            if m.degree() >= t {
                return;
            }
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.mul(other))
    }

    /// Sum; panics on mismatched variable counts (see [`Self::try_add`]).
    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &-Rational::one())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Poly, c: &Rational) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone().with_truncation(min_trunc(self.trunc, other.trunc));
        for (m, x) in &other.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.n).with_truncation(self.trunc);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    /// Product; the result threshold is the minimum of the input thresholds.
    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Poly::zero(self.n).with_truncation(min_trunc(self.trunc, other.trunc));
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term(m1.mul(m2), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.n).with_truncation(self.trunc);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Formal partial derivative in `t_i` (1-based).
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n,
            });
        }
        let mut e = vec![0; self.n];
        e[i - 1] = 1;
        Ok(self.derivative(&Monomial(e)))
    }

    /// Applies `d^J = prod_i (d/dt_i)^{J_i}`; truncation drops by `|J|`.
    pub fn derivative(&self, j: &Monomial) -> Poly {
        let order = j.degree();
        let trunc = self.trunc.map(|t| t.saturating_sub(order));
        let mut out = Poly::zero(self.n).with_truncation(trunc);
        if order == 0 {
            out.terms = self.terms.clone();
            return out;
        }
        for (m, c) in &self.terms {
            let Some(q) = m.div(j) else { continue };
            // falling factorial prod m_i! / (m_i - J_i)!
            let mut f = c.clone();
            for (mi, ji) in m.0.iter().zip(&j.0) {
                for k in 0..*ji {
                    f = f * Rational::from_int(i64::from(mi - k));
                }
            }
            out.add_term(q, &f);
        }
        out
    }

    /// Minimum total degree of a nonzero term; `None` stands for +infinity.
    pub fn adic_order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Removes all terms of total degree `>= n` and tightens the threshold.
    pub fn truncate(&self, n: u32) -> Poly {
        self.clone().with_truncation(min_trunc(self.trunc, Some(n)))
    }

    /// Drops the threshold, keeping the stored terms as an exact polynomial.
    pub fn forget_truncation(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.clone(),
            trunc: None,
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::from_terms(
            self.n,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Linear substitution `t_i -> sum_j m[i][j] t_j`.
    pub fn linear_substitute(&self, m: &[Vec<Rational>]) -> Poly {
        let images: Vec<Poly> = (0..self.n)
            .map(|i| {
                Poly::from_terms(
                    self.n,
                    (0..self.n).map(|j| (Monomial::var(self.n, j), m[i][j].clone())),
                )
            })
            .collect();
        let mut out = Poly::zero(self.n).with_truncation(self.trunc);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(self.n, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                t = t.mul(&images[i].pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluation at a rational point (ignores truncation).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x;
                }
            }
            acc += t;
        }
        acc
    }
}

pub(crate) fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Writes `c*m` terms joined with ` + ` / ` - `, highest term first.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (body, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        let text = match (body.is_empty(), a.is_one()) {
            (true, _) => a.to_string(),
            (false, true) => body,
            (false, false) => format!("{a}*{body}"),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        write!(f, "{text}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Renders with the textual grammar, e.g. `3/2*t1^2*t2 - t3`. The threshold
/// is not part of the text.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().rev().map(|(m, c)| (fmt_monomial(m), c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if let Some(t) = self.trunc {
            write!(f, " + O(t^{t})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> Poly {
        Poly::var(n, i).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (t(2, 1), t(2, 2));
        let p = a.add(&b).mul(&a.sub(&b));
        assert_eq!(p, a.mul(&a).sub(&b.mul(&b)));
    }

    #[test]
    fn truncated_square() {
        let p = Poly::one(1).add(&t(1, 1)).truncate(3);
        let sq = p.mul(&p);
        assert_eq!(sq.truncation(), Some(3));
        assert_eq!(sq.to_string(), "t1^2 + 2*t1 + 1");
        let z = p.scale(&Rational::zero());
        assert!(z.is_zero());
        assert_eq!(z.truncation(), Some(3));
    }

    #[test]
    fn partials() {
        let (a, b) = (t(2, 1), t(2, 2));
        let f = a.mul(&a).mul(&b);
        assert_eq!(f.partial(1).unwrap(), a.mul(&b).scale(&Rational::from_int(2)));
        assert!(a.mul(&a).partial(2).unwrap().is_zero());
        assert!(f.partial(3).is_err());
        let g = Poly::from_terms(1, (0..4).map(|k| (Monomial(vec![k]), Rational::one())))
            .truncate(4);
        let dg = g.partial(1).unwrap();
        assert_eq!(dg.to_string(), "3*t1^2 + 2*t1 + 1");
        assert_eq!(dg.truncation(), Some(3));
    }

    #[test]
    fn adic_orders() {
        let (a, b) = (t(2, 1), t(2, 2));
        assert_eq!(a.mul(&b).add(&a.pow(3)).adic_order(), Some(2));
        assert_eq!(Poly::zero(2).adic_order(), None);
        assert_eq!(Poly::constant(2, 3.into()).add(&a).adic_order(), Some(0));
    }

    #[test]
    fn truncation_cases() {
        let x = t(1, 1);
        let f = Poly::one(1).add(&x).add(&x.pow(2));
        assert_eq!(f.truncate(10).forget_truncation(), f);
        assert!(f.truncate(0).is_zero());
        assert_eq!(f.truncate(2).forget_truncation(), Poly::one(1).add(&x));
    }

    #[test]
    fn mismatched_vars() {
        assert_eq!(
            t(1, 1).try_add(&t(2, 1)),
            Err(Error::VariableMismatch(1, 2))
        );
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), count_monomials(3, 2));
        assert_eq!(count_monomials(2, 3), 4);
        assert_eq!(count_monomials(1, 0), 1);
    }

    #[test]
    fn substitution() {
        // t1 -> t1 + t2, t2 -> t2 applied to t1^2
        let m = vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]];
        let f = t(2, 1).pow(2).linear_substitute(&m);
        assert_eq!(f.to_string(), "t1^2 + 2*t1*t2 + t2^2");
    }
}
