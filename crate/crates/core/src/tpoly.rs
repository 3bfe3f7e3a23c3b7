//! Poly vector fields `T_poly(K[t])` with the wedge product and the
//! Schouten-Nijenhuis bracket.
//!
//! A term `f * d_{i_1} /\ ... /\ d_{i_k}` sits in degree `p = k - 1`, so bare
//! functions have degree -1. Internally a term is a superfunction
//! `f(t) xi_I` with odd variables `xi_i` standing for `d/dt_i`; index lists
//! are stored strictly increasing and 0-based.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{fmt_monomial, Poly};
use crate::rational::Rational;

/// Sorts `idx` in place; returns the permutation sign, or `None` when an
/// index repeats.
pub(crate) fn sort_odd(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(neg)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVec {
    n: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl PolyVec {
    pub fn zero(n: usize) -> Self {
        PolyVec {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A function, i.e. an element of degree -1.
    pub fn function(f: Poly) -> Self {
        Self::term(f, &[]).expect("no indices")
    }

    /// `f * d_{i_1} /\ ... /\ d_{i_k}` with 1-based indices in any order.
    pub fn term(f: Poly, indices: &[usize]) -> Result<Self> {
        let n = f.num_vars();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, max: n });
        }
        let mut idx: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        let mut out = PolyVec::zero(n);
        if let Some(neg) = sort_odd(&mut idx) {
            out.add_term(idx, &f.scale(&Rational::sign(neg)));
        }
        Ok(out)
    }

    /// Constant-coefficient `d_{i_1} /\ ... /\ d_{i_k}`.
    pub fn wedge_of_partials(n: usize, indices: &[usize]) -> Result<Self> {
        Self::term(Poly::one(n), indices)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by 0-based increasing index lists.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub(crate) fn add_term(&mut self, idx: Vec<usize>, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&idx) {
            Some(g) => g.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, sum);
        }
    }

    /// The degrees `p` (wedge arity minus one) present.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|k| k.len() as i32 - 1).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn component(&self, p: i32) -> PolyVec {
        PolyVec {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() as i32 - 1 == p)
                .map(|(k, f)| (k.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.add_term(k.clone(), f);
        }
        out
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> PolyVec {
        let mut out = PolyVec::zero(self.n);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), &f.scale(c));
        }
        out
    }

    pub fn neg(&self) -> PolyVec {
        self.scale(&-Rational::one())
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_function(&self, g: &Poly) -> PolyVec {
        let mut out = PolyVec::zero(self.n);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), &f.mul(g));
        }
        out
    }

    /// Exterior product; graded commutative in the wedge arity.
    pub fn wedge(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = PolyVec::zero(self.n);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
                if let Some(neg) = sort_odd(&mut idx) {
                    out.add_term(idx, &f.mul(g).scale(&Rational::sign(neg)));
                }
            }
        }
        out
    }

    /// `sum_i (right xi_i-derivative of self) /\ d/dt_i (other)`.
    fn half_bracket(&self, other: &PolyVec) -> PolyVec {
        let mut out = PolyVec::zero(self.n);
        for (i_idx, f) in &self.terms {
            for (pos, &i) in i_idx.iter().enumerate() {
                // move xi_i to the right end, then strip it
                let neg = (i_idx.len() - 1 - pos) % 2 == 1;
                let rest: Vec<usize> = i_idx.iter().copied().filter(|&k| k != i).collect();
                for (j_idx, g) in &other.terms {
                    let dg = g.partial(i + 1).expect("index in range");
                    if dg.is_zero() {
                        continue;
                    }
                    let mut idx: Vec<usize> = rest.iter().chain(j_idx).copied().collect();
                    if let Some(neg2) = sort_odd(&mut idx) {
                        out.add_term(idx, &f.mul(&dg).scale(&Rational::sign(neg ^ neg2)));
                    }
                }
            }
        }
        out
    }

    /// The Schouten-Nijenhuis bracket, bilinear over homogeneous parts.
    ///
    /// Agrees with the commutator on vector fields, with `[xi, f] = xi(f)`,
    /// and with the wedge recursion
    /// `[a1 /\ a2, a3] = a1 /\ [a2, a3] + (-1)^{(p2+1) p3} [a1, a3] /\ a2`.
    pub fn schouten(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = PolyVec::zero(self.n);
        for p in self.degrees() {
            let a = self.component(p);
            for q in other.degrees() {
                let b = other.component(q);
                out = out.add(&a.half_bracket(&b));
                let s = Rational::sign((p * q).rem_euclid(2) == 0);
                out = out.add(&b.half_bracket(&a).scale(&s));
            }
        }
        out
    }

    /// True iff the bivector satisfies `[pi, pi] = 0`.
    pub fn is_poisson(&self) -> Result<bool> {
        if !self.is_zero() && self.homogeneous_degree() != Some(1) {
            return Err(Error::Degree(format!(
                "is_poisson expects a bivector (degree 1), got degrees {:?}",
                self.degrees()
            )));
        }
        Ok(self.schouten(self).is_zero())
    }

    /// Applies a vector field (degree 0 part) to a function.
    pub fn act_on(&self, g: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (k, f) in &self.terms {
            if let [i] = k.as_slice() {
                out = out.add(&f.mul(&g.partial(i + 1).expect("index in range")));
            }
        }
        out
    }

    /// Action of the linear coordinate change `t_i -> sum_j m[i][j] t_j`
    /// (`m_inv` its inverse), by conjugation: `d_i` goes to
    /// `sum_k m_inv[k][i] d_k`.
    pub fn gl_action(&self, m: &[Vec<Rational>], m_inv: &[Vec<Rational>]) -> PolyVec {
        let n = self.n;
        let images: Vec<PolyVec> = (0..n)
            .map(|i| {
                let mut v = PolyVec::zero(n);
                for (k, row) in m_inv.iter().enumerate() {
                    v.add_term(vec![k], &Poly::constant(n, row[i].clone()));
                }
                v
            })
            .collect();
        let mut out = PolyVec::zero(n);
        for (idx, f) in &self.terms {
            let mut t = PolyVec::function(f.linear_substitute(m));
            for &i in idx {
                t = t.wedge(&images[i]);
            }
            out = out.add(&t);
        }
        out
    }

    pub(crate) fn sorted_terms(&self) -> Vec<(&Vec<usize>, &Poly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }
}

pub(crate) fn fmt_wedge(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| format!("d{}", i + 1))
        .collect::<Vec<_>>()
        .join("/\\")
}

/// Textual form, e.g. `t1*d1/\d2 - 1/2*d2/\d3`: terms by decreasing arity,
/// each coefficient expanded into monomials.
impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flat: Vec<(String, &Rational)> = Vec::new();
        for (idx, p) in self.sorted_terms() {
            let w = fmt_wedge(idx);
            for (m, c) in p.terms().rev() {
                let mono = fmt_monomial(m);
                let body = match (mono.is_empty(), w.is_empty()) {
                    (true, _) => w.clone(),
                    (false, true) => mono,
                    (false, false) => format!("{mono}*{w}"),
                };
                flat.push((body, c));
            }
        }
        crate::poly::fmt_terms(f, flat.into_iter())
    }
}

impl fmt::Debug for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monomial basis of the slice of `T^p` with coefficients of exact degree `d`.
pub fn slice_basis(n: usize, p: i32, d: u32) -> Vec<PolyVec> {
    let k = (p + 1) as usize;
    let mut out = Vec::new();
    for idx in increasing_subsets(n, k) {
        for m in crate::poly::monomials_of_degree(n, d) {
            let mut v = PolyVec::zero(n);
            v.add_term(idx.clone(), &Poly::term(n, m, Rational::one()));
            out.push(v);
        }
    }
    out
}

/// All strictly increasing 0-based index lists of length `k` below `n`.
pub fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> Poly {
        Poly::var(n, i).unwrap()
    }

    fn dd(n: usize, idx: &[usize]) -> PolyVec {
        PolyVec::wedge_of_partials(n, idx).unwrap()
    }

    #[test]
    fn wedge_antisymmetry_and_repeats() {
        assert_eq!(dd(2, &[1]).wedge(&dd(2, &[2])), dd(2, &[2]).wedge(&dd(2, &[1])).neg());
        let a = PolyVec::term(t(2, 1), &[1]).unwrap();
        let b = PolyVec::term(t(2, 2), &[1]).unwrap();
        assert!(a.wedge(&b).is_zero());
        let f = PolyVec::function(t(2, 1));
        assert_eq!(f.wedge(&dd(2, &[1, 2])), PolyVec::term(t(2, 1), &[1, 2]).unwrap());
    }

    #[test]
    fn bracket_examples() {
        let d1 = dd(1, &[1]);
        let f = PolyVec::function(t(1, 1).pow(2));
        assert_eq!(d1.schouten(&f), PolyVec::function(t(1, 1).scale(&2.into())));
        let x = PolyVec::term(t(1, 1), &[1]).unwrap();
        assert_eq!(d1.schouten(&x), d1);

        let pi = dd(2, &[1, 2]);
        let g = PolyVec::function(t(2, 1).mul(&t(2, 2)));
        let expect = PolyVec::term(t(2, 1), &[1])
            .unwrap()
            .sub(&PolyVec::term(t(2, 2), &[2]).unwrap());
        assert_eq!(pi.schouten(&g), expect);
    }

    #[test]
    fn poisson_examples() {
        assert!(dd(2, &[1, 2]).is_poisson().unwrap());
        assert!(PolyVec::term(t(2, 1), &[1, 2]).unwrap().is_poisson().unwrap());
        let so3 = PolyVec::term(t(3, 3), &[1, 2])
            .unwrap()
            .add(&PolyVec::term(t(3, 1), &[2, 3]).unwrap())
            .add(&PolyVec::term(t(3, 2), &[3, 1]).unwrap());
        assert!(so3.is_poisson().unwrap());
        assert!(dd(2, &[1]).is_poisson().is_err());
    }

    #[test]
    fn non_poisson_detected() {
        let pi = PolyVec::term(t(3, 3), &[1, 2]).unwrap().add(&PolyVec::term(t(3, 1), &[3, 1]).unwrap());
        let sq = pi.schouten(&pi);
        assert_eq!(pi.is_poisson().unwrap(), sq.is_zero());
        assert!(!sq.is_zero());
    }

    #[test]
    fn display_form() {
        let v = PolyVec::term(t(3, 1), &[1, 2])
            .unwrap()
            .sub(&dd(3, &[2, 3]).scale(&Rational::new(1, 2)));
        assert_eq!(v.to_string(), "t1*d1/\\d2 - 1/2*d2/\\d3");
        assert_eq!(dd(2, &[2, 1]).to_string(), "-d1/\\d2");
    }
}
