//! Poly differential operators `D_poly(K[t])`.
//!
//! A term is `f * d^{J_0} (x) ... (x) d^{J_p}`: a polynomial coefficient on
//! the left of one derivative multi-index per argument slot. The term has
//! degree `p` (so a bare polynomial sits in degree -1). Evaluation by
//! [`PolyDiffOp::apply`] is the semantic reference for every algebraic
//! operation in this module.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{fmt_monomial, min_trunc, Monomial, Poly};
use crate::rational::Rational;

/// One derivative multi-index per argument slot.
pub type Slots = Vec<Monomial>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyDiffOp {
    n: usize,
    terms: BTreeMap<Slots, Poly>,
}

impl PolyDiffOp {
    pub fn zero(n: usize) -> Self {
        PolyDiffOp {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A polynomial viewed as an operator of degree -1.
    pub fn function(f: Poly) -> Self {
        let n = f.num_vars();
        let mut op = PolyDiffOp::zero(n);
        op.add_term(vec![], &f);
        op
    }

    /// `f * d^{J_0} (x) ... (x) d^{J_p}`.
    pub fn term(f: Poly, slots: Vec<Monomial>) -> Result<Self> {
        let n = f.num_vars();
        if let Some(m) = slots.iter().find(|m| m.num_vars() != n) {
            return Err(Error::VariableMismatch(n, m.num_vars()));
        }
        let mut op = PolyDiffOp::zero(n);
        op.add_term(slots, &f);
        Ok(op)
    }

    /// The multiplication `mu(a, b) = ab`, of degree 1.
    pub fn mu(n: usize) -> Self {
        Self::term(Poly::one(n), vec![Monomial::one(n), Monomial::one(n)]).expect("arity")
    }

    /// Constant-coefficient `d_i` (1-based), a derivation.
    pub fn partial(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        Self::term(Poly::one(n), vec![Monomial::var(n, i - 1)])
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slots, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, slots: Slots, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&slots) {
            Some(g) => g.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&slots);
        } else {
            self.terms.insert(slots, sum);
        }
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|k| k.len() as i32 - 1).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn component(&self, p: i32) -> PolyDiffOp {
        PolyDiffOp {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() as i32 - 1 == p)
                .map(|(k, f)| (k.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &PolyDiffOp) -> PolyDiffOp {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.add_term(k.clone(), f);
        }
        out
    }

    pub fn sub(&self, other: &PolyDiffOp) -> PolyDiffOp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.n);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), &f.scale(c));
        }
        out
    }

    pub fn neg(&self) -> PolyDiffOp {
        self.scale(&-Rational::one())
    }

    /// Multilinear evaluation. Every term must have arity `args.len()`.
    pub fn apply(&self, args: &[Poly]) -> Result<Poly> {
        for a in args {
            if a.num_vars() != self.n {
                return Err(Error::VariableMismatch(self.n, a.num_vars()));
            }
        }
        let mut trunc = None;
        for a in args {
            trunc = min_trunc(trunc, a.truncation());
        }
        let mut out = Poly::zero(self.n);
        for (slots, f) in &self.terms {
            if slots.len() != args.len() {
                return Err(Error::Arity {
                    expected: slots.len(),
                    got: args.len(),
                });
            }
            let mut t = f.clone();
            for (j, a) in slots.iter().zip(args) {
                t = t.mul(&a.derivative(j));
                if t.is_zero() && t.truncation().is_none() {
                    break;
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `phi o_i psi`: `psi` inserted into slot `i` (0-based) of `phi`.
    pub fn insert_at(&self, i: usize, psi: &PolyDiffOp) -> PolyDiffOp {
        let n = self.n;
        let mut out = PolyDiffOp::zero(n);
        for (js, f) in &self.terms {
            if i >= js.len() {
                continue;
            }
            for (ks, g) in &psi.terms {
                for (a, bs, mult) in leibniz_splits(&js[i], ks.len()) {
                    let coeff = f.mul(&g.derivative(&a)).scale(&mult);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut slots = js[..i].to_vec();
                    slots.extend(ks.iter().zip(&bs).map(|(k, b)| k.mul(b)));
                    slots.extend(js[i + 1..].iter().cloned());
                    out.add_term(slots, &coeff);
                }
            }
        }
        out
    }

    /// `sum_i (-1)^{i q} phi o_i psi` for homogeneous `psi` of degree `q`.
    fn insertion_sum(&self, psi: &PolyDiffOp, q: i32) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.n);
        let max_arity = self.terms.keys().map(Vec::len).max().unwrap_or(0);
        for i in 0..max_arity {
            let s = Rational::sign((i as i32 * q).rem_euclid(2) == 1);
            out = out.add(&self.insert_at(i, psi).scale(&s));
        }
        out
    }

    /// Gerstenhaber bracket `[phi, psi] = phi o psi - (-1)^{pq} psi o phi`,
    /// extended bilinearly over homogeneous components.
    pub fn gerstenhaber(&self, psi: &PolyDiffOp) -> PolyDiffOp {
        assert_eq!(self.n, psi.n, "variable count mismatch");
        let mut out = PolyDiffOp::zero(self.n);
        for p in self.degrees() {
            let a = self.component(p);
            for q in psi.degrees() {
                let b = psi.component(q);
                out = out.add(&a.insertion_sum(&b, q));
                let s = Rational::sign((p * q).rem_euclid(2) == 0);
                out = out.add(&b.insertion_sum(&a, p).scale(&s));
            }
        }
        out
    }

    /// Shifted Hochschild differential `(-1)^p b`, computed from the
    /// alternating sum
    /// `a0 phi(a1..) + sum_i (-1)^{i+1} phi(.., a_i a_{i+1}, ..) + (-1)^{p+2} phi(..) a_{p+1}`.
    /// Equals `[mu, phi]`.
    pub fn hochschild_d(&self) -> PolyDiffOp {
        let n = self.n;
        let zero = Monomial::one(n);
        let mut out = PolyDiffOp::zero(n);
        for (js, f) in &self.terms {
            let p = js.len() as i32 - 1;
            let m = js.len();
            let global = Rational::sign(p.rem_euclid(2) == 1);
            let mut first = vec![zero.clone()];
            first.extend(js.iter().cloned());
            out.add_term(first, &f.scale(&global));
            for i in 0..m {
                let s = &global * &Rational::sign(i % 2 == 0);
                for (l, rest, c) in binomial_splits(&js[i]) {
                    let mut slots = js[..i].to_vec();
                    slots.push(l);
                    slots.push(rest);
                    slots.extend(js[i + 1..].iter().cloned());
                    out.add_term(slots, &f.scale(&(&s * &c)));
                }
            }
            let mut last = js.clone();
            last.push(zero.clone());
            let s = &global * &Rational::sign((m + 1) % 2 == 1);
            out.add_term(last, &f.scale(&s));
        }
        out
    }

    /// Largest single-slot derivative order.
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(Monomial::degree))
            .max()
            .unwrap_or(0)
    }

    /// Order bounds `order([a,b]) <= order(a)+order(b)` and
    /// `order(d a) <= order(a)`.
    pub fn filtration_check(&self, other: &PolyDiffOp) -> bool {
        self.gerstenhaber(other).order() <= self.order() + other.order()
            && self.hochschild_d().order() <= self.order()
    }

    /// Vanishes whenever an argument is 1: every slot differentiates.
    /// Degree -1 terms count as normalized.
    pub fn is_normalized(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.iter().all(|m| m.degree() >= 1))
    }

    /// Conjugation by the linear coordinate change `t -> m t`: coefficients
    /// are substituted and each `d_i` becomes `sum_k m_inv[k][i] d_k`.
    pub fn gl_action(&self, m: &[Vec<Rational>], m_inv: &[Vec<Rational>]) -> PolyDiffOp {
        let n = self.n;
        let transpose: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|k| m_inv[k][i].clone()).collect())
            .collect();
        let mut out = PolyDiffOp::zero(n);
        for (js, f) in &self.terms {
            // expand each slot as a polynomial in the symbols d_k
            let expanded: Vec<Poly> = js
                .iter()
                .map(|j| Poly::term(n, j.clone(), Rational::one()).linear_substitute(&transpose))
                .collect();
            let coeff = f.linear_substitute(m);
            let mut acc: Vec<(Slots, Rational)> = vec![(vec![], Rational::one())];
            for e in &expanded {
                let mut next = Vec::new();
                for (slots, c) in &acc {
                    for (mono, x) in e.terms() {
                        let mut s = slots.clone();
                        s.push(mono.clone());
                        next.push((s, c * x));
                    }
                }
                acc = next;
            }
            for (slots, c) in acc {
                out.add_term(slots, &coeff.scale(&c));
            }
        }
        out
    }

    /// Samples inputs with one slot of adic order `>= i + d` and checks the
    /// output has adic order `>= i`.
    pub fn adic_continuity_check<R: Rng>(&self, d: u32, i: u32, samples: usize, rng: &mut R) -> bool {
        let Some(p) = self.homogeneous_degree() else {
            return self.is_zero();
        };
        if self.order() > d || p < 0 {
            return self.order() <= d;
        }
        let arity = (p + 1) as usize;
        for _ in 0..samples {
            let slot = rng.gen_range(0..arity);
            let args: Vec<Poly> = (0..arity)
                .map(|k| {
                    let low = if k == slot { i + d } else { 0 };
                    random_poly_between(self.n, low, low + 3, rng)
                })
                .collect();
            let out = self.apply(&args).expect("arity checked");
            if let Some(o) = out.adic_order() {
                if o < i {
                    return false;
                }
            }
        }
        true
    }

    /// Wraps the operator for use on truncated power series.
    pub fn extend_to_series(&self, output_truncation: u32) -> SeriesOperator {
        SeriesOperator {
            op: self.clone(),
            trunc: output_truncation,
        }
    }

    pub(crate) fn sorted_terms(&self) -> Vec<(&Slots, &Poly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

/// A random polynomial whose terms have total degree in `[low, high]`.
pub(crate) fn random_poly_between<R: Rng>(n: usize, low: u32, high: u32, rng: &mut R) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..3 {
        let d = rng.gen_range(low..=high);
        let ms = crate::poly::monomials_of_degree(n, d);
        let m = ms[rng.gen_range(0..ms.len())].clone();
        p.add_term(m, &Rational::from_int(rng.gen_range(-3..=3)));
    }
    p
}

/// All ways to write `j = a + b_0 + ... + b_{k-1}` with multinomial weights
/// `j! / (a! prod b_l!)` (per variable).
fn leibniz_splits(j: &Monomial, k: usize) -> Vec<(Monomial, Vec<Monomial>, Rational)> {
    let n = j.num_vars();
    let parts = k + 1;
    // per variable, all compositions of j_v into `parts` pieces
    let mut acc: Vec<(Vec<Vec<u32>>, Rational)> = vec![(vec![vec![0; n]; parts], Rational::one())];
    for v in 0..n {
        let mut next = Vec::new();
        for comp in compositions(j.0[v], parts) {
            let mut w = Rational::factorial(j.0[v] as usize);
            for &c in &comp {
                w = w * Rational::inv_factorial(c as usize);
            }
            for (vecs, c0) in &acc {
                let mut vs = vecs.clone();
                for (piece, &c) in vs.iter_mut().zip(&comp) {
                    piece[v] = c;
                }
                next.push((vs, c0 * &w));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(mut vs, c)| {
            let a = Monomial(vs.remove(0));
            (a, vs.into_iter().map(Monomial).collect(), c)
        })
        .collect()
}

/// `d^j (x y) = sum binom(j, l) d^l x d^{j-l} y`.
fn binomial_splits(j: &Monomial) -> Vec<(Monomial, Monomial, Rational)> {
    leibniz_splits(j, 1)
        .into_iter()
        .map(|(a, mut bs, c)| (a, bs.remove(0), c))
        .collect()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// An operator acting on truncated series with a fixed output threshold.
#[derive(Clone, Debug)]
pub struct SeriesOperator {
    op: PolyDiffOp,
    trunc: u32,
}

impl SeriesOperator {
    pub fn output_truncation(&self) -> u32 {
        self.trunc
    }

    /// Evaluates coefficient-wise. Inputs must be known up to degree
    /// `N + order`, otherwise the output would not be exact below `N`.
    pub fn apply(&self, args: &[Poly]) -> Result<Poly> {
        let needed = self.trunc + self.op.order();
        for a in args {
            if let Some(t) = a.truncation() {
                if t < needed {
                    return Err(Error::InsufficientPrecision {
                        needed,
                        available: t,
                    });
                }
            }
        }
        Ok(self.op.apply(args)?.truncate(self.trunc))
    }
}

fn fmt_slots(slots: &[Monomial]) -> String {
    let inner: Vec<String> = slots
        .iter()
        .map(|m| m.0.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("D[{}]", inner.join(";"))
}

/// Textual form, e.g. `t1*D[2,0;0,1]`; degree -1 parts print as polynomials.
impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flat: Vec<(String, &Rational)> = Vec::new();
        for (slots, p) in self.sorted_terms() {
            let w = if slots.is_empty() { String::new() } else { fmt_slots(slots) };
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

impl fmt::Debug for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(n: usize, i: usize) -> Poly {
        Poly::var(n, i).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn op(f: Poly, slots: &[&[u32]]) -> PolyDiffOp {
        PolyDiffOp::term(f, slots.iter().map(|s| mono(s)).collect()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let a = op(Poly::one(2), &[&[1, 0], &[0, 1]]);
        let r = a.apply(&[t(2, 1), t(2, 2).pow(2)]).unwrap();
        assert_eq!(r, t(2, 2).scale(&2.into()));
        let b = op(t(1, 1), &[&[2]]);
        assert_eq!(b.apply(&[t(1, 1).pow(3)]).unwrap(), t(1, 1).pow(2).scale(&6.into()));
        assert!(matches!(b.apply(&[]), Err(Error::Arity { .. })));
    }

    #[test]
    fn bracket_examples() {
        let d1 = PolyDiffOp::partial(1, 1).unwrap();
        let f = PolyDiffOp::function(t(1, 1));
        assert_eq!(d1.gerstenhaber(&f), PolyDiffOp::function(Poly::one(1)));
        let d2 = PolyDiffOp::partial(2, 2).unwrap();
        let d1 = PolyDiffOp::partial(2, 1).unwrap();
        assert!(d1.gerstenhaber(&d2).is_zero());
        let mu = PolyDiffOp::mu(2);
        assert!(mu.gerstenhaber(&mu).is_zero());
    }

    #[test]
    fn hochschild_examples() {
        assert!(PolyDiffOp::function(t(2, 1)).hochschild_d().is_zero());
        let der = op(t(2, 2), &[&[1, 0]]);
        assert!(der.hochschild_d().is_zero());
        let dd = op(Poly::one(1), &[&[2]]);
        let d = dd.hochschild_d();
        assert!(!d.is_zero());
        assert_eq!(d.apply(&[t(1, 1), t(1, 1)]).unwrap(), Poly::constant(1, (-2).into()));
        assert_eq!(d, PolyDiffOp::mu(1).gerstenhaber(&dd));
    }

    #[test]
    fn orders_and_normalization() {
        let a = op(Poly::one(2), &[&[1, 0], &[0, 2]]);
        assert_eq!(a.order(), 2);
        let b = op(Poly::one(1), &[&[2]]);
        let c = op(Poly::one(1), &[&[3]]);
        assert!(b.gerstenhaber(&c).order() <= 5);
        assert_eq!(PolyDiffOp::mu(2).hochschild_d().order(), 0);
        assert!(op(Poly::one(2), &[&[1, 0], &[0, 1]]).is_normalized());
        assert!(!op(Poly::one(2), &[&[1, 0], &[0, 0]]).is_normalized());
        assert!(PolyDiffOp::function(t(2, 1)).is_normalized());
    }

    #[test]
    fn continuity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..4u32 {
            let d1 = op(Poly::one(1), &[&[1]]);
            let out = d1.apply(&[t(1, 1).pow(i + 1)]).unwrap();
            assert_eq!(out.adic_order(), Some(i));
            let d2 = op(Poly::one(1), &[&[2]]);
            assert_eq!(d2.apply(&[t(1, 1).pow(i + 2)]).unwrap().adic_order(), Some(i));
            assert!(d2.adic_continuity_check(2, i, 20, &mut rng));
        }
    }

    #[test]
    fn series_extension() {
        let geo = Poly::from_terms(1, (0..6).map(|k| (mono(&[k]), Rational::one()))).truncate(6);
        let d1 = op(Poly::one(1), &[&[1]]).extend_to_series(5);
        let r = d1.apply(&[geo.clone()]).unwrap();
        assert_eq!(r.truncation(), Some(5));
        assert_eq!(r.coeff(&mono(&[4])), Rational::from_int(5));
        let d2 = op(Poly::one(1), &[&[2]]).extend_to_series(5);
        assert_eq!(
            d2.apply(&[geo.clone()]),
            Err(Error::InsufficientPrecision { needed: 7, available: 6 })
        );
        let mu = PolyDiffOp::mu(1).extend_to_series(3);
        let r = mu.apply(&[geo.truncate(4), geo.clone()]).unwrap();
        assert_eq!(r.truncation(), Some(3));
    }

    #[test]
    fn display_form() {
        let a = op(t(2, 1), &[&[2, 0], &[0, 1]]);
        assert_eq!(a.to_string(), "t1*D[2,0;0,1]");
    }
}
