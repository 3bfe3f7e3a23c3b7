//! The L-infinity morphism identity written out on Taylor coefficients, in
//! unshifted notation:
//!
//! ```text
//! d psi_i(g_1..g_i) - sum_k ± psi_i(..d g_k..)
//!   = 1/2 sum_{k+l=i} 1/(k! l!) sum_sigma ± [psi_k(..), psi_l(..)]
//!   + sum_{k<l} ± psi_{i-1}([g_k, g_l], ..)
//! ```
//!
//! The signs are described by a [`SignTable`]. [`solve_sign_table`] finds
//! the tables consistent with the coalgebra computation
//! `ln((Q' Psi - Psi Q)(w))`; the result is frozen in [`SIGN_TABLE`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalg::{GradedModule, TaylorSeq};
use crate::dpoly::PolyDiffOp;
use crate::error::Result;
use crate::linalg::{axpy, SparseVec};
use crate::rational::Rational;
use crate::tpoly::PolyVec;

use super::{FiniteDgla, LinfMorphism};

/// A graded Lie algebra with a differential, viewed through homogeneous
/// elements.
pub trait GradedLie {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn d(&self, a: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Degree of a homogeneous element.
    fn degree(&self, a: &Self::Elem) -> i32;
    fn format(&self, a: &Self::Elem) -> String;
}

impl GradedLie for FiniteDgla {
    type Elem = SparseVec;

    fn zero(&self) -> SparseVec {
        vec![]
    }
    fn add(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        axpy(a, &Rational::one(), b)
    }
    fn scale(&self, a: &SparseVec, c: &Rational) -> SparseVec {
        axpy(&vec![], c, a)
    }
    fn is_zero(&self, a: &SparseVec) -> bool {
        a.is_empty()
    }
    fn d(&self, a: &SparseVec) -> SparseVec {
        FiniteDgla::d(self, a)
    }
    fn bracket(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        FiniteDgla::bracket(self, a, b)
    }
    fn degree(&self, a: &SparseVec) -> i32 {
        a.first().map(|(i, _)| FiniteDgla::degree(self, *i)).unwrap_or(0)
    }
    fn format(&self, a: &SparseVec) -> String {
        if a.is_empty() {
            return "0".into();
        }
        a.iter()
            .map(|(i, c)| format!("{c}*{}", self.letters()[*i].name))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Polyvector fields with zero differential and the Schouten bracket.
#[derive(Clone, Copy, Debug)]
pub struct TpolyLie {
    pub n: usize,
}

impl GradedLie for TpolyLie {
    type Elem = PolyVec;

    fn zero(&self) -> PolyVec {
        PolyVec::zero(self.n)
    }
    fn add(&self, a: &PolyVec, b: &PolyVec) -> PolyVec {
        a.add(b)
    }
    fn scale(&self, a: &PolyVec, c: &Rational) -> PolyVec {
        a.scale(c)
    }
    fn is_zero(&self, a: &PolyVec) -> bool {
        a.is_zero()
    }
    fn d(&self, _: &PolyVec) -> PolyVec {
        PolyVec::zero(self.n)
    }
    fn bracket(&self, a: &PolyVec, b: &PolyVec) -> PolyVec {
        a.schouten(b)
    }
    fn degree(&self, a: &PolyVec) -> i32 {
        a.homogeneous_degree().unwrap_or(0)
    }
    fn format(&self, a: &PolyVec) -> String {
        a.to_string()
    }
}

/// Polydifferential operators with the Hochschild differential and the
/// Gerstenhaber bracket.
#[derive(Clone, Copy, Debug)]
pub struct DpolyLie {
    pub n: usize,
}

impl GradedLie for DpolyLie {
    type Elem = PolyDiffOp;

    fn zero(&self) -> PolyDiffOp {
        PolyDiffOp::zero(self.n)
    }
    fn add(&self, a: &PolyDiffOp, b: &PolyDiffOp) -> PolyDiffOp {
        a.add(b)
    }
    fn scale(&self, a: &PolyDiffOp, c: &Rational) -> PolyDiffOp {
        a.scale(c)
    }
    fn is_zero(&self, a: &PolyDiffOp) -> bool {
        a.is_zero()
    }
    fn d(&self, a: &PolyDiffOp) -> PolyDiffOp {
        a.hochschild_d()
    }
    fn bracket(&self, a: &PolyDiffOp, b: &PolyDiffOp) -> PolyDiffOp {
        a.gerstenhaber(b)
    }
    fn degree(&self, a: &PolyDiffOp) -> i32 {
        a.homogeneous_degree().unwrap_or(0)
    }
    fn format(&self, a: &PolyDiffOp) -> String {
        a.to_string()
    }
}

/// Which degrees a Koszul sign is computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Koszul {
    /// Degrees in `g[1]`.
    Shifted,
    /// Degrees in `g`.
    Unshifted,
}

/// Sign conventions of the explicit identity.
///
/// * `a_*`: the terms `psi_i(..d g_k..)` carry `(-1)^{sum_{j<k} deg g_j}`.
/// * `b_*`: the bracket terms carry the Koszul sign of `sigma`, optionally
///   times `(-1)^{sum of shifted degrees of the first block}`.
/// * `c_*`: the terms `psi_{i-1}([g_k, g_l], ..)` carry the Koszul sign of
///   moving `g_k, g_l` to the front, optionally times `(-1)^{|g_k| - 1}`.
/// * `kappa_neg`: the whole defect is negated against the coalgebra one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignTable {
    pub a_neg: bool,
    pub a_koszul: Koszul,
    pub b_neg: bool,
    pub b_koszul: Koszul,
    pub b_decal: bool,
    pub c_neg: bool,
    pub c_koszul: Koszul,
    pub c_decal: bool,
    pub kappa_neg: bool,
}

/// The sign table consistent with the coalgebra identity.
pub const SIGN_TABLE: SignTable = SignTable {
    a_neg: false,
    a_koszul: Koszul::Shifted,
    b_neg: true,
    b_koszul: Koszul::Shifted,
    b_decal: true,
    c_neg: false,
    c_koszul: Koszul::Shifted,
    c_decal: true,
    kappa_neg: false,
};

impl SignTable {
    /// All 512 candidate tables.
    pub fn all() -> Vec<SignTable> {
        let k = |b: bool| if b { Koszul::Unshifted } else { Koszul::Shifted };
        (0u32..512)
            .map(|m| {
                let bit = |i: u32| m >> i & 1 == 1;
                SignTable {
                    a_neg: bit(0),
                    a_koszul: k(bit(1)),
                    b_neg: bit(2),
                    b_koszul: k(bit(3)),
                    b_decal: bit(4),
                    c_neg: bit(5),
                    c_koszul: k(bit(6)),
                    c_decal: bit(7),
                    kappa_neg: bit(8),
                }
            })
            .collect()
    }
}

/// One summand together with the parities of every candidate sign.
#[derive(Clone, Debug)]
struct Piece<E> {
    value: E,
    weight: Rational,
    shifted: bool,
    unshifted: bool,
    decal: bool,
}

/// The summands of the explicit defect on one tuple, before signs.
#[derive(Clone, Debug)]
pub struct IdentityTerms<E> {
    d_psi: E,
    a: Vec<Piece<E>>,
    b: Vec<Piece<E>>,
    c: Vec<Piece<E>>,
}

fn odd(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

/// Koszul parity of listing `degs` in the order `perm`.
fn koszul_parity(degs: &[i32], perm: &[usize]) -> bool {
    let mut p = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && odd(degs[perm[a]]) && odd(degs[perm[b]]) {
                p = !p;
            }
        }
    }
    p
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Collects the summands of the explicit identity on `gammas`. `psi` maps
/// a `k`-tuple to `psi_k` of it.
pub fn identity_terms<S: GradedLie, T: GradedLie>(
    src: &S,
    tgt: &T,
    psi: &dyn Fn(&[S::Elem]) -> T::Elem,
    gammas: &[S::Elem],
) -> IdentityTerms<T::Elem> {
    let i = gammas.len();
    let g: Vec<i32> = gammas.iter().map(|x| src.degree(x)).collect();
    let v: Vec<i32> = g.iter().map(|x| x - 1).collect();
    let d_psi = tgt.d(&psi(gammas));

    let mut a = Vec::new();
    for k in 0..i {
        let mut args = gammas.to_vec();
        args[k] = src.d(&gammas[k]);
        if src.is_zero(&args[k]) {
            continue;
        }
        a.push(Piece {
            value: psi(&args),
            weight: Rational::one(),
            shifted: odd(v[..k].iter().sum()),
            unshifted: odd(g[..k].iter().sum()),
            decal: false,
        });
    }

    let mut b = Vec::new();
    for k in 1..i {
        let l = i - k;
        let weight = Rational::new(1, 2) * Rational::inv_factorial(k) * Rational::inv_factorial(l);
        for sigma in permutations(i) {
            let first: Vec<S::Elem> = sigma[..k].iter().map(|&s| gammas[s].clone()).collect();
            let rest: Vec<S::Elem> = sigma[k..].iter().map(|&s| gammas[s].clone()).collect();
            let x = psi(&first);
            let y = psi(&rest);
            if tgt.is_zero(&x) || tgt.is_zero(&y) {
                continue;
            }
            b.push(Piece {
                value: tgt.bracket(&x, &y),
                weight: weight.clone(),
                shifted: koszul_parity(&v, &sigma),
                unshifted: koszul_parity(&g, &sigma),
                decal: odd(sigma[..k].iter().map(|&s| v[s]).sum()),
            });
        }
    }

    let mut c = Vec::new();
    for k in 0..i {
        for l in k + 1..i {
            let br = src.bracket(&gammas[k], &gammas[l]);
            if src.is_zero(&br) {
                continue;
            }
            let mut args = vec![br];
            let mut order = vec![k, l];
            for j in 0..i {
                if j != k && j != l {
                    args.push(gammas[j].clone());
                    order.push(j);
                }
            }
            c.push(Piece {
                value: psi(&args),
                weight: Rational::one(),
                shifted: koszul_parity(&v, &order),
                unshifted: koszul_parity(&g, &order),
                decal: odd(v[k]),
            });
        }
    }
    IdentityTerms { d_psi, a, b, c }
}

/// Assembles the explicit defect `LHS - RHS` under a sign table.
pub fn assemble<T: GradedLie>(tgt: &T, terms: &IdentityTerms<T::Elem>, t: &SignTable) -> T::Elem {
    let sum = |pieces: &[Piece<T::Elem>], neg: bool, kz: Koszul, decal: bool| -> T::Elem {
        let mut acc = tgt.zero();
        for p in pieces {
            let par = neg
                ^ match kz {
                    Koszul::Shifted => p.shifted,
                    Koszul::Unshifted => p.unshifted,
                }
                ^ (decal && p.decal);
            let c = &p.weight * &Rational::sign(par);
            acc = tgt.add(&acc, &tgt.scale(&p.value, &c));
        }
        acc
    };
    let a = sum(&terms.a, t.a_neg, t.a_koszul, false);
    let b = sum(&terms.b, t.b_neg, t.b_koszul, t.b_decal);
    let c = sum(&terms.c, t.c_neg, t.c_koszul, t.c_decal);
    let m1 = -Rational::one();
    let lhs = tgt.add(&terms.d_psi, &tgt.scale(&a, &m1));
    let out = tgt.add(&lhs, &tgt.scale(&tgt.add(&b, &c), &m1));
    if t.kappa_neg {
        tgt.scale(&out, &m1)
    } else {
        out
    }
}

/// The explicit defect of `psi` on `gammas` under the frozen sign table.
pub fn explicit_defect<S: GradedLie, T: GradedLie>(
    src: &S,
    tgt: &T,
    psi: &dyn Fn(&[S::Elem]) -> T::Elem,
    gammas: &[S::Elem],
) -> T::Elem {
    assemble(tgt, &identity_terms(src, tgt, psi, gammas), &SIGN_TABLE)
}

/// `psi_k` of a tuple for a Taylor sequence over Q, extended multilinearly:
/// the tuple is multiplied in order in `S(g[1])` and then evaluated.
pub fn taylor_psi(t: &TaylorSeq) -> impl Fn(&[SparseVec]) -> SparseVec + '_ {
    move |args: &[SparseVec]| {
        let m = t.source();
        let unit = t.target().coeffs().unit_index();
        let mut out: SparseVec = vec![];
        let mut idx = vec![0usize; args.len()];
        expand(args, 0, &mut idx, Rational::one(), &mut |ix, c| {
            if let Some((w, neg)) = m.canonicalize(ix) {
                let val = t.eval_word(&w, 1);
                let s = c * &Rational::sign(neg);
                for (y, coeff) in val.terms() {
                    out = axpy(&out, &(&s * &coeff.coeff(unit)), &vec![(y.0[0], Rational::one())]);
                }
            }
        });
        out
    }
}

fn expand(args: &[SparseVec], pos: usize, idx: &mut Vec<usize>, c: Rational, f: &mut dyn FnMut(&[usize], &Rational)) {
    if pos == args.len() {
        f(idx, &c);
        return;
    }
    for (i, x) in &args[pos] {
        idx[pos] = *i;
        expand(args, pos + 1, idx, &c * x, f);
    }
}

/// `ln((Q' Psi - Psi Q)(x_{i_1} ... x_{i_k}))` for an ordered tuple of
/// generators, as a vector over Q.
pub fn coalgebra_defect(psi: &LinfMorphism, tuple: &[usize]) -> Result<SparseVec> {
    let m = psi.source().module();
    let unit = m.coeffs().unit_index();
    let Some((w, neg)) = m.canonicalize(tuple) else {
        return Ok(vec![]);
    };
    let e = psi.defect(&w, tuple.len())?;
    let mut out = vec![];
    for (y, c) in e.terms() {
        out = axpy(&out, &(c.coeff(unit) * Rational::sign(neg)), &vec![(y.0[0], Rational::one())]);
    }
    Ok(out)
}

/// One morphism together with the DGLAs it relates.
pub struct Sample<'a> {
    pub src: &'a FiniteDgla,
    pub tgt: &'a FiniteDgla,
    pub psi: &'a LinfMorphism,
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// All sign tables under which the explicit defect equals the coalgebra
/// defect on every ordered tuple of order `<= max_order`.
pub fn solve_sign_table(samples: &[Sample], max_order: usize) -> Result<Vec<SignTable>> {
    let mut alive = SignTable::all();
    for s in samples {
        let f = taylor_psi(s.psi.taylor());
        for k in 1..=max_order {
            for tuple in tuples(s.src.dim(), k) {
                let gammas: Vec<SparseVec> = tuple.iter().map(|&i| s.src.basis_vec(i)).collect();
                let terms = identity_terms(s.src, s.tgt, &f, &gammas);
                let want = coalgebra_defect(s.psi, &tuple)?;
                alive.retain(|t| assemble(s.tgt, &terms, t) == want);
                if alive.is_empty() {
                    return Ok(alive);
                }
            }
        }
    }
    Ok(alive)
}

/// Result of comparing the explicit identity with the coalgebra identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    /// The two computations agree on every tuple.
    pub paths_agree: bool,
    /// First tuple where the explicit defect is nonzero.
    pub explicit_witness: Option<String>,
    /// First tuple where the coalgebra defect is nonzero.
    pub coalgebra_witness: Option<String>,
    /// First tuple where the two disagree.
    pub disagreement: Option<String>,
    pub tuples_checked: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.paths_agree && self.explicit_witness.is_none() && self.coalgebra_witness.is_none()
    }
}

fn tuple_name(m: &Arc<GradedModule>, t: &[usize]) -> String {
    t.iter().map(|&i| m.letters()[i].name.as_str()).collect::<Vec<_>>().join(" ")
}

/// Checks the explicit identity and the coalgebra identity on all
/// nondecreasing tuples of order `<= max_order`.
pub fn linf_identity_check(src: &FiniteDgla, tgt: &FiniteDgla, psi: &LinfMorphism, max_order: usize) -> Result<IdentityReport> {
    let f = taylor_psi(psi.taylor());
    let m = psi.source().module();
    let mut rep = IdentityReport {
        paths_agree: true,
        explicit_witness: None,
        coalgebra_witness: None,
        disagreement: None,
        tuples_checked: 0,
    };
    for k in 1..=max_order {
        for tuple in tuples(src.dim(), k) {
            if tuple.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            rep.tuples_checked += 1;
            let gammas: Vec<SparseVec> = tuple.iter().map(|&i| src.basis_vec(i)).collect();
            let ex = explicit_defect(src, tgt, &f, &gammas);
            let co = coalgebra_defect(psi, &tuple)?;
            let name = tuple_name(m, &tuple);
            if !ex.is_empty() && rep.explicit_witness.is_none() {
                rep.explicit_witness = Some(name.clone());
            }
            if !co.is_empty() && rep.coalgebra_witness.is_none() {
                rep.coalgebra_witness = Some(name.clone());
            }
            if ex != co {
                rep.paths_agree = false;
                if rep.disagreement.is_none() {
                    rep.disagreement = Some(name);
                }
            }
        }
    }
    Ok(rep)
}

/// `psi_k` given by one closure per arity; arities without a closure are
/// zero.
pub fn psi_from_fns<'a, S: GradedLie, T: GradedLie>(
    tgt: &'a T,
    fns: &'a [&'a dyn Fn(&[S::Elem]) -> T::Elem],
) -> impl Fn(&[S::Elem]) -> T::Elem + 'a {
    move |args: &[S::Elem]| match fns.get(args.len().wrapping_sub(1)) {
        Some(f) if !args.is_empty() => f(args),
        _ => tgt.zero(),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{CoalgElem, Intent, Word};
    use crate::dga::CoeffDga;
    use crate::linf::q_from_dgla;
    use crate::random::{end_v, end_v_sub, heisenberg, massey, random_basis_change, random_taylor, rng};

    fn k() -> Arc<CoeffDga> {
        Arc::new(CoeffDga::base_field())
    }

    fn random_morphism(g: &FiniteDgla, h: &FiniteDgla, seed: u64) -> LinfMorphism {
        let mut r = rng(seed);
        let a = q_from_dgla(g, k()).unwrap();
        let b = q_from_dgla(h, k()).unwrap();
        let t = random_taylor(a.module(), b.module(), Intent::Morphism, 3, 0.8, &mut r).unwrap();
        LinfMorphism::new(a, b, t).unwrap()
    }

    #[test]
    fn sign_table_is_unique_and_frozen() {
        let mut r = rng(3);
        let sub = end_v_sub();
        let full = end_v();
        let full2 = full.change_basis(&random_basis_change(&full, &mut r)).unwrap();
        let sub2 = sub.change_basis(&random_basis_change(&sub, &mut r)).unwrap();
        let q = |x: i64| Rational::from_int(x);
        let ms = massey(&[vec![q(1), q(2)], vec![q(2), q(-1)]]);
        let pairs = [(&sub, &full), (&sub2, &full2), (&full, &full), (&heisenberg(), &ms)];
        let morphs: Vec<LinfMorphism> = pairs
            .iter()
            .enumerate()
            .map(|(i, (g, h))| random_morphism(g, h, 100 + i as u64))
            .collect();
        let samples: Vec<Sample> = pairs
            .iter()
            .zip(&morphs)
            .map(|((g, h), m)| Sample { src: g, tgt: h, psi: m })
            .collect();
        let found = solve_sign_table(&samples, 3).unwrap();
        assert_eq!(found, vec![SIGN_TABLE]);
    }

    #[test]
    fn inclusion_satisfies_identity() {
        let (g, h) = (end_v_sub(), end_v());
        let a = q_from_dgla(&g, k()).unwrap();
        let b = q_from_dgla(&h, k()).unwrap();
        let f: Vec<SparseVec> = (0..3).map(|i| vec![(i, Rational::one())]).collect();
        let inc = LinfMorphism::strict(a, b, &f).unwrap();
        assert!(inc.check(3).unwrap().passed);
        let rep = linf_identity_check(&g, &h, &inc, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn corrupted_quadratic_term_fails_both_paths() {
        let (g, h) = (end_v_sub(), end_v());
        let a = q_from_dgla(&g, k()).unwrap();
        let b = q_from_dgla(&h, k()).unwrap();
        let f: Vec<SparseVec> = (0..3).map(|i| vec![(i, Rational::one())]).collect();
        let inc = LinfMorphism::strict(a.clone(), b.clone(), &f).unwrap();
        // psi_2(E00, E11) = E01 has the right degree but breaks the identity
        let w = Word(vec![0, 1]);
        let y = CoalgElem::letter(b.module(), 3, b.module().coeffs().one(), 1);
        let bad = inc.taylor().with_entry(w, y).unwrap();
        let bad = LinfMorphism::new(a, b, bad).unwrap();
        let rep = linf_identity_check(&g, &h, &bad, 3).unwrap();
        assert!(rep.paths_agree);
        assert!(rep.explicit_witness.is_some());
        assert_eq!(rep.explicit_witness, rep.coalgebra_witness);
    }
}
