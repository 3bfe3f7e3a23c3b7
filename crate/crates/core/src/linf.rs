//! L-infinity algebras and morphisms on symmetric coalgebras, Maurer-Cartan
//! elements, pushforward and twisting.
//!
//! A finite DG Lie algebra `(g, d, [,])` over Q becomes the coderivation
//! with `d^1 Q(sx) = s dx` and `d^2 Q(sx sy) = (-1)^{|sx|} s[x, y]`. With this
//! décalage the Maurer-Cartan residue is `d w + 1/2 [w, w]` and the twisted
//! differential is `d + ad(w)`.

pub mod identity;
pub mod tensor;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coalg::{CheckReport, CoalgElem, CoalgOp, GradedModule, Intent, Letter, TaylorSeq, TaylorTable, Word};
use crate::dga::{CoeffDga, DgaElem, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::{axpy, invert, SparseVec};
use crate::rational::Rational;

/// A finite-dimensional DG Lie algebra over Q with structure tables.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDgla {
    letters: Vec<Letter>,
    d: Vec<SparseVec>,
    bracket: Vec<Vec<SparseVec>>,
}

fn scale_vec(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return vec![];
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

fn add_vec(a: &SparseVec, b: &SparseVec) -> SparseVec {
    axpy(a, &Rational::one(), b)
}

impl FiniteDgla {
    pub fn new(letters: Vec<Letter>, d: Vec<SparseVec>, bracket: Vec<Vec<SparseVec>>) -> Result<Self> {
        let n = letters.len();
        if d.len() != n || bracket.len() != n || bracket.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("DGLA tables must be sized for {n} generators")));
        }
        let ok = |v: &SparseVec| v.iter().all(|(i, _)| *i < n) && v.windows(2).all(|w| w[0].0 < w[1].0);
        if !d.iter().all(ok) || !bracket.iter().flatten().all(ok) {
            return Err(Error::Structural("DGLA table entry out of range or unsorted".into()));
        }
        let clean = |v: SparseVec| v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Ok(FiniteDgla {
            letters,
            d: d.into_iter().map(clean).collect(),
            bracket: bracket.into_iter().map(|r| r.into_iter().map(clean).collect()).collect(),
        })
    }

    /// Builds from `(name, degree)` pairs and sparse index triples.
    pub fn from_entries(
        gens: &[(&str, i32)],
        d: &[(usize, usize, Rational)],
        bracket: &[(usize, usize, usize, Rational)],
    ) -> Result<Self> {
        let n = gens.len();
        let mut dm: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        for (i, k, c) in d {
            if *i >= n || *k >= n {
                return Err(Error::Structural("differential entry out of range".into()));
            }
            *dm[*i].entry(*k).or_insert_with(Rational::zero) += c;
        }
        let mut bm: Vec<Vec<BTreeMap<usize, Rational>>> = vec![vec![BTreeMap::new(); n]; n];
        for (i, j, k, c) in bracket {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Structural("bracket entry out of range".into()));
            }
            *bm[*i][*j].entry(*k).or_insert_with(Rational::zero) += c;
        }
        let to_vec = |m: BTreeMap<usize, Rational>| crate::linalg::from_map(m);
        FiniteDgla::new(
            gens.iter()
                .map(|(s, deg)| Letter {
                    name: s.to_string(),
                    degree: *deg,
                })
                .collect(),
            dm.into_iter().map(to_vec).collect(),
            bm.into_iter().map(|r| r.into_iter().map(to_vec).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.letters[i].degree
    }

    pub fn d_table(&self) -> &[SparseVec] {
        &self.d
    }

    pub fn bracket_table(&self) -> &[Vec<SparseVec>] {
        &self.bracket
    }

    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = vec![];
        for (i, c) in x {
            out = axpy(&out, c, &self.d[*i]);
        }
        out
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = vec![];
        for (i, a) in x {
            for (j, b) in y {
                out = axpy(&out, &(a * b), &self.bracket[*i][*j]);
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        vec![(i, Rational::one())]
    }

    fn vec_degree_ok(&self, v: &SparseVec, deg: i32) -> bool {
        v.iter().all(|(k, _)| self.degree(*k) == deg)
    }

    /// Checks every DGLA axiom on basis tuples.
    pub fn check(&self) -> ValidationReport {
        let n = self.dim();
        let nm = |i: usize| self.letters[i].name.clone();
        let mut v: Vec<Violation> = Vec::new();
        let mut push = |axiom: &str, w: Vec<String>| {
            v.push(Violation {
                axiom: axiom.into(),
                witness: w,
            })
        };
        for i in 0..n {
            if !self.vec_degree_ok(&self.d[i], self.degree(i) + 1) {
                push("differential-degree", vec![nm(i)]);
            }
            if !self.d(&self.d[i]).is_empty() {
                push("d-squared", vec![nm(i)]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (p, q) = (self.degree(i), self.degree(j));
                if !self.vec_degree_ok(&self.bracket[i][j], p + q) {
                    push("bracket-degree", vec![nm(i), nm(j)]);
                }
                let s = Rational::sign((p * q).rem_euclid(2) == 0);
                if self.bracket[i][j] != scale_vec(&self.bracket[j][i], &s) {
                    push("antisymmetry", vec![nm(i), nm(j)]);
                }
                let (ei, ej) = (self.basis_vec(i), self.basis_vec(j));
                let lhs = self.d(&self.bracket[i][j]);
                let rhs = add_vec(
                    &self.bracket(&self.d[i], &ej),
                    &scale_vec(&self.bracket(&ei, &self.d[j]), &Rational::sign(p.rem_euclid(2) == 1)),
                );
                if lhs != rhs {
                    push("leibniz", vec![nm(i), nm(j)]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let b = &self.bracket;
                    if b[j][k].is_empty() && b[i][j].is_empty() && b[i][k].is_empty() {
                        continue;
                    }
                    let (x, y, z) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let s = Rational::sign((self.degree(i) * self.degree(j)).rem_euclid(2) == 1);
                    let rhs = add_vec(
                        &self.bracket(&self.bracket(&x, &y), &z),
                        &scale_vec(&self.bracket(&y, &self.bracket(&x, &z)), &s),
                    );
                    if lhs != rhs {
                        push("jacobi", vec![nm(i), nm(j), nm(k)]);
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// The generators as a graded module over `c`.
    pub fn module_over(&self, c: Arc<CoeffDga>) -> Result<Arc<GradedModule>> {
        GradedModule::new("g", self.letters.clone(), c)
    }

    /// Change of basis `e'_i = sum_j p[i][j] e_j`; `p` must be invertible
    /// and preserve degrees.
    pub fn change_basis(&self, p: &[Vec<Rational>]) -> Result<FiniteDgla> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if !p[i][j].is_zero() && self.degree(i) != self.degree(j) {
                    return Err(Error::Degree("basis change mixes degrees".into()));
                }
            }
        }
        let pinv = invert(p).ok_or_else(|| Error::Structural("singular basis change".into()))?;
        // old coordinates v -> new coordinates c with v = P^T c, so c = (P^T)^{-1} v
        let to_new = |v: &SparseVec| -> SparseVec {
            let mut out = BTreeMap::new();
            for (j, x) in v {
                for (i, row) in pinv.iter().enumerate() {
                    // (P^T)^{-1} = (P^{-1})^T, entry (i, j) = pinv[j][i]
                    let _ = row;
                    let f = &pinv[*j][i];
                    if !f.is_zero() {
                        *out.entry(i).or_insert_with(Rational::zero) += x * f;
                    }
                }
            }
            crate::linalg::from_map(out)
        };
        let new_vec = |i: usize| -> SparseVec { (0..n).filter(|&j| !p[i][j].is_zero()).map(|j| (j, p[i][j].clone())).collect() };
        let d = (0..n).map(|i| to_new(&self.d(&new_vec(i)))).collect();
        let bracket = (0..n)
            .map(|i| (0..n).map(|j| to_new(&self.bracket(&new_vec(i), &new_vec(j)))).collect())
            .collect();
        FiniteDgla::new(self.letters.clone(), d, bracket)
    }

    /// Largest shifted-degree-0 subspace dimension (the home of MC elements).
    pub fn degree_one(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == 1).collect()
    }
}

/// Where an L-infinity structure came from.
#[derive(Clone, Debug)]
pub enum Provenance {
    Dgla(Arc<FiniteDgla>),
    Twisted { parent: Box<LinfAlgebra>, omega: CoalgElem },
    Custom,
}

/// A square-zero degree-1 coderivation given by Taylor coefficients.
#[derive(Clone, Debug)]
pub struct LinfAlgebra {
    q: Arc<TaylorSeq>,
    provenance: Provenance,
}

impl LinfAlgebra {
    /// Wraps a coderivation. The square-zero condition is checked separately
    /// by [`Self::check`].
    pub fn custom(q: TaylorSeq) -> Result<Self> {
        if q.intent() != Intent::Coderivation {
            return Err(Error::Mismatch("expected a coderivation".into()));
        }
        Ok(LinfAlgebra {
            q: Arc::new(q),
            provenance: Provenance::Custom,
        })
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        self.q.source()
    }

    pub fn taylor(&self) -> &Arc<TaylorSeq> {
        &self.q
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn op(&self) -> CoalgOp {
        CoalgOp::Coder(self.q.clone())
    }

    /// `Q o Q = 0` on all words up to `cap`.
    pub fn check(&self, cap: usize) -> Result<CheckReport> {
        CoalgOp::compose(&self.op(), &self.op())?.vanishes(cap)
    }

    /// Reads `d = d^1 Q` and `[,] = d^2 Q` back into a DGLA over Q. Fails if
    /// higher coefficients are present or coefficients are not scalars.
    pub fn to_dgla(&self) -> Result<FiniteDgla> {
        if self.q.max_arity() > 2 {
            return Err(Error::Degree("coderivation has Taylor coefficients of arity > 2".into()));
        }
        let m = self.module();
        let cd = m.coeffs();
        let scalar_vec = |e: &CoalgElem| -> Result<SparseVec> {
            let mut out = Vec::new();
            for (w, c) in e.terms() {
                if c.iter().any(|(k, _)| *k != cd.unit_index()) {
                    return Err(Error::Mismatch("non-scalar Taylor coefficient".into()));
                }
                out.push((w.0[0], c.coeff(cd.unit_index())));
            }
            Ok(out)
        };
        let n = m.dim();
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            d.push(scalar_vec(&self.q.eval_word(&Word(vec![i]), 2))?);
        }
        let mut bracket = vec![vec![vec![]; n]; n];
        for (i, row) in bracket.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if let Some((w, neg)) = m.canonicalize(&[i, j]) {
                    let v = scalar_vec(&self.q.eval_word(&w, 2))?;
                    let s = Rational::sign(neg ^ (m.shifted(i).rem_euclid(2) == 1));
                    *slot = scale_vec(&v, &s);
                }
            }
        }
        FiniteDgla::new(m.letters().to_vec(), d, bracket)
    }
}

fn scalar_letter(m: &Arc<GradedModule>, v: &SparseVec, cap: usize) -> CoalgElem {
    let cd = m.coeffs();
    let mut e = CoalgElem::zero(m, cap);
    for (k, c) in v {
        e.add_term(Word(vec![*k]), &cd.scalar(c.clone()));
    }
    e
}

/// The coderivation of a DGLA over the coefficient algebra `c` (which must
/// have zero differential).
pub fn q_from_dgla(g: &FiniteDgla, c: Arc<CoeffDga>) -> Result<LinfAlgebra> {
    g.check().into_result()?;
    q_from_trusted(g, c)
}

/// As [`q_from_dgla`] for a DGLA whose axioms are known to hold, e.g. a
/// tensor product of checked factors.
pub(crate) fn q_from_trusted(g: &FiniteDgla, c: Arc<CoeffDga>) -> Result<LinfAlgebra> {
    if !c.has_zero_differential() {
        return Err(Error::Mismatch("coefficient algebra must have zero differential".into()));
    }
    let m = g.module_over(c)?;
    let mut t1 = TaylorTable::new();
    for i in 0..g.dim() {
        t1.insert(Word(vec![i]), scalar_letter(&m, &g.d[i], 1));
    }
    let mut t2 = TaylorTable::new();
    for w in m.words(2) {
        let (i, j) = (w.0[0], w.0[1]);
        let s = Rational::sign(m.shifted(i).rem_euclid(2) == 1);
        t2.insert(w, scalar_letter(&m, &scale_vec(&g.bracket[i][j], &s), 1));
    }
    let q = TaylorSeq::new(m.clone(), m, Intent::Coderivation, vec![t1, t2])?;
    Ok(LinfAlgebra {
        q: Arc::new(q),
        provenance: Provenance::Dgla(Arc::new(g.clone())),
    })
}

/// An L-infinity morphism: a coalgebra morphism intertwining the
/// coderivations.
#[derive(Clone, Debug)]
pub struct LinfMorphism {
    source: LinfAlgebra,
    target: LinfAlgebra,
    psi: Arc<TaylorSeq>,
}

impl LinfMorphism {
    /// Wraps a Taylor sequence; the intertwining property is checked by
    /// [`Self::check`].
    pub fn new(source: LinfAlgebra, target: LinfAlgebra, psi: TaylorSeq) -> Result<Self> {
        if psi.intent() != Intent::Morphism {
            return Err(Error::Mismatch("expected a morphism Taylor sequence".into()));
        }
        if **psi.source() != **source.module() || **psi.target() != **target.module() {
            return Err(Error::Mismatch("morphism modules do not match the algebras".into()));
        }
        Ok(LinfMorphism {
            source,
            target,
            psi: Arc::new(psi),
        })
    }

    /// The strict morphism with `d^1 Psi (e_i) = sum_k f[i][k] e'_k`.
    pub fn strict(source: LinfAlgebra, target: LinfAlgebra, f: &[SparseVec]) -> Result<Self> {
        let tm = target.module().clone();
        let mut t1 = TaylorTable::new();
        for (i, row) in f.iter().enumerate() {
            t1.insert(Word(vec![i]), scalar_letter(&tm, row, 1));
        }
        let psi = TaylorSeq::new(source.module().clone(), tm, Intent::Morphism, vec![t1])?;
        Self::new(source, target, psi)
    }

    pub fn identity(a: &LinfAlgebra) -> Result<Self> {
        let n = a.module().dim();
        let f: Vec<SparseVec> = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        Self::strict(a.clone(), a.clone(), &f)
    }

    pub fn source(&self) -> &LinfAlgebra {
        &self.source
    }

    pub fn target(&self) -> &LinfAlgebra {
        &self.target
    }

    pub fn taylor(&self) -> &Arc<TaylorSeq> {
        &self.psi
    }

    pub fn op(&self) -> CoalgOp {
        CoalgOp::Morph(self.psi.clone())
    }

    /// `Psi o Q = Q' o Psi` on all words up to `cap`.
    pub fn check(&self, cap: usize) -> Result<CheckReport> {
        let lhs = CoalgOp::compose(&self.op(), &self.source.op())?;
        let rhs = CoalgOp::compose(&self.target.op(), &self.op())?;
        lhs.agrees_with(&rhs, cap)
    }

    /// `ln((Psi Q - Q' Psi)(w))` for a single word.
    pub fn defect(&self, w: &Word, cap: usize) -> Result<CoalgElem> {
        let lhs = CoalgOp::compose(&self.op(), &self.source.op())?.apply_word(w, cap)?;
        let rhs = CoalgOp::compose(&self.target.op(), &self.op())?.apply_word(w, cap)?;
        Ok(rhs.sub(&lhs).ln())
    }
}

/// Checks that `omega` lies in `m * g[1]^0`: order one, total degree zero,
/// coefficients in the nilpotent ideal.
pub fn validate_mc_candidate(m: &Arc<GradedModule>, omega: &CoalgElem) -> Result<()> {
    if omega.terms().any(|(w, _)| w.len() != 1) {
        return Err(Error::Degree("MC candidate must lie in S^1".into()));
    }
    if omega.degrees().iter().any(|&d| d != 0) {
        return Err(Error::Degree("MC candidate must have total degree 0 in g[1]".into()));
    }
    if omega.terms().any(|(_, c)| !m.coeffs().in_ideal(c)) {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// Powers `omega^0, omega^1, ...` up to the last nonzero one.
fn powers(omega: &CoalgElem, cap: usize) -> Result<Vec<CoalgElem>> {
    let m = omega.module().clone();
    let omega = omega.clone().with_cap(cap)?;
    let mut out = vec![CoalgElem::one(&m, cap)];
    loop {
        let next = out.last().expect("nonempty").mul(&omega)?;
        if next.is_zero() {
            return Ok(out);
        }
        out.push(next);
    }
}

/// Horizon: largest `i` with `omega^i` possibly nonzero.
fn horizon(m: &GradedModule) -> usize {
    m.coeffs().nilpotency_order().unwrap_or(1).saturating_sub(1)
}

/// `sum_{i>=1} (1/i!) d^i T (omega^i)` for a Taylor sequence `t`.
fn taylor_exp_sum(t: &TaylorSeq, omega: &CoalgElem) -> Result<CoalgElem> {
    let cap = horizon(omega.module()).max(1);
    let pw = powers(omega, cap)?;
    let mut out = CoalgElem::zero(t.target(), cap);
    for (i, p) in pw.iter().enumerate().skip(1) {
        out = out.add(&t.apply(i, p).scale(&Rational::inv_factorial(i)));
    }
    Ok(out)
}

/// The Maurer-Cartan residue `sum_{i>=1} (1/i!) d^i Q (omega^i)`.
pub fn mc_residue(a: &LinfAlgebra, omega: &CoalgElem) -> Result<CoalgElem> {
    validate_mc_candidate(a.module(), omega)?;
    taylor_exp_sum(&a.q, omega)
}

/// The same residue read off as `ln(Q(exp omega))`.
pub fn mc_residue_via_exp(a: &LinfAlgebra, omega: &CoalgElem) -> Result<CoalgElem> {
    validate_mc_candidate(a.module(), omega)?;
    let cap = horizon(a.module()).max(1) + 1;
    let e = omega.clone().with_cap(cap)?.exp()?;
    Ok(a.op().apply(&e)?.ln())
}

/// `Q(exp omega)` in full.
pub fn q_of_exp(a: &LinfAlgebra, omega: &CoalgElem) -> Result<CoalgElem> {
    validate_mc_candidate(a.module(), omega)?;
    let cap = horizon(a.module()).max(1) + 1;
    let e = omega.clone().with_cap(cap)?.exp()?;
    a.op().apply(&e)
}

/// Elements of `C (x) g` as sparse maps generator -> coefficient.
pub type CVec = BTreeMap<usize, DgaElem>;

pub fn cvec_of(omega: &CoalgElem) -> CVec {
    omega.terms().filter(|(w, _)| w.len() == 1).map(|(w, c)| (w.0[0], c.clone())).collect()
}

pub fn elem_of(m: &Arc<GradedModule>, v: &CVec, cap: usize) -> CoalgElem {
    let mut e = CoalgElem::zero(m, cap);
    for (k, c) in v {
        e.add_term(Word(vec![*k]), c);
    }
    e
}

fn cvec_add(a: &mut CVec, k: usize, c: &DgaElem) {
    let e = a.entry(k).or_default();
    *e = e.add(c);
    if e.is_zero() {
        a.remove(&k);
    }
}

/// Bracket on `C (x) g`: `[c x, c' y] = (-1)^{|x||c'|} c c' [x, y]`.
pub fn dgla_bracket_c(g: &FiniteDgla, cd: &CoeffDga, x: &CVec, y: &CVec) -> CVec {
    let mut out = CVec::new();
    for (i, c1) in x {
        for (j, c2) in y {
            for (b, r) in c2.iter() {
                let s = Rational::sign((g.degree(*i) * cd.degree(*b)).rem_euclid(2) == 1);
                let cc = cd.mul(c1, &DgaElem::basis(*b)).scale(&(r * &s));
                for (k, x) in &g.bracket[*i][*j] {
                    cvec_add(&mut out, *k, &cc.scale(x));
                }
            }
        }
    }
    out
}

/// Differential on `C (x) g` for `C` with zero differential:
/// `d(c x) = (-1)^{|c|} c dx`.
pub fn dgla_d_c(g: &FiniteDgla, cd: &CoeffDga, x: &CVec) -> CVec {
    let mut out = CVec::new();
    for (i, c) in x {
        for (b, r) in c.iter() {
            let s = Rational::sign(cd.degree(*b).rem_euclid(2) == 1);
            let cc = DgaElem::term(*b, r * &s);
            for (k, x) in &g.d[*i] {
                cvec_add(&mut out, *k, &cc.scale(x));
            }
        }
    }
    out
}

/// Closed form `d omega + 1/2 [omega, omega]` for a DGLA.
pub fn dgla_residue(g: &FiniteDgla, m: &Arc<GradedModule>, omega: &CoalgElem) -> CoalgElem {
    let cd = m.coeffs();
    let w = cvec_of(omega);
    let mut r = dgla_d_c(g, cd, &w);
    for (k, c) in dgla_bracket_c(g, cd, &w, &w) {
        cvec_add(&mut r, k, &c.scale(&Rational::new(1, 2)));
    }
    elem_of(m, &r, 1)
}

/// Pushforward `omega' = sum (1/i!) d^i Psi (omega^i)` of an MC element.
pub fn mc_push(psi: &LinfMorphism, omega: &CoalgElem) -> Result<CoalgElem> {
    let r = mc_residue(&psi.source, omega)?;
    if !r.is_zero() {
        return Err(Error::NotMaurerCartan(r.format()));
    }
    taylor_exp_sum(&psi.psi, omega)
}

/// Pushforward without the MC precondition (the formula is defined for any
/// nilpotent degree-0 element).
pub fn push_unchecked(psi: &TaylorSeq, omega: &CoalgElem) -> Result<CoalgElem> {
    validate_mc_candidate(psi.source(), omega)?;
    taylor_exp_sum(psi, omega)
}

/// `d^i T_omega (gamma) = sum_j (1/j!) d^{i+j} T (omega^j gamma)`.
fn twist_tables(t: &TaylorSeq, omega: &CoalgElem) -> Result<Vec<TaylorTable>> {
    let m = t.source().clone();
    let jmax = t.max_arity();
    let cap = jmax.max(1);
    let pw = powers(omega, horizon(&m).max(1))?;
    let mut maps = Vec::new();
    for i in 1..=jmax {
        let mut table = TaylorTable::new();
        for gamma in m.words(i) {
            let g = CoalgElem::word(&m, gamma.clone(), m.coeffs().one(), cap);
            let mut acc = CoalgElem::zero(t.target(), 1);
            for (j, p) in pw.iter().enumerate() {
                if i + j > jmax {
                    break;
                }
                let x = p.clone().with_cap(cap)?.mul(&g)?;
                acc = acc.add(&t.apply(i + j, &x).scale(&Rational::inv_factorial(j)));
            }
            if !acc.is_zero() {
                table.insert(gamma, acc.with_cap(1)?);
            }
        }
        maps.push(table);
    }
    Ok(maps)
}

/// The twist `Q_omega` of an L-infinity algebra by `omega`. Non-MC
/// elements are refused unless `allow_non_mc` is set.
pub fn twist_coder(a: &LinfAlgebra, omega: &CoalgElem, allow_non_mc: bool) -> Result<LinfAlgebra> {
    let r = mc_residue(a, omega)?;
    if !r.is_zero() && !allow_non_mc {
        return Err(Error::NotMaurerCartan(r.format()));
    }
    let maps = twist_tables(&a.q, omega)?;
    let q = TaylorSeq::new(a.module().clone(), a.module().clone(), Intent::Coderivation, maps)?;
    Ok(LinfAlgebra {
        q: Arc::new(q),
        provenance: Provenance::Twisted {
            parent: Box::new(a.clone()),
            omega: omega.clone(),
        },
    })
}

/// The twist `Psi_omega : (g, Q_omega) -> (g', Q'_{omega'})`; also returns
/// `omega'`.
pub fn twist_morphism(psi: &LinfMorphism, omega: &CoalgElem) -> Result<(LinfMorphism, CoalgElem)> {
    let omega2 = mc_push(psi, omega)?;
    let src = twist_coder(&psi.source, omega, false)?;
    let tgt = twist_coder(&psi.target, &omega2, false)?;
    let maps = twist_tables(&psi.psi, omega)?;
    let t = TaylorSeq::new(psi.psi.source().clone(), psi.psi.target().clone(), Intent::Morphism, maps)?;
    Ok((LinfMorphism::new(src, tgt, t)?, omega2))
}

/// `Q~ = exp(-omega) Q (exp(omega) .)`, evaluated lazily; valid on words of
/// order `<= cap`.
pub fn conjugation_oracle(a: &LinfAlgebra, omega: &CoalgElem, cap: usize) -> Result<CoalgOp> {
    validate_mc_candidate(a.module(), omega)?;
    let big = cap + horizon(a.module()).max(1);
    let e = omega.clone().with_cap(big)?.exp()?;
    let e_inv = omega.scale(&-Rational::one()).with_cap(big)?.exp()?;
    Ok(CoalgOp::Conjugate {
        left: e_inv,
        op: Box::new(a.op()),
        right: e,
    })
}

/// `Psi~ = exp(-omega') Psi (exp(omega) .)`.
pub fn conjugation_oracle_morphism(psi: &LinfMorphism, omega: &CoalgElem, cap: usize) -> Result<CoalgOp> {
    let omega2 = push_unchecked(&psi.psi, omega)?;
    let big = cap + horizon(psi.source.module()).max(1);
    let e = omega.clone().with_cap(big)?.exp()?;
    let e_inv = omega2.scale(&-Rational::one()).with_cap(big)?.exp()?;
    Ok(CoalgOp::Conjugate {
        left: e_inv,
        op: Box::new(psi.op()),
        right: e,
    })
}

/// Closed form of a twisted DGLA: `d^1 = d + ad(omega)`, `d^2` unchanged.
pub fn twisted_dgla_tables(g: &FiniteDgla, m: &Arc<GradedModule>, omega: &CoalgElem) -> Result<TaylorSeq> {
    let cd = m.coeffs();
    let w = cvec_of(omega);
    let mut t1 = TaylorTable::new();
    for i in 0..g.dim() {
        let x: CVec = [(i, cd.one())].into_iter().collect();
        let mut v = dgla_d_c(g, cd, &x);
        for (k, c) in dgla_bracket_c(g, cd, &w, &x) {
            cvec_add(&mut v, k, &c);
        }
        t1.insert(Word(vec![i]), elem_of(m, &v, 1));
    }
    let mut t2 = TaylorTable::new();
    for word in m.words(2) {
        let (i, j) = (word.0[0], word.0[1]);
        let s = Rational::sign(m.shifted(i).rem_euclid(2) == 1);
        t2.insert(word, scalar_letter(m, &scale_vec(&g.bracket[i][j], &s), 1));
    }
    TaylorSeq::new(m.clone(), m.clone(), Intent::Coderivation, vec![t1, t2])
}

/// Word-order cap sufficient for twist computations: nilpotency horizon
/// times the largest arity, plus the requested check order.
pub fn auto_cap(a: &LinfAlgebra, check_order: usize) -> usize {
    let n = a.module().coeffs().nilpotency_order().unwrap_or(1);
    n * a.q.max_arity().max(1) + check_order
}

/// Compares two Taylor sequences table by table.
pub fn same_taylor(a: &TaylorSeq, b: &TaylorSeq) -> bool {
    let n = a.max_arity().max(b.max_arity());
    (1..=n).all(|j| {
        let empty = TaylorTable::new();
        let ta = a.table(j).unwrap_or(&empty);
        let tb = b.table(j).unwrap_or(&empty);
        ta == tb
    })
}
