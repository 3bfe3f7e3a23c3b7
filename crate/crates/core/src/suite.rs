//! Randomized check suites. Every suite takes an explicit seed and returns
//! one [`CriterionResult`] whose serialized form depends only on the seed.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coalg::{tau_is_coalgebra_map, CoalgElem, CoalgOp, GradedModule, Intent, Word};
use crate::dga::{dga_tensor, truncated_poly_dga, CoeffDga, DgaElem};
use crate::dpoly::PolyDiffOp;
use crate::error::{Error, Result};
use crate::hkr::{hkr_report, kontsevich_conditions, u1, u1_chain_check, FormalityPlugin, TruncationSpec};
use crate::linalg::{invert, kernel, SparseVec};
use crate::linf::identity::{linf_identity_check, solve_sign_table, DpolyLie, GradedLie, Sample, TpolyLie, SIGN_TABLE};
use crate::linf::tensor::{
    check_extension_oracle, extend_multilinear, finiteness_bound, finiteness_profile, tensor_dgla,
};
use crate::linf::{
    conjugation_oracle, conjugation_oracle_morphism, dgla_residue, mc_push, mc_residue, mc_residue_via_exp,
    push_unchecked, q_from_dgla, q_of_exp, same_taylor, twist_coder, twist_morphism, twisted_dgla_tables,
    FiniteDgla, LinfAlgebra, LinfMorphism,
};
use crate::poly::Poly;
use crate::random::{
    end_v, end_v_sub, random_basis_change, random_dgla, random_dgla_with_mc, random_letter_combo,
    random_mc, random_polydiff, random_polyvec, random_taylor, rng, sl2, small_rational, Rng64,
};
use crate::rational::Rational;
use crate::tpoly::PolyVec;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub cases: usize,
    pub witness: Option<String>,
    /// Wall time; not serialized so that reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Tally {
    cases: usize,
    witness: Option<String>,
    start: Instant,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            witness: None,
            start: Instant::now(),
        }
    }

    fn record(&mut self, failure: Option<String>) {
        self.cases += 1;
        if self.witness.is_none() {
            self.witness = failure;
        }
    }

    fn record_result(&mut self, r: Result<Option<String>>) {
        self.record(r.unwrap_or_else(|e| Some(format!("error: {e}"))));
    }

    fn finish(self, id: &str, title: &str) -> CriterionResult {
        CriterionResult {
            id: id.into(),
            title: title.into(),
            passed: self.witness.is_none(),
            cases: self.cases,
            witness: self.witness,
            elapsed: self.start.elapsed(),
        }
    }
}

fn sign(k: i32) -> Rational {
    Rational::sign(k.rem_euclid(2) == 1)
}

/// Antisymmetry, Jacobi, Leibniz and `d^2 = 0` on one homogeneous triple
/// with degrees `p`.
pub fn lie_axioms<L: GradedLie>(l: &L, x: &[L::Elem], p: &[i32]) -> Option<String> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    let (pa, pb) = (p[0], p[1]);
    let f = |e: &L::Elem| format!("({})", l.format(e));
    let anti = l.add(&l.bracket(a, b), &l.scale(&l.bracket(b, a), &sign(pa * pb)));
    if !l.is_zero(&anti) {
        return Some(format!("antisymmetry at {}, {}", f(a), f(b)));
    }
    let jac = l.add(
        &l.add(&l.bracket(a, &l.bracket(b, c)), &l.scale(&l.bracket(&l.bracket(a, b), c), &-Rational::one())),
        &l.scale(&l.bracket(b, &l.bracket(a, c)), &-sign(pa * pb)),
    );
    if !l.is_zero(&jac) {
        return Some(format!("jacobi at {}, {}, {}", f(a), f(b), f(c)));
    }
    let leib = l.add(
        &l.add(&l.d(&l.bracket(a, b)), &l.scale(&l.bracket(&l.d(a), b), &-Rational::one())),
        &l.scale(&l.bracket(a, &l.d(b)), &-sign(pa)),
    );
    if !l.is_zero(&leib) {
        return Some(format!("leibniz at {}, {}", f(a), f(b)));
    }
    if !l.is_zero(&l.d(&l.d(a))) {
        return Some(format!("d^2 at {}", f(a)));
    }
    None
}

/// Graded antisymmetry and Jacobi of the Schouten bracket.
pub fn schouten_axioms(seed: u64, instances: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let mut live = 0;
    for _ in 0..instances {
        let n = r.gen_range(1..=3);
        let top = (n as i32 - 1).min(2);
        let ps: Vec<i32> = (0..3).map(|_| r.gen_range(-1..=top)).collect();
        let xs: Vec<PolyVec> = ps.iter().map(|&p| random_polyvec(n, p, 3, 3, &mut r)).collect();
        let l = TpolyLie { n };
        if !l.is_zero(&l.bracket(&xs[0], &l.bracket(&xs[1], &xs[2]))) {
            live += 1;
        }
        t.record(lie_axioms(&l, &xs, &ps));
    }
    if 3 * live < instances {
        t.record(Some(format!("only {live} of {instances} instances have a nonzero double bracket")));
    }
    t.finish("A1", "Schouten bracket: antisymmetry and Jacobi")
}

/// `d^2 = 0`, Gerstenhaber Jacobi, `d = [mu, -]` and the order bounds.
pub fn hochschild_axioms(seed: u64, instances: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    for _ in 0..instances {
        let n = r.gen_range(1..=2);
        let ps: Vec<i32> = (0..3).map(|_| r.gen_range(-1..=2)).collect();
        let xs: Vec<PolyDiffOp> = ps.iter().map(|&p| random_polydiff(n, p, 2, 2, 2, &mut r)).collect();
        let mut fail = lie_axioms(&DpolyLie { n }, &xs, &ps);
        if fail.is_none() && xs[0].hochschild_d() != PolyDiffOp::mu(n).gerstenhaber(&xs[0]) {
            fail = Some(format!("d != [mu, -] at ({})", xs[0]));
        }
        if fail.is_none() && !xs[0].filtration_check(&xs[1]) {
            fail = Some(format!("order bound at ({}), ({})", xs[0], xs[1]));
        }
        t.record(fail);
    }
    t.finish("A2", "Hochschild differential and Gerstenhaber bracket")
}

/// Modules with up to four generators, one per parity pattern: `even`
/// generators of degree 1 (even after the shift), the rest of degree 0.
fn small_modules(c: &Arc<CoeffDga>) -> Vec<Arc<GradedModule>> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for even in 0..=k {
            let names: Vec<String> = (1..=k).map(|i| format!("g{i}")).collect();
            let gens: Vec<(&str, i32)> = names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.as_str(), if i < even { 1 } else { 0 }))
                .collect();
            out.push(GradedModule::from_degrees(&format!("m{k}_{even}"), &gens, c.clone()).expect("module"));
        }
    }
    out
}

/// Kernel dimension of `x -> Delta(x) - x (x) 1 - 1 (x) x` on words of
/// order `<= cap`, and whether the kernel lies in `S^1`.
fn primitive_kernel(m: &Arc<GradedModule>, cap: usize) -> (usize, bool) {
    let unit = DgaElem::basis(m.coeffs().unit_index());
    let words = m.words_up_to(cap);
    let mut index: BTreeMap<(Word, Word, usize), usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for w in &words {
        let x = CoalgElem::word(m, w.clone(), unit.clone(), cap);
        let one = CoalgElem::one(m, cap);
        let defect = x.comult().add(&x.scale(&-Rational::one()).tensor(&one)).add(&one.tensor(&x.scale(&-Rational::one())));
        let mut col: BTreeMap<usize, Rational> = BTreeMap::new();
        for ((a, b), c) in defect.terms() {
            for (k, r) in c.iter() {
                let n = index.len();
                let i = *index.entry((a.clone(), b.clone(), *k)).or_insert(n);
                col.insert(i, r.clone());
            }
        }
        cols.push(crate::linalg::from_map(col));
    }
    let ker = kernel(&cols);
    let in_s1 = ker.iter().all(|v| v.iter().all(|(i, _)| words[*i].len() == 1));
    (ker.len(), in_s1)
}

/// `{0, +-1, +-1/2} * hbar^k` for `k = 1, 2`.
fn lattice(c: &CoeffDga) -> Vec<DgaElem> {
    let mut out = vec![DgaElem::zero()];
    for name in ["hbar", "hbar^2"] {
        let k = c.index_of(name).expect("hbar powers");
        for v in [Rational::one(), -Rational::one(), Rational::new(1, 2), Rational::new(-1, 2)] {
            out.push(DgaElem::term(k, v));
        }
    }
    out
}

fn odometer(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut k| {
        (0..len)
            .map(|_| {
                let d = k % base;
                k /= base;
                d
            })
            .collect()
    })
}

/// Symmetrization, primitives and the exp/ln bijection, exhaustively.
pub fn coalgebra_checks() -> CriterionResult {
    let mut t = Tally::new();
    let c = Arc::new(truncated_poly_dga(&[0], 3).expect("Q[hbar]/(hbar^3)"));
    let cap = 4;
    let lat = lattice(&c);
    let h2 = c.index_of("hbar^2").expect("hbar^2");
    for m in small_modules(&c) {
        for w in m.words_up_to(cap) {
            let x = CoalgElem::word(&m, w.clone(), c.one(), cap);
            t.record((!tau_is_coalgebra_map(&x)).then(|| format!("tau on {} in {}", m.format_word(&w), m.name())));
            let prim = x.is_primitive();
            t.record((prim != (w.len() == 1)).then(|| format!("primitive test on {}", m.format_word(&w))));
        }
        let (dim, in_s1) = primitive_kernel(&m, cap);
        t.record((dim != m.dim() || !in_s1).then(|| format!("primitives of {} have dimension {dim}", m.name())));

        let even: Vec<usize> = (0..m.dim()).filter(|&i| m.shifted(i) == 0).collect();
        let order2 = m.words(2);
        for digits in odometer(even.len(), lat.len()) {
            let mut omega = CoalgElem::zero(&m, cap);
            for (&i, &d) in even.iter().zip(&digits) {
                omega.add_term(Word(vec![i]), &lat[d]);
            }
            let res = (|| -> Result<Option<String>> {
                let e = omega.exp()?;
                if !e.is_grouplike() || !e.is_invertible() {
                    return Ok(Some(format!("exp({}) is not an invertible group-like", omega.format())));
                }
                if e.ln() != omega || e.ln().exp()? != e {
                    return Ok(Some(format!("ln/exp mismatch at {}", omega.format())));
                }
                if let Some(w) = order2.first() {
                    let mut bad = e.clone();
                    bad.add_term(w.clone(), &DgaElem::basis(h2));
                    if bad.is_grouplike() {
                        return Ok(Some(format!("perturbed exp({}) reported group-like", omega.format())));
                    }
                }
                Ok(None)
            })();
            t.record_result(res);
        }
        if let Some(&i) = even.first() {
            let unit = CoalgElem::letter(&m, i, c.one(), cap);
            t.record((!matches!(unit.exp(), Err(Error::NotNilpotent))).then(|| "exp accepted a unit coefficient".into()));
        }
    }
    t.finish("A3", "Coalgebra: tau, primitives, exp/ln")
}

fn hbar_trunc(n: usize) -> Arc<CoeffDga> {
    Arc::new(truncated_poly_dga(&[0], n).expect("truncated polynomial algebra"))
}

/// The identity map `g -> g.change_basis(p)` as a strict morphism.
fn basis_change_morphism(g: &FiniteDgla, c: &Arc<CoeffDga>, r: &mut Rng64) -> Result<(FiniteDgla, LinfMorphism)> {
    let p = random_basis_change(g, r);
    let h = g.change_basis(&p)?;
    let inv = invert(&p).ok_or_else(|| Error::Structural("singular basis change".into()))?;
    let f: Vec<SparseVec> = inv
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
        .collect();
    let m = LinfMorphism::strict(q_from_dgla(g, c.clone())?, q_from_dgla(&h, c.clone())?, &f)?;
    Ok((h, m))
}

fn mc_instance(c: &Arc<CoeffDga>, r: &mut Rng64) -> Result<(FiniteDgla, LinfAlgebra, CoalgElem)> {
    for _ in 0..10 {
        let g = random_dgla_with_mc(r);
        if let Some(om) = random_mc(&g, c, r)? {
            let a = q_from_dgla(&g, c.clone())?;
            return Ok((g, a, om));
        }
    }
    Err(Error::Structural("no unobstructed instance found".into()))
}

/// Residue criterion, `Psi(exp w) = exp w'` and MC pushforward.
pub fn mc_machinery(seed: u64, instances: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let c = hbar_trunc(4);
    for _ in 0..instances {
        let res = (|| -> Result<Option<String>> {
            let (g, a, omega) = mc_instance(&c, &mut r)?;
            let m = a.module().clone();
            let perturbed = omega.add(&random_letter_combo(&m, 0, 0.5, true, &mut r));
            for (x, must_vanish) in [(&omega, true), (&perturbed, false)] {
                let res = mc_residue(&a, x)?;
                if must_vanish && !res.is_zero() {
                    return Ok(Some(format!("generated element {} is not MC", x.format())));
                }
                if res.is_zero() != q_of_exp(&a, x)?.is_zero() {
                    return Ok(Some(format!("residue criterion fails at {}", x.format())));
                }
                if res != mc_residue_via_exp(&a, x)? || res != dgla_residue(&g, &m, x) {
                    return Ok(Some(format!("residue paths disagree at {}", x.format())));
                }
            }
            let h = random_dgla(&mut r);
            let hm = h.module_over(c.clone())?;
            let tay = random_taylor(&m, &hm, Intent::Morphism, 3, 0.5, &mut r)?;
            for x in [&omega, &perturbed] {
                let e = x.clone().with_cap(3)?.exp()?;
                let lhs = CoalgOp::morph(tay.clone())?.apply(&e)?;
                let rhs = push_unchecked(&tay, x)?.with_cap(3)?.exp()?;
                if lhs != rhs {
                    return Ok(Some(format!("Psi(exp w) != exp(w') at {}", x.format())));
                }
            }
            let (_, strict) = basis_change_morphism(&g, &c, &mut r)?;
            for psi in [strict, LinfMorphism::identity(&a)?] {
                let pushed = mc_push(&psi, &omega)?;
                if !mc_residue(psi.target(), &pushed)?.is_zero() {
                    return Ok(Some(format!("pushforward of {} is not MC", omega.format())));
                }
            }
            Ok(None)
        })();
        t.record_result(res);
    }
    t.finish("A4", "Maurer-Cartan residue, exp and pushforward")
}

/// `Q_w^2 = 0`, the twisted morphism axiom, the conjugation oracle and
/// the closed form `d + ad w`.
pub fn twisting(seed: u64, instances: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let c = hbar_trunc(4);
    let cap = 3;
    for _ in 0..instances {
        let res = (|| -> Result<Option<String>> {
            let (g, a, omega) = mc_instance(&c, &mut r)?;
            let m = a.module().clone();
            let w = omega.format();
            let tw = twist_coder(&a, &omega, false)?;
            if let Some(x) = tw.check(cap)?.witness {
                return Ok(Some(format!("Q_w^2 != 0 at {x} for w = {w}")));
            }
            if let Some(x) = tw.op().agrees_with(&conjugation_oracle(&a, &omega, cap)?, cap)?.witness {
                return Ok(Some(format!("conjugation oracle differs at {x} for w = {w}")));
            }
            if !same_taylor(tw.taylor(), &twisted_dgla_tables(&g, &m, &omega)?) {
                return Ok(Some(format!("closed form differs for w = {w}")));
            }
            let (_, strict) = basis_change_morphism(&g, &c, &mut r)?;
            for psi in [strict, LinfMorphism::identity(&a)?] {
                let (tm, _) = twist_morphism(&psi, &omega)?;
                if let Some(x) = tm.check(cap)?.witness {
                    return Ok(Some(format!("twisted morphism fails at {x} for w = {w}")));
                }
                let conj = conjugation_oracle_morphism(&psi, &omega, cap)?;
                if let Some(x) = tm.op().agrees_with(&conj, cap)?.witness {
                    return Ok(Some(format!("morphism oracle differs at {x} for w = {w}")));
                }
            }
            Ok(None)
        })();
        t.record_result(res);
    }
    t.finish("A5", "Twisting by Maurer-Cartan elements")
}

fn random_morphism(g: &FiniteDgla, h: &FiniteDgla, r: &mut Rng64) -> Result<LinfMorphism> {
    let k = Arc::new(CoeffDga::base_field());
    let a = q_from_dgla(g, k.clone())?;
    let b = q_from_dgla(h, k)?;
    let tay = random_taylor(a.module(), b.module(), Intent::Morphism, 3, 0.8, r)?;
    LinfMorphism::new(a, b, tay)
}

/// Rendering of the sign table kept under regression.
pub fn sign_table_text() -> String {
    serde_json::to_string_pretty(&SIGN_TABLE).expect("plain struct") + "\n"
}

/// The explicit identity agrees with the coalgebra identity; the sign
/// table is the unique one that does.
pub fn sign_table(seed: u64, samples: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let res = (|| -> Result<Option<String>> {
        let (g, h) = (end_v_sub(), end_v());
        let psi = random_morphism(&g, &h, &mut r)?;
        let rep = linf_identity_check(&g, &h, &psi, 3)?;
        if let Some(x) = rep.disagreement {
            return Ok(Some(format!("spanning set: paths differ at {x}")));
        }
        let found = solve_sign_table(&[Sample { src: &g, tgt: &h, psi: &psi }], 3)?;
        if found != vec![SIGN_TABLE] {
            return Ok(Some(format!("{} sign tables survive the spanning set", found.len())));
        }
        Ok(None)
    })();
    t.record_result(res);
    for _ in 0..samples {
        let res = (|| -> Result<Option<String>> {
            let g = random_dgla(&mut r);
            let h = random_dgla(&mut r);
            let psi = random_morphism(&g, &h, &mut r)?;
            let rep = linf_identity_check(&g, &h, &psi, 2)?;
            Ok(rep.disagreement.map(|x| format!("paths differ at {x}")))
        })();
        t.record_result(res);
    }
    t.finish("A6", "Sign table of the explicit identity")
}

/// `d U_1 = 0`, the bivector golden case and `rank H^p = dim T^p`.
pub fn hkr_checks(seed: u64, samples: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let xs: Vec<PolyVec> = (0..samples)
        .map(|i| random_polyvec(1 + i % 3, (i % 4) as i32 - 1, 3, 3, &mut r))
        .collect();
    let rep = u1_chain_check(&xs);
    t.cases += samples - 1;
    t.record(rep.witness.map(|w| format!("d U_1 != 0 at {w}")));

    let n = 2;
    let op = u1(&PolyVec::wedge_of_partials(n, &[1, 2]).expect("indices"));
    let c1 = crate::random::random_poly(n, 3, 4, &mut r);
    let c2 = crate::random::random_poly(n, 3, 4, &mut r);
    let d = |p: &Poly, i| p.partial(i).expect("index");
    let want = d(&c1, 1).mul(&d(&c2, 2)).sub(&d(&c1, 2).mul(&d(&c2, 1))).scale(&Rational::new(1, 2));
    let got = op.apply(&[c1.clone(), c2.clone()]);
    t.record((got.as_ref() != Ok(&want)).then(|| format!("U_1(d1/\\d2) at ({c1}), ({c2})")));

    for n in [1, 2] {
        let res = (|| -> Result<Option<String>> {
            let spec = TruncationSpec::new(n, 2, 2, -1, 1)?;
            if let Some(w) = spec.closure_check().witness {
                return Ok(Some(format!("slice not closed under d at {w}")));
            }
            for row in hkr_report(&spec)?.iter().filter(|row| row.p <= 0) {
                if !row.window_reliable || !row.matches {
                    return Ok(Some(format!("n = {n}, p = {}: rank H = {:?}, dim T = {}", row.p, row.rank_h, row.dim_t_slice)));
                }
            }
            Ok(None)
        })();
        t.record_result(res);
    }
    t.finish("A7", "HKR map and truncated Hochschild cohomology")
}

/// Coefficient algebra `Lambda(theta1, theta2) (x) Q[hbar]/(hbar^3)`.
pub fn exterior_hbar() -> Arc<CoeffDga> {
    let lam = truncated_poly_dga(&[1, 1], 2).expect("exterior algebra");
    let hb = truncated_poly_dga(&[0], 3).expect("Q[hbar]/(hbar^3)");
    Arc::new(dga_tensor(&lam, &hb).expect("tensor product"))
}

/// Order-3 words checked per extension in addition to all words of
/// order `<= 2`.
const SAMPLED_ORDER3: usize = 40;

/// Words `c` tried per order in the finiteness check.
const WORDS_PER_ORDER: usize = 6;

/// The finiteness bound and the morphism axiom for extensions.
pub fn finiteness(seed: u64, instances: usize) -> CriterionResult {
    let mut r = rng(seed);
    let mut t = Tally::new();
    let a = exterior_hbar();
    let k = Arc::new(CoeffDga::base_field());
    let mut nonvacuous = 0usize;
    for i in 0..instances {
        let res = (|| -> Result<Option<String>> {
            let g = if i % 2 == 0 { end_v_sub() } else { random_dgla_with_mc(&mut r) };
            let (h, strict) = basis_change_morphism(&g, &k, &mut r)?;
            let ext = extend_multilinear(&strict, &g, &h, &a)?;
            if let Some(x) = check_extension_oracle(&ext, strict.taylor(), &a)?.witness {
                return Ok(Some(format!("extension differs from the oracle at {x}")));
            }
            if let Some(x) = ext.morphism.check(2)?.witness {
                return Ok(Some(format!("extension is not a morphism at {x}")));
            }
            let sm = ext.morphism.source().module().clone();
            let words3 = sm.words(3);
            for w in words3.choose_multiple(&mut r, SAMPLED_ORDER3) {
                if !ext.morphism.defect(w, 3)?.is_zero() {
                    return Ok(Some(format!("extension is not a morphism at {}", sm.format_word(w))));
                }
            }

            // targets reaching down to degree -1 give nonzero terms with k > 0
            let h2 = if i % 3 == 2 {
                random_dgla(&mut r)
            } else {
                end_v().change_basis(&random_basis_change(&end_v(), &mut r))?
            };
            let psi = random_morphism(&g, &h2, &mut r)?;
            let ext2 = extend_multilinear(&psi, &g, &h2, &a)?;
            let tay = ext2.morphism.taylor();
            let tg = tensor_dgla(&a, &g)?;
            let ng = g.dim();
            let r0 = h2.letters().iter().map(|l| l.degree).min().unwrap_or(0);
            let mut omega = CoalgElem::zero(&sm, 1);
            for idx in 0..tg.dim() {
                let (b, x) = (idx / ng, idx % ng);
                if a.degree(b) == 1 && g.degree(x) == 0 && r.gen_bool(0.6) {
                    omega.add_term(Word(vec![idx]), &DgaElem::term(0, small_rational(&mut r)));
                }
            }
            for j in (1..=2).flat_map(|j| std::iter::repeat(j).take(WORDS_PER_ORDER)) {
                let words = sm.words(j);
                let w = words.choose(&mut r).expect("nonempty");
                let p: i32 = w.0.iter().map(|&idx| g.degree(idx % ng)).sum();
                let k0 = finiteness_bound(j, p, r0);
                let c = CoalgElem::word(&sm, w.clone(), DgaElem::basis(0), j);
                let prof = finiteness_profile(tay, &omega, &c, tay.max_arity().saturating_sub(j))?;
                for (kk, v) in prof.iter().enumerate() {
                    if kk > k0 && !v.is_zero() {
                        return Ok(Some(format!(
                            "k = {kk} > k0 = {k0} nonzero at c = {}, w = {}",
                            sm.format_word(w),
                            omega.format()
                        )));
                    }
                    if kk > 0 && !v.is_zero() {
                        nonvacuous += 1;
                    }
                }
            }
            Ok(None)
        })();
        t.record_result(res);
    }
    if nonvacuous == 0 {
        t.record(Some("no nonzero term with k > 0 was produced".into()));
    }
    t.finish("A8", "Finiteness bound for coefficient extensions")
}

/// `sl2 (x) Lambda(theta1, theta2)` with `w = hbar (theta1 e + theta2 f)`,
/// whose residue `hbar^2 theta1 theta2 h` is not central.
pub fn non_mc_control() -> Result<(bool, Option<String>)> {
    let lam = truncated_poly_dga(&[1, 1], 3)?;
    let g = tensor_dgla(&lam, &sl2())?;
    let c = hbar_trunc(3);
    let h = c.index_of("hbar").expect("hbar");
    let a = q_from_dgla(&g, c)?;
    let m = a.module().clone();
    let mut om = CoalgElem::zero(&m, 1);
    for name in ["theta1@e", "theta2@f"] {
        let i = m.index_of(name).ok_or_else(|| Error::Structural(format!("missing {name}")))?;
        om.add_term(Word(vec![i]), &DgaElem::basis(h));
    }
    let forced = twist_coder(&a, &om, true)?;
    let rep = forced.check(2)?;
    Ok((rep.passed, rep.witness))
}

/// The `U_1`-only plugin fails the arity-2 identity.
pub fn u1_only_control(seed: u64) -> (bool, Option<String>) {
    let mut r = rng(seed);
    let rep = kontsevich_conditions(&FormalityPlugin::u1_only(2), 8, 2, &mut r);
    let i = rep.get("(i)").expect("condition (i)");
    (i.passed, i.witness.clone())
}

/// Both controls fail, with a witness, identically on a rerun.
pub fn negative_controls(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let first = non_mc_control();
    let second = non_mc_control();
    t.record(match (&first, &second) {
        (Ok((false, Some(_))), Ok(_)) if first == second => None,
        _ => Some(format!("forced twist by a non-MC element: {first:?}")),
    });
    let first = u1_only_control(seed);
    t.record(match &first {
        (false, Some(_)) if first == u1_only_control(seed) => None,
        _ => Some(format!("U_1-only plugin: {first:?}")),
    });
    t.finish("A9", "Negative controls fail with witnesses")
}

/// A1-A9 with the sizes used for acceptance.
pub fn selftest(seed: u64) -> Vec<CriterionResult> {
    vec![
        schouten_axioms(seed, 300),
        hochschild_axioms(seed + 1, 200),
        coalgebra_checks(),
        mc_machinery(seed + 3, 100),
        twisting(seed + 4, 50),
        sign_table(seed + 5, 100),
        hkr_checks(seed + 6, 100),
        finiteness(seed + 7, 50),
        negative_controls(seed + 8),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for res in [
            schouten_axioms(1, 10),
            hochschild_axioms(1, 10),
            mc_machinery(1, 3),
            twisting(1, 2),
            sign_table(1, 3),
            finiteness(1, 2),
        ] {
            assert!(res.passed, "{res:?}");
        }
    }

    #[test]
    fn controls_fail() {
        assert!(negative_controls(3).passed);
    }
}
