//! The HKR map `U_1 : T_poly -> D_poly`, truncated Hochschild cohomology,
//! and checks of the formality conditions on candidate higher maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coalg::permutations;
use crate::dga::{CoeffDga, DgaElem};
use crate::dpoly::{PolyDiffOp, Slots};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::linf::identity::{explicit_defect, DpolyLie, GradedLie, TpolyLie};
use crate::poly::{binomial, count_monomials, monomials_of_degree, Monomial, Poly};
use crate::random::{random_gl, random_polyvec};
use crate::rational::Rational;
use crate::tpoly::{sort_odd, PolyVec};

fn perm_parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            odd ^= p[i] > p[j];
        }
    }
    odd
}

/// `U_1(f d_{i_1} /\ ... /\ d_{i_k})(c_1..c_k) = f/k! sum_s sgn(s) d_{i_s(1)} c_1 ... d_{i_s(k)} c_k`.
pub fn u1(alpha: &PolyVec) -> PolyDiffOp {
    let n = alpha.num_vars();
    let mut out = PolyDiffOp::zero(n);
    for (idx, f) in alpha.terms() {
        let k = idx.len();
        let w = Rational::inv_factorial(k);
        for perm in permutations(k) {
            let neg = perm_parity(&perm);
            let slots: Slots = perm.iter().map(|&s| Monomial::var(n, idx[s])).collect();
            out.add_term(slots, &f.scale(&(&w * &Rational::sign(neg))));
        }
    }
    out
}

/// Outcome of a sampled check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<String>,
}

/// `d U_1(alpha) = 0`, `U_1(alpha)` normalized and of order `<= 1`.
pub fn u1_chain_check(samples: &[PolyVec]) -> SampleReport {
    for (i, a) in samples.iter().enumerate() {
        let u = u1(a);
        if !u.hochschild_d().is_zero() || !u.is_normalized() || u.order() > 1 {
            return SampleReport {
                passed: false,
                samples: i + 1,
                witness: Some(a.to_string()),
            };
        }
    }
    SampleReport {
        passed: true,
        samples: samples.len(),
        witness: None,
    }
}

/// A finite slice of `D_poly`: `n` variables, operators of order `<= m` in
/// every slot, weights (coefficient degree minus total derivative order)
/// up to `max_poly_degree`, degrees in `[p_min, p_max]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n: usize,
    pub max_poly_degree: u32,
    pub max_order: u32,
    pub p_min: i32,
    pub p_max: i32,
}

type BasisKey = (Slots, Monomial);

impl TruncationSpec {
    pub fn new(n: usize, max_poly_degree: u32, max_order: u32, p_min: i32, p_max: i32) -> Result<Self> {
        if p_min < -1 || p_max < p_min {
            return Err(Error::Structural(format!("bad degree window [{p_min}, {p_max}]")));
        }
        Ok(TruncationSpec {
            n,
            max_poly_degree,
            max_order,
            p_min,
            p_max,
        })
    }

    /// Weights that can occur in degree `p`.
    fn weights(&self, p: i32) -> std::ops::RangeInclusive<i64> {
        let slots = (p + 1).max(0) as i64;
        -(self.max_order as i64) * (slots + 1)..=self.max_poly_degree as i64
    }

    fn slot_choices(&self) -> Vec<Monomial> {
        (0..=self.max_order).flat_map(|d| monomials_of_degree(self.n, d)).collect()
    }

    /// Basis of the weight-`w` part of `D^p`.
    pub fn basis(&self, p: i32, w: i64) -> Vec<BasisKey> {
        if p < -1 {
            return vec![];
        }
        let choices = self.slot_choices();
        let mut tuples: Vec<Slots> = vec![vec![]];
        for _ in 0..=p {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    choices.iter().map(move |c| {
                        let mut u = t.clone();
                        u.push(c.clone());
                        u
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for t in tuples {
            let s: i64 = t.iter().map(|m| m.degree() as i64).sum();
            let c = w + s;
            if c < 0 {
                continue;
            }
            for mono in monomials_of_degree(self.n, c as u32) {
                out.push((t.clone(), mono));
            }
        }
        out
    }

    fn op_of(&self, key: &BasisKey) -> PolyDiffOp {
        let f = Poly::term(self.n, key.1.clone(), Rational::one());
        PolyDiffOp::term(f, key.0.clone()).expect("variable count")
    }

    /// Matrix columns of `d : D^p_w -> D^{p+1}_w`, or the first basis
    /// element whose image leaves the slice.
    fn d_columns(&self, p: i32, w: i64) -> std::result::Result<Vec<SparseVec>, String> {
        let target: BTreeMap<BasisKey, usize> =
            self.basis(p + 1, w).into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut cols = Vec::new();
        for key in self.basis(p, w) {
            let img = self.op_of(&key).hochschild_d();
            let mut col: BTreeMap<usize, Rational> = BTreeMap::new();
            for (slots, f) in img.terms() {
                for (mono, c) in f.terms() {
                    match target.get(&(slots.clone(), mono.clone())) {
                        Some(&i) => *col.entry(i).or_insert_with(Rational::zero) += c,
                        None => return Err(format!("{}", self.op_of(&key))),
                    }
                }
            }
            cols.push(crate::linalg::from_map(col));
        }
        Ok(cols)
    }

    /// Every slice in the window is mapped into the next one by `d`.
    pub fn closure_check(&self) -> SampleReport {
        let mut n = 0;
        for p in self.p_min..self.p_max {
            for w in self.weights(p) {
                n += 1;
                if let Err(wit) = self.d_columns(p, w) {
                    return SampleReport {
                        passed: false,
                        samples: n,
                        witness: Some(wit),
                    };
                }
            }
        }
        SampleReport {
            passed: true,
            samples: n,
            witness: None,
        }
    }

    /// `p` has both neighbours in the window.
    pub fn is_reliable(&self, p: i32) -> bool {
        p >= self.p_min && (p == -1 || p > self.p_min) && p < self.p_max
    }

    /// Dimension of the matching `T^p` slice.
    pub fn t_slice_dim(&self, p: i32) -> usize {
        let k = (p + 1) as usize;
        if k > self.n {
            return 0;
        }
        self.weights(p)
            .filter_map(|w| {
                let c = w + k as i64;
                (c >= 0).then(|| binomial(self.n, k) * count_monomials(self.n, c as u32))
            })
            .sum()
    }
}

fn rank_of(cols: &[SparseVec]) -> usize {
    let mut e = EchelonBasis::new();
    for c in cols {
        e.insert(c);
    }
    e.rank()
}

/// Ranks of `ker d`, `im d` and `H^p` on a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRank {
    pub kernel: usize,
    pub image: usize,
    pub h: usize,
}

pub fn cohomology_rank(spec: &TruncationSpec, p: i32) -> Result<CohomologyRank> {
    if !spec.is_reliable(p) {
        return Err(Error::EdgeDegree {
            p,
            min: spec.p_min,
            max: spec.p_max,
        });
    }
    let (mut kernel, mut image) = (0, 0);
    for w in spec.weights(p) {
        let out = spec.d_columns(p, w).map_err(|e| Error::Structural(format!("slice not closed at {e}")))?;
        kernel += out.len() - rank_of(&out);
        if p > -1 {
            let inc = spec.d_columns(p - 1, w).map_err(|e| Error::Structural(format!("slice not closed at {e}")))?;
            image += rank_of(&inc);
        }
    }
    Ok(CohomologyRank {
        kernel,
        image,
        h: kernel - image,
    })
}

/// One row of the HKR comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HkrRow {
    pub p: i32,
    #[serde(rename = "dim_T_slice")]
    pub dim_t_slice: usize,
    #[serde(rename = "rank_H")]
    pub rank_h: Option<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub window_reliable: bool,
    /// `U_1` maps the `T^p` slice injectively into `H^p`.
    pub u1_injective: Option<bool>,
    /// The image of `U_1` meets every class.
    pub u1_surjective: Option<bool>,
}

fn coords(spec: &TruncationSpec, p: i32, w: i64, op: &PolyDiffOp) -> Option<SparseVec> {
    let index: BTreeMap<BasisKey, usize> = spec.basis(p, w).into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
    for (slots, f) in op.terms() {
        for (mono, c) in f.terms() {
            let i = index.get(&(slots.clone(), mono.clone()))?;
            *v.entry(*i).or_insert_with(Rational::zero) += c;
        }
    }
    Some(crate::linalg::from_map(v))
}

/// `U_1` on the weight-`w` part of `T^p`, composed into `H^p`: returns the
/// rank of the image modulo coboundaries.
fn u1_rank_mod_image(spec: &TruncationSpec, p: i32, w: i64) -> Result<(usize, usize)> {
    let k = (p + 1) as usize;
    let mut e = EchelonBasis::new();
    if p > -1 {
        for c in spec.d_columns(p - 1, w).map_err(Error::Structural)? {
            e.insert(&c);
        }
    }
    let base = e.rank();
    let c = w + k as i64;
    let mut t_dim = 0;
    if c >= 0 && k <= spec.n {
        for idx in crate::tpoly::increasing_subsets(spec.n, k) {
            for mono in monomials_of_degree(spec.n, c as u32) {
                t_dim += 1;
                let one: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                let alpha = PolyVec::term(Poly::term(spec.n, mono, Rational::one()), &one)?;
                let v = coords(spec, p, w, &u1(&alpha))
                    .ok_or_else(|| Error::Structural("U_1 image outside the slice".into()))?;
                e.insert(&v);
            }
        }
    }
    Ok((t_dim, e.rank() - base))
}

pub fn hkr_report(spec: &TruncationSpec) -> Result<Vec<HkrRow>> {
    let mut rows = Vec::new();
    for p in spec.p_min..=spec.p_max {
        let dim_t = spec.t_slice_dim(p);
        if !spec.is_reliable(p) {
            rows.push(HkrRow {
                p,
                dim_t_slice: dim_t,
                rank_h: None,
                matches: false,
                window_reliable: false,
                u1_injective: None,
                u1_surjective: None,
            });
            continue;
        }
        let r = cohomology_rank(spec, p)?;
        let (mut t_total, mut u_rank) = (0, 0);
        for w in spec.weights(p) {
            let (t, u) = u1_rank_mod_image(spec, p, w)?;
            t_total += t;
            u_rank += u;
        }
        debug_assert_eq!(t_total, dim_t);
        rows.push(HkrRow {
            p,
            dim_t_slice: dim_t,
            rank_h: Some(r.h),
            matches: r.h == dim_t,
            window_reliable: true,
            u1_injective: Some(u_rank == t_total),
            u1_surjective: Some(u_rank == r.h),
        });
    }
    Ok(rows)
}

/// Type of a candidate `U_j`.
pub type HigherMap = Box<dyn Fn(&[PolyVec]) -> PolyDiffOp + Send + Sync>;

/// A candidate formality morphism given by its Taylor coefficients
/// `U_1, U_2, ...`.
pub struct FormalityPlugin {
    pub name: String,
    pub n: usize,
    maps: Vec<HigherMap>,
}

impl FormalityPlugin {
    /// `U_1` from the HKR formula and nothing else.
    pub fn u1_only(n: usize) -> Self {
        FormalityPlugin {
            name: "u1-only".into(),
            n,
            maps: vec![Box::new(|a: &[PolyVec]| u1(&a[0]))],
        }
    }

    pub fn new(name: &str, n: usize, maps: Vec<HigherMap>) -> Self {
        FormalityPlugin {
            name: name.into(),
            n,
            maps,
        }
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    /// `U_j(a_1, ..., a_j)`; zero beyond the supplied arities.
    pub fn eval(&self, args: &[PolyVec]) -> PolyDiffOp {
        match args.len().checked_sub(1).and_then(|j| self.maps.get(j)) {
            Some(f) => f(args),
            None => PolyDiffOp::zero(self.n),
        }
    }
}

/// One formality condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: String,
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KontsevichReport {
    pub plugin: String,
    pub conditions: Vec<ConditionResult>,
}

impl KontsevichReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, condition: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.condition == condition)
    }
}

fn fmt_tuple(args: &[PolyVec]) -> String {
    args.iter().map(|a| format!("({a})")).collect::<Vec<_>>().join(", ")
}

fn run_condition(name: &str, cases: &[Vec<PolyVec>], pred: impl Fn(&[PolyVec]) -> bool) -> ConditionResult {
    for (i, c) in cases.iter().enumerate() {
        if !pred(c) {
            return ConditionResult {
                condition: name.into(),
                passed: false,
                samples: i + 1,
                witness: Some(fmt_tuple(c)),
            };
        }
    }
    ConditionResult {
        condition: name.into(),
        passed: true,
        samples: cases.len(),
        witness: None,
    }
}

/// Fixed inputs that exercise the arity-2 identity: non-commuting
/// bivectors and vector fields with polynomial coefficients.
fn identity_probes(n: usize) -> Vec<Vec<PolyVec>> {
    if n < 2 {
        return vec![];
    }
    let t1 = Poly::var(n, 1).expect("n >= 1");
    let t2 = Poly::var(n, 2).expect("n >= 2");
    let pi = PolyVec::term(t1.clone(), &[1, 2]).expect("indices");
    let pi2 = PolyVec::term(t2.mul(&t2), &[1, 2]).expect("indices");
    let x = PolyVec::term(t1.clone(), &[2]).expect("indices");
    vec![vec![pi.clone(), pi2], vec![pi.clone(), pi], vec![x, PolyVec::term(t2, &[1]).expect("indices")]]
}

/// Checks conditions (i) up to `max_arity`, (iii), (iv), (v), (vi) on
/// `samples` random inputs plus fixed probes.
pub fn kontsevich_conditions<R: Rng>(
    plugin: &FormalityPlugin,
    samples: usize,
    max_arity: usize,
    rng: &mut R,
) -> KontsevichReport {
    let n = plugin.n;
    let rand_pv = |rng: &mut R, p: i32| random_polyvec(n, p, 2, 2, rng);
    let mut conditions = Vec::new();

    // (iv) U_1 is the HKR map
    let cases: Vec<Vec<PolyVec>> = (0..samples).map(|i| vec![rand_pv(rng, (i % 3) as i32 - 1)]).collect();
    conditions.push(run_condition("(iv)", &cases, |a| plugin.eval(a) == u1(&a[0])));

    // (v) U_j vanishes on vector fields for j >= 2
    let cases: Vec<Vec<PolyVec>> = (0..samples)
        .map(|i| (0..2 + i % 2).map(|_| rand_pv(rng, 0)).collect())
        .collect();
    conditions.push(run_condition("(v)", &cases, |a| plugin.eval(a).is_zero()));

    // (vi) U_j vanishes for j >= 2 when the first argument is linear
    let cases: Vec<Vec<PolyVec>> = (0..samples)
        .map(|i| {
            let mut lin = PolyVec::zero(n);
            for a in 1..=n {
                for b in 1..=n {
                    let c = Rational::from_int(rng.gen_range(-2..=2));
                    let f = Poly::var(n, b).expect("index").scale(&c);
                    lin = lin.add(&PolyVec::term(f, &[a]).expect("index"));
                }
            }
            let mut args = vec![lin];
            for k in 0..1 + i % 2 {
                args.push(rand_pv(rng, (k % 3) as i32 - 1));
            }
            args
        })
        .collect();
    conditions.push(run_condition("(vi)", &cases, |a| plugin.eval(a).is_zero()));

    // (iii) GL_n equivariance
    let mut cases = Vec::new();
    let mut mats = Vec::new();
    for i in 0..samples {
        let j = 1 + i % plugin.arity().max(1);
        cases.push((0..j).map(|_| { let p = rng.gen_range(-1..=1); rand_pv(rng, p) }).collect::<Vec<_>>());
        mats.push(random_gl(n, rng));
    }
    let counter = std::cell::Cell::new(0usize);
    conditions.push(run_condition("(iii)", &cases, |a| {
        let (m, mi) = &mats[counter.get()];
        counter.set(counter.get() + 1);
        let moved: Vec<PolyVec> = a.iter().map(|x| x.gl_action(m, mi)).collect();
        plugin.eval(&moved) == plugin.eval(a).gl_action(m, mi)
    }));

    // (i) the L-infinity identity up to max_arity
    let (src, tgt) = (TpolyLie { n }, DpolyLie { n });
    let psi = |args: &[PolyVec]| plugin.eval(args);
    let mut cases: Vec<Vec<PolyVec>> = Vec::new();
    for i in 0..samples {
        let j = 1 + i % max_arity.max(1);
        cases.push((0..j).map(|_| { let p = rng.gen_range(-1..=1); rand_pv(rng, p) }).collect());
    }
    cases.extend(identity_probes(n).into_iter().filter(|c| c.len() <= max_arity));
    conditions.push(run_condition("(i)", &cases, |a| tgt.is_zero(&explicit_defect(&src, &tgt, &psi, a))));

    KontsevichReport {
        plugin: plugin.name.clone(),
        conditions,
    }
}

/// `A (x) L` for a coefficient algebra `A`: elements are maps from basis
/// indices of `A` to homogeneous elements of `L`.
pub struct TensorLie<'a, L: GradedLie> {
    pub a: &'a CoeffDga,
    pub l: L,
}

pub type TensorElem<E> = BTreeMap<usize, E>;

impl<L: GradedLie> TensorLie<'_, L> {
    fn push(&self, out: &mut TensorElem<L::Elem>, b: usize, x: L::Elem) {
        let e = out.remove(&b).map(|y| self.l.add(&y, &x)).unwrap_or(x);
        if !self.l.is_zero(&e) {
            out.insert(b, e);
        }
    }

    pub fn simple(&self, a: &DgaElem, x: &L::Elem) -> TensorElem<L::Elem> {
        let mut out = TensorElem::new();
        for (b, c) in a.iter() {
            self.push(&mut out, *b, self.l.scale(x, c));
        }
        out
    }

    pub fn format(&self, x: &TensorElem<L::Elem>) -> String {
        x.iter()
            .map(|(b, e)| format!("{} (x) ({})", self.a.name(*b), self.l.format(e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<L: GradedLie> GradedLie for TensorLie<'_, L> {
    type Elem = TensorElem<L::Elem>;

    fn zero(&self) -> Self::Elem {
        TensorElem::new()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (k, x) in b {
            self.push(&mut out, *k, x.clone());
        }
        out
    }
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
        let mut out = TensorElem::new();
        for (k, x) in a {
            self.push(&mut out, *k, self.l.scale(x, c));
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn d(&self, x: &Self::Elem) -> Self::Elem {
        let mut out = TensorElem::new();
        for (b, e) in x {
            for (b2, c) in self.a.d(&DgaElem::basis(*b)).iter() {
                self.push(&mut out, *b2, self.l.scale(e, c));
            }
            let s = Rational::sign(self.a.degree(*b).rem_euclid(2) == 1);
            self.push(&mut out, *b, self.l.scale(&self.l.d(e), &s));
        }
        out
    }
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = TensorElem::new();
        for (b, e) in x {
            for (c, f) in y {
                let ab = self.a.mul(&DgaElem::basis(*b), &DgaElem::basis(*c));
                if ab.is_zero() {
                    continue;
                }
                let s = Rational::sign((self.l.degree(e) * self.a.degree(*c)).rem_euclid(2) == 1);
                let br = self.l.bracket(e, f);
                for (k, r) in ab.iter() {
                    self.push(&mut out, *k, self.l.scale(&br, &(r * &s)));
                }
            }
        }
        out
    }
    fn degree(&self, x: &Self::Elem) -> i32 {
        x.iter().next().map(|(b, e)| self.a.degree(*b) + self.l.degree(e)).unwrap_or(0)
    }
    fn format(&self, x: &Self::Elem) -> String {
        TensorLie::format(self, x)
    }
}

/// Output of [`mc_bivector_workflow`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivectorReport {
    pub omega: String,
    pub omega_prime: String,
    /// Residue `d w' + 1/2 [w', w']` by basis element of `A`.
    pub residue: BTreeMap<String, String>,
    pub residue_zero: bool,
    /// Smallest `m`-adic order among nonzero residue components.
    pub residue_min_order: Option<usize>,
    /// The residue lies in `m^2 (x) D_poly`.
    pub first_order_ok: bool,
}

/// Forms `w = a (x) pi` in `A (x) T_poly`, checks it is MC, pushes it to
/// `w' = a (x) U_1(pi)` and reports the MC residue of `w'` in
/// `A (x) D_poly`.
pub fn mc_bivector_workflow(pi: &PolyVec, a_alg: &Arc<CoeffDga>, a: &DgaElem) -> Result<BivectorReport> {
    let n = pi.num_vars();
    let a_deg = a_alg
        .homogeneous_degree(a)
        .ok_or_else(|| Error::Degree("coefficient must be homogeneous".into()))?;
    let p = if pi.is_zero() { 1 - a_deg } else { pi.homogeneous_degree().ok_or_else(|| Error::Degree("pi must be homogeneous".into()))? };
    if a_deg + p != 1 {
        return Err(Error::Degree(format!(
            "a (x) pi has degree {} + {} = {}, expected 1",
            a_deg,
            p,
            a_deg + p
        )));
    }
    if !a_alg.d(a).is_zero() {
        return Err(Error::Mismatch("d_A(a) must vanish".into()));
    }
    if !a_alg.in_ideal(a) {
        return Err(Error::NotNilpotent);
    }
    if p == 1 && !pi.is_poisson()? {
        return Err(Error::NotPoisson);
    }
    let tl = TensorLie { a: a_alg, l: TpolyLie { n } };
    let omega = tl.simple(a, pi);
    let res_t = tl.add(&tl.d(&omega), &tl.scale(&tl.bracket(&omega, &omega), &Rational::new(1, 2)));
    if !res_t.is_empty() {
        return Err(Error::NotMaurerCartan(tl.format(&res_t)));
    }
    let dl = TensorLie { a: a_alg, l: DpolyLie { n } };
    let omega2 = dl.simple(a, &u1(pi));
    let res = dl.add(&dl.d(&omega2), &dl.scale(&dl.bracket(&omega2, &omega2), &Rational::new(1, 2)));
    let min_order = res.keys().map(|b| a_alg.basis_adic_order(*b)).min();
    Ok(BivectorReport {
        omega: tl.format(&omega),
        omega_prime: dl.format(&omega2),
        residue: res.iter().map(|(b, e)| (a_alg.name(*b).to_string(), e.to_string())).collect(),
        residue_zero: res.is_empty(),
        residue_min_order: min_order,
        first_order_ok: min_order.is_none_or(|m| m >= 2),
    })
}

/// The linear Poisson structure of `so(3)`:
/// `t1 d2/\d3 + t2 d3/\d1 + t3 d1/\d2`.
pub fn so3_bivector() -> PolyVec {
    let t = |i| Poly::var(3, i).expect("n = 3");
    PolyVec::term(t(1), &[2, 3])
        .and_then(|a| Ok(a.add(&PolyVec::term(t(2), &[3, 1])?)))
        .and_then(|a| Ok(a.add(&PolyVec::term(t(3), &[1, 2])?)))
        .expect("indices in range")
}

/// Sign-normalizes an index list the way `PolyVec::term` does.
pub fn normalize_indices(idx: &mut [usize]) -> Option<bool> {
    sort_odd(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{dga_tensor, truncated_poly_dga};
    use crate::random::rng;

    fn pv(f: Poly, idx: &[usize]) -> PolyVec {
        PolyVec::term(f, idx).unwrap()
    }

    fn t(n: usize, i: usize) -> Poly {
        Poly::var(n, i).unwrap()
    }

    #[test]
    fn u1_on_functions_is_identity() {
        let f = t(2, 1).mul(&t(2, 2));
        assert_eq!(u1(&PolyVec::function(f.clone())), PolyDiffOp::function(f));
    }

    #[test]
    fn u1_bivector_golden() {
        let n = 2;
        let op = u1(&pv(Poly::one(n), &[1, 2]));
        let c1 = t(n, 1).mul(&t(n, 1)).mul(&t(n, 2));
        let c2 = t(n, 2).mul(&t(n, 2)).add(&t(n, 1));
        let got = op.apply(&[c1.clone(), c2.clone()]).unwrap();
        let d = |p: &Poly, i| p.partial(i).unwrap();
        let want = d(&c1, 1).mul(&d(&c2, 2)).sub(&d(&c1, 2).mul(&d(&c2, 1))).scale(&Rational::new(1, 2));
        assert_eq!(got, want);
    }

    #[test]
    fn u1_on_monomials() {
        let op = u1(&pv(t(2, 1), &[1, 2]));
        assert_eq!(op.apply(&[t(2, 1), t(2, 2)]).unwrap(), t(2, 1).scale(&Rational::new(1, 2)));
    }

    #[test]
    fn u1_is_a_cocycle() {
        let mut r = rng(5);
        let samples: Vec<PolyVec> = (0..30).map(|i| random_polyvec(3, (i % 4) as i32 - 1, 3, 3, &mut r)).collect();
        assert!(u1_chain_check(&samples).passed);
    }

    #[test]
    fn hkr_ranks_match() {
        for n in [1, 2] {
            let spec = TruncationSpec::new(n, 2, 2, -1, 1).unwrap();
            assert!(spec.closure_check().passed);
            let rows = hkr_report(&spec).unwrap();
            for row in rows.iter().filter(|r| r.p <= 0) {
                assert!(row.window_reliable && row.matches, "{row:?}");
                assert_eq!(row.u1_injective, Some(true));
                assert_eq!(row.u1_surjective, Some(true));
            }
            assert!(!rows.last().unwrap().window_reliable);
        }
    }

    #[test]
    fn h0_kernel_is_derivations() {
        let spec = TruncationSpec::new(1, 2, 2, -1, 1).unwrap();
        let r = cohomology_rank(&spec, 0).unwrap();
        assert_eq!(r.image, 0);
        assert_eq!(r.kernel, spec.t_slice_dim(0));
    }

    #[test]
    fn edge_degree_flagged() {
        let spec = TruncationSpec::new(1, 2, 2, 0, 1).unwrap();
        assert!(matches!(cohomology_rank(&spec, 0), Err(Error::EdgeDegree { .. })));
        assert!(matches!(cohomology_rank(&spec, 1), Err(Error::EdgeDegree { .. })));
    }

    #[test]
    fn empty_slice() {
        let spec = TruncationSpec::new(1, 0, 0, -1, 1).unwrap();
        let r = cohomology_rank(&spec, 0).unwrap();
        assert_eq!(r, CohomologyRank { kernel: 0, image: 0, h: 0 });
    }

    #[test]
    fn u1_only_plugin() {
        let mut r = rng(9);
        let rep = kontsevich_conditions(&FormalityPlugin::u1_only(2), 12, 2, &mut r);
        for c in ["(iii)", "(iv)", "(v)", "(vi)"] {
            assert!(rep.get(c).unwrap().passed, "{c}: {rep:?}");
        }
        let i = rep.get("(i)").unwrap();
        assert!(!i.passed);
        assert!(i.witness.is_some());
    }

    #[test]
    fn u1_only_passes_arity_one() {
        let mut r = rng(9);
        let rep = kontsevich_conditions(&FormalityPlugin::u1_only(2), 12, 1, &mut r);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn corrupted_u1_fails_iv() {
        let bad = FormalityPlugin::new("bad", 2, vec![Box::new(|a: &[PolyVec]| u1(&a[0]).scale(&Rational::from_int(2)))]);
        let mut r = rng(1);
        let rep = kontsevich_conditions(&bad, 10, 1, &mut r);
        assert!(!rep.get("(iv)").unwrap().passed);
    }

    #[test]
    fn bivector_workflow_hbar_squared() {
        let lam = truncated_poly_dga(&[1], 2).unwrap();
        let hb = truncated_poly_dga(&[0], 2).unwrap();
        let a = Arc::new(dga_tensor(&lam, &hb).unwrap());
        let h = a.index_of("hbar").unwrap();
        let pi = pv(Poly::one(2), &[1, 2]);
        let rep = mc_bivector_workflow(&pi, &a, &DgaElem::basis(h)).unwrap();
        assert!(rep.residue_zero);
        // a = theta hbar has the wrong degree for a bivector
        let th = a.index_of("theta*hbar").unwrap();
        assert!(matches!(mc_bivector_workflow(&pi, &a, &DgaElem::basis(th)), Err(Error::Degree(_))));
        // a vector field pairs with the odd theta
        let theta = a.index_of("theta").unwrap();
        let xi = pv(t(2, 1), &[2]);
        assert!(mc_bivector_workflow(&xi, &a, &DgaElem::basis(theta)).unwrap().residue_zero);
        let zero = mc_bivector_workflow(&PolyVec::zero(2), &a, &DgaElem::basis(h)).unwrap();
        assert!(zero.residue_zero);
    }

    #[test]
    fn so3_residue_at_hbar_squared() {
        let a = Arc::new(truncated_poly_dga(&[0], 3).unwrap());
        let h = a.index_of("hbar").unwrap();
        let pi = so3_bivector();
        assert!(pi.is_poisson().unwrap());
        let rep = mc_bivector_workflow(&pi, &a, &DgaElem::basis(h)).unwrap();
        assert!(!rep.residue_zero);
        assert_eq!(rep.residue_min_order, Some(2));
        assert!(rep.first_order_ok);
        assert_eq!(rep.residue.keys().collect::<Vec<_>>(), ["hbar^2"]);
    }

    #[test]
    fn non_poisson_rejected() {
        let a = Arc::new(truncated_poly_dga(&[0], 3).unwrap());
        let h = a.index_of("hbar").unwrap();
        // {x1,x2} = x2, {x2,x3} = 1: the Jacobiator is -1
        let bad = pv(t(3, 2), &[1, 2]).add(&pv(Poly::one(3), &[2, 3]));
        assert!(!bad.is_poisson().unwrap());
        assert!(matches!(mc_bivector_workflow(&bad, &a, &DgaElem::basis(h)), Err(Error::NotPoisson)));
    }

    #[test]
    fn so3_residue_is_b_circ_b() {
        let a = Arc::new(truncated_poly_dga(&[0], 3).unwrap());
        let h2 = a.index_of("hbar^2").unwrap();
        let b = u1(&so3_bivector());
        let dl = TensorLie { a: &a, l: DpolyLie { n: 3 } };
        let w = dl.simple(&DgaElem::basis(a.index_of("hbar").unwrap()), &b);
        let res = dl.add(&dl.d(&w), &dl.scale(&dl.bracket(&w, &w), &Rational::new(1, 2)));
        let r = &res[&h2];
        let mut g = rng(3);
        for _ in 0..5 {
            let xs: Vec<Poly> = (0..3).map(|_| crate::random::random_poly(3, 2, 3, &mut g)).collect();
            let bb = |x: &Poly, y: &Poly| b.apply(&[x.clone(), y.clone()]).unwrap();
            let want = bb(&bb(&xs[0], &xs[1]), &xs[2]).sub(&bb(&xs[0], &bb(&xs[1], &xs[2])));
            assert_eq!(r.apply(&xs).unwrap(), want);
        }
    }
}
