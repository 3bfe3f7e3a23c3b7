//! Coefficient extension `A (x) g` of DGLAs and L-infinity morphisms, and
//! the degree bound that makes pushforward along an extension finite.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coalg::{CheckReport, CoalgElem, GradedModule, Intent, TaylorSeq, TaylorTable, Word};
use crate::dga::{CoeffDga, DgaElem};
use crate::error::{Error, Result};
use crate::linalg::{from_map, SparseVec};
use crate::rational::Rational;

use super::{q_from_trusted, FiniteDgla, LinfMorphism};

/// `A (x) g` over Q. The generator `a (x) x` sits at index
/// `a * dim g + x` and is named `a@x`.
pub fn tensor_dgla(a: &CoeffDga, g: &FiniteDgla) -> Result<FiniteDgla> {
    let (na, ng) = (a.dim(), g.dim());
    let idx = |b: usize, x: usize| b * ng + x;
    let mut gens = Vec::with_capacity(na * ng);
    for b in 0..na {
        for x in 0..ng {
            gens.push((format!("{}@{}", a.name(b), g.letters()[x].name), a.degree(b) + g.degree(x)));
        }
    }
    let mut d = Vec::with_capacity(na * ng);
    for b in 0..na {
        for x in 0..ng {
            let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
            for (b2, r) in a.d(&DgaElem::basis(b)).iter() {
                *m.entry(idx(*b2, x)).or_insert_with(Rational::zero) += r;
            }
            let s = Rational::sign(a.degree(b).rem_euclid(2) == 1);
            for (y, r) in &g.d_table()[x] {
                *m.entry(idx(b, *y)).or_insert_with(Rational::zero) += r * &s;
            }
            d.push(from_map(m));
        }
    }
    let mut bracket = vec![vec![vec![]; na * ng]; na * ng];
    for b in 0..na {
        for x in 0..ng {
            for c in 0..na {
                let ab = a.mul(&DgaElem::basis(b), &DgaElem::basis(c));
                if ab.is_zero() {
                    continue;
                }
                let s = Rational::sign((g.degree(x) * a.degree(c)).rem_euclid(2) == 1);
                for y in 0..ng {
                    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (z, r) in &g.bracket_table()[x][y] {
                        for (e, q) in ab.iter() {
                            *m.entry(idx(*e, *z)).or_insert_with(Rational::zero) += r * q * &s;
                        }
                    }
                    bracket[idx(b, x)][idx(c, y)] = from_map(m);
                }
            }
        }
    }
    let letters = gens
        .into_iter()
        .map(|(name, degree)| crate::coalg::Letter { name, degree })
        .collect();
    FiniteDgla::new(letters, d, bracket)
}

/// The extension of a morphism over Q to `A (x) g -> A (x) g'`:
///
/// `d^j Psi_A((a_1 x_1)...(a_j x_j)) = (-1)^{sum_k |a_k| sum_{l<k} |x_l|} (a_1...a_j) (x) d^j Psi(x_1...x_j)`
///
/// with `|x_l|` the degree in `g[1]`.
pub struct Extension {
    pub source: FiniteDgla,
    pub target: FiniteDgla,
    pub morphism: LinfMorphism,
}

pub fn extend_multilinear(psi: &LinfMorphism, g: &FiniteDgla, h: &FiniteDgla, a: &Arc<CoeffDga>) -> Result<Extension> {
    let k = Arc::new(CoeffDga::base_field());
    if **psi.source().module().coeffs() != *k {
        return Err(Error::Mismatch("only morphisms over Q can be extended".into()));
    }
    g.check().into_result()?;
    h.check().into_result()?;
    let ag = tensor_dgla(a, g)?;
    let ah = tensor_dgla(a, h)?;
    let src = q_from_trusted(&ag, k.clone())?;
    let tgt = q_from_trusted(&ah, k)?;
    let sm = src.module().clone();
    let tm = tgt.module().clone();
    let pt = psi.taylor();
    let gm = pt.source().clone();
    let (ng, nh) = (g.dim(), h.dim());
    let mut maps = Vec::new();
    for j in 1..=pt.max_arity() {
        let mut table = TaylorTable::new();
        for w in sm.words(j) {
            let parts: Vec<(usize, usize)> = w.0.iter().map(|&i| (i / ng, i % ng)).collect();
            let mut prod = a.one();
            for &(b, _) in &parts {
                prod = a.mul(&prod, &DgaElem::basis(b));
            }
            if prod.is_zero() {
                continue;
            }
            let Some((gw, neg)) = gm.canonicalize(&parts.iter().map(|p| p.1).collect::<Vec<_>>()) else {
                continue;
            };
            let val = pt.eval_word(&gw, 1);
            if val.is_zero() {
                continue;
            }
            let mut par = neg;
            let mut before = 0i32;
            for &(b, x) in &parts {
                par ^= (a.degree(b) * before).rem_euclid(2) == 1;
                before += gm.shifted(x);
            }
            let s = Rational::sign(par);
            let mut out = CoalgElem::zero(&tm, 1);
            for (y, c) in val.terms() {
                let r = c.coeff(pt.target().coeffs().unit_index());
                for (e, q) in prod.iter() {
                    out.add_term(Word(vec![e * nh + y.0[0]]), &DgaElem::basis(0).scale(&(&r * q * &s)));
                }
            }
            if !out.is_zero() {
                table.insert(w, out);
            }
        }
        maps.push(table);
    }
    let t = TaylorSeq::new(sm, tm, Intent::Morphism, maps)?;
    Ok(Extension {
        source: ag,
        target: ah,
        morphism: LinfMorphism::new(src, tgt, t)?,
    })
}

/// The same Taylor sequence with coefficients in `A`, acting on `S_A(g[1])`.
pub fn over_coefficients(psi: &TaylorSeq, a: &Arc<CoeffDga>) -> Result<TaylorSeq> {
    let s = psi.source().with_coeffs(a.clone())?;
    let t = psi.target().with_coeffs(a.clone())?;
    let unit = psi.target().coeffs().unit_index();
    let maps = psi
        .tables()
        .iter()
        .map(|tab| {
            tab.iter()
                .map(|(w, v)| {
                    let mut e = CoalgElem::zero(&t, 1);
                    for (y, c) in v.terms() {
                        e.add_term(y.clone(), &a.scalar(c.coeff(unit)));
                    }
                    (w.clone(), e)
                })
                .collect()
        })
        .collect();
    TaylorSeq::new(s, t, psi.intent(), maps)
}

/// Compares the tables of an extension with `d^j Psi` evaluated on
/// `(a_1 x_1)(a_2 x_2)...` inside `S_A(g[1])`.
pub fn check_extension_oracle(ext: &Extension, psi: &TaylorSeq, a: &Arc<CoeffDga>) -> Result<CheckReport> {
    let over = over_coefficients(psi, a)?;
    let gm = over.source().clone();
    let (ng, nh) = (gm.dim(), over.target().dim());
    let pa = ext.morphism.taylor();
    let sm = pa.source().clone();
    let mut checked = 0;
    for j in 1..=psi.max_arity() {
        for w in sm.words(j) {
            checked += 1;
            let mut x = CoalgElem::one(&gm, j);
            for &i in &w.0 {
                x = x.mul(&CoalgElem::letter(&gm, i % ng, DgaElem::basis(i / ng), j))?;
            }
            let y = over.apply(j, &x);
            let mut want: BTreeMap<usize, Rational> = BTreeMap::new();
            for (yw, c) in y.terms() {
                for (e, r) in c.iter() {
                    *want.entry(e * nh + yw.0[0]).or_insert_with(Rational::zero) += r;
                }
            }
            let got: SparseVec = pa.eval_word(&w, 1).terms().map(|(yw, c)| (yw.0[0], c.coeff(0))).collect();
            if from_map(want) != got {
                return Ok(CheckReport::fail(sm.format_word(&w), checked));
            }
        }
    }
    Ok(CheckReport::pass(checked))
}

/// Smallest `k_0` with `d^{j+k} Psi_A(omega^k c) = 0` for all `k > k_0`,
/// where `c` has total `g`-degree `p`, `g'` is concentrated in degrees
/// `>= r0` and `omega` lies in `A^1 (x) g^0`.
pub fn finiteness_bound(j: usize, p: i32, r0: i32) -> usize {
    (p + 1 - j as i32 - r0).max(0) as usize
}

/// `d^{j+k} Psi_A(omega^k c)` for `k = 0..=kmax`, with `c` of order `j`.
pub fn finiteness_profile(psi_a: &TaylorSeq, omega: &CoalgElem, c: &CoalgElem, kmax: usize) -> Result<Vec<CoalgElem>> {
    let j = c.max_order();
    let cap = j + kmax;
    let omega = omega.clone().with_cap(cap)?;
    let mut x = c.clone().with_cap(cap)?;
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        out.push(psi_a.apply(j + k, &x));
        if k < kmax {
            x = omega.mul(&x)?;
        }
    }
    Ok(out)
}

/// Lowest degree of a module, as required by [`finiteness_bound`].
pub fn lower_degree(m: &GradedModule) -> i32 {
    m.letters().iter().map(|l| l.degree).min().unwrap_or(0)
}
