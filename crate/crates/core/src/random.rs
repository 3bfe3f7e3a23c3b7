//! Seeded generators for test instances: small DGLAs, basis changes,
//! Taylor sequences, Maurer-Cartan elements, polynomials, polyvector fields
//! and polydifferential operators.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalg::{CoalgElem, GradedModule, Intent, TaylorSeq, TaylorTable, Word};
use crate::dga::{CoeffDga, DgaElem};
use crate::dpoly::PolyDiffOp;
use crate::error::{Error, Result};
use crate::linalg::{axpy, kernel, solve, SparseVec};
use crate::linf::FiniteDgla;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::rational::Rational;
use crate::tpoly::PolyVec;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with small numerator and denominator.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-3..=3);
    }
    Rational::new(n, rng.gen_range(1..=2))
}

/// `small_rational` or zero with probability `1 - density`.
pub fn sparse_rational<R: Rng>(rng: &mut R, density: f64) -> Rational {
    if rng.gen_bool(density) {
        small_rational(rng)
    } else {
        Rational::zero()
    }
}

fn r(x: i64) -> Rational {
    Rational::from_int(x)
}

/// `End(V)` for `V = Q v0 + Q v1` with `|v_i| = i`, the graded commutator
/// and `d = [E10, -]`. Generators: `E00`, `E11`, `E10`, `E01`.
pub fn end_v() -> FiniteDgla {
    // E_ij v_j = v_i, degree i - j
    let gens = [(0usize, 0usize), (1, 1), (1, 0), (0, 1)];
    let names = ["E00", "E11", "E10", "E01"];
    let deg = |k: usize| gens[k].0 as i32 - gens[k].1 as i32;
    let idx = |i: usize, j: usize| gens.iter().position(|&g| g == (i, j)).expect("basis");
    let prod = |a: usize, b: usize| -> Option<usize> {
        let (i, j) = gens[a];
        let (k, l) = gens[b];
        (j == k).then(|| idx(i, l))
    };
    let mut bracket = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
            if let Some(c) = prod(a, b) {
                *m.entry(c).or_insert_with(Rational::zero) += r(1);
            }
            if let Some(c) = prod(b, a) {
                let s = Rational::sign((deg(a) * deg(b)).rem_euclid(2) == 1);
                *m.entry(c).or_insert_with(Rational::zero) -= &s;
            }
            for (c, x) in m {
                if !x.is_zero() {
                    bracket.push((a, b, c, x));
                }
            }
        }
    }
    let e10 = idx(1, 0);
    let mut d = Vec::new();
    for a in 0..4 {
        for (x, y, c, v) in &bracket {
            if *x == e10 && *y == a {
                d.push((a, *c, v.clone()));
            }
        }
    }
    let gen_list: Vec<(&str, i32)> = (0..4).map(|k| (names[k], deg(k))).collect();
    FiniteDgla::from_entries(&gen_list, &d, &bracket).expect("End(V)")
}

/// The sub-DGLA of [`end_v`] spanned by `E00`, `E11`, `E10`.
pub fn end_v_sub() -> FiniteDgla {
    let full = end_v();
    let keep = [0usize, 1, 2];
    let restrict = |v: &SparseVec| -> SparseVec { v.iter().filter(|(i, _)| keep.contains(i)).cloned().collect() };
    let letters = keep.iter().map(|&i| full.letters()[i].clone()).collect();
    let d = keep.iter().map(|&i| restrict(&full.d_table()[i])).collect();
    let bracket = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| restrict(&full.bracket_table()[i][j])).collect())
        .collect();
    FiniteDgla::new(letters, d, bracket).expect("sub-DGLA")
}

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` in degree 0.
pub fn sl2() -> FiniteDgla {
    let (e, f, h) = (0, 1, 2);
    FiniteDgla::from_entries(
        &[("e", 0), ("f", 0), ("h", 0)],
        &[],
        &[
            (e, f, h, r(1)),
            (f, e, h, r(-1)),
            (h, e, e, r(2)),
            (e, h, e, r(-2)),
            (h, f, f, r(-2)),
            (f, h, f, r(2)),
        ],
    )
    .expect("sl2")
}

/// `x_1..x_m, w` in degree 1, `z` in degree 2, `[x_a, x_b] = s[a][b] z`
/// (symmetric `s`), `dw = z`.
pub fn massey(s: &[Vec<Rational>]) -> FiniteDgla {
    let m = s.len();
    let names: Vec<String> = (1..=m).map(|a| format!("x{a}")).collect();
    let mut gens: Vec<(&str, i32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    gens.push(("w", 1));
    gens.push(("z", 2));
    let (w, z) = (m, m + 1);
    let mut br = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if !s[a][b].is_zero() {
                br.push((a, b, z, s[a][b].clone()));
            }
        }
    }
    FiniteDgla::from_entries(&gens, &[(w, z, r(1))], &br).expect("Massey family")
}

/// `x, y` in degree 1, `z` in degree 2, `[x, y] = [y, x] = z`.
pub fn heisenberg() -> FiniteDgla {
    FiniteDgla::from_entries(&[("x", 1), ("y", 1), ("z", 2)], &[], &[(0, 1, 2, r(1)), (1, 0, 2, r(1))])
        .expect("Heisenberg")
}

pub fn abelian(degrees: &[(&str, i32)]) -> FiniteDgla {
    FiniteDgla::from_entries(degrees, &[], &[]).expect("abelian")
}

/// A random invertible degree-preserving integer matrix.
pub fn random_basis_change<R: Rng>(g: &FiniteDgla, rng: &mut R) -> Vec<Vec<Rational>> {
    let n = g.dim();
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if g.degree(i) != g.degree(j) {
                            Rational::zero()
                        } else if i == j {
                            r(*[1, -1, 2].choose(rng).expect("nonempty"))
                        } else {
                            r(rng.gen_range(-1..=1))
                        }
                    })
                    .collect()
            })
            .collect();
        if crate::linalg::invert(&m).is_some() {
            return m;
        }
    }
}

/// One of the small DGLA families, in a random basis.
pub fn random_dgla<R: Rng>(rng: &mut R) -> FiniteDgla {
    let g = match rng.gen_range(0..5) {
        0 => {
            let a = small_rational(rng);
            let b = sparse_rational(rng, 0.5);
            let c = small_rational(rng);
            massey(&[vec![a, b.clone()], vec![b, c]])
        }
        1 => heisenberg(),
        2 => sl2(),
        3 => end_v(),
        _ => end_v_sub(),
    };
    let p = random_basis_change(&g, rng);
    g.change_basis(&p).expect("invertible")
}

/// A DGLA whose MC equation is unobstructed order by order (Massey family
/// or `End(V)`), in a random basis.
pub fn random_dgla_with_mc<R: Rng>(rng: &mut R) -> FiniteDgla {
    let g = match rng.gen_range(0..3) {
        0 => {
            let a = small_rational(rng);
            let b = sparse_rational(rng, 0.5);
            let c = small_rational(rng);
            massey(&[vec![a, b.clone()], vec![b, c]])
        }
        1 => end_v(),
        _ => end_v_sub(),
    };
    let p = random_basis_change(&g, rng);
    g.change_basis(&p).expect("invertible")
}

/// A random element of `S^1` of the given total degree with coefficients
/// drawn from the basis of the coefficient algebra; `ideal_only` restricts
/// to the nilpotent ideal.
pub fn random_letter_combo<R: Rng>(
    m: &Arc<GradedModule>,
    degree: i32,
    density: f64,
    ideal_only: bool,
    rng: &mut R,
) -> CoalgElem {
    let cd = m.coeffs();
    let mut e = CoalgElem::zero(m, 1);
    for y in 0..m.dim() {
        for b in 0..cd.dim() {
            if ideal_only && !cd.ideal().contains(&b) {
                continue;
            }
            if m.shifted(y) + cd.degree(b) != degree {
                continue;
            }
            let c = sparse_rational(rng, density);
            if !c.is_zero() {
                e.add_term(Word(vec![y]), &DgaElem::term(b, c));
            }
        }
    }
    e
}

/// A random Taylor sequence `S(src[1]) -> tgt[1]` of arity `<= max_arity`
/// with scalar or coefficient-valued entries of the right degree.
pub fn random_taylor<R: Rng>(
    src: &Arc<GradedModule>,
    tgt: &Arc<GradedModule>,
    intent: Intent,
    max_arity: usize,
    density: f64,
    rng: &mut R,
) -> Result<TaylorSeq> {
    let mut maps = Vec::new();
    for j in 1..=max_arity {
        let mut t = TaylorTable::new();
        for w in src.words(j) {
            let deg = src.word_degree(&w) + intent.degree();
            let v = random_letter_combo(tgt, deg, density, false, rng);
            if !v.is_zero() {
                t.insert(w, v);
            }
        }
        maps.push(t);
    }
    TaylorSeq::new(src.clone(), tgt.clone(), intent, maps)
}

/// Sum of `hbar^k`-multiples for a truncated polynomial algebra in one even
/// variable; `k` ranges over `1..N`.
fn hbar_powers(c: &CoeffDga) -> Result<Vec<usize>> {
    let n = c.nilpotency_order().unwrap_or(1);
    let mut out = Vec::new();
    for k in 1..n {
        let name = if k == 1 { "hbar".to_string() } else { format!("hbar^{k}") };
        out.push(
            c.index_of(&name)
                .ok_or_else(|| Error::Structural("coefficients must be Q[hbar]/(hbar^N)".into()))?,
        );
    }
    Ok(out)
}

/// A random MC element `sum_k hbar^k w_k` solved order by order over
/// `Q[hbar]/(hbar^N)`. Returns `None` if every attempt hits an obstruction.
pub fn random_mc<R: Rng>(g: &FiniteDgla, c: &Arc<CoeffDga>, rng: &mut R) -> Result<Option<CoalgElem>> {
    let m = g.module_over(c.clone())?;
    let powers = hbar_powers(c)?;
    let g1 = g.degree_one();
    let cols: Vec<SparseVec> = g1.iter().map(|&i| g.d_table()[i].clone()).collect();
    let ker = kernel(&cols);
    let embed = |coef: &SparseVec| -> SparseVec {
        let mut v = vec![];
        for (k, x) in coef {
            v = axpy(&v, x, &vec![(g1[*k], Rational::one())]);
        }
        v
    };
    'attempt: for _ in 0..20 {
        let mut parts: Vec<SparseVec> = Vec::new();
        for k in 1..=powers.len() {
            let mut target: SparseVec = vec![];
            for a in 1..k {
                let b = k - a;
                let br = g.bracket(&parts[a - 1], &parts[b - 1]);
                target = axpy(&target, &Rational::new(-1, 2), &br);
            }
            let Some(x) = solve(&cols, &target) else {
                continue 'attempt;
            };
            let mut wk = embed(&x);
            for kv in &ker {
                let c = sparse_rational(rng, 0.7);
                wk = axpy(&wk, &c, &embed(kv));
            }
            parts.push(wk);
        }
        let mut omega = CoalgElem::zero(&m, 1);
        for (k, wk) in parts.iter().enumerate() {
            for (i, x) in wk {
                omega.add_term(Word(vec![*i]), &DgaElem::term(powers[k], x.clone()));
            }
        }
        return Ok(Some(omega));
    }
    Ok(None)
}

/// A random polynomial in `n` variables with terms of degree `<= max_deg`.
pub fn random_poly<R: Rng>(n: usize, max_deg: u32, terms: usize, rng: &mut R) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let monos = monomials_of_degree(n, d);
        let mono = monos.choose(rng).expect("nonempty").clone();
        p.add_term(mono, &small_rational(rng));
    }
    p
}

/// A random polyvector field of degree `p` (i.e. `(p+1)`-vector).
pub fn random_polyvec<R: Rng>(n: usize, p: i32, max_deg: u32, terms: usize, rng: &mut R) -> PolyVec {
    let k = (p + 1) as usize;
    let subsets = crate::tpoly::increasing_subsets(n, k);
    let mut v = PolyVec::zero(n);
    if subsets.is_empty() {
        return v;
    }
    for _ in 0..terms {
        let s = subsets.choose(rng).expect("nonempty");
        let f = random_poly(n, max_deg, 1, rng);
        let one: Vec<usize> = s.iter().map(|i| i + 1).collect();
        v = v.add(&PolyVec::term(f, &one).expect("valid indices"));
    }
    v
}

/// A random polydifferential operator of degree `p` (`p+1` slots).
pub fn random_polydiff<R: Rng>(n: usize, p: i32, max_deg: u32, max_order: u32, terms: usize, rng: &mut R) -> PolyDiffOp {
    let k = (p + 1).max(0) as usize;
    let mut op = PolyDiffOp::zero(n);
    for _ in 0..terms {
        let slots: Vec<Monomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(0..=max_order);
                monomials_of_degree(n, d).choose(rng).expect("nonempty").clone()
            })
            .collect();
        let f = random_poly(n, max_deg, 1, rng);
        op = op.add(&PolyDiffOp::term(f, slots).expect("valid slots"));
    }
    op
}

/// A random invertible integer matrix together with its inverse.
pub fn random_gl<R: Rng>(n: usize, rng: &mut R) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { r(*[1, -1, 2].choose(rng).expect("nonempty")) } else { r(rng.gen_range(-1..=1)) })
                    .collect()
            })
            .collect();
        if let Some(inv) = crate::linalg::invert(&m) {
            return (m, inv);
        }
    }
}
