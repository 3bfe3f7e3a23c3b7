//! Finite-dimensional graded super-commutative DG coefficient algebras.
//!
//! These are the coefficient rings of the crate: the base field, truncated
//! polynomial rings `Q[h]/(h^N)`, exterior algebras and their tensor
//! products. Every algebra has an explicit ordered basis, so all axioms are
//! decidable by enumeration (see [`CoeffDga::check`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::rational::Rational;

/// A named basis element with its cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElem {
    pub name: String,
    pub degree: i32,
}

/// Sparse element of a [`CoeffDga`]: basis index -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DgaElem(BTreeMap<usize, Rational>);

impl DgaElem {
    pub fn zero() -> Self {
        DgaElem(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(i, c);
        }
        DgaElem(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = DgaElem::zero();
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &DgaElem, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.0 {
            self.add_term(*i, &(x * c));
        }
    }

    pub fn add(&self, other: &DgaElem) -> DgaElem {
        let mut r = self.clone();
        r.add_scaled(other, &Rational::one());
        r
    }

    pub fn sub(&self, other: &DgaElem) -> DgaElem {
        let mut r = self.clone();
        r.add_scaled(other, &-Rational::one());
        r
    }

    pub fn scale(&self, c: &Rational) -> DgaElem {
        if c.is_zero() {
            return DgaElem::zero();
        }
        DgaElem(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn neg(&self) -> DgaElem {
        self.scale(&-Rational::one())
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.0.iter().map(|(i, c)| (*i, c.clone())).collect()
    }

    pub fn from_sparse(v: &SparseVec) -> Self {
        DgaElem::from_terms(v.iter().cloned())
    }
}

/// A violated axiom together with the basis tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// The first violation as an error.
    pub fn into_result(self) -> crate::error::Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(crate::error::Error::Axiom {
                axiom: v.axiom,
                witness: v.witness.join(", "),
            }),
        }
    }

    fn push(&mut self, axiom: &str, witness: Vec<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
        });
    }
}

/// A finite-dimensional graded super-commutative unital DG algebra over Q
/// with a designated nilpotent ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffDga {
    basis: Vec<BasisElem>,
    mul: Vec<Vec<DgaElem>>,
    d: Vec<DgaElem>,
    unit: usize,
    ideal: Vec<usize>,
    /// smallest m with ideal^m = 0, if it exists within dim+1 steps
    nilpotency_order: Option<usize>,
    /// for each basis element, the largest k such that it lies in ideal^k
    /// (capped at the nilpotency order)
    filtration: Vec<usize>,
    /// the algebra is non-negatively graded (builder flag)
    nonnegative: bool,
}

impl CoeffDga {
    /// Assembles an algebra from total structure tables. Only structural
    /// well-formedness is checked here; axioms are checked by [`Self::check`].
    pub fn from_tables(
        basis: Vec<BasisElem>,
        mul: Vec<Vec<DgaElem>>,
        d: Vec<DgaElem>,
        unit: usize,
        ideal: Vec<usize>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Structural("empty basis".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::Structural(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        if d.len() != n {
            return Err(Error::Structural(format!(
                "differential must have {n} entries"
            )));
        }
        if unit >= n {
            return Err(Error::Structural(format!("unit index {unit} out of range")));
        }
        let in_range = |e: &DgaElem| e.iter().all(|(k, _)| *k < n);
        if !mul.iter().flatten().all(in_range) || !d.iter().all(in_range) {
            return Err(Error::Structural("table entry refers to missing basis index".into()));
        }
        let mut ideal = ideal;
        ideal.sort_unstable();
        ideal.dedup();
        if ideal.iter().any(|&i| i >= n) {
            return Err(Error::Structural("ideal index out of range".into()));
        }
        let mut names: Vec<&str> = basis.iter().map(|b| b.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural("duplicate basis name".into()));
        }
        let nonnegative = basis.iter().all(|b| b.degree >= 0);
        let mut a = CoeffDga {
            basis,
            mul,
            d,
            unit,
            ideal,
            nilpotency_order: None,
            filtration: vec![0; n],
            nonnegative,
        };
        a.compute_filtration();
        Ok(a)
    }

    /// The base field Q.
    pub fn base_field() -> Self {
        truncated_poly_dga(&[], 1).expect("base field")
    }

    fn compute_filtration(&mut self) {
        let n = self.dim();
        // powers[k] spans ideal^(k+1)
        let gens: Vec<SparseVec> = self
            .ideal
            .iter()
            .map(|&i| DgaElem::basis(i).to_sparse())
            .collect();
        let mut powers: Vec<EchelonBasis> = Vec::new();
        let mut current = EchelonBasis::new();
        for g in &gens {
            current.insert(g);
        }
        let mut order = None;
        for step in 1..=n + 1 {
            if current.rank() == 0 {
                order = Some(step);
                break;
            }
            let rows: Vec<SparseVec> = current.rows().cloned().collect();
            powers.push(current);
            let mut next = EchelonBasis::new();
            for r in &rows {
                let x = DgaElem::from_sparse(r);
                for &g in &self.ideal {
                    let p = self.mul(&x, &DgaElem::basis(g));
                    next.insert(&p.to_sparse());
                }
            }
            current = next;
        }
        self.nilpotency_order = order;
        for i in 0..n {
            let v = DgaElem::basis(i).to_sparse();
            let mut k = 0;
            for (idx, p) in powers.iter().enumerate() {
                if p.contains(&v) {
                    k = idx + 1;
                } else {
                    break;
                }
            }
            self.filtration[i] = k;
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn ideal(&self) -> &[usize] {
        &self.ideal
    }

    pub fn nilpotency_order(&self) -> Option<usize> {
        self.nilpotency_order
    }

    pub fn is_nonnegatively_graded(&self) -> bool {
        self.nonnegative
    }

    pub fn mul_table(&self) -> &Vec<Vec<DgaElem>> {
        &self.mul
    }

    pub fn d_table(&self) -> &[DgaElem] {
        &self.d
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|e| e.is_zero())
    }

    pub fn one(&self) -> DgaElem {
        DgaElem::basis(self.unit)
    }

    pub fn scalar(&self, c: Rational) -> DgaElem {
        DgaElem::term(self.unit, c)
    }

    pub fn mul(&self, x: &DgaElem, y: &DgaElem) -> DgaElem {
        let mut out = DgaElem::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                out.add_scaled(&self.mul[*i][*j], &ab);
            }
        }
        out
    }

    pub fn d(&self, x: &DgaElem) -> DgaElem {
        let mut out = DgaElem::zero();
        for (i, a) in x.iter() {
            out.add_scaled(&self.d[*i], a);
        }
        out
    }

    /// Degree of a homogeneous nonzero element; `None` if zero or mixed.
    pub fn homogeneous_degree(&self, x: &DgaElem) -> Option<i32> {
        let mut deg = None;
        for (i, _) in x.iter() {
            let d = self.degree(*i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Splits an element into homogeneous components.
    pub fn homogeneous_parts(&self, x: &DgaElem) -> BTreeMap<i32, DgaElem> {
        let mut parts: BTreeMap<i32, DgaElem> = BTreeMap::new();
        for (i, c) in x.iter() {
            parts.entry(self.degree(*i)).or_default().add_term(*i, c);
        }
        parts
    }

    /// True when every coefficient sits in the designated ideal.
    pub fn in_ideal(&self, x: &DgaElem) -> bool {
        x.iter().all(|(i, _)| self.filtration[*i] >= 1)
    }

    /// Ideal-adic order: the largest k with x in ideal^k, computed
    /// basis-wise (exact for monomial bases). `None` for zero.
    pub fn adic_order(&self, x: &DgaElem) -> Option<usize> {
        x.iter().map(|(i, _)| self.filtration[*i]).min()
    }

    pub fn basis_adic_order(&self, i: usize) -> usize {
        self.filtration[i]
    }

    /// Checks all DGA axioms by exhaustive enumeration over basis tuples.
    pub fn check(&self) -> ValidationReport {
        let n = self.dim();
        let mut rep = ValidationReport::default();
        let nm = |i: usize| self.basis[i].name.clone();
        let sgn = |i: usize, j: usize| {
            Rational::sign((self.degree(i) * self.degree(j)).rem_euclid(2) == 1)
        };
        for i in 0..n {
            for j in 0..n {
                let p = &self.mul[i][j];
                if !p.is_zero() && self.homogeneous_degree(p) != Some(self.degree(i) + self.degree(j)) {
                    rep.push("grading", vec![nm(i), nm(j)]);
                }
                if self.mul[j][i] != p.scale(&sgn(i, j)) {
                    rep.push("commutativity", vec![nm(i), nm(j)]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &DgaElem::basis(k));
                    let right = self.mul(&DgaElem::basis(i), &self.mul[j][k]);
                    if left != right {
                        rep.push("associativity", vec![nm(i), nm(j), nm(k)]);
                    }
                }
            }
        }
        for i in 0..n {
            let e = DgaElem::basis(i);
            if self.mul(&self.one(), &e) != e || self.mul(&e, &self.one()) != e {
                rep.push("unit", vec![nm(i)]);
            }
        }
        if !self.d[self.unit].is_zero() {
            rep.push("unit", vec![format!("d({})", nm(self.unit))]);
        }
        for i in 0..n {
            let di = &self.d[i];
            if !di.is_zero() && self.homogeneous_degree(di) != Some(self.degree(i) + 1) {
                rep.push("differential-degree", vec![nm(i)]);
            }
            if !self.d(di).is_zero() {
                rep.push("d-squared", vec![nm(i)]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.d(&self.mul[i][j]);
                let mut rhs = self.mul(&self.d[i], &DgaElem::basis(j));
                let s = Rational::sign(self.degree(i).rem_euclid(2) == 1);
                rhs.add_scaled(&self.mul(&DgaElem::basis(i), &self.d[j]), &s);
                if lhs != rhs {
                    rep.push("leibniz", vec![nm(i), nm(j)]);
                }
            }
        }
        for &i in &self.ideal {
            for j in 0..n {
                if !self.in_ideal(&self.mul[i][j]) {
                    rep.push("ideal", vec![nm(i), nm(j)]);
                }
            }
        }
        if self.ideal.contains(&self.unit) || self.nilpotency_order.is_none() {
            rep.push("nilpotency", vec![]);
        }
        rep
    }

    pub fn to_json(&self) -> CoeffDgaJson {
        let n = self.dim();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                mul.push((i, j, sparse_json(&self.mul[i][j])));
            }
        }
        CoeffDgaJson {
            basis: self.basis.clone(),
            mul,
            d: (0..n).map(|i| (i, sparse_json(&self.d[i]))).collect(),
            unit: self.unit,
            ideal: self.ideal.clone(),
        }
    }

    pub fn from_json(j: &CoeffDgaJson) -> Result<Self> {
        let n = j.basis.len();
        let mut mul: Vec<Vec<Option<DgaElem>>> = vec![vec![None; n]; n];
        for (i, k, entries) in &j.mul {
            if *i >= n || *k >= n {
                return Err(Error::Structural(format!("mul entry ({i},{k}) out of range")));
            }
            mul[*i][*k] = Some(DgaElem::from_terms(entries.iter().cloned()));
        }
        let mut table = Vec::with_capacity(n);
        for (i, row) in mul.into_iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (k, e) in row.into_iter().enumerate() {
                r.push(e.ok_or_else(|| {
                    Error::Structural(format!("missing multiplication entry ({i},{k})"))
                })?);
            }
            table.push(r);
        }
        let mut d: Vec<Option<DgaElem>> = vec![None; n];
        for (i, entries) in &j.d {
            if *i >= n {
                return Err(Error::Structural(format!("d entry {i} out of range")));
            }
            d[*i] = Some(DgaElem::from_terms(entries.iter().cloned()));
        }
        let d = d
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::Structural(format!("missing differential entry {i}"))))
            .collect::<Result<Vec<_>>>()?;
        CoeffDga::from_tables(j.basis.clone(), table, d, j.unit, j.ideal.clone())
    }

    /// Human-readable rendering of an element, e.g. `1/2*hbar^2 + theta`.
    pub fn format_elem(&self, x: &DgaElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in x.iter().enumerate() {
            let name = self.name(*i);
            let term = if *i == self.unit {
                c.to_string()
            } else if c.is_one() {
                name.to_string()
            } else if (-c).is_one() {
                format!("-{name}")
            } else {
                format!("{c}*{name}")
            };
            if k > 0 {
                if let Some(rest) = term.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                    continue;
                }
                s.push_str(" + ");
            }
            s.push_str(&term);
        }
        s
    }
}

fn sparse_json(e: &DgaElem) -> Vec<(usize, Rational)> {
    e.iter().map(|(i, c)| (*i, c.clone())).collect()
}

/// JSON document form of a [`CoeffDga`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffDgaJson {
    pub basis: Vec<BasisElem>,
    pub mul: Vec<(usize, usize, Vec<(usize, Rational)>)>,
    pub d: Vec<(usize, Vec<(usize, Rational)>)>,
    pub unit: usize,
    pub ideal: Vec<usize>,
}

fn generator_names(degrees: &[i32]) -> Vec<String> {
    let n_even = degrees.iter().filter(|d| *d % 2 == 0).count();
    let n_odd = degrees.len() - n_even;
    let (mut e, mut o) = (0, 0);
    degrees
        .iter()
        .map(|d| {
            if d % 2 == 0 {
                e += 1;
                if n_even == 1 {
                    "hbar".to_string()
                } else {
                    format!("hbar{e}")
                }
            } else {
                o += 1;
                if n_odd == 1 {
                    "theta".to_string()
                } else {
                    format!("theta{o}")
                }
            }
        })
        .collect()
}

/// Builds the free graded-commutative algebra on the given generators,
/// truncated so that each even generator satisfies `g^N = 0`
/// (`N = truncation_order`); odd generators square to zero automatically.
///
/// The ideal is generated by all generators. An empty generator list gives
/// the base field with zero ideal.
pub fn truncated_poly_dga(generator_degrees: &[i32], truncation_order: usize) -> Result<CoeffDga> {
    if truncation_order == 0 {
        return Err(Error::Structural("truncation order must be positive".into()));
    }
    let names = generator_names(generator_degrees);
    let odd: Vec<bool> = generator_degrees.iter().map(|d| d % 2 != 0).collect();
    let g = generator_degrees.len();
    // enumerate exponent vectors
    let mut monos: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..g {
        let max = if odd[k] { 1 } else { truncation_order - 1 };
        let mut next = Vec::new();
        for m in &monos {
            for e in 0..=max {
                let mut m2 = m.clone();
                m2.push(e);
                next.push(m2);
            }
        }
        monos = next;
    }
    monos.sort_by(|a, b| {
        let da: usize = a.iter().sum();
        let db: usize = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let index: BTreeMap<Vec<usize>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let basis: Vec<BasisElem> = monos
        .iter()
        .map(|m| {
            let mut parts = Vec::new();
            for (k, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[k].clone()),
                    _ => parts.push(format!("{}^{}", names[k], e)),
                }
            }
            let name = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
            let degree = m
                .iter()
                .zip(generator_degrees)
                .map(|(&e, &d)| e as i32 * d)
                .sum();
            BasisElem { name, degree }
        })
        .collect();
    let n = monos.len();
    let mut mul = vec![vec![DgaElem::zero(); n]; n];
    for (i, a) in monos.iter().enumerate() {
        for (j, b) in monos.iter().enumerate() {
            let mut prod = Vec::with_capacity(g);
            let mut ok = true;
            for k in 0..g {
                let e = a[k] + b[k];
                let max = if odd[k] { 1 } else { truncation_order - 1 };
                if e > max {
                    ok = false;
                    break;
                }
                prod.push(e);
            }
            if !ok {
                continue;
            }
            // sign: odd generators of b pass odd generators of a with larger index
            let mut swaps = 0;
            for kb in 0..g {
                if odd[kb] && b[kb] == 1 {
                    for ka in (kb + 1)..g {
                        if odd[ka] && a[ka] == 1 {
                            swaps += 1;
                        }
                    }
                }
            }
            mul[i][j] = DgaElem::term(index[&prod], Rational::sign(swaps % 2 == 1));
        }
    }
    let d = vec![DgaElem::zero(); n];
    let ideal: Vec<usize> = (0..n).filter(|&i| monos[i].iter().any(|&e| e > 0)).collect();
    let unit = index[&vec![0; g]];
    CoeffDga::from_tables(basis, mul, d, unit, ideal)
}

/// Graded tensor product `A (x) B` with Koszul signs:
/// `(a1 b1)(a2 b2) = (-1)^{|b1||a2|} a1 a2 (x) b1 b2` and
/// `d(a b) = da b + (-1)^{|a|} a db`.
/// `hbar^2*theta` -> `hbar'^2*theta'`.
fn prime_factors(name: &str) -> String {
    name.split('*')
        .map(|f| match f.split_once('^') {
            Some((g, e)) => format!("{g}'^{e}"),
            None => format!("{f}'"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn dga_tensor(a: &CoeffDga, b: &CoeffDga) -> Result<CoeffDga> {
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    // prime the right factor's names when they collide with the left's
    let clash = (0..nb).any(|j| j != b.unit_index() && a.index_of(b.name(j)).is_some());
    let bname = |j: usize| {
        if clash && j != b.unit_index() {
            prime_factors(b.name(j))
        } else {
            b.name(j).to_string()
        }
    };
    let mut basis = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            let (an, bn) = (a.name(i), bname(j));
            let bn = bn.as_str();
            let name = match (an == "1", bn == "1") {
                (true, true) => "1".to_string(),
                (true, false) => bn.to_string(),
                (false, true) => an.to_string(),
                (false, false) => format!("{an}*{bn}"),
            };
            basis.push(BasisElem {
                name,
                degree: a.degree(i) + b.degree(j),
            });
        }
    }
    let n = na * nb;
    let mut mul = vec![vec![DgaElem::zero(); n]; n];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let s = Rational::sign((b.degree(j1) * a.degree(i2)).rem_euclid(2) == 1);
                    let mut out = DgaElem::zero();
                    for (ka, ca) in a.mul_table()[i1][i2].iter() {
                        for (kb, cb) in b.mul_table()[j1][j2].iter() {
                            out.add_term(idx(*ka, *kb), &(&(ca * cb) * &s));
                        }
                    }
                    mul[idx(i1, j1)][idx(i2, j2)] = out;
                }
            }
        }
    }
    let mut d = vec![DgaElem::zero(); n];
    for i in 0..na {
        for j in 0..nb {
            let mut out = DgaElem::zero();
            for (k, c) in a.d_table()[i].iter() {
                out.add_term(idx(*k, j), c);
            }
            let s = Rational::sign(a.degree(i).rem_euclid(2) == 1);
            for (k, c) in b.d_table()[j].iter() {
                out.add_term(idx(i, *k), &(c * &s));
            }
            d[idx(i, j)] = out;
        }
    }
    let mut ideal = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            if a.ideal().contains(&i) || b.ideal().contains(&j) {
                ideal.push(idx(i, j));
            }
        }
    }
    CoeffDga::from_tables(basis, mul, d, idx(a.unit_index(), b.unit_index()), ideal)
}
