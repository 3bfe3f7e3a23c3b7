//! The truncated graded symmetric coalgebra `S_C(g[1])`.
//!
//! Elements are finite sums `c * w` with `c` in a coefficient algebra `C`
//! (written on the left) and `w` a canonically sorted symmetric word in the
//! shifted generators. Koszul signs are absorbed when words are sorted.
//! Coderivations and coalgebra morphisms are built from their Taylor
//! coefficients and evaluated on words.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dga::{CoeffDga, DgaElem};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub name: String,
    /// Degree in `g` (not shifted).
    pub degree: i32,
}

/// A graded module `g` with a finite basis, over a coefficient algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule {
    name: String,
    letters: Vec<Letter>,
    coeffs: Arc<CoeffDga>,
}

impl GradedModule {
    pub fn new(name: &str, letters: Vec<Letter>, coeffs: Arc<CoeffDga>) -> Result<Arc<Self>> {
        let mut names: Vec<&str> = letters.iter().map(|l| l.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural("duplicate generator name".into()));
        }
        if letters.iter().any(|l| l.name.contains('.') || coeffs.index_of(&l.name).is_some()) {
            return Err(Error::Structural(
                "generator names must not contain '.' or clash with coefficient names".into(),
            ));
        }
        Ok(Arc::new(GradedModule {
            name: name.to_string(),
            letters,
            coeffs,
        }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_degrees(name: &str, gens: &[(&str, i32)], coeffs: Arc<CoeffDga>) -> Result<Arc<Self>> {
        Self::new(
            name,
            gens.iter()
                .map(|(n, d)| Letter {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
            coeffs,
        )
    }

    /// Same generators over a different coefficient algebra.
    pub fn with_coeffs(&self, coeffs: Arc<CoeffDga>) -> Result<Arc<Self>> {
        Self::new(&self.name, self.letters.clone(), coeffs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn coeffs(&self) -> &Arc<CoeffDga> {
        &self.coeffs
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }

    /// Degree in `g`.
    pub fn degree(&self, i: usize) -> i32 {
        self.letters[i].degree
    }

    /// Degree in `g[1]`.
    pub fn shifted(&self, i: usize) -> i32 {
        self.letters[i].degree - 1
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.shifted(i).rem_euclid(2) == 1
    }

    pub fn word_degree(&self, w: &Word) -> i32 {
        w.0.iter().map(|&i| self.shifted(i)).sum()
    }

    /// Lowest degree of a generator (`None` if the module is zero).
    pub fn lower_bound(&self) -> Option<i32> {
        self.letters.iter().map(|l| l.degree).min()
    }

    /// Sorts a letter sequence; `None` if an odd letter repeats, otherwise
    /// the canonical word and whether the Koszul sign is negative.
    pub fn canonicalize(&self, letters: &[usize]) -> Option<(Word, bool)> {
        let mut v = letters.to_vec();
        let mut neg = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if self.is_odd(v[j - 1]) && self.is_odd(v[j]) {
                    neg = !neg;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        if v.windows(2).any(|p| p[0] == p[1] && self.is_odd(p[0])) {
            return None;
        }
        Some((Word(v), neg))
    }

    /// All nonzero canonical words of length `j`.
    pub fn words(&self, j: usize) -> Vec<Word> {
        fn rec(m: &GradedModule, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(Word(cur.clone()));
                return;
            }
            for i in start..m.dim() {
                let next = if m.is_odd(i) { i + 1 } else { i };
                cur.push(i);
                rec(m, next, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, j, &mut Vec::new(), &mut out);
        out
    }

    /// All nonzero canonical words of length `<= cap`, shortest first.
    pub fn words_up_to(&self, cap: usize) -> Vec<Word> {
        (0..=cap).flat_map(|j| self.words(j)).collect()
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.0.is_empty() {
            return "1".into();
        }
        w.0.iter()
            .map(|&i| self.letters[i].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A canonically sorted symmetric word (multiset of generator indices).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of moving the letters at `positions` (increasing) to the front.
fn front_sign(m: &GradedModule, w: &[usize], positions: &[usize]) -> bool {
    let mut neg = false;
    let mut chosen = positions.iter().peekable();
    let mut skipped_odd = 0usize;
    for (k, &x) in w.iter().enumerate() {
        if chosen.peek() == Some(&&k) {
            chosen.next();
            if m.is_odd(x) && skipped_odd % 2 == 1 {
                neg = !neg;
            }
        } else if m.is_odd(x) {
            skipped_odd += 1;
        }
    }
    neg
}

/// Sign of the permutation listing `w` in the order `order` (a permutation
/// of positions), counting only odd-odd transpositions.
fn reorder_sign(m: &GradedModule, w: &[usize], order: &[usize]) -> bool {
    let mut neg = false;
    for a in 0..order.len() {
        if !m.is_odd(w[order[a]]) {
            continue;
        }
        for b in a + 1..order.len() {
            if order[b] < order[a] && m.is_odd(w[order[b]]) {
                neg = !neg;
            }
        }
    }
    neg
}

fn same_module(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of `S_C(g[1])` truncated at word order `cap`. Equality
/// ignores the cap.
#[derive(Clone)]
pub struct CoalgElem {
    module: Arc<GradedModule>,
    terms: BTreeMap<Word, DgaElem>,
    cap: usize,
}

impl CoalgElem {
    pub fn zero(module: &Arc<GradedModule>, cap: usize) -> Self {
        CoalgElem {
            module: module.clone(),
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn one(module: &Arc<GradedModule>, cap: usize) -> Self {
        Self::word(module, Word::empty(), module.coeffs().one(), cap)
    }

    /// `c * w` for a canonical word.
    pub fn word(module: &Arc<GradedModule>, w: Word, c: DgaElem, cap: usize) -> Self {
        let mut e = Self::zero(module, cap);
        e.add_term(w, &c);
        e
    }

    /// `c * x_i` for a single generator.
    pub fn letter(module: &Arc<GradedModule>, i: usize, c: DgaElem, cap: usize) -> Self {
        Self::word(module, Word(vec![i]), c, cap)
    }

    /// A product of generators in any order, with rational coefficient.
    pub fn from_letters(module: &Arc<GradedModule>, letters: &[usize], c: Rational, cap: usize) -> Result<Self> {
        if letters.len() > cap {
            return Err(Error::WordOrderExceeded {
                needed: letters.len(),
                cap,
            });
        }
        let mut e = Self::zero(module, cap);
        if let Some((w, neg)) = module.canonicalize(letters) {
            e.add_term(w, &module.coeffs().scalar(c * Rational::sign(neg)));
        }
        Ok(e)
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        if let Some(w) = self.terms.keys().find(|w| w.len() > cap) {
            return Err(Error::WordOrderExceeded { needed: w.len(), cap });
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &DgaElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> DgaElem {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_order(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &DgaElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &CoalgElem) -> CoalgElem {
        debug_assert!(same_module(&self.module, &other.module));
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CoalgElem) -> CoalgElem {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> CoalgElem {
        let mut out = CoalgElem::zero(&self.module, self.cap);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.scale(r));
        }
        out
    }

    /// Left multiplication by a coefficient `a * (c w) = (a c) w`.
    pub fn coeff_mul(&self, a: &DgaElem) -> CoalgElem {
        let cd = self.module.coeffs().clone();
        let mut out = CoalgElem::zero(&self.module, self.cap);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &cd.mul(a, c));
        }
        out
    }

    /// Component of word order `j`.
    pub fn order_component(&self, j: usize) -> CoalgElem {
        let mut out = CoalgElem::zero(&self.module, self.cap);
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == j) {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// Projection onto `S^1`.
    pub fn ln(&self) -> CoalgElem {
        self.order_component(1)
    }

    /// Graded-commutative product
    /// `(c1 w1)(c2 w2) = (-1)^{|w1||c2|} c1 c2 w1 w2`.
    pub fn mul(&self, other: &CoalgElem) -> Result<CoalgElem> {
        debug_assert!(same_module(&self.module, &other.module));
        let m = &self.module;
        let cd = m.coeffs();
        let cap = self.cap.max(other.cap);
        let mut out = CoalgElem::zero(m, cap);
        for (w1, c1) in &self.terms {
            let d1 = m.word_degree(w1);
            for (w2, c2) in &other.terms {
                let letters: Vec<usize> = w1.0.iter().chain(&w2.0).copied().collect();
                let Some((w, neg)) = m.canonicalize(&letters) else {
                    continue;
                };
                let mut c = DgaElem::zero();
                for (k, r) in c2.iter() {
                    let s = neg ^ ((d1 * cd.degree(*k)).rem_euclid(2) == 1);
                    c.add_scaled(&cd.mul(c1, &DgaElem::basis(*k)), &(r * &Rational::sign(s)));
                }
                if c.is_zero() {
                    continue;
                }
                if w.len() > cap {
                    return Err(Error::WordOrderExceeded { needed: w.len(), cap });
                }
                out.add_term(w, &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<CoalgElem> {
        let mut r = CoalgElem::one(&self.module, self.cap);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Total degree (coefficient plus shifted word) of each term.
    pub fn degrees(&self) -> Vec<i32> {
        let cd = self.module.coeffs();
        let mut d: Vec<i32> = self
            .terms
            .iter()
            .flat_map(|(w, c)| {
                let wd = self.module.word_degree(w);
                c.iter().map(move |(k, _)| wd + cd.degree(*k))
            })
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Comultiplication; the shuffle coproduct extended multiplicatively.
    pub fn comult(&self) -> CoalgTensor {
        let m = &self.module;
        let mut out = CoalgTensor::new(m);
        for (w, c) in &self.terms {
            let n = w.len();
            for mask in 0u64..(1u64 << n) {
                let sel: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                let left = Word(sel.iter().map(|&k| w.0[k]).collect());
                let right = Word((0..n).filter(|k| mask >> k & 1 == 0).map(|k| w.0[k]).collect());
                let s = Rational::sign(front_sign(m, &w.0, &sel));
                out.add_term(left, right, &c.scale(&s));
            }
        }
        out
    }

    /// `x (x) y` with the coefficient of `y` moved left past `x`'s word.
    pub fn tensor(&self, other: &CoalgElem) -> CoalgTensor {
        let m = &self.module;
        let cd = m.coeffs();
        let mut out = CoalgTensor::new(m);
        for (w1, c1) in &self.terms {
            let d1 = m.word_degree(w1);
            for (w2, c2) in &other.terms {
                let mut c = DgaElem::zero();
                for (k, r) in c2.iter() {
                    let s = (d1 * cd.degree(*k)).rem_euclid(2) == 1;
                    c.add_scaled(&cd.mul(c1, &DgaElem::basis(*k)), &(r * &Rational::sign(s)));
                }
                out.add_term(w1.clone(), w2.clone(), &c);
            }
        }
        out
    }

    pub fn is_primitive(&self) -> bool {
        let one = CoalgElem::one(&self.module, self.cap);
        let expect = self.tensor(&one).add(&one.tensor(self));
        self.comult() == expect
    }

    pub fn is_grouplike(&self) -> bool {
        !self.is_zero() && self.comult() == self.tensor(self)
    }

    /// The empty-word coefficient is a unit of `C`.
    pub fn is_invertible(&self) -> bool {
        let c0 = self.coeff(&Word::empty());
        let cd = self.module.coeffs();
        let u = c0.coeff(cd.unit_index());
        !u.is_zero() && cd.in_ideal(&c0.sub(&cd.scalar(u)))
    }

    /// `exp(omega) = sum omega^i / i!` for `omega` in `m * g[1]^0`.
    pub fn exp(&self) -> Result<CoalgElem> {
        let m = &self.module;
        let cd = m.coeffs();
        if self.terms.keys().any(|w| w.len() != 1) {
            return Err(Error::Degree("exp expects an element of S^1".into()));
        }
        if self.degrees().iter().any(|&d| d != 0) {
            return Err(Error::Degree("exp expects total degree 0".into()));
        }
        if self.terms.values().any(|c| !cd.in_ideal(c)) {
            return Err(Error::NotNilpotent);
        }
        let mut acc = CoalgElem::one(m, self.cap);
        let mut power = CoalgElem::one(m, self.cap);
        let mut i = 1;
        loop {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&Rational::inv_factorial(i)));
            i += 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse of `exp(omega)` is `exp(-omega)`; this computes
    /// the inverse of an invertible element by the geometric series.
    pub fn inverse(&self) -> Result<CoalgElem> {
        if !self.is_invertible() {
            return Err(Error::Degree("element is not invertible".into()));
        }
        let m = &self.module;
        let cd = m.coeffs();
        let u = self.coeff(&Word::empty()).coeff(cd.unit_index());
        let u_inv = u.recip().expect("nonzero");
        // self = u (1 - x) with x nilpotent
        let x = CoalgElem::one(m, self.cap).sub(&self.scale(&u_inv));
        let mut acc = CoalgElem::one(m, self.cap);
        let mut power = CoalgElem::one(m, self.cap);
        loop {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&u_inv))
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let cd = self.module.coeffs();
        self.terms
            .iter()
            .map(|(w, c)| format!("({})*{}", cd.format_elem(c), self.module.format_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON entries `{"coeff":"1/2","word":["hbar^2.g1","g1"]}`: a
    /// non-unit coefficient basis element is attached to the first letter.
    pub fn to_json(&self) -> Vec<WordJson> {
        let cd = self.module.coeffs();
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            for (k, r) in c.iter() {
                let mut names: Vec<String> =
                    w.0.iter().map(|&i| self.module.letters[i].name.clone()).collect();
                if *k != cd.unit_index() {
                    if names.is_empty() {
                        names.push(cd.name(*k).to_string());
                    } else {
                        names[0] = format!("{}.{}", cd.name(*k), names[0]);
                    }
                }
                out.push(WordJson {
                    coeff: r.clone(),
                    word: names,
                });
            }
        }
        out
    }

    /// Parses JSON entries; each token is multiplied in, so coefficient
    /// prefixes may appear on any letter.
    pub fn from_json(module: &Arc<GradedModule>, entries: &[WordJson], cap: usize) -> Result<Self> {
        let cd = module.coeffs();
        let mut out = CoalgElem::zero(module, cap);
        for e in entries {
            let mut acc = CoalgElem::one(module, cap).scale(&e.coeff);
            for tok in &e.word {
                let factor = match tok.split_once('.') {
                    Some((cn, gn)) => {
                        let k = cd
                            .index_of(cn)
                            .ok_or_else(|| Error::Json(format!("unknown coefficient `{cn}`")))?;
                        let g = module
                            .index_of(gn)
                            .ok_or_else(|| Error::Json(format!("unknown generator `{gn}`")))?;
                        CoalgElem::letter(module, g, DgaElem::basis(k), cap)
                    }
                    None => match module.index_of(tok) {
                        Some(g) => CoalgElem::letter(module, g, cd.one(), cap),
                        None => {
                            let k = cd
                                .index_of(tok)
                                .ok_or_else(|| Error::Json(format!("unknown token `{tok}`")))?;
                            CoalgElem::word(module, Word::empty(), DgaElem::basis(k), cap)
                        }
                    },
                };
                acc = acc.mul(&factor)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

impl PartialEq for CoalgElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_module(&self.module, &other.module)
    }
}

impl fmt::Debug for CoalgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub coeff: Rational,
    pub word: Vec<String>,
}

/// Element of `S_C (x)_C S_C`, coefficients on the left.
#[derive(Clone, PartialEq, Debug)]
pub struct CoalgTensor {
    terms: BTreeMap<(Word, Word), DgaElem>,
}

impl CoalgTensor {
    fn new(_m: &Arc<GradedModule>) -> Self {
        CoalgTensor {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: &DgaElem) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &CoalgTensor) -> CoalgTensor {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &DgaElem)> {
        self.terms.iter()
    }
}

/// Element of the tensor coalgebra `T_C`: ordered words, coefficients on
/// the left. Used to test the symmetrization `tau`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TensorWords {
    terms: BTreeMap<Vec<usize>, DgaElem>,
}

impl TensorWords {
    pub fn add_term(&mut self, w: Vec<usize>, c: &DgaElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &DgaElem)> {
        self.terms.iter()
    }

    /// Deconcatenation `(g1...gj) -> sum_p (g1...gp) (x) (g(p+1)...gj)`.
    pub fn deconcat(&self) -> Vec<(Vec<usize>, Vec<usize>, DgaElem)> {
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            for p in 0..=w.len() {
                out.push((w[..p].to_vec(), w[p..].to_vec(), c.clone()));
            }
        }
        out
    }
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for m in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, m);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `tau(g1...gj) = sum_s sgn_d(s) g_s(1) (*) ... (*) g_s(j)`.
pub fn tau(x: &CoalgElem) -> TensorWords {
    let m = &x.module;
    let mut out = TensorWords::default();
    for (w, c) in &x.terms {
        for perm in permutations(w.len()) {
            let letters: Vec<usize> = perm.iter().map(|&i| w.0[i]).collect();
            if let Some((_, neg)) = m.canonicalize(&letters) {
                out.add_term(letters, &c.scale(&Rational::sign(neg)));
            }
        }
    }
    out
}

fn pi_tilde_word(m: &GradedModule, letters: &[usize]) -> Option<(Word, Rational)> {
    let (w, neg) = m.canonicalize(letters)?;
    Some((w, &Rational::inv_factorial(letters.len()) * &Rational::sign(neg)))
}

/// `pi~(g1 (*) ... (*) gj) = (1/j!) g1...gj`.
pub fn pi_tilde(m: &Arc<GradedModule>, t: &TensorWords, cap: usize) -> CoalgElem {
    let mut out = CoalgElem::zero(m, cap);
    for (letters, c) in t.terms() {
        if let Some((w, r)) = pi_tilde_word(m, letters) {
            out.add_term(w, &c.scale(&r));
        }
    }
    out
}

/// Checks `pi~ tau = id` and `(pi~ (x) pi~)(tau (x) tau) Delta = (pi~ (x) pi~) Delta~ tau`
/// on `x`.
pub fn tau_is_coalgebra_map(x: &CoalgElem) -> bool {
    let m = &x.module;
    if pi_tilde(m, &tau(x), x.cap) != *x {
        return false;
    }
    let proj = |a: &[usize], b: &[usize], c: &DgaElem, out: &mut CoalgTensor| {
        if let (Some((wa, ra)), Some((wb, rb))) = (pi_tilde_word(m, a), pi_tilde_word(m, b)) {
            out.add_term(wa, wb, &c.scale(&(&ra * &rb)));
        }
    };
    let mut lhs = CoalgTensor::new(m);
    for ((a, b), c) in x.comult().terms() {
        let ta = tau(&CoalgElem::word(m, a.clone(), DgaElem::basis(m.coeffs().unit_index()), x.cap));
        let tb = tau(&CoalgElem::word(m, b.clone(), DgaElem::basis(m.coeffs().unit_index()), x.cap));
        for (la, ca) in ta.terms() {
            for (lb, cb) in tb.terms() {
                let r = ca.coeff(m.coeffs().unit_index()) * cb.coeff(m.coeffs().unit_index());
                proj(la, lb, &c.scale(&r), &mut lhs);
            }
        }
    }
    let mut rhs = CoalgTensor::new(m);
    for (a, b, c) in tau(x).deconcat() {
        proj(&a, &b, &c, &mut rhs);
    }
    lhs == rhs && lhs == x.comult()
}

/// Whether a Taylor sequence describes a coderivation (degree +1) or a
/// coalgebra morphism (degree 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Intent {
    Coderivation,
    Morphism,
}

impl Intent {
    pub fn degree(self) -> i32 {
        match self {
            Intent::Coderivation => 1,
            Intent::Morphism => 0,
        }
    }
}

/// One Taylor coefficient: canonical word of length `j` -> element of `S^1`.
pub type TaylorTable = BTreeMap<Word, CoalgElem>;

/// Taylor coefficients `d^1, ..., d^J` of a coderivation or morphism.
#[derive(Clone, Debug)]
pub struct TaylorSeq {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    intent: Intent,
    maps: Vec<TaylorTable>,
}

impl TaylorSeq {
    /// Validates that every entry is a word of the right length mapping into
    /// `S^1` with the degree dictated by `intent`.
    pub fn new(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        intent: Intent,
        maps: Vec<TaylorTable>,
    ) -> Result<Self> {
        if source.coeffs() != target.coeffs() {
            return Err(Error::Mismatch("source and target coefficient algebras differ".into()));
        }
        if intent == Intent::Coderivation && !same_module(&source, &target) {
            return Err(Error::Mismatch("a coderivation maps a module to itself".into()));
        }
        let k = intent.degree();
        for (jm1, table) in maps.iter().enumerate() {
            for (w, out) in table {
                if w.len() != jm1 + 1 {
                    return Err(Error::Arity {
                        expected: jm1 + 1,
                        got: w.len(),
                    });
                }
                if source.canonicalize(&w.0).map(|(c, neg)| c == *w && !neg) != Some(true) {
                    return Err(Error::Structural(format!(
                        "Taylor table key {} is not a canonical word",
                        source.format_word(w)
                    )));
                }
                if out.terms.keys().any(|y| y.len() != 1) {
                    return Err(Error::Degree(format!(
                        "Taylor coefficient on {} leaves S^1",
                        source.format_word(w)
                    )));
                }
                let want = source.word_degree(w) + k;
                if out.degrees().iter().any(|&d| d != want) {
                    return Err(Error::Degree(format!(
                        "Taylor coefficient on {} has degree {:?}, expected {}",
                        source.format_word(w),
                        out.degrees(),
                        want
                    )));
                }
            }
        }
        let mut maps = maps;
        while maps.last().is_some_and(|t| t.values().all(CoalgElem::is_zero)) {
            maps.pop();
        }
        for t in maps.iter_mut() {
            t.retain(|_, v| !v.is_zero());
        }
        Ok(TaylorSeq {
            source,
            target,
            intent,
            maps,
        })
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn intent(&self) -> Intent {
        self.intent
    }

    /// Highest nonzero Taylor arity.
    pub fn max_arity(&self) -> usize {
        self.maps.len()
    }

    pub fn table(&self, j: usize) -> Option<&TaylorTable> {
        if j == 0 {
            return None;
        }
        self.maps.get(j - 1)
    }

    pub fn tables(&self) -> &[TaylorTable] {
        &self.maps
    }

    /// `d^j` on a canonical word with coefficient 1.
    pub fn eval_word(&self, w: &Word, cap: usize) -> CoalgElem {
        match self.table(w.len()).and_then(|t| t.get(w)) {
            Some(v) => v.clone().with_cap(cap.max(1)).expect("order 1"),
            None => CoalgElem::zero(&self.target, cap),
        }
    }

    /// `d^j` on an element of `S^j` with coefficients:
    /// `d^j(c w) = (-1)^{k|c|} c d^j(w)`.
    pub fn apply(&self, j: usize, x: &CoalgElem) -> CoalgElem {
        let cd = self.source.coeffs();
        let k = self.intent.degree();
        let mut out = CoalgElem::zero(&self.target, x.cap);
        for (w, c) in x.terms() {
            if w.len() != j {
                continue;
            }
            let v = self.eval_word(w, x.cap);
            if v.is_zero() {
                continue;
            }
            for (b, r) in c.iter() {
                let s = Rational::sign((k * cd.degree(*b)).rem_euclid(2) == 1);
                out = out.add(&v.coeff_mul(&DgaElem::basis(*b)).scale(&(r * &s)));
            }
        }
        out
    }

    /// Applies `f(j, word, value)` to every table entry.
    pub fn map_tables(&self, f: impl Fn(usize, &Word, &CoalgElem) -> CoalgElem) -> Result<TaylorSeq> {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(jm1, t)| t.iter().map(|(w, v)| (w.clone(), f(jm1 + 1, w, v))).collect())
            .collect();
        TaylorSeq::new(self.source.clone(), self.target.clone(), self.intent, maps)
    }

    /// Same coefficients with an entry replaced (for negative tests).
    pub fn with_entry(&self, w: Word, v: CoalgElem) -> Result<TaylorSeq> {
        let mut maps = self.maps.clone();
        while maps.len() < w.len() {
            maps.push(TaylorTable::new());
        }
        maps[w.len() - 1].insert(w, v);
        TaylorSeq::new(self.source.clone(), self.target.clone(), self.intent, maps)
    }
}

/// A linear operator between symmetric coalgebras, evaluated lazily on words.
#[derive(Clone, Debug)]
pub enum CoalgOp {
    /// The coderivation with the given Taylor coefficients.
    Coder(Arc<TaylorSeq>),
    /// The coalgebra morphism with the given Taylor coefficients.
    Morph(Arc<TaylorSeq>),
    Identity(Arc<GradedModule>),
    /// `outer o inner`.
    Compose(Box<CoalgOp>, Box<CoalgOp>),
    /// `x -> left * op(right * x)`.
    Conjugate {
        left: CoalgElem,
        op: Box<CoalgOp>,
        right: CoalgElem,
    },
    /// An explicit table on words (values may have any order).
    Table {
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        degree: i32,
        table: BTreeMap<Word, CoalgElem>,
    },
}

impl CoalgOp {
    pub fn coder(t: TaylorSeq) -> Result<Self> {
        if t.intent != Intent::Coderivation {
            return Err(Error::Mismatch("Taylor sequence is not a coderivation".into()));
        }
        Ok(CoalgOp::Coder(Arc::new(t)))
    }

    pub fn morph(t: TaylorSeq) -> Result<Self> {
        if t.intent != Intent::Morphism {
            return Err(Error::Mismatch("Taylor sequence is not a morphism".into()));
        }
        Ok(CoalgOp::Morph(Arc::new(t)))
    }

    pub fn compose(outer: &CoalgOp, inner: &CoalgOp) -> Result<Self> {
        if !same_module(inner.target(), outer.source()) {
            return Err(Error::Mismatch("composition of incompatible operators".into()));
        }
        Ok(CoalgOp::Compose(Box::new(outer.clone()), Box::new(inner.clone())))
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        match self {
            CoalgOp::Coder(t) | CoalgOp::Morph(t) => &t.source,
            CoalgOp::Identity(m) => m,
            CoalgOp::Compose(_, inner) => inner.source(),
            CoalgOp::Conjugate { op, .. } => op.source(),
            CoalgOp::Table { source, .. } => source,
        }
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        match self {
            CoalgOp::Coder(t) | CoalgOp::Morph(t) => &t.target,
            CoalgOp::Identity(m) => m,
            CoalgOp::Compose(outer, _) => outer.target(),
            CoalgOp::Conjugate { op, .. } => op.target(),
            CoalgOp::Table { target, .. } => target,
        }
    }

    pub fn degree(&self) -> i32 {
        match self {
            CoalgOp::Coder(_) => 1,
            CoalgOp::Morph(_) | CoalgOp::Identity(_) => 0,
            CoalgOp::Compose(a, b) => a.degree() + b.degree(),
            CoalgOp::Conjugate { op, .. } => op.degree(),
            CoalgOp::Table { degree, .. } => *degree,
        }
    }

    /// Value on a canonical word with coefficient 1.
    pub fn apply_word(&self, w: &Word, cap: usize) -> Result<CoalgElem> {
        match self {
            CoalgOp::Coder(t) => Ok(coder_on_word(t, w, cap)),
            CoalgOp::Morph(t) => morph_on_word(t, w, cap),
            CoalgOp::Identity(m) => Ok(CoalgElem::word(m, w.clone(), m.coeffs().one(), cap)),
            CoalgOp::Compose(outer, inner) => outer.apply(&inner.apply_word(w, cap)?),
            CoalgOp::Conjugate { left, op, right } => {
                let m = op.source();
                let x = right.mul(&CoalgElem::word(m, w.clone(), m.coeffs().one(), cap))?;
                let y = op.apply(&x)?;
                left.mul(&y)
            }
            CoalgOp::Table { target, table, .. } => Ok(table
                .get(w)
                .cloned()
                .unwrap_or_else(|| CoalgElem::zero(target, cap))),
        }
    }

    /// C-linear extension: `F(c w) = (-1)^{k|c|} c F(w)`.
    pub fn apply(&self, x: &CoalgElem) -> Result<CoalgElem> {
        let cd = self.source().coeffs().clone();
        let k = self.degree();
        let mut out = CoalgElem::zero(self.target(), x.cap);
        for (w, c) in x.terms() {
            let v = self.apply_word(w, x.cap)?;
            if v.is_zero() {
                continue;
            }
            for (b, r) in c.iter() {
                let s = Rational::sign((k * cd.degree(*b)).rem_euclid(2) == 1);
                out = out.add(&v.coeff_mul(&DgaElem::basis(*b)).scale(&(r * &s)));
            }
        }
        Ok(out)
    }

    /// The `j`-th Taylor coefficient: `S^1` part of the values on words of
    /// length `j`.
    pub fn taylor_of(&self, j: usize, cap: usize) -> Result<TaylorTable> {
        let mut t = TaylorTable::new();
        for w in self.source().words(j) {
            let v = self.apply_word(&w, cap)?.ln();
            if !v.is_zero() {
                t.insert(w, v);
            }
        }
        Ok(t)
    }

    /// Checks `Delta Q = (Q (x) 1 + 1 (x) Q) Delta` on all words up to `cap`.
    pub fn check_coderivation(&self, cap: usize) -> Result<CheckReport> {
        let m = self.source().clone();
        let k = self.degree();
        let words = m.words_up_to(cap);
        for w in &words {
            let x = CoalgElem::word(&m, w.clone(), m.coeffs().one(), cap);
            let lhs = self.apply(&x)?.comult();
            let mut rhs = CoalgTensor::new(&m);
            for ((a, b), c) in x.comult().terms() {
                let ea = CoalgElem::word(&m, a.clone(), c.clone(), cap);
                let eb = CoalgElem::word(&m, b.clone(), m.coeffs().one(), cap);
                rhs = rhs.add(&self.apply(&ea)?.tensor(&eb));
                // 1 (x) Q passes Q over the left factor (coefficients are rational here)
                let s = Rational::sign((k * m.word_degree(a)).rem_euclid(2) == 1);
                rhs = rhs.add(&ea.scale(&s).tensor(&self.apply(&eb)?));
            }
            if lhs != rhs {
                return Ok(CheckReport::fail(m.format_word(w), words.len()));
            }
        }
        Ok(CheckReport::pass(words.len()))
    }

    /// Checks `Delta Psi = (Psi (x) Psi) Delta` and `Psi(1) = 1`.
    pub fn check_comorphism(&self, cap: usize) -> Result<CheckReport> {
        let m = self.source().clone();
        let t = self.target().clone();
        let words = m.words_up_to(cap);
        if self.apply_word(&Word::empty(), cap)? != CoalgElem::one(&t, cap) {
            return Ok(CheckReport::fail("1".into(), 1));
        }
        for w in &words {
            let x = CoalgElem::word(&m, w.clone(), m.coeffs().one(), cap);
            let lhs = self.apply(&x)?.comult();
            let mut rhs = CoalgTensor::new(&t);
            for ((a, b), c) in x.comult().terms() {
                let ea = CoalgElem::word(&m, a.clone(), c.clone(), cap);
                let eb = CoalgElem::word(&m, b.clone(), m.coeffs().one(), cap);
                rhs = rhs.add(&self.apply(&ea)?.tensor(&self.apply(&eb)?));
            }
            if lhs != rhs {
                return Ok(CheckReport::fail(m.format_word(w), words.len()));
            }
        }
        Ok(CheckReport::pass(words.len()))
    }

    /// Compares two operators on all words up to `cap`.
    pub fn agrees_with(&self, other: &CoalgOp, cap: usize) -> Result<CheckReport> {
        let m = self.source().clone();
        let words = m.words_up_to(cap);
        for w in &words {
            if self.apply_word(w, cap)? != other.apply_word(w, cap)? {
                return Ok(CheckReport::fail(m.format_word(w), words.len()));
            }
        }
        Ok(CheckReport::pass(words.len()))
    }

    /// Checks that the operator vanishes on all words up to `cap`.
    pub fn vanishes(&self, cap: usize) -> Result<CheckReport> {
        let m = self.source().clone();
        let words = m.words_up_to(cap);
        for w in &words {
            if !self.apply_word(w, cap)?.is_zero() {
                return Ok(CheckReport::fail(m.format_word(w), words.len()));
            }
        }
        Ok(CheckReport::pass(words.len()))
    }
}

/// Outcome of an exhaustive check over words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub witness: Option<String>,
    pub words_checked: usize,
}

impl CheckReport {
    pub fn pass(words_checked: usize) -> Self {
        CheckReport {
            passed: true,
            witness: None,
            words_checked,
        }
    }

    pub fn fail(witness: String, words_checked: usize) -> Self {
        CheckReport {
            passed: false,
            witness: Some(witness),
            words_checked,
        }
    }
}

/// `Q(x_1 ... x_n) = sum_S eps(S) d^{|S|}Q(x_S) x_{S^c}` over nonempty
/// position subsets `S`.
fn coder_on_word(t: &TaylorSeq, w: &Word, cap: usize) -> CoalgElem {
    let m = &t.source;
    let n = w.len();
    let jmax = t.max_arity().min(n);
    let mut out = CoalgElem::zero(m, cap);
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size > jmax {
            continue;
        }
        let sel: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let sub = Word(sel.iter().map(|&k| w.0[k]).collect());
        let v = t.eval_word(&sub, cap);
        if v.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 0).map(|k| w.0[k]).collect();
        let s = front_sign(m, &w.0, &sel);
        let rest = CoalgElem::word(m, Word(rest), m.coeffs().one(), cap);
        let term = v.mul(&rest).expect("order does not grow");
        out = out.add(&term.scale(&Rational::sign(s)));
    }
    out
}

/// `Psi(x_1 ... x_n) = sum over set partitions (blocks ordered by first
/// element) eps * d^{|B_1|}Psi(x_{B_1}) ... d^{|B_r|}Psi(x_{B_r})`.
fn morph_on_word(t: &TaylorSeq, w: &Word, cap: usize) -> Result<CoalgElem> {
    let m = &t.source;
    let target = &t.target;
    let n = w.len();
    if n == 0 {
        return Ok(CoalgElem::one(target, cap));
    }
    let jmax = t.max_arity();
    let mut out = CoalgElem::zero(target, cap);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut result: Result<()> = Ok(());
    partitions(n, jmax, &mut blocks, &mut |bs: &[Vec<usize>]| {
        if result.is_err() {
            return;
        }
        let mut prod = CoalgElem::one(target, cap);
        for b in bs {
            let sub = Word(b.iter().map(|&k| w.0[k]).collect());
            let v = t.eval_word(&sub, cap);
            if v.is_zero() {
                return;
            }
            match prod.mul(&v) {
                Ok(p) => prod = p,
                Err(e) => {
                    result = Err(e);
                    return;
                }
            }
            if prod.is_zero() {
                return;
            }
        }
        let order: Vec<usize> = bs.iter().flatten().copied().collect();
        let s = reorder_sign(m, &w.0, &order);
        out = out.add(&prod.scale(&Rational::sign(s)));
    });
    result?;
    Ok(out)
}

/// Enumerates set partitions of `0..n` into blocks of size `<= jmax`, blocks
/// listed by their least element.
fn partitions(n: usize, jmax: usize, blocks: &mut Vec<Vec<usize>>, f: &mut dyn FnMut(&[Vec<usize>])) {
    let used: Vec<usize> = blocks.iter().flatten().copied().collect();
    let free: Vec<usize> = (0..n).filter(|k| !used.contains(k)).collect();
    if free.is_empty() {
        f(blocks);
        return;
    }
    let first = free[0];
    let others = &free[1..];
    let max_extra = jmax.saturating_sub(1).min(others.len());
    for size in 0..=max_extra {
        for combo in combinations(others, size) {
            let mut b = vec![first];
            b.extend(combo);
            blocks.push(b);
            partitions(n, jmax, blocks, f);
            blocks.pop();
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::truncated_poly_dga;

    fn module(gens: &[(&str, i32)], c: CoeffDga) -> Arc<GradedModule> {
        GradedModule::from_degrees("g", gens, Arc::new(c)).unwrap()
    }

    fn k() -> CoeffDga {
        CoeffDga::base_field()
    }

    #[test]
    fn words_skip_repeated_odd() {
        // g1 in degree 1 is even after the shift, g0 in degree 0 is odd
        let m = module(&[("g0", 0), ("g1", 1)], k());
        let w2: Vec<String> = m.words(2).iter().map(|w| m.format_word(w)).collect();
        assert_eq!(w2, ["g0*g1", "g1*g1"]);
    }

    #[test]
    fn comult_examples() {
        let m = module(&[("a", 0), ("b", 0)], k());
        let one = CoalgElem::one(&m, 3);
        assert_eq!(one.comult(), one.tensor(&one));
        let a = CoalgElem::from_letters(&m, &[0], 1.into(), 3).unwrap();
        assert!(a.is_primitive());
        let b = CoalgElem::from_letters(&m, &[1], 1.into(), 3).unwrap();
        let ab = a.mul(&b).unwrap();
        assert!(!ab.is_primitive());
        // a, b odd after shift: Delta(ab) = ab(x)1 + a(x)b - b(x)a + 1(x)ab
        let expect = ab
            .tensor(&one)
            .add(&a.tensor(&b))
            .add(&b.scale(&(-1).into()).tensor(&a))
            .add(&one.tensor(&ab));
        assert_eq!(ab.comult(), expect);
        assert_eq!(b.mul(&a).unwrap(), ab.scale(&(-1).into()));
    }

    #[test]
    fn exp_truncations() {
        let c2 = truncated_poly_dga(&[0], 2).unwrap();
        let h = c2.index_of("hbar").unwrap();
        let m = module(&[("g", 1)], c2);
        let w = CoalgElem::letter(&m, 0, DgaElem::basis(h), 4);
        let e = w.exp().unwrap();
        assert_eq!(e, CoalgElem::one(&m, 4).add(&w));
        assert!(e.is_grouplike());

        let c3 = truncated_poly_dga(&[0], 3).unwrap();
        let (h, h2) = (c3.index_of("hbar").unwrap(), c3.index_of("hbar^2").unwrap());
        let m = module(&[("g", 1)], c3);
        let w = CoalgElem::letter(&m, 0, DgaElem::basis(h), 4);
        let e = w.exp().unwrap();
        let sq = CoalgElem::word(&m, Word(vec![0, 0]), DgaElem::term(h2, Rational::new(1, 2)), 4);
        assert_eq!(e, CoalgElem::one(&m, 4).add(&w).add(&sq));
        assert!(e.is_grouplike());
        assert_eq!(e.ln(), w);
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let m = module(&[("g", 1)], k());
        let w = CoalgElem::from_letters(&m, &[0], 1.into(), 4).unwrap();
        assert_eq!(w.exp(), Err(Error::NotNilpotent));
    }

    #[test]
    fn cap_is_enforced() {
        let m = module(&[("g", 1)], k());
        let w = CoalgElem::from_letters(&m, &[0], 1.into(), 2).unwrap();
        assert!(matches!(w.pow(3), Err(Error::WordOrderExceeded { needed: 3, cap: 2 })));
    }

    fn diff_module() -> (Arc<GradedModule>, TaylorSeq) {
        // x in degree 0, y in degree 1, d x = y
        let m = module(&[("x", 0), ("y", 1)], k());
        let mut t1 = TaylorTable::new();
        t1.insert(Word(vec![0]), CoalgElem::from_letters(&m, &[1], 1.into(), 1).unwrap());
        let t = TaylorSeq::new(m.clone(), m.clone(), Intent::Coderivation, vec![t1]).unwrap();
        (m, t)
    }

    #[test]
    fn coderivation_from_differential() {
        let (m, t) = diff_module();
        let q = CoalgOp::coder(t).unwrap();
        assert!(q.check_coderivation(4).unwrap().passed);
        assert!(q.apply_word(&Word::empty(), 4).unwrap().is_zero());
        let qq = CoalgOp::compose(&q, &q).unwrap();
        assert!(qq.vanishes(4).unwrap().passed);
        // Q(x y) = y y
        let v = q.apply_word(&Word(vec![0, 1]), 4).unwrap();
        assert_eq!(v, CoalgElem::from_letters(&m, &[1, 1], 1.into(), 4).unwrap());
        assert_eq!(q.taylor_of(1, 4).unwrap(), q_table(&q));
    }

    fn q_table(q: &CoalgOp) -> TaylorTable {
        match q {
            CoalgOp::Coder(t) => t.table(1).unwrap().clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn degree_validation() {
        let m = module(&[("x", 0), ("y", 1)], k());
        let mut t1 = TaylorTable::new();
        t1.insert(Word(vec![0]), CoalgElem::from_letters(&m, &[0], 1.into(), 1).unwrap());
        assert!(matches!(
            TaylorSeq::new(m.clone(), m.clone(), Intent::Coderivation, vec![t1]),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn identity_morphism() {
        let m = module(&[("x", 0), ("y", 1)], k());
        let mut t1 = TaylorTable::new();
        for i in 0..2 {
            t1.insert(Word(vec![i]), CoalgElem::from_letters(&m, &[i], 1.into(), 1).unwrap());
        }
        let t = TaylorSeq::new(m.clone(), m.clone(), Intent::Morphism, vec![t1]).unwrap();
        let psi = CoalgOp::morph(t).unwrap();
        assert!(psi.check_comorphism(4).unwrap().passed);
        assert!(psi.agrees_with(&CoalgOp::Identity(m.clone()), 4).unwrap().passed);
        assert!(psi.taylor_of(2, 4).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip_with_coefficients() {
        let c3 = truncated_poly_dga(&[0], 3).unwrap();
        let m = module(&[("g1", 1)], c3);
        let entries = vec![WordJson {
            coeff: Rational::new(1, 2),
            word: vec!["hbar.g1".into(), "hbar.g1".into()],
        }];
        let e = CoalgElem::from_json(&m, &entries, 4).unwrap();
        let js = e.to_json();
        assert_eq!(js.len(), 1);
        assert_eq!(js[0].word, ["hbar^2.g1", "g1"]);
        assert_eq!(CoalgElem::from_json(&m, &js, 4).unwrap(), e);
    }

    #[test]
    fn tau_on_two_letters() {
        let m = module(&[("a", 0), ("b", 0), ("c", 1)], k());
        let ab = CoalgElem::from_letters(&m, &[0, 1], 1.into(), 2).unwrap();
        let t: Vec<(Vec<usize>, Rational)> = tau(&ab).terms().map(|(w, c)| (w.clone(), c.coeff(0))).collect();
        // a, b odd in g[1]: tau(ab) = a(*)b - b(*)a
        assert_eq!(t, [(vec![0, 1], 1.into()), (vec![1, 0], (-1).into())]);
        let ac = CoalgElem::from_letters(&m, &[0, 2], 1.into(), 2).unwrap();
        assert!(tau(&ac).terms().all(|(_, c)| c.coeff(0) == 1.into()));
    }

    #[test]
    fn tau_is_a_coalgebra_isomorphism() {
        let c = Arc::new(truncated_poly_dga(&[0], 3).unwrap());
        let m = GradedModule::from_degrees("g", &[("a", 0), ("b", 1), ("c", 2)], c.clone()).unwrap();
        let h = c.index_of("hbar").unwrap();
        for w in m.words_up_to(4) {
            let x = CoalgElem::word(&m, w.clone(), DgaElem::basis(h), 4);
            assert!(tau_is_coalgebra_map(&x), "{}", m.format_word(&w));
        }
    }
}
