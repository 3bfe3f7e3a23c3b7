//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are sorted `(column, value)` lists with no explicit zeros. All
//! elimination is fraction-exact; pivots are chosen as the lowest column of
//! each reduced row, so results are deterministic for a given input order.

use std::collections::BTreeMap;

use crate::rational::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

/// Builds a sparse vector from a map, dropping zeros.
pub fn from_map(map: BTreeMap<usize, Rational>) -> SparseVec {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a + factor * b` for sorted sparse vectors.
pub fn axpy(a: &SparseVec, factor: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained reduced row-echelon basis of a subspace.
///
/// Rows are kept fully reduced against each other's pivots, so membership
/// tests and coordinates are single passes.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    /// pivot column -> row with leading 1 at that column
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        // Because rows are mutually reduced, a single sweep over pivots in
        // increasing order suffices.
        let mut idx = 0;
        while idx < cur.len() {
            let (col, coef) = (cur[idx].0, cur[idx].1.clone());
            if let Some(row) = self.rows.get(&col) {
                cur = axpy(&cur, &(-coef), row);
                // the entry at `col` is now gone; stay at the same position
            } else {
                idx += 1;
            }
        }
        cur
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let pivot = r[0].0;
        let inv = r[0].1.recip().expect("nonzero pivot");
        let r: SparseVec = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        // back-substitute into existing rows
        for row in self.rows.values_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |e| e.0) {
                let c = row[pos].1.clone();
                *row = axpy(row, &(-c), &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }
}

/// Rank of a set of sparse row vectors.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut e = EchelonBasis::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of the linear map whose *columns* are `columns` (column `j` is the
/// image of the `j`-th basis vector). Returns a basis of the kernel as sparse
/// vectors indexed by `j`.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    // Track each image together with the combination of inputs producing it.
    let mut basis: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut img = col.clone();
        let mut comb: SparseVec = vec![(j, Rational::one())];
        while let Some((lead, coef)) = img.first().cloned() {
            let Some((bimg, bcomb)) = basis.get(&lead) else {
                break;
            };
            let f = -coef;
            img = axpy(&img, &f, bimg);
            comb = axpy(&comb, &f, bcomb);
        }
        if img.is_empty() {
            kernel.push(comb);
        } else {
            let inv = img[0].1.recip().expect("nonzero");
            let img: SparseVec = img.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            let comb: SparseVec = comb.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            basis.insert(img[0].0, (img, comb));
        }
    }
    kernel
}

/// Solves `sum_j x_j * columns[j] = target`; returns one solution if any.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut basis: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        let mut img = col.clone();
        let mut comb: SparseVec = vec![(j, Rational::one())];
        while let Some((lead, coef)) = img.first().cloned() {
            match basis.get(&lead) {
                Some((bimg, bcomb)) => {
                    let f = -coef;
                    img = axpy(&img, &f, bimg);
                    comb = axpy(&comb, &f, bcomb);
                }
                None => break,
            }
        }
        if !img.is_empty() {
            let inv = img[0].1.recip().expect("nonzero");
            let img: SparseVec = img.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            let comb: SparseVec = comb.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            basis.insert(img[0].0, (img, comb));
        }
    }
    let mut rem = target.clone();
    let mut sol: SparseVec = Vec::new();
    while let Some((lead, coef)) = rem.first().cloned() {
        let (bimg, bcomb) = basis.get(&lead)?;
        rem = axpy(&rem, &(-coef.clone()), bimg);
        sol = axpy(&sol, &coef, bcomb);
    }
    Some(sol)
}

/// Inverse of a square dense matrix; `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Rational::from_int(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|&(c, x)| (c, Rational::from_int(x)))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn kernel_and_solve() {
        // columns: e0 -> (1,1), e1 -> (2,2), e2 -> (0,1)
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)]), v(&[(1, 1)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], v(&[(0, -2), (1, 1)]));
        let x = solve(&cols, &v(&[(0, 3), (1, 5)])).unwrap();
        // check the solution
        let mut acc: SparseVec = vec![];
        for (j, c) in &x {
            acc = axpy(&acc, c, &cols[*j]);
        }
        assert_eq!(acc, v(&[(0, 3), (1, 5)]));
        assert!(solve(&cols[..2], &v(&[(1, 1)])).is_none());
    }

    #[test]
    fn inverse_of_unimodular() {
        let r = |x: i64| Rational::from_int(x);
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(invert(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(&v(&[(1, 2), (3, 1)])));
        assert!(e.insert(&v(&[(1, 1)])));
        assert!(e.contains(&v(&[(3, 5)])));
        assert!(!e.contains(&v(&[(0, 1)])));
        assert!(!e.insert(&v(&[(1, 7), (3, -2)])));
    }
}
