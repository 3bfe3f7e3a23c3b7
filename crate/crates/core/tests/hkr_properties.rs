use std::collections::BTreeMap;

use proptest::prelude::*;

use dglie_core::hkr::{u1, TruncationSpec};
use dglie_core::linalg::rank;
use dglie_core::random::{random_polyvec, rng};
use dglie_core::tpoly::slice_basis;
use dglie_core::PolyDiffOp;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn u1_is_a_normalized_first_order_cocycle(seed in any::<u64>(), n in 1usize..=3, p in -1i32..=2) {
        let mut r = rng(seed);
        let a = random_polyvec(n, p.min(n as i32 - 1), 3, 3, &mut r);
        let u = u1(&a);
        prop_assert!(u.hochschild_d().is_zero());
        prop_assert!(u.order() <= 1);
        prop_assert!(u.is_normalized());
    }
}

/// Coordinates of operators in the monomial basis, shared across a batch.
fn coordinates(ops: &[PolyDiffOp]) -> Vec<Vec<(usize, dglie_core::Rational)>> {
    let mut index = BTreeMap::new();
    ops.iter()
        .map(|op| {
            let mut row = BTreeMap::new();
            for (slots, f) in op.terms() {
                for (m, c) in f.terms() {
                    let next = index.len();
                    let i = *index.entry((slots.clone(), m.clone())).or_insert(next);
                    row.insert(i, c.clone());
                }
            }
            row.into_iter().collect()
        })
        .collect()
}

#[test]
fn u1_is_injective_on_low_slices() {
    for n in 1..=3 {
        for p in [-1, 0] {
            for d in 0..=3 {
                let basis = slice_basis(n, p, d);
                let images: Vec<PolyDiffOp> = basis.iter().map(u1).collect();
                assert_eq!(rank(&coordinates(&images)), basis.len(), "n = {n}, p = {p}, d = {d}");
            }
        }
    }
}

#[test]
fn truncation_slices_are_closed() {
    for n in 1..=2 {
        for deg in 0..=2 {
            for order in 1..=2 {
                let spec = TruncationSpec::new(n, deg, order, -1, 1).unwrap();
                let rep = spec.closure_check();
                assert!(rep.passed, "n = {n}, degree {deg}, order {order}: {:?}", rep.witness);
            }
        }
    }
}
