use proptest::prelude::*;
use rand::Rng;

use dglie_core::dpoly::PolyDiffOp;
use dglie_core::hkr::u1;
use dglie_core::poly::{monomials_of_degree, Monomial};
use dglie_core::random::{random_poly, random_polydiff, random_polyvec, rng, Rng64};
use dglie_core::tpoly::PolyVec;
use dglie_core::Rational;

fn sign(k: i32) -> Rational {
    Rational::sign(k.rem_euclid(2) == 1)
}

/// Random degree in `-1..=n-1` together with a field of that degree.
fn field(n: usize, r: &mut Rng64) -> (i32, PolyVec) {
    let p = r.gen_range(-1..=n as i32 - 1);
    (p, random_polyvec(n, p, 3, 3, r))
}

/// Every slot differentiates at least once.
fn normalized_op(n: usize, p: i32, r: &mut Rng64) -> PolyDiffOp {
    let mut op = PolyDiffOp::zero(n);
    for _ in 0..2 {
        let slots: Vec<Monomial> = (0..(p + 1).max(0))
            .map(|_| {
                let ms = monomials_of_degree(n, r.gen_range(1..=2));
                ms[r.gen_range(0..ms.len())].clone()
            })
            .collect();
        op = op.add(&PolyDiffOp::term(random_poly(n, 2, 1, r), slots).unwrap());
    }
    op
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn schouten_antisymmetry(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let (p, a) = field(n, &mut r);
        let (q, b) = field(n, &mut r);
        prop_assert_eq!(a.schouten(&b), b.schouten(&a).scale(&sign(1 + p * q)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn schouten_jacobi(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let (p, a) = field(n, &mut r);
        let (q, b) = field(n, &mut r);
        let (_, c) = field(n, &mut r);
        let lhs = a.schouten(&b.schouten(&c));
        let rhs = a.schouten(&b).schouten(&c).add(&b.schouten(&a.schouten(&c)).scale(&sign(p * q)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_leibniz(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let (_, a1) = field(n, &mut r);
        let (p2, a2) = field(n, &mut r);
        let (p3, a3) = field(n, &mut r);
        let lhs = a1.wedge(&a2).schouten(&a3);
        let rhs = a1.wedge(&a2.schouten(&a3)).add(&a1.schouten(&a3).wedge(&a2).scale(&sign((p2 + 1) * p3)));
        prop_assert_eq!(lhs, rhs);
    }

    /// On vector fields and functions the bracket is the commutator of
    /// derivations, checked by acting on test functions.
    #[test]
    fn vector_fields_act_as_derivations(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let x = random_polyvec(n, 0, 2, 3, &mut r);
        let y = random_polyvec(n, 0, 2, 3, &mut r);
        let f = random_poly(n, 3, 3, &mut r);
        let xy = x.schouten(&y);
        for _ in 0..20 {
            let g = random_poly(n, 3, 3, &mut r);
            prop_assert_eq!(xy.act_on(&g), x.act_on(&y.act_on(&g)).sub(&y.act_on(&x.act_on(&g))));
        }
        prop_assert_eq!(x.schouten(&PolyVec::function(f.clone())), PolyVec::function(x.act_on(&f)));
    }

    #[test]
    fn u1_intertwines_vector_field_brackets(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let x = random_polyvec(n, 0, 2, 3, &mut r);
        let y = random_polyvec(n, 0, 2, 3, &mut r);
        prop_assert_eq!(u1(&x.schouten(&y)), u1(&x).gerstenhaber(&u1(&y)));
    }

    #[test]
    fn hochschild_squares_to_zero(seed in any::<u64>(), n in 1usize..=2, p in -1i32..=2) {
        let mut r = rng(seed);
        let a = random_polydiff(n, p, 2, 2, 3, &mut r);
        prop_assert!(a.hochschild_d().hochschild_d().is_zero());
        prop_assert_eq!(a.hochschild_d(), PolyDiffOp::mu(n).gerstenhaber(&a));
    }

    #[test]
    fn gerstenhaber_antisymmetry_and_filtration(seed in any::<u64>(), n in 1usize..=2, p in -1i32..=2, q in -1i32..=2) {
        let mut r = rng(seed);
        let a = random_polydiff(n, p, 2, 2, 2, &mut r);
        let b = random_polydiff(n, q, 2, 2, 2, &mut r);
        prop_assert_eq!(a.gerstenhaber(&b), b.gerstenhaber(&a).scale(&-sign(p * q)));
        prop_assert!(a.filtration_check(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gerstenhaber_jacobi(seed in any::<u64>(), n in 1usize..=2, ps in proptest::array::uniform3(-1i32..=2)) {
        let mut r = rng(seed);
        let [a, b, c] = ps.map(|p| random_polydiff(n, p, 2, 2, 2, &mut r));
        let lhs = a.gerstenhaber(&b.gerstenhaber(&c));
        let rhs = a.gerstenhaber(&b).gerstenhaber(&c).add(&b.gerstenhaber(&a.gerstenhaber(&c)).scale(&sign(ps[0] * ps[1])));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalized_operators_form_a_subalgebra(seed in any::<u64>(), n in 1usize..=2, p in 0i32..=1, q in 0i32..=1) {
        let mut r = rng(seed);
        let a = normalized_op(n, p, &mut r);
        let b = normalized_op(n, q, &mut r);
        prop_assert!(a.is_normalized() && b.is_normalized());
        prop_assert!(a.hochschild_d().is_normalized());
        prop_assert!(a.gerstenhaber(&b).is_normalized());
    }

    /// Bracket and differential agree with evaluation on test functions.
    #[test]
    fn gerstenhaber_matches_application(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let a = random_polydiff(n, 0, 2, 2, 2, &mut r);
        let b = random_polydiff(n, 0, 2, 2, 2, &mut r);
        let f = random_poly(n, 3, 3, &mut r);
        let ab = a.apply(&[b.apply(&[f.clone()]).unwrap()]).unwrap();
        let ba = b.apply(&[a.apply(&[f.clone()]).unwrap()]).unwrap();
        prop_assert_eq!(a.gerstenhaber(&b).apply(&[f]).unwrap(), ab.sub(&ba));
    }
}
