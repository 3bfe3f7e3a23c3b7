use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use dglie_core::coalg::{CoalgOp, Intent, TaylorSeq, Word};
use dglie_core::dga::{truncated_poly_dga, CoeffDga};
use dglie_core::linf::identity::linf_identity_check;
use dglie_core::linf::{
    mc_residue, push_unchecked, q_from_dgla, q_of_exp, same_taylor, twist_coder, twisted_dgla_tables, LinfAlgebra,
    LinfMorphism,
};
use dglie_core::random::{random_dgla, random_dgla_with_mc, random_letter_combo, random_mc, random_taylor, rng};

fn hbar(n: usize) -> Arc<CoeffDga> {
    Arc::new(truncated_poly_dga(&[0], n).unwrap())
}

fn field() -> Arc<CoeffDga> {
    Arc::new(CoeffDga::base_field())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dgla_coderivation_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dgla(&mut r);
        let a = q_from_dgla(&g, hbar(3)).unwrap();
        prop_assert!(a.check(3).unwrap().passed);
        let op = a.op();
        prop_assert_eq!(op.degree(), 1);
        prop_assert!(op.apply_word(&Word::empty(), 3).unwrap().is_zero());
        prop_assert_eq!(q_from_dgla(&g, field()).unwrap().to_dgla().unwrap(), g);
    }

    #[test]
    fn residue_vanishes_iff_q_of_exp_does(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dgla_with_mc(&mut r);
        let c = hbar(3);
        let a = q_from_dgla(&g, c.clone()).unwrap();
        let m = a.module().clone();
        let mut candidates = vec![random_letter_combo(&m, 0, 0.5, true, &mut r)];
        if let Some(om) = random_mc(&g, &c, &mut r).unwrap() {
            prop_assert!(mc_residue(&a, &om).unwrap().is_zero());
            candidates.push(om);
        }
        for x in candidates {
            prop_assert_eq!(mc_residue(&a, &x).unwrap().is_zero(), q_of_exp(&a, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn exp_and_ln_are_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_dgla(&mut r).module_over(hbar(3)).unwrap();
        let omega = random_letter_combo(&m, 0, 0.5, true, &mut r).with_cap(4).unwrap();
        let e = omega.exp().unwrap();
        prop_assert!(e.is_grouplike() && e.is_invertible());
        prop_assert_eq!(e.ln(), omega);
        let p = random_letter_combo(&m, 0, 0.5, true, &mut r);
        prop_assert!(p.is_primitive());
    }

    #[test]
    fn morphisms_carry_exponentials_to_exponentials(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = hbar(3);
        let sm = random_dgla(&mut r).module_over(c.clone()).unwrap();
        let tm = random_dgla(&mut r).module_over(c).unwrap();
        let tay = random_taylor(&sm, &tm, Intent::Morphism, 3, 0.5, &mut r).unwrap();
        let omega = random_letter_combo(&sm, 0, 0.5, true, &mut r);
        let lhs = CoalgOp::morph(tay.clone()).unwrap().apply(&omega.clone().with_cap(3).unwrap().exp().unwrap()).unwrap();
        let rhs = push_unchecked(&tay, &omega).unwrap().with_cap(3).unwrap().exp().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// An operator is determined by its Taylor coefficients.
    #[test]
    fn taylor_coefficients_determine_the_operator(seed in any::<u64>(), morphism in any::<bool>()) {
        let mut r = rng(seed);
        let m = random_dgla(&mut r).module_over(field()).unwrap();
        let intent = if morphism { Intent::Morphism } else { Intent::Coderivation };
        let tay = random_taylor(&m, &m, intent, 3, 0.4, &mut r).unwrap();
        let build = |t: TaylorSeq| if morphism { CoalgOp::morph(t) } else { CoalgOp::coder(t) };
        let op = build(tay.clone()).unwrap();
        let tables = (1..=3).map(|j| op.taylor_of(j, 4).unwrap()).collect();
        let back = TaylorSeq::new(m.clone(), m.clone(), intent, tables).unwrap();
        prop_assert!(same_taylor(&back, &tay));
        prop_assert!(op.agrees_with(&build(back).unwrap(), 4).unwrap().passed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(15))]

    #[test]
    fn twisted_coderivation_has_the_closed_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dgla_with_mc(&mut r);
        let c = hbar(3);
        if let Some(om) = random_mc(&g, &c, &mut r).unwrap() {
            let a = q_from_dgla(&g, c).unwrap();
            let tw = twist_coder(&a, &om, false).unwrap();
            prop_assert!(tw.check(3).unwrap().passed);
            prop_assert!(same_taylor(tw.taylor(), &twisted_dgla_tables(&g, a.module(), &om).unwrap()));
        }
    }

    #[test]
    fn explicit_identity_matches_coalgebra_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dgla(&mut r);
        let h = random_dgla(&mut r);
        let a = q_from_dgla(&g, field()).unwrap();
        let b = q_from_dgla(&h, field()).unwrap();
        let tay = random_taylor(a.module(), b.module(), Intent::Morphism, 2, 0.8, &mut r).unwrap();
        let psi = LinfMorphism::new(a, b, tay).unwrap();
        let rep = linf_identity_check(&g, &h, &psi, 2).unwrap();
        prop_assert!(rep.disagreement.is_none(), "{:?}", rep.disagreement);
    }
}

#[test]
fn non_mc_elements_are_refused_without_override() {
    let mut r = rng(5);
    let g = random_dgla(&mut r);
    let a = q_from_dgla(&g, hbar(3)).unwrap();
    let m = a.module().clone();
    let x = (0..50)
        .map(|_| random_letter_combo(&m, 0, 0.8, true, &mut r))
        .find(|x| !mc_residue(&a, x).unwrap().is_zero())
        .expect("some candidate is not MC");
    assert!(twist_coder(&a, &x, false).is_err());
    assert!(twist_coder(&a, &x, true).is_ok());
}

/// Perturbing the bracket keeps `Q o Q = 0` exactly when the read-back
/// tables still satisfy the DGLA axioms. Both outcomes must occur.
#[test]
fn square_zero_iff_dgla_axioms() {
    let mut r = rng(11);
    let mut seen = [0usize; 2];
    for _ in 0..60 {
        let g = random_dgla(&mut r);
        let a = q_from_dgla(&g, field()).unwrap();
        let m = a.module().clone();
        let words = m.words(2);
        let w = words.choose(&mut r).unwrap();
        let extra = random_letter_combo(&m, m.word_degree(w) + 1, 0.4, false, &mut r);
        let v = a.taylor().eval_word(w, 2).add(&extra);
        let custom = LinfAlgebra::custom(a.taylor().with_entry(w.clone(), v).unwrap()).unwrap();
        let square_zero = custom.check(3).unwrap().passed;
        assert_eq!(square_zero, custom.to_dgla().unwrap().check().passed(), "at {}", m.format_word(w));
        seen[square_zero as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
