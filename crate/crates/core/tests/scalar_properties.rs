use proptest::prelude::*;

use dglie_core::dga::{dga_tensor, truncated_poly_dga, CoeffDga};
use dglie_core::random::{random_poly, rng};
use dglie_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if let Some(inv) = a.recip() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn normalization_is_idempotent(n in -1000i64..=1000, d in 1i64..=1000) {
        let x = Rational::new(n, d);
        let again: Rational = x.to_fraction_string().parse().unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(again.to_fraction_string(), x.to_fraction_string());
    }
}

#[test]
fn builders_pass_dga_check() {
    for (gens, n) in [(&[][..], 1), (&[0][..], 3), (&[1][..], 2), (&[0, 1][..], 3), (&[1, 1][..], 2), (&[0, 1, 1][..], 3), (&[2, 1][..], 2)] {
        let a = truncated_poly_dga(gens, n).unwrap();
        assert!(a.check().passed(), "{gens:?}: {:?}", a.check());
    }
    assert!(CoeffDga::base_field().check().passed());
}

/// `(A (x) B) (x) C` and `A (x) (B (x) C)` both order their basis
/// lexicographically in the factors, so the identification is by index.
#[test]
fn tensor_is_associative() {
    let algebras = [
        truncated_poly_dga(&[0], 2).unwrap(),
        truncated_poly_dga(&[1], 2).unwrap(),
        truncated_poly_dga(&[2, 1], 2).unwrap(),
    ];
    for perm in [[0, 1, 2], [1, 2, 0], [2, 1, 0]] {
        let [x, y, z] = perm.map(|k| &algebras[k]);
        let left = dga_tensor(&dga_tensor(x, y).unwrap(), z).unwrap();
        let right = dga_tensor(x, &dga_tensor(y, z).unwrap()).unwrap();
        assert!(left.check().passed() && right.check().passed());
        assert_eq!(left.dim(), right.dim());
        for i in 0..left.dim() {
            assert_eq!(left.degree(i), right.degree(i));
            assert_eq!(left.d_table()[i], right.d_table()[i]);
            for j in 0..left.dim() {
                assert_eq!(left.mul_table()[i][j], right.mul_table()[i][j], "{perm:?} at ({i}, {j})");
            }
        }
        assert_eq!(left.unit_index(), right.unit_index());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adic_order_is_additive(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_poly(n, 3, 3, &mut r);
        let g = random_poly(n, 3, 3, &mut r);
        let fg = f.mul(&g);
        match (f.adic_order(), g.adic_order()) {
            (Some(a), Some(b)) => prop_assert_eq!(fg.adic_order(), Some(a + b)),
            _ => prop_assert!(fg.is_zero()),
        }
    }

    #[test]
    fn partials_commute(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_poly(n, 4, 4, &mut r);
        for i in 1..=n {
            for j in 1..=n {
                let a = f.partial(i).unwrap().partial(j).unwrap();
                let b = f.partial(j).unwrap().partial(i).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn truncation_is_sound(seed in any::<u64>(), n in 1usize..=3, cut in 0u32..=5) {
        let mut r = rng(seed);
        let f = random_poly(n, 4, 4, &mut r);
        let g = random_poly(n, 4, 4, &mut r);
        let direct = f.mul(&g).truncate(cut);
        let staged = f.truncate(cut).mul(&g.truncate(cut)).truncate(cut);
        prop_assert_eq!(direct.forget_truncation(), staged.forget_truncation());
    }
}
