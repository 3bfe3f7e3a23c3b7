use proptest::prelude::*;

use dglie_core::coalg::{CoalgElem, Intent};
use dglie_core::dga::truncated_poly_dga;
use dglie_core::instance::{taylor_from_json, taylor_to_json};
use dglie_core::linf::same_taylor;
use dglie_core::parse::{parse_element, Element, Kind};
use dglie_core::random::{random_dgla, random_letter_combo, random_poly, random_polydiff, random_polyvec, random_taylor, rng};
use std::sync::Arc;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>(), n in 1usize..=3, p in -1i32..=2) {
        let mut r = rng(seed);
        let values = [
            (Kind::Poly, Element::Poly(random_poly(n, 3, 4, &mut r))),
            (Kind::PolyVec, Element::PolyVec(random_polyvec(n, p.min(n as i32 - 1), 2, 3, &mut r))),
            (Kind::PolyDiffOp, Element::PolyDiffOp(random_polydiff(n, p, 2, 2, 3, &mut r))),
        ];
        for (kind, x) in values {
            let text = x.to_string();
            let y = parse_element(&text, kind, Some(n)).unwrap();
            prop_assert_eq!(y.to_string(), text);
            prop_assert_eq!(y, x);
        }
    }

    /// Reordering and scaling terms changes the text but not the value.
    #[test]
    fn parse_then_serialize_canonicalizes(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_poly(n, 3, 4, &mut r);
        let g = random_poly(n, 3, 4, &mut r);
        let tail = f.to_string();
        let text = match tail.strip_prefix('-') {
            Some(rest) => format!("{g} - {rest}"),
            None => format!("{g} + {tail}"),
        };
        let want = g.add(&f);
        let Element::Poly(y) = parse_element(&text, Kind::Poly, Some(n)).unwrap() else { unreachable!() };
        prop_assert_eq!(&y, &want);
        let again = parse_element(&y.to_string(), Kind::Poly, Some(n)).unwrap();
        prop_assert_eq!(again.to_string(), want.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn coalgebra_json_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = Arc::new(truncated_poly_dga(&[0], 3).unwrap());
        let m = random_dgla(&mut r).module_over(c).unwrap();
        let x = random_letter_combo(&m, 0, 0.5, true, &mut r).with_cap(3).unwrap().exp().unwrap();
        prop_assert_eq!(CoalgElem::from_json(&m, &x.to_json(), 3).unwrap(), x);
    }

    #[test]
    fn taylor_json_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = Arc::new(dglie_core::CoeffDga::base_field());
        let src = random_dgla(&mut r).module_over(k.clone()).unwrap();
        let tgt = random_dgla(&mut r).module_over(k).unwrap();
        let t = random_taylor(&src, &tgt, Intent::Morphism, 3, 0.5, &mut r).unwrap();
        let back = taylor_from_json(&src, &tgt, Intent::Morphism, &taylor_to_json(&t)).unwrap();
        prop_assert!(same_taylor(&back, &t));
    }
}
