use singleblock::jordan::{single_nontrivial_block, JordanType};
use singleblock::sl2::{
    bb1_classify, ext_digit_test, finite_summand_types, restriction_shape_check, sl2_module,
    weyl_composition_factors, Bb1Case, CompositionData, Sl2Kind,
};

fn t(s: &str) -> JordanType {
    s.parse().unwrap()
}

#[test]
fn summands_with_one_nontrivial_block_are_small() {
    // Indecomposable summands of V(a) for SL_2(p) on which x_alpha(1) has a
    // single non-trivial block have dimension at most p + 1, and contain a
    // block of size p once their dimension reaches p.
    for p in [3u64, 5, 7] {
        for a in 0..p * p {
            let m = sl2_module(a, p, Sl2Kind::Weyl, 200).unwrap();
            for s in finite_summand_types(&m, 3).unwrap() {
                if !single_nontrivial_block(&s) {
                    continue;
                }
                let dim = s.total() as u64;
                assert!(dim <= p + 1, "V({a}), p={p}: summand {s}");
                if dim >= p {
                    assert!(s.blocks().contains(&(p as usize)), "V({a}), p={p}: summand {s}");
                }
            }
        }
    }
}

#[test]
fn weyl_module_v_p_has_a_block_of_size_p() {
    for p in [3u64, 5, 7, 11] {
        assert_eq!(weyl_composition_factors(p, p).unwrap(), vec![(p, 1), (p - 2, 1)]);
        let m = sl2_module(p, p, Sl2Kind::Weyl, 200).unwrap();
        let whole = singleblock::jordan::jordan_type(
            &singleblock::sl2::standard_unipotent(&m).unwrap(),
        )
        .unwrap();
        assert_eq!(whole.total() as u64, p + 1);
        assert!(whole.blocks().contains(&(p as usize)), "p={p}: {whole}");
    }
}

#[test]
fn classification_cases() {
    let c = CompositionData::new(3, vec![4], 2).unwrap();
    assert_eq!(c.factor_dims, vec![4]);
    assert_eq!(bb1_classify(&c), Bb1Case::A);
    let c = CompositionData::new(5, vec![5, 3], 0).unwrap();
    assert_eq!(bb1_classify(&c), Bb1Case::B);
    assert_eq!(bb1_classify(&CompositionData::new(2, vec![1, 1], 0).unwrap()), Bb1Case::Impossible);
    // Two restricted non-trivial factors: never case B.
    assert_eq!(bb1_classify(&CompositionData::new(5, vec![3, 1], 0).unwrap()), Bb1Case::Impossible);
}

#[test]
fn digit_examples() {
    assert!(ext_digit_test(8, 10, 5).unwrap());
    assert!(!ext_digit_test(6, 30, 5).unwrap());
    assert!(!ext_digit_test(1, 2, 5).unwrap());
    assert!(ext_digit_test(4, 4, 5).is_err());
}

#[test]
fn shape_examples() {
    let s = restriction_shape_check(&t("5,5,3"), 5);
    assert!(s.shape_ok && !s.single_block_ok && s.m == 2 && s.d == 3);
    let s = restriction_shape_check(&t("5,1"), 5);
    assert!(s.shape_ok && s.single_block_ok && s.m == 1 && s.d <= 1);
    let s = restriction_shape_check(&t("3"), 5);
    assert!(s.shape_ok && s.single_block_ok && s.m == 0 && s.d == 3);
    assert!(!restriction_shape_check(&t("6"), 5).shape_ok);
    assert!(!restriction_shape_check(&t("3,2"), 5).shape_ok);
}

#[test]
fn trivial_modules() {
    for kind in [Sl2Kind::Weyl, Sl2Kind::Irreducible] {
        let m = sl2_module(0, 7, kind, 200).unwrap();
        assert_eq!(m.dim(), 1);
    }
}
