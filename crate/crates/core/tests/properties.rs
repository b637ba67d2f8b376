use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singleblock::fp::FpMatrix;
use singleblock::jordan::{jordan_type, tensor_jordan, JordanType};
use singleblock::levi::{g2_graph_image, g2_transport_matches, level_decomposition, smith_top_factor};
use singleblock::root_system::{build_root_system, Family, Weight};
use singleblock::sl2::{ext_digit_test, DigitVector};
use singleblock::unipotent::{g2_class_representative, g2_irreducible, jordan_on_rep, ClassLabel, UnipotentRepresentative};
use singleblock::weyl::{
    construct_weyl_module, freudenthal_multiplicities, frobenius_twist, head_multiplicities,
    root_element, weyl_dimension,
};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_symmetric_and_conserves_dimension(m in 1usize..10, n in 1usize..10, p in prime()) {
        let t = tensor_jordan(m, n, p).unwrap();
        prop_assert_eq!(t.total(), m * n);
        prop_assert_eq!(t, tensor_jordan(n, m, p).unwrap());
    }

    #[test]
    fn tensor_with_free_factor_is_free(k in 1u32..4, n in 1usize..28, p in prime()) {
        // J_(p^k) is free over the cyclic group of order p^k generated by
        // J_m (x) J_n whenever n <= p^k.
        let m = p.pow(k) as usize;
        prop_assume!(m <= 27 && n <= m);
        let t = tensor_jordan(m, n, p).unwrap();
        prop_assert_eq!(t, JordanType::new(vec![m; n]));
    }

    #[test]
    fn rank_sequence_is_convex_and_invertible(blocks in prop::collection::vec(1usize..9, 1..8)) {
        let t = JordanType::new(blocks);
        let r = t.rank_sequence();
        prop_assert_eq!(*r.last().unwrap(), 0);
        for k in 1..r.len() {
            prop_assert!(r[k] < r[k - 1]);
        }
        for k in 1..r.len() - 1 {
            prop_assert!(r[k - 1] - r[k] >= r[k] - r[k + 1]);
        }
        prop_assert_eq!(JordanType::from_rank_sequence(&r).unwrap(), t.clone());
        prop_assert_eq!(t.to_string().parse::<JordanType>().unwrap(), t);
    }

    #[test]
    fn digits_reconstruct(a in 0u64..100_000, p in prime()) {
        let d = DigitVector::new(a, p).unwrap();
        prop_assert_eq!(d.value(), a);
        prop_assert!(d.digits.iter().all(|&x| x < p));
        prop_assert!(d.digits.last().is_none_or(|&x| x > 0));
    }

    #[test]
    fn digit_test_is_symmetric(a in 0u64..400, b in 0u64..400, p in prime()) {
        prop_assume!(a != b);
        prop_assert_eq!(ext_digit_test(a, b, p).unwrap(), ext_digit_test(b, a, p).unwrap());
    }

    #[test]
    fn orbit_sizes_match_enumeration(ty in 0usize..4, c in prop::collection::vec(0i64..3, 4), s in prop::collection::vec(0usize..4, 0..6)) {
        let (family, rank) = [(Family::A, 3), (Family::B, 3), (Family::G, 2), (Family::F, 4)][ty];
        let datum = build_root_system(family, rank).unwrap();
        let mut w = Weight(c[..rank].to_vec());
        for i in s {
            w = datum.reflect(&w, i % rank);
        }
        let dom = datum.dominant_representative(&w);
        prop_assert!(dom.is_dominant());
        prop_assert_eq!(datum.weyl_orbit(&w).len() as u64, datum.orbit_size(&dom).unwrap());
        prop_assert!(datum.weyl_orbit(&dom).contains(&w));
    }

    #[test]
    fn freudenthal_sums_to_weyl_dimension(ty in 0usize..4, a in 0i64..4, b in 0i64..4) {
        let (family, rank) = [(Family::A, 2), (Family::B, 2), (Family::C, 2), (Family::G, 2)][ty];
        let datum = build_root_system(family, rank).unwrap();
        let w = Weight(vec![a, b]);
        let t = freudenthal_multiplicities(&datum, &w).unwrap();
        prop_assert_eq!(t.total_dimension().unwrap(), weyl_dimension(&datum, &w).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_parameter_law(p in prop::sample::select(vec![2u64, 3, 5, 7]), lam in 0usize..3, root in 0usize..12, s in 0u64..50, t in 0u64..50) {
        let lambda = [Weight(vec![1, 0]), Weight(vec![0, 1]), Weight(vec![1, 1])][lam].clone();
        let m = g2_irreducible(&lambda, p, 200).unwrap();
        let pos = m.datum().positive_roots()[root % 6].clone();
        let beta: Vec<i64> = if root < 6 { pos } else { pos.iter().map(|c| -c).collect() };
        let lhs = root_element(&m, &beta, s).unwrap().mul(&root_element(&m, &beta, t).unwrap());
        prop_assert_eq!(lhs, root_element(&m, &beta, s + t).unwrap());
    }

    #[test]
    fn twist_preserves_jordan_types(p in prop::sample::select(vec![2u64, 3, 5, 7]), lam in 0usize..3) {
        let lambda = [Weight(vec![1, 0]), Weight(vec![0, 1]), Weight(vec![2, 0])][lam].clone();
        let m = g2_irreducible(&lambda, p, 200).unwrap();
        let tw = frobenius_twist(&m);
        let mut labels = vec![ClassLabel::Regular];
        if p == 2 { labels.push(ClassLabel::G2a1); }
        if p == 3 { labels.push(ClassLabel::A1_3); }
        for label in labels {
            let r = g2_class_representative(label, p).unwrap();
            prop_assert_eq!(jordan_on_rep(&r, &m).unwrap(), jordan_on_rep(&r, &tw).unwrap());
        }
    }

    #[test]
    fn jordan_type_is_conjugation_invariant(p in prop::sample::select(vec![2u64, 3, 5, 7]), seed in any::<u64>()) {
        let m = g2_irreducible(&Weight(vec![1, 0]), p, 200).unwrap();
        let r = g2_class_representative(ClassLabel::Regular, p).unwrap();
        let u = r.matrix(&m).unwrap();
        let want = jordan_type(&u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let n = u.rows();
            let q = loop {
                let mut q = FpMatrix::zeros(p as u32, n, n);
                for i in 0..n {
                    for j in 0..n {
                        q.set(i, j, rng.gen_range(0..p as u32));
                    }
                }
                if let Some(qi) = q.inverse() { break (q, qi); }
            };
            prop_assert_eq!(jordan_type(&q.0.mul(&u).mul(&q.1)).unwrap(), want.clone());
        }
        // Other non-zero parameters on both negative simple roots give a
        // conjugate element.
        let s = rng.gen_range(1..p);
        let t = rng.gen_range(1..p);
        let other = UnipotentRepresentative::custom(vec![(vec![-1, 0], s), (vec![0, -1], t)], p).unwrap();
        prop_assert_eq!(jordan_on_rep(&other, &m).unwrap(), want);
    }
}

#[test]
fn levels_partition_g2_characters() {
    let g2 = build_root_system(Family::G, 2).unwrap();
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            let lambda = Weight(vec![a, b]);
            let table = freudenthal_multiplicities(&g2, &lambda).unwrap();
            let dim = weyl_dimension(&g2, &lambda).unwrap();
            for node in 0..2 {
                let r = level_decomposition(&table, node).unwrap();
                assert_eq!(dim, r.accounted_dimension().unwrap().into(), "{lambda} node {node}");
                let smith = smith_top_factor(&g2, &lambda, r.levi_nodes()).unwrap();
                let top = r.level(0).unwrap().iter().next_back().unwrap();
                assert_eq!(top, (&smith, &1));
            }
        }
    }
}

#[test]
fn levels_partition_e6_and_f4_fundamentals() {
    for (family, rank) in [(Family::E, 6), (Family::F, 4)] {
        let datum = build_root_system(family, rank).unwrap();
        for i in 0..rank {
            let lambda = Weight::fundamental(rank, i);
            let table = freudenthal_multiplicities(&datum, &lambda).unwrap();
            let dim = weyl_dimension(&datum, &lambda).unwrap();
            for node in 0..rank {
                let r = level_decomposition(&table, node).unwrap();
                assert_eq!(dim, r.accounted_dimension().unwrap().into(), "{} w{} node {}", datum.label(), i + 1, node + 1);
                let smith = smith_top_factor(&datum, &lambda, r.levi_nodes()).unwrap();
                assert_eq!(r.level(0).unwrap().get(&smith), Some(&1));
            }
        }
    }
}

#[test]
fn graph_automorphism_transports_levels_in_characteristic_3() {
    let g2 = build_root_system(Family::G, 2).unwrap();
    for a in 1..=2i64 {
        let lambda = Weight(vec![a, 0]);
        let image = g2_graph_image(&lambda);
        assert_eq!(image, Weight(vec![0, a]));
        let t1 = head_multiplicities(&construct_weyl_module(&g2, &lambda).unwrap(), 3).unwrap();
        let t2 = head_multiplicities(&construct_weyl_module(&g2, &image).unwrap(), 3).unwrap();
        let r1 = level_decomposition(&t1, 1).unwrap();
        let r2 = level_decomposition(&t2, 0).unwrap();
        assert!(g2_transport_matches(&r1, &r2), "a = {a}");
        assert_eq!(t1.total_dimension().unwrap(), t2.total_dimension().unwrap());
    }
}
