//! Independent oracles for computed values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singleblock::fp::FpMatrix;
use singleblock::jordan::{jordan_type, JordanType};
use singleblock::root_system::{build_root_system, Family, Weight};
use singleblock::sl2::{sl2_module, standard_unipotent, Sl2Kind};
use singleblock::unipotent::{g2_class_representative, g2_irreducible, jordan_on_rep, ClassLabel};
use singleblock::weyl::{construct_weyl_module, contravariant_gram, weyl_dimension};

fn random_invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> (FpMatrix, FpMatrix) {
    loop {
        let mut m = FpMatrix::zeros(p, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.gen_range(0..p));
            }
        }
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

fn block_diagonal(p: u32, blocks: &[usize]) -> FpMatrix {
    let n = blocks.iter().sum();
    let mut m = FpMatrix::identity(p, n);
    let mut off = 0;
    for &b in blocks {
        for i in 0..b.saturating_sub(1) {
            m.set(off + i, off + i + 1, 1);
        }
        off += b;
    }
    m
}

/// Block counts from kernel dimensions of powers of `u - 1`.
fn kernel_chain_type(u: &FpMatrix) -> JordanType {
    let n = u.rows();
    let nil = u.sub_identity();
    let mut kernels = vec![0usize];
    let mut power = FpMatrix::identity(u.prime(), n);
    while *kernels.last().unwrap() < n {
        power = power.mul(&nil);
        kernels.push(power.kernel().len());
    }
    // at least k blocks of size >= j: ker_j - ker_(j-1)
    let at_least: Vec<usize> = (1..kernels.len()).map(|j| kernels[j] - kernels[j - 1]).collect();
    let mut blocks = Vec::new();
    for j in 0..at_least.len() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j + 1, at_least[j] - next));
    }
    JordanType::new(blocks)
}

#[test]
fn jordan_type_matches_kernel_chain_on_random_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..100 {
        let p = [2u32, 3, 5, 7][trial % 4];
        let mut blocks = Vec::new();
        let target = rng.gen_range(1..=30);
        while blocks.iter().sum::<usize>() < target {
            let left = target - blocks.iter().sum::<usize>();
            blocks.push(rng.gen_range(1..=left.min(9)));
        }
        let known = JordanType::new(blocks.clone());
        let j = block_diagonal(p, &blocks);
        let (q, qi) = random_invertible(&mut rng, p, j.rows());
        let u = q.mul(&j).mul(&qi);
        assert_eq!(jordan_type(&u).unwrap(), known, "p={p} blocks {blocks:?}");
        assert_eq!(kernel_chain_type(&u), known);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `u = [[1,1],[0,1]]` on degree-`a` polynomials: `x -> x`, `y -> x + y`.
fn symmetric_power_unipotent(a: usize, p: u32) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, a + 1, a + 1);
    // basis x^i y^(a-i); y^(a-i) -> sum_j C(a-i, j) x^j y^(a-i-j)
    for i in 0..=a {
        for j in 0..=(a - i) {
            let c = (binomial((a - i) as u64, j as u64) % p as u64) as u32;
            m.set(i + j, i, c);
        }
    }
    m
}

#[test]
fn sym4_oracle_for_l4_at_5() {
    let m = sl2_module(4, 5, Sl2Kind::Irreducible, 200).unwrap();
    let ours = jordan_type(&standard_unipotent(&m).unwrap()).unwrap();
    let oracle = jordan_type(&symmetric_power_unipotent(4, 5)).unwrap();
    assert_eq!(ours, oracle);
    assert_eq!(ours.to_string(), "5");
}

#[test]
fn weyl_modules_of_sl2_match_symmetric_powers() {
    // V(a) mod p is the dual of Sym^a; the Jordan type of u agrees.
    for p in [2u32, 3, 5, 7] {
        for a in 0..15usize {
            let m = sl2_module(a as u64, p as u64, Sl2Kind::Weyl, 200).unwrap();
            let ours = jordan_type(&standard_unipotent(&m).unwrap()).unwrap();
            let oracle = jordan_type(&symmetric_power_unipotent(a, p)).unwrap();
            assert_eq!(ours, oracle, "a={a} p={p}");
        }
    }
}

#[test]
fn a_p_plus_one_has_a_block_of_size_three() {
    for p in [3u64, 5, 7, 11] {
        let m = sl2_module(p + 1, p, Sl2Kind::Irreducible, 200).unwrap();
        assert_eq!(m.dim(), 4);
        let t = jordan_type(&standard_unipotent(&m).unwrap()).unwrap();
        assert_eq!(t.to_string(), "3,1", "p={p}");
    }
}

#[test]
fn regular_element_on_small_g2_modules() {
    for p in [3u64, 5, 7] {
        let r = g2_class_representative(ClassLabel::Regular, p).unwrap();
        let t1 = jordan_on_rep(&r, &g2_irreducible(&Weight(vec![1, 0]), p, 200).unwrap()).unwrap();
        assert_eq!(t1.to_string(), "7", "p={p}");
    }
    // The graph automorphism in characteristic 3 exchanges L(w1) and L(w2).
    let r = g2_class_representative(ClassLabel::Regular, 3).unwrap();
    let l2 = g2_irreducible(&Weight(vec![0, 1]), 3, 200).unwrap();
    assert_eq!(l2.dim(), 7);
    assert_eq!(jordan_on_rep(&r, &l2).unwrap().to_string(), "7");
    let r5 = g2_class_representative(ClassLabel::Regular, 5).unwrap();
    let t = jordan_on_rep(&r5, &g2_irreducible(&Weight(vec![0, 1]), 5, 200).unwrap()).unwrap();
    assert!(t.num_nontrivial() >= 2);
}

#[test]
fn gram_determinants_of_sl2_weyl_modules_are_binomials() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    for a in 0..10i64 {
        let rep = construct_weyl_module(&a1, &Weight(vec![a])).unwrap();
        let dets: Vec<String> = contravariant_gram(&rep).iter().map(|g| g.determinant.to_string()).collect();
        let want: Vec<String> = (0..=a as u64).map(|k| binomial(a as u64, k).to_string()).collect();
        assert_eq!(dets, want);
    }
}

#[test]
fn weyl_dimensions_against_closed_forms() {
    // dim V(a w1 + b w2) for A2 is (a+1)(b+1)(a+b+2)/2.
    let a2 = build_root_system(Family::A, 2).unwrap();
    for a in 0..6i64 {
        for b in 0..6i64 {
            let d = weyl_dimension(&a2, &Weight(vec![a, b])).unwrap();
            assert_eq!(d, (((a + 1) * (b + 1) * (a + b + 2) / 2) as u64).into());
        }
    }
    let e8 = build_root_system(Family::E, 8).unwrap();
    let adj = weyl_dimension(&e8, &Weight::fundamental(8, 7)).unwrap();
    assert_eq!(adj, 248u32.into());
    let e7 = build_root_system(Family::E, 7).unwrap();
    assert_eq!(weyl_dimension(&e7, &Weight::fundamental(7, 6)).unwrap(), 56u32.into());
}
