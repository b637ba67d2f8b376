//! Representations of `SL_2` in characteristic `p`: Steinberg digits,
//! extension digit patterns, composition bookkeeping and Jordan shapes of the
//! standard unipotent element.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::decompose::indecomposable_summands;
use crate::error::{Error, Result};
use crate::fp::{check_prime, FpMatrix};
use crate::jordan::{jordan_type, JordanType};
use crate::root_system::{build_root_system, Family, RootDatum, Weight};
use crate::weyl::{
    construct_weyl_module_with, irreducible_head_mod_p, reduce_mod_p, root_element,
    steinberg_product, BuildOptions, ModularModule,
};

/// Base-`p` digits, least significant first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitVector {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(a: u64, p: u64) -> Result<Self> {
        check_prime(p)?;
        let mut digits = Vec::new();
        let mut x = a;
        while x > 0 {
            digits.push(x % p);
            x /= p;
        }
        Ok(DigitVector { p, digits })
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Digit `i`, zero beyond the stored length.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Largest `r` with `p^r | n`; `n` must be positive.
pub fn p_valuation(n: u64, p: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    let mut x = n;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `dim L(a) = prod (a_i + 1)` over the base-`p` digits of `a`.
pub fn irreducible_dim(a: u64, p: u64) -> Result<u64> {
    Ok(DigitVector::new(a, p)?.digits.iter().map(|d| d + 1).product())
}

/// Weights of `L(a)` as integers (each of multiplicity one).
pub fn irreducible_weights(a: u64, p: u64) -> Result<Vec<i64>> {
    let dv = DigitVector::new(a, p)?;
    let mut weights = vec![0i64];
    let mut scale = 1i64;
    for &d in &dv.digits {
        let mut next = Vec::with_capacity(weights.len() * (d as usize + 1));
        for w in &weights {
            for j in 0..=d as i64 {
                next.push(w + scale * (d as i64 - 2 * j));
            }
        }
        weights = next;
        scale *= p as i64;
    }
    weights.sort_unstable_by(|a, b| b.cmp(a));
    Ok(weights)
}

/// Composition factors of a module with the given `SL_2` character
/// (weight -> multiplicity), found by stripping irreducible characters from
/// the top. Returns highest weights with multiplicities, highest first.
pub fn peel_characters(character: &BTreeMap<i64, u64>, p: u64) -> Result<Vec<(u64, u64)>> {
    let mut ch: BTreeMap<i64, i64> = character.iter().map(|(&w, &m)| (w, m as i64)).collect();
    let mut out: Vec<(u64, u64)> = Vec::new();
    loop {
        ch.retain(|_, m| *m != 0);
        let Some((&top, &m)) = ch.iter().next_back() else { break };
        if m < 0 || top < 0 {
            return Err(Error::Precondition(format!(
                "not the character of a module: weight {top} has multiplicity {m}"
            )));
        }
        for w in irreducible_weights(top as u64, p)? {
            *ch.entry(w).or_default() -= m;
        }
        out.push((top as u64, m as u64));
    }
    Ok(out)
}

/// Composition factors of the Weyl module `V(a)` in characteristic `p`.
pub fn weyl_composition_factors(a: u64, p: u64) -> Result<Vec<(u64, u64)>> {
    let ch: BTreeMap<i64, u64> = (0..=a).map(|j| (a as i64 - 2 * j as i64, 1)).collect();
    peel_characters(&ch, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sl2Kind {
    Weyl,
    Irreducible,
}

pub fn a1_datum() -> RootDatum {
    build_root_system(Family::A, 1).expect("A1 is a valid type")
}

/// `V(a)` reduced mod `p`, or `L(a)` built as a Steinberg tensor product of
/// twisted restricted factors.
pub fn sl2_module(a: u64, p: u64, kind: Sl2Kind, size_cap: usize) -> Result<ModularModule> {
    let pp = check_prime(p)? as u64;
    let a1 = a1_datum();
    let opts = BuildOptions {
        size_cap,
        max_depth: None,
    };
    match kind {
        Sl2Kind::Weyl => {
            let rep = construct_weyl_module_with(&a1, &Weight(vec![a as i64]), &opts)?;
            reduce_mod_p(&rep, pp)
        }
        Sl2Kind::Irreducible => {
            let dv = DigitVector::new(a, pp)?;
            let d = irreducible_dim(a, pp)?;
            if d > size_cap as u64 {
                return Err(Error::SizeCap {
                    dim: d.to_string(),
                    cap: size_cap,
                });
            }
            if dv.is_empty() {
                return ModularModule::trivial(Arc::new(a1), pp);
            }
            let mut factors = Vec::new();
            let mut twists = Vec::new();
            for (i, &digit) in dv.digits.iter().enumerate() {
                let rep = construct_weyl_module_with(&a1, &Weight(vec![digit as i64]), &opts)?;
                factors.push(irreducible_head_mod_p(&rep, pp)?);
                twists.push(i as u32);
            }
            steinberg_product(&factors, &twists)
        }
    }
}

/// The standard unipotent element `x_alpha(1)`.
pub fn standard_unipotent(module: &ModularModule) -> Result<FpMatrix> {
    root_element(module, &[1], 1)
}

/// The generators `x_alpha(1)`, `x_{-alpha}(1)` of `SL_2(p)`.
pub fn finite_group_generators(module: &ModularModule) -> Result<[FpMatrix; 2]> {
    Ok([root_element(module, &[1], 1)?, root_element(module, &[-1], 1)?])
}

/// Jordan types of `x_alpha(1)` on the indecomposable summands of the
/// restriction of `module` to `SL_2(p)`.
pub fn finite_summand_types(module: &ModularModule, seed: u64) -> Result<Vec<JordanType>> {
    let gens = finite_group_generators(module)?;
    let mut out = Vec::new();
    for basis in indecomposable_summands(&gens, seed)? {
        let u = gens[0]
            .restrict_to(&basis)
            .ok_or_else(|| Error::Internal("summand is not invariant".into()))?;
        out.push(jordan_type(&u)?);
    }
    out.sort();
    out.reverse();
    Ok(out)
}

fn digit_pattern(a: u64, b: u64, p: u64) -> bool {
    let (da, db) = (DigitVector { p, digits: digits(a, p) }, DigitVector { p, digits: digits(b, p) });
    let len = da.len().max(db.len()) + 1;
    let start = p_valuation(a + 1, p) as usize;
    (start..len).any(|k| {
        let others_agree = (0..len).all(|i| i == k || i == k + 1 || da.digit(i) == db.digit(i));
        let low = da.digit(k) + db.digit(k) + 2 == p;
        let high = da.digit(k + 1) + 1 == db.digit(k + 1) || da.digit(k + 1) == db.digit(k + 1) + 1;
        others_agree && low && high
    })
}

fn digits(a: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = a;
    while x > 0 {
        out.push(x % p);
        x /= p;
    }
    out
}

/// Necessary condition for a non-split extension between `L(a)` and `L(b)`:
/// some `k >= v_p(a + 1)` with `a_i = b_i` off `{k, k+1}`, `a_k = p - b_k - 2`
/// and `a_(k+1) = b_(k+1) +- 1`. Both orderings of the pair are tried.
pub fn ext_digit_test(a: u64, b: u64, p: u64) -> Result<bool> {
    check_prime(p)?;
    if a == b {
        return Err(Error::Precondition(format!(
            "self-extensions of L({a}) are not covered by the digit criterion"
        )));
    }
    Ok(digit_pattern(a, b, p) || digit_pattern(b, a, p))
}

/// Composition data of `M / M_0`, `M_0` the largest trivial submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionData {
    pub p: u64,
    /// Highest weights of the composition factors of `M / M_0`, descending.
    pub factor_weights: Vec<u64>,
    pub trivial_dim: u64,
    pub factor_dims: Vec<u64>,
}

impl CompositionData {
    pub fn new(p: u64, mut factor_weights: Vec<u64>, trivial_dim: u64) -> Result<Self> {
        check_prime(p)?;
        factor_weights.sort_unstable_by(|a, b| b.cmp(a));
        let factor_dims = factor_weights
            .iter()
            .map(|&a| irreducible_dim(a, p))
            .collect::<Result<_>>()?;
        Ok(CompositionData {
            p,
            factor_weights,
            trivial_dim,
            factor_dims,
        })
    }

    /// `dim M / M_0`.
    pub fn quotient_dim(&self) -> u64 {
        self.factor_dims.iter().sum()
    }

    pub fn nontrivial_factors(&self) -> Vec<u64> {
        self.factor_weights.iter().copied().filter(|&a| a > 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bb1Case {
    /// At most one non-trivial composition factor.
    A,
    /// Two non-trivial factors forming a possible extension of dimension
    /// `p + 1` or `p + 2`.
    B,
    /// No module with these factors carries a unipotent element with a single
    /// non-trivial block.
    Impossible,
}

pub fn bb1_classify(c: &CompositionData) -> Bb1Case {
    let nt = c.nontrivial_factors();
    if nt.len() <= 1 {
        return Bb1Case::A;
    }
    let p = c.p;
    let dim = c.quotient_dim();
    if p > 2 && nt.len() == 2 && p < dim && dim <= p + 2 && nt[0] >= p && nt[0] != nt[1] {
        if let Ok(true) = ext_digit_test(nt[0], nt[1], p) {
            return Bb1Case::B;
        }
    }
    Bb1Case::Impossible
}

/// Jordan shape test `m [p] + [d] + trivial blocks`, `d < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeCheck {
    /// The type is `m [p]` plus at most one non-trivial block of size `< p`
    /// plus trivial blocks.
    pub shape_ok: bool,
    pub m: usize,
    /// Size of the non-trivial block below `p`, or `min(1, #trivial)` if none.
    pub d: usize,
    /// Additionally `m <= 1`, and `m = 1` forces `d <= 1`.
    pub single_block_ok: bool,
    /// The type is exactly `m [p] + [d]`: the shape of an indecomposable
    /// module for a group with a cyclic Sylow `p`-subgroup of order `p`.
    pub indecomposable_ok: bool,
}

pub fn restriction_shape_check(t: &JordanType, p: u64) -> ShapeCheck {
    let p = p as usize;
    let blocks = t.blocks();
    let too_big = blocks.iter().any(|&b| b > p);
    let m = blocks.iter().filter(|&&b| b == p).count();
    let rest: Vec<usize> = blocks.iter().copied().filter(|&b| b < p).collect();
    let nontrivial: Vec<usize> = rest.iter().copied().filter(|&b| b > 1).collect();
    let d = nontrivial.first().copied().unwrap_or(usize::from(!rest.is_empty()));
    let shape_ok = !too_big && nontrivial.len() <= 1;
    ShapeCheck {
        shape_ok,
        m,
        d,
        single_block_ok: shape_ok && m <= 1 && (m == 0 || d <= 1),
        indecomposable_ok: !too_big && rest.len() <= 1,
    }
}

/// One grid point of an `SL_2` scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2ScanRow {
    pub p: u64,
    pub a: u64,
    pub kind: Sl2Kind,
    pub dim: usize,
    pub jordan_type: JordanType,
    /// Types on the indecomposable summands for `SL_2(p)`.
    pub summand_types: Vec<JordanType>,
    /// Every summand has the shape `m [p] + [d]`, `d < p`.
    pub shape_ok: bool,
    /// Composition factors of `V(a)` as (highest weight, multiplicity).
    pub factors: Vec<(u64, u64)>,
}

pub fn sl2_scan(primes: &[u64], a_max: u64, kind: Sl2Kind, size_cap: usize, seed: u64) -> Result<Vec<Sl2ScanRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        for a in 0..=a_max {
            let module = sl2_module(a, p, kind, size_cap)?;
            let jordan_type = jordan_type(&standard_unipotent(&module)?)?;
            let summand_types = finite_summand_types(&module, seed)?;
            let shape_ok = summand_types
                .iter()
                .all(|t| restriction_shape_check(t, p).indecomposable_ok);
            rows.push(Sl2ScanRow {
                p,
                a,
                kind,
                dim: module.dim(),
                jordan_type,
                summand_types,
                shape_ok,
                factors: weyl_composition_factors(a, p)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        let d = DigitVector::new(48, 7).unwrap();
        assert_eq!(d.digits, vec![6, 6]);
        assert_eq!(d.value(), 48);
        assert!(DigitVector::new(0, 5).unwrap().is_empty());
    }

    #[test]
    fn digit_test_examples() {
        assert!(ext_digit_test(8, 10, 5).unwrap());
        assert!(!ext_digit_test(6, 30, 5).unwrap());
        assert!(!ext_digit_test(1, 2, 5).unwrap());
        assert!(ext_digit_test(3, 3, 5).is_err());
    }

    #[test]
    fn weyl_factors() {
        // V(p) = [L(p), L(p - 2)]
        assert_eq!(weyl_composition_factors(5, 5).unwrap(), vec![(5, 1), (3, 1)]);
        assert_eq!(weyl_composition_factors(4, 5).unwrap(), vec![(4, 1)]);
    }

    #[test]
    fn classification_examples() {
        let c = CompositionData::new(3, vec![4], 2).unwrap();
        assert_eq!(bb1_classify(&c), Bb1Case::A);
        let c = CompositionData::new(5, vec![5, 3], 0).unwrap();
        assert_eq!(c.quotient_dim(), 6);
        assert_eq!(bb1_classify(&c), Bb1Case::B);
        let c = CompositionData::new(2, vec![1, 1], 0).unwrap();
        assert_eq!(bb1_classify(&c), Bb1Case::Impossible);
    }

    #[test]
    fn shapes() {
        let t = |s: &str| s.parse::<JordanType>().unwrap();
        let s = restriction_shape_check(&t("5,5,3"), 5);
        assert!(s.shape_ok && !s.single_block_ok);
        assert_eq!((s.m, s.d), (2, 3));
        let s = restriction_shape_check(&t("5,1"), 5);
        assert!(s.single_block_ok && s.m == 1 && s.d <= 1);
        let s = restriction_shape_check(&t("3"), 5);
        assert!(s.single_block_ok && s.m == 0 && s.d == 3);
    }

    #[test]
    fn modules() {
        let m = sl2_module(4, 5, Sl2Kind::Irreducible, 200).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(jordan_type(&standard_unipotent(&m).unwrap()).unwrap().to_string(), "5");
        let m = sl2_module(6, 5, Sl2Kind::Irreducible, 200).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(jordan_type(&standard_unipotent(&m).unwrap()).unwrap().to_string(), "3,1");
        let m = sl2_module(0, 3, Sl2Kind::Weyl, 200).unwrap();
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn split_restriction() {
        // L(9) = L(2) (x) L(1)^[7] restricts to SL_2(7) as L(3) + L(1).
        let m = sl2_module(9, 7, Sl2Kind::Irreducible, 200).unwrap();
        let whole = jordan_type(&standard_unipotent(&m).unwrap()).unwrap();
        assert_eq!(whole.to_string(), "4,2");
        let parts = finite_summand_types(&m, 1).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|t| restriction_shape_check(t, 7).indecomposable_ok));
    }
}
