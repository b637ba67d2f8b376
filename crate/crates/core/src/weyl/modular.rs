//! Modules over the prime field: reductions of integral forms, irreducible
//! heads, root elements, Frobenius twists and Steinberg tensor products.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fp::{check_prime, pow_mod, reduce_bigint, FpMatrix};
use crate::linalg::ZMatrix;
use crate::root_system::{RootDatum, Weight};
use crate::weyl::character::WeightMultTable;
use crate::weyl::integral::IntegralRep;
use crate::weyl::SignedRoot;

/// A finite-dimensional module over `F_p` with a weight basis and the action
/// of the divided powers `e_beta^(k)`, `f_beta^(k)` (`k >= 1`).
#[derive(Clone, Debug)]
pub struct ModularModule {
    datum: Arc<RootDatum>,
    p: u32,
    highest: Weight,
    basis_weights: Vec<Weight>,
    ops: BTreeMap<(usize, u32), FpMatrix>,
    description: String,
}

impl ModularModule {
    /// The one-dimensional trivial module.
    pub fn trivial(datum: Arc<RootDatum>, p: u64) -> Result<Self> {
        let p = check_prime(p)?;
        let rank = datum.rank();
        Ok(ModularModule {
            datum,
            p,
            highest: Weight::zero(rank),
            basis_weights: vec![Weight::zero(rank)],
            ops: BTreeMap::new(),
            description: "trivial".into(),
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn basis_weights(&self) -> &[Weight] {
        &self.basis_weights
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// The divided power `k >= 1` of a root operator; `None` means zero.
    pub fn op(&self, root: SignedRoot, k: u32) -> Option<&FpMatrix> {
        let id = root.id(self.datum.num_positive_roots());
        self.ops.get(&(id, k))
    }

    /// Stored non-zero operators keyed by `(signed root id, k)`.
    pub fn ops(&self) -> &BTreeMap<(usize, u32), FpMatrix> {
        &self.ops
    }

    fn root_ops(&self, root: SignedRoot) -> impl Iterator<Item = (u32, &FpMatrix)> {
        let id = root.id(self.datum.num_positive_roots());
        self.ops
            .range((id, 1)..=(id, u32::MAX))
            .map(|((_, k), m)| (*k, m))
    }
}

fn block_dense(rep: &IntegralRep, root_id: usize, k: u32, p: u32) -> FpMatrix {
    let n = rep.datum().num_positive_roots();
    let dim = rep.dim();
    let offsets = rep.weight_offsets();
    let mut out = FpMatrix::zeros(p, dim, dim);
    for blk in rep.op_blocks(SignedRoot::from_id(root_id, n), k) {
        let (ro, co) = (offsets[blk.target], offsets[blk.source]);
        for r in 0..blk.matrix.rows {
            for c in 0..blk.matrix.cols {
                out.set(ro + r, co + c, reduce_bigint(blk.matrix.get(r, c), p));
            }
        }
    }
    out
}

fn reject_truncated(rep: &IntegralRep) -> Result<()> {
    if let Some(limit) = rep.depth_limit() {
        return Err(Error::Precondition(format!(
            "module of highest weight {} was built only to depth {limit}",
            rep.highest()
        )));
    }
    Ok(())
}

/// Reduction of the integral form modulo `p` (the Weyl module over `F_p`).
pub fn reduce_mod_p(rep: &IntegralRep, p: u64) -> Result<ModularModule> {
    let p = check_prime(p)?;
    reject_truncated(rep)?;
    let mut ops = BTreeMap::new();
    for &(id, k) in rep.all_ops().keys() {
        let m = block_dense(rep, id, k, p);
        if !m.is_zero() {
            ops.insert((id, k), m);
        }
    }
    Ok(ModularModule {
        datum: rep.datum().clone(),
        p,
        highest: rep.highest().clone(),
        basis_weights: rep.basis_weights(),
        ops,
        description: format!("V({}) mod {p}", rep.highest()),
    })
}

fn gram_mod_p(g: &ZMatrix, p: u32) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, g.rows, g.cols);
    for r in 0..g.rows {
        for c in 0..g.cols {
            m.set(r, c, reduce_bigint(g.get(r, c), p));
        }
    }
    m
}

/// Weight multiplicities of the irreducible head, read off the ranks of the
/// Gram matrices modulo `p`. Works on truncated builds.
pub fn head_multiplicities(rep: &IntegralRep, p: u64) -> Result<WeightMultTable> {
    let p = check_prime(p)?;
    let mut entries = BTreeMap::new();
    for (i, w) in rep.weights().iter().enumerate() {
        if w.is_dominant() {
            let r = gram_mod_p(rep.gram(i), p).rank();
            entries.insert(w.clone(), r as u64);
        }
    }
    WeightMultTable::from_dominant(
        rep.datum().clone(),
        rep.highest().clone(),
        entries,
        Some(p),
        rep.depth_limit(),
    )
}

/// Quotient data for one weight space: projection onto the complement of the
/// pivot coordinates of the radical, and the radical basis.
struct Quotient {
    keep: Vec<usize>,
    proj: FpMatrix,
    radical: Vec<Vec<u32>>,
}

fn quotient(g: &FpMatrix) -> Quotient {
    let p = g.prime();
    let m = g.rows();
    let radical = g.kernel();
    let mut rows = FpMatrix::zeros(p, radical.len(), m);
    for (i, v) in radical.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            rows.set(i, j, x);
        }
    }
    let pivots = rows.echelonize();
    let keep: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let mut proj = FpMatrix::zeros(p, keep.len(), m);
    for (q, &c) in keep.iter().enumerate() {
        proj.set(q, c, 1);
    }
    for (r, &pc) in pivots.iter().enumerate() {
        for (q, &c) in keep.iter().enumerate() {
            proj.set(q, pc, (p - rows.get(r, c)) % p);
        }
    }
    Quotient {
        keep,
        proj,
        radical,
    }
}

/// The irreducible module `L(lambda)`: the reduction mod `p` divided by the
/// radical of the contravariant form.
pub fn irreducible_head_mod_p(rep: &IntegralRep, p: u64) -> Result<ModularModule> {
    let p = check_prime(p)?;
    reject_truncated(rep)?;
    let quots: Vec<Quotient> = (0..rep.weights().len())
        .map(|i| quotient(&gram_mod_p(rep.gram(i), p)))
        .collect();
    let mut offsets = Vec::with_capacity(quots.len());
    let mut dim = 0;
    for q in &quots {
        offsets.push(dim);
        dim += q.keep.len();
    }
    let mut ops = BTreeMap::new();
    for (&(id, k), blocks) in rep.all_ops() {
        let mut out = FpMatrix::zeros(p, dim, dim);
        for blk in blocks {
            let (qs, qt) = (&quots[blk.source], &quots[blk.target]);
            let x = gram_mod_p(&blk.matrix, p);
            let px = qt.proj.mul(&x);
            for r in &qs.radical {
                if px.mul_vec(r).iter().any(|&v| v != 0) {
                    return Err(Error::Internal(format!(
                        "radical at weight {} is not stable under operator ({id}, {k})",
                        rep.weights()[blk.source]
                    )));
                }
            }
            for (c, &col) in qs.keep.iter().enumerate() {
                for r in 0..qt.keep.len() {
                    out.set(offsets[blk.target] + r, offsets[blk.source] + c, px.get(r, col));
                }
            }
        }
        if !out.is_zero() {
            ops.insert((id, k), out);
        }
    }
    let basis_weights = rep
        .weights()
        .iter()
        .zip(&quots)
        .flat_map(|(w, q)| std::iter::repeat_n(w.clone(), q.keep.len()))
        .collect();
    Ok(ModularModule {
        datum: rep.datum().clone(),
        p,
        highest: rep.highest().clone(),
        basis_weights,
        ops,
        description: format!("L({}) mod {p}", rep.highest()),
    })
}

/// Weight multiplicities of a modular module, as a W-invariant table.
pub fn modular_weight_multiplicities(module: &ModularModule) -> Result<WeightMultTable> {
    let mut counts: BTreeMap<Weight, u64> = BTreeMap::new();
    for w in &module.basis_weights {
        *counts.entry(w.clone()).or_default() += 1;
    }
    for (w, &m) in &counts {
        let d = module.datum.dominant_representative(w);
        if counts.get(&d) != Some(&m) {
            return Err(Error::CorruptTable(format!(
                "multiplicity of {w} differs from that of its conjugate {d}"
            )));
        }
    }
    let dominant = counts.into_iter().filter(|(w, _)| w.is_dominant()).collect();
    WeightMultTable::from_dominant(
        module.datum.clone(),
        module.highest.clone(),
        dominant,
        Some(module.p),
        None,
    )
}

/// `x_beta(t) = sum_k t^k e_beta^(k)` for a root in simple-root coordinates.
pub fn root_element(module: &ModularModule, root: &[i64], t: u64) -> Result<FpMatrix> {
    let sr = SignedRoot::resolve(&module.datum, root)?;
    let p = module.p;
    let t = (t % p as u64) as u32;
    let mut x = FpMatrix::identity(p, module.dim());
    for (k, m) in module.root_ops(sr) {
        // t^k with k possibly large after twisting
        let c = pow_mod(t, k, p);
        if c != 0 {
            x = x.add(&m.scale(c));
        }
    }
    Ok(x)
}

/// `x_beta(t)` on the integral form; the result is an integer matrix.
pub fn root_element_integral(rep: &IntegralRep, root: &[i64], t: i64) -> Result<ZMatrix> {
    let sr = SignedRoot::resolve(rep.datum(), root)?;
    reject_truncated(rep)?;
    let mut x = ZMatrix::identity(rep.dim());
    let tt = BigInt::from(t);
    let mut tk = BigInt::one();
    for k in 1..=rep.max_divided_power(sr) {
        tk *= &tt;
        if tk.is_zero() {
            break;
        }
        let m = rep.op_dense(sr, k);
        x = x.add(&ZMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|v| v * &tk).collect(),
        });
    }
    Ok(x)
}

/// Frobenius twist: divided powers `e^(k)` act as `e^(k/p)` when `p | k` and
/// as zero otherwise, so `x_beta(t)` acts as the untwisted `x_beta(t^p)`.
pub fn frobenius_twist(module: &ModularModule) -> ModularModule {
    let p = module.p;
    ModularModule {
        datum: module.datum.clone(),
        p,
        highest: module.highest.scale(p as i64),
        basis_weights: module
            .basis_weights
            .iter()
            .map(|w| w.scale(p as i64))
            .collect(),
        ops: module
            .ops
            .iter()
            .map(|(&(id, k), m)| ((id, k * p), m.clone()))
            .collect(),
        description: format!("({})^[{p}]", module.description),
    }
}

fn tensor(a: &ModularModule, b: &ModularModule) -> ModularModule {
    let p = a.p;
    let ida = FpMatrix::identity(p, a.dim());
    let idb = FpMatrix::identity(p, b.dim());
    let ids: BTreeSet<usize> = a.ops.keys().chain(b.ops.keys()).map(|&(id, _)| id).collect();
    let mut ops = BTreeMap::new();
    for id in ids {
        let ka: BTreeMap<u32, &FpMatrix> = a
            .ops
            .range((id, 1)..=(id, u32::MAX))
            .map(|((_, k), m)| (*k, m))
            .collect();
        let kb: BTreeMap<u32, &FpMatrix> = b
            .ops
            .range((id, 1)..=(id, u32::MAX))
            .map(|((_, k), m)| (*k, m))
            .collect();
        let mut totals: BTreeSet<u32> = BTreeSet::new();
        for &i in ka.keys().chain(std::iter::once(&0)) {
            for &j in kb.keys().chain(std::iter::once(&0)) {
                if i + j > 0 {
                    totals.insert(i + j);
                }
            }
        }
        for k in totals {
            let mut acc: Option<FpMatrix> = None;
            for i in 0..=k {
                let j = k - i;
                let ma = if i == 0 { Some(&ida) } else { ka.get(&i).copied() };
                let mb = if j == 0 { Some(&idb) } else { kb.get(&j).copied() };
                if let (Some(ma), Some(mb)) = (ma, mb) {
                    let term = ma.kron(mb);
                    acc = Some(match acc {
                        None => term,
                        Some(s) => s.add(&term),
                    });
                }
            }
            if let Some(m) = acc {
                if !m.is_zero() {
                    ops.insert((id, k), m);
                }
            }
        }
    }
    let basis_weights = a
        .basis_weights
        .iter()
        .flat_map(|x| b.basis_weights.iter().map(move |y| x.add(y)))
        .collect();
    ModularModule {
        datum: a.datum.clone(),
        p,
        highest: a.highest.add(&b.highest),
        basis_weights,
        ops,
        description: format!("{} (x) {}", a.description, b.description),
    }
}

/// `M_1^[p^t_1] (x) M_2^[p^t_2] (x) ...`, with the divided powers acting
/// through the coproduct `D e^(k) = sum_{i+j=k} e^(i) (x) e^(j)`.
pub fn steinberg_product(mods: &[ModularModule], twists: &[u32]) -> Result<ModularModule> {
    if mods.is_empty() || mods.len() != twists.len() {
        return Err(Error::Precondition(
            "need one twist per factor and at least one factor".into(),
        ));
    }
    let p = mods[0].p;
    for m in mods {
        if m.p != p {
            return Err(Error::Precondition(format!(
                "factors over different primes {p} and {}",
                m.p
            )));
        }
        if m.datum.cartan() != mods[0].datum.cartan() {
            return Err(Error::Precondition("factors for different root data".into()));
        }
        if m.highest.0.iter().any(|&c| c >= p as i64) {
            return Err(Error::Precondition(format!(
                "highest weight {} is not {p}-restricted",
                m.highest
            )));
        }
    }
    let mut acc: Option<ModularModule> = None;
    for (m, &t) in mods.iter().zip(twists) {
        let mut f = m.clone();
        for _ in 0..t {
            f = frobenius_twist(&f);
        }
        acc = Some(match acc {
            None => f,
            Some(a) => tensor(&a, &f),
        });
    }
    Ok(acc.expect("non-empty"))
}

/// Dimension of the largest trivial submodule: the common kernel of every
/// divided-power operator.
pub fn trivial_fixed_space(module: &ModularModule) -> usize {
    let n = module.dim();
    if module.ops.is_empty() {
        return n;
    }
    let mut stacked = FpMatrix::zeros(module.p, module.ops.len() * n, n);
    for (b, m) in module.ops.values().enumerate() {
        for r in 0..n {
            for c in 0..n {
                stacked.set(b * n + r, c, m.get(r, c));
            }
        }
    }
    n - stacked.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, Family};
    use crate::weyl::integral::construct_weyl_module;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn g2_heads() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let v = construct_weyl_module(&g2, &w(&[1, 0])).unwrap();
        assert_eq!(irreducible_head_mod_p(&v, 2).unwrap().dim(), 6);
        assert_eq!(irreducible_head_mod_p(&v, 5).unwrap().dim(), 7);
        let v = construct_weyl_module(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(irreducible_head_mod_p(&v, 3).unwrap().dim(), 7);
    }

    #[test]
    fn natural_sl2_root_element() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let v = construct_weyl_module(&a1, &w(&[1])).unwrap();
        let m = reduce_mod_p(&v, 5).unwrap();
        let x = root_element(&m, &[1], 1).unwrap();
        assert_eq!(x, FpMatrix::from_rows(5, &[vec![1, 1], vec![0, 1]]));
        assert!(root_element(&m, &[2], 1).is_err());
    }

    #[test]
    fn steinberg_sl2() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let l1 = irreducible_head_mod_p(&construct_weyl_module(&a1, &w(&[1])).unwrap(), 5).unwrap();
        let st = steinberg_product(&[l1.clone(), l1], &[0, 1]).unwrap();
        assert_eq!(st.dim(), 4);
        assert_eq!(st.highest(), &w(&[6]));
    }

    #[test]
    fn fixed_points() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let t = ModularModule::trivial(Arc::new(a1.clone()), 3).unwrap();
        assert_eq!(trivial_fixed_space(&t), 1);
        let v = construct_weyl_module(&a1, &w(&[3])).unwrap();
        // V(3) mod 3 has socle L(1) and head L(3) = L(1)^[3], no trivial part.
        assert_eq!(trivial_fixed_space(&reduce_mod_p(&v, 3).unwrap()), 0);
        let v = construct_weyl_module(&a1, &w(&[2])).unwrap();
        // V(2) mod 2: socle is the trivial module at weight 0.
        assert_eq!(trivial_fixed_space(&reduce_mod_p(&v, 2).unwrap()), 1);
    }
}
