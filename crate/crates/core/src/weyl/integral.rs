//! Integral forms of Weyl modules.
//!
//! The module is first realized over the rationals one weight space at a
//! time: a weight space is spanned by `f_i b` for basis vectors `b` of the
//! spaces above it, and such a combination vanishes exactly when every `e_j`
//! kills it. The `e_j`-images follow from `e_j f_i = f_i e_j + delta_ij h_i`,
//! so only data of higher weights is needed. The lattice spanned by divided
//! powers of lowering operators applied to the highest weight vector is then
//! computed weight space by weight space in Hermite normal form, and every
//! operator is rewritten in that basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, hermite_basis, inverse, qint, rref, to_integer_matrix, QMatrix, ZMatrix};
use crate::root_system::{RootDatum, Weight};
use crate::weyl::character::{freudenthal_core, weyl_dimension, WeightMultTable};
use crate::weyl::SignedRoot;

pub const DEFAULT_SIZE_CAP: usize = 200;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest dimension that will be built explicitly.
    pub size_cap: usize,
    /// Build only the weight spaces at most this deep below the highest
    /// weight. The cap then applies to the truncated dimension.
    pub max_depth: Option<u32>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            size_cap: DEFAULT_SIZE_CAP,
            max_depth: None,
        }
    }
}

/// A weight-graded block of an operator.
#[derive(Clone, Debug)]
pub struct Block {
    pub source: usize,
    pub target: usize,
    pub matrix: ZMatrix,
}

/// Integral form of a Weyl module: a weight-graded Z-basis together with the
/// divided powers `e_beta^(k)`, `f_beta^(k)` and the contravariant form.
#[derive(Clone, Debug)]
pub struct IntegralRep {
    datum: Arc<RootDatum>,
    highest: Weight,
    weights: Vec<Weight>,
    depths: Vec<u32>,
    mults: Vec<usize>,
    offsets: Vec<usize>,
    index: HashMap<Weight, usize>,
    ops: BTreeMap<(usize, u32), Vec<Block>>,
    gram: Vec<ZMatrix>,
    depth_limit: Option<u32>,
}

type QOp = HashMap<usize, (usize, QMatrix)>;

pub fn construct_weyl_module(datum: &RootDatum, lambda: &Weight) -> Result<IntegralRep> {
    construct_weyl_module_with(datum, lambda, &BuildOptions::default())
}

pub fn construct_weyl_module_with(
    datum: &RootDatum,
    lambda: &Weight,
    opts: &BuildOptions,
) -> Result<IntegralRep> {
    let full_dim = weyl_dimension(datum, lambda)?;
    let (dominant, _) = freudenthal_core(datum, lambda, opts.max_depth, |_, _| true)?;

    // All weights (within the depth limit) with their multiplicities.
    let mut weights: Vec<(u32, Weight, usize)> = Vec::new();
    for (d, &m) in &dominant {
        for w in datum.weyl_orbit(d) {
            let depth = datum
                .depth(lambda, &w)
                .ok_or_else(|| Error::Internal(format!("weight {w} is not below {lambda}")))?;
            if opts.max_depth.is_none_or(|md| depth <= md) {
                weights.push((depth, w, m as usize));
            }
        }
    }
    let dim: usize = weights.iter().map(|x| x.2).sum();
    if opts.max_depth.is_none() && full_dim.to_usize() != Some(dim) {
        return Err(Error::Internal(format!(
            "character of {lambda} sums to {dim}, Weyl dimension is {full_dim}"
        )));
    }
    if dim > opts.size_cap {
        return Err(Error::SizeCap {
            dim: if opts.max_depth.is_some() {
                dim.to_string()
            } else {
                full_dim.to_string()
            },
            cap: opts.size_cap,
        });
    }
    weights.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));

    let mut builder = Builder::new(datum, lambda, weights, opts.max_depth);
    builder.build_rational()?;
    builder.build_root_vectors()?;
    builder.build_lattice()?;
    builder.finish()
}

struct Builder<'a> {
    datum: &'a RootDatum,
    lambda: Weight,
    weights: Vec<Weight>,
    depths: Vec<u32>,
    expected: Vec<usize>,
    index: HashMap<Weight, usize>,
    max_depth: Option<u32>,
    mults: Vec<usize>,
    // Rational realization.
    e_ops: Vec<QOp>,
    f_ops: Vec<QOp>,
    gram_q: Vec<QMatrix>,
    // Lattice bases: columns in rational coordinates.
    lattice: Vec<QMatrix>,
    lattice_inv: Vec<QMatrix>,
}

impl<'a> Builder<'a> {
    fn new(
        datum: &'a RootDatum,
        lambda: &Weight,
        weights: Vec<(u32, Weight, usize)>,
        max_depth: Option<u32>,
    ) -> Self {
        let n = datum.num_positive_roots();
        let index = weights
            .iter()
            .enumerate()
            .map(|(i, (_, w, _))| (w.clone(), i))
            .collect();
        Builder {
            datum,
            lambda: lambda.clone(),
            depths: weights.iter().map(|x| x.0).collect(),
            expected: weights.iter().map(|x| x.2).collect(),
            weights: weights.into_iter().map(|x| x.1).collect(),
            index,
            max_depth,
            mults: Vec::new(),
            e_ops: vec![QOp::new(); n],
            f_ops: vec![QOp::new(); n],
            gram_q: Vec::new(),
            lattice: Vec::new(),
            lattice_inv: Vec::new(),
        }
    }

    fn idx(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Applies a simple operator block to a vector, or returns `None` when the
    /// block is absent (zero).
    fn apply(op: &QOp, source: usize, v: &[BigRational]) -> Option<(usize, Vec<BigRational>)> {
        op.get(&source).map(|(t, m)| (*t, m.mul_vec(v)))
    }

    fn build_rational(&mut self) -> Result<()> {
        let rank = self.datum.rank();
        let alphas: Vec<Weight> = (0..rank).map(|i| self.datum.simple_root_weight(i)).collect();
        self.mults = vec![0; self.weights.len()];
        self.gram_q = vec![QMatrix::zeros(0, 0); self.weights.len()];
        self.mults[0] = 1;
        self.gram_q[0] = QMatrix::identity(1);
        for mu_idx in 1..self.weights.len() {
            let mu = self.weights[mu_idx].clone();
            // Candidates f_i b, b a basis vector of mu + alpha_i.
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for (i, a) in alphas.iter().enumerate() {
                if let Some(s) = self.idx(&mu.add(a)) {
                    for b in 0..self.mults[s] {
                        cands.push((i, s, b));
                    }
                }
            }
            // Row blocks: e_j images in mu + alpha_j.
            let mut row_off: Vec<Option<(usize, usize)>> = vec![None; rank];
            let mut nrows = 0;
            for (j, a) in alphas.iter().enumerate() {
                if let Some(t) = self.idx(&mu.add(a)) {
                    row_off[j] = Some((nrows, t));
                    nrows += self.mults[t];
                }
            }
            let mut k = QMatrix::zeros(nrows, cands.len());
            for (c, &(i, s, b)) in cands.iter().enumerate() {
                let mut unit = vec![BigRational::zero(); self.mults[s]];
                unit[b] = qint(1);
                for j in 0..rank {
                    let Some((off, t)) = row_off[j] else { continue };
                    let mut img = vec![BigRational::zero(); self.mults[t]];
                    // f_i e_j b
                    if let Some((u, eb)) = Self::apply(&self.e_ops[j], s, &unit) {
                        if let Some((t2, feb)) = Self::apply(&self.f_ops[i], u, &eb) {
                            debug_assert_eq!(t2, t);
                            img = feb;
                        }
                    }
                    if i == j {
                        let h = self.weights[s].0[i];
                        img[b] += qint(h);
                    }
                    for (r, v) in img.into_iter().enumerate() {
                        k.set(off + r, c, v);
                    }
                }
            }
            let mut red = k.clone();
            let pivots = rref(&mut red);
            let m = pivots.len();
            if m != self.expected[mu_idx] {
                return Err(Error::Internal(format!(
                    "weight {mu}: constructed multiplicity {m}, character says {}",
                    self.expected[mu_idx]
                )));
            }
            self.mults[mu_idx] = m;
            // f_i blocks into mu.
            for (c, &(i, s, b)) in cands.iter().enumerate() {
                let entry = self.f_ops[i]
                    .entry(s)
                    .or_insert_with(|| (mu_idx, QMatrix::zeros(m, self.mults[s])));
                for r in 0..m {
                    entry.1.set(r, b, red.get(r, c).clone());
                }
            }
            // e_j blocks out of mu.
            for j in 0..rank {
                let Some((off, t)) = row_off[j] else { continue };
                let mut blk = QMatrix::zeros(self.mults[t], m);
                for (col, &pc) in pivots.iter().enumerate() {
                    for r in 0..self.mults[t] {
                        blk.set(r, col, k.get(off + r, pc).clone());
                    }
                }
                self.e_ops[j].insert(mu_idx, (t, blk));
            }
            // Contravariant form: <f_i b, y> = <b, e_i y>.
            let mut g = QMatrix::zeros(m, m);
            for (r, &pc) in pivots.iter().enumerate() {
                let (i, s, b) = cands[pc];
                let (off, _) = row_off[i].expect("candidate weight is a row block");
                for (r2, &pc2) in pivots.iter().enumerate() {
                    let mut acc = BigRational::zero();
                    for x in 0..self.mults[s] {
                        let gx = self.gram_q[s].get(b, x);
                        if !gx.is_zero() {
                            acc += gx * k.get(off + x, pc2);
                        }
                    }
                    g.set(r, r2, acc);
                }
            }
            if g != g.transpose() {
                return Err(Error::Internal(format!("contravariant form not symmetric at {mu}")));
            }
            self.gram_q[mu_idx] = g;
        }
        Ok(())
    }

    fn compose(a: &QOp, b: &QOp) -> QOp {
        let mut out = QOp::new();
        for (&s, (t, bm)) in b {
            if let Some((t2, am)) = a.get(t) {
                out.insert(s, (*t2, am.mul(bm)));
            }
        }
        out
    }

    /// `(a - b) / c` where absent blocks are zero.
    fn combine(a: QOp, b: QOp, c: i64) -> QOp {
        let mut out = a;
        for (s, (t, bm)) in b {
            match out.get_mut(&s) {
                Some((t2, am)) => {
                    debug_assert_eq!(*t2, t);
                    *am = am.sub(&bm);
                }
                None => {
                    let neg = QMatrix {
                        rows: bm.rows,
                        cols: bm.cols,
                        data: bm.data.iter().map(|x| -x).collect(),
                    };
                    out.insert(s, (t, neg));
                }
            }
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(c));
        for (_, m) in out.values_mut() {
            for x in m.data.iter_mut() {
                *x = &*x * &inv;
            }
        }
        out
    }

    /// Root vectors for non-simple positive roots: `e_beta = [e_i, e_beta'] /
    /// (r + 1)` with `i` the first node such that `beta' = beta - alpha_i` is a
    /// root and `r` maximal with `beta' - r alpha_i` a root; `f_beta` is the
    /// transpose for the contravariant form.
    fn build_root_vectors(&mut self) -> Result<()> {
        let roots = self.datum.positive_roots().to_vec();
        let rank = self.datum.rank();
        for (bi, beta) in roots.iter().enumerate() {
            if beta.iter().sum::<i64>() == 1 {
                continue;
            }
            let (i, prev) = (0..rank)
                .find_map(|i| {
                    if beta[i] == 0 {
                        return None;
                    }
                    let mut b = beta.clone();
                    b[i] -= 1;
                    self.datum.positive_root_index(&b).map(|j| (i, j))
                })
                .ok_or_else(|| Error::Internal(format!("root {beta:?} has no predecessor")))?;
            let mut r = 0;
            let mut down = roots[prev].clone();
            loop {
                down[i] -= 1;
                if self.datum.positive_root_index(&down).is_some() {
                    r += 1;
                } else {
                    break;
                }
            }
            let e = Self::combine(
                Self::compose(&self.e_ops[i], &self.e_ops[prev]),
                Self::compose(&self.e_ops[prev], &self.e_ops[i]),
                r + 1,
            );
            let f = Self::combine(
                Self::compose(&self.f_ops[prev], &self.f_ops[i]),
                Self::compose(&self.f_ops[i], &self.f_ops[prev]),
                r + 1,
            );
            self.e_ops[bi] = e;
            self.f_ops[bi] = f;
        }
        // [e_beta, f_beta] acts on the mu weight space as <mu, beta^vee>.
        for (bi, beta) in roots.iter().enumerate() {
            let height = beta.iter().sum::<i64>() as u32;
            let ef = Self::compose(&self.e_ops[bi], &self.f_ops[bi]);
            let fe = Self::compose(&self.f_ops[bi], &self.e_ops[bi]);
            for (w, mu) in self.weights.iter().enumerate() {
                if self.max_depth.is_some_and(|md| self.depths[w] + height > md) {
                    continue;
                }
                let m = self.mults[w];
                let mut h = QMatrix::zeros(m, m);
                if let Some((_, x)) = ef.get(&w) {
                    h = h.add(x);
                }
                if let Some((_, x)) = fe.get(&w) {
                    h = h.sub(x);
                }
                let c = qint(self.datum.coroot_pairing(mu, beta));
                let expect = QMatrix {
                    rows: m,
                    cols: m,
                    data: QMatrix::identity(m).data.iter().map(|x| x * &c).collect(),
                };
                if h != expect {
                    return Err(Error::Internal(format!(
                        "[e, f] for root {beta:?} is not the coroot on weight {mu}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn build_lattice(&mut self) -> Result<()> {
        let roots = self.datum.positive_root_weights().to_vec();
        let nw = self.weights.len();
        self.lattice = vec![QMatrix::zeros(0, 0); nw];
        self.lattice_inv = vec![QMatrix::zeros(0, 0); nw];
        self.lattice[0] = QMatrix::identity(1);
        self.lattice_inv[0] = QMatrix::identity(1);
        for w in 1..nw {
            let mu = self.weights[w].clone();
            let m = self.mults[w];
            let mut gens: Vec<Vec<BigRational>> = Vec::new();
            for (bi, beta) in roots.iter().enumerate() {
                // prod maps mu + n beta -> mu and equals f_beta^n / n!.
                let mut prod: Option<QMatrix> = None;
                let mut n = 1i64;
                loop {
                    let Some(src) = self.idx(&mu.add(&beta.scale(n))) else { break };
                    let Some(mid) = self.idx(&mu.add(&beta.scale(n - 1))) else { break };
                    let Some((t, step)) = self.f_ops[bi].get(&src) else { break };
                    debug_assert_eq!(*t, mid);
                    let next = match &prod {
                        None => step.clone(),
                        Some(p) => p.mul(step),
                    };
                    let inv = BigRational::new(BigInt::one(), BigInt::from(n));
                    let next = QMatrix {
                        rows: next.rows,
                        cols: next.cols,
                        data: next.data.iter().map(|x| x * &inv).collect(),
                    };
                    for c in 0..self.lattice[src].cols {
                        gens.push(next.mul_vec(&self.lattice[src].column(c)));
                    }
                    prod = Some(next);
                    n += 1;
                }
            }
            let den = gens
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|v| v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
                .collect();
            let basis = hermite_basis(&ints, m);
            if basis.len() != m {
                return Err(Error::Internal(format!(
                    "lattice at weight {mu} has rank {}, expected {m}",
                    basis.len()
                )));
            }
            let mut p = QMatrix::zeros(m, m);
            for (c, v) in basis.iter().enumerate() {
                for (r, x) in v.iter().enumerate() {
                    p.set(r, c, BigRational::new(x.clone(), den.clone()));
                }
            }
            self.lattice_inv[w] = inverse(&p)
                .ok_or_else(|| Error::Internal(format!("singular lattice basis at {mu}")))?;
            self.lattice[w] = p;
        }
        Ok(())
    }

    fn to_lattice(&self, op: &QOp, what: &str) -> Result<Vec<Block>> {
        let mut out = Vec::new();
        let mut sources: Vec<&usize> = op.keys().collect();
        sources.sort();
        for &s in sources {
            let (t, m) = &op[&s];
            let z = self.lattice_inv[*t].mul(m).mul(&self.lattice[s]);
            let z = to_integer_matrix(&z).ok_or_else(|| {
                Error::Internal(format!(
                    "{what} is not integral on the lattice at weight {}",
                    self.weights[s]
                ))
            })?;
            if !z.is_zero() {
                out.push(Block {
                    source: s,
                    target: *t,
                    matrix: z,
                });
            }
        }
        Ok(out)
    }

    fn finish(self) -> Result<IntegralRep> {
        let n = self.datum.num_positive_roots();
        let mut ops: BTreeMap<(usize, u32), Vec<Block>> = BTreeMap::new();
        for bi in 0..n {
            for (neg, op) in [(false, &self.e_ops[bi]), (true, &self.f_ops[bi])] {
                let sr = SignedRoot {
                    index: bi,
                    negative: neg,
                };
                let id = sr.id(n);
                let first = self.to_lattice(op, &format!("root operator {sr}"))?;
                if first.is_empty() {
                    continue;
                }
                let by_source: HashMap<usize, &Block> =
                    first.iter().map(|b| (b.source, b)).collect();
                let mut prev = first.clone();
                ops.insert((id, 1), first.clone());
                let mut k = 2u32;
                loop {
                    // X^(k) = X . X^(k-1) / k
                    let mut next = Vec::new();
                    for blk in &prev {
                        let Some(step) = by_source.get(&blk.target) else { continue };
                        let prod = step.matrix.mul(&blk.matrix);
                        let kk = BigInt::from(k);
                        let mut data = Vec::with_capacity(prod.data.len());
                        for x in &prod.data {
                            let (q, r) = x.div_rem(&kk);
                            if !r.is_zero() {
                                return Err(Error::Internal(format!(
                                    "divided power {k} of root operator {sr} is not integral"
                                )));
                            }
                            data.push(q);
                        }
                        let m = ZMatrix {
                            rows: prod.rows,
                            cols: prod.cols,
                            data,
                        };
                        if !m.is_zero() {
                            next.push(Block {
                                source: blk.source,
                                target: step.target,
                                matrix: m,
                            });
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    ops.insert((id, k), next.clone());
                    prev = next;
                    k += 1;
                }
            }
        }
        let mut gram = Vec::with_capacity(self.weights.len());
        for (w, g) in self.gram_q.iter().enumerate() {
            let p = &self.lattice[w];
            let gz = p.transpose().mul(g).mul(p);
            gram.push(to_integer_matrix(&gz).ok_or_else(|| {
                Error::Internal(format!(
                    "contravariant form is not integral at weight {}",
                    self.weights[w]
                ))
            })?);
        }
        let mut offsets = Vec::with_capacity(self.weights.len());
        let mut acc = 0;
        for &m in &self.mults {
            offsets.push(acc);
            acc += m;
        }
        Ok(IntegralRep {
            datum: Arc::new(self.datum.clone()),
            highest: self.lambda,
            index: self.index,
            weights: self.weights,
            depths: self.depths,
            mults: self.mults,
            offsets,
            ops,
            gram,
            depth_limit: self.max_depth,
        })
    }
}

impl IntegralRep {
    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn dim(&self) -> usize {
        self.mults.iter().sum()
    }

    /// Present when only the weight spaces down to this depth were built.
    pub fn depth_limit(&self) -> Option<u32> {
        self.depth_limit
    }

    /// Distinct weights, highest first, in order of depth.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn weight_index(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn weight_mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn weight_offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// The weight of each basis vector.
    pub fn basis_weights(&self) -> Vec<Weight> {
        self.weights
            .iter()
            .zip(&self.mults)
            .flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m))
            .collect()
    }

    /// Non-zero blocks of the divided power `k` of the root operator.
    pub fn op_blocks(&self, root: SignedRoot, k: u32) -> &[Block] {
        let id = root.id(self.datum.num_positive_roots());
        self.ops.get(&(id, k)).map_or(&[], |v| v.as_slice())
    }

    /// Every stored `(signed root id, k)` with its blocks.
    pub fn all_ops(&self) -> &BTreeMap<(usize, u32), Vec<Block>> {
        &self.ops
    }

    /// Largest `k` with a non-zero divided power, 0 if the operator vanishes.
    pub fn max_divided_power(&self, root: SignedRoot) -> u32 {
        let id = root.id(self.datum.num_positive_roots());
        self.ops
            .range((id, 0)..=(id, u32::MAX))
            .map(|((_, k), _)| *k)
            .max()
            .unwrap_or(0)
    }

    pub fn op_dense(&self, root: SignedRoot, k: u32) -> ZMatrix {
        let n = self.dim();
        let mut out = ZMatrix::zeros(n, n);
        for blk in self.op_blocks(root, k) {
            let (ro, co) = (self.offsets[blk.target], self.offsets[blk.source]);
            for r in 0..blk.matrix.rows {
                for c in 0..blk.matrix.cols {
                    out.set(ro + r, co + c, blk.matrix.get(r, c).clone());
                }
            }
        }
        out
    }

    /// Gram matrix of the contravariant form on one weight space.
    pub fn gram(&self, weight_idx: usize) -> &ZMatrix {
        &self.gram[weight_idx]
    }

    /// The character of the constructed module.
    pub fn character(&self) -> Result<WeightMultTable> {
        let entries = self
            .weights
            .iter()
            .zip(&self.mults)
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, &m)| (w.clone(), m as u64))
            .collect();
        WeightMultTable::from_dominant(
            self.datum.clone(),
            self.highest.clone(),
            entries,
            None,
            self.depth_limit,
        )
    }
}

/// Per-weight Gram matrices with their determinants.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub weight: Weight,
    pub matrix: ZMatrix,
    pub determinant: BigInt,
}

pub fn contravariant_gram(rep: &IntegralRep) -> Vec<GramBlock> {
    rep.weights
        .iter()
        .zip(&rep.gram)
        .map(|(w, g)| GramBlock {
            weight: w.clone(),
            matrix: g.clone(),
            determinant: determinant(g),
        })
        .collect()
}

impl GramBlock {
    /// Exponent of `p` in the determinant; `None` if the determinant is 0.
    pub fn p_valuation(&self, p: u32) -> Option<u32> {
        if self.determinant.is_zero() {
            return None;
        }
        let p = BigInt::from(p);
        let mut d = self.determinant.abs();
        let mut v = 0;
        while (&d % &p).is_zero() {
            d /= &p;
            v += 1;
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, Family};

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn sl2_symmetric_power() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        let rep = construct_weyl_module(&a1, &w(&[4])).unwrap();
        assert_eq!(rep.dim(), 5);
        let ws: Vec<i64> = rep.basis_weights().iter().map(|x| x.0[0]).collect();
        assert_eq!(ws, vec![4, 2, 0, -2, -4]);
        let grams = contravariant_gram(&rep);
        assert_eq!(grams[0].matrix, ZMatrix::identity(1));
        // <f^(k) v, f^(k) v> = binom(4, k)
        let dets: Vec<i64> = grams.iter().map(|g| g.determinant.to_i64().unwrap()).collect();
        assert_eq!(dets, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn g2_modules_build() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let rep = construct_weyl_module(&g2, &w(&[1, 0])).unwrap();
        assert_eq!(rep.dim(), 7);
        let rep = construct_weyl_module(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(rep.dim(), 14);
        let zero = rep.weight_index(&w(&[0, 0])).unwrap();
        assert_eq!(rep.weight_mults()[zero], 2);
    }

    #[test]
    fn size_cap_is_enforced() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let err = construct_weyl_module(&g2, &w(&[0, 3])).unwrap_err();
        assert!(matches!(err, Error::SizeCap { cap: 200, .. }));
        let opts = BuildOptions {
            max_depth: Some(2),
            ..Default::default()
        };
        let rep = construct_weyl_module_with(&g2, &w(&[4, 4]), &opts).unwrap();
        assert!(rep.dim() < 10);
    }
}
