//! Splitting a module for a finite group into indecomposable summands.
//!
//! The group is given by generator matrices, the first of which must be
//! unipotent. The endomorphism algebra is computed inside the commutant of the
//! first generator (read off a Jordan basis), and summands are split off with
//! Fitting decompositions of random endomorphisms. A summand is declared
//! indecomposable once a fixed number of random endomorphisms are all
//! nilpotent or invertible; the random stream is seeded, so results are
//! reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;

const FITTING_TRIALS: usize = 48;

/// A Jordan basis of a nilpotent matrix: columns of `basis` grouped into
/// chains with `N c_0 = 0` and `N c_r = c_(r-1)`.
pub struct JordanBasis {
    pub basis: FpMatrix,
    pub blocks: Vec<usize>,
}

fn kernel_of_power(n: &FpMatrix, k: usize) -> Vec<Vec<u32>> {
    n.pow(k as u64).kernel()
}

/// Greedily picks vectors from `candidates` that enlarge the span of `base`.
fn extend(base: &[Vec<u32>], candidates: &[Vec<u32>], p: u32, dim: usize) -> Vec<Vec<u32>> {
    let mut current: Vec<Vec<u32>> = base.to_vec();
    let mut rank = if current.is_empty() {
        0
    } else {
        FpMatrix::from_columns(p, dim, &current).rank()
    };
    let mut out = Vec::new();
    for v in candidates {
        current.push(v.clone());
        let r = FpMatrix::from_columns(p, dim, &current).rank();
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            current.pop();
        }
    }
    out
}

pub fn jordan_basis(nil: &FpMatrix) -> Result<JordanBasis> {
    let p = nil.prime();
    let dim = nil.rows();
    let mut s = 0;
    let mut kernels: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    loop {
        if kernels[s].len() == dim {
            break;
        }
        s += 1;
        if s > dim {
            return Err(Error::Precondition("matrix is not nilpotent".into()));
        }
        kernels.push(kernel_of_power(nil, s));
    }
    // chains[i] = (top vector, level)
    let mut chains: Vec<(Vec<u32>, usize)> = Vec::new();
    for k in (1..=s).rev() {
        let mut base = kernels[k - 1].clone();
        for (top, level) in &chains {
            let mut v = top.clone();
            for _ in 0..(level - k) {
                v = nil.mul_vec(&v);
            }
            base.push(v);
        }
        for top in extend(&base, &kernels[k], p, dim) {
            chains.push((top, k));
        }
    }
    let mut cols = Vec::with_capacity(dim);
    let mut blocks = Vec::new();
    for (top, level) in &chains {
        let mut chain = vec![top.clone()];
        for _ in 1..*level {
            let next = nil.mul_vec(chain.last().unwrap());
            chain.push(next);
        }
        chain.reverse();
        cols.extend(chain);
        blocks.push(*level);
    }
    if cols.len() != dim {
        return Err(Error::Internal("Jordan basis has the wrong size".into()));
    }
    Ok(JordanBasis {
        basis: FpMatrix::from_columns(p, dim, &cols),
        blocks,
    })
}

/// Sparse 0/1 matrices spanning the commutant of a nilpotent Jordan matrix
/// with the given block sizes.
fn jordan_commutant(blocks: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        offsets.push(acc);
        acc += b;
    }
    let mut out = Vec::new();
    for (i, &bi) in blocks.iter().enumerate() {
        for (j, &bj) in blocks.iter().enumerate() {
            // The generator of block j goes to e_s of block i.
            for s in 0..bi.min(bj) {
                let entries = (0..=s)
                    .filter(|&t| t < bj)
                    .map(|t| (offsets[i] + s - t, offsets[j] + bj - 1 - t))
                    .collect();
                out.push(entries);
            }
        }
    }
    out
}

/// Basis of the algebra of matrices commuting with every generator.
pub fn endomorphism_basis(gens: &[FpMatrix]) -> Result<Vec<FpMatrix>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("no generators".into()))?;
    let p = first.prime();
    let n = first.rows();
    let jb = jordan_basis(&first.sub_identity())?;
    let q = &jb.basis;
    let qinv = q
        .inverse()
        .ok_or_else(|| Error::Internal("Jordan basis is singular".into()))?;
    let others: Vec<FpMatrix> = gens[1..].iter().map(|g| qinv.mul(g).mul(q)).collect();
    let cands = jordan_commutant(&jb.blocks);
    // Column k of the system: entries of [C_k, g] for every other generator.
    let rows = n * n * others.len();
    let mut system = FpMatrix::zeros(p, rows.max(1), cands.len());
    for (k, c) in cands.iter().enumerate() {
        for (gi, g) in others.iter().enumerate() {
            let mut comm = vec![0u64; n * n];
            let pp = p as u64;
            // (C g)[r][*] += g[col][*] for each (r, col) in C
            for &(r, col) in c {
                for x in 0..n {
                    comm[r * n + x] += g.get(col, x) as u64;
                }
            }
            // (g C)[*][col] += g[*][r]
            for &(r, col) in c {
                for x in 0..n {
                    comm[x * n + col] += pp - g.get(x, r) as u64;
                }
            }
            for (idx, v) in comm.into_iter().enumerate() {
                system.set(gi * n * n + idx, k, (v % pp) as u32);
            }
        }
    }
    let kernel = if others.is_empty() {
        (0..cands.len())
            .map(|k| {
                let mut v = vec![0u32; cands.len()];
                v[k] = 1;
                v
            })
            .collect()
    } else {
        system.kernel()
    };
    let mut out = Vec::with_capacity(kernel.len());
    for coeffs in kernel {
        let mut x = FpMatrix::zeros(p, n, n);
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(r, col) in &cands[k] {
                let v = (x.get(r, col) + c) % p;
                x.set(r, col, v);
            }
        }
        out.push(q.mul(&x).mul(&qinv));
    }
    Ok(out)
}

/// Indecomposable summands, as matrices whose columns form a basis of each
/// summand (in the original coordinates).
pub fn indecomposable_summands(gens: &[FpMatrix], seed: u64) -> Result<Vec<FpMatrix>> {
    let n = gens
        .first()
        .ok_or_else(|| Error::Precondition("no generators".into()))?
        .rows();
    let p = gens[0].prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split(gens, &FpMatrix::identity(p, n), &mut rng, &mut out)?;
    Ok(out)
}

fn split(
    gens: &[FpMatrix],
    embedding: &FpMatrix,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FpMatrix>,
) -> Result<()> {
    let n = gens[0].rows();
    let p = gens[0].prime();
    if n <= 1 {
        out.push(embedding.clone());
        return Ok(());
    }
    let ends = endomorphism_basis(gens)?;
    for _ in 0..FITTING_TRIALS {
        let mut x = FpMatrix::zeros(p, n, n);
        for e in &ends {
            x = x.add(&e.scale(rng.gen_range(0..p)));
        }
        let xn = x.pow(n as u64);
        let r = xn.rank();
        if r == 0 || r == n {
            continue;
        }
        let kernel = FpMatrix::from_columns(p, n, &xn.kernel());
        let image = FpMatrix::from_columns(p, n, &xn.column_basis());
        for part in [kernel, image] {
            let restricted = gens
                .iter()
                .map(|g| {
                    g.restrict_to(&part)
                        .ok_or_else(|| Error::Internal("Fitting component is not invariant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            split(&restricted, &embedding.mul(&part), rng, out)?;
        }
        return Ok(());
    }
    out.push(embedding.clone());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::jordan_type;

    #[test]
    fn jordan_basis_conjugates_to_blocks() {
        let p = 5;
        let u = FpMatrix::jordan_block(p, 3).kron(&FpMatrix::jordan_block(p, 2));
        let jb = jordan_basis(&u.sub_identity()).unwrap();
        let mut blocks = jb.blocks.clone();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(blocks, jordan_type(&u).unwrap().blocks());
        let conj = jb.basis.inverse().unwrap().mul(&u.sub_identity()).mul(&jb.basis);
        // Only superdiagonal ones inside each chain.
        let mut off = 0;
        for &b in &jb.blocks {
            for r in 0..b {
                for c in 0..6 {
                    let want = u32::from(c == off + r + 1 && r + 1 < b);
                    assert_eq!(conj.get(off + r, c), want);
                }
            }
            off += b;
        }
    }

    #[test]
    fn splits_direct_sums() {
        let p = 3;
        // J2 (+) J2 for the cyclic group: two summands.
        let mut u = FpMatrix::identity(p, 4);
        u.set(0, 1, 1);
        u.set(2, 3, 1);
        let parts = indecomposable_summands(&[u.clone()], 7).unwrap();
        assert_eq!(parts.len(), 2);
        let parts = indecomposable_summands(&[FpMatrix::jordan_block(p, 4)], 7).unwrap();
        assert_eq!(parts.len(), 1);
    }
}
