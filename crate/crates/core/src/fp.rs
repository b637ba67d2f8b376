//! Dense matrices over a prime field `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64 % p as u64;
    let mut b = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

pub fn reduce_bigint(x: &BigInt, p: u32) -> u32 {
    x.mod_floor(&BigInt::from(p)).to_u32().unwrap()
}

pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Dense row-major matrix with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce_i64(v, p);
            }
        }
        m
    }

    /// The Jordan block `J_n`: ones on the diagonal and superdiagonal.
    pub fn jordan_block(p: u32, n: usize) -> Self {
        let mut m = Self::identity(p, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, 1);
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.get(r, c) == if r == c { 1 % self.p } else { 0 })
            })
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        // Products are < p^2 < 2^62; flush before the accumulator can overflow.
        let flush_every = (u64::MAX / ((p - 1).max(1) * (p - 1).max(1))).min(1 << 20) as usize;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending + 1 >= flush_every {
                    acc.iter_mut().for_each(|a| *a %= p);
                    pending = 0;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    acc = (acc + self.data[i * self.cols + k] as u64 * x as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + b as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let mut out = self.clone();
        let s = (s % self.p) as u64;
        for a in out.data.iter_mut() {
            *a = (*a as u64 * s % self.p as u64) as u32;
        }
        out
    }

    pub fn sub_identity(&self) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        self.sub(&FpMatrix::identity(self.p, self.rows))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = FpMatrix::zeros(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = a * other.get(k, l) as u64 % p;
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = v as u32;
                    }
                }
            }
        }
        out
    }

    /// Row echelon form in place with first-nonzero pivoting; returns pivot
    /// columns.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..self.cols {
                    self.data.swap(piv * self.cols + c, row * self.cols + c);
                }
            }
            let inv = inv_mod(self.get(row, col), self.p) as u64;
            for c in col..self.cols {
                let idx = row * self.cols + c;
                self.data[idx] = (self.data[idx] as u64 * inv % p) as u32;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col) as u64;
                if f == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let sub = f * self.data[row * self.cols + c] as u64 % p;
                    let idx = r * self.cols + c;
                    self.data[idx] = ((self.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = m.get(r, f);
                    v[pc] = (self.p - x) % self.p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1 % self.p;
        }
        let piv = aug.echelonize();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = aug.data[r * 2 * n + n + c];
            }
        }
        Some(inv)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, n: usize, cols: &[Vec<u32>]) -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), n);
            for (r, &x) in v.iter().enumerate() {
                m.data[r * cols.len() + c] = x % p;
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// A basis of the column space, taken from the columns themselves.
    pub fn column_basis(&self) -> Vec<Vec<u32>> {
        self.clone()
            .echelonize()
            .into_iter()
            .map(|c| self.column(c))
            .collect()
    }

    /// Matrix of this operator on an invariant subspace with the given basis
    /// (columns of `basis`). `None` if the subspace is not invariant.
    pub fn restrict_to(&self, basis: &FpMatrix) -> Option<FpMatrix> {
        let image = self.mul(basis);
        // Independent rows of the basis give an invertible square block.
        let rows = basis.transpose().echelonize();
        let k = basis.cols;
        if rows.len() != k {
            return None;
        }
        let pick = |m: &FpMatrix| {
            let mut out = FpMatrix::zeros(self.p, k, m.cols);
            for (i, &r) in rows.iter().enumerate() {
                for c in 0..m.cols {
                    out.data[i * m.cols + c] = m.get(r, c);
                }
            }
            out
        };
        let coeffs = pick(basis).inverse()?.mul(&pick(&image));
        (basis.mul(&coeffs) == image).then_some(coeffs)
    }

    /// Smallest `k >= 1` with `M^k = 1`, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
        assert!(check_prime(4).is_err());
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn rank_and_kernel() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn jordan_block_order() {
        let j = FpMatrix::jordan_block(5, 7);
        assert_eq!(j.multiplicative_order(100), Some(25));
        let j = FpMatrix::jordan_block(2, 2);
        assert_eq!(j.multiplicative_order(10), Some(2));
    }

    #[test]
    fn kron_dimensions() {
        let a = FpMatrix::jordan_block(3, 2);
        let b = FpMatrix::jordan_block(3, 3);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(0, 4), 1);
    }
}
