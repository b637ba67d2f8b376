//! Dense exact matrices over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

pub type QMatrix = Matrix<BigRational>;
pub type ZMatrix = Matrix<BigInt>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols);
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One,
{
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].clone() + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Sub<Output = T>,
{
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
{
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

pub fn qint(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = m.get(row, col).recip();
        for c in col..m.cols {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r != row && !m.get(r, col).is_zero() {
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = QMatrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, qint(1));
    }
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    let mut inv = QMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, aug.get(r, n + c).clone());
        }
    }
    Some(inv)
}

/// Converts a rational matrix to an integer one, if every entry is integral.
pub fn to_integer_matrix(m: &QMatrix) -> Option<ZMatrix> {
    let data = m
        .data
        .iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix {
        rows: m.rows,
        cols: m.cols,
        data,
    })
}

pub fn to_rational_matrix(m: &ZMatrix) -> QMatrix {
    Matrix {
        rows: m.rows,
        cols: m.cols,
        data: m
            .data
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect(),
    }
}

/// Hermite normal form basis of the Z-span of the given integer row vectors.
///
/// Returns the non-zero rows of the (upper triangular, positive pivots,
/// reduced above pivots) HNF. The result depends only on the lattice.
pub fn hermite_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..dim {
        // Collapse column `col` of all remaining rows into one row by gcd steps.
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if r[col].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let a = p[col].clone();
                    let b = r[col].clone();
                    let eg = a.extended_gcd(&b);
                    let g = eg.gcd;
                    let (x, y) = (eg.x, eg.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let new_p: Vec<BigInt> =
                        p.iter().zip(&r).map(|(u, v)| &x * u + &y * v).collect();
                    let other: Vec<BigInt> =
                        p.iter().zip(&r).map(|(u, v)| &bg * u - &ag * v).collect();
                    debug_assert!(other[col].is_zero());
                    if other.iter().any(|z| !z.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
            }
            basis.push(p);
            pivot_cols.push(col);
        }
    }
    // Reduce entries above each pivot into [0, pivot).
    for i in 0..basis.len() {
        let col = pivot_cols[i];
        let pv = basis[i][col].clone();
        for k in 0..i {
            let q = basis[k][col].div_floor(&pv);
            if !q.is_zero() {
                let (head, tail) = basis.split_at_mut(i);
                for (a, b) in head[k].iter_mut().zip(&tail[0]) {
                    *a -= &q * b;
                }
            }
        }
    }
    basis
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(m: &ZMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.data.swap(p * n + c, k * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let b = hermite_basis(&[z(&[2, 0]), z(&[0, 3]), z(&[2, 3])], 2);
        assert_eq!(b, vec![z(&[2, 0]), z(&[0, 3])]);
        let b = hermite_basis(&[z(&[4, 6]), z(&[6, 9]), z(&[2, 1])], 2);
        // lattice index = |det| of basis
        let det = &b[0][0] * &b[1][1];
        assert_eq!(det, BigInt::from(4));
    }

    #[test]
    fn determinant_matches_expansion() {
        let m = Matrix::from_rows(vec![z(&[2, -1, 0]), z(&[-1, 2, -1]), z(&[0, -1, 2])], 3);
        assert_eq!(determinant(&m), BigInt::from(4));
        let m = Matrix::from_rows(vec![z(&[0, 1]), z(&[1, 0])], 2);
        assert_eq!(determinant(&m), BigInt::from(-1));
    }

    #[test]
    fn rational_inverse() {
        let m = to_rational_matrix(&Matrix::from_rows(vec![z(&[2, -1]), z(&[-3, 2])], 2));
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
    }
}
