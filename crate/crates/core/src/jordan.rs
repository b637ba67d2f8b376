//! Jordan types of unipotent matrices over prime fields, and the arithmetic
//! dimension bounds built on unipotent orders.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fp::{check_prime, FpMatrix};

/// Block sizes of a unipotent matrix, in descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType {
    blocks: Vec<usize>,
}

impl JordanType {
    /// Canonicalizes: zero blocks dropped, sizes sorted descending.
    pub fn new(mut blocks: Vec<usize>) -> Self {
        blocks.retain(|&b| b > 0);
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanType { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.first().copied().unwrap_or(0)
    }

    /// Number of blocks of size greater than one.
    pub fn num_nontrivial(&self) -> usize {
        self.blocks.iter().filter(|&&b| b > 1).count()
    }

    /// `r_k = rank (u - 1)^k = sum_b max(b - k, 0)` for `k = 0, 1, ...` until 0.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for k in 0..=self.max_block() {
            out.push(self.blocks.iter().map(|&b| b.saturating_sub(k)).sum());
        }
        out
    }

    /// Inverse of [`JordanType::rank_sequence`].
    pub fn from_rank_sequence(ranks: &[usize]) -> Result<Self> {
        let mut blocks = Vec::new();
        for k in 1..ranks.len() {
            let here = ranks[k - 1]
                .checked_sub(ranks[k])
                .ok_or_else(|| Error::Internal("rank sequence is not decreasing".into()))?;
            let next = ranks
                .get(k + 1)
                .map_or(Some(ranks[k]), |&r| ranks[k].checked_sub(r))
                .ok_or_else(|| Error::Internal("rank sequence is not decreasing".into()))?;
            let exact = here
                .checked_sub(next)
                .ok_or_else(|| Error::Internal("rank sequence is not convex".into()))?;
            blocks.extend(std::iter::repeat_n(k, exact));
        }
        Ok(JordanType::new(blocks))
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for JordanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Ok(JordanType::default());
        }
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad block size '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JordanType::new(blocks))
    }
}

impl Serialize for JordanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Jordan type of a unipotent matrix from the ranks of powers of `u - 1`.
pub fn jordan_type(u: &FpMatrix) -> Result<JordanType> {
    if u.rows() != u.cols() {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    let n = u.rows();
    let nil = u.sub_identity();
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(u.prime(), n);
    loop {
        power = power.mul(&nil);
        let r = power.rank();
        let prev = *ranks.last().unwrap();
        if r == prev {
            if r > 0 {
                return Err(Error::NotUnipotent { stable_rank: r });
            }
            break;
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    JordanType::from_rank_sequence(&ranks)
}

/// Jordan type of `J_m (x) J_n` over `F_p`, by explicit Kronecker product.
pub fn tensor_jordan(m: usize, n: usize, p: u64) -> Result<JordanType> {
    let p = check_prime(p)?;
    if m == 0 || n == 0 {
        return Err(Error::Precondition("block sizes must be positive".into()));
    }
    jordan_type(&FpMatrix::jordan_block(p, m).kron(&FpMatrix::jordan_block(p, n)))
}

/// At most one block of size greater than one.
pub fn single_nontrivial_block(t: &JordanType) -> bool {
    t.num_nontrivial() <= 1
}

/// Order of a unipotent element with this Jordan type: the least power of
/// `p` that is at least the largest block.
pub fn unipotent_order(t: &JordanType, p: u64) -> u64 {
    let max = t.max_block() as u64;
    let mut q = 1u64;
    while q < max {
        q *= p;
    }
    q
}

/// Inputs to the dimension bound for modules on which an element of order
/// `p^(k+1)` has a single non-trivial block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub p: u64,
    pub k: u32,
    /// Rank of the group.
    pub l: u64,
    /// Use the sharper bound available for `F4` in characteristic 2.
    pub f4_p2_flag: bool,
}

/// `(p - 1) p^k (l + 3)`, or `2^(k+3)` when the `F4`, `p = 2` flag is set.
pub fn dimension_bound(b: &BoundInputs) -> Result<u64> {
    check_prime(b.p)?;
    let overflow = || Error::Precondition(format!("bound for {b:?} overflows"));
    if b.f4_p2_flag {
        if b.p != 2 {
            return Err(Error::Precondition("the F4 bound applies only for p = 2".into()));
        }
        return 2u64.checked_pow(b.k + 3).ok_or_else(overflow);
    }
    b.p.checked_pow(b.k)
        .and_then(|q| q.checked_mul(b.p - 1))
        .and_then(|q| q.checked_mul(b.l + 3))
        .ok_or_else(overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_types() {
        assert_eq!(jordan_type(&FpMatrix::jordan_block(5, 7)).unwrap().to_string(), "7");
        assert_eq!(jordan_type(&FpMatrix::identity(5, 4)).unwrap().to_string(), "1,1,1,1");
        let bad = FpMatrix::identity(5, 3).scale(2);
        assert!(matches!(jordan_type(&bad), Err(Error::NotUnipotent { stable_rank: 3 })));
    }

    #[test]
    fn small_tensors() {
        assert_eq!(tensor_jordan(2, 2, 3).unwrap().to_string(), "3,1");
        assert_eq!(tensor_jordan(2, 2, 2).unwrap().to_string(), "2,2");
        assert_eq!(tensor_jordan(3, 2, 3).unwrap().to_string(), "3,3");
    }

    #[test]
    fn predicates_and_orders() {
        let t = |s: &str| s.parse::<JordanType>().unwrap();
        assert!(single_nontrivial_block(&t("7")));
        assert!(!single_nontrivial_block(&t("5,2")));
        assert!(single_nontrivial_block(&t("3,1,1")));
        assert_eq!(unipotent_order(&t("7"), 5), 25);
        assert_eq!(unipotent_order(&t("1,1,1"), 3), 1);
        assert_eq!(unipotent_order(&t("4,2"), 2), 4);
    }

    #[test]
    fn rank_sequence_round_trip() {
        let t = JordanType::new(vec![1, 4, 2, 2]);
        assert_eq!(t.rank_sequence(), vec![9, 5, 2, 1, 0]);
        assert_eq!(JordanType::from_rank_sequence(&t.rank_sequence()).unwrap(), t);
    }

    #[test]
    fn bounds() {
        let b = |p, k, l, f| dimension_bound(&BoundInputs { p, k, l, f4_p2_flag: f }).unwrap();
        assert_eq!(b(2, 1, 4, false), 2 * (4 + 3));
        assert_eq!(b(2, 1, 4, true), 16);
        assert_eq!(b(3, 1, 6, false), 6 * (6 + 3));
        assert_eq!(b(11, 1, 4, false), 770);
    }
}
