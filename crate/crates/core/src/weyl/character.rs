//! Weight multiplicities via Freudenthal's formula and the Weyl dimension
//! formula.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{RootDatum, Weight};

/// A W-invariant character: multiplicities of the dominant weights of a
/// module, with every other weight resolved through its dominant conjugate.
#[derive(Clone, Debug)]
pub struct WeightMultTable {
    datum: Arc<RootDatum>,
    highest: Weight,
    entries: BTreeMap<Weight, u64>,
    characteristic: Option<u32>,
    depth_limit: Option<u32>,
}

impl WeightMultTable {
    /// Builds a table from dominant entries. Zero multiplicities are dropped.
    pub fn from_dominant(
        datum: Arc<RootDatum>,
        highest: Weight,
        entries: BTreeMap<Weight, u64>,
        characteristic: Option<u32>,
        depth_limit: Option<u32>,
    ) -> Result<Self> {
        for w in entries.keys() {
            datum.check_weight(w)?;
            if !w.is_dominant() {
                return Err(Error::CorruptTable(format!("entry {w} is not dominant")));
            }
        }
        Ok(WeightMultTable {
            datum,
            highest,
            entries: entries.into_iter().filter(|(_, m)| *m > 0).collect(),
            characteristic,
            depth_limit,
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// `None` for a characteristic-zero character.
    pub fn characteristic(&self) -> Option<u32> {
        self.characteristic
    }

    /// Set when only weights down to this depth below the highest weight are
    /// known.
    pub fn depth_limit(&self) -> Option<u32> {
        self.depth_limit
    }

    pub fn is_truncated(&self) -> bool {
        self.depth_limit.is_some()
    }

    /// Dominant weights with their multiplicities.
    pub fn dominant_entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    /// Multiplicity of an arbitrary weight.
    pub fn mult(&self, w: &Weight) -> Result<u64> {
        self.datum.check_weight(w)?;
        let d = self.datum.dominant_representative(w);
        if let Some(limit) = self.depth_limit {
            match self.datum.depth(&self.highest, &d) {
                Some(depth) if depth > limit => {
                    return Err(Error::BeyondDepthLimit {
                        weight: w.to_string(),
                        limit,
                    })
                }
                _ => {}
            }
        }
        Ok(self.entries.get(&d).copied().unwrap_or(0))
    }

    /// `sum mult(w) |W w|`. Refused on truncated tables.
    pub fn total_dimension(&self) -> Result<BigUint> {
        if let Some(limit) = self.depth_limit {
            return Err(Error::BeyondDepthLimit {
                weight: "total".into(),
                limit,
            });
        }
        let mut total = BigUint::from(0u32);
        for (w, &m) in &self.entries {
            total += BigUint::from(m) * BigUint::from(self.datum.orbit_size(w)?);
        }
        Ok(total)
    }

    /// All weights with multiplicities, orbit by orbit. Intended for small
    /// modules only.
    pub fn all_weights(&self) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        for (w, &m) in &self.entries {
            for x in self.datum.weyl_orbit(w) {
                out.insert(x, m);
            }
        }
        out
    }

    /// True when every non-zero weight has multiplicity at most one.
    pub fn nonzero_weights_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|(w, &m)| w.is_zero() || m <= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultFreeEntry {
    pub weight: Weight,
    pub dim: String,
}

/// Characteristic-zero character of the Weyl module of highest weight `lambda`.
pub fn freudenthal_multiplicities(datum: &RootDatum, lambda: &Weight) -> Result<WeightMultTable> {
    let datum = Arc::new(datum.clone());
    let entries = freudenthal_core(&datum, lambda, None, |_, _| true)?;
    WeightMultTable::from_dominant(datum, lambda.clone(), entries.0, None, None)
}

/// Freudenthal's recursion over dominant weights in order of depth.
///
/// `keep_going(weight, mult)` is consulted after each new multiplicity; when
/// it returns false the computation stops and the second return value is
/// false. With `max_depth` set, only weights at most that deep are computed.
pub(crate) fn freudenthal_core(
    datum: &RootDatum,
    lambda: &Weight,
    max_depth: Option<u32>,
    mut keep_going: impl FnMut(&Weight, u64) -> bool,
) -> Result<(BTreeMap<Weight, u64>, bool)> {
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let rho = datum.rho();
    let roots = datum.positive_root_weights();
    let heights: Vec<u32> = datum
        .positive_roots()
        .iter()
        .map(|r| r.iter().sum::<i64>() as u32)
        .collect();
    let lr = lambda.add(&rho);
    let top_norm = datum.form_scaled(&lr, &lr) as i128;

    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut heap = BinaryHeap::new();
    seen.insert(lambda.clone());
    heap.push(Reverse((0u32, lambda.clone())));
    while let Some(Reverse((depth, mu))) = heap.pop() {
        let m = if depth == 0 {
            1
        } else {
            let mr = mu.add(&rho);
            let lhs = top_norm - datum.form_scaled(&mr, &mr) as i128;
            let mut rhs: i128 = 0;
            for alpha in roots {
                let mut x = mu.add(alpha);
                loop {
                    let d = datum.dominant_representative(&x);
                    let Some(&mx) = mults.get(&d) else {
                        // Not a weight of the module; neither is anything
                        // further up the string.
                        break;
                    };
                    rhs += datum.form_scaled(&x, alpha) as i128 * mx as i128;
                    x = x.add(alpha);
                }
            }
            let rhs = 2 * rhs;
            if lhs <= 0 || rhs % lhs != 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion is not integral at {mu} (lhs {lhs}, rhs {rhs})"
                )));
            }
            (rhs / lhs) as u64
        };
        if m == 0 {
            continue;
        }
        mults.insert(mu.clone(), m);
        if !keep_going(&mu, m) {
            return Ok((mults, false));
        }
        for (alpha, &h) in roots.iter().zip(&heights) {
            let nu = mu.sub(alpha);
            if !nu.is_dominant() || max_depth.is_some_and(|md| depth + h > md) {
                continue;
            }
            if seen.insert(nu.clone()) {
                heap.push(Reverse((depth + h, nu)));
            }
        }
    }
    Ok((mults, true))
}

/// Dimension of the Weyl module of highest weight `lambda`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<BigUint> {
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let rho = datum.rho();
    let lr = lambda.add(&rho);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for root in datum.positive_roots() {
        num *= BigUint::from(datum.coroot_pairing(&lr, root) as u64);
        den *= BigUint::from(datum.coroot_pairing(&rho, root) as u64);
    }
    Ok(num / den)
}

/// `weyl_dimension` as a machine integer, if it fits.
pub fn weyl_dimension_usize(datum: &RootDatum, lambda: &Weight) -> Result<Option<usize>> {
    Ok(weyl_dimension(datum, lambda)?.to_usize())
}

/// Non-zero dominant `lambda` with all coefficients at most `bound` whose
/// characteristic-zero character has every non-zero weight of multiplicity one.
pub fn scan_multiplicity_free(datum: &RootDatum, bound: u32) -> Result<Vec<MultFreeEntry>> {
    let rank = datum.rank();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    loop {
        // Odometer, least significant node first.
        let mut i = 0;
        while i < rank {
            if coeffs[i] < bound as i64 {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
        let lambda = Weight(coeffs.clone());
        if is_multiplicity_free(datum, &lambda)? {
            out.push(MultFreeEntry {
                dim: weyl_dimension(datum, &lambda)?.to_string(),
                weight: lambda,
            });
        }
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight).reverse());
    Ok(out)
}

/// Multiplicity-one test for non-zero weights, stopping at the first failure.
pub fn is_multiplicity_free(datum: &RootDatum, lambda: &Weight) -> Result<bool> {
    let (_, complete) = freudenthal_core(datum, lambda, None, |w, m| w.is_zero() || m <= 1)?;
    Ok(complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, Family};

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn g2_fundamentals() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let t = freudenthal_multiplicities(&g2, &w(&[1, 0])).unwrap();
        assert_eq!(t.total_dimension().unwrap(), BigUint::from(7u32));
        assert_eq!(t.mult(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(t.mult(&w(&[-1, 0])).unwrap(), 1);
        let t = freudenthal_multiplicities(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(t.total_dimension().unwrap(), BigUint::from(14u32));
        assert_eq!(t.mult(&w(&[0, 0])).unwrap(), 2);
    }

    #[test]
    fn dimensions() {
        let e6 = build_root_system(Family::E, 6).unwrap();
        assert_eq!(weyl_dimension(&e6, &w(&[1, 0, 0, 0, 0, 0])).unwrap(), BigUint::from(27u32));
        let f4 = build_root_system(Family::F, 4).unwrap();
        assert_eq!(weyl_dimension(&f4, &w(&[1, 0, 0, 1])).unwrap(), BigUint::from(1053u32));
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(weyl_dimension(&g2, &w(&[1, 1])).unwrap(), BigUint::from(64u32));
        assert_eq!(weyl_dimension(&g2, &w(&[0, 0])).unwrap(), BigUint::from(1u32));
        assert!(weyl_dimension(&g2, &w(&[-1, 0])).is_err());
    }

    #[test]
    fn e6_minuscule_character() {
        let e6 = build_root_system(Family::E, 6).unwrap();
        let t = freudenthal_multiplicities(&e6, &w(&[1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(t.dominant_entries().len(), 1);
        assert_eq!(t.total_dimension().unwrap(), BigUint::from(27u32));
    }

    #[test]
    fn truncated_table_refuses_deep_weights() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let datum = Arc::new(g2.clone());
        let (entries, _) = freudenthal_core(&g2, &w(&[2, 0]), Some(1), |_, _| true).unwrap();
        let t = WeightMultTable::from_dominant(datum, w(&[2, 0]), entries, None, Some(1)).unwrap();
        assert_eq!(t.mult(&w(&[2, 0])).unwrap(), 1);
        assert!(t.mult(&w(&[0, 0])).is_err());
        assert!(t.total_dimension().is_err());
    }

    #[test]
    fn g2_scan_small_bound() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let found: Vec<Weight> = scan_multiplicity_free(&g2, 2)
            .unwrap()
            .into_iter()
            .map(|e| e.weight)
            .collect();
        assert!(found.contains(&w(&[1, 0])) && found.contains(&w(&[0, 1])));
        assert!(!found.contains(&w(&[1, 1])) && !found.contains(&w(&[2, 0])));
    }
}
