//! Level decompositions of a module with respect to a maximal parabolic
//! subgroup, and the Levi composition factors they support.
//!
//! Removing node `i` grades the weights `mu` of a module with highest weight
//! `lambda` by the coefficient of `alpha_i` in `lambda - mu`. Each graded
//! piece is a module for the Levi subgroup on the remaining nodes, whose
//! weights are recorded in the Levi's own fundamental-weight coordinates
//! (ambient node order, ascending).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{RootDatum, Weight};
use crate::sl2::irreducible_weights;
use crate::weyl::{
    construct_weyl_module, freudenthal_multiplicities, head_multiplicities, WeightMultTable,
};

/// Levi-dominant weights of one level with their multiplicities in the source.
pub type LevelTable = BTreeMap<Weight, u64>;

#[derive(Clone, Debug)]
pub struct LeviLevelReport {
    datum: Arc<RootDatum>,
    levi: Arc<RootDatum>,
    highest: Weight,
    removed_node: usize,
    levi_nodes: Vec<usize>,
    levels: Vec<Option<LevelTable>>,
    source: WeightMultTable,
}

impl LeviLevelReport {
    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    /// The derived Levi subsystem, nodes renumbered ascending.
    pub fn levi(&self) -> &Arc<RootDatum> {
        &self.levi
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn removed_node(&self) -> usize {
        self.removed_node
    }

    pub fn levi_nodes(&self) -> &[usize] {
        &self.levi_nodes
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Level `d`, or `None` when the source table is truncated above it.
    pub fn level(&self, d: usize) -> Option<&LevelTable> {
        self.levels.get(d).and_then(|l| l.as_ref())
    }

    pub fn levels(&self) -> &[Option<LevelTable>] {
        &self.levels
    }

    pub fn source_table(&self) -> &WeightMultTable {
        &self.source
    }

    /// Set when the level structure is read in characteristic 3 for a highest
    /// weight that is not a multiple of the first fundamental weight, where the
    /// identification of levels with commutator quotients is not available.
    pub fn p3_warning(&self) -> bool {
        self.source.characteristic() == Some(3)
            && self.highest.coords().iter().skip(1).any(|&c| c != 0)
    }

    /// `sum_d sum_mu mult(mu) |W_L mu|`, over complete levels only.
    pub fn accounted_dimension(&self) -> Result<u64> {
        let mut total = 0u64;
        for table in self.levels.iter().flatten() {
            for (w, &m) in table {
                total += m * self.levi.orbit_size(w)?;
            }
        }
        Ok(total)
    }

    /// Every level present.
    pub fn is_complete(&self) -> bool {
        self.levels.iter().all(|l| l.is_some())
    }

    /// The same levels with Levi coordinates listed in reverse node order.
    pub fn reversed_levels(&self) -> Vec<Option<LevelTable>> {
        self.levels
            .iter()
            .map(|l| {
                l.as_ref().map(|t| {
                    t.iter()
                        .map(|(w, &m)| (reverse_levi_labels(w), m))
                        .collect()
                })
            })
            .collect()
    }
}

/// Reverses the order of Levi coordinates, for Levi subsystems whose nodes are
/// conventionally numbered from the other end.
pub fn reverse_levi_labels(w: &Weight) -> Weight {
    Weight(w.coords().iter().rev().copied().collect())
}

/// Restriction of `lambda` to the Levi on `levi_nodes`: the coefficients at
/// those nodes, in ascending node order.
pub fn smith_top_factor(datum: &RootDatum, lambda: &Weight, levi_nodes: &[usize]) -> Result<Weight> {
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut nodes = levi_nodes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    if let Some(&bad) = nodes.iter().find(|&&j| j >= datum.rank()) {
        return Err(Error::Precondition(format!("node {} out of range", bad + 1)));
    }
    Ok(Weight(nodes.iter().map(|&j| lambda.coords()[j]).collect()))
}

fn restrict(w: &Weight, nodes: &[usize]) -> Weight {
    Weight(nodes.iter().map(|&j| w.coords()[j]).collect())
}

/// Splits the character in `source` into levels with respect to the node
/// `removed_node` (zero-based).
pub fn level_decomposition(source: &WeightMultTable, removed_node: usize) -> Result<LeviLevelReport> {
    let datum = source.datum().clone();
    let rank = datum.rank();
    if removed_node >= rank {
        return Err(Error::Precondition(format!(
            "node {} out of range for {}",
            removed_node + 1,
            datum.label()
        )));
    }
    let lambda = source.highest().clone();
    for w in source.dominant_entries().keys() {
        match datum.depth_vector(&lambda, w) {
            Some(_) => {}
            None => {
                return Err(Error::CorruptTable(format!(
                    "{lambda} - {w} is not a non-negative combination of simple roots"
                )))
            }
        }
    }
    let levi_nodes: Vec<usize> = (0..rank).filter(|&j| j != removed_node).collect();
    let levi = Arc::new(datum.subsystem(&levi_nodes)?);
    // lambda - w0 lambda = lambda + dom(-lambda)
    let lowest_gap = lambda.add(&datum.dominant_representative(&lambda.neg()));
    let top_level = datum
        .weight_to_root_lattice(&lowest_gap)
        .ok_or_else(|| Error::Internal("lambda - w0 lambda outside the root lattice".into()))?
        [removed_node];
    let mut levels = Vec::with_capacity(top_level as usize + 1);
    for d in 0..=top_level {
        levels.push(level_table(source, &datum, &levi, &levi_nodes, removed_node, d)?);
    }
    Ok(LeviLevelReport {
        datum,
        levi,
        highest: lambda,
        removed_node,
        levi_nodes,
        levels,
        source: source.clone(),
    })
}

fn level_table(
    source: &WeightMultTable,
    datum: &RootDatum,
    levi: &RootDatum,
    levi_nodes: &[usize],
    removed: usize,
    d: i64,
) -> Result<Option<LevelTable>> {
    let rank = datum.rank();
    let mut shift = vec![0i64; rank];
    shift[removed] = d;
    let start = source.highest().sub(&datum.root_to_weight(&shift));
    let top = restrict(&start, levi_nodes);
    // A Levi-dominant weight top - sum m_j alpha_j has non-negative root
    // coordinates, which bounds each m_j.
    let bounds: Vec<i64> = levi
        .weight_to_root_coords(&top)
        .iter()
        .map(|r| r.floor().to_integer())
        .collect();
    let mut table = LevelTable::new();
    if bounds.iter().any(|&b| b < 0) {
        return Ok(Some(table));
    }
    let mut m = vec![0i64; levi_nodes.len()];
    loop {
        let mut coords = shift.clone();
        for (k, &j) in levi_nodes.iter().enumerate() {
            coords[j] = m[k];
        }
        let mu = source.highest().sub(&datum.root_to_weight(&coords));
        let local = restrict(&mu, levi_nodes);
        if local.is_dominant() {
            match source.mult(&mu) {
                Ok(0) => {}
                Ok(mult) => {
                    table.insert(local, mult);
                }
                Err(Error::BeyondDepthLimit { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        // Odometer over the box.
        let mut k = 0;
        while k < m.len() {
            if m[k] < bounds[k] {
                m[k] += 1;
                break;
            }
            m[k] = 0;
            k += 1;
        }
        if k == m.len() {
            break;
        }
    }
    Ok(Some(table))
}

/// One Levi composition factor of a level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviFactor {
    pub weight: Weight,
    /// Number of composition factors with this highest weight.
    pub count: u64,
    /// Dimension of the Levi irreducible.
    pub dim: u64,
    /// The weight heads two or more factors.
    pub repeated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateFactorReport {
    pub level: usize,
    pub characteristic: Option<u32>,
    /// The raw Levi-dominant weight census.
    pub census: Vec<(Weight, u64)>,
    /// Composition factors of the level, highest first.
    pub factors: Vec<LeviFactor>,
}

/// Dominant character of the Levi irreducible with highest weight `w`.
fn levi_irreducible(levi: &RootDatum, w: &Weight, p: Option<u32>) -> Result<BTreeMap<Weight, u64>> {
    if let (Some(p), 1) = (p, levi.rank()) {
        let mut out = BTreeMap::new();
        for x in irreducible_weights(w.coords()[0] as u64, p as u64)? {
            if x >= 0 {
                *out.entry(Weight(vec![x])).or_default() += 1;
            }
        }
        return Ok(out);
    }
    let table = match p {
        None => freudenthal_multiplicities(levi, w)?,
        Some(p) => head_multiplicities(&construct_weyl_module(levi, w)?, p as u64)?,
    };
    Ok(table.dominant_entries().clone())
}

/// Composition factors of level `d` as a Levi module, found by stripping
/// Levi irreducible characters (in the characteristic of the source table)
/// from the top of the level's census.
pub fn candidate_factor_report(report: &LeviLevelReport, d: usize) -> Result<CandidateFactorReport> {
    if d >= report.num_levels() {
        return Err(Error::Precondition(format!(
            "level {d} out of range (levels 0..{})",
            report.num_levels()
        )));
    }
    let census = report.level(d).ok_or_else(|| Error::BeyondDepthLimit {
        weight: format!("level {d}"),
        limit: report.source.depth_limit().unwrap_or(0),
    })?;
    let levi = &report.levi;
    let p = report.source.characteristic();
    let rho = levi.rho();
    let mut remaining: BTreeMap<Weight, i64> = census.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
    let mut factors = Vec::new();
    loop {
        remaining.retain(|_, m| *m != 0);
        let Some(top) = remaining
            .keys()
            .max_by_key(|w| (levi.form_scaled(w, &rho), (*w).clone()))
            .cloned()
        else {
            break;
        };
        let count = remaining[&top];
        if count < 0 {
            return Err(Error::CorruptTable(format!(
                "level {d} is not a Levi character at {top}"
            )));
        }
        let ch = levi_irreducible(levi, &top, p)?;
        let mut dim = 0u64;
        for (w, m) in &ch {
            dim += m * levi.orbit_size(w)?;
            *remaining.entry(w.clone()).or_default() -= (*m as i64) * count;
        }
        factors.push(LeviFactor {
            weight: top,
            count: count as u64,
            dim,
            repeated: count >= 2,
        });
    }
    Ok(CandidateFactorReport {
        level: d,
        characteristic: p,
        census: census.iter().map(|(w, &m)| (w.clone(), m)).collect(),
        factors,
    })
}

/// Image of a `G_2` weight under the special isogeny exchanging the root
/// lengths in characteristic 3: `omega_1 -> omega_2`, `omega_2 -> 3 omega_1`.
pub fn g2_graph_image(w: &Weight) -> Weight {
    let c = w.coords();
    Weight(vec![3 * c[1], c[0]])
}

/// Checks that `image` is the transport of `report` under [`g2_graph_image`]:
/// level `d` of `report` (node `i` removed) equals level `3d` of `image` (the
/// other node removed) and every other level of `image` is empty.
pub fn g2_transport_matches(report: &LeviLevelReport, image: &LeviLevelReport) -> bool {
    if report.datum.label() != "G2"
        || image.datum.label() != "G2"
        || report.removed_node != 1
        || image.removed_node != 0
    {
        return false;
    }
    (0..image.num_levels()).all(|e| {
        let want = if e % 3 == 0 {
            report.level(e / 3).cloned().unwrap_or_default()
        } else {
            LevelTable::new()
        };
        image.level(e) == Some(&want)
    }) && report.num_levels() <= image.num_levels() / 3 + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, Family};

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn g2_levels_char_zero() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let t = freudenthal_multiplicities(&g2, &w(&[2, 0])).unwrap();
        let r = level_decomposition(&t, 1).unwrap();
        let l1 = r.level(1).unwrap();
        assert_eq!(l1.get(&w(&[3])), Some(&1));
        assert_eq!(l1.get(&w(&[1])), Some(&2));
        assert_eq!(r.accounted_dimension().unwrap(), 27);
        let top = r.level(0).unwrap().iter().next_back().unwrap();
        assert_eq!(top, (&w(&[2]), &1));
    }

    #[test]
    fn smith_restriction() {
        let f4 = build_root_system(Family::F, 4).unwrap();
        let top = smith_top_factor(&f4, &w(&[1, 2, 3, 4]), &[0, 1, 2]).unwrap();
        assert_eq!(top, w(&[1, 2, 3]));
        assert!(smith_top_factor(&f4, &w(&[1, -2, 3, 4]), &[0]).is_err());
    }

    #[test]
    fn factors_char_zero() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let t = freudenthal_multiplicities(&g2, &w(&[2, 0])).unwrap();
        let r = level_decomposition(&t, 1).unwrap();
        let f = candidate_factor_report(&r, 1).unwrap();
        let got: Vec<(i64, u64)> = f.factors.iter().map(|x| (x.weight.coords()[0], x.count)).collect();
        assert_eq!(got, vec![(3, 1), (1, 1)]);
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse_levi_labels(&w(&[1, 2, 3])), w(&[3, 2, 1]));
    }
}
