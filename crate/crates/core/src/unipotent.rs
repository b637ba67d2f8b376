//! Unipotent class representatives of `G_2` as words in root elements, their
//! Jordan types on modular modules, and the single-block scan over `G_2`
//! irreducibles.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{check_prime, FpMatrix};
use crate::jordan::{jordan_type, single_nontrivial_block, JordanType};
use crate::root_system::{build_root_system, Family, Weight};
use crate::weyl::{
    construct_weyl_module_with, irreducible_head_mod_p, root_element, weyl_dimension_usize,
    BuildOptions, ModularModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassLabel {
    #[serde(rename = "regular")]
    Regular,
    G2a1,
    A1_3,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassLabel::Regular => "regular",
            ClassLabel::G2a1 => "G2a1",
            ClassLabel::A1_3 => "A1_3",
            ClassLabel::Custom => "custom",
        })
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(ClassLabel::Regular),
            "G2a1" | "g2a1" => Ok(ClassLabel::G2a1),
            "A1_3" | "a1_3" => Ok(ClassLabel::A1_3),
            "custom" => Ok(ClassLabel::Custom),
            _ => Err(Error::Parse(format!(
                "unknown class '{s}' (expected regular, G2a1, A1_3)"
            ))),
        }
    }
}

/// A product `x_(beta_1)(t_1) x_(beta_2)(t_2) ...`, evaluated left to right.
/// Roots are in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnipotentRepresentative {
    pub label: ClassLabel,
    pub word: Vec<(Vec<i64>, u64)>,
    pub p: u64,
}

impl UnipotentRepresentative {
    pub fn custom(word: Vec<(Vec<i64>, u64)>, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(UnipotentRepresentative {
            label: ClassLabel::Custom,
            word,
            p,
        })
    }

    /// Matrix of the word on `module`.
    pub fn matrix(&self, module: &ModularModule) -> Result<FpMatrix> {
        if module.prime() as u64 != self.p {
            return Err(Error::Precondition(format!(
                "representative is defined over F_{} but the module over F_{}",
                self.p,
                module.prime()
            )));
        }
        let mut u = FpMatrix::identity(module.prime(), module.dim());
        for (root, t) in &self.word {
            u = u.mul(&root_element(module, root, *t)?);
        }
        Ok(u)
    }
}

pub fn g2_class_representative(label: ClassLabel, p: u64) -> Result<UnipotentRepresentative> {
    check_prime(p)?;
    let word = match (label, p) {
        (ClassLabel::Regular, _) => vec![(vec![-1, 0], 1), (vec![0, -1], 1)],
        (ClassLabel::G2a1, 2) => vec![(vec![0, 1], 1), (vec![3, 1], 1)],
        (ClassLabel::A1_3, 3) => vec![(vec![2, 1], 1), (vec![3, 2], 1)],
        (ClassLabel::G2a1, _) => {
            return Err(Error::Inadmissible(format!("G2a1 is only used for p = 2, not p = {p}")))
        }
        (ClassLabel::A1_3, _) => {
            return Err(Error::Inadmissible(format!("A1_3 is only used for p = 3, not p = {p}")))
        }
        (ClassLabel::Custom, _) => {
            return Err(Error::Inadmissible(
                "custom representatives are built from an explicit word".into(),
            ))
        }
    };
    Ok(UnipotentRepresentative { label, word, p })
}

pub fn jordan_on_rep(rep: &UnipotentRepresentative, module: &ModularModule) -> Result<JordanType> {
    jordan_type(&rep.matrix(module)?)
}

/// Order of a unipotent matrix, found by repeated `p`-th powers.
pub fn p_power_order(u: &FpMatrix) -> Result<u64> {
    let p = u.prime() as u64;
    let mut acc = u.clone();
    let mut order = 1u64;
    for _ in 0..=u.rows() {
        if acc.is_identity() {
            return Ok(order);
        }
        acc = acc.pow(p);
        order *= p;
    }
    Err(Error::NotUnipotent {
        stable_rank: acc.sub_identity().rank(),
    })
}

/// Multiplicative order of the representative on `module`.
pub fn order_on_module(rep: &UnipotentRepresentative, module: &ModularModule) -> Result<u64> {
    p_power_order(&rep.matrix(module)?)
}

/// `L(lambda)` for `G_2` in characteristic `p`, as the head of the Weyl module.
pub fn g2_irreducible(lambda: &Weight, p: u64, size_cap: usize) -> Result<ModularModule> {
    let g2 = build_root_system(Family::G, 2)?;
    let rep = construct_weyl_module_with(
        &g2,
        lambda,
        &BuildOptions {
            size_cap,
            max_depth: None,
        },
    )?;
    irreducible_head_mod_p(&rep, p)
}

/// `G_2` highest weights whose Weyl module has dimension at most `bound`,
/// ordered by dimension and then by coordinates.
pub fn g2_weights_up_to(bound: usize) -> Result<Vec<Weight>> {
    let g2 = build_root_system(Family::G, 2)?;
    let mut out = Vec::new();
    for a in 0..=bound as i64 {
        for b in 0..=bound as i64 {
            if a + b == 0 {
                continue;
            }
            let w = Weight(vec![a, b]);
            if let Some(d) = weyl_dimension_usize(&g2, &w)? {
                if d <= bound {
                    out.push((d, w));
                }
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

/// One row of the verdict table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub p: u64,
    pub highest: Weight,
    pub dim: usize,
    pub class: ClassLabel,
    pub jordan_type: JordanType,
    pub single_block: bool,
    /// Single block exactly for the regular class on modules of dimension at
    /// most 7.
    pub prediction: bool,
    pub agree: bool,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedCase {
    pub p: u64,
    pub highest: Option<Weight>,
    pub class: ClassLabel,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerdictTable {
    pub rows: Vec<VerdictRow>,
    pub skipped: Vec<SkippedCase>,
}

impl VerdictTable {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn first_disagreement(&self) -> Option<&VerdictRow> {
        self.rows.iter().find(|r| !r.agree)
    }
}

pub fn mth1_scan(
    primes: &[u64],
    weights: &[Weight],
    classes: &[ClassLabel],
    size_cap: usize,
) -> Result<VerdictTable> {
    let mut table = VerdictTable::default();
    for &p in primes {
        let mut reps = Vec::new();
        for &label in classes {
            match g2_class_representative(label, p) {
                Ok(r) => reps.push(r),
                Err(Error::Inadmissible(reason)) => table.skipped.push(SkippedCase {
                    p,
                    highest: None,
                    class: label,
                    reason,
                }),
                Err(e) => return Err(e),
            }
        }
        for w in weights {
            let module = match g2_irreducible(w, p, size_cap) {
                Ok(m) => m,
                Err(Error::SizeCap { dim, cap }) => {
                    for r in &reps {
                        table.skipped.push(SkippedCase {
                            p,
                            highest: Some(w.clone()),
                            class: r.label,
                            reason: format!("Weyl module of dimension {dim} exceeds the cap {cap}"),
                        });
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            for r in &reps {
                let u = r.matrix(&module)?;
                let t = jordan_type(&u)?;
                let single = single_nontrivial_block(&t);
                let prediction = r.label == ClassLabel::Regular && module.dim() <= 7;
                table.rows.push(VerdictRow {
                    p,
                    highest: w.clone(),
                    dim: module.dim(),
                    class: r.label,
                    order: p_power_order(&u)?,
                    jordan_type: t,
                    single_block: single,
                    prediction,
                    agree: single == prediction,
                });
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_on_natural_module() {
        let m = g2_irreducible(&Weight(vec![1, 0]), 7, 200).unwrap();
        let r = g2_class_representative(ClassLabel::Regular, 7).unwrap();
        assert_eq!(jordan_on_rep(&r, &m).unwrap().to_string(), "7");
        assert_eq!(order_on_module(&r, &m).unwrap(), 7);
    }

    #[test]
    fn admissibility() {
        assert!(g2_class_representative(ClassLabel::G2a1, 3).is_err());
        assert!(g2_class_representative(ClassLabel::A1_3, 2).is_err());
        assert!(g2_class_representative(ClassLabel::A1_3, 3).is_ok());
    }

    #[test]
    fn small_weights() {
        let ws = g2_weights_up_to(200).unwrap();
        let dims: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(dims, ["1,0", "0,1", "2,0", "1,1", "0,2", "3,0", "4,0", "2,1"]);
    }

    #[test]
    fn prime_mismatch() {
        let m = g2_irreducible(&Weight(vec![1, 0]), 5, 200).unwrap();
        let r = g2_class_representative(ClassLabel::Regular, 7).unwrap();
        assert!(jordan_on_rep(&r, &m).is_err());
    }
}
