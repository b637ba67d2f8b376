//! Characters, integral forms and modular realizations of Weyl modules.

pub mod character;
pub mod dump;
pub mod integral;
pub mod modular;

use std::fmt;

use crate::error::{Error, Result};
use crate::root_system::RootDatum;

pub use character::{
    freudenthal_multiplicities, is_multiplicity_free, scan_multiplicity_free, weyl_dimension,
    weyl_dimension_usize, MultFreeEntry, WeightMultTable,
};
pub use integral::{
    construct_weyl_module, construct_weyl_module_with, contravariant_gram, BuildOptions,
    GramBlock, IntegralRep, DEFAULT_SIZE_CAP,
};
pub use modular::{
    frobenius_twist, head_multiplicities, irreducible_head_mod_p, modular_weight_multiplicities, reduce_mod_p,
    root_element, root_element_integral, steinberg_product, trivial_fixed_space, ModularModule,
};

/// A root `±beta` with `beta` positive, identified by the index of `beta` in
/// [`RootDatum::positive_roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn positive(index: usize) -> Self {
        SignedRoot {
            index,
            negative: false,
        }
    }

    pub fn negative(index: usize) -> Self {
        SignedRoot {
            index,
            negative: true,
        }
    }

    /// Resolves a root given in simple-root coordinates.
    pub fn resolve(datum: &RootDatum, coords: &[i64]) -> Result<Self> {
        if coords.len() != datum.rank() {
            return Err(Error::NotARoot(format!("{coords:?}")));
        }
        datum
            .find_root(coords)
            .map(|(index, negative)| SignedRoot { index, negative })
            .ok_or_else(|| Error::NotARoot(format!("{coords:?}")))
    }

    /// Simple-root coordinates.
    pub fn coords(&self, datum: &RootDatum) -> Vec<i64> {
        let r = &datum.positive_roots()[self.index];
        if self.negative {
            r.iter().map(|c| -c).collect()
        } else {
            r.clone()
        }
    }

    /// Dense id in `0..2N`: positive roots first.
    pub fn id(&self, num_positive: usize) -> usize {
        if self.negative {
            num_positive + self.index
        } else {
            self.index
        }
    }

    pub fn from_id(id: usize, num_positive: usize) -> Self {
        if id >= num_positive {
            SignedRoot::negative(id - num_positive)
        } else {
            SignedRoot::positive(id)
        }
    }
}

impl fmt::Display for SignedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { "-" } else { "+" }, self.index)
    }
}
