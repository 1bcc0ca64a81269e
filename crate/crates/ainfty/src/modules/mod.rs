//! Yoneda modules, bimodules, bimodule homomorphisms and tensor products over a
//! subcategory.

mod bimodule;
mod hom;
mod side;
mod tensor;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ainf::{AinfCategory, GenId, ObjId};
use crate::linalg::LinalgError;

pub use bimodule::{
    bimodule_relation, diagonal_bimodule, input_blocks, module_splits, tensor_bimodule, verify_bimodule, BimodChain, BimodGen,
    BimodKey, BimodOrigin, Bimodule, BimoduleFailure, BimoduleReport,
};
pub use hom::{bimodule_hom_relation, verify_bimodule_hom, BimoduleHom};
pub use side::{yoneda_module, ModChain, ModGen, Side, SideModule};
pub use tensor::{
    chain_coordinates, hom_basis_by_degree, hom_complex, mu_composition, mu_composition_word,
    bar_degree, tensor_differential, tensor_over_category, word_degree, word_label, TensorComplex, TensorWord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("unknown object {0}")]
    UnknownObject(ObjId),
    #[error("expected a {expected:?} module, found {found:?}")]
    SideMismatch { expected: Side, found: Side },
    #[error("modules are defined over different subcategories")]
    SubcategoryMismatch,
    #[error("degree rule violated for {input} -> {output}: expected {expected}, found {found}")]
    DegreeRule {
        input: String,
        output: String,
        expected: i64,
        found: i64,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Composable words of `len` morphisms inside the full subcategory on `b`,
/// in composition order.
pub fn paths(c: &AinfCategory, b: &BTreeSet<ObjId>, len: usize) -> Vec<Vec<GenId>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    c.composable_tuples(len, Some(b))
}

/// All objects of `c`.
pub fn all_objects(c: &AinfCategory) -> BTreeSet<ObjId> {
    (0..c.objects().len()).collect()
}

#[cfg(test)]
mod tests;
