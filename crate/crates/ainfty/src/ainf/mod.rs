//! Finite A-infinity categories, Koszul signs and the A-infinity relations.

mod category;
mod chain;
mod koszul;
mod verify;

pub use category::{
    format_lincomb, reduced_degree, AinfCategory, CategoryBuilder, CategoryError, Chain, GenId,
    Generator, GradedBasis, MultilinearMap, ObjId, TermAddress,
};
pub use chain::{sign, LinComb};
pub use koszul::{koszul_sign, KoszulError};
pub use verify::{ainf_relation, relation_splittings, verify_ainf, AinfReport, RelationFailure};
