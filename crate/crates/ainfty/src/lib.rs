pub mod ainf;
pub mod cardy;
pub mod fixtures;
pub mod generation;
pub mod hochschild;
pub mod linalg;
pub mod modules;
pub mod strata;
