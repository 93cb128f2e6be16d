//! Noncommutative differential calculus on `R ⊗ R` and the Koszul-level
//! liftings for trimmed and differential Ore extensions.

mod complex;
mod env;
mod tensor;

pub use complex::{
    basis_tuples, insert_sorted, verify_chain_map, ChainElem, ChainMapReport, Check, Identity, KoszulComplex,
    LiftCase,
};
pub use env::{EnvElem, Envelope, OreMono};
pub use tensor::{delta_p, mu, nc_jacobian, nc_jacobian_minor, nc_one_form, twisted_one_form, TensorRR};
