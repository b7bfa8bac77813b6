//! Wheeled differential operators on F(A).
//!
//! An operator is stored as a normal-ordered wheel element over the doubled
//! quiver: base arrows multiply, star arrows `e*` act as annihilators `∂_e`.
//! Applying an operator juxtaposes it in front of its argument and contracts
//! every annihilator with a matching arrow of the argument, in all ways.

pub mod error;
pub mod groth;
pub mod op;
pub mod symbol;
pub mod weil;

pub use error::DiffOpError;
pub use groth::{groth2_apply, DerivationOver};
pub use op::{apply_op, commutator, compose_ops, swap_front, WheeledDiffOpOver};
pub use symbol::{iterated_commutator, principal_symbol, principal_symbol_closed, principal_symbol_fn, symbol_data, OpFn};
pub use weil::weil_element;

pub use ncw_core::Q;
pub type WheeledDiffOp = WheeledDiffOpOver<Q>;
pub type Derivation = DerivationOver<Q>;
