//! Double derivations, double and wheeled brackets, and the necklace Lie bialgebra.

pub mod bracket;
pub mod checks;
pub mod error;
pub mod necklace;
pub mod tensor;

pub use bracket::{apply_double_derivation, double_bracket, star_base_pairs, wheeled_bracket, PairScope};
pub use error::CalcError;
pub use necklace::{
    bracket_contraction, bracket_shift, cobracket_extended, cyclic_of, lifted_bracket, lifted_cobracket, necklace_bracket,
    necklace_bracket_elems, necklace_cobracket, pr, target_shift, NecklaceSym,
};
pub use tensor::TensorOver;

pub use ncw_core::Q;
pub type Tensor = TensorOver<Q>;
