//! Bimodule connections on the double derivations of a quiver path algebra,
//! their torsion and curvature, and the BV operator `D_∇ = i_ι ∘ ∇`.

pub mod connection;
pub mod error;
pub mod nabla;
pub mod random;
pub mod torsion;

pub use connection::{parse_value_term, ConnectionOver, Side};
pub use error::BvError;
pub use nabla::{bv_operator, contract_iota, contract_pairs, i_form, nabla_extend};
pub use torsion::{
    check_curvature_linear, curvature, curvature_trace, divergence, iota, rank_element, torsion, torsion_eval, torsion_formula,
    torsion_mismatches,
};

pub use ncw_core::Q;
pub type Connection = ConnectionOver<Q>;
