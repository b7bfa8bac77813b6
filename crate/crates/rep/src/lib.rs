//! Matrix evaluation of paths and wheels on representation spaces.
//!
//! A dimension vector fixes `Rep(Q, d)`; base arrows become matrices of
//! coordinates, star arrows their (negated) partners, and wheel elements
//! become tensors whose entries are trace polynomials.

pub mod bracket;
pub mod dim;
pub mod error;
pub mod eval;
pub mod matrix;
pub mod poly;

pub use bracket::{matrix_poisson, odd_laplacian};
pub use dim::DimVector;
pub use error::RepError;
pub use eval::{ev_path, ev_wheel, RepPointOver, WheelValueOver};
pub use matrix::MatrixOver;
pub use poly::{Monomial, SuperPolyOver, Var};

pub use ncw_core::Q;
pub type SuperPoly = SuperPolyOver<Q>;
/// Polynomials with even coordinates only.
pub type CommPoly = SuperPolyOver<Q>;
pub type Matrix = MatrixOver<Q>;
pub type RepPoint = RepPointOver<Q>;
pub type WheelValue = WheelValueOver<Q>;
