//! The free commutative wheelgebra F(A) on a path algebra.
//!
//! Elements are sums of [`WheelTerm`]s in a canonical form; all operations go
//! through [`Diagram`], which tracks arrow occurrences so that Koszul signs come
//! out of a single reordering rule.

pub mod diagram;
pub mod element;
pub mod error;
pub mod random;
pub mod term;

pub use diagram::{Diagram, Loop, Occ, Site, Strand};
pub use element::{contract, wheel_act, wheel_equal, wheel_normalize, wheel_product, WheelElementOver};
pub use error::WheelError;
pub use term::WheelTerm;

pub use ncw_core::Q;
pub type WheelElement = WheelElementOver<Q>;
