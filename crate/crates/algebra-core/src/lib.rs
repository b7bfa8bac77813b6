//! Quivers, paths and exact path-algebra arithmetic.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix the
//! coefficient field to arbitrary-precision rationals.

pub mod cyclic;
pub mod error;
pub mod ncpoly;
pub mod path;
pub mod perm;
pub mod quiver;
pub mod scalar;

pub use cyclic::{canonical_rotation, cyclic_normalize, normalize_word, rotation_sign, CyclicWord};
pub use error::CoreError;
pub use ncpoly::{ncpoly_mul, NcPolyOver};
pub use path::{path_compose, Path};
pub use perm::{koszul_reorder_sign, koszul_sign, koszul_sign_graded, permute_parities, Permutation};
pub use quiver::{Arrow, ArrowId, ArrowSpec, Grade, Quiver, QuiverSpec, Stratum, VertexId};
pub use scalar::{accumulate, parse_scalar, Scalar};

pub type Q = num_rational::BigRational;
pub type NcPoly = NcPolyOver<Q>;
