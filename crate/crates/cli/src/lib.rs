//! The `ncw` command-line front end: an expression language over wheeled
//! elements and operators, one-shot computations, and seeded check suites.

pub mod commands;
pub mod expr;
pub mod suites;

pub use commands::run;
