//! Exact computational algebra for Hecke algebras of finite simply-laced
//! Coxeter systems with one independent deformation parameter per generator,
//! each parameter being 0 or 1 after normalization.

pub mod cli;
pub mod combinat;
pub mod coxeter;
pub mod error;
pub mod heckealg;
pub mod indres;
pub mod linalg;
pub mod repthy;
pub mod selftest;
pub mod tower;
pub mod zerohecke;

pub use error::{Error, Result};
