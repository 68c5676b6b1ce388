//! Exact constructible-function calculus with finite group actions.
//!
//! The crate is organised by subject: [`simplicial`] holds complexes and the
//! operations on constructible functions, [`hecke`] convolution algebras,
//! [`conic`] fans and the Fourier-Sato transform, [`roots`] root data and
//! Weyl characters, [`charp`] orthogonal groups in characteristic two, and
//! [`tate`] complexes of modules over `F_p[Z/p]`.

pub mod charp;
pub mod conic;
pub mod error;
pub mod checks;
pub mod gen;
pub mod hecke;
pub mod io;
pub mod linalg;
pub mod roots;
pub mod scalar;
pub mod simplicial;
pub mod tate;

pub use error::{Error, Result};
pub use scalar::{Ring, Scalar};
