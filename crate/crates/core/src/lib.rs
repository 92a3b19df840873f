//! High-precision Toeplitz+Hankel determinants and their Riemann-Hilbert asymptotics.

pub mod asymptotics;
pub mod determinants;
pub mod error;
pub mod fourier;
pub mod ising;
pub mod numerics;
pub mod symbols;
pub mod szego;

pub use error::{Error, Result};
pub use numerics::{PrecComplex, PrecMatrix, Precision};
