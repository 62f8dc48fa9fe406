//! Anyon data for the quantum double D(G) of a finite group.
//!
//! Group tables, character tables, S/T matrices and fusion rules, 2-cocycles,
//! boundary condensation and domain-wall tunneling, modular-invariant searches,
//! and a state-vector simulator of the Kitaev lattice model with a boundary
//! that serves as an independent check of the condensation characters.

pub mod characters;
pub mod cocycles;
pub mod condensation;
mod error;
pub mod groups;
pub mod io;
pub mod lattice;
pub mod modular;
pub mod quantum_double;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Numerical tolerances shared by every module.
pub mod tol {
    /// Equality of floating values.
    pub const EQ: f64 = 1e-8;
    /// Snapping a character value onto a sum of roots of unity.
    pub const SNAP: f64 = 1e-6;
    /// Rounding a multiplicity to an integer.
    pub const MULT: f64 = 1e-4;
    /// Rounding a Verlinde coefficient to an integer.
    pub const FUSION: f64 = 1e-6;
}
