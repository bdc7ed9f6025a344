//! Numerical verification of deformed oscillator algebras on truncated Fock
//! spaces.
//!
//! * [`fock`]: bases, dense operator matrices, the C_λ-extended building
//!   blocks (projectors, Klein operator, structure-function ladders).
//! * [`dsl`]: a small language for algebra presentations, with parser,
//!   renderer and a residual evaluator.
//! * [`exotic`]: the ν-deformed exotic-particle constructions, relation
//!   presets, Taylor-block forms and ν sweeps.

pub mod dsl;
pub mod exotic;
pub mod fock;

pub use num_complex::Complex64;
