//! Conjugated Clifford circuits.
//!
//! A `U`-conjugated Clifford circuit starts in `|0^n>`, applies `U` to every
//! qubit, runs a Clifford circuit `V` over `{H, S, CNOT}`, applies `U†` to
//! every qubit and measures in the computational basis. This crate classifies
//! the single-qubit `U` by weak-simulation complexity, simulates the easy
//! cases with a stabilizer tableau, evaluates postselection gadgets, and
//! carries the Monte Carlo and measurement-based-computation checks that go
//! with them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! parallel drivers live in the `ccc` companion crate.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod ccc;
pub mod experiments;
pub mod gadgets;
pub mod linalg;
pub mod mbqc;
pub mod stabilizer;

pub use bits::BitString;
pub use num_complex::Complex64;

/// Tolerance for structural predicates (unitarity, Clifford membership).
pub const TOL_STRUCTURAL: f64 = 1e-8;
/// Tolerance for closed-form equality checks.
pub const TOL_CLOSED_FORM: f64 = 1e-10;
/// Tolerance for arithmetic identities.
pub const TOL_ARITHMETIC: f64 = 1e-12;
