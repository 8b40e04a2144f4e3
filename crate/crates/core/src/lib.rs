//! Exact computer-algebra kernel for two-spinor geometry, Dirac spinors,
//! Froelicher–Nijenhuis calculus on coordinate charts and multi-particle
//! (Fock) operator algebras, all over the field ℚ(i, √2).

pub mod diracw;
pub mod cli;
pub mod exactfield;
pub mod fockalg;
pub mod fnforms;
pub mod matrix;
pub mod spintensor;

pub use exactfield::{Scalar, UnitExponent};
