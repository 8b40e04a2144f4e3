//! Exact scalars over ℚ(i, √2) and rational length-unit exponents.

mod scalar;
mod text;
mod unit;

pub use scalar::Scalar;
pub use text::parse_scalar_prefix;
pub use unit::{unit_combine, UnitExponent};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("scalar parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

/// Complex conjugation `a + b·i + c·√2 + d·i√2 ↦ a − b·i + c·√2 − d·i√2`.
pub fn scalar_conj(x: &Scalar) -> Scalar {
    x.conj()
}
