//! Polynomial differential forms on a chart `ℝ^m`, the Froelicher–Nijenhuis
//! bracket, and chart-level gauge calculus.

mod connection;
mod form;
mod poly;
mod tangent;
mod text;

pub use connection::{
    bianchi_residual, covariant_differential, curvature, matrix_wedge, matrix_wedge_vec, MatrixForm, PolyMatrix, PolyVec, VecForm,
};
pub use form::{axes_of, ext_derivative, wedge_sign, AxisSet, Form, FormValue, ScalarForm};
pub use poly::{axis_index, Poly, AXIS_NAMES};
pub use text::subset_name;
pub use tangent::{fn_bracket, fnb_decomposable, lie_bracket, lie_derivative, TangentForm, VectorField};

/// Largest supported chart dimension.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("polynomial parse error at offset {offset}: {msg}")]
    PolyParse { offset: usize, msg: String },
    #[error("chart dimension mismatch: {left} vs {right}")]
    ChartMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree overflow: {r} + {s} exceeds chart dimension {dim}")]
    DegreeOverflow { r: usize, s: usize, dim: usize },
    #[error("fibre dimension mismatch: {left} vs {right}")]
    FibreMismatch { left: usize, right: usize },
    #[error("expected a vector field, got a tangent-valued {degree}-form")]
    NotVectorField { degree: usize },
    #[error("expected a connection 1-form, got degree {degree}")]
    NotConnection { degree: usize },
}
