//! Two-spinor algebra: the spaces `U`, `U*`, `Ū`, `Ū*`, the symplectic form
//! ε, the generated Minkowski space `H ⊂ U⊗Ū` with metric `g = ε⊗ε̄`, Pauli
//! tetrads and the null-vector decomposition `y = ±u⊗ū`.

mod epsilon;
mod minkowski;
mod tensor;

pub use epsilon::{eps_flat, eps_sharp, Epsilon};
pub use minkowski::{
    g_pairing, hermitian_split, hermitian_transpose, null_decompose, null_decompose_scaled, outer_conj,
    pauli_matrices, pauli_tetrad, standard_tetrad, Metric, MinkVector, NullDecomposition,
    ScaledNullDecomposition, TimeOrientation,
};
pub use tensor::{ScaledTensor, SpinIndex, Variance};

use thiserror::Error;

use crate::exactfield::{Scalar, UnitExponent};

fn slot_list(v: &[Variance]) -> String {
    let names: Vec<&str> = v.iter().map(|x| x.name()).collect();
    format!("[{}]", names.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("variance mismatch: expected {}, found {}", slot_list(.expected), slot_list(.found))]
    Variance { expected: Vec<Variance>, found: Vec<Variance> },
    #[error("unit mismatch: L^{left} vs L^{right}")]
    Unit { left: UnitExponent, right: UnitExponent },
    #[error("index {index:?} invalid for a rank-{rank} tensor")]
    BadIndex { index: Vec<u8>, rank: usize },
    #[error("cannot contract slots {p} and {q} of {}", slot_list(.slots))]
    Contraction { slots: Vec<Variance>, p: usize, q: usize },
    #[error("tensor is not Hermitian")]
    NotHermitian,
    #[error("degenerate spinor basis")]
    DegenerateBasis,
    #[error("basis is not eps-normalized: eps(b1,b2) = {eps_value}")]
    UnnormalizedBasis { eps_value: Box<Scalar> },
    #[error("vector is not null: g(y,y) = {norm}")]
    NotNull { norm: Box<Scalar> },
    #[error("zero vector has no null decomposition")]
    ZeroVector,
    #[error("no phase representative over Q(i,r2): |u|^2 = {norm_sqr} is not a square")]
    NoFieldRepresentative { norm_sqr: Box<Scalar> },
}
