//! Multi-particle state spaces over finite mode sets and their graded
//! emission/absorption operator algebra.

mod operator;
mod state;
mod universe;

pub use operator::{apply_generator, normal_order, op_apply, super_bracket, Gen, OperatorElement};
pub use state::{
    basis_monomials, contract, contract_dual, interior_product, monomial_contract, monomial_contract_dual,
    monomial_product, pairing, Bra, DualState, FockState, Interior, Ket, Monomial, Side, State,
};
pub use universe::{Sector, Statistics, Universe};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("states or operators belong to different universes")]
    UniverseMismatch,
    #[error("unknown sector '{0}'")]
    UnknownSector(String),
    #[error("unknown mode '{label}' in sector '{sector}'")]
    UnknownMode { sector: String, label: String },
    #[error("duplicate sector '{0}'")]
    DuplicateSector(String),
    #[error("duplicate mode '{label}' in sector '{sector}'")]
    DuplicateMode { sector: String, label: String },
    #[error("expected a rank-1 element, found a rank-{rank} term")]
    RankNotOne { rank: u32 },
}
