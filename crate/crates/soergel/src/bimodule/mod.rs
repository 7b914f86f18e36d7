//! A small lab for Soergel bimodules over the polynomial ring of type A:
//! explicit Bott-Samelson tensors in normal form, Demazure operators, graded
//! bimodule maps, the idempotent splitting of B_s B_s, and degreewise Hom
//! and cyclic-generation computations.
//!
//! Everything is exact, over the rationals (the invariant splitting divides
//! by 2, so a coefficient field of characteristic 2 would break it).

pub mod maps;
pub mod multipoly;
pub mod tensor;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("splitting failed: {0}")]
    SplitFailed(String),
}

pub use maps::{
    cyclic_generation_check, hom_basis, hom_basis_bs_bs, split_bs_bs, BimoduleMap, BsSplit,
    HomBasis, HomGenerator,
};
pub use multipoly::{alpha, demazure, invariant_split, MultiPoly};
pub use tensor::{graded_left_rank, TensorElt};
