//! Exact symbolic workbench for algebraic spectral triples built from bimodule
//! connections, with three built-in geometries (2×2 matrices, the standard
//! q-sphere and the quantum disk) and a Chern-connection engine.

#![allow(clippy::needless_range_loop)]

pub mod bimod;
pub mod calculus;
pub mod connect;
pub mod hopfact;
pub mod models;
pub mod ncalg;
pub mod report;
pub mod scalar;
pub mod spectral;

use thiserror::Error;

pub use ncalg::{AlgElem, Presentation, StarAlgebra};
pub use scalar::{GaussRat, Scalar, ScalarError};

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Alg(#[from] ncalg::AlgError),
    #[error(transparent)]
    Module(#[from] bimod::ModError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Connect(#[from] connect::ConnectError),
    #[error(transparent)]
    Model(#[from] models::ModelError),
}

pub type Result<T> = std::result::Result<T, Error>;
