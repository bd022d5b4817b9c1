//! Multi-label learning regularized by the tail sum of singular values.
//!
//! The predictor `W` (`d x L`) is trained by proximal gradient descent on
//! `‖Y − XW‖_F² + C·Σ_{j>θ} σ_j(W)`, where each prox step is a conditional
//! singular value thresholding. Baseline regularizers (trace norm, squared
//! Frobenius norm, none), bound calculators, evaluation metrics, ARFF
//! ingestion and a small matrix-completion demo are included.
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod completion;
pub mod data;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod prox;
pub mod solver;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, SvdResult};
