//! Stacked-ensemble multi-target essay scoring.
//!
//! The crate trains seeded base regressors (ridge, linear epsilon-SVR, a
//! sigmoid head) on precomputed transformer embeddings, assigns folds by
//! iterative multilabel stratification, searches embedding combinations with
//! greedy forward selection, and combines base predictions through a
//! two-stage stacking ensemble: a ridge stacker on out-of-fold predictions
//! and a gradient-boosted tree stacker on predictions plus readability
//! meta-features, blended by simplex-constrained weights.
//!
//! Everything is deterministic in a single seed; artifacts serialize to
//! versioned JSON/CSV/binary formats so full pipeline runs reproduce
//! byte-identically.

pub mod config;
pub mod data;
pub mod emb1;
pub mod error;
pub mod folds;
pub mod gbdt;
pub mod head;
pub mod linear;
pub mod matrix;
pub mod metrics;
pub mod pipeline;
pub mod pseudo;
pub mod readability;
pub mod rng;
pub mod selection;
pub mod stacking;
pub mod synth;

pub use error::{Error, Result};
pub use matrix::Matrix;
