//! Blind amplitude/phase calibration of a multi-antenna receiver from pilots
//! observed over a Ricean channel.
//!
//! - [`model`]: signal model, steering vectors, stacked mean and covariance,
//!   DFT whitening.
//! - [`channel`]: seeded channel realizations and sample moments.
//! - [`estimators`]: moment and numeric maximum-likelihood phase estimators,
//!   and the moment amplitude estimator.
//! - [`crlb`]: Fisher information and Cramér–Rao bounds.
//! - [`harness`]: Monte-Carlo sweeps, CSV output and self-checks.

pub mod channel;
pub mod crlb;
mod error;
pub mod estimators;
pub mod harness;
pub mod model;

pub use error::{Error, Result};
