//! Random streams, least squares, chi-square tails and order statistics.

mod chi2;
mod ols;
mod rng;
pub mod stats;

pub use chi2::chi2_survival;
pub use ols::{ols, OlsSolution};
pub use rng::{standard_normal_draws, stream_id_for, RngStream};
pub use stats::interquartile_range;
