//! ARCH tests that stay reliable when the conditional mean is unknown.
//!
//! The LM test for ARCH(p) is applied to residuals from one of three mean
//! regressions: a linear AR benchmark, a k-th order polynomial (Taylor)
//! approximation, or a Nadaraya-Watson kernel regression with a plug-in or
//! cross-validated bandwidth. The [`dgp`] and [`experiment`] modules
//! simulate the linear, threshold, smooth-transition, Markov-switching and
//! bilinear processes used to measure size and power.
//!
//! ```
//! use robarch::{arch_test_pipeline, dgp, MeanModelSpec, RngStream};
//!
//! let spec = dgp::preset("DGP2-2", dgp::ArchErrorSpec::HOMOSKEDASTIC).unwrap();
//! let y = dgp::simulate(&spec, 250, &mut RngStream::new(1, 0)).unwrap();
//! let model: MeanModelSpec = "T3(2)".parse().unwrap();
//! let res = arch_test_pipeline(&y, &model, 1, 0.05).unwrap();
//! assert!((0.0..=1.0).contains(&res.p_value));
//! ```

// `!(x > 0.0)` is used deliberately so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dgp;
pub mod error;
pub mod experiment;
pub mod mean_models;
pub mod numerics;
mod series;

pub use arch_test::{arch_test_pipeline, arch_test_with_fit, lm_arch_test, ArchTestResult};
pub use dgp::{ArchErrorSpec, DgpSpec};
pub use error::{Error, Result};
pub use experiment::{
    CriticalValueTable, ExperimentConfig, NamedDgp, RejectionCell, RejectionTable,
};
pub use mean_models::{BandwidthRule, BandwidthSelection, MeanModelSpec, RegressionFit};
pub use numerics::{OlsSolution, RngStream};
pub use series::TimeSeries;
