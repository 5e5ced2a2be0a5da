//! Conditional-mean regressions whose residuals feed the ARCH test.
//!
//! Three families are supported:
//!
//! * linear autoregression with intercept, `AR(p)`;
//! * a k-th order polynomial (Taylor) expansion in q lags, `Tk(q)`;
//! * Nadaraya-Watson regression on s lags with a product Gaussian kernel,
//!   bandwidth from the robust plug-in rule (`NPpl(s)`) or leave-one-out
//!   cross-validation over a multiplier grid (`NPcv(s)`).
//!
//! All fits drop the first `lags` observations, so a fit on a series of
//! length T carries T - lags residuals.

mod ar;
mod kernel;
mod taylor;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub use ar::fit_ar;
pub use kernel::{
    cv_bandwidth, gaussian_kernel, nw_fit, plugin_bandwidth, BandwidthRule, BandwidthSelection,
    DEFAULT_CV_GRID,
};
pub use taylor::{fit_taylor, taylor_column_count, taylor_design};

/// Which conditional-mean regression to fit.
///
/// Text form: `AR(p)`, `Tk(q)` (e.g. `T3(2)`), `NPpl(s)`, `NPcv(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum MeanModelSpec {
    Ar {
        lags: usize,
    },
    Taylor {
        lags: usize,
        order: usize,
    },
    NadarayaWatson {
        lags: usize,
        bandwidth: BandwidthRule,
    },
}

impl MeanModelSpec {
    pub fn lags(&self) -> usize {
        match *self {
            Self::Ar { lags } | Self::Taylor { lags, .. } | Self::NadarayaWatson { lags, .. } => {
                lags
            }
        }
    }

    /// Lags must be positive and Taylor order at least 2. `q > k` is allowed.
    pub fn validate(&self) -> Result<()> {
        if self.lags() == 0 {
            return Err(Error::InvalidInput(format!(
                "{self}: lag length must be >= 1"
            )));
        }
        if let Self::Taylor { order, .. } = *self {
            if order < 2 {
                return Err(Error::InvalidInput(format!(
                    "{self}: Taylor order must be >= 2"
                )));
            }
        }
        Ok(())
    }

    pub fn is_kernel(&self) -> bool {
        matches!(self, Self::NadarayaWatson { .. })
    }
}

impl fmt::Display for MeanModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Ar { lags } => write!(f, "AR({lags})"),
            Self::Taylor { lags, order } => write!(f, "T{order}({lags})"),
            Self::NadarayaWatson { lags, bandwidth } => {
                let tag = match bandwidth {
                    BandwidthRule::PlugIn => "pl",
                    BandwidthRule::CrossValidation => "cv",
                };
                write!(f, "NP{tag}({lags})")
            }
        }
    }
}

impl FromStr for MeanModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ModelParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact.find('(').ok_or_else(bad)?;
        if !compact.ends_with(')') {
            return Err(bad());
        }
        let head = compact[..open].to_ascii_lowercase();
        let lags: usize = compact[open + 1..compact.len() - 1]
            .parse()
            .map_err(|_| bad())?;
        let spec = match head.as_str() {
            "ar" => Self::Ar { lags },
            "nppl" | "np_pl" | "np-pl" => Self::NadarayaWatson {
                lags,
                bandwidth: BandwidthRule::PlugIn,
            },
            "npcv" | "np_cv" | "np-cv" => Self::NadarayaWatson {
                lags,
                bandwidth: BandwidthRule::CrossValidation,
            },
            h if h.starts_with('t') => Self::Taylor {
                lags,
                order: h[1..].parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for MeanModelSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MeanModelSpec> for String {
    fn from(m: MeanModelSpec) -> String {
        m.to_string()
    }
}

/// Output of a mean regression.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    pub model: MeanModelSpec,
    pub fitted: Vec<f64>,
    /// û_t = y_t - fitted_t for t = effective_start..=T.
    pub residuals: Vec<f64>,
    /// 1-based index of the first observation with all lags available.
    pub effective_start: usize,
    /// Number of regression coefficients; 0 for kernel fits.
    pub n_params: usize,
    /// OLS coefficients (empty for kernel fits).
    pub coefficients: Vec<f64>,
    /// Set when the OLS design was rank deficient and a minimum-norm fit was used.
    pub rank_deficient: bool,
    pub bandwidth: Option<BandwidthSelection>,
}

impl RegressionFit {
    pub fn ssr(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }
}

/// Builds rows (y_{t-1}, ..., y_{t-lags}) and targets y_t for t = lags+1..=T.
/// No intercept column.
pub fn lag_matrix(y: &[f64], lags: usize) -> Result<(DMatrix<f64>, Vec<f64>)> {
    if lags == 0 {
        return Err(Error::InvalidInput("lag count must be >= 1".into()));
    }
    if y.len() <= lags {
        return Err(Error::InsufficientData {
            needed: lags,
            got: y.len(),
        });
    }
    let n = y.len() - lags;
    let design = DMatrix::from_fn(n, lags, |r, j| y[r + lags - 1 - j]);
    Ok((design, y[lags..].to_vec()))
}

/// Fits `model` to `y`.
pub fn fit(y: &TimeSeries, model: &MeanModelSpec) -> Result<RegressionFit> {
    model.validate()?;
    match *model {
        MeanModelSpec::Ar { lags } => fit_ar(y, lags),
        MeanModelSpec::Taylor { lags, order } => fit_taylor(y, lags, order),
        MeanModelSpec::NadarayaWatson { lags, bandwidth } => {
            let bw = match bandwidth {
                BandwidthRule::PlugIn => {
                    let (x, _) = lag_matrix(y, lags)?;
                    plugin_bandwidth(&x)?
                }
                BandwidthRule::CrossValidation => cv_bandwidth(y, lags, &DEFAULT_CV_GRID)?,
            };
            nw_fit(y, lags, &bw)
        }
    }
}
