use nalgebra::DMatrix;

use super::{lag_matrix, MeanModelSpec, RegressionFit};
use crate::error::{Error, Result};
use crate::numerics::ols;

/// OLS of y_t on an intercept and `lags` own lags.
pub fn fit_ar(y: &[f64], lags: usize) -> Result<RegressionFit> {
    if lags == 0 {
        return Err(Error::InvalidInput("AR lag length must be >= 1".into()));
    }
    if y.len() <= 2 * lags + 1 {
        return Err(Error::InsufficientData {
            needed: 2 * lags + 1,
            got: y.len(),
        });
    }
    let (lagged, targets) = lag_matrix(y, lags)?;
    let n = targets.len();
    let design = DMatrix::from_fn(
        n,
        lags + 1,
        |r, j| if j == 0 { 1.0 } else { lagged[(r, j - 1)] },
    );
    let sol = ols(&design, &targets)?;
    Ok(RegressionFit {
        model: MeanModelSpec::Ar { lags },
        fitted: sol.fitted,
        residuals: sol.residuals,
        effective_start: lags + 1,
        n_params: lags + 1,
        coefficients: sol.coefficients,
        rank_deficient: sol.rank_deficient,
        bandwidth: None,
    })
}
