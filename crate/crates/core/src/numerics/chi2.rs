use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Upper tail P(X > x) of a chi-square variable with `df` degrees of freedom,
/// via the regularized upper incomplete gamma Q(df/2, x/2).
pub fn chi2_survival(x: f64, df: usize) -> Result<f64> {
    if df == 0 {
        return Err(Error::InvalidInput("chi-square needs df >= 1".into()));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "chi-square argument must be >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(gamma_ur(df as f64 / 2.0, x / 2.0).clamp(0.0, 1.0))
}
