//! Sample moments and order statistics.
//!
//! Quantiles use linear interpolation between order statistics at
//! h = (n - 1) p + 1 (1-based), i.e. Hyndman-Fan type 7.

use crate::error::{Error, Result};

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Unbiased (n - 1) sample variance.
pub fn sample_variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)
}

pub fn std_dev(x: &[f64]) -> f64 {
    sample_variance(x).sqrt()
}

/// Type-7 quantile of already sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    debug_assert!(n > 0 && (0.0..=1.0).contains(&p));
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn quantile(x: &[f64], p: f64) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::InsufficientData { needed: 0, got: 0 });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "quantile level {p} outside [0, 1]"
        )));
    }
    if x.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("NaN in quantile input".into()));
    }
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&s, p))
}

/// Q3 - Q1 under the type-7 convention.
pub fn interquartile_range(x: &[f64]) -> Result<f64> {
    if x.len() < 4 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: x.len(),
        });
    }
    if x.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("NaN in IQR input".into()));
    }
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&s, 0.75) - quantile_sorted(&s, 0.25))
}
