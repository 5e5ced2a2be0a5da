//! Nadaraya-Watson regression on lagged values with a product Gaussian kernel.
//!
//! Kernel normalizing constants cancel in the weighted average, so weights
//! are `exp(-d/2)` with `d = sum_j ((x_uj - x_tj) / h_j)^2`. Fitted values
//! are accumulated as deviations from the first target, which makes a
//! constant series reproduce itself exactly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{lag_matrix, MeanModelSpec, RegressionFit};
use crate::error::{Error, Result};
use crate::numerics::stats::{interquartile_range, std_dev};

/// Multipliers of the plug-in bandwidth searched by cross-validation.
pub const DEFAULT_CV_GRID: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0];

/// Denominators below this are recomputed with a row-wise shift.
const UNDERFLOW_GUARD: f64 = 1e-280;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BandwidthRule {
    PlugIn,
    CrossValidation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthSelection {
    pub per_dimension_h: Vec<f64>,
    pub rule: BandwidthRule,
    /// CV(h) at the selected bandwidth; `None` for the plug-in rule.
    pub cv_objective_value: Option<f64>,
    /// Selected multiplier of the plug-in bandwidth; `None` for the plug-in rule.
    pub cv_multiplier: Option<f64>,
}

/// Standard normal density.
pub fn gaussian_kernel(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// 1.06 * min(sd_j, IQR_j / 1.34) * n^(-1/(s+4)) for each column; 0 where degenerate.
fn rule_of_thumb(x: &DMatrix<f64>) -> Result<Vec<f64>> {
    let (n, s) = x.shape();
    if n < 8 {
        return Err(Error::InsufficientData { needed: 7, got: n });
    }
    let rate = (n as f64).powf(-1.0 / (s as f64 + 4.0));
    x.column_iter()
        .map(|c| {
            let col: Vec<f64> = c.iter().copied().collect();
            let spread = std_dev(&col).min(interquartile_range(&col)? / 1.34);
            Ok(1.06 * spread * rate)
        })
        .collect()
}

/// Robust rule-of-thumb bandwidth applied per regressor column.
pub fn plugin_bandwidth(regressors: &DMatrix<f64>) -> Result<BandwidthSelection> {
    let h = rule_of_thumb(regressors)?;
    if let Some(dimension) = h.iter().position(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateBandwidth { dimension });
    }
    Ok(BandwidthSelection {
        per_dimension_h: h,
        rule: BandwidthRule::PlugIn,
        cv_objective_value: None,
        cv_multiplier: None,
    })
}

/// Row-major regressors scaled by per-dimension bandwidth.
fn scaled_rows(x: &DMatrix<f64>, h: &[f64]) -> Vec<f64> {
    let (n, s) = x.shape();
    let mut z = Vec::with_capacity(n * s);
    for r in 0..n {
        for (j, hj) in h.iter().enumerate() {
            z.push(x[(r, j)] / hj);
        }
    }
    z
}

/// Packed squared distances for pairs u < i, laid out row by row: (1,0), (2,0), (2,1), ...
fn pair_distances(z: &[f64], n: usize, s: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..n {
        let zi = &z[i * s..(i + 1) * s];
        for u in 0..i {
            let zu = &z[u * s..(u + 1) * s];
            d.push(zi.iter().zip(zu).map(|(a, b)| (a - b) * (a - b)).sum());
        }
    }
    d
}

#[inline]
fn pair_index(i: usize, u: usize) -> usize {
    let (hi, lo) = if i > u { (i, u) } else { (u, i) };
    hi * (hi - 1) / 2 + lo
}

/// Kernel-weighted sums of `dev` for every row, with `self_weight` for u = i.
/// Returns (numerators, denominators).
fn weighted_sums(
    dist: &[f64],
    dev: &[f64],
    inv_scale: f64,
    self_weight: f64,
) -> (Vec<f64>, Vec<f64>) {
    let n = dev.len();
    let mut num: Vec<f64> = dev.iter().map(|d| self_weight * d).collect();
    let mut den = vec![self_weight; n];
    let mut k = 0;
    for i in 1..n {
        for u in 0..i {
            let w = (-0.5 * dist[k] * inv_scale).exp();
            k += 1;
            num[i] += w * dev[u];
            den[i] += w;
            num[u] += w * dev[i];
            den[u] += w;
        }
    }
    (num, den)
}

/// Leave-one-out weighted mean of `dev` at row `i`, shifted by the row's
/// nearest-neighbour distance so the largest weight is one.
fn shifted_loo(dist: &[f64], dev: &[f64], i: usize, inv_scale: f64) -> Option<f64> {
    let n = dev.len();
    let dmin = (0..n)
        .filter(|&u| u != i)
        .map(|u| dist[pair_index(i, u)])
        .fold(f64::INFINITY, f64::min);
    if !dmin.is_finite() {
        return None;
    }
    let (mut num, mut den) = (0.0, 0.0);
    for u in (0..n).filter(|&u| u != i) {
        let w = (-0.5 * (dist[pair_index(i, u)] - dmin) * inv_scale).exp();
        num += w * dev[u];
        den += w;
    }
    (den > 0.0).then(|| num / den)
}

/// Cross-validated bandwidth: h = c * h_plugin for c in `grid`, minimizing
/// the leave-one-out mean squared prediction error. Ties go to the smaller c.
///
/// A zero-spread regressor column falls back to a base bandwidth of 1; all its
/// pairwise differences are zero, so the scale does not matter.
pub fn cv_bandwidth(y: &[f64], lags: usize, grid: &[f64]) -> Result<BandwidthSelection> {
    if grid.is_empty() || grid.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
        return Err(Error::InvalidInput(
            "CV grid must be a nonempty set of positive multipliers".into(),
        ));
    }
    if y.len() <= lags + 1 {
        return Err(Error::InsufficientData {
            needed: lags + 1,
            got: y.len(),
        });
    }
    let (x, targets) = lag_matrix(y, lags)?;
    let base: Vec<f64> = rule_of_thumb(&x)?
        .into_iter()
        .map(|h| if h > 0.0 && h.is_finite() { h } else { 1.0 })
        .collect();
    let n = targets.len();
    let reference = targets[0];
    let dev: Vec<f64> = targets.iter().map(|v| v - reference).collect();
    let dist = pair_distances(&scaled_rows(&x, &base), n, lags);

    let mut order: Vec<f64> = grid.to_vec();
    order.sort_by(f64::total_cmp);
    order.dedup();

    let mut best: Option<(f64, f64)> = None;
    for &c in &order {
        let inv = 1.0 / (c * c);
        let (num, den) = weighted_sums(&dist, &dev, inv, 0.0);
        let mut sse = 0.0;
        let mut defined = true;
        for i in 0..n {
            let pred = if den[i] > UNDERFLOW_GUARD {
                Some(num[i] / den[i])
            } else {
                shifted_loo(&dist, &dev, i, inv)
            };
            match pred {
                Some(p) if p.is_finite() => sse += (dev[i] - p).powi(2),
                _ => {
                    defined = false;
                    break;
                }
            }
        }
        if !defined {
            continue;
        }
        let cv = sse / n as f64;
        if best.is_none_or(|(_, b)| cv < b) {
            best = Some((c, cv));
        }
    }

    let (c, cv) = best.ok_or(Error::CrossValidationUndefined)?;
    Ok(BandwidthSelection {
        per_dimension_h: base.iter().map(|h| c * h).collect(),
        rule: BandwidthRule::CrossValidation,
        cv_objective_value: Some(cv),
        cv_multiplier: Some(c),
    })
}

/// In-sample Nadaraya-Watson fit on `lags` lags; each point's own observation
/// is part of its weighted average.
pub fn nw_fit(y: &[f64], lags: usize, bw: &BandwidthSelection) -> Result<RegressionFit> {
    if y.len() <= lags + 1 {
        return Err(Error::InsufficientData {
            needed: lags + 1,
            got: y.len(),
        });
    }
    if bw.per_dimension_h.len() != lags {
        return Err(Error::DimensionMismatch(format!(
            "{} bandwidths for {lags} lags",
            bw.per_dimension_h.len()
        )));
    }
    if bw
        .per_dimension_h
        .iter()
        .any(|&h| !(h > 0.0) || !h.is_finite())
    {
        return Err(Error::InvalidInput(
            "bandwidths must be positive and finite".into(),
        ));
    }
    let (x, targets) = lag_matrix(y, lags)?;
    let n = targets.len();
    let reference = targets[0];
    let dev: Vec<f64> = targets.iter().map(|v| v - reference).collect();
    let dist = pair_distances(&scaled_rows(&x, &bw.per_dimension_h), n, lags);
    let (num, den) = weighted_sums(&dist, &dev, 1.0, 1.0);

    let mut fitted = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        // the self weight is exactly one, so den >= 1
        if !(den[i] >= 1.0) || !den[i].is_finite() {
            return Err(Error::KernelUnderflow {
                index: i + lags + 1,
            });
        }
        let shift = num[i] / den[i];
        fitted.push(reference + shift);
        residuals.push(dev[i] - shift);
    }

    Ok(RegressionFit {
        model: MeanModelSpec::NadarayaWatson {
            lags,
            bandwidth: bw.rule,
        },
        fitted,
        residuals,
        effective_start: lags + 1,
        n_params: 0,
        coefficients: Vec::new(),
        rank_deficient: false,
        bandwidth: Some(bw.clone()),
    })
}
