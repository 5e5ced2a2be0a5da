//! Polynomial approximation of an unknown mean: OLS on an intercept, the q
//! lags, and every distinct product of 2..=k lags (with repetition).

use nalgebra::DMatrix;

use super::{lag_matrix, MeanModelSpec, RegressionFit};
use crate::error::{Error, Result};
use crate::numerics::ols;

/// C(q + k, k): intercept plus all monomials of degree 1..=k in q variables.
pub fn taylor_column_count(lags: usize, order: usize) -> usize {
    // multiplicative form keeps intermediates exact
    (1..=order).fold(1usize, |acc, i| acc * (lags + i) / i)
}

/// Index tuples 0 <= j1 <= ... <= jr < lags, for every degree r in 1..=order.
fn monomials(lags: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = (0..lags).map(|j| vec![j]).collect();
    for _ in 1..=order {
        out.extend(current.iter().cloned());
        current = current
            .iter()
            .flat_map(|m| {
                let last = *m.last().unwrap();
                (last..lags).map(move |j| {
                    let mut next = m.clone();
                    next.push(j);
                    next
                })
            })
            .collect();
    }
    out
}

/// Design of intercept plus monomials up to `order`; `order = 1` is the AR design.
pub(crate) fn monomial_design(
    y: &[f64],
    lags: usize,
    order: usize,
) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let (lagged, targets) = lag_matrix(y, lags)?;
    let terms = monomials(lags, order);
    let cols = terms.len() + 1;
    let n = targets.len();
    if cols >= n {
        return Err(Error::InsufficientData {
            needed: cols,
            got: n,
        });
    }
    let mut design = DMatrix::from_element(n, cols, 1.0);
    for (c, term) in terms.iter().enumerate() {
        for r in 0..n {
            design[(r, c + 1)] = term.iter().map(|&j| lagged[(r, j)]).product();
        }
    }
    Ok((design, targets))
}

/// Taylor-approximation design for lag length `lags` (q) and order `order` (k).
///
/// Column order: intercept, then monomials by ascending degree, each degree
/// in lexicographic order of its lag indices.
pub fn taylor_design(y: &[f64], lags: usize, order: usize) -> Result<DMatrix<f64>> {
    check(lags, order)?;
    monomial_design(y, lags, order).map(|(d, _)| d)
}

/// OLS on [`taylor_design`]. Rank-deficient designs give a flagged minimum-norm fit.
pub fn fit_taylor(y: &[f64], lags: usize, order: usize) -> Result<RegressionFit> {
    check(lags, order)?;
    let (design, targets) = monomial_design(y, lags, order)?;
    let sol = ols(&design, &targets)?;
    Ok(RegressionFit {
        model: MeanModelSpec::Taylor { lags, order },
        fitted: sol.fitted,
        residuals: sol.residuals,
        effective_start: lags + 1,
        n_params: design.ncols(),
        coefficients: sol.coefficients,
        rank_deficient: sol.rank_deficient,
        bandwidth: None,
    })
}

fn check(lags: usize, order: usize) -> Result<()> {
    if lags == 0 {
        return Err(Error::InvalidInput("Taylor lag length must be >= 1".into()));
    }
    if order < 2 {
        return Err(Error::InvalidInput("Taylor order must be >= 2".into()));
    }
    Ok(())
}
