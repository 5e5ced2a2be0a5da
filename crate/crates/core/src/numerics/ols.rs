//! Least squares through a thin SVD.
//!
//! The SVD gives the minimum-norm solution when the design is rank
//! deficient, which keeps Monte Carlo loops alive on degenerate draws.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OlsSolution {
    pub coefficients: Vec<f64>,
    pub fitted: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Centered R², clamped to [0, 1]; zero when the dependent variable is constant.
    pub r_squared: f64,
    pub rank: usize,
    pub rank_deficient: bool,
}

impl OlsSolution {
    pub fn ssr(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }
}

/// Regresses `y` on the columns of `design`.
///
/// Singular values at or below `eps * max(T, K) * s_max` are treated as zero.
pub fn ols(design: &DMatrix<f64>, y: &[f64]) -> Result<OlsSolution> {
    let (t, k) = design.shape();
    if t != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "design has {t} rows but y has {} entries",
            y.len()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidInput("design has no columns".into()));
    }
    if t <= k {
        return Err(Error::InsufficientData { needed: k, got: t });
    }

    let svd = design.clone().svd(true, true);
    let s_max = svd.singular_values.max();
    let tol = f64::EPSILON * t.max(k) as f64 * s_max;
    let rank = svd.rank(tol);
    let b = DVector::from_column_slice(y);
    let beta = svd
        .solve(&b, tol)
        .map_err(|e| Error::InvalidInput(e.to_string()))?;

    let fitted_v = design * &beta;
    let fitted: Vec<f64> = fitted_v.iter().copied().collect();
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, f)| a - f).collect();

    let mean = y.iter().sum::<f64>() / t as f64;
    let sst: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let r_squared = if sst > 0.0 {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    } else {
        0.0
    };

    Ok(OlsSolution {
        coefficients: beta.iter().copied().collect(),
        fitted,
        residuals,
        r_squared,
        rank,
        rank_deficient: rank < k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rng::RngStream;
    use proptest::prelude::*;

    fn random_design(rng: &mut RngStream, t: usize, k: usize) -> DMatrix<f64> {
        DMatrix::from_fn(t, k, |_, j| if j == 0 { 1.0 } else { rng.normal() })
    }

    /// Solves (X'X) b = X'y with an explicit Gauss-Jordan inverse.
    fn normal_equations(x: &DMatrix<f64>, y: &[f64]) -> Vec<f64> {
        let k = x.ncols();
        let mut a = vec![vec![0.0; 2 * k]; k];
        for i in 0..k {
            for j in 0..k {
                a[i][j] = (0..x.nrows()).map(|r| x[(r, i)] * x[(r, j)]).sum();
            }
            a[i][k + i] = 1.0;
        }
        for c in 0..k {
            let piv = (c..k)
                .max_by(|&p, &q| a[p][c].abs().total_cmp(&a[q][c].abs()))
                .unwrap();
            a.swap(c, piv);
            let d = a[c][c];
            for v in a[c].iter_mut() {
                *v /= d;
            }
            for r in 0..k {
                if r != c {
                    let f = a[r][c];
                    let row_c = a[c].clone();
                    for (v, w) in a[r].iter_mut().zip(row_c) {
                        *v -= f * w;
                    }
                }
            }
        }
        let xty: Vec<f64> = (0..k)
            .map(|i| (0..x.nrows()).map(|r| x[(r, i)] * y[r]).sum())
            .collect();
        (0..k)
            .map(|i| (0..k).map(|j| a[i][k + j] * xty[j]).sum())
            .collect()
    }

    #[test]
    fn exact_linear_fit() {
        let x = DMatrix::from_fn(10, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let y: Vec<f64> = (0..10).map(|i| 2.0 - 0.5 * i as f64).collect();
        let sol = ols(&x, &y).unwrap();
        assert!(sol.residuals.iter().all(|e| e.abs() < 1e-10));
        assert!((sol.r_squared - 1.0).abs() < 1e-12);
        assert!((sol.coefficients[1] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn intercept_only_gives_mean() {
        let y = [1.0, 4.0, 2.0, 7.0, 6.0];
        let x = DMatrix::from_element(5, 1, 1.0);
        let sol = ols(&x, &y).unwrap();
        for f in &sol.fitted {
            assert!((f - 4.0).abs() < 1e-12);
        }
        assert_eq!(sol.r_squared, 0.0);
    }

    #[test]
    fn matches_normal_equations_oracle() {
        let mut rng = RngStream::new(11, 0);
        let x = random_design(&mut rng, 20, 3);
        let y: Vec<f64> = (0..20).map(|_| rng.normal()).collect();
        let sol = ols(&x, &y).unwrap();
        let oracle = normal_equations(&x, &y);
        for (a, b) in sol.coefficients.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn dimension_errors() {
        let x = DMatrix::from_element(3, 3, 1.0);
        assert!(matches!(
            ols(&x, &[1.0, 2.0, 3.0]),
            Err(Error::InsufficientData { .. })
        ));
        let x = DMatrix::from_element(5, 2, 1.0);
        assert!(matches!(ols(&x, &[1.0]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn collinear_design_is_flagged() {
        let x = DMatrix::from_fn(8, 3, |i, j| match j {
            0 => 1.0,
            1 => i as f64,
            _ => 2.0 * i as f64,
        });
        let y: Vec<f64> = (0..8).map(|i| (i * i) as f64).collect();
        let sol = ols(&x, &y).unwrap();
        assert!(sol.rank_deficient);
        assert_eq!(sol.rank, 2);
        // minimum norm splits the collinear pair 1:2
        assert!((2.0 * sol.coefficients[1] - sol.coefficients[2]).abs() < 1e-8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn residuals_orthogonal(seed in any::<u64>(), t in 8usize..=50, k in 1usize..=6) {
            prop_assume!(t > k + 1);
            let mut rng = RngStream::new(seed, 0);
            let x = random_design(&mut rng, t, k);
            let y: Vec<f64> = (0..t).map(|_| 3.0 * rng.normal() + 1.0).collect();
            let sol = ols(&x, &y).unwrap();
            let rnorm = sol.residuals.iter().map(|e| e * e).sum::<f64>().sqrt();
            for j in 0..k {
                let col = x.column(j);
                let dot: f64 = col.iter().zip(&sol.residuals).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() <= 1e-9 * (col.norm() * rnorm).max(1.0));
            }
            for ((f, e), v) in sol.fitted.iter().zip(&sol.residuals).zip(&y) {
                prop_assert!((f + e - v).abs() < 1e-12);
            }
            prop_assert!((0.0..=1.0).contains(&sol.r_squared));
        }
    }
}
