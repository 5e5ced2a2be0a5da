//! Mean-model invariants as runnable property checks, shared by the
//! integration tests and the acceptance harness.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};
use robarch::mean_models::{
    cv_bandwidth, fit, fit_taylor, gaussian_kernel, lag_matrix, nw_fit, plugin_bandwidth,
    taylor_column_count, taylor_design, BandwidthRule, BandwidthSelection, DEFAULT_CV_GRID,
};
use robarch::{MeanModelSpec, TimeSeries};

use super::{count_monomials_brute, loo_cv_one_lag, simpson};

pub type Check = fn(u32) -> Result<(), String>;

/// Every property with a display name.
pub const ALL: [(&str, Check); 9] = [
    ("NW convex-combination bounds", nw_convex_bounds),
    ("constant-series exactness", constant_series_exact),
    ("flat-kernel limit", flat_kernel_limit),
    ("kernel normalization quadrature", kernel_normalization),
    ("plug-in scale equivariance", plugin_scale_equivariance),
    ("plug-in T-monotonicity", plugin_t_monotone),
    ("Taylor column counts", taylor_column_counts),
    ("nested-model SSR ordering", nested_ssr_ordering),
    ("CV grid-argmin recheck", cv_argmin_recheck),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn series(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, min_len..max_len)
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn fixed(h: Vec<f64>) -> BandwidthSelection {
    BandwidthSelection {
        per_dimension_h: h,
        rule: BandwidthRule::PlugIn,
        cv_objective_value: None,
        cv_multiplier: None,
    }
}

pub fn nw_convex_bounds(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(series(30, 120), 1usize..=2), |(y, lags)| {
            let (x, targets) = lag_matrix(&y, lags).map_err(fail)?;
            let bw = plugin_bandwidth(&x).map_err(fail)?;
            let f = nw_fit(&y, lags, &bw).map_err(fail)?;
            let lo = targets.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = targets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let slack = 1e-9 * (hi - lo + 1.0);
            for v in &f.fitted {
                prop_assert!(
                    *v >= lo - slack && *v <= hi + slack,
                    "{v} outside [{lo}, {hi}]"
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn constant_series_exact(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(
            &(-1e3..1e3f64, 20usize..100, 1usize..=2, 0.01..10.0f64),
            |(c, n, lags, h)| {
                let y = vec![c; n];
                let f = nw_fit(&y, lags, &fixed(vec![h; lags])).map_err(fail)?;
                let cv = fit(
                    &TimeSeries::new(y.clone()),
                    &MeanModelSpec::NadarayaWatson {
                        lags,
                        bandwidth: BandwidthRule::CrossValidation,
                    },
                )
                .map_err(fail)?;
                for fit in [&f, &cv] {
                    for (v, e) in fit.fitted.iter().zip(&fit.residuals) {
                        prop_assert!((v - c).abs() <= 1e-12 * c.abs().max(1.0));
                        prop_assert!(e.abs() <= 1e-12 * c.abs().max(1.0));
                    }
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

pub fn flat_kernel_limit(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(series(20, 80), 1usize..=3), |(y, lags)| {
            let f = nw_fit(&y, lags, &fixed(vec![1e8; lags])).map_err(fail)?;
            let targets = &y[lags..];
            let m = targets.iter().sum::<f64>() / targets.len() as f64;
            for v in &f.fitted {
                prop_assert!((v - m).abs() < 1e-9, "{v} vs mean {m}");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (1/h)K(x/h) integrates to one with variance h² in one and two dimensions.
pub fn kernel_normalization(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(0.05..5.0f64, 0.05..5.0f64), |(h1, h2)| {
            let k1 = |x: f64| gaussian_kernel(x / h1) / h1;
            let mass = simpson(k1, -12.0 * h1, 12.0 * h1, 4000);
            let var = simpson(|x| x * x * k1(x), -12.0 * h1, 12.0 * h1, 4000);
            prop_assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
            prop_assert!((var / (h1 * h1) - 1.0).abs() < 1e-8, "variance {var}");
            let k2 = |x: f64| gaussian_kernel(x / h2) / h2;
            let outer = |a: f64| k1(a) * simpson(k2, -12.0 * h2, 12.0 * h2, 600);
            let mass2 = simpson(outer, -12.0 * h1, 12.0 * h1, 600);
            prop_assert!((mass2 - 1.0).abs() < 1e-8, "product mass {mass2}");
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn plugin_scale_equivariance(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(
            &(series(30, 150), 1usize..=3, 0.01..100.0f64),
            |(y, lags, c)| {
                let (x, _) = lag_matrix(&y, lags).map_err(fail)?;
                let h = plugin_bandwidth(&x).map_err(fail)?.per_dimension_h;
                let hc = plugin_bandwidth(&(&x * c)).map_err(fail)?.per_dimension_h;
                for (a, b) in h.iter().zip(&hc) {
                    prop_assert!((b / (c * a) - 1.0).abs() < 1e-10, "{b} vs {c} * {a}");
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Spread via sd (n-1) and a type-7 IQR, computed without the library.
fn robust_spread(col: &[f64]) -> f64 {
    let n = col.len() as f64;
    let m = col.iter().sum::<f64>() / n;
    let sd = (col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let mut s = col.to_vec();
    s.sort_by(f64::total_cmp);
    let q = |p: f64| {
        let pos = p * (s.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = (lo + 1).min(s.len() - 1);
        s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
    };
    sd.min((q(0.75) - q(0.25)) / 1.34)
}

/// h / spread equals 1.06 n^(-1/(s+4)) and strictly decreases as rows are added.
pub fn plugin_t_monotone(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(series(60, 200), 1usize..=3), |(y, lags)| {
            let (x, _) = lag_matrix(&y, lags).map_err(fail)?;
            let n = x.nrows();
            let mut previous = f64::INFINITY;
            for rows in [n / 3, n / 2, n] {
                let sub = x.rows(0, rows).into_owned();
                let h = plugin_bandwidth(&sub).map_err(fail)?.per_dimension_h;
                for (j, hj) in h.iter().enumerate() {
                    let col: Vec<f64> = sub.column(j).iter().copied().collect();
                    let ratio = hj / robust_spread(&col);
                    let expected = 1.06 * (rows as f64).powf(-1.0 / (lags as f64 + 4.0));
                    prop_assert!((ratio / expected - 1.0).abs() < 1e-10);
                    prop_assert!(ratio < previous);
                }
                previous = 1.06 * (rows as f64).powf(-1.0 / (lags as f64 + 4.0));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Exhaustive over q in 1..=5, k in 2..=4; `cases` is unused.
pub fn taylor_column_counts(_cases: u32) -> Result<(), String> {
    let y: Vec<f64> = (0..400)
        .map(|i| ((i * 37 % 101) as f64 / 17.0).sin())
        .collect();
    for q in 1..=5 {
        for k in 2..=4 {
            let count = taylor_column_count(q, k);
            let brute = count_monomials_brute(q, k);
            if count != brute || count != binomial(q + k, k) {
                return Err(format!("q={q} k={k}: {count} vs brute {brute}"));
            }
            let design = taylor_design(&y, q, k).map_err(|e| e.to_string())?;
            if design.ncols() != count || design.nrows() != y.len() - q {
                return Err(format!("q={q} k={k}: design {:?}", design.shape()));
            }
        }
    }
    Ok(())
}

pub fn nested_ssr_ordering(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(series(60, 150), 1usize..=2), |(y, lags)| {
            let s = TimeSeries::new(y.clone());
            let ar = fit(&s, &MeanModelSpec::Ar { lags }).map_err(fail)?.ssr();
            let t2 = fit_taylor(&y, lags, 2).map_err(fail)?.ssr();
            let t3 = fit_taylor(&y, lags, 3).map_err(fail)?.ssr();
            let slack = 1e-9 * ar.max(1.0);
            prop_assert!(t2 <= ar + slack, "T2 {t2} > AR {ar}");
            prop_assert!(t3 <= t2 + slack, "T3 {t3} > T2 {t2}");
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn cv_argmin_recheck(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&series(25, 80), |y| {
            let sel = cv_bandwidth(&y, 1, &DEFAULT_CV_GRID).map_err(fail)?;
            let (x, _) = lag_matrix(&y, 1).map_err(fail)?;
            let base = plugin_bandwidth(&x).map_err(fail)?.per_dimension_h[0];
            let scores: Vec<f64> = DEFAULT_CV_GRID
                .iter()
                .map(|c| loo_cv_one_lag(&y, c * base))
                .collect();
            let best = scores.iter().copied().fold(f64::INFINITY, f64::min);
            let chosen = sel.cv_multiplier.unwrap();
            let k = DEFAULT_CV_GRID.iter().position(|&c| c == chosen).unwrap();
            prop_assert!((scores[k] - best).abs() <= 1e-9 * best.max(1e-300));
            let objective = sel.cv_objective_value.unwrap();
            prop_assert!((objective - best).abs() <= 1e-8 * best.max(1e-12));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
