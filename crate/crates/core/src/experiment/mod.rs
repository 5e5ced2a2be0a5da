//! Monte Carlo engine for empirical size, nominal power and size-corrected
//! power of the ARCH test under each (DGP, mean model, T) cell.
//!
//! Replication `r` of process `d` at sample size `T` draws from stream
//! `stream_id_for(d, T, r)`. Every mean model in the configuration is fitted
//! to that same simulated path, and the null and ARCH-error runs share
//! innovations. Results are collected in replication order, so tables do not
//! depend on the worker count.

mod render;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arch_test::lm_arch_test;
use crate::dgp::{self, ArchErrorSpec, DgpSpec, PresetId};
use crate::error::{Error, Result};
use crate::mean_models::{self, MeanModelSpec};
use crate::numerics::stats::quantile_sorted;
use crate::numerics::{chi2_survival, stream_id_for, RngStream};

pub use render::{render_critical_csv, render_csv, render_text, TableBlock};

/// Fraction of failed replications above which a cell is an error.
pub const MAX_FAILURE_RATE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedDgp {
    pub name: String,
    pub spec: DgpSpec,
}

impl NamedDgp {
    /// A homoskedastic preset, e.g. `"DGP2-2"`.
    pub fn preset(name: &str) -> Result<Self> {
        let id = PresetId::parse(name)?;
        Ok(Self {
            name: id.as_str().to_string(),
            spec: dgp::preset(id.as_str(), ArchErrorSpec::HOMOSKEDASTIC)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub replications: usize,
    pub sample_sizes: Vec<usize>,
    pub level: f64,
    pub base_seed: u64,
    pub models: Vec<MeanModelSpec>,
    pub dgps: Vec<NamedDgp>,
    /// Lag order p of the ARCH test.
    pub arch_lag: usize,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(
        replications: usize,
        sample_sizes: Vec<usize>,
        models: Vec<MeanModelSpec>,
        dgps: Vec<NamedDgp>,
    ) -> Self {
        Self {
            replications,
            sample_sizes,
            level: 0.05,
            base_seed: 0,
            models,
            dgps,
            arch_lag: 1,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 100 {
            return Err(Error::InvalidInput(format!(
                "replications = {} must be >= 100",
                self.replications
            )));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidInput(format!(
                "level {} outside (0, 1)",
                self.level
            )));
        }
        if self.arch_lag == 0 {
            return Err(Error::InvalidInput("ARCH lag must be >= 1".into()));
        }
        if self.models.is_empty() || self.dgps.is_empty() || self.sample_sizes.is_empty() {
            return Err(Error::InvalidInput(
                "models, dgps and sample_sizes must be nonempty".into(),
            ));
        }
        if let Some(&t) = self.sample_sizes.iter().find(|&&t| t < dgp::MIN_SAMPLE) {
            return Err(Error::InvalidInput(format!(
                "sample size {t} below {}",
                dgp::MIN_SAMPLE
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidInput("workers must be >= 1".into()));
        }
        for m in &self.models {
            m.validate()?;
        }
        for d in &self.dgps {
            d.spec.error.validate()?;
        }
        Ok(())
    }
}

/// One replication's test outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Draw {
    pub lm_stat: f64,
    pub p_value: f64,
}

/// Simulated statistics for one cell, in replication order; `None` marks a failed fit.
#[derive(Debug, Clone, PartialEq)]
pub struct StatisticCell {
    pub dgp: String,
    pub model: MeanModelSpec,
    pub t: usize,
    pub draws: Vec<Option<Draw>>,
}

impl StatisticCell {
    pub fn failures(&self) -> usize {
        self.draws.iter().filter(|d| d.is_none()).count()
    }

    pub fn successful(&self) -> impl Iterator<Item = &Draw> {
        self.draws.iter().flatten()
    }

    fn check_failures(&self) -> Result<()> {
        let failures = self.failures();
        if failures as f64 > MAX_FAILURE_RATE * self.draws.len() as f64 {
            return Err(Error::CellFailed {
                dgp: self.dgp.clone(),
                model: self.model.to_string(),
                t: self.t,
                failures,
                replications: self.draws.len(),
            });
        }
        Ok(())
    }

    fn tally(&self, gamma1: f64, reject: impl Fn(&Draw) -> bool) -> Result<RejectionCell> {
        self.check_failures()?;
        let used = self.draws.len() - self.failures();
        let rejections = self.successful().filter(|d| reject(d)).count();
        let frequency = rejections as f64 / used as f64;
        Ok(RejectionCell {
            dgp: self.dgp.clone(),
            model: self.model,
            t: self.t,
            gamma1,
            rejections,
            replications: used,
            failures: self.failures(),
            frequency,
            monte_carlo_se: (frequency * (1.0 - frequency) / used as f64).sqrt(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTiming {
    pub dgp: String,
    pub t: usize,
    pub seconds: f64,
}

/// Raw statistics for every cell of a configuration at one γ₁.
#[derive(Debug, Clone)]
pub struct StatisticTable {
    pub gamma1: f64,
    pub level: f64,
    pub replications: usize,
    pub cells: Vec<StatisticCell>,
    pub timings: Vec<GroupTiming>,
}

impl StatisticTable {
    pub fn cell(&self, dgp: &str, model: &MeanModelSpec, t: usize) -> Option<&StatisticCell> {
        self.cells
            .iter()
            .find(|c| c.dgp == dgp && &c.model == model && c.t == t)
    }

    /// Rejections at the asymptotic χ² critical value (p-value < level).
    pub fn rejection_table(&self) -> Result<RejectionTable> {
        let level = self.level;
        let cells = self
            .cells
            .iter()
            .map(|c| c.tally(self.gamma1, |d| d.p_value < level))
            .collect::<Result<_>>()?;
        Ok(RejectionTable {
            gamma1: self.gamma1,
            level,
            replications_used: self.replications,
            cells,
        })
    }

    /// Empirical (1 - level) quantile of each cell's statistics.
    pub fn critical_values(&self) -> Result<CriticalValueTable> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                c.check_failures()?;
                let mut stats: Vec<f64> = c.successful().map(|d| d.lm_stat).collect();
                stats.sort_by(f64::total_cmp);
                Ok(CriticalCell {
                    dgp: c.dgp.clone(),
                    model: c.model,
                    t: c.t,
                    critical_value: quantile_sorted(&stats, 1.0 - self.level),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CriticalValueTable {
            level: self.level,
            cells,
        })
    }

    /// Rejections when the statistic exceeds the cell's empirical null critical value.
    pub fn size_corrected_table(&self, critical: &CriticalValueTable) -> Result<RejectionTable> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let cv = critical.get(&c.dgp, &c.model, c.t).ok_or_else(|| {
                    Error::MissingCriticalValue {
                        dgp: c.dgp.clone(),
                        model: c.model.to_string(),
                        t: c.t,
                    }
                })?;
                c.tally(self.gamma1, |d| d.lm_stat > cv)
            })
            .collect::<Result<_>>()?;
        Ok(RejectionTable {
            gamma1: self.gamma1,
            level: self.level,
            replications_used: self.replications,
            cells,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionCell {
    pub dgp: String,
    pub model: MeanModelSpec,
    pub t: usize,
    pub gamma1: f64,
    pub rejections: usize,
    /// Successful replications; the frequency denominator.
    pub replications: usize,
    pub failures: usize,
    pub frequency: f64,
    pub monte_carlo_se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionTable {
    pub gamma1: f64,
    pub level: f64,
    pub replications_used: usize,
    pub cells: Vec<RejectionCell>,
}

impl RejectionTable {
    pub fn get(&self, dgp: &str, model: &MeanModelSpec, t: usize) -> Option<&RejectionCell> {
        self.cells
            .iter()
            .find(|c| c.dgp == dgp && &c.model == model && c.t == t)
    }

    pub fn frequency(&self, dgp: &str, model: &MeanModelSpec, t: usize) -> Option<f64> {
        self.get(dgp, model, t).map(|c| c.frequency)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalCell {
    pub dgp: String,
    pub model: MeanModelSpec,
    pub t: usize,
    pub critical_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueTable {
    pub level: f64,
    pub cells: Vec<CriticalCell>,
}

impl CriticalValueTable {
    pub fn get(&self, dgp: &str, model: &MeanModelSpec, t: usize) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.dgp == dgp && &c.model == model && c.t == t)
            .map(|c| c.critical_value)
    }
}

fn one_replication(
    spec: &DgpSpec,
    label: &str,
    t: usize,
    r: usize,
    config: &ExperimentConfig,
) -> Vec<Option<Draw>> {
    let mut rng = RngStream::new(config.base_seed, stream_id_for(label, t, r as u64));
    let Ok(y) = dgp::simulate(spec, t, &mut rng) else {
        return vec![None; config.models.len()];
    };
    config
        .models
        .iter()
        .map(|m| {
            let fit = mean_models::fit(&y, m).ok()?;
            let res = lm_arch_test(&fit.residuals, config.arch_lag, config.level).ok()?;
            Some(Draw {
                lm_stat: res.lm_stat,
                p_value: res.p_value,
            })
        })
        .collect()
}

/// Simulates every cell with ARCH errors (γ₀ of each DGP, the given γ₁).
pub fn simulate_statistics(config: &ExperimentConfig, gamma1: f64) -> Result<StatisticTable> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let mut cells = Vec::new();
    let mut timings = Vec::new();
    for named in &config.dgps {
        let error = ArchErrorSpec::new(named.spec.error.gamma0, gamma1)?;
        let spec = named.spec.with_error(error);
        for &t in &config.sample_sizes {
            let started = Instant::now();
            let per_rep: Vec<Vec<Option<Draw>>> = pool.install(|| {
                (0..config.replications)
                    .into_par_iter()
                    .map(|r| one_replication(&spec, &named.name, t, r, config))
                    .collect()
            });
            timings.push(GroupTiming {
                dgp: named.name.clone(),
                t,
                seconds: started.elapsed().as_secs_f64(),
            });
            for (k, model) in config.models.iter().enumerate() {
                cells.push(StatisticCell {
                    dgp: named.name.clone(),
                    model: *model,
                    t,
                    draws: per_rep.iter().map(|rep| rep[k]).collect(),
                });
            }
        }
    }
    Ok(StatisticTable {
        gamma1,
        level: config.level,
        replications: config.replications,
        cells,
        timings,
    })
}

fn require_null(config: &ExperimentConfig) -> Result<()> {
    if let Some(d) = config.dgps.iter().find(|d| d.spec.error.gamma1 != 0.0) {
        return Err(Error::InvalidInput(format!(
            "{} has gamma1 = {}; size runs need homoskedastic errors",
            d.name, d.spec.error.gamma1
        )));
    }
    Ok(())
}

/// Empirical size: rejection frequencies under homoskedastic errors.
pub fn run_size(config: &ExperimentConfig) -> Result<RejectionTable> {
    require_null(config)?;
    simulate_statistics(config, 0.0)?.rejection_table()
}

/// Nominal power with ARCH(1) errors of the given γ₁. γ₁ = 0 is a size run.
pub fn run_power(config: &ExperimentConfig, gamma1: f64) -> Result<RejectionTable> {
    if gamma1 == 0.0 {
        return run_size(config);
    }
    if !(gamma1 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "gamma1 = {gamma1} must be > 0"
        )));
    }
    simulate_statistics(config, gamma1)?.rejection_table()
}

/// Per-cell empirical null critical values at level `config.level`.
pub fn empirical_critical_values(config: &ExperimentConfig) -> Result<CriticalValueTable> {
    require_null(config)?;
    simulate_statistics(config, 0.0)?.critical_values()
}

/// Power against the per-cell empirical null critical values.
pub fn run_size_corrected_power(
    config: &ExperimentConfig,
    gamma1: f64,
    critical_values: &CriticalValueTable,
) -> Result<RejectionTable> {
    config.validate()?;
    for d in &config.dgps {
        for m in &config.models {
            for &t in &config.sample_sizes {
                if critical_values.get(&d.name, m, t).is_none() {
                    return Err(Error::MissingCriticalValue {
                        dgp: d.name.clone(),
                        model: m.to_string(),
                        t,
                    });
                }
            }
        }
    }
    simulate_statistics(config, gamma1)?.size_corrected_table(critical_values)
}

/// χ²(p) upper-`level` point, found by bisection on the survival function.
pub fn asymptotic_critical_value(df: usize, level: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while chi2_survival(hi, df)? > level {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chi2_survival(mid, df)? > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
