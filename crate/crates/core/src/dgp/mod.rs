//! Data-generating processes: linear AR, TAR/MTAR, exponential and logistic
//! STAR, two-state Markov switching and bilinear means, each driven by an
//! ARCH(1) error u_t = σ_t ε_t with σ_t² = γ₀ + γ₁ u²_{t-1}.
//!
//! Simulation starts from y = u = 0, runs [`BURN_IN`] extra observations and
//! drops them.

mod presets;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{standard_normal_draws, RngStream};
use crate::series::TimeSeries;

pub use presets::{preset, preset_names, PresetId};

pub const BURN_IN: usize = 100;

/// Minimum retained sample size accepted by [`simulate`].
pub const MIN_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchErrorSpec {
    pub gamma0: f64,
    pub gamma1: f64,
}

impl ArchErrorSpec {
    pub const HOMOSKEDASTIC: Self = Self {
        gamma0: 1.0,
        gamma1: 0.0,
    };

    pub fn new(gamma0: f64, gamma1: f64) -> Result<Self> {
        let spec = Self { gamma0, gamma1 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma0 > 0.0) || !self.gamma0.is_finite() {
            return Err(Error::NonStationary(format!(
                "gamma0 = {} must be > 0",
                self.gamma0
            )));
        }
        if !(0.0..1.0).contains(&self.gamma1) {
            return Err(Error::NonStationary(format!(
                "gamma1 = {} must lie in [0, 1)",
                self.gamma1
            )));
        }
        Ok(())
    }

    /// γ₀ / (1 - γ₁).
    pub fn unconditional_variance(&self) -> f64 {
        self.gamma0 / (1.0 - self.gamma1)
    }
}

/// Which lagged quantity selects the TAR regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdVariable {
    /// y_{t-1} >= 0 (TAR).
    Level,
    /// Δy_{t-1} = y_{t-1} - y_{t-2} >= 0 (momentum TAR).
    Difference,
}

/// STAR transition function G(y_{t-1}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Transition {
    /// 1 - exp(-γ y²).
    Exponential { gamma: f64 },
    /// (1 + exp(-γ y))⁻¹.
    Logistic { gamma: f64 },
    /// G ≡ 0; the linear part only.
    Zero,
}

impl Transition {
    pub fn weight(&self, y: f64) -> f64 {
        match *self {
            Self::Exponential { gamma } => 1.0 - (-gamma * y * y).exp(),
            Self::Logistic { gamma } => 1.0 / (1.0 + (-gamma * y).exp()),
            Self::Zero => 0.0,
        }
    }
}

/// Conditional-mean law; lag coefficients are `[b1, b2]` on (y_{t-1}, y_{t-2}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeanFamily {
    Ar {
        coefs: [f64; 2],
    },
    Tar {
        /// Coefficients when the threshold variable is >= 0.
        upper: [f64; 2],
        lower: [f64; 2],
        threshold: ThresholdVariable,
    },
    Star {
        linear: [f64; 2],
        deviation: [f64; 2],
        transition: Transition,
    },
    MarkovSwitching {
        /// Coefficients in state s_t = 1.
        state1: [f64; 2],
        state0: [f64; 2],
        p00: f64,
        p11: f64,
    },
    Bilinear {
        /// y_t = b1 y_{t-1} u_{t-1} + b2 y_{t-2} u_{t-2} + u_t.
        coefs: [f64; 2],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgpSpec {
    pub family: MeanFamily,
    pub error: ArchErrorSpec,
}

impl DgpSpec {
    pub fn with_error(mut self, error: ArchErrorSpec) -> Self {
        self.error = error;
        self
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} = {p} must lie in (0, 1)"
        )))
    }
}

/// Two-state Markov chain with P(stay in 0) = `p00` and P(stay in 1) = `p11`,
/// started from its stationary law.
pub fn markov_state_path(p00: f64, p11: f64, n: usize, rng: &mut RngStream) -> Result<Vec<u8>> {
    check_probability("p00", p00)?;
    check_probability("p11", p11)?;
    let pi1 = (1.0 - p00) / (2.0 - p00 - p11);
    let mut state = u8::from(rng.uniform() < pi1);
    let mut path = Vec::with_capacity(n);
    for _ in 0..n {
        path.push(state);
        let stay = if state == 1 { p11 } else { p00 };
        if rng.uniform() >= stay {
            state = 1 - state;
        }
    }
    Ok(path)
}

#[inline]
fn dot(c: [f64; 2], y1: f64, y2: f64) -> f64 {
    c[0] * y1 + c[1] * y2
}

/// Simulates `t` observations after a burn-in of [`BURN_IN`].
///
/// Draw order on `rng`: all T + 100 innovations first, then the Markov
/// state path (switching models only).
pub fn simulate(spec: &DgpSpec, t: usize, rng: &mut RngStream) -> Result<TimeSeries> {
    if t < MIN_SAMPLE {
        return Err(Error::InsufficientData {
            needed: MIN_SAMPLE - 1,
            got: t,
        });
    }
    spec.error.validate()?;
    let total = t + BURN_IN;
    let eps = standard_normal_draws(rng, total)?;
    let states = match spec.family {
        MeanFamily::MarkovSwitching { p00, p11, .. } => {
            Some(markov_state_path(p00, p11, total, rng)?)
        }
        _ => None,
    };

    let ArchErrorSpec { gamma0, gamma1 } = spec.error;
    let mut y = Vec::with_capacity(total);
    let (mut y1, mut y2) = (0.0f64, 0.0f64);
    let (mut u1, mut u2) = (0.0f64, 0.0f64);
    for (i, e) in eps.iter().enumerate() {
        let u = (gamma0 + gamma1 * u1 * u1).sqrt() * e;
        let mean = match spec.family {
            MeanFamily::Ar { coefs } => dot(coefs, y1, y2),
            MeanFamily::Tar {
                upper,
                lower,
                threshold,
            } => {
                let z = match threshold {
                    ThresholdVariable::Level => y1,
                    ThresholdVariable::Difference => y1 - y2,
                };
                if z >= 0.0 {
                    dot(upper, y1, y2)
                } else {
                    dot(lower, y1, y2)
                }
            }
            MeanFamily::Star {
                linear,
                deviation,
                transition,
            } => dot(linear, y1, y2) + dot(deviation, y1, y2) * transition.weight(y1),
            MeanFamily::MarkovSwitching { state1, state0, .. } => {
                let s = states.as_ref().map_or(0, |p| p[i]);
                if s == 1 {
                    dot(state1, y1, y2)
                } else {
                    dot(state0, y1, y2)
                }
            }
            MeanFamily::Bilinear { coefs } => coefs[0] * y1 * u1 + coefs[1] * y2 * u2,
        };
        let yt = mean + u;
        y.push(yt);
        y2 = y1;
        y1 = yt;
        u2 = u1;
        u1 = u;
    }
    Ok(TimeSeries::new(y.split_off(BURN_IN)))
}

/// The error sequence u_t alone, with the same draws and burn-in as [`simulate`].
pub fn simulate_errors(error: &ArchErrorSpec, t: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    let spec = DgpSpec {
        family: MeanFamily::Ar { coefs: [0.0, 0.0] },
        error: *error,
    };
    simulate(&spec, t, rng).map(TimeSeries::into_inner)
}
