//! The twenty-two named processes: DGP1-1..1-4 (AR), 2-1..2-6 (TAR/MTAR),
//! 3-1..3-6 (STAR), 4-1..4-6 (Markov switching and bilinear).

use super::{ArchErrorSpec, DgpSpec, MeanFamily, ThresholdVariable, Transition};
use crate::error::{Error, Result};

const NAMES: [&str; 22] = [
    "DGP1-1", "DGP1-2", "DGP1-3", "DGP1-4", "DGP2-1", "DGP2-2", "DGP2-3", "DGP2-4", "DGP2-5",
    "DGP2-6", "DGP3-1", "DGP3-2", "DGP3-3", "DGP3-4", "DGP3-5", "DGP3-6", "DGP4-1", "DGP4-2",
    "DGP4-3", "DGP4-4", "DGP4-5", "DGP4-6",
];

/// Canonical preset name, e.g. `DGP2-5`. Accepts `2-5`, `dgp2-5`, `DGP2_5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PresetId(&'static str);

impl PresetId {
    pub fn parse(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        let body = trimmed
            .strip_prefix("DGP")
            .or_else(|| trimmed.strip_prefix("dgp"))
            .unwrap_or(trimmed)
            .replace('_', "-");
        NAMES
            .iter()
            .find(|n| n[3..] == body)
            .map(|n| PresetId(n))
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

pub fn preset_names() -> &'static [&'static str] {
    &NAMES
}

fn tar(upper: [f64; 2], lower: [f64; 2], threshold: ThresholdVariable) -> MeanFamily {
    MeanFamily::Tar {
        upper,
        lower,
        threshold,
    }
}

fn star(deviation: [f64; 2], transition: Transition) -> MeanFamily {
    MeanFamily::Star {
        linear: [0.7, -0.2],
        deviation,
        transition,
    }
}

fn ms(state1: [f64; 2], state0: [f64; 2], p: f64) -> MeanFamily {
    MeanFamily::MarkovSwitching {
        state1,
        state0,
        p00: p,
        p11: p,
    }
}

/// The named process with the given error law.
pub fn preset(name: &str, error: ArchErrorSpec) -> Result<DgpSpec> {
    use ThresholdVariable::{Difference, Level};
    use Transition::{Exponential, Logistic};

    error.validate()?;
    let family = match PresetId::parse(name)?.as_str() {
        "DGP1-1" => MeanFamily::Ar { coefs: [0.2, 0.0] },
        "DGP1-2" => MeanFamily::Ar { coefs: [0.7, 0.0] },
        "DGP1-3" => MeanFamily::Ar { coefs: [0.7, -0.2] },
        "DGP1-4" => MeanFamily::Ar { coefs: [0.7, -0.5] },
        "DGP2-1" => tar([0.7, -0.2], [0.1, -0.2], Level),
        "DGP2-2" => tar([0.7, -0.2], [-0.5, -0.2], Level),
        "DGP2-3" => tar([0.7, 0.2], [0.7, -0.7], Level),
        "DGP2-4" => tar([0.7, -0.2], [0.1, -0.2], Difference),
        "DGP2-5" => tar([0.7, -0.2], [-0.5, -0.2], Difference),
        "DGP2-6" => tar([0.7, 0.2], [0.7, -0.7], Difference),
        "DGP3-1" => star([-0.5, -0.2], Exponential { gamma: 0.1 }),
        "DGP3-2" => star([-1.0, -0.2], Exponential { gamma: 0.1 }),
        "DGP3-3" => star([-1.0, -0.2], Exponential { gamma: 1.0 }),
        "DGP3-4" => star([-0.5, -0.2], Logistic { gamma: 0.1 }),
        "DGP3-5" => star([-1.0, -0.2], Logistic { gamma: 0.1 }),
        "DGP3-6" => star([-1.0, -0.2], Logistic { gamma: 1.0 }),
        "DGP4-1" => ms([0.7, -0.2], [0.3, -0.2], 0.7),
        "DGP4-2" => ms([0.7, -0.2], [0.3, -0.2], 0.98),
        "DGP4-3" => ms([0.7, 0.2], [0.3, -0.2], 0.98),
        "DGP4-4" => MeanFamily::Bilinear { coefs: [0.1, 0.1] },
        "DGP4-5" => MeanFamily::Bilinear { coefs: [0.3, 0.1] },
        "DGP4-6" => MeanFamily::Bilinear { coefs: [0.1, -0.1] },
        other => unreachable!("preset table out of sync: {other}"),
    };
    Ok(DgpSpec { family, error })
}
