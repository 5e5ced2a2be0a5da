//! `robarch simulate`: one sample path of a preset process.

use std::path::Path;

use anyhow::Context;
use robarch::dgp::{self, ArchErrorSpec};
use robarch::numerics::stream_id_for;
use robarch::{NamedDgp, RngStream};

use crate::{from_core, Failure};

/// Writes `t,y` rows for t = 1..=T. The path equals replication 0 of the
/// same preset, T and seed in an experiment run.
pub fn run(name: &str, t: usize, gamma1: f64, seed: u64, out: &Path) -> Result<(), Failure> {
    let named = NamedDgp::preset(name).map_err(from_core)?;
    let error = ArchErrorSpec::new(named.spec.error.gamma0, gamma1).map_err(from_core)?;
    let spec = named.spec.with_error(error);
    let mut rng = RngStream::new(seed, stream_id_for(&named.name, t, 0));
    let y = dgp::simulate(&spec, t, &mut rng).map_err(from_core)?;

    let mut w = csv::Writer::from_path(out)
        .with_context(|| format!("cannot write {}", out.display()))
        .map_err(Failure::input)?;
    let io = |e: csv::Error| {
        Failure::run(anyhow::Error::new(e).context(format!("writing {}", out.display())))
    };
    w.write_record(["t", "y"]).map_err(io)?;
    for (i, v) in y.iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])
            .map_err(io)?;
    }
    w.flush()
        .with_context(|| format!("writing {}", out.display()))
        .map_err(Failure::run)?;
    Ok(())
}
