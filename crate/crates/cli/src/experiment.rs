//! `robarch experiment`: runs a config and writes CSV, text and manifest files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use robarch::experiment::{
    render_critical_csv, render_csv, render_text, simulate_statistics, GroupTiming, TableBlock,
};
use robarch::RejectionTable;
use serde::Serialize;

use crate::config::{Kind, RunConfig};
use crate::{from_core, Failure};

pub const TOOL: &str = "robarch";

#[derive(Serialize)]
struct ManifestCell<'a> {
    block: &'a str,
    dgp: &'a str,
    model: String,
    t: usize,
    gamma1: f64,
    rejections: usize,
    replications: usize,
    failures: usize,
    frequency: f64,
    monte_carlo_se: f64,
}

#[derive(Serialize)]
struct ManifestTiming {
    gamma1: f64,
    #[serde(flatten)]
    timing: GroupTiming,
}

/// Everything needed to rerun the experiment bit-exactly; pass it back via `--config`.
#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    base_seed: u64,
    workers: Option<usize>,
    wall_seconds: f64,
    outputs: Vec<PathBuf>,
    cells: Vec<ManifestCell<'a>>,
    timings: Vec<ManifestTiming>,
}

struct Block {
    caption: Option<String>,
    table: RejectionTable,
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::run)
}

pub fn run(
    config_path: &Path,
    out_dir: &Path,
    reps: Option<usize>,
    workers: Option<usize>,
) -> Result<(), Failure> {
    let started = Instant::now();
    let mut config = RunConfig::load(config_path).map_err(Failure::input)?;
    if let Some(r) = reps {
        config.replications = r;
    }
    let experiment = config.experiment(workers).map_err(Failure::input)?;
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))
        .map_err(Failure::input)?;

    let mut blocks = Vec::new();
    let mut timings = Vec::new();
    let mut critical = None;
    let mut keep_timings = |gamma1: f64, t: Vec<GroupTiming>| {
        timings.extend(
            t.into_iter()
                .map(|timing| ManifestTiming { gamma1, timing }),
        );
    };
    match config.kind {
        Kind::Size => {
            let s = simulate_statistics(&experiment, 0.0).map_err(from_core)?;
            blocks.push(Block {
                caption: None,
                table: s.rejection_table().map_err(from_core)?,
            });
            keep_timings(0.0, s.timings);
        }
        Kind::Power => {
            for &g in &config.gamma1 {
                let s = simulate_statistics(&experiment, g).map_err(from_core)?;
                blocks.push(Block {
                    caption: Some(format!("gamma1={g}")),
                    table: s.rejection_table().map_err(from_core)?,
                });
                keep_timings(g, s.timings);
            }
        }
        Kind::SizeCorrectedPower => {
            let null = simulate_statistics(&experiment, 0.0).map_err(from_core)?;
            let cv = null.critical_values().map_err(from_core)?;
            keep_timings(0.0, null.timings);
            for &g in &config.gamma1 {
                let s = simulate_statistics(&experiment, g).map_err(from_core)?;
                blocks.push(Block {
                    caption: Some(format!("gamma1={g}")),
                    table: s.size_corrected_table(&cv).map_err(from_core)?,
                });
                keep_timings(g, s.timings);
            }
            critical = Some(cv);
        }
    }

    let views: Vec<TableBlock<'_>> = blocks
        .iter()
        .map(|b| TableBlock {
            caption: b.caption.as_deref(),
            table: &b.table,
        })
        .collect();
    let title = config.title.clone().unwrap_or_else(|| config.name.clone());
    let mut outputs = Vec::new();

    let csv_path = out_dir.join(format!("{}.csv", config.name));
    write(
        &csv_path,
        &render_csv(&experiment, &views).map_err(from_core)?,
    )?;
    outputs.push(csv_path);
    let txt_path = out_dir.join(format!("{}.txt", config.name));
    write(
        &txt_path,
        &render_text(&title, &experiment, &views).map_err(from_core)?,
    )?;
    outputs.push(txt_path);
    if let Some(cv) = &critical {
        let path = out_dir.join(format!("{}.critical.csv", config.name));
        write(
            &path,
            &render_critical_csv(&experiment, cv).map_err(from_core)?,
        )?;
        outputs.push(path);
    }
    let manifest_path = out_dir.join(format!("{}.manifest.json", config.name));
    outputs.push(manifest_path.clone());

    let cells = blocks
        .iter()
        .flat_map(|b| {
            b.table.cells.iter().map(move |c| ManifestCell {
                block: b.caption.as_deref().unwrap_or("size"),
                dgp: &c.dgp,
                model: c.model.to_string(),
                t: c.t,
                gamma1: c.gamma1,
                rejections: c.rejections,
                replications: c.replications,
                failures: c.failures,
                frequency: c.frequency,
                monte_carlo_se: c.monte_carlo_se,
            })
        })
        .collect();
    let manifest = RunManifest {
        tool: TOOL,
        version: env!("CARGO_PKG_VERSION"),
        config: &config,
        base_seed: config.base_seed,
        workers,
        wall_seconds: started.elapsed().as_secs_f64(),
        outputs: outputs.clone(),
        cells,
        timings,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(Failure::run)?;
    write(&manifest_path, &json)?;
    for p in &outputs {
        println!("wrote {}", p.display());
    }
    Ok(())
}
