//! CSV and aligned-text renderings of rejection tables: one row per
//! (DGP, T), one column per mean model (per block when several γ₁ values
//! share a table).

use std::fmt::Write as _;

use super::{CriticalValueTable, ExperimentConfig, RejectionTable};
use crate::error::{Error, Result};

/// A set of columns sharing a caption, e.g. `gamma1=0.3`.
#[derive(Debug, Clone, Copy)]
pub struct TableBlock<'a> {
    pub caption: Option<&'a str>,
    pub table: &'a RejectionTable,
}

fn column_names(config: &ExperimentConfig, blocks: &[TableBlock<'_>]) -> Vec<String> {
    blocks
        .iter()
        .flat_map(|b| {
            config.models.iter().map(move |m| match b.caption {
                Some(c) => format!("{c} {m}"),
                None => m.to_string(),
            })
        })
        .collect()
}

fn row_values(
    config: &ExperimentConfig,
    blocks: &[TableBlock<'_>],
    dgp: &str,
    t: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for b in blocks {
        for m in &config.models {
            let f = b.table.frequency(dgp, m, t).ok_or_else(|| {
                Error::InvalidInput(format!("table lacks cell ({dgp}, {m}, T={t})"))
            })?;
            out.push(f);
        }
    }
    Ok(out)
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

/// Wide CSV with columns `dgp,T,<model...>`; values at full precision.
pub fn render_csv(config: &ExperimentConfig, blocks: &[TableBlock<'_>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["dgp".to_string(), "T".to_string()];
    header.extend(column_names(config, blocks));
    w.write_record(&header).map_err(csv_error)?;
    for d in &config.dgps {
        for &t in &config.sample_sizes {
            let mut rec = vec![d.name.clone(), t.to_string()];
            rec.extend(
                row_values(config, blocks, &d.name, t)?
                    .iter()
                    .map(f64::to_string),
            );
            w.write_record(&rec).map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

/// Critical values as `dgp,T,<model...>`.
pub fn render_critical_csv(
    config: &ExperimentConfig,
    table: &CriticalValueTable,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["dgp".to_string(), "T".to_string()];
    header.extend(config.models.iter().map(|m| m.to_string()));
    w.write_record(&header).map_err(csv_error)?;
    for d in &config.dgps {
        for &t in &config.sample_sizes {
            let mut rec = vec![d.name.clone(), t.to_string()];
            for m in &config.models {
                let cv = table
                    .get(&d.name, m, t)
                    .ok_or_else(|| Error::MissingCriticalValue {
                        dgp: d.name.clone(),
                        model: m.to_string(),
                        t,
                    })?;
                rec.push(cv.to_string());
            }
            w.write_record(&rec).map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

/// Fixed-width table with three decimals, DGP header rows and `T=` rows.
pub fn render_text(
    title: &str,
    config: &ExperimentConfig,
    blocks: &[TableBlock<'_>],
) -> Result<String> {
    let names = column_names(config, blocks);
    let width = names.iter().map(String::len).max().unwrap_or(0).max(7) + 2;
    let stub = config
        .dgps
        .iter()
        .map(|d| d.name.len())
        .max()
        .unwrap_or(0)
        .max(8)
        + 2;

    let mut s = String::new();
    let _ = writeln!(s, "{title}");
    let _ = write!(s, "{:stub$}", "");
    for n in &names {
        let _ = write!(s, "{n:>width$}");
    }
    s.push('\n');
    let _ = writeln!(s, "{}", "-".repeat(stub + width * names.len()));
    for d in &config.dgps {
        let _ = writeln!(s, "{}", d.name);
        for &t in &config.sample_sizes {
            let _ = write!(s, "{:stub$}", format!("  T={t}"));
            for v in row_values(config, blocks, &d.name, t)? {
                let _ = write!(s, "{:>width$}", format!("{v:.3}"));
            }
            s.push('\n');
        }
    }
    Ok(s)
}
