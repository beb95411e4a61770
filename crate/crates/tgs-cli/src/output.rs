//! Output writers. CSV carries 17 significant digits so every value
//! round-trips exactly; JSON goes through serde.

use std::fs;
use std::path::Path;

use serde::Serialize;
use tgs_core::entanglement::NegativityCurve;

use crate::CliError;

/// 17 significant digits: exact round-trip for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepMetadata {
    pub graph_hash: String,
    pub graph_n: usize,
    pub partition: String,
    pub partition_spec: String,
    pub temps_spec: String,
    pub reduced: bool,
    pub negativity_zero_threshold: f64,
    pub hermiticity_tol: f64,
}

pub fn sweep_csv(curve: &NegativityCurve) -> String {
    let mut out = String::from("T,negativity\n");
    for (t, v) in curve.temperatures.iter().zip(&curve.values) {
        out.push_str(&fmt_f64(*t));
        out.push(',');
        out.push_str(&fmt_f64(*v));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    metadata: &'a SweepMetadata,
    temperatures: &'a [f64],
    values: &'a [f64],
}

pub fn sweep_json(curve: &NegativityCurve, meta: &SweepMetadata) -> String {
    let doc = SweepDocument {
        metadata: meta,
        temperatures: &curve.temperatures,
        values: &curve.values,
    };
    serde_json::to_string_pretty(&doc).expect("sweep serialization cannot fail")
}

/// Write a sweep. CSV to a file gets a `<path>.meta.json` sidecar; CSV to
/// stdout carries the metadata as a leading `#` comment line. JSON embeds
/// the metadata in the document.
pub fn emit_sweep(
    curve: &NegativityCurve,
    meta: &SweepMetadata,
    format: crate::OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    match format {
        crate::OutputFormat::Csv => {
            let csv = sweep_csv(curve);
            let meta_json =
                serde_json::to_string(meta).expect("metadata serialization cannot fail");
            match output {
                Some(path) => {
                    fs::write(path, csv)?;
                    let mut sidecar = path.as_os_str().to_owned();
                    sidecar.push(".meta.json");
                    fs::write(sidecar, meta_json + "\n")?;
                }
                None => {
                    print!("# {meta_json}\n{csv}");
                }
            }
        }
        crate::OutputFormat::Json => {
            let doc = sweep_json(curve, meta);
            match output {
                Some(path) => fs::write(path, doc + "\n")?,
                None => println!("{doc}"),
            }
        }
    }
    Ok(())
}

pub fn emit_text(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}
