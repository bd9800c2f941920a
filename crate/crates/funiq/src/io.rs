//! File formats: node CSV (`j,value`), report CSV emission, JSON reports,
//! and the flat weight configuration.
//!
//! Floating-point output uses Rust's shortest-round-trip decimal formatting,
//! so written files are byte-stable and parse back to the identical bits.

use crate::density::{DensityScan, KulikovReport, ZetaGapStats};
use crate::error::{Error, Result};
use crate::nodes::{GapReport, NodeSequence, RatioTable};
use crate::probe::{ProbeResult, SweepRow};
use crate::weights::WeightSpec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::BufRead;
use std::path::Path;

/// Write a node sequence as `j,value` rows, index-sorted.
pub fn write_nodes_csv(path: &Path, seq: &NodeSequence) -> Result<()> {
    let mut out = String::from("j,value\n");
    for (i, v) in seq.values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", seq.index_of(i), v));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Read a node CSV written by [`write_nodes_csv`] (bit-exact round trip).
pub fn read_nodes_csv(path: &Path) -> Result<NodeSequence> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut values = Vec::new();
    let mut first_index: Option<i64> = None;
    let mut expected_next: i64 = 0;
    for (ln, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if ln == 0 {
            if t != "j,value" {
                return Err(Error::Parse { line: 1, msg: format!("expected header 'j,value', got {t:?}") });
            }
            continue;
        }
        let (j_str, v_str) = t.split_once(',').ok_or(Error::Parse {
            line: ln + 1,
            msg: "expected 'j,value'".into(),
        })?;
        let j: i64 = j_str.trim().parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: format!("bad index {j_str:?}"),
        })?;
        let v: f64 = v_str.trim().parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: format!("bad value {v_str:?}"),
        })?;
        match first_index {
            None => {
                first_index = Some(j);
                expected_next = j + 1;
            }
            Some(_) => {
                if j != expected_next {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("index {j} out of order (expected {expected_next})"),
                    });
                }
                expected_next += 1;
            }
        }
        values.push(v);
    }
    let offset = first_index.ok_or(Error::Order("node file has no rows".into()))?;
    NodeSequence::new(values, offset, format!("csv:{}", path.display()))
}

/// Flat weight configuration: `family` (optionally `inv:`-prefixed),
/// positional `params`, then `truncate_order` and `shift` applied in that
/// order.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct WeightConfig {
    pub family: String,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default)]
    pub shift: Option<f64>,
    #[serde(default)]
    pub truncate_order: Option<u32>,
}

impl WeightConfig {
    pub fn build(&self) -> Result<WeightSpec> {
        let (name, inverse) = match self.family.strip_prefix("inv:") {
            Some(rest) => (rest, true),
            None => (self.family.as_str(), false),
        };
        let need = |n: usize| -> Result<()> {
            if self.params.len() != n {
                return Err(Error::Config(format!(
                    "family {name:?} takes {n} parameter(s), got {}",
                    self.params.len()
                )));
            }
            Ok(())
        };
        let mut spec = match name {
            "power" => {
                need(1)?;
                WeightSpec::power(self.params[0])?
            }
            "exppower" => {
                need(3)?;
                WeightSpec::exp_power(self.params[0], self.params[1], self.params[2])?
            }
            "exp" => {
                need(0)?;
                WeightSpec::Exp
            }
            "exptower" => {
                need(1)?;
                WeightSpec::exp_tower(self.params[0] as u32)?
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown weight family {other:?} (expected power, exppower, exp, exptower)"
                )))
            }
        };
        if let Some(m) = self.truncate_order {
            spec = WeightSpec::truncated_low_order(spec, m)?;
        }
        if let Some(d) = self.shift {
            if d != 0.0 {
                spec = WeightSpec::shifted(spec, d);
            }
        }
        if inverse {
            spec = WeightSpec::log_inverse(spec);
        }
        Ok(spec)
    }
}

/// Parse a compact descriptor like `power:2`, `exppower:2pi,4pi,1`,
/// `exptower:2`, `exp`, or any of these prefixed `inv:`. A `pi` suffix on a
/// number multiplies it by pi.
pub fn parse_weight_descriptor(s: &str) -> Result<WeightSpec> {
    // keep the inv: prefix attached to the family
    let (prefix, body) = match s.strip_prefix("inv:") {
        Some(rest) => ("inv:", rest),
        None => ("", s),
    };
    let (name, rest) = match body.split_once(':') {
        Some((f, r)) => (f, Some(r)),
        None => (body, None),
    };
    let params = match rest {
        Some(r) if !r.is_empty() => r
            .split(',')
            .map(parse_pi_number)
            .collect::<Result<Vec<f64>>>()?,
        _ => Vec::new(),
    };
    WeightConfig { family: format!("{prefix}{name}"), params, shift: None, truncate_order: None }
        .build()
}

fn parse_pi_number(s: &str) -> Result<f64> {
    let t = s.trim();
    let (body, scale) = match t.strip_suffix("pi") {
        Some(b) => (b, std::f64::consts::PI),
        None => (t, 1.0),
    };
    if body.is_empty() {
        return Ok(scale); // bare "pi"
    }
    body.parse::<f64>()
        .map(|v| v * scale)
        .map_err(|_| Error::Config(format!("bad number {t:?}")))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    std::fs::write(path, s + "\n")?;
    Ok(())
}

/// Witness export: `x,re,im` rows.
pub fn write_witness_csv(path: &Path, xs: &[f64], values: &[Complex64]) -> Result<()> {
    let mut out = String::from("x,re,im\n");
    for (x, v) in xs.iter().zip(values) {
        out.push_str(&format!("{x},{},{}\n", v.re, v.im));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Sweep export: `scale,N,sigma_min` rows.
pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut out = String::from("scale,N,sigma_min\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.scale, r.basis_order, r.sigma_min));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Gap report export: `j,weighted_gap` rows.
pub fn write_gap_csv(path: &Path, report: &GapReport) -> Result<()> {
    let mut out = String::from("j,weighted_gap\n");
    for (j, v) in &report.per_index {
        out.push_str(&format!("{j},{v}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Density scan export: `W,T,ratio` rows.
pub fn write_scan_csv(path: &Path, scan: &DensityScan) -> Result<()> {
    let mut out = String::from("W,T,ratio\n");
    for (w, t, r) in &scan.scan {
        out.push_str(&format!("{w},{t},{r}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Ratio table export: `j,ratio` rows.
pub fn write_ratio_csv(path: &Path, table: &RatioTable) -> Result<()> {
    let mut out = String::from("j,ratio\n");
    for (j, r) in &table.rows {
        out.push_str(&format!("{j},{r}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Combined JSON report for the density subcommands.
#[derive(Debug, Serialize)]
pub struct DensityJson<'a> {
    pub scan: &'a [(f64, f64, f64)],
    #[serde(rename = "inf_per_K")]
    pub inf_per_k: &'a [(f64, f64)],
    #[serde(rename = "fitted_C")]
    pub fitted_c: Option<f64>,
    pub stats: Option<&'a ZetaGapStats>,
}

impl<'a> DensityJson<'a> {
    pub fn from_scan(scan: &'a DensityScan) -> Self {
        DensityJson { scan: &scan.scan, inf_per_k: &scan.inf_per_k, fitted_c: None, stats: None }
    }
}

/// JSON sidecar for a witness export.
#[derive(Debug, Serialize)]
pub struct WitnessSidecar<'a> {
    pub sigma_min: f64,
    pub residual_lambda: f64,
    pub residual_mu: f64,
    pub h_norm: f64,
    pub singular_values: &'a [f64],
}

impl<'a> WitnessSidecar<'a> {
    pub fn from_probe(p: &'a ProbeResult) -> Self {
        WitnessSidecar {
            sigma_min: p.sigma_min,
            residual_lambda: p.residual_lambda,
            residual_mu: p.residual_mu,
            h_norm: p.h_norm_of_witness,
            singular_values: &p.singular_values,
        }
    }
}

/// Kulikov report JSON shape.
#[derive(Debug, Serialize)]
pub struct KulikovJson {
    pub min_margin: f64,
    #[serde(rename = "fitted_C")]
    pub fitted_c: f64,
}

impl From<&KulikovReport> for KulikovJson {
    fn from(r: &KulikovReport) -> Self {
        KulikovJson { min_margin: r.min_margin, fitted_c: r.fitted_c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::generate_rv;
    use proptest::prelude::*;

    #[test]
    fn nodes_csv_round_trip_bit_exact() {
        let seq = generate_rv(50).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nodes.csv");
        write_nodes_csv(&path, &seq).unwrap();
        let back = read_nodes_csv(&path).unwrap();
        assert_eq!(back.values, seq.values);
        assert_eq!(back.index_offset, seq.index_offset);
        assert_eq!(back.symmetric, seq.symmetric);
        // writing again produces identical bytes
        let path2 = dir.path().join("nodes2.csv");
        write_nodes_csv(&path2, &back).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&path2).unwrap());
    }

    #[test]
    fn nodes_csv_rejects_gaps_in_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "j,value\n0,1.0\n2,2.0\n").unwrap();
        assert!(matches!(read_nodes_csv(&path), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn weight_descriptors_parse() {
        let p = parse_weight_descriptor("power:2").unwrap();
        assert_eq!(p.eval(3.0).unwrap(), 9.0);
        let e = parse_weight_descriptor("exppower:2pi,4pi,1").unwrap();
        assert!((e.eval(0.0).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let inv = parse_weight_descriptor("inv:exp").unwrap();
        assert!((inv.eval(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-12);
        assert!(parse_weight_descriptor("nope:1").is_err());
        assert!(parse_weight_descriptor("power").is_err()); // missing parameter
    }

    #[test]
    fn weight_config_composition_order() {
        // truncate first, then shift
        let cfg = WeightConfig {
            family: "exp".into(),
            params: vec![],
            shift: Some(1.0),
            truncate_order: Some(0),
        };
        let spec = cfg.build().unwrap();
        // (e^t - 1) shifted by 1: value at 0 is e - 1
        assert!((spec.eval(0.0).unwrap() - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn weight_config_json_round_trip() {
        let cfg = WeightConfig {
            family: "exppower".into(),
            params: vec![1.0, 2.0, 0.5],
            shift: Some(0.25),
            truncate_order: None,
        };
        let s = serde_json::to_string(&cfg).unwrap();
        let back: WeightConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back.build().unwrap(), cfg.build().unwrap());
    }

    proptest! {
        #[test]
        fn csv_f64_round_trip(bits in proptest::collection::vec((any::<i16>(), any::<u32>()), 2..64)) {
            // shortest round-trip formatting survives write/read exactly
            let mut vals: Vec<f64> = bits
                .iter()
                .map(|(m, e)| *m as f64 * 1.001_f64.powi((*e % 600) as i32 - 300))
                .filter(|v| v.is_finite())
                .collect();
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            vals.dedup();
            prop_assume!(vals.len() >= 2);
            let seq = NodeSequence::new(vals.clone(), -3, "prop").unwrap();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("prop.csv");
            write_nodes_csv(&path, &seq).unwrap();
            let back = read_nodes_csv(&path).unwrap();
            prop_assert_eq!(back.values, vals);
        }
    }
}
