//! Machine-readable output. Every float is serialized with 17 significant
//! digits so identical runs are byte-identical and round-trip exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::cover::VolumeGrowthProfile;
use crate::oracle::SimulationReport;
use crate::spectral::HittingProfile;

/// 17 significant digits in scientific notation; enough to round-trip f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct SigDigitFormatter;

impl Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{}", fmt_f64(value))
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Serializes any report to compact JSON with pinned float formatting.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigDigitFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("JSON output is UTF-8")
}

/// JSON body for a hitting run.
#[derive(Debug, Serialize)]
pub struct HitReport {
    pub group: String,
    pub distribution: String,
    pub method: String,
    pub first_return: f64,
    pub h: Vec<f64>,
}

pub fn hitting_csv(h: &HittingProfile) -> String {
    let mut out = String::from("element,h\n");
    for (g, v) in h.values().iter().enumerate() {
        out.push_str(&format!("{g},{}\n", fmt_f64(*v)));
    }
    out
}

/// JSON body for a volume-growth run.
#[derive(Debug, Serialize)]
pub struct VolumeReport {
    pub group: String,
    pub distribution: String,
    pub volume_growth: Vec<(f64, u64)>,
}

/// (ε, V) rows for external plotting.
pub fn volume_csv(vg: &VolumeGrowthProfile) -> String {
    let mut out = String::from("epsilon,volume\n");
    for (eps, count) in vg.points() {
        out.push_str(&format!("{},{count}\n", fmt_f64(eps)));
    }
    out
}

/// JSON view of a simulation report: mean/stderr of the cover step, with
/// the per-trial samples attached on request.
#[derive(Debug, Serialize)]
pub struct SimulationJson {
    pub group: String,
    pub distribution: String,
    pub seed: u64,
    pub trials: u64,
    pub mean: f64,
    pub stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<u64>>,
}

impl SimulationJson {
    pub fn from_report(report: &SimulationReport, include_samples: bool) -> Self {
        SimulationJson {
            group: report.group.clone(),
            distribution: report.distribution.clone(),
            seed: report.seed,
            trials: report.trials,
            mean: report.cover_mean,
            stderr: report.cover_stderr,
            samples: include_samples.then(|| report.cover_steps.clone()),
        }
    }
}

/// One row per trial.
pub fn simulation_csv(report: &SimulationReport) -> String {
    let mut out = String::from("trial,cover_steps\n");
    for (t, c) in report.cover_steps.iter().enumerate() {
        out.push_str(&format!("{t},{c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_significant_digits() {
        assert_eq!(fmt_f64(496.0), "4.9600000000000000e2");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-1.5), "-1.5000000000000000e0");
        let v = 0.1 + 0.2;
        let parsed: f64 = fmt_f64(v).parse().unwrap();
        assert_eq!(parsed.to_bits(), v.to_bits());
    }

    #[test]
    fn json_numbers_parse_back() {
        #[derive(Serialize)]
        struct Sample {
            x: f64,
            n: u64,
            pairs: Vec<(f64, u64)>,
        }
        let s = Sample { x: std::f64::consts::PI, n: 7, pairs: vec![(1.5, 3)] };
        let text = to_json(&s);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["n"], 7);
        assert!((value["x"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(value["pairs"][0][1], 3);
    }

    #[test]
    fn identical_inputs_identical_bytes() {
        #[derive(Serialize)]
        struct Sample {
            a: f64,
            b: Vec<f64>,
        }
        let s1 = Sample { a: 1.0 / 3.0, b: vec![2.0f64.sqrt(), 0.0] };
        let s2 = Sample { a: 1.0 / 3.0, b: vec![2.0f64.sqrt(), 0.0] };
        assert_eq!(to_json(&s1), to_json(&s2));
    }
}
