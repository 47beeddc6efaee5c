//! Preset walk families and their scaling tables: the cycle (cover time of
//! order n²), the hypercube (m·2^m), and the three-dimensional torus
//! (n³ log n).

use clap::ValueEnum;
use serde::Serialize;

use groupwalk::cover::{commute_profile, fernique_integral, matthews_bounds, volume_growth};
use groupwalk::error::Result;
use groupwalk::group::FiniteGroup;
use groupwalk::report::to_json;
use groupwalk::spectral::{hitting_abelian, StepDistribution};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Hypercube,
    Torus,
}

#[derive(Serialize)]
struct RunRow {
    size: u64,
    order: u64,
    fernique_integral: f64,
    fernique_squared: f64,
    matthews_lower: f64,
    matthews_upper: f64,
    /// fernique_squared over the family's conjectured growth rate
    normalized: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_unit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_unit_closed: Option<f64>,
}

#[derive(Serialize)]
struct FamilyReport {
    family: &'static str,
    seed: u64,
    runs: Vec<RunRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    doubling_ratios: Option<Vec<f64>>,
    /// max/min of the normalized column
    stability: f64,
}

fn row(spec: &str, size: u64, rate: f64, unit_index: Option<usize>) -> Result<RunRow> {
    let group = FiniteGroup::from_spec(spec)?;
    let dist = StepDistribution::uniform_generators(&group)?;
    let h = hitting_abelian(&group, &dist)?;
    let cp = commute_profile(&group, &h);
    let vg = volume_growth(&cp);
    let integral = fernique_integral(&vg);
    let (lower, upper) = matthews_bounds(&cp, group.order())?;
    Ok(RunRow {
        size,
        order: group.order() as u64,
        fernique_integral: integral,
        fernique_squared: integral * integral,
        matthews_lower: lower,
        matthews_upper: upper,
        normalized: integral * integral / rate,
        h_unit: unit_index.map(|i| h.value(i)),
        h_unit_closed: unit_index.map(|_| (group.order() - 1) as f64),
    })
}

pub fn run(family: Family, seed: u64) -> Result<String> {
    let report = match family {
        Family::Cycle => {
            let runs: Vec<RunRow> = [64u64, 128, 256]
                .iter()
                .map(|&n| row(&format!("cyclic:{n}"), n, (n * n) as f64, None))
                .collect::<Result<_>>()?;
            let ratios: Vec<f64> = runs
                .windows(2)
                .map(|w| w[1].fernique_squared / w[0].fernique_squared)
                .collect();
            let stability = stability(&runs);
            FamilyReport {
                family: "cycle",
                seed,
                runs,
                doubling_ratios: Some(ratios),
                stability,
            }
        }
        Family::Hypercube => {
            let runs: Vec<RunRow> = [8u64, 10, 12]
                .iter()
                .map(|&m| {
                    let rate = m as f64 * 2f64.powi(m as i32);
                    // index 1 has Hamming weight 1
                    row(&format!("hypercube:{m}"), m, rate, Some(1))
                })
                .collect::<Result<_>>()?;
            let stability = stability(&runs);
            FamilyReport { family: "hypercube", seed, runs, doubling_ratios: None, stability }
        }
        Family::Torus => {
            let runs: Vec<RunRow> = [5u64, 7, 9]
                .iter()
                .map(|&n| {
                    let rate = (n * n * n) as f64 * (n as f64).ln();
                    row(&format!("torus:{n}^3"), n, rate, None)
                })
                .collect::<Result<_>>()?;
            let stability = stability(&runs);
            FamilyReport { family: "torus", seed, runs, doubling_ratios: None, stability }
        }
    };
    Ok(to_json(&report))
}

fn stability(runs: &[RunRow]) -> f64 {
    let max = runs.iter().map(|r| r.normalized).fold(f64::MIN, f64::max);
    let min = runs.iter().map(|r| r.normalized).fold(f64::MAX, f64::min);
    max / min
}
