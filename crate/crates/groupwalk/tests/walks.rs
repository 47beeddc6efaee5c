//! Cross-module walk studies: Monte Carlo scaling of the hypercube cover
//! time and full report pipelines over the library surface.

use groupwalk::cover::{cover_report, CoverOptions};
use groupwalk::oracle::{default_step_cap, empirical_cover};
use groupwalk::{FiniteGroup, StepDistribution};

fn uniform_walk(spec: &str) -> (FiniteGroup, StepDistribution) {
    let group = FiniteGroup::from_spec(spec).unwrap();
    let dist = StepDistribution::uniform_generators(&group).unwrap();
    (group, dist)
}

#[test]
fn hypercube_cover_scales_like_m_two_to_m() {
    // Empirical cover means normalized by m·2^m stay within ±25% of their
    // average across m = 6, 7, 8.
    let normalized: Vec<f64> = [6u32, 7, 8]
        .iter()
        .map(|&m| {
            let (group, dist) = uniform_walk(&format!("hypercube:{m}"));
            let report =
                empirical_cover(&group, &dist, 10_000, 0x4D, default_step_cap(group.order()))
                    .unwrap();
            assert!(!report.truncated);
            report.cover_mean / (m as f64 * 2f64.powi(m as i32))
        })
        .collect();
    let mean = normalized.iter().sum::<f64>() / normalized.len() as f64;
    for (i, r) in normalized.iter().enumerate() {
        assert!(
            (r - mean).abs() <= 0.25 * mean,
            "m={}: normalized cover {r} strays from mean {mean}",
            6 + i
        );
    }
}

#[test]
fn full_report_respects_envelope_invariants() {
    let (group, dist) = uniform_walk("cyclic:16");
    let options = CoverOptions {
        estimators: vec!["fernique".into(), "matthews".into(), "gp".into(), "empirical".into()],
        trials: 2000,
        samples: 2000,
        seed: 0x16,
        ..CoverOptions::default()
    };
    let report = cover_report(&group, &dist, None, &options).unwrap();
    let i = report.fernique.integral;
    let m = report.matthews.lower;
    let n = group.order() as f64;
    assert!(i <= (m * n.ln()).sqrt() * (1.0 + 1e-9));
    assert!(i >= m.sqrt() / 3.0 * 2f64.ln().sqrt() * (1.0 - 1e-9));
    // both stochastic estimators landed in the same ballpark as I²
    let emax2 = report.gp.unwrap().emax.powi(2);
    assert!(emax2 / report.fernique.squared <= 10.0);
    assert!(emax2 / report.fernique.squared >= 0.1);
    let empirical = report.empirical.unwrap();
    assert!(empirical.mean > 0.0);
    assert!(empirical.mean <= report.matthews.upper * 2.0);
    assert!(empirical.mean >= report.matthews.lower / 2.0);
}
