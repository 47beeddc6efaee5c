//! Seeded walk simulation. Each trial draws from its own ChaCha stream
//! keyed by (seed, trial index), so results are independent of execution
//! order and trials parallelize freely.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::spectral::StepDistribution;

/// Default step cap: 10⁶ · |G|.
pub fn default_step_cap(order: usize) -> u64 {
    1_000_000u64.saturating_mul(order as u64)
}

/// Per-trajectory record: first-visit step of every element plus the cover
/// step, or a truncation mark when the cap ran out first.
#[derive(Debug, Clone)]
pub struct WalkStats {
    pub first_visit: Vec<Option<u64>>,
    pub cover_step: Option<u64>,
    pub steps: u64,
    pub truncated: bool,
}

fn run_walk(
    group: &FiniteGroup,
    support: &[(usize, f64)],
    cumulative: &[f64],
    start: usize,
    rng: &mut ChaCha8Rng,
    step_cap: u64,
) -> WalkStats {
    let n = group.order();
    let mut first_visit: Vec<Option<u64>> = vec![None; n];
    first_visit[start] = Some(0);
    let mut remaining = n - 1;
    let mut pos = start;
    let mut t: u64 = 0;
    while remaining > 0 && t < step_cap {
        t += 1;
        let u: f64 = rng.random();
        let k = cumulative.partition_point(|&c| c <= u);
        let s = support[k.min(support.len() - 1)].0;
        pos = group.multiply(s, pos);
        if first_visit[pos].is_none() {
            first_visit[pos] = Some(t);
            remaining -= 1;
        }
    }
    let truncated = remaining > 0;
    WalkStats {
        first_visit,
        cover_step: if truncated { None } else { Some(t) },
        steps: t,
        truncated,
    }
}

/// Simulates one trajectory from `start`, deterministic in `seed`.
pub fn simulate_walk(
    group: &FiniteGroup,
    dist: &StepDistribution,
    start: usize,
    seed: u64,
    step_cap: u64,
) -> Result<WalkStats> {
    if step_cap == 0 {
        return Err(Error::Validation("step cap must be positive".into()));
    }
    if start >= group.order() {
        return Err(Error::Validation(format!(
            "start element {start} out of range for order {}",
            group.order()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(run_walk(group, dist.support(), &dist.cumulative(), start, &mut rng, step_cap))
}

/// Aggregated Monte Carlo study of cover and hitting times, started at the
/// identity. Deterministic per seed; trials run in parallel and merge in
/// trial order.
#[derive(Debug, Clone)]
pub struct SimulationReport {
    pub group: String,
    pub distribution: String,
    pub seed: u64,
    pub trials: u64,
    pub step_cap: u64,
    /// Set when any trial hit the step cap; cover statistics then count the
    /// cap itself and are only lower bounds.
    pub truncated: bool,
    pub cover_mean: f64,
    pub cover_stderr: f64,
    pub cover_steps: Vec<u64>,
    pub hit_mean: Vec<f64>,
    pub hit_stderr: Vec<f64>,
}

pub fn empirical_cover(
    group: &FiniteGroup,
    dist: &StepDistribution,
    trials: u64,
    seed: u64,
    step_cap: u64,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    if step_cap == 0 {
        return Err(Error::Validation("step cap must be positive".into()));
    }
    let n = group.order();
    let support = dist.support();
    let cumulative = dist.cumulative();

    let runs: Vec<WalkStats> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            run_walk(group, support, &cumulative, 0, &mut rng, step_cap)
        })
        .collect();

    let truncated = runs.iter().any(|r| r.truncated);
    let mut cover_steps = Vec::with_capacity(runs.len());
    let mut hit_sum = vec![0.0f64; n];
    let mut hit_sumsq = vec![0.0f64; n];
    for run in &runs {
        cover_steps.push(run.cover_step.unwrap_or(run.steps));
        for g in 0..n {
            let v = run.first_visit[g].unwrap_or(run.steps) as f64;
            hit_sum[g] += v;
            hit_sumsq[g] += v * v;
        }
    }
    let t = trials as f64;
    let cover_mean = cover_steps.iter().map(|&c| c as f64).sum::<f64>() / t;
    let cover_var = if trials > 1 {
        cover_steps
            .iter()
            .map(|&c| (c as f64 - cover_mean).powi(2))
            .sum::<f64>()
            / (t - 1.0)
    } else {
        0.0
    };
    let cover_stderr = (cover_var / t).sqrt();
    let mut hit_mean = vec![0.0; n];
    let mut hit_stderr = vec![0.0; n];
    for g in 0..n {
        hit_mean[g] = hit_sum[g] / t;
        let var = if trials > 1 {
            (hit_sumsq[g] - t * hit_mean[g] * hit_mean[g]).max(0.0) / (t - 1.0)
        } else {
            0.0
        };
        hit_stderr[g] = (var / t).sqrt();
    }
    Ok(SimulationReport {
        group: group.spec().to_string(),
        distribution: dist.spec().to_string(),
        seed,
        trials,
        step_cap,
        truncated,
        cover_mean,
        cover_stderr,
        cover_steps,
        hit_mean,
        hit_stderr,
    })
}
