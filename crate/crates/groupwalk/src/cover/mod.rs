//! Cover-time machinery: the commute-time metric, its volume growth
//! function, packing numbers, the Fernique entropy integral, and Matthews
//! bounds.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::spectral::HittingProfile;

mod estimator;
mod gp;

pub use estimator::{
    cover_report, estimator_names, find_estimator, CoverContext, CoverEstimator, CoverOptions,
    CoverPiece, CoverTimeReport, EmpiricalEstimate, FerniqueEstimate, GpEstimate,
    MatthewsEstimate,
};
pub use gp::gp_emax;

/// Commute times from the identity: κ(e,g) = h(g) + h(g⁻¹). Translation
/// invariance reduces the full commute matrix to this vector, and
/// d(g,h) = sqrt(κ(e, h·g⁻¹)) is the metric of the associated Gaussian
/// process.
#[derive(Debug, Clone)]
pub struct CommuteProfile {
    kappa: Vec<f64>,
}

impl CommuteProfile {
    pub fn new(kappa: Vec<f64>) -> Self {
        CommuteProfile { kappa }
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn kappa_at(&self, g: usize) -> f64 {
        self.kappa[g]
    }

    pub fn order(&self) -> usize {
        self.kappa.len()
    }

    /// κ(g,h) = κ(e, h·g⁻¹).
    pub fn kappa_pair(&self, group: &FiniteGroup, g: usize, h: usize) -> f64 {
        self.kappa[group.multiply(h, group.inverse(g))]
    }

    pub fn distance_from_identity(&self, g: usize) -> f64 {
        self.kappa[g].sqrt()
    }

    pub fn distance(&self, group: &FiniteGroup, g: usize, h: usize) -> f64 {
        self.kappa_pair(group, g, h).sqrt()
    }

    /// M = max_g κ(e,g).
    pub fn max_kappa(&self) -> f64 {
        self.kappa.iter().copied().fold(0.0, f64::max)
    }
}

/// κ(e,g) = h(g) + h(g⁻¹) for every g.
pub fn commute_profile(group: &FiniteGroup, h: &HittingProfile) -> CommuteProfile {
    let n = group.order();
    let mut kappa = Vec::with_capacity(n);
    for g in 0..n {
        kappa.push(h.value(g) + h.value(group.inverse(g)));
    }
    CommuteProfile::new(kappa)
}

/// The step function ε ↦ V_d(ε) = #{g : d(e,g) ≤ ε}, stored as sorted
/// distinct breakpoints with cumulative counts. Right-continuous by
/// construction.
#[derive(Debug, Clone)]
pub struct VolumeGrowthProfile {
    breakpoints: Vec<f64>,
    counts: Vec<u64>,
    order: usize,
}

impl VolumeGrowthProfile {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest distance, i.e. sqrt(max κ).
    pub fn max_distance(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// V_d(ε); zero below the smallest breakpoint (which is 0 for any
    /// profile containing the identity).
    pub fn value_at(&self, eps: f64) -> u64 {
        let idx = self.breakpoints.partition_point(|&b| b <= eps);
        if idx == 0 {
            0
        } else {
            self.counts[idx - 1]
        }
    }

    /// (breakpoint, count) pairs, for export.
    pub fn points(&self) -> Vec<(f64, u64)> {
        self.breakpoints.iter().copied().zip(self.counts.iter().copied()).collect()
    }
}

/// Sorts the |G| distances from the identity into the exact volume step
/// function.
pub fn volume_growth(cp: &CommuteProfile) -> VolumeGrowthProfile {
    let n = cp.order();
    let mut dists: Vec<f64> = (0..n).map(|g| cp.distance_from_identity(g)).collect();
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut breakpoints = Vec::new();
    let mut counts = Vec::new();
    for (i, d) in dists.iter().enumerate() {
        if breakpoints.last() == Some(d) {
            *counts.last_mut().unwrap() = (i + 1) as u64;
        } else {
            breakpoints.push(*d);
            counts.push((i + 1) as u64);
        }
    }
    VolumeGrowthProfile { breakpoints, counts, order: n }
}

/// Size of a maximal ε-separated set (pairwise distance strictly greater
/// than ε), built greedily in element-index order. Deterministic; maximal
/// packings satisfy both sides of the packing-volume sandwich.
pub fn packing_number(group: &FiniteGroup, cp: &CommuteProfile, eps: f64) -> usize {
    let n = group.order();
    let mut chosen: Vec<usize> = Vec::new();
    for g in 0..n {
        if chosen.iter().all(|&c| cp.distance(group, c, g) > eps) {
            chosen.push(g);
        }
    }
    chosen.len()
}

/// The entropy integral I = ∫₀^∞ sqrt(log(|G| / V_d(ε))) dε, evaluated
/// exactly on the volume step function; the integrand vanishes past the
/// largest breakpoint. t_cov is of order I².
pub fn fernique_integral(vg: &VolumeGrowthProfile) -> f64 {
    let n = vg.order() as f64;
    let bp = vg.breakpoints();
    let counts = vg.counts();
    let mut total = 0.0;
    for i in 0..bp.len().saturating_sub(1) {
        let integrand = (n / counts[i] as f64).ln().max(0.0).sqrt();
        total += (bp[i + 1] - bp[i]) * integrand;
    }
    total
}

/// Matthews sandwich (M, M·log|G|) with M the maximum commute time from the
/// identity. Natural logarithm.
pub fn matthews_bounds(cp: &CommuteProfile, order: usize) -> Result<(f64, f64)> {
    if order < 2 {
        return Err(Error::Validation(
            "Matthews bounds need a group of order at least 2".into(),
        ));
    }
    let m = cp.max_kappa();
    Ok((m, m * (order as f64).ln()))
}
