//! Cover-time estimators behind a common trait, registered by name and
//! selected at runtime. `fernique` and `matthews` are deterministic and
//! always on; `gp` and `empirical` are stochastic opt-ins.

use serde::Serialize;

use crate::cover::{
    commute_profile, fernique_integral, gp_emax, matthews_bounds, packing_number, volume_growth,
    CommuteProfile, VolumeGrowthProfile,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, IrrepSet};
use crate::oracle::{default_step_cap, empirical_cover};
use crate::solver::solve_hitting_auto;
use crate::spectral::{HittingProfile, StepDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FerniqueEstimate {
    pub integral: f64,
    pub squared: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatthewsEstimate {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GpEstimate {
    pub emax: f64,
    pub stderr: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// One estimator's contribution to a report.
#[derive(Debug, Clone)]
pub enum CoverPiece {
    Fernique(FerniqueEstimate),
    Matthews(MatthewsEstimate),
    Gp(GpEstimate),
    Empirical(EmpiricalEstimate),
}

/// Aggregated cover-time report, serialized with a fixed field order.
#[derive(Debug, Clone, Serialize)]
pub struct CoverTimeReport {
    pub group: String,
    pub distribution: String,
    pub seed: u64,
    pub fernique: FerniqueEstimate,
    pub matthews: MatthewsEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp: Option<GpEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume_growth: Option<Vec<(f64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing: Option<Vec<(f64, u64)>>,
}

/// Estimator selection and stochastic parameters for [`cover_report`].
#[derive(Debug, Clone)]
pub struct CoverOptions {
    pub estimators: Vec<String>,
    pub trials: u64,
    pub samples: u64,
    pub seed: u64,
    pub step_cap: Option<u64>,
    pub include_volume: bool,
    pub include_packing: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            estimators: vec!["fernique".into(), "matthews".into()],
            trials: 1000,
            samples: 1000,
            seed: 0,
            step_cap: None,
            include_volume: false,
            include_packing: false,
        }
    }
}

/// Everything an estimator may consume. The hitting profile and derived
/// geometry are computed once and shared.
pub struct CoverContext<'a> {
    pub group: &'a FiniteGroup,
    pub dist: &'a StepDistribution,
    pub hitting: &'a HittingProfile,
    pub commute: &'a CommuteProfile,
    pub volume: &'a VolumeGrowthProfile,
    pub options: &'a CoverOptions,
}

/// A cover-time estimator selectable by name.
pub trait CoverEstimator: Sync {
    fn name(&self) -> &'static str;
    /// Deterministic estimators run even when not named explicitly.
    fn always_on(&self) -> bool {
        false
    }
    fn run(&self, cx: &CoverContext<'_>) -> Result<CoverPiece>;
}

struct Fernique;

impl CoverEstimator for Fernique {
    fn name(&self) -> &'static str {
        "fernique"
    }

    fn always_on(&self) -> bool {
        true
    }

    fn run(&self, cx: &CoverContext<'_>) -> Result<CoverPiece> {
        let integral = fernique_integral(cx.volume);
        Ok(CoverPiece::Fernique(FerniqueEstimate { integral, squared: integral * integral }))
    }
}

struct Matthews;

impl CoverEstimator for Matthews {
    fn name(&self) -> &'static str {
        "matthews"
    }

    fn always_on(&self) -> bool {
        true
    }

    fn run(&self, cx: &CoverContext<'_>) -> Result<CoverPiece> {
        let (lower, upper) = matthews_bounds(cx.commute, cx.group.order())?;
        Ok(CoverPiece::Matthews(MatthewsEstimate { lower, upper }))
    }
}

struct GpMax;

impl CoverEstimator for GpMax {
    fn name(&self) -> &'static str {
        "gp"
    }

    fn run(&self, cx: &CoverContext<'_>) -> Result<CoverPiece> {
        let (emax, stderr) =
            gp_emax(cx.group, cx.commute, cx.options.samples, cx.options.seed)?;
        Ok(CoverPiece::Gp(GpEstimate { emax, stderr, samples: cx.options.samples }))
    }
}

struct Empirical;

impl CoverEstimator for Empirical {
    fn name(&self) -> &'static str {
        "empirical"
    }

    fn run(&self, cx: &CoverContext<'_>) -> Result<CoverPiece> {
        let cap = cx
            .options
            .step_cap
            .unwrap_or_else(|| default_step_cap(cx.group.order()));
        let report =
            empirical_cover(cx.group, cx.dist, cx.options.trials, cx.options.seed, cap)?;
        if report.truncated {
            return Err(Error::Truncated(format!(
                "empirical cover truncated at step cap {cap}"
            )));
        }
        Ok(CoverPiece::Empirical(EmpiricalEstimate {
            mean: report.cover_mean,
            stderr: report.cover_stderr,
            trials: report.trials,
        }))
    }
}

/// The registry, in canonical execution (and serialization) order.
static ESTIMATORS: &[&dyn CoverEstimator] = &[&Fernique, &Matthews, &GpMax, &Empirical];

pub fn estimator_names() -> Vec<&'static str> {
    ESTIMATORS.iter().map(|e| e.name()).collect()
}

pub fn find_estimator(name: &str) -> Option<&'static dyn CoverEstimator> {
    ESTIMATORS.iter().find(|e| e.name() == name).copied()
}

/// Runs the selected estimators over one walk and assembles the report.
/// The hitting profile comes from the best available solver: characters on
/// abelian-structured groups, supplied irreps otherwise, dense solve as the
/// fallback.
pub fn cover_report(
    group: &FiniteGroup,
    dist: &StepDistribution,
    irreps: Option<&IrrepSet>,
    options: &CoverOptions,
) -> Result<CoverTimeReport> {
    for name in &options.estimators {
        if find_estimator(name).is_none() {
            return Err(Error::Parse(format!(
                "unknown estimator `{name}` (available: {})",
                estimator_names().join(", ")
            )));
        }
    }
    let hitting = solve_hitting_auto(group, dist, irreps)?;
    let commute = commute_profile(group, &hitting);
    let volume = volume_growth(&commute);
    let cx = CoverContext {
        group,
        dist,
        hitting: &hitting,
        commute: &commute,
        volume: &volume,
        options,
    };

    let mut fernique = None;
    let mut matthews = None;
    let mut gp = None;
    let mut empirical = None;
    for estimator in ESTIMATORS {
        let selected = estimator.always_on()
            || options.estimators.iter().any(|n| n == estimator.name());
        if !selected {
            continue;
        }
        match estimator.run(&cx)? {
            CoverPiece::Fernique(est) => fernique = Some(est),
            CoverPiece::Matthews(est) => matthews = Some(est),
            CoverPiece::Gp(est) => gp = Some(est),
            CoverPiece::Empirical(est) => empirical = Some(est),
        }
    }

    Ok(CoverTimeReport {
        group: group.spec().to_string(),
        distribution: dist.spec().to_string(),
        seed: options.seed,
        fernique: fernique.expect("fernique estimator is always on"),
        matthews: matthews.expect("matthews estimator is always on"),
        gp,
        empirical,
        volume_growth: options.include_volume.then(|| volume.points()),
        packing: options.include_packing.then(|| {
            volume
                .breakpoints()
                .iter()
                .map(|&eps| (eps, packing_number(group, &commute, eps) as u64))
                .collect()
        }),
    })
}
