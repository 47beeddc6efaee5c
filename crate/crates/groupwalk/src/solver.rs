//! Hitting-time solvers behind a common trait: the abelian character
//! formula, the general Fourier-block formula, and the dense linear solve,
//! registered by name and selected at runtime or automatically.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, IrrepSet};
use crate::oracle::{hitting_linear_solve, DENSE_SOLVE_CAP};
use crate::spectral::{hitting_abelian, hitting_general, HittingProfile, StepDistribution};

/// One route from a walk to its hitting profile.
pub trait HittingSolver: Sync {
    fn name(&self) -> &'static str;
    /// Whether this solver can handle the given inputs at all.
    fn applicable(&self, group: &FiniteGroup, irreps: Option<&IrrepSet>) -> bool;
    fn solve(
        &self,
        group: &FiniteGroup,
        dist: &StepDistribution,
        irreps: Option<&IrrepSet>,
    ) -> Result<HittingProfile>;
}

struct AbelianFourier;

impl HittingSolver for AbelianFourier {
    fn name(&self) -> &'static str {
        "abelian"
    }

    fn applicable(&self, group: &FiniteGroup, _irreps: Option<&IrrepSet>) -> bool {
        group.is_abelian_structured()
    }

    fn solve(
        &self,
        group: &FiniteGroup,
        dist: &StepDistribution,
        _irreps: Option<&IrrepSet>,
    ) -> Result<HittingProfile> {
        hitting_abelian(group, dist)
    }
}

struct GeneralFourier;

impl HittingSolver for GeneralFourier {
    fn name(&self) -> &'static str {
        "general"
    }

    fn applicable(&self, group: &FiniteGroup, irreps: Option<&IrrepSet>) -> bool {
        irreps.is_some() || group.is_abelian_structured()
    }

    fn solve(
        &self,
        group: &FiniteGroup,
        dist: &StepDistribution,
        irreps: Option<&IrrepSet>,
    ) -> Result<HittingProfile> {
        match irreps {
            Some(reps) => hitting_general(group, dist, reps),
            None => {
                let chars = IrrepSet::characters(group)?;
                hitting_general(group, dist, &chars)
            }
        }
    }
}

struct DenseSolve;

impl HittingSolver for DenseSolve {
    fn name(&self) -> &'static str {
        "solve"
    }

    fn applicable(&self, group: &FiniteGroup, _irreps: Option<&IrrepSet>) -> bool {
        group.order() <= DENSE_SOLVE_CAP
    }

    fn solve(
        &self,
        group: &FiniteGroup,
        dist: &StepDistribution,
        _irreps: Option<&IrrepSet>,
    ) -> Result<HittingProfile> {
        hitting_linear_solve(group, dist)
    }
}

/// The registry, in auto-selection priority order.
static SOLVERS: &[&dyn HittingSolver] = &[&AbelianFourier, &GeneralFourier, &DenseSolve];

pub fn solver_names() -> Vec<&'static str> {
    SOLVERS.iter().map(|s| s.name()).collect()
}

pub fn find_solver(name: &str) -> Option<&'static dyn HittingSolver> {
    SOLVERS.iter().find(|s| s.name() == name).copied()
}

/// Picks the first applicable solver: characters when the group is built
/// abelian, the general Fourier path when irreps are supplied, the dense
/// solve otherwise (available up to order 2000).
pub fn solve_hitting_auto(
    group: &FiniteGroup,
    dist: &StepDistribution,
    irreps: Option<&IrrepSet>,
) -> Result<HittingProfile> {
    for solver in SOLVERS {
        if solver.applicable(group, irreps) {
            return solver.solve(group, dist, irreps);
        }
    }
    Err(Error::Validation(format!(
        "no hitting solver applies: order {} exceeds the dense-solve cap and no irreps were supplied",
        group.order()
    )))
}

/// Resolves `auto` or a registry name.
pub fn solve_hitting(
    group: &FiniteGroup,
    dist: &StepDistribution,
    irreps: Option<&IrrepSet>,
    method: &str,
) -> Result<HittingProfile> {
    if method == "auto" {
        return solve_hitting_auto(group, dist, irreps);
    }
    let solver = find_solver(method).ok_or_else(|| {
        Error::Parse(format!(
            "unknown hitting method `{method}` (available: auto, {})",
            solver_names().join(", ")
        ))
    })?;
    if !solver.applicable(group, irreps) {
        return Err(Error::Validation(format!(
            "hitting method `{method}` does not apply to this input"
        )));
    }
    solver.solve(group, dist, irreps)
}
