//! Exact hitting times for random walks on finite groups, computed through
//! the Fourier transform on group representations, plus cover-time
//! estimates from the commute-time metric (volume growth and the Fernique
//! entropy integral, Matthews bounds, a Gaussian-process sampler) with
//! independent linear-algebra and Monte Carlo oracles for validation.

pub mod cover;
pub mod error;
pub mod group;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod spectral;

pub use cover::{
    commute_profile, cover_report, fernique_integral, gp_emax, matthews_bounds, packing_number,
    volume_growth, CommuteProfile, CoverOptions, CoverTimeReport, VolumeGrowthProfile,
};
pub use error::{Error, Result};
pub use group::{characters, validate_irreps, FiniteGroup, IrrepSet, ValidationReport};
pub use oracle::{
    empirical_cover, exact_cover_cycle, hitting_linear_solve, simulate_walk, SimulationReport,
    TransitionMatrix,
};
pub use solver::{solve_hitting, solve_hitting_auto, HittingSolver};
pub use spectral::{
    convolve, first_return, fourier_invert, fourier_transform, hitting_abelian, hitting_general,
    hypercube_hitting, FourierImage, GroupFunction, HittingProfile, StepDistribution,
};
