//! Monte Carlo estimate of E max of the Gaussian process attached to the
//! walk: centered, η_e = 0, with E|η_g - η_h|² equal to the commute time.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::cover::CommuteProfile;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Dense covariance factorization is limited to this order.
pub const GP_ORDER_CAP: usize = 2000;

/// Eigenvalues below -tol·λ_max mean the profile was not a commute metric.
const INDEFINITE_TOL: f64 = 1e-8;

/// Samples max_g η_g and returns (estimate, standard error). The covariance
/// C(g,h) = (κ(e,g) + κ(e,h) - κ(g,h)) / 2 is factorized by symmetric
/// eigendecomposition with small negative eigenvalues clamped to zero.
pub fn gp_emax(
    group: &FiniteGroup,
    cp: &CommuteProfile,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    let n = group.order();
    if n > GP_ORDER_CAP {
        return Err(Error::Validation(format!(
            "GP sampling limited to order {GP_ORDER_CAP}, group has {n}"
        )));
    }
    if samples == 0 {
        return Err(Error::Validation("at least one GP sample is required".into()));
    }
    let cov = DMatrix::from_fn(n, n, |g, h| {
        0.5 * (cp.kappa_at(g) + cp.kappa_at(h) - cp.kappa_pair(group, g, h))
    });
    let eig = cov.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let lambda_min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if lambda_min < -INDEFINITE_TOL * lambda_max {
        return Err(Error::Singular(format!(
            "covariance is indefinite: min eigenvalue {lambda_min:.3e} vs max {lambda_max:.3e}"
        )));
    }
    // rows of `factor` map standard normals to the process
    let mut factor = eig.eigenvectors;
    for (j, lam) in eig.eigenvalues.iter().enumerate() {
        let scale = lam.max(0.0).sqrt();
        factor.column_mut(j).scale_mut(scale);
    }

    let maxima: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let z = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let eta = &factor * z;
            eta.iter().copied().fold(0.0, f64::max)
        })
        .collect();

    let t = samples as f64;
    let mean = maxima.iter().sum::<f64>() / t;
    let var = if samples > 1 {
        maxima.iter().map(|&x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0)
    } else {
        0.0
    };
    Ok((mean, (var / t).sqrt()))
}
