//! Independent ground-truth engines: dense linear solves of the hitting
//! system, seeded Monte Carlo simulation, and an exact cycle cover-time DP.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::spectral::{HittingProfile, StepDistribution};

mod cover_cycle;
mod simulate;

pub use cover_cycle::exact_cover_cycle;
pub use simulate::{
    default_step_cap, empirical_cover, simulate_walk, SimulationReport, WalkStats,
};

/// Dense solves are limited to this order; beyond it only the spectral
/// path is available.
pub const DENSE_SOLVE_CAP: usize = 2000;

/// Row-stochastic transition matrix P(g,h) = p(h·g⁻¹).
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    matrix: DMatrix<f64>,
}

impl TransitionMatrix {
    pub fn new(group: &FiniteGroup, dist: &StepDistribution) -> Result<TransitionMatrix> {
        let n = group.order();
        if n > DENSE_SOLVE_CAP {
            return Err(Error::Validation(format!(
                "dense transition matrix limited to order {DENSE_SOLVE_CAP}, group has {n}"
            )));
        }
        let mut matrix = DMatrix::zeros(n, n);
        for g in 0..n {
            for &(s, w) in dist.support() {
                let h = group.multiply(s, g);
                matrix[(g, h)] += w;
            }
        }
        Ok(TransitionMatrix { matrix })
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn entry(&self, g: usize, h: usize) -> f64 {
        self.matrix[(g, h)]
    }
}

/// Solves the hitting system of the walk directly: h(e) = 0 pinned and
/// h(g) - Σ_s p(s) h(g s⁻¹) = 1 for g ≠ e, one dense (n-1)-dimensional
/// solve.
pub fn hitting_linear_solve(
    group: &FiniteGroup,
    dist: &StepDistribution,
) -> Result<HittingProfile> {
    let n = group.order();
    if n > DENSE_SOLVE_CAP {
        return Err(Error::Validation(format!(
            "dense hitting solve limited to order {DENSE_SOLVE_CAP}, group has {n}"
        )));
    }
    if !dist.is_irreducible() {
        return Err(Error::Reducible(
            "walk is not irreducible: the support does not generate the group".into(),
        ));
    }
    if n == 1 {
        return Ok(HittingProfile::new(vec![0.0]));
    }
    let mut a = DMatrix::zeros(n - 1, n - 1);
    for g in 1..n {
        a[(g - 1, g - 1)] += 1.0;
        for &(s, w) in dist.support() {
            let u = group.multiply(g, group.inverse(s));
            if u != 0 {
                a[(g - 1, u - 1)] -= w;
            }
        }
    }
    let b = DVector::from_element(n - 1, 1.0);
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Reducible("hitting system is singular (reducible chain)".into()))?;
    let mut values = vec![0.0; n];
    for g in 1..n {
        values[g] = x[g - 1];
    }
    Ok(HittingProfile::new(values))
}

/// Full matrix of expected hitting times M[x][t] = E_x[τ_t], solved one
/// absorbing system per target straight from the transition matrix. Meant
/// for small groups; it is the cross-check for the translation identity
/// E_x[τ_t] = h(t·x⁻¹).
pub fn hitting_matrix(p: &TransitionMatrix) -> Result<DMatrix<f64>> {
    let n = p.order();
    let mut out = DMatrix::zeros(n, n);
    for target in 0..n {
        let others: Vec<usize> = (0..n).filter(|&x| x != target).collect();
        let mut a = DMatrix::zeros(n - 1, n - 1);
        for (row, &x) in others.iter().enumerate() {
            a[(row, row)] += 1.0;
            for (col, &y) in others.iter().enumerate() {
                a[(row, col)] -= p.entry(x, y);
            }
        }
        let b = DVector::from_element(n - 1, 1.0);
        let sol = a.lu().solve(&b).ok_or_else(|| {
            Error::Reducible(format!("absorbing system for target {target} is singular"))
        })?;
        for (row, &x) in others.iter().enumerate() {
            out[(x, target)] = sol[row];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectral::hitting_abelian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rows_sum_to_one_and_translation_invariance_exact() {
        let g = FiniteGroup::from_spec("product:3,4").unwrap();
        let d = StepDistribution::uniform_generators(&g).unwrap();
        let p = TransitionMatrix::new(&g, &d).unwrap();
        let n = g.order();
        for x in 0..n {
            let sum: f64 = (0..n).map(|y| p.entry(x, y)).sum();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
        // P(g, hg) = P(e, h), bitwise.
        for gg in 0..n {
            for h in 0..n {
                let hg = g.multiply(h, gg);
                assert_eq!(p.entry(gg, hg), p.entry(0, h));
            }
        }
    }

    #[test]
    fn uniform_distribution_is_stationary() {
        let g = FiniteGroup::from_spec("cyclic:9").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x57A7);
        let d = fixtures::random_irreducible_dist(&g, &mut rng);
        let p = TransitionMatrix::new(&g, &d).unwrap();
        let n = g.order();
        for h in 0..n {
            let col: f64 = (0..n).map(|x| p.entry(x, h) / n as f64).sum();
            assert!((col - 1.0 / n as f64).abs() <= 1e-12);
        }
    }

    #[test]
    fn z5_nearest_neighbor_solve() {
        let g = FiniteGroup::from_spec("cyclic:5").unwrap();
        let d = StepDistribution::uniform_generators(&g).unwrap();
        let h = hitting_linear_solve(&g, &d).unwrap();
        let expected = [0.0, 4.0, 6.0, 6.0, 4.0];
        for (k, want) in expected.iter().enumerate() {
            assert!((h.value(k) - want).abs() < 1e-10, "{:?}", h.values());
        }
    }

    #[test]
    fn trivial_chain() {
        let g = FiniteGroup::from_spec("cyclic:1").unwrap();
        let d = StepDistribution::uniform_generators(&g).unwrap();
        let h = hitting_linear_solve(&g, &d).unwrap();
        assert_eq!(h.values(), &[0.0]);
    }

    #[test]
    fn seeded_random_walks_match_spectral_path() {
        let g = FiniteGroup::from_spec("cyclic:12").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0D0D);
        for _ in 0..10 {
            let d = fixtures::random_irreducible_dist(&g, &mut rng);
            let solve = hitting_linear_solve(&g, &d).unwrap();
            let spectral = hitting_abelian(&g, &d).unwrap();
            for k in 0..12 {
                let err = (solve.value(k) - spectral.value(k)).abs();
                assert!(err <= 1e-8 * spectral.value(k).abs().max(1.0));
            }
        }
    }

    #[test]
    fn reducible_chain_rejected() {
        let g = FiniteGroup::from_spec("cyclic:6").unwrap();
        let d = StepDistribution::from_pairs(&g, vec![(2, 0.5), (4, 0.5)], "even").unwrap();
        let err = hitting_linear_solve(&g, &d).unwrap_err();
        assert_eq!(err.category(), "reducible");
    }

    #[test]
    fn hitting_matrix_translation_symmetry() {
        let g = FiniteGroup::from_spec("cyclic:8").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0E0E);
        let d = fixtures::random_irreducible_dist(&g, &mut rng);
        let p = TransitionMatrix::new(&g, &d).unwrap();
        let m = hitting_matrix(&p).unwrap();
        let h = hitting_linear_solve(&g, &d).unwrap();
        // M[k][g·k] = h(g)
        for k in 0..8 {
            for gg in 0..8 {
                let gk = g.multiply(gg, k);
                assert!(
                    (m[(k, gk)] - h.value(gg)).abs() <= 1e-8 * h.value(gg).abs().max(1.0),
                    "k={k} g={gg}"
                );
            }
        }
    }

    #[test]
    fn hitting_triangle_inequality_via_matrix() {
        let g = FiniteGroup::from_table(6, fixtures::s3_rows().concat()).unwrap();
        let third = 1.0 / 3.0;
        let d = StepDistribution::from_pairs(
            &g,
            vec![(3, third), (4, third), (5, 1.0 - 2.0 * third)],
            "transpositions",
        )
        .unwrap();
        let p = TransitionMatrix::new(&g, &d).unwrap();
        let m = hitting_matrix(&p).unwrap();
        let h = hitting_linear_solve(&g, &d).unwrap();
        for gg in 0..6 {
            for u in 0..6 {
                assert!(h.value(gg) <= h.value(u) + m[(u, gg)] + 1e-9);
            }
        }
    }

    #[test]
    fn reversibility_detector_agrees_with_inverse_symmetry() {
        for spec in ["cyclic:7", "product:2,5", "cyclic:12"] {
            let g = FiniteGroup::from_spec(spec).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0x0F0F);
            for _ in 0..50 {
                let d = fixtures::random_dist(&g, &mut rng);
                let by_def = d
                    .support()
                    .iter()
                    .all(|&(s, w)| (w - d.prob(g.inverse(s))).abs() <= 1e-12);
                assert_eq!(d.is_reversible(), by_def);
            }
        }
    }
}
