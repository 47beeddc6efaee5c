//! Exact hitting times through the Fourier transform.
//!
//! For an irreducible walk the transform of the hitting-time vector solves
//! ĥ(ρ_i) = -n (I - p̂(ρ_i))⁻¹ on every nontrivial representation, with the
//! trivial block pinned by h(e) = 0; Fourier inversion then recovers h. On
//! abelian groups the blocks are scalars and the sum collapses to
//! h(g) = Σ_i (1 - ρ_i(g⁻¹)) / (1 - p̂(ρ_i)).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, IrrepSet};
use crate::spectral::StepDistribution;

/// |1 - p̂| below this is reported as a nearly reducible spectrum.
const NEAR_SINGULAR_DENOM: f64 = 1e-12;
/// Condition estimate above this is reported as a nearly reducible spectrum.
const CONDITION_LIMIT: f64 = 1e12;
/// Relative bound on the imaginary residue discarded when realizing h.
const IMAG_TOL: f64 = 1e-8;

/// Expected steps from the identity to each element.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingProfile {
    values: Vec<f64>,
}

impl HittingProfile {
    pub(crate) fn new(values: Vec<f64>) -> Self {
        HittingProfile { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, g: usize) -> f64 {
        self.values[g]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn require_irreducible(dist: &StepDistribution) -> Result<()> {
    if !dist.is_irreducible() {
        return Err(Error::Reducible(
            "walk is not irreducible: the support does not generate the group".into(),
        ));
    }
    Ok(())
}

fn realize(acc: Complex64, g: usize) -> Result<f64> {
    if acc.im.abs() > IMAG_TOL * (1.0 + acc.re.abs()) {
        return Err(Error::Validation(format!(
            "hitting sum at element {g} has imaginary residue {:.3e} beyond tolerance",
            acc.im
        )));
    }
    Ok(acc.re)
}

/// Hitting times on an abelian (cyclic/product-built) group via the scalar
/// character formula.
pub fn hitting_abelian(group: &FiniteGroup, dist: &StepDistribution) -> Result<HittingProfile> {
    let chars = IrrepSet::characters(group)?;
    require_irreducible(dist)?;
    let n = group.order();

    // 1/(1 - p̂(χ_j)) for every nontrivial character.
    let mut inv_denom = vec![Complex64::new(0.0, 0.0); n];
    for (j, slot) in inv_denom.iter_mut().enumerate().skip(1) {
        let mut phat = Complex64::new(0.0, 0.0);
        for &(s, w) in dist.support() {
            phat += chars.eval_scalar(j, s) * w;
        }
        let denom = Complex64::new(1.0, 0.0) - phat;
        if denom.norm() < NEAR_SINGULAR_DENOM {
            return Err(Error::Singular(format!(
                "nearly reducible spectrum: |1 - p̂(ρ_{j})| = {:.3e}",
                denom.norm()
            )));
        }
        *slot = denom.inv();
    }

    let mut values = vec![0.0; n];
    for (g, slot) in values.iter_mut().enumerate().skip(1) {
        let ginv = group.inverse(g);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, inv) in inv_denom.iter().enumerate().skip(1) {
            acc += (Complex64::new(1.0, 0.0) - chars.eval_scalar(j, ginv)) * inv;
        }
        *slot = realize(acc, g)?;
    }
    Ok(HittingProfile::new(values))
}

fn inf_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.nrows())
        .map(|a| (0..m.ncols()).map(|b| m[(a, b)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Hitting times on any finite group from a complete validated irrep set:
/// invert I - p̂ per nontrivial block, pin the trivial block from h(e) = 0,
/// then apply Fourier inversion.
pub fn hitting_general(
    group: &FiniteGroup,
    dist: &StepDistribution,
    reps: &IrrepSet,
) -> Result<HittingProfile> {
    let n = group.order();
    if reps.order() != n {
        return Err(Error::Validation(format!(
            "irrep set is over {} elements, group has order {n}",
            reps.order()
        )));
    }
    let sumsq: usize = reps.degrees().iter().map(|&d| d * d).sum();
    if sumsq != n {
        return Err(Error::Validation(format!(
            "incomplete irrep set: sum of squared degrees is {sumsq}, expected {n}"
        )));
    }
    require_irreducible(dist)?;

    let r = reps.len();
    let neg_n = Complex64::new(-(n as f64), 0.0);
    let mut hhat: Vec<DMatrix<Complex64>> = Vec::with_capacity(r);
    hhat.push(DMatrix::from_element(1, 1, Complex64::new(0.0, 0.0)));
    let mut trace_sum = Complex64::new(0.0, 0.0);
    for i in 1..r {
        let d = reps.degree(i);
        let mut phat = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
        for &(s, w) in dist.support() {
            phat += reps.eval(i, s) * Complex64::new(w, 0.0);
        }
        let block = DMatrix::from_fn(d, d, |a, b| {
            let eye = if a == b { 1.0 } else { 0.0 };
            Complex64::new(eye, 0.0) - phat[(a, b)]
        });
        let inv = block.clone().lu().try_inverse().ok_or_else(|| {
            Error::Singular(format!("I - p̂(ρ_{i}) is singular (nearly reducible spectrum)"))
        })?;
        // ‖B‖ is floored at 1, the scale of the data I - p̂ was formed from;
        // otherwise 1×1 blocks would always report condition 1.
        let cond = inf_norm(&block).max(1.0) * inf_norm(&inv);
        if cond > CONDITION_LIMIT {
            return Err(Error::Singular(format!(
                "nearly reducible spectrum: condition estimate {cond:.3e} at representation {i}"
            )));
        }
        let hi = inv * neg_n;
        trace_sum += hi.trace() * reps.degree(i) as f64;
        hhat.push(hi);
    }
    hhat[0][(0, 0)] = -trace_sum;

    let mut values = vec![0.0; n];
    for (g, slot) in values.iter_mut().enumerate() {
        let ginv = group.inverse(g);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, block) in hhat.iter().enumerate() {
            acc += reps.trace_mul(i, ginv, block) * reps.degree(i) as f64;
        }
        *slot = realize(acc / n as f64, g)?;
    }
    // h(e) = 0 exactly; the inversion reproduces it only up to rounding.
    values[0] = 0.0;
    Ok(HittingProfile::new(values))
}

/// First-return value 1 + Σ_s h(s⁻¹) p(s); equals |G| for irreducible walks.
pub fn first_return(group: &FiniteGroup, dist: &StepDistribution, h: &HittingProfile) -> f64 {
    1.0 + dist
        .support()
        .iter()
        .map(|&(s, w)| h.value(group.inverse(s)) * w)
        .sum::<f64>()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Closed-form hitting time on the hypercube Z_2^m at Hamming weight j:
/// m Σ_{i odd} Σ_{l=0}^{m-j} C(j,i) C(m-j,l) / (l+i).
pub fn hypercube_hitting(m: u64, j: u64) -> Result<f64> {
    if j < 1 || j > m {
        return Err(Error::Validation(format!(
            "weight {j} out of range 1..={m} for the hypercube formula"
        )));
    }
    let mut total = 0.0;
    let mut i = 1;
    while i <= j {
        let cj = binomial(j, i) as f64;
        for l in 0..=(m - j) {
            total += cj * binomial(m - j, l) as f64 / (l + i) as f64;
        }
        i += 2;
    }
    Ok(m as f64 * total)
}
