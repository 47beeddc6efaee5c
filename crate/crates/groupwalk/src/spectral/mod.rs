//! Fourier analysis on finite groups: transforms, inversion, convolution,
//! and the exact hitting-time formulas built on top of them.

use nalgebra::DMatrix;
pub use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, IrrepSet};

mod distribution;
mod hitting;

pub use distribution::StepDistribution;
pub use hitting::{
    first_return, hitting_abelian, hitting_general, hypercube_hitting, HittingProfile,
};

/// A complex-valued function on the group, indexed by element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        GroupFunction { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        GroupFunction { values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect() }
    }

    /// Indicator of a single element.
    pub fn delta(order: usize, g: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); order];
        values[g] = Complex64::new(1.0, 0.0);
        GroupFunction { values }
    }

    pub fn constant(order: usize, value: f64) -> Self {
        GroupFunction { values: vec![Complex64::new(value, 0.0); order] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: usize) -> Complex64 {
        self.values[g]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// True when the entries form a probability measure: real, nonnegative,
    /// summing to 1 within 1e-12.
    pub fn is_probability(&self) -> bool {
        let mut sum = 0.0;
        for v in &self.values {
            if v.im.abs() > 1e-12 || v.re < 0.0 {
                return false;
            }
            sum += v.re;
        }
        (sum - 1.0).abs() <= 1e-12
    }
}

/// Fourier transform of a group function: one d_i×d_i block per
/// representation, aligned with an [`IrrepSet`].
#[derive(Debug, Clone)]
pub struct FourierImage {
    blocks: Vec<DMatrix<Complex64>>,
}

impl FourierImage {
    pub fn new(blocks: Vec<DMatrix<Complex64>>) -> Self {
        FourierImage { blocks }
    }

    pub fn blocks(&self) -> &[DMatrix<Complex64>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &DMatrix<Complex64> {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn check_shapes(&self, reps: &IrrepSet) -> Result<()> {
        if self.blocks.len() != reps.len() {
            return Err(Error::Validation(format!(
                "Fourier image has {} blocks, irrep set has {}",
                self.blocks.len(),
                reps.len()
            )));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            let d = reps.degree(i);
            if b.nrows() != d || b.ncols() != d {
                return Err(Error::Validation(format!(
                    "block {i} is {}x{}, representation has degree {d}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(())
    }
}

/// f̂(ρ_i) = Σ_g f(g) ρ_i(g), one block per representation.
pub fn fourier_transform(f: &GroupFunction, reps: &IrrepSet) -> Result<FourierImage> {
    if f.len() != reps.order() {
        return Err(Error::Validation(format!(
            "function has length {}, irreps are over {} elements",
            f.len(),
            reps.order()
        )));
    }
    let n = f.len();
    let mut blocks = Vec::with_capacity(reps.len());
    for i in 0..reps.len() {
        let d = reps.degree(i);
        if d == 1 {
            let mut acc = Complex64::new(0.0, 0.0);
            for g in 0..n {
                acc += f.value(g) * reps.eval_scalar(i, g);
            }
            blocks.push(DMatrix::from_element(1, 1, acc));
        } else {
            let mut acc = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
            for g in 0..n {
                acc += reps.eval(i, g) * f.value(g);
            }
            blocks.push(acc);
        }
    }
    Ok(FourierImage { blocks })
}

/// Fourier inversion: f(g) = (1/|G|) Σ_i d_i Tr(ρ_i(g⁻¹) f̂(ρ_i)).
pub fn fourier_invert(
    image: &FourierImage,
    reps: &IrrepSet,
    group: &FiniteGroup,
) -> Result<GroupFunction> {
    image.check_shapes(reps)?;
    if reps.order() != group.order() {
        return Err(Error::Validation("irrep set is not aligned with the group".into()));
    }
    let n = group.order();
    let mut values = Vec::with_capacity(n);
    for g in 0..n {
        let ginv = group.inverse(g);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..reps.len() {
            acc += reps.trace_mul(i, ginv, image.block(i)) * reps.degree(i) as f64;
        }
        values.push(acc / n as f64);
    }
    Ok(GroupFunction { values })
}

/// Convolution (f1 ∗ f2)(h) = Σ_g f1(h g⁻¹) f2(g), evaluated directly.
pub fn convolve(
    group: &FiniteGroup,
    f1: &GroupFunction,
    f2: &GroupFunction,
) -> Result<GroupFunction> {
    let n = group.order();
    if f1.len() != n || f2.len() != n {
        return Err(Error::Validation(format!(
            "convolution operands have lengths {} and {}, group has order {n}",
            f1.len(),
            f2.len()
        )));
    }
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for (h, out) in values.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for g in 0..n {
            let hginv = group.multiply(h, group.inverse(g));
            acc += f1.value(hginv) * f2.value(g);
        }
        *out = acc;
    }
    Ok(GroupFunction { values })
}
