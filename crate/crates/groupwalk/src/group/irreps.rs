//! Irreducible representations: synthesized characters for products of
//! cyclic groups, explicit complex-matrix tables for everything else.

use std::f64::consts::TAU;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, FiniteGroup, ValidationReport, EXHAUSTIVE_CAP};
use crate::error::{Error, Result};

const HOM_TOL: f64 = 1e-9;
const SUM_TOL: f64 = 1e-9;
const TRIVIAL_TOL: f64 = 1e-9;

/// Exhaustive homomorphism validation runs while r·n² stays below this.
const HOM_BUDGET: usize = 1 << 27;

#[derive(Debug, Clone)]
enum IrrepKind {
    /// One-dimensional characters of a product of cyclic factors. Character
    /// j has exponent tuple equal to the element tuple of index j, so
    /// ordering is trivial-first then lexicographic in the exponents.
    Characters {
        radices: Vec<u64>,
        /// roots[k][t] = exp(2πi t / radices[k])
        roots: Vec<Vec<Complex64>>,
        /// row-major n×m decoded tuples, shared by exponents and elements
        tuples: Vec<u64>,
    },
    /// Explicit tables: mats[i][g] is the d_i×d_i matrix of ρ_i(g).
    Matrices(Vec<Vec<DMatrix<Complex64>>>),
}

/// A complete set of irreducible representations aligned with a group's
/// element indexing. Index 0 is always the trivial representation.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    order: usize,
    degrees: Vec<usize>,
    kind: IrrepKind,
}

/// Handle to one representation inside an [`IrrepSet`].
#[derive(Debug, Clone, Copy)]
pub struct Irrep<'a> {
    set: &'a IrrepSet,
    index: usize,
}

impl<'a> Irrep<'a> {
    pub fn degree(&self) -> usize {
        self.set.degrees[self.index]
    }

    pub fn eval(&self, g: usize) -> DMatrix<Complex64> {
        self.set.eval(self.index, g)
    }
}

impl IrrepSet {
    /// Character table of a cyclic/product-built abelian group:
    /// χ_j(a) = Π_k exp(2πi j_k a_k / n_k).
    pub fn characters(group: &FiniteGroup) -> Result<IrrepSet> {
        let radices = group
            .radices()
            .ok_or_else(|| {
                Error::Validation(
                    "characters require a group built as cyclic or a product of cyclics".into(),
                )
            })?
            .to_vec();
        let n = group.order();
        let m = radices.len();
        let roots: Vec<Vec<Complex64>> = radices
            .iter()
            .map(|&r| {
                (0..r)
                    .map(|t| Complex64::from_polar(1.0, TAU * t as f64 / r as f64))
                    .collect()
            })
            .collect();
        let mut tuples = vec![0u64; n * m];
        for g in 0..n {
            tuples[g * m..(g + 1) * m].copy_from_slice(group.element_tuple(g).unwrap());
        }
        Ok(IrrepSet {
            order: n,
            degrees: vec![1; n],
            kind: IrrepKind::Characters { radices, roots, tuples },
        })
    }

    /// Wraps explicit matrix tables. `mats[i][g]` is ρ_i at element g.
    /// Shapes are checked here; group-dependent invariants are the job of
    /// [`validate_irreps`].
    pub fn from_matrices(mats: Vec<Vec<DMatrix<Complex64>>>) -> Result<IrrepSet> {
        if mats.is_empty() {
            return Err(Error::Validation("irrep set is empty".into()));
        }
        let order = mats[0].len();
        let mut degrees = Vec::with_capacity(mats.len());
        for (i, rep) in mats.iter().enumerate() {
            if rep.len() != order {
                return Err(Error::Validation(format!(
                    "representation {i} has {} matrices, expected {order}",
                    rep.len()
                )));
            }
            if rep.is_empty() {
                return Err(Error::Validation(format!("representation {i} is empty")));
            }
            let d = rep[0].nrows();
            if d == 0 {
                return Err(Error::Validation(format!("representation {i} has degree 0")));
            }
            for (g, mat) in rep.iter().enumerate() {
                if mat.nrows() != d || mat.ncols() != d {
                    return Err(Error::Validation(format!(
                        "representation {i} at element {g} is {}x{}, expected {d}x{d}",
                        mat.nrows(),
                        mat.ncols()
                    )));
                }
            }
            degrees.push(d);
        }
        Ok(IrrepSet { order, degrees, kind: IrrepKind::Matrices(mats) })
    }

    /// Reads an irrep file: a JSON list of representations, each a list over
    /// element index of d×d matrices whose entries are [re, im] pairs.
    pub fn from_file(path: &Path) -> Result<IrrepSet> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read irrep file {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("irrep file {}: {e}", path.display())))?;
        let reps = value
            .as_array()
            .ok_or_else(|| Error::Parse("irrep file must be a JSON list of representations".into()))?;
        let mut mats = Vec::with_capacity(reps.len());
        for (i, rep) in reps.iter().enumerate() {
            let elems = rep
                .as_array()
                .ok_or_else(|| Error::Parse(format!("representation {i} must be a list")))?;
            let mut per_element = Vec::with_capacity(elems.len());
            for (g, mat) in elems.iter().enumerate() {
                per_element.push(parse_matrix(mat, i, g)?);
            }
            mats.push(per_element);
        }
        Self::from_matrices(mats)
    }

    /// Number of representations.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Order of the group the set is aligned with.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// True when every representation is one-dimensional.
    pub fn all_scalar(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    pub fn irrep(&self, i: usize) -> Irrep<'_> {
        Irrep { set: self, index: i }
    }

    /// ρ_i(g) as a dense matrix.
    pub fn eval(&self, i: usize, g: usize) -> DMatrix<Complex64> {
        match &self.kind {
            IrrepKind::Characters { .. } => {
                DMatrix::from_element(1, 1, self.eval_scalar(i, g))
            }
            IrrepKind::Matrices(mats) => mats[i][g].clone(),
        }
    }

    /// ρ_i(g) for a one-dimensional representation, without allocation.
    #[inline]
    pub fn eval_scalar(&self, i: usize, g: usize) -> Complex64 {
        match &self.kind {
            IrrepKind::Characters { radices, roots, tuples } => {
                let m = radices.len();
                let exps = &tuples[i * m..(i + 1) * m];
                let elem = &tuples[g * m..(g + 1) * m];
                let mut acc = Complex64::new(1.0, 0.0);
                for k in 0..m {
                    let t = (exps[k] * elem[k]) % radices[k];
                    acc *= roots[k][t as usize];
                }
                acc
            }
            IrrepKind::Matrices(mats) => {
                debug_assert_eq!(self.degrees[i], 1);
                mats[i][g][(0, 0)]
            }
        }
    }

    /// Tr(ρ_i(g)·B) without materializing the product.
    pub fn trace_mul(&self, i: usize, g: usize, block: &DMatrix<Complex64>) -> Complex64 {
        match &self.kind {
            IrrepKind::Characters { .. } => self.eval_scalar(i, g) * block[(0, 0)],
            IrrepKind::Matrices(mats) => {
                let rho = &mats[i][g];
                let d = self.degrees[i];
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..d {
                    for b in 0..d {
                        acc += rho[(a, b)] * block[(b, a)];
                    }
                }
                acc
            }
        }
    }
}

fn parse_matrix(value: &serde_json::Value, rep: usize, g: usize) -> Result<DMatrix<Complex64>> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Parse(format!("rep {rep}, element {g}: matrix must be a list of rows")))?;
    let d = rows.len();
    let mut out = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for (a, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("rep {rep}, element {g}: row {a} must be a list")))?;
        if row.len() != d {
            return Err(Error::Parse(format!(
                "rep {rep}, element {g}: matrix is not square ({d} rows, row {a} has {} entries)",
                row.len()
            )));
        }
        for (b, entry) in row.iter().enumerate() {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "rep {rep}, element {g}: entry ({a},{b}) must be an [re, im] pair"
                    ))
                })?;
            let re = pair[0].as_f64().ok_or_else(|| {
                Error::Parse(format!("rep {rep}, element {g}: non-numeric real part"))
            })?;
            let im = pair[1].as_f64().ok_or_else(|| {
                Error::Parse(format!("rep {rep}, element {g}: non-numeric imaginary part"))
            })?;
            out[(a, b)] = Complex64::new(re, im);
        }
    }
    Ok(out)
}

/// Synthesizes the character table of an abelian (cyclic/product) group.
pub fn characters(group: &FiniteGroup) -> Result<IrrepSet> {
    IrrepSet::characters(group)
}

/// Checks every irrep-set invariant against a group, reporting the first
/// counterexample per failed check rather than erroring out.
pub fn validate_irreps(group: &FiniteGroup, reps: &IrrepSet) -> ValidationReport {
    let checks = vec![
        check_alignment(group, reps),
        check_degrees(group, reps),
        check_trivial(group, reps),
        check_homomorphism(group, reps),
        check_nontrivial_sums(group, reps),
        check_abelian_scalar_distinct(group, reps),
    ];
    ValidationReport { checks }
}

fn check_alignment(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    if reps.order() != group.order() {
        return CheckResult::fail(
            "alignment",
            format!(
                "irreps defined on {} elements, group has {}",
                reps.order(),
                group.order()
            ),
        );
    }
    CheckResult::ok("alignment")
}

fn check_degrees(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    let total: usize = reps.degrees().iter().map(|&d| d * d).sum();
    if total != group.order() {
        return CheckResult::fail(
            "degree-sum",
            format!("sum of squared degrees is {total}, expected {}", group.order()),
        );
    }
    CheckResult::ok("degree-sum")
}

fn check_trivial(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    if reps.degree(0) != 1 {
        return CheckResult::fail("trivial-first", "representation 0 is not 1-dimensional".into());
    }
    for g in 0..group.order() {
        let v = reps.eval_scalar(0, g);
        if (v - Complex64::new(1.0, 0.0)).norm() > TRIVIAL_TOL {
            return CheckResult::fail(
                "trivial-first",
                format!("ρ_1({g}) = {v} differs from 1"),
            );
        }
    }
    CheckResult::ok("trivial-first")
}

fn check_homomorphism(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    let n = group.order();
    let r = reps.len();
    let exhaustive = n <= EXHAUSTIVE_CAP && r.saturating_mul(n * n) <= HOM_BUDGET;

    let check_one = |i: usize, g: usize, h: usize| -> Option<String> {
        let gh = group.multiply(g, h);
        if reps.degree(i) == 1 {
            let lhs = reps.eval_scalar(i, gh);
            let rhs = reps.eval_scalar(i, g) * reps.eval_scalar(i, h);
            if (lhs - rhs).norm() > HOM_TOL {
                return Some(format!("rep {i}: ρ({g}·{h}) = {lhs} but ρ({g})ρ({h}) = {rhs}"));
            }
        } else {
            let lhs = reps.eval(i, gh);
            let rhs = reps.eval(i, g) * reps.eval(i, h);
            let err = (&lhs - &rhs).iter().map(|c| c.norm()).fold(0.0, f64::max);
            if err > HOM_TOL {
                return Some(format!(
                    "rep {i}: ρ({g}·{h}) differs from ρ({g})ρ({h}) by {err:.3e}"
                ));
            }
        }
        None
    };

    if exhaustive {
        for i in 0..r {
            for g in 0..n {
                for h in 0..n {
                    if let Some(detail) = check_one(i, g, h) {
                        return CheckResult::fail("homomorphism", detail);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(super::VALIDATION_SEED ^ 0x1);
        for _ in 0..10 * n {
            let i = rng.random_range(0..r);
            let g = rng.random_range(0..n);
            let h = rng.random_range(0..n);
            if let Some(detail) = check_one(i, g, h) {
                return CheckResult::fail("homomorphism", detail);
            }
        }
    }
    CheckResult::ok("homomorphism")
}

fn check_nontrivial_sums(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    let n = group.order();
    for i in 1..reps.len() {
        if reps.degree(i) == 1 {
            let mut acc = Complex64::new(0.0, 0.0);
            for g in 0..n {
                acc += reps.eval_scalar(i, g);
            }
            if acc.norm() > SUM_TOL {
                return CheckResult::fail(
                    "nontrivial-sum",
                    format!("Σ_g ρ_{i}(g) = {acc}, expected 0"),
                );
            }
        } else {
            let d = reps.degree(i);
            let mut acc = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
            for g in 0..n {
                acc += reps.eval(i, g);
            }
            let worst = acc.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if worst > SUM_TOL {
                return CheckResult::fail(
                    "nontrivial-sum",
                    format!("Σ_g ρ_{i}(g) has entry of size {worst:.3e}, expected 0"),
                );
            }
        }
    }
    CheckResult::ok("nontrivial-sum")
}

fn check_abelian_scalar_distinct(group: &FiniteGroup, reps: &IrrepSet) -> CheckResult {
    if !group.is_abelian_structured() {
        return CheckResult::ok("abelian-distinct");
    }
    if let Some(&d) = reps.degrees().iter().find(|&&d| d != 1) {
        return CheckResult::fail(
            "abelian-distinct",
            format!("abelian group has a representation of degree {d}"),
        );
    }
    if matches!(reps.kind, IrrepKind::Characters { .. }) {
        // Distinct exponent tuples give distinct characters by construction.
        return CheckResult::ok("abelian-distinct");
    }
    let n = group.order();
    let r = reps.len();
    if r <= EXHAUSTIVE_CAP {
        for i in 0..r {
            for j in (i + 1)..r {
                let distinct = (0..n).any(|g| {
                    (reps.eval_scalar(i, g) - reps.eval_scalar(j, g)).norm() > TRIVIAL_TOL
                });
                if !distinct {
                    return CheckResult::fail(
                        "abelian-distinct",
                        format!("characters {i} and {j} coincide"),
                    );
                }
            }
        }
    }
    CheckResult::ok("abelian-distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cyclic4_characters_are_powers_of_i() {
        let g = FiniteGroup::from_spec("cyclic:4").unwrap();
        let chars = characters(&g).unwrap();
        assert_eq!(chars.len(), 4);
        let i_unit = Complex64::new(0.0, 1.0);
        for j in 0..4 {
            for k in 0..4 {
                let expected = i_unit.powu((j * k) as u32 % 4);
                assert!((chars.eval_scalar(j, k) - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn walsh_functions_on_z2_squared() {
        let g = FiniteGroup::from_spec("product:2,2").unwrap();
        let chars = characters(&g).unwrap();
        assert_eq!(chars.len(), 4);
        for j in 0..4usize {
            for x in 0..4usize {
                // dot product of exponent bits, last factor fastest
                let dot = ((j >> 1) & (x >> 1)) + (j & x & 1);
                let expected = if dot % 2 == 0 { 1.0 } else { -1.0 };
                let got = chars.eval_scalar(j, x);
                assert!((got.re - expected).abs() < 1e-12 && got.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_group_single_character() {
        let g = FiniteGroup::from_spec("cyclic:1").unwrap();
        let chars = characters(&g).unwrap();
        assert_eq!(chars.len(), 1);
        assert!((chars.eval_scalar(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn characters_reject_table_groups() {
        let g = FiniteGroup::from_table(6, fixtures::s3_rows().concat()).unwrap();
        assert!(characters(&g).is_err());
    }

    #[test]
    fn generated_characters_validate() {
        let g = FiniteGroup::from_spec("cyclic:6").unwrap();
        let chars = characters(&g).unwrap();
        let report = validate_irreps(&g, &chars);
        assert!(report.pass(), "{:?}", report.first_failure());
    }

    #[test]
    fn duplicated_character_fails_validation() {
        let g = FiniteGroup::from_spec("cyclic:4").unwrap();
        let chars = characters(&g).unwrap();
        // Rebuild as explicit matrices with character 2 overwritten by 1.
        let mats: Vec<Vec<DMatrix<Complex64>>> = (0..4)
            .map(|i| {
                let src = if i == 2 { 1 } else { i };
                (0..4).map(|g| DMatrix::from_element(1, 1, chars.eval_scalar(src, g))).collect()
            })
            .collect();
        let dup = IrrepSet::from_matrices(mats).unwrap();
        let report = validate_irreps(&g, &dup);
        assert!(!report.pass());
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        assert!(failed.contains(&"nontrivial-sum") || failed.contains(&"abelian-distinct"));
    }

    #[test]
    fn s3_supplied_irreps_validate() {
        let g = FiniteGroup::from_table(6, fixtures::s3_rows().concat()).unwrap();
        let reps = fixtures::s3_irreps();
        let report = validate_irreps(&g, &reps);
        assert!(report.pass(), "{:?}", report.first_failure());
        assert_eq!(reps.degrees(), &[1, 1, 2]);
        let total: usize = reps.degrees().iter().map(|&d| d * d).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn character_rows_are_orthogonal() {
        for spec in ["cyclic:6", "product:2,3", "product:4,4", "cyclic:17"] {
            let g = FiniteGroup::from_spec(spec).unwrap();
            let chars = characters(&g).unwrap();
            let n = g.order();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in 0..n {
                        acc += chars.eval_scalar(i, x) * chars.eval_scalar(j, x).conj();
                    }
                    let expected = if i == j { n as f64 } else { 0.0 };
                    assert!(
                        (acc - Complex64::new(expected, 0.0)).norm() < 1e-9,
                        "{spec}: rows {i},{j} inner product {acc}"
                    );
                }
            }
        }
    }

    #[test]
    fn nontrivial_sums_vanish() {
        let g = FiniteGroup::from_spec("product:3,5").unwrap();
        let chars = characters(&g).unwrap();
        for i in 1..chars.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..g.order() {
                acc += chars.eval_scalar(i, x);
            }
            assert!(acc.norm() <= 1e-9, "character {i} sums to {acc}");
        }
    }

    #[test]
    fn irrep_file_round_trip() {
        use std::io::Write;
        let json = fixtures::s3_irreps_json();
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "{json}").unwrap();
        f.flush().unwrap();
        let set = IrrepSet::from_file(f.path()).unwrap();
        assert_eq!(set.degrees(), &[1, 1, 2]);
        let g = FiniteGroup::from_table(6, fixtures::s3_rows().concat()).unwrap();
        assert!(validate_irreps(&g, &set).pass());
    }
}
