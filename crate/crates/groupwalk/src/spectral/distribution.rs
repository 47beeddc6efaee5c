//! Step distributions generating random walks.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const SUM_TOL: f64 = 1e-12;
const REVERSIBLE_TOL: f64 = 1e-12;

/// A probability measure on group elements, stored as its support, with the
/// irreducibility and reversibility of the walk it generates derived at
/// construction.
#[derive(Debug, Clone)]
pub struct StepDistribution {
    support: Vec<(usize, f64)>,
    irreducible: bool,
    reversible: bool,
    spec: String,
}

impl StepDistribution {
    /// Parses a distribution spec: `uniform-generators` or `file:<path>`.
    pub fn from_spec(group: &FiniteGroup, spec: &str) -> Result<StepDistribution> {
        if spec == "uniform-generators" {
            return Self::uniform_generators(group);
        }
        if let Some(path) = spec.strip_prefix("file:") {
            let mut dist = Self::from_file(group, Path::new(path))?;
            dist.spec = spec.to_string();
            return Ok(dist);
        }
        Err(Error::Parse(format!(
            "unknown distribution spec `{spec}` (expected `uniform-generators` or `file:<path>`)"
        )))
    }

    /// The canonical generator walk on a product of cyclic factors: mass
    /// 1/(2m) on each ±unit vector, folded to 1/m when a factor is Z_2
    /// (where +e_k = -e_k) or Z_1 (where the unit vector is the identity).
    pub fn uniform_generators(group: &FiniteGroup) -> Result<StepDistribution> {
        let radices = group.radices().ok_or_else(|| {
            Error::Validation(
                "uniform-generators requires a cyclic/product group; supply file:<path> for table groups"
                    .into(),
            )
        })?;
        let m = radices.len();
        let mut weights: Vec<(usize, f64)> = Vec::new();
        let add = |idx: usize, w: f64, weights: &mut Vec<(usize, f64)>| {
            match weights.iter_mut().find(|(i, _)| *i == idx) {
                Some((_, acc)) => *acc += w,
                None => weights.push((idx, w)),
            }
        };
        for k in 0..m {
            let mut coords = vec![0u64; m];
            if radices[k] <= 2 {
                // +e_k and -e_k coincide (or are the identity for Z_1).
                coords[k] = radices[k] - 1;
                let idx = group.tuple_index(&coords).unwrap();
                add(idx, 1.0 / m as f64, &mut weights);
            } else {
                coords[k] = 1;
                let plus = group.tuple_index(&coords).unwrap();
                coords[k] = radices[k] - 1;
                let minus = group.tuple_index(&coords).unwrap();
                add(plus, 1.0 / (2.0 * m as f64), &mut weights);
                add(minus, 1.0 / (2.0 * m as f64), &mut weights);
            }
        }
        weights.sort_by_key(|&(i, _)| i);
        Self::from_pairs(group, weights, "uniform-generators")
    }

    /// Reads a JSON list of [element index, probability] pairs.
    pub fn from_file(group: &FiniteGroup, path: &Path) -> Result<StepDistribution> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Parse(format!("cannot read distribution file {}: {e}", path.display()))
        })?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("distribution file {}: {e}", path.display())))?;
        let list = value.as_array().ok_or_else(|| {
            Error::Parse("distribution file must be a JSON list of [index, probability] pairs".into())
        })?;
        let mut pairs = Vec::with_capacity(list.len());
        for entry in list {
            let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                Error::Parse("distribution entries must be [index, probability] pairs".into())
            })?;
            let idx = pair[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("distribution index must be an integer".into()))?
                as usize;
            let p = pair[1]
                .as_f64()
                .ok_or_else(|| Error::Parse("distribution probability must be numeric".into()))?;
            pairs.push((idx, p));
        }
        Self::from_pairs(group, pairs, &format!("file:{}", path.display()))
    }

    /// Validates raw (index, probability) pairs and derives the walk flags.
    pub fn from_pairs(
        group: &FiniteGroup,
        pairs: Vec<(usize, f64)>,
        spec: &str,
    ) -> Result<StepDistribution> {
        if pairs.is_empty() {
            return Err(Error::Validation("step distribution has empty support".into()));
        }
        let n = group.order();
        let mut seen = vec![false; n];
        let mut sum = 0.0;
        for &(idx, p) in &pairs {
            if idx >= n {
                return Err(Error::Validation(format!(
                    "support element {idx} out of range for order {n}"
                )));
            }
            if seen[idx] {
                return Err(Error::Validation(format!("support element {idx} listed twice")));
            }
            seen[idx] = true;
            if p <= 0.0 || !p.is_finite() {
                return Err(Error::Validation(format!(
                    "probability {p} at element {idx} is not positive and finite"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Validation(format!(
                "probabilities sum to {sum}, expected 1 within {SUM_TOL:e}"
            )));
        }
        let gens: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
        let irreducible = group.generates(&gens);
        let reversible = pairs.iter().all(|&(idx, p)| {
            let inv = group.inverse(idx);
            let q = pairs.iter().find(|&&(j, _)| j == inv).map_or(0.0, |&(_, q)| q);
            (p - q).abs() <= REVERSIBLE_TOL
        });
        Ok(StepDistribution {
            support: pairs,
            irreducible,
            reversible,
            spec: spec.to_string(),
        })
    }

    pub fn support(&self) -> &[(usize, f64)] {
        &self.support
    }

    /// The walk generated by this measure reaches every element.
    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// p(g) = p(g⁻¹) for every g.
    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    /// Probability of a single element (zero off the support).
    pub fn prob(&self, g: usize) -> f64 {
        self.support
            .iter()
            .find(|&&(i, _)| i == g)
            .map_or(0.0, |&(_, p)| p)
    }

    /// Dense probability vector of length `order`.
    pub fn dense(&self, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order];
        for &(i, p) in &self.support {
            out[i] = p;
        }
        out
    }

    /// Cumulative weights over the support, for inverse-CDF sampling.
    pub(crate) fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.support.len());
        for &(_, p) in &self.support {
            acc += p;
            out.push(acc);
        }
        if let Some(last) = out.last_mut() {
            *last = f64::INFINITY; // guard against u == 1.0 rounding
        }
        out
    }
}
