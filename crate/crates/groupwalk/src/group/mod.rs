//! Finite groups as indexed element sets.
//!
//! Elements are indices `0..n` with index 0 the identity. Groups are built
//! either arithmetically (products of cyclic factors, with mixed-radix
//! element encoding, last factor fastest) or from an explicit Cayley table.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

mod irreps;
pub use irreps::{characters, validate_irreps, Irrep, IrrepSet};

/// Exhaustive triple/pair validation is affordable up to this order;
/// beyond it checks run on 10·|G| seeded samples.
pub const EXHAUSTIVE_CAP: usize = 512;

/// Latin-square validation scans every row/column up to this order and
/// falls back to whole-row samples above it.
const LATIN_CAP: usize = 4096;

const VALIDATION_SEED: u64 = 0x6772_7761_6c6b_7631;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureTag {
    Cyclic(u64),
    Product(Vec<u64>),
    Table,
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Cyclic(n) => write!(f, "cyclic({n})"),
            StructureTag::Product(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "product({})", parts.join(","))
            }
            StructureTag::Table => write!(f, "table"),
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    /// Direct product of cyclic factors. `strides[k]` is the index weight of
    /// coordinate k; `tuples` stores all decoded coordinates row-major.
    Product {
        radices: Vec<u64>,
        strides: Vec<u64>,
        tuples: Vec<u64>,
    },
    /// Explicit multiplication table, row-major, with precomputed inverses.
    Table { table: Vec<usize>, inverse: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    tag: StructureTag,
    repr: Repr,
    spec: String,
}

/// Outcome of one structural check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn ok(name: &'static str) -> Self {
        CheckResult { name, pass: true, detail: None }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckResult { name, pass: false, detail: Some(detail) }
    }
}

/// Pass/fail per invariant, with the first counterexample on failure.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn into_error(self) -> Option<Error> {
        self.first_failure().map(|c| {
            Error::Validation(format!(
                "{} check failed: {}",
                c.name,
                c.detail.as_deref().unwrap_or("no detail")
            ))
        })
    }
}

impl FiniteGroup {
    /// Builds a group from a spec string and validates it.
    ///
    /// Grammar: `cyclic:<n>` | `product:<n1>,<n2>,...` | `hypercube:<m>`
    /// | `torus:<n>^<m>` | `table:<path>`.
    pub fn from_spec(spec: &str) -> Result<FiniteGroup> {
        let group = Self::parse_spec(spec)?;
        let report = group.validate();
        if let Some(err) = report.into_error() {
            return Err(err);
        }
        Ok(group)
    }

    /// Parses a spec string without running validation. `validate` reports
    /// per-invariant results; `from_spec` is the validating constructor.
    pub fn parse_spec(spec: &str) -> Result<FiniteGroup> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec `{spec}` has no `kind:arg` form")))?;
        match kind {
            "cyclic" => {
                let n = parse_modulus(arg)?;
                Self::product_group(vec![n], StructureTag::Cyclic(n), spec)
            }
            "product" => {
                let radices = arg
                    .split(',')
                    .map(parse_modulus)
                    .collect::<Result<Vec<u64>>>()?;
                if radices.is_empty() {
                    return Err(Error::Parse("product spec needs at least one factor".into()));
                }
                Self::product_group(radices.clone(), StructureTag::Product(radices), spec)
            }
            "hypercube" => {
                let m = parse_modulus(arg)? as usize;
                let radices = vec![2u64; m];
                Self::product_group(radices.clone(), StructureTag::Product(radices), spec)
            }
            "torus" => {
                let (n, m) = arg.split_once('^').ok_or_else(|| {
                    Error::Parse(format!("torus spec `{arg}` must look like <n>^<m>"))
                })?;
                let n = parse_modulus(n)?;
                let m = parse_modulus(m)? as usize;
                let radices = vec![n; m];
                Self::product_group(radices.clone(), StructureTag::Product(radices), spec)
            }
            "table" => Self::from_table_file(Path::new(arg), spec),
            other => Err(Error::Parse(format!("unknown group kind `{other}`"))),
        }
    }

    fn product_group(radices: Vec<u64>, tag: StructureTag, spec: &str) -> Result<FiniteGroup> {
        let mut order: usize = 1;
        for &r in &radices {
            order = order
                .checked_mul(r as usize)
                .filter(|&n| n <= u32::MAX as usize)
                .ok_or_else(|| Error::Parse(format!("group order of `{spec}` is too large")))?;
        }
        // Mixed-radix strides, last factor fastest.
        let m = radices.len();
        let mut strides = vec![1u64; m];
        for k in (0..m.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * radices[k + 1];
        }
        let mut tuples = vec![0u64; order * m];
        for g in 0..order {
            let mut rem = g as u64;
            for k in 0..m {
                tuples[g * m + k] = rem / strides[k];
                rem %= strides[k];
            }
        }
        Ok(FiniteGroup {
            order,
            tag,
            repr: Repr::Product { radices, strides, tuples },
            spec: spec.to_string(),
        })
    }

    fn from_table_file(path: &Path, spec: &str) -> Result<FiniteGroup> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read table file {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("table file {}: {e}", path.display())))?;
        let order = value
            .get("order")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("table file lacks integer `order`".into()))?
            as usize;
        if order == 0 {
            return Err(Error::Parse("table order must be at least 1".into()));
        }
        let rows = value
            .get("table")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("table file lacks array `table`".into()))?;

        // Accept either n rows of n entries or a flat row-major list of n².
        let mut table = Vec::with_capacity(order * order);
        let flat = rows.iter().all(|v| v.is_u64());
        if flat {
            for v in rows {
                table.push(v.as_u64().unwrap() as usize);
            }
        } else {
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("table rows must be arrays of indices".into()))?;
                for v in row {
                    let idx = v
                        .as_u64()
                        .ok_or_else(|| Error::Parse("table entries must be integers".into()))?;
                    table.push(idx as usize);
                }
            }
        }
        Self::table_group(order, table, spec)
    }

    /// Builds a group from an explicit row-major Cayley table (entry `g*n+h`
    /// is the product g·h) without reading a file. Validation still applies
    /// through `from_spec`/`validate`.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        let group = Self::table_group(order, table, &format!("table:inline({order})"))?;
        let report = group.validate();
        if let Some(err) = report.into_error() {
            return Err(err);
        }
        Ok(group)
    }

    fn table_group(order: usize, table: Vec<usize>, spec: &str) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::Parse("table order must be at least 1".into()));
        }
        if table.len() != order * order {
            return Err(Error::Parse(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::Validation(format!(
                "table entry {bad} out of range for order {order}"
            )));
        }

        // Two-sided inverses from the rows; validation re-checks them.
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            for h in 0..order {
                if table[g * order + h] == 0 {
                    inverse[g] = h;
                    break;
                }
            }
            if inverse[g] == usize::MAX {
                return Err(Error::Validation(format!(
                    "element {g} has no right inverse in table"
                )));
            }
        }

        Ok(FiniteGroup {
            order,
            tag: StructureTag::Table,
            repr: Repr::Table { table, inverse },
            spec: spec.to_string(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn structure_tag(&self) -> &StructureTag {
        &self.tag
    }

    /// True when the group was built as a product of cyclic factors, which
    /// is exactly when characters can be synthesized.
    pub fn is_abelian_structured(&self) -> bool {
        matches!(self.repr, Repr::Product { .. })
    }

    /// Cyclic factor sizes for product-built groups.
    pub fn radices(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Product { radices, .. } => Some(radices),
            Repr::Table { .. } => None,
        }
    }

    /// Decoded coordinates of `g` for product-built groups.
    pub fn element_tuple(&self, g: usize) -> Option<&[u64]> {
        match &self.repr {
            Repr::Product { radices, tuples, .. } => {
                let m = radices.len();
                Some(&tuples[g * m..(g + 1) * m])
            }
            Repr::Table { .. } => None,
        }
    }

    /// Index of the element with the given coordinates.
    pub fn tuple_index(&self, coords: &[u64]) -> Option<usize> {
        match &self.repr {
            Repr::Product { radices, strides, .. } => {
                if coords.len() != radices.len() {
                    return None;
                }
                let mut idx = 0u64;
                for (k, &c) in coords.iter().enumerate() {
                    if c >= radices[k] {
                        return None;
                    }
                    idx += c * strides[k];
                }
                Some(idx as usize)
            }
            Repr::Table { .. } => None,
        }
    }

    #[inline]
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Product { radices, strides, tuples } => {
                let m = radices.len();
                let ta = &tuples[a * m..(a + 1) * m];
                let tb = &tuples[b * m..(b + 1) * m];
                let mut idx = 0u64;
                for k in 0..m {
                    let mut s = ta[k] + tb[k];
                    if s >= radices[k] {
                        s -= radices[k];
                    }
                    idx += s * strides[k];
                }
                idx as usize
            }
            Repr::Table { table, .. } => table[a * self.order + b],
        }
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Product { radices, strides, tuples } => {
                let m = radices.len();
                let ta = &tuples[a * m..(a + 1) * m];
                let mut idx = 0u64;
                for k in 0..m {
                    let c = if ta[k] == 0 { 0 } else { radices[k] - ta[k] };
                    idx += c * strides[k];
                }
                idx as usize
            }
            Repr::Table { inverse, .. } => inverse[a],
        }
    }

    /// Size of the subgroup generated by `gens` (closure under left
    /// multiplication from the identity).
    pub fn closure_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        let mut count = 1;
        while let Some(g) = frontier.pop() {
            for &s in gens {
                let next = self.multiply(s, g);
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    frontier.push(next);
                }
            }
        }
        count
    }

    /// True when `gens` generate the whole group.
    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure_size(gens) == self.order
    }

    /// Runs the structural checks: identity at index 0, Latin-square rows
    /// and columns, associativity (exhaustive up to the cap, seeded samples
    /// above), and two-sided inverses.
    pub fn validate(&self) -> ValidationReport {
        let checks = vec![
            self.check_identity(),
            self.check_latin(),
            self.check_associativity(),
            self.check_inverses(),
        ];
        ValidationReport { checks }
    }

    fn check_identity(&self) -> CheckResult {
        for g in 0..self.order {
            if self.multiply(0, g) != g {
                return CheckResult::fail(
                    "identity",
                    format!("e*{g} = {} != {g}", self.multiply(0, g)),
                );
            }
            if self.multiply(g, 0) != g {
                return CheckResult::fail(
                    "identity",
                    format!("{g}*e = {} != {g}", self.multiply(g, 0)),
                );
            }
        }
        CheckResult::ok("identity")
    }

    fn check_latin(&self) -> CheckResult {
        let n = self.order;
        let full = n <= LATIN_CAP;
        let rows: Vec<usize> = if full {
            (0..n).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
            (0..64).map(|_| rng.random_range(0..n)).collect()
        };
        let mut seen = vec![usize::MAX; n];
        for &g in &rows {
            for h in 0..n {
                let v = self.multiply(g, h);
                if seen[v] == g {
                    return CheckResult::fail(
                        "latin-square",
                        format!("row {g} repeats value {v}"),
                    );
                }
                seen[v] = g;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for &h in &rows {
            for g in 0..n {
                let v = self.multiply(g, h);
                if seen[v] == h {
                    return CheckResult::fail(
                        "latin-square",
                        format!("column {h} repeats value {v}"),
                    );
                }
                seen[v] = h;
            }
        }
        CheckResult::ok("latin-square")
    }

    fn check_associativity(&self) -> CheckResult {
        let n = self.order;
        if n <= EXHAUSTIVE_CAP {
            for g in 0..n {
                for h in 0..n {
                    let gh = self.multiply(g, h);
                    for u in 0..n {
                        if self.multiply(gh, u) != self.multiply(g, self.multiply(h, u)) {
                            return CheckResult::fail(
                                "associativity",
                                format!(
                                    "(g,h,u)=({g},{h},{u}): (gh)u={} but g(hu)={}",
                                    self.multiply(gh, u),
                                    self.multiply(g, self.multiply(h, u))
                                ),
                            );
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
            for _ in 0..10 * n {
                let g = rng.random_range(0..n);
                let h = rng.random_range(0..n);
                let u = rng.random_range(0..n);
                let lhs = self.multiply(self.multiply(g, h), u);
                let rhs = self.multiply(g, self.multiply(h, u));
                if lhs != rhs {
                    return CheckResult::fail(
                        "associativity",
                        format!("(g,h,u)=({g},{h},{u}): (gh)u={lhs} but g(hu)={rhs}"),
                    );
                }
            }
        }
        CheckResult::ok("associativity")
    }

    fn check_inverses(&self) -> CheckResult {
        for g in 0..self.order {
            let inv = self.inverse(g);
            if self.multiply(g, inv) != 0 || self.multiply(inv, g) != 0 {
                return CheckResult::fail(
                    "inverses",
                    format!("inverse({g})={inv} is not two-sided"),
                );
            }
        }
        CheckResult::ok("inverses")
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

fn parse_modulus(s: &str) -> Result<u64> {
    let n: u64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a positive integer")))?;
    if n == 0 {
        return Err(Error::Parse("moduli must be at least 1".into()));
    }
    Ok(n)
}
