//! Functions `f: X x S -> A` over finite, enumerated domains.
//!
//! A [`HashFamily`] is either a closed-form family from [`FamilySpec`] or an
//! explicit [`FunctionTable`]. Everything downstream works on indices into the
//! ordered label lists; labels only matter for files and reports.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{digits_lex, index_lex, prime_power, ExtField, FieldError, Gf};
use crate::group::AbelianGroup;

/// Default cap on `|X| * |S|` for tabulation.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Largest base field accepted by the named constructors.
pub const MAX_BASE_FIELD: u64 = 64;

#[derive(Debug, Error)]
pub enum HashError {
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("point {x} or seed {s} outside the domain ({x_size} x {s_size})")]
    Domain { x: usize, s: usize, x_size: usize, s_size: usize },
    #[error("no label {0:?} in the domain")]
    UnknownLabel(String),
    #[error("tabulating {entries} entries exceeds the budget of {budget}")]
    BudgetExceeded { entries: u128, budget: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed table file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Descriptors of the closed-form families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `f(x; h, b) = h.x + b` on `F_q^t x (H_norm x F_q)`.
    Affine { q: u64, t: usize },
    /// The affine family with the roles of points and seeds exchanged.
    DualAffine { q: u64, t: usize },
    /// `f(h, y; s1, s2) = s2 - h s1 + y` with `h` in `h_set`, optionally
    /// with the extra point class `f(inf, y; s1, s2) = s1 + y`.
    Transversal {
        q: u64,
        h_set: Vec<u32>,
        include_infinity: bool,
    },
    /// `g(x, h) = T_h x` for the `m x n` Toeplitz matrix with diagonal vector `h`.
    Toeplitz { q: u64, m: usize, n: usize },
    /// `g(x, h) = (h x)_m` on GF(q^n), `h != 0` when `exclude_zero`.
    FieldMultiply {
        q: u64,
        n: usize,
        m: usize,
        exclude_zero: bool,
    },
}

#[derive(Debug, Clone)]
enum Rule {
    Explicit(Vec<u32>),
    Affine { gf: Gf, t: usize, normals: Vec<Vec<u32>> },
    DualAffine { gf: Gf, t: usize, normals: Vec<Vec<u32>> },
    Transversal { gf: Gf, h_set: Vec<u32> },
    Toeplitz { gf: Gf, m: usize, n: usize },
    FieldMultiply { ext: ExtField, m: usize, exclude_zero: bool },
}

/// An evaluatable function `f: X x S -> A`.
#[derive(Debug, Clone)]
pub struct HashFamily {
    x_labels: Vec<String>,
    s_labels: Vec<String>,
    a_labels: Vec<String>,
    x_group: Option<AbelianGroup>,
    a_group: Option<AbelianGroup>,
    rule: Rule,
}

/// Exhaustive tabulation of a family; entries index into `a_labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    x_labels: Vec<String>,
    s_labels: Vec<String>,
    a_labels: Vec<String>,
    x_group: Option<AbelianGroup>,
    a_group: Option<AbelianGroup>,
    entries: Vec<u32>,
}

pub(crate) fn field_label(gf: &Gf, v: u32) -> String {
    let spec = gf.spec();
    if spec.degree() == 1 {
        return v.to_string();
    }
    let digits = digits_lex(v as u64, spec.characteristic(), spec.degree());
    let sep = if spec.characteristic() < 10 { "" } else { "." };
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep)
}

fn vector_label(gf: &Gf, v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|&c| field_label(gf, c)).collect();
    format!("({})", parts.join(","))
}

fn vector_labels(gf: &Gf, len: usize) -> Vec<String> {
    let q = gf.q();
    (0..(q as u64).pow(len as u32))
        .map(|i| vector_label(gf, &digits_lex(i, q, len)))
        .collect()
}

fn field_group(gf: &Gf, len: usize) -> AbelianGroup {
    let spec = gf.spec();
    AbelianGroup::elementary(spec.characteristic(), spec.degree() * len)
}

/// Nonzero vectors of `F_q^t` whose first nonzero entry is 1, lexicographic.
fn normalized_vectors(gf: &Gf, t: usize) -> Vec<Vec<u32>> {
    let q = gf.q();
    let one = gf.one();
    (0..(q as u64).pow(t as u32))
        .map(|i| digits_lex(i, q, t))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&one))
        .collect()
}

fn base_field(q: u64) -> Result<Gf, HashError> {
    if prime_power(q).is_none() {
        return Err(HashError::UnsupportedParameters(format!("q = {q} is not a prime power")));
    }
    if q > MAX_BASE_FIELD {
        return Err(HashError::UnsupportedParameters(format!(
            "q = {q} exceeds the supported base field size {MAX_BASE_FIELD}"
        )));
    }
    Ok(Gf::of_order(q)?)
}

fn checked_size(base: u64, exp: usize) -> Result<usize, HashError> {
    base.checked_pow(exp as u32)
        .filter(|&n| n <= u32::MAX as u64)
        .map(|n| n as usize)
        .ok_or_else(|| HashError::UnsupportedParameters(format!("{base}^{exp} is too large")))
}

impl HashFamily {
    /// Constructs one of the closed-form families.
    pub fn build_named(spec: &FamilySpec) -> Result<Self, HashError> {
        match spec {
            FamilySpec::Affine { q, t } => Self::affine(*q, *t, false),
            FamilySpec::DualAffine { q, t } => Self::affine(*q, *t, true),
            FamilySpec::Transversal { q, h_set, include_infinity } => {
                Self::transversal(*q, h_set, *include_infinity)
            }
            FamilySpec::Toeplitz { q, m, n } => Self::toeplitz(*q, *m, *n),
            FamilySpec::FieldMultiply { q, n, m, exclude_zero } => {
                Self::field_multiply(*q, *n, *m, *exclude_zero)
            }
        }
    }

    fn affine(q: u64, t: usize, dual: bool) -> Result<Self, HashError> {
        if t == 0 {
            return Err(HashError::UnsupportedParameters("t must be at least 1".into()));
        }
        let gf = base_field(q)?;
        checked_size(q, t + 1)?;
        let normals = normalized_vectors(&gf, t);
        let points = vector_labels(&gf, t);
        let seeds: Vec<String> = normals
            .iter()
            .flat_map(|h| {
                let gf = &gf;
                (0..gf.q()).map(move |b| format!("({};{})", vector_label(gf, h), field_label(gf, b)))
            })
            .collect();
        let values: Vec<String> = (0..gf.q()).map(|v| field_label(&gf, v)).collect();
        let a_group = Some(field_group(&gf, 1));
        Ok(if dual {
            Self {
                x_labels: seeds,
                s_labels: points,
                a_labels: values,
                x_group: None,
                a_group,
                rule: Rule::DualAffine { gf, t, normals },
            }
        } else {
            Self {
                x_labels: points,
                s_labels: seeds,
                a_labels: values,
                x_group: Some(field_group(&gf, t)),
                a_group,
                rule: Rule::Affine { gf, t, normals },
            }
        })
    }

    fn transversal(q: u64, h_set: &[u32], infinity: bool) -> Result<Self, HashError> {
        let gf = base_field(q)?;
        let mut h_sorted = h_set.to_vec();
        h_sorted.sort_unstable();
        h_sorted.dedup();
        if h_sorted.len() != h_set.len() {
            return Err(HashError::UnsupportedParameters("H contains duplicates".into()));
        }
        if let Some(&bad) = h_set.iter().find(|&&h| h as u64 >= q) {
            return Err(HashError::UnsupportedParameters(format!("{bad} is not an element of F_{q}")));
        }
        if h_set.is_empty() && !infinity {
            return Err(HashError::UnsupportedParameters("empty point set".into()));
        }
        let mut x_labels = Vec::new();
        for &h in h_set {
            for y in 0..gf.q() {
                x_labels.push(format!("({},{})", field_label(&gf, h), field_label(&gf, y)));
            }
        }
        if infinity {
            for y in 0..gf.q() {
                x_labels.push(format!("(inf,{})", field_label(&gf, y)));
            }
        }
        Ok(Self {
            x_labels,
            s_labels: vector_labels(&gf, 2),
            a_labels: (0..gf.q()).map(|v| field_label(&gf, v)).collect(),
            x_group: None,
            a_group: Some(field_group(&gf, 1)),
            rule: Rule::Transversal { gf, h_set: h_set.to_vec() },
        })
    }

    fn toeplitz(q: u64, m: usize, n: usize) -> Result<Self, HashError> {
        if m == 0 || n == 0 {
            return Err(HashError::UnsupportedParameters("m and n must be positive".into()));
        }
        let gf = base_field(q)?;
        checked_size(q, n + m + n - 1)?;
        Ok(Self {
            x_labels: vector_labels(&gf, n),
            s_labels: vector_labels(&gf, m + n - 1),
            a_labels: vector_labels(&gf, m),
            x_group: Some(field_group(&gf, n)),
            a_group: Some(field_group(&gf, m)),
            rule: Rule::Toeplitz { gf, m, n },
        })
    }

    fn field_multiply(q: u64, n: usize, m: usize, exclude_zero: bool) -> Result<Self, HashError> {
        if m == 0 || m > n {
            return Err(HashError::UnsupportedParameters(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
        }
        let gf = base_field(q)?;
        let ext = ExtField::new(gf.clone(), n)
            .map_err(|e| HashError::UnsupportedParameters(e.to_string()))?;
        let points = vector_labels(&gf, n);
        let seeds = if exclude_zero { points[1..].to_vec() } else { points.clone() };
        Ok(Self {
            x_labels: points,
            s_labels: seeds,
            a_labels: vector_labels(&gf, m),
            x_group: Some(field_group(&gf, n)),
            a_group: Some(field_group(&gf, m)),
            rule: Rule::FieldMultiply { ext, m, exclude_zero },
        })
    }

    /// Wraps an explicit table.
    pub fn from_table(table: FunctionTable) -> Self {
        Self {
            x_labels: table.x_labels,
            s_labels: table.s_labels,
            a_labels: table.a_labels,
            x_group: table.x_group,
            a_group: table.a_group,
            rule: Rule::Explicit(table.entries),
        }
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn x_size(&self) -> usize {
        self.x_labels.len()
    }

    pub fn s_size(&self) -> usize {
        self.s_labels.len()
    }

    pub fn a_size(&self) -> usize {
        self.a_labels.len()
    }

    pub fn x_group(&self) -> Option<&AbelianGroup> {
        self.x_group.as_ref()
    }

    pub fn a_group(&self) -> Option<&AbelianGroup> {
        self.a_group.as_ref()
    }

    /// `f(x, s)` on indices.
    pub fn evaluate(&self, x: usize, s: usize) -> Result<usize, HashError> {
        let (x_size, s_size) = (self.x_size(), self.s_size());
        if x >= x_size || s >= s_size {
            return Err(HashError::Domain { x, s, x_size, s_size });
        }
        Ok(self.eval_unchecked(x, s))
    }

    /// `f(x, s)` on labels.
    pub fn evaluate_labels(&self, x: &str, s: &str) -> Result<&str, HashError> {
        let find = |labels: &[String], l: &str| {
            labels
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| HashError::UnknownLabel(l.to_string()))
        };
        let xi = find(&self.x_labels, x)?;
        let si = find(&self.s_labels, s)?;
        Ok(&self.a_labels[self.eval_unchecked(xi, si)])
    }

    fn eval_unchecked(&self, x: usize, s: usize) -> usize {
        match &self.rule {
            Rule::Explicit(entries) => entries[x * self.s_size() + s] as usize,
            Rule::Affine { gf, t, normals } => {
                let q = gf.q() as usize;
                let xv = digits_lex(x as u64, gf.q(), *t);
                let (h, b) = (&normals[s / q], (s % q) as u32);
                gf.add(gf.dot(h, &xv), b) as usize
            }
            Rule::DualAffine { gf, t, normals } => {
                let q = gf.q() as usize;
                let sv = digits_lex(s as u64, gf.q(), *t);
                let (h, b) = (&normals[x / q], (x % q) as u32);
                gf.add(gf.dot(h, &sv), b) as usize
            }
            Rule::Transversal { gf, h_set } => {
                let q = gf.q() as usize;
                let (s1, s2) = ((s / q) as u32, (s % q) as u32);
                let (class, y) = (x / q, (x % q) as u32);
                match h_set.get(class) {
                    Some(&h) => gf.add(gf.sub(s2, gf.mul(h, s1)), y) as usize,
                    None => gf.add(s1, y) as usize,
                }
            }
            Rule::Toeplitz { gf, m, n } => {
                let xv = digits_lex(x as u64, gf.q(), *n);
                let hv = digits_lex(s as u64, gf.q(), m + n - 1);
                let out: Vec<u32> = (0..*m)
                    .map(|i| {
                        (0..*n).fold(0, |acc, j| {
                            let entry = if j >= i { hv[j - i] } else { hv[n + i - j - 1] };
                            gf.add(acc, gf.mul(entry, xv[j]))
                        })
                    })
                    .collect();
                index_lex(&out, gf.q()) as usize
            }
            Rule::FieldMultiply { ext, m, exclude_zero } => {
                let h = if *exclude_zero { s + 1 } else { s };
                let prod = ext.mul(&ext.vector(h as u64), &ext.vector(x as u64));
                index_lex(&prod[..*m], ext.base().q()) as usize
            }
        }
    }

    /// Exhaustive tabulation, refusing more than `budget` entries.
    pub fn to_table(&self, budget: usize) -> Result<FunctionTable, HashError> {
        let entries = self.x_size() as u128 * self.s_size() as u128;
        if entries > budget as u128 {
            return Err(HashError::BudgetExceeded { entries, budget });
        }
        let data = match &self.rule {
            Rule::Explicit(e) => e.clone(),
            _ => (0..self.x_size())
                .flat_map(|x| (0..self.s_size()).map(move |s| (x, s)))
                .map(|(x, s)| self.eval_unchecked(x, s) as u32)
                .collect(),
        };
        Ok(FunctionTable {
            x_labels: self.x_labels.clone(),
            s_labels: self.s_labels.clone(),
            a_labels: self.a_labels.clone(),
            x_group: self.x_group.clone(),
            a_group: self.a_group.clone(),
            entries: data,
        })
    }
}

fn check_labels(kind: &str, labels: &[String]) -> Result<(), HashError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(HashError::InvalidTable(format!("duplicate {kind} label {l:?}")));
        }
    }
    Ok(())
}

/// On-disk form of a [`FunctionTable`].
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    x_labels: Vec<String>,
    s_labels: Vec<String>,
    a_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_group: Option<AbelianGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_group: Option<AbelianGroup>,
    rows: Vec<Vec<u32>>,
}

impl FunctionTable {
    /// Validates dimensions, index ranges and label uniqueness.
    pub fn new(
        x_labels: Vec<String>,
        s_labels: Vec<String>,
        a_labels: Vec<String>,
        rows: Vec<Vec<u32>>,
    ) -> Result<Self, HashError> {
        if rows.len() != x_labels.len() {
            return Err(HashError::InvalidTable(format!(
                "{} rows for {} points",
                rows.len(),
                x_labels.len()
            )));
        }
        let mut entries = Vec::with_capacity(x_labels.len() * s_labels.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != s_labels.len() {
                return Err(HashError::InvalidTable(format!(
                    "row {i} has {} entries for {} seeds",
                    row.len(),
                    s_labels.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_entries(x_labels, s_labels, a_labels, entries)
    }

    /// Row-major entries, `entries[x * |S| + s]`.
    pub fn from_entries(
        x_labels: Vec<String>,
        s_labels: Vec<String>,
        a_labels: Vec<String>,
        entries: Vec<u32>,
    ) -> Result<Self, HashError> {
        if a_labels.is_empty() {
            return Err(HashError::InvalidTable("empty value set".into()));
        }
        if entries.len() != x_labels.len() * s_labels.len() {
            return Err(HashError::InvalidTable("entry count does not match the domain".into()));
        }
        check_labels("point", &x_labels)?;
        check_labels("seed", &s_labels)?;
        check_labels("value", &a_labels)?;
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= a_labels.len()) {
            return Err(HashError::InvalidTable(format!("value index {bad} out of range")));
        }
        Ok(Self { x_labels, s_labels, a_labels, x_group: None, a_group: None, entries })
    }

    /// Table with labels `0..n` in every domain.
    pub fn from_indices(x: usize, s: usize, a: usize, entries: Vec<u32>) -> Result<Self, HashError> {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        Self::from_entries(labels(x), labels(s), labels(a), entries)
    }

    /// `f = value` everywhere.
    pub fn constant(x: usize, s: usize, a: usize, value: u32) -> Result<Self, HashError> {
        Self::from_indices(x, s, a, vec![value; x * s])
    }

    /// Attaches group structures; sizes must match the domains.
    pub fn with_groups(
        mut self,
        x_group: Option<AbelianGroup>,
        a_group: Option<AbelianGroup>,
    ) -> Result<Self, HashError> {
        if let Some(g) = &x_group {
            if g.order() != self.x_size() {
                return Err(HashError::InvalidTable("point group order differs from |X|".into()));
            }
        }
        if let Some(g) = &a_group {
            if g.order() != self.a_size() {
                return Err(HashError::InvalidTable("value group order differs from |A|".into()));
            }
        }
        self.x_group = x_group;
        self.a_group = a_group;
        Ok(self)
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn x_group(&self) -> Option<&AbelianGroup> {
        self.x_group.as_ref()
    }

    pub fn a_group(&self) -> Option<&AbelianGroup> {
        self.a_group.as_ref()
    }

    pub fn x_size(&self) -> usize {
        self.x_labels.len()
    }

    pub fn s_size(&self) -> usize {
        self.s_labels.len()
    }

    pub fn a_size(&self) -> usize {
        self.a_labels.len()
    }

    #[inline]
    pub fn get(&self, x: usize, s: usize) -> usize {
        self.entries[x * self.s_labels.len() + s] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        let n = self.s_size();
        &self.entries[x * n..(x + 1) * n]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.x_size()).map(|x| self.row(x).to_vec()).collect()
    }

    /// Exchanges the roles of points and seeds: `f~(s, x) = f(x, s)`.
    pub fn transpose(&self) -> Self {
        let (nx, ns) = (self.x_size(), self.s_size());
        let mut entries = Vec::with_capacity(nx * ns);
        for s in 0..ns {
            for x in 0..nx {
                entries.push(self.entries[x * ns + s]);
            }
        }
        Self {
            x_labels: self.s_labels.clone(),
            s_labels: self.x_labels.clone(),
            a_labels: self.a_labels.clone(),
            x_group: None,
            a_group: self.a_group.clone(),
            entries,
        }
    }

    /// Same function, ignoring labels and groups.
    pub fn same_function(&self, other: &Self) -> bool {
        self.x_size() == other.x_size()
            && self.s_size() == other.s_size()
            && self.a_size() == other.a_size()
            && self.entries == other.entries
    }

    /// Canonical text: one key per line, one table row per line.
    pub fn to_json(&self) -> String {
        let list = |v: &[String]| serde_json::to_string(v).expect("strings serialize");
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"x_labels\": {},", list(&self.x_labels));
        let _ = writeln!(out, "  \"s_labels\": {},", list(&self.s_labels));
        let _ = writeln!(out, "  \"a_labels\": {},", list(&self.a_labels));
        if let Some(g) = &self.x_group {
            let _ = writeln!(out, "  \"x_group\": {},", serde_json::to_string(g).unwrap());
        }
        if let Some(g) = &self.a_group {
            let _ = writeln!(out, "  \"a_group\": {},", serde_json::to_string(g).unwrap());
        }
        out.push_str("  \"rows\": [");
        for x in 0..self.x_size() {
            out.push_str(if x == 0 { "\n    " } else { ",\n    " });
            out.push_str(&serde_json::to_string(self.row(x)).unwrap());
        }
        out.push_str(if self.x_size() == 0 { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }

    pub fn from_json(text: &str) -> Result<Self, HashError> {
        let file: TableFile = serde_json::from_str(text)?;
        Self::new(file.x_labels, file.s_labels, file.a_labels, file.rows)?
            .with_groups(file.x_group, file.a_group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(spec: FamilySpec) -> HashFamily {
        HashFamily::build_named(&spec).unwrap()
    }

    fn label_of(f: &HashFamily, labels: &[String], l: &str) -> usize {
        let _ = f;
        labels.iter().position(|v| v == l).unwrap()
    }

    #[test]
    fn affine_sizes() {
        let f = build(FamilySpec::Affine { q: 2, t: 2 });
        assert_eq!((f.x_size(), f.s_size(), f.a_size()), (4, 6, 2));
        let f = build(FamilySpec::Affine { q: 3, t: 2 });
        assert_eq!((f.x_size(), f.s_size(), f.a_size()), (9, 12, 3));
    }

    #[test]
    fn affine_hand_evaluation() {
        // x = (1,1), h = (1,0), b = 1: 1 + 1 = 0
        let f = build(FamilySpec::Affine { q: 2, t: 2 });
        assert_eq!(f.evaluate_labels("(1,1)", "((1,0);1)").unwrap(), "0");
        let table = f.to_table(DEFAULT_BUDGET).unwrap();
        let x = label_of(&f, f.x_labels(), "(1,1)");
        let s = label_of(&f, f.s_labels(), "((1,0);1)");
        assert_eq!(table.get(x, s), 0);
    }

    #[test]
    fn normalized_vectors_start_with_one() {
        let f = build(FamilySpec::Affine { q: 3, t: 2 });
        let heads: Vec<&str> = f.s_labels().iter().step_by(3).map(|s| s.as_str()).collect();
        assert_eq!(heads, ["((0,1);0)", "((1,0);0)", "((1,1);0)", "((1,2);0)"]);
    }

    #[test]
    fn transversal_sizes_and_value() {
        let f = build(FamilySpec::Transversal { q: 3, h_set: vec![0, 1, 2], include_infinity: false });
        assert_eq!((f.x_size(), f.s_size(), f.a_size()), (9, 9, 3));
        // (h,y) = (1,2), (s1,s2) = (1,1): 1 - 1 + 2 = 2
        assert_eq!(f.evaluate_labels("(1,2)", "(1,1)").unwrap(), "2");
        let g = build(FamilySpec::Transversal { q: 3, h_set: vec![0, 1, 2], include_infinity: true });
        assert_eq!(g.x_size(), 12);
        // (inf, y) = s1 + y
        assert_eq!(g.evaluate_labels("(inf,2)", "(2,0)").unwrap(), "1");
    }

    #[test]
    fn field_multiply_sizes() {
        let f = build(FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: true });
        assert_eq!((f.x_size(), f.s_size(), f.a_size()), (8, 7, 2));
        let f = build(FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: false });
        assert_eq!(f.s_size(), 8);
    }

    #[test]
    fn toeplitz_matrix_layout() {
        // m = 2, n = 2: T = [[h0, h1], [h2, h0]]
        let f = build(FamilySpec::Toeplitz { q: 2, m: 2, n: 2 });
        assert_eq!((f.x_size(), f.s_size(), f.a_size()), (4, 8, 4));
        // h = (0,1,1), x = (1,0) -> (h0, h2) = (0,1)
        assert_eq!(f.evaluate_labels("(1,0)", "(0,1,1)").unwrap(), "(0,1)");
        // x = (0,1) -> (h1, h0) = (1,0)
        assert_eq!(f.evaluate_labels("(0,1)", "(0,1,1)").unwrap(), "(1,0)");
    }

    #[test]
    fn unsupported_parameters() {
        for spec in [
            FamilySpec::Affine { q: 6, t: 2 },
            FamilySpec::Affine { q: 2, t: 0 },
            FamilySpec::Affine { q: 128, t: 1 },
            FamilySpec::FieldMultiply { q: 2, n: 2, m: 3, exclude_zero: false },
            FamilySpec::Transversal { q: 3, h_set: vec![0, 0], include_infinity: false },
            FamilySpec::Transversal { q: 3, h_set: vec![5], include_infinity: false },
        ] {
            assert!(
                matches!(HashFamily::build_named(&spec), Err(HashError::UnsupportedParameters(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn evaluation_is_deterministic_and_bounds_checked() {
        let f = build(FamilySpec::Affine { q: 3, t: 2 });
        assert_eq!(f.evaluate(4, 7).unwrap(), f.evaluate(4, 7).unwrap());
        assert!(matches!(f.evaluate(9, 0), Err(HashError::Domain { .. })));
    }

    #[test]
    fn affine_rows_are_balanced() {
        let t = build(FamilySpec::Affine { q: 2, t: 2 }).to_table(DEFAULT_BUDGET).unwrap();
        for x in 0..4 {
            let ones = t.row(x).iter().filter(|&&v| v == 1).count();
            assert_eq!(ones, 3);
        }
    }

    #[test]
    fn constant_table() {
        let t = FunctionTable::constant(2, 2, 2, 1).unwrap();
        assert!(t.entries().iter().all(|&v| v == 1));
    }

    #[test]
    fn budget_is_enforced() {
        let f = build(FamilySpec::Affine { q: 2, t: 2 });
        assert!(matches!(f.to_table(23), Err(HashError::BudgetExceeded { entries: 24, .. })));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let t = build(FamilySpec::Toeplitz { q: 2, m: 1, n: 2 }).to_table(DEFAULT_BUDGET).unwrap();
        let text = t.to_json();
        let back = FunctionTable::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(FunctionTable::new(l(2), l(2), l(2), vec![vec![0, 1]]).is_err());
        assert!(FunctionTable::new(l(1), l(2), l(2), vec![vec![0, 2]]).is_err());
        assert!(FunctionTable::new(vec!["a".into(), "a".into()], l(1), l(1), vec![vec![0], vec![0]]).is_err());
        assert!(FunctionTable::new(l(1), l(1), vec![], vec![vec![0]]).is_err());
    }

    #[test]
    fn extension_field_labels_are_coefficient_strings() {
        let f = build(FamilySpec::Affine { q: 4, t: 1 });
        assert_eq!(f.a_labels(), ["00", "01", "10", "11"]);
    }
}
