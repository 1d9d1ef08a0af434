//! Incidence structures, mosaics and block-design analysis.
//!
//! A function `f: X x S -> A` is the same thing as a mosaic `(N_a)` of 0/1
//! matrices on points `X` and block indices `S` with `sum_a N_a = J`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash_family::{FunctionTable, HashError};
use crate::rational::{self, uint, Rational};
use crate::verify::{self, VerifyError};

/// Default node limit for [`find_resolution`].
pub const RESOLUTION_BUDGET: u64 = 1_000_000;
/// Default node limit for [`canonical_form`].
pub const CANONICAL_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("entry ({point}, {block}) is covered {count} times, expected exactly once")]
    NotAMosaic { point: usize, block: usize, count: usize },
    #[error("members have different dimensions")]
    DimensionMismatch,
    #[error("incidence matrix entries must be 0 or 1")]
    NotBinary,
    #[error("malformed incidence structure: {0}")]
    Malformed(String),
    #[error("structure is not resolvable: {0}")]
    NotResolvable(String),
    #[error("search exceeded the node budget of {0}")]
    SearchBudgetExceeded(u64),
    #[error("bad labeling: {0}")]
    BadLabeling(String),
    #[error("invalid resolution: {0}")]
    BadResolution(String),
    #[error("canonical form needs min(v, b) <= 64, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A 0/1 incidence matrix with rows = points and columns = block indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: Vec<String>,
    blocks: Vec<String>,
    matrix: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    points: Vec<String>,
    block_indices: Vec<String>,
    rows: Vec<Vec<u8>>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl IncidenceStructure {
    pub fn new(points: Vec<String>, blocks: Vec<String>, rows: Vec<Vec<u8>>) -> Result<Self, DesignError> {
        if rows.len() != points.len() {
            return Err(DesignError::Malformed(format!(
                "{} rows for {} points",
                rows.len(),
                points.len()
            )));
        }
        let mut matrix = Vec::with_capacity(points.len() * blocks.len());
        for row in rows {
            if row.len() != blocks.len() {
                return Err(DesignError::Malformed(format!(
                    "row of length {} for {} block indices",
                    row.len(),
                    blocks.len()
                )));
            }
            if row.iter().any(|&e| e > 1) {
                return Err(DesignError::NotBinary);
            }
            matrix.extend(row);
        }
        Ok(Self { points, blocks, matrix })
    }

    /// Points and block indices labelled `0, 1, ...`.
    pub fn from_fn(v: usize, b: usize, incident: impl Fn(usize, usize) -> bool) -> Self {
        let mut matrix = Vec::with_capacity(v * b);
        for p in 0..v {
            for bk in 0..b {
                matrix.push(incident(p, bk) as u8);
            }
        }
        Self {
            points: default_labels(v),
            blocks: default_labels(b),
            matrix,
        }
    }

    /// Blocks given as point lists.
    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Self {
        Self::from_fn(v, blocks.len(), |p, bk| blocks[bk].contains(&p))
    }

    fn with_labels(mut self, points: Vec<String>, blocks: Vec<String>) -> Self {
        self.points = points;
        self.blocks = blocks;
        self
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn block_labels(&self) -> &[String] {
        &self.blocks
    }

    pub fn get(&self, point: usize, block: usize) -> bool {
        self.matrix[point * self.b() + block] == 1
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        if self.b() == 0 {
            return vec![Vec::new(); self.v()];
        }
        self.matrix.chunks(self.b()).map(|r| r.to_vec()).collect()
    }

    /// Points incident with `block`.
    pub fn block(&self, block: usize) -> Vec<usize> {
        (0..self.v()).filter(|&p| self.get(p, block)).collect()
    }

    pub fn transpose(&self) -> Self {
        let (v, b) = (self.v(), self.b());
        let mut matrix = Vec::with_capacity(v * b);
        for bk in 0..b {
            for p in 0..v {
                matrix.push(self.matrix[p * b + bk]);
            }
        }
        Self {
            points: self.blocks.clone(),
            blocks: self.points.clone(),
            matrix,
        }
    }

    fn block_sets(&self) -> Vec<BitSet> {
        (0..self.b())
            .map(|bk| BitSet::from_iter(self.v(), (0..self.v()).filter(|&p| self.get(p, bk))))
            .collect()
    }

    fn point_sets(&self) -> Vec<BitSet> {
        (0..self.v())
            .map(|p| BitSet::from_iter(self.b(), (0..self.b()).filter(|&bk| self.get(p, bk))))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = StructureFile {
            points: self.points.clone(),
            block_indices: self.blocks.clone(),
            rows: self.rows(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, DesignError> {
        let file: StructureFile = serde_json::from_str(text)?;
        Self::new(file.points, file.block_indices, file.rows)
    }
}

/// Fixed-width bit set over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn from_iter(len: usize, items: impl Iterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn first_missing(&self, len: usize) -> Option<usize> {
        (0..len).find(|&i| !self.contains(i))
    }
}

/// Members `(D_a)` on a common point and block index set, indexed by `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mosaic {
    a_labels: Vec<String>,
    members: Vec<IncidenceStructure>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MosaicFile {
    a_labels: Vec<String>,
    members: Vec<StructureFile>,
}

impl Mosaic {
    /// Checks equal dimensions and that the members partition the all-ones matrix.
    pub fn new(a_labels: Vec<String>, members: Vec<IncidenceStructure>) -> Result<Self, DesignError> {
        if members.len() != a_labels.len() || members.is_empty() {
            return Err(DesignError::Malformed(format!(
                "{} members for {} values",
                members.len(),
                a_labels.len()
            )));
        }
        let (v, b) = (members[0].v(), members[0].b());
        if members.iter().any(|m| m.v() != v || m.b() != b) {
            return Err(DesignError::DimensionMismatch);
        }
        for p in 0..v {
            for bk in 0..b {
                let count = members.iter().filter(|m| m.get(p, bk)).count();
                if count != 1 {
                    return Err(DesignError::NotAMosaic { point: p, block: bk, count });
                }
            }
        }
        Ok(Self { a_labels, members })
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn members(&self) -> &[IncidenceStructure] {
        &self.members
    }

    pub fn member(&self, alpha: usize) -> &IncidenceStructure {
        &self.members[alpha]
    }

    pub fn to_json(&self) -> String {
        let file = MosaicFile {
            a_labels: self.a_labels.clone(),
            members: self
                .members
                .iter()
                .map(|m| StructureFile {
                    points: m.points.clone(),
                    block_indices: m.blocks.clone(),
                    rows: m.rows(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, DesignError> {
        let file: MosaicFile = serde_json::from_str(text)?;
        let members = file
            .members
            .into_iter()
            .map(|m| IncidenceStructure::new(m.points, m.block_indices, m.rows))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(file.a_labels, members)
    }
}

/// `N_a(x, s) = 1` iff `f(x, s) = a`.
pub fn mosaic_from_function(f: &FunctionTable) -> Mosaic {
    let members = (0..f.a_size())
        .map(|alpha| {
            IncidenceStructure::from_fn(f.x_size(), f.s_size(), |x, s| f.get(x, s) == alpha)
                .with_labels(f.x_labels().to_vec(), f.s_labels().to_vec())
        })
        .collect();
    Mosaic {
        a_labels: f.a_labels().to_vec(),
        members,
    }
}

/// Inverse of [`mosaic_from_function`].
pub fn function_from_mosaic(m: &Mosaic) -> Result<FunctionTable, DesignError> {
    let first = &m.members[0];
    let (v, b) = (first.v(), first.b());
    let mut entries = Vec::with_capacity(v * b);
    for p in 0..v {
        for bk in 0..b {
            let owners: Vec<usize> = (0..m.members.len()).filter(|&a| m.members[a].get(p, bk)).collect();
            if owners.len() != 1 {
                return Err(DesignError::NotAMosaic {
                    point: p,
                    block: bk,
                    count: owners.len(),
                });
            }
            entries.push(owners[0] as u32);
        }
    }
    Ok(FunctionTable::from_entries(
        first.points.clone(),
        first.blocks.clone(),
        m.a_labels.clone(),
        entries,
    )?)
}

/// Transposes every member.
pub fn dual_mosaic(m: &Mosaic) -> Mosaic {
    Mosaic {
        a_labels: m.a_labels.clone(),
        members: m.members.iter().map(IncidenceStructure::transpose).collect(),
    }
}

/// Point set `X`, block index set `S x A` (index `s * |A| + a`).
pub fn sum_mosaic(m: &Mosaic) -> IncidenceStructure {
    let first = &m.members[0];
    let na = m.members.len();
    let blocks = first
        .blocks
        .iter()
        .flat_map(|s| m.a_labels.iter().map(move |a| format!("({s},{a})")))
        .collect();
    IncidenceStructure::from_fn(first.v(), first.b() * na, |p, i| m.members[i % na].get(p, i / na))
        .with_labels(first.points.clone(), blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    /// Constant block size.
    pub k: Option<usize>,
    /// Constant replication number.
    pub r: Option<usize>,
    /// Constant number of blocks through each pair of distinct points.
    pub lambda: Option<usize>,
    /// `v >= 2`, constant `k` and `lambda`, and `lambda >= 1`.
    pub bibd: bool,
    /// Sizes of `B ∩ B'` over pairs of distinct block indices.
    pub intersection_numbers: Vec<usize>,
    /// BIBD with a single intersection number.
    pub symmetric: bool,
    /// BIBD with exactly two intersection numbers.
    pub quasi_symmetric: bool,
    /// `bk = vr`, when `k` and `r` are constant.
    pub eq1_holds: Option<bool>,
    /// `lambda (v - 1) = r (k - 1)`, for a BIBD.
    pub eq2_holds: Option<bool>,
    /// `b = v + r - 1`, for a BIBD.
    pub eq3_holds: Option<bool>,
}

fn constant(values: impl Iterator<Item = usize>) -> Option<usize> {
    let mut it = values;
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

pub fn analyze_structure(d: &IncidenceStructure) -> DesignParams {
    let (v, b) = (d.v(), d.b());
    let blocks = d.block_sets();
    let points = d.point_sets();
    let k = constant(blocks.iter().map(BitSet::len));
    let r = constant(points.iter().map(BitSet::len));
    let lambda = constant((0..v).flat_map(|p| {
        let points = &points;
        (p + 1..v).map(move |q| points[p].intersection_len(&points[q]))
    }));
    let bibd = v >= 2 && k.is_some() && matches!(lambda, Some(l) if l >= 1);
    let intersection_numbers: BTreeSet<usize> = (0..b)
        .into_par_iter()
        .map(|i| {
            (i + 1..b)
                .map(|j| blocks[i].intersection_len(&blocks[j]))
                .collect::<BTreeSet<usize>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let intersection_numbers: Vec<usize> = intersection_numbers.into_iter().collect();
    let eq1_holds = match (k, r) {
        (Some(k), Some(r)) => Some(b * k == v * r),
        _ => None,
    };
    let (eq2_holds, eq3_holds) = match (bibd, k, r, lambda) {
        (true, Some(k), Some(r), Some(l)) => (
            Some(l * (v - 1) == r * (k.max(1) - 1)),
            Some(b + 1 == v + r),
        ),
        _ => (None, None),
    };
    DesignParams {
        v,
        b,
        k,
        r,
        lambda,
        bibd,
        symmetric: bibd && intersection_numbers.len() == 1,
        quasi_symmetric: bibd && intersection_numbers.len() == 2,
        intersection_numbers,
        eq1_holds,
        eq2_holds,
        eq3_holds,
    }
}

/// Block indices partitioned into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub classes: Vec<Vec<usize>>,
}

impl Resolution {
    /// Equal class sizes, every block used once, every point in exactly one block per class.
    pub fn validate(&self, d: &IncidenceStructure) -> Result<(), DesignError> {
        let bad = |m: String| Err(DesignError::BadResolution(m));
        let size = self.classes.first().map_or(0, Vec::len);
        if self.classes.iter().any(|c| c.len() != size) {
            return bad("classes have different sizes".into());
        }
        let mut seen = vec![false; d.b()];
        for class in &self.classes {
            let mut covered = vec![0usize; d.v()];
            for &bk in class {
                if bk >= d.b() || seen[bk] {
                    return bad(format!("block index {bk} missing or repeated"));
                }
                seen[bk] = true;
                for p in d.block(bk) {
                    covered[p] += 1;
                }
            }
            if let Some(p) = covered.iter().position(|&c| c != 1) {
                return bad(format!("point {p} covered {} times in a class", covered[p]));
            }
        }
        if let Some(bk) = seen.iter().position(|&s| !s) {
            return bad(format!("block index {bk} not in any class"));
        }
        Ok(())
    }
}

struct ResolutionSearch<'a> {
    v: usize,
    blocks: &'a [BitSet],
    /// Largest number of nonempty blocks a class may hold.
    class_limit: usize,
    classes_needed: usize,
    assigned: Vec<bool>,
    classes: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl ResolutionSearch<'_> {
    fn bump(&mut self) -> Result<(), DesignError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(DesignError::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Opens a new class with the lowest unassigned nonempty block.
    fn open_class(&mut self) -> Result<bool, DesignError> {
        self.bump()?;
        let next = (0..self.blocks.len()).find(|&i| !self.assigned[i] && self.blocks[i].len() > 0);
        let Some(first) = next else {
            return Ok(self.classes.len() == self.classes_needed);
        };
        if self.classes.len() == self.classes_needed {
            return Ok(false);
        }
        self.assigned[first] = true;
        self.classes.push(vec![first]);
        let covered = self.blocks[first].clone();
        if self.extend_class(covered)? {
            return Ok(true);
        }
        self.classes.pop();
        self.assigned[first] = false;
        Ok(false)
    }

    /// Covers the lowest uncovered point of the open class.
    fn extend_class(&mut self, covered: BitSet) -> Result<bool, DesignError> {
        self.bump()?;
        let Some(p) = covered.first_missing(self.v) else {
            return self.open_class();
        };
        if self.classes.last().map_or(0, Vec::len) >= self.class_limit {
            return Ok(false);
        }
        for i in 0..self.blocks.len() {
            if self.assigned[i] || !self.blocks[i].contains(p) || !self.blocks[i].disjoint(&covered) {
                continue;
            }
            self.assigned[i] = true;
            self.classes.last_mut().expect("open class").push(i);
            let mut next = covered.clone();
            next.union_with(&self.blocks[i]);
            if self.extend_class(next)? {
                return Ok(true);
            }
            self.classes.last_mut().expect("open class").pop();
            self.assigned[i] = false;
        }
        Ok(false)
    }
}

/// Backtracking exact-cover search for a resolution.
///
/// Classes are filled one at a time from the lowest unassigned block, always
/// covering the lowest uncovered point with blocks in index order. Empty
/// blocks are padded into classes afterwards.
pub fn find_resolution(d: &IncidenceStructure, budget: u64) -> Result<Resolution, DesignError> {
    let params = analyze_structure(d);
    let Some(r) = params.r else {
        return Err(DesignError::NotResolvable("replication number is not constant".into()));
    };
    if d.v() == 0 || r == 0 {
        return Err(DesignError::NotResolvable("no incidences".into()));
    }
    if !d.b().is_multiple_of(r) {
        return Err(DesignError::NotResolvable(format!(
            "{} block indices do not split into {r} classes",
            d.b()
        )));
    }
    let class_size = d.b() / r;
    let blocks = d.block_sets();
    let mut search = ResolutionSearch {
        v: d.v(),
        blocks: &blocks,
        class_limit: class_size,
        classes_needed: r,
        assigned: vec![false; d.b()],
        classes: Vec::new(),
        nodes: 0,
        budget,
    };
    if !search.open_class()? {
        return Err(DesignError::NotResolvable("search exhausted".into()));
    }
    let mut classes = search.classes;
    let mut empties = (0..d.b()).filter(|&i| blocks[i].len() == 0);
    for class in &mut classes {
        while class.len() < class_size {
            class.push(empties.next().expect("block count matches"));
        }
    }
    Ok(Resolution { classes })
}

/// Labels each class's blocks `0, 1, ...` in listed order.
pub fn canonical_labeling(res: &Resolution) -> Vec<Vec<usize>> {
    res.classes.iter().map(|c| (0..c.len()).collect()).collect()
}

/// `D_a(x, h) = 1` iff `x` lies in the block of class `h` labelled `a`.
pub fn mosaic_from_resolution(
    d: &IncidenceStructure,
    res: &Resolution,
    labeling: &[Vec<usize>],
) -> Result<Mosaic, DesignError> {
    res.validate(d)?;
    if labeling.len() != res.classes.len() {
        return Err(DesignError::BadLabeling(format!(
            "{} labelings for {} classes",
            labeling.len(),
            res.classes.len()
        )));
    }
    let na = res.classes.first().map_or(0, Vec::len);
    let mut by_label = vec![vec![0usize; na]; res.classes.len()];
    for (h, (class, labels)) in res.classes.iter().zip(labeling).enumerate() {
        if labels.len() != class.len() {
            return Err(DesignError::BadLabeling(format!("class {h} has the wrong number of labels")));
        }
        let mut seen = vec![false; na];
        for (&bk, &a) in class.iter().zip(labels) {
            if a >= na || seen[a] {
                return Err(DesignError::BadLabeling(format!("label {a} repeated or out of range in class {h}")));
            }
            seen[a] = true;
            by_label[h][a] = bk;
        }
    }
    let members = (0..na)
        .map(|a| {
            IncidenceStructure::from_fn(d.v(), res.classes.len(), |x, h| d.get(x, by_label[h][a]))
                .with_labels(d.points.clone(), default_labels(res.classes.len()))
        })
        .collect();
    Mosaic::new(default_labels(na), members)
}

/// Invariant of an incidence structure under point and block permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub v: usize,
    pub b: usize,
    /// Rows and columns swapped before canonizing (`v > b`).
    pub transposed: bool,
    /// Column keys of the maximal matrix, sorted descending; bit 63 is the first row.
    pub keys: Vec<u64>,
}

struct CanonSearch<'a> {
    rows: usize,
    cols: &'a [u64],
    best: Option<Vec<Vec<u64>>>,
    path: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl CanonSearch<'_> {
    fn cmp_with_best(&self) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Greater;
        };
        for (a, b) in self.path.iter().zip(best) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    fn dfs(&mut self, used: u64, keys: &[u64]) -> Result<(), DesignError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(DesignError::SearchBudgetExceeded(self.budget));
        }
        let t = self.path.len();
        if t == self.rows {
            if self.cmp_with_best() == Ordering::Greater {
                self.best = Some(self.path.clone());
            }
            return Ok(());
        }
        let shift = 63 - t;
        let mut top: Option<Vec<u64>> = None;
        let mut choices = Vec::new();
        for row in (0..self.rows).filter(|i| used >> i & 1 == 0) {
            let mut next: Vec<u64> = keys
                .iter()
                .zip(self.cols)
                .map(|(&k, &c)| k | ((c >> row & 1) << shift))
                .collect();
            let mut sorted = next.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            match top.as_ref().map(|t| sorted.cmp(t)) {
                None | Some(Ordering::Greater) => {
                    top = Some(sorted);
                    choices.clear();
                    choices.push((row, std::mem::take(&mut next)));
                }
                Some(Ordering::Equal) => choices.push((row, next)),
                Some(Ordering::Less) => {}
            }
        }
        let level = top.expect("an unused row remains");
        self.path.push(level);
        if self.cmp_with_best() != Ordering::Less {
            for (row, next) in choices {
                self.dfs(used | 1 << row, &next)?;
                if self.cmp_with_best() == Ordering::Less {
                    break;
                }
            }
        }
        self.path.pop();
        Ok(())
    }
}

/// Maximum, over row orders, of the matrix whose columns are sorted
/// descending; computed on the orientation with fewer rows.
pub fn canonical_form(d: &IncidenceStructure, budget: u64) -> Result<CanonicalForm, DesignError> {
    let transposed = d.v() > d.b();
    let m = if transposed { d.transpose() } else { d.clone() };
    let rows = m.v();
    if rows > 64 {
        return Err(DesignError::TooLarge(rows));
    }
    let cols: Vec<u64> = (0..m.b())
        .map(|bk| (0..rows).fold(0u64, |acc, p| acc | (m.get(p, bk) as u64) << p))
        .collect();
    let mut search = CanonSearch {
        rows,
        cols: &cols,
        best: None,
        path: Vec::new(),
        nodes: 0,
        budget,
    };
    search.dfs(0, &vec![0; cols.len()])?;
    let keys = search
        .best
        .and_then(|levels| levels.last().cloned())
        .unwrap_or_else(|| vec![0; cols.len()]);
    Ok(CanonicalForm {
        v: d.v(),
        b: d.b(),
        transposed,
        keys,
    })
}

pub fn isomorphic(a: &IncidenceStructure, b: &IncidenceStructure, budget: u64) -> Result<bool, DesignError> {
    if a.v() != b.v() || a.b() != b.b() {
        return Ok(false);
    }
    Ok(canonical_form(a, budget)? == canonical_form(b, budget)?)
}

/// One implication of the structure theorems that applied to a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
    pub member_params: Vec<DesignParams>,
}

impl TheoremReport {
    pub fn violations(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    fn push(&mut self, name: &str, holds: bool, detail: String) {
        self.checks.push(TheoremCheck {
            name: name.to_string(),
            holds,
            detail,
        });
    }
}

fn is_integer_eq(value: &Rational, n: Option<usize>) -> bool {
    n.is_some_and(|n| *value == uint(n as u64))
}

/// Natural resolution of a sum: class `s` holds the blocks `(s, a)`.
fn natural_resolution(na: usize, ns: usize) -> Resolution {
    Resolution {
        classes: (0..ns).map(|s| (0..na).map(|a| s * na + a).collect()).collect(),
    }
}

/// Cross-checks every structure theorem whose hypothesis holds for `f`.
pub fn check_structure_theorems(f: &FunctionTable) -> Result<TheoremReport, DesignError> {
    let report = verify::classify(f)?;
    let mosaic = mosaic_from_function(f);
    let member_params: Vec<DesignParams> = mosaic.members().iter().map(analyze_structure).collect();
    let mut out = TheoremReport {
        checks: Vec::new(),
        member_params: member_params.clone(),
    };
    let (nx, ns, na) = (f.x_size(), f.s_size(), f.a_size());
    let (xr, sr, ar) = (uint(nx as u64), uint(ns as u64), uint(na as u64));
    let nontrivial = na >= 2 && nx > na;

    if report.ocfu {
        let eps = report.eps_acfu().expect("ocfu has an epsilon").clone();
        let lambda = &eps * &sr / &ar;
        let ok = member_params.iter().all(|p| {
            p.bibd
                && p.v == nx
                && p.b == ns
                && is_integer_eq(&(&xr / &ar), p.k)
                && is_integer_eq(&lambda, p.lambda)
                && is_integer_eq(&(&sr / &ar), p.r)
        });
        out.push(
            "ocfu_members_are_bibds",
            ok,
            format!("expected BIBD(v={nx}, k={}, lambda={lambda}) with b={ns}", &xr / &ar),
        );
        let roy = member_params
            .iter()
            .all(|p| matches!(p.r, Some(r) if p.b + 1 >= p.v + r));
        out.push("ocfu_members_satisfy_b_ge_v_plus_r_minus_1", roy, String::new());
    }

    let common = member_params.first().map(|p| (p.v, p.k, p.lambda));
    if nontrivial && member_params.iter().all(|p| p.bibd && Some((p.v, p.k, p.lambda)) == common) {
        out.push(
            "mosaic_of_bibds_is_ocfu",
            report.ocfu,
            format!("eps_acfu = {}", report.eps_acfu().map_or("undefined".into(), rational::to_text)),
        );
    }

    if nontrivial && report.equalities.variance {
        let eps = report.eps_acfu().expect("variance equality needs an epsilon").clone();
        let mu = &eps * &sr / &ar;
        let lambda = &xr * (&sr - &ar) / (&ar * &ar * (&sr - uint(1)));
        let dual = dual_mosaic(&mosaic);
        let mut ok = true;
        let mut symmetric = false;
        for m in dual.members() {
            let p = analyze_structure(m);
            symmetric |= p.symmetric;
            let numbers_ok = p.intersection_numbers.len() == 2
                && p.intersection_numbers[0] == 0
                && is_integer_eq(&mu, Some(p.intersection_numbers[1]));
            let mu_formula = match (p.k, p.r, p.lambda) {
                (Some(k), Some(r), Some(l)) if r > 1 => {
                    let predicted = Rational::new(((k as i64 - 1) * (l as i64 - 1)).into(), (r as i64 - 1).into())
                        + uint(1);
                    predicted == mu
                }
                _ => false,
            };
            ok &= p.bibd
                && p.quasi_symmetric
                && p.v == ns
                && is_integer_eq(&(&sr / &ar), p.k)
                && is_integer_eq(&lambda, p.lambda)
                && numbers_ok
                && mu_formula;
        }
        out.push(
            "variance_equality_gives_dual_quasi_symmetric_bibds",
            ok,
            format!("expected intersection numbers {{0, {mu}}} and lambda = {lambda}"),
        );
        out.push("variance_equality_members_not_symmetric", !symmetric, String::new());
    }

    if nontrivial && report.ou {
        let sum = sum_mosaic(&mosaic);
        let p = analyze_structure(&sum);
        let resolvable = natural_resolution(na, ns).validate(&sum).is_ok();
        out.push(
            "ou_sum_is_resolvable_bibd",
            p.bibd && resolvable,
            format!("k = {:?}, lambda = {:?}", p.k, p.lambda),
        );
        if report.equalities.au {
            let affine = p.bibd
                && p.quasi_symmetric
                && p.intersection_numbers.first() == Some(&0)
                && p.eq3_holds == Some(true);
            out.push(
                "ou_au_equality_gives_affine_sum",
                affine,
                format!("intersection numbers {:?}", p.intersection_numbers),
            );
        }
    }

    if nontrivial && report.asu.eps().is_some() {
        let dual_sum = sum_mosaic(&dual_mosaic(&mosaic));
        let p = analyze_structure(&dual_sum);
        if p.quasi_symmetric && p.intersection_numbers.first() == Some(&0) {
            out.push(
                "dual_sum_quasi_symmetric_gives_asu_variance_equality",
                report.equalities.asu_variance,
                format!("eps_asu = {}", report.eps_asu().map_or("undefined".into(), rational::to_text)),
            );
        }
    }
    Ok(out)
}
