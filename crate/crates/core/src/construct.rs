//! Seed extension, point extension, concatenation and the lifts built on them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::AbelianGroup;
use crate::hash_family::{FunctionTable, HashError};
use crate::rational::{self, uint, Rational};
use crate::verify::{self, HashClass, VerifyError};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("not a latin square: symbol {symbol} repeated in {line}")]
    NotLatinSquare { line: String, symbol: usize },
    #[error("value set has {found} elements but the quasigroup has order {expected}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("first family has {a1} values but the second has {x2} points")]
    DomainMismatch { a1: usize, x2: usize },
    #[error("balancedness {measured} exceeds the claimed {claimed}")]
    NotBalanced { measured: String, claimed: String },
    #[error("lift has eps_asu = {measured}, above the balancedness {bound}")]
    AsuBoundViolated { measured: String, bound: String },
    #[error("malformed latin square: {0}")]
    Malformed(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A latin square `L` on `A` with product `a ∘ b = L(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasigroup {
    labels: Vec<String>,
    table: Vec<u32>,
    /// `right_div[a * n + b]` is the unique `c` with `c ∘ b = a`.
    right_div: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareFile {
    a_labels: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Quasigroup {
    pub fn from_table(labels: Vec<String>, rows: &[Vec<u32>]) -> Result<Self, ConstructError> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ConstructError::Malformed(format!("expected a {n} x {n} table")));
        }
        let table: Vec<u32> = rows.concat();
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(ConstructError::Malformed(format!("symbol {bad} out of range")));
        }
        for i in 0..n {
            let mut in_row = vec![false; n];
            let mut in_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j] as usize;
                if std::mem::replace(&mut in_row[r], true) {
                    return Err(ConstructError::NotLatinSquare { line: format!("row {i}"), symbol: r });
                }
                let c = table[j * n + i] as usize;
                if std::mem::replace(&mut in_col[c], true) {
                    return Err(ConstructError::NotLatinSquare { line: format!("column {i}"), symbol: c });
                }
            }
        }
        let mut right_div = vec![0; n * n];
        for c in 0..n {
            for b in 0..n {
                right_div[table[c * n + b] as usize * n + b] = c as u32;
            }
        }
        Ok(Self {
            labels,
            table,
            right_div,
        })
    }

    /// Addition table of an abelian group, labelled by index.
    pub fn from_group(g: &AbelianGroup) -> Self {
        let n = g.order();
        let rows: Vec<Vec<u32>> = g.table().chunks(n.max(1)).map(|r| r.to_vec()).collect();
        Self::from_table((0..n).map(|i| i.to_string()).collect(), &rows).expect("group tables are latin")
    }

    pub fn cyclic(n: u32) -> Self {
        Self::from_group(&AbelianGroup::cyclic(n))
    }

    /// Additive group of GF(p^m) in canonical element order.
    pub fn elementary_abelian(p: u32, m: usize) -> Self {
        Self::from_group(&AbelianGroup::elementary(p, m))
    }

    /// Permutes rows, columns and symbols: `L'(i, j) = sym[L(row[i], col[j])]`.
    pub fn isotope(&self, row: &[usize], col: &[usize], sym: &[usize]) -> Self {
        let n = self.order();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| sym[self.op(row[i], col[j])] as u32).collect())
            .collect();
        Self::from_table(self.labels.clone(), &rows).expect("isotopes of latin squares are latin")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    /// `a / b`: the unique `c` with `c ∘ b = a`.
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.right_div[a * self.order() + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.order().max(1);
        self.table.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn to_json(&self) -> String {
        let file = SquareFile {
            a_labels: self.labels.clone(),
            rows: self
                .rows()
                .iter()
                .map(|r| r.iter().map(|&v| self.labels[v as usize].clone()).collect())
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ConstructError> {
        let file: SquareFile = serde_json::from_str(text)?;
        let index = |l: &String| {
            file.a_labels
                .iter()
                .position(|a| a == l)
                .map(|i| i as u32)
                .ok_or_else(|| ConstructError::Malformed(format!("unknown label {l:?}")))
        };
        let rows = file
            .rows
            .iter()
            .map(|r| r.iter().map(index).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(file.a_labels.clone(), &rows)
    }
}

fn check_carrier(g: &FunctionTable, q: &Quasigroup) -> Result<(), ConstructError> {
    if g.a_size() != q.order() {
        return Err(ConstructError::CarrierMismatch {
            expected: q.order(),
            found: g.a_size(),
        });
    }
    Ok(())
}

fn pair_labels(first: &[String], second: &[String]) -> Vec<String> {
    first
        .iter()
        .flat_map(|a| second.iter().map(move |b| format!("({a},{b})")))
        .collect()
}

/// `ĝ(x; h, b) = g(x, h) ∘ b`, seed index `h * |A| + b`.
pub fn seed_extension(g: &FunctionTable, q: &Quasigroup) -> Result<FunctionTable, ConstructError> {
    check_carrier(g, q)?;
    let na = q.order();
    let mut entries = Vec::with_capacity(g.x_size() * g.s_size() * na);
    for x in 0..g.x_size() {
        for &v in g.row(x) {
            entries.extend((0..na).map(|b| q.op(v as usize, b) as u32));
        }
    }
    let s_labels = pair_labels(g.s_labels(), g.a_labels());
    Ok(FunctionTable::from_entries(g.x_labels().to_vec(), s_labels, g.a_labels().to_vec(), entries)?
        .with_groups(g.x_group().cloned(), g.a_group().cloned())?)
}

/// Point extension together with the regularity of its input.
#[derive(Debug, Clone)]
pub struct PointExtension {
    pub table: FunctionTable,
    /// When false the result cannot satisfy the regularity condition.
    pub input_regular: bool,
}

/// `ǧ(y, b; s) = g(y, s) ∘ b`, point index `y * |A| + b`.
pub fn point_extension(g: &FunctionTable, q: &Quasigroup) -> Result<PointExtension, ConstructError> {
    check_carrier(g, q)?;
    let na = q.order();
    let mut entries = Vec::with_capacity(g.x_size() * na * g.s_size());
    for y in 0..g.x_size() {
        for b in 0..na {
            entries.extend(g.row(y).iter().map(|&v| q.op(v as usize, b) as u32));
        }
    }
    let x_labels = pair_labels(g.x_labels(), g.a_labels());
    let table = FunctionTable::from_entries(x_labels, g.s_labels().to_vec(), g.a_labels().to_vec(), entries)?
        .with_groups(None, g.a_group().cloned())?;
    Ok(PointExtension {
        table,
        input_regular: verify::regularity_check(g).regular,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Concatenation {
    #[serde(skip)]
    pub table: FunctionTable,
    /// `eps_asu(f1)`, absent when `f1` is not regular.
    #[serde(with = "rational::opt_text")]
    pub eps1: Option<Rational>,
    /// `eps_acfu(f2)`, absent when `f2` is not regular.
    #[serde(with = "rational::opt_text")]
    pub eps2: Option<Rational>,
    /// `eps1 eps2 (|A1| - 1) + eps1`.
    #[serde(with = "rational::opt_text")]
    pub bound: Option<Rational>,
}

/// `f(x; s1, s2) = f2(f1(x, s1), s2)`, seed index `s1 * |S2| + s2`.
pub fn concatenate(f1: &FunctionTable, f2: &FunctionTable) -> Result<Concatenation, ConstructError> {
    if f1.a_size() != f2.x_size() {
        return Err(ConstructError::DomainMismatch {
            a1: f1.a_size(),
            x2: f2.x_size(),
        });
    }
    let mut entries = Vec::with_capacity(f1.x_size() * f1.s_size() * f2.s_size());
    for x in 0..f1.x_size() {
        for &mid in f1.row(x) {
            entries.extend_from_slice(f2.row(mid as usize));
        }
    }
    let table = FunctionTable::from_entries(
        f1.x_labels().to_vec(),
        pair_labels(f1.s_labels(), f2.s_labels()),
        f2.a_labels().to_vec(),
        entries,
    )?
    .with_groups(f1.x_group().cloned(), f2.a_group().cloned())?;
    let eps1 = verify::min_epsilon(f1, HashClass::Asu).ok().map(|e| e.eps);
    let eps2 = verify::min_epsilon(f2, HashClass::Acfu).ok().map(|e| e.eps);
    let bound = match (&eps1, &eps2) {
        (Some(e1), Some(e2)) => Some(e1 * e2 * uint(f1.a_size() as u64 - 1) + e1),
        _ => None,
    };
    Ok(Concatenation {
        table,
        eps1,
        eps2,
        bound,
    })
}

fn check_claim(measured: &Rational, claimed: Option<&Rational>) -> Result<(), ConstructError> {
    match claimed {
        Some(c) if measured > c => Err(ConstructError::NotBalanced {
            measured: rational::to_text(measured),
            claimed: rational::to_text(c),
        }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct Lift {
    pub table: FunctionTable,
    /// Balancedness of the input.
    pub eps: Rational,
    /// Measured ASU epsilon of the lift.
    pub eps_asu: Rational,
}

/// Seed extension of a homomorphic, balanced `g` by the group of its values.
///
/// The result must be ε-ASU for the balancedness ε of `g`; a larger measured
/// value is reported as an error.
pub fn krawczyk_lift(g: &FunctionTable, claimed: Option<&Rational>) -> Result<Lift, ConstructError> {
    let eps = verify::min_epsilon(g, HashClass::Balanced)?.eps;
    check_claim(&eps, claimed)?;
    let group = g.a_group().ok_or(VerifyError::MissingGroup("value"))?;
    let table = seed_extension(g, &Quasigroup::from_group(group))?;
    let eps_asu = verify::min_epsilon(&table, HashClass::Asu)?.eps;
    if eps_asu > eps {
        return Err(ConstructError::AsuBoundViolated {
            measured: rational::to_text(&eps_asu),
            bound: rational::to_text(&eps),
        });
    }
    Ok(Lift { table, eps, eps_asu })
}

#[derive(Debug, Clone)]
pub struct DoubleExtension {
    /// `f(y, b; h, c) = a(y, h) + b + c`.
    pub table: FunctionTable,
    /// `g1(y, b; h) = a(y, h) + b`; `f` is its seed extension.
    pub g1: FunctionTable,
    /// `g2(y; h, c) = a(y, h) + c`; `f` is its point extension.
    pub g2: FunctionTable,
    /// Difference balancedness of `a`.
    pub eps: Rational,
}

pub fn double_extension(a: &FunctionTable, claimed: Option<&Rational>) -> Result<DoubleExtension, ConstructError> {
    let group = a.a_group().ok_or(VerifyError::MissingGroup("value"))?.clone();
    let eps = verify::balanced_epsilon(a)?.eps;
    check_claim(&eps, claimed)?;
    let (ny, nh, na) = (a.x_size(), a.s_size(), a.a_size());
    let add = group.table();
    let plus = |u: usize, v: usize| add[u * na + v];
    let x_labels = pair_labels(a.x_labels(), a.a_labels());
    let s_labels = pair_labels(a.s_labels(), a.a_labels());

    let mut g1 = Vec::with_capacity(ny * na * nh);
    let mut g2 = Vec::with_capacity(ny * nh * na);
    let mut f = Vec::with_capacity(ny * na * nh * na);
    for y in 0..ny {
        for b in 0..na {
            for h in 0..nh {
                let v = plus(a.get(y, h), b);
                g1.push(v);
                f.extend((0..na).map(|c| plus(v as usize, c)));
            }
        }
        for h in 0..nh {
            g2.extend((0..na).map(|c| plus(a.get(y, h), c)));
        }
    }
    let build = |x: Vec<String>, s: Vec<String>, e: Vec<u32>| -> Result<FunctionTable, ConstructError> {
        Ok(FunctionTable::from_entries(x, s, a.a_labels().to_vec(), e)?.with_groups(None, Some(group.clone()))?)
    };
    Ok(DoubleExtension {
        table: build(x_labels.clone(), s_labels.clone(), f)?,
        g1: build(x_labels, a.s_labels().to_vec(), g1)?,
        g2: build(a.x_labels().to_vec(), s_labels, g2)?,
        eps,
    })
}
