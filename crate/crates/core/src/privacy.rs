//! Exact evaluation of privacy amplification by an ACFU hash family.
//!
//! A secret `X` correlated with an eavesdropper's `Z` is hashed with a
//! public uniform seed `S`. All distributions are exact rationals; floats only
//! appear in logarithms and the final square root.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash_family::FunctionTable;
use crate::rational::{self, uint, ParseRationalError, Rational};
use crate::verify::{self, HashClass, VerifyError};

#[derive(Debug, Error)]
pub enum PrivacyError {
    #[error("source has {source_size} values of X but the family has {family_size} points")]
    AlphabetMismatch { source_size: usize, family_size: usize },
    #[error("key value {alpha} has probability zero")]
    ZeroMassKeyValue { alpha: usize },
    #[error("radicand {0} is negative")]
    NegativeRadicand(String),
    #[error("distance {distance} exceeds the bound (squared distance {distance_sq} > 4 * radicand {radicand})\n{dump}")]
    TheoremViolation {
        distance: String,
        distance_sq: String,
        radicand: String,
        dump: String,
    },
    #[error("negative probability at ({x}, {z})")]
    NegativeProbability { x: usize, z: usize },
    #[error("probabilities sum to {0}, not 1")]
    BadTotal(String),
    #[error("malformed source: {0}")]
    Malformed(String),
    #[error("product source would have {entries} entries, above the budget {budget}")]
    BudgetExceeded { entries: u128, budget: usize },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Joint distribution of `(X, Z)` with every `Z` value of positive mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointSource {
    x_labels: Vec<String>,
    z_labels: Vec<String>,
    /// `p[x * |Z| + z]`.
    p: Vec<Rational>,
    dropped: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceFile {
    x_labels: Vec<String>,
    z_labels: Vec<String>,
    #[serde(with = "rows_text")]
    probabilities: Vec<Vec<Rational>>,
}

mod rows_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(rational::to_text).collect()).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|r| {
                r.iter()
                    .map(|t| rational::parse(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl JointSource {
    /// Validates and drops zero-mass `Z` columns (see [`JointSource::dropped`]).
    pub fn new(x_labels: Vec<String>, z_labels: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self, PrivacyError> {
        let (nx, nz) = (x_labels.len(), z_labels.len());
        if rows.len() != nx || rows.iter().any(|r| r.len() != nz) {
            return Err(PrivacyError::Malformed(format!("expected a {nx} x {nz} table")));
        }
        let mut total = Rational::zero();
        for (x, row) in rows.iter().enumerate() {
            for (z, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(PrivacyError::NegativeProbability { x, z });
                }
                total += v;
            }
        }
        if !total.is_one() {
            return Err(PrivacyError::BadTotal(rational::to_text(&total)));
        }
        let keep: Vec<usize> = (0..nz).filter(|&z| rows.iter().any(|r| !r[z].is_zero())).collect();
        let dropped = (0..nz)
            .filter(|z| !keep.contains(z))
            .map(|z| z_labels[z].clone())
            .collect();
        let p = rows
            .iter()
            .flat_map(|r| keep.iter().map(move |&z| r[z].clone()))
            .collect();
        Ok(Self {
            x_labels,
            z_labels: keep.iter().map(|&z| z_labels[z].clone()).collect(),
            p,
            dropped,
        })
    }

    /// Uniform `X` on `n` values with a constant `Z`.
    pub fn uniform(n: usize) -> Self {
        let rows = vec![vec![Rational::new(1.into(), (n as u64).into())]; n];
        Self::new(labels(n), vec!["*".into()], rows).expect("valid distribution")
    }

    /// `X = x0` with certainty and a constant `Z`.
    pub fn point_mass(n: usize, x0: usize) -> Self {
        let rows = (0..n).map(|x| vec![uint((x == x0) as u64)]).collect();
        Self::new(labels(n), vec!["*".into()], rows).expect("valid distribution")
    }

    /// Uniform `X` on `q` values seen through a `q`-ary symmetric channel:
    /// `Z = X` with probability `1 - flip`, otherwise one of the other values uniformly.
    pub fn symmetric_channel(q: usize, flip: &Rational) -> Result<Self, PrivacyError> {
        if q < 2 {
            return Err(PrivacyError::Malformed("channel needs at least two symbols".into()));
        }
        let qr = uint(q as u64);
        let keep = (Rational::one() - flip) / &qr;
        let other = flip / (&qr * uint(q as u64 - 1));
        let rows = (0..q)
            .map(|x| (0..q).map(|z| if x == z { keep.clone() } else { other.clone() }).collect())
            .collect();
        Self::new(labels(q), labels(q), rows)
    }

    pub fn x_size(&self) -> usize {
        self.x_labels.len()
    }

    pub fn z_size(&self) -> usize {
        self.z_labels.len()
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn z_labels(&self) -> &[String] {
        &self.z_labels
    }

    /// Labels of `Z` values removed for having zero mass.
    pub fn dropped(&self) -> &[String] {
        &self.dropped
    }

    pub fn get(&self, x: usize, z: usize) -> &Rational {
        &self.p[x * self.z_size() + z]
    }

    /// The vector `p_z` with `p_z(x) = p(x, z)`.
    pub fn column(&self, z: usize) -> Vec<Rational> {
        (0..self.x_size()).map(|x| self.get(x, z).clone()).collect()
    }

    pub fn z_mass(&self, z: usize) -> Rational {
        (0..self.x_size()).map(|x| self.get(x, z)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.x_size())
            .map(|x| (0..self.z_size()).map(|z| self.get(x, z).clone()).collect())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = SourceFile {
            x_labels: self.x_labels.clone(),
            z_labels: self.z_labels.clone(),
            probabilities: self.rows(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, PrivacyError> {
        let file: SourceFile = serde_json::from_str(text)?;
        Self::new(file.x_labels, file.z_labels, file.probabilities)
    }
}

/// Conditional collision entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Renyi {
    /// `sum_z p_z^T p_z / p_z^T j`, equal to `2^{-H}`.
    #[serde(with = "rational::text")]
    pub inner: Rational,
    #[serde(with = "rational::real")]
    pub h2_bits: f64,
}

pub fn renyi2_conditional(src: &JointSource) -> Renyi {
    let inner: Rational = (0..src.z_size())
        .map(|z| {
            let col = src.column(z);
            let sq: Rational = col.iter().map(|v| v * v).sum();
            sq / src.z_mass(z)
        })
        .sum();
    let h2_bits = -rational::to_f64(&inner).log2();
    Renyi {
        inner,
        h2_bits: if h2_bits == 0.0 { 0.0 } else { h2_bits },
    }
}

/// The joint law of `(Z, S, A)` with `A = f(X, S)` and `S` uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaJoint {
    pub z_size: usize,
    pub s_size: usize,
    pub a_size: usize,
    /// `joint[(z * |S| + s) * |A| + a]`.
    pub joint: Vec<Rational>,
    pub key_marginal: Vec<Rational>,
    /// `p_ZA(z, a) = p_Z(z) / |A|` for all `(z, a)`.
    pub independent: bool,
    /// First `(z, a)` where independence fails.
    pub independence_witness: Option<(usize, usize)>,
}

impl PaJoint {
    pub fn get(&self, z: usize, s: usize, a: usize) -> &Rational {
        &self.joint[(z * self.s_size + s) * self.a_size + a]
    }
}

pub fn pa_joint(src: &JointSource, f: &FunctionTable) -> Result<PaJoint, PrivacyError> {
    if src.x_size() != f.x_size() {
        return Err(PrivacyError::AlphabetMismatch {
            source_size: src.x_size(),
            family_size: f.x_size(),
        });
    }
    let (nz, ns, na) = (src.z_size(), f.s_size(), f.a_size());
    let seed_prob = Rational::new(1.into(), (ns as u64).into());
    let joint: Vec<Rational> = (0..nz)
        .into_par_iter()
        .flat_map_iter(|z| {
            let mut block = vec![Rational::zero(); ns * na];
            for x in 0..src.x_size() {
                let p = src.get(x, z);
                if p.is_zero() {
                    continue;
                }
                for (s, &a) in f.row(x).iter().enumerate() {
                    block[s * na + a as usize] += p;
                }
            }
            block.into_iter().map(|v| v * &seed_prob)
        })
        .collect();
    let mut key_marginal = vec![Rational::zero(); na];
    let mut p_za = vec![Rational::zero(); nz * na];
    for z in 0..nz {
        for s in 0..ns {
            for a in 0..na {
                let v = &joint[(z * ns + s) * na + a];
                key_marginal[a] += v;
                p_za[z * na + a] += v;
            }
        }
    }
    let a_count = uint(na as u64);
    let independence_witness = (0..nz)
        .flat_map(|z| (0..na).map(move |a| (z, a)))
        .find(|&(z, a)| p_za[z * na + a] != src.z_mass(z) / &a_count);
    Ok(PaJoint {
        z_size: nz,
        s_size: ns,
        a_size: na,
        joint,
        key_marginal,
        independent: independence_witness.is_none(),
        independence_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    /// `max_{a, a'} || p_{ZS|A=a} - p_{ZS|A=a'} ||_1`.
    pub value: Rational,
    pub witness: Option<(usize, usize)>,
}

pub fn security_distance(joint: &PaJoint) -> Result<Distance, PrivacyError> {
    let na = joint.a_size;
    if let Some(alpha) = joint.key_marginal.iter().position(|m| m.is_zero()) {
        return Err(PrivacyError::ZeroMassKeyValue { alpha });
    }
    let cells = joint.z_size * joint.s_size;
    let conditional: Vec<Vec<Rational>> = (0..na)
        .map(|a| {
            (0..cells)
                .map(|c| &joint.joint[c * na + a] / &joint.key_marginal[a])
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..na).flat_map(|a| (a + 1..na).map(move |b| (a, b))).collect();
    let best = pairs
        .par_iter()
        .map(|&(a, b)| {
            let d: Rational = conditional[a]
                .iter()
                .zip(&conditional[b])
                .map(|(u, v)| (u - v).abs())
                .sum();
            (d, (a, b))
        })
        .reduce_with(|l, r| match r.0.cmp(&l.0) {
            std::cmp::Ordering::Greater => r,
            std::cmp::Ordering::Less => l,
            std::cmp::Ordering::Equal => {
                if r.1 < l.1 {
                    r
                } else {
                    l
                }
            }
        });
    Ok(match best {
        Some((value, w)) => Distance { value, witness: Some(w) },
        None => Distance {
            value: Rational::zero(),
            witness: None,
        },
    })
}

/// `2 sqrt((1 - ε)|A| 2^{-H} + |A| ε - 1)` with an exact radicand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremBound {
    #[serde(with = "rational::text")]
    pub radicand: Rational,
    #[serde(with = "rational::real")]
    pub bound: f64,
}

pub fn theorem_bound(eps: &Rational, a_size: usize, renyi_inner: &Rational) -> Result<TheoremBound, PrivacyError> {
    let a = uint(a_size as u64);
    let radicand = (Rational::one() - eps) * &a * renyi_inner + &a * eps - Rational::one();
    if radicand.is_negative() {
        return Err(PrivacyError::NegativeRadicand(rational::to_text(&radicand)));
    }
    let bound = 2.0 * rational::to_f64(&radicand).sqrt();
    Ok(TheoremBound { radicand, bound })
}

/// `distance <= 2 sqrt(radicand)`, decided as `distance^2 <= 4 radicand`.
pub fn bound_dominates(distance: &Rational, radicand: &Rational) -> bool {
    distance * distance <= uint(4) * radicand
}

/// The `n`-fold product source; `X` and `Z` tuples are indexed
/// lexicographically with the first coordinate most significant.
pub fn iid_extend(src: &JointSource, n: u32, budget: usize) -> Result<JointSource, PrivacyError> {
    if n == 0 {
        return Err(PrivacyError::Malformed("repetitions must be at least 1".into()));
    }
    if n == 1 {
        return Ok(src.clone());
    }
    let (nx, nz) = (src.x_size(), src.z_size());
    let entries = ((nx * nz) as u128).checked_pow(n).unwrap_or(u128::MAX);
    if entries > budget as u128 {
        return Err(PrivacyError::BudgetExceeded { entries, budget });
    }
    let tuple_labels = |base: &[String]| -> Vec<String> {
        let mut out: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    base.iter().map(move |l| {
                        let mut t = t.clone();
                        t.push(l.clone());
                        t
                    })
                })
                .collect();
        }
        out.into_iter().map(|t| format!("({})", t.join(","))).collect()
    };
    let digits = |mut i: usize, base: usize| -> Vec<usize> {
        let mut d = vec![0; n as usize];
        for slot in d.iter_mut().rev() {
            *slot = i % base;
            i /= base;
        }
        d
    };
    let (px, pz) = (nx.pow(n), nz.pow(n));
    let rows = (0..px)
        .map(|x| {
            let dx = digits(x, nx);
            (0..pz)
                .map(|z| {
                    let dz = digits(z, nz);
                    dx.iter().zip(&dz).map(|(&a, &b)| src.get(a, b)).product()
                })
                .collect()
        })
        .collect();
    JointSource::new(tuple_labels(&src.x_labels), tuple_labels(&src.z_labels), rows)
}

/// Whether `p^T N_a N_a^T p <= (|S|/|A|)((1 - ε) p^T p + ε (p^T j)^2)` for every member `N_a`.
pub fn bilinear_form_holds(f: &FunctionTable, eps: &Rational, p: &[Rational]) -> bool {
    let (ns, na) = (f.s_size(), f.a_size());
    let pp: Rational = p.iter().map(|v| v * v).sum();
    let pj: Rational = p.iter().sum();
    let rhs = Rational::new((ns as u64).into(), (na as u64).into())
        * ((Rational::one() - eps) * &pp + eps * &pj * &pj);
    (0..na).all(|a| {
        let lhs: Rational = (0..ns)
            .map(|s| {
                let v: Rational = (0..f.x_size())
                    .filter(|&x| f.get(x, s) == a)
                    .map(|x| &p[x])
                    .sum();
                &v * &v
            })
            .sum();
        lhs <= rhs
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PaResult {
    #[serde(with = "rational::vec_text")]
    pub key_marginal: Vec<Rational>,
    pub independence_verified: bool,
    pub independence_witness: Option<(usize, usize)>,
    #[serde(with = "rational::text")]
    pub security_distance: Rational,
    #[serde(with = "rational::real")]
    pub security_distance_real: f64,
    pub distance_witness: Option<(usize, usize)>,
    #[serde(with = "rational::text")]
    pub renyi_inner: Rational,
    #[serde(with = "rational::real")]
    pub entropy_h2: f64,
    /// Absent when the family is not regular.
    #[serde(with = "rational::opt_text")]
    pub eps_acfu: Option<Rational>,
    pub theorem: Option<TheoremBound>,
    pub dropped_z: Vec<String>,
}

impl PaResult {
    pub fn theorem_bound(&self) -> Option<f64> {
        self.theorem.as_ref().map(|t| t.bound)
    }
}

/// Distance, entropy and bound, with the bound checked in exact arithmetic.
pub fn run_pa(src: &JointSource, f: &FunctionTable) -> Result<PaResult, PrivacyError> {
    let joint = pa_joint(src, f)?;
    let distance = security_distance(&joint)?;
    let renyi = renyi2_conditional(src);
    let eps_acfu = match verify::min_epsilon(f, HashClass::Acfu) {
        Ok(e) => Some(e.eps),
        Err(VerifyError::NotRegular) => None,
        Err(e) => return Err(e.into()),
    };
    let theorem = eps_acfu
        .as_ref()
        .map(|eps| theorem_bound(eps, f.a_size(), &renyi.inner))
        .transpose()?;
    if let Some(t) = &theorem {
        if !bound_dominates(&distance.value, &t.radicand) {
            let dump: Vec<String> = joint.joint.iter().map(rational::to_text).collect();
            return Err(PrivacyError::TheoremViolation {
                distance: rational::to_text(&distance.value),
                distance_sq: rational::to_text(&(&distance.value * &distance.value)),
                radicand: rational::to_text(&t.radicand),
                dump: format!("p_ZSA = [{}]", dump.join(", ")),
            });
        }
    }
    Ok(PaResult {
        security_distance_real: rational::to_f64(&distance.value),
        key_marginal: joint.key_marginal,
        independence_verified: joint.independent,
        independence_witness: joint.independence_witness,
        security_distance: distance.value,
        distance_witness: distance.witness,
        renyi_inner: renyi.inner,
        entropy_h2: renyi.h2_bits,
        eps_acfu,
        theorem,
        dropped_z: src.dropped.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{seed_extension, Quasigroup};
    use crate::hash_family::{FamilySpec, HashFamily, DEFAULT_BUDGET};
    use crate::rational::{int, ratio};

    fn table(spec: FamilySpec) -> FunctionTable {
        HashFamily::build_named(&spec).unwrap().to_table(DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn renyi_examples() {
        assert_eq!(renyi2_conditional(&JointSource::uniform(4)).h2_bits, 2.0);
        let copy = JointSource::new(
            labels(2),
            labels(2),
            vec![vec![ratio(1, 2), int(0)], vec![int(0), ratio(1, 2)]],
        )
        .unwrap();
        assert_eq!(renyi2_conditional(&copy).h2_bits, 0.0);
        let bsc = JointSource::symmetric_channel(2, &ratio(1, 4)).unwrap();
        let r = renyi2_conditional(&bsc);
        assert_eq!(r.inner, ratio(5, 8));
        assert!((r.h2_bits - 0.678071905113).abs() < 1e-12);
    }

    #[test]
    fn zero_mass_columns_are_dropped() {
        let src = JointSource::new(
            labels(2),
            labels(3),
            vec![vec![ratio(1, 2), int(0), int(0)], vec![int(0), int(0), ratio(1, 2)]],
        )
        .unwrap();
        assert_eq!(src.z_size(), 2);
        assert_eq!(src.dropped(), &["1".to_string()]);
    }

    #[test]
    fn bad_sources_are_rejected() {
        assert!(matches!(
            JointSource::new(labels(1), labels(1), vec![vec![ratio(1, 2)]]),
            Err(PrivacyError::BadTotal(_))
        ));
        assert!(matches!(
            JointSource::new(labels(2), labels(1), vec![vec![int(2)], vec![int(-1)]]),
            Err(PrivacyError::NegativeProbability { x: 1, z: 0 })
        ));
    }

    #[test]
    fn affine_uniform_key() {
        let f = table(FamilySpec::Affine { q: 2, t: 2 });
        let j = pa_joint(&JointSource::uniform(4), &f).unwrap();
        assert_eq!(j.key_marginal, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(j.independent);
        assert_eq!(security_distance(&j).unwrap().value, int(0));
    }

    #[test]
    fn point_mass_spreads_over_seeds() {
        let f = table(FamilySpec::Affine { q: 2, t: 2 });
        let j = pa_joint(&JointSource::point_mass(4, 3), &f).unwrap();
        for s in 0..6 {
            assert_eq!(j.get(0, s, f.get(3, s)), &ratio(1, 6));
        }
    }

    #[test]
    fn irregular_family_fails_independence() {
        let f = FunctionTable::constant(2, 2, 2, 0).unwrap();
        let j = pa_joint(&JointSource::uniform(2), &f).unwrap();
        assert!(!j.independent);
        assert_eq!(j.independence_witness, Some((0, 0)));
        assert!(matches!(security_distance(&j), Err(PrivacyError::ZeroMassKeyValue { alpha: 1 })));
    }

    #[test]
    fn identity_distance_is_two() {
        let f = FunctionTable::from_indices(2, 1, 2, vec![0, 1]).unwrap();
        let src = JointSource::new(
            labels(2),
            labels(2),
            vec![vec![ratio(1, 2), int(0)], vec![int(0), ratio(1, 2)]],
        )
        .unwrap();
        let j = pa_joint(&src, &f).unwrap();
        assert_eq!(security_distance(&j).unwrap().value, int(2));
    }

    #[test]
    fn alphabet_mismatch() {
        let f = table(FamilySpec::Affine { q: 2, t: 2 });
        assert!(matches!(
            pa_joint(&JointSource::uniform(3), &f),
            Err(PrivacyError::AlphabetMismatch { source_size: 3, family_size: 4 })
        ));
    }

    #[test]
    fn bound_examples() {
        let t = theorem_bound(&ratio(3, 7), 2, &ratio(1, 8)).unwrap();
        assert_eq!(t.radicand, int(0));
        assert_eq!(t.bound, 0.0);
        let t = theorem_bound(&ratio(1, 2), 2, &ratio(1, 8)).unwrap();
        assert_eq!(t.radicand, ratio(1, 8));
        assert!((t.bound - 2.0 * 0.125f64.sqrt()).abs() < 1e-12);
        for a in 2..6usize {
            let inner = ratio(1, 5);
            let t = theorem_bound(&ratio(1, a as i64), a, &inner).unwrap();
            assert_eq!(t.radicand, uint(a as u64 - 1) * &inner);
        }
        assert!(matches!(
            theorem_bound(&ratio(1, 4), 2, &ratio(1, 8)),
            Err(PrivacyError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn iid_product() {
        let src = JointSource::symmetric_channel(2, &ratio(1, 4)).unwrap();
        assert_eq!(iid_extend(&src, 1, 1000).unwrap(), src);
        let sq = iid_extend(&src, 2, 1000).unwrap();
        assert_eq!((sq.x_size(), sq.z_size()), (4, 4));
        assert_eq!(sq.get(1, 2), &(src.get(0, 1) * src.get(1, 0)));
        let r = renyi2_conditional(&src).inner;
        assert_eq!(renyi2_conditional(&sq).inner, &r * &r);
        assert!(matches!(iid_extend(&src, 3, 10), Err(PrivacyError::BudgetExceeded { .. })));
    }

    #[test]
    fn optimal_family_collapses() {
        let g = table(FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: true });
        let f = seed_extension(&g, &Quasigroup::cyclic(2)).unwrap();
        let r = run_pa(&JointSource::uniform(8), &f).unwrap();
        assert_eq!(r.security_distance, int(0));
        assert_eq!(r.theorem.unwrap().radicand, int(0));
    }

    #[test]
    fn correlated_source_regression() {
        let src = iid_extend(&JointSource::symmetric_channel(2, &ratio(1, 4)).unwrap(), 2, 1000).unwrap();
        let r = run_pa(&src, &table(FamilySpec::Affine { q: 2, t: 2 })).unwrap();
        let t = r.theorem.unwrap();
        assert!(r.security_distance > int(0) && t.radicand > int(0));
        assert!(bound_dominates(&r.security_distance, &t.radicand));
    }

    #[test]
    fn single_value_family() {
        let f = FunctionTable::constant(3, 2, 1, 0).unwrap();
        let r = run_pa(&JointSource::uniform(3), &f).unwrap();
        assert_eq!(r.security_distance, int(0));
        assert_eq!(r.theorem.unwrap().radicand, int(0));
    }

    #[test]
    fn bilinear_form_on_affine() {
        let f = table(FamilySpec::Affine { q: 3, t: 2 });
        let eps = ratio(1, 4);
        for x in 0..9 {
            let p: Vec<Rational> = (0..9).map(|i| uint((i == x) as u64)).collect();
            assert!(bilinear_form_holds(&f, &eps, &p));
        }
        assert!(bilinear_form_holds(&f, &eps, &vec![ratio(1, 9); 9]));
    }

    #[test]
    fn source_json_round_trip() {
        let src = JointSource::symmetric_channel(3, &ratio(3, 8)).unwrap();
        assert_eq!(JointSource::from_json(&src.to_json()).unwrap(), src);
    }
}
