//! Exhaustive collision counting and seed-size bounds.
//!
//! Minimal ε values are exact rationals `max_count / normalizer`: the
//! normalizer is `|S|` for AU and balancedness, `|S|/|A|` for ACFU and ASU.
//! Ties between attaining tuples go to the lexicographically smallest one, so
//! parallel and sequential runs produce the same report.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash_family::FunctionTable;
use crate::rational::{self, uint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("family does not satisfy the regularity condition |{{s : f(x,s) = a}}| = |S|/|A|")]
    NotRegular,
    #[error("not a homomorphism in x for seed {seed}: f({x1}+{x2}) != f({x1}) + f({x2})")]
    NotHomomorphic { seed: usize, x1: usize, x2: usize },
    #[error("the {0} domain carries no group structure")]
    MissingGroup(&'static str),
    #[error("need |X| > |A| >= 2, got |X| = {x_size}, |A| = {a_size}")]
    TrivialDomain { x_size: u64, a_size: u64 },
    #[error("epsilon {0} is outside [optimal, 1]")]
    InfeasibleEpsilon(String),
    #[error("empty seed set")]
    EmptySeedSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HashClass {
    Au,
    Acfu,
    Asu,
    Balanced,
}

/// Argument tuple attaining a maximal count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Pair { x: usize, x_prime: usize },
    PairValue { x: usize, x_prime: usize, alpha: usize },
    PairValues { x: usize, x_prime: usize, alpha: usize, alpha_prime: usize },
    PointValue { x: usize, alpha: usize },
}

/// Minimal ε for one class with its attaining tuple (absent when there are no distinct pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon {
    #[serde(with = "rational::text")]
    pub eps: Rational,
    pub count: u64,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    pub block_size: Option<u64>,
    /// `counts[x * |A| + a] = |{s : f(x,s) = a}|`.
    pub counts: Vec<u64>,
}

pub fn regularity_check(f: &FunctionTable) -> Regularity {
    let (nx, ns, na) = (f.x_size(), f.s_size(), f.a_size());
    let mut counts = vec![0u64; nx * na];
    for x in 0..nx {
        for &v in f.row(x) {
            counts[x * na + v as usize] += 1;
        }
    }
    let block = (ns % na == 0).then_some((ns / na) as u64);
    let regular = match block {
        Some(b) => counts.iter().all(|&c| c == b),
        None => false,
    };
    Regularity {
        regular,
        block_size: if regular { block } else { None },
        counts,
    }
}

/// Keeps the larger count; on ties, the smaller key.
fn better<K: Ord + Copy>(a: (u64, Option<K>), b: (u64, Option<K>)) -> (u64, Option<K>) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => match (a.1, b.1) {
            (Some(ka), Some(kb)) => {
                if kb < ka {
                    b
                } else {
                    a
                }
            }
            (None, _) => b,
            (_, None) => a,
        },
    }
}

/// Maximizes `per_point(x)` over `x` with a deterministic reduction.
fn max_over_points<K, F>(nx: usize, per_point: F) -> (u64, Option<K>)
where
    K: Ord + Copy + Send,
    F: Fn(usize) -> (u64, Option<K>) + Sync + Send,
{
    (0..nx)
        .into_par_iter()
        .map(per_point)
        .reduce(|| (0, None), better)
}

/// Counts for unordered pairs suffice: all counts here are symmetric under
/// swapping `x` and `x'` (with the value pair swapped), and the mirrored
/// tuple with `x < x'` is the lexicographically smaller one.
fn au_max(f: &FunctionTable) -> (u64, Option<(usize, usize)>) {
    let nx = f.x_size();
    max_over_points(nx, |x| {
        let rx = f.row(x);
        let mut best = (0, None);
        for xp in x + 1..nx {
            let c = rx.iter().zip(f.row(xp)).filter(|(a, b)| a == b).count() as u64;
            best = better(best, (c, Some((x, xp))));
        }
        best
    })
}

fn acfu_max(f: &FunctionTable) -> (u64, Option<(usize, usize, usize)>) {
    let (nx, na) = (f.x_size(), f.a_size());
    max_over_points(nx, |x| {
        let rx = f.row(x);
        let mut best = (0, None);
        let mut cnt = vec![0u64; na];
        for xp in x + 1..nx {
            cnt.iter_mut().for_each(|c| *c = 0);
            for (a, b) in rx.iter().zip(f.row(xp)) {
                if a == b {
                    cnt[*a as usize] += 1;
                }
            }
            for (alpha, &c) in cnt.iter().enumerate() {
                best = better(best, (c, Some((x, xp, alpha))));
            }
        }
        best
    })
}

fn asu_max(f: &FunctionTable) -> (u64, Option<(usize, usize, usize, usize)>) {
    let (nx, na) = (f.x_size(), f.a_size());
    max_over_points(nx, |x| {
        let rx = f.row(x);
        let mut best = (0, None);
        let mut cnt = vec![0u64; na * na];
        for xp in x + 1..nx {
            cnt.iter_mut().for_each(|c| *c = 0);
            for (a, b) in rx.iter().zip(f.row(xp)) {
                cnt[*a as usize * na + *b as usize] += 1;
            }
            for (i, &c) in cnt.iter().enumerate() {
                best = better(best, (c, Some((x, xp, i / na, i % na))));
            }
        }
        best
    })
}

/// Checks that `x -> f(x, s)` is a group homomorphism for every seed.
pub fn check_homomorphism(f: &FunctionTable) -> Result<(), VerifyError> {
    let xg = f.x_group().ok_or(VerifyError::MissingGroup("point"))?;
    let ag = f.a_group().ok_or(VerifyError::MissingGroup("value"))?;
    let nx = f.x_size();
    let sums: Vec<usize> = (0..nx * nx).map(|i| xg.add(i / nx, i % nx)).collect();
    let a_table = ag.table();
    let na = f.a_size();
    for s in 0..f.s_size() {
        for x1 in 0..nx {
            for x2 in 0..nx {
                let lhs = f.get(sums[x1 * nx + x2], s);
                let rhs = a_table[f.get(x1, s) * na + f.get(x2, s)] as usize;
                if lhs != rhs {
                    return Err(VerifyError::NotHomomorphic { seed: s, x1, x2 });
                }
            }
        }
    }
    Ok(())
}

/// Balancedness of a homomorphic family: `max_{x != 0, a} |{h : f(x,h) = a}| / |H|`.
fn balanced_homomorphic(f: &FunctionTable) -> Result<Epsilon, VerifyError> {
    check_homomorphism(f)?;
    let (nx, na) = (f.x_size(), f.a_size());
    let (count, key) = max_over_points(nx, |x| {
        if x == 0 {
            return (0, None);
        }
        let mut cnt = vec![0u64; na];
        for &v in f.row(x) {
            cnt[v as usize] += 1;
        }
        cnt.iter()
            .enumerate()
            .fold((0, None), |best, (a, &c)| better(best, (c, Some((x, a)))))
    });
    Ok(Epsilon {
        eps: Rational::new(count.into(), f.s_size().into()),
        count,
        witness: key.map(|(x, alpha)| Witness::PointValue { x, alpha }),
    })
}

/// Difference balancedness over the value group:
/// `max_{y != y', b} |{h : a(y,h) - a(y',h) = b}| / |H|`. No homomorphism needed.
pub fn balanced_epsilon(f: &FunctionTable) -> Result<Epsilon, VerifyError> {
    let ag = f.a_group().ok_or(VerifyError::MissingGroup("value"))?;
    if f.s_size() == 0 {
        return Err(VerifyError::EmptySeedSet);
    }
    let (nx, na) = (f.x_size(), f.a_size());
    let diff: Vec<usize> = (0..na * na).map(|i| ag.sub(i / na, i % na)).collect();
    let (count, key) = max_over_points(nx, |x| {
        let rx = f.row(x);
        let mut best = (0, None);
        let mut cnt = vec![0u64; na];
        for xp in x + 1..nx {
            cnt.iter_mut().for_each(|c| *c = 0);
            for (a, b) in rx.iter().zip(f.row(xp)) {
                cnt[diff[*a as usize * na + *b as usize]] += 1;
            }
            for (beta, &c) in cnt.iter().enumerate() {
                best = better(best, (c, Some((x, xp, beta))));
            }
        }
        best
    });
    Ok(Epsilon {
        eps: Rational::new(count.into(), f.s_size().into()),
        count,
        witness: key.map(|(x, x_prime, alpha)| Witness::PairValue { x, x_prime, alpha }),
    })
}

/// Least ε for which `f` belongs to `class`.
pub fn min_epsilon(f: &FunctionTable, class: HashClass) -> Result<Epsilon, VerifyError> {
    let (ns, na) = (f.s_size(), f.a_size());
    if ns == 0 {
        return Err(VerifyError::EmptySeedSet);
    }
    let per_value = |count: u64| Rational::new((count * na as u64).into(), ns.into());
    match class {
        HashClass::Au => {
            let (count, key) = au_max(f);
            Ok(Epsilon {
                eps: Rational::new(count.into(), ns.into()),
                count,
                witness: key.map(|(x, x_prime)| Witness::Pair { x, x_prime }),
            })
        }
        HashClass::Acfu => {
            if !regularity_check(f).regular {
                return Err(VerifyError::NotRegular);
            }
            let (count, key) = acfu_max(f);
            Ok(Epsilon {
                eps: per_value(count),
                count,
                witness: key.map(|(x, x_prime, alpha)| Witness::PairValue { x, x_prime, alpha }),
            })
        }
        HashClass::Asu => {
            if !regularity_check(f).regular {
                return Err(VerifyError::NotRegular);
            }
            let (count, key) = asu_max(f);
            Ok(Epsilon {
                eps: per_value(count),
                count,
                witness: key.map(|(x, x_prime, alpha, alpha_prime)| Witness::PairValues {
                    x,
                    x_prime,
                    alpha,
                    alpha_prime,
                }),
            })
        }
        HashClass::Balanced => balanced_homomorphic(f),
    }
}

fn nontrivial(x_size: u64, a_size: u64) -> Result<(), VerifyError> {
    if a_size < 2 || x_size <= a_size {
        return Err(VerifyError::TrivialDomain { x_size, a_size });
    }
    Ok(())
}

/// `(|X| - |A|) / (|A| (|X| - 1))`, the least ε any AU or ACFU function can have.
pub fn optimal_epsilon(x_size: u64, a_size: u64) -> Result<Rational, VerifyError> {
    nontrivial(x_size, a_size)?;
    Ok(Rational::new(
        BigInt::from(x_size - a_size),
        BigInt::from(a_size) * BigInt::from(x_size - 1),
    ))
}

/// Right-hand sides of the seed-size lower bounds at one ε.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub x_size: u64,
    pub a_size: u64,
    #[serde(with = "rational::text")]
    pub eps: Rational,
    #[serde(with = "rational::text")]
    pub optimal_eps: Rational,
    /// ACFU variance bound `1 + |X|(|A|-1)^2 / (ε|A|(|X|-|A|) + |A|^2 - |X|)`.
    #[serde(with = "rational::opt_text")]
    pub lb_variance: Option<Rational>,
    /// ACFU simple bound `|A| / ε`.
    #[serde(with = "rational::text")]
    pub lb_simple: Rational,
    /// `|A|(|X|-1)/(|A|-1)`, only at the optimal ε.
    #[serde(with = "rational::opt_text")]
    pub lb_ocfu: Option<Rational>,
    /// AU bound `|X|(|A|-1) / (ε|A|(|X|-|A|) + |A|^2 - |X|)`.
    #[serde(with = "rational::opt_text")]
    pub lb_au: Option<Rational>,
    /// ASU variance bound `1 + |X|(|A|-1)^2 / (ε|A|(|X|-1) + |A| - |X|)`, for ε >= 1/|A|.
    #[serde(with = "rational::opt_text")]
    pub lb_asu_variance: Option<Rational>,
    /// ASU simple bound `|A| / ε`, for ε >= 1/|A|.
    #[serde(with = "rational::opt_text")]
    pub lb_asu_simple: Option<Rational>,
    /// ε <= (|X| - |A|^2)/(|X| - |A|): the variance bound dominates the simple one.
    pub variance_applies: bool,
    /// Whether any feasible ε lets the variance bound dominate.
    pub variance_window_nonempty: bool,
    /// ε >= (|X| - |A|)/(|X| - 1): the simple ASU bound dominates.
    pub asu_simple_applies: bool,
}

/// Which bounds a seed set size attains with equality.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEqualities {
    pub variance: bool,
    pub simple: bool,
    pub ocfu: bool,
    pub au: bool,
    pub asu_variance: bool,
    pub asu_simple: bool,
}

impl BoundReport {
    /// Largest applicable ACFU lower bound.
    pub fn acfu_bound(&self) -> Rational {
        let mut best = self.lb_simple.clone();
        for b in [&self.lb_variance, &self.lb_ocfu].into_iter().flatten() {
            if *b > best {
                best = b.clone();
            }
        }
        best
    }

    /// Largest applicable ASU lower bound (ε >= 1/|A| only).
    pub fn asu_bound(&self) -> Option<Rational> {
        match (&self.lb_asu_variance, &self.lb_asu_simple) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        }
    }

    pub fn equalities(&self, seed_size: u64) -> BoundEqualities {
        let s = uint(seed_size);
        let eq = |b: &Option<Rational>| b.as_ref() == Some(&s);
        BoundEqualities {
            variance: eq(&self.lb_variance),
            simple: self.lb_simple == s,
            ocfu: eq(&self.lb_ocfu),
            au: eq(&self.lb_au),
            asu_variance: eq(&self.lb_asu_variance),
            asu_simple: eq(&self.lb_asu_simple),
        }
    }
}

/// `|X| >= (|A|/2)(|A| + 1 + sqrt((|A|+3)(|A|-1)))`, decided on integers.
pub fn variance_window_nonempty(x_size: u64, a_size: u64) -> bool {
    let (x, a) = (BigInt::from(x_size), BigInt::from(a_size));
    let lhs: BigInt = BigInt::from(2) * &x - &a * (&a + BigInt::one());
    if lhs.is_negative() {
        return false;
    }
    let rhs: BigInt = &a * &a * (&a + BigInt::from(3)) * (&a - BigInt::one());
    &lhs * &lhs >= rhs
}

/// All seed-size lower bounds for `(|X|, |A|, ε)`.
pub fn seed_lower_bounds(x_size: u64, a_size: u64, eps: &Rational) -> Result<BoundReport, VerifyError> {
    let optimal = optimal_epsilon(x_size, a_size)?;
    if *eps < optimal || *eps > Rational::one() {
        return Err(VerifyError::InfeasibleEpsilon(rational::to_text(eps)));
    }
    let (x, a) = (uint(x_size), uint(a_size));
    let one = Rational::one();
    let positive = |d: Rational| (d.is_positive()).then_some(d);

    let shared_den = eps * &a * (&x - &a) + &a * &a - &x;
    let lb_variance = positive(shared_den.clone())
        .map(|d| &one + &x * (&a - &one) * (&a - &one) / d);
    let lb_au = positive(shared_den).map(|d| &x * (&a - &one) / d);
    let lb_simple = &a / eps;
    let lb_ocfu = (*eps == optimal).then(|| &a * (&x - &one) / (&a - &one));

    let asu_feasible = eps * &a >= one;
    let lb_asu_variance = if asu_feasible {
        positive(eps * &a * (&x - &one) + &a - &x).map(|d| &one + &x * (&a - &one) * (&a - &one) / d)
    } else {
        None
    };
    let lb_asu_simple = asu_feasible.then(|| &a / eps);

    let variance_threshold = (&x - &a * &a) / (&x - &a);
    Ok(BoundReport {
        x_size,
        a_size,
        eps: eps.clone(),
        optimal_eps: optimal,
        lb_variance,
        lb_simple,
        lb_ocfu,
        lb_au,
        lb_asu_variance,
        lb_asu_simple,
        variance_applies: *eps <= variance_threshold,
        variance_window_nonempty: variance_window_nonempty(x_size, a_size),
        asu_simple_applies: *eps >= (&x - &a) / (&x - &one),
    })
}

/// Outcome of one class in a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassOutcome {
    Ok(Epsilon),
    NotRegular,
    NotHomomorphic { seed: usize, x1: usize, x2: usize },
    Unavailable { reason: String },
}

impl ClassOutcome {
    fn from_result(r: Result<Epsilon, VerifyError>) -> Self {
        match r {
            Ok(e) => Self::Ok(e),
            Err(VerifyError::NotRegular) => Self::NotRegular,
            Err(VerifyError::NotHomomorphic { seed, x1, x2 }) => Self::NotHomomorphic { seed, x1, x2 },
            Err(e) => Self::Unavailable { reason: e.to_string() },
        }
    }

    pub fn eps(&self) -> Option<&Rational> {
        match self {
            Self::Ok(e) => Some(&e.eps),
            _ => None,
        }
    }

    pub fn epsilon(&self) -> Option<&Epsilon> {
        match self {
            Self::Ok(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub x_size: u64,
    pub s_size: u64,
    pub a_size: u64,
    pub regular: bool,
    pub block_size: Option<u64>,
    pub au: ClassOutcome,
    pub acfu: ClassOutcome,
    pub asu: ClassOutcome,
    pub balanced: ClassOutcome,
    #[serde(with = "rational::opt_text")]
    pub optimal_eps: Option<Rational>,
    /// AU with the optimal ε.
    pub ou: bool,
    /// ACFU with the optimal ε.
    pub ocfu: bool,
    /// Bounds at the minimal ACFU ε.
    pub acfu_bounds: Option<BoundReport>,
    /// Bounds at the minimal AU ε (for the AU bound).
    pub au_bounds: Option<BoundReport>,
    /// Bounds at the minimal ASU ε (for the ASU bounds).
    pub asu_bounds: Option<BoundReport>,
    /// `|S|` against each bound, each evaluated at its own class's ε.
    pub equalities: BoundEqualities,
}

impl VerificationReport {
    pub fn eps_au(&self) -> Option<&Rational> {
        self.au.eps()
    }

    pub fn eps_acfu(&self) -> Option<&Rational> {
        self.acfu.eps()
    }

    pub fn eps_asu(&self) -> Option<&Rational> {
        self.asu.eps()
    }
}

/// Full report: regularity, all minimal ε, optimality and bound equality flags.
pub fn classify(f: &FunctionTable) -> Result<VerificationReport, VerifyError> {
    if f.s_size() == 0 {
        return Err(VerifyError::EmptySeedSet);
    }
    let reg = regularity_check(f);
    let au = ClassOutcome::from_result(min_epsilon(f, HashClass::Au));
    let acfu = ClassOutcome::from_result(min_epsilon(f, HashClass::Acfu));
    let asu = ClassOutcome::from_result(min_epsilon(f, HashClass::Asu));
    let balanced = ClassOutcome::from_result(min_epsilon(f, HashClass::Balanced));

    let (xs, ss, as_) = (f.x_size() as u64, f.s_size() as u64, f.a_size() as u64);
    let optimal_eps = optimal_epsilon(xs, as_).ok();
    let at = |o: &ClassOutcome| o.eps().and_then(|e| seed_lower_bounds(xs, as_, e).ok());
    let acfu_bounds = at(&acfu);
    let au_bounds = at(&au);
    let asu_bounds = at(&asu);

    let is_opt = |o: &ClassOutcome| match (o.eps(), &optimal_eps) {
        (Some(e), Some(opt)) => e == opt,
        _ => false,
    };
    let mut equalities = acfu_bounds
        .as_ref()
        .map(|b| b.equalities(ss))
        .unwrap_or_default();
    let from_au = au_bounds.as_ref().map(|b| b.equalities(ss)).unwrap_or_default();
    let from_asu = asu_bounds.as_ref().map(|b| b.equalities(ss)).unwrap_or_default();
    equalities.au = from_au.au;
    equalities.asu_variance = from_asu.asu_variance;
    equalities.asu_simple = from_asu.asu_simple;

    Ok(VerificationReport {
        x_size: xs,
        s_size: ss,
        a_size: as_,
        regular: reg.regular,
        block_size: reg.block_size,
        ou: is_opt(&au),
        ocfu: is_opt(&acfu),
        au,
        acfu,
        asu,
        balanced,
        optimal_eps,
        acfu_bounds,
        au_bounds,
        asu_bounds,
        equalities,
    })
}

/// `1/ε` against the AU bound: `(1/ε, AU bound)`.
pub fn au_reciprocal_comparison(x_size: u64, a_size: u64, eps: &Rational) -> Result<(Rational, Rational), VerifyError> {
    let report = seed_lower_bounds(x_size, a_size, eps)?;
    let au = report
        .lb_au
        .ok_or_else(|| VerifyError::InfeasibleEpsilon(rational::to_text(eps)))?;
    if eps.is_zero() {
        return Err(VerifyError::InfeasibleEpsilon(rational::to_text(eps)));
    }
    Ok((eps.recip(), au))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash_family::{FamilySpec, HashFamily, DEFAULT_BUDGET};
    use crate::rational::{int, ratio};

    fn table(spec: FamilySpec) -> FunctionTable {
        HashFamily::build_named(&spec).unwrap().to_table(DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn affine_is_regular() {
        let r = regularity_check(&table(FamilySpec::Affine { q: 2, t: 2 }));
        assert!(r.regular);
        assert_eq!(r.block_size, Some(3));
    }

    #[test]
    fn constant_is_irregular() {
        let r = regularity_check(&FunctionTable::constant(3, 4, 2, 0).unwrap());
        assert!(!r.regular);
        assert_eq!(&r.counts[..2], &[4, 0]);
    }

    #[test]
    fn unextended_toeplitz_has_a_zero_row() {
        let t = table(FamilySpec::Toeplitz { q: 2, m: 1, n: 2 });
        let r = regularity_check(&t);
        assert!(!r.regular);
        assert_eq!(&r.counts[..2], &[4, 0]);
    }

    #[test]
    fn affine_acfu_epsilon() {
        let e = min_epsilon(&table(FamilySpec::Affine { q: 2, t: 2 }), HashClass::Acfu).unwrap();
        assert_eq!(e.eps, ratio(1, 3));
        assert_eq!(e.witness, Some(Witness::PairValue { x: 0, x_prime: 1, alpha: 0 }));
    }

    #[test]
    fn field_multiply_au_epsilon() {
        let t = table(FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: true });
        assert_eq!(min_epsilon(&t, HashClass::Au).unwrap().eps, ratio(3, 7));
    }

    #[test]
    fn dual_affine_acfu_epsilon() {
        let t = table(FamilySpec::DualAffine { q: 2, t: 2 });
        assert_eq!(min_epsilon(&t, HashClass::Acfu).unwrap().eps, ratio(1, 2));
    }

    #[test]
    fn irregular_family_has_no_acfu_epsilon() {
        let t = FunctionTable::constant(3, 4, 2, 0).unwrap();
        assert_eq!(min_epsilon(&t, HashClass::Acfu), Err(VerifyError::NotRegular));
        assert_eq!(min_epsilon(&t, HashClass::Asu), Err(VerifyError::NotRegular));
        assert_eq!(min_epsilon(&t, HashClass::Au).unwrap().eps, int(1));
    }

    #[test]
    fn balanced_needs_groups_and_homomorphism() {
        let t = FunctionTable::constant(2, 2, 2, 0).unwrap();
        assert_eq!(min_epsilon(&t, HashClass::Balanced), Err(VerifyError::MissingGroup("point")));
        let affine = table(FamilySpec::Affine { q: 2, t: 2 });
        assert!(matches!(
            min_epsilon(&affine, HashClass::Balanced),
            Err(VerifyError::NotHomomorphic { .. })
        ));
        let toeplitz = table(FamilySpec::Toeplitz { q: 2, m: 1, n: 2 });
        assert_eq!(min_epsilon(&toeplitz, HashClass::Balanced).unwrap().eps, ratio(1, 2));
    }

    #[test]
    fn optimal_epsilon_values() {
        assert_eq!(optimal_epsilon(4, 2).unwrap(), ratio(1, 3));
        assert_eq!(optimal_epsilon(9, 3).unwrap(), ratio(1, 4));
        assert_eq!(optimal_epsilon(8, 2).unwrap(), ratio(3, 7));
        assert!(matches!(optimal_epsilon(3, 3), Err(VerifyError::TrivialDomain { .. })));
        assert!(matches!(optimal_epsilon(5, 1), Err(VerifyError::TrivialDomain { .. })));
    }

    #[test]
    fn bounds_six_two_half() {
        let b = seed_lower_bounds(6, 2, &ratio(1, 2)).unwrap();
        assert_eq!(b.lb_variance, Some(int(4)));
        assert_eq!(b.lb_simple, int(4));
        assert_eq!(b.lb_ocfu, None);
    }

    #[test]
    fn bounds_nine_three_quarter() {
        let b = seed_lower_bounds(9, 3, &ratio(1, 4)).unwrap();
        assert_eq!(b.lb_ocfu, Some(int(12)));
        assert_eq!(b.lb_simple, int(12));
        assert_eq!(b.lb_variance, Some(int(9)));
        assert!(!b.variance_applies);
        assert!(!b.variance_window_nonempty);
    }

    #[test]
    fn infeasible_epsilon_is_rejected() {
        assert!(matches!(
            seed_lower_bounds(9, 3, &ratio(1, 5)),
            Err(VerifyError::InfeasibleEpsilon(_))
        ));
        assert!(matches!(
            seed_lower_bounds(9, 3, &ratio(3, 2)),
            Err(VerifyError::InfeasibleEpsilon(_))
        ));
    }

    #[test]
    fn degenerate_epsilon_one() {
        for (x, a) in [(4u64, 2u64), (9, 3), (30, 5), (64, 4)] {
            let b = seed_lower_bounds(x, a, &int(1)).unwrap();
            assert_eq!(b.lb_simple, uint(a));
            assert!(b.lb_variance.unwrap() <= b.lb_simple);
        }
    }

    #[test]
    fn classify_affine() {
        let r = classify(&table(FamilySpec::Affine { q: 2, t: 2 })).unwrap();
        assert!(r.ocfu);
        assert!(r.equalities.ocfu);
        assert_eq!(r.acfu_bounds.unwrap().lb_ocfu, Some(int(6)));
    }

    #[test]
    fn classify_dual_affine() {
        let r = classify(&table(FamilySpec::DualAffine { q: 2, t: 2 })).unwrap();
        assert_eq!(r.eps_acfu(), Some(&ratio(1, 2)));
        assert!(r.equalities.variance);
    }

    #[test]
    fn classify_transversal() {
        let t = table(FamilySpec::Transversal { q: 3, h_set: vec![0, 1, 2], include_infinity: false });
        let r = classify(&t).unwrap();
        assert_eq!(r.eps_acfu(), Some(&ratio(1, 3)));
        assert!(r.equalities.simple);
    }

    #[test]
    fn difference_balance_matches_homomorphic_balance() {
        for spec in [
            FamilySpec::Toeplitz { q: 2, m: 1, n: 2 },
            FamilySpec::Toeplitz { q: 3, m: 1, n: 2 },
            FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: false },
            FamilySpec::FieldMultiply { q: 2, n: 3, m: 2, exclude_zero: true },
        ] {
            let t = table(spec);
            assert_eq!(
                balanced_epsilon(&t).unwrap().eps,
                min_epsilon(&t, HashClass::Balanced).unwrap().eps
            );
        }
    }
}
