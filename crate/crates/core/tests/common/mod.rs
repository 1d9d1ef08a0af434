//! Brute-force reference computations and shared fixtures.
#![allow(dead_code)]

use acfu_core::construct::Quasigroup;
use acfu_core::privacy::JointSource;
use acfu_core::{FamilySpec, FunctionTable, HashFamily, Rational, DEFAULT_BUDGET};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn build(spec: &FamilySpec) -> FunctionTable {
    HashFamily::build_named(spec).unwrap().to_table(DEFAULT_BUDGET).unwrap()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn affine(q: u64, t: usize) -> FunctionTable {
    build(&FamilySpec::Affine { q, t })
}

pub fn dual_affine(q: u64, t: usize) -> FunctionTable {
    build(&FamilySpec::DualAffine { q, t })
}

pub fn transversal(q: u64, h_set: Vec<u32>, include_infinity: bool) -> FunctionTable {
    build(&FamilySpec::Transversal { q, h_set, include_infinity })
}

pub fn toeplitz(q: u64, m: usize, n: usize) -> FunctionTable {
    build(&FamilySpec::Toeplitz { q, m, n })
}

pub fn field_multiply(q: u64, n: usize, m: usize, exclude_zero: bool) -> FunctionTable {
    build(&FamilySpec::FieldMultiply { q, n, m, exclude_zero })
}

/// Small instances of every closed-form family.
pub fn builtins() -> Vec<(String, FunctionTable)> {
    let specs = vec![
        FamilySpec::Affine { q: 2, t: 2 },
        FamilySpec::Affine { q: 3, t: 2 },
        FamilySpec::Affine { q: 2, t: 3 },
        FamilySpec::DualAffine { q: 2, t: 2 },
        FamilySpec::DualAffine { q: 3, t: 2 },
        FamilySpec::Transversal { q: 2, h_set: vec![0, 1], include_infinity: false },
        FamilySpec::Transversal { q: 3, h_set: vec![0, 1, 2], include_infinity: false },
        FamilySpec::Transversal { q: 3, h_set: vec![0, 1], include_infinity: true },
        FamilySpec::Toeplitz { q: 2, m: 1, n: 3 },
        FamilySpec::Toeplitz { q: 2, m: 2, n: 3 },
        FamilySpec::FieldMultiply { q: 2, n: 3, m: 1, exclude_zero: true },
        FamilySpec::FieldMultiply { q: 2, n: 2, m: 1, exclude_zero: false },
        FamilySpec::FieldMultiply { q: 3, n: 2, m: 1, exclude_zero: true },
    ];
    specs
        .into_iter()
        .map(|s| (format!("{s:?}"), build(&s)))
        .collect()
}

pub fn random_table(rng: &mut ChaCha8Rng, nx: usize, ns: usize, na: usize) -> FunctionTable {
    let entries = (0..nx * ns).map(|_| rng.gen_range(0..na as u32)).collect();
    FunctionTable::from_indices(nx, ns, na, entries).unwrap()
}

/// A random isotope of the cyclic group table.
pub fn random_latin_square(rng: &mut ChaCha8Rng, n: usize) -> Quasigroup {
    let mut perm = || {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    let (a, b, c) = (perm(), perm(), perm());
    Quasigroup::cyclic(n as u32).isotope(&a, &b, &c)
}

fn naive_regular(f: &FunctionTable) -> bool {
    let (ns, na) = (f.s_size(), f.a_size());
    if ns % na != 0 {
        return false;
    }
    (0..f.x_size()).all(|x| (0..na).all(|a| (0..ns).filter(|&s| f.get(x, s) == a).count() == ns / na))
}

/// `max_{x != x'} |{s : f(x,s) = f(x',s)}| / |S|`.
pub fn naive_eps_au(f: &FunctionTable) -> Rational {
    let mut best = 0;
    for x in 0..f.x_size() {
        for xp in 0..f.x_size() {
            if x != xp {
                let c = (0..f.s_size()).filter(|&s| f.get(x, s) == f.get(xp, s)).count();
                best = best.max(c);
            }
        }
    }
    r(best as i64, f.s_size() as i64)
}

/// `max_{x != x', a} |{s : f(x,s) = f(x',s) = a}| |A| / |S|`, or `None` if irregular.
pub fn naive_eps_acfu(f: &FunctionTable) -> Option<Rational> {
    if f.s_size() == 0 || !naive_regular(f) {
        return None;
    }
    let mut best = 0;
    for x in 0..f.x_size() {
        for xp in 0..f.x_size() {
            for a in 0..f.a_size() {
                if x != xp {
                    let c = (0..f.s_size())
                        .filter(|&s| f.get(x, s) == a && f.get(xp, s) == a)
                        .count();
                    best = best.max(c);
                }
            }
        }
    }
    Some(r((best * f.a_size()) as i64, f.s_size() as i64))
}

/// `max_{x != x', a, a'} |{s : f(x,s) = a, f(x',s) = a'}| |A| / |S|`, or `None` if irregular.
pub fn naive_eps_asu(f: &FunctionTable) -> Option<Rational> {
    if f.s_size() == 0 || !naive_regular(f) {
        return None;
    }
    let mut best = 0;
    for x in 0..f.x_size() {
        for xp in 0..f.x_size() {
            for a in 0..f.a_size() {
                for ap in 0..f.a_size() {
                    if x != xp {
                        let c = (0..f.s_size())
                            .filter(|&s| f.get(x, s) == a && f.get(xp, s) == ap)
                            .count();
                        best = best.max(c);
                    }
                }
            }
        }
    }
    Some(r((best * f.a_size()) as i64, f.s_size() as i64))
}

/// `max_{x != x', b} |{s : f(x,s) - f(x',s) = b}| / |S|` in the value group.
pub fn naive_eps_difference(f: &FunctionTable) -> Rational {
    let g = f.a_group().expect("value group");
    let mut best = 0;
    for x in 0..f.x_size() {
        for xp in 0..f.x_size() {
            for b in 0..f.a_size() {
                if x != xp {
                    let c = (0..f.s_size()).filter(|&s| g.sub(f.get(x, s), f.get(xp, s)) == b).count();
                    best = best.max(c);
                }
            }
        }
    }
    r(best as i64, f.s_size() as i64)
}

/// `max_{x != 0, a} |{s : f(x,s) = a}| / |S|`.
pub fn naive_eps_homomorphic(f: &FunctionTable) -> Rational {
    let mut best = 0;
    for x in 1..f.x_size() {
        for a in 0..f.a_size() {
            best = best.max((0..f.s_size()).filter(|&s| f.get(x, s) == a).count());
        }
    }
    r(best as i64, f.s_size() as i64)
}

/// `max_{a != a'} sum_{z,s} |P(z,s | a) - P(z,s | a')|`, or `None` if some key value never occurs.
pub fn naive_distance(src: &JointSource, f: &FunctionTable) -> Option<Rational> {
    let ns = Rational::from_integer((f.s_size() as i64).into());
    let p = |z: usize, s: usize, a: usize| -> Rational {
        let mut t = Rational::zero();
        for x in 0..src.x_size() {
            if f.get(x, s) == a {
                t += src.get(x, z);
            }
        }
        t / &ns
    };
    let na = f.a_size();
    let mut marg = vec![Rational::zero(); na];
    for (a, m) in marg.iter_mut().enumerate() {
        for z in 0..src.z_size() {
            for s in 0..f.s_size() {
                *m += p(z, s, a);
            }
        }
    }
    if marg.iter().any(|m| m.is_zero()) {
        return None;
    }
    let mut best = Rational::zero();
    for a in 0..na {
        for b in 0..na {
            let mut d = Rational::zero();
            for z in 0..src.z_size() {
                for s in 0..f.s_size() {
                    let diff = p(z, s, a) / &marg[a] - p(z, s, b) / &marg[b];
                    d += if diff < Rational::zero() { -diff } else { diff };
                }
            }
            if d > best {
                best = d;
            }
        }
    }
    Some(best)
}

/// `sum_z sum_x p(x,z)^2 / p(z)`.
pub fn naive_renyi_inner(src: &JointSource) -> Rational {
    let mut total = Rational::zero();
    for z in 0..src.z_size() {
        let mut mass = Rational::zero();
        let mut sq = Rational::zero();
        for x in 0..src.x_size() {
            mass += src.get(x, z);
            sq += src.get(x, z) * src.get(x, z);
        }
        if !mass.is_zero() {
            total += sq / mass;
        }
    }
    total
}

/// Random joint law with small integer weights.
pub fn random_source(rng: &mut ChaCha8Rng, nx: usize, nz: usize) -> JointSource {
    let weights: Vec<Vec<i64>> = (0..nx)
        .map(|_| (0..nz).map(|_| rng.gen_range(0..4)).collect())
        .collect();
    let mut total: i64 = weights.iter().flatten().sum();
    let mut weights = weights;
    if total == 0 {
        weights[0][0] = 1;
        total = 1;
    }
    let rows = weights
        .iter()
        .map(|row| row.iter().map(|&w| r(w, total)).collect())
        .collect();
    let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    JointSource::new(labels(nx), labels(nz), rows).unwrap()
}

/// True when some bijection of points makes `g(., psi(s))` agree with `f(., s)`.
pub fn rows_match(f: &FunctionTable, g: &FunctionTable, psi: impl Fn(usize) -> usize) -> bool {
    if (f.x_size(), f.s_size(), f.a_size()) != (g.x_size(), g.s_size(), g.a_size()) {
        return false;
    }
    let mut lhs: Vec<Vec<usize>> = (0..f.x_size()).map(|x| (0..f.s_size()).map(|s| f.get(x, s)).collect()).collect();
    let mut rhs: Vec<Vec<usize>> = (0..g.x_size())
        .map(|x| (0..f.s_size()).map(|s| g.get(x, psi(s))).collect())
        .collect();
    lhs.sort();
    rhs.sort();
    lhs == rhs
}

pub fn regular_table(rng: &mut ChaCha8Rng, nx: usize, blocks: usize, na: usize) -> FunctionTable {
    let ns = blocks * na;
    let mut entries = Vec::new();
    for _ in 0..nx {
        let mut row: Vec<u32> = (0..ns).map(|i| (i % na) as u32).collect();
        row.shuffle(rng);
        entries.extend(row);
    }
    FunctionTable::from_indices(nx, ns, na, entries).unwrap()
}
