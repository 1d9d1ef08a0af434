use serde::{Deserialize, Serialize};

/// A finite abelian group `Z_{n_1} x ... x Z_{n_k}` acting on mixed-radix
/// indices, first factor most significant. Index 0 is the identity.
///
/// The additive group of GF(p^m)^t in canonical element order is the
/// elementary abelian group with `m * t` factors of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
}

impl AbelianGroup {
    /// Returns `None` if any modulus is zero.
    pub fn new(moduli: Vec<u32>) -> Option<Self> {
        if moduli.contains(&0) {
            return None;
        }
        Some(Self { moduli })
    }

    pub fn cyclic(n: u32) -> Self {
        Self { moduli: vec![n] }
    }

    pub fn elementary(p: u32, rank: usize) -> Self {
        Self { moduli: vec![p; rank] }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&n| n as usize).product()
    }

    fn digits(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &n) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    fn index(&self, digits: impl Iterator<Item = u32>) -> usize {
        digits
            .zip(&self.moduli)
            .fold(0, |acc, (d, &n)| acc * n as usize + d as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        self.index(da.iter().zip(&db).zip(&self.moduli).map(|((&x, &y), &n)| (x + y) % n))
    }

    pub fn neg(&self, a: usize) -> usize {
        let da = self.digits(a);
        self.index(da.iter().zip(&self.moduli).map(|(&x, &n)| (n - x) % n))
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Full addition table, row-major.
    pub fn table(&self) -> Vec<u32> {
        let n = self.order();
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                out.push(self.add(a, b) as u32);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_addition() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        // (1,2) + (1,2) = (0,1)
        assert_eq!(g.add(5, 5), 1);
        for a in 0..6 {
            assert_eq!(g.add(a, g.neg(a)), 0);
            assert_eq!(g.sub(a, a), 0);
        }
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(AbelianGroup::new(vec![2, 0]).is_none());
    }
}
