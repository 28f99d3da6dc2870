//! Finite abelian groups written as direct products of cyclic groups.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Self {
        assert!(factors.iter().all(|&m| m >= 1), "moduli must be positive");
        AbelianGroup { factors }
    }

    pub fn cyclic(m: u32) -> Self {
        Self::new(vec![m])
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&m| m as usize).product()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.factors.len()]
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        x.len() == self.arity() && x.iter().zip(&self.factors).all(|(&a, &m)| a < m)
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| ((a as u64 + b as u64) % m as u64) as u32)
            .collect()
    }

    pub fn neg(&self, x: &[u32]) -> Vec<u32> {
        x.iter().zip(&self.factors).map(|(&a, &m)| (m - a % m) % m).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.add(x, &self.neg(y))
    }

    /// Reduce arbitrary integers into the group.
    pub fn reduce(&self, x: &[i64]) -> Vec<u32> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &m)| a.rem_euclid(m as i64) as u32)
            .collect()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::with_capacity(self.arity())];
        for &m in &self.factors {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for a in 0..m {
                    let mut f = e.clone();
                    f.push(a);
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }

    /// Mixed-radix index of an element, consistent with `elements()`.
    pub fn index(&self, x: &[u32]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&a, &m)| acc * m as usize + a as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.arity()];
        for (slot, &m) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % m as usize) as u32;
            idx /= m as usize;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_elements_and_index_agree() {
        let g = AbelianGroup::new(vec![3, 8]);
        let els = g.elements();
        assert_eq!(els.len(), 24);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index(e), i);
            assert_eq!(&g.element(i), e);
        }
    }

    #[test]
    fn negation_cancels() {
        let g = AbelianGroup::new(vec![5, 4]);
        for e in g.elements() {
            assert_eq!(g.add(&e, &g.neg(&e)), g.zero());
        }
    }
}
