//! Finite partial orders stored as full reflexive-transitive relations.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite poset on points `0..size`.
///
/// `up[i]` holds every `j` with `i ≤ j`; `down[j]` is the transpose.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl Poset {
    /// Builds a poset from the full relation given as `(i, j)` pairs meaning `i ≤ j`.
    ///
    /// The relation must already be reflexive, antisymmetric and transitive.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![BitSet::new(size); size];
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::NotAPartialOrder(format!(
                    "pair ({i}, {j}) out of range for {size} points"
                )));
            }
            up[i].insert(j);
        }
        Self::from_up_rows(up)
    }

    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = (0..size)
            .map(|i| BitSet::from_indices(size, (0..size).filter(|&j| leq(i, j))))
            .collect();
        Self::from_up_rows(up)
    }

    /// Reflexive-transitive closure of a set of strict relations, then validated.
    pub fn from_generating_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up: Vec<BitSet> = (0..size).map(|i| BitSet::from_indices(size, [i])).collect();
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::NotAPartialOrder(format!(
                    "pair ({i}, {j}) out of range for {size} points"
                )));
            }
            up[i].insert(j);
        }
        // Warshall
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_rows(up)
    }

    pub fn antichain(size: usize) -> Self {
        Self::from_fn(size, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn chain(size: usize) -> Self {
        Self::from_fn(size, |i, j| i <= j).expect("chain is a poset")
    }

    pub(crate) fn from_up_rows(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        for (i, row) in up.iter().enumerate() {
            if row.capacity() != n {
                return Err(Error::NotAPartialOrder(format!("row {i} has wrong width")));
            }
            if !row.contains(i) {
                return Err(Error::NotAPartialOrder(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not antisymmetric: {i} ≤ {j} and {j} ≤ {i}"
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].iter().find(|&k| !up[i].contains(k)).unwrap();
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive: {i} ≤ {j} ≤ {k} but not {i} ≤ {k}"
                    )));
                }
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Ok(Poset { up, down })
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `{j : i ≤ j}`
    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// `{j : j ≤ i}`
    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    /// All `(i, j)` with `i ≤ j`, in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn is_lower_set(&self, set: &BitSet) -> bool {
        set.iter().all(|i| self.down[i].is_subset(set))
    }

    pub fn is_upper_set(&self, set: &BitSet) -> bool {
        set.iter().all(|i| self.up[i].is_subset(set))
    }

    /// Upper covers of `i`.
    pub fn covers_of(&self, i: usize) -> Vec<usize> {
        self.up[i]
            .iter()
            .filter(|&j| j != i)
            .filter(|&j| {
                !self.up[i]
                    .iter()
                    .any(|k| k != i && k != j && self.leq(k, j))
            })
            .collect()
    }

    /// Cover pairs `(i, j)` with `i ⋖ j`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|i| self.covers_of(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// Length of the longest chain from a minimal element up to each point.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.size();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].count());
        let mut rank = vec![0; n];
        for &j in &order {
            rank[j] = self.down[j]
                .iter()
                .filter(|&i| i != j)
                .map(|i| rank[i] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.down[i].count() == 1)
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.up[i].count() == 1)
            .collect()
    }

    /// Induced subposet on `points`, relabelled `0..points.len()` in the given order.
    pub fn restrict(&self, points: &[usize]) -> Poset {
        Poset::from_fn(points.len(), |i, j| self.leq(points[i], points[j]))
            .expect("restriction of a poset is a poset")
    }

    /// The poset with points permuted: point `i` of `self` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.size();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Poset::from_fn(n, |i, j| self.leq(inv[i], inv[j])).expect("relabelled poset")
    }

    /// Order dual.
    pub fn dual(&self) -> Poset {
        Poset {
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_transitive() {
        let err = Poset::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder(m) if m.contains("transitive")));
    }

    #[test]
    fn rejects_cycle_and_missing_reflexive() {
        assert!(Poset::from_pairs(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).is_err());
        assert!(Poset::from_pairs(2, &[(0, 0)]).is_err());
    }

    #[test]
    fn closure_and_covers() {
        let p = Poset::from_generating_pairs(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers_of(0), vec![1, 3]);
        assert_eq!(p.ranks(), vec![0, 1, 2, 1]);
        assert_eq!(p.minimal(), vec![0]);
        assert_eq!(p.maximal(), vec![2, 3]);
    }

    #[test]
    fn relabel_round_trip() {
        let p = Poset::from_generating_pairs(3, &[(0, 1), (0, 2)]).unwrap();
        let q = p.relabel(&[2, 0, 1]);
        assert!(q.leq(2, 0) && q.leq(2, 1) && !q.leq(0, 1));
    }
}
