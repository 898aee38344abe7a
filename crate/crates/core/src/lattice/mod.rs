//! Finite lattices and Heyting algebras with precomputed operation tables.
//!
//! Elements are indices into a canonical carrier ordering: points are sorted
//! by rank (longest chain from the bottom), ties broken by input position. The
//! bottom is therefore always `0` and the top always `size - 1`.

mod birkhoff;
mod heyting;
mod hom;
mod supplement;

pub use birkhoff::{downset_algebra, downset_algebra_with_sets};
pub use heyting::HeytingAlgebra;
pub use hom::{is_bounded_lattice_hom, is_heyting_hom, is_injective_map};
pub use supplement::{Classification, CoRegularQuotient, CsVerdict};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::Elem;

/// A finite bounded lattice. Distributivity is not assumed.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    order: Poset,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Builds the lattice of a partial order, reindexing to the canonical
    /// carrier ordering. Returns the lattice and the map from input point to
    /// element index.
    pub fn from_poset(order: &Poset, labels: Option<Vec<String>>) -> Result<(Self, Vec<Elem>)> {
        let n = order.size();
        if n == 0 {
            return Err(Error::NotAPartialOrder(
                "empty carrier has no bounds".into(),
            ));
        }
        let ranks = order.ranks();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (ranks[i], i));
        // perm[new] = old; inv[old] = new
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let canon = order.relabel(&inv);
        let labels = match labels {
            Some(l) if l.len() == n => perm.iter().map(|&old| l[old].clone()).collect(),
            _ => perm.iter().map(|old| old.to_string()).collect(),
        };
        let lat = Self::from_canonical(canon, labels)?;
        Ok((lat, inv))
    }

    pub(crate) fn from_canonical(order: Poset, labels: Vec<String>) -> Result<Self> {
        let n = order.size();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = order.down_set(a).intersection(order.down_set(b));
                let m = lower
                    .iter()
                    .find(|&x| lower.is_subset(order.down_set(x)))
                    .ok_or(Error::NotALattice { op: "meet", a, b })?;
                let upper = order.up_set(a).intersection(order.up_set(b));
                let j = upper
                    .iter()
                    .find(|&x| upper.is_subset(order.up_set(x)))
                    .ok_or(Error::NotALattice { op: "join", a, b })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        // a lattice has a least and greatest element
        if order.down_set(n - 1).count() != n || order.up_set(0).count() != n {
            let a = (0..n).find(|&i| !order.leq(0, i)).unwrap_or(0);
            return Err(Error::NotALattice {
                op: "join",
                a: 0,
                b: a,
            });
        }
        Ok(FiniteLattice {
            order,
            meet,
            join,
            labels,
        })
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        self.size() - 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.size());
        self.labels = labels;
    }

    /// Element whose label is `name`.
    pub fn named(&self, name: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == name)
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, scanning
    /// triples in lexicographic index order.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Largest `x` with `a ∧ x ≤ b`, if it exists.
    pub fn relative_pseudocomplement(&self, a: Elem, b: Elem) -> Option<Elem> {
        let cands: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(self.meet(a, x), b))
            .collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&x| self.leq(x, m)))
    }

    /// Largest `x` with `a ∧ x = 0`, if it exists.
    pub fn pseudocomplement(&self, a: Elem) -> Option<Elem> {
        let cands: Vec<Elem> = self
            .elements()
            .filter(|&x| self.meet(a, x) == self.bottom())
            .collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&x| self.leq(x, m)))
    }

    /// Least `x` with `a ∨ x = 1`, if it exists.
    pub fn supplement(&self, a: Elem) -> Option<Elem> {
        let cands: Vec<Elem> = self
            .elements()
            .filter(|&x| self.join(a, x) == self.top())
            .collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&x| self.leq(m, x)))
    }

    /// Nonzero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&j| j != self.bottom())
            .filter(|&j| {
                let below: Vec<Elem> = self.order.down_set(j).iter().filter(|&x| x != j).collect();
                let max_below = self.join_all(below.iter().copied());
                max_below != j
            })
            .collect()
    }

    /// Elements other than the top with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&m| m != self.top())
            .filter(|&m| {
                let above: Vec<Elem> = self.order.up_set(m).iter().filter(|&x| x != m).collect();
                self.meet_all(above.iter().copied()) != m
            })
            .collect()
    }

    pub fn atoms(&self) -> Vec<Elem> {
        self.order.covers_of(self.bottom())
    }

    /// The sublattice order on `members` (which must be closed under ∧ and ∨
    /// and contain both bounds), reindexed canonically.
    pub fn sublattice(&self, members: &BitSet) -> Result<(FiniteLattice, Vec<Elem>)> {
        let pts = members.to_vec();
        let labels = pts.iter().map(|&p| self.labels[p].clone()).collect();
        let (lat, map) = FiniteLattice::from_poset(&self.order.restrict(&pts), Some(labels))?;
        // map[k] is the index of pts[k]
        let mut to_sub = vec![usize::MAX; self.size()];
        for (k, &p) in pts.iter().enumerate() {
            to_sub[p] = map[k];
        }
        Ok((lat, to_sub))
    }

    pub fn is_closed_under_meet_join(&self, set: &BitSet) -> bool {
        set.iter().all(|a| {
            set.iter()
                .all(|b| set.contains(self.meet(a, b)) && set.contains(self.join(a, b)))
        })
    }
}

/// Any structure with enough of the Heyting-with-supplement signature to
/// evaluate terms. Partial operations return `None` where undefined.
pub trait Signature {
    fn size(&self) -> usize;
    fn bottom(&self) -> Elem;
    fn top(&self) -> Elem;
    fn meet(&self, a: Elem, b: Elem) -> Elem;
    fn join(&self, a: Elem, b: Elem) -> Elem;
    fn implies(&self, a: Elem, b: Elem) -> Option<Elem>;
    fn pseudocomplement(&self, a: Elem) -> Option<Elem>;
    fn supplement(&self, a: Elem) -> Option<Elem>;
    fn label(&self, a: Elem) -> &str;
}

impl Signature for FiniteLattice {
    fn size(&self) -> usize {
        FiniteLattice::size(self)
    }
    fn bottom(&self) -> Elem {
        FiniteLattice::bottom(self)
    }
    fn top(&self) -> Elem {
        FiniteLattice::top(self)
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::meet(self, a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::join(self, a, b)
    }
    fn implies(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.relative_pseudocomplement(a, b)
    }
    fn pseudocomplement(&self, a: Elem) -> Option<Elem> {
        FiniteLattice::pseudocomplement(self, a)
    }
    fn supplement(&self, a: Elem) -> Option<Elem> {
        FiniteLattice::supplement(self, a)
    }
    fn label(&self, a: Elem) -> &str {
        FiniteLattice::label(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures::pentagon;

    #[test]
    fn pentagon_is_a_lattice_but_not_distributive() {
        let (lat, _) = FiniteLattice::from_poset(&pentagon(), None).unwrap();
        assert_eq!(lat.size(), 5);
        let (x, y, z) = lat.distributivity_witness().unwrap();
        assert_ne!(
            lat.meet(x, lat.join(y, z)),
            lat.join(lat.meet(x, y), lat.meet(x, z))
        );
    }

    #[test]
    fn antichain_with_no_bounds_is_not_a_lattice() {
        let err = FiniteLattice::from_poset(&Poset::antichain(2), None).unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }));
    }

    #[test]
    fn two_tops_is_not_a_lattice() {
        // 0 < a, 0 < b, no join of a and b
        let p = Poset::from_generating_pairs(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(
            FiniteLattice::from_poset(&p, None),
            Err(Error::NotALattice { op: "join", .. })
        ));
    }

    #[test]
    fn canonical_order_puts_bounds_at_ends() {
        // input top first, bottom last
        let p = Poset::from_generating_pairs(3, &[(2, 1), (1, 0)]).unwrap();
        let (lat, map) = FiniteLattice::from_poset(&p, None).unwrap();
        assert_eq!(map, vec![2, 1, 0]);
        assert_eq!(lat.bottom(), 0);
        assert_eq!(lat.top(), 2);
        assert_eq!(lat.label(0), "2");
    }
}
