use std::ops::Deref;

use super::{FiniteLattice, Signature};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::Elem;

/// A finite Heyting algebra: a finite distributive lattice together with its
/// implication, pseudo-complement and supplement tables.
///
/// Every finite distributive lattice is a Heyting algebra and is
/// supplemented, so all three tables are total. Immutable after construction.
#[derive(Clone, Debug)]
pub struct HeytingAlgebra {
    lattice: FiniteLattice,
    implies: Vec<Elem>,
    pseudo: Vec<Elem>,
    supp: Vec<Elem>,
}

impl Deref for HeytingAlgebra {
    type Target = FiniteLattice;

    fn deref(&self) -> &FiniteLattice {
        &self.lattice
    }
}

impl HeytingAlgebra {
    /// Heyting-mode construction from a partial order.
    pub fn from_poset(order: &Poset, labels: Option<Vec<String>>) -> Result<(Self, Vec<Elem>)> {
        let (lat, map) = FiniteLattice::from_poset(order, labels)?;
        Ok((Self::from_lattice(lat)?, map))
    }

    pub fn from_lattice(lattice: FiniteLattice) -> Result<Self> {
        if let Some((x, y, z)) = lattice.distributivity_witness() {
            return Err(Error::NotDistributive { x, y, z });
        }
        let n = lattice.size();
        let mut implies = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                // in a distributive lattice the join of all x with a ∧ x ≤ b is the largest such x
                implies[a * n + b] = lattice.join_all(
                    lattice
                        .elements()
                        .filter(|&x| lattice.leq(lattice.meet(a, x), b)),
                );
            }
        }
        let pseudo = (0..n).map(|a| implies[a * n]).collect();
        let supp = (0..n)
            .map(|a| {
                lattice
                    .supplement(a)
                    .expect("finite distributive lattices are supplemented")
            })
            .collect();
        Ok(HeytingAlgebra {
            lattice,
            implies,
            pseudo,
            supp,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    #[inline]
    pub fn implies(&self, a: Elem, b: Elem) -> Elem {
        self.implies[a * self.size() + b]
    }

    /// `a ↔ b = (a → b) ∧ (b → a)`
    pub fn biimplies(&self, a: Elem, b: Elem) -> Elem {
        self.meet(self.implies(a, b), self.implies(b, a))
    }

    /// `a* = a → 0`
    #[inline]
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.pseudo[a]
    }

    /// `a⁺`, the least `x` with `a ∨ x = 1`.
    #[inline]
    pub fn supplement(&self, a: Elem) -> Elem {
        self.supp[a]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        self.lattice.set_labels(labels);
    }

    /// Top is join-irreducible: `u ∨ v = 1` forces `u = 1` or `v = 1`.
    /// The one-element algebra is not counted as fsi.
    pub fn is_fsi(&self) -> bool {
        self.size() > 1 && self.fsi_witness().is_none()
    }

    /// A pair `u, v < 1` with `u ∨ v = 1`.
    pub fn fsi_witness(&self) -> Option<(Elem, Elem)> {
        let top = self.top();
        for u in 0..top {
            for v in u..top {
                if self.join(u, v) == top {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// `{c : ∃d. c ∧ d = 0 and c ∨ d = 1}`
    pub fn center(&self) -> BitSet {
        BitSet::from_indices(
            self.size(),
            self.elements().filter(|&c| self.complement(c).is_some()),
        )
    }

    pub fn complement(&self, c: Elem) -> Option<Elem> {
        self.elements()
            .find(|&d| self.meet(c, d) == self.bottom() && self.join(c, d) == self.top())
    }

    pub fn is_boolean(&self) -> bool {
        self.center().is_full()
    }

    pub fn upset_of(&self, a: Elem) -> BitSet {
        self.order().up_set(a).clone()
    }

    /// Re-derives every table invariant from scratch: lattice tables agree
    /// with the order, residuation, pseudo-complement and supplement laws.
    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let m = self.meet(a, b);
                if !(self.leq(m, a) && self.leq(m, b)) || (self.leq(a, b) != (m == a)) {
                    return Err(Error::breach(
                        "meet agrees with order",
                        format!("({a}, {b})"),
                    ));
                }
                let j = self.join(a, b);
                if !(self.leq(a, j) && self.leq(b, j)) || (self.leq(a, b) != (j == b)) {
                    return Err(Error::breach(
                        "join agrees with order",
                        format!("({a}, {b})"),
                    ));
                }
            }
        }
        if let Some((a, b, c)) = self.residuation_witness() {
            return Err(Error::breach(
                "residuation",
                format!("c ≤ a → b ⟺ a ∧ c ≤ b fails at a={a}, b={b}, c={c}"),
            ));
        }
        for a in 0..n {
            let p = self.pseudocomplement(a);
            let largest = self.meet(a, p) == 0
                && self
                    .elements()
                    .all(|x| self.meet(a, x) != 0 || self.leq(x, p));
            if !largest {
                return Err(Error::breach("pseudo-complement", format!("a={a}, a*={p}")));
            }
            let s = self.supplement(a);
            let least = self.join(a, s) == self.top()
                && self
                    .elements()
                    .all(|x| self.join(a, x) != self.top() || self.leq(s, x));
            if !least {
                return Err(Error::breach("supplement", format!("a={a}, a⁺={s}")));
            }
        }
        Ok(())
    }

    /// First `(a, b, c)` with `c ≤ a → b` disagreeing with `a ∧ c ≤ b`.
    pub fn residuation_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let imp = self.implies(a, b);
                for c in 0..n {
                    if self.leq(c, imp) != self.leq(self.meet(a, c), b) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Overwrites one implication entry. Test hook for negative controls:
    /// the resulting value violates the algebra's own invariants.
    #[doc(hidden)]
    pub fn tamper_implies(&mut self, a: Elem, b: Elem, value: Elem) {
        let n = self.size();
        self.implies[a * n + b] = value;
    }

    /// Quotient-free subalgebra check: `set` closed under ∧ ∨ → and bounds.
    pub fn is_heyting_subalgebra(&self, set: &BitSet) -> bool {
        set.contains(self.bottom())
            && set.contains(self.top())
            && set.iter().all(|a| {
                set.iter().all(|b| {
                    set.contains(self.meet(a, b))
                        && set.contains(self.join(a, b))
                        && set.contains(self.implies(a, b))
                })
            })
    }

    /// The direct product of `factors`, with elements the tuples in
    /// lexicographic order; returns the algebra and `tuples[i]` for each element.
    pub fn product(factors: &[&HeytingAlgebra]) -> Result<(HeytingAlgebra, Vec<Vec<Elem>>)> {
        let mut tuples: Vec<Vec<Elem>> = vec![vec![]];
        for f in factors {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    f.elements().map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        let order = Poset::from_fn(tuples.len(), |i, j| {
            factors
                .iter()
                .zip(tuples[i].iter().zip(&tuples[j]))
                .all(|(f, (&x, &y))| f.leq(x, y))
        })?;
        let labels = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = factors.iter().zip(t).map(|(f, &x)| f.label(x)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let (alg, map) = HeytingAlgebra::from_poset(&order, Some(labels))?;
        let mut out = vec![Vec::new(); tuples.len()];
        for (k, t) in tuples.into_iter().enumerate() {
            out[map[k]] = t;
        }
        Ok((alg, out))
    }
}

impl Signature for HeytingAlgebra {
    fn size(&self) -> usize {
        self.lattice.size()
    }
    fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }
    fn top(&self) -> Elem {
        self.lattice.top()
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }
    fn implies(&self, a: Elem, b: Elem) -> Option<Elem> {
        Some(HeytingAlgebra::implies(self, a, b))
    }
    fn pseudocomplement(&self, a: Elem) -> Option<Elem> {
        Some(HeytingAlgebra::pseudocomplement(self, a))
    }
    fn supplement(&self, a: Elem) -> Option<Elem> {
        Some(HeytingAlgebra::supplement(self, a))
    }
    fn label(&self, a: Elem) -> &str {
        self.lattice.label(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures::pentagon;
    use crate::testing::{chain, l5};

    #[test]
    fn two_element_chain_has_boolean_tables() {
        let c2 = chain(2);
        assert_eq!(c2.size(), 2);
        assert_eq!(c2.meet(0, 1), 0);
        assert_eq!(c2.join(0, 1), 1);
        // → truth table: 0→0=1, 0→1=1, 1→0=0, 1→1=1
        let table: Vec<Elem> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| c2.implies(a, b))
            .collect();
        assert_eq!(table, vec![1, 1, 0, 1]);
        c2.validate().unwrap();
    }

    #[test]
    fn l5_is_heyting() {
        let a = l5();
        assert_eq!(a.size(), 5);
        a.validate().unwrap();
        let (m, x, y) = (
            a.named("m").unwrap(),
            a.named("a").unwrap(),
            a.named("b").unwrap(),
        );
        assert!(a.leq(m, x) && a.leq(m, y) && !a.leq(x, y));
        assert_eq!(a.join(x, y), a.top());
        assert_eq!(a.meet(x, y), m);
    }

    #[test]
    fn pentagon_rejected_in_heyting_mode() {
        let err = HeytingAlgebra::from_poset(&pentagon(), None).unwrap_err();
        assert!(matches!(err, Error::NotDistributive { .. }));
    }

    #[test]
    fn supplements_in_small_algebras() {
        let c3 = chain(3);
        assert_eq!(c3.supplement(1), 2);
        let a = l5();
        let (x, y) = (a.named("a").unwrap(), a.named("b").unwrap());
        assert_eq!(a.supplement(x), y);
        assert_eq!(a.supplement(y), x);
        for alg in [&c3, &a] {
            assert_eq!(alg.supplement(alg.top()), alg.bottom());
        }
    }

    #[test]
    fn fsi_detection() {
        assert!(chain(3).is_fsi());
        assert!(!l5().is_fsi());
        assert_eq!(l5().fsi_witness(), Some((2, 3)));
    }

    #[test]
    fn tampered_implication_fails_validation() {
        let mut a = l5();
        let (x, y) = (a.named("a").unwrap(), a.named("b").unwrap());
        a.tamper_implies(x, y, a.top());
        let err = a.validate().unwrap_err();
        assert!(matches!(err, Error::InvariantBreach { ref check, .. } if check == "residuation"));
        assert!(a.residuation_witness().is_some());
    }

    #[test]
    fn product_of_chains() {
        let c2 = chain(2);
        let c3 = chain(3);
        let (p, tuples) = HeytingAlgebra::product(&[&c2, &c3]).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(tuples[p.bottom()], vec![0, 0]);
        assert_eq!(tuples[p.top()], vec![1, 2]);
        p.validate().unwrap();
        assert_eq!(p.center().count(), 4);
    }
}
