//! Supplements, co-regular and co-dense elements, and the central-supplement
//! criteria.

use serde::Serialize;

use super::{FiniteLattice, HeytingAlgebra};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::Elem;

/// The four distinguished subsets of a supplemented Heyting algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `{a*}`
    pub regular: BitSet,
    /// `{a : a* = 0}`
    pub dense: BitSet,
    /// `{a⁺}`
    pub coregular: BitSet,
    /// `{a : a⁺ = 1}`
    pub codense: BitSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CsVerdict {
    pub holds: bool,
    /// First pair with `(x ∨ y)⁺ ≠ x⁺ ∧ y⁺`.
    pub witness: Option<(Elem, Elem)>,
}

/// The Boolean algebra of co-regular elements and the quotient `a ↦ a⁺⁺`.
#[derive(Clone, Debug)]
pub struct CoRegularQuotient {
    /// Co-regular elements of the source, ascending.
    pub members: Vec<Elem>,
    /// The Boolean algebra on `members`: inherited join and bounds, meet `(a ∧ b)⁺⁺`.
    pub algebra: FiniteLattice,
    /// `to_algebra[a]` is the element of `algebra` for source element `a⁺⁺`.
    pub to_algebra: Vec<Elem>,
}

impl HeytingAlgebra {
    pub fn classify_elements(&self) -> Classification {
        let n = self.size();
        let mut c = Classification {
            regular: BitSet::new(n),
            dense: BitSet::new(n),
            coregular: BitSet::new(n),
            codense: BitSet::new(n),
        };
        for a in self.elements() {
            c.regular.insert(self.pseudocomplement(a));
            c.coregular.insert(self.supplement(a));
            if self.pseudocomplement(a) == self.bottom() {
                c.dense.insert(a);
            }
            if self.supplement(a) == self.top() {
                c.codense.insert(a);
            }
        }
        c
    }

    /// Decides the dual Stone law `(x ∨ y)⁺ = x⁺ ∧ y⁺` and cross-checks the
    /// three equivalent characterisations: `Z(A) = CoRg(A)`, `x⁺ ∧ x⁺⁺ = 0`,
    /// and `CoRg(A)` being a sublattice. Disagreement is an internal error.
    pub fn is_centrally_supplemented(&self) -> Result<CsVerdict> {
        let witness = self.dual_stone_witness();
        let holds = witness.is_none();

        let center = self.center();
        let coregular = self.classify_elements().coregular;
        let center_is_coregular = center == coregular;
        let stone_eq = self.elements().all(|x| {
            let p = self.supplement(x);
            self.meet(p, self.supplement(p)) == self.bottom()
        });
        let sublattice = self.is_closed_under_meet_join(&coregular);
        let supplements_central = self.elements().all(|x| center.contains(self.supplement(x)));

        let all = [
            holds,
            center_is_coregular,
            stone_eq,
            sublattice,
            supplements_central,
        ];
        if all.iter().any(|&b| b != holds) {
            return Err(Error::breach(
                "central supplement equivalences",
                format!(
                    "dual Stone={holds}, Z=CoRg={center_is_coregular}, x⁺∧x⁺⁺=0={stone_eq}, \
                     CoRg sublattice={sublattice}, supplements central={supplements_central}"
                ),
            ));
        }
        Ok(CsVerdict { holds, witness })
    }

    pub fn dual_stone_witness(&self) -> Option<(Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                let lhs = self.supplement(self.join(x, y));
                let rhs = self.meet(self.supplement(x), self.supplement(y));
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// First pair violating `(x ∧ y)⁺ = x⁺ ∨ y⁺`, which holds in every
    /// supplemented distributive lattice.
    pub fn de_morgan_half_witness(&self) -> Option<(Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                let lhs = self.supplement(self.meet(x, y));
                let rhs = self.join(self.supplement(x), self.supplement(y));
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Checks `x⁺ = ⋁{s⁺ : x ≤ s ∈ S}` for a meet-dense `S`. Returns the
    /// first failing `x`, or an error if `S` is not meet-dense.
    pub fn meet_dense_supplement_witness(&self, dense: &BitSet) -> Result<Option<Elem>> {
        for x in self.elements() {
            let above: Vec<Elem> = dense.iter().filter(|&s| self.leq(x, s)).collect();
            if self.meet_all(above.iter().copied()) != x {
                return Err(Error::breach(
                    "meet-dense set",
                    format!("{x} is not a meet of elements of S"),
                ));
            }
            let formula = self.join_all(above.iter().map(|&s| self.supplement(s)));
            if formula != self.supplement(x) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// `CoRg(A)` with inherited join and bounds, meet `(a ∧ b)⁺⁺` and
    /// complement `⁺`. Verifies the Boolean laws and that `a ↦ a⁺⁺` is a
    /// lattice quotient whose kernel class of `0` is the co-dense ideal.
    pub fn glivenko_dual(&self) -> Result<CoRegularQuotient> {
        let class = self.classify_elements();
        let members = class.coregular.to_vec();
        let pp = |a: Elem| self.supplement(self.supplement(a));

        // order on CoRg is the restriction of ≤; joins are inherited
        let order = self.order().restrict(&members);
        let labels = members.iter().map(|&m| self.label(m).to_string()).collect();
        let (algebra, map) = FiniteLattice::from_poset(&order, Some(labels))?;
        let mut to_sub = vec![usize::MAX; self.size()];
        for (k, &m) in members.iter().enumerate() {
            to_sub[m] = map[k];
        }
        for &a in &members {
            for &b in &members {
                let j = self.join(a, b);
                if !class.coregular.contains(j) || algebra.join(to_sub[a], to_sub[b]) != to_sub[j] {
                    return Err(Error::breach("CoRg join inherited", format!("({a}, {b})")));
                }
                let m = pp(self.meet(a, b));
                if algebra.meet(to_sub[a], to_sub[b]) != to_sub[m] {
                    return Err(Error::breach("CoRg meet is (a∧b)⁺⁺", format!("({a}, {b})")));
                }
            }
            let c = self.supplement(a);
            let (ia, ic) = (to_sub[a], to_sub[c]);
            if algebra.meet(ia, ic) != algebra.bottom() || algebra.join(ia, ic) != algebra.top() {
                return Err(Error::breach("CoRg complement is ⁺", format!("{a}")));
            }
        }
        if let Some((x, y, z)) = algebra.distributivity_witness() {
            return Err(Error::breach(
                "CoRg distributive",
                format!("({x}, {y}, {z})"),
            ));
        }
        let to_algebra: Vec<Elem> = self.elements().map(|a| to_sub[pp(a)]).collect();
        super::is_bounded_lattice_hom(self, &algebra, &to_algebra)
            .map_err(|w| Error::breach("a ↦ a⁺⁺ is a lattice quotient", w))?;
        let kernel_of_zero = BitSet::from_indices(
            self.size(),
            self.elements().filter(|&a| pp(a) == self.bottom()),
        );
        if kernel_of_zero != class.codense {
            return Err(Error::breach(
                "a ↦ a⁺⁺ collapses exactly the co-dense ideal",
                format!("{:?} vs {:?}", kernel_of_zero, class.codense),
            ));
        }
        Ok(CoRegularQuotient {
            members,
            algebra,
            to_algebra,
        })
    }

    /// Finite form of completeness of the center: closed under ∧ and ∨ of
    /// the ambient algebra and contains both bounds.
    pub fn center_is_complete_sublattice(&self) -> bool {
        let z = self.center();
        z.contains(self.bottom()) && z.contains(self.top()) && self.is_closed_under_meet_join(&z)
    }

    /// For every `a` some `b` has `a ∨ b = 1` and `a ∧ b` co-dense. Returns the
    /// first `a` for which `b = a⁺` fails.
    pub fn dual_delta_star_witness(&self) -> Option<Elem> {
        self.elements().find(|&a| {
            let b = self.supplement(a);
            !(self.join(a, b) == self.top() && self.supplement(self.meet(a, b)) == self.top())
        })
    }

    /// The center as a Boolean lattice in its own right.
    pub fn center_lattice(&self) -> FiniteLattice {
        self.sublattice(&self.center())
            .expect("center is a sublattice")
            .0
    }

    /// Order of the center restricted from the ambient order.
    pub fn center_poset(&self) -> Poset {
        self.order().restrict(&self.center().to_vec())
    }
}
