//! Essentiality, regularity and external distributivity of `A ≤ S(A)`, and
//! the finite form of the closure of `Y`.

use serde::Serialize;

use super::ExtensionAlgebra;
use crate::bitset::BitSet;
use crate::duality::prime_filters;
use crate::error::{Error, Result};
use crate::lattice::HeytingAlgebra;
use crate::Elem;

/// Largest `|A|` for which regularity and external distributivity are
/// checked over every subset; above it, over pairs.
pub const FULL_SUBSET_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingFlags {
    pub essential: bool,
    pub regular: bool,
    pub externally_distributive: bool,
}

/// Subsets of `0..n` to scan: all of them for small `n`, else all of size ≤ 2.
pub(crate) fn subsets(n: usize) -> Vec<Vec<Elem>> {
    if n <= FULL_SUBSET_LIMIT {
        (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut out = vec![vec![]];
        for i in 0..n {
            out.push(vec![i]);
            for j in i + 1..n {
                out.push(vec![i, j]);
            }
        }
        out
    }
}

pub(crate) fn externally_distributive(a: &HeytingAlgebra) -> bool {
    let subs = subsets(a.size());
    a.elements().all(|x| {
        subs.iter().all(|s| {
            !s.iter().all(|&y| a.join(x, y) == a.top())
                || a.join(x, a.meet_all(s.iter().copied())) == a.top()
        })
    })
}

/// Computes the three flags definitionally and requires all of them to hold,
/// as they must for finite `A`.
pub fn embedding_properties(ext: &ExtensionAlgebra) -> Result<EmbeddingFlags> {
    let a = &ext.base;
    let s = &ext.algebra;
    let inc = &ext.inclusion;
    let essential = s
        .elements()
        .filter(|&u| u != s.top())
        .all(|u| a.elements().any(|x| x != a.top() && s.leq(u, inc[x])));
    let regular = subsets(a.size()).iter().all(|sub| {
        inc[a.meet_all(sub.iter().copied())] == s.meet_all(sub.iter().map(|&x| inc[x]))
            && inc[a.join_all(sub.iter().copied())] == s.join_all(sub.iter().map(|&x| inc[x]))
    });
    let flags = EmbeddingFlags {
        essential,
        regular,
        externally_distributive: externally_distributive(a),
    };
    if !(flags.essential && flags.regular && flags.externally_distributive) {
        return Err(Error::breach(
            "finite embeddings are essential and regular",
            format!("{flags:?}"),
        ));
    }
    Ok(flags)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    pub holds: bool,
    /// Generators of the prime filters cut out by the intersection formula.
    pub formula: Vec<Elem>,
    /// Generators of `Y`.
    pub y: Vec<Elem>,
    pub center_atoms: usize,
    pub witness: Option<String>,
}

/// Over the prime filters `X` of `A`, checks
/// `⋂{â ∪ (X ∖ b̂) : a ∨ b⁺ = 1} = Y`, and that `z ↦ {a : a ≥ z}` maps the
/// atoms of `Z(S(A))` bijectively onto `Y`.
pub fn closure_of_y_witness(ext: &ExtensionAlgebra) -> Result<ClosureVerdict> {
    let a = &ext.base;
    let s = &ext.algebra;
    let xs = prime_filters(a)?;
    let hat =
        |e: Elem| BitSet::from_indices(xs.len(), (0..xs.len()).filter(|&i| xs[i].contains(e)));
    let mut cut = BitSet::full(xs.len());
    for x in a.elements() {
        for b in a.elements() {
            if a.join(x, a.supplement(b)) == a.top() {
                let mut part = hat(b).complement();
                part.union_with(&hat(x));
                cut.intersect_with(&part);
            }
        }
    }
    let formula: Vec<Elem> = cut.iter().map(|i| xs[i].generator).collect();
    let y = ext.embed.min_space.generators();
    let center = s.center();
    let atoms: Vec<Elem> = center
        .iter()
        .filter(|&z| z != s.bottom() && s.order().covers_of_within(s.bottom(), z, &center))
        .collect();
    let mut matched = Vec::new();
    let mut witness = None;
    for &z in &atoms {
        let trace = BitSet::from_indices(
            a.size(),
            a.elements().filter(|&x| s.leq(z, ext.inclusion[x])),
        );
        match ext
            .embed
            .min_space
            .filters
            .iter()
            .position(|f| f.elements == trace)
        {
            Some(i) => matched.push(i),
            None => witness = Some(format!("atom {} traces to no minimal filter", s.label(z))),
        }
    }
    matched.sort_unstable();
    matched.dedup();
    if witness.is_none() && matched.len() != y.len() {
        witness = Some(format!(
            "{} atoms hit {} of {} points",
            atoms.len(),
            matched.len(),
            y.len()
        ));
    }
    if witness.is_none() && formula != y {
        witness = Some(format!("formula gives {formula:?}, Y is {y:?}"));
    }
    Ok(ClosureVerdict {
        holds: witness.is_none(),
        formula,
        y,
        center_atoms: atoms.len(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::build_extension;
    use crate::testing::*;

    #[test]
    fn l5_flags() {
        let e = build_extension(&l5()).unwrap();
        let f = embedding_properties(&e).unwrap();
        assert!(f.essential && f.regular && f.externally_distributive);
        // (1,0) lies below the image of a
        let u = e.element_of_section(&[2, 0]).unwrap();
        assert!(e.algebra.leq(u, e.inclusion[l5().named("a").unwrap()]));
    }

    #[test]
    fn flags_on_fixtures() {
        for (name, a) in fixtures() {
            let e = build_extension(&a).unwrap();
            embedding_properties(&e).unwrap_or_else(|err| panic!("{name}: {err}"));
        }
    }

    #[test]
    fn closure_examples() {
        let l = l5();
        let v = closure_of_y_witness(&build_extension(&l).unwrap()).unwrap();
        assert!(v.holds);
        assert_eq!(v.y, vec![l.named("a").unwrap(), l.named("b").unwrap()]);
        assert_eq!(v.center_atoms, 2);
        let v = closure_of_y_witness(&build_extension(&chain(3)).unwrap()).unwrap();
        assert!(v.holds && v.center_atoms == 1);
        let v = closure_of_y_witness(&build_extension(&b4()).unwrap()).unwrap();
        assert!(v.holds && v.center_atoms == 2);
    }
}
