//! Dedekind–MacNeille completion by cuts, independent of the frame machinery.
//!
//! A cut of a poset `P` is a pair `(L, U)` with `L` the lower bounds of `U`
//! and `U` the upper bounds of `L`. Cuts are enumerated as the closed sets of
//! `X ↦ lower(upper(X))` in lectic order (NextClosure) and stored by their
//! lower sets only.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::order::Poset;
use crate::Elem;

/// `{y : x ≤ y for all x ∈ X}`
pub fn upper_bounds(p: &Poset, x: &BitSet) -> BitSet {
    let mut out = BitSet::full(p.size());
    for i in x.iter() {
        out.intersect_with(p.up_set(i));
    }
    out
}

/// `{y : y ≤ x for all x ∈ X}`
pub fn lower_bounds(p: &Poset, x: &BitSet) -> BitSet {
    let mut out = BitSet::full(p.size());
    for i in x.iter() {
        out.intersect_with(p.down_set(i));
    }
    out
}

fn cut_closure(p: &Poset, x: &BitSet) -> BitSet {
    lower_bounds(p, &upper_bounds(p, x))
}

/// Every cut lower set, in lectic order.
pub fn cuts(p: &Poset) -> Vec<BitSet> {
    let n = p.size();
    let mut out = Vec::new();
    let mut a = cut_closure(p, &BitSet::new(n));
    'next: loop {
        out.push(a.clone());
        for i in (0..n).rev() {
            if a.contains(i) {
                continue;
            }
            let prefix = BitSet::from_indices(n, a.iter().filter(|&j| j < i));
            let mut seed = prefix.clone();
            seed.insert(i);
            let b = cut_closure(p, &seed);
            if b.iter().filter(|&j| j < i).eq(prefix.iter()) {
                a = b;
                continue 'next;
            }
        }
        return out;
    }
}

#[derive(Clone, Debug)]
pub struct DmCompletion {
    pub lattice: FiniteLattice,
    /// Lower set of the cut behind each lattice element.
    pub lowers: Vec<BitSet>,
    /// `x ↦ (↓x, ↑x)`
    pub embedding: Vec<Elem>,
}

impl DmCompletion {
    /// The upper set of the cut behind `e`, recomputed from its lower set.
    pub fn upper(&self, p: &Poset, e: Elem) -> BitSet {
        upper_bounds(p, &self.lowers[e])
    }
}

/// The completion of `p` with elements labelled by their cut lower sets.
pub fn dm_completion(p: &Poset) -> Result<DmCompletion> {
    let labels: Vec<String> = (0..p.size()).map(|i| i.to_string()).collect();
    dm_completion_labeled(p, &labels)
}

/// The completion of a finite lattice, labelled like the input; the
/// embedding is checked to be an isomorphism.
pub fn dm_of_lattice(l: &FiniteLattice) -> Result<DmCompletion> {
    let dm = dm_completion_labeled(l.order(), l.labels())?;
    let n = l.size();
    if dm.lattice.size() != n || (0..n).any(|x| dm.embedding[x] != x) {
        return Err(Error::breach(
            "a finite lattice is its own completion",
            format!("|L| = {n}, |DM(L)| = {}", dm.lattice.size()),
        ));
    }
    Ok(dm)
}

/// Builds the cut lattice ordered by lower-set inclusion and checks that the
/// embedding is an order embedding whose image is join- and meet-dense.
pub fn dm_completion_labeled(p: &Poset, labels: &[String]) -> Result<DmCompletion> {
    let n = p.size();
    let mut found = cuts(p);
    // principal cuts first, in point order, so a lattice keeps its indices
    found.sort_by_cached_key(|c| match (0..n).find(|&x| p.down_set(x) == c) {
        Some(x) => (0, x, vec![]),
        None => (1, c.count(), c.to_vec()),
    });
    let order = Poset::from_fn(found.len(), |i, j| found[i].is_subset(&found[j]))?;
    let names: Vec<String> = found
        .iter()
        .map(|c| match (0..n).find(|&x| p.down_set(x) == c) {
            Some(x) => labels[x].clone(),
            None => format!(
                "{{{}}}",
                c.iter()
                    .map(|i| labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        })
        .collect();
    let (lattice, map) = FiniteLattice::from_poset(&order, Some(names))?;
    let mut lowers = vec![BitSet::new(n); found.len()];
    for (k, c) in found.into_iter().enumerate() {
        lowers[map[k]] = c;
    }
    let by_lower: std::collections::HashMap<&BitSet, Elem> =
        lowers.iter().enumerate().map(|(e, c)| (c, e)).collect();
    let embedding: Vec<Elem> = (0..n)
        .map(|x| {
            by_lower
                .get(p.down_set(x))
                .copied()
                .ok_or_else(|| Error::breach("principal down-sets are cuts", labels[x].clone()))
        })
        .collect::<Result<_>>()?;
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) != lattice.leq(embedding[x], embedding[y]) {
                return Err(Error::breach(
                    "x ↦ ↓x is an order embedding",
                    format!("({x}, {y})"),
                ));
            }
        }
    }
    for e in lattice.elements() {
        let upper = upper_bounds(p, &lowers[e]);
        if lattice.join_all(lowers[e].iter().map(|x| embedding[x])) != e {
            return Err(Error::breach(
                "the embedding is join-dense",
                lattice.label(e).to_string(),
            ));
        }
        if lattice.meet_all(upper.iter().map(|x| embedding[x])) != e {
            return Err(Error::breach(
                "the embedding is meet-dense",
                lattice.label(e).to_string(),
            ));
        }
    }
    Ok(DmCompletion {
        lattice,
        lowers,
        embedding,
    })
}
