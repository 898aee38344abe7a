//! Polarities, Heyting frames and their lattices of Galois-closed sets.
//!
//! A polarity `(W₀, W₁, N)` induces `U(X) = {u : ∀w ∈ X, w N u}` and
//! `L(Y) = {w : ∀u ∈ Y, w N u}`; the closed subsets of `W₀` are the fixed
//! points of `L∘U`. Every closed set is an intersection of principal sets
//! `L({u})`, which is how [`closed_sets`] enumerates them.

mod delta;
mod frame;
mod properties;

pub use delta::{delta_iso, truncated_collapse_check, CollapseVerdict, DeltaIso};
pub use frame::{
    frame_algebra, frame_axioms, frame_axioms_exhaustive, hyper_frame, macneille_frame, AxiomCheck,
    FrameAlgebra, HeytingFrame,
};
pub use properties::{
    completion_properties, completion_properties_with_limit, hyper_completion, PropertyItem,
    PropertyReport, DEFAULT_MAX_SECOND_COMPLETION,
};

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default bound on the number of closed sets.
pub const DEFAULT_MAX_CLOSED: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct Polarity {
    /// `rows[w] = {u : w N u}`
    rows: Vec<BitSet>,
    /// `cols[u] = {w : w N u}`
    cols: Vec<BitSet>,
}

impl Polarity {
    pub fn from_fn(n0: usize, n1: usize, related: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let rows: Vec<BitSet> = (0..n0)
            .into_par_iter()
            .map(|w| BitSet::from_indices(n1, (0..n1).filter(|&u| related(w, u))))
            .collect();
        let mut cols = vec![BitSet::new(n0); n1];
        for (w, row) in rows.iter().enumerate() {
            for u in row.iter() {
                cols[u].insert(w);
            }
        }
        Polarity { rows, cols }
    }

    /// Like [`Polarity::from_fn`] when `related(w, u)` depends only on
    /// `class0[w]` and `class1[u]`: each distinct row and column is
    /// evaluated once, on the first point of its class.
    pub fn from_classes(
        class0: &[usize],
        class1: &[usize],
        related: impl Fn(usize, usize) -> bool + Sync,
    ) -> Self {
        fn spread(
            class_a: &[usize],
            class_b: &[usize],
            related: &(impl Fn(usize, usize) -> bool + Sync),
        ) -> Vec<BitSet> {
            let mut first: HashMap<usize, usize> = HashMap::new();
            for (i, &c) in class_b.iter().enumerate() {
                first.entry(c).or_insert(i);
            }
            let mut memo: HashMap<usize, BitSet> = HashMap::new();
            class_a
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    memo.entry(c)
                        .or_insert_with(|| {
                            let hits: HashSet<usize> = first
                                .iter()
                                .filter(|&(_, &j)| related(i, j))
                                .map(|(&cb, _)| cb)
                                .collect();
                            BitSet::from_indices(
                                class_b.len(),
                                (0..class_b.len()).filter(|&j| hits.contains(&class_b[j])),
                            )
                        })
                        .clone()
                })
                .collect()
        }
        let rows = spread(class0, class1, &related);
        let cols = spread(class1, class0, &|u, w| related(w, u));
        Polarity { rows, cols }
    }

    pub fn n0(&self) -> usize {
        self.rows.len()
    }

    pub fn n1(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn related(&self, w: usize, u: usize) -> bool {
        self.rows[w].contains(u)
    }

    /// `U(X)`
    pub fn upper(&self, x: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n1());
        for w in x.iter() {
            out.intersect_with(&self.rows[w]);
        }
        out
    }

    /// `L(Y)`
    pub fn lower(&self, y: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n0());
        for u in y.iter() {
            out.intersect_with(&self.cols[u]);
        }
        out
    }

    /// `{u : w N u}`
    pub fn row(&self, w: usize) -> &BitSet {
        &self.rows[w]
    }

    /// `L(U(X))`
    pub fn closure(&self, x: &BitSet) -> BitSet {
        self.lower(&self.upper(x))
    }

    /// The principal closed set `L({u})`.
    pub fn principal(&self, u: usize) -> &BitSet {
        &self.cols[u]
    }

    /// `N` as a 0/1 matrix, rows indexed by `W₀`.
    pub fn relation_matrix(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| (0..self.n1()).map(|u| r.contains(u) as u8).collect())
            .collect()
    }
}

/// `(U(X), L(U(X)))`
pub fn galois(p: &Polarity, x: &BitSet) -> (BitSet, BitSet) {
    let u = p.upper(x);
    let lu = p.lower(&u);
    (u, lu)
}

/// Checks that `L∘U` is extensive, monotone and idempotent: over every
/// subset when `|W₀| ≤ 12`, otherwise over `samples` seeded random subsets
/// and their one-point extensions.
pub fn check_closure_operator(p: &Polarity, samples: usize, seed: u64) -> Result<()> {
    let n = p.n0();
    let subsets: Vec<BitSet> = if n <= 12 {
        (0u32..1 << n)
            .map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let density = rng.gen_range(0.0..0.3);
                BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)))
            })
            .collect()
    };
    for x in &subsets {
        let c = p.closure(x);
        if !x.is_subset(&c) {
            return Err(Error::breach(
                "L∘U is extensive",
                format!("{:?}", x.to_vec()),
            ));
        }
        if p.closure(&c) != c {
            return Err(Error::breach(
                "L∘U is idempotent",
                format!("{:?}", x.to_vec()),
            ));
        }
        if let Some(w) = (0..n).find(|&w| !x.contains(w)) {
            let mut bigger = x.clone();
            bigger.insert(w);
            if !c.is_subset(&p.closure(&bigger)) {
                return Err(Error::breach(
                    "L∘U is monotone",
                    format!("{:?} + {w}", x.to_vec()),
                ));
            }
        }
    }
    Ok(())
}

/// All Galois-closed subsets of `W₀`, sorted by size then members.
///
/// Seeds with `W₀` and the distinct principal sets `L({u})` and closes under
/// intersection with principal sets, which reaches every intersection of
/// principal sets, hence every closed set.
pub fn closed_sets(p: &Polarity, limit: usize) -> Result<Vec<BitSet>> {
    let mut principals: Vec<BitSet> = Vec::new();
    let mut seen_p = HashSet::new();
    for u in 0..p.n1() {
        if seen_p.insert(p.principal(u).clone()) {
            principals.push(p.principal(u).clone());
        }
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut family = Vec::new();
    let mut queue = vec![BitSet::full(p.n0())];
    queue.extend(principals.iter().cloned());
    while let Some(x) = queue.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        if seen.len() > limit {
            return Err(Error::ResourceLimit {
                what: "closed sets",
                limit,
            });
        }
        for q in &principals {
            let y = x.intersection(q);
            if !seen.contains(&y) {
                queue.push(y);
            }
        }
        family.push(x);
    }
    family.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_polarity_matches_pointwise() {
        let class0: Vec<usize> = (0..12).map(|w| w % 4).collect();
        let class1: Vec<usize> = (0..9).map(|u| u / 3).collect();
        let rel = |w: usize, u: usize| (w % 4 + u / 3) % 3 != 1;
        let a = Polarity::from_fn(12, 9, rel);
        let b = Polarity::from_classes(&class0, &class1, rel);
        for w in 0..12 {
            assert_eq!(a.row(w), b.row(w));
        }
        for u in 0..9 {
            assert_eq!(a.principal(u), b.principal(u));
        }
    }

    /// The polarity of ≤ on a 3-chain.
    fn chain_leq() -> Polarity {
        Polarity::from_fn(3, 3, |w, u| w <= u)
    }

    #[test]
    fn galois_identities() {
        let p = chain_leq();
        let (u, lu) = galois(&p, &BitSet::new(3));
        assert!(u.is_full());
        assert_eq!(lu, p.lower(&BitSet::full(3)));
        let (_, lu) = galois(&p, &BitSet::full(3));
        assert!(lu.is_full());
        check_closure_operator(&p, 0, 0).unwrap();
    }

    #[test]
    fn closed_sets_of_a_chain_are_its_downsets() {
        let sets = closed_sets(&chain_leq(), 100).unwrap();
        let v: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(v, vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn closed_set_limit() {
        let p = Polarity::from_fn(4, 4, |w, u| w != u);
        assert_eq!(closed_sets(&p, 100).unwrap().len(), 16);
        assert!(matches!(
            closed_sets(&p, 5),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn relation_matrix_dump() {
        assert_eq!(chain_leq().relation_matrix()[1], vec![0, 1, 1]);
    }
}
