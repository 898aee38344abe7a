use super::HeytingAlgebra;
use crate::bitset::BitSet;
use crate::order::Poset;

/// The lattice of downsets of `p` ordered by inclusion.
pub fn downset_algebra(p: &Poset) -> HeytingAlgebra {
    downset_algebra_with_sets(p).0
}

/// As [`downset_algebra`], also returning the downset behind each element.
pub fn downset_algebra_with_sets(p: &Poset) -> (HeytingAlgebra, Vec<BitSet>) {
    let sets = downsets(p);
    let labels = sets
        .iter()
        .map(|s| {
            let pts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    let order = Poset::from_fn(sets.len(), |i, j| sets[i].is_subset(&sets[j]))
        .expect("inclusion is a partial order");
    let (alg, map) = HeytingAlgebra::from_poset(&order, Some(labels))
        .expect("downset lattices are distributive");
    let mut by_elem = vec![BitSet::new(p.size()); sets.len()];
    for (k, s) in sets.into_iter().enumerate() {
        by_elem[map[k]] = s;
    }
    (alg, by_elem)
}

/// All downsets, generated by extending along a linear extension.
fn downsets(p: &Poset) -> Vec<BitSet> {
    let n = p.size();
    let mut out = vec![BitSet::new(n)];
    // a point may be added to a downset once everything strictly below it is present
    let mut frontier = vec![BitSet::new(n)];
    let mut seen = std::collections::HashSet::new();
    seen.insert(BitSet::new(n));
    while let Some(d) = frontier.pop() {
        for i in 0..n {
            if !d.contains(i) && p.down_set(i).iter().all(|j| j == i || d.contains(j)) {
                let mut next = d.clone();
                next.insert(i);
                if seen.insert(next.clone()) {
                    out.push(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    out.sort_by_key(|s| (s.count(), s.to_vec()));
    out
}
