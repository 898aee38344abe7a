//! Order isomorphism search and canonical forms for small posets.
//!
//! Lattice isomorphisms are exactly order isomorphisms, so every structural
//! comparison in the crate reduces to the routines here.

use crate::order::Poset;

/// Per-point invariant preserved by any order isomorphism.
fn signature(p: &Poset, ranks: &[usize], i: usize) -> (usize, usize, usize, usize, usize) {
    let lower_covers = p.covers_of_dual(i);
    (
        ranks[i],
        p.down_set(i).count(),
        p.up_set(i).count(),
        lower_covers,
        p.covers_of(i).len(),
    )
}

impl Poset {
    fn covers_of_dual(&self, i: usize) -> usize {
        self.down_set(i)
            .iter()
            .filter(|&j| j != i)
            .filter(|&j| {
                !self
                    .down_set(i)
                    .iter()
                    .any(|k| k != i && k != j && self.leq(j, k))
            })
            .count()
    }
}

/// Finds a bijection `f` with `x ≤ y ⟺ f(x) ≤ f(y)`, if one exists.
///
/// Backtracking over signature-compatible candidates, assigning points in
/// rank order so that order constraints prune early.
pub fn find_isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let (ra, rb) = (a.ranks(), b.ranks());
    let sa: Vec<_> = (0..n).map(|i| signature(a, &ra, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, &rb, i)).collect();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (ra[i], i));
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sb[j] == sa[i]).collect())
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &order, 0, &candidates, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Poset,
    b: &Poset,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let fw = map[w];
            a.leq(x, w) == b.leq(y, fw) && a.leq(w, x) == b.leq(fw, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, order, depth + 1, candidates, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Checks that `map` is an order isomorphism from `a` onto `b`.
pub fn is_order_isomorphism(a: &Poset, b: &Poset, map: &[usize]) -> bool {
    let n = a.size();
    if n != b.size() || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    (0..n).all(|i| (0..n).all(|j| a.leq(i, j) == b.leq(map[i], map[j])))
}

/// Canonical encoding of a small poset: the lexicographically least
/// upper-triangle adjacency string over all signature-respecting relabellings.
///
/// Two posets are isomorphic iff their canonical forms agree. Intended for
/// enumeration at n ≤ 7; the search is factorial within signature classes.
pub fn canonical_form(p: &Poset) -> Vec<u8> {
    let n = p.size();
    let ranks = p.ranks();
    let sig: Vec<_> = (0..n).map(|i| signature(p, &ranks, i)).collect();
    let mut classes: Vec<usize> = (0..n).collect();
    classes.sort_by_key(|&i| sig[i]);
    // group points by signature; the canonical labelling sorts classes by signature
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &classes {
        match groups.last_mut() {
            Some(g) if sig[g[0]] == sig[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm = Vec::with_capacity(n);
    permute_groups(p, &groups, 0, &mut perm, &mut best);
    best.unwrap_or_default()
}

fn permute_groups(
    p: &Poset,
    groups: &[Vec<usize>],
    g: usize,
    acc: &mut Vec<usize>,
    best: &mut Option<Vec<u8>>,
) {
    if g == groups.len() {
        let n = acc.len();
        let mut code = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                code.push(p.leq(acc[i], acc[j]) as u8);
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut group = groups[g].clone();
    heap_permutations(&mut group, &mut |perm| {
        let base = acc.len();
        acc.extend_from_slice(perm);
        permute_groups(p, groups, g + 1, acc, best);
        acc.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, visit);
    }
    let k = items.len();
    go(k, items, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vee() -> Poset {
        Poset::from_generating_pairs(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn finds_isomorphism_between_relabellings() {
        let p = vee();
        let q = p.relabel(&[1, 2, 0]);
        let f = find_isomorphism(&p, &q).unwrap();
        assert!(is_order_isomorphism(&p, &q, &f));
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn distinguishes_vee_from_wedge() {
        let vee = vee();
        let wedge = vee.dual();
        assert!(!is_isomorphic(&vee, &wedge));
        assert_ne!(canonical_form(&vee), canonical_form(&wedge));
    }

    #[test]
    fn heap_visits_all_permutations() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = std::collections::BTreeSet::new();
        heap_permutations(&mut items, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }
}
