//! The isomorphism `Δ: S(A) → 𝒢(W_A)` and the word-length-truncated
//! comparison of `V_A` with `W_A`.

use serde::Serialize;

use super::{closed_sets, FrameAlgebra, HeytingFrame, Polarity, DEFAULT_MAX_CLOSED};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::extension::{indicator_sections, ExtensionAlgebra};
use crate::iso::is_isomorphic;
use crate::lattice::HeytingAlgebra;
use crate::order::Poset;
use crate::Elem;

#[derive(Clone, Debug)]
pub struct DeltaIso {
    /// `map[u]` is the element of the frame algebra equal to `Δ(u)`.
    pub map: Vec<Elem>,
}

/// Computes `Δ(u) = {(s,a) : f(s,a) ≤ u}` for every `u ∈ S(A)` and checks:
/// each `Δ(u)` is closed; `Δ` is an order embedding with join- and
/// meet-dense image and, being finite, a bijection; and
/// `(s,a) N (t,b) ⟺ f(s,a) ≤ g(t,b)` pointwise.
pub fn delta_iso(
    ext: &ExtensionAlgebra,
    frame: &HeytingFrame,
    fa: &FrameAlgebra,
) -> Result<DeltaIso> {
    let a = &ext.base;
    let s = &ext.algebra;
    let n = a.size();
    let w = n * n;
    if frame.polarity.n0() != w {
        return Err(Error::breach(
            "frame is W_A",
            format!("|W₀| = {}", frame.polarity.n0()),
        ));
    }
    let (fs, gs): (Vec<Elem>, Vec<Elem>) = (0..w)
        .map(|p| indicator_sections(ext, p / n, p % n))
        .unzip();
    for (p, &f) in fs.iter().enumerate() {
        for (q, &g) in gs.iter().enumerate() {
            if frame.polarity.related(p, q) != s.leq(f, g) {
                return Err(Error::breach(
                    "N agrees with f ≤ g",
                    format!(
                        "({},{}) vs ({},{})",
                        a.label(p / n),
                        a.label(p % n),
                        a.label(q / n),
                        a.label(q % n)
                    ),
                ));
            }
        }
    }
    let mut map = Vec::with_capacity(s.size());
    for u in s.elements() {
        let set = BitSet::from_indices(w, (0..w).filter(|&p| s.leq(fs[p], u)));
        let x = fa
            .element_of(&set)
            .ok_or_else(|| Error::breach("Δ(u) is closed", s.label(u).to_string()))?;
        map.push(x);
    }
    let h = &fa.algebra;
    for u in s.elements() {
        for v in s.elements() {
            if s.leq(u, v) != h.leq(map[u], map[v]) {
                return Err(Error::breach(
                    "Δ is an order embedding",
                    format!("({u}, {v})"),
                ));
            }
        }
    }
    let image = BitSet::from_indices(h.size(), map.iter().copied());
    for x in h.elements() {
        let below = image.iter().filter(|&y| h.leq(y, x));
        let above = image.iter().filter(|&y| h.leq(x, y));
        if h.join_all(below) != x || h.meet_all(above) != x {
            return Err(Error::breach("Δ has dense image", h.label(x).to_string()));
        }
    }
    if !image.is_full() {
        return Err(Error::breach(
            "Δ is onto",
            format!("{} of {}", image.count(), h.size()),
        ));
    }
    Ok(DeltaIso { map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseVerdict {
    pub k: usize,
    pub v_points: usize,
    pub w_points: usize,
    pub surjective: bool,
    pub relation_agrees: bool,
    pub v_closed: usize,
    pub w_closed: usize,
    pub isomorphic: bool,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Multisets of size `0..=k` over `0..letters`, each as a sorted vector.
fn multisets(letters: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for word in &layer {
            let start = word.last().copied().unwrap_or(0);
            for l in start..letters {
                let mut w = word.clone();
                w.push(l);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Builds `V_A` restricted to words of length at most `k` over `A²`, with
/// `(h,a) Q (g,b) ⟺ h* ∨ g* ∨ (a → b) = 1` and `h*` the join of `x → y`
/// over the letters `(x,y)` of `h` (the empty word giving `0`). Checks that
/// `(h,a) ↦ (h*, a)` is onto `W_A` and carries `Q` exactly onto `N`, and that
/// both closed-set lattices are isomorphic.
pub fn truncated_collapse_check(a: &HeytingAlgebra, k: usize) -> Result<CollapseVerdict> {
    let n = a.size();
    let words = multisets(n * n, k);
    let star: Vec<Elem> = words
        .iter()
        .map(|w| a.join_all(w.iter().map(|&l| a.implies(l / n, l % n))))
        .collect();
    let nv = words.len() * n;
    let nw = n * n;
    let collapse = |p: usize| star[p / n] * n + p % n;
    // Q only sees (h*, a), so rows and columns are shared by V points with
    // the same star value and letter.
    let class: Vec<usize> = (0..nv).map(|p| star[p / n] * n + p % n).collect();
    let q = Polarity::from_classes(&class, &class, |p, r| {
        a.join(a.join(star[p / n], star[r / n]), a.implies(p % n, r % n)) == a.top()
    });
    let wp = Polarity::from_fn(nw, nw, |p, r| {
        a.join(a.join(p / n, r / n), a.implies(p % n, r % n)) == a.top()
    });
    let hit = BitSet::from_indices(nw, (0..nv).map(collapse));
    let surjective = hit.is_full();
    let mut witness =
        (!surjective).then(|| format!("{} of {nw} points of W_A reached", hit.count()));
    // Q must be the pullback of N along the collapse: row p of Q is the
    // preimage of row collapse(p) of N.
    let mut preimage: Vec<Option<BitSet>> = vec![None; nw];
    let mut relation_agrees = true;
    for p in 0..nv {
        let c = collapse(p);
        let expected = preimage[c].get_or_insert_with(|| {
            BitSet::from_indices(nv, (0..nv).filter(|&r| wp.related(c, collapse(r))))
        });
        if q.row(p) != expected {
            relation_agrees = false;
            let r = (0..nv)
                .find(|&r| q.related(p, r) != expected.contains(r))
                .unwrap_or(0);
            witness.get_or_insert_with(|| format!("Q and N disagree at V points ({p}, {r})"));
            break;
        }
    }
    let vs = closed_sets(&q, DEFAULT_MAX_CLOSED)?;
    let ws = closed_sets(&wp, DEFAULT_MAX_CLOSED)?;
    let vo = Poset::from_fn(vs.len(), |i, j| vs[i].is_subset(&vs[j]))?;
    let wo = Poset::from_fn(ws.len(), |i, j| ws[i].is_subset(&ws[j]))?;
    let isomorphic = is_isomorphic(&vo, &wo);
    if !isomorphic {
        witness.get_or_insert_with(|| format!("{} vs {} closed sets", vs.len(), ws.len()));
    }
    Ok(CollapseVerdict {
        k,
        v_points: nv,
        w_points: nw,
        surjective,
        relation_agrees,
        v_closed: vs.len(),
        w_closed: ws.len(),
        isomorphic,
        holds: surjective && relation_agrees && isomorphic,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::build_extension;
    use crate::frames::{frame_algebra, galois, hyper_frame};
    use crate::testing::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).len(), 1 + 4 + 10);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn delta_on_fixtures() {
        for a in [chain(2), chain(3), l5(), b4(), two_two_plus_one()] {
            let e = build_extension(&a).unwrap();
            let f = hyper_frame(&a);
            let fa = frame_algebra(&f).unwrap();
            let d = delta_iso(&e, &f, &fa).unwrap();
            assert_eq!(d.map.len(), fa.algebra.size());
        }
    }

    #[test]
    fn delta_of_middle_in_c3() {
        let a = chain(3);
        let e = build_extension(&a).unwrap();
        let f = hyper_frame(&a);
        let fa = frame_algebra(&f).unwrap();
        let d = delta_iso(&e, &f, &fa).unwrap();
        let m = 1;
        let expected = BitSet::from_indices(9, (0..9).filter(|&p| p % 3 <= m || p / 3 == 2));
        assert_eq!(fa.sets[d.map[e.inclusion[m]]], expected);
        // the closure of {(0,m)} is Δ of f(0,m) = m
        let (_, lu) = galois(&f.polarity, &BitSet::from_indices(9, [m]));
        assert_eq!(lu, expected);
    }

    #[test]
    fn collapse_examples() {
        let v = truncated_collapse_check(&chain(2), 1).unwrap();
        assert!(v.holds);
        assert_eq!((v.v_closed, v.w_closed), (2, 2));
        let v = truncated_collapse_check(&chain(3), 2).unwrap();
        assert!(v.holds && v.w_closed == 3);
        let v = truncated_collapse_check(&l5(), 2).unwrap();
        assert!(v.holds && v.w_closed == 9);
    }

    #[test]
    fn empty_words_only_miss_most_of_w() {
        let v = truncated_collapse_check(&chain(3), 0).unwrap();
        assert!(!v.surjective && !v.holds);
    }
}
