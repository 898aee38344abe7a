//! Heyting frames `(W₀, W₁, N, ∘, ε, ⇝)` and the Heyting algebra of their
//! closed sets.
//!
//! The frame conditions, numbered as in [`Error::FrameAxiomViolation`]:
//!
//! 1. `w ∘ v N u ⟺ v N w ⇝ u`
//! 2. `w ∘ w N u ⟹ w N u`
//! 3. `ε N u ⟹ w N u`
//! 4. `w ∘ v N u ⟹ v ∘ w N u`

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{closed_sets, Polarity, DEFAULT_MAX_CLOSED};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::HeytingAlgebra;
use crate::order::Poset;
use crate::Elem;

type BinOp = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;

/// Frames with `|W₀|` up to this size get exhaustive axiom checks.
pub const EXHAUSTIVE_AXIOMS: usize = 256;
/// Frames with `|W₀|` up to this size get an exhaustive check of the
/// closed-set implication formula.
pub const EXHAUSTIVE_IMPLICATION: usize = 1024;
const SAMPLE_SEED: u64 = 0x5eed;
const AXIOM_SAMPLES: usize = 200_000;

#[derive(Clone)]
pub struct HeytingFrame {
    pub polarity: Polarity,
    compose: BinOp,
    arrow: BinOp,
    pub unit: usize,
}

impl fmt::Debug for HeytingFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeytingFrame")
            .field("w0", &self.polarity.n0())
            .field("w1", &self.polarity.n1())
            .field("unit", &self.unit)
            .finish()
    }
}

impl HeytingFrame {
    pub fn new(
        polarity: Polarity,
        compose: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
        unit: usize,
        arrow: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        HeytingFrame {
            polarity,
            compose: Arc::new(compose),
            arrow: Arc::new(arrow),
            unit,
        }
    }

    /// `w ∘ v`
    #[inline]
    pub fn compose(&self, w: usize, v: usize) -> usize {
        (self.compose)(w, v)
    }

    /// `w ⇝ u`
    #[inline]
    pub fn arrow(&self, w: usize, u: usize) -> usize {
        (self.arrow)(w, u)
    }

    /// The same frame with a different `⇝`; used to build faulty frames.
    pub fn with_arrow(
        &self,
        arrow: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        HeytingFrame {
            arrow: Arc::new(arrow),
            ..self.clone()
        }
    }
}

/// `(A, A, ≤, ∧, 1, →)`
pub fn macneille_frame(a: &HeytingAlgebra) -> HeytingFrame {
    let n = a.size();
    let pol = Polarity::from_fn(n, n, |w, u| a.leq(w, u));
    let (am, aa) = (Arc::new(a.clone()), Arc::new(a.clone()));
    HeytingFrame::new(
        pol,
        move |w, v| am.meet(w, v),
        a.top(),
        move |w, u| aa.implies(w, u),
    )
}

/// `W_A` on `A²`, with `(s,a)` stored at `s·|A| + a`:
/// `(s,a) N (t,b) ⟺ s ∨ t ∨ (a → b) = 1`, `(s,a) ∘ (t,b) = (s ∨ t, a ∧ b)`,
/// unit `(0,1)`, `(s,a) ⇝ (t,b) = (s ∨ t, a → b)`.
pub fn hyper_frame(a: &HeytingAlgebra) -> HeytingFrame {
    let n = a.size();
    let pol = Polarity::from_fn(n * n, n * n, |w, u| {
        let (s, x, t, y) = (w / n, w % n, u / n, u % n);
        a.join(a.join(s, t), a.implies(x, y)) == a.top()
    });
    let (am, aa) = (Arc::new(a.clone()), Arc::new(a.clone()));
    HeytingFrame::new(
        pol,
        move |w, v| am.join(w / n, v / n) * n + am.meet(w % n, v % n),
        a.bottom() * n + a.top(),
        move |w, u| aa.join(w / n, u / n) * n + aa.implies(w % n, u % n),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub exhaustive: bool,
    pub instances: u64,
}

fn violation(axiom: u8, w: usize, v: usize, u: usize) -> Error {
    Error::FrameAxiomViolation { axiom, w, v, u }
}

fn check_triple(f: &HeytingFrame, w: usize, v: usize, u: usize) -> Result<()> {
    let n = &f.polarity;
    let wv = n.related(f.compose(w, v), u);
    if wv != n.related(v, f.arrow(w, u)) {
        return Err(violation(1, w, v, u));
    }
    if wv && !n.related(f.compose(v, w), u) {
        return Err(violation(4, w, v, u));
    }
    Ok(())
}

fn check_pair(f: &HeytingFrame, w: usize, u: usize) -> Result<()> {
    let n = &f.polarity;
    if n.related(f.compose(w, w), u) && !n.related(w, u) {
        return Err(violation(2, w, w, u));
    }
    if n.related(f.unit, u) && !n.related(w, u) {
        return Err(violation(3, w, f.unit, u));
    }
    Ok(())
}

/// All four frame conditions over every instance. The reported witness is
/// the first failure in `(w, v, u)` order.
pub fn frame_axioms_exhaustive(f: &HeytingFrame) -> Result<AxiomCheck> {
    let (n0, n1) = (f.polarity.n0(), f.polarity.n1());
    let found = (0..n0).into_par_iter().find_map_first(|w| {
        for u in 0..n1 {
            if let Err(e) = check_pair(f, w, u) {
                return Some(e);
            }
        }
        for v in 0..n0 {
            for u in 0..n1 {
                if let Err(e) = check_triple(f, w, v, u) {
                    return Some(e);
                }
            }
        }
        None
    });
    match found {
        Some(e) => Err(e),
        None => Ok(AxiomCheck {
            exhaustive: true,
            instances: (n0 * n1 + n0 * n0 * n1) as u64,
        }),
    }
}

/// Exhaustive for `|W₀| ≤ 256`; above that all pair instances plus a seeded
/// sample of triples.
pub fn frame_axioms(f: &HeytingFrame) -> Result<AxiomCheck> {
    let (n0, n1) = (f.polarity.n0(), f.polarity.n1());
    if n0 <= EXHAUSTIVE_AXIOMS {
        return frame_axioms_exhaustive(f);
    }
    (0..n0)
        .into_par_iter()
        .try_for_each(|w| (0..n1).try_for_each(|u| check_pair(f, w, u)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..AXIOM_SAMPLES {
        let (w, v, u) = (
            rng.gen_range(0..n0),
            rng.gen_range(0..n0),
            rng.gen_range(0..n1),
        );
        check_triple(f, w, v, u)?;
    }
    Ok(AxiomCheck {
        exhaustive: false,
        instances: (n0 * n1 + AXIOM_SAMPLES) as u64,
    })
}

/// The closed sets of a frame as a Heyting algebra.
#[derive(Clone, Debug)]
pub struct FrameAlgebra {
    pub algebra: HeytingAlgebra,
    /// The closed set behind each element.
    pub sets: Vec<BitSet>,
    pub axioms: AxiomCheck,
    /// Whether `X → Y = {w : ∀v ∈ X, v ∘ w ∈ Y}` was checked for every pair.
    pub implication_exhaustive: bool,
    index: HashMap<BitSet, Elem>,
}

impl FrameAlgebra {
    pub fn element_of(&self, set: &BitSet) -> Option<Elem> {
        self.index.get(set).copied()
    }
}

/// Checks the frame axioms, enumerates the closed sets and orders them by
/// inclusion. Verifies that meets are intersections, joins are closures of
/// unions, the Heyting implication of the resulting lattice equals
/// `{w : ∀v ∈ X, v ∘ w ∈ Y}`, and that the tables pass validation.
pub fn frame_algebra(f: &HeytingFrame) -> Result<FrameAlgebra> {
    let axioms = frame_axioms(f)?;
    let p = &f.polarity;
    let sets = closed_sets(p, DEFAULT_MAX_CLOSED)?;
    let order = Poset::from_fn(sets.len(), |i, j| sets[i].is_subset(&sets[j]))?;
    let (mut algebra, map) = HeytingAlgebra::from_poset(&order, None)?;
    algebra.set_labels((0..sets.len()).map(|i| format!("X{i}")).collect());
    let mut by_elem = vec![BitSet::new(p.n0()); sets.len()];
    for (k, s) in sets.into_iter().enumerate() {
        by_elem[map[k]] = s;
    }
    let sets = by_elem;
    let index: HashMap<BitSet, Elem> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let c = sets.len();

    let pairs: Vec<(Elem, Elem)> = if p.n0() * c * c <= 1 << 24 {
        (0..c).flat_map(|x| (0..c).map(move |y| (x, y))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..64)
            .map(|_| (rng.gen_range(0..c), rng.gen_range(0..c)))
            .collect()
    };
    for &(x, y) in &pairs {
        if sets[algebra.meet(x, y)] != sets[x].intersection(&sets[y]) {
            return Err(Error::breach(
                "closed-set meet is intersection",
                format!("({x}, {y})"),
            ));
        }
        if sets[algebra.join(x, y)] != p.closure(&sets[x].union(&sets[y])) {
            return Err(Error::breach(
                "closed-set join is LU(union)",
                format!("({x}, {y})"),
            ));
        }
    }

    let n0 = p.n0();
    let implication_exhaustive = n0 <= EXHAUSTIVE_IMPLICATION;
    if implication_exhaustive {
        let compose: Vec<u32> = (0..n0 * n0)
            .map(|k| f.compose(k / n0, k % n0) as u32)
            .collect();
        // reach[y][w] = {v : v ∘ w ∈ Y}
        let reach: Vec<Vec<BitSet>> = (0..c)
            .into_par_iter()
            .map(|y| {
                (0..n0)
                    .map(|w| {
                        BitSet::from_indices(
                            n0,
                            (0..n0).filter(|&v| sets[y].contains(compose[v * n0 + w] as usize)),
                        )
                    })
                    .collect()
            })
            .collect();
        for x in 0..c {
            for y in 0..c {
                let formula =
                    BitSet::from_indices(n0, (0..n0).filter(|&w| sets[x].is_subset(&reach[y][w])));
                if formula != sets[algebra.implies(x, y)] {
                    return Err(Error::breach(
                        "closed-set implication formula",
                        format!("({x}, {y})"),
                    ));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..4096 {
            let (x, y, w) = (
                rng.gen_range(0..c),
                rng.gen_range(0..c),
                rng.gen_range(0..n0),
            );
            let member = sets[x].iter().all(|v| sets[y].contains(f.compose(v, w)));
            if member != sets[algebra.implies(x, y)].contains(w) {
                return Err(Error::breach(
                    "closed-set implication formula",
                    format!("({x}, {y}) at {w}"),
                ));
            }
        }
    }
    algebra.validate()?;
    Ok(FrameAlgebra {
        algebra,
        sets,
        axioms,
        implication_exhaustive,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::testing::*;

    #[test]
    fn macneille_frames_recover_the_algebra() {
        for a in [chain(2), chain(3), l5(), b4()] {
            let f = macneille_frame(&a);
            assert!(frame_axioms_exhaustive(&f).is_ok());
            let fa = frame_algebra(&f).unwrap();
            assert!(is_isomorphic(fa.algebra.order(), a.order()));
        }
    }

    #[test]
    fn hyper_frame_relation_examples() {
        let c3 = chain(3);
        let f = hyper_frame(&c3);
        let (m, one, zero) = (1, 2, 0);
        assert!(!f.polarity.related(m * 3 + one, m * 3 + zero));
        for w in 0..9 {
            assert!(f.polarity.related(w, w));
        }
        assert_eq!(hyper_frame(&l5()).polarity.n0(), 25);
    }

    #[test]
    fn hyper_frame_algebras() {
        let sizes: Vec<usize> = [chain(2), chain(3), l5(), b4()]
            .iter()
            .map(|a| frame_algebra(&hyper_frame(a)).unwrap().algebra.size())
            .collect();
        assert_eq!(sizes, vec![2, 3, 9, 4]);
        let fa = frame_algebra(&hyper_frame(&l5())).unwrap();
        assert!(is_isomorphic(fa.algebra.order(), c3_by_c3().order()));
        assert!(fa.axioms.exhaustive && fa.implication_exhaustive);
    }

    #[test]
    fn faulty_arrow_violates_axiom_one() {
        let f = hyper_frame(&chain(3)).with_arrow(|_, _| 0);
        let err = frame_algebra(&f).unwrap_err();
        assert!(matches!(err, Error::FrameAxiomViolation { axiom: 1, .. }));
    }
}
