//! Prime filters, minimal prime filters, congruences and quotients.
//!
//! In a finite distributive lattice every filter is principal and the prime
//! filters are exactly `↑j` for join-irreducible `j`; the minimal ones are
//! `↑j` for the maximal join-irreducibles. The index space `Y` of the product
//! representation is always listed in increasing order of generator.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{is_heyting_hom, FiniteLattice, HeytingAlgebra};
use crate::order::Poset;
use crate::Elem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFilter {
    /// The least element of the filter, a join-irreducible.
    pub generator: Elem,
    pub elements: BitSet,
}

impl PrimeFilter {
    pub fn contains(&self, a: Elem) -> bool {
        self.elements.contains(a)
    }
}

/// Definitional test: `set` is an upward closed, meet closed, proper, prime
/// subset of `a`.
pub fn is_prime_filter(a: &FiniteLattice, set: &BitSet) -> bool {
    if set.contains(a.bottom()) || !set.contains(a.top()) || !a.order().is_upper_set(set) {
        return false;
    }
    for x in set.iter() {
        for y in set.iter() {
            if !set.contains(a.meet(x, y)) {
                return false;
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if set.contains(a.join(x, y)) && !set.contains(x) && !set.contains(y) {
                return false;
            }
        }
    }
    true
}

/// All prime filters, by increasing generator index. The shortcut through
/// join-irreducibles is cross-checked against the definition applied to
/// every (necessarily principal) filter.
pub fn prime_filters(a: &HeytingAlgebra) -> Result<Vec<PrimeFilter>> {
    let ji = a.join_irreducibles();
    let mut out = Vec::with_capacity(ji.len());
    for x in a.elements() {
        let up = a.upset_of(x);
        let prime = is_prime_filter(a, &up);
        if prime != ji.contains(&x) {
            return Err(Error::breach(
                "prime filters are the principal filters of join-irreducibles",
                format!("↑{} prime={prime}", a.label(x)),
            ));
        }
        if prime {
            out.push(PrimeFilter {
                generator: x,
                elements: up,
            });
        }
    }
    Ok(out)
}

/// The minimal prime filters `Y`.
#[derive(Clone, Debug)]
pub struct MinSpace {
    pub filters: Vec<PrimeFilter>,
}

impl MinSpace {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.filters.iter().map(|f| f.generator).collect()
    }

    /// `{y ∈ Y : a ∈ y}`
    pub fn hat(&self, a: Elem) -> BitSet {
        BitSet::from_indices(
            self.len(),
            self.filters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains(a))
                .map(|(i, _)| i),
        )
    }
}

/// Minimal prime filters, verified against the finite forms of the
/// minimal-filter properties:
///
/// - each is minimal and every prime filter contains one;
/// - for `y ∈ Y` and `a ∈ y` some `s ∉ y` has `a ∨ s = 1`;
/// - co-dense elements lie in no `y ∈ Y`;
/// - exactly one of `a`, `a⁺` lies in each `y`;
/// - when `a` is centrally supplemented, `Y` is the set of filters generated
///   by ultrafilters of the center.
pub fn min_space(a: &HeytingAlgebra) -> Result<MinSpace> {
    let all = prime_filters(a)?;
    let filters: Vec<PrimeFilter> = all
        .iter()
        .filter(|f| {
            !all.iter()
                .any(|g| g.elements != f.elements && g.elements.is_subset(&f.elements))
        })
        .cloned()
        .collect();
    let ms = MinSpace { filters };
    for f in &all {
        if !ms.filters.iter().any(|y| y.elements.is_subset(&f.elements)) {
            return Err(Error::breach(
                "prime filter above a minimal one",
                a.label(f.generator),
            ));
        }
    }
    let codense = a.classify_elements().codense;
    for y in &ms.filters {
        for x in y.elements.iter() {
            if !a
                .elements()
                .any(|s| !y.contains(s) && a.join(x, s) == a.top())
            {
                return Err(Error::breach(
                    "minimal filter element has a co-witness outside",
                    format!("y=↑{}, a={}", a.label(y.generator), a.label(x)),
                ));
            }
        }
        if let Some(c) = codense.iter().find(|&c| y.contains(c)) {
            return Err(Error::breach(
                "co-dense elements avoid Y",
                format!("{} ∈ ↑{}", a.label(c), a.label(y.generator)),
            ));
        }
        for x in a.elements() {
            if y.contains(x) == y.contains(a.supplement(x)) {
                return Err(Error::breach(
                    "exactly one of a, a⁺ in each minimal filter",
                    format!("y=↑{}, a={}", a.label(y.generator), a.label(x)),
                ));
            }
        }
    }
    if a.is_centrally_supplemented()?.holds {
        let center = a.center();
        let mut from_center: Vec<Elem> = center
            .iter()
            .filter(|&z| z != a.bottom() && a.order().covers_of_within(a.bottom(), z, &center))
            .collect();
        from_center.sort_unstable();
        if from_center != ms.generators() {
            return Err(Error::breach(
                "Y is generated by ultrafilters of the center",
                format!(
                    "center atoms {from_center:?} vs generators {:?}",
                    ms.generators()
                ),
            ));
        }
    }
    Ok(ms)
}

/// A partition of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    /// Class number of each element; classes are numbered by least member.
    class_of: Vec<usize>,
    blocks: Vec<Vec<Elem>>,
}

impl Congruence {
    /// Partition induced by an equivalence relation, which is checked.
    pub fn from_relation(n: usize, related: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<Elem>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let block: Vec<Elem> = (a..n).filter(|&b| related(a, b)).collect();
            for &b in &block {
                if class_of[b] != usize::MAX {
                    return Err(Error::breach(
                        "relation is an equivalence",
                        format!("{a} ~ {b}"),
                    ));
                }
                class_of[b] = id;
            }
            blocks.push(block);
        }
        let c = Congruence { class_of, blocks };
        for a in 0..n {
            for b in 0..n {
                if related(a, b) != c.same(a, b) {
                    return Err(Error::breach(
                        "relation is an equivalence",
                        format!("{a} ~ {b}"),
                    ));
                }
            }
        }
        Ok(c)
    }

    /// Kernel of a map.
    pub fn kernel(map: &[Elem]) -> Self {
        Self::from_relation(map.len(), |a, b| map[a] == map[b]).expect("kernels are equivalences")
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn same(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_total(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Compatibility with ∧ and ∨; the error names the first failure.
    pub fn check_lattice(&self, a: &FiniteLattice) -> Result<(), String> {
        for x in a.elements() {
            for y in a.elements() {
                if !self.same(x, y) {
                    continue;
                }
                for z in a.elements() {
                    if !self.same(a.meet(x, z), a.meet(y, z)) {
                        return Err(format!("∧ at ({x}, {y}, {z})"));
                    }
                    if !self.same(a.join(x, z), a.join(y, z)) {
                        return Err(format!("∨ at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Compatibility with ∧, ∨, → and, if requested, ⁺.
    pub fn check_heyting(&self, a: &HeytingAlgebra, with_supplement: bool) -> Result<(), String> {
        self.check_lattice(a)?;
        for x in a.elements() {
            for y in a.elements() {
                if !self.same(x, y) {
                    continue;
                }
                for z in a.elements() {
                    if !self.same(a.implies(x, z), a.implies(y, z))
                        || !self.same(a.implies(z, x), a.implies(z, y))
                    {
                        return Err(format!("→ at ({x}, {y}, {z})"));
                    }
                }
                if with_supplement && !self.same(a.supplement(x), a.supplement(y)) {
                    return Err(format!("⁺ at ({x}, {y})"));
                }
            }
        }
        Ok(())
    }

    /// Quotient lattice ordered by `[a] ≤ [b] ⟺ a ∧ b ~ a`, with the
    /// canonical map. Classes are labelled `0`/`1` for the bounds and by
    /// their least member otherwise.
    pub fn lattice_quotient(&self, a: &FiniteLattice) -> Result<(FiniteLattice, Vec<Elem>)> {
        self.check_lattice(a)
            .map_err(|w| Error::breach("lattice congruence", w))?;
        let reps: Vec<Elem> = self.blocks.iter().map(|b| b[0]).collect();
        let order = Poset::from_fn(reps.len(), |i, j| {
            self.same(a.meet(reps[i], reps[j]), reps[i])
        })?;
        let labels = self
            .blocks
            .iter()
            .map(|b| {
                if b.contains(&a.top()) {
                    a.label(a.top()).to_string()
                } else {
                    a.label(b[0]).to_string()
                }
            })
            .collect();
        let (lat, map) = FiniteLattice::from_poset(&order, Some(labels))?;
        let canonical = (0..a.size()).map(|x| map[self.class_of[x]]).collect();
        Ok((lat, canonical))
    }

    /// Heyting quotient with the canonical map, verified to be a homomorphism.
    pub fn quotient(&self, a: &HeytingAlgebra) -> Result<(HeytingAlgebra, Vec<Elem>)> {
        self.check_heyting(a, false)
            .map_err(|w| Error::breach("Heyting congruence", w))?;
        let (lat, map) = self.lattice_quotient(a)?;
        let q = HeytingAlgebra::from_lattice(lat)?;
        is_heyting_hom(a, &q, &map, false)
            .map_err(|w| Error::breach("quotient map is a homomorphism", w))?;
        Ok((q, map))
    }
}

/// A quotient algebra with its canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub congruence: Congruence,
    pub algebra: HeytingAlgebra,
    pub map: Vec<Elem>,
}

/// `a θ_y b ⟺ a ∧ c = b ∧ c` for some `c ∈ y`.
pub fn filter_congruence(a: &HeytingAlgebra, y: &PrimeFilter) -> Result<Congruence> {
    Congruence::from_relation(a.size(), |x, z| {
        y.elements.iter().any(|c| a.meet(x, c) == a.meet(z, c))
    })
}

/// `A / θ_y`. For `y` minimal the result is checked to be fsi.
pub fn quotient_by_filter(a: &HeytingAlgebra, y: &PrimeFilter) -> Result<Quotient> {
    let congruence = filter_congruence(a, y)?;
    let (algebra, map) = congruence.quotient(a)?;
    if !algebra.is_fsi() {
        return Err(Error::breach(
            "quotient by a prime filter is fsi",
            format!("↑{}", a.label(y.generator)),
        ));
    }
    Ok(Quotient {
        congruence,
        algebra,
        map,
    })
}

/// `a θ_c b ⟺ a ∧ c = b ∧ c` for central `c`.
pub fn central_congruence(a: &HeytingAlgebra, c: Elem) -> Result<Congruence> {
    if a.complement(c).is_none() {
        return Err(Error::NotCentral(c));
    }
    let theta = Congruence::from_relation(a.size(), |x, z| a.meet(x, c) == a.meet(z, c))?;
    theta
        .check_heyting(a, true)
        .map_err(|w| Error::breach("central congruence compatible with → and ⁺", w))?;
    Ok(theta)
}

/// `A ≤ ∏_Y A_y`.
#[derive(Clone, Debug)]
pub struct SubdirectEmbedding {
    pub min_space: MinSpace,
    pub factors: Vec<Quotient>,
    pub product: HeytingAlgebra,
    /// Coordinates of every product element.
    pub tuples: Vec<Vec<Elem>>,
    /// `embedding[a]` is the product element `(a/θ_y)_y`.
    pub embedding: Vec<Elem>,
    index: HashMap<Vec<Elem>, Elem>,
}

impl SubdirectEmbedding {
    pub fn element_of(&self, tuple: &[Elem]) -> Option<Elem> {
        self.index.get(tuple).copied()
    }

    /// Product size computed from the factors without building anything.
    pub fn product_size(factors: &[Quotient]) -> usize {
        factors.iter().map(|q| q.algebra.size()).product()
    }
}

/// Builds the factors, the product and the tuple map, and verifies that the
/// map is an injective Heyting homomorphism, each projection is onto, and
/// central supplements are sent to product supplements.
pub fn subdirect_embed(a: &HeytingAlgebra) -> Result<SubdirectEmbedding> {
    subdirect_embed_bounded(a, usize::MAX)
}

/// As [`subdirect_embed`], refusing products larger than `max_product`.
pub fn subdirect_embed_bounded(
    a: &HeytingAlgebra,
    max_product: usize,
) -> Result<SubdirectEmbedding> {
    let ms = min_space(a)?;
    let factors = ms
        .filters
        .iter()
        .map(|y| quotient_by_filter(a, y))
        .collect::<Result<Vec<_>>>()?;
    let size = factors
        .iter()
        .try_fold(1usize, |acc, q| acc.checked_mul(q.algebra.size()))
        .unwrap_or(usize::MAX);
    if size > max_product {
        return Err(Error::ResourceLimit {
            what: "product carrier",
            limit: max_product,
        });
    }
    let refs: Vec<&HeytingAlgebra> = factors.iter().map(|q| &q.algebra).collect();
    let (product, tuples) = HeytingAlgebra::product(&refs)?;
    let index: HashMap<Vec<Elem>, Elem> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let embedding: Vec<Elem> = a
        .elements()
        .map(|x| index[&factors.iter().map(|q| q.map[x]).collect::<Vec<_>>()])
        .collect();
    if !crate::lattice::is_injective_map(&embedding) {
        return Err(Error::breach(
            "subdirect embedding is injective",
            format!("{embedding:?}"),
        ));
    }
    is_heyting_hom(a, &product, &embedding, false)
        .map_err(|w| Error::breach("subdirect embedding is a homomorphism", w))?;
    for (i, q) in factors.iter().enumerate() {
        let hit = BitSet::from_indices(q.algebra.size(), a.elements().map(|x| q.map[x]));
        if !hit.is_full() {
            return Err(Error::breach(
                "coordinate projection is onto",
                format!("coordinate {i}"),
            ));
        }
    }
    let center = a.center();
    for x in a.elements() {
        let s = a.supplement(x);
        if center.contains(s) && embedding[s] != product.supplement(embedding[x]) {
            return Err(Error::breach(
                "central supplements are preserved",
                a.label(x).to_string(),
            ));
        }
    }
    Ok(SubdirectEmbedding {
        min_space: ms,
        factors,
        product,
        tuples,
        embedding,
        index,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StoneVerdict {
    pub holds: bool,
    pub coregular: usize,
    pub y: usize,
    pub witness: Option<String>,
}

/// `CoRg(A) ≅ 2^Y` via `a ↦ {y : a ∈ y}`.
pub fn coregular_minspace_duality(a: &HeytingAlgebra) -> Result<StoneVerdict> {
    let ms = min_space(a)?;
    let coregular = a.classify_elements().coregular.to_vec();
    let y = ms.len();
    let fail = |w: String| StoneVerdict {
        holds: false,
        coregular: coregular.len(),
        y,
        witness: Some(w),
    };
    if y >= usize::BITS as usize || coregular.len() != 1usize << y {
        return Ok(fail(format!("|CoRg| = {} but |Y| = {y}", coregular.len())));
    }
    let hats: Vec<BitSet> = coregular.iter().map(|&x| ms.hat(x)).collect();
    for i in 0..coregular.len() {
        for j in 0..coregular.len() {
            let le = a.leq(coregular[i], coregular[j]);
            if le != hats[i].is_subset(&hats[j]) {
                return Ok(fail(format!(
                    "order not reflected at ({}, {})",
                    a.label(coregular[i]),
                    a.label(coregular[j])
                )));
            }
        }
    }
    Ok(StoneVerdict {
        holds: true,
        coregular: coregular.len(),
        y,
        witness: None,
    })
}

impl Poset {
    /// Whether `hi` covers `lo` inside the subset `within`.
    pub(crate) fn covers_of_within(&self, lo: usize, hi: usize, within: &BitSet) -> bool {
        lo != hi
            && self.leq(lo, hi)
            && !within
                .iter()
                .any(|m| m != lo && m != hi && self.leq(lo, m) && self.leq(m, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::testing::*;

    fn gens(a: &HeytingAlgebra, fs: &[PrimeFilter]) -> Vec<String> {
        fs.iter()
            .map(|f| a.label(f.generator).to_string())
            .collect()
    }

    #[test]
    fn prime_filter_examples() {
        let c3 = chain(3);
        let pf = prime_filters(&c3).unwrap();
        assert_eq!(gens(&c3, &pf), vec!["m", "1"]);
        assert!(pf[1].elements.is_subset(&pf[0].elements));

        let l = l5();
        let pf = prime_filters(&l).unwrap();
        assert_eq!(gens(&l, &pf), vec!["m", "a", "b"]);

        let b = b4();
        let pf = prime_filters(&b).unwrap();
        assert_eq!(gens(&b, &pf), vec!["p", "q"]);
    }

    #[test]
    fn min_space_examples() {
        let c3 = chain(3);
        assert_eq!(gens(&c3, &min_space(&c3).unwrap().filters), vec!["1"]);
        let l = l5();
        assert_eq!(gens(&l, &min_space(&l).unwrap().filters), vec!["a", "b"]);
        let b8 = crate::lattice::downset_algebra(&Poset::antichain(3));
        assert_eq!(min_space(&b8).unwrap().len(), 3);
    }

    #[test]
    fn l5_quotient_at_a() {
        let l = l5();
        let ms = min_space(&l).unwrap();
        let q = quotient_by_filter(&l, &ms.filters[0]).unwrap();
        let named = |s: &str| l.named(s).unwrap();
        let blocks: Vec<Vec<&str>> = q
            .congruence
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| l.label(x)).collect())
            .collect();
        assert_eq!(blocks, vec![vec!["0"], vec!["m", "b"], vec!["a", "1"]]);
        assert!(is_isomorphic(q.algebra.order(), chain(3).order()));
        assert_eq!(q.map[named("b")], q.map[named("m")]);
    }

    #[test]
    fn chain_and_boolean_quotients() {
        let c3 = chain(3);
        let ms = min_space(&c3).unwrap();
        let q = quotient_by_filter(&c3, &ms.filters[0]).unwrap();
        assert!(q.congruence.is_identity());
        let b = b4();
        let ms = min_space(&b).unwrap();
        let q = quotient_by_filter(&b, &ms.filters[0]).unwrap();
        assert_eq!(q.algebra.size(), 2);
    }

    #[test]
    fn l5_subdirect_embedding() {
        let l = l5();
        let e = subdirect_embed(&l).unwrap();
        assert_eq!(e.product.size(), 9);
        let coords: Vec<String> = l
            .elements()
            .map(|x| e.product.label(e.embedding[x]).to_string())
            .collect();
        assert_eq!(coords, vec!["(0,0)", "(m,m)", "(1,m)", "(m,1)", "(1,1)"]);
    }

    #[test]
    fn chain_and_boolean_embeddings() {
        let e = subdirect_embed(&chain(3)).unwrap();
        assert_eq!(e.embedding, vec![0, 1, 2]);
        let e = subdirect_embed(&b4()).unwrap();
        assert_eq!(e.product.size(), 4);
        assert!(crate::lattice::is_injective_map(&e.embedding));
    }

    #[test]
    fn central_congruences() {
        let b = b4();
        let p = b.named("p").unwrap();
        let t = central_congruence(&b, p).unwrap();
        assert_eq!(t.blocks().len(), 2);
        assert_eq!(t.quotient(&b).unwrap().0.size(), 2);
        assert!(central_congruence(&b, b.top()).unwrap().is_identity());
        assert!(central_congruence(&b, b.bottom()).unwrap().is_total());
        let l = l5();
        assert!(matches!(
            central_congruence(&l, l.named("a").unwrap()),
            Err(Error::NotCentral(_))
        ));
    }

    #[test]
    fn coregular_duality() {
        for a in [l5(), chain(3), b4(), two_by_three()] {
            assert!(coregular_minspace_duality(&a).unwrap().holds);
        }
        let v = coregular_minspace_duality(&l5()).unwrap();
        assert_eq!((v.coregular, v.y), (4, 2));
    }
}
