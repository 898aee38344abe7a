//! The centrally supplemented extension `S(A)`: the supplemented Heyting
//! subalgebra of `∏_Y A_y` generated by the image of `A`.
//!
//! Elements of the product are *sections*, tuples indexed by `Y` in the
//! order fixed by [`crate::duality::MinSpace`]. An [`ExtensionAlgebra`]
//! carries both views: a standalone [`HeytingAlgebra`] for `S(A)` and the
//! section of each of its elements.

mod hom;
pub(crate) mod props;

pub use hom::{co_annihilator, extend_s_hom, is_s_homomorphism, SHomVerdict};
pub use props::{closure_of_y_witness, embedding_properties, ClosureVerdict, EmbeddingFlags};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::duality::{subdirect_embed_bounded, Congruence, SubdirectEmbedding};
use crate::error::{Error, Result};
use crate::lattice::{is_bounded_lattice_hom, is_heyting_hom, HeytingAlgebra};
use crate::Elem;

/// Default bound on the number of sections.
pub const DEFAULT_MAX_CARRIER: usize = 4096;

#[derive(Clone, Debug)]
pub struct ExtensionAlgebra {
    pub base: HeytingAlgebra,
    pub embed: SubdirectEmbedding,
    /// `S(A)` as an algebra in its own right.
    pub algebra: HeytingAlgebra,
    /// Product element behind each element of `algebra`.
    pub to_product: Vec<Elem>,
    from_product: Vec<Elem>,
    /// `inclusion[a]` is the element of `algebra` representing `a`.
    pub inclusion: Vec<Elem>,
}

impl ExtensionAlgebra {
    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    /// Coordinates of `u`, one per minimal prime filter.
    pub fn section(&self, u: Elem) -> &[Elem] {
        &self.embed.tuples[self.to_product[u]]
    }

    pub fn element_of_section(&self, tuple: &[Elem]) -> Option<Elem> {
        let p = self.embed.element_of(tuple)?;
        let u = self.from_product[p];
        (u != usize::MAX).then_some(u)
    }

    pub fn y_len(&self) -> usize {
        self.embed.factors.len()
    }

    fn factor(&self, y: usize) -> &HeytingAlgebra {
        &self.embed.factors[y].algebra
    }

    /// Coordinate of `a ∈ A` at `y`.
    pub fn coordinate(&self, a: Elem, y: usize) -> Elem {
        self.embed.factors[y].map[a]
    }

    /// The section with value `top` on `set` and `bottom` elsewhere.
    pub fn indicator(&self, set: &BitSet) -> Elem {
        let tuple: Vec<Elem> = (0..self.y_len())
            .map(|y| {
                let f = self.factor(y);
                if set.contains(y) {
                    f.top()
                } else {
                    f.bottom()
                }
            })
            .collect();
        self.element_of_section(&tuple)
            .expect("indicator sections lie in S(A)")
    }

    /// `{y : u(y) = 1}`
    pub fn top_set(&self, u: Elem) -> BitSet {
        let s = self.section(u);
        BitSet::from_indices(
            self.y_len(),
            (0..self.y_len()).filter(|&y| s[y] == self.factor(y).top()),
        )
    }
}

/// `S(A)` with the default carrier bound.
pub fn build_extension(a: &HeytingAlgebra) -> Result<ExtensionAlgebra> {
    build_extension_with_limit(a, DEFAULT_MAX_CARRIER)
}

/// Builds `S(A)` and verifies: the product supplement is `ind(u < 1)`; the
/// carrier is the whole product; `S(A)` is centrally supplemented; and
/// `S(S(A)) = S(A)`.
pub fn build_extension_with_limit(
    a: &HeytingAlgebra,
    max_carrier: usize,
) -> Result<ExtensionAlgebra> {
    let ext = build_unverified(a, max_carrier)?;
    let product = &ext.embed.product;
    for u in product.elements() {
        let t = &ext.embed.tuples[u];
        let ind: Vec<Elem> = t
            .iter()
            .enumerate()
            .map(|(y, &x)| {
                let f = ext.factor(y);
                if x == f.top() {
                    f.bottom()
                } else {
                    f.top()
                }
            })
            .collect();
        if ext.embed.element_of(&ind) != Some(product.supplement(u)) {
            return Err(Error::breach(
                "product supplement is ind(u<1)",
                product.label(u).to_string(),
            ));
        }
    }
    if ext.size() != product.size() {
        return Err(Error::breach(
            "S(A) is the whole product",
            format!("{} of {} sections", ext.size(), product.size()),
        ));
    }
    if let Some((x, y)) = ext.algebra.dual_stone_witness() {
        return Err(Error::breach(
            "S(A) is centrally supplemented",
            format!("({}, {})", ext.algebra.label(x), ext.algebra.label(y)),
        ));
    }
    let again = build_unverified(&ext.algebra, max_carrier)?;
    if again.size() != ext.size() || !crate::lattice::is_injective_map(&again.inclusion) {
        return Err(Error::breach(
            "S(S(A)) = S(A)",
            format!("|S(S(A))| = {} vs |S(A)| = {}", again.size(), ext.size()),
        ));
    }
    Ok(ext)
}

/// Least-fixpoint closure of the image of `A` under ∧, ∨, → and ⁺ of the
/// product, without the post-checks.
pub(crate) fn build_unverified(a: &HeytingAlgebra, max_carrier: usize) -> Result<ExtensionAlgebra> {
    let embed = subdirect_embed_bounded(a, max_carrier)?;
    let p = &embed.product;
    let mut inside = BitSet::new(p.size());
    let mut members: Vec<Elem> = Vec::new();
    let mut fresh: Vec<Elem> = Vec::new();
    for &x in &embed.embedding {
        if !inside.contains(x) {
            inside.insert(x);
            members.push(x);
            fresh.push(x);
        }
    }
    while !fresh.is_empty() {
        let mut next = Vec::new();
        let add = |z: Elem, inside: &mut BitSet, next: &mut Vec<Elem>| {
            if !inside.contains(z) {
                inside.insert(z);
                next.push(z);
            }
        };
        for &u in &fresh {
            add(p.supplement(u), &mut inside, &mut next);
            for &v in &members {
                add(p.meet(u, v), &mut inside, &mut next);
                add(p.join(u, v), &mut inside, &mut next);
                add(p.implies(u, v), &mut inside, &mut next);
                add(p.implies(v, u), &mut inside, &mut next);
            }
        }
        if inside.count() > max_carrier {
            return Err(Error::ResourceLimit {
                what: "S(A) carrier",
                limit: max_carrier,
            });
        }
        members.extend(next.iter().copied());
        fresh = next;
    }
    let (sub, to_sub) = p.sublattice(&inside)?;
    let algebra = HeytingAlgebra::from_lattice(sub)?;
    let mut to_product = vec![0; algebra.size()];
    for u in inside.iter() {
        to_product[to_sub[u]] = u;
    }
    is_heyting_hom(&algebra, p, &to_product, true)
        .map_err(|w| Error::breach("S(A) is a supplemented subalgebra of the product", w))?;
    let inclusion = embed.embedding.iter().map(|&x| to_sub[x]).collect();
    Ok(ExtensionAlgebra {
        base: a.clone(),
        embed,
        algebra,
        to_product,
        from_product: to_sub,
        inclusion,
    })
}

/// `(f(s,a), g(s,a))` where `f(s,a) = a ∧ ind(s<1)` and
/// `g(s,a) = (a ∧ ind(s<1)) ∨ ind(s=1)`.
pub fn indicator_sections(ext: &ExtensionAlgebra, s: Elem, a: Elem) -> (Elem, Elem) {
    let n = ext.y_len();
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    for y in 0..n {
        let q = ext.factor(y);
        let (sy, ay) = (ext.coordinate(s, y), ext.coordinate(a, y));
        if sy == q.top() {
            f.push(q.bottom());
            g.push(q.top());
        } else {
            f.push(ay);
            g.push(ay);
        }
    }
    (
        ext.element_of_section(&f).expect("f(s,a) lies in S(A)"),
        ext.element_of_section(&g).expect("g(s,a) lies in S(A)"),
    )
}

/// `ψ(a) = ind(a = 1)` for every `a ∈ A`, as elements of `S(A)`.
pub fn psi(ext: &ExtensionAlgebra) -> Vec<Elem> {
    ext.base
        .elements()
        .map(|a| ext.indicator(&ext.top_set(ext.inclusion[a])))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinguished {
    /// `D(A) = {ind(a=1)}`
    pub d: BitSet,
    /// Boolean closure of `D(A)` inside the center of `S(A)`.
    pub b: BitSet,
}

/// `D(A)` and `B(A)`; checks that `D(A)` is a bounded sublattice of the
/// center and that `B(A)` is the whole center of `S(A)`.
pub fn distinguished_sublattices(ext: &ExtensionAlgebra) -> Result<Distinguished> {
    let s = &ext.algebra;
    let center = s.center();
    let d = BitSet::from_indices(s.size(), psi(ext));
    if !d.is_subset(&center)
        || !d.contains(s.bottom())
        || !d.contains(s.top())
        || !s.is_closed_under_meet_join(&d)
    {
        return Err(Error::breach(
            "D(A) is a bounded sublattice of the center",
            format!("{d:?}"),
        ));
    }
    let mut b = d.clone();
    loop {
        let mut next = b.clone();
        for x in b.iter() {
            next.insert(s.supplement(x));
            for y in b.iter() {
                next.insert(s.meet(x, y));
                next.insert(s.join(x, y));
            }
        }
        if next == b {
            break;
        }
        b = next;
    }
    if b != center {
        return Err(Error::breach(
            "B(A) is the center of S(A)",
            format!("|B| = {}, |Z| = {}", b.count(), center.count()),
        ));
    }
    Ok(Distinguished { d, b })
}

/// `u = ⋁ aᵢ ∧ eᵢ` with `eᵢ` a partition of unity in the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub blocks: Vec<Elem>,
    pub coefficients: Vec<Elem>,
}

/// Deterministic normal form. If `u` is the image of some `a` the partition
/// is `{⊤}` with the least such `a`. Otherwise elements of `A` are scanned in
/// index order and each contributes the block of not yet covered coordinates
/// where it agrees with `u`.
pub fn normal_form(ext: &ExtensionAlgebra, u: Elem) -> Result<NormalForm> {
    let s = &ext.algebra;
    let a = &ext.base;
    let nf = if let Some(x) = a.elements().find(|&x| ext.inclusion[x] == u) {
        NormalForm {
            blocks: vec![s.top()],
            coefficients: vec![x],
        }
    } else {
        let target = ext.section(u).to_vec();
        let mut covered = BitSet::new(ext.y_len());
        let mut nf = NormalForm {
            blocks: Vec::new(),
            coefficients: Vec::new(),
        };
        for x in a.elements() {
            let block = BitSet::from_indices(
                ext.y_len(),
                (0..ext.y_len())
                    .filter(|&y| !covered.contains(y) && ext.coordinate(x, y) == target[y]),
            );
            if !block.is_empty() {
                covered.union_with(&block);
                nf.blocks.push(ext.indicator(&block));
                nf.coefficients.push(x);
            }
        }
        if !covered.is_full() {
            return Err(Error::breach(
                "coordinates have preimages",
                s.label(u).to_string(),
            ));
        }
        nf
    };
    let center = s.center();
    for (i, &e) in nf.blocks.iter().enumerate() {
        if e == s.bottom() || !center.contains(e) {
            return Err(Error::breach(
                "partition blocks are nonzero central",
                s.label(e).to_string(),
            ));
        }
        for &f in &nf.blocks[i + 1..] {
            if s.meet(e, f) != s.bottom() {
                return Err(Error::breach(
                    "partition blocks are disjoint",
                    s.label(u).to_string(),
                ));
            }
        }
    }
    if s.join_all(nf.blocks.iter().copied()) != s.top() {
        return Err(Error::breach(
            "partition joins to the top",
            s.label(u).to_string(),
        ));
    }
    let value = s.join_all(
        nf.blocks
            .iter()
            .zip(&nf.coefficients)
            .map(|(&e, &x)| s.meet(ext.inclusion[x], e)),
    );
    if value != u {
        return Err(Error::breach(
            "normal form evaluates to u",
            s.label(u).to_string(),
        ));
    }
    Ok(nf)
}

#[derive(Clone, Debug)]
pub struct PsiTheta {
    pub psi: Vec<Elem>,
    /// `c θ_A d ⟺ ∀a (a ∨ c = 1 ⟺ a ∨ d = 1)`
    pub theta: Congruence,
}

/// `ψ`, `θ_A`, and the checks `ker ψ = θ_A`, `A/θ_A ≅ D(A)`.
pub fn psi_and_theta(ext: &ExtensionAlgebra) -> Result<PsiTheta> {
    let a = &ext.base;
    let s = &ext.algebra;
    let psi = psi(ext);
    is_bounded_lattice_hom(a, s, &psi)
        .map_err(|w| Error::breach("ψ is a bounded lattice homomorphism", w))?;
    let theta = Congruence::from_relation(a.size(), |c, d| {
        a.elements()
            .all(|x| (a.join(x, c) == a.top()) == (a.join(x, d) == a.top()))
    })?;
    let kernel = Congruence::kernel(&psi);
    if kernel != theta {
        return Err(Error::breach(
            "ker ψ = θ_A",
            format!("{:?} vs {:?}", kernel.blocks(), theta.blocks()),
        ));
    }
    let (q, map) = theta.lattice_quotient(a)?;
    let d = BitSet::from_indices(s.size(), psi.iter().copied());
    let (dl, to_d) = s.sublattice(&d)?;
    let mut iso = vec![usize::MAX; q.size()];
    for x in a.elements() {
        iso[map[x]] = to_d[psi[x]];
    }
    if !crate::iso::is_order_isomorphism(q.order(), dl.order(), &iso) {
        return Err(Error::breach("A/θ_A ≅ D(A)", format!("{iso:?}")));
    }
    Ok(PsiTheta { psi, theta })
}
