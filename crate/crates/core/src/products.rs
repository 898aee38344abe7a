//! Weak Boolean and Boolean product predicates over finite discrete index
//! sets, stalks of the central sheaf and the product form of `A⁺`.
//!
//! On a finite discrete index set every subset is clopen, so equalizers are
//! always clopen and only the patchwork property carries information.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::duality::{central_congruence, subdirect_embed_bounded};
use crate::error::{Error, Result};
use crate::extension::{build_extension_with_limit, DEFAULT_MAX_CARRIER};
use crate::frames::hyper_completion;
use crate::iso::is_isomorphic;
use crate::lattice::HeytingAlgebra;
use crate::Elem;

/// Patchwork is checked over every subset of the index set up to this size.
pub const MAX_PATCHWORK_INDEX: usize = 16;

/// `A ≤ ∏_I A_i` given by coordinate maps.
#[derive(Clone, Debug)]
pub struct SubdirectRepresentation {
    pub algebra: HeytingAlgebra,
    pub index: Vec<String>,
    pub factors: Vec<HeytingAlgebra>,
    /// `coords[i][a]` is the image of `a` in factor `i`.
    pub coords: Vec<Vec<Elem>>,
}

impl SubdirectRepresentation {
    /// Checks that every coordinate map is onto and the tuple map is one-to-one.
    pub fn new(
        algebra: HeytingAlgebra,
        index: Vec<String>,
        factors: Vec<HeytingAlgebra>,
        coords: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        for (i, f) in factors.iter().enumerate() {
            let hit = BitSet::from_indices(f.size(), coords[i].iter().copied());
            if !hit.is_full() {
                return Err(Error::breach("coordinate maps are onto", index[i].clone()));
            }
        }
        let rep = SubdirectRepresentation {
            algebra,
            index,
            factors,
            coords,
        };
        let tuples: HashSet<Vec<Elem>> = rep.algebra.elements().map(|a| rep.tuple(a)).collect();
        if tuples.len() != rep.algebra.size() {
            return Err(Error::breach(
                "the tuple map is one-to-one",
                format!("{} tuples", tuples.len()),
            ));
        }
        Ok(rep)
    }

    pub fn tuple(&self, a: Elem) -> Vec<Elem> {
        self.coords.iter().map(|c| c[a]).collect()
    }

    /// `⟦a = b⟧`
    pub fn equalizer(&self, a: Elem, b: Elem) -> BitSet {
        BitSet::from_indices(
            self.index.len(),
            (0..self.index.len()).filter(|&i| self.coords[i][a] == self.coords[i][b]),
        )
    }
}

/// Atoms of the center.
fn center_atoms(a: &HeytingAlgebra) -> Vec<Elem> {
    let z = a.center();
    z.iter()
        .filter(|&c| c != a.bottom() && z.iter().all(|d| d == a.bottom() || d == c || !a.leq(d, c)))
        .collect()
}

/// `A ≤ ∏_Y A_y`.
pub fn representation_over_y(a: &HeytingAlgebra) -> Result<SubdirectRepresentation> {
    let emb = subdirect_embed_bounded(a, DEFAULT_MAX_CARRIER)?;
    let index = emb
        .min_space
        .generators()
        .iter()
        .map(|&g| format!("↑{}", a.label(g)))
        .collect();
    let (factors, coords) = emb.factors.into_iter().map(|q| (q.algebra, q.map)).unzip();
    SubdirectRepresentation::new(a.clone(), index, factors, coords)
}

/// `A ≤ ∏ A/θ_c` over the atoms `c` of the center, the usual
/// representation over the Stone space of `Z(A)`.
pub fn representation_over_center(a: &HeytingAlgebra) -> Result<SubdirectRepresentation> {
    let mut index = Vec::new();
    let mut factors = Vec::new();
    let mut coords = Vec::new();
    for c in center_atoms(a) {
        let (q, map) = central_congruence(a, c)?.quotient(a)?;
        index.push(format!("↑{}", a.label(c)));
        factors.push(q);
        coords.push(map);
    }
    SubdirectRepresentation::new(a.clone(), index, factors, coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFlags {
    pub equalizers_open: bool,
    pub equalizers_clopen: bool,
    pub patchwork: bool,
    /// `(N, a, b)` with no `c` agreeing with `a` on `N` and with `b` off it.
    pub witness: Option<(Vec<String>, String, String)>,
}

impl ProductFlags {
    pub fn weak_boolean(&self) -> bool {
        self.equalizers_open && self.patchwork
    }

    pub fn boolean(&self) -> bool {
        self.weak_boolean() && self.equalizers_clopen
    }
}

/// The patchwork property, checked definitionally: for every `N ⊆ I` and
/// `a, b ∈ A` some `c` agrees with `a` on `N` and with `b` on `I ∖ N`.
pub fn weak_boolean_product_check(rep: &SubdirectRepresentation) -> Result<ProductFlags> {
    let k = rep.index.len();
    if k > MAX_PATCHWORK_INDEX {
        return Err(Error::ResourceLimit {
            what: "patchwork index set",
            limit: MAX_PATCHWORK_INDEX,
        });
    }
    let a = &rep.algebra;
    let tuples: Vec<Vec<Elem>> = a.elements().map(|x| rep.tuple(x)).collect();
    let image: HashSet<&Vec<Elem>> = tuples.iter().collect();
    let mut witness = None;
    'search: for mask in 0u32..1 << k {
        for x in a.elements() {
            for y in a.elements() {
                let patch: Vec<Elem> = (0..k)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            tuples[x][i]
                        } else {
                            tuples[y][i]
                        }
                    })
                    .collect();
                if !image.contains(&patch) {
                    let n = (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| rep.index[i].clone())
                        .collect();
                    witness = Some((n, a.label(x).to_string(), a.label(y).to_string()));
                    break 'search;
                }
            }
        }
    }
    Ok(ProductFlags {
        equalizers_open: true,
        equalizers_clopen: true,
        patchwork: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatchworkCriterion {
    pub patchwork_over_y: bool,
    pub centrally_supplemented: bool,
    pub holds: bool,
}

/// `A ≤ ∏_Y A_y` is a Boolean product exactly when `A` is centrally
/// supplemented.
pub fn patchwork_criterion(a: &HeytingAlgebra) -> Result<PatchworkCriterion> {
    let flags = weak_boolean_product_check(&representation_over_y(a)?)?;
    let cs = a.is_centrally_supplemented()?.holds;
    Ok(PatchworkCriterion {
        patchwork_over_y: flags.boolean(),
        centrally_supplemented: cs,
        holds: flags.boolean() == cs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stalk {
    /// Label of the center atom of `S(A)`.
    pub atom: String,
    /// Generator of the matching point of `Y`.
    pub point: String,
    pub size: usize,
}

/// For every atom `z` of `Z(S(A))`, builds `S(A)/θ_z` and matches it to the
/// point `y ∈ Y` with `y = {a : z ≤ a}`, checking `S(A)/θ_z ≅ A/θ_y`.
pub fn central_sheaf_stalks(a: &HeytingAlgebra) -> Result<Vec<Stalk>> {
    let ext = build_extension_with_limit(a, DEFAULT_MAX_CARRIER)?;
    let s = &ext.algebra;
    let ys = &ext.embed.min_space.filters;
    let mut out = Vec::new();
    let mut used = BitSet::new(ys.len());
    for z in center_atoms(s) {
        let (stalk, _) = central_congruence(s, z)?.quotient(s)?;
        let trace = BitSet::from_indices(
            a.size(),
            a.elements().filter(|&x| s.leq(z, ext.inclusion[x])),
        );
        let i = ys.iter().position(|f| f.elements == trace).ok_or_else(|| {
            Error::breach("center atoms trace points of Y", s.label(z).to_string())
        })?;
        let factor = &ext.embed.factors[i].algebra;
        if used.contains(i) || !is_isomorphic(stalk.order(), factor.order()) {
            return Err(Error::breach(
                "stalks are the quotients A/θ_y",
                s.label(z).to_string(),
            ));
        }
        used.insert(i);
        out.push(Stalk {
            atom: s.label(z).to_string(),
            point: a.label(ys[i].generator).to_string(),
            size: stalk.size(),
        });
    }
    if !used.is_full() {
        return Err(Error::breach(
            "every point of Y has a stalk",
            format!("{} of {}", used.count(), ys.len()),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HausdorffVerdict {
    pub centrally_supplemented: bool,
    pub boolean_product: bool,
    pub stalks_fsi: bool,
    /// The two sides agree.
    pub holds: bool,
}

/// `A` is centrally supplemented iff its representation over the center is
/// a Boolean product with fsi stalks.
pub fn hausdorff_characterization(a: &HeytingAlgebra) -> Result<HausdorffVerdict> {
    let cs = a.is_centrally_supplemented()?.holds;
    let rep = representation_over_center(a)?;
    let boolean_product = weak_boolean_product_check(&rep)?.boolean();
    let stalks_fsi = rep.factors.iter().all(|f| f.is_fsi());
    Ok(HausdorffVerdict {
        centrally_supplemented: cs,
        boolean_product,
        stalks_fsi,
        holds: cs == (boolean_product && stalks_fsi),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionProduct {
    pub completion_size: usize,
    pub product_size: usize,
}

/// `A⁺ ≅ ∏_Y A_y`.
pub fn hyper_completion_as_product(a: &HeytingAlgebra) -> Result<CompletionProduct> {
    let emb = subdirect_embed_bounded(a, DEFAULT_MAX_CARRIER)?;
    let plus = hyper_completion(a)?;
    if !is_isomorphic(plus.algebra.order(), emb.product.order()) {
        return Err(Error::breach(
            "A⁺ is the product of the A_y",
            format!(
                "|A⁺| = {}, |∏ A_y| = {}",
                plus.algebra.size(),
                emb.product.size()
            ),
        ));
    }
    Ok(CompletionProduct {
        completion_size: plus.algebra.size(),
        product_size: emb.product.size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    #[test]
    fn b4_over_its_center_is_boolean() {
        let rep = representation_over_center(&b4()).unwrap();
        assert_eq!(rep.index.len(), 2);
        assert!(weak_boolean_product_check(&rep).unwrap().boolean());
    }

    #[test]
    fn l5_over_y_fails_patchwork() {
        let rep = representation_over_y(&l5()).unwrap();
        assert_eq!(rep.index, ["↑a", "↑b"]);
        let f = weak_boolean_product_check(&rep).unwrap();
        assert!(f.weak_boolean() == f.patchwork && !f.patchwork);
        assert!(f.witness.is_some());
        let c = patchwork_criterion(&l5()).unwrap();
        assert!(c.holds && !c.centrally_supplemented);
    }

    #[test]
    fn full_product_over_y_patches() {
        let rep = representation_over_y(&c3_by_c3()).unwrap();
        assert!(weak_boolean_product_check(&rep).unwrap().boolean());
    }

    #[test]
    fn equalizers() {
        let a = l5();
        let rep = representation_over_y(&a).unwrap();
        let (m, x) = (a.named("m").unwrap(), a.named("a").unwrap());
        // a and m agree only in the coordinate that collapses everything above m
        assert_eq!(rep.equalizer(m, x).count(), 1);
        assert!(rep.equalizer(x, x).is_full());
    }

    #[test]
    fn stalks() {
        let st = central_sheaf_stalks(&l5()).unwrap();
        assert_eq!(st.len(), 2);
        assert!(st.iter().all(|s| s.size == 3));
        let st = central_sheaf_stalks(&chain(3)).unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].size, 3);
        let st = central_sheaf_stalks(&b4()).unwrap();
        assert_eq!(st.iter().map(|s| s.size).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn hausdorff_examples() {
        let v = hausdorff_characterization(&c3_by_c3()).unwrap();
        assert!(v.holds && v.centrally_supplemented && v.boolean_product && v.stalks_fsi);
        let v = hausdorff_characterization(&l5()).unwrap();
        assert!(v.holds && !v.centrally_supplemented && !v.stalks_fsi);
        let v = hausdorff_characterization(&b4()).unwrap();
        assert!(v.holds && v.centrally_supplemented);
    }

    #[test]
    fn completion_as_product() {
        assert_eq!(
            hyper_completion_as_product(&l5()).unwrap().completion_size,
            9
        );
        assert_eq!(
            hyper_completion_as_product(&chain(3))
                .unwrap()
                .completion_size,
            3
        );
        assert_eq!(
            hyper_completion_as_product(&b4()).unwrap().completion_size,
            4
        );
        for (name, a) in fixtures() {
            let p = hyper_completion_as_product(&a).unwrap();
            assert_eq!(p.completion_size, p.product_size, "{name}");
        }
    }
}
