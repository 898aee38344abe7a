//! Test algebras: every downset algebra of a small poset, the named
//! fixtures, and a seeded random sampler.

pub mod fixtures;
mod io;

pub use io::{
    load, load_algebra_file, parse_algebra_json, save, to_dot, write_algebra_json, write_poset_json,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::duality::min_space;
use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::lattice::{downset_algebra, HeytingAlgebra};
use crate::order::Poset;

/// Largest poset size accepted by [`enumerate_posets`].
pub const MAX_POINTS: usize = 6;

/// Summary facts recorded with every entry and re-derived on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub size: usize,
    pub y: usize,
    pub centrally_supplemented: bool,
    pub fsi: bool,
}

impl Metadata {
    pub fn compute(a: &HeytingAlgebra) -> Result<Self> {
        Ok(Metadata {
            size: a.size(),
            y: min_space(a)?.len(),
            centrally_supplemented: a.is_centrally_supplemented()?.holds,
            fsi: a.is_fsi(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    /// The poset whose downset algebra is `algebra`.
    pub poset: Poset,
    pub algebra: HeytingAlgebra,
    pub meta: Metadata,
}

impl CorpusEntry {
    pub fn from_poset(id: impl Into<String>, poset: Poset) -> Result<Self> {
        let algebra = downset_algebra(&poset);
        let meta = Metadata::compute(&algebra)?;
        Ok(CorpusEntry {
            id: id.into(),
            poset,
            algebra,
            meta,
        })
    }

    /// Wraps an existing algebra; its source poset is the poset of
    /// join-irreducibles.
    pub fn from_algebra(id: impl Into<String>, algebra: HeytingAlgebra) -> Result<Self> {
        let poset = algebra.order().restrict(&algebra.join_irreducibles());
        let meta = Metadata::compute(&algebra)?;
        Ok(CorpusEntry {
            id: id.into(),
            poset,
            algebra,
            meta,
        })
    }
}

/// All posets on exactly `n` points up to isomorphism.
///
/// Every poset has a natural labelling (`i < j` whenever `i` is strictly
/// below `j`), so it suffices to scan the relations on the strict upper
/// triangle, keep the transitive ones and drop isomorphic repeats by
/// canonical form. Output is sorted by number of comparable pairs, then by
/// canonical form.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_POINTS {
        return Err(Error::ResourceLimit {
            what: "poset enumeration size",
            limit: MAX_POINTS,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<(usize, Vec<u8>, Poset)> = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[i].insert(j);
            }
        }
        let transitive = (0..n).all(|i| up[i].iter().all(|j| up[j].is_subset(&up[i])));
        if !transitive {
            continue;
        }
        let p = Poset::from_up_rows(up).expect("natural labelling is antisymmetric");
        let code = canonical_form(&p);
        if seen.insert(code.clone()) {
            out.push((mask.count_ones() as usize, code, p));
        }
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, p)| p).collect())
}

/// One entry per poset on `1..=max_points` points, with ids `p{n}-{k}`.
pub fn generate(max_points: usize) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for n in 1..=max_points {
        for (k, p) in enumerate_posets(n)?.into_iter().enumerate() {
            entries.push(CorpusEntry::from_poset(format!("p{n}-{k:02}"), p)?);
        }
    }
    Ok(entries)
}

/// The named fixtures as corpus entries.
pub fn fixture_entries() -> Result<Vec<CorpusEntry>> {
    fixtures::fixtures()
        .into_iter()
        .map(|(name, a)| CorpusEntry::from_algebra(name, a))
        .collect()
}

/// A random poset on `n` points: each pair `i < j` is related with
/// probability `density`, then transitively closed.
pub fn random_poset(n: usize, density: f64, rng: &mut impl Rng) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_generating_pairs(n, &pairs).expect("closure of a DAG is a partial order")
}

/// `count` seeded random posets with between 1 and `max_points` points.
pub fn sample_posets(count: usize, max_points: usize, seed: u64) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_points.max(1));
            let density = rng.gen_range(0.1..0.7);
            random_poset(n, density, &mut rng)
        })
        .collect()
}
