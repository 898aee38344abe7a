//! Corpus-wide property checks, negative controls, and the single-algebra
//! `analyze`, `complete` and `check` reports.

use std::collections::HashSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::corpus::{self, fixtures, CorpusEntry, Metadata};
use crate::duality::{
    coregular_minspace_duality, min_space, subdirect_embed_bounded, SubdirectEmbedding,
};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension_with_limit, closure_of_y_witness, distinguished_sublattices,
    embedding_properties, extend_s_hom, is_s_homomorphism, normal_form, psi_and_theta,
    ExtensionAlgebra, DEFAULT_MAX_CARRIER,
};
use crate::frames::{
    check_closure_operator, completion_properties_with_limit, delta_iso, frame_algebra,
    frame_axioms, hyper_frame, macneille_frame, truncated_collapse_check, FrameAlgebra,
    DEFAULT_MAX_SECOND_COMPLETION,
};
use crate::iso::{canonical_form, is_isomorphic};
use crate::lattice::{FiniteLattice, HeytingAlgebra};
use crate::macneille::{dm_completion, dm_of_lattice};
use crate::products::{
    central_sheaf_stalks, hausdorff_characterization, hyper_completion_as_product,
    patchwork_criterion,
};
use crate::report::{Check, Report, Verdict};
use crate::terms::{
    bd2_equivalence_check, closure_experiment, hsp_chain, library, named, satisfies, Equation,
};
use crate::Elem;

/// Unlabelled posets on `1..=6` points.
pub const POSET_COUNTS: [usize; 6] = [1, 2, 5, 16, 63, 318];

/// A deliberately broken input, used to show the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// An L5 copy with one wrong implication entry.
    CorruptImplies,
    /// The pentagon offered as a Heyting algebra.
    Pentagon,
    /// `W_{L5}` with `⇝` replaced by a projection.
    FaultyFrame,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_points: usize,
    pub seed: u64,
    /// Extra random posets added to the corpus.
    pub samples: usize,
    pub sample_points: usize,
    pub max_carrier: usize,
    /// Largest algebra for the truncated `V_A` comparison.
    pub collapse_max_size: usize,
    pub collapse_k: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_points: 4,
            seed: 0,
            samples: 0,
            sample_points: 5,
            max_carrier: DEFAULT_MAX_CARRIER,
            collapse_max_size: 8,
            collapse_k: 2,
            fault: None,
        }
    }
}

/// The enumerated posets, the fixtures and any random samples.
pub fn suite_corpus(cfg: &SuiteConfig) -> Result<Vec<CorpusEntry>> {
    let mut entries = corpus::generate(cfg.max_points)?;
    entries.extend(corpus::fixture_entries()?);
    for (k, p) in corpus::sample_posets(cfg.samples, cfg.sample_points, cfg.seed)
        .into_iter()
        .enumerate()
    {
        entries.push(CorpusEntry::from_poset(format!("r{}-{k:02}", cfg.seed), p)?);
    }
    Ok(entries)
}

fn run(
    out: &mut Vec<Check>,
    section: &str,
    name: &str,
    subject: &str,
    body: impl FnOnce() -> Result<Verdict>,
) {
    out.push(Check::run(section, name, subject, body));
}

fn skip(out: &mut Vec<Check>, section: &str, name: &str, subject: &str, why: &str) {
    run(out, section, name, subject, || {
        Ok(Verdict::Skip(why.to_string()))
    });
}

fn labels(a: &FiniteLattice, set: impl IntoIterator<Item = Elem>) -> Vec<String> {
    set.into_iter().map(|e| a.label(e).to_string()).collect()
}

fn lattice_checks(e: &CorpusEntry, out: &mut Vec<Check>) -> bool {
    let (a, id) = (&e.algebra, e.id.as_str());
    let mut valid = false;
    run(out, "lattice", "tables validate", id, || {
        a.validate()?;
        valid = true;
        Ok(Verdict::Pass)
    });
    if !valid {
        return false;
    }
    run(out, "lattice", "metadata matches recomputation", id, || {
        let m = Metadata::compute(a)?;
        Ok(Verdict::expect(
            m == e.meta,
            || json!({ "stored": e.meta, "computed": m }),
        ))
    });
    run(
        out,
        "lattice",
        "central supplement criteria agree",
        id,
        || {
            let cs = a.is_centrally_supplemented()?;
            let ds = a.dual_stone_witness();
            Ok(Verdict::expect(
                cs.holds == ds.is_none(),
                || json!({ "cs": cs.holds, "dual_stone": ds }),
            ))
        },
    );
    run(out, "lattice", "(x ∧ y)⁺ = x⁺ ∨ y⁺", id, || {
        let w = a.de_morgan_half_witness();
        Ok(Verdict::expect(w.is_none(), || {
            json!(w.map(|(x, y)| labels(a, [x, y])))
        }))
    });
    run(
        out,
        "lattice",
        "center is a complete sublattice",
        id,
        || {
            Ok(Verdict::expect(a.center_is_complete_sublattice(), || {
                json!(labels(a, a.center().iter()))
            }))
        },
    );
    run(out, "lattice", "dual Glivenko quotient", id, || {
        a.glivenko_dual()?;
        Ok(Verdict::Pass)
    });
    run(
        out,
        "lattice",
        "supplement from a meet-dense set",
        id,
        || {
            let mut dense = BitSet::from_indices(a.size(), a.meet_irreducibles());
            dense.insert(a.top());
            let w = a.meet_dense_supplement_witness(&dense)?;
            Ok(Verdict::expect(w.is_none(), || {
                json!(w.map(|x| a.label(x).to_string()))
            }))
        },
    );
    run(out, "lattice", "a ∧ a⁺ is co-dense", id, || {
        let w = a.dual_delta_star_witness();
        Ok(Verdict::expect(w.is_none(), || {
            json!(w.map(|x| a.label(x).to_string()))
        }))
    });
    true
}

fn duality_checks(
    e: &CorpusEntry,
    cfg: &SuiteConfig,
    out: &mut Vec<Check>,
) -> Option<SubdirectEmbedding> {
    let (a, id) = (&e.algebra, e.id.as_str());
    run(out, "duality", "minimal prime filters", id, || {
        let y = min_space(a)?;
        Ok(Verdict::expect(
            y.len() == e.meta.y,
            || json!({ "y": y.len(), "meta": e.meta.y }),
        ))
    });
    run(out, "duality", "co-regular elements dual to Y", id, || {
        let v = coregular_minspace_duality(a)?;
        Ok(Verdict::expect(v.holds, || json!(v.witness)))
    });
    let mut emb = None;
    run(
        out,
        "duality",
        "subdirect embedding into ∏ A_y",
        id,
        || {
            let x = subdirect_embed_bounded(a, cfg.max_carrier)?;
            let fsi = x.factors.iter().all(|q| q.algebra.is_fsi());
            emb = Some(x);
            Ok(Verdict::expect(fsi, || json!("a factor is not fsi")))
        },
    );
    emb
}

fn extension_checks(
    e: &CorpusEntry,
    emb: Option<&SubdirectEmbedding>,
    cfg: &SuiteConfig,
    out: &mut Vec<Check>,
) -> Option<ExtensionAlgebra> {
    let (a, id) = (&e.algebra, e.id.as_str());
    let mut ext = None;
    run(
        out,
        "extension",
        "S(A) is the full product ∏ A_y",
        id,
        || {
            let x = build_extension_with_limit(a, cfg.max_carrier)?;
            let ok = emb.is_some_and(|m| m.product.size() == x.size());
            let size = x.size();
            ext = Some(x);
            Ok(Verdict::expect(
                ok,
                || json!({ "s": size, "product": emb.map(|m| m.product.size()) }),
            ))
        },
    );
    let Some(x) = ext.as_ref() else {
        for name in [
            "D(A) and B(A)",
            "ψ and θ_A",
            "normal forms",
            "embedding properties",
            "closure of Y",
            "S-homomorphisms",
        ] {
            skip(out, "extension", name, id, "S(A) unavailable");
        }
        return None;
    };
    run(out, "extension", "D(A) and B(A)", id, || {
        distinguished_sublattices(x)?;
        Ok(Verdict::Pass)
    });
    run(out, "extension", "ψ and θ_A", id, || {
        psi_and_theta(x)?;
        Ok(Verdict::Pass)
    });
    run(out, "extension", "normal forms", id, || {
        for u in x.algebra.elements() {
            normal_form(x, u)?;
        }
        Ok(Verdict::Pass)
    });
    run(out, "extension", "embedding properties", id, || {
        embedding_properties(x)?;
        Ok(Verdict::Pass)
    });
    run(out, "extension", "closure of Y", id, || {
        let v = closure_of_y_witness(x)?;
        let atoms = v.center_atoms == e.meta.y;
        Ok(Verdict::expect(
            v.holds && atoms,
            || json!({ "witness": v.witness, "atoms": v.center_atoms }),
        ))
    });
    run(out, "extension", "S-homomorphisms", id, || {
        let v = is_s_homomorphism(a, &x.algebra, &x.inclusion)?;
        if !v.holds {
            return Ok(Verdict::Fail(json!({ "inclusion": v.witness })));
        }
        let ext_hom = extend_s_hom(x, &x.algebra, &x.inclusion)?;
        let identity: Vec<Elem> = x.algebra.elements().collect();
        Ok(Verdict::expect(
            ext_hom == identity,
            || json!({ "extension": ext_hom }),
        ))
    });
    ext
}

fn frame_checks(
    e: &CorpusEntry,
    ext: Option<&ExtensionAlgebra>,
    cfg: &SuiteConfig,
    out: &mut Vec<Check>,
) -> Option<FrameAlgebra> {
    let (a, id) = (&e.algebra, e.id.as_str());
    run(out, "frames", "M_A axioms and closed sets", id, || {
        let f = macneille_frame(a);
        let ax = frame_axioms(&f)?;
        let fa = frame_algebra(&f)?;
        let ok = is_isomorphic(fa.algebra.order(), a.order()) && (ax.exhaustive || a.size() > 256);
        Ok(Verdict::expect(
            ok,
            || json!({ "closed": fa.algebra.size(), "exhaustive": ax.exhaustive }),
        ))
    });
    let w = hyper_frame(a);
    run(out, "frames", "W_A closure operator", id, || {
        check_closure_operator(&w.polarity, 64, cfg.seed)?;
        Ok(Verdict::Pass)
    });
    let mut plus = None;
    run(out, "frames", "W_A axioms and closed sets", id, || {
        let fa = frame_algebra(&w)?;
        let exhaustive = fa.axioms.exhaustive || a.size() > 16;
        let count = ext.is_some_and(|x| x.size() == fa.algebra.size());
        let size = fa.algebra.size();
        plus = Some(fa);
        Ok(Verdict::expect(
            exhaustive && count,
            || json!({ "closed": size, "s": ext.map(|x| x.size()), "exhaustive": exhaustive }),
        ))
    });
    match (ext, plus.as_ref()) {
        (Some(x), Some(fa)) => {
            run(out, "frames", "Δ: S(A) ≅ A⁺", id, || {
                delta_iso(x, &w, fa)?;
                Ok(Verdict::Pass)
            });
            run(out, "macneille", "DM(S(A)) ≅ A⁺", id, || {
                let dm = dm_completion(x.algebra.order())?;
                let ok = is_isomorphic(dm.lattice.order(), fa.algebra.order());
                Ok(Verdict::expect(
                    ok,
                    || json!({ "dm": dm.lattice.size(), "plus": fa.algebra.size() }),
                ))
            });
            run(out, "macneille", "DM(A⁺) ≅ A⁺", id, || {
                dm_of_lattice(fa.algebra.lattice())?;
                Ok(Verdict::Pass)
            });
        }
        _ => {
            skip(out, "frames", "Δ: S(A) ≅ A⁺", id, "S(A) or A⁺ unavailable");
            skip(
                out,
                "macneille",
                "DM(S(A)) ≅ A⁺",
                id,
                "S(A) or A⁺ unavailable",
            );
            skip(
                out,
                "macneille",
                "DM(A⁺) ≅ A⁺",
                id,
                "S(A) or A⁺ unavailable",
            );
        }
    }
    plus
}

fn completion_property_checks(
    e: &CorpusEntry,
    ext: Option<&ExtensionAlgebra>,
    out: &mut Vec<Check>,
) {
    let id = e.id.as_str();
    let Some(x) = ext else {
        skip(out, "completion", "all items", id, "S(A) unavailable");
        return;
    };
    let report = match completion_properties_with_limit(x, DEFAULT_MAX_SECOND_COMPLETION) {
        Ok(r) => r,
        Err(err) => {
            run(out, "completion", "all items", id, || Err(err));
            return;
        }
    };
    for item in report.items {
        let name = item.name.to_string();
        run(out, "completion", &name, id, || {
            Ok(if item.skipped {
                Verdict::Skip(item.witness.unwrap_or_default())
            } else {
                Verdict::expect(!item.applicable || item.passed, || json!(item.witness))
            })
        });
    }
}

fn collapse_checks(e: &CorpusEntry, cfg: &SuiteConfig, out: &mut Vec<Check>) {
    let (a, id) = (&e.algebra, e.id.as_str());
    let name = format!("truncated V_A agrees with W_A (k = {})", cfg.collapse_k);
    if a.size() > cfg.collapse_max_size {
        let why = format!("|A| = {} > {}", a.size(), cfg.collapse_max_size);
        skip(out, "collapse", &name, id, &why);
        return;
    }
    run(out, "collapse", &name, id, || {
        let v = truncated_collapse_check(a, cfg.collapse_k)?;
        Ok(Verdict::expect(v.holds, || json!(v)))
    });
}

fn term_checks(e: &CorpusEntry, out: &mut Vec<Check>) {
    let (a, id) = (&e.algebra, e.id.as_str());
    run(out, "terms", "bd₂ three-way equivalence", id, || {
        bd2_equivalence_check(a)?;
        Ok(Verdict::Pass)
    });
    run(
        out,
        "terms",
        "equations transport along H, S, P",
        id,
        || {
            for eq in library() {
                let v = hsp_chain(a, &eq)?;
                if !v.consistent {
                    return Ok(Verdict::Fail(
                        json!({ "equation": eq.name, "witness": v.witness }),
                    ));
                }
            }
            Ok(Verdict::Pass)
        },
    );
}

fn product_checks(e: &CorpusEntry, out: &mut Vec<Check>) {
    let (a, id) = (&e.algebra, e.id.as_str());
    run(
        out,
        "products",
        "patchwork over Y iff centrally supplemented",
        id,
        || {
            let v = patchwork_criterion(a)?;
            Ok(Verdict::expect(v.holds, || json!(v)))
        },
    );
    run(out, "products", "Hausdorff characterization", id, || {
        let v = hausdorff_characterization(a)?;
        Ok(Verdict::expect(v.holds, || json!(v)))
    });
    run(
        out,
        "products",
        "central sheaf stalks are the A_y",
        id,
        || {
            let st = central_sheaf_stalks(a)?;
            Ok(Verdict::expect(st.len() == e.meta.y, || json!(st)))
        },
    );
    run(out, "products", "A⁺ ≅ ∏ A_y", id, || {
        let v = hyper_completion_as_product(a)?;
        Ok(Verdict::expect(v.completion_size == v.product_size, || {
            json!(v)
        }))
    });
}

/// Every per-algebra check, in a fixed order.
pub fn entry_checks(e: &CorpusEntry, cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    if !lattice_checks(e, &mut out) {
        return out;
    }
    let emb = duality_checks(e, cfg, &mut out);
    let ext = extension_checks(e, emb.as_ref(), cfg, &mut out);
    frame_checks(e, ext.as_ref(), cfg, &mut out);
    completion_property_checks(e, ext.as_ref(), &mut out);
    collapse_checks(e, cfg, &mut out);
    term_checks(e, &mut out);
    product_checks(e, &mut out);
    out
}

fn corpus_checks(cfg: &SuiteConfig, entries: &[CorpusEntry], out: &mut Vec<Check>) {
    let subject = format!("n ≤ {}", cfg.max_points);
    run(out, "corpus", "poset counts", &subject, || {
        let counts: Vec<usize> = (1..=cfg.max_points)
            .map(|n| corpus::enumerate_posets(n).map(|v| v.len()))
            .collect::<Result<_>>()?;
        let expected = &POSET_COUNTS[..cfg.max_points.min(POSET_COUNTS.len())];
        Ok(Verdict::expect(
            counts == expected,
            || json!({ "counts": counts, "expected": expected }),
        ))
    });
    run(
        out,
        "corpus",
        "enumerated posets are pairwise non-isomorphic",
        &subject,
        || {
            let generated = entries.iter().filter(|e| e.id.starts_with('p'));
            let mut seen = HashSet::new();
            for e in generated {
                if !seen.insert(canonical_form(&e.poset)) {
                    return Ok(Verdict::Fail(json!(e.id)));
                }
            }
            Ok(Verdict::Pass)
        },
    );
    for name in ["bd2", "excluded-middle", "dual-stone", "lin"] {
        let eq = named(name).expect("library equation");
        run(
            out,
            "terms",
            &format!("closure experiment: {name}"),
            &subject,
            || {
                let r = closure_experiment(&eq, entries)?;
                Ok(Verdict::expect(r.failures.is_empty(), || json!(r.failures)))
            },
        );
    }
}

fn witness_labels(v: &crate::terms::SatVerdict) -> Value {
    json!(v.witness)
}

/// Fixed regressions on the named fixtures.
fn regression_checks(out: &mut Vec<Check>) {
    run(
        out,
        "regression",
        "L5 fails dual Stone at (a, b)",
        "L5",
        || {
            let a = fixtures::l5();
            let v = satisfies(&a, &named("dual-stone").expect("dual-stone"))?;
            let w = a.dual_stone_witness().map(|(x, y)| labels(&a, [x, y]));
            let ok = w == Some(vec!["a".into(), "b".into()]) && !v.holds;
            Ok(Verdict::expect(
                ok,
                || json!({ "equation": witness_labels(&v), "direct": w }),
            ))
        },
    );
    run(
        out,
        "regression",
        "S(L5) ≅ C3 × C3 ≅ A⁺ via Δ",
        "L5",
        || {
            let a = fixtures::l5();
            let x = build_extension_with_limit(&a, DEFAULT_MAX_CARRIER)?;
            let w = hyper_frame(&a);
            let fa = frame_algebra(&w)?;
            delta_iso(&x, &w, &fa)?;
            let ok = x.size() == 9
                && fa.algebra.size() == 9
                && is_isomorphic(x.algebra.order(), fixtures::c3_by_c3().order());
            Ok(Verdict::expect(
                ok,
                || json!({ "s": x.size(), "plus": fa.algebra.size() }),
            ))
        },
    );
    run(
        out,
        "regression",
        "C4 falsifies bd₂ at (p, q)",
        "C4",
        || {
            let v = satisfies(&fixtures::chain(4), &named("bd2").expect("bd2"))?;
            let expected = json!([["x1", "p"], ["x2", "q"]]);
            Ok(Verdict::expect(witness_labels(&v) == expected, || {
                witness_labels(&v)
            }))
        },
    );
    run(
        out,
        "regression",
        "C3 → 2×3 is not an S-homomorphism",
        "C3",
        || {
            let c3 = fixtures::chain(3);
            let t = fixtures::two_by_three();
            let find = |l: &str| t.named(l).ok_or_else(|| Error::breach("2x3 label", l));
            let h = [find("(0,0)")?, find("(1,m)")?, find("(1,1)")?];
            let v = is_s_homomorphism(&c3, &t, &h)?;
            let w = v.witness.map(|(x, y)| labels(&c3, [x, y]));
            Ok(Verdict::expect(
                !v.holds && w == Some(vec!["0".into(), "m".into()]),
                || json!(w),
            ))
        },
    );
}

/// Corrupted inputs that must be caught; each check passes when the
/// corruption is detected.
fn control_checks(out: &mut Vec<Check>) {
    run(
        out,
        "controls",
        "corrupted implication table is caught",
        "L5",
        || {
            let mut a = fixtures::l5();
            a.tamper_implies(2, 3, 4);
            Ok(match a.validate() {
                Err(Error::InvariantBreach { check, .. }) if check == "residuation" => {
                    Verdict::Pass
                }
                other => Verdict::Fail(json!(format!("{other:?}"))),
            })
        },
    );
    run(
        out,
        "controls",
        "pentagon is not distributive",
        "N5",
        || {
            Ok(
                match HeytingAlgebra::from_poset(&fixtures::pentagon(), None) {
                    Err(Error::NotDistributive { .. }) => Verdict::Pass,
                    other => Verdict::Fail(json!(format!("{:?}", other.map(|(a, _)| a.size())))),
                },
            )
        },
    );
    run(
        out,
        "controls",
        "faulty frame arrow is caught",
        "L5",
        || {
            let f = hyper_frame(&fixtures::l5()).with_arrow(|_, u| u);
            Ok(match frame_axioms(&f) {
                Err(Error::FrameAxiomViolation { .. }) => Verdict::Pass,
                other => Verdict::Fail(json!(format!("{other:?}"))),
            })
        },
    );
}

/// Checks run on a deliberately broken input; they fail, with witnesses.
fn fault_checks(fault: Fault, cfg: &SuiteConfig, out: &mut Vec<Check>) {
    match fault {
        Fault::CorruptImplies => {
            let mut a = fixtures::l5();
            a.tamper_implies(2, 3, 4);
            let e = CorpusEntry {
                id: "fault-L5".into(),
                poset: a.order().restrict(&a.join_irreducibles()),
                meta: Metadata::compute(&fixtures::l5()).expect("L5 metadata"),
                algebra: a,
            };
            out.extend(entry_checks(&e, cfg));
        }
        Fault::Pentagon => run(
            out,
            "lattice",
            "input is a Heyting algebra",
            "fault-N5",
            || {
                HeytingAlgebra::from_poset(&fixtures::pentagon(), None)?;
                Ok(Verdict::Pass)
            },
        ),
        Fault::FaultyFrame => run(out, "frames", "W_A axioms", "fault-L5", || {
            let f = hyper_frame(&fixtures::l5()).with_arrow(|_, u| u);
            frame_axioms(&f)?;
            Ok(Verdict::Pass)
        }),
    }
}

/// Runs everything. Per-entry work fans out across threads; the report
/// lists checks in corpus order regardless of completion order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let entries = suite_corpus(cfg)?;
    let mut report = Report::new(format!("suite (max points {})", cfg.max_points));
    report.fact("max_points", cfg.max_points);
    report.fact("seed", cfg.seed);
    report.fact("samples", cfg.samples);
    report.fact("entries", entries.len());
    report.fact("max_carrier", cfg.max_carrier);
    let mut checks = Vec::new();
    corpus_checks(cfg, &entries, &mut checks);
    let per_entry: Vec<Vec<Check>> = entries.par_iter().map(|e| entry_checks(e, cfg)).collect();
    checks.extend(per_entry.into_iter().flatten());
    regression_checks(&mut checks);
    control_checks(&mut checks);
    if let Some(f) = cfg.fault {
        fault_checks(f, cfg, &mut checks);
    }
    // group by section, keeping the order of first appearance
    let mut order: Vec<String> = Vec::new();
    for c in &checks {
        if !order.contains(&c.section) {
            order.push(c.section.clone());
        }
    }
    for s in &order {
        for c in checks.iter().filter(|c| &c.section == s) {
            report.push(c.clone());
        }
    }
    Ok(report)
}

/// Size, center, `Y`, quotients, supplement tables and classification.
pub fn analyze(id: &str, a: &HeytingAlgebra) -> Result<Report> {
    let mut r = Report::new(format!("analyze {id}"));
    let cs = a.is_centrally_supplemented()?;
    let y = min_space(a)?;
    let class = a.classify_elements();
    let emb = subdirect_embed_bounded(a, DEFAULT_MAX_CARRIER)?;
    r.fact("size", a.size());
    r.fact("elements", a.labels());
    r.fact("fsi", a.is_fsi());
    r.fact("center", labels(a, a.center().iter()));
    r.fact("y", labels(a, y.generators()));
    let quotients: Vec<Value> = emb
        .factors
        .iter()
        .zip(y.generators())
        .map(|(q, g)| {
            json!({
                "point": a.label(g),
                "size": q.algebra.size(),
                "elements": q.algebra.labels(),
                "map": labels(&q.algebra, q.map.iter().copied()),
            })
        })
        .collect();
    r.fact("quotients", quotients);
    r.fact(
        "supplement",
        labels(a, a.elements().map(|x| a.supplement(x))),
    );
    r.fact(
        "pseudocomplement",
        labels(a, a.elements().map(|x| a.pseudocomplement(x))),
    );
    r.fact("centrally_supplemented", cs.holds);
    r.fact("cs_witness", cs.witness.map(|(x, y)| labels(a, [x, y])));
    r.fact(
        "classification",
        json!({
            "regular": labels(a, class.regular.iter()),
            "dense": labels(a, class.dense.iter()),
            "coregular": labels(a, class.coregular.iter()),
            "codense": labels(a, class.codense.iter()),
        }),
    );
    run(&mut r.checks, "lattice", "tables validate", id, || {
        a.validate()?;
        Ok(Verdict::Pass)
    });
    Ok(r)
}

/// The algebras produced by [`complete`].
pub struct Completion {
    pub extension: ExtensionAlgebra,
    pub plus: FrameAlgebra,
    pub report: Report,
}

/// `S(A)`, `A⁺` as closed sets of `W_A`, the Δ verdict and the cut-based
/// cross-check. Resource limits are returned as errors.
pub fn complete(id: &str, a: &HeytingAlgebra, max_carrier: usize) -> Result<Completion> {
    let extension = build_extension_with_limit(a, max_carrier)?;
    let w = hyper_frame(a);
    let plus = frame_algebra(&w)?;
    let mut r = Report::new(format!("complete {id}"));
    r.fact("size", a.size());
    r.fact("s_size", extension.size());
    r.fact("plus_size", plus.algebra.size());
    r.fact("y", extension.y_len());
    r.fact(
        "iso_to_input",
        is_isomorphic(plus.algebra.order(), a.order()),
    );
    run(&mut r.checks, "frames", "Δ: S(A) ≅ A⁺", id, || {
        delta_iso(&extension, &w, &plus)?;
        Ok(Verdict::Pass)
    });
    run(&mut r.checks, "macneille", "DM(S(A)) ≅ A⁺", id, || {
        let dm = dm_completion(extension.algebra.order())?;
        let ok = is_isomorphic(dm.lattice.order(), plus.algebra.order());
        Ok(Verdict::expect(
            ok,
            || json!({ "dm": dm.lattice.size(), "plus": plus.algebra.size() }),
        ))
    });
    Ok(Completion {
        extension,
        plus,
        report: r,
    })
}

/// Satisfaction of `eq` on each entry plus the closure experiment.
pub fn check_equation(eq: &Equation, entries: &[CorpusEntry]) -> Result<Report> {
    let mut r = Report::new(format!("check {}", eq));
    r.fact("equation", eq.to_string());
    r.fact("variables", &eq.vars);
    for e in entries {
        run(&mut r.checks, "satisfaction", "satisfies", &e.id, || {
            let v = satisfies(&e.algebra, eq)?;
            Ok(Verdict::expect(v.holds, || witness_labels(&v)))
        });
    }
    let c = closure_experiment(eq, entries)?;
    r.fact("closure", &c);
    run(
        &mut r.checks,
        "closure",
        "S(A) satisfies what A satisfies",
        "input",
        || Ok(Verdict::expect(c.failures.is_empty(), || json!(c.failures))),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            max_points: 2,
            ..Default::default()
        };
        let r = run_suite(&cfg).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert!(r.counts().pass > 100);
        let again = run_suite(&cfg).unwrap();
        assert_eq!(r.without_timings(), again.without_timings());
    }

    #[test]
    fn faults_fail_with_witnesses() {
        for (fault, name) in [
            (Fault::CorruptImplies, "tables validate"),
            (Fault::Pentagon, "input is a Heyting algebra"),
            (Fault::FaultyFrame, "W_A axioms"),
        ] {
            let cfg = SuiteConfig {
                max_points: 1,
                fault: Some(fault),
                ..Default::default()
            };
            let r = run_suite(&cfg).unwrap();
            let fails: Vec<_> = r.failures().collect();
            assert_eq!(fails.len(), 1, "{fault:?}");
            assert_eq!(fails[0].name, name);
            assert!(fails[0].witness.is_some());
        }
    }

    #[test]
    fn corrupt_implies_names_residuation() {
        let cfg = SuiteConfig {
            max_points: 1,
            fault: Some(Fault::CorruptImplies),
            ..Default::default()
        };
        let r = run_suite(&cfg).unwrap();
        let w = r.failures().next().unwrap().witness.clone().unwrap();
        assert!(w["error"].as_str().unwrap().contains("residuation"));
    }

    #[test]
    fn analyze_l5() {
        let r = analyze("L5", &fixtures::l5()).unwrap();
        let get = |n: &str| r.facts.iter().find(|f| f.name == n).unwrap().value.clone();
        assert_eq!(get("centrally_supplemented"), json!(false));
        assert_eq!(get("y"), json!(["a", "b"]));
        assert!(r.passed());
    }

    #[test]
    fn complete_l5() {
        let c = complete("L5", &fixtures::l5(), DEFAULT_MAX_CARRIER).unwrap();
        assert_eq!((c.extension.size(), c.plus.algebra.size()), (9, 9));
        assert!(c.report.passed());
        assert!(matches!(
            complete("L5", &fixtures::l5(), 4),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn check_bd2() {
        let eq = named("bd2").unwrap();
        let entries = corpus::fixture_entries().unwrap();
        let r = check_equation(&eq, &entries).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.subject.as_str()).collect();
        assert_eq!(failed, ["C4"]);
    }
}
