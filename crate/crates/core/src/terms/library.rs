//! Named equations, the bounded-depth-two equivalence and closure
//! experiments over a corpus.

use rayon::prelude::*;
use serde::Serialize;

use super::{parse_equation, satisfies, Equation, SatVerdict};
use crate::corpus::CorpusEntry;
use crate::duality::subdirect_embed_bounded;
use crate::error::{Error, Result};
use crate::extension::{build_extension_with_limit, DEFAULT_MAX_CARRIER};
use crate::lattice::HeytingAlgebra;

/// Skip a satisfaction check when it would need more assignments than this.
pub const MAX_ASSIGNMENTS: u64 = 1 << 22;

const LIBRARY: &[(&str, &str)] = &[
    ("dual-stone", "(x v y)+ = x+ ^ y+"),
    ("co-stone", "x+ ^ x++ = 0"),
    ("stone", "x* v x** = 1"),
    ("bd2", "1 = x2 v (x2 -> (x1 v x1*))"),
    ("bd2-supplement", "x1+ ^ x1 <= x2 v x2*"),
    ("excluded-middle", "x v x* = 1"),
    ("pseudo-complement", "x ^ x* = 0"),
    ("half-de-morgan", "(x ^ y)+ = x+ v y+"),
    ("lin", "(x -> y) v (y -> x) = 1"),
];

/// Every named equation, in a fixed order.
pub fn library() -> Vec<Equation> {
    LIBRARY
        .iter()
        .map(|(n, src)| parse_equation(n, src).expect("library equations parse"))
        .collect()
}

pub fn named(name: &str) -> Option<Equation> {
    library().into_iter().find(|e| e.name == name)
}

fn budget(size: usize, eq: &Equation) -> bool {
    (size as u64)
        .checked_pow(eq.arity() as u32)
        .is_some_and(|n| n <= MAX_ASSIGNMENTS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bd2Verdict {
    pub bd2: bool,
    pub supplement_form: bool,
    pub codense_below_dense: bool,
    pub witness: Option<String>,
}

/// Evaluates the three equivalent forms of bounded depth two and requires
/// them to agree: the Heyting equation, `x₁⁺ ∧ x₁ ≤ x₂ ∨ x₂*`, and every
/// codense element lying below every dense element.
pub fn bd2_equivalence_check(a: &HeytingAlgebra) -> Result<Bd2Verdict> {
    let heyting = satisfies(a, &named("bd2").expect("bd2"))?;
    let supp = satisfies(a, &named("bd2-supplement").expect("bd2-supplement"))?;
    let c = a.classify_elements();
    let bad = c
        .codense
        .iter()
        .find_map(|x| c.dense.iter().find(|&y| !a.leq(x, y)).map(|y| (x, y)));
    let show = |v: &SatVerdict| {
        v.witness.as_ref().map(|w| {
            w.iter()
                .map(|(k, e)| format!("{k}:={e}"))
                .collect::<Vec<_>>()
                .join(", ")
        })
    };
    let witness = show(&heyting)
        .or_else(|| show(&supp))
        .or_else(|| bad.map(|(x, y)| format!("codense {} ≰ dense {}", a.label(x), a.label(y))));
    let v = Bd2Verdict {
        bd2: heyting.holds,
        supplement_form: supp.holds,
        codense_below_dense: bad.is_none(),
        witness,
    };
    if v.bd2 != v.supplement_form || v.bd2 != v.codense_below_dense {
        return Err(Error::breach(
            "the three forms of bd₂ agree",
            format!("{v:?}"),
        ));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureFailure {
    pub id: String,
    pub witness: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub equation: String,
    pub checked: usize,
    /// Entries satisfying the equation.
    pub satisfying: usize,
    /// Entries whose `S(A)` fails an equation `A` satisfies.
    pub failures: Vec<ClosureFailure>,
    /// Entries not checked, with the reason.
    pub skipped: Vec<(String, String)>,
}

enum Outcome {
    Fails,
    Closed,
    Open(ClosureFailure),
    Skipped(String),
}

fn closure_one(e: &CorpusEntry, eq: &Equation) -> Result<Outcome> {
    let a = &e.algebra;
    if !budget(a.size(), eq) {
        return Ok(Outcome::Skipped(format!("|A|^{} assignments", eq.arity())));
    }
    if !satisfies(a, eq)?.holds {
        return Ok(Outcome::Fails);
    }
    let ext = match build_extension_with_limit(a, DEFAULT_MAX_CARRIER) {
        Ok(x) => x,
        Err(Error::ResourceLimit { what, limit }) => {
            return Ok(Outcome::Skipped(format!("{what} > {limit}")))
        }
        Err(err) => return Err(err),
    };
    if !budget(ext.size(), eq) {
        return Ok(Outcome::Skipped(format!(
            "|S(A)|^{} assignments",
            eq.arity()
        )));
    }
    let v = satisfies(&ext.algebra, eq)?;
    Ok(match v.witness {
        None => Outcome::Closed,
        Some(w) => Outcome::Open(ClosureFailure {
            id: e.id.clone(),
            witness: w,
        }),
    })
}

/// For every entry satisfying `eq`, checks that `S(A)`, which is `A⁺` in the
/// finite case, satisfies it too. Failures are findings, not errors.
pub fn closure_experiment(eq: &Equation, corpus: &[CorpusEntry]) -> Result<ClosureReport> {
    let outcomes: Vec<Outcome> = corpus
        .par_iter()
        .map(|e| closure_one(e, eq))
        .collect::<Result<_>>()?;
    let mut report = ClosureReport {
        equation: eq.name.clone(),
        checked: corpus.len(),
        satisfying: 0,
        failures: Vec::new(),
        skipped: Vec::new(),
    };
    for (e, o) in corpus.iter().zip(outcomes) {
        match o {
            Outcome::Fails => {}
            Outcome::Closed => report.satisfying += 1,
            Outcome::Open(f) => {
                report.satisfying += 1;
                report.failures.push(f);
            }
            Outcome::Skipped(why) => report.skipped.push((e.id.clone(), why)),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HspVerdict {
    pub in_algebra: bool,
    /// Satisfaction in each `A_y`.
    pub in_factors: Vec<bool>,
    /// `None` when the product was too large to check.
    pub in_product: Option<bool>,
    pub in_extension: Option<bool>,
    /// Every transport step that applies went through.
    pub consistent: bool,
    pub witness: Option<String>,
}

/// Follows `eq` along `A ↠ A_y`, `∏ A_y` and `S(A) ≤ ∏ A_y`: if `A`
/// satisfies it so must each `A_y`, and if every `A_y` does so must the
/// product and `S(A)`.
pub fn hsp_chain(a: &HeytingAlgebra, eq: &Equation) -> Result<HspVerdict> {
    let in_algebra = satisfies(a, eq)?.holds;
    let emb = subdirect_embed_bounded(a, DEFAULT_MAX_CARRIER)?;
    let in_factors: Vec<bool> = emb
        .factors
        .iter()
        .map(|q| satisfies(&q.algebra, eq).map(|v| v.holds))
        .collect::<Result<_>>()?;
    let all_factors = in_factors.iter().all(|&b| b);
    let in_product = if budget(emb.product.size(), eq) {
        Some(satisfies(&emb.product, eq)?.holds)
    } else {
        None
    };
    let ext = build_extension_with_limit(a, DEFAULT_MAX_CARRIER)?;
    let in_extension = if budget(ext.size(), eq) {
        Some(satisfies(&ext.algebra, eq)?.holds)
    } else {
        None
    };
    let mut witness = None;
    if in_algebra {
        if let Some(i) = in_factors.iter().position(|&b| !b) {
            witness = Some(format!("A satisfies {} but factor {i} does not", eq.name));
        }
    }
    if all_factors && witness.is_none() {
        if in_product == Some(false) {
            witness = Some(format!(
                "every factor satisfies {} but the product does not",
                eq.name
            ));
        } else if in_extension == Some(false) {
            witness = Some(format!(
                "every factor satisfies {} but S(A) does not",
                eq.name
            ));
        }
    }
    Ok(HspVerdict {
        in_algebra,
        in_factors,
        in_product,
        in_extension,
        consistent: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::generate;
    use crate::testing::*;

    #[test]
    fn library_names_are_unique() {
        let lib = library();
        let mut names: Vec<&str> = lib.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), lib.len());
        assert!(named("nope").is_none());
    }

    #[test]
    fn bd2_on_c4_fails_at_p_q() {
        let v = satisfies(&chain(4), &named("bd2").unwrap()).unwrap();
        assert_eq!(
            v.witness.unwrap(),
            vec![
                ("x1".to_string(), "p".to_string()),
                ("x2".to_string(), "q".to_string())
            ]
        );
        let v = bd2_equivalence_check(&chain(4)).unwrap();
        assert!(!v.bd2 && !v.supplement_form && !v.codense_below_dense);
    }

    #[test]
    fn bd2_holds_on_l5_and_booleans() {
        for a in [l5(), b4(), chain(2), chain(3)] {
            let v = bd2_equivalence_check(&a).unwrap();
            assert!(v.bd2 && v.supplement_form && v.codense_below_dense);
        }
    }

    #[test]
    fn dual_stone_and_co_stone_agree() {
        for (name, a) in fixtures() {
            let ds = satisfies(&a, &named("dual-stone").unwrap()).unwrap().holds;
            let cs = satisfies(&a, &named("co-stone").unwrap()).unwrap().holds;
            assert_eq!(ds, cs, "{name}");
            assert_eq!(ds, a.is_centrally_supplemented().unwrap().holds, "{name}");
        }
    }

    #[test]
    fn always_true_equations() {
        for (_, a) in fixtures() {
            for n in ["pseudo-complement", "half-de-morgan"] {
                assert!(satisfies(&a, &named(n).unwrap()).unwrap().holds);
            }
        }
    }

    #[test]
    fn closure_experiments_on_small_corpus() {
        let corpus = generate(4).unwrap();
        for n in ["bd2", "excluded-middle", "dual-stone", "lin"] {
            let r = closure_experiment(&named(n).unwrap(), &corpus).unwrap();
            assert!(r.failures.is_empty(), "{n}: {:?}", r.failures);
            assert!(r.skipped.is_empty());
            assert_eq!(r.checked, corpus.len());
        }
        let r = closure_experiment(&named("excluded-middle").unwrap(), &corpus).unwrap();
        // the Boolean entries are the antichains
        assert_eq!(r.satisfying, 4);
    }

    #[test]
    fn hsp_transport_on_fixtures() {
        for (name, a) in fixtures() {
            for eq in library() {
                let v = hsp_chain(&a, &eq).unwrap();
                assert!(v.consistent, "{name} {}: {:?}", eq.name, v.witness);
            }
        }
    }
}
