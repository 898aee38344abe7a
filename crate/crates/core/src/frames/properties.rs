//! The hyper-MacNeille completion `A⁺ = 𝒢(W_A)` and the finitely checkable
//! properties of `A ≤ S(A) ≤ A⁺`.

use serde::Serialize;

use super::{delta_iso, frame_algebra, hyper_frame, FrameAlgebra};
use crate::error::Result;
use crate::extension::props::{externally_distributive, subsets};
use crate::extension::{distinguished_sublattices, ExtensionAlgebra};
use crate::iso::is_isomorphic;
use crate::lattice::{is_injective_map, HeytingAlgebra};
use crate::Elem;

/// Largest `|W|` for which the checks that complete a second algebra
/// (`A⁺⁺` and `S(A)⁺`) are run; beyond it those items are skipped.
pub const DEFAULT_MAX_SECOND_COMPLETION: usize = 4096;

/// `A⁺` as the closed sets of `W_A`.
pub fn hyper_completion(a: &HeytingAlgebra) -> Result<FrameAlgebra> {
    frame_algebra(&hyper_frame(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyItem {
    pub item: u8,
    pub name: &'static str,
    /// False when the hypothesis of a conditional item fails.
    pub applicable: bool,
    /// True when the check was not run because of a size bound.
    pub skipped: bool,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub size: usize,
    pub completion_size: usize,
    pub items: Vec<PropertyItem>,
}

impl PropertyReport {
    /// Every applicable, non-skipped item passed.
    pub fn all_passed(&self) -> bool {
        self.items
            .iter()
            .all(|i| !i.applicable || i.skipped || i.passed)
    }

    pub fn failures(&self) -> Vec<&PropertyItem> {
        self.items
            .iter()
            .filter(|i| i.applicable && !i.skipped && !i.passed)
            .collect()
    }

    pub fn get(&self, item: u8) -> Option<&PropertyItem> {
        self.items.iter().find(|i| i.item == item)
    }
}

struct Items(Vec<PropertyItem>);

impl Items {
    fn check(
        &mut self,
        item: u8,
        name: &'static str,
        passed: bool,
        witness: impl FnOnce() -> String,
    ) {
        self.0.push(PropertyItem {
            item,
            name,
            applicable: true,
            skipped: false,
            passed,
            witness: (!passed).then(witness),
        });
    }

    fn conditional(
        &mut self,
        item: u8,
        name: &'static str,
        applicable: bool,
        passed: impl FnOnce() -> (bool, String),
    ) {
        if applicable {
            let (ok, w) = passed();
            self.check(item, name, ok, || w);
        } else {
            self.0.push(PropertyItem {
                item,
                name,
                applicable: false,
                skipped: false,
                passed: true,
                witness: None,
            });
        }
    }

    fn skip(&mut self, item: u8, name: &'static str, why: String) {
        self.0.push(PropertyItem {
            item,
            name,
            applicable: true,
            skipped: true,
            passed: false,
            witness: Some(why),
        });
    }
}

pub fn completion_properties(ext: &ExtensionAlgebra) -> Result<PropertyReport> {
    completion_properties_with_limit(ext, DEFAULT_MAX_SECOND_COMPLETION)
}

/// Builds `A⁺`, the isomorphism `Δ: S(A) → A⁺` and the composite embedding
/// `e = Δ ∘ ι` of `A`, then runs the thirteen checks. Items 5 and 10 build a
/// second hyper frame and are skipped when it would have more than
/// `max_points` points.
pub fn completion_properties_with_limit(
    ext: &ExtensionAlgebra,
    max_points: usize,
) -> Result<PropertyReport> {
    let a = &ext.base;
    let s = &ext.algebra;
    let frame = hyper_frame(a);
    let fa = frame_algebra(&frame)?;
    let delta = delta_iso(ext, &frame, &fa)?;
    let p = &fa.algebra;
    let e: Vec<Elem> = a.elements().map(|x| delta.map[ext.inclusion[x]]).collect();
    let a_cs = a.is_centrally_supplemented()?.holds;
    let e_onto = e.len() == p.size() && is_injective_map(&e);
    let iso_a = is_isomorphic(a.order(), p.order());
    let mut items = Items(Vec::new());

    let valid = p.validate();
    items.check(1, "A⁺ is a Heyting algebra", valid.is_ok(), || {
        format!("{}", valid.as_ref().unwrap_err())
    });

    let cs = p.is_centrally_supplemented()?;
    items.check(2, "A⁺ is centrally supplemented", cs.holds, || {
        format!(
            "{:?}",
            cs.witness
                .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
        )
    });

    let sizes = || format!("|A| = {}, |A⁺| = {}", a.size(), p.size());
    items.conditional(3, "centrally supplemented A has A⁺ ≅ A", a_cs, || {
        (e_onto && iso_a, sizes())
    });
    items.conditional(4, "fsi A has A⁺ ≅ A", a.is_fsi(), || {
        (e_onto && iso_a, sizes())
    });

    let square = p.size() * p.size();
    if square <= max_points {
        let pp = hyper_completion(p)?;
        let ok = is_isomorphic(pp.algebra.order(), p.order());
        items.check(5, "A⁺⁺ ≅ A⁺", ok, || {
            format!("|A⁺⁺| = {}, |A⁺| = {}", pp.algebra.size(), p.size())
        });
    } else {
        items.skip(
            5,
            "A⁺⁺ ≅ A⁺",
            format!("|W_A⁺| = {square} exceeds {max_points}"),
        );
    }

    items.check(
        6,
        "center of A⁺ is closed under all meets and joins",
        p.center_is_complete_sublattice(),
        || "center not closed".to_string(),
    );

    let subs = subsets(a.size());
    let regular = subs.iter().find(|sub| {
        e[a.meet_all(sub.iter().copied())] != p.meet_all(sub.iter().map(|&x| e[x]))
            || e[a.join_all(sub.iter().copied())] != p.join_all(sub.iter().map(|&x| e[x]))
    });
    let ext_dist = externally_distributive(a);
    items.check(
        7,
        "A → A⁺ is regular iff A is externally distributive",
        regular.is_none() == ext_dist,
        || {
            format!(
                "regular: {}, externally distributive: {ext_dist}, subset {:?}",
                regular.is_none(),
                regular
            )
        },
    );

    let inessential = p
        .elements()
        .filter(|&u| u != p.top())
        .find(|&u| !a.elements().any(|x| x != a.top() && p.leq(u, e[x])));
    items.check(8, "A → A⁺ is essential", inessential.is_none(), || {
        format!(
            "{} lies below no proper image",
            p.label(inessential.unwrap())
        )
    });

    let center_a = a.center();
    let lost = a
        .elements()
        .filter(|&x| center_a.contains(a.supplement(x)))
        .find(|&x| e[a.supplement(x)] != p.supplement(e[x]));
    items.check(
        9,
        "A → A⁺ preserves central supplements",
        lost.is_none(),
        || format!("supplement of {} not preserved", a.label(lost.unwrap())),
    );

    let square_s = s.size() * s.size();
    if square_s <= max_points {
        let sp = hyper_completion(s)?;
        let ok = is_isomorphic(sp.algebra.order(), p.order());
        items.check(10, "A⁺ ≅ S(A)⁺", ok, || {
            format!("|S(A)⁺| = {}, |A⁺| = {}", sp.algebra.size(), p.size())
        });
    } else {
        items.skip(
            10,
            "A⁺ ≅ S(A)⁺",
            format!("|W_S(A)| = {square_s} exceeds {max_points}"),
        );
    }

    let dist = distinguished_sublattices(ext)?;
    let center_p = p.center();
    let image_b: Vec<Elem> = dist.b.iter().map(|u| delta.map[u]).collect();
    let onto_center =
        image_b.len() == center_p.count() && image_b.iter().all(|&z| center_p.contains(z));
    items.check(
        11,
        "Δ carries B(A) onto the center of A⁺",
        onto_center,
        || {
            format!(
                "|Δ[B(A)]| = {}, |Z(A⁺)| = {}",
                image_b.len(),
                center_p.count()
            )
        },
    );

    let (d_lattice, _) = s.sublattice(&dist.d)?;
    let j = d_lattice.join_irreducibles().len();
    let free = 1usize
        .checked_shl(j as u32)
        .is_some_and(|f| f == center_p.count());
    items.check(
        12,
        "Z(A⁺) is the free Boolean extension of D(A)",
        free,
        || format!("|J(D(A))| = {j}, |Z(A⁺)| = {}", center_p.count()),
    );

    let thirteen = e_onto == a_cs;
    items.check(
        13,
        "A⁺ = A iff A is centrally supplemented",
        thirteen,
        || format!("A⁺ = A: {e_onto}, centrally supplemented: {a_cs}"),
    );

    Ok(PropertyReport {
        size: a.size(),
        completion_size: p.size(),
        items: items.0,
    })
}
