//! Co-annihilators, S-homomorphisms and their unique extension to `S(A)`.

use serde::Serialize;

use super::{normal_form, psi, ExtensionAlgebra};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{is_bounded_lattice_hom, is_heyting_hom, HeytingAlgebra};
use crate::Elem;

/// `a^⊤ = {b : a ∨ b = 1}`
pub fn co_annihilator(a: &HeytingAlgebra, x: Elem) -> BitSet {
    BitSet::from_indices(a.size(), a.elements().filter(|&b| a.join(x, b) == a.top()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SHomVerdict {
    pub holds: bool,
    /// First pair with equal co-annihilators whose images differ in theirs.
    pub witness: Option<(Elem, Elem)>,
}

/// Whether the bounded lattice homomorphism `h` preserves equality of
/// co-annihilators.
pub fn is_s_homomorphism(
    dom: &HeytingAlgebra,
    cod: &HeytingAlgebra,
    h: &[Elem],
) -> Result<SHomVerdict> {
    is_bounded_lattice_hom(dom, cod, h).map_err(Error::NotAHomomorphism)?;
    let dom_ann: Vec<BitSet> = dom.elements().map(|x| co_annihilator(dom, x)).collect();
    let cod_ann: Vec<BitSet> = dom.elements().map(|x| co_annihilator(cod, h[x])).collect();
    for a in dom.elements() {
        for b in a + 1..dom.size() {
            if dom_ann[a] == dom_ann[b] && cod_ann[a] != cod_ann[b] {
                return Ok(SHomVerdict {
                    holds: false,
                    witness: Some((a, b)),
                });
            }
        }
    }
    Ok(SHomVerdict {
        holds: true,
        witness: None,
    })
}

/// Extends an S-homomorphism `h: A → E` into a centrally supplemented `E`
/// to `h̄: S(A) → E`.
///
/// On the center, `h̃(ψ(a)) = h(a)⁺⁺`, extended to the Boolean closure through
/// the atoms of `Z(S(A))`, each written as `ψ(c) ∧ ¬ψ(d)`. Elsewhere
/// `h̄(⋁ aᵢ ∧ eᵢ) = ⋁ h(aᵢ) ∧ h̃(eᵢ)` using [`normal_form`]. The result is
/// checked to preserve ∧, ∨, →, ⁺ and to restrict to `h`. Uniqueness is
/// checked independently: the values forced on the inclusion of `A` are
/// propagated through the operations to a fixpoint, which must be total and
/// agree with `h̄`.
pub fn extend_s_hom(ext: &ExtensionAlgebra, cod: &HeytingAlgebra, h: &[Elem]) -> Result<Vec<Elem>> {
    let a = &ext.base;
    let s = &ext.algebra;
    let verdict = is_s_homomorphism(a, cod, h)?;
    if let Some((x, y)) = verdict.witness {
        return Err(Error::NotSHom { a: x, b: y });
    }
    if let Some((x, y)) = cod.dual_stone_witness() {
        return Err(Error::NotCentrallySupplemented { x, y });
    }
    let psi = psi(ext);
    let pp = |x: Elem| cod.supplement(cod.supplement(x));
    let center = s.center();
    let atoms: Vec<Elem> = center
        .iter()
        .filter(|&z| z != s.bottom() && s.order().covers_of_within(s.bottom(), z, &center))
        .collect();

    let mut tilde = vec![usize::MAX; s.size()];
    let mut atom_value = Vec::with_capacity(atoms.len());
    for &e in &atoms {
        let (c, d) = a
            .elements()
            .flat_map(|c| a.elements().map(move |d| (c, d)))
            .find(|&(c, d)| s.meet(psi[c], s.supplement(psi[d])) == e)
            .ok_or_else(|| {
                Error::breach("center atoms are ψ(c) ∧ ¬ψ(d)", s.label(e).to_string())
            })?;
        atom_value.push(cod.meet(pp(h[c]), cod.supplement(pp(h[d]))));
    }
    for z in center.iter() {
        tilde[z] = cod.join_all(
            atoms
                .iter()
                .zip(&atom_value)
                .filter(|(&e, _)| s.leq(e, z))
                .map(|(_, &v)| v),
        );
    }
    for x in a.elements() {
        if tilde[psi[x]] != pp(h[x]) {
            return Err(Error::breach("h̃(ψ(a)) = h(a)⁺⁺", a.label(x).to_string()));
        }
    }

    let mut bar = vec![0; s.size()];
    for u in s.elements() {
        let nf = normal_form(ext, u)?;
        bar[u] = cod.join_all(
            nf.blocks
                .iter()
                .zip(&nf.coefficients)
                .map(|(&e, &x)| cod.meet(h[x], tilde[e])),
        );
    }
    is_heyting_hom(s, cod, &bar, true)
        .map_err(|w| Error::breach("extension preserves ∧ ∨ → ⁺", w))?;
    for x in a.elements() {
        if bar[ext.inclusion[x]] != h[x] {
            return Err(Error::breach(
                "extension restricts to h",
                a.label(x).to_string(),
            ));
        }
    }
    let forced = propagate(ext, cod, h)?;
    if forced != bar {
        return Err(Error::breach(
            "extension is unique",
            "propagated values differ".to_string(),
        ));
    }
    Ok(bar)
}

/// Values any supplement-preserving homomorphism extending `h` must take,
/// derived by closing the graph of `h` under the operations.
fn propagate(ext: &ExtensionAlgebra, cod: &HeytingAlgebra, h: &[Elem]) -> Result<Vec<Elem>> {
    let s = &ext.algebra;
    let mut value = vec![usize::MAX; s.size()];
    let mut known: Vec<Elem> = Vec::new();
    let mut fresh: Vec<Elem> = Vec::new();
    let set = |u: Elem, v: Elem, value: &mut Vec<Elem>, next: &mut Vec<Elem>| -> Result<()> {
        if value[u] == usize::MAX {
            value[u] = v;
            next.push(u);
            Ok(())
        } else if value[u] != v {
            Err(Error::breach(
                "extension is well defined",
                s.label(u).to_string(),
            ))
        } else {
            Ok(())
        }
    };
    for x in ext.base.elements() {
        set(ext.inclusion[x], h[x], &mut value, &mut fresh)?;
    }
    while !fresh.is_empty() {
        known.extend(fresh.iter().copied());
        let mut next = Vec::new();
        for &u in &fresh {
            set(
                s.supplement(u),
                cod.supplement(value[u]),
                &mut value,
                &mut next,
            )?;
            for &v in &known {
                let (fu, fv) = (value[u], value[v]);
                set(s.meet(u, v), cod.meet(fu, fv), &mut value, &mut next)?;
                set(s.join(u, v), cod.join(fu, fv), &mut value, &mut next)?;
                set(s.implies(u, v), cod.implies(fu, fv), &mut value, &mut next)?;
                set(s.implies(v, u), cod.implies(fv, fu), &mut value, &mut next)?;
            }
        }
        fresh = next;
    }
    if value.contains(&usize::MAX) {
        return Err(Error::breach(
            "S(A) is generated by A",
            "propagation incomplete".to_string(),
        ));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::build_extension;
    use crate::testing::*;

    #[test]
    fn co_annihilator_examples() {
        let l = l5();
        let n = |s: &str| l.named(s).unwrap();
        assert_eq!(co_annihilator(&l, n("a")).to_vec(), vec![n("b"), n("1")]);
        assert_eq!(co_annihilator(&l, n("m")).to_vec(), vec![n("1")]);
        assert_eq!(co_annihilator(&l, n("m")), co_annihilator(&l, n("0")));
        assert!(co_annihilator(&l, n("1")).is_full());
        for x in l.elements() {
            assert_eq!(co_annihilator(&l, x), l.upset_of(l.supplement(x)));
        }
    }

    #[test]
    fn chain_into_two_by_three_is_not_an_s_hom() {
        let c3 = chain(3);
        let p = two_by_three();
        let h = vec![
            p.named("(0,0)").unwrap(),
            p.named("(1,m)").unwrap(),
            p.named("(1,1)").unwrap(),
        ];
        is_heyting_hom(&c3, &p, &h, false).unwrap();
        let v = is_s_homomorphism(&c3, &p, &h).unwrap();
        assert_eq!(v.witness, Some((0, 1)));
        let e = build_extension(&c3).unwrap();
        assert!(matches!(
            extend_s_hom(&e, &p, &h),
            Err(Error::NotSHom { a: 0, b: 1 })
        ));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let c3 = chain(3);
        assert!(matches!(
            is_s_homomorphism(&c3, &c3, &[0, 1, 1]),
            Err(Error::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn inclusion_extends_to_identity() {
        for a in [l5(), chain(3), b4(), two_two_plus_one()] {
            let e = build_extension(&a).unwrap();
            assert!(
                is_s_homomorphism(&a, &e.algebra, &e.inclusion)
                    .unwrap()
                    .holds
            );
            let bar = extend_s_hom(&e, &e.algebra, &e.inclusion).unwrap();
            assert_eq!(bar, (0..e.size()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn subdirect_embedding_extends_to_isomorphism() {
        let l = l5();
        let e = build_extension(&l).unwrap();
        let prod = &e.embed.product;
        let bar = extend_s_hom(&e, prod, &e.embed.embedding).unwrap();
        assert!(crate::lattice::is_injective_map(&bar));
        assert_eq!(bar.len(), prod.size());
    }

    #[test]
    fn non_central_codomain_is_rejected() {
        let l = l5();
        let e = build_extension(&l).unwrap();
        let id: Vec<Elem> = l.elements().collect();
        // identity into L5 is an S-hom but L5 is not centrally supplemented
        assert!(matches!(
            extend_s_hom(&e, &l, &id),
            Err(Error::NotCentrallySupplemented { .. })
        ));
    }
}
