use super::{FiniteLattice, HeytingAlgebra};
use crate::Elem;

/// Checks that `map` preserves bounds, ∧ and ∨. The error names the first
/// failing operation and arguments.
pub fn is_bounded_lattice_hom(
    dom: &FiniteLattice,
    cod: &FiniteLattice,
    map: &[Elem],
) -> Result<(), String> {
    if map.len() != dom.size() || map.iter().any(|&x| x >= cod.size()) {
        return Err("map has the wrong shape".into());
    }
    if map[dom.bottom()] != cod.bottom() {
        return Err("bottom not preserved".into());
    }
    if map[dom.top()] != cod.top() {
        return Err("top not preserved".into());
    }
    for a in dom.elements() {
        for b in dom.elements() {
            if map[dom.meet(a, b)] != cod.meet(map[a], map[b]) {
                return Err(format!("meet not preserved at ({a}, {b})"));
            }
            if map[dom.join(a, b)] != cod.join(map[a], map[b]) {
                return Err(format!("join not preserved at ({a}, {b})"));
            }
        }
    }
    Ok(())
}

/// Bounded lattice homomorphism that also preserves →, and ⁺ when
/// `with_supplement` is set.
pub fn is_heyting_hom(
    dom: &HeytingAlgebra,
    cod: &HeytingAlgebra,
    map: &[Elem],
    with_supplement: bool,
) -> Result<(), String> {
    is_bounded_lattice_hom(dom, cod, map)?;
    for a in dom.elements() {
        for b in dom.elements() {
            if map[dom.implies(a, b)] != cod.implies(map[a], map[b]) {
                return Err(format!("implication not preserved at ({a}, {b})"));
            }
        }
        if with_supplement && map[dom.supplement(a)] != cod.supplement(map[a]) {
            return Err(format!("supplement not preserved at {a}"));
        }
    }
    Ok(())
}

/// Whether `map` is injective.
pub fn is_injective_map(map: &[Elem]) -> bool {
    let mut seen = std::collections::HashSet::new();
    map.iter().all(|x| seen.insert(*x))
}
