//! Named small algebras used throughout the tests and the suite.

use crate::lattice::{downset_algebra, HeytingAlgebra};
use crate::order::Poset;

fn relabel(mut a: HeytingAlgebra, names: &[&str]) -> HeytingAlgebra {
    a.set_labels(names.iter().map(|s| s.to_string()).collect());
    a
}

/// The `n`-element chain. `C2`, `C3` and `C4` get the labels
/// `0 1`, `0 m 1` and `0 p q 1`; longer chains are labelled by index.
pub fn chain(n: usize) -> HeytingAlgebra {
    assert!(n >= 1, "a chain needs at least one element");
    let a = downset_algebra(&Poset::chain(n - 1));
    match n {
        2 => relabel(a, &["0", "1"]),
        3 => relabel(a, &["0", "m", "1"]),
        4 => relabel(a, &["0", "p", "q", "1"]),
        _ => {
            let mut a = a;
            a.set_labels((0..n).map(|i| i.to_string()).collect());
            a
        }
    }
}

/// The four-element Boolean algebra with atoms `p`, `q`.
pub fn b4() -> HeytingAlgebra {
    relabel(downset_algebra(&Poset::antichain(2)), &["0", "p", "q", "1"])
}

/// `0 < m < a, b < 1` with `a ∥ b`: supplemented but not centrally
/// supplemented.
pub fn l5() -> HeytingAlgebra {
    let vee = Poset::from_generating_pairs(3, &[(0, 1), (0, 2)]).expect("valid order");
    relabel(downset_algebra(&vee), &["0", "m", "a", "b", "1"])
}

pub fn two_by_three() -> HeytingAlgebra {
    HeytingAlgebra::product(&[&chain(2), &chain(3)])
        .expect("products of chains are Heyting")
        .0
}

pub fn c3_by_c3() -> HeytingAlgebra {
    let c3 = chain(3);
    HeytingAlgebra::product(&[&c3, &c3])
        .expect("products of chains are Heyting")
        .0
}

/// The four-element Boolean algebra with a new top adjoined.
pub fn two_two_plus_one() -> HeytingAlgebra {
    let p = Poset::from_generating_pairs(3, &[(0, 2), (1, 2)]).expect("valid order");
    relabel(downset_algebra(&p), &["0", "p", "q", "r", "1"])
}

/// The pentagon `0 < x < z < 1`, `0 < y < 1`: a lattice that is not
/// distributive.
pub fn pentagon() -> Poset {
    Poset::from_generating_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("pentagon")
}

/// All fixtures with their display names, in a fixed order.
pub fn fixtures() -> Vec<(&'static str, HeytingAlgebra)> {
    vec![
        ("C2", chain(2)),
        ("C3", chain(3)),
        ("C4", chain(4)),
        ("B4", b4()),
        ("L5", l5()),
        ("2x3", two_by_three()),
        ("C3xC3", c3_by_c3()),
        ("(2x2)+1", two_two_plus_one()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes_and_invariants() {
        let sizes: Vec<usize> = fixtures().iter().map(|(_, a)| a.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 4, 5, 6, 9, 5]);
        for (name, a) in fixtures() {
            a.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn boolean_plus_top_is_fsi() {
        let a = two_two_plus_one();
        assert!(a.is_fsi());
        assert_eq!(a.size(), 5);
    }

    #[test]
    fn c3_squared_is_centrally_supplemented() {
        assert!(c3_by_c3().is_centrally_supplemented().unwrap().holds);
    }

    #[test]
    fn chain_labels() {
        assert_eq!(chain(3).labels(), &["0", "m", "1"]);
        assert_eq!(chain(6).label(5), "5");
    }
}
