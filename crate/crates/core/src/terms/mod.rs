//! Terms and equations over `{0, 1, ∧, ∨, →, *, ⁺}`.
//!
//! Inequations `s ≤ t` are stored as `s ∧ t = s`, so every check goes
//! through the same evaluation path.

mod library;
mod parse;

pub use library::{
    bd2_equivalence_check, closure_experiment, hsp_chain, library, named, Bd2Verdict,
    ClosureFailure, ClosureReport, HspVerdict,
};
pub use parse::{parse_equation, parse_term};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Signature;
use crate::Elem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Bot,
    Top,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Implies(Box<Term>, Box<Term>),
    /// `x*`
    Pseudo(Box<Term>),
    /// `x⁺`
    Supp(Box<Term>),
}

impl Term {
    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::Implies(Box::new(a), Box::new(b))
    }

    pub fn pseudo(a: Term) -> Term {
        Term::Pseudo(Box::new(a))
    }

    pub fn supp(a: Term) -> Term {
        Term::Supp(Box::new(a))
    }

    /// One more than the largest variable index.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Bot | Term::Top => 0,
            Term::Meet(a, b) | Term::Join(a, b) | Term::Implies(a, b) => a.arity().max(b.arity()),
            Term::Pseudo(a) | Term::Supp(a) => a.arity(),
        }
    }

    pub fn uses_supplement(&self) -> bool {
        match self {
            Term::Var(_) | Term::Bot | Term::Top => false,
            Term::Meet(a, b) | Term::Join(a, b) | Term::Implies(a, b) => {
                a.uses_supplement() || b.uses_supplement()
            }
            Term::Pseudo(a) => a.uses_supplement(),
            Term::Supp(_) => true,
        }
    }

    /// Renders in the text syntax accepted by [`parse_term`], naming
    /// variable `i` by `vars[i]`.
    pub fn render(&self, vars: &[String]) -> String {
        fn go(t: &Term, vars: &[String], out: &mut String) {
            let bin = |a: &Term, op: &str, b: &Term, out: &mut String| {
                out.push('(');
                go(a, vars, out);
                out.push_str(op);
                go(b, vars, out);
                out.push(')');
            };
            match t {
                Term::Var(i) => out.push_str(vars.get(*i).map_or("?", |s| s.as_str())),
                Term::Bot => out.push('0'),
                Term::Top => out.push('1'),
                Term::Meet(a, b) => bin(a, " ^ ", b, out),
                Term::Join(a, b) => bin(a, " v ", b, out),
                Term::Implies(a, b) => bin(a, " -> ", b, out),
                Term::Pseudo(a) => {
                    go(a, vars, out);
                    out.push('*');
                }
                Term::Supp(a) => {
                    go(a, vars, out);
                    out.push('+');
                }
            }
        }
        let mut out = String::new();
        go(self, vars, &mut out);
        out
    }
}

/// `lhs = rhs` with named variables indexed in natural order of their names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<String>,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term, vars: Vec<String>) -> Self {
        Equation {
            name: name.into(),
            lhs,
            rhs,
            vars,
        }
    }

    /// `s ≤ t` as `s ∧ t = s`.
    pub fn inequation(name: impl Into<String>, s: Term, t: Term, vars: Vec<String>) -> Self {
        Equation::new(name, Term::meet(s.clone(), t), s, vars)
    }

    pub fn arity(&self) -> usize {
        self.vars.len().max(self.lhs.arity()).max(self.rhs.arity())
    }

    pub fn uses_supplement(&self) -> bool {
        self.lhs.uses_supplement() || self.rhs.uses_supplement()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}",
            self.lhs.render(&self.vars),
            self.rhs.render(&self.vars)
        )
    }
}

/// Bottom-up evaluation against the algebra's tables.
pub fn eval<A: Signature + ?Sized>(t: &Term, a: &A, assignment: &[Elem]) -> Result<Elem> {
    Ok(match t {
        Term::Var(i) => *assignment.get(*i).ok_or_else(|| {
            Error::breach("assignment covers every variable", format!("x{}", i + 1))
        })?,
        Term::Bot => a.bottom(),
        Term::Top => a.top(),
        Term::Meet(x, y) => a.meet(eval(x, a, assignment)?, eval(y, a, assignment)?),
        Term::Join(x, y) => a.join(eval(x, a, assignment)?, eval(y, a, assignment)?),
        Term::Implies(x, y) => a
            .implies(eval(x, a, assignment)?, eval(y, a, assignment)?)
            .ok_or(Error::UnsupportedOperation("→"))?,
        Term::Pseudo(x) => a
            .pseudocomplement(eval(x, a, assignment)?)
            .ok_or(Error::UnsupportedOperation("*"))?,
        Term::Supp(x) => a
            .supplement(eval(x, a, assignment)?)
            .ok_or(Error::UnsupportedOperation("⁺"))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatVerdict {
    pub holds: bool,
    /// The first failing assignment as `(variable, element label)` pairs.
    pub witness: Option<Vec<(String, String)>>,
    /// Indices of the failing assignment.
    pub witness_elems: Option<Vec<Elem>>,
    pub assignments: u64,
}

/// Checks every assignment in mixed-radix order, first variable most
/// significant, and reports the first failure.
pub fn satisfies<A: Signature + ?Sized>(a: &A, eq: &Equation) -> Result<SatVerdict> {
    let k = eq.arity();
    let n = a.size();
    let mut v = vec![0; k];
    let mut count = 0u64;
    loop {
        count += 1;
        if eval(&eq.lhs, a, &v)? != eval(&eq.rhs, a, &v)? {
            let names = (0..k).map(|i| {
                eq.vars
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1))
            });
            return Ok(SatVerdict {
                holds: false,
                witness: Some(
                    names
                        .zip(v.iter().map(|&e| a.label(e).to_string()))
                        .collect(),
                ),
                witness_elems: Some(v),
                assignments: count,
            });
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(SatVerdict {
                    holds: true,
                    witness: None,
                    witness_elems: None,
                    assignments: count,
                });
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    fn x() -> Term {
        Term::Var(0)
    }

    #[test]
    fn eval_examples() {
        let c3 = chain(3);
        let t = Term::join(x(), Term::pseudo(x()));
        assert_eq!(eval(&t, &c3, &[1]).unwrap(), 1);
        let a = l5();
        let t = Term::meet(Term::supp(x()), Term::supp(Term::supp(x())));
        assert_eq!(
            a.label(eval(&t, &a, &[a.named("a").unwrap()]).unwrap()),
            "m"
        );
        assert_eq!(eval(&Term::Top, &b4(), &[]).unwrap(), 3);
    }

    #[test]
    fn supplement_needs_support() {
        // the pentagon lacks some relative pseudocomplements
        let (n5, _) = crate::lattice::FiniteLattice::from_poset(&pentagon(), None).unwrap();
        let t = Term::implies(Term::Var(0), Term::Var(1));
        let err = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .find_map(|(i, j)| eval(&t, &n5, &[i, j]).err());
        assert!(matches!(err, Some(Error::UnsupportedOperation("→"))));
    }

    #[test]
    fn dual_stone_fails_on_l5_at_a_b() {
        let eq = parse_equation("dual-stone", "(x v y)+ = x+ ^ y+").unwrap();
        let v = satisfies(&l5(), &eq).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness.unwrap(),
            vec![
                ("x".to_string(), "a".to_string()),
                ("y".to_string(), "b".to_string())
            ]
        );
    }

    #[test]
    fn assignment_count_is_exhaustive() {
        let eq = parse_equation("t", "x ^ x* = 0").unwrap();
        let v = satisfies(&l5(), &eq).unwrap();
        assert!(v.holds);
        assert_eq!(v.assignments, 5);
        let eq = parse_equation("t", "x ^ y = y ^ x").unwrap();
        assert_eq!(satisfies(&chain(4), &eq).unwrap().assignments, 16);
    }

    #[test]
    fn render_round_trips() {
        let eq = parse_equation("bd2", "1 = x2 v (x2 -> (x1 v x1*))").unwrap();
        let again = parse_equation("bd2", &eq.to_string()).unwrap();
        assert_eq!(eq, again);
    }
}
