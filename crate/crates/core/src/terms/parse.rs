//! Text syntax for terms and equations.
//!
//! ```text
//! equation := term ("=" | "≈" | "<=" | "≤") term
//! term     := join ("->" term)?              right associative
//! join     := meet ("v" meet)*
//! meet     := post ("^" post)*
//! post     := atom ("*" | "+")*
//! atom     := "0" | "1" | ident | "(" term ")"
//! ```
//!
//! The Unicode symbols `∧ ∨ → ⁺ ≈ ≤` are accepted as aliases.
//! The bare identifier `v` is the join operator, never a variable.

use std::collections::BTreeSet;

use super::{Equation, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Meet,
    Join,
    Arrow,
    Star,
    Plus,
    Eq,
    Leq,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' => Tok::Zero,
            '1' => Tok::One,
            '^' | '∧' => Tok::Meet,
            '∨' => Tok::Join,
            '→' => Tok::Arrow,
            '-' if next == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            '*' => Tok::Star,
            '+' | '⁺' => Tok::Plus,
            '=' | '≈' => Tok::Eq,
            '≤' => Tok::Leq,
            '<' if next == Some('=') => {
                i += 1;
                Tok::Leq
            }
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                i = j;
                out.push((
                    pos,
                    if word == "v" {
                        Tok::Join
                    } else {
                        Tok::Ident(word)
                    },
                ));
                continue;
            }
            c => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

/// Orders names by their non-digit prefix, then by the numeric value of any
/// trailing digits, so `x2` precedes `x10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = name.split_at(name.len() - digits);
    (
        head.to_string(),
        tail.parse().unwrap_or(0),
        name.to_string(),
    )
}

/// Raw syntax tree with variable names not yet indexed.
enum Raw {
    Var(String),
    Bot,
    Top,
    Meet(Box<Raw>, Box<Raw>),
    Join(Box<Raw>, Box<Raw>),
    Implies(Box<Raw>, Box<Raw>),
    Pseudo(Box<Raw>),
    Supp(Box<Raw>),
}

impl Raw {
    fn names(&self, out: &mut BTreeSet<(String, u64, String)>) {
        match self {
            Raw::Var(n) => {
                out.insert(natural_key(n));
            }
            Raw::Bot | Raw::Top => {}
            Raw::Meet(a, b) | Raw::Join(a, b) | Raw::Implies(a, b) => {
                a.names(out);
                b.names(out);
            }
            Raw::Pseudo(a) | Raw::Supp(a) => a.names(out),
        }
    }

    fn index(&self, vars: &[String]) -> Term {
        match self {
            Raw::Var(n) => Term::Var(vars.iter().position(|v| v == n).expect("collected name")),
            Raw::Bot => Term::Bot,
            Raw::Top => Term::Top,
            Raw::Meet(a, b) => Term::meet(a.index(vars), b.index(vars)),
            Raw::Join(a, b) => Term::join(a.index(vars), b.index(vars)),
            Raw::Implies(a, b) => Term::implies(a.index(vars), b.index(vars)),
            Raw::Pseudo(a) => Term::pseudo(a.index(vars)),
            Raw::Supp(a) => Term::supp(a.index(vars)),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Raw> {
        let lhs = self.join()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            return Ok(Raw::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Raw> {
        let mut t = self.meet()?;
        while self.eat(&Tok::Join) {
            t = Raw::Join(Box::new(t), Box::new(self.meet()?));
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Raw> {
        let mut t = self.post()?;
        while self.eat(&Tok::Meet) {
            t = Raw::Meet(Box::new(t), Box::new(self.post()?));
        }
        Ok(t)
    }

    fn post(&mut self) -> Result<Raw> {
        let mut t = self.atom()?;
        loop {
            if self.eat(&Tok::Star) {
                t = Raw::Pseudo(Box::new(t));
            } else if self.eat(&Tok::Plus) {
                t = Raw::Supp(Box::new(t));
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> Result<Raw> {
        let t = match self.peek().cloned() {
            Some(Tok::Zero) => Raw::Bot,
            Some(Tok::One) => Raw::Top,
            Some(Tok::Ident(n)) => Raw::Var(n),
            Some(Tok::Open) => {
                self.at += 1;
                let t = self.term()?;
                if !self.eat(&Tok::Close) {
                    return self.fail("expected `)`");
                }
                return Ok(t);
            }
            Some(t) => return self.fail(format!("unexpected {t:?}")),
            None => return self.fail("unexpected end of input"),
        };
        self.at += 1;
        Ok(t)
    }
}

fn parser(src: &str) -> Result<Parser> {
    Ok(Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
    })
}

fn variables(raws: &[&Raw]) -> Vec<String> {
    let mut names = BTreeSet::new();
    for r in raws {
        r.names(&mut names);
    }
    names.into_iter().map(|(_, _, n)| n).collect()
}

/// Parses a single term; returns it with its variable names.
pub fn parse_term(src: &str) -> Result<(Term, Vec<String>)> {
    let mut p = parser(src)?;
    let raw = p.term()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    let vars = variables(&[&raw]);
    Ok((raw.index(&vars), vars))
}

/// Parses `s = t` or `s <= t`, the latter stored as `s ∧ t = s`.
pub fn parse_equation(name: &str, src: &str) -> Result<Equation> {
    let mut p = parser(src)?;
    let lhs = p.term()?;
    let leq = match p.peek() {
        Some(Tok::Eq) => false,
        Some(Tok::Leq) => true,
        _ => return p.fail("expected `=` or `<=`"),
    };
    p.at += 1;
    let rhs = p.term()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    let vars = variables(&[&lhs, &rhs]);
    let (l, r) = (lhs.index(&vars), rhs.index(&vars));
    Ok(if leq {
        Equation::inequation(name, l, r, vars)
    } else {
        Equation::new(name, l, r, vars)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let (t, vars) = parse_term("x ^ y v z -> w*+").unwrap();
        assert_eq!(vars, ["w", "x", "y", "z"]);
        let expected = Term::implies(
            Term::join(Term::meet(Term::Var(1), Term::Var(2)), Term::Var(3)),
            Term::supp(Term::pseudo(Term::Var(0))),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn arrow_is_right_associative() {
        let (t, _) = parse_term("a -> b -> c").unwrap();
        assert_eq!(
            t,
            Term::implies(Term::Var(0), Term::implies(Term::Var(1), Term::Var(2)))
        );
    }

    #[test]
    fn natural_variable_order() {
        let (_, vars) = parse_term("x10 v x2 v x1").unwrap();
        assert_eq!(vars, ["x1", "x2", "x10"]);
    }

    #[test]
    fn unicode_aliases() {
        let a = parse_equation("u", "(x ∨ y)⁺ ≈ x⁺ ∧ y⁺").unwrap();
        let b = parse_equation("u", "(x v y)+ = x+ ^ y+").unwrap();
        assert_eq!(a, b);
        let c = parse_equation("u", "x → y ≤ 1").unwrap();
        let d = parse_equation("u", "x -> y <= 1").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn inequation_encoding() {
        let eq = parse_equation("le", "x <= y").unwrap();
        assert_eq!(eq.lhs, Term::meet(Term::Var(0), Term::Var(1)));
        assert_eq!(eq.rhs, Term::Var(0));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_equation("bad", "x ^ = y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_term("(x v y"),
            Err(Error::Parse { pos: 6, .. })
        ));
        assert!(matches!(
            parse_term("x % y"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_equation("e", "x v y"),
            Err(Error::Parse { .. })
        ));
    }
}
