//! Sequents `Γ ==> Δ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formula::{print_formula, Formula, ParseError, Parser, Signature, SignatureError};

/// Which side of `==>` a formula lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// Antecedent and succedent as ordered lists. The order only fixes how a
/// sequent is displayed and addressed; two sequents with the same formula
/// multisets mean the same thing (see [`Sequent::same_multisets`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Self {
        Sequent { antecedent, succedent }
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::L => &self.antecedent,
            Side::R => &self.succedent,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Formula> {
        match side {
            Side::L => &mut self.antecedent,
            Side::R => &mut self.succedent,
        }
    }

    pub fn get(&self, side: Side, index: usize) -> Option<&Formula> {
        self.side(side).get(index)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(&self.succedent)
    }

    pub fn is_empty(&self) -> bool {
        self.antecedent.is_empty() && self.succedent.is_empty()
    }

    /// Every predicate and function symbol occurring in the sequent.
    pub fn signature(&self) -> Result<Signature, SignatureError> {
        Signature::of_formulas(self.formulas())
    }

    /// Names bound by a quantifier somewhere in the sequent.
    pub fn bound_names(&self) -> BTreeSet<&str> {
        self.formulas().flat_map(|f| f.bound_vars()).collect()
    }

    /// Equality up to reordering within each side.
    pub fn same_multisets(&self, other: &Sequent) -> bool {
        fn sorted(v: &[Formula]) -> Vec<&Formula> {
            let mut v: Vec<_> = v.iter().collect();
            v.sort();
            v
        }
        sorted(&self.antecedent) == sorted(&other.antecedent) && sorted(&self.succedent) == sorted(&other.succedent)
    }

    pub fn is_closed(&self) -> bool {
        self.formulas().all(Formula::is_closed)
    }
}

pub fn signature_of(s: &Sequent) -> Result<Signature, SignatureError> {
    s.signature()
}

/// Parses `φ1, .., φn ==> ψ1, .., ψm`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let (antecedent, succedent) = p.sequent_sides()?;
    Ok(Sequent { antecedent, succedent })
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

fn join(fs: &[Formula]) -> String {
    fs.iter().map(|f| print_formula(f).0).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.antecedent.is_empty(), self.succedent.is_empty()) {
            (true, true) => f.write_str("==>"),
            (true, false) => write!(f, "==> {}", join(&self.succedent)),
            (false, true) => write!(f, "{} ==>", join(&self.antecedent)),
            (false, false) => write!(f, "{} ==> {}", join(&self.antecedent), join(&self.succedent)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    const S0: &str = "forall x forall y. E(x,y) -> x = f(y) ==> forall x forall y forall z. E(x,z) & E(y,z) -> x = y";
    const S1: &str = "forall x forall y. E(x,y) -> x = f(y), E(a,c), E(b,c) ==> a = b";

    #[test]
    fn round_trip_worked_sequents() {
        for text in [S0, S1, "==>", "P ==>", "==> P", "P, Q ==> R, S"] {
            let s = parse_sequent(text).unwrap();
            assert_eq!(s.to_string(), text);
        }
    }

    #[test]
    fn signature_of_s1() {
        let sig = signature_of(&parse_sequent(S1).unwrap()).unwrap();
        assert_eq!(sig.preds, BTreeMap::from([("E".into(), 2)]));
        assert_eq!(
            sig.funcs,
            BTreeMap::from([("a".into(), 0), ("b".into(), 0), ("c".into(), 0), ("f".into(), 1)])
        );
        assert!(signature_of(&Sequent::default()).unwrap().is_empty());
        let sig = signature_of(&parse_sequent("==> f(c) = c").unwrap()).unwrap();
        assert!(sig.preds.is_empty());
        assert_eq!(sig.funcs, BTreeMap::from([("c".into(), 0), ("f".into(), 1)]));
    }

    #[test]
    fn fresh_constants_for_worked_sequents() {
        use crate::formula::fresh_constant;
        let s0 = signature_of(&parse_sequent(S0).unwrap()).unwrap();
        assert_eq!(fresh_constant(&s0, "a"), "a");
        let s1 = signature_of(&parse_sequent(S1).unwrap()).unwrap();
        assert_eq!(fresh_constant(&s1, "a"), "a1");
    }

    #[test]
    fn parse_errors() {
        let e = parse_sequent("P & ==> Q").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse_sequent("P, ==> Q").is_err());
        assert!(parse_sequent("P Q ==> R").is_err());
        assert!(parse_sequent("P ==> Q ==> R").is_err());
        assert!(parse_sequent("P(a) ==> P(a,b)").is_err());
    }

    #[test]
    fn multiset_equality_ignores_order() {
        let a = parse_sequent("P, Q ==> R").unwrap();
        let b = parse_sequent("Q, P ==> R").unwrap();
        let c = parse_sequent("P, P ==> R").unwrap();
        assert!(a.same_multisets(&b));
        assert!(!a.same_multisets(&c));
        assert_ne!(a, b);
    }
}
