//! Terms and formulas of first-order logic with equality.
//!
//! Every subnode of a formula, including the terms below its atoms, is
//! addressed by a [`NodePath`]: the list of child indices from the root.
//! Children are numbered as follows.
//!
//! | node                     | children                   |
//! |--------------------------|----------------------------|
//! | `P(t1,..,tn)`            | `0..n` → the argument terms |
//! | `s = t`                  | `0` → `s`, `1` → `t`       |
//! | `~φ`                     | `0` → `φ`                  |
//! | `φ & ψ`, `φ \| ψ`, `φ -> ψ` | `0` → `φ`, `1` → `ψ`     |
//! | `forall x. φ`, `exists x. φ` | `0` → `φ`              |
//! | `f(t1,..,tn)`            | `0..n` → the argument terms |

mod parse;
mod print;
mod signature;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_formula, parse_term, ParseError, Parser};
pub use print::{print_formula, print_term, Span, SpanMap};
pub use signature::{fresh_constant, fresh_constant_avoiding, is_ground_over, Signature, SignatureError};
pub use subst::{replace_at, substitute, PathError, SubstError};

/// Address of a subnode: child indices from the root.
pub type NodePath = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Function application; a constant is a 0-ary function.
    Func(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// A borrowed subnode of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRef<'a> {
    Formula(&'a Formula),
    Term(&'a Term),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Func(name.into(), Vec::new())
    }

    pub fn func(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Func(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Returns the constant's name when the term is a 0-ary function.
    pub fn as_constant(&self) -> Option<&str> {
        match self {
            Term::Func(name, args) if args.is_empty() => Some(name),
            _ => None,
        }
    }

    pub fn term_at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::Var(_) => None,
                Term::Func(_, args) => args.get(i)?.term_at(rest),
            },
        }
    }

    /// Does `other` occur as a subterm of `self` (including `self`)?
    pub fn contains(&self, other: &Term) -> bool {
        self == other
            || match self {
                Term::Var(_) => false,
                Term::Func(_, args) => args.iter().any(|a| a.contains(other)),
            }
    }

    pub(crate) fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn walk<'a>(&'a self, path: &mut NodePath, f: &mut impl FnMut(&[usize], NodeRef<'a>)) {
        f(path, NodeRef::Term(self));
        if let Term::Func(_, args) = self {
            for (i, a) in args.iter().enumerate() {
                path.push(i);
                a.walk(path, f);
                path.pop();
            }
        }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// The main operator as it is written in concrete syntax; the predicate
    /// name for predicate atoms.
    pub fn operator(&self) -> &str {
        match self {
            Formula::Pred(name, _) => name,
            Formula::Eq(..) => "=",
            Formula::Not(_) => "~",
            Formula::And(..) => "&",
            Formula::Or(..) => "|",
            Formula::Imp(..) => "->",
            Formula::Forall(..) => "forall",
            Formula::Exists(..) => "exists",
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::Eq(..))
    }

    pub fn node_at(&self, path: &[usize]) -> Option<NodeRef<'_>> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(NodeRef::Formula(self));
        };
        match self {
            Formula::Pred(_, args) => args.get(i)?.term_at(rest).map(NodeRef::Term),
            Formula::Eq(l, r) => match i {
                0 => l.term_at(rest).map(NodeRef::Term),
                1 => r.term_at(rest).map(NodeRef::Term),
                _ => None,
            },
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => {
                if i == 0 {
                    f.node_at(rest)
                } else {
                    None
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => match i {
                0 => l.node_at(rest),
                1 => r.node_at(rest),
                _ => None,
            },
        }
    }

    /// Preorder traversal over every formula and term node with its path.
    pub fn walk<'a>(&'a self, mut f: impl FnMut(&[usize], NodeRef<'a>)) {
        let mut path = Vec::new();
        self.walk_inner(&mut path, &mut f);
    }

    fn walk_inner<'a>(&'a self, path: &mut NodePath, f: &mut impl FnMut(&[usize], NodeRef<'a>)) {
        f(path, NodeRef::Formula(self));
        match self {
            Formula::Pred(_, args) => {
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    a.walk(path, f);
                    path.pop();
                }
            }
            Formula::Eq(l, r) => {
                for (i, a) in [l, r].into_iter().enumerate() {
                    path.push(i);
                    a.walk(path, f);
                    path.pop();
                }
            }
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
                path.push(0);
                g.walk_inner(path, f);
                path.pop();
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                path.push(0);
                l.walk_inner(path, f);
                path.pop();
                path.push(1);
                r.walk_inner(path, f);
                path.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<&'a str>) {
        let terms = |ts: &mut dyn Iterator<Item = &'a Term>, out: &mut BTreeSet<&'a str>| {
            let mut vs = BTreeSet::new();
            ts.for_each(|t| t.collect_vars(&mut vs));
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Pred(_, args) => terms(&mut args.iter(), out),
            Formula::Eq(l, r) => terms(&mut [l, r].into_iter(), out),
            Formula::Not(f) => f.collect_free_vars(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free_vars(bound, out);
                r.collect_free_vars(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Names bound by some quantifier anywhere in the formula.
    pub fn bound_vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(|_, n| {
            if let NodeRef::Formula(Formula::Forall(v, _) | Formula::Exists(v, _)) = n {
                out.insert(v.as_str());
            }
        });
        out
    }

    /// Every function/constant name occurring in the formula.
    pub fn func_names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(|_, n| {
            if let NodeRef::Term(Term::Func(name, _)) = n {
                out.insert(name.as_str());
            }
        });
        out
    }

    /// A constant whose name is bound by an enclosing quantifier cannot be
    /// written down: the printed text would re-read it as the variable.
    /// Returns the first such name.
    pub fn captured_constant(&self) -> Option<&str> {
        fn term<'a>(t: &'a Term, bound: &[&str]) -> Option<&'a str> {
            match t {
                Term::Var(_) => None,
                Term::Func(name, args) if args.is_empty() => {
                    bound.contains(&name.as_str()).then_some(name.as_str())
                }
                Term::Func(_, args) => args.iter().find_map(|a| term(a, bound)),
            }
        }
        fn go<'a>(f: &'a Formula, bound: &mut Vec<&'a str>) -> Option<&'a str> {
            match f {
                Formula::Pred(_, args) => args.iter().find_map(|a| term(a, bound)),
                Formula::Eq(l, r) => term(l, bound).or_else(|| term(r, bound)),
                Formula::Not(g) => go(g, bound),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                    go(l, bound).or_else(|| go(r, bound))
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    bound.push(v);
                    let found = go(g, bound);
                    bound.pop();
                    found
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// Number of formula and term nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(|_, _| n += 1);
        n
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self).0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn node_paths_address_terms_and_formulas() {
        // forall x. E(x,c) -> x = f(c)
        let f = Formula::forall(
            "x",
            Formula::imp(
                Formula::pred("E", vec![Term::var("x"), c("c")]),
                Formula::eq(Term::var("x"), Term::func("f", vec![c("c")])),
            ),
        );
        assert!(matches!(f.node_at(&[]), Some(NodeRef::Formula(Formula::Forall(..)))));
        assert_eq!(f.node_at(&[0, 0, 1]), Some(NodeRef::Term(&c("c"))));
        assert_eq!(f.node_at(&[0, 1, 1, 0]), Some(NodeRef::Term(&c("c"))));
        assert_eq!(f.node_at(&[0, 2]), None);
        assert_eq!(f.node_at(&[1]), None);
        assert_eq!(f.size(), 9);
    }

    #[test]
    fn free_and_bound_variables() {
        let f = Formula::and(
            Formula::pred("P", vec![Term::var("x")]),
            Formula::forall("x", Formula::pred("Q", vec![Term::var("x"), Term::var("y")])),
        );
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x", "y"]);
        assert_eq!(f.bound_vars().into_iter().collect::<Vec<_>>(), vec!["x"]);
        assert!(!f.is_closed());
    }

    #[test]
    fn captured_constant_detection() {
        let f = Formula::forall("x", Formula::pred("P", vec![c("x")]));
        assert_eq!(f.captured_constant(), Some("x"));
        let g = Formula::and(
            Formula::pred("P", vec![c("x")]),
            Formula::forall("x", Formula::pred("P", vec![Term::var("x")])),
        );
        assert_eq!(g.captured_constant(), None);
    }

    #[test]
    fn func_names_include_nested_terms() {
        let f = Formula::pred("P", vec![Term::func("f", vec![Term::func("g", vec![c("a")])])]);
        assert_eq!(f.func_names().into_iter().collect::<Vec<_>>(), vec!["a", "f", "g"]);
    }
}
