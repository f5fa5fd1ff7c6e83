//! Minimal-parenthesis printer with a span map for scope highlighting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Formula, NodePath, Term};

/// Half-open character range `[start, end)` in printed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// Scope of every node of a printed formula, keyed by node path. A node's
/// span covers everything in its scope but not the parentheses around it.
pub type SpanMap = BTreeMap<NodePath, Span>;

// Binding levels; larger binds tighter.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn is_quantifier(f: &Formula) -> bool {
    matches!(f, Formula::Forall(..) | Formula::Exists(..))
}

struct Printer {
    out: String,
    spans: SpanMap,
}

impl Printer {
    fn push(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn pos(&self) -> usize {
        self.out.chars().count()
    }

    fn term(&mut self, t: &Term, path: &mut NodePath) {
        let start = self.pos();
        match t {
            Term::Var(v) => self.push(v),
            Term::Func(name, args) => {
                self.push(name);
                if !args.is_empty() {
                    self.push("(");
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            self.push(",");
                        }
                        path.push(i);
                        self.term(a, path);
                        path.pop();
                    }
                    self.push(")");
                }
            }
        }
        self.spans.insert(path.clone(), Span { start, end: self.pos() });
    }

    /// Prints `f` at `path`. `min` is the binding level the context demands;
    /// `tail` says whether `f` is the last thing before the end of the
    /// enclosing parentheses, which is where an open quantifier scope may end.
    fn child(&mut self, f: &Formula, path: &mut NodePath, idx: usize, min: u8, tail: bool) {
        path.push(idx);
        let parens = level(f) < min || (!tail && is_quantifier(f));
        if parens {
            self.push("(");
        }
        self.formula(f, path, tail || parens);
        if parens {
            self.push(")");
        }
        path.pop();
    }

    fn formula(&mut self, f: &Formula, path: &mut NodePath, tail: bool) {
        let start = self.pos();
        match f {
            Formula::Pred(name, args) => {
                self.push(name);
                if !args.is_empty() {
                    self.push("(");
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            self.push(",");
                        }
                        path.push(i);
                        self.term(a, path);
                        path.pop();
                    }
                    self.push(")");
                }
            }
            Formula::Eq(l, r) => {
                path.push(0);
                self.term(l, path);
                path.pop();
                self.push(" = ");
                path.push(1);
                self.term(r, path);
                path.pop();
            }
            Formula::Not(g) => {
                self.push("~");
                self.child(g, path, 0, UNARY, tail);
            }
            Formula::And(l, r) => self.binary(l, r, " & ", AND, AND + 1, path, tail),
            Formula::Or(l, r) => self.binary(l, r, " | ", OR, OR + 1, path, tail),
            Formula::Imp(l, r) => self.binary(l, r, " -> ", IMP + 1, IMP, path, tail),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                self.push(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
                self.push(v);
                if is_quantifier(body) {
                    // shared dot: `forall x forall y. φ`
                    self.push(" ");
                    path.push(0);
                    self.formula(body, path, tail);
                    path.pop();
                } else {
                    self.push(". ");
                    self.child(body, path, 0, IMP, tail);
                }
            }
        }
        self.spans.insert(path.clone(), Span { start, end: self.pos() });
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(&mut self, l: &Formula, r: &Formula, op: &str, lmin: u8, rmin: u8, path: &mut NodePath, tail: bool) {
        self.child(l, path, 0, lmin, false);
        self.push(op);
        self.child(r, path, 1, rmin, tail);
    }
}

/// Renders a formula with minimal parentheses and returns the scope span of
/// every subnode.
pub fn print_formula(f: &Formula) -> (String, SpanMap) {
    let mut p = Printer { out: String::new(), spans: SpanMap::new() };
    p.formula(f, &mut Vec::new(), true);
    (p.out, p.spans)
}

pub fn print_term(t: &Term) -> String {
    let mut p = Printer { out: String::new(), spans: SpanMap::new() };
    p.term(t, &mut Vec::new());
    p.out
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;

    fn atom(n: &str) -> Formula {
        Formula::atom(n)
    }

    fn substr(text: &str, s: Span) -> String {
        text.chars().skip(s.start).take(s.end - s.start).collect()
    }

    #[test]
    fn conjunction_root_span_is_whole_text() {
        let (text, spans) = print_formula(&Formula::and(atom("P"), atom("Q")));
        assert_eq!(text, "P & Q");
        assert_eq!(spans[&vec![]], Span { start: 0, end: 5 });
    }

    #[test]
    fn conjunction_under_implication() {
        let f = Formula::imp(Formula::and(atom("P"), atom("Q")), atom("R"));
        let (text, spans) = print_formula(&f);
        assert_eq!(text, "P & Q -> R");
        // `P & Q` occupies characters 0..5 of the printed text
        assert_eq!(spans[&vec![0]], Span { start: 0, end: 5 });
        assert_eq!(spans[&vec![1]], Span { start: 9, end: 10 });
    }

    #[test]
    fn quantifier_body_extends_to_end() {
        let f = Formula::forall(
            "x",
            Formula::imp(
                Formula::pred("E", vec![Term::var("x"), Term::constant("c")]),
                Formula::eq(Term::var("x"), Term::var("x")),
            ),
        );
        let (text, _) = print_formula(&f);
        assert_eq!(text, "forall x. E(x,c) -> x = x");
        assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn parentheses_only_where_needed() {
        let cases = [
            "P & Q -> R",
            "P & (Q -> R)",
            "(P -> Q) -> R",
            "P -> Q -> R",
            "P & (Q | R)",
            "P | Q & R",
            "~(P & Q)",
            "~~P",
            "(forall x. P(x)) & Q",
            "Q & forall x. P(x) | R",
            "Q & (forall x. P(x)) | R",
            "~(forall x. P(x)) -> Q",
            "~forall x. P(x) -> Q",
            "forall x exists y. P(x,y) & forall z. Q(z)",
            "exists y forall x. P(x,y) & forall z exists u. Q(z,u)",
            "(exists y forall x. P(x,y)) & forall z exists u. Q(z,u)",
            "f(a) = g(b,c)",
        ];
        for src in cases {
            let f = parse_formula(src).unwrap();
            let (text, _) = print_formula(&f);
            assert_eq!(text, src, "printing {src}");
        }
    }

    #[test]
    fn spans_nest_and_reparse() {
        let f = parse_formula("forall x forall y. E(x,y) -> x = f(y) | ~(P & Q)").unwrap();
        let (text, spans) = print_formula(&f);
        for (path, span) in &spans {
            if let Some(parent) = path.split_last().map(|(_, p)| p.to_vec()) {
                assert!(spans[&parent].contains(span), "{path:?}");
            }
            // siblings are disjoint
            let mut sib = path.clone();
            if let Some(last) = sib.last_mut() {
                *last += 1;
                if let Some(other) = spans.get(&sib) {
                    assert!(!span.overlaps(other));
                }
            }
        }
        assert_eq!(substr(&text, spans[&vec![0]]), "forall y. E(x,y) -> x = f(y) | ~(P & Q)");
        assert_eq!(substr(&text, spans[&vec![0, 0, 1, 1, 0]]), "P & Q");
    }
}
