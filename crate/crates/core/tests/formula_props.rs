mod common;

use common::closed_formula;
use proptest::prelude::*;
use sequent_trainer::formula::{
    parse_formula, parse_term, print_formula, print_term, replace_at, substitute, Formula, NodeRef, Term,
};

/// Variables and constants print alike; a substring cut out of its binder
/// parses its variables as constants.
fn erase_term(t: &Term) -> Term {
    match t {
        Term::Var(v) => Term::constant(v.clone()),
        Term::Func(g, args) => Term::func(g.clone(), args.iter().map(erase_term).collect()),
    }
}

fn erase(f: &Formula) -> Formula {
    match f {
        Formula::Pred(p, args) => Formula::pred(p.clone(), args.iter().map(erase_term).collect()),
        Formula::Eq(l, r) => Formula::eq(erase_term(l), erase_term(r)),
        Formula::Not(g) => Formula::not(erase(g)),
        Formula::And(l, r) => Formula::and(erase(l), erase(r)),
        Formula::Or(l, r) => Formula::or(erase(l), erase(r)),
        Formula::Imp(l, r) => Formula::imp(erase(l), erase(r)),
        // The binder is kept; inside it the parser turns the name back
        // into a variable, so compare bodies with variables erased.
        Formula::Forall(v, g) => Formula::forall(v.clone(), erase(g)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), erase(g)),
    }
}

fn label(n: NodeRef<'_>) -> String {
    match n {
        NodeRef::Formula(Formula::Pred(p, _)) => p.clone(),
        NodeRef::Formula(Formula::Forall(v, _)) => format!("forall {v}"),
        NodeRef::Formula(Formula::Exists(v, _)) => format!("exists {v}"),
        NodeRef::Formula(f) => f.operator().to_string(),
        NodeRef::Term(Term::Var(v)) => format!("var {v}"),
        NodeRef::Term(Term::Func(g, _)) => g.clone(),
    }
}

fn term_paths(f: &Formula) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    f.walk(|p, n| {
        if matches!(n, NodeRef::Term(_)) {
            out.push(p.to_vec());
        }
    });
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_print(f in closed_formula()) {
        let (text, _) = print_formula(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f.clone(), "{}", text);
        prop_assert_eq!(print_formula(&parse_formula(&text).unwrap()).0, text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn spans_nest_and_reparse(f in closed_formula()) {
        let (text, spans) = print_formula(&f);
        let chars: Vec<char> = text.chars().collect();
        let root = spans[&Vec::new()];
        prop_assert_eq!((root.start, root.end), (0, chars.len()));
        for (path, span) in &spans {
            if let Some((_, parent)) = path.split_last().map(|(_, p)| ((), p.to_vec())) {
                prop_assert!(spans[&parent].contains(span), "{:?} not inside parent in {}", path, text);
            }
            let mut sibling = path.clone();
            if let Some(last) = sibling.last_mut() {
                *last += 1;
                if let Some(next) = spans.get(&sibling) {
                    prop_assert!(!span.overlaps(next));
                }
            }
            let sub: String = chars[span.start..span.end].iter().collect();
            match f.node_at(path).unwrap() {
                NodeRef::Formula(g) => prop_assert_eq!(erase(&parse_formula(&sub).unwrap()), erase(g), "{}", sub),
                NodeRef::Term(t) => prop_assert_eq!(erase_term(&parse_term(&sub).unwrap()), erase_term(t), "{}", sub),
            }
        }
    }

    #[test]
    fn substituting_a_non_free_variable_changes_nothing(f in closed_formula(), v in "[xyzw]") {
        prop_assert!(f.free_vars().is_empty());
        prop_assert_eq!(substitute(&f, &v, &Term::constant("k")).unwrap(), f);
    }

    #[test]
    fn replace_at_changes_one_node(f in closed_formula(), pick in any::<prop::sample::Index>()) {
        let paths = term_paths(&f);
        prop_assume!(!paths.is_empty());
        let target = pick.get(&paths).clone();
        let k = Term::constant("k");
        let g = replace_at(&f, &target, &k).unwrap();
        let outside = |h: &Formula| {
            let mut labels = Vec::new();
            h.walk(|p, n| if !p.starts_with(&target) { labels.push(label(n)) });
            labels.sort();
            labels
        };
        prop_assert_eq!(outside(&f), outside(&g));
        match g.node_at(&target) {
            Some(NodeRef::Term(t)) => prop_assert_eq!(print_term(t), "k"),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
