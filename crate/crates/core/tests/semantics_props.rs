mod common;

use std::collections::BTreeMap;

use common::{random_prop_sequent, Search};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sequent_trainer::formula::Formula;
use sequent_trainer::semantics::{falsify_small, prop_valid};
use sequent_trainer::sequent::Sequent;

/// Straightforward evaluator, written independently of the library's.
fn eval(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Pred(p, args) if args.is_empty() => v[p],
        Formula::Not(g) => !eval(g, v),
        Formula::And(l, r) => eval(l, v) && eval(r, v),
        Formula::Or(l, r) => eval(l, v) || eval(r, v),
        Formula::Imp(l, r) => !eval(l, v) || eval(r, v),
        other => panic!("not propositional: {other}"),
    }
}

fn atoms(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Pred(p, _) => out.push(p.clone()),
        Formula::Not(g) => atoms(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            atoms(l, out);
            atoms(r, out);
        }
        _ => {}
    }
}

fn valid_by_enumeration(s: &Sequent) -> bool {
    let mut names = Vec::new();
    s.formulas().for_each(|f| atoms(f, &mut names));
    names.sort();
    names.dedup();
    (0..1u32 << names.len()).all(|bits| {
        let v: BTreeMap<String, bool> = names.iter().enumerate().map(|(i, n)| (n.clone(), bits >> i & 1 == 1)).collect();
        !s.antecedent.iter().all(|f| eval(f, &v)) || s.succedent.iter().any(|f| eval(f, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn truth_table_agrees_with_enumeration(seed in any::<u64>()) {
        let s = random_prop_sequent(&mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(prop_valid(&s).unwrap(), valid_by_enumeration(&s), "{}", s);
    }
}

#[test]
fn proved_sequents_have_no_small_countermodel() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut search = Search::new();
    let mut proved = 0;
    for _ in 0..200 {
        let s = random_prop_sequent(&mut rng);
        if search.provable(&s, 8) {
            proved += 1;
            assert_eq!(falsify_small(&s, 3).unwrap(), None, "{s}");
        } else {
            // Propositional search is complete at this size, so an
            // unprovable sequent has a one-element countermodel.
            let m = falsify_small(&s, 1).unwrap().unwrap_or_else(|| panic!("{s}"));
            assert!(m.falsifies(&s));
        }
    }
    assert!(proved > 50, "{proved}");
}
