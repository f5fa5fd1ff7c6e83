//! Apply rules one at a time and inspect what the engine offers.

use sequent_trainer::engine::{applicable_rules, apply_rule, RuleId, Selection};
use sequent_trainer::feedback::message_for;
use sequent_trainer::formula::parse_term;
use sequent_trainer::sequent::{parse_sequent, Side};

fn main() {
    let s = parse_sequent("forall x. P(x) -> Q(x), P(a) ==> Q(a)").unwrap();
    println!("goal: {s}");
    for i in 0..s.antecedent.len() {
        println!("  left {i}: {:?}", applicable_rules(&s, Side::L, i));
    }

    let inst = Selection::left(0).with_term(parse_term("a").unwrap());
    let [p] = apply_rule(&s, RuleId::AllL, &inst).unwrap().try_into().unwrap();
    println!("AllL with a:  {p}");

    let imp = p.antecedent.iter().position(|f| f.operator() == "->").unwrap();
    let premisses = apply_rule(&p, RuleId::ImpL, &Selection::left(imp)).unwrap();
    for q in &premisses {
        println!("ImpL premiss: {q}");
    }

    // The same rule on the wrong side is rejected with a diagnostic.
    let d = apply_rule(&p, RuleId::ImpL, &Selection::right(0)).unwrap_err();
    println!("\nrejected: {d}\n  {}", message_for(&d, "en"));
}
