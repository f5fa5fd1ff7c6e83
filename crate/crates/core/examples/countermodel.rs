//! Search small finite models for a countermodel, or show why the search
//! gives up.

use sequent_trainer::corpus::{GROUP1, GROUP3};
use sequent_trainer::semantics::{falsify_small, interpretation_count, prop_valid};
use sequent_trainer::sequent::parse_sequent;

fn main() {
    let prop = parse_sequent("P -> Q, Q ==> P").unwrap();
    println!("{prop}: valid = {:?}", prop_valid(&prop));

    for text in ["forall x. P(x) | Q(x) ==> forall x. P(x)", "P(a) ==> forall x. P(x)", GROUP1, GROUP3] {
        let s = parse_sequent(text).unwrap();
        let sig = s.signature().unwrap();
        let counts: Vec<u128> = (1..=3).map(|n| interpretation_count(&sig, n)).collect();
        println!("\n{s}\n  interpretations for sizes 1..3: {counts:?}");
        match falsify_small(&s, 3) {
            Ok(Some(m)) => println!("  countermodel: {m}"),
            Ok(None) => println!("  no countermodel up to size 3"),
            Err(e) => println!("  {e}"),
        }
    }
}
