//! Replay the worked group 2 proof and print it as a text derivation.

use sequent_trainer::corpus::{group2_proof, DOUBLED, S1};
use sequent_trainer::proof::{export_text, verify};

fn main() {
    let t = group2_proof();
    let seen: Vec<String> = t.preorder().iter().map(|n| n.sequent.to_string()).collect();
    for (name, s) in [("S1", S1), ("doubled", DOUBLED)] {
        println!("{name:>8} reached: {}", seen.iter().any(|x| x == s));
    }
    let report = verify(&t);
    println!("{} nodes, complete: {}, verified: {}\n", t.len(), report.complete, report.ok);
    print!("{}", export_text(&t));
}
