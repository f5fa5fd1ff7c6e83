//! Parse a sequent, print it back and show the scope of every node.
//!
//! `cargo run --example parse_and_highlight -- "forall x. P(x) -> Q(x) ==> Q(a)"`

use sequent_trainer::formula::print_formula;
use sequent_trainer::sequent::parse_sequent;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| sequent_trainer::corpus::GROUP3.to_string());
    let s = match parse_sequent(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{text}\n{}^ {e}", " ".repeat(e.offset));
            std::process::exit(1);
        }
    };
    println!("{s}");
    for (side, fs) in [("antecedent", &s.antecedent), ("succedent", &s.succedent)] {
        for (i, f) in fs.iter().enumerate() {
            let (printed, spans) = print_formula(f);
            println!("\n{side}[{i}]: {printed}");
            for (path, span) in spans {
                let chars: Vec<char> = printed.chars().collect();
                let marks: String = (0..chars.len()).map(|k| if k >= span.start && k < span.end { '^' } else { ' ' }).collect();
                println!("  {:<12} {}", format!("{path:?}"), marks.trim_end());
            }
        }
    }
}
