//! Verify a proof file the way `seqtrainer verify` does.
//!
//! `cargo run --example verify_file -- crates/core/corpus/mistakes/group2_wrong_side.json de`

use std::path::PathBuf;

use sequent_trainer::feedback::Catalogs;
use sequent_trainer::service::cli::verify_file;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/group1.proof.json"));
    let locale = args.next().unwrap_or_else(|| "en".into());
    let o = verify_file(&path, Catalogs::shipped(), &locale);
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    std::process::exit(o.code);
}
