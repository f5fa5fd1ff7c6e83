//! Regenerate the shipped corpus files.
//!
//! `cargo run --example build_corpus -- crates/core/corpus`

use std::path::PathBuf;

use sequent_trainer::corpus::write_corpus;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"));
    write_corpus(&dir)?;
    println!("corpus written to {}", dir.display());
    Ok(())
}
