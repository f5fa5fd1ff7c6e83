//! Render a proof as SVG and as text.
//!
//! `cargo run --example export_svg -- proof.svg`

use sequent_trainer::corpus::group1_proof;
use sequent_trainer::proof::{export_svg, export_text};

fn main() -> std::io::Result<()> {
    let t = group1_proof();
    print!("{}", export_text(&t));
    let out = std::env::args().nth(1).unwrap_or_else(|| "group1.svg".into());
    std::fs::write(&out, export_svg(&t))?;
    println!("\nwrote {out}");
    Ok(())
}
