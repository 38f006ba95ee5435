//! How the two parse modes treat a damaged corpus.
//!
//! The raw corpus carries one surplus token on its `Department` record.
//! Strict mode rejects the record; lenient mode loads it with a warning.
//!
//! Run with: `cargo run -p uml2xml --example strict_vs_lenient`

use uml2xml::{parse_codification, ParseMode};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus_paper_raw.uml");
    let text = std::fs::read_to_string(path).expect("fixture exists");

    for mode in [ParseMode::Strict, ParseMode::Lenient] {
        println!("=== {mode:?} ===");
        let result = parse_codification(&text, mode);
        for diagnostic in &result.diagnostics {
            println!("  {diagnostic}");
        }
        println!(
            "  decoded {} of 5 classes ({})",
            result.diagram.classes.len(),
            if result.has_errors() { "failed" } else { "ok" }
        );
        println!();
    }
}
