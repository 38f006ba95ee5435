//! Decode a codification file and run the diagram rules over it.
//!
//! Run with: `cargo run -p uml2xml --example parse_and_validate`

use uml2xml::{parse_codification, validate_diagram, ParseMode};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus_corrected.uml");
    let text = std::fs::read_to_string(path).expect("fixture exists");

    let result = parse_codification(&text, ParseMode::Strict);
    for diagnostic in &result.diagnostics {
        eprintln!("{diagnostic}");
    }
    if result.has_errors() {
        eprintln!("parse failed");
        std::process::exit(2);
    }

    println!("parsed {} classes:", result.diagram.classes.len());
    for class in &result.diagram.classes {
        println!(
            "  {:<12} {} attribute(s), {} method(s), {} relationship(s)",
            class.name,
            class.attributes.len(),
            class.methods.len(),
            class.relationships.len()
        );
    }

    let findings = validate_diagram(&result.diagram);
    if findings.is_empty() {
        println!("diagram is valid");
    } else {
        for finding in &findings {
            println!("{finding}");
        }
    }
}
