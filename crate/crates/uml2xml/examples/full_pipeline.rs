//! The four pipeline stages end to end as library calls: read the
//! codification, validate the diagram, generate the document, validate it
//! against the embedded schema, then write the XML file.
//!
//! Run with: `cargo run -p uml2xml --example full_pipeline [-- <in.uml> <out.xml>]`

use std::process::exit;

use uml2xml::{
    compile_schema, embedded_schema_text, generate_document, parse_codification, serialize,
    validate_diagram, validate_document, ParseMode,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let input = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus_corrected.uml").to_string()
    });
    let output = args.next().unwrap_or_else(|| "diagram.xml".to_string());

    // Stage 1: read the codification.
    let text = std::fs::read_to_string(&input).unwrap_or_else(|e| {
        eprintln!("cannot read {input}: {e}");
        exit(3);
    });
    let parsed = parse_codification(&text, ParseMode::Strict);
    for diagnostic in &parsed.diagnostics {
        eprintln!("{diagnostic}");
    }
    if parsed.has_errors() {
        exit(2);
    }
    println!("stage 1: parsed {} classes", parsed.diagram.classes.len());

    // Stage 2: validate the diagram.
    let findings = validate_diagram(&parsed.diagram);
    for finding in &findings {
        eprintln!("{finding}");
    }
    if findings.iter().any(|f| f.is_error()) {
        exit(1);
    }
    println!("stage 2: diagram is valid");

    // Stage 3: generate the document.
    let document = generate_document(&parsed.diagram);
    println!("stage 3: generated {} Class element(s)", document.children().len());

    // Stage 4: validate the document against the embedded schema.
    let model = compile_schema(embedded_schema_text()).expect("embedded schema compiles");
    let schema_findings = validate_document(&document, &model);
    if !schema_findings.is_empty() {
        for finding in schema_findings {
            eprintln!("{finding}");
        }
        exit(4);
    }
    println!("stage 4: document conforms to the schema");

    std::fs::write(&output, serialize(&document, true)).unwrap_or_else(|e| {
        eprintln!("cannot write {output}: {e}");
        exit(3);
    });
    println!("wrote {output}");
}
