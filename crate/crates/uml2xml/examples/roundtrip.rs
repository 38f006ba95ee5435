//! Round-trip a diagram through both codecs: emit/parse text and
//! generate/read-back XML, asserting identity each way.
//!
//! Run with: `cargo run -p uml2xml --example roundtrip`

use uml2xml::{
    document_to_diagram, emit_codification, generate_document, parse_codification, parse_xml,
    serialize, Attribute, Cardinality, Diagram, Relationship, UmlClass, Visibility,
};

fn main() {
    let mut order = UmlClass::new("Order");
    order.attributes.push(
        Attribute::new("Label", "String", Visibility::Private).with_default("A&B <draft>"),
    );
    order
        .relationships
        .push(Relationship::composition(Cardinality::unbounded(1), "Item"));
    order
        .relationships
        .push(Relationship::generalization("Document"));

    let diagram = Diagram {
        classes: vec![order, UmlClass::new("Item"), UmlClass::new("Document")],
    };

    // Text codec round-trip.
    let text = emit_codification(&diagram);
    print!("codification:\n{text}");
    let reparsed = parse_codification(&text, uml2xml::ParseMode::Strict);
    assert!(reparsed.diagnostics.is_empty());
    assert_eq!(reparsed.diagram, diagram);
    println!("text round-trip: identity holds");

    // XML round-trip, including serialization (note the escaped default).
    let document = generate_document(&diagram);
    let xml = serialize(&document, true);
    println!("\nxml:\n{xml}");
    assert_eq!(parse_xml(&xml).unwrap(), document);
    assert_eq!(document_to_diagram(&document).unwrap(), diagram);
    println!("xml round-trip: identity holds");
}
