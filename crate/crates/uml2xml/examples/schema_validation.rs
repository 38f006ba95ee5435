//! Compile the embedded schema and watch it accept a generated document and
//! reject a mutated one.
//!
//! Run with: `cargo run -p uml2xml --example schema_validation`

use uml2xml::{
    compile_schema, embedded_schema_text, generate_document, parse_codification,
    validate_document, ParseMode, XmlNode,
};

fn main() {
    let model = compile_schema(embedded_schema_text()).expect("embedded schema compiles");
    println!("schema compiled; document root element: {}", model.root());

    let text = "Person;1;Name:String:Public;;0;1;1..*:Person;0;0;0;";
    let diagram = parse_codification(text, ParseMode::Strict).diagram;
    let document = generate_document(&diagram);

    let findings = validate_document(&document, &model);
    println!("generated document: {} finding(s)", findings.len());

    // Rebuild the Class element without its name-Class attribute and without
    // the required Relationships child.
    let person = &document.children()[0];
    let mut broken_class = XmlNode::element("Class");
    for child in person.children() {
        if child.name() != "Relationships" {
            broken_class.push_child(child.clone());
        }
    }
    let broken = XmlNode::element("Diagram").with_child(broken_class);

    println!("mutated document:");
    for finding in validate_document(&broken, &model) {
        println!("  {finding}");
    }
}
