//! Build a diagram in code and print its XML document.
//!
//! Run with: `cargo run -p uml2xml --example generate_xml`

use uml2xml::{
    generate_document, serialize, Attribute, Cardinality, Diagram, Method, Relationship, UmlClass,
    Visibility,
};

fn main() {
    let mut person = UmlClass::new("Person");
    person
        .attributes
        .push(Attribute::new("Matricule", "String", Visibility::Public));
    person.attributes.push(
        Attribute::new("Age", "Int", Visibility::Protected).with_default("18"),
    );
    person
        .methods
        .push(Method::new("Working", "String", Visibility::Public));
    person
        .relationships
        .push(Relationship::association(Cardinality::unbounded(1), "Company"));

    let mut company = UmlClass::new("Company");
    company
        .attributes
        .push(Attribute::new("Name", "String", Visibility::Public));

    let diagram = Diagram {
        classes: vec![person, company],
    };

    let document = generate_document(&diagram);
    print!("{}", serialize(&document, true));
}
