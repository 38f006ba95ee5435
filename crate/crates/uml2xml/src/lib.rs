//! Convert codified UML class diagrams into schema-validated XML documents.
//!
//! A class diagram is written down as one semicolon-delimited record per
//! class (the codification, see [`codec`]). This library decodes that text,
//! checks the diagram against a small rule set, builds an XML element tree
//! for it, and structurally validates the tree against an embedded XSD
//! before anything is written out:
//!
//! ```text
//! .uml text ──codec──▶ Diagram ──validator──▶ Diagram
//!                                   │
//!                              generator
//!                                   ▼
//!            .xml text ◀──xml── XmlNode ──schema──▶ diagnostics
//! ```
//!
//! Every stage reports findings as [`Diagnostic`] values instead of
//! panicking, and every stage has an inverse (emit for parse, document
//! reading for document generation), so round-trip equality is the crate's
//! working correctness check.
//!
//! # Quick start
//!
//! ```
//! use uml2xml::{
//!     compile_schema, embedded_schema_text, generate_document, parse_codification, serialize,
//!     validate_diagram, validate_document, ParseMode,
//! };
//!
//! let result = parse_codification("Person;0;0;1;1..*:Person;0;0;0;", ParseMode::Strict);
//! assert!(!result.has_errors());
//!
//! let errors: Vec<_> = validate_diagram(&result.diagram)
//!     .into_iter()
//!     .filter(|d| d.is_error())
//!     .collect();
//! assert!(errors.is_empty());
//!
//! let document = generate_document(&result.diagram);
//! let model = compile_schema(embedded_schema_text()).unwrap();
//! assert!(validate_document(&document, &model).is_empty());
//!
//! let xml = serialize(&document, true);
//! assert!(xml.starts_with("<?xml"));
//! ```
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! - **`parse_and_validate`** — decode a codification file and run the
//!   diagram rules
//! - **`strict_vs_lenient`** — how the two parse modes treat a damaged
//!   corpus
//! - **`generate_xml`** — build and print the XML document for a diagram
//! - **`schema_validation`** — compile the embedded schema and watch it
//!   reject mutated documents
//! - **`roundtrip`** — emit/parse and generate/read-back identity on a
//!   diagram built in code
//! - **`full_pipeline`** — the four stages end to end, file in, file out
//!
//! ```bash
//! cargo run -p uml2xml --example parse_and_validate
//! cargo run -p uml2xml --example strict_vs_lenient
//! cargo run -p uml2xml --example generate_xml
//! cargo run -p uml2xml --example schema_validation
//! cargo run -p uml2xml --example roundtrip
//! cargo run -p uml2xml --example full_pipeline
//! ```
//!
//! The same pipeline is exposed as the `uml2xml` command-line tool with the
//! subcommands `convert`, `validate`, `check-xml` and `emit-xsd`.

pub mod codec;
pub mod diagnostics;
pub mod generator;
pub mod model;
pub mod schema;
pub mod validator;
pub mod xml;

pub use codec::{emit_codification, parse_codification, ParseMode, ParseResult, STANDARD_CARDINALITIES};
pub use diagnostics::{has_errors, Diagnostic, DiagnosticCode, Location, Severity};
pub use generator::{document_to_diagram, generate_document, ShapeError};
pub use model::{
    Attribute, Cardinality, Diagram, Method, ModelError, RelationKind, Relationship, UmlClass,
    UpperBound, Visibility,
};
pub use schema::{
    compile_schema, embedded_schema_text, validate_document, AttributeDecl, ContentModel,
    ElementModel, Occurs, Particle, SchemaError,
};
pub use validator::validate_diagram;
pub use xml::{parse_xml, serialize, XmlError, XmlNode};
