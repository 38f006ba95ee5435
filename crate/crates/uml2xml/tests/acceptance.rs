//! Acceptance suite: one test per release criterion.
//!
//! Run with `cargo test -p uml2xml --test acceptance`; the harness prints one
//! pass/fail line per criterion (add `-- --nocapture` for the explicit PASS
//! lines).

mod common;

use std::process::Command;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config as ProptestConfig, TestRunner};
use uml2xml::{
    compile_schema, document_to_diagram, embedded_schema_text, emit_codification,
    generate_document, parse_codification, parse_xml, serialize, validate_diagram,
    validate_document, Cardinality, ContentModel, Diagram, DiagnosticCode, ParseMode,
    RelationKind, Relationship, UmlClass, UpperBound, XmlNode,
};

use common::{diagram, fixture_path, read_fixture};

const PROPERTY_CASES: u32 = 1000;

fn property_runner() -> TestRunner {
    TestRunner::new(ProptestConfig {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    })
}

fn embedded_model() -> ContentModel {
    compile_schema(embedded_schema_text()).expect("embedded schema compiles")
}

/// The corpus totals: 5 classes, 8 attributes (3/2/1/0/2), 3 methods,
/// 4 associations, 1 aggregation, 0 compositions, 1 generalization
/// (Director to Person).
fn assert_corpus_totals(diagram: &Diagram) {
    let names: Vec<&str> = diagram.classes.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["Person", "Company", "Department", "Director", "Project"]);

    let attribute_counts: Vec<usize> =
        diagram.classes.iter().map(|c| c.attributes.len()).collect();
    assert_eq!(attribute_counts, [3, 2, 1, 0, 2]);
    assert_eq!(attribute_counts.iter().sum::<usize>(), 8);

    let method_names: Vec<&str> = diagram
        .classes
        .iter()
        .flat_map(|c| c.methods.iter().map(|m| m.name.as_str()))
        .collect();
    assert_eq!(method_names, ["Working", "Recruiting", "Manage"]);

    let kind_count = |kind: RelationKind| {
        diagram
            .classes
            .iter()
            .flat_map(|c| c.relationships.iter())
            .filter(|r| r.kind == kind)
            .count()
    };
    assert_eq!(kind_count(RelationKind::Association), 4);
    assert_eq!(kind_count(RelationKind::Aggregation), 1);
    assert_eq!(kind_count(RelationKind::Composition), 0);
    assert_eq!(kind_count(RelationKind::Generalization), 1);

    let director = diagram.class("Director").expect("Director present");
    let generalization = director
        .relationships
        .iter()
        .find(|r| r.kind == RelationKind::Generalization)
        .expect("Director has a generalization");
    assert_eq!(generalization.target, "Person");
    assert_eq!(generalization.cardinality, None);
}

#[test]
fn criterion_1_corpus_reproduction() {
    let started = Instant::now();
    let text = read_fixture("corpus_corrected.uml");
    let result = parse_codification(&text, ParseMode::Strict);
    assert!(!result.has_errors(), "diagnostics: {:?}", result.diagnostics);
    assert_corpus_totals(&result.diagram);
    assert!(started.elapsed().as_secs_f64() < 1.0, "parsing took too long");
    println!("criterion 1 (corpus reproduction): PASS");
}

#[test]
fn criterion_2_erratum_handling() {
    let text = read_fixture("corpus_paper_raw.uml");
    let department_line = text
        .lines()
        .position(|l| l.trim_start().starts_with("Department"))
        .expect("Department record present")
        + 1;

    // Strict mode: the Department record is rejected, naming its line.
    let strict = parse_codification(&text, ParseMode::Strict);
    assert!(strict.has_errors());
    let error = strict
        .diagnostics
        .iter()
        .find(|d| d.is_error())
        .expect("an error diagnostic");
    assert_eq!(error.code, DiagnosticCode::MalformedRecord);
    assert_eq!(
        error.location.as_ref().and_then(|l| l.line()),
        Some(department_line)
    );

    // Lenient mode: exactly one TrailingToken warning and the full corpus.
    let lenient = parse_codification(&text, ParseMode::Lenient);
    assert!(!lenient.has_errors());
    assert_eq!(lenient.diagnostics.len(), 1, "{:?}", lenient.diagnostics);
    assert_eq!(lenient.diagnostics[0].code, DiagnosticCode::TrailingToken);
    assert_eq!(
        lenient.diagnostics[0].location.as_ref().and_then(|l| l.line()),
        Some(department_line)
    );
    assert_corpus_totals(&lenient.diagram);
    println!("criterion 2 (erratum handling): PASS");
}

#[test]
fn criterion_3_end_to_end_soundness() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture_path("corpus_corrected.uml");
    let convert = |out: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_uml2xml"))
            .args(["convert", input.to_str().unwrap(), "-o", out.to_str().unwrap()])
            .output()
            .expect("binary runs")
    };

    let first_path = dir.path().join("first.xml");
    let second_path = dir.path().join("second.xml");
    assert_eq!(convert(&first_path).status.code(), Some(0));
    assert_eq!(convert(&second_path).status.code(), Some(0));

    let first = std::fs::read(&first_path).unwrap();
    let second = std::fs::read(&second_path).unwrap();
    assert_eq!(first, second, "convert must be byte-identical across runs");

    // The written document schema-validates with zero diagnostics.
    let check = Command::new(env!("CARGO_BIN_EXE_uml2xml"))
        .args(["check-xml", first_path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert_eq!(check.status.code(), Some(0));
    assert!(check.stderr.is_empty(), "check-xml reported diagnostics");

    let document = parse_xml(&String::from_utf8(first).unwrap()).unwrap();
    assert!(validate_document(&document, &embedded_model()).is_empty());
    assert_eq!(document.children().len(), 5);
    println!("criterion 3 (end-to-end soundness): PASS");
}

#[test]
fn criterion_4_codification_roundtrip() {
    let mut runner = property_runner();
    runner
        .run(&diagram(), |diagram| {
            let emitted = emit_codification(&diagram);
            let result = parse_codification(&emitted, ParseMode::Strict);
            prop_assert!(result.diagnostics.is_empty(), "{:?}", result.diagnostics);
            prop_assert_eq!(result.diagram, diagram);
            Ok(())
        })
        .unwrap();
    println!("criterion 4 (codification round-trip, {PROPERTY_CASES} cases): PASS");
}

#[test]
fn criterion_5_xml_roundtrip() {
    let mut runner = property_runner();
    runner
        .run(&diagram(), |diagram| {
            let document = generate_document(&diagram);
            prop_assert_eq!(document_to_diagram(&document).unwrap(), diagram);

            let text = serialize(&document, true);
            prop_assert_eq!(parse_xml(&text).unwrap(), document);
            Ok(())
        })
        .unwrap();
    println!("criterion 5 (XML round-trip, {PROPERTY_CASES} cases): PASS");
}

/// Rebuilds an element with the given children, keeping name and attributes.
fn with_children(source: &XmlNode, children: Vec<XmlNode>) -> XmlNode {
    let mut node = XmlNode::element(source.name());
    for (name, value) in source.attributes() {
        node.set_attr(name.clone(), value.clone());
    }
    for child in children {
        node.push_child(child);
    }
    node
}

#[test]
fn criterion_6_schema_conformance() {
    let model = embedded_model();

    let mut runner = property_runner();
    runner
        .run(&diagram(), |diagram| {
            let diagnostics = validate_document(&generate_document(&diagram), &model);
            prop_assert!(diagnostics.is_empty(), "{diagnostics:?}");
            Ok(())
        })
        .unwrap();

    // Mutation soundness, on the corpus document.
    let corpus = parse_codification(&read_fixture("corpus_corrected.uml"), ParseMode::Strict).diagram;
    let document = generate_document(&corpus);
    let person = &document.children()[0];

    // Drop the required Relationships child.
    let gutted = with_children(
        person,
        person
            .children()
            .iter()
            .filter(|c| c.name() != "Relationships")
            .cloned()
            .collect(),
    );
    let mutated = with_children(&document, vec![gutted]);
    assert!(
        !validate_document(&mutated, &model).is_empty(),
        "dropping a required child must be caught"
    );

    // Drop the name-Class attribute.
    let mut anonymous = XmlNode::element("Class");
    for child in person.children() {
        anonymous.push_child(child.clone());
    }
    let mutated = with_children(&document, vec![anonymous]);
    assert!(
        !validate_document(&mutated, &model).is_empty(),
        "dropping name-Class must be caught"
    );

    // Reorder the sequence.
    let reversed = with_children(
        person,
        person.children().iter().rev().cloned().collect(),
    );
    let mutated = with_children(&document, vec![reversed]);
    assert!(
        !validate_document(&mutated, &model).is_empty(),
        "reordering the sequence must be caught"
    );

    println!("criterion 6 (schema conformance and mutation soundness): PASS");
}

#[test]
fn criterion_7_validation_rule_coverage() {
    // R1, R2, R4, R5 and the R6 warning from their negative fixtures.
    let cases = [
        ("invalid/duplicate_class.uml", DiagnosticCode::DuplicateClassName),
        ("invalid/unknown_target.uml", DiagnosticCode::UnknownTarget),
        ("invalid/self_generalization.uml", DiagnosticCode::SelfGeneralization),
        ("invalid/generalization_cycle.uml", DiagnosticCode::GeneralizationCycle),
        ("invalid/duplicate_member.uml", DiagnosticCode::DuplicateMember),
        ("invalid/self_relation.uml", DiagnosticCode::SelfRelationWarning),
    ];
    for (fixture, expected) in cases {
        let result = parse_codification(&read_fixture(fixture), ParseMode::Strict);
        assert!(!result.has_errors(), "{fixture} must parse cleanly");
        let codes: Vec<DiagnosticCode> = validate_diagram(&result.diagram)
            .into_iter()
            .map(|d| d.code)
            .collect();
        assert_eq!(codes, [expected], "{fixture}");
    }

    // R3 cannot be produced by the parser; build the broken diagram directly.
    let mut broken = UmlClass::new("A");
    broken.relationships.push(Relationship {
        kind: RelationKind::Association,
        cardinality: None,
        target: "B".into(),
    });
    let diagram = Diagram {
        classes: vec![broken, UmlClass::new("B")],
    };
    let codes: Vec<DiagnosticCode> = validate_diagram(&diagram)
        .into_iter()
        .map(|d| d.code)
        .collect();
    assert_eq!(codes, [DiagnosticCode::BadCardinality]);

    // The corrected corpus triggers nothing.
    let corpus = parse_codification(&read_fixture("corpus_corrected.uml"), ParseMode::Strict).diagram;
    assert!(validate_diagram(&corpus).is_empty());
    println!("criterion 7 (validation rule coverage): PASS");
}

#[test]
fn criterion_8_cardinality_domain() {
    // The four documented literals parse to the expected bounds.
    let literal_bounds = [
        ("0..*", (0, UpperBound::Unbounded)),
        ("1..*", (1, UpperBound::Unbounded)),
        ("0..1", (0, UpperBound::Finite(1))),
        ("1", (1, UpperBound::Finite(1))),
    ];
    for (literal, (min, max)) in literal_bounds {
        let cardinality: Cardinality = literal.parse().unwrap();
        assert_eq!((cardinality.min(), cardinality.max()), (min, max), "{literal}");
        // Each literal also formats back as written.
        assert_eq!(cardinality.to_string(), literal);
    }

    // Exhaustive format/parse identity over min,max in [0,9] and unbounded.
    for min in 0..=9u32 {
        for max in min..=9u32 {
            let value = Cardinality::bounded(min, max).unwrap();
            assert_eq!(value.to_string().parse::<Cardinality>().unwrap(), value);

            let canonical = format!("{min}..{max}");
            assert_eq!(canonical.parse::<Cardinality>().unwrap().to_string(), canonical);
        }
        let unbounded = Cardinality::unbounded(min);
        assert_eq!(unbounded.to_string().parse::<Cardinality>().unwrap(), unbounded);
        let canonical = format!("{min}..*");
        assert_eq!(canonical.parse::<Cardinality>().unwrap().to_string(), canonical);
    }
    println!("criterion 8 (cardinality domain): PASS");
}
