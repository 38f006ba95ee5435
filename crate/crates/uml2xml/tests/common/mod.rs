//! Shared fixtures and proptest strategies for the integration tests.
//!
//! The diagram strategy only builds rule-respecting diagrams: unique class
//! names, relationship targets drawn from the diagram, generalization
//! parents pointing strictly at earlier classes (so the hierarchy is
//! acyclic), relationship groups in canonical category order, and
//! cardinalities from the documented literal set so emitted text re-parses
//! without warnings.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use uml2xml::{
    Attribute, Cardinality, Diagram, Method, Relationship, UmlClass, Visibility, XmlNode,
};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

/// Names free of the record delimiters `;` and `:`.
pub fn identifier() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_]{0,7}"
}

/// Default values exercise the XML escaping path: printable characters
/// including `& < > " '`, never `;`, and at least one non-space character
/// (empty and whitespace-only defaults are not representable).
pub fn default_value() -> impl Strategy<Value = String> {
    "[A-Za-z0-9&<>\"'():*._ -]{1,12}".prop_filter("not whitespace-only", |s| !s.trim().is_empty())
}

pub fn visibility() -> impl Strategy<Value = Visibility> {
    prop_oneof![
        Just(Visibility::Public),
        Just(Visibility::Private),
        Just(Visibility::Protected),
    ]
}

/// Cardinalities from the documented literal set `0..*, 1..*, 0..1, 1`.
pub fn standard_cardinality() -> impl Strategy<Value = Cardinality> {
    prop_oneof![
        Just(Cardinality::unbounded(0)),
        Just(Cardinality::unbounded(1)),
        Just(Cardinality::bounded(0, 1).expect("0 <= 1")),
        Just(Cardinality::one()),
    ]
}

/// Raw material for one class; target indices are reduced modulo the class
/// count at assembly time.
#[derive(Debug, Clone)]
pub struct ClassSeed {
    attr_names: BTreeSet<String>,
    attr_extras: Vec<(String, Visibility, Option<String>)>,
    meth_names: BTreeSet<String>,
    meth_extras: Vec<(String, Visibility)>,
    associations: Vec<(Cardinality, usize)>,
    aggregations: Vec<(Cardinality, usize)>,
    compositions: Vec<(Cardinality, usize)>,
    generalizations: Vec<usize>,
}

fn relationship_seeds() -> impl Strategy<Value = Vec<(Cardinality, usize)>> {
    proptest::collection::vec((standard_cardinality(), any::<usize>()), 0..=2)
}

fn class_seed() -> impl Strategy<Value = ClassSeed> {
    (
        (
            proptest::collection::btree_set(identifier(), 0..=3),
            proptest::collection::vec(
                (identifier(), visibility(), proptest::option::of(default_value())),
                3,
            ),
        ),
        (
            proptest::collection::btree_set(identifier(), 0..=2),
            proptest::collection::vec((identifier(), visibility()), 2),
        ),
        relationship_seeds(),
        relationship_seeds(),
        relationship_seeds(),
        proptest::collection::vec(any::<usize>(), 0..=2),
    )
        .prop_map(
            |(
                (attr_names, attr_extras),
                (meth_names, meth_extras),
                associations,
                aggregations,
                compositions,
                generalizations,
            )| ClassSeed {
                attr_names,
                attr_extras,
                meth_names,
                meth_extras,
                associations,
                aggregations,
                compositions,
                generalizations,
            },
        )
}

fn build_class(name: &str, index: usize, all_names: &[String], seed: &ClassSeed) -> UmlClass {
    let mut class = UmlClass::new(name);
    for (attr_name, (type_name, visibility, default)) in
        seed.attr_names.iter().zip(&seed.attr_extras)
    {
        let mut attribute = Attribute::new(attr_name.as_str(), type_name.as_str(), *visibility);
        attribute.default_value = default.clone();
        class.attributes.push(attribute);
    }
    for (meth_name, (return_type, visibility)) in seed.meth_names.iter().zip(&seed.meth_extras) {
        class
            .methods
            .push(Method::new(meth_name.as_str(), return_type.as_str(), *visibility));
    }

    let target = |raw: usize| all_names[raw % all_names.len()].clone();
    for (cardinality, raw) in &seed.associations {
        class
            .relationships
            .push(Relationship::association(*cardinality, target(*raw)));
    }
    for (cardinality, raw) in &seed.aggregations {
        class
            .relationships
            .push(Relationship::aggregation(*cardinality, target(*raw)));
    }
    for (cardinality, raw) in &seed.compositions {
        class
            .relationships
            .push(Relationship::composition(*cardinality, target(*raw)));
    }
    if index > 0 {
        let mut parents: Vec<usize> = Vec::new();
        for raw in &seed.generalizations {
            let parent = raw % index;
            if !parents.contains(&parent) {
                parents.push(parent);
            }
        }
        for parent in parents {
            class
                .relationships
                .push(Relationship::generalization(all_names[parent].clone()));
        }
    }
    class
}

/// Random valid diagram with up to five classes.
pub fn diagram() -> impl Strategy<Value = Diagram> {
    (
        proptest::collection::btree_set(identifier(), 0..=5),
        proptest::collection::vec(class_seed(), 5),
    )
        .prop_map(|(names, seeds)| {
            let names: Vec<String> = names.into_iter().collect();
            let classes = names
                .iter()
                .enumerate()
                .map(|(index, name)| build_class(name, index, &names, &seeds[index]))
                .collect();
            Diagram { classes }
        })
}

pub fn xml_name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_.-]{0,8}".prop_filter("xmlns is reserved", |s| s != "xmlns")
}

/// Printable text with at least one non-space character (whitespace-only
/// text is insignificant to the serializer).
pub fn xml_text() -> impl Strategy<Value = String> {
    "[ -~]{1,12}".prop_filter("not whitespace-only", |s| !s.trim().is_empty())
}

fn xml_attrs() -> impl Strategy<Value = Vec<(String, String)>> {
    proptest::collection::btree_map(xml_name(), "[ -~]{0,10}", 0..=3)
        .prop_map(|attrs| attrs.into_iter().collect())
}

/// Random tree over the restricted name alphabet, up to three levels deep.
pub fn xml_tree() -> impl Strategy<Value = XmlNode> {
    let leaf = (xml_name(), xml_attrs(), proptest::option::of(xml_text())).prop_map(
        |(name, attrs, text)| {
            let mut node = XmlNode::element(name);
            for (attr_name, value) in attrs {
                node.set_attr(attr_name, value);
            }
            if let Some(text) = text {
                node.set_text(text);
            }
            node
        },
    );
    leaf.prop_recursive(3, 24, 4, |inner| {
        (xml_name(), xml_attrs(), proptest::collection::vec(inner, 0..=3)).prop_map(
            |(name, attrs, children)| {
                let mut node = XmlNode::element(name);
                for (attr_name, value) in attrs {
                    node.set_attr(attr_name, value);
                }
                for child in children {
                    node.push_child(child);
                }
                node
            },
        )
    })
}
