//! Diagram-to-document generation and its inverse.
//!
//! [`generate_document`] walks a validated [`Diagram`] and builds the element
//! tree the embedded schema describes: one `Class` element per class, each
//! with its `Attribute` and `Method` children followed by exactly one
//! `Relationships` element whose children are grouped `ASS`, `Aggregation`,
//! `Composition`, `Generalization` (input order preserved within each group —
//! an interleaved order could never satisfy the schema's sequence).
//!
//! [`document_to_diagram`] reads such a tree back; round-tripping a valid
//! diagram through both is the identity.

use std::fmt;

use crate::model::{
    Attribute, Cardinality, Diagram, Method, RelationKind, Relationship, UmlClass, Visibility,
};
use crate::xml::XmlNode;

/// The tree deviates from the schema shape; `path` names the offending
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError {
    pub path: String,
    pub message: String,
}

impl ShapeError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ShapeError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shape error at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for ShapeError {}

fn kind_element_name(kind: RelationKind) -> &'static str {
    match kind {
        RelationKind::Association => "ASS",
        RelationKind::Aggregation => "Aggregation",
        RelationKind::Composition => "Composition",
        RelationKind::Generalization => "Generalization",
    }
}

/// Builds the `Diagram` document tree for a diagram that has passed
/// validation with zero errors.
pub fn generate_document(diagram: &Diagram) -> XmlNode {
    let mut root = XmlNode::element("Diagram");
    for class in &diagram.classes {
        root.push_child(generate_class(class));
    }
    root
}

fn generate_class(class: &UmlClass) -> XmlNode {
    let mut element = XmlNode::element("Class").with_attr("name-Class", &class.name);

    for attribute in &class.attributes {
        let mut dvalue = XmlNode::element("Dvalue");
        if let Some(default) = &attribute.default_value {
            dvalue.set_text(default);
        }
        element.push_child(
            XmlNode::element("Attribute")
                .with_attr("name", &attribute.name)
                .with_child(XmlNode::element("Attr-Type").with_text(&attribute.type_name))
                .with_child(XmlNode::element("Visibility").with_text(attribute.visibility.as_str()))
                .with_child(dvalue),
        );
    }

    for method in &class.methods {
        element.push_child(
            XmlNode::element("Method")
                .with_attr("name-Method", &method.name)
                .with_child(XmlNode::element("Method-type").with_text(&method.return_type))
                .with_child(XmlNode::element("Visibility").with_text(method.visibility.as_str())),
        );
    }

    let mut relationships = XmlNode::element("Relationships");
    for kind in RelationKind::ALL {
        for relationship in class.relationships.iter().filter(|r| r.kind == kind) {
            let mut rel_element = XmlNode::element(kind_element_name(kind));
            if kind != RelationKind::Generalization {
                let cardinality = relationship
                    .cardinality
                    .expect("non-generalization relationship carries a cardinality");
                rel_element.push_child(
                    XmlNode::element("Cardinality").with_text(cardinality.to_string()),
                );
            }
            rel_element
                .push_child(XmlNode::element("Class-Relation").with_text(&relationship.target));
            relationships.push_child(rel_element);
        }
    }
    element.push_child(relationships);
    element
}

/// Reconstructs the diagram from a generated document tree.
pub fn document_to_diagram(root: &XmlNode) -> Result<Diagram, ShapeError> {
    let root_path = format!("/{}", root.name());
    if root.name() != "Diagram" {
        return Err(ShapeError::new(
            &root_path,
            "document root must be \"Diagram\"",
        ));
    }
    expect_no_attributes(root, &root_path)?;
    if root.text().is_some() {
        return Err(ShapeError::new(&root_path, "unexpected text content"));
    }

    let mut diagram = Diagram::new();
    for (index, child) in root.children().iter().enumerate() {
        let path = format!("{root_path}/Class[{}]", index + 1);
        if child.name() != "Class" {
            return Err(ShapeError::new(
                format!("{root_path}/{}[{}]", child.name(), index + 1),
                format!("expected a \"Class\" element, found \"{}\"", child.name()),
            ));
        }
        diagram.classes.push(read_class(child, &path)?);
    }
    Ok(diagram)
}

fn read_class(node: &XmlNode, path: &str) -> Result<UmlClass, ShapeError> {
    let name = required_attribute(node, "name-Class", path)?;
    expect_only_attributes(node, &["name-Class"], path)?;
    if node.text().is_some() {
        return Err(ShapeError::new(path, "unexpected text content"));
    }
    let mut class = UmlClass::new(name);

    let children = node.children();
    let mut cursor = 0usize;

    while cursor < children.len() && children[cursor].name() == "Attribute" {
        let child_path = format!("{path}/Attribute[{}]", cursor + 1);
        class.attributes.push(read_attribute(&children[cursor], &child_path)?);
        cursor += 1;
    }
    let method_base = cursor;
    while cursor < children.len() && children[cursor].name() == "Method" {
        let child_path = format!("{path}/Method[{}]", cursor - method_base + 1);
        class.methods.push(read_method(&children[cursor], &child_path)?);
        cursor += 1;
    }

    let relationships_path = format!("{path}/Relationships[1]");
    match children.get(cursor) {
        Some(child) if child.name() == "Relationships" => {
            class.relationships = read_relationships(child, &relationships_path)?;
            cursor += 1;
        }
        Some(child) => {
            return Err(ShapeError::new(
                path,
                format!(
                    "expected Attribute, Method or Relationships, found \"{}\"",
                    child.name()
                ),
            ));
        }
        None => {
            return Err(ShapeError::new(path, "missing \"Relationships\" element"));
        }
    }
    if cursor < children.len() {
        return Err(ShapeError::new(
            path,
            format!(
                "unexpected element \"{}\" after Relationships",
                children[cursor].name()
            ),
        ));
    }
    Ok(class)
}

fn read_attribute(node: &XmlNode, path: &str) -> Result<Attribute, ShapeError> {
    let name = required_attribute(node, "name", path)?;
    expect_only_attributes(node, &["name"], path)?;
    let [type_node, visibility_node, dvalue_node] =
        expect_children(node, ["Attr-Type", "Visibility", "Dvalue"], path)?;

    let type_name = required_text(type_node, &format!("{path}/Attr-Type[1]"))?;
    let visibility = read_visibility(visibility_node, &format!("{path}/Visibility[1]"))?;
    let default_value = optional_text(dvalue_node, &format!("{path}/Dvalue[1]"))?;

    let mut attribute = Attribute::new(name, type_name, visibility);
    attribute.default_value = default_value;
    Ok(attribute)
}

fn read_method(node: &XmlNode, path: &str) -> Result<Method, ShapeError> {
    let name = required_attribute(node, "name-Method", path)?;
    expect_only_attributes(node, &["name-Method"], path)?;
    let [type_node, visibility_node] = expect_children(node, ["Method-type", "Visibility"], path)?;
    let return_type = required_text(type_node, &format!("{path}/Method-type[1]"))?;
    let visibility = read_visibility(visibility_node, &format!("{path}/Visibility[1]"))?;
    Ok(Method::new(name, return_type, visibility))
}

fn read_relationships(node: &XmlNode, path: &str) -> Result<Vec<Relationship>, ShapeError> {
    expect_no_attributes(node, path)?;
    if node.text().is_some() {
        return Err(ShapeError::new(path, "unexpected text content"));
    }
    let mut relationships = Vec::new();
    let mut counts = [0usize; 4];
    for child in node.children() {
        let kind = match child.name() {
            "ASS" => RelationKind::Association,
            "Aggregation" => RelationKind::Aggregation,
            "Composition" => RelationKind::Composition,
            "Generalization" => RelationKind::Generalization,
            other => {
                return Err(ShapeError::new(
                    path,
                    format!("unexpected element \"{other}\" among relationships"),
                ))
            }
        };
        let slot = RelationKind::ALL.iter().position(|k| *k == kind).unwrap();
        counts[slot] += 1;
        let child_path = format!("{path}/{}[{}]", child.name(), counts[slot]);
        relationships.push(read_relationship(child, kind, &child_path)?);
    }
    Ok(relationships)
}

fn read_relationship(
    node: &XmlNode,
    kind: RelationKind,
    path: &str,
) -> Result<Relationship, ShapeError> {
    expect_no_attributes(node, path)?;
    let (cardinality, target_node) = if kind == RelationKind::Generalization {
        let [target_node] = expect_children(node, ["Class-Relation"], path)?;
        (None, target_node)
    } else {
        let [cardinality_node, target_node] =
            expect_children(node, ["Cardinality", "Class-Relation"], path)?;
        let cardinality_path = format!("{path}/Cardinality[1]");
        let text = required_text(cardinality_node, &cardinality_path)?;
        let cardinality: Cardinality = text
            .parse()
            .map_err(|e: crate::model::ModelError| ShapeError::new(&cardinality_path, e.to_string()))?;
        (Some(cardinality), target_node)
    };
    let target = required_text(target_node, &format!("{path}/Class-Relation[1]"))?;
    Ok(Relationship {
        kind,
        cardinality,
        target,
    })
}

fn read_visibility(node: &XmlNode, path: &str) -> Result<Visibility, ShapeError> {
    required_text(node, path)?
        .parse()
        .map_err(|e: crate::model::ModelError| ShapeError::new(path, e.to_string()))
}

fn required_attribute(node: &XmlNode, name: &str, path: &str) -> Result<String, ShapeError> {
    node.attribute(name)
        .map(str::to_string)
        .ok_or_else(|| ShapeError::new(path, format!("missing required attribute \"{name}\"")))
}

fn expect_no_attributes(node: &XmlNode, path: &str) -> Result<(), ShapeError> {
    expect_only_attributes(node, &[], path)
}

fn expect_only_attributes(node: &XmlNode, allowed: &[&str], path: &str) -> Result<(), ShapeError> {
    for (name, _) in node.attributes() {
        if !allowed.contains(&name.as_str()) {
            return Err(ShapeError::new(
                path,
                format!("unexpected attribute \"{name}\""),
            ));
        }
    }
    Ok(())
}

/// Requires exactly the named children, in order, and returns them.
fn expect_children<'a, const N: usize>(
    node: &'a XmlNode,
    names: [&str; N],
    path: &str,
) -> Result<[&'a XmlNode; N], ShapeError> {
    if node.text().is_some() {
        return Err(ShapeError::new(path, "unexpected text content"));
    }
    let children = node.children();
    if children.len() != N {
        return Err(ShapeError::new(
            path,
            format!("expected {N} child element(s), found {}", children.len()),
        ));
    }
    for (child, expected) in children.iter().zip(names) {
        if child.name() != expected {
            return Err(ShapeError::new(
                path,
                format!("expected \"{expected}\" child, found \"{}\"", child.name()),
            ));
        }
    }
    Ok(std::array::from_fn(|i| &children[i]))
}

/// The element's text, or an error when it is absent or the element has
/// children.
fn required_text(node: &XmlNode, path: &str) -> Result<String, ShapeError> {
    match optional_text(node, path)? {
        Some(text) => Ok(text),
        None => Err(ShapeError::new(path, "missing text content")),
    }
}

fn optional_text(node: &XmlNode, path: &str) -> Result<Option<String>, ShapeError> {
    if !node.children().is_empty() {
        return Err(ShapeError::new(path, "expected text content, found child elements"));
    }
    Ok(node.text().map(str::to_string))
}
