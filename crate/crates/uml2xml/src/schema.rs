//! Embedded XSD, schema-subset compiler and structural document validation.
//!
//! The subset covers exactly what the embedded schema uses: `xsd:schema`
//! with one global `xsd:element`, nested local elements with `minOccurs` /
//! `maxOccurs` (including `unbounded`), `xsd:complexType`, `xsd:sequence`,
//! leaf elements of `type="xsd:string"`, and `xsd:attribute` declarations of
//! type `xsd:string`. Every declared attribute is treated as required.
//! Anything else is rejected at compile time rather than mis-validated.
//!
//! See `SCHEMA_NOTES.md` at the repository root for how the embedded schema
//! text was fixed up and extended with the `Diagram` root element.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagnostics::{Diagnostic, DiagnosticCode, Location};
use crate::xml::{parse_xml, XmlError, XmlNode};

/// The schema every generated document is validated against. Byte-stable.
pub fn embedded_schema_text() -> &'static str {
    EMBEDDED_SCHEMA
}

const EMBEDDED_SCHEMA: &str = r#"<?xml version="1.0" encoding="utf-8"?>
<xsd:schema xmlns:xsd="http://www.w3.org/2000/10/XMLSchema">
  <xsd:element name="Diagram">
    <xsd:complexType>
      <xsd:sequence>
        <xsd:element name="Class" minOccurs="0" maxOccurs="unbounded">
          <xsd:complexType>
            <xsd:sequence>
              <xsd:element name="Attribute" minOccurs="0" maxOccurs="unbounded">
                <xsd:complexType>
                  <xsd:sequence>
                    <xsd:element name="Attr-Type" type="xsd:string"/>
                    <xsd:element name="Visibility" type="xsd:string"/>
                    <xsd:element name="Dvalue" type="xsd:string"/>
                  </xsd:sequence>
                  <xsd:attribute name="name" type="xsd:string"/>
                </xsd:complexType>
              </xsd:element>
              <xsd:element name="Method" minOccurs="0" maxOccurs="unbounded">
                <xsd:complexType>
                  <xsd:sequence>
                    <xsd:element name="Method-type" type="xsd:string"/>
                    <xsd:element name="Visibility" type="xsd:string"/>
                  </xsd:sequence>
                  <xsd:attribute name="name-Method" type="xsd:string"/>
                </xsd:complexType>
              </xsd:element>
              <xsd:element name="Relationships">
                <xsd:complexType>
                  <xsd:sequence>
                    <xsd:element name="ASS" minOccurs="0" maxOccurs="unbounded">
                      <xsd:complexType>
                        <xsd:sequence>
                          <xsd:element name="Cardinality" type="xsd:string"/>
                          <xsd:element name="Class-Relation" type="xsd:string"/>
                        </xsd:sequence>
                      </xsd:complexType>
                    </xsd:element>
                    <xsd:element name="Aggregation" minOccurs="0" maxOccurs="unbounded">
                      <xsd:complexType>
                        <xsd:sequence>
                          <xsd:element name="Cardinality" type="xsd:string"/>
                          <xsd:element name="Class-Relation" type="xsd:string"/>
                        </xsd:sequence>
                      </xsd:complexType>
                    </xsd:element>
                    <xsd:element name="Composition" minOccurs="0" maxOccurs="unbounded">
                      <xsd:complexType>
                        <xsd:sequence>
                          <xsd:element name="Cardinality" type="xsd:string"/>
                          <xsd:element name="Class-Relation" type="xsd:string"/>
                        </xsd:sequence>
                      </xsd:complexType>
                    </xsd:element>
                    <xsd:element name="Generalization" minOccurs="0" maxOccurs="unbounded">
                      <xsd:complexType>
                        <xsd:sequence>
                          <xsd:element name="Class-Relation" type="xsd:string"/>
                        </xsd:sequence>
                      </xsd:complexType>
                    </xsd:element>
                  </xsd:sequence>
                </xsd:complexType>
              </xsd:element>
            </xsd:sequence>
            <xsd:attribute name="name-Class" type="xsd:string"/>
          </xsd:complexType>
        </xsd:element>
      </xsd:sequence>
    </xsd:complexType>
  </xsd:element>
</xsd:schema>
"#;

/// How often a child element may occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Occurs {
    Bounded(u32),
    Unbounded,
}

/// One slot of an element's ordered content: child name plus occurrence
/// bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Particle {
    pub name: String,
    pub min: u32,
    pub max: Occurs,
}

/// A declared (and therefore required) attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeDecl {
    pub name: String,
    pub type_name: String,
}

/// Compiled description of one element: its attributes, its ordered child
/// particles and whether leaf text is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElementModel {
    pub attributes: Vec<AttributeDecl>,
    pub particles: Vec<Particle>,
    pub text_allowed: bool,
}

/// Compiled grammar of a whole schema, rooted at its single global element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentModel {
    root: String,
    elements: BTreeMap<String, ElementModel>,
}

impl ContentModel {
    /// Name of the document root element.
    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn element(&self, name: &str) -> Option<&ElementModel> {
        self.elements.get(name)
    }
}

/// Why a schema could not be compiled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaError {
    /// The schema text is not parseable XML.
    Xml(XmlError),
    /// Structurally broken schema: missing names, conflicting definitions,
    /// dangling type references, bad occurrence bounds.
    Syntax { path: String, message: String },
    /// A construct outside the supported subset, e.g. `xsd:choice`.
    Unsupported { path: String, feature: String },
    /// Sibling particles share an element name, which greedy sequential
    /// matching cannot validate exactly.
    AmbiguousParticles { path: String, name: String },
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::Xml(e) => write!(f, "schema is not readable XML: {e}"),
            SchemaError::Syntax { path, message } => {
                write!(f, "schema syntax error at {path}: {message}")
            }
            SchemaError::Unsupported { path, feature } => {
                write!(f, "unsupported schema feature at {path}: {feature}")
            }
            SchemaError::AmbiguousParticles { path, name } => {
                write!(f, "ambiguous particles at {path}: \"{name}\" appears twice in one sequence")
            }
        }
    }
}

impl std::error::Error for SchemaError {}

/// Compiles XSD text of the supported subset into a [`ContentModel`].
pub fn compile_schema(xsd_text: &str) -> Result<ContentModel, SchemaError> {
    let document = parse_xml(xsd_text).map_err(SchemaError::Xml)?;
    let path = format!("/{}", document.name());
    if document.name() != "xsd:schema" {
        return Err(SchemaError::Syntax {
            path,
            message: "document root must be xsd:schema".into(),
        });
    }
    for (name, _) in document.attributes() {
        if name != "xmlns:xsd" {
            return Err(SchemaError::Unsupported {
                path: path.clone(),
                feature: format!("schema attribute \"{name}\""),
            });
        }
    }
    if document.text().is_some() {
        return Err(SchemaError::Syntax {
            path,
            message: "unexpected text content".into(),
        });
    }

    let globals: Vec<&XmlNode> = document.children().iter().collect();
    if globals.len() != 1 || globals[0].name() != "xsd:element" {
        return Err(SchemaError::Syntax {
            path,
            message: "expected exactly one global xsd:element".into(),
        });
    }

    let mut elements = BTreeMap::new();
    let root = compile_element(globals[0], &format!("{path}/xsd:element"), true, &mut elements)?
        .name;
    Ok(ContentModel { root, elements })
}

/// Compiles one `xsd:element` declaration, registers its model, and returns
/// its particle (occurrence bounds are meaningful for local elements only).
fn compile_element(
    node: &XmlNode,
    path: &str,
    is_global: bool,
    elements: &mut BTreeMap<String, ElementModel>,
) -> Result<Particle, SchemaError> {
    let syntax = |message: String| SchemaError::Syntax {
        path: path.to_string(),
        message,
    };

    let mut name = None;
    let mut type_name = None;
    let mut min = 1u32;
    let mut max = Occurs::Bounded(1);
    for (attr, value) in node.attributes() {
        match attr.as_str() {
            "name" => name = Some(value.clone()),
            "type" => type_name = Some(value.clone()),
            "minOccurs" if !is_global => {
                min = value
                    .parse()
                    .map_err(|_| syntax(format!("bad minOccurs \"{value}\"")))?;
            }
            "maxOccurs" if !is_global => {
                max = if value == "unbounded" {
                    Occurs::Unbounded
                } else {
                    Occurs::Bounded(
                        value
                            .parse()
                            .map_err(|_| syntax(format!("bad maxOccurs \"{value}\"")))?,
                    )
                };
            }
            "minOccurs" | "maxOccurs" => {
                return Err(syntax(format!(
                    "occurrence constraint \"{attr}\" on a global element"
                )))
            }
            other => {
                return Err(SchemaError::Unsupported {
                    path: path.to_string(),
                    feature: format!("xsd:element attribute \"{other}\""),
                })
            }
        }
    }
    let name = name.ok_or_else(|| syntax("xsd:element is missing its name".into()))?;
    if let Occurs::Bounded(bounded_max) = max {
        if bounded_max == 0 {
            return Err(syntax("maxOccurs must be positive or unbounded".into()));
        }
        if min > bounded_max {
            return Err(syntax(format!("minOccurs {min} exceeds maxOccurs {bounded_max}")));
        }
    }
    if node.text().is_some() {
        return Err(syntax("unexpected text content".into()));
    }

    let model = match (type_name, node.children()) {
        (Some(type_name), children) => {
            if !children.is_empty() {
                return Err(syntax("element declares both a type and nested content".into()));
            }
            if type_name != "xsd:string" {
                if type_name.starts_with("xsd:") {
                    return Err(SchemaError::Unsupported {
                        path: path.to_string(),
                        feature: format!("element type \"{type_name}\""),
                    });
                }
                return Err(syntax(format!("dangling type reference \"{type_name}\"")));
            }
            ElementModel {
                text_allowed: true,
                ..ElementModel::default()
            }
        }
        (None, []) => ElementModel::default(),
        (None, [child]) if child.name() == "xsd:complexType" => {
            compile_complex_type(child, &format!("{path}/xsd:complexType"), elements)?
        }
        (None, children) => {
            let first = children
                .iter()
                .find(|c| c.name() != "xsd:complexType")
                .map(|c| c.name().to_string())
                .unwrap_or_else(|| "a second xsd:complexType".into());
            return Err(SchemaError::Unsupported {
                path: path.to_string(),
                feature: format!("\"{first}\" inside xsd:element"),
            });
        }
    };

    match elements.get(&name) {
        Some(existing) if *existing != model => {
            return Err(syntax(format!("conflicting definitions of element \"{name}\"")));
        }
        _ => {
            elements.insert(name.clone(), model);
        }
    }
    Ok(Particle { name, min, max })
}

fn compile_complex_type(
    node: &XmlNode,
    path: &str,
    elements: &mut BTreeMap<String, ElementModel>,
) -> Result<ElementModel, SchemaError> {
    if let Some((attr, _)) = node.attributes().first() {
        return Err(SchemaError::Unsupported {
            path: path.to_string(),
            feature: format!("xsd:complexType attribute \"{attr}\""),
        });
    }
    if node.text().is_some() {
        return Err(SchemaError::Syntax {
            path: path.to_string(),
            message: "unexpected text content".into(),
        });
    }

    let mut model = ElementModel::default();
    let mut seen_sequence = false;
    for child in node.children() {
        match child.name() {
            "xsd:sequence" if !seen_sequence && model.attributes.is_empty() => {
                seen_sequence = true;
                model.particles =
                    compile_sequence(child, &format!("{path}/xsd:sequence"), elements)?;
            }
            "xsd:sequence" => {
                return Err(SchemaError::Syntax {
                    path: path.to_string(),
                    message: "xsd:sequence must appear once, before any attribute declarations"
                        .into(),
                })
            }
            "xsd:attribute" => {
                let decl = compile_attribute(child, &format!("{path}/xsd:attribute"))?;
                if model.attributes.iter().any(|a| a.name == decl.name) {
                    return Err(SchemaError::Syntax {
                        path: path.to_string(),
                        message: format!("duplicate attribute declaration \"{}\"", decl.name),
                    });
                }
                model.attributes.push(decl);
            }
            other => {
                return Err(SchemaError::Unsupported {
                    path: path.to_string(),
                    feature: format!("\"{other}\" inside xsd:complexType"),
                })
            }
        }
    }
    Ok(model)
}

fn compile_sequence(
    node: &XmlNode,
    path: &str,
    elements: &mut BTreeMap<String, ElementModel>,
) -> Result<Vec<Particle>, SchemaError> {
    if let Some((attr, _)) = node.attributes().first() {
        return Err(SchemaError::Unsupported {
            path: path.to_string(),
            feature: format!("xsd:sequence attribute \"{attr}\""),
        });
    }
    if node.text().is_some() {
        return Err(SchemaError::Syntax {
            path: path.to_string(),
            message: "unexpected text content".into(),
        });
    }
    let mut particles: Vec<Particle> = Vec::new();
    for (index, child) in node.children().iter().enumerate() {
        if child.name() != "xsd:element" {
            return Err(SchemaError::Unsupported {
                path: path.to_string(),
                feature: format!("\"{}\" inside xsd:sequence", child.name()),
            });
        }
        let child_path = format!("{path}/xsd:element[{}]", index + 1);
        let particle = compile_element(child, &child_path, false, elements)?;
        if particles.iter().any(|p| p.name == particle.name) {
            return Err(SchemaError::AmbiguousParticles {
                path: path.to_string(),
                name: particle.name,
            });
        }
        particles.push(particle);
    }
    Ok(particles)
}

fn compile_attribute(node: &XmlNode, path: &str) -> Result<AttributeDecl, SchemaError> {
    let syntax = |message: String| SchemaError::Syntax {
        path: path.to_string(),
        message,
    };
    if !node.children().is_empty() || node.text().is_some() {
        return Err(syntax("xsd:attribute must be empty".into()));
    }
    let mut name = None;
    let mut type_name = None;
    for (attr, value) in node.attributes() {
        match attr.as_str() {
            "name" => name = Some(value.clone()),
            "type" => type_name = Some(value.clone()),
            other => {
                return Err(SchemaError::Unsupported {
                    path: path.to_string(),
                    feature: format!("xsd:attribute attribute \"{other}\""),
                })
            }
        }
    }
    let name = name.ok_or_else(|| syntax("xsd:attribute is missing its name".into()))?;
    let type_name = type_name.ok_or_else(|| syntax(format!("attribute \"{name}\" has no type")))?;
    if type_name != "xsd:string" {
        return Err(SchemaError::Unsupported {
            path: path.to_string(),
            feature: format!("attribute type \"{type_name}\""),
        });
    }
    Ok(AttributeDecl { name, type_name })
}

/// Validates a document tree against a compiled schema. Returns every
/// structural violation as a diagnostic; empty means valid.
///
/// Children are matched against the ordered particle list by greedy
/// sequential matching, which is exact here because compilation rejects
/// schemas whose sibling particles share a name.
pub fn validate_document(root: &XmlNode, model: &ContentModel) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    if root.name() != model.root() {
        diagnostics.push(
            Diagnostic::error(
                DiagnosticCode::WrongRoot,
                format!(
                    "document root is \"{}\", schema requires \"{}\"",
                    root.name(),
                    model.root()
                ),
            )
            .at(Location::element(format!("/{}", root.name()))),
        );
        return diagnostics;
    }
    validate_element(root, &format!("/{}", root.name()), model, &mut diagnostics);
    diagnostics
}

fn validate_element(
    node: &XmlNode,
    path: &str,
    model: &ContentModel,
    diagnostics: &mut Vec<Diagnostic>,
) {
    let Some(element_model) = model.element(node.name()) else {
        return;
    };

    for declared in &element_model.attributes {
        if node.attribute(&declared.name).is_none() {
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::MissingAttribute,
                    format!("missing required attribute \"{}\"", declared.name),
                )
                .at(Location::element(path)),
            );
        }
    }
    for (attr, _) in node.attributes() {
        if !element_model.attributes.iter().any(|d| &d.name == attr) {
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::UnexpectedAttribute,
                    format!("undeclared attribute \"{attr}\""),
                )
                .at(Location::element(path)),
            );
        }
    }

    if node.text().is_some() && !element_model.text_allowed {
        diagnostics.push(
            Diagnostic::error(
                DiagnosticCode::UnexpectedText,
                format!("element \"{}\" does not allow text content", node.name()),
            )
            .at(Location::element(path)),
        );
    }

    // Paths index children among same-named siblings, 1-based.
    let children = node.children();
    let mut ordinals: Vec<usize> = Vec::with_capacity(children.len());
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for child in children {
        let n = counts.entry(child.name()).or_insert(0);
        *n += 1;
        ordinals.push(*n);
    }
    let child_path =
        |i: usize| format!("{path}/{}[{}]", children[i].name(), ordinals[i]);

    let mut cursor = 0usize;
    for particle in &element_model.particles {
        let mut count = 0u32;
        while cursor < children.len() && children[cursor].name() == particle.name {
            validate_element(&children[cursor], &child_path(cursor), model, diagnostics);
            count += 1;
            cursor += 1;
        }
        if count < particle.min {
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::MissingElement,
                    format!(
                        "missing child element \"{}\" ({} of at least {} present)",
                        particle.name, count, particle.min
                    ),
                )
                .at(Location::element(path)),
            );
        }
        if let Occurs::Bounded(max) = particle.max {
            if count > max {
                diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::TooManyOccurrences,
                        format!(
                            "child element \"{}\" occurs {} times, at most {} allowed",
                            particle.name, count, max
                        ),
                    )
                    .at(Location::element(path)),
                );
            }
        }
    }
    while cursor < children.len() {
        diagnostics.push(
            Diagnostic::error(
                DiagnosticCode::UnexpectedElement,
                format!("unexpected element \"{}\"", children[cursor].name()),
            )
            .at(Location::element(child_path(cursor))),
        );
        cursor += 1;
    }
}
