//! In-memory representation of a UML class diagram.
//!
//! A [`Diagram`] is an ordered list of classes; each [`UmlClass`] carries its
//! attributes, methods and outgoing relationships in input order, and nothing
//! is ever sorted, so downstream output is reproducible byte for byte.
//!
//! Names (class names, member names, type names, relationship targets) are
//! free-form strings that must not contain the reserved delimiters `;` and
//! `:`. Type names are not checked against any type system.

use std::fmt;
use std::str::FromStr;

use crate::diagnostics::DiagnosticCode;

/// Errors from parsing the small enumerated domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// The token is not `Public`, `Private` or `Protected` (any case).
    UnknownVisibility(String),
    /// The token does not match `INT | INT..INT | INT..*`, or min > max.
    BadCardinality(String),
}

impl ModelError {
    /// The diagnostic code a parser reports this error under.
    pub fn code(&self) -> DiagnosticCode {
        match self {
            ModelError::UnknownVisibility(_) => DiagnosticCode::UnknownVisibility,
            ModelError::BadCardinality(_) => DiagnosticCode::BadCardinality,
        }
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownVisibility(token) => write!(
                f,
                "unknown visibility \"{token}\" (expected Public, Private or Protected)"
            ),
            ModelError::BadCardinality(token) => write!(
                f,
                "bad cardinality \"{token}\" (expected min..max, min..* or a single bound)"
            ),
        }
    }
}

impl std::error::Error for ModelError {}

/// Member access level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    Public,
    Private,
    Protected,
}

impl Visibility {
    pub const ALL: [Visibility; 3] = [Visibility::Public, Visibility::Private, Visibility::Protected];

    /// Canonical capitalized spelling, used on every output path.
    pub fn as_str(self) -> &'static str {
        match self {
            Visibility::Public => "Public",
            Visibility::Private => "Private",
            Visibility::Protected => "Protected",
        }
    }
}

impl FromStr for Visibility {
    type Err = ModelError;

    /// Case-insensitive: inputs mix `Public` and `public` freely.
    fn from_str(token: &str) -> Result<Self, ModelError> {
        Visibility::ALL
            .into_iter()
            .find(|v| token.eq_ignore_ascii_case(v.as_str()))
            .ok_or_else(|| ModelError::UnknownVisibility(token.to_string()))
    }
}

impl fmt::Display for Visibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relationship category between two classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Association,
    Aggregation,
    Composition,
    Generalization,
}

impl RelationKind {
    /// Canonical record order: associations, aggregations, compositions,
    /// generalizations.
    pub const ALL: [RelationKind; 4] = [
        RelationKind::Association,
        RelationKind::Aggregation,
        RelationKind::Composition,
        RelationKind::Generalization,
    ];

    /// Lower-case label for messages.
    pub fn label(self) -> &'static str {
        match self {
            RelationKind::Association => "association",
            RelationKind::Aggregation => "aggregation",
            RelationKind::Composition => "composition",
            RelationKind::Generalization => "generalization",
        }
    }
}

/// Upper bound of a multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBound {
    Finite(u32),
    Unbounded,
}

/// A `min..max` multiplicity with an optionally unbounded maximum.
///
/// The literal `1` and the range `1..1` denote the same interval but are
/// distinct values: each formats back exactly as it was written, so emitting
/// a parsed diagram reproduces the original spelling. A freshly constructed
/// `bounded(1, 1)` formats as `1..1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cardinality {
    min: u32,
    max: UpperBound,
    bare: bool,
}

impl Cardinality {
    /// A bounded interval; fails when `min > max`.
    pub fn bounded(min: u32, max: u32) -> Result<Self, ModelError> {
        if min > max {
            return Err(ModelError::BadCardinality(format!("{min}..{max}")));
        }
        Ok(Cardinality {
            min,
            max: UpperBound::Finite(max),
            bare: false,
        })
    }

    /// `min..*`.
    pub fn unbounded(min: u32) -> Self {
        Cardinality {
            min,
            max: UpperBound::Unbounded,
            bare: false,
        }
    }

    /// The multiplicity literal `1`, kept distinct from `1..1` so it formats
    /// as written.
    pub fn one() -> Self {
        Cardinality {
            min: 1,
            max: UpperBound::Finite(1),
            bare: true,
        }
    }

    pub fn min(&self) -> u32 {
        self.min
    }

    pub fn max(&self) -> UpperBound {
        self.max
    }
}

fn parse_bound(field: &str) -> Option<u32> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    field.parse().ok()
}

impl FromStr for Cardinality {
    type Err = ModelError;

    fn from_str(token: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::BadCardinality(token.to_string());
        match token.split_once("..") {
            None => {
                let bound = parse_bound(token).ok_or_else(bad)?;
                if token == "1" {
                    Ok(Cardinality::one())
                } else {
                    Cardinality::bounded(bound, bound).map_err(|_| bad())
                }
            }
            Some((lo, "*")) => Ok(Cardinality::unbounded(parse_bound(lo).ok_or_else(bad)?)),
            Some((lo, hi)) => {
                let min = parse_bound(lo).ok_or_else(bad)?;
                let max = parse_bound(hi).ok_or_else(bad)?;
                Cardinality::bounded(min, max).map_err(|_| bad())
            }
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bare {
            return f.write_str("1");
        }
        match self.max {
            UpperBound::Finite(max) => write!(f, "{}..{}", self.min, max),
            UpperBound::Unbounded => write!(f, "{}..*", self.min),
        }
    }
}

/// An attribute: name, declared type, visibility and optional default value.
///
/// An absent default means the value is undefined; an empty-string default is
/// not representable in the codification and therefore not in this model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub type_name: String,
    pub visibility: Visibility,
    pub default_value: Option<String>,
}

impl Attribute {
    pub fn new(name: impl Into<String>, type_name: impl Into<String>, visibility: Visibility) -> Self {
        Attribute {
            name: name.into(),
            type_name: type_name.into(),
            visibility,
            default_value: None,
        }
    }

    pub fn with_default(mut self, value: impl Into<String>) -> Self {
        self.default_value = Some(value.into());
        self
    }
}

/// A method: name, return type and visibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Method {
    pub name: String,
    pub return_type: String,
    pub visibility: Visibility,
}

impl Method {
    pub fn new(name: impl Into<String>, return_type: impl Into<String>, visibility: Visibility) -> Self {
        Method {
            name: name.into(),
            return_type: return_type.into(),
            visibility,
        }
    }
}

/// An outgoing relationship of a class.
///
/// Generalizations carry no cardinality; every other kind requires one. The
/// constructors uphold that pairing; diagrams assembled from raw struct
/// literals are re-checked by the diagram validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relationship {
    pub kind: RelationKind,
    pub cardinality: Option<Cardinality>,
    pub target: String,
}

impl Relationship {
    pub fn association(cardinality: Cardinality, target: impl Into<String>) -> Self {
        Relationship {
            kind: RelationKind::Association,
            cardinality: Some(cardinality),
            target: target.into(),
        }
    }

    pub fn aggregation(cardinality: Cardinality, target: impl Into<String>) -> Self {
        Relationship {
            kind: RelationKind::Aggregation,
            cardinality: Some(cardinality),
            target: target.into(),
        }
    }

    pub fn composition(cardinality: Cardinality, target: impl Into<String>) -> Self {
        Relationship {
            kind: RelationKind::Composition,
            cardinality: Some(cardinality),
            target: target.into(),
        }
    }

    pub fn generalization(target: impl Into<String>) -> Self {
        Relationship {
            kind: RelationKind::Generalization,
            cardinality: None,
            target: target.into(),
        }
    }
}

/// One class: name, attributes, methods and relationships, all in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlClass {
    pub name: String,
    pub attributes: Vec<Attribute>,
    pub methods: Vec<Method>,
    pub relationships: Vec<Relationship>,
}

impl UmlClass {
    pub fn new(name: impl Into<String>) -> Self {
        UmlClass {
            name: name.into(),
            attributes: Vec::new(),
            methods: Vec::new(),
            relationships: Vec::new(),
        }
    }
}

/// A class diagram: the ordered set of its classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagram {
    pub classes: Vec<UmlClass>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    /// The first class with the given name, if any.
    pub fn class(&self, name: &str) -> Option<&UmlClass> {
        self.classes.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visibility_parses_case_insensitively() {
        assert_eq!("Public".parse::<Visibility>().unwrap(), Visibility::Public);
        assert_eq!("public".parse::<Visibility>().unwrap(), Visibility::Public);
        assert_eq!("PROTECTED".parse::<Visibility>().unwrap(), Visibility::Protected);
        assert_eq!(
            "friend".parse::<Visibility>(),
            Err(ModelError::UnknownVisibility("friend".into()))
        );
    }

    #[test]
    fn visibility_roundtrips_exhaustively() {
        for v in Visibility::ALL {
            assert_eq!(v.to_string().parse::<Visibility>().unwrap(), v);
        }
    }

    #[test]
    fn cardinality_parses_documented_literals() {
        let c = "1..*".parse::<Cardinality>().unwrap();
        assert_eq!((c.min(), c.max()), (1, UpperBound::Unbounded));

        let c = "0..*".parse::<Cardinality>().unwrap();
        assert_eq!((c.min(), c.max()), (0, UpperBound::Unbounded));

        let c = "0..1".parse::<Cardinality>().unwrap();
        assert_eq!((c.min(), c.max()), (0, UpperBound::Finite(1)));

        let c = "1".parse::<Cardinality>().unwrap();
        assert_eq!((c.min(), c.max()), (1, UpperBound::Finite(1)));
    }

    #[test]
    fn cardinality_single_bound_is_point_interval() {
        let c = "3".parse::<Cardinality>().unwrap();
        assert_eq!((c.min(), c.max()), (3, UpperBound::Finite(3)));
        assert_eq!(c.to_string(), "3..3");
    }

    #[test]
    fn cardinality_rejects_inverted_range() {
        assert_eq!(
            "3..2".parse::<Cardinality>(),
            Err(ModelError::BadCardinality("3..2".into()))
        );
        assert!(Cardinality::bounded(3, 2).is_err());
    }

    #[test]
    fn cardinality_rejects_garbage() {
        for token in ["", "..", "a..b", "1..", "..2", "1..2..3", "-1..2", "1..*x", "1 ..2", "+1"] {
            assert!(token.parse::<Cardinality>().is_err(), "token {token:?} should not parse");
        }
    }

    #[test]
    fn cardinality_one_and_one_to_one_format_as_written() {
        assert_eq!("1".parse::<Cardinality>().unwrap().to_string(), "1");
        assert_eq!("1..1".parse::<Cardinality>().unwrap().to_string(), "1..1");
        assert_eq!(Cardinality::bounded(1, 1).unwrap().to_string(), "1..1");
        assert_ne!(Cardinality::one(), Cardinality::bounded(1, 1).unwrap());
    }

    #[test]
    fn cardinality_formatting_examples() {
        assert_eq!(Cardinality::unbounded(1).to_string(), "1..*");
        assert_eq!(Cardinality::bounded(0, 1).unwrap().to_string(), "0..1");
        assert_eq!(Cardinality::bounded(2, 5).unwrap().to_string(), "2..5");
    }

    #[test]
    fn cardinality_parse_format_identity_small_domain() {
        // Exhaustive over min,max in [0,9] plus unbounded maxima.
        for min in 0..=9u32 {
            for max in min..=9u32 {
                let c = Cardinality::bounded(min, max).unwrap();
                assert_eq!(c.to_string().parse::<Cardinality>().unwrap(), c);
                assert_eq!(c.to_string(), format!("{min}..{max}"));
            }
            let c = Cardinality::unbounded(min);
            assert_eq!(c.to_string().parse::<Cardinality>().unwrap(), c);
        }
        let one = Cardinality::one();
        assert_eq!(one.to_string().parse::<Cardinality>().unwrap(), one);
    }

    #[test]
    fn relationship_constructors_pair_kind_and_cardinality() {
        let card = Cardinality::unbounded(0);
        for rel in [
            Relationship::association(card, "T"),
            Relationship::aggregation(card, "T"),
            Relationship::composition(card, "T"),
        ] {
            assert_ne!(rel.kind, RelationKind::Generalization);
            assert!(rel.cardinality.is_some());
        }
        let gen = Relationship::generalization("T");
        assert_eq!(gen.kind, RelationKind::Generalization);
        assert!(gen.cardinality.is_none());
    }

    #[test]
    fn diagram_class_lookup() {
        let mut diagram = Diagram::new();
        diagram.classes.push(UmlClass::new("Person"));
        assert!(diagram.class("Person").is_some());
        assert!(diagram.class("Ghost").is_none());
    }
}
