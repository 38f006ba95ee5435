//! Codification codec: the semicolon-delimited, line-per-class text format.
//!
//! One class per line, terminated by `;`:
//!
//! ```text
//! name;NA;(An:At:Av;default;)*NM;(Mn:Mt:Mv;)*NAS;(card:target;)*NAG;(card:target;)*NCO;(card:target;)*NGE;(target;)*
//! ```
//!
//! `NA`/`NM` count attributes and methods; `NAS`/`NAG`/`NCO`/`NGE` count
//! associations, aggregations, compositions and generalizations, in that
//! order. Every attribute entry is followed by its own default-value token;
//! an empty token means the default is undefined. Blank lines are ignored,
//! surrounding whitespace is trimmed per line, and both LF and CRLF input are
//! accepted (LF is emitted).
//!
//! Parsing recovers per record: a record that cannot be decoded contributes
//! an error diagnostic and is left out of the diagram, and decoding continues
//! with the next line.

use std::fmt::Write as _;

use crate::diagnostics::{Diagnostic, DiagnosticCode, Location};
use crate::model::{Attribute, Cardinality, Diagram, Method, RelationKind, Relationship, UmlClass, Visibility};

/// The multiplicity literals of the documented core set. Anything else still
/// parses, but strict mode flags it with a `NonStandardCardinality` warning.
pub const STANDARD_CARDINALITIES: [&str; 4] = ["0..*", "1..*", "0..1", "1"];

/// Parsing strictness.
///
/// `Lenient` exists to load damaged corpora: it forgives a single spurious
/// trailing numeric token per record (warning `TrailingToken`) and does not
/// warn about non-standard cardinality spellings. `Strict` is the default
/// everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    Strict,
    Lenient,
}

/// Outcome of parsing a codification text: the decoded diagram plus every
/// diagnostic raised on the way. Error diagnostics mean the parse failed;
/// the diagram then holds only the records that did decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseResult {
    pub diagram: Diagram,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn has_errors(&self) -> bool {
        crate::diagnostics::has_errors(&self.diagnostics)
    }
}

/// Decodes codification text into a [`Diagram`].
pub fn parse_codification(text: &str, mode: ParseMode) -> ParseResult {
    let mut diagram = Diagram::new();
    let mut diagnostics = Vec::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_record(line, line_no, mode, &mut diagnostics) {
            Ok(class) => diagram.classes.push(class),
            Err(diagnostic) => diagnostics.push(diagnostic),
        }
    }
    ParseResult {
        diagram,
        diagnostics,
    }
}

/// Encodes a diagram in canonical form: counts computed from list lengths,
/// visibility capitalized, cardinalities in canonical spelling, relationship
/// entries grouped in category order. `parse_codification` of the result
/// reproduces the diagram exactly.
pub fn emit_codification(diagram: &Diagram) -> String {
    let mut out = String::new();
    for class in &diagram.classes {
        let _ = write!(out, "{};{};", class.name, class.attributes.len());
        for attribute in &class.attributes {
            let default = attribute.default_value.as_deref().unwrap_or("");
            let _ = write!(
                out,
                "{}:{}:{};{};",
                attribute.name, attribute.type_name, attribute.visibility, default
            );
        }
        let _ = write!(out, "{};", class.methods.len());
        for method in &class.methods {
            let _ = write!(out, "{}:{}:{};", method.name, method.return_type, method.visibility);
        }
        for kind in [
            RelationKind::Association,
            RelationKind::Aggregation,
            RelationKind::Composition,
        ] {
            let group: Vec<&Relationship> =
                class.relationships.iter().filter(|r| r.kind == kind).collect();
            let _ = write!(out, "{};", group.len());
            for relationship in group {
                let cardinality = relationship
                    .cardinality
                    .expect("non-generalization relationship carries a cardinality");
                let _ = write!(out, "{}:{};", cardinality, relationship.target);
            }
        }
        let generalizations: Vec<&Relationship> = class
            .relationships
            .iter()
            .filter(|r| r.kind == RelationKind::Generalization)
            .collect();
        let _ = write!(out, "{};", generalizations.len());
        for relationship in generalizations {
            let _ = write!(out, "{};", relationship.target);
        }
        out.push('\n');
    }
    out
}

struct Cursor<'a> {
    tokens: Vec<&'a str>,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    /// Location of the next (not yet consumed) token, 1-based.
    fn next_loc(&self) -> Location {
        Location::input(self.line, self.pos + 1)
    }

    /// Location of the token consumed last.
    fn here(&self) -> Location {
        Location::input(self.line, self.pos)
    }

    fn next(&mut self, what: &str) -> Result<&'a str, Diagnostic> {
        match self.tokens.get(self.pos) {
            Some(token) => {
                self.pos += 1;
                Ok(token)
            }
            None => Err(Diagnostic::error(
                DiagnosticCode::MalformedRecord,
                format!("record ends before the expected {what}"),
            )
            .at(self.next_loc())),
        }
    }
}

fn is_count_token(token: &str) -> bool {
    !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit())
}

fn parse_count(cursor: &mut Cursor<'_>, what: &str) -> Result<usize, Diagnostic> {
    let token = cursor.next(what)?;
    if !is_count_token(token) {
        return Err(Diagnostic::error(
            DiagnosticCode::BadCount,
            format!("{what} must be a non-negative integer, got \"{token}\""),
        )
        .at(cursor.here()));
    }
    token.parse().map_err(|_| {
        Diagnostic::error(DiagnosticCode::BadCount, format!("{what} \"{token}\" is too large"))
            .at(cursor.here())
    })
}

fn split_fields<'a, const N: usize>(
    entry: &'a str,
    what: &str,
    location: &Location,
) -> Result<[&'a str; N], Diagnostic> {
    let fields: Vec<&str> = entry.split(':').collect();
    if fields.len() != N {
        return Err(Diagnostic::error(
            DiagnosticCode::BadTuple,
            format!(
                "{what} entry must have {N} ':'-separated field(s), got {} in \"{entry}\"",
                fields.len()
            ),
        )
        .at(location.clone()));
    }
    if fields.iter().any(|f| f.is_empty()) {
        return Err(Diagnostic::error(
            DiagnosticCode::BadTuple,
            format!("{what} entry \"{entry}\" has an empty field"),
        )
        .at(location.clone()));
    }
    Ok(fields.try_into().expect("length checked above"))
}

fn parse_record(
    line: &str,
    line_no: usize,
    mode: ParseMode,
    diagnostics: &mut Vec<Diagnostic>,
) -> Result<UmlClass, Diagnostic> {
    let Some(body) = line.strip_suffix(';') else {
        return Err(Diagnostic::error(
            DiagnosticCode::MalformedRecord,
            "record must end with ';'",
        )
        .at(Location::input(line_no, line.split(';').count())));
    };
    let mut cursor = Cursor {
        tokens: body.split(';').collect(),
        pos: 0,
        line: line_no,
    };

    let name = cursor.next("class name")?;
    if name.is_empty() || name.contains(':') {
        return Err(Diagnostic::error(
            DiagnosticCode::MalformedRecord,
            format!("invalid class name \"{name}\""),
        )
        .at(cursor.here()));
    }
    let mut class = UmlClass::new(name);

    let attribute_count = parse_count(&mut cursor, "attribute count")?;
    for _ in 0..attribute_count {
        let entry = cursor.next("attribute entry")?;
        let entry_loc = cursor.here();
        let [attr_name, type_name, visibility] = split_fields(entry, "attribute", &entry_loc)?;
        let visibility: Visibility = visibility
            .parse()
            .map_err(|e: crate::model::ModelError| {
                Diagnostic::error(e.code(), e.to_string()).at(entry_loc.clone())
            })?;
        let default_token = cursor.next("default-value token")?;
        let mut attribute = Attribute::new(attr_name, type_name, visibility);
        if !default_token.is_empty() {
            attribute = attribute.with_default(default_token);
        }
        class.attributes.push(attribute);
    }

    let method_count = parse_count(&mut cursor, "method count")?;
    for _ in 0..method_count {
        let entry = cursor.next("method entry")?;
        let entry_loc = cursor.here();
        let [meth_name, return_type, visibility] = split_fields(entry, "method", &entry_loc)?;
        let visibility: Visibility = visibility
            .parse()
            .map_err(|e: crate::model::ModelError| {
                Diagnostic::error(e.code(), e.to_string()).at(entry_loc.clone())
            })?;
        class.methods.push(Method::new(meth_name, return_type, visibility));
    }

    for kind in [
        RelationKind::Association,
        RelationKind::Aggregation,
        RelationKind::Composition,
    ] {
        let count = parse_count(&mut cursor, &format!("{} count", kind.label()))?;
        for _ in 0..count {
            let entry = cursor.next(&format!("{} entry", kind.label()))?;
            let entry_loc = cursor.here();
            let [card_token, target] = split_fields(entry, kind.label(), &entry_loc)?;
            let cardinality: Cardinality = card_token
                .parse()
                .map_err(|e: crate::model::ModelError| {
                    Diagnostic::error(e.code(), e.to_string()).at(entry_loc.clone())
                })?;
            if mode == ParseMode::Strict && !STANDARD_CARDINALITIES.contains(&card_token) {
                diagnostics.push(
                    Diagnostic::warning(
                        DiagnosticCode::NonStandardCardinality,
                        format!(
                            "cardinality \"{card_token}\" is outside the documented set 0..*, 1..*, 0..1, 1"
                        ),
                    )
                    .at(entry_loc.clone()),
                );
            }
            class.relationships.push(Relationship {
                kind,
                cardinality: Some(cardinality),
                target: target.to_string(),
            });
        }
    }

    let generalization_count = parse_count(&mut cursor, "generalization count")?;
    for _ in 0..generalization_count {
        let target = cursor.next("generalization target")?;
        if target.is_empty() || target.contains(':') {
            return Err(Diagnostic::error(
                DiagnosticCode::BadTuple,
                format!("generalization entry must be a bare class name, got \"{target}\""),
            )
            .at(cursor.here()));
        }
        class.relationships.push(Relationship::generalization(target));
    }

    let leftover = &cursor.tokens[cursor.pos..];
    if !leftover.is_empty() {
        let location = cursor.next_loc();
        if mode == ParseMode::Lenient && leftover.len() == 1 && is_count_token(leftover[0]) {
            diagnostics.push(
                Diagnostic::warning(
                    DiagnosticCode::TrailingToken,
                    format!("ignoring spurious trailing token \"{}\"", leftover[0]),
                )
                .at(location),
            );
        } else {
            return Err(Diagnostic::error(
                DiagnosticCode::MalformedRecord,
                format!(
                    "{} unconsumed trailing token(s) beginning with \"{}\"",
                    leftover.len(),
                    leftover[0]
                ),
            )
            .at(location));
        }
    }

    Ok(class)
}
