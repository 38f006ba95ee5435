//! Diagnostic reporting shared by every pipeline stage.
//!
//! Findings are never thrown as panics; each stage describes what it saw as
//! [`Diagnostic`] values carrying a stable [`DiagnosticCode`], a severity and
//! a best-effort source [`Location`]. The rendered form
//! `severity code: message (at location)` is what the command-line tool
//! prints, one finding per line.

use std::fmt;

/// How serious a finding is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// Stable identifier for every finding the pipeline can report.
///
/// The rendered spelling of a code is part of the tool's interface and must
/// not change between releases; consumers match on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    // Codification parsing.
    MalformedRecord,
    BadTuple,
    BadCount,
    UnknownVisibility,
    BadCardinality,
    TrailingToken,
    NonStandardCardinality,
    // Diagram validation.
    DuplicateClassName,
    UnknownTarget,
    SelfGeneralization,
    GeneralizationCycle,
    DuplicateMember,
    SelfRelationWarning,
    // Document validation.
    WrongRoot,
    UnexpectedElement,
    MissingElement,
    TooManyOccurrences,
    MissingAttribute,
    UnexpectedAttribute,
    UnexpectedText,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::MalformedRecord => "MalformedRecord",
            DiagnosticCode::BadTuple => "BadTuple",
            DiagnosticCode::BadCount => "BadCount",
            DiagnosticCode::UnknownVisibility => "UnknownVisibility",
            DiagnosticCode::BadCardinality => "BadCardinality",
            DiagnosticCode::TrailingToken => "TrailingToken",
            DiagnosticCode::NonStandardCardinality => "NonStandardCardinality",
            DiagnosticCode::DuplicateClassName => "DuplicateClassName",
            DiagnosticCode::UnknownTarget => "UnknownTarget",
            DiagnosticCode::SelfGeneralization => "SelfGeneralization",
            DiagnosticCode::GeneralizationCycle => "GeneralizationCycle",
            DiagnosticCode::DuplicateMember => "DuplicateMember",
            DiagnosticCode::SelfRelationWarning => "SelfRelationWarning",
            DiagnosticCode::WrongRoot => "WrongRoot",
            DiagnosticCode::UnexpectedElement => "UnexpectedElement",
            DiagnosticCode::MissingElement => "MissingElement",
            DiagnosticCode::TooManyOccurrences => "TooManyOccurrences",
            DiagnosticCode::MissingAttribute => "MissingAttribute",
            DiagnosticCode::UnexpectedAttribute => "UnexpectedAttribute",
            DiagnosticCode::UnexpectedText => "UnexpectedText",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a finding was observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// A line and token of the codification input (both 1-based).
    Input { line: usize, token: usize },
    /// A class of the in-memory diagram, optionally narrowed to a field.
    Class { name: String, field: Option<String> },
    /// A slash-separated path into an XML document, e.g. `/Diagram/Class[1]`.
    Element { path: String },
}

impl Location {
    pub fn input(line: usize, token: usize) -> Self {
        Location::Input { line, token }
    }

    pub fn class(name: impl Into<String>) -> Self {
        Location::Class {
            name: name.into(),
            field: None,
        }
    }

    pub fn class_field(name: impl Into<String>, field: impl Into<String>) -> Self {
        Location::Class {
            name: name.into(),
            field: Some(field.into()),
        }
    }

    pub fn element(path: impl Into<String>) -> Self {
        Location::Element { path: path.into() }
    }

    /// The input line this location refers to, when it refers to one.
    pub fn line(&self) -> Option<usize> {
        match self {
            Location::Input { line, .. } => Some(*line),
            _ => None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Input { line, token } => write!(f, "line {line}, token {token}"),
            Location::Class { name, field: None } => write!(f, "class \"{name}\""),
            Location::Class {
                name,
                field: Some(field),
            } => write!(f, "class \"{name}\", {field}"),
            Location::Element { path } => f.write_str(path),
        }
    }
}

/// One finding: severity, stable code, human-readable message, location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    pub fn error(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn warning(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location: None,
        }
    }

    /// Attaches a location.
    pub fn at(mut self, location: Location) -> Self {
        self.location = Some(location);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.severity, self.code, self.message)?;
        if let Some(location) = &self.location {
            write!(f, " (at {location})")?;
        }
        Ok(())
    }
}

/// True when any diagnostic in the slice has `Error` severity.
pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
