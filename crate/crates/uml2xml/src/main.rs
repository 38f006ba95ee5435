//! Command-line front end for the conversion pipeline.
//!
//! Exit codes are stable: 0 success, 1 diagram-validation errors, 2 parse
//! errors, 3 I/O errors, 4 self-validation failure of the tool's own output,
//! 5 bad usage. Diagnostics go to stderr, one per line; generated XML goes to
//! the output file (or stdout with `-o -`), so the tool composes in shell
//! pipelines.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use uml2xml::{
    compile_schema, embedded_schema_text, generate_document, parse_codification, serialize,
    validate_diagram, validate_document, Diagnostic, ParseMode,
};

mod exit {
    pub const SUCCESS: u8 = 0;
    pub const DIAGRAM_INVALID: u8 = 1;
    pub const PARSE_FAILED: u8 = 2;
    pub const IO: u8 = 3;
    pub const SELF_VALIDATION: u8 = 4;
    pub const USAGE: u8 = 5;
}

#[derive(Parser)]
#[command(
    name = "uml2xml",
    version,
    about = "Convert codified UML class diagrams into schema-validated XML documents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: parse, validate the diagram, generate XML, self-validate, write
    Convert {
        /// Codification input file (.uml)
        input: PathBuf,
        /// Output XML file, or '-' for stdout
        #[arg(short, long)]
        output: String,
        /// Also write the embedded schema to this path
        #[arg(long)]
        xsd: Option<PathBuf>,
        /// Forgive a single spurious trailing numeric token per record
        #[arg(long)]
        lenient: bool,
        /// Write all diagnostics as a JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Parse a codification file and validate the diagram, writing nothing
    Validate {
        /// Codification input file (.uml)
        input: PathBuf,
        /// Forgive a single spurious trailing numeric token per record
        #[arg(long)]
        lenient: bool,
    },
    /// Parse an XML file and validate it against the embedded schema
    CheckXml {
        /// XML input file
        input: PathBuf,
    },
    /// Write the embedded XSD schema
    EmitXsd {
        /// Output schema file, or '-' for stdout
        #[arg(short, long)]
        output: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::SUCCESS,
                _ => exit::USAGE,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Convert {
            input,
            output,
            xsd,
            lenient,
            report,
        } => cmd_convert(&input, &output, xsd.as_deref(), lenient, report.as_deref()),
        Command::Validate { input, lenient } => cmd_validate(&input, lenient),
        Command::CheckXml { input } => cmd_check_xml(&input),
        Command::EmitXsd { output } => cmd_emit_xsd(&output),
    };
    ExitCode::from(code)
}

fn parse_mode(lenient: bool) -> ParseMode {
    if lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

fn cmd_convert(
    input: &Path,
    output: &str,
    xsd: Option<&Path>,
    lenient: bool,
    report: Option<&Path>,
) -> u8 {
    let text = match fs::read_to_string(input) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {}: {error}", input.display());
            return exit::IO;
        }
    };

    let result = parse_codification(&text, parse_mode(lenient));
    let mut diagnostics = result.diagnostics.clone();
    if result.has_errors() {
        return finish(&diagnostics, report, exit::PARSE_FAILED);
    }

    let validation = validate_diagram(&result.diagram);
    let diagram_invalid = uml2xml::has_errors(&validation);
    diagnostics.extend(validation);
    if diagram_invalid {
        return finish(&diagnostics, report, exit::DIAGRAM_INVALID);
    }

    let document = generate_document(&result.diagram);
    let model = compile_schema(embedded_schema_text()).expect("embedded schema compiles");
    let self_check = validate_document(&document, &model);
    if !self_check.is_empty() {
        diagnostics.extend(self_check);
        eprintln!("error: generated document failed schema self-validation; nothing written");
        return finish(&diagnostics, report, exit::SELF_VALIDATION);
    }

    if let Some(xsd_path) = xsd {
        if let Err(error) = write_atomic(xsd_path, embedded_schema_text().as_bytes()) {
            eprintln!("error: cannot write {}: {error}", xsd_path.display());
            return finish(&diagnostics, report, exit::IO);
        }
    }

    let xml = serialize(&document, true);
    if output == "-" {
        print!("{xml}");
    } else if let Err(error) = write_atomic(Path::new(output), xml.as_bytes()) {
        eprintln!("error: cannot write {output}: {error}");
        return finish(&diagnostics, report, exit::IO);
    }
    finish(&diagnostics, report, exit::SUCCESS)
}

fn cmd_validate(input: &Path, lenient: bool) -> u8 {
    let text = match fs::read_to_string(input) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {}: {error}", input.display());
            return exit::IO;
        }
    };

    let result = parse_codification(&text, parse_mode(lenient));
    let mut diagnostics = result.diagnostics.clone();
    if result.has_errors() {
        return finish(&diagnostics, None, exit::PARSE_FAILED);
    }

    let validation = validate_diagram(&result.diagram);
    let diagram_invalid = uml2xml::has_errors(&validation);
    diagnostics.extend(validation);
    let code = if diagram_invalid {
        exit::DIAGRAM_INVALID
    } else {
        exit::SUCCESS
    };
    finish(&diagnostics, None, code)
}

fn cmd_check_xml(input: &Path) -> u8 {
    let text = match fs::read_to_string(input) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {}: {error}", input.display());
            return exit::IO;
        }
    };

    let document = match uml2xml::parse_xml(&text) {
        Ok(document) => document,
        Err(error) => {
            eprintln!("error: {}: {error}", input.display());
            return exit::PARSE_FAILED;
        }
    };

    let model = compile_schema(embedded_schema_text()).expect("embedded schema compiles");
    let diagnostics = validate_document(&document, &model);
    let code = if uml2xml::has_errors(&diagnostics) {
        exit::DIAGRAM_INVALID
    } else {
        exit::SUCCESS
    };
    finish(&diagnostics, None, code)
}

fn cmd_emit_xsd(output: &str) -> u8 {
    if output == "-" {
        print!("{}", embedded_schema_text());
        return exit::SUCCESS;
    }
    match write_atomic(Path::new(output), embedded_schema_text().as_bytes()) {
        Ok(()) => exit::SUCCESS,
        Err(error) => {
            eprintln!("error: cannot write {output}: {error}");
            exit::IO
        }
    }
}

/// Prints every diagnostic to stderr and writes the JSON report when asked.
fn finish(diagnostics: &[Diagnostic], report: Option<&Path>, code: u8) -> u8 {
    for diagnostic in diagnostics {
        eprintln!("{diagnostic}");
    }
    if let Some(report_path) = report {
        if let Err(error) = write_report(report_path, diagnostics) {
            eprintln!("error: cannot write {}: {error}", report_path.display());
            if code == exit::SUCCESS {
                return exit::IO;
            }
        }
    }
    code
}

#[derive(Serialize)]
struct ReportEntry {
    severity: String,
    code: String,
    message: String,
    location: Option<String>,
}

fn write_report(path: &Path, diagnostics: &[Diagnostic]) -> std::io::Result<()> {
    let entries: Vec<ReportEntry> = diagnostics
        .iter()
        .map(|d| ReportEntry {
            severity: d.severity.to_string(),
            code: d.code.to_string(),
            message: d.message.clone(),
            location: d.location.as_ref().map(|l| l.to_string()),
        })
        .collect();
    let json = serde_json::to_string_pretty(&entries).expect("report entries serialize");
    write_atomic(path, json.as_bytes())
}

/// Writes via a temporary file and rename, so a failed run leaves the target
/// absent or untouched.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut temp = tempfile::NamedTempFile::new_in(dir)?;
    temp.write_all(bytes)?;
    temp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
