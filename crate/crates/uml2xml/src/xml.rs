//! Minimal document-object model: element tree, deterministic serializer and
//! a parser for the subset the serializer emits.
//!
//! The subset is exactly what the generated documents and the embedded schema
//! need: elements, ordered attributes with double-quoted values, leaf text
//! content and the five predefined entities. Comments, CDATA, processing
//! instructions, DOCTYPE and namespace declarations other than the literal
//! `xmlns:xsd` attribute are rejected as unsupported rather than silently
//! misread.

use std::fmt;

/// One element: name, ordered attributes, and either child elements or leaf
/// text (never both).
///
/// Element and attribute names are restricted XML names,
/// `[A-Za-z_][A-Za-z0-9_.-]*` with at most one `prefix:` part. The builder
/// methods panic on contract violations (invalid name, duplicate attribute,
/// mixing text with children); parsed input is checked first and reported as
/// [`XmlError`] instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlNode {
    name: String,
    attributes: Vec<(String, String)>,
    children: Vec<XmlNode>,
    text: Option<String>,
}

impl XmlNode {
    /// A new element with no attributes and no content.
    pub fn element(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_valid_name(&name), "invalid element name {name:?}");
        XmlNode {
            name,
            attributes: Vec::new(),
            children: Vec::new(),
            text: None,
        }
    }

    /// Appends an attribute; order is preserved on output.
    pub fn with_attr(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.set_attr(name, value);
        self
    }

    /// Sets leaf text. Whitespace-only text is insignificant to the
    /// serialized form and is dropped.
    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.set_text(text);
        self
    }

    /// Appends a child element.
    pub fn with_child(mut self, child: XmlNode) -> Self {
        self.push_child(child);
        self
    }

    pub fn set_attr(&mut self, name: impl Into<String>, value: impl Into<String>) {
        let name = name.into();
        assert!(is_valid_name(&name), "invalid attribute name {name:?}");
        assert!(
            self.attribute(&name).is_none(),
            "duplicate attribute {name:?} on element {:?}",
            self.name
        );
        self.attributes.push((name, value.into()));
    }

    pub fn set_text(&mut self, text: impl Into<String>) {
        let text = text.into();
        if text.trim().is_empty() {
            return;
        }
        assert!(
            self.children.is_empty(),
            "element {:?} has children and cannot also carry text",
            self.name
        );
        self.text = Some(text);
    }

    pub fn push_child(&mut self, child: XmlNode) {
        assert!(
            self.text.is_none(),
            "element {:?} has text and cannot also carry children",
            self.name
        );
        self.children.push(child);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn attributes(&self) -> &[(String, String)] {
        &self.attributes
    }

    /// The value of the named attribute, if present.
    pub fn attribute(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn children(&self) -> &[XmlNode] {
        &self.children
    }

    pub fn text(&self) -> Option<&str> {
        self.text.as_deref()
    }
}

fn is_name_segment(segment: &str) -> bool {
    let mut chars = segment.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Restricted XML name: `segment` or `prefix:segment`.
pub(crate) fn is_valid_name(name: &str) -> bool {
    match name.split_once(':') {
        None => is_name_segment(name),
        Some((prefix, local)) => is_name_segment(prefix) && is_name_segment(local),
    }
}

fn escape_into(text: &str, out: &mut String) {
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
}

/// Serializes a tree to UTF-8 text: two-space indentation, one element per
/// line, `<Name/>` for empty elements, leaf text inline, LF line endings.
/// Output is byte-identical across runs for equal inputs.
pub fn serialize(root: &XmlNode, with_declaration: bool) -> String {
    let mut out = String::new();
    if with_declaration {
        out.push_str("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n");
    }
    write_node(root, 0, &mut out);
    out
}

fn write_node(node: &XmlNode, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push('<');
    out.push_str(&node.name);
    for (name, value) in &node.attributes {
        out.push(' ');
        out.push_str(name);
        out.push_str("=\"");
        escape_into(value, out);
        out.push('"');
    }
    if let Some(text) = &node.text {
        out.push('>');
        escape_into(text, out);
        out.push_str("</");
        out.push_str(&node.name);
        out.push_str(">\n");
    } else if node.children.is_empty() {
        out.push_str("/>\n");
    } else {
        out.push_str(">\n");
        for child in &node.children {
            write_node(child, depth + 1, out);
        }
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str("</");
        out.push_str(&node.name);
        out.push_str(">\n");
    }
}

/// Parse failure, with the 1-based line and column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XmlError {
    /// Input is not well-formed within the supported subset.
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// Input uses XML outside the supported subset.
    Unsupported {
        line: usize,
        column: usize,
        feature: String,
    },
}

impl fmt::Display for XmlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XmlError::Syntax {
                line,
                column,
                message,
            } => write!(f, "XML syntax error at {line}:{column}: {message}"),
            XmlError::Unsupported {
                line,
                column,
                feature,
            } => write!(f, "unsupported XML at {line}:{column}: {feature}"),
        }
    }
}

impl std::error::Error for XmlError {}

/// Parses a standalone document of the supported subset and returns its root
/// element. Whitespace between elements is insignificant, so reformatted
/// output parses back to the same tree.
pub fn parse_xml(text: &str) -> Result<XmlNode, XmlError> {
    let mut scanner = Scanner::new(text);
    scanner.eat("\u{feff}");
    scanner.skip_declaration()?;
    scanner.skip_whitespace();
    if scanner.peek() != Some('<') {
        return Err(scanner.syntax("expected a document element"));
    }
    let root = scanner.parse_element()?;
    scanner.skip_whitespace();
    if !scanner.at_end() {
        return Err(scanner.syntax("content after the document element"));
    }
    Ok(root)
}

struct Scanner<'a> {
    input: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a str) -> Self {
        Scanner {
            input,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(ch)
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            for _ in prefix.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn syntax(&self, message: impl Into<String>) -> XmlError {
        XmlError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn unsupported(&self, feature: impl Into<String>) -> XmlError {
        XmlError::Unsupported {
            line: self.line,
            column: self.column,
            feature: feature.into(),
        }
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn skip_declaration(&mut self) -> Result<(), XmlError> {
        let after = self.rest().strip_prefix("<?xml");
        let is_declaration = matches!(
            after.and_then(|r| r.chars().next()),
            Some(c) if c.is_ascii_whitespace() || c == '?'
        );
        if !is_declaration {
            return Ok(());
        }
        while !self.rest().starts_with("?>") {
            if self.bump().is_none() {
                return Err(self.syntax("unterminated XML declaration"));
            }
        }
        self.eat("?>");
        Ok(())
    }

    fn read_name(&mut self) -> Result<String, XmlError> {
        let start = self.pos;
        while matches!(
            self.peek(),
            Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | ':')
        ) {
            self.bump();
        }
        let name = &self.input[start..self.pos];
        if !is_valid_name(name) {
            return Err(self.syntax(format!("invalid name \"{name}\"")));
        }
        Ok(name.to_string())
    }

    /// Reads an entity reference with the leading `&` already consumed.
    fn read_entity(&mut self) -> Result<char, XmlError> {
        let start = self.pos;
        loop {
            match self.peek() {
                Some(';') => break,
                Some(c) if c.is_ascii_alphanumeric() && self.pos - start < 6 => {
                    self.bump();
                }
                _ => return Err(self.syntax("bad entity reference")),
            }
        }
        let name = &self.input[start..self.pos];
        let ch = match name {
            "amp" => '&',
            "lt" => '<',
            "gt" => '>',
            "quot" => '"',
            "apos" => '\'',
            _ => return Err(self.syntax(format!("bad entity reference \"&{name};\""))),
        };
        self.bump();
        Ok(ch)
    }

    /// Parses one element with the scanner positioned at its `<`.
    fn parse_element(&mut self) -> Result<XmlNode, XmlError> {
        if self.rest().starts_with("<!--") {
            return Err(self.unsupported("comment"));
        }
        if self.rest().starts_with("<![CDATA[") {
            return Err(self.unsupported("CDATA section"));
        }
        if self.rest().starts_with("<!") {
            return Err(self.unsupported("DOCTYPE or markup declaration"));
        }
        if self.rest().starts_with("<?") {
            return Err(self.unsupported("processing instruction"));
        }
        if self.rest().starts_with("</") {
            return Err(self.syntax("closing tag without a matching open tag"));
        }
        self.eat("<");
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return Err(self.syntax("stray '<'"));
        }
        let name = self.read_name()?;
        let mut node = XmlNode {
            name: name.clone(),
            attributes: Vec::new(),
            children: Vec::new(),
            text: None,
        };

        loop {
            let had_space = matches!(self.peek(), Some(c) if c.is_ascii_whitespace());
            self.skip_whitespace();
            match self.peek() {
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('/') => {
                    self.bump();
                    if !self.eat(">") {
                        return Err(self.syntax("expected '>' after '/'"));
                    }
                    return Ok(node);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    if !had_space {
                        return Err(self.syntax("expected whitespace before attribute"));
                    }
                    let (attr_name, value) = self.parse_attribute()?;
                    if node.attribute(&attr_name).is_some() {
                        return Err(self.syntax(format!("duplicate attribute \"{attr_name}\"")));
                    }
                    if (attr_name == "xmlns" || attr_name.starts_with("xmlns:"))
                        && attr_name != "xmlns:xsd"
                    {
                        return Err(self.unsupported(format!(
                            "namespace declaration \"{attr_name}\""
                        )));
                    }
                    node.attributes.push((attr_name, value));
                }
                Some(_) => return Err(self.syntax("malformed start tag")),
                None => return Err(self.syntax(format!("unclosed start tag <{name}"))),
            }
        }

        // Content: text runs and child elements until the closing tag.
        let mut text_buf = String::new();
        let mut significant_text = false;
        loop {
            match self.peek() {
                None => return Err(self.syntax(format!("unclosed element <{name}>"))),
                Some('<') if self.rest().starts_with("</") => break,
                Some('<') => {
                    let child = self.parse_element()?;
                    node.children.push(child);
                }
                Some('&') => {
                    self.bump();
                    text_buf.push(self.read_entity()?);
                    significant_text = true;
                }
                Some(c) => {
                    if !c.is_ascii_whitespace() {
                        significant_text = true;
                    }
                    text_buf.push(c);
                    self.bump();
                }
            }
        }

        if significant_text {
            if !node.children.is_empty() {
                return Err(self.unsupported("mixed content"));
            }
            node.text = Some(text_buf);
        }

        self.eat("</");
        let close_line = self.line;
        let close_column = self.column;
        let closing = self.read_name()?;
        if closing != name {
            return Err(XmlError::Syntax {
                line: close_line,
                column: close_column,
                message: format!("mismatched closing tag: expected </{name}>, found </{closing}>"),
            });
        }
        self.skip_whitespace();
        if !self.eat(">") {
            return Err(self.syntax("expected '>' to close tag"));
        }
        Ok(node)
    }

    fn parse_attribute(&mut self) -> Result<(String, String), XmlError> {
        let name = self.read_name()?;
        self.skip_whitespace();
        if !self.eat("=") {
            return Err(self.syntax(format!("expected '=' after attribute \"{name}\"")));
        }
        self.skip_whitespace();
        if self.peek() == Some('\'') {
            return Err(self.syntax("attribute values must be double-quoted"));
        }
        if !self.eat("\"") {
            return Err(self.syntax(format!("expected '\"' to open value of \"{name}\"")));
        }
        let mut value = String::new();
        loop {
            match self.peek() {
                None => return Err(self.syntax(format!("unterminated value of \"{name}\""))),
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('<') => return Err(self.syntax("'<' is not allowed in attribute values")),
                Some('&') => {
                    self.bump();
                    value.push(self.read_entity()?);
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        Ok((name, value))
    }
}
