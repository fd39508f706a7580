use std::fmt;

/// An element or attribute outside the supported subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unsupported {
    pub element: String,
    pub attribute: Option<String>,
    pub line: u32,
}

impl fmt::Display for Unsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.attribute {
            Some(a) => write!(f, "{}@{}:{}", self.element, a, self.line),
            None => write!(f, "{}:{}", self.element, self.line),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XcspError {
    #[error("XML: {0}")]
    Xml(String),
    /// Every offending element of the document, as `element:line` or
    /// `element@attribute:line`.
    #[error("unsupported: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))]
    Unsupported(Vec<Unsupported>),
    #[error("line {line}: undeclared identifier `{id}`")]
    Undeclared { id: String, line: u32 },
    #[error("line {line}: identifier `{id}` declared twice")]
    Duplicate { id: String, line: u32 },
    #[error("line {line}: malformed {what} at offset {pos} in `{text}`")]
    Malformed { what: &'static str, line: u32, pos: usize, text: String },
    #[error("line {line}: {msg}")]
    Invalid { line: u32, msg: String },
    #[error("constraint {0}: starred tuples in a conflicts table")]
    StarredNegative(usize),
    #[error("constraint {index}: {msg}")]
    Build { index: usize, msg: String },
}
