use std::fmt;

use thiserror::Error;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    Syntax,
    UnknownIdentifier,
    DegreeMismatch,
    Duplicate,
    Invalid,
}

impl DiagnosticKind {
    pub fn name(self) -> &'static str {
        match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::UnknownIdentifier => "unknown identifier",
            DiagnosticKind::DegreeMismatch => "degree mismatch",
            DiagnosticKind::Duplicate => "duplicate name",
            DiagnosticKind::Invalid => "invalid definition",
        }
    }
}

/// A positioned error from parsing or loading a workspace file.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{pos}: {}: {message}", kind.name())]
pub struct Diagnostic {
    pub pos: Pos,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(pos: Pos, kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic {
            pos,
            kind,
            message: message.into(),
        }
    }

    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic::new(pos, DiagnosticKind::Syntax, message)
    }
}

/// A positioned warning; loading continues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: warning: {}", self.pos, self.message)
    }
}
