//! Workspace files for multisymplectic computations: a line-oriented format declaring a
//! chart, a Lie algebra action, an n-plectic system, named forms and co-momentum maps, and
//! the verification tasks to run on them.

pub mod ast;
pub mod error;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod printer;
pub mod report;
pub mod tasks;

pub use error::{Diagnostic, DiagnosticKind, Pos, Warning};
pub use model::{load, Model, Value};
pub use parser::{parse_expr, parse_workspace};
pub use printer::{print_expr, print_workspace};
pub use report::{emit, Format, Report, Status};
pub use tasks::{identity_report, run, ConventionMode, Options, RunError};
