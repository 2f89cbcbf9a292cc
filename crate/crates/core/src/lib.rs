//! Remora: a rank-polymorphic array language.
//!
//! Source text flows through [`reader`] (tokens and surface forms),
//! [`desugar`] (core expressions), optionally the type checker and
//! erasure, and finally [`eval`]. [`session::Session`] strings the stages
//! together.

pub mod array;
pub mod builtins;
pub mod desugar;
pub mod error;
pub mod eval;
pub mod format;
pub mod reader;
pub mod session;
pub mod syntax;
pub mod types;

pub use array::{ArrayValue, Atom, CellRank, Function, Witness};
pub use error::{Error, ErrorKind, Pos, Result};
pub use eval::{Dialect, Env, Interpreter};
pub use format::format_value;
pub use session::{Mode, Options, Outcome, Session};
