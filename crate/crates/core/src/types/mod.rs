//! Types, indices, and the checker for the explicitly typed dialect.

pub mod ast;
pub mod check;
pub mod index;
pub mod signatures;

pub use ast::{type_equal, Base, Type};
pub use check::Checker;
pub use index::{index_equal, Index, Sort};
pub use signatures::signature;
