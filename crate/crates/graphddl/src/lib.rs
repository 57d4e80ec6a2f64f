//! Schema definition engine for property graphs.
//!
//! Three layers:
//!
//! - a DDL frontend ([`lexer`], [`parser`], [`ast`]) that turns schema
//!   scripts into statements and prints them back canonically;
//! - a type system ([`typesys`]) with vertex, edge, graph, and label
//!   types, inheritance, and effective-schema resolution;
//! - a catalog ([`catalog`]) that executes statements, tracks schema
//!   objects and their storage containers across multiple graphs, and
//!   persists to a deterministic text format.

pub mod ast;
pub mod catalog;
pub mod datatype;
pub mod lexer;
pub mod parser;
pub mod token;
pub mod typesys;

pub use ast::Statement;
pub use catalog::{Catalog, ExecError, ExecResult, SchemaObject, Session};
pub use datatype::{parse_data_type, DataType, TypeSpecError};
pub use lexer::{tokenize, LexError};
pub use parser::{parse_one, parse_script, parse_statement, ParseError, StatementStream, SyntaxError};
pub use typesys::{TypeError, TypeKind, TypeRegistry};
