//! Types, wffs, signatures, type checking, Table-2 sugar, parsing and printing.

pub mod parse;
pub mod print;
pub mod signature;
pub mod sugar;
pub mod typecheck;
pub mod types;
pub mod wff;

pub use parse::{parse, parse_type, parse_wff, ParseError};
pub use print::{display, print, Printer};
pub use signature::{Definition, Family, Signature, SignatureError};
pub use typecheck::{type_of, type_of_open, TypeError};
pub use types::Type;
pub use wff::{Const, Path, Step, Var, Wff};
