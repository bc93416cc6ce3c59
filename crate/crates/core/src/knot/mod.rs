//! Companionship trees: grammar, validation and canonical forms.
//!
//! ```text
//! expr   := "U" | "T(" int "," int ")" | "cable(" int "," int ";" expr ")"
//!         | "sum(" expr ("," expr)+ ")"
//!         | "hyp(" atom (";" option)* (";" expr ("," expr)*)? ")"
//! atom   := ident | ident "(" int "," int ")"
//! option := "m=" int | "perm=" ("(" int* ")")+ | "perm=id" | "rev=" flag ("," flag)*
//! flag   := "yes" | "no"
//! ```
//!
//! Cycle entries are 1-based child positions. A single `rev` flag applies to every
//! orbit; otherwise there is one flag per orbit, orbits ordered by their first child.

mod atoms;
mod expr;
mod parse;
mod validate;

pub use atoms::AtomRegistry;
pub use expr::{KnotExpr, SymmetryData};
pub use parse::{parse, parse_with};
pub use validate::{validate, validate_with, Violation, ViolationKind};
