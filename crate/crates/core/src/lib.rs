//! A small finite-state calculus with directed replacement.
//!
//! The crate compiles a regular-expression language over symbol pairs into
//! transducers ([`Network`]), including the directed replace operators
//! `@->`, `@>`, `->@`, `>@`, marking rules of the form `UPPER @-> PREFIX ... SUFFIX`
//! and directed parallel replacement. Compiled networks can be applied to
//! text ([`apply`]), serialized ([`artifact`]) and checked against a
//! brute-force scanning reference ([`oracle`]).
//!
//! ```
//! use fsc_core::{regex, apply, SymbolTable};
//!
//! let mut table = SymbolTable::new();
//! let net = regex::compile_str("a b | b | b a | a b a @-> x", &mut table).unwrap();
//! assert_eq!(apply::apply_down_text(&net, &table, "aba", 10), vec!["x".to_string()]);
//! ```

pub mod alphabet;
pub mod apply;
pub mod artifact;
pub mod error;
pub mod network;
pub mod oracle;
pub mod recipes;
pub mod regex;
pub mod replace;
pub mod selftest;

pub use alphabet::{harmonize, SymbolId, SymbolTable};
pub use error::{Error, Result};
pub use network::{Arc, Network, Side, StateId};
pub use replace::{Action, ContextSpec, Direction, MatchLength, ReplaceSpec};

/// A string of symbols.
pub type Word = Vec<SymbolId>;
