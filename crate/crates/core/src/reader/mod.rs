//! Reading and evaluating source files.
//!
//! A file holds one namespace, which defines one ontology:
//!
//! ```text
//! (defontology pizza :iri "http://example.com/pizza#" :prefix "piz")
//! (defclass Pizza :label "Pizza")
//! (defclass CheesyPizza
//!   :equivalent (owland Pizza (owlsome hasTopping CheeseTopping)))
//! ```
//!
//! Identifiers must be defined before they are used.

mod env;
mod error;
mod eval;
mod session;
mod syntax;

pub use env::{is_identifier, Deprecation, Environment, External, TestDef};
pub use error::ReadError;
pub use eval::{builtin_name, eval_forms, Evaluator};
pub use session::{Session, SOURCE_EXTENSION};
pub use syntax::{print_forms, read_forms, Form, FormKind};
