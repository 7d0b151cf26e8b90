//! Reading ontologies produced elsewhere and binding identifiers for their
//! entities, with memorised snapshots to survive label changes.

mod functional;
mod intern;
mod memo;
mod naming;

pub use functional::parse_functional;
pub use intern::{intern_external, Naming};
pub use memo::{memorise_check, memorise_save, DeprecatedAlias, MemoReport, MemoTable};
pub use naming::label_to_identifier;

use thiserror::Error;

use crate::model::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImportError {
    #[error("line {line}: unsupported construct `{name}`")]
    UnsupportedConstruct { name: String, line: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("label \"{0}\" does not map to an identifier")]
    UnmappableLabel(String),
    #[error("memo is for {found:?}, expected {expected:?}")]
    WrongOntology { expected: Iri, found: Iri },
    #[error("no external ontology {0:?} has been read")]
    UnknownSource(Iri),
    #[error("memo line {line}: {message}")]
    MemoFormat { line: usize, message: String },
}
