//! Ontology development as programming.
//!
//! Source files written in a small s-expression language are evaluated into
//! an OWL axiom model ([`model`]), enriched by design patterns
//! ([`patterns`]), multilingual labels ([`polyglot`]) and external
//! ontologies ([`importer`]), rendered to Manchester or functional syntax
//! ([`serializer`]), classified by an EL reasoner ([`reasoner`]) and checked
//! by in-file unit tests ([`testkit`]).

pub mod diagnostics;
pub mod importer;
pub mod model;
pub mod patterns;
pub mod polyglot;
pub mod reader;
pub mod reasoner;
pub mod serializer;
pub mod testkit;

pub use diagnostics::{Diagnostic, Location, Severity};
