use std::path::PathBuf;

use thiserror::Error;

use crate::importer::ImportError;
use crate::model::{EntityKind, ModelError};
use crate::patterns::PatternError;
use crate::polyglot::PropertiesError;
use crate::{Diagnostic, Location};

/// Everything that can go wrong while reading and evaluating source files.
///
/// Messages do not repeat the location; [`ReadError::to_diagnostic`] adds it.
#[derive(Debug, Clone, Error)]
pub enum ReadError {
    #[error("{message}")]
    Parse { location: Location, message: String },
    #[error("unbound identifier `{name}`")]
    UnboundIdentifier { name: String, location: Location },
    #[error("namespace already defines an ontology")]
    DuplicateOntology { location: Location },
    #[error("expected `(defontology name :iri \"...\")` before other forms")]
    MissingOntology { location: Location },
    #[error("unknown option `:{option}`")]
    UnknownOption { option: String, location: Location },
    #[error("unknown form `{name}`")]
    UnknownForm { name: String, location: Location },
    #[error("{message}")]
    Syntax { location: Location, message: String },
    #[error("`{name}` is already bound")]
    DuplicateBinding { name: String, location: Location },
    #[error("`{name}` is not a valid identifier")]
    InvalidIdentifier { name: String, location: Location },
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: EntityKind,
        found: EntityKind,
        location: Location,
    },
    #[error("namespace `{namespace}` not found (looked for {})", .path.display())]
    NamespaceNotFound { namespace: String, path: PathBuf },
    #[error("cyclic use: {}", .cycle.join(" -> "))]
    Cycle { cycle: Vec<String>, location: Location },
    #[error("{source}")]
    Model { location: Location, source: ModelError },
    #[error("{source}")]
    Pattern { location: Location, source: PatternError },
    #[error("{}: {source}", .path.display())]
    Import {
        location: Location,
        path: PathBuf,
        source: ImportError,
    },
    #[error("{}: {source}", .path.display())]
    Properties {
        location: Location,
        path: PathBuf,
        source: PropertiesError,
    },
    #[error("{message}")]
    TestSyntax { location: Location, message: String },
    #[error("{}: {message}", .path.display())]
    Io {
        location: Option<Location>,
        path: PathBuf,
        message: String,
    },
}

impl ReadError {
    pub fn location(&self) -> Option<&Location> {
        match self {
            ReadError::Parse { location, .. }
            | ReadError::UnboundIdentifier { location, .. }
            | ReadError::DuplicateOntology { location }
            | ReadError::MissingOntology { location }
            | ReadError::UnknownOption { location, .. }
            | ReadError::UnknownForm { location, .. }
            | ReadError::Syntax { location, .. }
            | ReadError::DuplicateBinding { location, .. }
            | ReadError::InvalidIdentifier { location, .. }
            | ReadError::WrongKind { location, .. }
            | ReadError::Cycle { location, .. }
            | ReadError::Model { location, .. }
            | ReadError::Pattern { location, .. }
            | ReadError::Import { location, .. }
            | ReadError::Properties { location, .. }
            | ReadError::TestSyntax { location, .. } => Some(location),
            ReadError::Io { location, .. } => location.as_ref(),
            ReadError::NamespaceNotFound { .. } => None,
        }
    }

    /// Whether the failure came from the file system rather than the source.
    pub fn is_io(&self) -> bool {
        matches!(self, ReadError::Io { .. })
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.location().cloned(), self.to_string())
    }

    pub(crate) fn syntax(location: &Location, message: impl Into<String>) -> ReadError {
        ReadError::Syntax {
            location: location.clone(),
            message: message.into(),
        }
    }
}
