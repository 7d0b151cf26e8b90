use std::fmt;
use std::sync::Arc;

use super::ModelError;

pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// An absolute IRI. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Iri, ModelError> {
        let value = value.as_ref();
        if !is_absolute(value) {
            return Err(ModelError::InvalidIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Text after the last `#`, or after the last `/` when there is no `#`.
    pub fn fragment(&self) -> &str {
        let s = self.as_str();
        match s.rfind('#') {
            Some(i) => &s[i + 1..],
            None => match s.rfind('/') {
                Some(i) => &s[i + 1..],
                None => s,
            },
        }
    }

    /// Concatenate a local name onto this IRI, used as a namespace base.
    pub fn join(&self, local: &str) -> Result<Iri, ModelError> {
        Iri::new(format!("{}{}", self.as_str(), local))
    }

    pub fn thing() -> Iri {
        Iri(Arc::from(format!("{OWL}Thing")))
    }

    pub fn nothing() -> Iri {
        Iri(Arc::from(format!("{OWL}Nothing")))
    }

    pub fn rdfs_label() -> Iri {
        Iri(Arc::from(format!("{RDFS}label")))
    }

    pub fn rdfs_comment() -> Iri {
        Iri(Arc::from(format!("{RDFS}comment")))
    }
}

fn is_absolute(value: &str) -> bool {
    if value.is_empty()
        || value
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
    {
        return false;
    }
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    let valid_scheme = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    valid_scheme && value.len() > colon + 1
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}
