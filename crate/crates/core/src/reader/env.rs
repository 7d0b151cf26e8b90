use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Form, ReadError};
use crate::model::{Axiom, Entity, EntityKind, Iri, Ontology};
use crate::patterns::TemplateDef;
use crate::{Diagnostic, Location};

/// An identifier kept alive after its label changed upstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deprecation {
    pub entity: Entity,
    pub replacement: String,
}

/// Bindings created by reading an external ontology.
#[derive(Clone, Debug)]
pub struct External {
    pub ontology: Arc<Ontology>,
    pub bindings: BTreeMap<String, Entity>,
}

#[derive(Clone, Debug)]
pub struct TestDef {
    pub name: String,
    pub location: Location,
    /// The argument of each `(is ...)` form.
    pub assertions: Vec<Form>,
}

/// The result of evaluating one namespace: its ontology plus the identifier
/// table that source code resolves against.
#[derive(Clone, Debug)]
pub struct Environment {
    pub namespace: String,
    pub ontology: Ontology,
    /// Entities are named `base + identifier`.
    pub base: Iri,
    pub test_only: bool,
    pub(crate) defined: bool,
    bindings: BTreeMap<String, Entity>,
    exported: Vec<String>,
    deprecated: BTreeMap<String, Deprecation>,
    pub(crate) templates: BTreeMap<String, Arc<TemplateDef>>,
    imports: Vec<Arc<Ontology>>,
    pub(crate) externals: BTreeMap<Iri, External>,
    pub(crate) tests: Vec<TestDef>,
    pub(crate) diagnostics: Vec<Diagnostic>,
}

/// Identifier charset for defined names: `[A-Za-z_][A-Za-z0-9_-]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl Environment {
    pub fn new(namespace: impl Into<String>) -> Environment {
        let namespace = namespace.into();
        let iri = Iri::new(format!("urn:ontoforge:{namespace}")).unwrap_or_else(|_| {
            Iri::new("urn:ontoforge:anonymous").expect("valid")
        });
        let base = Iri::new(format!("{iri}#")).expect("valid");
        Environment {
            namespace,
            ontology: Ontology::new(iri),
            base,
            test_only: false,
            defined: false,
            bindings: BTreeMap::new(),
            exported: Vec::new(),
            deprecated: BTreeMap::new(),
            templates: BTreeMap::new(),
            imports: Vec::new(),
            externals: BTreeMap::new(),
            tests: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&Entity> {
        self.bindings.get(name).or_else(|| {
            let own = name.strip_prefix(self.namespace.as_str())?.strip_prefix('/')?;
            self.bindings.get(own)
        })
    }

    /// Resolve an identifier. Deprecated aliases resolve to their entity and
    /// record a warning naming the replacement.
    pub fn resolve(&mut self, name: &str, location: &Location) -> Result<Entity, ReadError> {
        if let Some(e) = self.lookup(name) {
            return Ok(e.clone());
        }
        if let Some(dep) = self.deprecated.get(name) {
            let entity = dep.entity.clone();
            let message = format!(
                "`{name}` is deprecated: the label has changed, use `{}` instead",
                dep.replacement
            );
            self.diagnostics
                .push(Diagnostic::warning(Some(location.clone()), message));
            return Ok(entity);
        }
        Err(ReadError::UnboundIdentifier {
            name: name.to_string(),
            location: location.clone(),
        })
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.bindings.contains_key(name) || self.deprecated.contains_key(name)
    }

    /// Bind a name defined by this namespace. It is exported to users.
    pub fn bind(&mut self, name: &str, entity: Entity, location: &Location) -> Result<(), ReadError> {
        self.bind_hidden(name, entity, location)?;
        self.exported.push(name.to_string());
        Ok(())
    }

    /// Bind a name visible only inside this namespace.
    pub(crate) fn bind_hidden(
        &mut self,
        name: &str,
        entity: Entity,
        location: &Location,
    ) -> Result<(), ReadError> {
        if self.is_bound(name) {
            return Err(ReadError::DuplicateBinding {
                name: name.to_string(),
                location: location.clone(),
            });
        }
        self.bindings.insert(name.to_string(), entity);
        Ok(())
    }

    pub fn unbind(&mut self, name: &str) -> Option<Entity> {
        self.exported.retain(|n| n != name);
        self.bindings.remove(name)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Entity> {
        &self.bindings
    }

    /// Names this namespace defines, with their entities, in definition order.
    pub fn exported(&self) -> impl Iterator<Item = (&str, &Entity)> + '_ {
        self.exported
            .iter()
            .filter_map(|n| self.bindings.get(n).map(|e| (n.as_str(), e)))
    }

    pub fn deprecated(&self) -> &BTreeMap<String, Deprecation> {
        &self.deprecated
    }

    pub fn deprecate(&mut self, old: &str, entity: Entity, replacement: &str) {
        self.deprecated.insert(
            old.to_string(),
            Deprecation {
                entity,
                replacement: replacement.to_string(),
            },
        );
    }

    /// Classes defined by this namespace and declared in its own ontology,
    /// as `(identifier, iri)` in definition order.
    pub fn local_classes(&self) -> Vec<(String, Iri)> {
        self.exported()
            .filter(|(_, e)| e.kind == EntityKind::Class && self.ontology.is_declared(e))
            .filter(|(_, e)| !self.is_external(&e.iri))
            .map(|(n, e)| (n.to_string(), e.iri.clone()))
            .collect()
    }

    fn is_external(&self, iri: &Iri) -> bool {
        self.externals
            .values()
            .any(|x| x.bindings.values().any(|e| &e.iri == iri))
    }

    pub fn externals(&self) -> &BTreeMap<Iri, External> {
        &self.externals
    }

    pub fn templates(&self) -> impl Iterator<Item = (&str, &TemplateDef)> + '_ {
        self.templates.iter().map(|(k, v)| (k.as_str(), v.as_ref()))
    }

    pub fn tests(&self) -> &[TestDef] {
        &self.tests
    }

    /// Ontologies this one imports, transitively.
    pub fn imports(&self) -> &[Arc<Ontology>] {
        &self.imports
    }

    pub(crate) fn add_import(&mut self, ontology: Arc<Ontology>) {
        if ontology.iri() != self.ontology.iri()
            && !self.imports.iter().any(|o| o.iri() == ontology.iri())
        {
            self.imports.push(ontology);
        }
    }

    /// Axioms of this ontology followed by those of its import closure.
    pub fn closure_axioms(&self) -> impl Iterator<Item = &Axiom> + '_ {
        self.ontology
            .axioms()
            .chain(self.imports.iter().flat_map(|o| o.axioms()))
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn take_diagnostics(&mut self) -> Vec<Diagnostic> {
        std::mem::take(&mut self.diagnostics)
    }

    pub fn warn(&mut self, location: Option<Location>, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic::warning(location, message));
    }
}
