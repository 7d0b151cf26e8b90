use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;

use super::{iri, Axiom, Entity, EntityKind, Iri, ModelError};

/// An insertion-ordered, duplicate-free set of axioms plus a prefix table.
#[derive(Clone, Debug)]
pub struct Ontology {
    iri: Iri,
    axioms: IndexSet<Axiom>,
    prefixes: BTreeMap<String, String>,
    declared: HashMap<Iri, EntityKind>,
    version: u64,
}

impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.iri == other.iri && self.prefixes == other.prefixes && self.axioms == other.axioms
    }
}

impl Eq for Ontology {}

impl Ontology {
    pub fn new(iri: Iri) -> Ontology {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("owl".to_string(), iri::OWL.to_string());
        prefixes.insert("rdf".to_string(), iri::RDF.to_string());
        prefixes.insert("rdfs".to_string(), iri::RDFS.to_string());
        prefixes.insert("xsd".to_string(), iri::XSD.to_string());
        Ontology {
            iri,
            axioms: IndexSet::new(),
            prefixes,
            declared: HashMap::new(),
            version: 0,
        }
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    pub fn set_iri(&mut self, iri: Iri) {
        self.iri = iri;
        self.version += 1;
    }

    /// Bumped on every mutation.
    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn add_prefix(&mut self, label: impl Into<String>, base: impl Into<String>) {
        self.prefixes.insert(label.into(), base.into());
    }

    pub fn replace_prefixes(&mut self, prefixes: BTreeMap<String, String>) {
        self.prefixes = prefixes;
    }

    pub fn axioms(&self) -> impl ExactSizeIterator<Item = &Axiom> + Clone + '_ {
        self.axioms.iter()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn kind_of(&self, iri: &Iri) -> Option<EntityKind> {
        self.declared.get(iri).copied()
    }

    pub fn is_declared(&self, entity: &Entity) -> bool {
        entity.is_builtin() || self.kind_of(&entity.iri) == Some(entity.kind)
    }

    /// Declared entities in declaration order.
    pub fn entities(&self) -> impl Iterator<Item = &Entity> + '_ {
        self.axioms.iter().filter_map(|a| match a {
            Axiom::Declaration(e) => Some(e),
            _ => None,
        })
    }

    pub fn classes(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.entities()
            .filter(|e| e.kind == EntityKind::Class)
            .map(|e| &e.iri)
    }

    /// Declare an entity; declaring it again is a no-op.
    pub fn declare(&mut self, kind: EntityKind, iri: Iri) -> Result<Entity, ModelError> {
        let entity = Entity::new(kind, iri);
        self.add_axioms([Axiom::Declaration(entity.clone())])?;
        Ok(entity)
    }

    /// Add axioms, returning how many were new. Either all axioms are
    /// accepted or none are.
    pub fn add_axioms(
        &mut self,
        axioms: impl IntoIterator<Item = Axiom>,
    ) -> Result<usize, ModelError> {
        let axioms: Vec<Axiom> = axioms.into_iter().collect();
        let mut pending: HashMap<Iri, EntityKind> = HashMap::new();
        for axiom in &axioms {
            if let Axiom::Declaration(e) = axiom {
                let existing = self
                    .declared
                    .get(&e.iri)
                    .or_else(|| pending.get(&e.iri))
                    .copied();
                match existing {
                    Some(kind) if kind != e.kind => {
                        return Err(ModelError::DuplicateEntityKind {
                            iri: e.iri.clone(),
                            existing: kind,
                            requested: e.kind,
                        })
                    }
                    _ => {
                        pending.insert(e.iri.clone(), e.kind);
                    }
                }
                continue;
            }
            for entity in axiom.signature() {
                if entity.is_builtin() {
                    continue;
                }
                let known = self
                    .declared
                    .get(&entity.iri)
                    .or_else(|| pending.get(&entity.iri));
                if known != Some(&entity.kind) {
                    return Err(ModelError::UndeclaredEntity(entity));
                }
            }
        }
        let mut added = 0;
        for axiom in axioms {
            if self.insert_unchecked(axiom) {
                added += 1;
            }
        }
        Ok(added)
    }

    /// Insert without declaration checks. Used when reading foreign files,
    /// which may legitimately omit declarations.
    pub fn insert_unchecked(&mut self, axiom: Axiom) -> bool {
        if let Axiom::Declaration(e) = &axiom {
            if self.declared.contains_key(&e.iri) && self.declared[&e.iri] != e.kind {
                // Punning is not modelled; the first declaration wins.
                return false;
            }
            self.declared.insert(e.iri.clone(), e.kind);
        }
        let added = self.axioms.insert(axiom);
        if added {
            self.version += 1;
        }
        added
    }

    pub fn remove(&mut self, axiom: &Axiom) -> bool {
        let removed = self.axioms.shift_remove(axiom);
        if removed {
            if let Axiom::Declaration(e) = axiom {
                self.declared.remove(&e.iri);
            }
            self.version += 1;
        }
        removed
    }

    /// Every axiom that mentions the entity, including its declaration and
    /// annotations about it.
    pub fn axioms_referencing(&self, entity: &Entity) -> Vec<Axiom> {
        self.axioms
            .iter()
            .filter(|a| a.references(entity))
            .cloned()
            .collect()
    }

    /// Remove [`Ontology::axioms_referencing`] and return what was removed.
    pub fn remove_referencing(&mut self, entity: &Entity) -> Vec<Axiom> {
        let doomed = self.axioms_referencing(entity);
        for axiom in &doomed {
            self.remove(axiom);
        }
        doomed
    }

    /// Union of the signatures of all axioms.
    pub fn signature(&self) -> IndexSet<Entity> {
        self.axioms.iter().flat_map(|a| a.signature()).collect()
    }

    /// Annotation values for a subject and property, in insertion order.
    pub fn annotations<'a>(
        &'a self,
        subject: &'a Iri,
        property: &'a Iri,
    ) -> impl Iterator<Item = &'a super::AnnotationValue> + 'a {
        self.axioms.iter().filter_map(move |a| match a {
            Axiom::AnnotationAssertion {
                subject: s,
                property: p,
                value,
            } if s == subject && &p.iri == property => Some(value),
            _ => None,
        })
    }
}
