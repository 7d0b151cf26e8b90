use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{label_to_identifier, ImportError};
use crate::model::{AnnotationValue, Axiom, Entity, EntityKind, Iri, Ontology};
use crate::reader::{is_identifier, Environment, External};
use crate::Location;

/// How identifiers are generated for external entities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Naming {
    /// The IRI fragment, e.g. `OBI_0000107`.
    Fragment,
    /// A transformation of the `rdfs:label`, e.g. `has_part`.
    Label,
}

fn fragment_identifier(iri: &Iri) -> Result<String, ImportError> {
    let fragment = iri.fragment();
    if is_identifier(fragment) {
        Ok(fragment.to_string())
    } else {
        label_to_identifier(fragment)
    }
}

fn label_index(ontology: &Ontology) -> HashMap<&Iri, Vec<&AnnotationValue>> {
    let label = Iri::rdfs_label();
    let mut index: HashMap<&Iri, Vec<&AnnotationValue>> = HashMap::new();
    for axiom in ontology.axioms() {
        if let Axiom::AnnotationAssertion {
            subject,
            property,
            value,
        } = axiom
        {
            if property.iri == label {
                index.entry(subject).or_default().push(value);
            }
        }
    }
    index
}

/// Pick one label: English or untagged first, then lexicographically.
fn preferred_label(labels: Option<&Vec<&AnnotationValue>>) -> (Option<String>, usize) {
    let Some(labels) = labels else {
        return (None, 0);
    };
    let best = labels
        .iter()
        .min_by_key(|v| (!matches!(v.lang.as_deref(), None | Some("en")), v.text.as_str()));
    (best.map(|v| v.text.clone()), labels.len())
}

/// Bind identifiers for the classes and object properties of an external
/// ontology. Entities whose IRI does not start with `filter` are skipped.
///
/// Entities are processed in ascending IRI order; when two of them map to
/// the same identifier the later ones get `_2`, `_3`, ... suffixes and a
/// warning is recorded. Returns the number of bindings added.
pub fn intern_external(
    env: &mut Environment,
    ontology: Arc<Ontology>,
    naming: Naming,
    filter: Option<&str>,
    at: Option<&Location>,
) -> Result<usize, ImportError> {
    let mut selected: Vec<Entity> = ontology
        .signature()
        .into_iter()
        .filter(|e| matches!(e.kind, EntityKind::Class | EntityKind::ObjectProperty))
        .filter(|e| !e.is_builtin())
        .filter(|e| filter.is_none_or(|f| e.iri.as_str().starts_with(f)))
        .collect();
    selected.sort();
    selected.sort_by(|a, b| a.iri.cmp(&b.iri));
    selected.dedup_by(|a, b| a.iri == b.iri);

    let labels = match naming {
        Naming::Label => label_index(&ontology),
        Naming::Fragment => HashMap::new(),
    };
    let mut warnings = Vec::new();
    let mut assigned: BTreeSet<String> = BTreeSet::new();
    let mut new_bindings = Vec::new();
    for entity in selected {
        let base = match naming {
            Naming::Fragment => fragment_identifier(&entity.iri),
            Naming::Label => match preferred_label(labels.get(&entity.iri)) {
                (Some(text), count) => {
                    if count > 1 {
                        warnings.push(format!(
                            "{:?} has {count} labels, using \"{text}\"",
                            entity.iri
                        ));
                    }
                    label_to_identifier(&text).or_else(|_| {
                        warnings.push(format!(
                            "label \"{text}\" of {:?} is unusable, using the IRI fragment",
                            entity.iri
                        ));
                        fragment_identifier(&entity.iri)
                    })
                }
                (None, _) => {
                    warnings.push(format!(
                        "{:?} has no label, using the IRI fragment",
                        entity.iri
                    ));
                    fragment_identifier(&entity.iri)
                }
            },
        };
        let base = match base {
            Ok(b) => b,
            Err(e) => {
                warnings.push(format!("skipping {:?}: {e}", entity.iri));
                continue;
            }
        };
        if env.lookup(&base) == Some(&entity) {
            continue;
        }
        let mut name = base.clone();
        let mut n = 1;
        while env.is_bound(&name) || assigned.contains(&name) {
            n += 1;
            name = format!("{base}_{n}");
        }
        if n > 1 {
            warnings.push(format!(
                "identifier `{base}` is taken, binding {:?} as `{name}`",
                entity.iri
            ));
        }
        assigned.insert(name.clone());
        new_bindings.push((name, entity));
    }

    let location = at.cloned().unwrap_or_else(|| Location::new("<import>", 1, 1));
    let added = new_bindings.len();
    let mut table = env
        .externals
        .remove(ontology.iri())
        .map(|x| x.bindings)
        .unwrap_or_default();
    for (name, entity) in new_bindings {
        env.bind(&name, entity.clone(), &location)
            .expect("name chosen to be free");
        table.insert(name, entity);
    }
    env.externals.insert(
        ontology.iri().clone(),
        External {
            ontology: ontology.clone(),
            bindings: table,
        },
    );
    for w in warnings {
        env.warn(at.cloned(), w);
    }
    Ok(added)
}
