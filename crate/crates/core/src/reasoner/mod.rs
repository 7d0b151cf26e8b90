//! Classification of the EL fragment with bottom, by normalization and
//! saturation.

mod normalize;
mod saturate;

pub use normalize::{normalize, Atom, NormalAxiom, Normalized, Skipped};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Axiom, EntityKind, Iri};
use saturate::{saturate, Closure, NOTHING, THING};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("{0:?} is not a class of the ontology")]
    UnknownEntity(Iri),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub unsatisfiable: Vec<Iri>,
}

/// Inferred subsumptions between the named classes of an ontology.
pub struct Taxonomy {
    closure: Closure,
    named: BTreeMap<Iri, usize>,
    unsatisfiable: BTreeSet<Iri>,
    skipped: Vec<Skipped>,
}

impl std::fmt::Debug for Taxonomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Taxonomy")
            .field("classes", &self.named.len())
            .field("unsatisfiable", &self.unsatisfiable)
            .field("skipped", &self.skipped.len())
            .finish()
    }
}

fn iri_of(atom: &Atom) -> Iri {
    match atom {
        Atom::Thing => Iri::thing(),
        Atom::Nothing => Iri::nothing(),
        Atom::Named(iri) => iri.clone(),
        Atom::Aux(_) => unreachable!("auxiliary classes are never exposed"),
    }
}

/// Classify the classes mentioned or declared in `axioms`.
pub fn classify<'a>(axioms: impl IntoIterator<Item = &'a Axiom> + Clone) -> Taxonomy {
    let normal = normalize(axioms.clone());
    let mut names = BTreeSet::new();
    for axiom in axioms {
        for e in axiom.signature() {
            if e.kind == EntityKind::Class && !e.is_builtin() {
                names.insert(e.iri);
            }
        }
    }
    from_normalized(&normal, names)
}

/// Saturate already normalized axioms; `classes` are reported even if no
/// axiom mentions them.
pub fn from_normalized(normal: &Normalized, classes: impl IntoIterator<Item = Iri>) -> Taxonomy {
    let closure = saturate(normal, classes.into_iter().map(Atom::Named));
    let mut named = BTreeMap::new();
    let mut unsatisfiable = BTreeSet::new();
    for (i, atom) in closure.atoms.iter().enumerate() {
        if let Atom::Named(iri) = atom {
            named.insert(iri.clone(), i);
            if closure.subsumers[i].contains(&NOTHING) {
                unsatisfiable.insert(iri.clone());
            }
        }
    }
    Taxonomy {
        closure,
        named,
        unsatisfiable,
        skipped: normal.skipped.clone(),
    }
}

impl Taxonomy {
    fn index(&self, iri: &Iri) -> Result<usize, ReasonerError> {
        if iri == &Iri::thing() {
            return Ok(THING);
        }
        if iri == &Iri::nothing() {
            return Ok(NOTHING);
        }
        self.named
            .get(iri)
            .copied()
            .ok_or_else(|| ReasonerError::UnknownEntity(iri.clone()))
    }

    fn visible(&self, i: usize) -> bool {
        !matches!(self.closure.atoms[i], Atom::Aux(_))
    }

    /// Named classes, sorted.
    pub fn classes(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.named.keys()
    }

    /// Whether `sup` subsumes `sub`. With `reflexive` false a class is not
    /// its own superclass. Unsatisfiable classes are subsumed by everything.
    pub fn is_superclass(&self, sub: &Iri, sup: &Iri, reflexive: bool) -> Result<bool, ReasonerError> {
        let a = self.index(sub)?;
        let b = self.index(sup)?;
        if a == b {
            return Ok(reflexive);
        }
        let s = &self.closure.subsumers[a];
        Ok(s.contains(&b) || s.contains(&NOTHING))
    }

    /// All subsumers of a class, including itself, `owl:Thing` and, when
    /// unsatisfiable, `owl:Nothing`.
    pub fn subsumers(&self, class: &Iri) -> Result<BTreeSet<Atom>, ReasonerError> {
        let i = self.index(class)?;
        Ok(self.closure.subsumers[i]
            .iter()
            .filter(|&&j| self.visible(j))
            .map(|&j| self.closure.atoms[j].clone())
            .collect())
    }

    /// Subsumers of every named class plus `owl:Thing` and `owl:Nothing`.
    pub fn subsumer_map(&self) -> BTreeMap<Atom, BTreeSet<Atom>> {
        self.closure
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| self.visible(*i))
            .map(|(i, atom)| {
                let set = self.closure.subsumers[i]
                    .iter()
                    .filter(|&&j| self.visible(j))
                    .map(|&j| self.closure.atoms[j].clone())
                    .collect();
                (atom.clone(), set)
            })
            .collect()
    }

    /// Derived `(a, b)` pairs with `a ⊑ ∃role.b`, between visible classes.
    pub fn role_edges(&self, role: &Iri) -> BTreeSet<(Atom, Atom)> {
        let Some(r) = self.closure.roles.iter().position(|x| x == role) else {
            return BTreeSet::new();
        };
        self.closure.edges[r]
            .iter()
            .filter(|(a, b)| self.visible(*a) && self.visible(*b))
            .map(|&(a, b)| (self.closure.atoms[a].clone(), self.closure.atoms[b].clone()))
            .collect()
    }

    pub fn unsatisfiable(&self) -> &BTreeSet<Iri> {
        &self.unsatisfiable
    }

    pub fn coherence_report(&self) -> CoherenceReport {
        CoherenceReport {
            coherent: self.unsatisfiable.is_empty(),
            unsatisfiable: self.unsatisfiable.iter().cloned().collect(),
        }
    }

    pub fn is_coherent(&self) -> bool {
        self.unsatisfiable.is_empty()
    }

    /// Axioms, or parts of them, that were ignored.
    pub fn skipped(&self) -> &[Skipped] {
        &self.skipped
    }

    /// The most specific named subsumers of a class, excluding the class
    /// itself and classes equivalent to it. Unsatisfiable classes report
    /// `owl:Nothing`; classes with no other subsumer report `owl:Thing`.
    pub fn direct_superclasses(&self, class: &Iri) -> Result<Vec<Iri>, ReasonerError> {
        let c = self.index(class)?;
        let s = &self.closure.subsumers;
        if s[c].contains(&NOTHING) && c != NOTHING {
            return Ok(vec![Iri::nothing()]);
        }
        let candidates: Vec<usize> = s[c]
            .iter()
            .copied()
            .filter(|&d| d != THING && d != NOTHING && self.visible(d))
            .filter(|&d| !s[d].contains(&c))
            .collect();
        let mut direct: Vec<Iri> = candidates
            .iter()
            .filter(|&&d| {
                !candidates
                    .iter()
                    .any(|&e| e != d && s[e].contains(&d) && !s[d].contains(&e))
            })
            .map(|&d| iri_of(&self.closure.atoms[d]))
            .collect();
        if direct.is_empty() {
            direct.push(Iri::thing());
        }
        direct.sort();
        Ok(direct)
    }
}
