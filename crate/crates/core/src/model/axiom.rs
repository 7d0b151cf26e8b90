use super::{AnnotationValue, ClassExpression, Entity, Iri, ModelError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Declaration(Entity),
    Import(Iri),
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    EquivalentClasses(Vec<ClassExpression>),
    DisjointClasses(Vec<Iri>),
    SubObjectPropertyOf {
        sub: Iri,
        sup: Iri,
    },
    ObjectPropertyDomain {
        property: Iri,
        domain: ClassExpression,
    },
    ObjectPropertyRange {
        property: Iri,
        range: ClassExpression,
    },
    FunctionalObjectProperty(Iri),
    TransitiveObjectProperty(Iri),
    AnnotationAssertion {
        subject: Iri,
        property: Entity,
        value: AnnotationValue,
    },
}

impl Axiom {
    pub fn sub_class_of(sub: ClassExpression, sup: ClassExpression) -> Axiom {
        Axiom::SubClassOf { sub, sup }
    }

    pub fn equivalent_classes(members: Vec<ClassExpression>) -> Result<Axiom, ModelError> {
        if members.len() < 2 {
            return Err(ModelError::Arity {
                axiom: "EquivalentClasses",
                found: members.len(),
            });
        }
        Ok(Axiom::EquivalentClasses(members))
    }

    pub fn disjoint_classes(members: Vec<Iri>) -> Result<Axiom, ModelError> {
        if members.len() < 2 {
            return Err(ModelError::Arity {
                axiom: "DisjointClasses",
                found: members.len(),
            });
        }
        for (i, a) in members.iter().enumerate() {
            if members[i + 1..].contains(a) {
                return Err(ModelError::RepeatedDisjoint(a.clone()));
            }
        }
        Ok(Axiom::DisjointClasses(members))
    }

    pub fn label(subject: Iri, value: AnnotationValue) -> Axiom {
        Axiom::AnnotationAssertion {
            subject,
            property: Entity::label(),
            value,
        }
    }

    pub fn comment(subject: Iri, value: AnnotationValue) -> Axiom {
        Axiom::AnnotationAssertion {
            subject,
            property: Entity::comment(),
            value,
        }
    }

    /// Every entity mentioned by the axiom, in order of appearance.
    ///
    /// Annotation subjects are IRIs rather than entities and are not part of
    /// the signature; see [`Axiom::references`].
    pub fn signature(&self) -> Vec<Entity> {
        let mut out = Vec::new();
        let mut push = |e: Entity| {
            if !out.contains(&e) {
                out.push(e)
            }
        };
        let prop = |iri: &Iri| Entity::object_property(iri.clone());
        match self {
            Axiom::Declaration(e) => push(e.clone()),
            Axiom::Import(_) => {}
            Axiom::SubClassOf { sub, sup } => {
                sub.visit_entities(&mut push);
                sup.visit_entities(&mut push);
            }
            Axiom::EquivalentClasses(members) => {
                members.iter().for_each(|m| m.visit_entities(&mut push))
            }
            Axiom::DisjointClasses(members) => members
                .iter()
                .for_each(|m| push(Entity::class(m.clone()))),
            Axiom::SubObjectPropertyOf { sub, sup } => {
                push(prop(sub));
                push(prop(sup));
            }
            Axiom::ObjectPropertyDomain { property, domain: ce }
            | Axiom::ObjectPropertyRange { property, range: ce } => {
                push(prop(property));
                ce.visit_entities(&mut push);
            }
            Axiom::FunctionalObjectProperty(p) | Axiom::TransitiveObjectProperty(p) => {
                push(prop(p))
            }
            Axiom::AnnotationAssertion { property, .. } => push(property.clone()),
        }
        out
    }

    /// Whether the entity occurs anywhere in the axiom, including as the
    /// subject of an annotation assertion.
    pub fn references(&self, entity: &Entity) -> bool {
        if let Axiom::AnnotationAssertion { subject, .. } = self {
            if subject == &entity.iri {
                return true;
            }
        }
        self.signature().contains(entity)
    }
}
