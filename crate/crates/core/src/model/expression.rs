use std::fmt;

use super::{Iri, ModelError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    AnnotationProperty,
    Ontology,
}

impl EntityKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
            EntityKind::Ontology => "Ontology",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A named ontology term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    pub kind: EntityKind,
    pub iri: Iri,
}

impl Entity {
    pub fn new(kind: EntityKind, iri: Iri) -> Entity {
        Entity { kind, iri }
    }

    pub fn class(iri: Iri) -> Entity {
        Entity::new(EntityKind::Class, iri)
    }

    pub fn object_property(iri: Iri) -> Entity {
        Entity::new(EntityKind::ObjectProperty, iri)
    }

    pub fn label() -> Entity {
        Entity::new(EntityKind::AnnotationProperty, Iri::rdfs_label())
    }

    pub fn comment() -> Entity {
        Entity::new(EntityKind::AnnotationProperty, Iri::rdfs_comment())
    }

    /// Entities that every ontology knows without a declaration.
    pub fn is_builtin(&self) -> bool {
        match self.kind {
            EntityKind::Class => self.iri == Iri::thing() || self.iri == Iri::nothing(),
            EntityKind::AnnotationProperty => {
                self.iri == Iri::rdfs_label() || self.iri == Iri::rdfs_comment()
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassExpression {
    Thing,
    Nothing,
    Class(Iri),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    Not(Box<ClassExpression>),
    Some {
        property: Iri,
        filler: Box<ClassExpression>,
    },
    Only {
        property: Iri,
        filler: Box<ClassExpression>,
    },
}

impl ClassExpression {
    /// Named class, mapping the OWL top and bottom IRIs to their variants.
    pub fn named(iri: Iri) -> ClassExpression {
        if iri == Iri::thing() {
            ClassExpression::Thing
        } else if iri == Iri::nothing() {
            ClassExpression::Nothing
        } else {
            ClassExpression::Class(iri)
        }
    }

    /// Intersection; a single operand collapses to itself.
    pub fn and(mut operands: Vec<ClassExpression>) -> Result<ClassExpression, ModelError> {
        match operands.len() {
            0 => Err(ModelError::EmptyOperands("intersection")),
            1 => Ok(operands.pop().unwrap()),
            _ => Ok(ClassExpression::And(operands)),
        }
    }

    /// Union; a single operand collapses to itself.
    pub fn or(mut operands: Vec<ClassExpression>) -> Result<ClassExpression, ModelError> {
        match operands.len() {
            0 => Err(ModelError::EmptyOperands("union")),
            1 => Ok(operands.pop().unwrap()),
            _ => Ok(ClassExpression::Or(operands)),
        }
    }

    pub fn not(operand: ClassExpression) -> ClassExpression {
        ClassExpression::Not(Box::new(operand))
    }

    pub fn some(property: Iri, filler: ClassExpression) -> ClassExpression {
        ClassExpression::Some {
            property,
            filler: Box::new(filler),
        }
    }

    pub fn only(property: Iri, filler: ClassExpression) -> ClassExpression {
        ClassExpression::Only {
            property,
            filler: Box::new(filler),
        }
    }

    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ClassExpression::Class(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            ClassExpression::Thing | ClassExpression::Nothing | ClassExpression::Class(_)
        )
    }

    /// Visit every entity mentioned, recursively. Thing and Nothing are skipped.
    pub fn visit_entities(&self, f: &mut impl FnMut(Entity)) {
        match self {
            ClassExpression::Thing | ClassExpression::Nothing => {}
            ClassExpression::Class(iri) => f(Entity::class(iri.clone())),
            ClassExpression::And(ops) | ClassExpression::Or(ops) => {
                ops.iter().for_each(|op| op.visit_entities(f))
            }
            ClassExpression::Not(op) => op.visit_entities(f),
            ClassExpression::Some { property, filler } | ClassExpression::Only { property, filler } => {
                f(Entity::object_property(property.clone()));
                filler.visit_entities(f);
            }
        }
    }

    pub fn mentions(&self, entity: &Entity) -> bool {
        let mut found = false;
        self.visit_entities(&mut |e| found |= &e == entity);
        found
    }
}

/// Annotation literal with an optional language tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnotationValue {
    pub text: String,
    pub lang: Option<String>,
}

impl AnnotationValue {
    pub fn new(text: impl Into<String>, lang: Option<&str>) -> AnnotationValue {
        let lang = lang
            .map(|l| l.trim().to_ascii_lowercase())
            .filter(|l| !l.is_empty());
        AnnotationValue {
            text: text.into(),
            lang,
        }
    }
}
