//! The OWL data model: IRIs, entities, class expressions, axioms and the
//! ontology store.

mod axiom;
mod expression;
pub mod iri;
mod ontology;

pub use axiom::Axiom;
pub use expression::{AnnotationValue, ClassExpression, Entity, EntityKind};
pub use iri::Iri;
pub use ontology::Ontology;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid IRI `{0}`")]
    InvalidIri(String),
    #[error("{iri:?} is already declared as {existing}, cannot redeclare as {requested}")]
    DuplicateEntityKind {
        iri: Iri,
        existing: EntityKind,
        requested: EntityKind,
    },
    #[error("undeclared {} {:?}", .0.kind, .0.iri)]
    UndeclaredEntity(Entity),
    #[error("{axiom} needs at least 2 members, found {found}")]
    Arity { axiom: &'static str, found: usize },
    #[error("class {0:?} appears twice in a disjointness axiom")]
    RepeatedDisjoint(Iri),
    #[error("empty {0}")]
    EmptyOperands(&'static str),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base(name: &str) -> Iri {
        Iri::new(format!("http://x/p#{name}")).unwrap()
    }

    fn ontology() -> Ontology {
        Ontology::new(Iri::new("http://x/p").unwrap())
    }

    #[test]
    fn declare_is_idempotent() {
        let mut o = ontology();
        let e = o.declare(EntityKind::Class, base("Pizza")).unwrap();
        assert_eq!(e, Entity::class(base("Pizza")));
        assert_eq!(o.len(), 1);
        o.declare(EntityKind::Class, base("Pizza")).unwrap();
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn redeclaring_with_other_kind_fails() {
        let mut o = ontology();
        o.declare(EntityKind::Class, base("Pizza")).unwrap();
        let err = o
            .declare(EntityKind::ObjectProperty, base("Pizza"))
            .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateEntityKind { .. }));
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn add_axioms_counts_only_new() {
        let mut o = ontology();
        o.declare(EntityKind::Class, base("ThinAndCrispyBase")).unwrap();
        o.declare(EntityKind::Class, base("PizzaBase")).unwrap();
        let ax = Axiom::sub_class_of(
            ClassExpression::Class(base("ThinAndCrispyBase")),
            ClassExpression::Class(base("PizzaBase")),
        );
        assert_eq!(o.add_axioms([ax.clone()]).unwrap(), 1);
        assert_eq!(o.add_axioms([ax]).unwrap(), 0);
    }

    #[test]
    fn undeclared_entity_is_rejected_atomically() {
        let mut o = ontology();
        o.declare(EntityKind::Class, base("A")).unwrap();
        let good = Axiom::sub_class_of(ClassExpression::Class(base("A")), ClassExpression::Thing);
        let bad = Axiom::sub_class_of(
            ClassExpression::Class(base("A")),
            ClassExpression::Class(base("Missing")),
        );
        let err = o.add_axioms([good, bad]).unwrap_err();
        assert_eq!(err, ModelError::UndeclaredEntity(Entity::class(base("Missing"))));
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn declaration_in_same_batch_counts() {
        let mut o = ontology();
        let n = o
            .add_axioms([
                Axiom::Declaration(Entity::class(base("A"))),
                Axiom::sub_class_of(ClassExpression::Class(base("A")), ClassExpression::Thing),
            ])
            .unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn disjoint_requires_distinct_members() {
        assert!(Axiom::disjoint_classes(vec![base("A")]).is_err());
        assert!(Axiom::disjoint_classes(vec![base("A"), base("A")]).is_err());
        assert!(Axiom::disjoint_classes(vec![base("A"), base("B")]).is_ok());
    }

    #[test]
    fn axioms_referencing_probe() {
        let mut o = ontology();
        o.declare(EntityKind::Class, base("A")).unwrap();
        let probe = o.declare(EntityKind::Class, base("probe")).unwrap();
        o.add_axioms([
            Axiom::sub_class_of(
                ClassExpression::Class(base("probe")),
                ClassExpression::Class(base("A")),
            ),
            Axiom::label(base("A"), AnnotationValue::new("a", Some("en"))),
        ])
        .unwrap();
        assert_eq!(o.axioms_referencing(&probe).len(), 2);
        let absent = Entity::class(base("Nope"));
        assert!(o.axioms_referencing(&absent).is_empty());
        o.remove_referencing(&probe);
        assert_eq!(o.len(), 2);
        assert_eq!(o.kind_of(&base("probe")), None);
    }

    #[test]
    fn annotation_language_is_lowercased() {
        let v = AnnotationValue::new("x", Some("PT"));
        assert_eq!(v.lang.as_deref(), Some("pt"));
        assert_eq!(AnnotationValue::new("x", Some("")).lang, None);
    }

    fn arb_axiom() -> impl Strategy<Value = Axiom> {
        let names = prop::sample::select(vec!["A", "B", "C", "D"]);
        (names.clone(), names, 0..3u8).prop_map(|(a, b, k)| match k {
            0 => Axiom::sub_class_of(ClassExpression::Class(base(a)), ClassExpression::Class(base(b))),
            1 => Axiom::sub_class_of(
                ClassExpression::Class(base(a)),
                ClassExpression::some(base("r"), ClassExpression::Class(base(b))),
            ),
            _ => Axiom::label(base(a), AnnotationValue::new(b, Some("en"))),
        })
    }

    fn declared() -> Ontology {
        let mut o = ontology();
        for n in ["A", "B", "C", "D"] {
            o.declare(EntityKind::Class, base(n)).unwrap();
        }
        o.declare(EntityKind::ObjectProperty, base("r")).unwrap();
        o
    }

    proptest! {
        #[test]
        fn add_is_idempotent(axioms in prop::collection::vec(arb_axiom(), 0..8), extra in arb_axiom()) {
            let mut o = declared();
            o.add_axioms(axioms).unwrap();
            o.add_axioms([extra.clone()]).unwrap();
            let once: Vec<Axiom> = o.axioms().cloned().collect();
            o.add_axioms([extra]).unwrap();
            let twice: Vec<Axiom> = o.axioms().cloned().collect();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn remove_undoes_add(axioms in prop::collection::vec(arb_axiom(), 0..8), extra in arb_axiom()) {
            let mut o = declared();
            o.add_axioms(axioms).unwrap();
            prop_assume!(!o.contains(&extra));
            let before = o.clone();
            o.add_axioms([extra.clone()]).unwrap();
            o.remove(&extra);
            prop_assert_eq!(&o, &before);
            prop_assert!(o.axioms().eq(before.axioms()));
        }

        #[test]
        fn signature_members_are_declared(axioms in prop::collection::vec(arb_axiom(), 0..8)) {
            let mut o = declared();
            o.add_axioms(axioms).unwrap();
            for e in o.signature() {
                prop_assert!(o.is_declared(&e));
            }
        }
    }
}
