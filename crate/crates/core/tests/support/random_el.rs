//! Random ontologies for property tests.

#![allow(dead_code)]

use ontoforge::model::{AnnotationValue, Axiom, ClassExpression, Entity, Iri, Ontology};
use rand::seq::SliceRandom;
use rand::Rng;

pub const BASE: &str = "http://example.org/random#";

pub struct Shape {
    pub classes: usize,
    pub roles: usize,
    pub axioms: usize,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape {
            classes: 12,
            roles: 3,
            axioms: 25,
        }
    }
}

pub fn class(i: usize) -> Iri {
    Iri::new(format!("{BASE}C{i}")).unwrap()
}

pub fn role(i: usize) -> Iri {
    Iri::new(format!("{BASE}r{i}")).unwrap()
}

fn expression(rng: &mut impl Rng, shape: &Shape, depth: u32, right: bool) -> ClassExpression {
    let roll = rng.gen_range(0..100);
    if depth == 0 || roll < 50 {
        return match rng.gen_range(0..40) {
            0 => ClassExpression::Thing,
            1 if right => ClassExpression::Nothing,
            _ => ClassExpression::named(class(rng.gen_range(0..shape.classes))),
        };
    }
    if roll < 75 {
        let n = rng.gen_range(2..=3);
        let ops = (0..n).map(|_| expression(rng, shape, depth - 1, right)).collect();
        ClassExpression::And(ops)
    } else {
        let filler = expression(rng, shape, depth - 1, right);
        ClassExpression::some(role(rng.gen_range(0..shape.roles)), filler)
    }
}

/// Logical EL⊥ axioms over `C0..Cn` and `r0..rk`, without declarations.
pub fn el_axioms(rng: &mut impl Rng, shape: &Shape) -> Vec<Axiom> {
    let count = rng.gen_range(1..=shape.axioms);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let axiom = match rng.gen_range(0..100) {
            0..=64 => Axiom::SubClassOf {
                sub: expression(rng, shape, 2, false),
                sup: expression(rng, shape, 2, true),
            },
            65..=79 => {
                let a = ClassExpression::named(class(rng.gen_range(0..shape.classes)));
                let b = expression(rng, shape, 2, false);
                if a == b {
                    continue;
                }
                Axiom::EquivalentClasses(vec![a, b])
            }
            80..=89 => {
                let a = rng.gen_range(0..shape.classes);
                let b = rng.gen_range(0..shape.classes);
                if a == b {
                    continue;
                }
                Axiom::DisjointClasses(vec![class(a), class(b)])
            }
            _ => {
                let a = rng.gen_range(0..shape.roles);
                let b = rng.gen_range(0..shape.roles);
                Axiom::SubObjectPropertyOf {
                    sub: role(a),
                    sup: role(b),
                }
            }
        };
        out.push(axiom);
    }
    out
}

pub fn declarations(shape: &Shape) -> Vec<Axiom> {
    let mut out: Vec<Axiom> = (0..shape.classes)
        .map(|i| Axiom::Declaration(Entity::class(class(i))))
        .collect();
    out.extend((0..shape.roles).map(|i| Axiom::Declaration(Entity::object_property(role(i)))));
    out
}

const WORDS: &[&str] = &["alpha", "Beta", "gamma delta", "ε", "quote \"q\"", "back\\slash", "tab\there", "line\nbreak", ""];
const LANGS: &[Option<&str>] = &[None, Some("en"), Some("it"), Some("pt-br")];

/// A declared ontology with logical axioms, labels, comments, domains,
/// ranges and characteristics, for serialization round trips.
pub fn ontology(rng: &mut impl Rng, shape: &Shape) -> Ontology {
    let mut o = Ontology::new(Iri::new("http://example.org/random").unwrap());
    o.add_prefix("rnd", BASE);
    o.add_axioms(declarations(shape)).unwrap();
    o.add_axioms(el_axioms(rng, shape)).unwrap();
    let mut extra = Vec::new();
    for _ in 0..rng.gen_range(0..8) {
        let subject = class(rng.gen_range(0..shape.classes));
        let text = *WORDS.choose(rng).unwrap();
        let lang = *LANGS.choose(rng).unwrap();
        let value = AnnotationValue::new(text, lang);
        extra.push(if rng.gen_bool(0.7) {
            Axiom::label(subject, value)
        } else {
            Axiom::comment(subject, value)
        });
    }
    for r in 0..shape.roles {
        match rng.gen_range(0..6) {
            0 => extra.push(Axiom::ObjectPropertyDomain {
                property: role(r),
                domain: expression(rng, shape, 1, true),
            }),
            1 => extra.push(Axiom::ObjectPropertyRange {
                property: role(r),
                range: expression(rng, shape, 1, true),
            }),
            2 => extra.push(Axiom::TransitiveObjectProperty(role(r))),
            3 => extra.push(Axiom::FunctionalObjectProperty(role(r))),
            _ => {}
        }
    }
    if rng.gen_bool(0.3) {
        let a = ClassExpression::named(class(rng.gen_range(0..shape.classes)));
        let b = ClassExpression::named(class(rng.gen_range(0..shape.classes)));
        if a != b {
            extra.push(Axiom::sub_class_of(
                ClassExpression::or(vec![a.clone(), ClassExpression::not(b.clone())]).unwrap(),
                ClassExpression::only(role(0), a),
            ));
        }
    }
    o.add_axioms(extra).unwrap();
    o
}
