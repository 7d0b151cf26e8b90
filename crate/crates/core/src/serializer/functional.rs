use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{literal, shorten};
use crate::model::{Axiom, ClassExpression, Iri, Ontology};

struct Writer<'a> {
    prefixes: &'a BTreeMap<String, String>,
}

impl Writer<'_> {
    fn iri(&self, iri: &Iri) -> String {
        shorten(self.prefixes, iri).unwrap_or_else(|| format!("<{iri}>"))
    }

    fn expression(&self, ce: &ClassExpression) -> String {
        match ce {
            ClassExpression::Thing => "owl:Thing".into(),
            ClassExpression::Nothing => "owl:Nothing".into(),
            ClassExpression::Class(iri) => self.iri(iri),
            ClassExpression::And(ops) => format!("ObjectIntersectionOf({})", self.list(ops)),
            ClassExpression::Or(ops) => format!("ObjectUnionOf({})", self.list(ops)),
            ClassExpression::Not(op) => format!("ObjectComplementOf({})", self.expression(op)),
            ClassExpression::Some { property, filler } => format!(
                "ObjectSomeValuesFrom({} {})",
                self.iri(property),
                self.expression(filler)
            ),
            ClassExpression::Only { property, filler } => format!(
                "ObjectAllValuesFrom({} {})",
                self.iri(property),
                self.expression(filler)
            ),
        }
    }

    fn list(&self, ops: &[ClassExpression]) -> String {
        ops.iter()
            .map(|op| self.expression(op))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn axiom(&self, axiom: &Axiom) -> String {
        match axiom {
            Axiom::Declaration(e) => format!("Declaration({}({}))", e.kind.keyword(), self.iri(&e.iri)),
            Axiom::Import(iri) => format!("Import(<{iri}>)"),
            Axiom::SubClassOf { sub, sup } => {
                format!("SubClassOf({} {})", self.expression(sub), self.expression(sup))
            }
            Axiom::EquivalentClasses(members) => format!("EquivalentClasses({})", self.list(members)),
            Axiom::DisjointClasses(members) => format!(
                "DisjointClasses({})",
                members.iter().map(|m| self.iri(m)).collect::<Vec<_>>().join(" ")
            ),
            Axiom::SubObjectPropertyOf { sub, sup } => {
                format!("SubObjectPropertyOf({} {})", self.iri(sub), self.iri(sup))
            }
            Axiom::ObjectPropertyDomain { property, domain } => format!(
                "ObjectPropertyDomain({} {})",
                self.iri(property),
                self.expression(domain)
            ),
            Axiom::ObjectPropertyRange { property, range } => format!(
                "ObjectPropertyRange({} {})",
                self.iri(property),
                self.expression(range)
            ),
            Axiom::FunctionalObjectProperty(p) => format!("FunctionalObjectProperty({})", self.iri(p)),
            Axiom::TransitiveObjectProperty(p) => format!("TransitiveObjectProperty({})", self.iri(p)),
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => format!(
                "AnnotationAssertion({} {} {})",
                self.iri(&property.iri),
                self.iri(subject),
                literal(value)
            ),
        }
    }
}

/// Functional-style text: sorted prefixes, then one axiom per line in
/// insertion order.
pub fn render_functional(ontology: &Ontology) -> String {
    let w = Writer {
        prefixes: ontology.prefixes(),
    };
    let mut out = String::new();
    for (label, base) in ontology.prefixes() {
        let _ = writeln!(out, "Prefix({label}:=<{base}>)");
    }
    let _ = writeln!(out, "Ontology(<{}>", ontology.iri());
    for axiom in ontology.axioms() {
        out.push_str(&w.axiom(axiom));
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::importer::parse_functional;
    use crate::model::{AnnotationValue, Entity};

    fn piz(n: &str) -> Iri {
        Iri::new(format!("http://x/p#{n}")).unwrap()
    }

    fn sample() -> Ontology {
        let mut o = Ontology::new(Iri::new("http://x/p").unwrap());
        o.add_prefix("piz", "http://x/p#");
        for c in ["Pizza", "CheesyPizza", "CheeseTopping", "ThinAndCrispyBase", "PizzaBase"] {
            o.declare(crate::model::EntityKind::Class, piz(c)).unwrap();
        }
        o.add_axioms([Axiom::Declaration(Entity::object_property(piz("hasTopping")))]).unwrap();
        o.add_axioms([
            Axiom::sub_class_of(
                ClassExpression::named(piz("ThinAndCrispyBase")),
                ClassExpression::named(piz("PizzaBase")),
            ),
            Axiom::EquivalentClasses(vec![
                ClassExpression::named(piz("CheesyPizza")),
                ClassExpression::And(vec![
                    ClassExpression::named(piz("Pizza")),
                    ClassExpression::some(piz("hasTopping"), ClassExpression::named(piz("CheeseTopping"))),
                ]),
            ]),
            Axiom::label(piz("Pizza"), AnnotationValue::new("say \"hi\"\\", Some("pt"))),
        ])
        .unwrap();
        o
    }

    #[test]
    fn spellings() {
        let text = render_functional(&sample());
        assert!(text.contains("SubClassOf(piz:ThinAndCrispyBase piz:PizzaBase)\n"));
        assert!(text.contains(
            "EquivalentClasses(piz:CheesyPizza ObjectIntersectionOf(piz:Pizza ObjectSomeValuesFrom(piz:hasTopping piz:CheeseTopping)))\n"
        ));
        assert!(text.starts_with("Prefix(owl:=<http://www.w3.org/2002/07/owl#>)\n"));
        assert!(text.ends_with(")\n"));
    }

    #[test]
    fn round_trip_fixpoint() {
        let o = sample();
        let text = render_functional(&o);
        let back = parse_functional(&text).unwrap();
        assert_eq!(back, o);
        assert_eq!(render_functional(&back), text);
    }

    #[test]
    fn unshortenable_iris_are_written_in_full() {
        let mut o = Ontology::new(Iri::new("http://x/p").unwrap());
        o.insert_unchecked(Axiom::Declaration(Entity::class(Iri::new("urn:weird:a b c").unwrap_or_else(|_| Iri::new("urn:x:1").unwrap()))));
        let text = render_functional(&o);
        assert_eq!(parse_functional(&text).unwrap(), o);
    }
}
