use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use indexmap::IndexMap;

use super::{literal, shorten, SerializeError};
use crate::model::{AnnotationValue, Axiom, ClassExpression, EntityKind, Iri, Ontology};

#[derive(Default)]
struct Frame {
    annotations: Vec<(String, AnnotationValue)>,
    equivalent: Vec<String>,
    sub_class_of: Vec<String>,
    disjoint: Vec<String>,
    domain: Vec<String>,
    range: Vec<String>,
    sub_property_of: Vec<String>,
    characteristics: Vec<String>,
}

struct Writer<'a> {
    prefixes: &'a BTreeMap<String, String>,
}

impl Writer<'_> {
    fn iri(&self, iri: &Iri) -> Result<String, SerializeError> {
        shorten(self.prefixes, iri).ok_or_else(|| SerializeError::NoPrefix(iri.clone()))
    }

    fn expression(&self, ce: &ClassExpression) -> Result<String, SerializeError> {
        Ok(match ce {
            ClassExpression::Thing => "owl:Thing".into(),
            ClassExpression::Nothing => "owl:Nothing".into(),
            ClassExpression::Class(iri) => self.iri(iri)?,
            ClassExpression::And(ops) => self.join(ops, " and ")?,
            ClassExpression::Or(ops) => self.join(ops, " or ")?,
            ClassExpression::Not(op) => format!("not {}", self.operand(op)?),
            ClassExpression::Some { property, filler } => {
                format!("{} some {}", self.iri(property)?, self.operand(filler)?)
            }
            ClassExpression::Only { property, filler } => {
                format!("{} only {}", self.iri(property)?, self.operand(filler)?)
            }
        })
    }

    fn operand(&self, ce: &ClassExpression) -> Result<String, SerializeError> {
        if ce.is_atomic() {
            self.expression(ce)
        } else {
            Ok(format!("({})", self.expression(ce)?))
        }
    }

    fn join(&self, ops: &[ClassExpression], sep: &str) -> Result<String, SerializeError> {
        let parts: Result<Vec<_>, _> = ops.iter().map(|op| self.operand(op)).collect();
        Ok(parts?.join(sep))
    }
}

fn push_unique(list: &mut Vec<String>, item: String) {
    if !list.contains(&item) {
        list.push(item);
    }
}

fn section(out: &mut String, keyword: &str, entries: &[String]) {
    if entries.is_empty() {
        return;
    }
    let _ = writeln!(out, "    {keyword}: ");
    for (i, entry) in entries.iter().enumerate() {
        let sep = if i + 1 < entries.len() { "," } else { "" };
        let _ = writeln!(out, "        {entry}{sep}");
    }
}

fn annotation_entries(mut list: Vec<(String, AnnotationValue)>) -> Vec<String> {
    list.sort_by(|a, b| {
        (&a.0, &a.1.lang, &a.1.text).cmp(&(&b.0, &b.1.lang, &b.1.text))
    });
    list.dedup();
    list.into_iter()
        .map(|(p, v)| format!("{p} {}", literal(&v)))
        .collect()
}

/// Manchester-style frames, one per entity in declaration order.
///
/// Axioms that belong to no frame, such as general class inclusions, are
/// written after the frames as `sub SubClassOf sup` lines.
pub fn render_omn(ontology: &Ontology) -> Result<String, SerializeError> {
    let w = Writer {
        prefixes: ontology.prefixes(),
    };
    let mut entities: IndexMap<Iri, EntityKind> = IndexMap::new();
    for axiom in ontology.axioms() {
        if let Axiom::Declaration(e) = axiom {
            if !e.is_builtin() {
                entities.entry(e.iri.clone()).or_insert(e.kind);
            }
        }
    }
    for e in ontology.signature() {
        if !e.is_builtin() && e.kind != EntityKind::Ontology {
            entities.entry(e.iri.clone()).or_insert(e.kind);
        }
    }

    let mut frames: HashMap<Iri, Frame> = HashMap::new();
    let mut ontology_annotations = Vec::new();
    let mut imports = Vec::new();
    let mut loose = Vec::new();
    for axiom in ontology.axioms() {
        match axiom {
            Axiom::Declaration(_) => {}
            Axiom::Import(iri) => imports.push(iri.clone()),
            Axiom::SubClassOf { sub, sup } => match sub.as_named() {
                Some(iri) => push_unique(
                    &mut frames.entry(iri.clone()).or_default().sub_class_of,
                    w.expression(sup)?,
                ),
                None => loose.push(format!(
                    "{} SubClassOf {}",
                    w.operand(sub)?,
                    w.operand(sup)?
                )),
            },
            Axiom::EquivalentClasses(members) => {
                let mut placed = false;
                for (i, m) in members.iter().enumerate() {
                    let Some(iri) = m.as_named() else { continue };
                    placed = true;
                    for (j, other) in members.iter().enumerate() {
                        if i != j {
                            let text = w.expression(other)?;
                            push_unique(&mut frames.entry(iri.clone()).or_default().equivalent, text);
                        }
                    }
                }
                if !placed {
                    let parts: Result<Vec<_>, _> = members.iter().map(|m| w.operand(m)).collect();
                    loose.push(parts?.join(" EquivalentTo "));
                }
            }
            Axiom::DisjointClasses(members) => {
                for m in members {
                    for other in members.iter().filter(|o| *o != m) {
                        let text = w.iri(other)?;
                        push_unique(&mut frames.entry(m.clone()).or_default().disjoint, text);
                    }
                }
            }
            Axiom::SubObjectPropertyOf { sub, sup } => {
                let text = w.iri(sup)?;
                push_unique(&mut frames.entry(sub.clone()).or_default().sub_property_of, text);
            }
            Axiom::ObjectPropertyDomain { property, domain } => {
                let text = w.expression(domain)?;
                push_unique(&mut frames.entry(property.clone()).or_default().domain, text);
            }
            Axiom::ObjectPropertyRange { property, range } => {
                let text = w.expression(range)?;
                push_unique(&mut frames.entry(property.clone()).or_default().range, text);
            }
            Axiom::FunctionalObjectProperty(p) => push_unique(
                &mut frames.entry(p.clone()).or_default().characteristics,
                "Functional".into(),
            ),
            Axiom::TransitiveObjectProperty(p) => push_unique(
                &mut frames.entry(p.clone()).or_default().characteristics,
                "Transitive".into(),
            ),
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => {
                let p = w.iri(&property.iri)?;
                if subject == ontology.iri() {
                    ontology_annotations.push((p, value.clone()));
                } else if entities.contains_key(subject) {
                    frames
                        .entry(subject.clone())
                        .or_default()
                        .annotations
                        .push((p, value.clone()));
                } else {
                    let s = shorten(w.prefixes, subject).unwrap_or_else(|| format!("<{subject}>"));
                    loose.push(format!("{s} Annotations: {p} {}", literal(value)));
                }
            }
        }
    }

    let mut out = String::new();
    for (label, base) in ontology.prefixes() {
        let _ = writeln!(out, "Prefix: {label}: <{base}>");
    }
    let _ = writeln!(out, "Ontology: <{}>", ontology.iri());
    for iri in &imports {
        let _ = writeln!(out, "Import: <{iri}>");
    }
    section(&mut out, "Annotations", &annotation_entries(ontology_annotations));

    for (iri, kind) in &entities {
        let frame = frames.remove(iri).unwrap_or_default();
        let keyword = match kind {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
            EntityKind::Ontology => continue,
        };
        let _ = writeln!(out, "\n{keyword}: {}", w.iri(iri)?);
        section(&mut out, "Annotations", &annotation_entries(frame.annotations));
        match kind {
            EntityKind::Class => {
                section(&mut out, "EquivalentTo", &frame.equivalent);
                section(&mut out, "SubClassOf", &frame.sub_class_of);
                section(&mut out, "DisjointWith", &frame.disjoint);
            }
            _ => {
                section(&mut out, "Domain", &frame.domain);
                section(&mut out, "Range", &frame.range);
                section(&mut out, "SubPropertyOf", &frame.sub_property_of);
                section(&mut out, "Characteristics", &frame.characteristics);
            }
        }
    }
    for line in loose {
        let _ = writeln!(out, "\n{line}");
    }
    Ok(out)
}
