//! Evaluation of top-level forms into an [`Environment`].

use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::env::is_identifier;
use super::{Environment, Form, FormKind, ReadError, Session, TestDef};
use crate::importer::{self, MemoTable, Naming};
use crate::model::{AnnotationValue, Axiom, ClassExpression, Entity, EntityKind, Iri, ModelError};
use crate::patterns::{self, AffixPosition, TemplateDef};
use crate::polyglot;
use crate::serializer;
use crate::testkit;
use crate::Location;

/// Strip a namespace qualifier from an operator name: `p/value-partition`
/// names the same form as `value-partition`.
pub fn builtin_name(head: &str) -> &str {
    head.rsplit_once('/').map_or(head, |(_, name)| name)
}

const DEFAULT_LANG: &str = "en";

const CLASS_OPTIONS: &[&str] = &["label", "comment", "annotation", "subclass", "equivalent", "disjoint"];
const PROPERTY_OPTIONS: &[&str] = &[
    "label",
    "comment",
    "annotation",
    "domain",
    "range",
    "subproperty",
    "characteristic",
];

struct OptionGroup<'f> {
    name: String,
    location: Location,
    values: &'f [Form],
}

/// Split `:key value...` sequences. `flags` take no values; `:characteristic`
/// and `:naming` take keyword values.
fn split_options<'f>(
    items: &'f [Form],
    allowed: &[&str],
    flags: &[&str],
) -> Result<Vec<OptionGroup<'f>>, ReadError> {
    let mut groups: Vec<OptionGroup<'f>> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let form = &items[i];
        let Some(key) = form.keyword() else {
            return Err(ReadError::syntax(
                &form.location,
                "expected an option keyword",
            ));
        };
        if !allowed.contains(&key) && !flags.contains(&key) {
            return Err(ReadError::UnknownOption {
                option: key.to_string(),
                location: form.location.clone(),
            });
        }
        let start = i + 1;
        let mut end = start;
        if !flags.contains(&key) {
            while end < items.len() {
                match items[end].keyword() {
                    Some(v) if key == "characteristic" && matches!(v, "functional" | "transitive") => {
                        end += 1
                    }
                    Some(v) if key == "naming" && end == start && matches!(v, "label" | "fragment") => {
                        end += 1
                    }
                    Some(_) => break,
                    None => end += 1,
                }
            }
            if end == start {
                return Err(ReadError::syntax(
                    &form.location,
                    format!("option `:{key}` needs a value"),
                ));
            }
        }
        groups.push(OptionGroup {
            name: key.to_string(),
            location: form.location.clone(),
            values: &items[start..end],
        });
        i = end;
    }
    Ok(groups)
}

fn single_text<'f>(group: &OptionGroup<'f>) -> Result<&'f str, ReadError> {
    match group.values {
        [v] => v.text().ok_or_else(|| {
            ReadError::syntax(&v.location, format!("`:{}` expects a string", group.name))
        }),
        _ => Err(ReadError::syntax(
            &group.location,
            format!("`:{}` expects exactly one string", group.name),
        )),
    }
}

fn expect_identifier<'f>(form: Option<&'f Form>, at: &Location, what: &str) -> Result<&'f str, ReadError> {
    let form = form.ok_or_else(|| ReadError::syntax(at, format!("missing {what}")))?;
    form.identifier()
        .ok_or_else(|| ReadError::syntax(&form.location, format!("expected {what}")))
}

/// Evaluates forms against one environment.
pub struct Evaluator<'a> {
    pub env: &'a mut Environment,
    session: Option<&'a mut Session>,
    resource_dir: Option<PathBuf>,
    /// Entities newly declared since the last call to [`Evaluator::take_created`].
    created: Vec<Entity>,
}

/// Evaluate forms without a namespace loader; `use` forms fail.
pub fn eval_forms(env: &mut Environment, forms: &[Form]) -> Result<(), ReadError> {
    let mut ev = Evaluator::new(env);
    for form in forms {
        ev.eval_top(form)?;
    }
    Ok(())
}

impl<'a> Evaluator<'a> {
    pub fn new(env: &'a mut Environment) -> Evaluator<'a> {
        Evaluator {
            env,
            session: None,
            resource_dir: None,
            created: Vec::new(),
        }
    }

    pub fn with_session(mut self, session: &'a mut Session) -> Evaluator<'a> {
        self.resource_dir = Some(session.root().to_path_buf());
        self.session = Some(session);
        self
    }

    pub fn with_resource_dir(mut self, dir: impl Into<PathBuf>) -> Evaluator<'a> {
        self.resource_dir = Some(dir.into());
        self
    }

    pub fn take_created(&mut self) -> Vec<Entity> {
        std::mem::take(&mut self.created)
    }

    fn resource_path(&self, relative: &str, location: &Location) -> PathBuf {
        let rel = Path::new(relative);
        if rel.is_absolute() {
            return rel.to_path_buf();
        }
        let from_file = Path::new(location.file.as_ref()).parent().map(|d| d.join(rel));
        if let Some(p) = from_file.filter(|p| p.exists()) {
            return p;
        }
        match &self.resource_dir {
            Some(dir) => dir.join(rel),
            None => rel.to_path_buf(),
        }
    }

    fn read_file(&self, path: &Path, location: &Location) -> Result<String, ReadError> {
        std::fs::read_to_string(path).map_err(|e| ReadError::Io {
            location: Some(location.clone()),
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Evaluate a top-level form, returning the entities it defined directly.
    pub fn eval_top(&mut self, form: &Form) -> Result<Vec<Entity>, ReadError> {
        let Some(items) = form.list() else {
            return Err(ReadError::syntax(&form.location, "expected a list form"));
        };
        let Some(head) = items.first().and_then(Form::identifier) else {
            return Err(ReadError::syntax(&form.location, "expected an operator"));
        };
        if let Some(template) = self.env.templates.get(head).cloned() {
            self.require_ontology(form)?;
            return self.apply_template(&template, &items[1..], &form.location);
        }
        let op = builtin_name(head);
        if op != "defontology" {
            self.require_ontology(form)?;
        }
        match op {
            "defontology" => self.defontology(items, &form.location).map(|_| vec![]),
            "use" => self.use_namespace(items, &form.location).map(|_| vec![]),
            "defclass" => self.defclass(items, &form.location).map(|e| vec![e]),
            "defoproperty" => self.defoproperty(items, &form.location).map(|e| vec![e]),
            "refine" => self.refine(items, &form.location).map(|_| vec![]),
            "as-subclasses" => self.subclass_block(items, &form.location, false).map(|_| vec![]),
            "as-disjoint-subclasses" => {
                self.subclass_block(items, &form.location, true).map(|_| vec![])
            }
            "with-suffix" => self.with_affix(items, &form.location, AffixPosition::Suffix),
            "with-prefix" => self.with_affix(items, &form.location, AffixPosition::Prefix),
            "value-partition" => self.value_partition(items, &form.location),
            "deftemplate" => self.deftemplate(items, &form.location).map(|_| vec![]),
            "read-external" => self.read_external(items, &form.location).map(|_| vec![]),
            "polyglot-load-label" | "load-labels" => {
                self.load_labels(items, &form.location).map(|_| vec![])
            }
            "deftest" => self.deftest(items, &form.location).map(|_| vec![]),
            _ => Err(ReadError::UnknownForm {
                name: head.to_string(),
                location: items[0].location.clone(),
            }),
        }
    }

    fn require_ontology(&self, form: &Form) -> Result<(), ReadError> {
        if self.env.defined {
            Ok(())
        } else {
            Err(ReadError::MissingOntology {
                location: form.location.clone(),
            })
        }
    }

    fn model<T>(&self, location: &Location, r: Result<T, ModelError>) -> Result<T, ReadError> {
        r.map_err(|source| ReadError::Model {
            location: location.clone(),
            source,
        })
    }

    fn defontology(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        if self.env.defined {
            return Err(ReadError::DuplicateOntology {
                location: at.clone(),
            });
        }
        expect_identifier(items.get(1), at, "ontology name")?;
        let groups = split_options(
            &items[2..],
            &["iri", "prefix", "label", "comment"],
            &["test-only"],
        )?;
        let iri_text = groups
            .iter()
            .find(|g| g.name == "iri")
            .map(single_text)
            .transpose()?
            .ok_or_else(|| ReadError::syntax(at, "defontology needs `:iri \"...\"`"))?;
        let ontology_iri = self.model(at, Iri::new(iri_text.trim_end_matches('#')))?;
        let base = if iri_text.ends_with('#') || iri_text.ends_with('/') {
            iri_text.to_string()
        } else {
            format!("{iri_text}#")
        };
        self.env.base = self.model(at, Iri::new(&base))?;
        self.env.ontology.set_iri(ontology_iri.clone());
        let label = match groups.iter().find(|g| g.name == "prefix") {
            Some(g) => single_text(g)?.to_string(),
            None => serializer::derive_prefix_label(&ontology_iri),
        };
        self.env.ontology.add_prefix(label, base);
        self.env.defined = true;
        for g in &groups {
            match g.name.as_str() {
                "test-only" => self.env.test_only = true,
                "label" | "comment" => {
                    let value = AnnotationValue::new(single_text(g)?, Some(DEFAULT_LANG));
                    let ax = if g.name == "label" {
                        Axiom::label(ontology_iri.clone(), value)
                    } else {
                        Axiom::comment(ontology_iri.clone(), value)
                    };
                    let r = self.env.ontology.add_axioms([ax]);
                    self.model(&g.location, r)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn use_namespace(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let ns = expect_identifier(items.get(1), at, "namespace name")?.to_string();
        let groups = split_options(&items[2..], &["as"], &[])?;
        let qualifier = match groups.first() {
            Some(g) => match g.values {
                [v] => v
                    .identifier()
                    .ok_or_else(|| ReadError::syntax(&v.location, "`:as` expects an identifier"))?
                    .to_string(),
                _ => return Err(ReadError::syntax(&g.location, "`:as` expects one identifier")),
            },
            None => ns.clone(),
        };
        let Some(session) = self.session.as_deref_mut() else {
            return Err(ReadError::NamespaceNotFound {
                namespace: ns,
                path: PathBuf::new(),
            });
        };
        let dep = session.load_from(&ns, at)?;
        for (name, entity) in dep.exported() {
            let qualified = format!("{qualifier}/{name}");
            match self.env.lookup(&qualified) {
                Some(e) if e == entity => {}
                _ => self.env.bind_hidden(&qualified, entity.clone(), at)?,
            }
        }
        for (name, dep_alias) in dep.deprecated() {
            self.env.deprecate(
                &format!("{qualifier}/{name}"),
                dep_alias.entity.clone(),
                &format!("{qualifier}/{}", dep_alias.replacement),
            );
        }
        for (name, template) in &dep.templates {
            if !name.contains('/') {
                self.env
                    .templates
                    .insert(format!("{qualifier}/{name}"), template.clone());
            }
        }
        for (label, base) in dep.ontology.prefixes() {
            if !self.env.ontology.prefixes().contains_key(label) {
                self.env.ontology.add_prefix(label.clone(), base.clone());
            }
        }
        let r = self
            .env
            .ontology
            .add_axioms([Axiom::Import(dep.ontology.iri().clone())]);
        self.model(at, r)?;
        self.env.add_import(Arc::new(dep.ontology.clone()));
        for o in dep.imports() {
            self.env.add_import(o.clone());
        }
        Ok(())
    }

    fn new_entity_iri(&self, name_form: &Form) -> Result<(String, Iri), ReadError> {
        let name = name_form
            .identifier()
            .or_else(|| name_form.text())
            .ok_or_else(|| ReadError::syntax(&name_form.location, "expected a name"))?;
        if !is_identifier(name) {
            return Err(ReadError::InvalidIdentifier {
                name: name.to_string(),
                location: name_form.location.clone(),
            });
        }
        let iri = self.model(&name_form.location, self.env.base.join(name))?;
        Ok((name.to_string(), iri))
    }

    fn declare(&mut self, kind: EntityKind, iri: Iri, at: &Location) -> Result<Entity, ReadError> {
        let fresh = self.env.ontology.kind_of(&iri).is_none();
        let r = self.env.ontology.declare(kind, iri);
        let entity = self.model(at, r)?;
        if fresh {
            self.created.push(entity.clone());
        }
        Ok(entity)
    }

    fn define(&mut self, kind: EntityKind, name_form: Option<&Form>, at: &Location) -> Result<(String, Entity), ReadError> {
        let name_form = name_form.ok_or_else(|| ReadError::syntax(at, "missing name"))?;
        let (name, iri) = self.new_entity_iri(name_form)?;
        if self.env.is_bound(&name) {
            return Err(ReadError::DuplicateBinding {
                name,
                location: name_form.location.clone(),
            });
        }
        let entity = self.declare(kind, iri, &name_form.location)?;
        self.env.bind(&name, entity.clone(), &name_form.location)?;
        Ok((name, entity))
    }

    fn defclass(&mut self, items: &[Form], at: &Location) -> Result<Entity, ReadError> {
        let (_, entity) = self.define(EntityKind::Class, items.get(1), at)?;
        self.apply_class_options(&entity.iri, &items[2..])?;
        Ok(entity)
    }

    fn defoproperty(&mut self, items: &[Form], at: &Location) -> Result<Entity, ReadError> {
        let (_, entity) = self.define(EntityKind::ObjectProperty, items.get(1), at)?;
        self.apply_property_options(&entity.iri, &items[2..])?;
        Ok(entity)
    }

    fn refine(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let name_form = items.get(1).ok_or_else(|| ReadError::syntax(at, "missing name"))?;
        let name = expect_identifier(Some(name_form), at, "name")?;
        let entity = self.env.resolve(name, &name_form.location)?;
        match entity.kind {
            EntityKind::Class => self.apply_class_options(&entity.iri, &items[2..]),
            EntityKind::ObjectProperty => self.apply_property_options(&entity.iri, &items[2..]),
            _ => Err(ReadError::syntax(&name_form.location, "cannot refine this entity")),
        }
    }

    fn annotation_axioms(&mut self, subject: &Iri, group: &OptionGroup<'_>) -> Result<Vec<Axiom>, ReadError> {
        match group.name.as_str() {
            "label" => Ok(vec![Axiom::label(
                subject.clone(),
                AnnotationValue::new(single_text(group)?, Some(DEFAULT_LANG)),
            )]),
            "comment" => Ok(vec![Axiom::comment(
                subject.clone(),
                AnnotationValue::new(single_text(group)?, Some(DEFAULT_LANG)),
            )]),
            _ => {
                let mut out = Vec::new();
                for v in group.values {
                    let parts = v.list().ok_or_else(|| {
                        ReadError::syntax(&v.location, "expected (label \"text\" \"lang\")")
                    })?;
                    let kind = parts.first().and_then(Form::identifier).map(builtin_name);
                    let text = parts.get(1).and_then(Form::text);
                    let lang = match parts.get(2) {
                        Some(f) => Some(f.text().ok_or_else(|| {
                            ReadError::syntax(&f.location, "language tag must be a string")
                        })?),
                        None => None,
                    };
                    let (Some(kind), Some(text), true) = (kind, text, parts.len() <= 3) else {
                        return Err(ReadError::syntax(&v.location, "expected (label \"text\" \"lang\")"));
                    };
                    let value = AnnotationValue::new(text, lang);
                    out.push(match kind {
                        "label" => Axiom::label(subject.clone(), value),
                        "comment" => Axiom::comment(subject.clone(), value),
                        other => {
                            return Err(ReadError::syntax(
                                &v.location,
                                format!("unknown annotation property `{other}`"),
                            ))
                        }
                    });
                }
                Ok(out)
            }
        }
    }

    fn apply_class_options(&mut self, subject: &Iri, options: &[Form]) -> Result<(), ReadError> {
        let groups = split_options(options, CLASS_OPTIONS, &[])?;
        let this = ClassExpression::Class(subject.clone());
        for g in &groups {
            let mut axioms = Vec::new();
            match g.name.as_str() {
                "label" | "comment" | "annotation" => axioms = self.annotation_axioms(subject, g)?,
                "subclass" => {
                    for v in g.values {
                        axioms.push(Axiom::sub_class_of(this.clone(), self.eval_class(v)?));
                    }
                }
                "equivalent" => {
                    for v in g.values {
                        axioms.push(Axiom::EquivalentClasses(vec![this.clone(), self.eval_class(v)?]));
                    }
                }
                "disjoint" => {
                    for v in g.values {
                        match self.eval_class(v)? {
                            ClassExpression::Class(other) => {
                                let r = Axiom::disjoint_classes(vec![subject.clone(), other]);
                                axioms.push(self.model(&v.location, r)?);
                            }
                            _ => {
                                return Err(ReadError::syntax(
                                    &v.location,
                                    "`:disjoint` expects named classes",
                                ))
                            }
                        }
                    }
                }
                _ => unreachable!("filtered by split_options"),
            }
            self.add(axioms, &g.location)?;
        }
        Ok(())
    }

    fn apply_property_options(&mut self, subject: &Iri, options: &[Form]) -> Result<(), ReadError> {
        let groups = split_options(options, PROPERTY_OPTIONS, &[])?;
        for g in &groups {
            let mut axioms = Vec::new();
            match g.name.as_str() {
                "label" | "comment" | "annotation" => axioms = self.annotation_axioms(subject, g)?,
                "domain" => {
                    for v in g.values {
                        axioms.push(Axiom::ObjectPropertyDomain {
                            property: subject.clone(),
                            domain: self.eval_class(v)?,
                        });
                    }
                }
                "range" => {
                    for v in g.values {
                        axioms.push(Axiom::ObjectPropertyRange {
                            property: subject.clone(),
                            range: self.eval_class(v)?,
                        });
                    }
                }
                "subproperty" => {
                    for v in g.values {
                        axioms.push(Axiom::SubObjectPropertyOf {
                            sub: subject.clone(),
                            sup: self.eval_property(v)?,
                        });
                    }
                }
                "characteristic" => {
                    for v in g.values {
                        axioms.push(match v.keyword() {
                            Some("functional") => Axiom::FunctionalObjectProperty(subject.clone()),
                            Some("transitive") => Axiom::TransitiveObjectProperty(subject.clone()),
                            _ => {
                                return Err(ReadError::syntax(
                                    &v.location,
                                    "expected `:functional` or `:transitive`",
                                ))
                            }
                        });
                    }
                }
                _ => unreachable!("filtered by split_options"),
            }
            self.add(axioms, &g.location)?;
        }
        Ok(())
    }

    /// Add axioms, declaring entities from other ontologies as needed.
    pub(crate) fn add(&mut self, axioms: Vec<Axiom>, at: &Location) -> Result<usize, ReadError> {
        let mut foreign = Vec::new();
        let mut batch = Vec::new();
        for axiom in &axioms {
            if let Axiom::Declaration(e) = axiom {
                if self.env.ontology.kind_of(&e.iri).is_none() {
                    batch.push(e.clone());
                }
                continue;
            }
            for e in axiom.signature() {
                if !e.is_builtin()
                    && self.env.ontology.kind_of(&e.iri).is_none()
                    && !foreign.contains(&e)
                    && !axioms.contains(&Axiom::Declaration(e.clone()))
                {
                    foreign.push(e);
                }
            }
        }
        for e in foreign {
            self.declare(e.kind, e.iri.clone(), at)?;
            let hints: Vec<_> = self
                .env
                .imports()
                .iter()
                .flat_map(|o| o.prefixes().iter().map(|(k, v)| (k.clone(), v.clone())))
                .collect();
            serializer::ensure_prefix(&mut self.env.ontology, &e.iri, &hints);
        }
        let r = self.env.ontology.add_axioms(axioms);
        let added = self.model(at, r)?;
        self.created.extend(batch);
        Ok(added)
    }

    pub fn eval_property(&mut self, form: &Form) -> Result<Iri, ReadError> {
        let name = form
            .identifier()
            .ok_or_else(|| ReadError::syntax(&form.location, "expected a property name"))?;
        let entity = self.env.resolve(name, &form.location)?;
        if entity.kind != EntityKind::ObjectProperty {
            return Err(ReadError::WrongKind {
                name: name.to_string(),
                expected: EntityKind::ObjectProperty,
                found: entity.kind,
                location: form.location.clone(),
            });
        }
        Ok(entity.iri)
    }

    /// Evaluate a class expression form.
    pub fn eval_class(&mut self, form: &Form) -> Result<ClassExpression, ReadError> {
        match &form.kind {
            FormKind::Identifier(name) => match name.as_str() {
                "owl:Thing" => Ok(ClassExpression::Thing),
                "owl:Nothing" => Ok(ClassExpression::Nothing),
                _ => {
                    let entity = self.env.resolve(name, &form.location)?;
                    if entity.kind != EntityKind::Class {
                        return Err(ReadError::WrongKind {
                            name: name.clone(),
                            expected: EntityKind::Class,
                            found: entity.kind,
                            location: form.location.clone(),
                        });
                    }
                    Ok(ClassExpression::named(entity.iri))
                }
            },
            FormKind::List(items) => {
                let head = items
                    .first()
                    .and_then(Form::identifier)
                    .ok_or_else(|| ReadError::syntax(&form.location, "expected a class expression"))?;
                let args = &items[1..];
                match builtin_name(head) {
                    "owland" | "owlor" => {
                        let ops = args
                            .iter()
                            .map(|a| self.eval_class(a))
                            .collect::<Result<Vec<_>, _>>()?;
                        let r = if builtin_name(head) == "owland" {
                            ClassExpression::and(ops)
                        } else {
                            ClassExpression::or(ops)
                        };
                        self.model(&form.location, r)
                    }
                    "owlnot" => match args {
                        [a] => Ok(ClassExpression::not(self.eval_class(a)?)),
                        _ => Err(ReadError::syntax(&form.location, "owlnot takes one class")),
                    },
                    "owlsome" | "owlonly" => match args {
                        [p, c] => {
                            let property = self.eval_property(p)?;
                            let filler = self.eval_class(c)?;
                            Ok(if builtin_name(head) == "owlsome" {
                                ClassExpression::some(property, filler)
                            } else {
                                ClassExpression::only(property, filler)
                            })
                        }
                        _ => Err(ReadError::syntax(
                            &form.location,
                            format!("{head} takes a property and a class"),
                        )),
                    },
                    "owlclass" => {
                        let name_form = args
                            .first()
                            .filter(|f| f.text().is_some())
                            .ok_or_else(|| ReadError::syntax(&form.location, "owlclass needs a name string"))?;
                        let (_, iri) = self.new_entity_iri(name_form)?;
                        self.declare(EntityKind::Class, iri.clone(), &name_form.location)?;
                        self.apply_class_options(&iri, &args[1..])?;
                        Ok(ClassExpression::Class(iri))
                    }
                    _ => Err(ReadError::UnknownForm {
                        name: head.to_string(),
                        location: items[0].location.clone(),
                    }),
                }
            }
            _ => Err(ReadError::syntax(&form.location, "expected a class expression")),
        }
    }

    fn subclass_block(&mut self, items: &[Form], at: &Location, disjoint: bool) -> Result<(), ReadError> {
        let parent_form = items
            .get(1)
            .ok_or_else(|| ReadError::syntax(at, "missing parent class"))?;
        let parent = match self.eval_class(parent_form)? {
            ClassExpression::Class(iri) => iri,
            _ => return Err(ReadError::syntax(&parent_form.location, "parent must be a named class")),
        };
        let mut disjoint = disjoint;
        let mut cover = false;
        let mut rest = &items[2..];
        while let Some(flag) = rest.first().and_then(Form::keyword) {
            match flag {
                "cover" => cover = true,
                "disjoint" => disjoint = true,
                other => {
                    return Err(ReadError::UnknownOption {
                        option: other.to_string(),
                        location: rest[0].location.clone(),
                    })
                }
            }
            rest = &rest[1..];
        }
        let mut children = Vec::new();
        for child in rest {
            let head = child.head().map(builtin_name);
            let allowed = matches!(head, Some("defclass" | "with-suffix" | "with-prefix"))
                || child.head().is_some_and(|h| self.env.templates.contains_key(h));
            if !allowed {
                return Err(ReadError::syntax(
                    &child.location,
                    "subclass blocks may only contain class definitions",
                ));
            }
            children.extend(
                self.eval_top(child)?
                    .into_iter()
                    .filter(|e| e.kind == EntityKind::Class)
                    .map(|e| e.iri),
            );
        }
        let axioms = patterns::subclass_block(&parent, &children, disjoint, cover).map_err(|source| {
            ReadError::Pattern {
                location: at.clone(),
                source,
            }
        })?;
        self.add(axioms, at)?;
        Ok(())
    }

    fn with_affix(&mut self, items: &[Form], at: &Location, position: AffixPosition) -> Result<Vec<Entity>, ReadError> {
        let affix_form = items.get(1).ok_or_else(|| ReadError::syntax(at, "missing affix"))?;
        let affix = affix_form
            .identifier()
            .or_else(|| affix_form.text())
            .ok_or_else(|| ReadError::syntax(&affix_form.location, "affix must be an identifier"))?;
        let valid = match position {
            AffixPosition::Prefix => is_identifier(affix),
            AffixPosition::Suffix => is_identifier(&format!("A{affix}")),
        };
        if !valid {
            return Err(ReadError::InvalidIdentifier {
                name: affix.to_string(),
                location: affix_form.location.clone(),
            });
        }
        let forms = patterns::affix_forms(affix, position, &items[2..]).map_err(|source| match source {
            patterns::PatternError::DuplicateBinding(name) => ReadError::DuplicateBinding {
                name,
                location: at.clone(),
            },
            source => ReadError::Pattern {
                location: at.clone(),
                source,
            },
        })?;
        let mut defined = Vec::new();
        for f in &forms {
            defined.extend(self.eval_top(f)?);
        }
        Ok(defined)
    }

    fn value_partition(&mut self, items: &[Form], at: &Location) -> Result<Vec<Entity>, ReadError> {
        let name_form = items.get(1).ok_or_else(|| ReadError::syntax(at, "missing partition name"))?;
        let name = expect_identifier(Some(name_form), at, "partition name")?;
        let values_form = items
            .get(2)
            .filter(|_| items.len() == 3)
            .ok_or_else(|| ReadError::syntax(at, "expected (value-partition Name [Value...])"))?;
        let value_forms = values_form
            .bracket()
            .ok_or_else(|| ReadError::syntax(&values_form.location, "values must be a [bracket list]"))?;
        let mut values = Vec::new();
        for v in value_forms {
            let id = expect_identifier(Some(v), &v.location, "value name")?;
            if !is_identifier(id) {
                return Err(ReadError::InvalidIdentifier {
                    name: id.to_string(),
                    location: v.location.clone(),
                });
            }
            values.push(id.to_string());
        }
        if !is_identifier(name) {
            return Err(ReadError::InvalidIdentifier {
                name: name.to_string(),
                location: name_form.location.clone(),
            });
        }
        let expansion = patterns::value_partition(&self.env.base, name, &values).map_err(|source| match source {
            patterns::PatternError::DuplicateBinding(name) => ReadError::DuplicateBinding {
                name,
                location: values_form.location.clone(),
            },
            source => ReadError::Pattern {
                location: at.clone(),
                source,
            },
        })?;
        for (n, _) in &expansion.bindings {
            if self.env.is_bound(n) {
                return Err(ReadError::DuplicateBinding {
                    name: n.clone(),
                    location: at.clone(),
                });
            }
        }
        self.add(expansion.axioms, at)?;
        for (n, e) in &expansion.bindings {
            self.env.bind(n, e.clone(), at)?;
        }
        Ok(vec![expansion.bindings[0].1.clone()])
    }

    fn deftemplate(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let name = expect_identifier(items.get(1), at, "template name")?;
        let params = items
            .get(2)
            .and_then(Form::bracket)
            .ok_or_else(|| ReadError::syntax(at, "expected (deftemplate name [params...] body...)"))?;
        if self.env.templates.contains_key(name) {
            return Err(ReadError::DuplicateBinding {
                name: name.to_string(),
                location: at.clone(),
            });
        }
        let def = TemplateDef::parse(name, params, items[3..].to_vec()).map_err(|source| ReadError::Pattern {
            location: at.clone(),
            source,
        })?;
        self.env.templates.insert(name.to_string(), Arc::new(def));
        Ok(())
    }

    fn apply_template(&mut self, template: &TemplateDef, groups: &[Form], at: &Location) -> Result<Vec<Entity>, ReadError> {
        let mut defined = Vec::new();
        for group in groups {
            let args = group.bracket().ok_or_else(|| {
                ReadError::syntax(&group.location, "template arguments must be [bracket lists]")
            })?;
            let forms = template.instantiate(args).map_err(|source| ReadError::Pattern {
                location: group.location.clone(),
                source,
            })?;
            for f in &forms {
                defined.extend(self.eval_top(f)?);
            }
        }
        if groups.is_empty() {
            return Err(ReadError::syntax(at, "template invoked without arguments"));
        }
        Ok(defined)
    }

    fn read_external(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let path_form = items
            .get(1)
            .filter(|f| f.text().is_some())
            .ok_or_else(|| ReadError::syntax(at, "read-external needs a file path string"))?;
        let groups = split_options(&items[2..], &["naming", "prefix", "memo"], &[])?;
        let mut naming = Naming::Fragment;
        let mut filter = None;
        let mut memo = None;
        for g in &groups {
            match (g.name.as_str(), g.values) {
                ("naming", [v]) => {
                    naming = match v.keyword() {
                        Some("label") => Naming::Label,
                        Some("fragment") => Naming::Fragment,
                        _ => return Err(ReadError::syntax(&v.location, "expected `:label` or `:fragment`")),
                    }
                }
                ("naming", _) => {
                    return Err(ReadError::syntax(&g.location, "expected `:naming :label` or `:naming :fragment`"))
                }
                ("prefix", _) => filter = Some(single_text(g)?.to_string()),
                ("memo", _) => memo = Some(single_text(g)?.to_string()),
                _ => {}
            }
        }
        let path = self.resource_path(path_form.text().unwrap(), at);
        let text = self.read_file(&path, at)?;
        let wrap = |source| ReadError::Import {
            location: at.clone(),
            path: path.clone(),
            source,
        };
        let external = Arc::new(importer::parse_functional(&text).map_err(wrap)?);
        importer::intern_external(self.env, external.clone(), naming, filter.as_deref(), Some(at))
            .map_err(wrap)?;
        for (label, base) in external.prefixes() {
            if !self.env.ontology.prefixes().contains_key(label) {
                self.env.ontology.add_prefix(label.clone(), base.clone());
            }
        }
        let r = self
            .env
            .ontology
            .add_axioms([Axiom::Import(external.iri().clone())]);
        self.model(at, r)?;
        self.env.add_import(external.clone());

        if let Some(memo) = memo {
            let memo_path = self.resource_path(&memo, at);
            if memo_path.exists() {
                let memo_text = self.read_file(&memo_path, at)?;
                let wrap = |source| ReadError::Import {
                    location: at.clone(),
                    path: memo_path.clone(),
                    source,
                };
                let saved = MemoTable::parse(&memo_text).map_err(wrap)?;
                let current = &self.env.externals[external.iri()].bindings;
                let report = importer::memorise_check(current, &saved, external.iri()).map_err(wrap)?;
                report.install(self.env, Some(at));
            } else {
                self.env.warn(
                    Some(at.clone()),
                    format!("memo file {} does not exist yet", memo_path.display()),
                );
            }
        }
        Ok(())
    }

    fn load_labels(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let (Some(path), Some(lang)) = (
            items.get(1).and_then(Form::text),
            items.get(2).and_then(Form::text),
        ) else {
            return Err(ReadError::syntax(at, "expected (polyglot-load-label \"file\" \"lang\")"));
        };
        if lang.is_empty() {
            return Err(ReadError::syntax(at, "language must not be empty"));
        }
        let path = self.resource_path(path, at);
        let text = self.read_file(&path, at)?;
        let table = polyglot::parse_properties(&text).map_err(|source| ReadError::Properties {
            location: at.clone(),
            path: path.clone(),
            source,
        })?;
        let report = polyglot::apply_labels(self.env, &table, lang);
        let report = self.model(at, report)?;
        report.warn(self.env, lang, Some(at));
        Ok(())
    }

    fn deftest(&mut self, items: &[Form], at: &Location) -> Result<(), ReadError> {
        let name = expect_identifier(items.get(1), at, "test name")?;
        let mut assertions = Vec::new();
        for f in &items[2..] {
            match f.list() {
                Some([head, body]) if head.identifier().map(builtin_name) == Some("is") => {
                    testkit::check_assertion(body)?;
                    assertions.push(body.clone());
                }
                _ => {
                    return Err(ReadError::TestSyntax {
                        location: f.location.clone(),
                        message: "test bodies must be (is assertion) forms".into(),
                    })
                }
            }
        }
        if self.env.tests.iter().any(|t| t.name == name) {
            return Err(ReadError::DuplicateBinding {
                name: name.to_string(),
                location: at.clone(),
            });
        }
        self.env.tests.push(TestDef {
            name: name.to_string(),
            location: at.clone(),
            assertions,
        });
        Ok(())
    }
}
