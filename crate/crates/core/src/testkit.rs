//! Running `deftest` blocks: inferred-subsumption and coherence assertions,
//! with temporary probe classes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::model::{Axiom, EntityKind, Iri};
use crate::reader::{builtin_name, Environment, Evaluator, Form, ReadError};
use crate::reasoner::{classify, Taxonomy};
use crate::Location;

fn test_syntax(location: &Location, message: impl Into<String>) -> ReadError {
    ReadError::TestSyntax {
        location: location.clone(),
        message: message.into(),
    }
}

/// Check the shape of an assertion without evaluating it.
pub fn check_assertion(form: &Form) -> Result<(), ReadError> {
    let at = &form.location;
    let items = form
        .list()
        .ok_or_else(|| test_syntax(at, "expected an assertion form"))?;
    let head = items
        .first()
        .and_then(Form::identifier)
        .map(builtin_name)
        .ok_or_else(|| test_syntax(at, "expected an assertion form"))?;
    match head {
        "isuperclass?" => {
            let names = &items[1..];
            let flag_ok = match names.get(2) {
                None => true,
                Some(f) => f.keyword() == Some("reflexive") && names.len() == 3,
            };
            if names.len() < 2 || !flag_ok || names[..2].iter().any(|n| n.identifier().is_none()) {
                return Err(test_syntax(at, "expected (isuperclass? Sub Super [:reflexive])"));
            }
            Ok(())
        }
        "coherent?" if items.len() == 1 => Ok(()),
        "coherent?" => Err(test_syntax(at, "coherent? takes no arguments")),
        "not" => match &items[1..] {
            [inner] => check_assertion(inner),
            _ => Err(test_syntax(at, "not takes one assertion")),
        },
        "with-probe-entities" => {
            let [bindings, body] = &items[1..] else {
                return Err(test_syntax(at, "expected (with-probe-entities [name (owlclass ...)] assertion)"));
            };
            probe_bindings(bindings)?;
            check_assertion(body)
        }
        other => Err(test_syntax(at, format!("unknown assertion `{other}`"))),
    }
}

fn probe_bindings(form: &Form) -> Result<Vec<(&str, &Form)>, ReadError> {
    let items = form
        .bracket()
        .ok_or_else(|| test_syntax(&form.location, "probe bindings must be a [name expr ...] vector"))?;
    if items.len() % 2 != 0 {
        return Err(test_syntax(&form.location, "probe bindings come in name/expression pairs"));
    }
    items
        .chunks(2)
        .map(|pair| {
            let name = pair[0]
                .identifier()
                .ok_or_else(|| test_syntax(&pair[0].location, "expected a probe name"))?;
            match pair[1].head().map(builtin_name) {
                Some("owlclass") => Ok((name, &pair[1])),
                _ => Err(test_syntax(&pair[1].location, "probe entities are created with owlclass")),
            }
        })
        .collect()
}

/// Memoizes classification per ontology state.
#[derive(Default)]
pub struct TaxonomyCache {
    version: Option<u64>,
    taxonomy: Option<Arc<Taxonomy>>,
    computed: usize,
}

impl TaxonomyCache {
    pub fn new() -> TaxonomyCache {
        TaxonomyCache::default()
    }

    pub fn get(&mut self, env: &Environment) -> Arc<Taxonomy> {
        let version = env.ontology.version();
        match &self.taxonomy {
            Some(t) if self.version == Some(version) => t.clone(),
            _ => {
                let axioms: Vec<&Axiom> = env.closure_axioms().collect();
                let t = Arc::new(classify(axioms.iter().copied()));
                self.version = Some(version);
                self.taxonomy = Some(t.clone());
                self.computed += 1;
                t
            }
        }
    }

    /// How many times the reasoner has run.
    pub fn computations(&self) -> usize {
        self.computed
    }
}

fn class_iri(env: &mut Environment, form: &Form) -> Result<Iri, ReadError> {
    let name = form
        .identifier()
        .ok_or_else(|| test_syntax(&form.location, "expected a class name"))?;
    let entity = env.resolve(name, &form.location)?;
    if entity.kind != EntityKind::Class {
        return Err(ReadError::WrongKind {
            name: name.to_string(),
            expected: EntityKind::Class,
            found: entity.kind,
            location: form.location.clone(),
        });
    }
    Ok(entity.iri)
}

/// Evaluate one assertion against the current ontology state.
pub fn eval_assertion(
    env: &mut Environment,
    cache: &mut TaxonomyCache,
    form: &Form,
) -> Result<bool, ReadError> {
    check_assertion(form)?;
    let items = form.list().expect("checked");
    match builtin_name(items[0].identifier().expect("checked")) {
        "isuperclass?" => {
            let sub = class_iri(env, &items[1])?;
            let sup = class_iri(env, &items[2])?;
            let reflexive = items.len() == 4;
            cache
                .get(env)
                .is_superclass(&sub, &sup, reflexive)
                .map_err(|e| test_syntax(&form.location, e.to_string()))
        }
        "coherent?" => Ok(cache.get(env).is_coherent()),
        "not" => eval_assertion(env, cache, &items[1]).map(|b| !b),
        "with-probe-entities" => run_probe_block(env, cache, &items[1], &items[2]),
        _ => unreachable!("checked"),
    }
}

/// Create probe classes, evaluate `body`, then remove every axiom that
/// mentions a probe. The ontology is restored even when `body` fails.
pub fn run_probe_block(
    env: &mut Environment,
    cache: &mut TaxonomyCache,
    bindings: &Form,
    body: &Form,
) -> Result<bool, ReadError> {
    let pairs = probe_bindings(bindings)?;
    let before_len = env.ontology.len();
    let before_version = env.ontology.version();
    let before_prefixes = env.ontology.prefixes().clone();
    let saved_taxonomy = (cache.version == Some(before_version))
        .then(|| cache.taxonomy.clone())
        .flatten();

    let mut created = Vec::new();
    let mut bound = Vec::new();
    let result = (|| {
        for (name, expr) in &pairs {
            if let Some(text) = expr.list().and_then(|l| l.get(1)).and_then(Form::text) {
                if let Ok(iri) = env.base.join(text) {
                    if env.ontology.kind_of(&iri).is_some() {
                        return Err(test_syntax(
                            &expr.location,
                            format!("probe `{text}` collides with an existing entity"),
                        ));
                    }
                }
            }
            let mut ev = Evaluator::new(env);
            let outcome = ev.eval_class(expr);
            created.extend(ev.take_created());
            let ce = outcome?;
            let iri = ce.as_named().expect("owlclass yields a named class").clone();
            env.bind_hidden(name, crate::model::Entity::class(iri), &expr.location)?;
            bound.push(name.to_string());
        }
        eval_assertion(env, cache, body)
    })();

    for name in &bound {
        env.unbind(name);
    }
    for entity in &created {
        env.ontology.remove_referencing(entity);
    }
    if env.ontology.len() != before_len {
        let keep: HashSet<Axiom> = env.ontology.axioms().take(before_len).cloned().collect();
        let extra: Vec<Axiom> = env
            .ontology
            .axioms()
            .filter(|a| !keep.contains(*a))
            .cloned()
            .collect();
        for a in extra {
            env.ontology.remove(&a);
        }
    }
    if env.ontology.prefixes() != &before_prefixes {
        env.ontology.replace_prefixes(before_prefixes);
    }
    if let Some(t) = saved_taxonomy {
        cache.version = Some(env.ontology.version());
        cache.taxonomy = Some(t);
    }
    result
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub test: String,
    /// 1-based index of the failing `is` form.
    pub assertion: usize,
    pub location: Location,
    /// Set when the assertion could not be evaluated.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TestReport {
    pub tests: usize,
    pub assertions: usize,
    pub failures: Vec<Failure>,
    /// Test names in run order, with whether each passed.
    pub outcomes: Vec<(String, bool)>,
}

impl TestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// TAP-style lines: `ok 1 Name` or `not ok 2 Name (assertion 2 at file:line)`.
    pub fn tap(&self) -> String {
        let mut out = format!("1..{}\n", self.tests);
        for (i, (name, ok)) in self.outcomes.iter().enumerate() {
            if *ok {
                let _ = writeln!(out, "ok {} {name}", i + 1);
                continue;
            }
            let f = self
                .failures
                .iter()
                .find(|f| &f.test == name)
                .expect("failed tests have a failure");
            let _ = write!(
                out,
                "not ok {} {name} (assertion {} at {}:{})",
                i + 1,
                f.assertion,
                f.location.file,
                f.location.line
            );
            if let Some(e) = &f.error {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Run every test of the namespace in source order.
pub fn run_tests(env: &mut Environment) -> TestReport {
    let tests = env.tests().to_vec();
    let mut cache = TaxonomyCache::new();
    let mut report = TestReport::default();
    for test in tests {
        report.tests += 1;
        let mut ok = true;
        for (i, assertion) in test.assertions.iter().enumerate() {
            report.assertions += 1;
            let (passed, error) = match eval_assertion(env, &mut cache, assertion) {
                Ok(b) => (b, None),
                Err(e) => (false, Some(e.to_string())),
            };
            if !passed {
                ok = false;
                report.failures.push(Failure {
                    test: test.name.clone(),
                    assertion: i + 1,
                    location: assertion.location.clone(),
                    error,
                });
            }
        }
        report.outcomes.push((test.name.clone(), ok));
    }
    report
}
