use std::fs;
use std::path::Path;

use ontoforge::model::{Axiom, ClassExpression, Entity, Iri};
use ontoforge::reader::{ReadError, Session};
use ontoforge::serializer::render_functional;
use ontoforge::{Location, Severity};
use tempfile::TempDir;

fn write(root: &Path, rel: &str, text: &str) {
    let path = root.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, text).unwrap();
}

fn tree(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (rel, text) in files {
        write(dir.path(), rel, text);
    }
    dir
}

const BASE: &str = r#"(defontology base :iri "http://example.org/base#" :prefix "b")
(defclass Animal)
(defclass Dog :subclass Animal)
"#;

const ZOO: &str = r#"(defontology zoo :iri "http://example.org/zoo#" :prefix "z")
(use shared.base :as b)
(defclass Kennel)
(defclass GuideDog :subclass b/Dog)
"#;

#[test]
fn use_binds_qualified_names_and_imports() {
    let dir = tree(&[("shared/base.ont", BASE), ("zoo.ont", ZOO)]);
    let mut session = Session::new(dir.path());
    assert_eq!(session.discover(), vec!["shared.base".to_string(), "zoo".to_string()]);
    let env = session.load("zoo").unwrap();
    let base = Iri::new("http://example.org/base").unwrap();
    assert!(env.ontology.contains(&Axiom::Import(base)));
    let dog = env.lookup("b/Dog").unwrap().clone();
    assert_eq!(dog.iri.as_str(), "http://example.org/base#Dog");
    let guide = Iri::new("http://example.org/zoo#GuideDog").unwrap();
    assert!(env.ontology.contains(&Axiom::sub_class_of(
        ClassExpression::Class(guide),
        ClassExpression::Class(dog.iri)
    )));
    assert!(env.exported().all(|(n, _)| !n.contains('/')));
    assert_eq!(env.imports().len(), 1);
}

#[test]
fn namespaces_evaluate_once_per_session() {
    let other = r#"(defontology other :iri "http://example.org/other#")
(use shared.base)
(use zoo)
(defclass Thing2 :subclass shared.base/Animal)
"#;
    let dir = tree(&[("shared/base.ont", BASE), ("zoo.ont", ZOO), ("other.ont", other)]);
    let mut session = Session::new(dir.path());
    session.load("other").unwrap();
    session.load("zoo").unwrap();
    assert_eq!(session.evaluation_count("shared.base"), 1);
    assert_eq!(session.evaluation_count("zoo"), 1);
    assert_eq!(session.evaluation_count("other"), 1);
}

#[test]
fn cycles_are_reported_with_their_path() {
    let a = "(defontology a :iri \"http://example.org/a#\")\n(use b)\n";
    let b = "(defontology b :iri \"http://example.org/b#\")\n(use a)\n";
    let dir = tree(&[("a.ont", a), ("b.ont", b)]);
    match Session::new(dir.path()).load("a") {
        Err(ReadError::Cycle { cycle, location }) => {
            assert_eq!(cycle, vec!["a", "b", "a"]);
            assert_eq!(location.line, 2);
            assert!(location.file.ends_with("b.ont"));
        }
        other => panic!("expected a cycle, got {other:?}"),
    }
    let selfish = "(defontology s :iri \"http://example.org/s#\")\n(use s)\n";
    let dir = tree(&[("s.ont", selfish)]);
    assert!(matches!(Session::new(dir.path()).load("s"), Err(ReadError::Cycle { .. })));
}

#[test]
fn missing_namespace_is_an_io_problem() {
    let dir = tree(&[]);
    let err = Session::new(dir.path()).load("nowhere.here").unwrap_err();
    match &err {
        ReadError::NamespaceNotFound { path, .. } => assert!(path.ends_with("nowhere/here.ont")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn errors_carry_file_positions() {
    let bad = "(defontology bad :iri \"http://example.org/bad#\")\n\n(defclass A\n   :subclass Missing)\n";
    let dir = tree(&[("bad.ont", bad)]);
    let err = Session::new(dir.path()).load("bad").unwrap_err();
    let loc = err.location().unwrap();
    assert_eq!((loc.line, loc.column), (4, 14));
    let text = err.to_diagnostic().to_string();
    assert!(text.contains("bad.ont:4:14: error: unbound identifier `Missing`"), "{text}");
}

#[test]
fn first_form_must_define_the_ontology() {
    let dir = tree(&[("x.ont", "(defclass A)\n")]);
    let err = Session::new(dir.path()).load("x").unwrap_err();
    assert!(matches!(err, ReadError::MissingOntology { .. }));
}

const EXTERNAL_V1: &str = r#"Prefix(ext:=<http://ext.org/o#>)
Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)
Ontology(<http://ext.org/o>
Declaration(Class(ext:X0001))
Declaration(Class(ext:X0002))
Declaration(Class(ext:X0003))
AnnotationAssertion(rdfs:label ext:X0001 "fresh cheese"@en)
AnnotationAssertion(rdfs:label ext:X0002 "hard cheese")
AnnotationAssertion(rdfs:label ext:X0003 "blue mould")
SubClassOf(ext:X0002 ext:X0001)
)
"#;

fn importer_source(memo: bool) -> String {
    let memo = if memo { " :memo \"ext.memo\"" } else { "" };
    format!(
        "(defontology local :iri \"http://example.org/local#\")\n\
         (read-external \"ext.ofn\" :naming :label{memo})\n\
         (defclass Brie :subclass fresh_cheese)\n"
    )
}

#[test]
fn external_ontology_names_come_from_labels() {
    let dir = tree(&[("local.ont", &importer_source(false)), ("ext.ofn", EXTERNAL_V1)]);
    let env = Session::new(dir.path()).load("local").unwrap();
    let fresh = env.lookup("fresh_cheese").unwrap();
    assert_eq!(fresh.iri.as_str(), "http://ext.org/o#X0001");
    assert!(env.lookup("hard_cheese").is_some());
    let external = env.externals().get(&Iri::new("http://ext.org/o").unwrap()).unwrap();
    assert_eq!(external.bindings.len(), 3);
    assert!(render_functional(&env.ontology).contains("Import(<http://ext.org/o>)"));
}

#[test]
fn relabelled_entities_keep_working_through_deprecated_aliases() {
    let dir = tree(&[("local.ont", &importer_source(true)), ("ext.ofn", EXTERNAL_V1)]);
    let mut session = Session::new(dir.path());
    let env = session.load("local").unwrap();
    let ext = Iri::new("http://ext.org/o").unwrap();
    let table = ontoforge::importer::memorise_save(&env, &ext).unwrap();
    fs::write(dir.path().join("ext.memo"), table.to_text()).unwrap();

    let v2 = EXTERNAL_V1.replace("\"fresh cheese\"@en", "\"soft cheese\"@en");
    fs::write(dir.path().join("ext.ofn"), v2).unwrap();
    let mut env = (*Session::new(dir.path()).load("local").unwrap()).clone();
    assert_eq!(env.deprecated().len(), 1);
    let alias = &env.deprecated()["fresh_cheese"];
    assert_eq!(alias.replacement, "soft_cheese");

    let brie = Iri::new("http://example.org/local#Brie").unwrap();
    let x1 = Iri::new("http://ext.org/o#X0001").unwrap();
    assert!(env.ontology.contains(&Axiom::sub_class_of(
        ClassExpression::Class(brie),
        ClassExpression::Class(x1.clone())
    )));
    let warnings = |env: &ontoforge::reader::Environment| {
        env.diagnostics()
            .iter()
            .filter(|d| d.severity == Severity::Warning && d.message.contains("deprecated"))
            .count()
    };
    assert_eq!(warnings(&env), 1);
    let before = warnings(&env);
    let at = Location::new("probe", 1, 1);
    assert_eq!(env.resolve("fresh_cheese", &at).unwrap(), Entity::class(x1));
    assert_eq!(warnings(&env), before + 1);
    assert!(env.resolve("soft_cheese", &at).is_ok());
    assert_eq!(warnings(&env), before + 1);
}
