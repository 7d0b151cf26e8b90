use std::path::PathBuf;

use ontoforge::importer::parse_functional;
use ontoforge::model::{AnnotationValue, Entity, Iri};
use ontoforge::reader::{Environment, Session};
use ontoforge::reasoner::classify;
use ontoforge::serializer::{render_functional, render_omn};
use ontoforge::testkit::run_tests;

fn samples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples")
}

fn load() -> Environment {
    let mut session = Session::new(samples());
    (*session.load("pizza").expect("sample compiles")).clone()
}

fn piz(name: &str) -> Iri {
    Iri::new(format!("http://www.ontoforge.org/ontologies/pizza#{name}")).unwrap()
}

#[test]
fn sample_renders_base_frames() {
    let env = load();
    let omn = render_omn(&env.ontology).unwrap();
    let frames = "\
Class: piz:ThinAndCrispyBase
    Annotations: 
        rdfs:label \"BaseFinaEQuebradica\"@pt
    SubClassOf: 
        piz:PizzaBase
    DisjointWith: 
        piz:DeepPanBase

Class: piz:DeepPanBase
    Annotations: 
        rdfs:label \"BaseEspessa\"@pt
    SubClassOf: 
        piz:PizzaBase
    DisjointWith: 
        piz:ThinAndCrispyBase
";
    assert!(omn.contains(&format!("\n{frames}\n")), "{omn}");
}

#[test]
fn sample_suite_passes() {
    let mut env = load();
    let report = run_tests(&mut env);
    assert_eq!((report.tests, report.assertions), (2, 5));
    assert!(report.failures.is_empty(), "{}", report.tap());
}

#[test]
fn sample_inferences() {
    let env = load();
    let axioms: Vec<_> = env.closure_axioms().collect();
    let t = classify(axioms.iter().copied());
    assert!(t.is_coherent(), "{:?}", t.unsatisfiable());
    assert!(t.is_superclass(&piz("MargheritaPizza"), &piz("CheesyPizza"), false).unwrap());
    assert!(t.is_superclass(&piz("CajunPizza"), &piz("NonVegetarianPizza"), false).unwrap());
    assert!(!t.is_superclass(&piz("MargheritaPizza"), &piz("NonVegetarianPizza"), false).unwrap());
    assert!(!t.skipped().is_empty());
}

#[test]
fn italian_labels_loaded() {
    let env = load();
    let label = Iri::rdfs_label();
    let anchovies = piz("AnchoviesTopping");
    let values: Vec<_> = env.ontology.annotations(&anchovies, &label).cloned().collect();
    assert!(values.contains(&AnnotationValue::new("Acciughe Ingredienti", Some("it"))));
    assert!(env
        .diagnostics()
        .iter()
        .any(|d| d.message.contains("no \"it\" label")));
}

#[test]
fn pizza_references_include_cheesy_definition() {
    let env = load();
    let pizza = Entity::class(piz("Pizza"));
    let found = env.ontology.axioms_referencing(&pizza);
    let brute: Vec<_> = env
        .ontology
        .axioms()
        .filter(|a| a.signature().contains(&pizza) || matches!(a, ontoforge::model::Axiom::AnnotationAssertion { subject, .. } if subject == &pizza.iri))
        .cloned()
        .collect();
    assert_eq!(found, brute);
    assert!(found
        .iter()
        .any(|a| matches!(a, ontoforge::model::Axiom::EquivalentClasses(m) if m[0].as_named() == Some(&piz("CheesyPizza")))));
}

#[test]
fn sample_round_trips() {
    let env = load();
    let text = render_functional(&env.ontology);
    let back = parse_functional(&text).unwrap();
    assert_eq!(back, env.ontology);
    assert_eq!(render_functional(&back), text);
}
