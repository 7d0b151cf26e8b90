#[path = "support/probes.rs"]
mod probes;

use std::path::PathBuf;

use ontoforge::reader::{read_forms, Environment, Session};
use ontoforge::serializer::render_functional;
use ontoforge::testkit::{eval_assertion, run_tests, TaxonomyCache};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn pizza() -> Environment {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples");
    (*Session::new(root).load("pizza").unwrap()).clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn probe_blocks_leave_no_trace(seed in any::<u64>()) {
        let mut env = pizza();
        let before = render_functional(&env.ontology);
        let bindings = env.bindings().clone();
        let mut cache = TaxonomyCache::new();
        let mut rng = StdRng::seed_from_u64(seed);
        let text = probes::block(&mut rng, &[], 2, &mut 0);
        let forms = read_forms(&text, "probe").unwrap();
        let _ = eval_assertion(&mut env, &mut cache, &forms[0]);
        prop_assert_eq!(render_functional(&env.ontology), before, "{}", text);
        prop_assert_eq!(env.bindings(), &bindings);
    }
}

#[test]
fn probes_reuse_the_cached_taxonomy_afterwards() {
    let mut env = pizza();
    let mut cache = TaxonomyCache::new();
    let check = read_forms("(isuperclass? CajunPizza NamedPizza)", "t").unwrap();
    assert!(eval_assertion(&mut env, &mut cache, &check[0]).unwrap());
    assert_eq!(cache.computations(), 1);
    let probe = read_forms(
        "(with-probe-entities [c (owlclass \"probe\" :subclass VegetarianPizza CajunPizza)] (coherent?))",
        "t",
    )
    .unwrap();
    assert!(!eval_assertion(&mut env, &mut cache, &probe[0]).unwrap());
    assert_eq!(cache.computations(), 2);
    assert!(eval_assertion(&mut env, &mut cache, &check[0]).unwrap());
    assert_eq!(cache.computations(), 2);
}

#[test]
fn sample_report_in_tap() {
    let mut env = pizza();
    let report = run_tests(&mut env);
    assert_eq!(report.tap(), "1..2\nok 1 CheesyShort\nok 2 VegetarianPizza\n");
}

#[test]
fn failing_tests_name_the_assertion() {
    let root = tempfile::tempdir().unwrap();
    std::fs::write(
        root.path().join("t.ont"),
        "(defontology t :iri \"http://example.org/t#\")\n\
         (defclass A)\n(defclass B :subclass A)\n\
         (deftest Good (is (isuperclass? B A)))\n\
         (deftest Bad\n  (is (isuperclass? B A))\n  (is (isuperclass? A B)))\n",
    )
    .unwrap();
    let mut env = (*Session::new(root.path()).load("t").unwrap()).clone();
    let report = run_tests(&mut env);
    assert_eq!((report.tests, report.assertions), (2, 3));
    assert_eq!(report.failures.len(), 1);
    let f = &report.failures[0];
    assert_eq!((f.test.as_str(), f.assertion), ("Bad", 2));
    assert_eq!(f.location.line, 7);
    let tap = report.tap();
    assert!(tap.starts_with("1..2\nok 1 Good\nnot ok 2 Bad (assertion 2 at "), "{tap}");
}
