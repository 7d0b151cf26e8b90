#[path = "support/random_el.rs"]
mod random_el;

use std::collections::BTreeSet;

use ontoforge::importer::parse_functional;
use ontoforge::model::Axiom;
use ontoforge::serializer::{render_functional, render_omn};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use random_el::Shape;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn functional_round_trip(seed in any::<u64>()) {
        let original = random_el::ontology(&mut StdRng::seed_from_u64(seed), &Shape::default());
        let text = render_functional(&original);
        let parsed = parse_functional(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        let a: BTreeSet<&Axiom> = original.axioms().collect();
        let b: BTreeSet<&Axiom> = parsed.axioms().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(parsed.iri(), original.iri());
        prop_assert_eq!(parsed.prefixes(), original.prefixes());
        prop_assert_eq!(render_functional(&parsed), text);
    }

    #[test]
    fn manchester_covers_every_entity(seed in any::<u64>()) {
        let o = random_el::ontology(&mut StdRng::seed_from_u64(seed), &Shape::default());
        let omn = render_omn(&o).unwrap();
        prop_assert!(omn.starts_with("Prefix: "));
        for e in o.entities() {
            let frame = format!("{}: rnd:{}\n", e.kind.keyword(), e.iri.fragment());
            prop_assert!(omn.contains(&frame), "missing {}", frame);
        }
        prop_assert_eq!(render_omn(&o).unwrap(), omn);
    }
}
