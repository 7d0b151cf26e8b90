//! Brute-force EL⊥ subsumption, used to cross-check the reasoner.
//!
//! Works on the original class expressions: every subexpression is a node
//! and the completion rules are re-applied to all nodes until nothing
//! changes. Slow, but small enough to trust.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ontoforge::model::{Axiom, ClassExpression, Iri};

type Ce = ClassExpression;

pub struct Oracle {
    subsumers: BTreeMap<Ce, BTreeSet<Ce>>,
}

fn collect(ce: &Ce, out: &mut BTreeSet<Ce>) {
    out.insert(ce.clone());
    match ce {
        Ce::And(ops) => ops.iter().for_each(|o| collect(o, out)),
        Ce::Some { filler, .. } => collect(filler, out),
        Ce::Thing | Ce::Nothing | Ce::Class(_) => {}
        other => panic!("oracle only handles EL expressions, got {other:?}"),
    }
}

fn role_closure(inclusions: &[(Iri, Iri)], r: &Iri) -> BTreeSet<Iri> {
    let mut seen = BTreeSet::from([r.clone()]);
    loop {
        let before = seen.len();
        for (a, b) in inclusions {
            if seen.contains(a) {
                seen.insert(b.clone());
            }
        }
        if seen.len() == before {
            return seen;
        }
    }
}

impl Oracle {
    /// Saturate `axioms`, which may only use named classes, top, bottom,
    /// intersection and existential restriction. `extra` adds query classes.
    pub fn new<'a>(axioms: impl IntoIterator<Item = &'a Axiom>, extra: &[Iri]) -> Oracle {
        let mut gcis: Vec<(Ce, Ce)> = Vec::new();
        let mut roles: Vec<(Iri, Iri)> = Vec::new();
        for ax in axioms {
            match ax {
                Axiom::SubClassOf { sub, sup } => gcis.push((sub.clone(), sup.clone())),
                Axiom::EquivalentClasses(ms) => {
                    for a in ms {
                        for b in ms {
                            if a != b {
                                gcis.push((a.clone(), b.clone()));
                            }
                        }
                    }
                }
                Axiom::DisjointClasses(ms) => {
                    for (i, a) in ms.iter().enumerate() {
                        for b in &ms[i + 1..] {
                            let both = Ce::And(vec![Ce::named(a.clone()), Ce::named(b.clone())]);
                            gcis.push((both, Ce::Nothing));
                        }
                    }
                }
                Axiom::SubObjectPropertyOf { sub, sup } => roles.push((sub.clone(), sup.clone())),
                Axiom::Declaration(_) | Axiom::AnnotationAssertion { .. } | Axiom::Import(_) => {}
                other => panic!("oracle does not handle {other:?}"),
            }
        }

        let mut nodes = BTreeSet::from([Ce::Thing, Ce::Nothing]);
        for (a, b) in &gcis {
            collect(a, &mut nodes);
            collect(b, &mut nodes);
        }
        for iri in extra {
            nodes.insert(Ce::named(iri.clone()));
        }
        let nodes: Vec<Ce> = nodes.into_iter().collect();

        let mut s: BTreeMap<Ce, BTreeSet<Ce>> = nodes
            .iter()
            .map(|n| (n.clone(), BTreeSet::from([n.clone(), Ce::Thing])))
            .collect();

        loop {
            let mut changed = false;
            for x in &nodes {
                let mut add: Vec<Ce> = Vec::new();
                let current = &s[x];
                for (sub, sup) in &gcis {
                    if current.contains(sub) {
                        add.push(sup.clone());
                    }
                }
                for c in current {
                    if let Ce::And(ops) = c {
                        add.extend(ops.iter().cloned());
                    }
                }
                for n in &nodes {
                    match n {
                        Ce::And(ops) if ops.iter().all(|o| current.contains(o)) => add.push(n.clone()),
                        _ => {}
                    }
                }
                for c in current {
                    if let Ce::Some { property, filler } = c {
                        let succ = &s[filler.as_ref()];
                        if succ.contains(&Ce::Nothing) {
                            add.push(Ce::Nothing);
                        }
                        let supers = role_closure(&roles, property);
                        for n in &nodes {
                            if let Ce::Some { property: p2, filler: f2 } = n {
                                if supers.contains(p2) && succ.contains(f2.as_ref()) {
                                    add.push(n.clone());
                                }
                            }
                        }
                    }
                }
                let entry = s.get_mut(x).unwrap();
                for a in add {
                    changed |= entry.insert(a);
                }
            }
            if !changed {
                break;
            }
        }
        Oracle { subsumers: s }
    }

    pub fn unsatisfiable(&self, class: &Iri) -> bool {
        self.subsumers[&Ce::named(class.clone())].contains(&Ce::Nothing)
    }

    /// `sub ⊑ sup` for named classes.
    pub fn subsumes(&self, sup: &Iri, sub: &Iri) -> bool {
        let s = &self.subsumers[&Ce::named(sub.clone())];
        s.contains(&Ce::Nothing) || s.contains(&Ce::named(sup.clone()))
    }

    /// Named subsumers of a node, with top and bottom, as the reasoner
    /// reports them.
    pub fn named_subsumers(&self, node: &Ce) -> BTreeSet<Ce> {
        self.subsumers[node]
            .iter()
            .filter(|c| matches!(c, Ce::Thing | Ce::Nothing | Ce::Class(_)))
            .cloned()
            .collect()
    }
}
