use std::collections::{HashMap, HashSet, VecDeque};

use super::normalize::{Atom, NormalAxiom, Normalized};
use crate::model::Iri;

pub(crate) const THING: usize = 0;
pub(crate) const NOTHING: usize = 1;

/// Saturated subsumer sets over dense concept indices.
pub(crate) struct Closure {
    pub atoms: Vec<Atom>,
    pub subsumers: Vec<HashSet<usize>>,
    pub roles: Vec<Iri>,
    /// `edges[r]` holds `(a, b)` with `a ⊑ ∃r.b` derived.
    pub edges: Vec<HashSet<(usize, usize)>>,
}

struct Index {
    told: Vec<Vec<usize>>,
    conj: Vec<Vec<(usize, usize)>>,
    exists: Vec<Vec<(usize, usize)>>,
    exists_left: HashMap<(usize, usize), Vec<usize>>,
    super_roles: Vec<Vec<usize>>,
}

fn intern(atom: &Atom, atoms: &mut Vec<Atom>, index: &mut HashMap<Atom, usize>) -> usize {
    if let Some(&i) = index.get(atom) {
        return i;
    }
    atoms.push(atom.clone());
    index.insert(atom.clone(), atoms.len() - 1);
    atoms.len() - 1
}

fn role_index(role: &Iri, roles: &mut Vec<Iri>, index: &mut HashMap<Iri, usize>) -> usize {
    if let Some(&i) = index.get(role) {
        return i;
    }
    roles.push(role.clone());
    index.insert(role.clone(), roles.len() - 1);
    roles.len() - 1
}

/// Reflexive-transitive closure of told role inclusions.
fn role_closure(n: usize, told: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut direct = vec![Vec::new(); n];
    for &(sub, sup) in told {
        direct[sub].push(sup);
    }
    (0..n)
        .map(|r| {
            let mut seen = vec![false; n];
            let mut stack = vec![r];
            let mut out = Vec::new();
            while let Some(x) = stack.pop() {
                if std::mem::replace(&mut seen[x], true) {
                    continue;
                }
                out.push(x);
                stack.extend(direct[x].iter().copied());
            }
            out.sort_unstable();
            out
        })
        .collect()
}

enum Work {
    Subsumer(usize, usize),
    Edge(usize, usize, usize),
}

/// Apply the completion rules to a fixpoint. `extra` names classes that
/// should get subsumer sets even if no axiom mentions them.
pub(crate) fn saturate(normal: &Normalized, extra: impl IntoIterator<Item = Atom>) -> Closure {
    let mut atoms = Vec::new();
    let mut index = HashMap::new();
    intern(&Atom::Thing, &mut atoms, &mut index);
    intern(&Atom::Nothing, &mut atoms, &mut index);
    for a in extra {
        intern(&a, &mut atoms, &mut index);
    }
    let mut roles = Vec::new();
    let mut role_idx = HashMap::new();

    let mut told_pairs = Vec::new();
    let mut conj_triples = Vec::new();
    let mut exists_triples = Vec::new();
    let mut exists_left_triples = Vec::new();
    for ax in &normal.axioms {
        match ax {
            NormalAxiom::Sub(a, b) => {
                let a = intern(a, &mut atoms, &mut index);
                let b = intern(b, &mut atoms, &mut index);
                told_pairs.push((a, b));
            }
            NormalAxiom::Conj(a, b, c) => {
                let a = intern(a, &mut atoms, &mut index);
                let b = intern(b, &mut atoms, &mut index);
                let c = intern(c, &mut atoms, &mut index);
                conj_triples.push((a, b, c));
            }
            NormalAxiom::Exists { sub, role, filler } => {
                let a = intern(sub, &mut atoms, &mut index);
                let r = role_index(role, &mut roles, &mut role_idx);
                let b = intern(filler, &mut atoms, &mut index);
                exists_triples.push((a, r, b));
            }
            NormalAxiom::ExistsLeft { role, filler, sup } => {
                let r = role_index(role, &mut roles, &mut role_idx);
                let a = intern(filler, &mut atoms, &mut index);
                let b = intern(sup, &mut atoms, &mut index);
                exists_left_triples.push((r, a, b));
            }
        }
    }
    let mut told_roles = Vec::new();
    for (sub, sup) in &normal.role_inclusions {
        let s = role_index(sub, &mut roles, &mut role_idx);
        let t = role_index(sup, &mut roles, &mut role_idx);
        told_roles.push((s, t));
    }

    let n = atoms.len();
    let mut idx = Index {
        told: vec![Vec::new(); n],
        conj: vec![Vec::new(); n],
        exists: vec![Vec::new(); n],
        exists_left: HashMap::new(),
        super_roles: role_closure(roles.len(), &told_roles),
    };
    for (a, b) in told_pairs {
        idx.told[a].push(b);
    }
    for (a, b, c) in conj_triples {
        idx.conj[a].push((b, c));
        if a != b {
            idx.conj[b].push((a, c));
        }
    }
    for (a, r, b) in exists_triples {
        idx.exists[a].push((r, b));
    }
    for (r, a, b) in exists_left_triples {
        idx.exists_left.entry((r, a)).or_default().push(b);
    }

    let mut subsumers: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let mut edges: Vec<HashSet<(usize, usize)>> = vec![HashSet::new(); roles.len()];
    // predecessors[b] = (a, r) with edge a -r-> b
    let mut predecessors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut queue = VecDeque::new();
    for c in 0..n {
        queue.push_back(Work::Subsumer(c, c));
        queue.push_back(Work::Subsumer(c, THING));
    }

    while let Some(work) = queue.pop_front() {
        match work {
            Work::Subsumer(c, d) => {
                if !subsumers[c].insert(d) {
                    continue;
                }
                for &e in &idx.told[d] {
                    queue.push_back(Work::Subsumer(c, e));
                }
                for &(other, e) in &idx.conj[d] {
                    if subsumers[c].contains(&other) {
                        queue.push_back(Work::Subsumer(c, e));
                    }
                }
                for &(r, b) in &idx.exists[d] {
                    queue.push_back(Work::Edge(c, r, b));
                }
                for &(a, r) in &predecessors[c] {
                    if d == NOTHING {
                        queue.push_back(Work::Subsumer(a, NOTHING));
                    }
                    for &s in &idx.super_roles[r] {
                        if let Some(es) = idx.exists_left.get(&(s, d)) {
                            for &e in es {
                                queue.push_back(Work::Subsumer(a, e));
                            }
                        }
                    }
                }
            }
            Work::Edge(a, r, b) => {
                if !edges[r].insert((a, b)) {
                    continue;
                }
                predecessors[b].push((a, r));
                if subsumers[b].contains(&NOTHING) {
                    queue.push_back(Work::Subsumer(a, NOTHING));
                }
                for &s in &idx.super_roles[r] {
                    for &d in &subsumers[b] {
                        if let Some(es) = idx.exists_left.get(&(s, d)) {
                            for &e in es {
                                queue.push_back(Work::Subsumer(a, e));
                            }
                        }
                    }
                }
            }
        }
    }

    Closure {
        atoms,
        subsumers,
        roles,
        edges,
    }
}
