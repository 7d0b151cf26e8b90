use std::collections::HashMap;
use std::fmt;

use crate::model::{Axiom, ClassExpression, Iri};

/// An operand of a normal axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Thing,
    Nothing,
    Named(Iri),
    /// Auxiliary class `_aux<N>` introduced by normalization.
    Aux(usize),
}

impl Atom {
    fn from_expression(ce: &ClassExpression) -> Option<Atom> {
        match ce {
            ClassExpression::Thing => Some(Atom::Thing),
            ClassExpression::Nothing => Some(Atom::Nothing),
            ClassExpression::Class(iri) => Some(Atom::Named(iri.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Thing => f.write_str("owl:Thing"),
            Atom::Nothing => f.write_str("owl:Nothing"),
            Atom::Named(iri) => f.write_str(iri.fragment()),
            Atom::Aux(n) => write!(f, "_aux{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalAxiom {
    /// A ⊑ B
    Sub(Atom, Atom),
    /// A1 ⊓ A2 ⊑ B
    Conj(Atom, Atom, Atom),
    /// A ⊑ ∃r.B
    Exists { sub: Atom, role: Iri, filler: Atom },
    /// ∃r.A ⊑ B
    ExistsLeft { role: Iri, filler: Atom, sup: Atom },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub axiom: Axiom,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct Normalized {
    pub axioms: Vec<NormalAxiom>,
    /// Told role inclusions `sub ⊑ sup`.
    pub role_inclusions: Vec<(Iri, Iri)>,
    pub skipped: Vec<Skipped>,
    pub aux_count: usize,
}

fn left_ok(ce: &ClassExpression) -> bool {
    match ce {
        ClassExpression::Thing | ClassExpression::Nothing | ClassExpression::Class(_) => true,
        ClassExpression::And(ops) | ClassExpression::Or(ops) => ops.iter().all(left_ok),
        ClassExpression::Some { filler, .. } => left_ok(filler),
        ClassExpression::Not(_) | ClassExpression::Only { .. } => false,
    }
}

fn right_ok(ce: &ClassExpression) -> bool {
    match ce {
        ClassExpression::Thing | ClassExpression::Nothing | ClassExpression::Class(_) => true,
        ClassExpression::And(ops) => ops.iter().all(right_ok),
        ClassExpression::Some { filler, .. } => right_ok(filler),
        _ => false,
    }
}

fn describe(ce: &ClassExpression) -> &'static str {
    match ce {
        ClassExpression::Not(_) => "complement",
        ClassExpression::Only { .. } => "universal restriction",
        ClassExpression::Or(_) => "union on the right",
        ClassExpression::And(ops) => ops.iter().find(|o| !right_ok(o)).map_or("", describe),
        ClassExpression::Some { filler, .. } => describe(filler),
        _ => "",
    }
}

fn first_left_problem(ce: &ClassExpression) -> &'static str {
    match ce {
        ClassExpression::Not(_) => "complement",
        ClassExpression::Only { .. } => "universal restriction",
        ClassExpression::And(ops) | ClassExpression::Or(ops) => {
            ops.iter().find(|o| !left_ok(o)).map_or("", first_left_problem)
        }
        ClassExpression::Some { filler, .. } => first_left_problem(filler),
        _ => "",
    }
}

struct Normalizer {
    out: Normalized,
    left_aux: HashMap<ClassExpression, Atom>,
    right_aux: HashMap<ClassExpression, Atom>,
    current: Option<Axiom>,
}

impl Normalizer {
    fn fresh(&mut self) -> Atom {
        self.out.aux_count += 1;
        Atom::Aux(self.out.aux_count)
    }

    fn emit(&mut self, axiom: NormalAxiom) {
        if let NormalAxiom::Sub(a, b) = &axiom {
            if a == b || *a == Atom::Nothing || *b == Atom::Thing {
                return;
            }
        }
        self.out.axioms.push(axiom);
    }

    fn skip(&mut self, reason: String) {
        let axiom = self.current.clone().expect("inside an axiom");
        if !self.out.skipped.iter().any(|s| s.axiom == axiom && s.reason == reason) {
            self.out.skipped.push(Skipped { axiom, reason });
        }
    }

    /// An atom standing for `ce` in a left-hand position: `ce ⊑ atom`.
    fn left_atom(&mut self, ce: &ClassExpression) -> Atom {
        if let Some(a) = Atom::from_expression(ce) {
            return a;
        }
        if let Some(a) = self.left_aux.get(ce) {
            return a.clone();
        }
        let aux = self.fresh();
        self.left_aux.insert(ce.clone(), aux.clone());
        self.left(ce, aux.clone());
        aux
    }

    /// An atom standing for `ce` in a right-hand position: `atom ⊑ ce`.
    fn right_atom(&mut self, ce: &ClassExpression) -> Atom {
        if let Some(a) = Atom::from_expression(ce) {
            return a;
        }
        if let Some(a) = self.right_aux.get(ce) {
            return a.clone();
        }
        let aux = self.fresh();
        self.right_aux.insert(ce.clone(), aux.clone());
        self.right(aux.clone(), ce);
        aux
    }

    /// `ce ⊑ sup` where `ce` passes [`left_ok`].
    fn left(&mut self, ce: &ClassExpression, sup: Atom) {
        match ce {
            ClassExpression::Or(ops) => {
                for op in ops {
                    self.left(op, sup.clone());
                }
            }
            ClassExpression::And(ops) => {
                let mut atoms: Vec<Atom> = Vec::new();
                for op in ops {
                    let a = self.left_atom(op);
                    if a != Atom::Thing && !atoms.contains(&a) {
                        atoms.push(a);
                    }
                }
                match atoms.len() {
                    0 => self.emit(NormalAxiom::Sub(Atom::Thing, sup)),
                    1 => self.emit(NormalAxiom::Sub(atoms.pop().unwrap(), sup)),
                    n => {
                        let mut acc = atoms[0].clone();
                        for (i, a) in atoms.iter().enumerate().skip(1) {
                            let target = if i + 1 == n { sup.clone() } else { self.fresh() };
                            self.emit(NormalAxiom::Conj(acc, a.clone(), target.clone()));
                            acc = target;
                        }
                    }
                }
            }
            ClassExpression::Some { property, filler } => {
                let filler = self.left_atom(filler);
                self.emit(NormalAxiom::ExistsLeft {
                    role: property.clone(),
                    filler,
                    sup,
                });
            }
            _ => {
                let a = Atom::from_expression(ce).expect("left_ok");
                self.emit(NormalAxiom::Sub(a, sup));
            }
        }
    }

    /// `sub ⊑ ce` where `ce` passes [`right_ok`].
    fn right(&mut self, sub: Atom, ce: &ClassExpression) {
        match ce {
            ClassExpression::And(ops) => {
                for op in ops {
                    self.right(sub.clone(), op);
                }
            }
            ClassExpression::Some { property, filler } => {
                let filler = self.right_atom(filler);
                self.emit(NormalAxiom::Exists {
                    sub,
                    role: property.clone(),
                    filler,
                });
            }
            _ => {
                let a = Atom::from_expression(ce).expect("right_ok");
                self.emit(NormalAxiom::Sub(sub, a));
            }
        }
    }

    fn subclass(&mut self, sub: &ClassExpression, sup: &ClassExpression) {
        if !left_ok(sub) {
            self.skip(format!("{} on the left", first_left_problem(sub)));
            return;
        }
        let conjuncts: Vec<&ClassExpression> = match sup {
            ClassExpression::And(ops) => ops.iter().collect(),
            other => vec![other],
        };
        let (good, bad): (Vec<_>, Vec<_>) = conjuncts.into_iter().partition(|c| right_ok(c));
        for c in bad {
            self.skip(describe(c).to_string());
        }
        if good.is_empty() {
            return;
        }
        match (Atom::from_expression(sub), good.as_slice()) {
            (_, [single]) if single.is_atomic() => {
                let sup = Atom::from_expression(single).unwrap();
                self.left(sub, sup);
            }
            (Some(a), _) => {
                for c in good {
                    self.right(a.clone(), c);
                }
            }
            (None, _) => {
                let a = self.left_atom(sub);
                for c in good {
                    self.right(a.clone(), c);
                }
            }
        }
    }

    fn axiom(&mut self, axiom: &Axiom) {
        self.current = Some(axiom.clone());
        match axiom {
            Axiom::SubClassOf { sub, sup } => self.subclass(sub, sup),
            Axiom::EquivalentClasses(members) => {
                for (i, a) in members.iter().enumerate() {
                    for (j, b) in members.iter().enumerate() {
                        if i != j {
                            self.subclass(a, b);
                        }
                    }
                }
            }
            Axiom::DisjointClasses(members) => {
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        self.emit(NormalAxiom::Conj(
                            Atom::Named(a.clone()),
                            Atom::Named(b.clone()),
                            Atom::Nothing,
                        ));
                    }
                }
            }
            Axiom::SubObjectPropertyOf { sub, sup } => {
                self.out.role_inclusions.push((sub.clone(), sup.clone()));
            }
            Axiom::ObjectPropertyDomain { .. } => self.skip("property domain".into()),
            Axiom::ObjectPropertyRange { .. } => self.skip("property range".into()),
            Axiom::FunctionalObjectProperty(_) => self.skip("functional property".into()),
            Axiom::TransitiveObjectProperty(_) => self.skip("transitive property".into()),
            Axiom::Declaration(_) | Axiom::Import(_) | Axiom::AnnotationAssertion { .. } => {}
        }
        self.current = None;
    }
}

/// Rewrite axioms into normal form. Axioms or parts of axioms outside the
/// EL fragment are reported in `skipped`; unions on the left are split per
/// disjunct.
pub fn normalize<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Normalized {
    let mut n = Normalizer {
        out: Normalized::default(),
        left_aux: HashMap::new(),
        right_aux: HashMap::new(),
        current: None,
    };
    for axiom in axioms {
        n.axiom(axiom);
    }
    n.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> ClassExpression {
        ClassExpression::named(Iri::new(format!("http://x/p#{n}")).unwrap())
    }

    fn a(n: &str) -> Atom {
        Atom::Named(Iri::new(format!("http://x/p#{n}")).unwrap())
    }

    fn r() -> Iri {
        Iri::new("http://x/p#hasTopping").unwrap()
    }

    #[test]
    fn cheesy_pizza_gives_four() {
        // Hand normalization:
        //   CheesyPizza ⊑ Pizza, CheesyPizza ⊑ ∃r.CheeseTopping,
        //   ∃r.CheeseTopping ⊑ X, Pizza ⊓ X ⊑ CheesyPizza
        let ax = Axiom::EquivalentClasses(vec![
            c("CheesyPizza"),
            ClassExpression::And(vec![c("Pizza"), ClassExpression::some(r(), c("CheeseTopping"))]),
        ]);
        let n = normalize([&ax]);
        assert_eq!(n.axioms.len(), 4);
        assert_eq!(n.aux_count, 1);
        assert!(n.skipped.is_empty());
        assert!(n.axioms.contains(&NormalAxiom::Sub(a("CheesyPizza"), a("Pizza"))));
        assert!(n.axioms.contains(&NormalAxiom::Exists {
            sub: a("CheesyPizza"),
            role: r(),
            filler: a("CheeseTopping")
        }));
        assert!(n.axioms.contains(&NormalAxiom::ExistsLeft {
            role: r(),
            filler: a("CheeseTopping"),
            sup: Atom::Aux(1)
        }));
        assert!(n.axioms.contains(&NormalAxiom::Conj(a("Pizza"), Atom::Aux(1), a("CheesyPizza"))));
    }

    #[test]
    fn already_normal() {
        let ax = Axiom::sub_class_of(c("A"), c("B"));
        assert_eq!(normalize([&ax]).axioms, vec![NormalAxiom::Sub(a("A"), a("B"))]);
    }

    #[test]
    fn covering_keeps_left_union() {
        let ax = Axiom::EquivalentClasses(vec![
            c("P"),
            ClassExpression::Or(vec![c("V1"), c("V2"), c("V3")]),
        ]);
        let n = normalize([&ax]);
        assert_eq!(
            n.axioms,
            vec![
                NormalAxiom::Sub(a("V1"), a("P")),
                NormalAxiom::Sub(a("V2"), a("P")),
                NormalAxiom::Sub(a("V3"), a("P")),
            ]
        );
        assert_eq!(n.skipped.len(), 1);
        assert!(n.skipped[0].reason.contains("union"));
    }

    #[test]
    fn disjointness_is_pairwise() {
        let iris: Vec<Iri> = ["A", "B", "C"]
            .iter()
            .map(|n| Iri::new(format!("http://x/p#{n}")).unwrap())
            .collect();
        let n = normalize([&Axiom::DisjointClasses(iris)]);
        assert_eq!(n.axioms.len(), 3);
        assert!(n.axioms.iter().all(|x| matches!(x, NormalAxiom::Conj(_, _, Atom::Nothing))));
    }

    #[test]
    fn non_el_conjunct_is_dropped_rest_kept() {
        let ax = Axiom::sub_class_of(
            c("A"),
            ClassExpression::And(vec![c("B"), ClassExpression::only(r(), c("C"))]),
        );
        let n = normalize([&ax]);
        assert_eq!(n.axioms, vec![NormalAxiom::Sub(a("A"), a("B"))]);
        assert_eq!(n.skipped.len(), 1);
        let neg = Axiom::sub_class_of(ClassExpression::not(c("A")), c("B"));
        assert!(normalize([&neg]).axioms.is_empty());
    }

    #[test]
    fn property_characteristics_are_skipped() {
        let p = r();
        let n = normalize([
            &Axiom::FunctionalObjectProperty(p.clone()),
            &Axiom::TransitiveObjectProperty(p.clone()),
            &Axiom::ObjectPropertyRange { property: p, range: c("A") },
        ]);
        assert!(n.axioms.is_empty());
        assert_eq!(n.skipped.len(), 3);
    }

    #[test]
    fn nested_conjunction_chain() {
        let ax = Axiom::sub_class_of(ClassExpression::And(vec![c("A"), c("B"), c("C")]), c("D"));
        let n = normalize([&ax]);
        assert_eq!(
            n.axioms,
            vec![
                NormalAxiom::Conj(a("A"), a("B"), Atom::Aux(1)),
                NormalAxiom::Conj(Atom::Aux(1), a("C"), a("D")),
            ]
        );
    }
}
