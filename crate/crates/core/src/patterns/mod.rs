//! Abstractions above plain OWL: subclass blocks, affixes, value partitions
//! and user templates. Everything here is a pure function from inputs to
//! axioms or forms; the evaluator decides when to apply them.

mod affix;
mod partition;
mod template;

pub use affix::{affix_forms, AffixPosition};
pub use partition::{value_partition, PartitionExpansion};
pub use template::TemplateDef;

use thiserror::Error;

use crate::model::{Axiom, ClassExpression, Iri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("subclass block for {0} has no child classes")]
    EmptyBlock(String),
    #[error("value partition needs at least 2 values, found {0}")]
    PatternArity(usize),
    #[error("`{0}` is already bound")]
    DuplicateBinding(String),
    #[error("template error: {0}")]
    Template(String),
    #[error("template `{template}` expects {expected} arguments, found {found}")]
    TemplateArity {
        template: String,
        expected: String,
        found: usize,
    },
}

/// Axioms placing `children` under `parent`: one SubClassOf each, one n-ary
/// DisjointClasses when `disjoint` and there are at least two children, and
/// a covering EquivalentClasses(parent, union of children) when `cover`.
pub fn subclass_block(
    parent: &Iri,
    children: &[Iri],
    disjoint: bool,
    cover: bool,
) -> Result<Vec<Axiom>, PatternError> {
    if children.is_empty() {
        return Err(PatternError::EmptyBlock(parent.fragment().to_string()));
    }
    let parent_ce = ClassExpression::named(parent.clone());
    let mut axioms: Vec<Axiom> = children
        .iter()
        .map(|c| Axiom::sub_class_of(ClassExpression::named(c.clone()), parent_ce.clone()))
        .collect();
    if disjoint && children.len() >= 2 {
        let members = dedup(children);
        if members.len() >= 2 {
            axioms.push(Axiom::DisjointClasses(members));
        }
    }
    if cover {
        let union = ClassExpression::or(
            children.iter().cloned().map(ClassExpression::named).collect(),
        )
        .expect("non-empty");
        axioms.push(Axiom::EquivalentClasses(vec![parent_ce, union]));
    }
    Ok(axioms)
}

/// Disjoint subclasses, optionally covering the parent.
pub fn expand_disjoint_subclasses(
    parent: &Iri,
    children: &[Iri],
    cover: bool,
) -> Result<Vec<Axiom>, PatternError> {
    subclass_block(parent, children, true, cover)
}

fn dedup(items: &[Iri]) -> Vec<Iri> {
    let mut out: Vec<Iri> = Vec::with_capacity(items.len());
    for i in items {
        if !out.contains(i) {
            out.push(i.clone());
        }
    }
    out
}
