use super::PatternError;
use crate::model::{Axiom, ClassExpression, Entity, Iri, ModelError};

/// Everything a value partition contributes to an ontology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionExpansion {
    /// `(identifier, entity)` for the partition class, each value class and
    /// the `has<Partition>` property, in declaration order.
    pub bindings: Vec<(String, Entity)>,
    /// Declarations first, then the logical axioms.
    pub axioms: Vec<Axiom>,
}

/// Expand a value partition: the partition class, one disjoint subclass per
/// value, a covering axiom and a functional `has<Partition>` property whose
/// range is the partition.
pub fn value_partition(
    base: &Iri,
    partition: &str,
    values: &[String],
) -> Result<PartitionExpansion, PatternError> {
    if values.len() < 2 {
        return Err(PatternError::PatternArity(values.len()));
    }
    let mut names: Vec<&str> = vec![partition];
    for v in values {
        if names.contains(&v.as_str()) {
            return Err(PatternError::DuplicateBinding(v.clone()));
        }
        names.push(v);
    }
    let property_name = format!("has{partition}");
    let iri = |name: &str| {
        base.join(name)
            .map_err(|e: ModelError| PatternError::Template(e.to_string()))
    };

    let partition_iri = iri(partition)?;
    let value_iris = values.iter().map(|v| iri(v)).collect::<Result<Vec<_>, _>>()?;
    let property_iri = iri(&property_name)?;

    let mut bindings = vec![(partition.to_string(), Entity::class(partition_iri.clone()))];
    bindings.extend(
        values
            .iter()
            .zip(&value_iris)
            .map(|(v, i)| (v.clone(), Entity::class(i.clone()))),
    );
    bindings.push((property_name, Entity::object_property(property_iri.clone())));

    let mut axioms: Vec<Axiom> = bindings
        .iter()
        .map(|(_, e)| Axiom::Declaration(e.clone()))
        .collect();
    axioms.extend(super::subclass_block(&partition_iri, &value_iris, true, true)?);
    axioms.push(Axiom::FunctionalObjectProperty(property_iri.clone()));
    axioms.push(Axiom::ObjectPropertyRange {
        property: property_iri,
        range: ClassExpression::named(partition_iri),
    });
    Ok(PartitionExpansion { bindings, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EntityKind;

    fn base() -> Iri {
        Iri::new("http://x/p#").unwrap()
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn spiciness() {
        let exp = value_partition(&base(), "Spiciness", &strings(&["Mild", "Medium", "Hot"])).unwrap();
        let classes = exp
            .axioms
            .iter()
            .filter(|a| matches!(a, Axiom::Declaration(e) if e.kind == EntityKind::Class))
            .count();
        assert_eq!(classes, 4);
        let subs = exp.axioms.iter().filter(|a| matches!(a, Axiom::SubClassOf { .. })).count();
        assert_eq!(subs, 3);
        assert!(exp
            .axioms
            .iter()
            .any(|a| matches!(a, Axiom::DisjointClasses(m) if m.len() == 3)));
        assert!(exp.axioms.iter().any(
            |a| matches!(a, Axiom::EquivalentClasses(m) if matches!(&m[1], ClassExpression::Or(o) if o.len() == 3))
        ));
        let has = base().join("hasSpiciness").unwrap();
        assert!(exp.axioms.contains(&Axiom::FunctionalObjectProperty(has.clone())));
        assert!(exp.axioms.contains(&Axiom::ObjectPropertyRange {
            property: has,
            range: ClassExpression::Class(base().join("Spiciness").unwrap()),
        }));
        assert_eq!(exp.bindings.last().unwrap().0, "hasSpiciness");
    }

    #[test]
    fn two_values() {
        let exp = value_partition(&base(), "Size", &strings(&["Small", "Large"])).unwrap();
        assert!(exp
            .axioms
            .iter()
            .any(|a| matches!(a, Axiom::DisjointClasses(m) if m.len() == 2)));
    }

    #[test]
    fn arity_and_duplicates() {
        assert_eq!(
            value_partition(&base(), "S", &strings(&["One"])),
            Err(PatternError::PatternArity(1))
        );
        assert_eq!(
            value_partition(&base(), "S", &strings(&["A", "B", "A"])),
            Err(PatternError::DuplicateBinding("A".into()))
        );
    }
}
