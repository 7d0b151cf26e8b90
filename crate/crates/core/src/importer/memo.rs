use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use super::ImportError;
use crate::model::{Entity, Iri};
use crate::reader::Environment;
use crate::Location;

/// A snapshot of identifier to IRI bindings for one external ontology.
///
/// Stored as text: a `#memo <source-iri>` header, then one
/// `identifier<TAB>iri` line per row, sorted by identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoTable {
    pub source: Iri,
    pub rows: Vec<(String, Iri)>,
}

impl MemoTable {
    pub fn to_text(&self) -> String {
        let mut out = format!("#memo {}\n", self.source);
        for (id, iri) in &self.rows {
            let _ = writeln!(out, "{id}\t{iri}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<MemoTable, ImportError> {
        let bad = |line: usize, message: &str| ImportError::MemoFormat {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate();
        let source = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix("#memo "))
            .ok_or_else(|| bad(1, "expected `#memo <iri>` header"))?;
        let source = Iri::new(source.trim()).map_err(|e| bad(1, &e.to_string()))?;
        let mut rows = Vec::new();
        let mut ids = HashSet::new();
        let mut iris = HashSet::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (id, iri) = line
                .split_once('\t')
                .ok_or_else(|| bad(i + 1, "expected identifier<TAB>iri"))?;
            let iri = Iri::new(iri.trim()).map_err(|e| bad(i + 1, &e.to_string()))?;
            if !ids.insert(id.to_string()) {
                return Err(bad(i + 1, "duplicate identifier"));
            }
            if !iris.insert(iri.clone()) {
                return Err(bad(i + 1, "duplicate IRI"));
            }
            rows.push((id.to_string(), iri));
        }
        rows.sort();
        Ok(MemoTable { source, rows })
    }
}

/// Snapshot the bindings created by interning `source`.
pub fn memorise_save(env: &Environment, source: &Iri) -> Result<MemoTable, ImportError> {
    let external = env
        .externals()
        .get(source)
        .ok_or_else(|| ImportError::UnknownSource(source.clone()))?;
    let rows = external
        .bindings
        .iter()
        .map(|(id, e)| (id.clone(), e.iri.clone()))
        .collect();
    Ok(MemoTable {
        source: source.clone(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeprecatedAlias {
    pub old: String,
    pub new: String,
    pub entity: Entity,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemoReport {
    pub stable: bool,
    pub deprecated: Vec<DeprecatedAlias>,
    pub vanished: Vec<Iri>,
}

/// Compare current bindings for `source` against a saved snapshot.
pub fn memorise_check(
    current: &BTreeMap<String, Entity>,
    saved: &MemoTable,
    source: &Iri,
) -> Result<MemoReport, ImportError> {
    if &saved.source != source {
        return Err(ImportError::WrongOntology {
            expected: source.clone(),
            found: saved.source.clone(),
        });
    }
    let by_iri: HashMap<&Iri, (&String, &Entity)> =
        current.iter().map(|(id, e)| (&e.iri, (id, e))).collect();
    let mut report = MemoReport::default();
    for (old, iri) in &saved.rows {
        match by_iri.get(iri) {
            Some((new, entity)) if *new != old => report.deprecated.push(DeprecatedAlias {
                old: old.clone(),
                new: (*new).clone(),
                entity: (*entity).clone(),
            }),
            Some(_) => {}
            None => report.vanished.push(iri.clone()),
        }
    }
    report.stable = report.deprecated.is_empty() && report.vanished.is_empty();
    Ok(report)
}

impl MemoReport {
    /// Install deprecated aliases so old identifiers keep resolving, and
    /// warn about vanished entities.
    pub fn install(&self, env: &mut Environment, at: Option<&Location>) {
        for alias in &self.deprecated {
            if env.is_bound(&alias.old) {
                env.warn(
                    at.cloned(),
                    format!(
                        "cannot keep deprecated `{}` for {:?}: the name is now bound elsewhere",
                        alias.old, alias.entity.iri
                    ),
                );
                continue;
            }
            env.deprecate(&alias.old, alias.entity.clone(), &alias.new);
        }
        for iri in &self.vanished {
            env.warn(at.cloned(), format!("{iri:?} no longer exists in the source ontology"));
        }
    }
}
