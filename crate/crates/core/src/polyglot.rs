//! Multilingual labels kept in properties files, outside the source.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use thiserror::Error;

use crate::model::{AnnotationValue, Axiom, ModelError};
use crate::reader::Environment;
use crate::Location;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertiesError {
    #[error("key `{key}` on line {second} was already given on line {first}")]
    DuplicateKey {
        key: String,
        first: usize,
        second: usize,
    },
    #[error("line {line}: expected key=value")]
    MalformedLine { line: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertiesTable {
    pub entries: Vec<(String, String)>,
    pub source: Option<PathBuf>,
}

impl PropertiesTable {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Render back to properties text, escaping as needed.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{}={}", escape(k, true), escape(v, false));
        }
        out
    }
}

fn escape(text: &str, key: bool) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, c) in text.chars().enumerate() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '=' if key => out.push_str("\\="),
            '#' | '!' if key && i == 0 => {
                out.push('\\');
                out.push(c);
            }
            ' ' if !key && i == 0 => out.push_str("\\ "),
            _ => out.push(c),
        }
    }
    out
}

/// Split a line at the first unescaped `=`, unescaping both halves.
fn split_entry(line: &str) -> Option<(String, String)> {
    let mut key = String::new();
    let mut value = String::new();
    let mut in_value = false;
    let mut key_trailing = 0;
    let mut value_started = false;
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        let (ch, escaped) = if c == '\\' {
            match chars.next() {
                Some('n') => ('\n', true),
                Some('t') => ('\t', true),
                Some(other) => (other, true),
                None => break,
            }
        } else {
            (c, false)
        };
        if !in_value {
            if ch == '=' && !escaped {
                in_value = true;
                continue;
            }
            if ch.is_whitespace() && !escaped {
                if !key.is_empty() {
                    key.push(ch);
                    key_trailing += 1;
                }
            } else {
                key.push(ch);
                key_trailing = 0;
            }
        } else {
            if !value_started && ch.is_whitespace() && !escaped {
                continue;
            }
            value_started = true;
            value.push(ch);
        }
    }
    if !in_value {
        return None;
    }
    key.truncate(key.len() - key_trailing);
    Some((key, value))
}

pub fn parse_properties(text: &str) -> Result<PropertiesTable, PropertiesError> {
    let mut table = PropertiesTable::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('!') {
            continue;
        }
        let (key, value) = split_entry(trimmed).ok_or(PropertiesError::MalformedLine { line: line_no })?;
        if let Some(&first) = seen.get(&key) {
            return Err(PropertiesError::DuplicateKey {
                key,
                first,
                second: line_no,
            });
        }
        seen.insert(key.clone(), line_no);
        table.entries.push((key, value));
    }
    Ok(table)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelReport {
    /// Label axioms that were not already present.
    pub added: usize,
    /// Classes with no (non-empty) entry in the table.
    pub missing: Vec<String>,
    /// Keys that do not name a class of this namespace.
    pub unknown: Vec<String>,
}

impl LabelReport {
    pub fn warn(&self, env: &mut Environment, lang: &str, at: Option<&Location>) {
        if !self.missing.is_empty() {
            env.warn(
                at.cloned(),
                format!(
                    "{} class(es) have no \"{lang}\" label: {}",
                    self.missing.len(),
                    self.missing.join(", ")
                ),
            );
        }
        for key in &self.unknown {
            env.warn(at.cloned(), format!("label key `{key}` does not name a class"));
        }
    }
}

/// Add `rdfs:label` annotations in `lang` for the classes named by the table.
pub fn apply_labels(
    env: &mut Environment,
    table: &PropertiesTable,
    lang: &str,
) -> Result<LabelReport, ModelError> {
    let classes = env.local_classes();
    let by_name: HashMap<&str, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.as_str(), i))
        .collect();
    let mut labelled = vec![false; classes.len()];
    let mut axioms = Vec::new();
    let mut report = LabelReport::default();
    for (key, value) in &table.entries {
        match by_name.get(key.as_str()) {
            Some(&i) => {
                if value.is_empty() {
                    continue;
                }
                labelled[i] = true;
                axioms.push(Axiom::label(
                    classes[i].1.clone(),
                    AnnotationValue::new(value.clone(), Some(lang)),
                ));
            }
            None => report.unknown.push(key.clone()),
        }
    }
    report.added = env.ontology.add_axioms(axioms)?;
    report.missing = classes
        .iter()
        .zip(&labelled)
        .filter(|(_, done)| !**done)
        .map(|((n, _), _)| n.clone())
        .collect();
    Ok(report)
}

/// A properties file with an empty entry for every class, sorted.
pub fn emit_skeleton(env: &Environment, lang: &str) -> String {
    let mut names: Vec<String> = env.local_classes().into_iter().map(|(n, _)| n).collect();
    names.sort();
    let mut out = format!("# {} labels, lang={lang}\n", env.namespace);
    for n in names {
        let _ = writeln!(out, "{}=", escape(&n, true));
    }
    out
}
