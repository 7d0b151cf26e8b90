//! Deterministic text output: Manchester-style frames for reading and
//! functional style for interchange.

mod functional;
mod omn;

pub use functional::render_functional;
pub use omn::render_omn;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{Iri, Ontology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("no prefix shortens {0:?}")]
    NoPrefix(Iri),
}

const RESERVED: &[&str] = &["owl", "rdf", "rdfs", "xsd"];

fn is_local_name(local: &str) -> bool {
    !local.is_empty()
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Shorten an IRI to `label:local` using the longest matching base.
pub fn shorten(prefixes: &BTreeMap<String, String>, iri: &Iri) -> Option<String> {
    prefixes
        .iter()
        .filter_map(|(label, base)| {
            let local = iri.as_str().strip_prefix(base.as_str())?;
            is_local_name(local).then_some((base.len(), label, local))
        })
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
        .map(|(_, label, local)| format!("{label}:{local}"))
}

/// A short prefix label for an ontology IRI: the last path segment without
/// extension, lowercased, e.g. `obi` for `http://purl.obolibrary.org/obo/obi.owl`.
pub fn derive_prefix_label(iri: &Iri) -> String {
    let segment = iri
        .as_str()
        .trim_end_matches(['#', '/'])
        .rsplit(['/', '#', ':'])
        .next()
        .unwrap_or_default();
    let stem = segment.split('.').next().unwrap_or_default();
    let mut label: String = stem
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    if label.is_empty() || label.starts_with(|c: char| c.is_ascii_digit()) {
        label.insert_str(0, "ont");
    }
    if RESERVED.contains(&label.as_str()) {
        label.push('0');
    }
    label
}

fn namespace_of(iri: &Iri) -> &str {
    let s = iri.as_str();
    match s.rfind(['#', '/']) {
        Some(i) => &s[..=i],
        None => s,
    }
}

/// Make sure `iri` can be shortened, adding a prefix if necessary. A hint
/// whose base covers the IRI is preferred; otherwise a label is derived
/// from the IRI's namespace.
pub fn ensure_prefix(ontology: &mut Ontology, iri: &Iri, hints: &[(String, String)]) {
    if shorten(ontology.prefixes(), iri).is_some() {
        return;
    }
    let hint = hints.iter().find(|(_, base)| {
        iri.as_str()
            .strip_prefix(base.as_str())
            .is_some_and(is_local_name)
    });
    let (wanted, base) = match hint {
        Some((label, base)) => (label.clone(), base.clone()),
        None => {
            let base = namespace_of(iri).to_string();
            let Ok(ns) = Iri::new(&base) else { return };
            (derive_prefix_label(&ns), base)
        }
    };
    if !is_local_name(iri.as_str().strip_prefix(base.as_str()).unwrap_or_default()) {
        return;
    }
    let mut label = wanted.clone();
    let mut n = 1;
    while ontology.prefixes().get(&label).is_some_and(|b| b != &base) {
        n += 1;
        label = format!("{wanted}{n}");
    }
    ontology.add_prefix(label, base);
}

fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn literal(value: &crate::model::AnnotationValue) -> String {
    match &value.lang {
        Some(lang) => format!("{}@{lang}", escape_literal(&value.text)),
        None => escape_literal(&value.text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn prefix_labels() {
        assert_eq!(derive_prefix_label(&iri("http://purl.obolibrary.org/obo/obi.owl")), "obi");
        assert_eq!(derive_prefix_label(&iri("http://x/p")), "p");
        assert_eq!(derive_prefix_label(&iri("http://example.com/pizza#")), "pizza");
        assert_eq!(derive_prefix_label(&iri("http://x/2024")), "ont2024");
        assert_eq!(derive_prefix_label(&iri("http://x/owl")), "owl0");
    }

    #[test]
    fn shorten_prefers_longest_base() {
        let mut p = BTreeMap::new();
        p.insert("a".to_string(), "http://x/".to_string());
        p.insert("b".to_string(), "http://x/p#".to_string());
        assert_eq!(shorten(&p, &iri("http://x/p#Pizza")).as_deref(), Some("b:Pizza"));
        assert_eq!(shorten(&p, &iri("http://x/Q")).as_deref(), Some("a:Q"));
        assert_eq!(shorten(&p, &iri("http://y/Q")), None);
        assert_eq!(shorten(&p, &iri("http://x/p#")), None);
    }

    #[test]
    fn ensure_prefix_derives_and_avoids_clashes() {
        let mut o = Ontology::new(iri("http://x/o"));
        o.add_prefix("obo", "http://other/");
        ensure_prefix(&mut o, &iri("http://purl.obolibrary.org/obo/BFO_1"), &[]);
        assert_eq!(o.prefixes()["obo2"], "http://purl.obolibrary.org/obo/");
        ensure_prefix(&mut o, &iri("http://z/v#A"), &[("zz".into(), "http://z/v#".into())]);
        assert_eq!(o.prefixes()["zz"], "http://z/v#");
    }
}
