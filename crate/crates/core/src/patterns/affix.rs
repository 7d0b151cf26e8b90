use std::collections::BTreeSet;

use super::PatternError;
use crate::reader::{builtin_name, Form, FormKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffixPosition {
    Prefix,
    Suffix,
}

impl AffixPosition {
    pub fn apply(self, affix: &str, name: &str) -> String {
        match self {
            AffixPosition::Prefix => format!("{affix}{name}"),
            AffixPosition::Suffix => format!("{name}{affix}"),
        }
    }
}

/// Rename every entity defined inside `forms` by adding `affix`, and rewrite
/// references to the short names inside the block to match.
pub fn affix_forms(
    affix: &str,
    position: AffixPosition,
    forms: &[Form],
) -> Result<Vec<Form>, PatternError> {
    let mut defined = Vec::new();
    for form in forms {
        collect_definitions(form, &mut defined);
    }
    let mut seen = BTreeSet::new();
    for name in &defined {
        if !seen.insert(position.apply(affix, name)) {
            return Err(PatternError::DuplicateBinding(position.apply(affix, name)));
        }
    }
    let defined: BTreeSet<&str> = defined.iter().map(String::as_str).collect();
    Ok(forms
        .iter()
        .map(|f| rename(f, affix, position, &defined, false))
        .collect())
}

fn collect_definitions(form: &Form, out: &mut Vec<String>) {
    let (FormKind::List(items) | FormKind::Bracket(items)) = &form.kind else {
        return;
    };
    if let (Some(head), Some(name)) = (
        items.first().and_then(Form::identifier),
        items.get(1).and_then(Form::identifier),
    ) {
        if matches!(builtin_name(head), "defclass" | "defoproperty") {
            out.push(name.to_string());
        }
    }
    for item in items {
        collect_definitions(item, out);
    }
}

fn rename(
    form: &Form,
    affix: &str,
    position: AffixPosition,
    defined: &BTreeSet<&str>,
    is_head: bool,
) -> Form {
    let kind = match &form.kind {
        FormKind::Identifier(name) if !is_head && defined.contains(name.as_str()) => {
            FormKind::Identifier(position.apply(affix, name))
        }
        FormKind::List(items) => FormKind::List(
            items
                .iter()
                .enumerate()
                .map(|(i, f)| rename(f, affix, position, defined, i == 0))
                .collect(),
        ),
        FormKind::Bracket(items) => FormKind::Bracket(
            items
                .iter()
                .map(|f| rename(f, affix, position, defined, false))
                .collect(),
        ),
        other => other.clone(),
    };
    Form::new(kind, form.location.clone())
}
