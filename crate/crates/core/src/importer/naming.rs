use super::ImportError;

/// Turn a label into an identifier: runs of whitespace and any character
/// outside `[A-Za-z0-9_-]` become `_`, repeated `_` collapse, surrounding `_`
/// are trimmed, and a result starting with a digit or `-` gains a leading `_`.
pub fn label_to_identifier(label: &str) -> Result<String, ImportError> {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        let c = if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' };
        if c == '_' && out.ends_with('_') {
            continue;
        }
        out.push(c);
    }
    let trimmed = out.trim_matches('_');
    if trimmed.is_empty() {
        return Err(ImportError::UnmappableLabel(label.to_string()));
    }
    Ok(match trimmed.chars().next() {
        Some(c) if c.is_ascii_digit() || c == '-' => format!("_{trimmed}"),
        _ => trimmed.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::is_identifier;
    use proptest::prelude::*;

    #[test]
    fn obo_examples() {
        assert_eq!(label_to_identifier("has part").unwrap(), "has_part");
        assert_eq!(
            label_to_identifier("provides service consumer with").unwrap(),
            "provides_service_consumer_with"
        );
    }

    #[test]
    fn leading_digit_and_punctuation() {
        // "2nd class!" -> "2nd_class_" -> trim -> "2nd_class" -> "_2nd_class"
        assert_eq!(label_to_identifier("2nd class!").unwrap(), "_2nd_class");
        assert_eq!(label_to_identifier("  a\t\tb  ").unwrap(), "a_b");
        assert_eq!(label_to_identifier("café au lait").unwrap(), "caf_au_lait");
        assert_eq!(label_to_identifier("-x").unwrap(), "_-x");
    }

    #[test]
    fn unmappable() {
        assert!(matches!(label_to_identifier("!!!"), Err(ImportError::UnmappableLabel(_))));
        assert!(label_to_identifier("   ").is_err());
    }

    proptest! {
        #[test]
        fn output_is_an_identifier(label in "\\PC{1,20}") {
            if let Ok(id) = label_to_identifier(&label) {
                prop_assert!(is_identifier(&id), "{id:?}");
                prop_assert!(!id.contains("__"));
            }
        }
    }
}
