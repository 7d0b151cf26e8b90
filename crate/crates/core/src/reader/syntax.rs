//! Tokenizer, parser and printer for the s-expression surface syntax.

use std::fmt::Write as _;
use std::sync::Arc;

use super::ReadError;
use crate::Location;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    List(Vec<Form>),
    Bracket(Vec<Form>),
    Identifier(String),
    Keyword(String),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub kind: FormKind,
    pub location: Location,
}

impl Form {
    pub fn new(kind: FormKind, location: Location) -> Form {
        Form { kind, location }
    }

    pub fn identifier(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Identifier(s) => Some(s),
            _ => None,
        }
    }

    pub fn keyword(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Keyword(s) => Some(s),
            _ => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[Form]> {
        match &self.kind {
            FormKind::List(items) => Some(items),
            _ => None,
        }
    }

    pub fn bracket(&self) -> Option<&[Form]> {
        match &self.kind {
            FormKind::Bracket(items) => Some(items),
            _ => None,
        }
    }

    /// The head identifier of a list form.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|items| items.first()).and_then(Form::identifier)
    }

    /// Structural equality ignoring source locations.
    pub fn same_shape(&self, other: &Form) -> bool {
        match (&self.kind, &other.kind) {
            (FormKind::List(a), FormKind::List(b)) | (FormKind::Bracket(a), FormKind::Bracket(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            (a, b) => a == b,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    file: Arc<str>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn location(&self) -> Location {
        Location::new(self.file.clone(), self.line, self.column)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() || c == ',' {
                self.bump();
            } else if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn read_form(&mut self) -> Result<Option<Form>, ReadError> {
        self.skip_trivia();
        let start = self.location();
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' | '[' => {
                self.bump();
                let close = if c == '(' { ')' } else { ']' };
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(ReadError::Parse {
                                location: start,
                                message: format!("unclosed `{c}`, expected `{close}`"),
                            })
                        }
                        Some(&d) if d == close => {
                            self.bump();
                            break;
                        }
                        Some(&d @ (')' | ']')) => {
                            return Err(ReadError::Parse {
                                location: self.location(),
                                message: format!("mismatched `{d}`, expected `{close}`"),
                            })
                        }
                        Some(_) => items.extend(self.read_form()?),
                    }
                }
                let kind = if c == '(' {
                    FormKind::List(items)
                } else {
                    FormKind::Bracket(items)
                };
                Ok(Some(Form::new(kind, start)))
            }
            ')' | ']' => Err(ReadError::Parse {
                location: start,
                message: format!("unexpected `{c}`"),
            }),
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => {
                            return Err(ReadError::Parse {
                                location: start,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('"') => text.push('"'),
                            Some('\\') => text.push('\\'),
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            other => {
                                return Err(ReadError::Parse {
                                    location: self.location(),
                                    message: format!(
                                        "unknown escape `\\{}`",
                                        other.map(String::from).unwrap_or_default()
                                    ),
                                })
                            }
                        },
                        Some(ch) => text.push(ch),
                    }
                }
                Ok(Some(Form::new(FormKind::Text(text), start)))
            }
            _ => {
                let mut atom = String::new();
                while let Some(&ch) = self.chars.peek() {
                    if ch.is_whitespace() || matches!(ch, '(' | ')' | '[' | ']' | '"' | ';' | ',') {
                        break;
                    }
                    atom.push(ch);
                    self.bump();
                }
                let kind = match atom.strip_prefix(':') {
                    Some("") => {
                        return Err(ReadError::Parse {
                            location: start,
                            message: "empty keyword".into(),
                        })
                    }
                    Some(name) => FormKind::Keyword(name.to_string()),
                    None => FormKind::Identifier(atom),
                };
                Ok(Some(Form::new(kind, start)))
            }
        }
    }
}

/// Read every top-level form in `text`.
pub fn read_forms(text: &str, file: &str) -> Result<Vec<Form>, ReadError> {
    let mut lexer = Lexer {
        chars: text.chars().peekable(),
        file: Arc::from(file),
        line: 1,
        column: 1,
    };
    let mut forms = Vec::new();
    while let Some(form) = lexer.read_form()? {
        forms.push(form);
    }
    Ok(forms)
}

/// Print forms back to text that reads as the same forms.
pub fn print_forms(forms: &[Form]) -> String {
    let mut out = String::new();
    for (i, form) in forms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_form(form, &mut out);
    }
    out
}

fn print_form(form: &Form, out: &mut String) {
    let seq = |items: &[Form], open: char, close: char, out: &mut String| {
        out.push(open);
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            print_form(item, out);
        }
        out.push(close);
    };
    match &form.kind {
        FormKind::List(items) => seq(items, '(', ')', out),
        FormKind::Bracket(items) => seq(items, '[', ']', out),
        FormKind::Identifier(name) => out.push_str(name),
        FormKind::Keyword(name) => {
            let _ = write!(out, ":{name}");
        }
        FormKind::Text(text) => {
            out.push('"');
            for c in text.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    c => out.push(c),
                }
            }
            out.push('"');
        }
    }
}
