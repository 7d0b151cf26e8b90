//! Reader for the functional-style subset written by
//! [`crate::serializer::render_functional`].

use std::collections::BTreeMap;

use super::ImportError;
use crate::model::{AnnotationValue, Axiom, ClassExpression, Entity, EntityKind, Iri, Ontology};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Equals,
    Iri(String),
    Name(String),
    Literal {
        text: String,
        lang: Option<String>,
        datatype: Option<String>,
    },
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn next_token(&mut self) -> Result<Option<(Token, usize)>, ImportError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let line = self.line;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let token = match c {
            '(' => {
                self.bump();
                Token::Open
            }
            ')' => {
                self.bump();
                Token::Close
            }
            '=' => {
                self.bump();
                Token::Equals
            }
            '<' => {
                self.bump();
                let mut iri = String::new();
                loop {
                    match self.bump() {
                        Some('>') => break,
                        Some(c) => iri.push(c),
                        None => return Err(syntax(line, "unterminated IRI")),
                    }
                }
                Token::Iri(iri)
            }
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => text.push(c),
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            _ => return Err(syntax(self.line, "bad escape in literal")),
                        },
                        Some(c) => text.push(c),
                        None => return Err(syntax(line, "unterminated literal")),
                    }
                }
                let mut lang = None;
                let mut datatype = None;
                if self.peek() == Some('@') {
                    self.bump();
                    let mut tag = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == '-' {
                            tag.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    lang = Some(tag);
                } else if self.peek() == Some('^') {
                    self.bump();
                    if self.bump() != Some('^') {
                        return Err(syntax(line, "expected `^^`"));
                    }
                    match self.next_token()? {
                        Some((Token::Name(n), _)) | Some((Token::Iri(n), _)) => datatype = Some(n),
                        _ => return Err(syntax(line, "expected datatype after `^^`")),
                    }
                }
                Token::Literal {
                    text,
                    lang,
                    datatype,
                }
            }
            _ => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '<' | '>' | '"' | '=') {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                Token::Name(name)
            }
        };
        Ok(Some((token, line)))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ImportError {
    ImportError::Syntax {
        line,
        message: message.into(),
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|t| t.1)
            .unwrap_or(1)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Result<(Token, usize), ImportError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| syntax(self.line(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Token) -> Result<(), ImportError> {
        let (t, line) = self.next()?;
        if t != want {
            return Err(syntax(line, format!("expected {want:?}, found {t:?}")));
        }
        Ok(())
    }

    fn expand(&self, name: &str, line: usize) -> Result<Iri, ImportError> {
        let (prefix, local) = name
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("`{name}` is not a prefixed name")))?;
        let base = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| syntax(line, format!("unknown prefix `{prefix}:`")))?;
        Iri::new(format!("{base}{local}")).map_err(|e| syntax(line, e.to_string()))
    }

    fn iri(&mut self) -> Result<Iri, ImportError> {
        match self.next()? {
            (Token::Iri(s), line) => Iri::new(s).map_err(|e| syntax(line, e.to_string())),
            (Token::Name(n), line) => self.expand(&n, line),
            (t, line) => Err(syntax(line, format!("expected IRI, found {t:?}"))),
        }
    }

    /// `Name(`, returning the construct name.
    fn construct(&mut self) -> Result<(String, usize), ImportError> {
        match self.next()? {
            (Token::Name(n), line) if self.peek() == Some(&Token::Open) => {
                self.pos += 1;
                Ok((n, line))
            }
            (t, line) => Err(syntax(line, format!("expected construct, found {t:?}"))),
        }
    }

    fn class_expression(&mut self) -> Result<ClassExpression, ImportError> {
        let is_construct = matches!(self.peek(), Some(Token::Name(_)))
            && matches!(self.tokens.get(self.pos + 1), Some((Token::Open, _)));
        if !is_construct {
            return Ok(ClassExpression::named(self.iri()?));
        }
        let (name, line) = self.construct()?;
        let ce = match name.as_str() {
            "ObjectIntersectionOf" | "ObjectUnionOf" => {
                let mut ops = Vec::new();
                while self.peek() != Some(&Token::Close) {
                    ops.push(self.class_expression()?);
                }
                let built = if name == "ObjectIntersectionOf" {
                    ClassExpression::and(ops)
                } else {
                    ClassExpression::or(ops)
                };
                built.map_err(|e| syntax(line, e.to_string()))?
            }
            "ObjectComplementOf" => ClassExpression::not(self.class_expression()?),
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                let property = self.object_property()?;
                let filler = self.class_expression()?;
                if name == "ObjectSomeValuesFrom" {
                    ClassExpression::some(property, filler)
                } else {
                    ClassExpression::only(property, filler)
                }
            }
            _ => return Err(ImportError::UnsupportedConstruct { name, line }),
        };
        self.expect(Token::Close)?;
        Ok(ce)
    }

    fn object_property(&mut self) -> Result<Iri, ImportError> {
        if let (Some(Token::Name(n)), Some((Token::Open, line))) =
            (self.peek(), self.tokens.get(self.pos + 1))
        {
            return Err(ImportError::UnsupportedConstruct {
                name: n.clone(),
                line: *line,
            });
        }
        self.iri()
    }

    fn axiom(&mut self) -> Result<Axiom, ImportError> {
        let (name, line) = self.construct()?;
        let axiom = match name.as_str() {
            "Declaration" => {
                let (kind_name, kline) = self.construct()?;
                let kind = match kind_name.as_str() {
                    "Class" => EntityKind::Class,
                    "ObjectProperty" => EntityKind::ObjectProperty,
                    "AnnotationProperty" => EntityKind::AnnotationProperty,
                    _ => {
                        return Err(ImportError::UnsupportedConstruct {
                            name: kind_name,
                            line: kline,
                        })
                    }
                };
                let iri = self.iri()?;
                self.expect(Token::Close)?;
                Axiom::Declaration(Entity::new(kind, iri))
            }
            "Import" => Axiom::Import(self.iri()?),
            "SubClassOf" => {
                let sub = self.class_expression()?;
                let sup = self.class_expression()?;
                Axiom::sub_class_of(sub, sup)
            }
            "EquivalentClasses" => {
                let mut members = Vec::new();
                while self.peek() != Some(&Token::Close) {
                    members.push(self.class_expression()?);
                }
                Axiom::equivalent_classes(members).map_err(|e| syntax(line, e.to_string()))?
            }
            "DisjointClasses" => {
                let mut members = Vec::new();
                while self.peek() != Some(&Token::Close) {
                    match self.class_expression()? {
                        ClassExpression::Class(iri) => members.push(iri),
                        _ => {
                            return Err(syntax(line, "DisjointClasses members must be named classes"))
                        }
                    }
                }
                Axiom::disjoint_classes(members).map_err(|e| syntax(line, e.to_string()))?
            }
            "SubObjectPropertyOf" => {
                let sub = self.object_property()?;
                let sup = self.object_property()?;
                Axiom::SubObjectPropertyOf { sub, sup }
            }
            "ObjectPropertyDomain" => Axiom::ObjectPropertyDomain {
                property: self.object_property()?,
                domain: self.class_expression()?,
            },
            "ObjectPropertyRange" => Axiom::ObjectPropertyRange {
                property: self.object_property()?,
                range: self.class_expression()?,
            },
            "FunctionalObjectProperty" => Axiom::FunctionalObjectProperty(self.object_property()?),
            "TransitiveObjectProperty" => Axiom::TransitiveObjectProperty(self.object_property()?),
            "AnnotationAssertion" => {
                let property = Entity::new(EntityKind::AnnotationProperty, self.iri()?);
                let subject = self.iri()?;
                let value = match self.next()? {
                    (Token::Literal { text, lang, datatype }, lline) => {
                        if let Some(dt) = datatype {
                            let plain = dt == "xsd:string"
                                || dt == format!("{}string", crate::model::iri::XSD);
                            if !plain {
                                return Err(ImportError::UnsupportedConstruct {
                                    name: format!("typed literal ^^{dt}"),
                                    line: lline,
                                });
                            }
                        }
                        AnnotationValue::new(text, lang.as_deref())
                    }
                    (t, line) => {
                        return Err(ImportError::UnsupportedConstruct {
                            name: format!("annotation value {t:?}"),
                            line,
                        })
                    }
                };
                Axiom::AnnotationAssertion {
                    subject,
                    property,
                    value,
                }
            }
            _ => return Err(ImportError::UnsupportedConstruct { name, line }),
        };
        self.expect(Token::Close)?;
        Ok(axiom)
    }
}

/// Parse a functional-style document into an ontology. Declarations are not
/// required for the entities it mentions.
pub fn parse_functional(text: &str) -> Result<Ontology, ImportError> {
    let mut lexer = Lexer {
        chars: text.char_indices().peekable(),
        line: 1,
    };
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    let scratch = Ontology::new(Iri::new("urn:x").expect("valid"));
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: scratch.prefixes().clone(),
    };
    let mut declared_prefixes = Vec::new();
    loop {
        let (name, line) = parser.construct()?;
        match name.as_str() {
            "Prefix" => {
                let label = match parser.next()? {
                    (Token::Name(n), l) => n
                        .strip_suffix(':')
                        .map(str::to_string)
                        .ok_or_else(|| syntax(l, "prefix label must end with `:`"))?,
                    (t, l) => return Err(syntax(l, format!("expected prefix label, found {t:?}"))),
                };
                parser.expect(Token::Equals)?;
                let base = match parser.next()? {
                    (Token::Iri(s), _) => s,
                    (t, l) => return Err(syntax(l, format!("expected IRI, found {t:?}"))),
                };
                parser.expect(Token::Close)?;
                parser.prefixes.insert(label.clone(), base.clone());
                declared_prefixes.push((label, base));
            }
            "Ontology" => break,
            _ => return Err(ImportError::UnsupportedConstruct { name, line }),
        }
    }
    let iri = match parser.peek() {
        Some(Token::Iri(_)) => parser.iri()?,
        _ => return Err(syntax(parser.line(), "anonymous ontologies are not supported")),
    };
    if let Some(Token::Iri(_)) = parser.peek() {
        // version IRI
        parser.iri()?;
    }
    let mut ontology = Ontology::new(iri);
    for (label, base) in declared_prefixes {
        ontology.add_prefix(label, base);
    }
    while parser.peek() != Some(&Token::Close) {
        if parser.peek().is_none() {
            return Err(syntax(parser.line(), "missing `)` closing Ontology("));
        }
        let axiom = parser.axiom()?;
        ontology.insert_unchecked(axiom);
    }
    parser.expect(Token::Close)?;
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.line(), "trailing input after ontology"));
    }
    Ok(ontology)
}
