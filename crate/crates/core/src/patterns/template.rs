use std::collections::HashMap;

use super::PatternError;
use crate::reader::{Form, FormKind};

/// A user-defined template: `(deftemplate name [p1 p2 & rest] body...)`.
///
/// The body refers to parameters as `?p1`. A rest parameter splices its
/// elements into whatever list it appears in, and `(each ?rest ?x form...)`
/// emits one copy of the forms per element with `?x` bound to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateDef {
    pub name: String,
    pub params: Vec<String>,
    pub rest: Option<String>,
    pub body: Vec<Form>,
}

#[derive(Clone)]
enum Binding {
    One(Form),
    Many(Vec<Form>),
}

fn marker(form: &Form) -> Option<&str> {
    form.identifier().and_then(|s| s.strip_prefix('?'))
}

fn error(msg: impl Into<String>) -> PatternError {
    PatternError::Template(msg.into())
}

impl TemplateDef {
    pub fn parse(name: &str, params: &[Form], body: Vec<Form>) -> Result<TemplateDef, PatternError> {
        let mut fixed = Vec::new();
        let mut rest = None;
        let mut iter = params.iter();
        while let Some(p) = iter.next() {
            let Some(id) = p.identifier() else {
                return Err(error(format!("{}: parameter must be an identifier", p.location)));
            };
            if id == "&" {
                let Some(r) = iter.next().and_then(Form::identifier) else {
                    return Err(error(format!("{}: `&` must be followed by a parameter", p.location)));
                };
                if iter.next().is_some() {
                    return Err(error(format!("{}: the rest parameter must come last", p.location)));
                }
                rest = Some(r.to_string());
                break;
            }
            if fixed.iter().any(|f| f == id) {
                return Err(error(format!("{}: duplicate parameter `{id}`", p.location)));
            }
            fixed.push(id.to_string());
        }
        let def = TemplateDef {
            name: name.to_string(),
            params: fixed,
            rest,
            body,
        };
        let mut scope: HashMap<String, bool> = def.params.iter().map(|p| (p.clone(), false)).collect();
        if let Some(r) = &def.rest {
            scope.insert(r.clone(), true);
        }
        for form in &def.body {
            check(form, &mut scope)?;
        }
        Ok(def)
    }

    pub fn arity(&self) -> String {
        match self.rest {
            Some(_) => format!("at least {}", self.params.len()),
            None => self.params.len().to_string(),
        }
    }

    /// Instantiate the body for one argument group.
    pub fn instantiate(&self, args: &[Form]) -> Result<Vec<Form>, PatternError> {
        let ok = match self.rest {
            Some(_) => args.len() >= self.params.len(),
            None => args.len() == self.params.len(),
        };
        if !ok {
            return Err(PatternError::TemplateArity {
                template: self.name.clone(),
                expected: self.arity(),
                found: args.len(),
            });
        }
        let mut env: HashMap<&str, Binding> = self
            .params
            .iter()
            .zip(args)
            .map(|(p, a)| (p.as_str(), Binding::One(a.clone())))
            .collect();
        if let Some(r) = &self.rest {
            env.insert(r, Binding::Many(args[self.params.len()..].to_vec()));
        }
        let mut out = Vec::new();
        for form in &self.body {
            out.extend(substitute(form, &env)?);
        }
        Ok(out)
    }
}

fn check(form: &Form, scope: &mut HashMap<String, bool>) -> Result<(), PatternError> {
    if let Some(m) = marker(form) {
        if !scope.contains_key(m) {
            return Err(error(format!("{}: `?{m}` is not a parameter", form.location)));
        }
        return Ok(());
    }
    let (FormKind::List(items) | FormKind::Bracket(items)) = &form.kind else {
        return Ok(());
    };
    if form.head() == Some("each") {
        let (Some(list), Some(var)) = (items.get(1).and_then(marker), items.get(2).and_then(marker)) else {
            return Err(error(format!("{}: expected (each ?list ?var form...)", form.location)));
        };
        if scope.get(list) != Some(&true) {
            return Err(error(format!("{}: `?{list}` is not a rest parameter", form.location)));
        }
        let shadowed = scope.insert(var.to_string(), false);
        let result = items[3..].iter().try_for_each(|f| check(f, scope));
        match shadowed {
            Some(prev) => scope.insert(var.to_string(), prev),
            None => scope.remove(var),
        };
        return result;
    }
    items.iter().try_for_each(|f| check(f, scope))
}

fn substitute(form: &Form, env: &HashMap<&str, Binding>) -> Result<Vec<Form>, PatternError> {
    if let Some(m) = marker(form) {
        return match env.get(m) {
            Some(Binding::One(f)) => Ok(vec![f.clone()]),
            Some(Binding::Many(fs)) => Ok(fs.clone()),
            None => Err(error(format!("{}: unbound `?{m}`", form.location))),
        };
    }
    let (FormKind::List(items) | FormKind::Bracket(items)) = &form.kind else {
        return Ok(vec![form.clone()]);
    };
    if form.head() == Some("each") {
        let list = items.get(1).and_then(marker).unwrap_or_default();
        let var = items.get(2).and_then(marker).unwrap_or_default();
        let Some(Binding::Many(elements)) = env.get(list) else {
            return Err(error(format!("{}: `?{list}` is not a rest parameter", form.location)));
        };
        let mut out = Vec::new();
        for element in elements {
            let mut inner = env.clone();
            inner.insert(var, Binding::One(element.clone()));
            for f in &items[3..] {
                out.extend(substitute(f, &inner)?);
            }
        }
        return Ok(out);
    }
    let mut children = Vec::with_capacity(items.len());
    for item in items {
        children.extend(substitute(item, env)?);
    }
    let kind = match &form.kind {
        FormKind::List(_) => FormKind::List(children),
        _ => FormKind::Bracket(children),
    };
    Ok(vec![Form::new(kind, form.location.clone())])
}
