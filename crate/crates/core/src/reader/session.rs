use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::{read_forms, Environment, Evaluator, ReadError};
use crate::{Diagnostic, Location};

/// Loads namespaces from a source tree, evaluating each file at most once.
///
/// Namespace `a.b` lives in `<root>/a/b.ont`.
#[derive(Debug)]
pub struct Session {
    root: PathBuf,
    cache: HashMap<String, Arc<Environment>>,
    loading: Vec<String>,
    order: Vec<String>,
    evaluations: HashMap<String, usize>,
}

pub const SOURCE_EXTENSION: &str = "ont";

impl Session {
    pub fn new(root: impl Into<PathBuf>) -> Session {
        Session {
            root: root.into(),
            cache: HashMap::new(),
            loading: Vec::new(),
            order: Vec::new(),
            evaluations: HashMap::new(),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn namespace_path(&self, namespace: &str) -> PathBuf {
        let mut path = self.root.clone();
        for segment in namespace.split('.') {
            path.push(segment);
        }
        path.set_extension(SOURCE_EXTENSION);
        path
    }

    /// Every namespace under the root, sorted.
    pub fn discover(&self) -> Vec<String> {
        let mut found = Vec::new();
        collect(&self.root, &self.root, &mut found);
        found.sort();
        found
    }

    pub fn load(&mut self, namespace: &str) -> Result<Arc<Environment>, ReadError> {
        self.load_inner(namespace, None)
    }

    pub(crate) fn load_from(&mut self, namespace: &str, at: &Location) -> Result<Arc<Environment>, ReadError> {
        self.load_inner(namespace, Some(at))
    }

    fn load_inner(&mut self, namespace: &str, at: Option<&Location>) -> Result<Arc<Environment>, ReadError> {
        if let Some(env) = self.cache.get(namespace) {
            return Ok(env.clone());
        }
        if let Some(start) = self.loading.iter().position(|n| n == namespace) {
            let mut cycle = self.loading[start..].to_vec();
            cycle.push(namespace.to_string());
            return Err(ReadError::Cycle {
                cycle,
                location: at.cloned().unwrap_or_else(|| Location::new(namespace, 1, 1)),
            });
        }
        let path = self.namespace_path(namespace);
        if !path.is_file() {
            return Err(ReadError::NamespaceNotFound {
                namespace: namespace.to_string(),
                path,
            });
        }
        let text = std::fs::read_to_string(&path).map_err(|e| ReadError::Io {
            location: at.cloned(),
            path: path.clone(),
            message: e.to_string(),
        })?;
        let forms = read_forms(&text, &path.to_string_lossy())?;
        self.loading.push(namespace.to_string());
        let mut env = Environment::new(namespace);
        let result = {
            let mut ev = Evaluator::new(&mut env).with_session(self);
            forms.iter().try_for_each(|f| ev.eval_top(f).map(|_| ()))
        };
        self.loading.pop();
        result?;
        if !env.defined {
            return Err(ReadError::MissingOntology {
                location: Location::new(path.to_string_lossy().as_ref(), 1, 1),
            });
        }
        *self.evaluations.entry(namespace.to_string()).or_default() += 1;
        let env = Arc::new(env);
        self.cache.insert(namespace.to_string(), env.clone());
        self.order.push(namespace.to_string());
        Ok(env)
    }

    /// How many times a namespace has been evaluated in this session.
    pub fn evaluation_count(&self, namespace: &str) -> usize {
        self.evaluations.get(namespace).copied().unwrap_or(0)
    }

    /// Diagnostics from every loaded namespace, in load order.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        self.order
            .iter()
            .flat_map(|ns| self.cache[ns].diagnostics().iter().cloned())
            .collect()
    }
}

fn collect(root: &Path, dir: &Path, out: &mut Vec<String>) {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return;
    };
    for entry in entries.flatten() {
        let path = entry.path();
        if path.is_dir() {
            collect(root, &path, out);
        } else if path.extension().and_then(|e| e.to_str()) == Some(SOURCE_EXTENSION) {
            if let Ok(rel) = path.with_extension("").strip_prefix(root) {
                let ns: Vec<String> = rel
                    .components()
                    .map(|c| c.as_os_str().to_string_lossy().into_owned())
                    .collect();
                out.push(ns.join("."));
            }
        }
    }
}
