use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ontoforge::importer::{memorise_check, memorise_save, MemoTable};
use ontoforge::model::{Iri, Ontology};
use ontoforge::polyglot::{apply_labels, emit_skeleton, parse_properties};
use ontoforge::reader::{Environment, ReadError, Session};
use ontoforge::reasoner::{classify, Taxonomy};
use ontoforge::serializer::{render_functional, render_omn, shorten};
use ontoforge::testkit::run_tests;
use ontoforge::{Diagnostic, Severity};

#[derive(Parser)]
#[command(name = "ontoforge", version, about = "Build, check and test ontologies written as source code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Root of the source tree.
    #[arg(long, default_value = ".")]
    src: PathBuf,
    /// Namespace to load; defaults to the only one in the tree.
    #[arg(long)]
    ns: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Omn,
    Ofn,
}

#[derive(Subcommand)]
enum Command {
    /// Write the ontology as Manchester (.omn) and/or functional (.ofn) text.
    Compile {
        #[command(flatten)]
        source: Source,
        /// Only write one format.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Evaluate the sources and report diagnostics.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Run the tests defined in the namespace.
    Test {
        #[command(flatten)]
        source: Source,
    },
    /// Print each class with its direct inferred superclasses.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Translation files for labels.
    Labels {
        #[command(subcommand)]
        action: LabelsAction,
    },
    /// Snapshots of identifiers generated for external ontologies.
    Memorise {
        #[command(subcommand)]
        action: MemoAction,
    },
    /// Show the labels and comments of an entity.
    Doc {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand)]
enum LabelsAction {
    /// Write a properties file with an empty entry per class.
    Skeleton {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lang: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load a properties file and report what it covers.
    Apply {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum MemoAction {
    /// Save the current identifier table of an external ontology.
    Save {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        file: PathBuf,
        /// External ontology IRI; needed when several were read.
        #[arg(long)]
        iri: Option<String>,
    },
    /// Compare the current identifiers with a saved table.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        file: PathBuf,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_COMPILE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Ends a command with an exit code after its diagnostics are printed.
struct Failure(u8);

struct Reporter {
    color: bool,
}

impl Reporter {
    fn new() -> Reporter {
        let color = match std::env::var("ONTOFORGE_COLOR").as_deref() {
            Ok("1") => true,
            Ok("0") => false,
            _ => std::io::stderr().is_terminal(),
        };
        Reporter { color }
    }

    fn emit(&self, d: &Diagnostic) {
        let text = if self.color {
            let code = match d.severity {
                Severity::Error => "31",
                Severity::Warning => "33",
                Severity::Note => "36",
            };
            let plain = d.to_string();
            let tag = format!("{}:", d.severity);
            plain.replacen(&tag, &format!("\x1b[1;{code}m{tag}\x1b[0m"), 1)
        } else {
            d.to_string()
        };
        eprintln!("{text}");
    }

    fn error(&self, message: impl Into<String>) {
        self.emit(&Diagnostic::error(None, message));
    }

    fn warning(&self, message: impl Into<String>) {
        self.emit(&Diagnostic::warning(None, message));
    }
}

struct Loaded {
    namespace: String,
    env: Environment,
}

fn read_error(reporter: &Reporter, e: &ReadError) -> Failure {
    reporter.emit(&e.to_diagnostic());
    match e {
        ReadError::Io { .. } | ReadError::NamespaceNotFound { .. } => Failure(EXIT_IO),
        _ => Failure(EXIT_COMPILE),
    }
}

fn load(reporter: &Reporter, source: &Source) -> Result<Loaded, Failure> {
    if !source.src.is_dir() {
        reporter.error(format!("{} is not a directory", source.src.display()));
        return Err(Failure(EXIT_IO));
    }
    let mut session = Session::new(&source.src);
    let namespace = match &source.ns {
        Some(ns) => ns.clone(),
        None => {
            let found = session.discover();
            match found.as_slice() {
                [only] => only.clone(),
                [] => {
                    reporter.error(format!("no source files under {}", source.src.display()));
                    return Err(Failure(EXIT_IO));
                }
                many => {
                    reporter.error(format!(
                        "several namespaces found, choose one with --ns: {}",
                        many.join(", ")
                    ));
                    return Err(Failure(EXIT_COMPILE));
                }
            }
        }
    };
    let result = session.load(&namespace);
    for d in session.diagnostics() {
        reporter.emit(&d);
    }
    let env = result.map_err(|e| read_error(reporter, &e))?;
    Ok(Loaded {
        namespace,
        env: (*env).clone(),
    })
}

fn write_file(reporter: &Reporter, path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        if let Err(e) = fs::create_dir_all(dir) {
            reporter.error(format!("{}: {e}", dir.display()));
            return Err(Failure(EXIT_IO));
        }
    }
    fs::write(path, text).map_err(|e| {
        reporter.error(format!("{}: {e}", path.display()));
        Failure(EXIT_IO)
    })
}

fn read_file(reporter: &Reporter, path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| {
        reporter.error(format!("{}: {e}", path.display()));
        Failure(EXIT_IO)
    })
}

fn taxonomy(env: &Environment) -> Taxonomy {
    let axioms: Vec<_> = env.closure_axioms().collect();
    classify(axioms.iter().copied())
}

fn report_skipped(reporter: &Reporter, taxonomy: &Taxonomy) {
    let skipped = taxonomy.skipped();
    if skipped.is_empty() {
        return;
    }
    let mut reasons: Vec<&str> = skipped.iter().map(|s| s.reason.as_str()).collect();
    reasons.sort_unstable();
    let mut counts: Vec<String> = Vec::new();
    for group in reasons.chunk_by(|a, b| a == b) {
        counts.push(format!("{} x{}", group[0], group.len()));
    }
    reporter.warning(format!(
        "the reasoner ignored {} axiom part(s) outside EL: {}",
        skipped.len(),
        counts.join(", ")
    ));
}

fn display_name(ontology: &Ontology, iri: &Iri) -> String {
    shorten(ontology.prefixes(), iri).unwrap_or_else(|| format!("<{iri}>"))
}

fn compile(r: &Reporter, source: &Source, format: Option<Format>, out: &Path) -> Result<(), Failure> {
    let loaded = load(r, source)?;
    let ontology = &loaded.env.ontology;
    if matches!(format, None | Some(Format::Omn)) {
        let text = render_omn(ontology).map_err(|e| {
            r.error(e.to_string());
            Failure(EXIT_COMPILE)
        })?;
        write_file(r, &out.join(format!("{}.omn", loaded.namespace)), &text)?;
    }
    if matches!(format, None | Some(Format::Ofn)) {
        let text = render_functional(ontology);
        write_file(r, &out.join(format!("{}.ofn", loaded.namespace)), &text)?;
    }
    Ok(())
}

fn check(r: &Reporter, source: &Source) -> Result<(), Failure> {
    let loaded = load(r, source)?;
    println!(
        "{}: {} axioms, {} tests",
        loaded.namespace,
        loaded.env.ontology.len(),
        loaded.env.tests().len()
    );
    Ok(())
}

fn test(r: &Reporter, source: &Source) -> Result<(), Failure> {
    let mut loaded = load(r, source)?;
    let before = loaded.env.diagnostics().len();
    let report = run_tests(&mut loaded.env);
    for d in &loaded.env.diagnostics()[before..] {
        r.emit(d);
    }
    print!("{}", report.tap());
    let _ = std::io::stdout().flush();
    let t = taxonomy(&loaded.env);
    report_skipped(r, &t);
    let coherence = t.coherence_report();
    if !coherence.coherent {
        let names: Vec<String> = coherence
            .unsatisfiable
            .iter()
            .map(|i| display_name(&loaded.env.ontology, i))
            .collect();
        r.error(format!("incoherent ontology, unsatisfiable: {}", names.join(", ")));
    }
    if !report.passed() || !coherence.coherent {
        return Err(Failure(EXIT_FAILED));
    }
    Ok(())
}

fn classify_command(r: &Reporter, source: &Source) -> Result<(), Failure> {
    let loaded = load(r, source)?;
    let t = taxonomy(&loaded.env);
    report_skipped(r, &t);
    let ontology = &loaded.env.ontology;
    let mut lines: Vec<(String, String)> = t
        .classes()
        .map(|c| {
            let supers = t.direct_superclasses(c).expect("known class");
            let names: Vec<String> = supers.iter().map(|s| display_name(ontology, s)).collect();
            (display_name(ontology, c), names.join(","))
        })
        .collect();
    lines.sort();
    let mut out = std::io::stdout().lock();
    for (class, supers) in lines {
        let _ = writeln!(out, "{class}\t{supers}");
    }
    Ok(())
}

fn labels(r: &Reporter, action: &LabelsAction) -> Result<(), Failure> {
    match action {
        LabelsAction::Skeleton { source, lang, out } => {
            let loaded = load(r, source)?;
            let text = emit_skeleton(&loaded.env, lang);
            match out {
                Some(path) => write_file(r, path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        LabelsAction::Apply { source, lang, file } => {
            if lang.is_empty() {
                r.error("--lang must not be empty");
                return Err(Failure(EXIT_COMPILE));
            }
            let mut loaded = load(r, source)?;
            let text = read_file(r, file)?;
            let table = parse_properties(&text).map_err(|e| {
                r.error(format!("{}: {e}", file.display()));
                Failure(EXIT_COMPILE)
            })?;
            let report = apply_labels(&mut loaded.env, &table, lang).map_err(|e| {
                r.error(e.to_string());
                Failure(EXIT_COMPILE)
            })?;
            let before = loaded.env.diagnostics().len();
            report.warn(&mut loaded.env, lang, None);
            for d in &loaded.env.diagnostics()[before..] {
                r.emit(d);
            }
            println!(
                "added {}, missing {}, unknown {}",
                report.added,
                report.missing.len(),
                report.unknown.len()
            );
            Ok(())
        }
    }
}

fn memorise(r: &Reporter, action: &MemoAction) -> Result<(), Failure> {
    match action {
        MemoAction::Save { source, file, iri } => {
            let loaded = load(r, source)?;
            let externals = loaded.env.externals();
            let source_iri = match iri {
                Some(text) => Iri::new(text).map_err(|e| {
                    r.error(e.to_string());
                    Failure(EXIT_COMPILE)
                })?,
                None => {
                    let keys: Vec<&Iri> = externals.keys().collect();
                    match keys.as_slice() {
                        [only] => (*only).clone(),
                        [] => {
                            r.error(format!("namespace `{}` reads no external ontology", loaded.namespace));
                            return Err(Failure(EXIT_COMPILE));
                        }
                        many => {
                            let names: Vec<String> = many.iter().map(|i| i.to_string()).collect();
                            r.error(format!("several external ontologies, choose one with --iri: {}", names.join(", ")));
                            return Err(Failure(EXIT_COMPILE));
                        }
                    }
                }
            };
            let table = memorise_save(&loaded.env, &source_iri).map_err(|e| {
                r.error(e.to_string());
                Failure(EXIT_COMPILE)
            })?;
            write_file(r, file, &table.to_text())?;
            println!("saved {} identifiers for {source_iri}", table.rows.len());
            Ok(())
        }
        MemoAction::Check { source, file } => {
            let loaded = load(r, source)?;
            let text = read_file(r, file)?;
            let saved = MemoTable::parse(&text).map_err(|e| {
                r.error(format!("{}: {e}", file.display()));
                Failure(EXIT_COMPILE)
            })?;
            let Some(external) = loaded.env.externals().get(&saved.source) else {
                r.error(format!("namespace `{}` does not read {}", loaded.namespace, saved.source));
                return Err(Failure(EXIT_COMPILE));
            };
            let report = memorise_check(&external.bindings, &saved, &saved.source).map_err(|e| {
                r.error(e.to_string());
                Failure(EXIT_COMPILE)
            })?;
            if report.stable {
                println!("stable");
            }
            for alias in &report.deprecated {
                r.warning(format!(
                    "label changed for {}: `{}` is now `{}`",
                    alias.entity.iri, alias.old, alias.new
                ));
                println!("deprecated\t{}\t{}\t{}", alias.old, alias.new, alias.entity.iri);
            }
            for iri in &report.vanished {
                r.warning(format!("{iri} no longer exists"));
                println!("vanished\t{iri}");
            }
            Ok(())
        }
    }
}

fn doc(r: &Reporter, source: &Source, name: &str) -> Result<(), Failure> {
    let mut loaded = load(r, source)?;
    let at = ontoforge::Location::new("<command line>", 1, 1);
    let entity = match loaded.env.resolve(name, &at) {
        Ok(e) => e,
        Err(_) => {
            r.error(format!("`{name}` is not defined in namespace `{}`", loaded.namespace));
            return Err(Failure(EXIT_COMPILE));
        }
    };
    for d in loaded.env.take_diagnostics().iter().filter(|d| d.location.as_ref() == Some(&at)) {
        r.emit(d);
    }
    let env = &loaded.env;
    let ontologies: Vec<&Ontology> = std::iter::once(&env.ontology)
        .chain(env.imports().iter().map(|o| o.as_ref()))
        .collect();
    println!("{} {}", entity.kind, display_name(&env.ontology, &entity.iri));
    for property in [Iri::rdfs_label(), Iri::rdfs_comment()] {
        let mut values: Vec<_> = ontologies
            .iter()
            .flat_map(|o| o.annotations(&entity.iri, &property))
            .collect();
        values.sort_by(|a, b| (&a.lang, &a.text).cmp(&(&b.lang, &b.text)));
        values.dedup();
        let key = property.fragment();
        for v in values {
            match &v.lang {
                Some(lang) => println!("{key}@{lang}: {}", v.text),
                None => println!("{key}: {}", v.text),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_COMPILE } else { 0 });
        }
    };
    let r = Reporter::new();
    let result = match &cli.command {
        Command::Compile { source, format, out } => compile(&r, source, *format, out),
        Command::Check { source } => check(&r, source),
        Command::Test { source } => test(&r, source),
        Command::Classify { source } => classify_command(&r, source),
        Command::Labels { action } => labels(&r, action),
        Command::Memorise { action } => memorise(&r, action),
        Command::Doc { source, name } => doc(&r, source, name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code)) => ExitCode::from(code),
    }
}
