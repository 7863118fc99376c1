//! Batch front end: compile lexica, emit tables, check interface terms,
//! enumerate readings.
//!
//! Exit codes: 0 success; 1 violations found, or (with `strict`) unmatched
//! bases or a default scoping that is not a reading; 2 unreadable input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use semdb::plex::{check_hierarchy, parse_lexicon_source, Lexicon};
use semdb::scope::{build_scope_graph, build_tree, default_plugging, enumerate_pluggings, Plugging};
use semdb::semclass::Catalog;
use semdb::trafo::{emit_outputs, RuleSet};
use semdb::validate::{validate_with, PatternIndex, SortAliasTable, ValidateOptions};
use semdb::vit::parse_vits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Compile,
    Table,
    Check,
    Readings,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub lexicon_path: Option<PathBuf>,
    /// Defaults to the shipped rules for the command.
    pub rules_path: Option<PathBuf>,
    pub vit_path: Option<PathBuf>,
    /// Defaults to the shipped alias table.
    pub alias_path: Option<PathBuf>,
    /// Defaults to the builtin catalog.
    pub catalog_path: Option<PathBuf>,
    pub strict: bool,
    /// Defaults to standard output.
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// `readings`: print the scoped tree under each reading.
    pub trees: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            lexicon_path: None,
            rules_path: None,
            vit_path: None,
            alias_path: None,
            catalog_path: None,
            strict: false,
            output_path: None,
            format: Format::Text,
            trees: false,
        }
    }
}

/// A one-line diagnostic for unreadable input.
struct Fatal(String);

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Fatal> {
    path.as_deref().ok_or_else(|| Fatal(format!("missing {flag}")))
}

fn load_lexicon(config: &RunConfig) -> Result<Lexicon, Fatal> {
    let path = required(&config.lexicon_path, "--lexicon")?;
    let lex = parse_lexicon_source(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    if let Some(d) = check_hierarchy(&lex).first() {
        return Err(Fatal(format!("{}: class hierarchy: {d}", path.display())));
    }
    Ok(lex)
}

fn load_catalog(config: &RunConfig) -> Result<Catalog, Fatal> {
    match &config.catalog_path {
        None => Ok(Catalog::builtin()),
        Some(p) => Catalog::parse(&read(p)?).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
    }
}

struct Session<'a> {
    out: String,
    err: &'a mut dyn Write,
    code: i32,
}

impl Session<'_> {
    fn warn(&mut self, message: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{message}");
    }

    fn raise(&mut self, code: i32) {
        self.code = self.code.max(code);
    }
}

fn emit(config: &RunConfig, s: &mut Session) -> Result<(), Fatal> {
    let lex = load_lexicon(config)?;
    let rules = match &config.rules_path {
        Some(p) => RuleSet::parse(&read(p)?).map_err(|e| Fatal(format!("{}: {e}", p.display())))?,
        None if config.command == Command::Compile => RuleSet::semlex(),
        None => RuleSet::table(),
    };
    let emission = emit_outputs(&lex, &rules).map_err(|e| Fatal(e.to_string()))?;
    s.out.push_str(&emission.text);
    for w in &emission.warnings {
        s.warn(format_args!("warning: {w}"));
    }
    if config.strict && !emission.warnings.is_empty() {
        s.raise(EXIT_FINDINGS);
    }
    Ok(())
}

fn check(config: &RunConfig, s: &mut Session) -> Result<(), Fatal> {
    let lex = load_lexicon(config)?;
    let catalog = load_catalog(config)?;
    let index = PatternIndex::build(&lex, &catalog).map_err(|e| Fatal(e.to_string()))?;
    let aliases = match &config.alias_path {
        None => SortAliasTable::builtin(),
        Some(p) => SortAliasTable::parse(&read(p)?).map_err(|e| Fatal(format!("{}: {e}", p.display())))?,
    };
    let path = required(&config.vit_path, "--vits")?;
    let vits = parse_vits(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    let options = ValidateOptions { strict: config.strict };
    for vit in vits {
        let vit = match vit {
            Ok(v) => v,
            Err(e) => {
                s.warn(format_args!("{}: {e}", path.display()));
                s.raise(EXIT_INPUT);
                continue;
            }
        };
        let violations = validate_with(&vit, &index, &aliases, options);
        if violations.is_empty() {
            continue;
        }
        s.raise(EXIT_FINDINGS);
        let id = vit.segment.utterance_id.text();
        match config.format {
            Format::Text => {
                s.out.push_str(&format!("% {id}\n"));
                for v in &violations {
                    s.out.push_str(&format!("{v}\n"));
                }
            }
            Format::Json => {
                for v in &violations {
                    let record = serde_json::json!({
                        "utterance": id,
                        "code": v.code.as_str(),
                        "location": v.location,
                        "detail": v.detail,
                    });
                    s.out.push_str(&format!("{record}\n"));
                }
            }
        }
    }
    Ok(())
}

fn show(p: &Plugging) -> String {
    if p.assignment.is_empty() {
        "(empty)".to_string()
    } else {
        p.to_string()
    }
}

fn readings(config: &RunConfig, s: &mut Session) -> Result<(), Fatal> {
    let catalog = load_catalog(config)?;
    let path = required(&config.vit_path, "--vits")?;
    let vits = parse_vits(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    for vit in vits {
        let vit = match vit {
            Ok(v) => v,
            Err(e) => {
                s.warn(format_args!("{}: {e}", path.display()));
                s.raise(EXIT_INPUT);
                continue;
            }
        };
        let id = vit.segment.utterance_id.text().to_string();
        let scoped = build_scope_graph(&vit, &catalog).and_then(|g| enumerate_pluggings(&g).map(|r| (g, r)));
        let (graph, all) = match scoped {
            Ok(x) => x,
            Err(e) => {
                s.warn(format_args!("{id}: {e}"));
                s.raise(EXIT_INPUT);
                continue;
            }
        };
        s.out.push_str(&format!("% {id}: {} reading(s)\n", all.len()));
        for p in &all {
            s.out.push_str(&format!("{}\n", show(p)));
            if config.trees {
                match build_tree(&vit, &graph, p) {
                    Ok(tree) => {
                        for line in tree.to_string().lines() {
                            s.out.push_str(&format!("    {line}\n"));
                        }
                    }
                    Err(e) => s.warn(format_args!("{id}: {e}")),
                }
            }
        }
        match default_plugging(&vit, &graph) {
            Ok((p, true)) => s.out.push_str(&format!("% default: {} (admissible)\n", show(&p))),
            Ok((p, false)) => {
                s.out.push_str(&format!("% default: {} (not admissible)\n", show(&p)));
                if config.strict {
                    s.raise(EXIT_FINDINGS);
                }
            }
            Err(e) => {
                s.out.push_str(&format!("% default: none ({e})\n"));
                if config.strict {
                    s.raise(EXIT_FINDINGS);
                }
            }
        }
    }
    Ok(())
}

/// Runs one command. Output goes to `out` (or the configured file),
/// diagnostics to `err`; the return value is the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut s = Session {
        out: String::new(),
        err,
        code: EXIT_OK,
    };
    let result = match config.command {
        Command::Compile | Command::Table => emit(config, &mut s),
        Command::Check => check(config, &mut s),
        Command::Readings => readings(config, &mut s),
    };
    if let Err(Fatal(message)) = result {
        s.warn(format_args!("error: {message}"));
        return EXIT_INPUT;
    }
    let written = match &config.output_path {
        Some(p) => fs::write(p, &s.out).map_err(|e| format!("{}: {e}", p.display())),
        None => out.write_all(s.out.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(message) = written {
        s.warn(format_args!("error: {message}"));
        return EXIT_INPUT;
    }
    s.code
}
