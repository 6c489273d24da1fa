//! Command-line front end: `counterexample`, `verify`, `trees` and `component`.
//!
//! Exit codes: 0 when the scenario is confirmed, 1 when it is contradicted at the given
//! truncation, 2 on usage or precondition errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Ring, RingKind};
use crate::operadcore::{builtin_operad, load_collection, make_generator_collection, tree_component, SymmetricCollection};
use crate::treecomb::{canonical_code, enumerate_reduced, EnumFlags};
use crate::verifier::{self, components_tsv, homology_rows, ComponentRecord, Report};
use crate::chaincx::homology;

/// Directory for reports when no `--output` is given.
pub const OUTPUT_DIR_ENV: &str = "OPCOPROD_OUTPUT_DIR";

pub const EXIT_CONFIRMED: i32 = 0;
pub const EXIT_CONTRADICTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "opcoprod", version, about = "Homology of operad coproducts with free operads, tree by tree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    I,
    Ii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YesNo {
    Yes,
    No,
}

impl YesNo {
    fn get(self) -> bool {
        self == YesNo::Yes
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Report path; defaults to $OPCOPROD_OUTPUT_DIR/<command>.<format>, else stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct OperadArgs {
    /// Built-in operad: unit, com, com-nonunital, assoc-nonunital.
    #[arg(long, default_value = "com")]
    pub operad: String,
    /// JSON collection description; overrides --operad and --ring.
    #[arg(long)]
    pub collection: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// COM joined with an acyclic arity-0 generator over F_p.
    Counterexample {
        #[arg(long, value_parser = parse_ring)]
        ring: Ring,
        #[arg(long, default_value_t = 3)]
        max_power: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        s: i32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Checks that the inclusion of the operad is a quasi-isomorphism up to truncation.
    Verify {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_ring)]
        ring: Option<Ring>,
        #[arg(long, default_value_t = 1)]
        r_max: usize,
        #[arg(long, default_value_t = 2)]
        max_s: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        s: i32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Counts (and optionally renders) reduced marked trees by slot count.
    Trees {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_s: usize,
        #[arg(long, value_enum)]
        nullary: YesNo,
        #[arg(long, value_enum)]
        unary: YesNo,
        /// Include an indented rendering of every tree.
        #[arg(long)]
        render: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dimensions and homology of the component of one tree, given by canonical code.
    Component {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, value_parser = parse_ring, default_value = "Q")]
        ring: Ring,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        s: i32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_ring(s: &str) -> std::result::Result<Ring, String> {
    s.parse::<Ring>().map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct TreeListing {
    r: usize,
    n: usize,
    max_s: usize,
    counts: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trees: Vec<TreeEntry>,
}

#[derive(Serialize)]
struct TreeEntry {
    s_count: usize,
    code: String,
    render: String,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_CONFIRMED };
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Counterexample { ring, max_power, s, out } => {
            let RingKind::PrimeField(p) = ring.kind() else {
                return Err(Error::Precondition(format!(
                    "the counterexample needs positive characteristic (got {ring})"
                )));
            };
            let report = verifier::run_counterexample(p, max_power, s)?;
            emit_report(&report, "counterexample", &out, stdout)?;
            Ok(if report.witness().is_some() { EXIT_CONFIRMED } else { EXIT_CONTRADICTED })
        }
        Command::Verify { case, operad, n, ring, r_max, max_s, s, out } => {
            let report = match case {
                Case::I => {
                    let o = collection(&operad, ring.unwrap_or_else(Ring::rationals))?;
                    verifier::run_case_i_with(&o, n, r_max, max_s, s)?
                }
                Case::Ii => {
                    if let Some(r) = ring.filter(|r| *r != Ring::rationals()) {
                        return Err(Error::Precondition(format!("case ii runs over Q, not {r}")));
                    }
                    let o = collection(&operad, Ring::rationals())?;
                    verifier::run_case_ii_with(&o, n, r_max, max_s, s)?
                }
            };
            emit_report(&report, "verify", &out, stdout)?;
            Ok(if report.verdict.is_qiso() { EXIT_CONFIRMED } else { EXIT_CONTRADICTED })
        }
        Command::Trees { r, n, max_s, nullary, unary, render, out } => {
            if r >= 32 {
                return Err(Error::Precondition("at most 31 argument labels".into()));
            }
            let flags = EnumFlags { allow_nullary: nullary.get(), allow_unary: unary.get() };
            let groups = enumerate_reduced(r, n, max_s, flags);
            let counts = groups.iter().enumerate().map(|(s, g)| (s, g.len())).collect();
            let trees = if render {
                groups
                    .iter()
                    .enumerate()
                    .flat_map(|(s, g)| {
                        g.iter().map(move |t| TreeEntry {
                            s_count: s,
                            code: canonical_code(t).to_string(),
                            render: t.render(),
                        })
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let listing = TreeListing { r, n, max_s, counts, trees };
            let text = match out.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&listing)?),
                Format::Tsv => {
                    let mut s = String::from("s_count\tcount\n");
                    for (k, c) in &listing.counts {
                        s.push_str(&format!("{k}\t{c}\n"));
                    }
                    for t in &listing.trees {
                        s.push_str(&format!("# {}\t{}\n", t.s_count, t.code));
                        for line in t.render.lines() {
                            s.push_str(&format!("#   {line}\n"));
                        }
                    }
                    s
                }
            };
            emit(&text, "trees", &out, stdout)?;
            Ok(EXIT_CONFIRMED)
        }
        Command::Component { operad, ring, n, r, code, s, out } => {
            let o = collection(&operad, ring)?;
            let slots = code.matches("s(").count();
            let tree = enumerate_reduced(r, n, slots, o.enum_flags())
                .into_iter()
                .flatten()
                .find(|t| canonical_code(t).as_str() == code)
                .ok_or_else(|| Error::Precondition(format!("{code:?} is not a reduced tree for r = {r}, n = {n}")))?;
            let gen = make_generator_collection(o.ring(), n, s);
            let c = tree_component(&o, &gen, &tree)?;
            let record = ComponentRecord {
                r,
                code: c.code.to_string(),
                s_count: c.slot_count(),
                aut_order: c.aut.order,
                dims: c.component.dims(),
                homology: homology_rows(&homology(&c.component)),
            };
            let text = match out.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&record)?),
                Format::Tsv => components_tsv(std::slice::from_ref(&record)),
            };
            emit(&text, "component", &out, stdout)?;
            Ok(EXIT_CONFIRMED)
        }
    }
}

fn collection(args: &OperadArgs, ring: Ring) -> Result<SymmetricCollection> {
    match &args.collection {
        Some(path) => load_collection(path),
        None => builtin_operad(&args.operad, ring),
    }
}

fn emit_report(report: &Report, command: &str, out: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = match out.format {
        Format::Json => report.to_json()?,
        Format::Tsv => report.to_tsv(),
    };
    let written = emit(&text, command, out, stdout)?;
    if written {
        let mut line = format!("verdict: {}", report.verdict.name());
        if let Some(w) = report.witness() {
            line.push_str(&format!(" (witness {} with |S| = {})", w.code, w.s_count));
        }
        writeln!(stdout, "{line}")?;
    }
    Ok(())
}

/// Writes to the chosen destination; returns whether a file was written.
fn emit(text: &str, command: &str, out: &OutputArgs, stdout: &mut dyn Write) -> Result<bool> {
    let ext = match out.format {
        Format::Json => "json",
        Format::Tsv => "tsv",
    };
    let path = match (&out.output, std::env::var_os(OUTPUT_DIR_ENV)) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => Path::new(&dir).join(format!("{command}.{ext}")),
        (None, None) => {
            stdout.write_all(text.as_bytes())?;
            return Ok(false);
        }
    };
    write_atomically(&path, text)?;
    Ok(true)
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
