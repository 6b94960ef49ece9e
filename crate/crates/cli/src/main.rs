//! `resgraph`: command-line driver over the resonance-core checks.
//!
//! Exit status: 0 when every asserted check passes, 1 on a violation,
//! 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use resonance_core::corpus::{builtin_corpus, builtin_instance, CorpusInstance, GeneratorKind};
use resonance_core::emb::{parse_emb, write_emb};
use resonance_core::matching::enumerate_perfect_matchings;
use resonance_core::polynomial::{cube_polynomial, zz_polynomial};
use resonance_core::report::{hunt, run_report, Report, ReportError, ReportOptions, SCHEMA_VERSION};
use resonance_core::{build_resonance_graph, IntegerPolynomial};

#[derive(Parser)]
#[command(name = "resgraph", version, about = "Resonance graphs of embedded graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the faces of an embedding.
    Faces { file: String },
    /// List all perfect matchings.
    Matchings { file: String },
    /// Build the resonance graph for a face set.
    Resonance {
        file: String,
        #[arg(long, default_value = "all-even")]
        faces: String,
        /// Write Graphviz output here ('-' for stdout, replacing the JSON).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Zhang-Zhang polynomial.
    Zz {
        file: String,
        #[arg(long)]
        faces: String,
    },
    /// Cube polynomial of the resonance graph.
    Cubepoly {
        file: String,
        #[arg(long)]
        faces: String,
    },
    /// Full report with every check.
    Check {
        file: String,
        #[arg(long)]
        faces: String,
        /// Report violations instead of refusing when the set is every face.
        #[arg(long)]
        allow_full_face_set: bool,
        /// Include per-matching cube labels.
        #[arg(long)]
        labels: bool,
    },
    /// Search generated instances for components that are not median graphs.
    Hunt {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        max_size: usize,
        /// Half-open seed range `a..b`.
        #[arg(long, default_value = "0..10")]
        seeds: String,
    },
    /// Bundled fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Names, face labels and face sets.
    List,
    /// Report on every fixture and face set, in name order.
    Run {
        /// Also run the sets that contain every face, in violation mode.
        #[arg(long)]
        allow_full_face_set: bool,
    },
    /// Write each fixture as `<name>.emb` into a directory.
    Export { dir: PathBuf },
}

/// Bad input; reported with exit status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

/// A path to a `.emb` file, or the name of a bundled fixture.
fn load(arg: &str) -> Result<CorpusInstance> {
    let path = Path::new(arg);
    if path.exists() {
        let text = input(fs::read_to_string(path).with_context(|| format!("reading {arg}")))?;
        let g = input(parse_emb(&text).with_context(|| format!("parsing {arg}")))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return Ok(CorpusInstance::from_graph(name, g));
    }
    input(builtin_instance(arg).map_err(|_| anyhow!("no such file or bundled instance: {arg}")))
}

fn poly_json(p: &IntegerPolynomial) -> Value {
    json!({ "coefficients": p, "text": p.to_string() })
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print(v: &Value) {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    emit(&s);
}

fn report_options(allow_full_face_set: bool, labels: bool) -> ReportOptions {
    ReportOptions {
        allow_full_face_set,
        include_labels: labels,
        ..ReportOptions::default()
    }
}

fn report(inst: &CorpusInstance, faces: &str, opts: &ReportOptions) -> Result<Report> {
    match run_report(inst, faces, opts) {
        Ok(r) => Ok(r),
        Err(ReportError::HypothesisViolated(set)) => input(Err(anyhow!(
            "face set '{set}' contains every face; rerun with --allow-full-face-set to report violations"
        ))),
        Err(ReportError::Corpus(e)) => input(Err(e)),
    }
}

fn parse_seeds(s: &str) -> Result<std::ops::Range<u64>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| InputError(anyhow!("seeds must look like a..b, got '{s}'")))?;
    let a: u64 = input(a.trim().parse::<u64>().with_context(|| format!("bad seed '{a}'")))?;
    let b: u64 = input(b.trim().parse::<u64>().with_context(|| format!("bad seed '{b}'")))?;
    if a >= b {
        return input(Err(anyhow!("empty seed range {s}")));
    }
    Ok(a..b)
}

/// Frozen payload mismatches for one face set.
fn expected_mismatches(inst: &CorpusInstance, rep: &Report) -> Vec<String> {
    let Some(exp) = inst.expected.iter().find(|e| e.face_set == rep.face_set.name) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let got = (rep.matchings, rep.resonance.edges, rep.resonance.components);
    let want = (exp.matchings, exp.resonance_edges, exp.components);
    if got != want {
        out.push(format!("counts {got:?}, expected {want:?}"));
    }
    if rep.polynomials.zz.coefficients() != exp.zz.as_slice() {
        out.push(format!("zz {}, expected {:?}", rep.polynomials.zz_text, exp.zz));
    }
    if rep.polynomials.cube.coefficients() != exp.cube.as_slice() {
        out.push(format!("cube {}, expected {:?}", rep.polynomials.cube_text, exp.cube));
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Faces { file } => {
            let inst = load(&file)?;
            let g = &inst.graph;
            let faces: Vec<Value> = g
                .faces()
                .iter()
                .map(|f| {
                    json!({
                        "id": f.id,
                        "label": inst.face_label(f.id),
                        "length": f.len(),
                        "is_cycle": f.is_cycle,
                        "is_even": f.is_even,
                        "boundary": f.boundary,
                    })
                })
                .collect();
            print(&json!({
                "schema": SCHEMA_VERSION,
                "instance": inst.name,
                "vertices": g.n_vertices(),
                "edges": g.n_edges(),
                "euler_genus": g.euler_genus().ok(),
                "even_faces": g.even_faces(),
                "faces": faces,
            }));
            Ok(true)
        }
        Command::Matchings { file } => {
            let inst = load(&file)?;
            let ms = enumerate_perfect_matchings(&inst.graph);
            print(&json!({
                "schema": SCHEMA_VERSION,
                "instance": inst.name,
                "count": ms.len(),
                "matchings": ms,
            }));
            Ok(true)
        }
        Command::Resonance { file, faces, dot } => {
            let inst = load(&file)?;
            let set = input(inst.select(&faces))?;
            let r = build_resonance_graph(&inst.graph, &set);
            let name = |f: usize| inst.face_label(f).map_or_else(|| format!("f{f}"), str::to_string);
            let rendered = r.to_dot(name);
            match dot.as_deref() {
                Some(p) if p == Path::new("-") => {
                    emit(&rendered);
                    return Ok(true);
                }
                Some(p) => input(fs::write(p, &rendered).with_context(|| format!("writing {}", p.display())))?,
                None => {}
            }
            let components: Vec<Value> = r
                .components()
                .iter()
                .map(|h| json!({ "id": h.id, "vertices": h.vertices, "faces": h.face_list() }))
                .collect();
            print(&json!({
                "schema": SCHEMA_VERSION,
                "instance": inst.name,
                "face_set": set.face_ids,
                "proper_subset": set.is_proper_subset,
                "vertices": r.n_vertices(),
                "matchings": r.matchings(),
                "edges": r.edges(),
                "shared_pairs": r.shared_pairs(),
                "bipartite": r.two_coloring().is_ok(),
                "components": components,
            }));
            Ok(true)
        }
        Command::Zz { file, faces } => {
            let inst = load(&file)?;
            let set = input(inst.select(&faces))?;
            let p = zz_polynomial(&inst.graph, &set);
            print(&json!({ "schema": SCHEMA_VERSION, "instance": inst.name, "face_set": set.face_ids, "zz": poly_json(&p) }));
            Ok(true)
        }
        Command::Cubepoly { file, faces } => {
            let inst = load(&file)?;
            let set = input(inst.select(&faces))?;
            let p = cube_polynomial(&build_resonance_graph(&inst.graph, &set));
            print(&json!({ "schema": SCHEMA_VERSION, "instance": inst.name, "face_set": set.face_ids, "cube": poly_json(&p) }));
            Ok(true)
        }
        Command::Check {
            file,
            faces,
            allow_full_face_set,
            labels,
        } => {
            let inst = load(&file)?;
            let rep = report(&inst, &faces, &report_options(allow_full_face_set, labels))?;
            emit(&rep.to_json());
            Ok(rep.verdict.passed)
        }
        Command::Hunt { kind, max_size, seeds } => {
            let kind: GeneratorKind = input(kind.parse::<GeneratorKind>())?;
            let seeds = parse_seeds(&seeds)?;
            let rep = hunt(kind, max_size, seeds, &ReportOptions::default());
            emit(&(serde_json::to_string_pretty(&rep).expect("json") + "\n"));
            Ok(rep.consistent)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let list: Vec<Value> = builtin_corpus()
                    .iter()
                    .map(|i| {
                        json!({
                            "name": i.name,
                            "description": i.description,
                            "vertices": i.graph.n_vertices(),
                            "edges": i.graph.n_edges(),
                            "faces": i.graph.faces().len(),
                            "face_labels": i.face_labels,
                            "face_sets": i.face_sets,
                            "reconstructed": i.reconstructed,
                        })
                    })
                    .collect();
                print(&json!({ "schema": SCHEMA_VERSION, "instances": list }));
                Ok(true)
            }
            CorpusAction::Run { allow_full_face_set } => {
                let opts = report_options(allow_full_face_set, false);
                let jobs: Vec<(CorpusInstance, String)> = builtin_corpus()
                    .into_iter()
                    .flat_map(|i| {
                        let names: Vec<String> = i.face_sets.iter().map(|s| s.name.clone()).collect();
                        names.into_iter().map(move |n| (i.clone(), n))
                    })
                    .collect();
                let results: Vec<Option<Value>> = jobs
                    .par_iter()
                    .map(|(inst, set)| match run_report(inst, set, &opts) {
                        Ok(rep) => {
                            let mismatches = expected_mismatches(inst, &rep);
                            let passed = rep.verdict.passed && mismatches.is_empty();
                            Some(json!({
                                "instance": inst.name,
                                "face_set": set,
                                "passed": passed,
                                "expected_mismatches": mismatches,
                                "report": rep,
                            }))
                        }
                        Err(ReportError::HypothesisViolated(_)) => None,
                        Err(e) => Some(json!({
                            "instance": inst.name,
                            "face_set": set,
                            "passed": false,
                            "error": e.to_string(),
                        })),
                    })
                    .collect();
                let runs: Vec<Value> = results.into_iter().flatten().collect();
                let passed = runs.iter().all(|r| r["passed"] == json!(true));
                print(&json!({ "schema": SCHEMA_VERSION, "passed": passed, "runs": runs }));
                Ok(passed)
            }
            CorpusAction::Export { dir } => {
                input(fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display())))?;
                for inst in builtin_corpus() {
                    let path = dir.join(format!("{}.emb", inst.name));
                    input(fs::write(&path, write_emb(&inst.graph)).with_context(|| format!("writing {}", path.display())))?;
                }
                Ok(true)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if e.downcast_ref::<InputError>().is_some() {
                eprintln!("error: {e}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}
