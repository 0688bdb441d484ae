//! Command-line interface: analyze a group, verify a candidate set,
//! run the brute-force search, or batch-analyze a directory.
//!
//! Exit codes: 0 when the question was decided, 1 on input errors,
//! 2 when the answer is unknown (budget exhausted or sampling failed).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use orr_core::aut::{verify_orr, DEFAULT_NODE_BUDGET};
use orr_core::cayley::{CayleyDigraph, ConnectionSet};
use orr_core::construct::{Answer, ConstructOptions};
use orr_core::group::load_group_file;
use orr_core::oracle::{brute_force_orr, OracleAnswer, OracleTranscript, DEFAULT_CANDIDATE_BUDGET};
use orr_core::report::{analyze, Verdict};
use orr_core::{Elem, OrrError};

#[derive(Parser)]
#[command(
    name = "orr",
    about = "Construct and verify oriented regular representations of finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one group file and print the verdict as JSON.
    Analyze {
        /// Group file (JSON, kind "table" or "perm").
        file: PathBuf,
        /// Write the verdict here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for sampled searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate budget for brute-force fallbacks.
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
        budget: u64,
        /// Always run the full stabilizer search, never the
        /// induced-subdigraph shortcut.
        #[arg(long)]
        full_aut: bool,
        /// Write the digraph's arc list ("n m" header, then one
        /// "u v" line per arc) when a connection set was found.
        #[arg(long)]
        arcs: Option<PathBuf>,
    },
    /// Verify one candidate connection set, given as comma-separated
    /// element indices.
    Verify {
        file: PathBuf,
        /// Candidate set, e.g. --set 1,2,5.
        #[arg(long)]
        set: String,
        #[arg(long)]
        full_aut: bool,
    },
    /// Exhaustive or sampled search over all oriented sets.
    Brute {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Analyze every .json group file in a directory; one JSON verdict
    /// per line, in filename order.
    Batch {
        dir: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSONL here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                OrrError::BudgetExhausted { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, OrrError> {
    match cli.cmd {
        Cmd::Analyze {
            file,
            out,
            seed,
            budget,
            full_aut,
            arcs,
        } => {
            let (name, group) = load_group_file(&file)?;
            let opts = ConstructOptions {
                allow_fast_path: !full_aut,
                candidate_budget: budget,
                seed,
                ..ConstructOptions::default()
            };
            let verdict = analyze(&name, &group, &opts)?;
            if let Some(path) = &arcs {
                write_arc_dump(&group, &verdict, path)?;
            }
            let json = serde_json::to_string_pretty(&verdict).map_err(io_err)?;
            emit(out.as_deref(), &json)?;
            Ok(match verdict.answer {
                Answer::Unknown => 2,
                _ => 0,
            })
        }
        Cmd::Verify {
            file,
            set,
            full_aut,
        } => {
            let (_, group) = load_group_file(&file)?;
            let elems = parse_set(&set)?;
            let cs = ConnectionSet::new(&group, &elems)?;
            let report = verify_orr(&group, &cs, !full_aut, DEFAULT_NODE_BUDGET)?;
            println!("oriented: {}", report.oriented);
            println!("generates: {}", report.generates);
            println!("stabilizer_order: {}", report.stabilizer_order);
            println!("orr: {}", report.is_orr);
            Ok(0)
        }
        Cmd::Brute { file, budget, seed } => {
            let (name, group) = load_group_file(&file)?;
            let outcome = brute_force_orr(&group, budget, seed)?;
            let (answer, set) = match outcome.answer {
                OracleAnswer::Found(s) => ("FOUND", Some(s)),
                OracleAnswer::DefinitelyNone => ("DEFINITELY_NONE", None),
                OracleAnswer::Unknown => ("UNKNOWN", None),
            };
            #[derive(Serialize)]
            struct BruteReport<'a> {
                group_name: &'a str,
                order: usize,
                answer: &'a str,
                #[serde(skip_serializing_if = "Option::is_none")]
                set: Option<Vec<Elem>>,
                transcript: &'a OracleTranscript,
            }
            let report = BruteReport {
                group_name: &name,
                order: group.order(),
                answer,
                set,
                transcript: &outcome.transcript,
            };
            println!("{}", serde_json::to_string_pretty(&report).map_err(io_err)?);
            Ok(if answer == "UNKNOWN" { 2 } else { 0 })
        }
        Cmd::Batch { dir, jobs, out } => batch(&dir, jobs, out.as_deref()),
    }
}

fn batch(dir: &Path, jobs: Option<usize>, out: Option<&Path>) -> Result<u8, OrrError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(OrrError::Parse(format!(
            "no .json group files in {}",
            dir.display()
        )));
    }

    #[derive(Serialize)]
    #[serde(untagged)]
    enum Line {
        Verdict { file: String, verdict: Verdict },
        Error { file: String, error: String },
    }
    let analyze_one = |path: &PathBuf| -> Line {
        let file = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match load_group_file(path)
            .and_then(|(name, group)| analyze(&name, &group, &ConstructOptions::default()))
        {
            Ok(verdict) => Line::Verdict { file, verdict },
            Err(e) => Line::Error {
                file,
                error: e.to_string(),
            },
        }
    };
    let lines: Vec<Line> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| OrrError::Parse(format!("thread pool: {e}")))?;
        pool.install(|| files.par_iter().map(analyze_one).collect())
    };

    let mut text = String::new();
    let mut saw_error = false;
    let mut saw_unknown = false;
    for line in &lines {
        match line {
            Line::Error { .. } => saw_error = true,
            Line::Verdict { verdict, .. } if verdict.answer == Answer::Unknown => {
                saw_unknown = true
            }
            _ => {}
        }
        text.push_str(&serde_json::to_string(line).map_err(io_err)?);
        text.push('\n');
    }
    emit_raw(out, &text)?;
    Ok(if saw_error {
        1
    } else if saw_unknown {
        2
    } else {
        0
    })
}

fn parse_set(text: &str) -> Result<Vec<Elem>, OrrError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Elem>()
                .map_err(|_| OrrError::Parse(format!("bad element index '{t}' in --set")))
        })
        .collect()
}

fn write_arc_dump(
    group: &orr_core::GroupTable,
    verdict: &Verdict,
    path: &Path,
) -> Result<(), OrrError> {
    match &verdict.connection_set {
        Some(set) => {
            let cs = ConnectionSet::new(group, &set.indices)?;
            let cay = CayleyDigraph::new(group, cs);
            let mut f = fs::File::create(path)?;
            cay.write_arcs(&mut f)?;
            Ok(())
        }
        None => {
            eprintln!("note: no connection set; skipping arc dump");
            Ok(())
        }
    }
}

fn emit(out: Option<&Path>, json: &str) -> Result<(), OrrError> {
    emit_raw(out, &format!("{json}\n"))
}

fn emit_raw(out: Option<&Path>, text: &str) -> Result<(), OrrError> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn io_err(e: serde_json::Error) -> OrrError {
    OrrError::Parse(format!("serializing output: {e}"))
}
