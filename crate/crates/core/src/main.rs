use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skeleta::cli::{
    parse_corpus, parse_polytope, render_homology_table, render_jsonl, render_strata_table,
    render_tsv, render_verification, run_batch, run_check, run_homology, BatchItem, Format,
    Interpretation, PolytopeDocument, RowStatus, RunOptions,
};
use skeleta::{Error, Ring};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skeleta",
    version,
    about = "Homology of skeleta of reflexive lattice polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report reflexivity, simpliciality, f-vector, lattice points and volume.
    Check {
        file: PathBuf,
        /// Treat the vertices as the primal polytope and dualize first.
        #[arg(long)]
        primal: bool,
    },
    /// Compute the E² page and Betti numbers.
    Homology {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Print the full result document as JSON.
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Print a human-readable table (the default).
        #[arg(long)]
        table: bool,
        #[arg(long)]
        primal: bool,
    },
    /// List every face with its group and chart.
    Strata {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        primal: bool,
    },
    /// Run many polytopes; files, directories or multi-polytope corpora.
    Batch {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, conflicts_with = "jsonl")]
        tsv: bool,
        #[arg(long)]
        jsonl: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = RingArg::Q)]
    ring: RingArg,
    /// Cross-check against the independent oracles.
    #[arg(long)]
    verify: bool,
    /// Turn failures into a nonzero exit status (3 for a failed
    /// verification; in batch mode also 2 or 1 for bad or crashing items).
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Q,
    Z,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            ring: match self.ring {
                RingArg::Q => Ring::Q,
                RingArg::Z => Ring::Z,
            },
            verify: self.verify,
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    if err.is_input_error() {
        EXIT_INVALID
    } else {
        EXIT_INTERNAL
    }
}

fn read_one(path: &Path, primal: bool) -> Result<PolytopeDocument, (u8, String)> {
    let bytes =
        std::fs::read(path).map_err(|e| (EXIT_INVALID, format!("{}: {e}", path.display())))?;
    let mut doc = parse_polytope(&bytes, Format::detect(&bytes))
        .map_err(|e| (exit_for(&e), format!("{}: {e}", path.display())))?;
    if primal {
        doc.interpretation = Interpretation::Primal;
    }
    Ok(doc)
}

/// Expands directories (sorted, non-recursive) and splits corpora.
fn batch_items(paths: &[PathBuf]) -> Result<Vec<BatchItem>, (u8, String)> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| (EXIT_INVALID, format!("{}: {e}", path.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    let mut items = Vec::new();
    for file in files {
        let stem = file.file_stem().map_or_else(
            || file.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        let bytes = match std::fs::read(&file) {
            Ok(b) => b,
            Err(e) => {
                items.push(BatchItem {
                    name: stem,
                    document: Err(Error::Parse {
                        position: file.display().to_string(),
                        message: e.to_string(),
                    }),
                });
                continue;
            }
        };
        match parse_corpus(&bytes, Format::detect(&bytes)) {
            Ok(docs) if docs.len() == 1 => {
                let doc = docs.into_iter().next().expect("one document");
                items.push(BatchItem {
                    name: doc.name.clone().unwrap_or(stem),
                    document: Ok(doc),
                });
            }
            Ok(docs) => {
                for (k, doc) in docs.into_iter().enumerate() {
                    items.push(BatchItem {
                        name: doc.name.clone().unwrap_or_else(|| format!("{stem}#{k}")),
                        document: Ok(doc),
                    });
                }
            }
            Err(e) => items.push(BatchItem {
                name: stem,
                document: Err(e),
            }),
        }
    }
    Ok(items)
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let mut out = std::io::stdout().lock();
    let mut emit = |s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| (EXIT_INTERNAL, format!("cannot write output: {e}")))
    };
    let fail = |e: Error| (exit_for(&e), e.to_string());

    match cli.command {
        Command::Check { file, primal } => {
            let doc = read_one(&file, primal)?;
            let report = run_check(&doc).map_err(fail)?;
            emit(&(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))?;
            Ok(if report.usable() { 0 } else { EXIT_INVALID })
        }
        Command::Homology {
            file,
            run,
            json,
            table: _,
            primal,
        } => {
            let doc = read_one(&file, primal)?;
            let res = run_homology(&doc, run.options()).map_err(fail)?;
            if json {
                emit(&(res.to_json() + "\n"))?;
            } else {
                emit(&render_homology_table(&res))?;
            }
            let mismatch = res.verification.as_ref().filter(|v| !v.passed);
            if let (true, Some(v)) = (json, mismatch) {
                // the table already shows it; JSON consumers get it on stderr too
                eprint!("{}", render_verification(v));
            }
            let mismatch = mismatch.is_some();
            Ok(if mismatch && run.strict {
                EXIT_MISMATCH
            } else {
                0
            })
        }
        Command::Strata { file, json, primal } => {
            let doc = read_one(&file, primal)?;
            let res = run_homology(&doc, RunOptions::default()).map_err(fail)?;
            if json {
                emit(&(serde_json::to_string_pretty(&res.faces).expect("serializable") + "\n"))?;
            } else {
                emit(&render_strata_table(&res))?;
            }
            Ok(0)
        }
        Command::Batch {
            paths,
            run,
            jobs,
            tsv: _,
            jsonl,
        } => {
            let items = batch_items(&paths)?;
            let rows = run_batch(&items, run.options(), jobs).map_err(fail)?;
            emit(&if jsonl {
                render_jsonl(&rows)
            } else {
                render_tsv(&rows)
            })?;
            // without --strict, per-item failures only show up in their rows
            let code = if !run.strict {
                0
            } else if rows.iter().any(|r| r.status == RowStatus::Error) {
                EXIT_INTERNAL
            } else if rows.iter().any(|r| r.status == RowStatus::Invalid) {
                EXIT_INVALID
            } else if rows.iter().any(|r| r.verify == "fail") {
                EXIT_MISMATCH
            } else {
                0
            };
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("skeleta: {message}");
            ExitCode::from(code)
        }
    }
}
