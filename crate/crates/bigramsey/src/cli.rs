//! Command-line front end. [`run`] returns the process exit code:
//! 0 on success, 1 for malformed input, 2 when a resource cap is hit,
//! 3 when an internal invariant (an oracle cross-check) fails.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::brute::{brute_devlin_oracle, brute_hyper_oracle, brute_sauer_oracle};
use crate::catalog::{Catalog, EnumError, Mode, DEFAULT_CAP};
use crate::devlin::{enumerate_devlin, hook_count_oracle, tangent_number};
use crate::dot::{export_catalog, ExportError};
use crate::hyper::{enumerate_hyper, TieReading};
use crate::io::{CatalogFile, IoError, StructureFile};
use crate::randstruct::realized_shapes;
use crate::sauer::enumerate_sauer;
use crate::shape::Family;

#[derive(Parser)]
#[command(name = "bigramsey", version, about = "Big Ramsey degree catalogs")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate order shapes on 2n-1 elements and cross-check the count
    /// against both independent oracles.
    Devlin {
        #[arg(long)]
        n: usize,
        /// Count classes without retaining their codes.
        #[arg(long)]
        count_only: bool,
        /// Write the catalog as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort with exit code 2 beyond this many retained shapes.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Enumerate graph shapes for a graph read from a structure file.
    Sauer {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Enumerate two-sorted hypergraph shapes for a 3-uniform hypergraph
    /// read from a structure file.
    Hyper {
        #[arg(long)]
        hypergraph: PathBuf,
        /// How ties in the global insertion order are read: `literal` or
        /// `strict`.
        #[arg(long, default_value = "literal")]
        tie_reading: TieReading,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Independent counting oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Survey which shapes are realized by n-subsets of a deterministic
    /// finite approximation of the universal structure.
    Realized {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Number of vertices of the finite approximation.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Subset budget: exhaustive below it, sampled at it otherwise.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Render every shape of a saved catalog as a Graphviz DOT file.
    ExportDot {
        #[arg(long)]
        catalog: PathBuf,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Tangent number via the boustrophedon recurrence.
    Tangent {
        #[arg(long)]
        n: usize,
    },
    /// Sum of linear-extension counts via the hook-length formula.
    Hook {
        #[arg(long)]
        n: usize,
    },
    /// Unstructured search-and-deduplicate oracle; feasible only for tiny
    /// inputs.
    Brute {
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        #[arg(long, default_value = "literal")]
        tie_reading: TieReading,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        fail(1, e.to_string())
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        fail(2, e.to_string())
    }
}

impl From<ExportError> for Failure {
    fn from(e: ExportError) -> Self {
        match e {
            ExportError::Io(_) => fail(1, e.to_string()),
            _ => fail(1, e.to_string()),
        }
    }
}

fn mode(count_only: bool) -> Mode {
    if count_only {
        Mode::CountOnly
    } else {
        Mode::Full
    }
}

fn load_graph(path: &PathBuf) -> Result<crate::sauer::Graph, Failure> {
    match StructureFile::load(path)? {
        StructureFile::Graph(g) => Ok(g),
        StructureFile::Hyper(_) => {
            Err(fail(1, format!("{}: expected a graph file", path.display())))
        }
    }
}

fn load_hypergraph(path: &PathBuf) -> Result<crate::hyper::Hypergraph3, Failure> {
    match StructureFile::load(path)? {
        StructureFile::Hyper(h) => Ok(h),
        StructureFile::Graph(_) => {
            Err(fail(1, format!("{}: expected a hypergraph file", path.display())))
        }
    }
}

fn emit_catalog(
    catalog: &Catalog,
    out: Option<&PathBuf>,
    settings: BTreeMap<String, String>,
) -> Result<(), Failure> {
    println!("family: {}", catalog.family.name());
    println!("parameters: {}", catalog.parameter);
    println!("count: {}", catalog.count);
    if let Some(path) = out {
        CatalogFile::from_catalog(catalog, settings).save(path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_command(command: Command) -> Result<(), Failure> {
    match command {
        Command::Devlin { n, count_only, out, cap } => {
            if n == 0 {
                return Err(fail(1, "--n must be at least 1"));
            }
            let catalog = enumerate_devlin(n, mode(count_only), cap)?;
            let tangent = tangent_number(n);
            let hook = hook_count_oracle(n);
            if catalog.count != tangent || catalog.count != hook {
                return Err(fail(
                    3,
                    format!(
                        "oracle mismatch for n={n}: enumerated {} but tangent oracle \
                         says {tangent} and hook oracle says {hook}",
                        catalog.count
                    ),
                ));
            }
            let settings =
                BTreeMap::from([("cap".to_string(), cap.to_string())]);
            emit_catalog(&catalog, out.as_ref(), settings)
        }
        Command::Sauer { graph, count_only, out, cap } => {
            let g = load_graph(&graph)?;
            let catalog = enumerate_sauer(&g, mode(count_only), cap)?;
            let settings =
                BTreeMap::from([("cap".to_string(), cap.to_string())]);
            emit_catalog(&catalog, out.as_ref(), settings)
        }
        Command::Hyper { hypergraph, tie_reading, count_only, out, cap } => {
            let h = load_hypergraph(&hypergraph)?;
            let catalog = enumerate_hyper(&h, mode(count_only), tie_reading, cap)?;
            let settings = BTreeMap::from([
                ("cap".to_string(), cap.to_string()),
                ("tie-reading".to_string(), tie_reading.name().to_string()),
            ]);
            emit_catalog(&catalog, out.as_ref(), settings)
        }
        Command::Oracle { which } => run_oracle(which),
        Command::Realized { family, n, size, seed, budget } => {
            if n == 0 || size < n {
                return Err(fail(1, "--size must be at least --n, both positive"));
            }
            let report = realized_shapes(family, n, size, seed, budget);
            println!("family: {}", report.family.name());
            println!("surveyed: {}", report.surveyed);
            println!("discarded: {}", report.discarded);
            println!("truncated: {}", report.truncated);
            println!("realized: {}", report.codes.len());
            for code in &report.codes {
                println!("{}", code.to_hex());
            }
            Ok(())
        }
        Command::ExportDot { catalog, out } => {
            let file = CatalogFile::load(&catalog)?;
            let catalog = file.to_catalog()?;
            let written = export_catalog(&catalog, &out)?;
            println!("wrote {written} files to {}", out.display());
            Ok(())
        }
    }
}

fn run_oracle(which: OracleCommand) -> Result<(), Failure> {
    let count: BigUint = match which {
        OracleCommand::Tangent { n } => {
            if n == 0 {
                return Err(fail(1, "--n must be at least 1"));
            }
            tangent_number(n)
        }
        OracleCommand::Hook { n } => {
            if n == 0 {
                return Err(fail(1, "--n must be at least 1"));
            }
            hook_count_oracle(n)
        }
        OracleCommand::Brute { family, n, graph, hypergraph, tie_reading } => {
            match family {
                Family::Devlin => {
                    let n = n.ok_or_else(|| fail(1, "brute devlin needs --n"))?;
                    if n == 0 {
                        return Err(fail(1, "--n must be at least 1"));
                    }
                    BigUint::from(brute_devlin_oracle(n))
                }
                Family::Sauer => {
                    let path =
                        graph.ok_or_else(|| fail(1, "brute sauer needs --graph"))?;
                    BigUint::from(brute_sauer_oracle(&load_graph(&path)?))
                }
                Family::Hyper => {
                    let path = hypergraph
                        .ok_or_else(|| fail(1, "brute hyper needs --hypergraph"))?;
                    BigUint::from(brute_hyper_oracle(
                        &load_hypergraph(&path)?,
                        tie_reading,
                    ))
                }
            }
        }
    };
    println!("count: {count}");
    Ok(())
}

/// Parses and runs one invocation; `args` excludes the binary name.
pub fn run(args: impl IntoIterator<Item = String>) -> i32 {
    let argv = std::iter::once("bigramsey".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // Fails if a global pool already exists (e.g. under tests); the
        // existing pool is then used as-is.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn run_args(args: &[&str]) -> i32 {
        run(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn devlin_runs_and_saves() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d3.json");
        assert_eq!(
            run_args(&["devlin", "--n", "3", "--out", out.to_str().unwrap()]),
            0
        );
        let file = CatalogFile::load(&out).unwrap();
        assert_eq!(file.count, "16");
        assert_eq!(file.shapes.as_ref().unwrap().len(), 16);
    }

    #[test]
    fn bad_flags_exit_one() {
        assert_eq!(run_args(&["devlin"]), 1);
        assert_eq!(run_args(&["devlin", "--n", "0"]), 1);
        assert_eq!(run_args(&["nonsense"]), 1);
        assert_eq!(run_args(&["oracle", "brute", "devlin"]), 1);
    }

    #[test]
    fn cap_exits_two() {
        assert_eq!(run_args(&["devlin", "--n", "4", "--cap", "10"]), 2);
    }

    #[test]
    fn sauer_and_hyper_from_files() {
        let dir = tempfile::tempdir().unwrap();
        let gpath = dir.path().join("g.txt");
        let mut f = std::fs::File::create(&gpath).unwrap();
        writeln!(f, "graph 2\n0 1").unwrap();
        assert_eq!(run_args(&["sauer", "--graph", gpath.to_str().unwrap()]), 0);

        let hpath = dir.path().join("h.txt");
        let mut f = std::fs::File::create(&hpath).unwrap();
        writeln!(f, "hypergraph3 3\n0 1 2").unwrap();
        assert_eq!(
            run_args(&[
                "hyper",
                "--hypergraph",
                hpath.to_str().unwrap(),
                "--tie-reading",
                "strict",
                "--count-only"
            ]),
            0
        );
        // A graph file is not a hypergraph.
        assert_eq!(run_args(&["hyper", "--hypergraph", gpath.to_str().unwrap()]), 1);
    }

    #[test]
    fn oracle_subcommands_run() {
        assert_eq!(run_args(&["oracle", "tangent", "--n", "5"]), 0);
        assert_eq!(run_args(&["oracle", "hook", "--n", "5"]), 0);
        assert_eq!(run_args(&["oracle", "brute", "devlin", "--n", "2"]), 0);
    }

    #[test]
    fn export_dot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d2.json");
        assert_eq!(
            run_args(&["devlin", "--n", "2", "--out", out.to_str().unwrap()]),
            0
        );
        let dots = dir.path().join("dots");
        assert_eq!(
            run_args(&[
                "export-dot",
                "--catalog",
                out.to_str().unwrap(),
                "--out",
                dots.to_str().unwrap()
            ]),
            0
        );
        assert!(dots.join("shape-00000.dot").exists());
        assert!(dots.join("shape-00001.dot").exists());
    }

    #[test]
    fn realized_runs() {
        assert_eq!(
            run_args(&[
                "realized", "--family", "devlin", "--n", "2", "--size", "8"
            ]),
            0
        );
        assert_eq!(
            run_args(&[
                "realized", "--family", "devlin", "--n", "9", "--size", "8"
            ]),
            1
        );
    }
}
