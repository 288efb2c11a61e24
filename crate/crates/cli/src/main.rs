use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boolconv::forcing::forcing_report;
use boolconv::suite::{run_suite, SuiteConfig, DEFAULT_SEED, SUITES};
use boolconv::topology::sequential_topology;
use boolconv::{Algebra, Caps, Convergence, EPSequence, Error, FiniteTopology};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "boolconv", version, about = "Convergences and sequential topologies on finite Boolean algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one convergence on one sequence.
    Eval {
        #[arg(long)]
        atoms: usize,
        /// Sequence as `[p1,p2]|[c1,c2]` with elements as atom-flag words.
        #[arg(long)]
        seq: String,
        /// s | ls | li | l0..l4 | star:<c> | bar:<c> | meet:<c>,<c> | lim:<topology.json>
        #[arg(long)]
        conv: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate the sequential topology of a convergence and export it.
    Topology {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        conv: String,
        #[arg(long, value_enum, default_value_t = TopologyFormat::Json)]
        format: TopologyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run check suites; exits 1 if any check fails.
    Verify {
        /// Largest atom count (each suite also has its own ceiling).
        #[arg(long, default_value_t = 3)]
        atoms: u8,
        /// Suite to run; repeatable. Defaults to all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 100)]
        selectors: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the corpus used for a given atom count.
    Corpus {
        #[arg(long)]
        atoms: usize,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List suite names.
    Suites,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, env = "BOOLCONV_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long)]
    prefix_bound: Option<usize>,
    #[arg(long)]
    cycle_bound: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyFormat {
    Json,
    Dot,
}

fn parse_convergence(text: &str) -> boolconv::Result<Convergence> {
    Convergence::parse(text, &mut |path| {
        let data = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))?;
        let t: FiniteTopology =
            serde_json::from_str(&data).map_err(|e| Error::Parse(format!("bad topology file `{path}`: {e}")))?;
        Ok(t.with_label(path))
    })
}

fn emit(out: Option<&Path>, text: &str) -> boolconv::Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("cannot write `{}`: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn config(corpus: &CorpusArgs, max_atoms: u8, selectors: usize, suites: Vec<String>) -> SuiteConfig {
    let defaults = SuiteConfig::default();
    SuiteConfig {
        max_atoms,
        prefix_bound: corpus.prefix_bound,
        cycle_bound: corpus.cycle_bound,
        seed: corpus.seed,
        samples: corpus.samples,
        selectors,
        suites: if suites.is_empty() { defaults.suites } else { suites },
    }
}

/// Exit status on success paths: 0, or 1 when some check failed.
fn run(cli: Cli) -> boolconv::Result<u8> {
    match cli.command {
        Command::Eval { atoms, seq, conv, format } => {
            let algebra = Algebra::new(atoms)?;
            let x = EPSequence::parse(algebra, &seq)?;
            let c = parse_convergence(&conv)?;
            let value = c.eval(&x)?;
            match format {
                Format::Text => println!("{c}({x}) = {value:?}"),
                Format::Json => {
                    let doc = json!({
                        "sequence": x,
                        "convergence": c.to_string(),
                        "value": value,
                        "forcing": forcing_report(&x)?,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
            }
            Ok(0)
        }
        Command::Topology { atoms, conv, format, out } => {
            let algebra = Algebra::new(atoms)?;
            let c = parse_convergence(&conv)?;
            let t = sequential_topology(&c, algebra, &Caps::default())?;
            let text = match format {
                TopologyFormat::Json => serde_json::to_string(&t).expect("serializable") + "\n",
                TopologyFormat::Dot => t.to_dot(),
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify {
            atoms,
            suites,
            corpus,
            selectors,
            out,
            format,
        } => {
            let config = config(&corpus, atoms, selectors, suites);
            let report = run_suite(&config)?;
            let text = match format {
                Format::Json => report.canonical_json() + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for c in &report.checks {
                        let status = if c.verdict.holds { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{status} {}", c.name));
                        if let (false, Some(w)) = (c.verdict.holds, &c.verdict.witness) {
                            s.push_str(&format!("  [{}]", serde_json::to_string(w).expect("serializable")));
                        }
                        s.push('\n');
                    }
                    s.push_str(&format!("{} passed, {} failed\n", report.passed, report.failed));
                    s
                }
            };
            emit(out.as_deref(), &text)?;
            eprintln!("timing (s): {}", report.timing_json().replace('\n', " "));
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Corpus { atoms, corpus, out, format } => {
            let algebra = Algebra::new(atoms)?;
            let config = config(&corpus, 1, 1, vec![]);
            let xs = config.corpus(algebra)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&xs).expect("serializable") + "\n",
                Format::Text => xs.iter().map(|x| format!("{x}\n")).collect(),
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Suites => {
            for (name, ceiling) in SUITES {
                println!("{name}\tatoms <= {ceiling}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceCap { .. } | Error::AtomCount { .. } => 3,
                _ => 2,
            })
        }
    }
}
