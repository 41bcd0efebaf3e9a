//! Command-line front end: load and validate tilings, apply moves,
//! export graphs, run the reduction pipelines, and drive the braid-word
//! oracle.
//!
//! Exit codes: 0 success, 1 a requested check failed (validation,
//! certification, stuck reduction), 2 usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use braidtile_cli::format::{parse_tiling, serialize_tiling};
use braidtile_cli::wordfmt::{parse_word, serialize_word};
use braidtile_cli::{apply_named_move, dot};
use braidtile_core::braid::{apply_move, certify_trivial, closure_invariants, Budget, WordMove};
use braidtile_core::fixtures;
use braidtile_core::reduction::{
    make_special_markov, reduce_unknot_markov, reduce_unlink, PipelineError,
};
use braidtile_core::tiling::{Expectation, Sign, Tiling};

#[derive(Parser)]
#[command(
    name = "braidtile",
    version,
    about = "Tiled spanning surfaces of closed braids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run all validation checks on a tiling file.
    Validate(ValidateArgs),
    /// Apply one move and print the resulting document.
    Apply(ApplyArgs),
    /// Print the four singular-leaf graphs.
    Graphs(GraphsArgs),
    /// Run a reduction pipeline and print its transcript.
    Reduce(ReduceArgs),
    /// Braid-word oracle subcommands.
    Braid(BraidArgs),
    /// List or emit the bundled fixtures.
    Fixtures(FixturesArgs),
    /// Emit a seeded randomly grown disc tiling.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Seed for the deterministic generator.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of growth operations.
    #[arg(long, default_value_t = 6)]
    ops: usize,
    /// Number of starting disc components.
    #[arg(long, default_value_t = 1)]
    components: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    file: PathBuf,
    /// Expected classification, e.g. `discs=1`.
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args)]
struct ApplyArgs {
    file: PathBuf,
    /// Move kind: destabilize_a, stabilize_ab, exchange_ab, exchange_bb,
    /// cf_collapse_ab or change_of_foliation.
    #[arg(long = "move")]
    kind: String,
    /// Comma-separated site ids (see the move kind's documentation).
    #[arg(long)]
    site: String,
    /// Variant for change_of_foliation.
    #[arg(long)]
    variant: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphsArgs {
    file: PathBuf,
    /// Output format: `text` (default) or `dot`.
    #[arg(long, default_value = "text")]
    emit: String,
}

#[derive(Args)]
struct ReduceArgs {
    file: PathBuf,
    /// Pipeline: unlink (default), unknot-markov or special-markov.
    #[arg(long, default_value = "unlink")]
    pipeline: String,
    /// Write the final tiling here.
    #[arg(long = "final")]
    final_out: Option<PathBuf>,
}

#[derive(Args)]
struct BraidArgs {
    #[command(subcommand)]
    command: BraidCommand,
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Strand count, exponent sum, permutation and closure components.
    Invariants { file: PathBuf },
    /// Apply a word-level move: `conjugate:<g>`, `stabilize:<+|->`,
    /// `destabilize`, or `exchange:<split>`.
    Move {
        file: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search certifying the closure trivial.
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_strands: u32,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_nodes: usize,
    },
}

#[derive(Args)]
struct FixturesArgs {
    #[command(subcommand)]
    command: FixturesCommand,
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// List the bundled fixture names.
    List,
    /// Print a fixture document (or the family braid word).
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_tiling(path: &PathBuf) -> Result<Tiling, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_tiling(&text)
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Ok(true): success; Ok(false): a check failed (exit 1).
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Validate(args) => {
            let t = read_tiling(&args.file)?;
            let expect = match args.expect.as_deref() {
                None => None,
                Some(e) => {
                    let r = e
                        .strip_prefix("discs=")
                        .and_then(|s| s.parse::<u32>().ok())
                        .ok_or_else(|| format!("bad --expect `{e}`, want discs=<r>"))?;
                    Some(Expectation::Discs(r))
                }
            };
            let report = t.validate(expect);
            for c in &report.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    println!("{status} {}", c.name);
                } else {
                    println!("{status} {} ({})", c.name, c.detail);
                }
            }
            Ok(report.all_passed())
        }
        Command::Apply(args) => {
            let t = read_tiling(&args.file)?;
            let (next, record) =
                apply_named_move(&t, &args.kind, &args.site, args.variant.as_deref())?;
            eprintln!(
                "applied {} {} ({} {} {})",
                record.kind.name(),
                record.site_token(),
                record.delta_v,
                record.delta_t,
                record.delta_n
            );
            write_or_print(&args.out, &serialize_tiling(&next))?;
            Ok(true)
        }
        Command::Graphs(args) => {
            let t = read_tiling(&args.file)?;
            match args.emit.as_str() {
                "text" => print!("{}", dot::leaf_graphs_text(&t)),
                "dot" => print!("{}", dot::leaf_graphs_dot(&t)),
                other => return Err(format!("unknown --emit `{other}`")),
            }
            Ok(true)
        }
        Command::Reduce(args) => {
            let t = read_tiling(&args.file)?;
            let result = match args.pipeline.as_str() {
                "unlink" => reduce_unlink(&t),
                "unknot-markov" => reduce_unknot_markov(&t),
                "special-markov" => make_special_markov(&t),
                other => return Err(format!("unknown --pipeline `{other}`")),
            };
            match result {
                Ok((final_t, transcript)) => {
                    println!("{}", transcript.to_text());
                    if let Some(path) = &args.final_out {
                        fs::write(path, serialize_tiling(&final_t))
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                    }
                    Ok(true)
                }
                Err(PipelineError::Precondition(e)) => Err(format!("{e}")),
                Err(PipelineError::Stuck { tiling, transcript }) => {
                    println!("{}", transcript.to_text());
                    eprintln!("stuck; surviving tiling follows");
                    eprint!("{}", serialize_tiling(&tiling));
                    Ok(false)
                }
            }
        }
        Command::Braid(args) => {
            match args.command {
                BraidCommand::Invariants { file } => {
                    let text = fs::read_to_string(&file)
                        .map_err(|e| format!("{}: {e}", file.display()))?;
                    let w = parse_word(&text)?;
                    let inv = closure_invariants(&w);
                    println!("strands {}", inv.strands);
                    println!("exponent_sum {}", inv.exponent_sum);
                    let perm: Vec<String> = inv.permutation.iter().map(|p| p.to_string()).collect();
                    println!("permutation {}", perm.join(" "));
                    println!("components {}", inv.components);
                    Ok(true)
                }
                BraidCommand::Move { file, op, out } => {
                    let text = fs::read_to_string(&file)
                        .map_err(|e| format!("{}: {e}", file.display()))?;
                    let w = parse_word(&text)?;
                    let mv = parse_word_move(&op)?;
                    let next = apply_move(&w, mv).map_err(|e| e.to_string())?;
                    write_or_print(&out, &serialize_word(&next))?;
                    Ok(true)
                }
                BraidCommand::Certify {
                    file,
                    max_strands,
                    max_len,
                    max_nodes,
                } => {
                    let text = fs::read_to_string(&file)
                        .map_err(|e| format!("{}: {e}", file.display()))?;
                    let w = parse_word(&text)?;
                    let cert = certify_trivial(
                        &w,
                        Budget {
                            max_strands,
                            max_len,
                            max_nodes,
                        },
                    );
                    match cert {
                        braidtile_core::braid::Certificate::Certified { components, nodes } => {
                            println!("certified trivial unlink with {components} components ({nodes} nodes)");
                            Ok(true)
                        }
                        braidtile_core::braid::Certificate::Inconclusive { nodes } => {
                            println!("inconclusive after {nodes} nodes");
                            Ok(false)
                        }
                    }
                }
            }
        }
        Command::Fixtures(args) => match args.command {
            FixturesCommand::List => {
                for name in fixtures::NAMES {
                    println!("{name}");
                }
                println!("fig4_1a_word");
                Ok(true)
            }
            FixturesCommand::Emit { name, out } => {
                if name == "fig4_1a_word" {
                    return write_or_print(&out, &serialize_word(&fixtures::fig4_1a_word()))
                        .map(|()| true);
                }
                let t =
                    fixtures::by_name(&name).ok_or_else(|| format!("unknown fixture `{name}`"))?;
                write_or_print(&out, &serialize_tiling(&t))?;
                Ok(true)
            }
        },
        Command::Corpus(args) => {
            let plan = braidtile_core::corpus::GrowthPlan {
                components: args.components,
                ops: args.ops,
                ..braidtile_core::corpus::GrowthPlan::default()
            };
            let t = braidtile_core::corpus::grow_discs(args.seed, plan);
            write_or_print(&args.out, &serialize_tiling(&t))?;
            Ok(true)
        }
    }
}

fn parse_word_move(op: &str) -> Result<WordMove, String> {
    if let Some(g) = op.strip_prefix("conjugate:") {
        let g = g
            .parse::<i32>()
            .map_err(|_| format!("bad conjugator `{g}`"))?;
        return Ok(WordMove::Conjugate(g));
    }
    if let Some(s) = op.strip_prefix("stabilize:") {
        let sign = match s {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(format!("bad stabilization sign `{other}`")),
        };
        return Ok(WordMove::Stabilize(sign));
    }
    if op == "destabilize" {
        return Ok(WordMove::Destabilize);
    }
    if let Some(k) = op.strip_prefix("exchange:") {
        let split = k.parse::<usize>().map_err(|_| format!("bad split `{k}`"))?;
        return Ok(WordMove::Exchange { split });
    }
    Err(format!("unknown op `{op}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
