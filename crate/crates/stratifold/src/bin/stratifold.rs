//! Command-line interface: every subcommand reads a graph file (or `-` for
//! stdin) in the stratifold text format. Exit codes: 0 = decision or
//! verification completed (including a definite no), 2 = undetermined,
//! 1 = input or internal error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stratifold::classify::{self, Answer, Verdict};
use stratifold::enumerate::{enumerate_graphs, EnumBounds};
use stratifold::graph::LabelledGraph;
use stratifold::group::OracleLimits;
use stratifold::homology;
use stratifold::io::{export_dot, parse, serialize};
use stratifold::presentation;
use stratifold::reduction::{self, CoreStatus};

#[derive(Parser)]
#[command(name = "stratifold", version, about = "Decision procedures for 2-stratifold graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Graph file in the stratifold text format, or `-` for stdin.
    input: String,
}

#[derive(Args)]
struct LimitArgs {
    /// Search limits as `cosets,tietze-steps` (default 100000,10000; the
    /// STRATIFOLD_ORACLE_LIMITS environment variable is honoured too).
    #[arg(long, value_name = "N,M")]
    limits: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check structural validity and print the structure report.
    Validate(InputArg),
    /// Print the structure report (Betti number, branch vertices, ...).
    Info(InputArg),
    /// Print first homology as Z^r + Z_d1 + ... + Z_dk.
    H1(InputArg),
    /// Print the fundamental-group presentation (genus-0 whites only).
    Presentation(InputArg),
    /// Remove all terminal strings and print (or write) the result.
    Prune {
        #[command(flatten)]
        input: InputArg,
        /// Write the pruned graph to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Core-reduce a pruned trivalent circle-homotopy graph.
    Core {
        #[command(flatten)]
        input: InputArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the applied moves to stderr.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether the fundamental group is the infinite cyclic group.
    DecideZ {
        #[command(flatten)]
        input: InputArg,
        /// Print the condition trace.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether the stratifold is simply connected.
    DecideSc {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Recognize an echinus graph, print its parameters and verdict.
    Echinus(InputArg),
    /// Export the graph in Graphviz DOT format.
    ExportDot(InputArg),
    /// Stream the census of small graphs in canonical text form.
    Enumerate {
        #[arg(long, value_name = "K")]
        max_blacks: usize,
        #[arg(long, value_name = "L")]
        max_label: u32,
        #[arg(long)]
        trivalent: bool,
        /// Restrict to this first Betti number (0 or 1).
        #[arg(long, value_name = "B")]
        betti1: Option<usize>,
    },
}

fn read_graph(input: &str) -> Result<LabelledGraph, String> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    };
    parse(&text).map_err(|e| e.to_string())
}

fn resolve_limits(args: &LimitArgs) -> Result<OracleLimits, String> {
    match &args.limits {
        None => Ok(OracleLimits::from_env()),
        Some(s) => OracleLimits::parse(s).ok_or_else(|| format!("bad --limits value `{s}`")),
    }
}

fn print_report(g: &LabelledGraph) {
    let s = g.structure();
    println!("whites: {}", g.white_count());
    println!("blacks: {}", g.black_count());
    println!("edges: {}", g.edge_count());
    println!("betti1: {}", s.betti1);
    println!("is_tree: {}", s.is_tree);
    println!("trivalent: {}", s.trivalent);
    if let Some(cycle) = &s.cycle {
        let walk: Vec<&str> = cycle.vertices.iter().map(|v| g.vertex_name(*v)).collect();
        println!("cycle: {}", walk.join(" "));
    }
    let branches: Vec<&str> = s
        .black_branch_vertices
        .iter()
        .map(|b| g.black_name(*b))
        .chain(s.white_branch_vertices.iter().map(|w| g.white_name(*w)))
        .collect();
    println!("branch_vertices: {}", branches.join(" "));
    let terminals: Vec<String> = s
        .terminal_vertices
        .iter()
        .map(|v| {
            let colour = if v.is_white() { "white" } else { "black" };
            format!("{}:{}", g.vertex_name(*v), colour)
        })
        .collect();
    println!("terminal_vertices: {}", terminals.join(" "));
}

fn verdict_exit(v: &Verdict, trace: bool) -> ExitCode {
    println!("verdict: {}", v.answer);
    if trace {
        for entry in &v.trace {
            println!("{entry}");
        }
    }
    match v.answer {
        Answer::Yes | Answer::No => ExitCode::SUCCESS,
        Answer::Undetermined => ExitCode::from(2),
    }
}

fn write_or_print(text: &str, output: &Option<PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate(input) => {
            let g = read_graph(&input.input)?;
            println!("valid");
            print_report(&g);
            Ok(ExitCode::SUCCESS)
        }
        Command::Info(input) => {
            let g = read_graph(&input.input)?;
            print_report(&g);
            Ok(ExitCode::SUCCESS)
        }
        Command::H1(input) => {
            let g = read_graph(&input.input)?;
            println!("{}", homology::h1(&g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Presentation(input) => {
            let g = read_graph(&input.input)?;
            let pres = presentation::pi1_presentation(&g).map_err(|e| e.to_string())?;
            print!("{pres}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Prune { input, output } => {
            let g = read_graph(&input.input)?;
            let pruned = reduction::prune(&g);
            write_or_print(&serialize(&pruned), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Core { input, output, trace, limits } => {
            let g = read_graph(&input.input)?;
            let limits = resolve_limits(&limits)?;
            let g = reduction::normalize_signs(&g);
            let g = reduction::prune(&g);
            if g.betti1() != 1 {
                return Err(format!("core reduction needs first Betti number 1, got {}", g.betti1()));
            }
            if !g.is_trivalent() {
                return Err("core reduction needs a trivalent graph".into());
            }
            let oracle = classify::LayeredOracle { limits };
            let result = reduction::core_reduce(&g, &oracle);
            if trace {
                for step in &result.steps {
                    eprintln!("{step}");
                }
            }
            match result.status {
                CoreStatus::Core(core) => {
                    write_or_print(&serialize(&core), &output)?;
                    Ok(ExitCode::SUCCESS)
                }
                CoreStatus::Empty => {
                    println!("empty");
                    Ok(ExitCode::SUCCESS)
                }
                CoreStatus::Undetermined(reason) => {
                    println!("undetermined: {reason}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::DecideZ { input, trace, limits } => {
            let g = read_graph(&input.input)?;
            let limits = resolve_limits(&limits)?;
            Ok(verdict_exit(&classify::decide_pi1_z_with(&g, &limits), trace))
        }
        Command::DecideSc { input, trace, limits } => {
            let g = read_graph(&input.input)?;
            let limits = resolve_limits(&limits)?;
            Ok(verdict_exit(&classify::simply_connected_with(&g, &limits), trace))
        }
        Command::Echinus(input) => {
            let g = read_graph(&input.input)?;
            let g = reduction::prune(&reduction::normalize_signs(&g));
            match classify::recognize_echinus(&g) {
                Ok(params) => {
                    println!("echinus: {params}");
                    let v = classify::echinus_pi1_is_z(&params);
                    Ok(verdict_exit(&v, true))
                }
                Err(e) => {
                    println!("not-echinus: {}", e.reason);
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::ExportDot(input) => {
            let g = read_graph(&input.input)?;
            print!("{}", export_dot(&g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { max_blacks, max_label, trivalent, betti1 } => {
            let bounds = EnumBounds {
                max_blacks,
                max_label,
                trivalent_only: trivalent,
                betti1,
                ..EnumBounds::new(max_blacks, max_label)
            };
            let count = enumerate_graphs(&bounds, |g| {
                print!("{}", serialize(g));
                println!();
            })
            .map_err(|e| e.to_string())?;
            eprintln!("graphs: {count}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
