use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mkg_core::coloring::DEFAULT_NODE_BUDGET;
use mkg_core::edge_coloring::{chromatic_index, is_snark, EdgeClass};
use mkg_core::extremal::ex_exact;
use mkg_core::kneser::build_matching_kneser;
use mkg_core::verifier::{
    scan_catalog, scan_threads, verify_with_policy, ConjectureReport, RPolicy, ScanRecord, Verdict,
};
use mkg_core::{parse_graph6, Graph};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

/// Matching Kneser graphs: chromatic number against |E| - ex(G, rK2).
#[derive(Parser)]
#[command(name = "mkg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 file, or `-` for standard input
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both sides for one graph
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Matching size, or `half-order` for r = n/2
        #[arg(short = 'r', long = "r")]
        r: RPolicy,
        #[arg(long)]
        json: bool,
        /// Write KG(G, rK2) in DOT format to this file
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Branch-and-bound node budget for the coloring search
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Evaluate every graph of a graph6 catalog
    Scan {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'r', long = "r")]
        r: RPolicy,
        /// One JSON object per line
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Exact ex(G, rK2) with a witnessing edge set
    Ex {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'r', long = "r")]
        r: usize,
    },
    /// Chromatic index and snark status
    ChiIndex {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Build KG(G, rK2)
    Kneser {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'r', long = "r")]
        r: usize,
        /// Print the graph in DOT format instead of a summary
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// The single graph of a graph6 input.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (i, line) = lines
        .next()
        .ok_or_else(|| Failure(format!("{}: no graph", path.display())))?;
    if lines.next().is_some() {
        return Err(Failure(format!(
            "{}: more than one graph; use `mkg scan`",
            path.display()
        )));
    }
    parse_graph6(line).map_err(|e| Failure(format!("{}:{}: {e}", path.display(), i + 1)))
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn print_summary(out: &mut impl Write, rep: &ConjectureReport) -> io::Result<()> {
    writeln!(out, "graph6       {}", rep.graph6)?;
    writeln!(out, "n, m         {}, {}", rep.n, rep.m)?;
    writeln!(out, "r            {}", rep.r)?;
    writeln!(out, "r-matchings  {}", rep.num_r_matchings)?;
    writeln!(
        out,
        "KG           {} vertices, {} edges",
        rep.kneser_vertices, rep.kneser_edges
    )?;
    match rep.chromatic_bounds {
        Some((lo, hi)) => writeln!(out, "chi(KG)      in [{lo}, {hi}]")?,
        None => writeln!(out, "chi(KG)      {}", opt(rep.chromatic_number))?,
    }
    writeln!(out, "ex           {}", opt(rep.ex_value))?;
    writeln!(out, "m - ex       {}", opt(rep.rhs))?;
    writeln!(
        out,
        "snark        {}",
        if rep.is_snark { "yes" } else { "no" }
    )?;
    writeln!(out, "verdict      {}", rep.verdict)
}

fn scan_line(rec: &ScanRecord) -> String {
    match rec {
        ScanRecord::Report(rep) => format!(
            "{}\tr={}\tchi={}\trhs={}\t{}",
            rep.graph6,
            rep.r,
            opt(rep.chromatic_number),
            opt(rep.rhs),
            rep.verdict
        ),
        ScanRecord::Error { line, error } => format!("line {line}: {error}"),
    }
}

fn note_counterexample(rep: &ConjectureReport) {
    eprintln!(
        "counterexample: {} r={} chi={} rhs={}",
        rep.graph6,
        rep.r,
        opt(rep.chromatic_number),
        opt(rep.rhs)
    );
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Undecided => EXIT_UNDECIDED,
        _ => 0,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Check {
            input,
            r,
            json,
            dot,
            budget,
        } => {
            let g = read_graph(&input.graph)?;
            let rep = verify_with_policy(&g, r, budget)?;
            if let Some(path) = dot {
                if rep.r > 0 {
                    let kg = build_matching_kneser(&g, rep.r)?;
                    std::fs::write(&path, kg.to_dot())
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                }
            }
            if json {
                writeln!(out, "{}", rep.to_json())?;
            } else {
                print_summary(&mut out, &rep)?;
            }
            if rep.verdict == Verdict::Counterexample {
                note_counterexample(&rep);
            }
            Ok(exit_for(rep.verdict))
        }
        Command::Scan {
            input,
            r,
            json,
            budget,
        } => {
            let threads = scan_threads();
            let sink = |rec: &ScanRecord| -> io::Result<()> {
                if let ScanRecord::Report(rep) = rec {
                    if rep.verdict == Verdict::Counterexample {
                        note_counterexample(rep);
                    }
                }
                let line = if json { rec.to_json() } else { scan_line(rec) };
                writeln!(out, "{line}")
            };
            let summary = if input.graph == Path::new("-") {
                let text = read_text(&input.graph)?;
                let lines: Vec<io::Result<String>> =
                    text.lines().map(|l| Ok(l.to_string())).collect();
                scan_catalog(lines, r, budget, threads, sink)?
            } else {
                let file = File::open(&input.graph)
                    .map_err(|e| Failure(format!("{}: {e}", input.graph.display())))?;
                scan_catalog(BufReader::new(file).lines(), r, budget, threads, sink)?
            };
            Ok(if summary.errors > 0 {
                EXIT_USAGE
            } else if summary.undecided > 0 {
                EXIT_UNDECIDED
            } else if summary.counterexamples > 0 {
                EXIT_COUNTEREXAMPLE
            } else {
                0
            })
        }
        Command::Ex { input, r } => {
            let g = read_graph(&input.graph)?;
            let cert = ex_exact(&g, r)?;
            let edges: Vec<String> = cert
                .edges
                .iter()
                .map(|e| {
                    let (u, v) = g.edge(e);
                    format!("{u}-{v}")
                })
                .collect();
            writeln!(out, "ex = {}", cert.value)?;
            writeln!(out, "m - ex = {}", g.m() - cert.value)?;
            writeln!(out, "F = {}", edges.join(" "))?;
            Ok(0)
        }
        Command::ChiIndex { input } => {
            let g = read_graph(&input.graph)?;
            let res = chromatic_index(&g);
            let class = match res.class {
                EdgeClass::One => "class one",
                EdgeClass::Two => "class two",
            };
            writeln!(out, "chromatic index = {} ({class})", res.chromatic_index)?;
            let status = is_snark(&g);
            match status.reason {
                Some(reason) => writeln!(out, "not a snark: {reason}")?,
                None => writeln!(out, "snark")?,
            }
            Ok(0)
        }
        Command::Kneser { input, r, dot } => {
            let g = read_graph(&input.graph)?;
            let kg = build_matching_kneser(&g, r)?;
            if dot {
                write!(out, "{}", kg.to_dot())?;
            } else {
                writeln!(
                    out,
                    "KG(G, {r}K2): {} vertices, {} edges",
                    kg.vertex_count(),
                    kg.edge_count()
                )?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("mkg: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
