//! Command-line front end: colour instances, query exact invariants,
//! generate and enumerate instances, run censuses, and re-validate
//! colouring files. Exits non-zero on any validator failure or
//! invariant violation.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ocol::census::{run_census, write_ndjson, CensusConfig, InstanceSource};
use ocol::codec::{emit_digraph6, parse_digraph6, parse_edge_list, parse_graph6};
use ocol::dipath::two_dipath_seven_colouring;
use ocol::eight::oriented_eight_colouring;
use ocol::error::Error;
use ocol::gen::{all_orientations, random_cubic_orientation};
use ocol::graph::{
    structural_profile, validate_oriented_colouring, validate_two_dipath_colouring,
    OrientedGraph, VertexColouring,
};
use ocol::oracle::{
    exact_oriented_chromatic, exact_two_dipath_chromatic, max_clique, OracleConfig,
};
use ocol::paley::{cycle_completions, paley_automorphisms, paley_tournament};

#[derive(Parser)]
#[command(name = "ocol", version, about = "Oriented and 2-dipath colourings of cubic graph orientations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Digraph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColouringKind {
    Oriented,
    #[value(name = "2dipath")]
    TwoDipath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusMode {
    Exhaustive,
    Random,
    Files,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a Paley tournament and its verified properties.
    Paley {
        /// Prime congruent to 3 mod 4.
        #[arg(long, default_value_t = 7)]
        q: u64,
    },
    /// Oriented 8-colouring of a connected cubic orientation.
    ColourOriented {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Digraph6)]
        format: Format,
    },
    /// 2-dipath 7-colouring of a cubic orientation.
    #[command(name = "colour-2dipath")]
    Colour2dipath {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Digraph6)]
        format: Format,
    },
    /// Exact chromatic invariants by brute force.
    Exact {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Digraph6)]
        format: Format,
        /// Vertex cap for the exact searches.
        #[arg(long, default_value_t = 14)]
        oracle_cap: usize,
    },
    /// Seeded random cubic orientations, one digraph6 line each.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// All orientations of an undirected graph (graph6 input).
    Orientations {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run pipelines and oracles over an instance stream.
    Census {
        #[arg(long, value_enum)]
        mode: CensusMode,
        /// Exhaustive: comma-separated orders. Random: one order.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Instance file (one digraph6 line each) for files mode.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Enable exact oracles up to this vertex count.
        #[arg(long)]
        oracle_cap: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Include wall-clock fields (breaks byte-identical re-runs).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        skip_oriented8: bool,
        #[arg(long)]
        skip_dipath7: bool,
    },
    /// Re-validate a colouring file against a graph.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Digraph6)]
        format: Format,
        /// Lines of "vertex colour".
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, value_enum)]
        kind: ColouringKind,
    },
}

fn emit_json(value: &serde_json::Value) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value).unwrap())?;
    Ok(())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_graph(path: &Option<PathBuf>, format: Format) -> Result<OrientedGraph, Error> {
    let text = read_input(path)?;
    match format {
        Format::Digraph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::MalformedInput("empty input".into()))?;
            parse_digraph6(line)
        }
        Format::Edgelist => parse_edge_list(&text),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_colouring_file(text: &str, n: usize) -> Result<VertexColouring, Error> {
    let mut assignment = vec![None; n];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let bad = || Error::MalformedInput(format!("line {}: expected 'vertex colour'", lineno + 1));
        let v: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let c: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        assignment[v] = Some(c);
    }
    let total: Option<Vec<usize>> = assignment.into_iter().collect();
    match total {
        Some(a) => Ok(VertexColouring::new(a)),
        None => Err(Error::MissingVertexColour { got: 0, want: n }),
    }
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Paley { q } => {
            let t = paley_tournament(q)?;
            let auts = paley_automorphisms(q)?;
            let completion_sizes: Vec<usize> = t
                .as_graph()
                .arcs()
                .iter()
                .map(|&arc| cycle_completions(&t, arc).map(|c| c.len()))
                .collect::<Result<_, _>>()?;
            let report = json!({
                "q": q,
                "arcs": t.as_graph().arcs(),
                "out_neighbours_of_0": t.out_neighbours(0),
                "automorphisms": auts.len(),
                "completions_per_arc_min": completion_sizes.iter().min(),
                "completions_per_arc_max": completion_sizes.iter().max(),
            });
            emit_json(&report)?;
            Ok(true)
        }
        Command::ColourOriented { input, format } => {
            let g = read_graph(&input, format)?;
            let (col, cert) = oriented_eight_colouring(&g)?;
            let valid = validate_oriented_colouring(&g, &col)?.is_valid();
            let report = json!({
                "digraph6": emit_digraph6(&g),
                "colouring": col.assignment(),
                "palette": col.palette_size(),
                "case": cert.case.tag(),
                "valid": valid,
            });
            emit_json(&report)?;
            Ok(valid)
        }
        Command::Colour2dipath { input, format } => {
            let g = read_graph(&input, format)?;
            let (col, cert) = two_dipath_seven_colouring(&g)?;
            let valid = validate_two_dipath_colouring(&g, &col)?.is_valid();
            let cases: Vec<&str> = cert.components.iter().map(|c| c.tag()).collect();
            let report = json!({
                "digraph6": emit_digraph6(&g),
                "colouring": col.assignment(),
                "palette": col.palette_size(),
                "cases": cases,
                "valid": valid,
            });
            emit_json(&report)?;
            Ok(valid)
        }
        Command::Exact {
            input,
            format,
            oracle_cap,
        } => {
            let g = read_graph(&input, format)?;
            let cfg = OracleConfig::with_limit(oracle_cap);
            let chi_o = exact_oriented_chromatic(&g, &cfg)?;
            let chi_2d = exact_two_dipath_chromatic(&g, &cfg)?;
            let sq = ocol::dipath::build_square(&g);
            let omega = max_clique(&sq, &cfg)?;
            let report = json!({
                "digraph6": emit_digraph6(&g),
                "chi_o": chi_o.value,
                "chi_o_witness": chi_o.witness.assignment(),
                "chi_o_target_arcs": chi_o.target_arcs,
                "chi_2d": chi_2d.value,
                "chi_2d_witness": chi_2d.witness.assignment(),
                "omega_square": omega.size,
                "omega_square_witness": omega.vertices,
                "nodes": {
                    "chi_o": chi_o.nodes,
                    "chi_2d": chi_2d.nodes,
                    "omega_square": omega.nodes,
                },
            });
            emit_json(&report)?;
            Ok(true)
        }
        Command::Gen {
            n,
            seed,
            count,
            output,
        } => {
            let mut out = open_output(&output)?;
            for i in 0..count {
                let g = random_cubic_orientation(n, seed.wrapping_add(i as u64))?;
                writeln!(out, "{}", emit_digraph6(&g))?;
            }
            Ok(true)
        }
        Command::Orientations { input, output } => {
            let text = read_input(&input)?;
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::MalformedInput("empty input".into()))?;
            let sq = parse_graph6(line)?;
            if sq.edge_count() >= 63 {
                return Err(Error::precondition(format!(
                    "{} edges would stream 2^{} orientations",
                    sq.edge_count(),
                    sq.edge_count()
                )));
            }
            let mut out = open_output(&output)?;
            for g in all_orientations(&sq) {
                writeln!(out, "{}", emit_digraph6(&g))?;
            }
            Ok(true)
        }
        Command::Census {
            mode,
            n,
            seed,
            count,
            input,
            jobs,
            oracle_cap,
            output,
            timings,
            skip_oriented8,
            skip_dipath7,
        } => {
            let source = match mode {
                CensusMode::Exhaustive => InstanceSource::Exhaustive { orders: n },
                CensusMode::Random => {
                    let order = *n.first().ok_or_else(|| {
                        Error::MalformedInput("random mode needs --n".into())
                    })?;
                    InstanceSource::Random {
                        n: order,
                        count,
                        seed,
                    }
                }
                CensusMode::Files => {
                    let text = read_input(&input)?;
                    let lines: Vec<String> = text
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| l.to_string())
                        .collect();
                    InstanceSource::Explicit(lines)
                }
            };
            let mut cfg = CensusConfig::new(source);
            cfg.run_oriented8 = !skip_oriented8;
            cfg.run_dipath7 = !skip_dipath7;
            cfg.oracle_cap = oracle_cap;
            cfg.jobs = jobs;
            cfg.timings = timings;
            let run = run_census(&cfg)?;
            let mut out = open_output(&output)?;
            write_ndjson(&run, &mut out)?;
            Ok(run.clean())
        }
        Command::Verify {
            input,
            format,
            colouring,
            kind,
        } => {
            let g = read_graph(&input, format)?;
            let text = std::fs::read_to_string(&colouring)?;
            let col = parse_colouring_file(&text, g.vertex_count())?;
            let profile = structural_profile(&g);
            let (valid, detail) = match kind {
                ColouringKind::Oriented => {
                    let r = validate_oriented_colouring(&g, &col)?;
                    (
                        r.is_valid(),
                        json!({
                            "adjacent_same_colour": r.adjacent_same_colour,
                            "inconsistent_arc_pairs": r.inconsistent_arc_pairs,
                        }),
                    )
                }
                ColouringKind::TwoDipath => {
                    let r = validate_two_dipath_colouring(&g, &col)?;
                    (
                        r.is_valid(),
                        json!({
                            "adjacent_same_colour": r.adjacent_same_colour,
                            "equal_end_dipaths": r.equal_end_dipaths,
                        }),
                    )
                }
            };
            let report = json!({
                "digraph6": emit_digraph6(&g),
                "palette": col.palette_size(),
                "connected": profile.connected,
                "valid": valid,
                "violations": detail,
            });
            emit_json(&report)?;
            Ok(valid)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        // A closed downstream pipe is not an error worth reporting.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
