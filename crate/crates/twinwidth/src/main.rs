//! Thin command-line front end over the library: widths, verification,
//! exact and heuristic builders, decomposition conversions, q-coloring,
//! matrix checks and instance generation, all over the text formats of
//! the `io` module.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 verification
//! failure, 3 budget or cap exceeded.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twinwidth::builders::{self, PairPredicate};
use twinwidth::coloring;
use twinwidth::decomposition::{self, BoolWidth, BranchDecomposition};
use twinwidth::generate;
use twinwidth::graph::Graph;
use twinwidth::io as formats;
use twinwidth::matrix::{self, MatrixPartition, TwwResult};
use twinwidth::sequence::ContractionSequence;
use twinwidth::widths::{self, Measure, VerifyOutcome};

#[derive(Parser)]
#[command(
    name = "twinwidth",
    version,
    about = "Contraction sequences and their width measures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Oriented,
    Degree,
    Component,
    Total,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Oriented => Measure::Oriented,
            MeasureArg::Degree => Measure::Degree,
            MeasureArg::Component => Measure::Component,
            MeasureArg::Total => Measure::Total,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Greedy,
    Contractible,
    Partial,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredArg {
    Any,
    TwinsOrAdjacent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Bd2seq,
    Seq2bd,
    Lbd2seq,
    Seq2lbd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixOp {
    Error,
    Mixed,
    Minor,
    Exact,
}

#[derive(Args)]
struct GraphSeqArgs {
    /// Graph file (p/e format)
    #[arg(long)]
    graph: PathBuf,
    /// Sequence file (s/c format)
    #[arg(long)]
    seq: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Width of a given sequence under a measure
    Width {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[command(flatten)]
        files: GraphSeqArgs,
    },
    /// Check a sequence against a width bound
    Verify {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        files: GraphSeqArgs,
    },
    /// Exhaustive minimum width over all sequences (small graphs)
    Exact {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = builders::DEFAULT_NODE_BUDGET)]
        budget: usize,
        /// Write the witnessing sequence here (stdout otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Heuristic sequence builders
    Build {
        #[arg(long, value_enum)]
        strategy: Strategy,
        #[arg(long)]
        graph: PathBuf,
        /// Measure for the greedy strategy
        #[arg(long, value_enum, default_value = "degree")]
        measure: MeasureArg,
        /// Degree bound for contractible/partial strategies
        #[arg(long)]
        d: Option<usize>,
        /// Total-degree target for the partial strategy
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, value_enum, default_value = "twins-or-adjacent")]
        pred: PredArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between decompositions and sequences
    Convert {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long)]
        graph: PathBuf,
        /// Input decomposition or sequence file, per direction
        #[arg(long = "in")]
        input: PathBuf,
        /// Boolean-width bound for the forward directions (computed from
        /// the decomposition when omitted)
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// q-coloring along a bounded-component-width sequence
    Color {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        files: GraphSeqArgs,
        /// Also print a coloring as 'v <id> <color>' lines
        #[arg(long)]
        extract: bool,
    },
    /// Matrix error values, mixedness, minors and twin-width
    Matrix {
        #[arg(value_enum)]
        op: MatrixOp,
        #[arg(long)]
        matrix: PathBuf,
        /// Row partition like '1,2|3' (1-based; finest when omitted)
        #[arg(long)]
        rows: Option<String>,
        /// Column partition like '1|2,3'
        #[arg(long)]
        cols: Option<String>,
        /// Order of the minor to search for
        #[arg(long)]
        t: Option<usize>,
        /// Contract rows and columns simultaneously (exact op)
        #[arg(long)]
        symmetric: bool,
        #[arg(long, default_value_t = matrix::DEFAULT_TWW_BUDGET)]
        budget: usize,
    },
    /// Generate instance graphs
    Gen {
        /// path, cycle, clique, biclique, grid, diag-grid, er, blowup,
        /// icosahedron, planar-tri, cograph
        #[arg(long)]
        kind: String,
        /// Kind-specific parameters, e.g. '--params 3 3' for a grid
        #[arg(long, num_args = 0.., value_delimiter = ' ')]
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Verification(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verification(m) | Failure::Budget(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_sequence(path: &Path, g: &Graph) -> Result<ContractionSequence, Failure> {
    let s = formats::parse_sequence(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if s.n() != g.n() {
        return Err(Failure::Input(format!(
            "sequence is on {} vertices, graph has {}",
            s.n(),
            g.n()
        )));
    }
    Ok(s)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_side(spec: &str, n: usize) -> Result<Vec<Vec<usize>>, Failure> {
    let mut parts = Vec::new();
    for chunk in spec.split('|') {
        let mut part = Vec::new();
        for tok in chunk.split(',') {
            let idx: usize = tok
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("'{tok}' is not an index")))?;
            if idx == 0 || idx > n {
                return Err(Failure::Input(format!("index {idx} out of 1..={n}")));
            }
            part.push(idx - 1);
        }
        parts.push(part);
    }
    Ok(parts)
}

fn convert_width_bound(
    g: &Graph,
    t: &BranchDecomposition,
    d: Option<usize>,
) -> Result<usize, Failure> {
    match d {
        Some(d) => Ok(d),
        None => {
            let w = decomposition::bd_boolean_width(g, t, decomposition::DEFAULT_CLOSURE_CAP)
                .map_err(input_err)?;
            Ok(match w {
                BoolWidth::Exact(w) => w.ceil() as usize,
                BoolWidth::Bracket { hi, .. } => hi.ceil() as usize,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Width { measure, files } => {
            let g = load_graph(&files.graph)?;
            let s = load_sequence(&files.seq, &g)?;
            let w = widths::sequence_width(&g, &s, measure.into()).map_err(input_err)?;
            println!("{w}");
            Ok(())
        }
        Cmd::Verify { measure, d, files } => {
            let g = load_graph(&files.graph)?;
            let s = load_sequence(&files.seq, &g)?;
            match widths::verify_sequence(&g, &s, d, measure.into()).map_err(input_err)? {
                VerifyOutcome::Ok { width } => {
                    println!("ok width {width}");
                    Ok(())
                }
                VerifyOutcome::Violation(v) => {
                    let parts: Vec<String> = v.parts.iter().map(|p| (p + 1).to_string()).collect();
                    Err(Failure::Verification(format!(
                        "violation at step {} value {} parts {}",
                        v.step,
                        v.value,
                        parts.join(",")
                    )))
                }
            }
        }
        Cmd::Exact {
            measure,
            graph,
            budget,
            out,
        } => {
            let g = load_graph(&graph)?;
            let report = builders::exact_width(&g, measure.into(), budget)
                .map_err(|e| Failure::Budget(e.to_string()))?;
            println!("{}", report.achieved_width);
            println!("# nodes explored: {}", report.nodes_explored);
            emit(out.as_ref(), &formats::serialize_sequence(&report.sequence))?;
            if !report.complete {
                return Err(Failure::Budget(format!(
                    "node budget {budget} exhausted; value is only an upper bound"
                )));
            }
            Ok(())
        }
        Cmd::Build {
            strategy,
            graph,
            measure,
            d,
            delta,
            pred,
            out,
        } => {
            let g = load_graph(&graph)?;
            match strategy {
                Strategy::Greedy => {
                    let report = builders::greedy_sequence(&g, measure.into());
                    println!(
                        "# greedy measure {} width {}",
                        Measure::from(measure),
                        report.achieved_width
                    );
                    emit(out.as_ref(), &formats::serialize_sequence(&report.sequence))
                }
                Strategy::Contractible => {
                    let d = d.ok_or_else(|| Failure::Input("--d is required".into()))?;
                    let pred = match pred {
                        PredArg::Any => PairPredicate::AnyPair,
                        PredArg::TwinsOrAdjacent => PairPredicate::TwinsOrAdjacent,
                    };
                    let report = builders::contractible_sequence(&g, d, pred)
                        .map_err(|e| Failure::Verification(e.to_string()))?;
                    println!("# contractible d {} oriented-width {}", d, report.achieved_width);
                    emit(out.as_ref(), &formats::serialize_sequence(&report.sequence))
                }
                Strategy::Partial => {
                    let d = d.ok_or_else(|| Failure::Input("--d is required".into()))?;
                    let delta =
                        delta.ok_or_else(|| Failure::Input("--delta is required".into()))?;
                    let outcome = builders::partial_sequence_to_degree(&g, d, delta);
                    let stop = match outcome.stop {
                        builders::PartialStop::DegreeTarget => "degree-target",
                        builders::PartialStop::Exhausted => "exhausted",
                    };
                    println!(
                        "# partial d {} delta {} steps {} red-width {} stop {}",
                        d,
                        delta,
                        outcome.report.sequence.len(),
                        outcome.report.achieved_width,
                        stop
                    );
                    emit(
                        out.as_ref(),
                        &formats::serialize_sequence(&outcome.report.sequence),
                    )
                }
            }
        }
        Cmd::Convert {
            direction,
            graph,
            input,
            d,
            out,
        } => {
            let g = load_graph(&graph)?;
            let text = read(&input)?;
            let converted = match direction {
                Direction::Bd2seq | Direction::Lbd2seq => {
                    let t = formats::parse_decomposition(&text)
                        .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
                    let bound = convert_width_bound(&g, &t, d)?;
                    let s = match direction {
                        Direction::Bd2seq => decomposition::bd_to_sequence(&g, &t, bound),
                        _ => decomposition::linear_bd_to_sequence(&g, &t, bound),
                    }
                    .map_err(convert_failure)?;
                    formats::serialize_sequence(&s)
                }
                Direction::Seq2bd | Direction::Seq2lbd => {
                    let s = formats::parse_sequence(&text)
                        .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
                    if s.n() != g.n() {
                        return Err(Failure::Input("sequence/graph size mismatch".into()));
                    }
                    let t = match direction {
                        Direction::Seq2bd => decomposition::sequence_to_bd(&g, &s),
                        _ => decomposition::sequence_to_linear_bd(&g, &s),
                    }
                    .map_err(convert_failure)?;
                    formats::serialize_decomposition(&t)
                }
            };
            emit(out.as_ref(), &converted)
        }
        Cmd::Color {
            q,
            d,
            files,
            extract,
        } => {
            let g = load_graph(&files.graph)?;
            let s = load_sequence(&files.seq, &g)?;
            let outcome = if extract {
                coloring::q_coloring_extract(&g, &s, q, d)
            } else {
                coloring::q_coloring(&g, &s, q, d)
            }
            .map_err(color_failure)?;
            if outcome.colorable {
                println!("YES");
                if let Some(c) = outcome.coloring {
                    let mut lines = String::new();
                    for (v, color) in c.iter().enumerate() {
                        writeln!(lines, "v {} {}", v + 1, color).unwrap();
                    }
                    print!("{lines}");
                }
            } else {
                println!("NO");
            }
            Ok(())
        }
        Cmd::Matrix {
            op,
            matrix: path,
            rows,
            cols,
            t,
            symmetric,
            budget,
        } => {
            let m = formats::parse_matrix(&read(&path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            match op {
                MatrixOp::Error => {
                    let row_parts = match rows {
                        Some(spec) => parse_side(&spec, m.rows())?,
                        None => (0..m.rows()).map(|i| vec![i]).collect(),
                    };
                    let col_parts = match cols {
                        Some(spec) => parse_side(&spec, m.cols())?,
                        None => (0..m.cols()).map(|j| vec![j]).collect(),
                    };
                    let p = MatrixPartition::new(&m, row_parts, col_parts).map_err(input_err)?;
                    println!("{}", matrix::error_value(&m, &p));
                    Ok(())
                }
                MatrixOp::Mixed => {
                    match matrix::find_corner(&m, 0..m.rows(), 0..m.cols()) {
                        Some((i, j)) => println!("mixed corner {} {}", i + 1, j + 1),
                        None => println!("not-mixed"),
                    }
                    Ok(())
                }
                MatrixOp::Minor => {
                    let t = t.ok_or_else(|| Failure::Input("--t is required".into()))?;
                    let found = matrix::has_t_mixed_minor(&m, t).map_err(matrix_failure)?;
                    println!("{}", if found { "yes" } else { "no" });
                    Ok(())
                }
                MatrixOp::Exact => {
                    let result = if symmetric {
                        matrix::matrix_twin_width_symmetric(&m, budget)
                    } else {
                        matrix::matrix_twin_width_exact(&m, budget)
                    }
                    .map_err(matrix_failure)?;
                    match result {
                        TwwResult::Exact(w) => {
                            println!("{w}");
                            Ok(())
                        }
                        TwwResult::Bracket { lo, hi } => {
                            println!("bracket {lo} {hi}");
                            Err(Failure::Budget(format!(
                                "node budget {budget} exhausted; twin-width in {lo}..={hi}"
                            )))
                        }
                    }
                }
            }
        }
        Cmd::Gen {
            kind,
            params,
            seed,
            out,
        } => {
            let g = build_graph(&kind, &params, seed)?;
            emit(out.as_ref(), &formats::serialize_graph(&g))
        }
    }
}

fn convert_failure(e: decomposition::ConvertError) -> Failure {
    match e {
        decomposition::ConvertError::WidthExceeded { .. } => Failure::Verification(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn color_failure(e: coloring::ColoringError) -> Failure {
    match e {
        coloring::ColoringError::WidthExceeded { .. } => Failure::Verification(e.to_string()),
        coloring::ColoringError::OracleCap { .. } => Failure::Budget(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn matrix_failure(e: matrix::MatrixError) -> Failure {
    match e {
        matrix::MatrixError::CapExceeded(_) => Failure::Budget(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T, Failure> {
    params
        .get(i)
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Failure::Input(format!("--params needs {what}")))
}

fn build_graph(kind: &str, params: &[String], seed: u64) -> Result<Graph, Failure> {
    let g = match kind {
        "path" => generate::path(param(params, 0, "<n>")?),
        "cycle" => generate::cycle(param(params, 0, "<n>")?),
        "clique" => generate::clique(param(params, 0, "<n>")?),
        "biclique" => generate::biclique(param(params, 0, "<a>")?, param(params, 1, "<b>")?),
        "grid" => generate::grid(param(params, 0, "<w>")?, param(params, 1, "<h>")?),
        "diag-grid" => {
            generate::grid_with_diagonals(param(params, 0, "<w>")?, param(params, 1, "<h>")?)
        }
        "er" => generate::erdos_renyi(param(params, 0, "<n>")?, param(params, 1, "<p>")?, seed),
        "blowup" => {
            let base = build_graph(
                params
                    .first()
                    .ok_or_else(|| Failure::Input("--params needs <base-kind>".into()))?,
                &params[1..params.len() - 1],
                seed,
            )?;
            let k: usize = params
                .last()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| Failure::Input("--params must end with <module-size>".into()))?;
            generate::blowup(&base, k)
        }
        "icosahedron" => generate::icosahedron(),
        "planar-tri" => generate::planar_triangulation(param(params, 0, "<n>")?, seed),
        "cograph" => generate::random_cograph(param(params, 0, "<n>")?, seed),
        other => return Err(Failure::Input(format!("unknown kind '{other}'"))),
    };
    Ok(g)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
