//! `qwalk` command-line interface.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage, 3 file I/O, 4 parse,
//! 5 tolerance or invariant violation.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qwalk::analysis::{linear_grid, PeriodReport, VerifyReport};
use qwalk::gadget::by_name;
use qwalk::io::{
    coin_to_json, graph_from_json, graph_to_json, matrix_to_pairs, placement_report, ports_to_json,
    state_from_json, trace_amplitudes_json, trace_to_csv, FormatError, GraphFile, PortsFile,
};
use qwalk::{
    lower, parse_circuit, pst_scan, resolve_label, verify_circuit, AnalysisError, CircuitIR,
    StateError, WalkGraph, STATE_NORM_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Coined quantum walks, gate gadgets and circuit compilation"
)]
struct Cli {
    /// Tolerance for fidelity and periodicity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    /// Step cap for `simulate`; step budget per cycle for `pst`.
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a named coin as a matrix of [re, im] pairs.
    Coin { label: String },
    /// Emit a gadget graph and its ports sidecar.
    Gadget {
        /// wire, cnot, phase, mixer or hadamard
        name: String,
        #[arg(long)]
        length: Option<usize>,
    },
    /// Lower a circuit file to a walk graph, ports sidecar and placement report.
    Compile { circuit: PathBuf },
    /// Evolve a state on a graph and emit per-vertex probabilities.
    Simulate {
        graph: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Also write every step's amplitudes as JSON to this path.
        #[arg(long)]
        dump_amplitudes: Option<PathBuf>,
    },
    /// Compile a circuit and compare it with the gate-product oracle.
    Verify { circuit: PathBuf },
    /// Search biased, phased coins on cycles for periodic walks.
    Pst {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,8,10")]
        sizes: Vec<usize>,
        /// Bias grid points over [0, 1].
        #[arg(long, default_value_t = 5)]
        delta_steps: usize,
        /// Phase grid points over [0, 2π).
        #[arg(long, default_value_t = 4)]
        phase_steps: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Parse(String),
    Tolerance(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Parse(_) => 4,
            Failure::Tolerance(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Io(m)
            | Failure::Parse(m)
            | Failure::Tolerance(m)
            | Failure::Internal(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::State(StateError::NotNormalized { .. }) => {
                Failure::Tolerance(e.to_string())
            }
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::TooManyQubits(_) | AnalysisError::DimensionMismatch(..) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Tolerance(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `graph.json` -> `graph.<tag>.json`.
fn sidecar(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    path.with_file_name(format!("{stem}.{tag}.json"))
}

fn load_circuit(path: &Path) -> Result<CircuitIR> {
    parse_circuit(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coin(cli: &Cli, label: &str) -> Result<String> {
    let coin = resolve_label(label).map_err(|e| Failure::Parse(e.to_string()))?;
    let m = coin.effective_matrix();
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => format!("{}\n", coin_to_json(&coin)),
        Format::Csv => {
            let mut s = String::from("row,col,re,im\n");
            for (i, row) in matrix_to_pairs(&m).iter().enumerate() {
                for (j, [re, im]) in row.iter().enumerate() {
                    writeln!(s, "{i},{j},{re},{im}").unwrap();
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "{}  degree {}  phase {}\n",
                coin.label(),
                coin.degree(),
                coin.phase()
            );
            for i in 0..m.rows() {
                let cells: Vec<String> = m
                    .row(i)
                    .iter()
                    .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                    .collect();
                writeln!(s, "  {}", cells.join("  ")).unwrap();
            }
            s
        }
    })
}

fn gadget(cli: &Cli, name: &str, length: Option<usize>) -> Result<String> {
    if length == Some(0) {
        return Err(Failure::Usage("--length must be at least 1".into()));
    }
    let g = by_name(name, length).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown gadget `{name}` (expected wire, cnot, phase, mixer or hadamard)"
        ))
    })?;
    if let Some(out) = &cli.out {
        write(out, &graph_to_json(&g.body.graph))?;
        write(&sidecar(out, "ports"), &ports_to_json(&g.body))?;
        return Ok(String::new());
    }
    Ok(to_json(&json!({
        "graph": GraphFile::from_graph(&g.body.graph),
        "ports": PortsFile::from_ported(&g.body),
    })))
}

fn compile(cli: &Cli, path: &Path) -> Result<String> {
    let circuit = load_circuit(path)?;
    let compiled = lower(&circuit);
    let report = placement_report(&compiled);
    if let Some(out) = &cli.out {
        write(out, &graph_to_json(&compiled.body.graph))?;
        write(&sidecar(out, "ports"), &ports_to_json(&compiled.body))?;
        write(&sidecar(out, "placement"), &to_json(&report))?;
        return Ok(String::new());
    }
    Ok(to_json(&json!({
        "graph": GraphFile::from_graph(&compiled.body.graph),
        "ports": PortsFile::from_ported(&compiled.body),
        "placement": report,
    })))
}

fn load_graph(path: &Path) -> Result<WalkGraph> {
    graph_from_json(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn simulate(
    cli: &Cli,
    graph_path: &Path,
    state_path: &Path,
    steps: usize,
    dump: Option<&Path>,
) -> Result<String> {
    if let Some(cap) = cli.max_steps {
        if steps > cap {
            return Err(Failure::Usage(format!(
                "--steps {steps} exceeds --max-steps {cap}"
            )));
        }
    }
    let graph = load_graph(graph_path)?;
    let state = state_from_json(&graph, &read(state_path)?)
        .map_err(|e| Failure::from(e).with_context(state_path))?;
    let trace = graph.simulate(&state, steps).map_err(|e| match e {
        StateError::NotNormalized { .. } => Failure::Tolerance(e.to_string()),
        _ => Failure::Parse(e.to_string()),
    })?;
    let drift = (trace.final_state().norm_sqr() - state.norm_sqr()).abs();
    if drift > STATE_NORM_TOL {
        return Err(Failure::Tolerance(format!("norm drifted by {drift:e}")));
    }
    if let Some(p) = dump {
        write(p, &format!("{}\n", trace_amplitudes_json(&graph, &trace)))?;
    }
    let probs = trace.vertex_probabilities(&graph);
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => trace_to_csv(&graph, &trace),
        Format::Json => {
            let ids: Vec<u64> = graph.vertices().iter().map(|v| v.id).collect();
            to_json(&json!({ "vertices": ids, "probabilities": probs }))
        }
        Format::Pretty => {
            let mut s = String::new();
            for (t, row) in probs.iter().enumerate() {
                let cells: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| **p > 0.0)
                    .map(|(v, p)| format!("{}:{p:.6}", graph.vertex(v).id))
                    .collect();
                writeln!(s, "t={t:<4} {}", cells.join(" ")).unwrap();
            }
            s
        }
    })
}

impl Failure {
    fn with_context(self, path: &Path) -> Self {
        let add = |m: String| format!("{}: {m}", path.display());
        match self {
            Failure::Usage(m) => Failure::Usage(add(m)),
            Failure::Io(m) => Failure::Io(add(m)),
            Failure::Parse(m) => Failure::Parse(add(m)),
            Failure::Tolerance(m) => Failure::Tolerance(add(m)),
            Failure::Internal(m) => Failure::Internal(add(m)),
        }
    }
}

fn verify(cli: &Cli, path: &Path) -> Result<String> {
    let circuit = load_circuit(path)?;
    let r: VerifyReport = verify_circuit(&circuit, cli.tol)?;
    Ok(match cli.format.unwrap_or(Format::Pretty) {
        Format::Json => to_json(&r),
        Format::Csv => format!(
            "qubits,gates,depth,vertices,max_degree,fidelity,global_phase,leakage,max_rail_mismatch\n\
             {},{},{},{},{},{},{},{},{}\n",
            r.qubits,
            r.gates,
            r.depth,
            r.vertices,
            r.max_degree,
            r.fidelity,
            r.global_phase,
            r.leakage,
            r.max_rail_mismatch
        ),
        Format::Pretty => format!(
            "qubits        {}\ngates         {}\ndepth         {}\nvertices      {}\n\
             max degree    {}\nfidelity      {:.15}\nglobal phase  {:.15}\n\
             leakage       {:e}\nrail mismatch {:e}\n",
            r.qubits,
            r.gates,
            r.depth,
            r.vertices,
            r.max_degree,
            r.fidelity,
            r.global_phase,
            r.leakage,
            r.max_rail_mismatch
        ),
    })
}

fn pst_csv(reports: &[PeriodReport]) -> String {
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut s = String::from("cycle_size,delta,coin_phase,initial_coin,period,transfer_step\n");
    for r in reports {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            r.cycle_size,
            r.delta,
            r.coin_phase,
            r.initial_coin,
            opt(r.period),
            opt(r.transfer_step)
        )
        .unwrap();
    }
    s
}

fn pst(cli: &Cli, sizes: &[usize], delta_steps: usize, phase_steps: usize) -> Result<String> {
    if sizes.is_empty() || delta_steps == 0 || phase_steps == 0 {
        return Err(Failure::Usage(
            "sizes and both grids must be nonempty".into(),
        ));
    }
    if let Some(&bad) = sizes.iter().find(|&&n| n < 2) {
        return Err(Failure::Usage(format!("cycle size {bad} is below 2")));
    }
    let deltas = linear_grid(0.0, 1.0, delta_steps);
    let phases: Vec<f64> = (0..phase_steps)
        .map(|k| 2.0 * PI * k as f64 / phase_steps as f64)
        .collect();
    let reports = pst_scan(sizes, &deltas, &phases, cli.max_steps, cli.tol)?;
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => pst_csv(&reports),
        Format::Json => to_json(&reports),
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                writeln!(
                    s,
                    "N={:<3} delta={:<6} phase={:<8.4} init={:<3} period={:<6} transfer={}",
                    r.cycle_size,
                    r.delta,
                    r.coin_phase,
                    r.initial_coin,
                    r.period.map_or("-".into(), |p| p.to_string()),
                    r.transfer_step.map_or("-".into(), |p| p.to_string())
                )
                .unwrap();
            }
            s
        }
    })
}

fn run(cli: &Cli) -> Result<()> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let text = match &cli.command {
        Command::Coin { label } => coin(cli, label)?,
        Command::Gadget { name, length } => gadget(cli, name, *length)?,
        Command::Compile { circuit } => compile(cli, circuit)?,
        Command::Simulate {
            graph,
            state,
            steps,
            dump_amplitudes,
        } => simulate(cli, graph, state, *steps, dump_amplitudes.as_deref())?,
        Command::Verify { circuit } => verify(cli, circuit)?,
        Command::Pst {
            sizes,
            delta_steps,
            phase_steps,
        } => pst(cli, sizes, *delta_steps, *phase_steps)?,
    };
    if text.is_empty() {
        return Ok(());
    }
    emit(cli, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("qwalk: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(_) => ExitCode::from(Failure::Internal(String::new()).code()),
    }
}
