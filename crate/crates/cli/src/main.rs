//! Command-line front end: load graphs, derive nullifiers, run measurement
//! scripts and protocols, and drive the oracle verification scenarios.
//!
//! Exit codes: 0 on success, 2 on domain or input errors, 3 when a
//! verification scenario fails.

mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use hypercv::scenarios::{run_scenario, ScenarioConfig, SCENARIOS};
use hypercv::{
    build_3cluster, check_annihilation, commutator, lattice_layout, lattice_to_cluster,
    nullifier, parse_script, run_script, teleport_3edge, unit_cell, Annihilation, CubicRoute,
    Hypergraph, LatticeSpec, ScriptOutcome, StateExpr,
};

#[derive(Parser)]
#[command(name = "hypercv", version, about = "Hypergraph-state calculus and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every nullifier of a graph and check the annihilation and
    /// commutation properties.
    Nullifiers {
        /// Graph document (JSON)
        #[arg(long)]
        graph: String,
    },
    /// Run a measurement script against a graph state and print the result.
    Measure {
        /// Graph document (JSON)
        #[arg(long)]
        graph: String,
        /// Measurement script (JSON array of {"v", "basis", "m"})
        #[arg(long)]
        script: String,
    },
    /// Run a named protocol.
    Protocol {
        #[command(subcommand)]
        which: Protocol,
    },
    /// Run a named verification scenario (runtime goes to stderr).
    Verify {
        /// One of the named scenarios; see `verify list`.
        scenario: String,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Write the scenario's wavefunction marginals as CSV.
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Subcommand)]
enum Protocol {
    /// Teleport a 3-edge through the unit lattice cell.
    Teleport {
        /// Corner measurement outcome (must be nonzero)
        #[arg(long)]
        t: f64,
        /// Center measurement outcome
        #[arg(long)]
        m: f64,
        /// Write the resulting hypergraph as DOT
        #[arg(long)]
        dot: Option<String>,
    },
    /// Apply the cubic phase gate to an external input.
    Cubic {
        /// Cubic strength (> 0)
        #[arg(long)]
        gamma: f64,
        /// Outcome on the scaled ancilla mode
        #[arg(long, default_value_t = 0.0)]
        m: f64,
        /// Outcome on the plain ancilla mode
        #[arg(long, default_value_t = 0.0)]
        n: f64,
        /// Edge route: "direct" or "teleport"
        #[arg(long, default_value = "direct")]
        route: String,
        #[arg(long)]
        dot: Option<String>,
    },
    /// Convert a 3-edge lattice into a 2-edge cluster by measuring centers.
    ToCluster {
        #[arg(long, default_value_t = 2)]
        rows: usize,
        #[arg(long, default_value_t = 2)]
        cols: usize,
        /// Outcomes: "all=V" or a comma list "13=1,14=0.5"
        #[arg(long)]
        outcomes: String,
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Args)]
struct OracleArgs {
    /// Squeezing parameter
    #[arg(long)]
    r: Option<f64>,
    /// Grid points per mode (power of two)
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
    /// Grid half-extent (defaults to the self-dual extent)
    #[arg(long = "grid-l")]
    grid_l: Option<f64>,
    /// Quadrature step count
    #[arg(long = "quad-steps")]
    quad_steps: Option<usize>,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn load_graph(path: &str) -> anyhow::Result<Hypergraph> {
    let text = fs::read_to_string(path)?;
    Ok(Hypergraph::from_json(&text)?)
}

fn cmd_nullifiers(path: &str) -> anyhow::Result<bool> {
    let g = load_graph(path)?;
    for i in 0..g.n_modes() {
        println!("{}", nullifier(&g, i)?);
    }
    let mut all_pass = true;
    match check_annihilation(&g) {
        Annihilation::Pass => println!("annihilation: pass"),
        Annihilation::Witness { mode, residual } => {
            println!("annihilation: witness at mode {mode}, residual {residual}");
            all_pass = false;
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..g.n_modes() {
        for j in (i + 1)..g.n_modes() {
            let c = commutator(&nullifier(&g, i)?, &nullifier(&g, j)?)?;
            let mag = c.terms().map(|(_, w)| w.abs()).fold(c.constant.abs(), f64::max);
            worst = worst.max(mag);
        }
    }
    if worst <= 1e-12 {
        println!("commutators: all zero");
    } else {
        println!("commutators: max residual {worst:.3e}");
        all_pass = false;
    }
    Ok(all_pass)
}

fn cmd_measure(graph: &str, script: &str) -> anyhow::Result<()> {
    let g = load_graph(graph)?;
    let recs = parse_script(&fs::read_to_string(script)?)?;
    let st = StateExpr::from_hypergraph(&g);
    let (outcome, _) = run_script(&st, &recs)?;
    match outcome {
        ScriptOutcome::Completed(state) => println!("{state}"),
        ScriptOutcome::Stopped { at, reason } => {
            println!("Irreducible at step {at}: {reason}");
        }
    }
    Ok(())
}

fn parse_outcomes(spec: &str, centers: &[usize]) -> anyhow::Result<BTreeMap<usize, f64>> {
    let mut map = BTreeMap::new();
    if let Some(v) = spec.strip_prefix("all=") {
        let value: f64 = v.parse()?;
        for &c in centers {
            map.insert(c, value);
        }
        return Ok(map);
    }
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("bad outcome entry '{part}', expected VERTEX=VALUE"))?;
        map.insert(k.trim().parse()?, v.trim().parse()?);
    }
    Ok(map)
}

fn write_dot(path: &str, n_modes: usize, poly: &hypercv::PhasePolynomial) -> anyhow::Result<()> {
    fs::write(path, dot::poly_to_dot(n_modes, poly))?;
    Ok(())
}

fn cmd_protocol(which: Protocol) -> anyhow::Result<()> {
    match which {
        Protocol::Teleport { t, m, dot } => {
            let (graph, cell) = unit_cell();
            let st = StateExpr::from_hypergraph(&graph);
            let out = teleport_3edge(&st, &cell, t, m)?;
            println!("{out}");
            if let Some(path) = dot {
                write_dot(&path, out.n_modes(), &out.phase)?;
            }
        }
        Protocol::Cubic { gamma, m, n, route, dot } => {
            let route = match route.as_str() {
                "direct" => CubicRoute::DirectEdge,
                "teleport" => CubicRoute::TeleportedEdge { t: 1.0, center_outcome: m },
                other => anyhow::bail!("unknown route '{other}', expected direct|teleport"),
            };
            let out = hypercv::cubic_phase_gate("ψ", gamma, m, n, route)?;
            println!("{out}");
            if let Some(path) = dot {
                write_dot(&path, out.n_modes(), &out.phase)?;
            }
        }
        Protocol::ToCluster { rows, cols, outcomes, dot } => {
            let spec = LatticeSpec::new(rows, cols)?;
            let layout = lattice_layout(&spec);
            let outcomes = parse_outcomes(&outcomes, &layout.centers)?;
            let g = build_3cluster(&spec);
            let st = StateExpr::from_hypergraph(&g);
            let (out, report) = lattice_to_cluster(&st, &spec, &outcomes)?;
            print!("{report}");
            println!("{out}");
            if let Some(path) = dot {
                write_dot(&path, out.n_modes(), &out.phase)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(scenario: &str, oracle: OracleArgs, csv: Option<String>) -> anyhow::Result<bool> {
    if scenario == "list" {
        for s in SCENARIOS {
            println!("{s}");
        }
        return Ok(true);
    }
    let cfg = ScenarioConfig {
        r: oracle.r,
        grid_n: oracle.grid_n,
        grid_l: oracle.grid_l,
        quad_steps: oracle.quad_steps,
        seed: oracle.seed,
    };
    let start = Instant::now();
    let report = run_scenario(scenario, &cfg)?;
    println!("{report}");
    eprintln!("runtime: {:.1}s", start.elapsed().as_secs_f64());
    if let (Some(path), Some(data)) = (csv, report.csv.as_ref()) {
        fs::write(path, data)?;
    }
    Ok(report.passed())
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Nullifiers { graph } => Ok(if cmd_nullifiers(&graph)? { 0 } else { 3 }),
        Command::Measure { graph, script } => {
            cmd_measure(&graph, &script)?;
            Ok(0)
        }
        Command::Protocol { which } => {
            cmd_protocol(which)?;
            Ok(0)
        }
        Command::Verify { scenario, oracle, csv } => {
            Ok(if cmd_verify(&scenario, oracle, csv)? { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
