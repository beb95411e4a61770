use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tgs_core::densop::{HERMITICITY_TOL, MAX_DENSE_QUBITS};
use tgs_core::entanglement::{
    bound_entanglement_window, critical_temperature_equal, critical_temperature_numeric,
    critical_temperature_pair, negativity_sweep, temperature_grid, CriticalTemperature,
    NEGATIVITY_ZERO_THRESHOLD,
};
use tgs_core::graph::{boundary_reduce, Bipartition, BoundaryReduction, Couplings, Graph};
use tgs_core::states::equivalence_check;
use tgs_core::Error;

use crate::output::{emit_sweep, emit_text, fmt_f64, SweepMetadata};
use crate::parse::{parse_coupling_list, parse_index_list, parse_partition, parse_temps};
use crate::{CliError, Command, CouplingArgs, Generator, SweepArgs, TcArgs, VerifyArgs, WindowArgs};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Graph { generator } => cmd_graph(generator),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Tc(args) => cmd_tc(args),
        Command::Window(args) => cmd_window(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(Graph::from_json(&text)?)
}

fn resolve_couplings(args: &CouplingArgs) -> Result<Couplings, CliError> {
    match &args.couplings {
        Some(list) => Ok(Couplings::PerVertex(parse_coupling_list(list)?)),
        None => Ok(Couplings::Uniform(args.coupling)),
    }
}

fn cmd_graph(generator: Generator) -> Result<(), CliError> {
    let (graph, output): (Graph, Option<PathBuf>) = match generator {
        Generator::Chain { n, couplings, output } => {
            (Graph::linear_chain(n, resolve_couplings(&couplings)?)?, output)
        }
        Generator::Lattice { rows, cols, couplings, output } => {
            (Graph::square_lattice(rows, cols, resolve_couplings(&couplings)?)?, output)
        }
        Generator::Star { leaves, couplings, output } => {
            (Graph::star(leaves, resolve_couplings(&couplings)?)?, output)
        }
    };
    emit_text(&graph.to_json(), output.as_deref())
}

/// Run `f` in an explicitly sized pool: `--jobs` if given, otherwise the
/// detected parallel capacity. Configuration stays on the command line;
/// environment variables are never consulted.
fn with_pool<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let threads = jobs.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build a pool with {threads} jobs: {e}")))?
        .install(f)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let graph = load_graph(&args.graph)?;
    let partition = parse_partition(&args.partition, graph.n())?;
    let (start, stop, steps) = parse_temps(&args.temps)?;
    let grid = temperature_grid(start, stop, steps)?;
    let reduce = !args.no_reduce;

    // Policy cap on the dense size actually built; the library enforces the
    // hard cap of MAX_DENSE_QUBITS regardless.
    let cap = args.max_qubits.min(MAX_DENSE_QUBITS);
    let dense_qubits = if reduce {
        match boundary_reduce(&graph, &partition)? {
            BoundaryReduction::Disconnected => 0,
            BoundaryReduction::Reduced(rp) => rp.reduced_graph.n(),
        }
    } else {
        graph.n()
    };
    if dense_qubits > cap {
        return Err(CliError::Core(Error::CapExceeded { qubits: dense_qubits, cap }));
    }

    let curve = with_pool(args.jobs, || {
        Ok(negativity_sweep(&graph, &partition, &grid, reduce)?)
    })?;

    let meta = SweepMetadata {
        graph_hash: graph.hash_id(),
        graph_n: graph.n(),
        partition: curve.partition.clone(),
        partition_spec: args.partition.clone(),
        temps_spec: args.temps.clone(),
        reduced: curve.reduced,
        negativity_zero_threshold: NEGATIVITY_ZERO_THRESHOLD,
        hermiticity_tol: HERMITICITY_TOL,
    };
    emit_sweep(&curve, &meta, args.format, args.output.as_deref())
}

fn cmd_tc(args: TcArgs) -> Result<(), CliError> {
    let tc: CriticalTemperature = if let Some(b) = args.equal {
        critical_temperature_equal(b)?
    } else if let Some(pair) = &args.pair {
        critical_temperature_pair(pair[0], pair[1])?
    } else {
        let path = args.graph.as_ref().expect("clap enforces the mode group");
        let graph = load_graph(path)?;
        let spec = args
            .partition
            .as_ref()
            .ok_or_else(|| CliError::Usage("--graph mode needs --partition".into()))?;
        let partition = parse_partition(spec, graph.n())?;
        let t_max = args.t_max.unwrap_or_else(|| {
            10.0 * graph.couplings().iter().copied().fold(0.0f64, f64::max)
        });
        critical_temperature_numeric(&graph, &partition, t_max, args.grid_points)?
    };
    let doc = serde_json::to_string_pretty(&tc).expect("report serialization cannot fail");
    emit_text(&doc, args.output.as_deref())
}

/// A cut can seed the window's nondistillability bound only if its boundary
/// splits into independent pairs (or has no crossing edge at all).
fn cut_is_probeable(g: &Graph, p: &Bipartition) -> Result<bool, CliError> {
    Ok(match boundary_reduce(g, p)? {
        BoundaryReduction::Disconnected => true,
        BoundaryReduction::Reduced(rp) => {
            (0..rp.reduced_graph.n()).all(|v| rp.reduced_graph.degree(v) == 1)
        }
    })
}

fn expand_cuts(g: &Graph, spec: &str) -> Result<Vec<Bipartition>, CliError> {
    if spec == "all" {
        let mut cuts = Vec::new();
        for i in 0..g.n().saturating_sub(1) {
            let p = Bipartition::contiguous_cut(g.n(), i)?;
            if cut_is_probeable(g, &p)? {
                cuts.push(p);
            }
        }
        return Ok(cuts);
    }
    parse_index_list(spec)
        .map_err(|_| CliError::Usage(format!("malformed cut list '{spec}'")))?
        .into_iter()
        .map(|i| Ok(Bipartition::contiguous_cut(g.n(), i)?))
        .collect()
}

fn expand_sites(g: &Graph, spec: &str) -> Result<Vec<Bipartition>, CliError> {
    if spec == "all" {
        return (0..g.n())
            .filter(|&v| g.degree(v) > 0)
            .map(|v| Ok(Bipartition::single_site(g.n(), v)?))
            .collect();
    }
    parse_index_list(spec)
        .map_err(|_| CliError::Usage(format!("malformed site list '{spec}'")))?
        .into_iter()
        .map(|i| Ok(Bipartition::single_site(g.n(), i)?))
        .collect()
}

fn cmd_window(args: WindowArgs) -> Result<(), CliError> {
    let graph = load_graph(&args.graph)?;
    let cuts = expand_cuts(&graph, &args.cuts)?;
    let sites = expand_sites(&graph, &args.sites)?;
    let report = with_pool(args.jobs, || {
        Ok(bound_entanglement_window(&graph, &cuts, &sites)?)
    })?;
    let doc = serde_json::to_string_pretty(&report).expect("report serialization cannot fail");
    emit_text(&doc, args.output.as_deref())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let graph = load_graph(&args.graph)?;
    let (start, stop, steps) = parse_temps(&args.temps)?;
    let grid = temperature_grid(start, stop, steps)?;

    println!("trial,T,trace_distance,pass");
    let mut failures = 0usize;
    let mut check = |trial: usize, g: &Graph| -> Result<(), CliError> {
        for &t in &grid {
            let report = equivalence_check(g, t, args.tol)?;
            if !report.pass {
                failures += 1;
            }
            println!("{trial},{},{},{}", fmt_f64(t), fmt_f64(report.trace_distance), report.pass);
        }
        Ok(())
    };

    check(0, &graph)?;
    if args.trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for trial in 1..=args.trials {
            let couplings: Vec<f64> =
                (0..graph.n()).map(|_| rng.random_range(0.1..3.0)).collect();
            let randomized = Graph::new(graph.n(), graph.edges().iter().copied(), couplings)?;
            check(trial, &randomized)?;
        }
    }

    if failures > 0 {
        return Err(CliError::VerificationFailed { failures });
    }
    Ok(())
}
