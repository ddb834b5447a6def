use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphnav_core::bench::{edges_for_degree, generate_er, run_scenario, ReportFormat, Scenario, ScenarioKind};
use graphnav_core::graph::{load_graph, DynamicGraph};
use graphnav_core::layout::{init_layout_with, LayoutParams};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "graphnav", version, about = "Layout, validation and headless benchmarks for dynamic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time one scenario on an Erdős–Rényi graph.
    Bench(BenchArgs),
    /// Run the force layout to convergence and write node positions.
    Layout(LayoutArgs),
    /// Check a graph file against the schema and report its size.
    Validate {
        #[arg(long = "in", value_name = "GRAPH")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 2000)]
    nodes: usize,
    #[arg(long, conflicts_with = "degree")]
    edges: Option<usize>,
    /// Edge count as a multiple of the node count (m = D * n).
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ScenarioArg::Overview)]
    scenario: ScenarioArg,
    #[arg(long, default_value_t = 600)]
    frames: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file overriding layout parameters.
    #[arg(long, value_name = "CONFIG")]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct LayoutArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "CONFIG")]
    params: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Overview,
    Rotation,
    Detail,
}

impl From<ScenarioArg> for ScenarioKind {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Overview => ScenarioKind::OverviewStatic,
            ScenarioArg::Rotation => ScenarioKind::OverviewRotation,
            ScenarioArg::Detail => ScenarioKind::DetailNavigation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn read_params(path: Option<&Path>) -> Result<LayoutParams> {
    let Some(path) = path else {
        return Ok(LayoutParams::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let params: LayoutParams = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    params.validate()?;
    Ok(params)
}

fn read_graph(path: &Path) -> Result<DynamicGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_graph(&text).with_context(|| format!("loading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn bench(args: BenchArgs) -> Result<()> {
    let params = read_params(args.params.as_deref())?;
    let m = match (args.edges, args.degree) {
        (Some(m), _) => m,
        (None, Some(d)) => edges_for_degree(args.nodes, d),
        (None, None) => edges_for_degree(args.nodes, 3),
    };
    if args.frames == 0 {
        bail!("--frames must be at least 1");
    }
    let graph = generate_er(args.nodes, m, args.seed)?;
    let scenario = Scenario::new(args.scenario.into(), args.frames, args.seed)?.with_params(params);
    let report = run_scenario(&graph, &scenario)?;
    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };
    write_out(args.out.as_deref(), &report.render(format)?)?;
    eprintln!("{report}");
    Ok(())
}

#[derive(Serialize)]
struct PositionsDoc<'a> {
    seed: u64,
    ticks: u64,
    alpha: f64,
    positions: Vec<NodePosition<'a>>,
}

#[derive(Serialize)]
struct NodePosition<'a> {
    id: &'a str,
    x: f64,
    y: f64,
    z: f64,
}

fn layout(args: LayoutArgs) -> Result<()> {
    let params = read_params(args.params.as_deref())?;
    let graph = read_graph(&args.input)?;
    let mut state = init_layout_with(&graph, args.seed, params)?;
    state.run_to_convergence(&graph)?;
    let doc = PositionsDoc {
        seed: args.seed,
        ticks: state.tick_count,
        alpha: state.alpha,
        positions: graph
            .nodes()
            .iter()
            .zip(&state.positions)
            .map(|(n, p)| NodePosition {
                id: &n.id,
                x: p.x,
                y: p.y,
                z: p.z,
            })
            .collect(),
    };
    fs::write(&args.out, serde_json::to_string_pretty(&doc)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    eprintln!("{} nodes settled after {} ticks", graph.node_count(), state.tick_count);
    Ok(())
}

fn validate(input: &Path) -> Result<()> {
    let g = read_graph(input)?;
    println!(
        "ok: {} nodes, {} edges, {} frames, {}",
        g.node_count(),
        g.edge_count(),
        g.frame_count(),
        if g.directed() { "directed" } else { "undirected" }
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Layout(args) => layout(args),
        Command::Validate { input } => validate(&input),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
