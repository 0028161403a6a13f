use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use motif_profit::diffusion::exact_profit_oracle;
use motif_profit::harness::{
    prepare_graph, run_experiment, write_csv, write_csv_to, ConfigError, ExperimentConfig,
};
use motif_profit::motif::{load_motifs, sample_motifs, write_motifs};
use motif_profit::ris::{generate_rr_sets_with, RootDistribution};
use motif_profit::{BenefitMode, Execution, NodeId, RngStream};

#[derive(Parser)]
#[command(
    name = "motif-profit",
    version,
    about = "Motif-oriented profit maximization under Independent Cascade"
)]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment grid and write a CSV of results.
    Run(RunArgs),
    /// Exact expected profit of a seed set on a small graph.
    Oracle(OracleArgs),
    /// Sample connected motifs from a graph and write them as a motif file.
    SampleMotifs(SampleArgs),
    /// Generate RR sets and print summary statistics.
    Rrgen(RrgenArgs),
}

/// Graph loading options shared by every subcommand.
#[derive(Args, Clone)]
struct GraphArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Treat each line as an undirected edge.
    #[arg(long)]
    undirected: bool,
    /// Edge probability model: trivalency or wc.
    #[arg(long)]
    prob: Option<String>,
    #[arg(long)]
    base_cost: Option<String>,
    #[arg(long)]
    cost_slope: Option<String>,
    #[arg(long)]
    benefit_scale: Option<String>,
    /// Master seed.
    #[arg(long)]
    seed: Option<String>,
}

impl GraphArgs {
    fn settings(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(g) = &self.graph {
            out.push(("graph", g.display().to_string()));
        }
        if self.undirected {
            out.push(("undirected", "true".into()));
        }
        let opts = [
            ("prob", &self.prob),
            ("base-cost", &self.base_cost),
            ("cost-slope", &self.cost_slope),
            ("benefit-scale", &self.benefit_scale),
            ("seed", &self.seed),
        ];
        out.extend(
            opts.into_iter()
                .filter_map(|(k, v)| v.clone().map(|v| (k, v))),
        );
        out
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// `key=value` file; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated budgets.
    #[arg(long)]
    budgets: Option<String>,
    /// Comma-separated motif thresholds.
    #[arg(long)]
    thresholds: Option<String>,
    #[arg(long)]
    motif_size: Option<String>,
    #[arg(long)]
    motif_count: Option<String>,
    #[arg(long)]
    motifs_file: Option<String>,
    /// Comma-separated subset of ris,random,high-degree,celf,simple-greedy.
    #[arg(long)]
    algos: Option<String>,
    /// Monte Carlo cascades per evaluation.
    #[arg(long)]
    sims: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    /// motif or node-union.
    #[arg(long)]
    benefit_mode: Option<String>,
    /// Worlds per greedy round for CELF and simple greedy.
    #[arg(long)]
    greedy_sims: Option<String>,
    /// motif or node-benefit.
    #[arg(long)]
    baseline_objective: Option<String>,
    /// out or total.
    #[arg(long)]
    degree: Option<String>,
    /// importance or uniform.
    #[arg(long)]
    roots: Option<String>,
    /// members or width.
    #[arg(long)]
    kpt_size: Option<String>,
    /// Generate RR sets once at the largest θ and reuse them for every budget.
    #[arg(long)]
    reuse_rr: bool,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut c = ExperimentConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            c.apply_file_text(&text)
                .with_context(|| format!("in config {}", path.display()))?;
        }
        let mut settings = self.graph.settings();
        let opts = [
            ("budgets", &self.budgets),
            ("thresholds", &self.thresholds),
            ("motif-size", &self.motif_size),
            ("motif-count", &self.motif_count),
            ("motifs-file", &self.motifs_file),
            ("algos", &self.algos),
            ("sims", &self.sims),
            ("epsilon", &self.epsilon),
            ("ell", &self.ell),
            ("benefit-mode", &self.benefit_mode),
            ("greedy-sims", &self.greedy_sims),
            ("baseline-objective", &self.baseline_objective),
            ("degree", &self.degree),
            ("roots", &self.roots),
            ("kpt-size", &self.kpt_size),
        ];
        settings.extend(
            opts.into_iter()
                .filter_map(|(k, v)| v.clone().map(|v| (k, v))),
        );
        if self.reuse_rr {
            settings.push(("reuse-rr", "true".into()));
        }
        for (k, v) in settings {
            c.set(k, &v)?;
        }
        if let Some(out) = &self.out {
            c.out = Some(out.clone());
        }
        if c.graph_path.is_none() {
            return Err(ConfigError::Missing("--graph").into());
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated seed labels.
    #[arg(long, default_value = "")]
    seeds: String,
    #[arg(long)]
    motifs_file: PathBuf,
    /// Override every motif threshold (clamped to motif size).
    #[arg(long)]
    threshold: Option<usize>,
    /// motif or node-union.
    #[arg(long, default_value = "node-union")]
    benefit_mode: String,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 3)]
    motif_size: usize,
    #[arg(long, default_value_t = 100)]
    motif_count: usize,
    /// Output motif file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RrgenArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Number of RR sets.
    #[arg(long, default_value_t = 10_000)]
    count: u64,
    /// importance or uniform.
    #[arg(long, default_value = "importance")]
    roots: String,
}

fn graph_config(args: &GraphArgs) -> Result<ExperimentConfig> {
    let mut c = ExperimentConfig::default();
    for (k, v) in args.settings() {
        c.set(k, &v)?;
    }
    if c.graph_path.is_none() {
        return Err(ConfigError::Missing("--graph").into());
    }
    Ok(c)
}

fn benefit_mode(s: &str) -> Result<BenefitMode> {
    match s {
        "motif" => Ok(BenefitMode::MotifLevel),
        "node-union" => Ok(BenefitMode::NodeUnion),
        other => Err(anyhow!(
            "unknown benefit mode {other:?}, expected motif|node-union"
        )),
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(args: &RunArgs, exec: Execution) -> Result<()> {
    let config = args.config()?;
    let report = run_experiment(&config, exec)?;
    for f in &report.failures {
        log::error!("skipped budget={} {}: {}", f.budget, f.algorithm, f.message);
    }
    if report.records.is_empty() {
        bail!("every grid cell failed");
    }
    match &config.out {
        Some(p) => {
            write_csv(&report.records, p).with_context(|| format!("writing {}", p.display()))?
        }
        None => write_csv_to(&report.records, io::stdout().lock())?,
    }
    Ok(())
}

fn oracle(args: &OracleArgs) -> Result<()> {
    let config = graph_config(&args.graph)?;
    let g = prepare_graph(&config)?;
    let motifs = load_motifs(&args.motifs_file, &g, benefit_mode(&args.benefit_mode)?)?;
    let seeds = args
        .seeds
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|l| {
            g.node_by_label(l)
                .ok_or_else(|| anyhow!("unknown seed label {l:?}"))
        })
        .collect::<Result<Vec<NodeId>>>()?;
    let profit = exact_profit_oracle(&g, &seeds, &motifs, args.threshold)?;
    println!("{profit}");
    Ok(())
}

fn sample(args: &SampleArgs) -> Result<()> {
    let config = graph_config(&args.graph)?;
    let g = prepare_graph(&config)?;
    let rng = RngStream::new(config.master_seed, 0).derive(1);
    let sampled = sample_motifs(
        &g,
        args.motif_size,
        args.motif_count,
        rng,
        BenefitMode::NodeUnion,
    )?;
    if !sampled.complete {
        log::warn!(
            "only {} of {} motifs found",
            sampled.motifs.len(),
            sampled.requested
        );
    }
    let mut out = output(args.out.as_ref())?;
    write_motifs(&sampled.motifs, &g, &mut out)?;
    out.flush()?;
    Ok(())
}

fn rrgen(args: &RrgenArgs, exec: Execution) -> Result<()> {
    let config = graph_config(&args.graph)?;
    let g = prepare_graph(&config)?;
    let roots = match args.roots.as_str() {
        "importance" => RootDistribution::Importance,
        "uniform" => RootDistribution::Uniform,
        other => bail!("unknown root distribution {other:?}"),
    };
    if args.count == 0 {
        bail!("--count must be >= 1");
    }
    let rng = RngStream::new(config.master_seed, 0).derive(3);
    let rr = generate_rr_sets_with(&g, args.count, rng, roots, exec);
    let total = rr.total_members();
    let max = (0..rr.theta())
        .map(|i| rr.sample(i).len())
        .max()
        .unwrap_or(0);
    println!("sets\t{}", rr.theta());
    println!("members\t{total}");
    println!("mean_size\t{}", total as f64 / rr.theta() as f64);
    println!("max_size\t{max}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let result = match &cli.command {
        Command::Run(a) => run(a, exec),
        Command::Oracle(a) => oracle(a),
        Command::SampleMotifs(a) => sample(a),
        Command::Rrgen(a) => rrgen(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            // bad settings are usage errors, everything else is a runtime failure
            if e.chain().any(|c| c.is::<ConfigError>()) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
