//! Command-line pipeline: simulate enterprise panels, analyze them into
//! indicator outputs, export correlation graphs, and compare scenarios.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 data/IO error. Every
//! command writes a manifest next to its outputs; the manifest timestamp is
//! the only byte region allowed to vary between identical runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use corradapt::{
    correlation_graph, correlation_matrix, critical_r, detect_regimes, dot_export, format_sig,
    g_dynamics_csv, gi_surface_csv, indicator_series, load_panel, matrix_csv, rank_options,
    simulate, svg_g_dynamics, window_slice, write_panel, AnalysisReport, ControlOption, Error,
    NormalizationMode, Objective, ScenarioScore, ScenarioTotals, SimConfig, ThresholdSpec,
};

#[derive(Parser)]
#[command(
    name = "corradapt",
    version,
    about = "Windowed correlation indicators and scenario ranking for enterprise time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic enterprise panel for one control option
    Simulate(SimulateArgs),
    /// Compute G_i(t)/G(t) indicator outputs for a panel CSV
    Analyze(AnalyzeArgs),
    /// Export the correlation graph at one tick as DOT
    Graph(GraphArgs),
    /// Rank analysis reports by the integral indicator
    Compare(CompareArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Control option preset, 1..=6
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
    option: u32,
    /// Scenario file with key = value overrides
    #[arg(long)]
    config: Option<PathBuf>,
    /// Generator seed
    #[arg(long)]
    seed: Option<u64>,
    /// Panel width (n_parameters)
    #[arg(long)]
    n: Option<usize>,
    /// Number of ticks (horizon_T)
    #[arg(long)]
    horizon: Option<i64>,
    /// Output panel CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input panel CSV
    #[arg(long)]
    panel: PathBuf,
    /// Window depth k
    #[arg(long, default_value_t = 12)]
    window: usize,
    /// Two-sided significance level for r_sign (default 0.05)
    #[arg(long)]
    alpha: Option<f64>,
    /// Fixed r_sign in [0,1] instead of a significance level
    #[arg(long)]
    threshold: Option<f64>,
    /// Normalization mode shown in the summary: raw|per_tick|per_cell
    #[arg(long, default_value = "per_tick")]
    mode: String,
    /// Scenario id recorded in the report (default: panel file stem)
    #[arg(long)]
    scenario_id: Option<String>,
    /// Also write the G(t) dynamics SVG
    #[arg(long)]
    svg: bool,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GraphArgs {
    /// Input panel CSV
    #[arg(long)]
    panel: PathBuf,
    /// Anchor tick
    #[arg(long)]
    t: i64,
    /// Window depth k
    #[arg(long, default_value_t = 12)]
    window: usize,
    /// Two-sided significance level for r_sign (default 0.05)
    #[arg(long)]
    alpha: Option<f64>,
    /// Fixed r_sign in [0,1] instead of a significance level
    #[arg(long)]
    threshold: Option<f64>,
    /// Optional correlation matrix dump CSV
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    /// Significant digits in the matrix dump
    #[arg(long, default_value_t = 6)]
    digits: usize,
    /// Output DOT path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Analysis report JSONs
    #[arg(long, num_args = 1.., required = true)]
    reports: Vec<PathBuf>,
    /// Ranking direction: min|max
    #[arg(long, default_value = "min")]
    objective: String,
    /// Normalization mode to rank by (required when reports disagree)
    #[arg(long)]
    mode: Option<String>,
    /// Output comparison JSON path
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::InvalidDepth(_) => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Compare(args) => cmd_compare(args),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

fn io_err(context: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{context} {}: {e}", path.display()))
}

/// Write through a temp file in the same directory, then rename.
fn write_atomic(path: &Path, content: &[u8]) -> CliResult {
    let tmp = path.with_file_name(format!(
        "{}.tmp{}",
        path.file_name().map(|s| s.to_string_lossy()).unwrap_or_default(),
        std::process::id()
    ));
    fs::write(&tmp, content).map_err(|e| io_err("cannot write", &tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err("cannot finalize", path, e))
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    version: String,
    /// Unix seconds; the only field allowed to differ between identical runs.
    timestamp: u64,
    inputs: Vec<String>,
    outputs: Vec<String>,
    resolved: serde_json::Value,
}

impl Manifest {
    fn new(
        command: &str,
        inputs: &[&Path],
        outputs: &[&Path],
        resolved: serde_json::Value,
    ) -> Manifest {
        Manifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
            resolved,
        }
    }

    fn write(&self, path: &Path) -> CliResult {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serialization");
        text.push('\n');
        write_atomic(path, text.as_bytes())
    }
}

fn manifest_path_for(out: &Path) -> PathBuf {
    let name = out.file_name().map(|s| s.to_string_lossy()).unwrap_or_default();
    out.with_file_name(format!("{name}.manifest.json"))
}

fn resolve_threshold(
    alpha: Option<f64>,
    threshold: Option<f64>,
) -> Result<ThresholdSpec, CliError> {
    match (alpha, threshold) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "pass either --alpha or --threshold, not both".into(),
        )),
        (None, Some(r)) => Ok(ThresholdSpec::fixed(r)?),
        (Some(a), None) => Ok(ThresholdSpec::significance(a)?),
        (None, None) => Ok(ThresholdSpec::significance(0.05)?),
    }
}

fn threshold_json(spec: &ThresholdSpec, r_sign: f64) -> serde_json::Value {
    match spec {
        ThresholdSpec::Fixed(r) => json!({"mode": "fixed", "fixed_r": r, "value_at_k": r_sign}),
        ThresholdSpec::Significance(a) => {
            json!({"mode": "significance", "alpha": a, "value_at_k": r_sign})
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_simulate(args: SimulateArgs) -> CliResult {
    let mut option = ControlOption::builtin(args.option).expect("range-checked by clap");
    let mut config = SimConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| io_err("cannot read", path, e))?;
        let overrides = corradapt::parse_scenario_file(&text)?;
        overrides.apply(&mut option, &mut config);
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(n) = args.n {
        config.n_parameters = n;
    }
    if let Some(h) = args.horizon {
        config.horizon_t = h;
    }

    let panel = simulate(&option, &config)?;
    write_atomic(&args.out, write_panel(&panel).as_bytes())?;

    let manifest_path = manifest_path_for(&args.out);
    let resolved = json!({
        "option": {
            "id": option.id,
            "credit_share": option.credit_share,
            "rate": option.rate,
            "owner_share": option.owner_share,
            "subsidy_share": option.subsidy_share,
            "sawlog_sale_start": option.sawlog_sale_start,
            "products_sale_start": option.products_sale_start,
            "asset_offset_months": option.asset_offset_months,
            "logging_volume": option.logging_volume,
        },
        "n_parameters": config.n_parameters,
        "horizon_T": config.horizon_t,
        "seed": config.seed,
        "noise_scale": config.noise_scale,
        "sanction_amplitude": config.sanction_amplitude,
        "seasonal_amplitude": config.seasonal_amplitude,
        "config_file": args.config.as_ref().map(|p| p.display().to_string()),
    });
    let inputs: Vec<&Path> = args.config.iter().map(|p| p.as_path()).collect();
    Manifest::new("simulate", &inputs, &[&args.out, &manifest_path], resolved)
        .write(&manifest_path)?;

    println!(
        "wrote {} ({} parameters x {} ticks, option {}, seed {})",
        args.out.display(),
        panel.n(),
        panel.len(),
        option.id,
        config.seed
    );
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult {
    let spec = resolve_threshold(args.alpha, args.threshold)?;
    let mode = NormalizationMode::parse(&args.mode)?;
    let bytes = fs::read(&args.panel).map_err(|e| io_err("cannot read", &args.panel, e))?;
    let panel = load_panel(&bytes)?;
    let result = indicator_series(&panel, args.window, &spec)?;

    let scenario_id = args.scenario_id.clone().unwrap_or_else(|| {
        args.panel
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "panel".to_string())
    });

    fs::create_dir_all(&args.out).map_err(|e| io_err("cannot create", &args.out, e))?;
    let report = AnalysisReport::from_result(&scenario_id, &result, &spec);
    let report_path = args.out.join("report.json");
    let dynamics_path = args.out.join("g_dynamics.csv");
    let surface_path = args.out.join("gi_surface.csv");
    write_atomic(&report_path, report.to_json().as_bytes())?;
    write_atomic(&dynamics_path, g_dynamics_csv(&result).as_bytes())?;
    write_atomic(&surface_path, gi_surface_csv(&result, &panel.labels()).as_bytes())?;
    let mut outputs: Vec<PathBuf> = vec![report_path, dynamics_path, surface_path];
    if args.svg {
        let svg_path = args.out.join("g_dynamics.svg");
        write_atomic(&svg_path, svg_g_dynamics(&result).as_bytes())?;
        outputs.push(svg_path);
    }

    let manifest_path = args.out.join("manifest.json");
    outputs.push(manifest_path.clone());
    let r_sign = result.threshold_used().first().copied().unwrap_or(0.0);
    let resolved = json!({
        "panel": args.panel.display().to_string(),
        "window": args.window,
        "threshold": threshold_json(&spec, r_sign),
        "mode": mode.name(),
        "scenario_id": scenario_id,
        "svg": args.svg,
    });
    let output_refs: Vec<&Path> = outputs.iter().map(|p| p.as_path()).collect();
    Manifest::new("analyze", &[&args.panel], &output_refs, resolved).write(&manifest_path)?;

    println!(
        "analyzed {} ticks (k={}, r_sign={}): G[{}] = {}",
        result.ticks_analyzed(),
        args.window,
        format_sig(r_sign, 6),
        mode.name(),
        format_sig(result.g_total().get(mode), 6)
    );
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> CliResult {
    let spec = resolve_threshold(args.alpha, args.threshold)?;
    let r_sign = critical_r(args.window, &spec)?;
    let bytes = fs::read(&args.panel).map_err(|e| io_err("cannot read", &args.panel, e))?;
    let panel = load_panel(&bytes)?;
    let window = window_slice(&panel, args.t, args.window)?;
    let matrix = correlation_matrix(window);
    let graph = correlation_graph(&matrix, r_sign, &panel.labels())?;

    write_atomic(&args.out, dot_export(&graph).as_bytes())?;
    let mut outputs: Vec<PathBuf> = vec![args.out.clone()];
    if let Some(matrix_out) = &args.matrix_out {
        write_atomic(
            matrix_out,
            matrix_csv(&matrix, &panel.labels(), args.digits).as_bytes(),
        )?;
        outputs.push(matrix_out.clone());
    }

    let manifest_path = manifest_path_for(&args.out);
    outputs.push(manifest_path.clone());
    let resolved = json!({
        "panel": args.panel.display().to_string(),
        "t": args.t,
        "window": args.window,
        "threshold": threshold_json(&spec, r_sign),
        "digits": args.digits,
        "matrix_out": args.matrix_out.as_ref().map(|p| p.display().to_string()),
    });
    let output_refs: Vec<&Path> = outputs.iter().map(|p| p.as_path()).collect();
    Manifest::new("graph", &[&args.panel], &output_refs, resolved).write(&manifest_path)?;

    println!(
        "graph at t={}: {} nodes, {} edges (r_sign={})",
        args.t,
        graph.nodes.len(),
        graph.edges.len(),
        format_sig(r_sign, 6)
    );
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> CliResult {
    let objective = Objective::parse(&args.objective)?;

    let mut scores = Vec::new();
    for path in &args.reports {
        let text = fs::read_to_string(path).map_err(|e| io_err("cannot read", path, e))?;
        let report = AnalysisReport::from_json(&text)?;
        scores.push(ScenarioScore {
            option_id: report.scenario_id,
            g_total: ScenarioTotals {
                raw: report.g_total.raw,
                per_tick: report.g_total.per_tick,
                per_cell: report.g_total.per_cell,
            },
            per_tick: report.per_tick.iter().map(|e| (e.t, e.g)).collect(),
        });
    }
    for (i, s) in scores.iter().enumerate() {
        if scores[..i].iter().any(|o| o.option_id == s.option_id) {
            return Err(CliError::Usage(format!(
                "duplicate scenario_id \"{}\" across reports",
                s.option_id
            )));
        }
    }

    let mode = match &args.mode {
        Some(m) => NormalizationMode::parse(m)?,
        None => {
            let availability: Vec<Vec<NormalizationMode>> =
                scores.iter().map(|s| s.g_total.available()).collect();
            let uniform = availability.windows(2).all(|w| w[0] == w[1]);
            let per_tick_everywhere = availability
                .iter()
                .all(|a| a.contains(&NormalizationMode::PerTick));
            if !uniform || !per_tick_everywhere {
                return Err(CliError::Usage(
                    "reports carry mixed normalization modes; pass --mode".into(),
                ));
            }
            NormalizationMode::PerTick
        }
    };

    let ranked = rank_options(&scores, objective, mode)?;
    let regimes = scores
        .iter()
        .map(|s| Ok((s.option_id.clone(), detect_regimes(&s.per_tick, 4, 0.02)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = corradapt::compare_report(&ranked, &regimes, objective, mode)?;

    write_atomic(&args.out, doc.to_json().as_bytes())?;
    let manifest_path = manifest_path_for(&args.out);
    let resolved = json!({
        "reports": args.reports.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "objective": args.objective,
        "mode": mode.name(),
        "regime_window": 4,
        "regime_rel_eps": 0.02,
    });
    let inputs: Vec<&Path> = args.reports.iter().map(|p| p.as_path()).collect();
    Manifest::new("compare", &inputs, &[&args.out, &manifest_path], resolved)
        .write(&manifest_path)?;

    for entry in &doc.options {
        println!(
            "rank {}: option {} G[{}] = {}",
            entry.rank,
            entry.id,
            mode.name(),
            format_sig(entry.g_total, 6)
        );
    }
    Ok(())
}
