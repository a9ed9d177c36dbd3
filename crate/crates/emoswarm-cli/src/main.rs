//! Command-line front end: configure and run a behavior, export the
//! trajectory, draw SVG frames, and report motion metrics.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, malformed log, placement),
//! 2 configuration error (bad flag value, unknown parameter, inconsistent
//! spec).

use clap::{Args, Parser, Subcommand};
use emoswarm::dynamics::MAX_TIMESTEP;
use emoswarm::engine::DEFAULT_DT;
use emoswarm::{
    render_frames, run, swarm_metrics, BehaviorSpec, Domain, Emotion, EngineError, LogFormat,
    RenderOptions, SwarmMetrics, TrajectoryLog,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "emoswarm",
    version,
    about = "Deterministic multi-robot simulations of emotion-expressive swarm behaviors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a behavior and export the trajectory log.
    Run(RunArgs),
    /// Draw SVG frames from an exported log.
    Render(RenderArgs),
    /// Report per-robot and swarm motion metrics for a log.
    Metrics(MetricsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Behavior: happiness, surprise, sadness, anger, fear or disgust.
    #[arg(long, value_parser = parse_emotion)]
    emotion: Emotion,

    /// Number of robots.
    #[arg(long, default_value_t = 15)]
    n: usize,

    /// Arena size as WxH in meters, centered on the origin.
    #[arg(long, value_parser = parse_domain, default_value = "1x1")]
    domain: Domain,

    /// Simulated seconds; defaults to the behavior's preset horizon.
    #[arg(long, allow_negative_numbers = true)]
    duration: Option<f64>,

    /// Integration step in seconds.
    #[arg(long, default_value_t = DEFAULT_DT, allow_negative_numbers = true)]
    dt: f64,

    /// Placement seed; the same seed reproduces the run byte for byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Log destination. Defaults to <emotion>.<format extension>.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Log format, csv or jsonl; inferred from --out's extension if omitted.
    #[arg(long)]
    format: Option<LogFormat>,

    /// Override a preset parameter, e.g. --set gain=1.5 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Also draw SVG frames once the run finishes.
    #[arg(long)]
    render: bool,

    /// Directory for rendered frames.
    #[arg(long, default_value = "frames")]
    frames_dir: PathBuf,

    /// Render every this-many steps (1 = every step).
    #[arg(long, default_value_t = 1)]
    frame_stride: usize,

    /// Print the metrics table once the run finishes.
    #[arg(long)]
    metrics: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Trajectory log to draw (csv or jsonl, detected from content).
    log: PathBuf,

    /// Directory for rendered frames.
    #[arg(long, default_value = "frames")]
    frames_dir: PathBuf,

    /// Render every this-many steps (1 = every step).
    #[arg(long, default_value_t = 1)]
    frame_stride: usize,

    /// Comma-separated robot ids that get trails; pass "" for none.
    #[arg(long, value_name = "IDS", default_value = "0,1,2,3,4")]
    trail_robots: String,

    /// Frame width in pixels.
    #[arg(long, default_value_t = 640)]
    width: u32,
}

#[derive(Args)]
struct MetricsArgs {
    /// Trajectory log to summarize (csv or jsonl, detected from content).
    log: PathBuf,

    /// Emit the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        let (message, code) = match self {
            CliError::Config(m) => (m, 2),
            CliError::Runtime(m) => (m, 1),
        };
        eprintln!("error: {message}");
        ExitCode::from(code)
    }
}

fn config<T: ToString>(message: T) -> CliError {
    CliError::Config(message.to_string())
}

fn runtime<T: ToString>(message: T) -> CliError {
    CliError::Runtime(message.to_string())
}

fn load_log(path: &Path) -> Result<TrajectoryLog, CliError> {
    TrajectoryLog::load(path).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> CliError {
        match e {
            EngineError::EmptySwarm
            | EngineError::BadDuration { .. }
            | EngineError::UnknownEmotion(_)
            | EngineError::UnknownParam { .. }
            | EngineError::BadParamValue { .. }
            | EngineError::InvalidSpec { .. } => config(e),
            _ => runtime(e),
        }
    }
}

fn parse_emotion(s: &str) -> Result<Emotion, String> {
    s.parse::<Emotion>().map_err(|e| e.to_string())
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, e.g. 4.3x3.6, got {s:?}"))?;
    let width: f64 = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let height: f64 = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    Domain::centered(width, height).map_err(|e| e.to_string())
}

fn parse_trail_robots(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse()
                .map_err(|_| config(format!("--trail-robots expects integer ids, got {part:?}")))
        })
        .collect()
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(config("--n must be at least 1"));
    }
    if !(args.dt > 0.0 && args.dt <= MAX_TIMESTEP) {
        return Err(config(format!(
            "--dt must lie in (0, {MAX_TIMESTEP}], got {}",
            args.dt
        )));
    }
    if args.frame_stride == 0 {
        return Err(config("--frame-stride must be at least 1"));
    }

    let mut spec = BehaviorSpec::preset(args.emotion, args.domain);
    for kv in &args.set {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        spec.set_param(key.trim(), value.trim())?;
    }
    spec.validate()?;

    let duration = args.duration.unwrap_or(spec.default_duration);
    let format = args.format.unwrap_or_else(|| {
        args.out
            .as_deref()
            .and_then(|p| p.extension())
            .and_then(|ext| ext.to_str())
            .and_then(|ext| ext.parse().ok())
            .unwrap_or(LogFormat::Csv)
    });
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}.{format}", args.emotion)));

    let start = Instant::now();
    let log = run(&spec, args.n, args.seed, duration, args.dt)?;
    log.save(&out, format).map_err(runtime)?;
    println!(
        "{} n={} steps={} wall={:.3}s -> {}",
        args.emotion,
        args.n,
        log.meta.steps,
        start.elapsed().as_secs_f64(),
        out.display()
    );

    if args.render {
        let paths = render_frames(
            &log,
            &args.frames_dir,
            args.frame_stride,
            &RenderOptions::default(),
        )
        .map_err(runtime)?;
        println!("{} frames -> {}", paths.len(), args.frames_dir.display());
    }
    if args.metrics {
        let report = swarm_metrics(&log).map_err(runtime)?;
        print!("{}", metrics_table(&report));
    }
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    if args.frame_stride == 0 {
        return Err(config("--frame-stride must be at least 1"));
    }
    let opts = RenderOptions {
        width_px: args.width,
        trail_robots: parse_trail_robots(&args.trail_robots)?,
        ..RenderOptions::default()
    };
    let log = load_log(&args.log)?;
    let paths = render_frames(&log, &args.frames_dir, args.frame_stride, &opts).map_err(runtime)?;
    println!("{} frames -> {}", paths.len(), args.frames_dir.display());
    Ok(())
}

fn cmd_metrics(args: MetricsArgs) -> Result<(), CliError> {
    let log = load_log(&args.log)?;
    let report = swarm_metrics(&log).map_err(runtime)?;
    if args.json {
        let json = serde_json::to_string_pretty(&report).map_err(runtime)?;
        println!("{json}");
    } else {
        print!("{}", metrics_table(&report));
    }
    Ok(())
}

fn metrics_table(report: &SwarmMetrics) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
        "robot", "path_m", "net_m", "mean_mps", "peak_mps", "angular_rad"
    ));
    for row in &report.per_robot {
        out.push_str(&format!(
            "{:<8} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}\n",
            row.robot_id,
            row.stats.path_length,
            row.stats.net_displacement,
            row.stats.mean_speed,
            row.stats.peak_speed,
            row.angularity,
        ));
    }
    out.push_str(&format!(
        "{:<8} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}\n",
        "swarm",
        report.aggregate_path_length,
        report.aggregate_net_displacement,
        report.aggregate_mean_speed,
        report.peak_speed,
        report.aggregate_angularity,
    ));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Render(args) => cmd_render(args),
        Command::Metrics(args) => cmd_metrics(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
