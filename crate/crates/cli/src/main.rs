mod render;

/// `print!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {
        $crate::write_stdout(format_args!($($t)*))
    };
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypkonvex::limits::{
    empirical_dim_estimate, farthest_point_radii, greedy_count, hausdorff_dim_estimate_with, MetricProfile,
};
use hypkonvex::lorentz::{cosh_dist, form_a_best, geodesic_point, hyper_dist, normalize, pi0, HPoint};
use hypkonvex::verify::{kernels_compare, run_suite, Suite, SuiteConfig};
use hypkonvex::{EvenFn, Execution, ShapeDoc};
use serde_json::json;
use thiserror::Error;

use render::{csv_row, fmt17};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hypkonvex::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("suites failed: {}", .0.join(", "))]
    SuiteFailed(Vec<String>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use hypkonvex::Error as E;
        match self {
            CliError::Usage(_) | CliError::Core(E::Parse(_)) => 2,
            CliError::Core(E::NonPositiveArea(_) | E::Domain(_) | E::Degenerate(_) | E::InvalidPolygon(_)) => 3,
            CliError::SuiteFailed(_) => 4,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Symmetric convex bodies as points of an infinite-dimensional hyperbolic space.
#[derive(Debug, Parser)]
#[command(name = "hypkonvex", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunConfig {
    /// Grid size M: a multiple of 4, at least 64.
    #[arg(long, global = true, env = "HYPKONVEX_GRID", default_value_t = 2048, value_parser = parse_grid)]
    grid: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory. Tables go to stdout when it is not given.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Treat unresolved spectra as errors instead of warnings.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hyperbolic distance between two bodies given as shape documents.
    Dist { a: PathBuf, b: PathBuf },
    /// Frames and a distance table along the geodesic between two bodies.
    Geodesic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Run a verification suite, or all of them.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: SuiteChoice,
    },
    /// Compare the kernel integrals with the closed form on a range of t.
    Kernels {
        #[arg(long, default_value_t = 0.1)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 49)]
        steps: usize,
    },
    /// Covering numbers of the boundary and the dimension slope.
    Hdim {
        #[arg(long, default_value_t = 4)]
        j_min: u32,
        #[arg(long, default_value_t = 12)]
        j_max: u32,
        /// Add greedy covering counts on sampled directions.
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Use the round angle metric instead of the visual one.
        #[arg(long)]
        control: bool,
    },
}

#[derive(Debug, Clone)]
enum SuiteChoice {
    One(Suite),
    All,
}

fn parse_grid(s: &str) -> std::result::Result<usize, String> {
    let m: usize = s.parse().map_err(|e| format!("{e}"))?;
    if m < 64 || !m.is_multiple_of(4) {
        return Err(format!("grid must be a multiple of 4 and at least 64, got {m}"));
    }
    Ok(m)
}

fn parse_suite(s: &str) -> std::result::Result<SuiteChoice, String> {
    if s == "all" {
        return Ok(SuiteChoice::All);
    }
    s.parse().map(SuiteChoice::One).map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
        format!("unknown suite '{s}', expected one of: {}, all", names.join(", "))
    })
}

fn write_stdout(args: std::fmt::Arguments) {
    use std::io::Write;
    match std::io::stdout().lock().write_fmt(args) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => panic!("writing to stdout: {e}"),
        Ok(()) => {}
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let run = &cli.run;
    match &cli.command {
        Command::Dist { a, b } => cmd_dist(run, a, b),
        Command::Geodesic { a, b, steps } => cmd_geodesic(run, a, b, *steps),
        Command::Verify { suite } => cmd_verify(run, suite),
        Command::Kernels { t_min, t_max, steps } => cmd_kernels(run, *t_min, *t_max, *steps),
        Command::Hdim { j_min, j_max, empirical, samples, control } => {
            cmd_hdim(run, *j_min, *j_max, *empirical, *samples, *control)
        }
    }
}

fn read_body(run: &RunConfig, path: &Path) -> Result<EvenFn> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let doc = ShapeDoc::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let h = doc.to_even_fn(run.grid)?;
    if h.shape().is_none() {
        h.support_split(run.strict)?;
    }
    Ok(h)
}

/// Area-π normalization, refusing zero-area bodies.
fn body_point(h: &EvenFn) -> Result<HPoint> {
    let a = form_a_best(h, h)?;
    if a.is_nan() || a <= 0.0 {
        return Err(hypkonvex::Error::NonPositiveArea(a).into());
    }
    Ok(normalize(h)?)
}

fn body_record(h: &EvenFn) -> Result<serde_json::Value> {
    let area = std::f64::consts::PI * form_a_best(h, h)?;
    let perimeter = std::f64::consts::TAU * pi0(h);
    Ok(json!({ "area": area, "perimeter": perimeter }))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn out_dir(run: &RunConfig) -> Result<PathBuf> {
    let dir = run.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
    Ok(dir)
}

/// Writes `contents` to `out/name`, or to stdout without an output directory.
fn emit(run: &RunConfig, name: &str, contents: &str) -> Result<()> {
    match &run.out {
        Some(_) => write_file(&out_dir(run)?.join(name), contents),
        None => {
            out!("{contents}");
            Ok(())
        }
    }
}

fn cmd_dist(run: &RunConfig, a: &Path, b: &Path) -> Result<()> {
    let (ha, hb) = (read_body(run, a)?, read_body(run, b)?);
    let (p, q) = (body_point(&ha)?, body_point(&hb)?);
    let d = hyper_dist(&p, &q)?;
    out!("{}\n", fmt17(d));
    let record = json!({
        "distance": d,
        "form": cosh_dist(&p, &q)?,
        "grid": run.grid,
        "a": body_record(&ha)?,
        "b": body_record(&hb)?,
    });
    let text = format!("{record}\n");
    match &run.out {
        Some(_) => write_file(&out_dir(run)?.join("dist.json"), &text),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

const GEODESIC_TOL: f64 = 1e-9;

fn cmd_geodesic(run: &RunConfig, a: &Path, b: &Path, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(CliError::Usage("steps must be positive".into()));
    }
    let (p, q) = (body_point(&read_body(run, a)?)?, body_point(&read_body(run, b)?)?);
    let total = hyper_dist(&p, &q)?;
    if total < GEODESIC_TOL {
        return Err(hypkonvex::Error::Domain("the two bodies coincide".into()).into());
    }
    let mut frames = Vec::with_capacity(steps + 1);
    let mut csv = String::from("t,d_from_a,d_from_b,perimeter\n");
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        let x = geodesic_point(&p, &q, t)?;
        let (da, db) = (hyper_dist(&p, &x)?, hyper_dist(&x, &q)?);
        let defect = (da + db - total).abs();
        if defect > GEODESIC_TOL * (1.0 + total) {
            return Err(hypkonvex::Error::Invariant(format!("geodesic additivity fails at t = {t}: defect {defect:e}")).into());
        }
        csv.push_str(&csv_row(&[t, da, db, std::f64::consts::TAU * x.pi0()]));
        frames.push(render::svg(&x.as_fn().boundary_curve(render::BOUNDARY_POINTS)?, t));
    }
    let dir = out_dir(run)?;
    for (k, svg) in frames.iter().enumerate() {
        write_file(&dir.join(format!("frame_{k:04}.svg")), svg)?;
    }
    write_file(&dir.join("geodesic.csv"), &csv)?;
    out!("{} frames, d = {}\n", frames.len(), fmt17(total));
    Ok(())
}

fn cmd_verify(run: &RunConfig, choice: &SuiteChoice) -> Result<()> {
    let suites: Vec<Suite> = match choice {
        SuiteChoice::One(s) => vec![*s],
        SuiteChoice::All => Suite::ALL.to_vec(),
    };
    let cfg = SuiteConfig { seed: run.seed, grid: run.grid, exec: Execution::available(), strict: run.strict };
    let dir = out_dir(run)?;
    let mut failed = Vec::new();
    for suite in suites {
        let report = run_suite(suite, &cfg)?;
        write_file(&dir.join(format!("{}.json", suite.name())), &format!("{}\n", report.to_json()))?;
        let status = if report.pass { "pass" } else { "FAIL" };
        out!("{:<13} {status} cases={} max_violation={:e} tolerance={:e}\n", suite.name(), report.cases, report.max_violation, report.tolerance);
        if !report.pass {
            failed.push(suite.name().to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::SuiteFailed(failed))
    }
}

fn cmd_kernels(run: &RunConfig, t_min: f64, t_max: f64, steps: usize) -> Result<()> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < t_min ≤ t_max, got {t_min}, {t_max}")));
    }
    if steps == 0 {
        return Err(CliError::Usage("steps must be positive".into()));
    }
    let ts: Vec<f64> = if t_min == t_max {
        vec![t_min]
    } else {
        (0..=steps).map(|k| t_min + (t_max - t_min) * k as f64 / steps as f64).collect()
    };
    let mut csv = String::from("t,I1,I2,closed,kern2,gap\n");
    for t in ts {
        let k = kernels_compare(t)?;
        csv.push_str(&csv_row(&[k.t, k.i1, k.i2, k.closed, k.kern2, k.gap()]));
    }
    emit(run, "kernels.csv", &csv)
}

fn cmd_hdim(run: &RunConfig, j_min: u32, j_max: u32, empirical: bool, samples: usize, control: bool) -> Result<()> {
    if !(2 <= j_min && j_min < j_max && j_max <= 16) {
        return Err(CliError::Usage(format!("need 2 ≤ j_min < j_max ≤ 16, got {j_min}, {j_max}")));
    }
    let profile = if control { MetricProfile::RoundAngle } else { MetricProfile::Visual };
    let fit = hausdorff_dim_estimate_with(profile, j_min, j_max)?;
    let mut csv = String::from(if empirical { "eps,n,greedy\n" } else { "eps,n\n" });
    let radii = if empirical { Some(farthest_point_radii(samples, run.seed)?) } else { None };
    for &(eps, n) in &fit.points {
        match &radii {
            Some(r) => csv.push_str(&format!("{},{n},{}\n", fmt17(eps), greedy_count(r, profile, eps))),
            None => csv.push_str(&format!("{},{n}\n", fmt17(eps))),
        }
    }
    emit(run, "hdim.csv", &csv)?;
    eprintln!("slope {} residual {}", fmt17(fit.slope), fmt17(fit.residual));
    if empirical {
        let emp = empirical_dim_estimate(profile, j_min, j_max, samples, run.seed)?;
        eprintln!("empirical slope {} over {} scales", fmt17(emp.slope), emp.points.len());
    }
    Ok(())
}
