//! `lchi`: evaluate, search, verify, scan, and export plot data for the
//! trigonometric-polynomial lower-bound pipeline.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 verification mismatch,
//! 3 search infeasibility.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lchi::anneal::{general_search, integer_search, order_search, AnnealConfig, AnnealResult};
use lchi::characters::{scan, ScanRecord};
use lchi::louboutin::{all_q_constant, derive_constants};
use lchi::tables::{load_reference_data, reference_data, verify, ReferenceData};
use lchi::trigpoly::CoefficientVector;

#[derive(Parser)]
#[command(
    name = "lchi",
    version,
    about = "Lower-bound constants for |L(1,χ)| from nonnegative trigonometric polynomials"
)]
struct Cli {
    /// Seed override for stochastic commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for restarts and scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the primary result to this file (JSON or CSV per command).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print the record-breaking trace of searches to stderr.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    General,
    Order,
}

#[derive(Subcommand)]
enum Command {
    /// Derive {A, c, lambda, q_min} from a coefficient-vector JSON file,
    /// with admissibility and global-nonnegativity diagnostics.
    Eval {
        vector: PathBuf,
        /// Sampling step for the certified minimum.
        #[arg(long, default_value_t = lchi::trigpoly::DEFAULT_MIN_RESOLUTION)]
        resolution: f64,
    },
    /// Stochastic search for a low-λ vector.
    Search {
        #[arg(value_enum)]
        mode: SearchMode,
        /// AnnealConfig JSON file; defaults are used when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Degree override (general mode; defaults to d-1 in order mode).
        #[arg(long)]
        m: Option<usize>,
        /// Character order (required in order mode).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Exhaustive bounded integer search for one order.
    IntSearch {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        refine: i64,
    },
    /// Recompute the bundled reference vectors and report pass/flag/fail.
    Verify {
        /// External reference JSON (defaults to the bundled data).
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Scan primitive non-quadratic characters with conductor ≤ q-max.
    Scan {
        #[arg(long)]
        q_max: u64,
        /// Write the full table as CSV here (in addition to --output).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Coefficient-vector file: also report its all-q constant λ/F(s(q0)).
        #[arg(long)]
        vector: Option<PathBuf>,
        #[arg(long)]
        q0: Option<f64>,
    },
    /// Emit `theta,value` samples of S(a,θ) as CSV.
    PlotData {
        vector: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        to: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also emit the d root values S(2πk/d).
        #[arg(long)]
        roots: Option<usize>,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    config_path: Option<String>,
    seed: Option<u64>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    version: &'static str,
    wall_time_ms: f64,
}

impl RunManifest {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            config_path: None,
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: 0.0,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<lchi::Error>() {
                Some(lchi::Error::Infeasible(_)) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn read_vector(path: &Path) -> anyhow::Result<CoefficientVector> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CoefficientVector::from_json(&text)
        .with_context(|| format!("parsing coefficient vector {}", path.display()))
}

fn emit_result(
    manifest: &mut RunManifest,
    started: Instant,
    output: &Option<PathBuf>,
    result: serde_json::Value,
) -> anyhow::Result<()> {
    manifest.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = output {
        manifest.outputs.push(path.display().to_string());
    }
    let document = json!({ "manifest": manifest, "result": result });
    let pretty = serde_json::to_string_pretty(&document)?;
    if let Some(path) = output {
        std::fs::write(path, &pretty).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{pretty}");
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    match cli.command {
        Command::Eval { vector, resolution } => {
            let mut manifest = RunManifest::new("eval");
            manifest.inputs.push(vector.display().to_string());
            let v = read_vector(&vector)?;
            let min_report = v.global_min(resolution)?;
            if !v.is_admissible() {
                bail!(
                    "vector is not admissible (need all aᵢ ≥ 0 and a₀ < 2a₁); \
                     min S = {:.6e} at θ = {:.6}",
                    min_report.min_value,
                    min_report.theta_star
                );
            }
            let constants = derive_constants(&v)?;
            emit_result(
                &mut manifest,
                started,
                &cli.output,
                json!({
                    "constants": constants,
                    "admissible": true,
                    "global_min": min_report,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            mode,
            config,
            m,
            d,
            restarts,
        } => {
            let mut manifest = RunManifest::new("search");
            let mut cfg: AnnealConfig = match &config {
                Some(path) => {
                    manifest.config_path = Some(path.display().to_string());
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("parsing config {}", path.display()))?
                }
                None => {
                    let degree = match (mode, m, d) {
                        (SearchMode::General, Some(m), _) => m,
                        (SearchMode::General, None, _) => {
                            bail!("general mode needs --m or --config")
                        }
                        (SearchMode::Order, m, Some(d)) => m.unwrap_or(d - 1),
                        (SearchMode::Order, _, None) => bail!("order mode needs --d"),
                    };
                    AnnealConfig::defaults_for_degree(degree)
                }
            };
            if let Some(m) = m {
                cfg.m = m;
            }
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            if let Some(restarts) = restarts {
                cfg.restarts = restarts;
            }
            manifest.seed = Some(cfg.seed);
            let result: AnnealResult = match mode {
                SearchMode::General => general_search(&cfg, cli.trace)?,
                SearchMode::Order => {
                    let d = d.context("order mode needs --d")?;
                    if m.is_none() && config.is_none() {
                        cfg.m = d - 1;
                    }
                    order_search(d, &cfg, cli.trace)?
                }
            };
            if cli.trace {
                if let Some(points) = &result.trace {
                    for p in points {
                        eprintln!("record: iteration {} λ {:.10}", p.iteration, p.lambda);
                    }
                }
            }
            emit_result(
                &mut manifest,
                started,
                &cli.output,
                serde_json::to_value(&result)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::IntSearch {
            d,
            m,
            bound,
            refine,
        } => {
            let mut manifest = RunManifest::new("int-search");
            let result = integer_search(d, m, bound, refine)?;
            emit_result(
                &mut manifest,
                started,
                &cli.output,
                serde_json::to_value(&result)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { data } => {
            let mut manifest = RunManifest::new("verify");
            let owned: ReferenceData;
            let reference = match &data {
                Some(path) => {
                    manifest.inputs.push(path.display().to_string());
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    owned = load_reference_data(&text)?;
                    &owned
                }
                None => reference_data(),
            };
            let report = verify(reference)?;
            for item in &report.items {
                eprintln!("[{:?}] {}: {}", item.status, item.name, item.detail);
            }
            let failed = report.failed();
            emit_result(
                &mut manifest,
                started,
                &cli.output,
                serde_json::to_value(&report)?,
            )?;
            Ok(if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Scan {
            q_max,
            csv,
            vector,
            q0,
        } => {
            let mut manifest = RunManifest::new("scan");
            let outcome = scan(q_max)?;
            manifest.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
            if let Some(path) = &csv {
                let mut text = format!(
                    "# manifest: {}\n{}\n",
                    serde_json::to_string(&manifest)?,
                    ScanRecord::csv_header()
                );
                for record in &outcome.records {
                    text.push_str(&record.csv_row());
                    text.push('\n');
                }
                std::fs::write(path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
                manifest.outputs.push(path.display().to_string());
            }
            let mut result = json!({
                "min_product": outcome.min_product,
                "max_ratio": outcome.max_ratio,
                "characters_scanned": outcome.records.len(),
                "lambda_sufficient": 1.0 / outcome.min_product.product,
            });
            if let Some(path) = &vector {
                let v = read_vector(path)?;
                manifest.inputs.push(path.display().to_string());
                let q0 = q0.context("--vector needs --q0 for the all-q constant")?;
                result["all_q_constant"] = json!(all_q_constant(&v, q0)?);
                result["q0"] = json!(q0);
            }
            emit_result(&mut manifest, started, &cli.output, result)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PlotData {
            vector,
            from,
            to,
            samples,
            roots,
        } => {
            let v = read_vector(&vector)?;
            let manifest = {
                let mut m = RunManifest::new("plot-data");
                m.inputs.push(vector.display().to_string());
                m.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
                m
            };
            let rows = v.sample(from, to, samples)?;
            let mut text = format!(
                "# manifest: {}\ntheta,value\n",
                serde_json::to_string(&manifest)?
            );
            for (theta, value) in rows {
                text.push_str(&format!("{theta:.12},{value:.12}\n"));
            }
            if let Some(d) = roots {
                text.push_str(&format!("# roots d={d}\n"));
                for (k, value) in v.values_at_roots(d)?.into_iter().enumerate() {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64;
                    text.push_str(&format!("{theta:.12},{value:.12}\n"));
                }
            }
            match &cli.output {
                Some(path) => std::fs::write(path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
