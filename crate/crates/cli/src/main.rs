//! `ribbon`: sample and analyze random cubic ribbon graphs.
//!
//! Exit codes: 0 success, 1 data error, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ribbon_surfaces::expansion::{bollobas_threshold_check, cheeger, spectral_gap};
use ribbon_surfaces::experiments::{
    estimate_isolation, Campaign, ExperimentConfig, ExperimentError, IsolationParams,
    REPORT_FORMAT_VERSION,
};
use ribbon_surfaces::geodesics::{cycle_census, girth, systole_spectrum};
use ribbon_surfaces::sampler::{sample_pairing, SeedSpec};
use ribbon_surfaces::topology::{has_large_canonical_cusps, surface_summary};
use ribbon_surfaces::RibbonGraph;

#[derive(Parser)]
#[command(
    name = "ribbon",
    version,
    about = "Random cusped surfaces from cubic ribbon graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph from the pairing model and write it as JSON.
    Sample {
        /// Half the number of vertices.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial index within the seed's stream.
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Topology, cycles, geodesics and expansion of one graph.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_cycle_len: u64,
        #[arg(long = "L", default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
        cusp_len: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geodesic length spectrum of cycles up to a length.
    Geodesics {
        input: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_cycle_len: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cheeger constant (exact up to 26 vertices, else spectral bounds).
    Cheeger {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo census of short cycles and left-hand-turn paths.
    Census {
        #[command(flatten)]
        campaign: CampaignArgs,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_cycle_len: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probability that every canonical horocycle has length at least L.
    Cusps {
        #[command(flatten)]
        campaign: CampaignArgs,
        #[arg(long = "L", default_value_t = 7, value_parser = clap::value_parser!(u64).range(2..))]
        cusp_len: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trend of short-cycle isolation across a ladder of sizes.
    Isolation {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        l1: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        l2: u64,
        #[arg(long, default_value_t = 2)]
        d: u64,
        #[arg(long = "L", default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
        cusp_len: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Pool(msg) => Failure::Data(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<RibbonGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    RibbonGraph::from_json(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Writes to `out` if given, else to stdout.
fn emit(out: Option<&Path>, body: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?
        }
        None => io::stdout().write_all(body)?,
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s.into_bytes()
}

fn to_usize(v: u64) -> Result<usize, Failure> {
    usize::try_from(v).map_err(|_| Failure::Usage(format!("{v} is too large")))
}

fn campaign_config(
    c: &CampaignArgs,
    max_cycle_len: usize,
    cusp_len: usize,
) -> Result<ExperimentConfig, Failure> {
    Ok(ExperimentConfig {
        n: to_usize(c.n)?,
        trials: c.trials,
        master_seed: c.seed,
        max_cycle_len,
        cusp_threshold: cusp_len,
        isolation: IsolationParams::default(),
        workers: to_usize(c.workers)?,
    })
}

fn echo_config(cfg: &ExperimentConfig) {
    eprintln!(
        "config: {}",
        serde_json::to_string(cfg).expect("config serializes")
    );
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sample {
            n,
            seed,
            trial,
            out,
        } => {
            let g = sample_pairing(to_usize(n)?, SeedSpec::new(seed, trial))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            fs::write(&out, g.to_json())
                .map_err(|e| Failure::Data(format!("{}: {e}", out.display())))?;
            println!("{}", surface_summary(&g).one_line());
        }
        Command::Analyze {
            input,
            max_cycle_len,
            cusp_len,
            format,
            out,
        } => {
            let g = load(&input)?;
            let (max_len, l) = (to_usize(max_cycle_len)?, to_usize(cusp_len)?);
            let summary = surface_summary(&g);
            if format == Format::Text {
                let h = cheeger(&g);
                let line = format!(
                    "{} girth={} cheeger={} large_canonical_cusps(L={l})={}\n",
                    summary.one_line(),
                    girth(&g),
                    serde_json::to_string(&h).expect("serializes"),
                    has_large_canonical_cusps(&g, l)
                );
                return emit(out.as_deref(), line.as_bytes());
            }
            let spectrum = systole_spectrum(&g, max_len);
            let report = json!({
                "format_version": REPORT_FORMAT_VERSION,
                "config": { "input": input.display().to_string(), "max_cycle_len": max_len, "L": l },
                "summary": summary,
                "census": cycle_census(&g, max_len),
                "girth": girth(&g),
                "systole": spectrum.minimum().map(|e| e.geodesic_length),
                "systole_spectrum": spectrum,
                "spectral_gap": spectral_gap(&g),
                "cheeger": cheeger(&g),
                "cheeger_threshold": bollobas_threshold_check(&g),
                "large_canonical_cusps": has_large_canonical_cusps(&g, l),
            });
            emit(out.as_deref(), &pretty(&report))?;
        }
        Command::Geodesics {
            input,
            max_cycle_len,
            format,
            out,
        } => {
            let g = load(&input)?;
            let spectrum = systole_spectrum(&g, to_usize(max_cycle_len)?);
            let body = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    spectrum
                        .write_csv(&mut buf)
                        .map_err(|e| Failure::Data(e.to_string()))?;
                    buf
                }
                _ => pretty(&json!({
                    "format_version": REPORT_FORMAT_VERSION,
                    "config": { "input": input.display().to_string(), "max_cycle_len": max_cycle_len },
                    "spectrum": spectrum,
                })),
            };
            emit(out.as_deref(), &body)?;
        }
        Command::Cheeger { input, out } => {
            let g = load(&input)?;
            let report = json!({
                "format_version": REPORT_FORMAT_VERSION,
                "config": { "input": input.display().to_string() },
                "cheeger": cheeger(&g),
                "spectral_gap": spectral_gap(&g),
                "threshold": bollobas_threshold_check(&g),
            });
            emit(out.as_deref(), &pretty(&report))?;
        }
        Command::Census {
            campaign,
            max_cycle_len,
            format,
            out,
        } => {
            let cfg = campaign_config(&campaign, to_usize(max_cycle_len)?, 7)?;
            echo_config(&cfg);
            let run = Campaign::run(&cfg)?;
            let (x, y) = (run.cycle_fit(), run.lht_fit());
            let body = match format {
                Format::Json => pretty(&json!({ "X": x, "Y": y })),
                _ => {
                    let mut buf = Vec::new();
                    x.write_csv(&mut buf, true)?;
                    y.write_csv(&mut buf, false)?;
                    buf
                }
            };
            emit(out.as_deref(), &body)?;
            if out.is_some() {
                for (family, report) in [("X", &x), ("Y", &y)] {
                    for row in &report.rows {
                        println!(
                            "{family}_{}: mean={:.4} target={:.4} tv={:.4}",
                            row.i, row.mean, row.target_mean, row.tv
                        );
                    }
                }
                if let Some(s) = x.simple_fraction {
                    println!("simple_fraction={s:.4}");
                }
            }
        }
        Command::Cusps {
            campaign,
            cusp_len,
            format,
            out,
        } => {
            let l = to_usize(cusp_len)?;
            let cfg = campaign_config(&campaign, 6.max(l - 1), l)?;
            echo_config(&cfg);
            let report = Campaign::run(&cfg)?.large_cusps(l)?;
            let body = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    report.write_csv(&mut buf, true)?;
                    buf
                }
                _ => pretty(&report),
            };
            emit(out.as_deref(), &body)?;
        }
        Command::Isolation {
            n_list,
            trials,
            seed,
            l1,
            l2,
            d,
            cusp_len,
            workers,
            format,
            out,
        } => {
            let cfg = ExperimentConfig {
                n: *n_list.first().unwrap_or(&0),
                trials,
                master_seed: seed,
                max_cycle_len: to_usize(l1.max(l2))?,
                cusp_threshold: to_usize(cusp_len)?,
                isolation: IsolationParams {
                    l1: to_usize(l1)?,
                    l2: to_usize(l2)?,
                    d: to_usize(d)?,
                },
                workers: to_usize(workers)?,
            };
            echo_config(&cfg);
            let report = estimate_isolation(&cfg, &n_list)?;
            let body = match format {
                Format::Json => pretty(&report),
                _ => {
                    let mut buf = Vec::new();
                    report.write_csv(&mut buf)?;
                    buf
                }
            };
            emit(out.as_deref(), &body)?;
        }
    }
    Ok(())
}
