use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use critline_cli::cache::{self, Cache};
use critline_cli::records::{
    write_one, write_rows, GramRow, GramSumRow, LargeValueRow, MomentRow, ViolationRow, ZeroRow,
};
use critline_cli::sweep::{self, Extent, SweepConfig};
use critline_cli::{OutFormat, Suite, Verifier};
use critline_core::moments::large_value_window;
use critline_core::{gram_law_audit, gram_sums, LineAngle, MomentEngine};

/// Zeta values on the critical line where the curve t -> zeta(1/2+it) meets
/// the line e^{i phi}R, and their discrete moments.
#[derive(Debug, Parser)]
#[command(name = "critline", version)]
struct Cli {
    /// Worker threads for parallel sweeps (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Output encoding (default: csv; json for `moments` and `verify`).
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cache file for crossing and zero tables (default: $CRITLINE_CACHE_DIR/critline-cache.csv).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// More log output on stderr; repeat for debug output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

fn parse_angle(s: &str) -> Result<LineAngle, String> {
    let phi: f64 = s.parse().map_err(|e| format!("{e}"))?;
    LineAngle::new(phi).map_err(|_| format!("angle must be a radian value in [0, pi), got {phi}"))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Crossing points t_n^phi with their zeta values.
    Gram {
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        phi: LineAngle,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, required_unless_present = "count", conflicts_with = "count")]
        t_max: Option<f64>,
        /// Number of points above t_min instead of an upper height.
        #[arg(long)]
        count: Option<usize>,
        /// Width in t of one batch of parallel work.
        #[arg(long, default_value_t = 1000.0)]
        chunk: f64,
    },
    /// Critical-line zeros located by Gram blocks and bisection.
    Zeros {
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
    },
    /// First and second moments, mean value and main terms at one height.
    Moments {
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        phi: LineAngle,
        #[arg(long)]
        t_max: f64,
        /// Relative tolerance for the pass/fail fields.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Sums of Z over the first N Gram points.
    Gramsums {
        #[arg(long)]
        count: usize,
    },
    /// The curve zeta(1/2+it), the mean-value circle and the line e^{i phi}R.
    Curve {
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 70.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Angle of the line to draw.
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        phi: LineAngle,
        /// Absolute accuracy of the curve samples.
        #[arg(long, default_value_t = 1e-5)]
        precision: f64,
    },
    /// Crossings with directed value at least sqrt(log t), in (t_min, t_max]
    /// or (T, 2T] when only --t-max is given.
    LargeValues {
        #[arg(long, default_value = "0", value_parser = parse_angle)]
        phi: LineAngle,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: f64,
    },
    /// Violations of Gram's law for n = 0..=count.
    Gramlaw {
        #[arg(long)]
        count: i64,
    },
    /// Run the acceptance suite; exits with status 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        suite: Suite,
    },
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).with_context(|| {
                format!("creating output file {}", p.display())
            })?))
        }
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn open_cache(flag: Option<&Path>) -> Result<Option<Cache>> {
    cache::resolve_path(flag)
        .map(|p| {
            log::info!("using cache {}", p.display());
            Cache::open(&p)
        })
        .transpose()
}

fn finish(mut out: Box<dyn Write>, path: Option<&Path>) -> Result<()> {
    out.flush().with_context(|| match path {
        Some(p) => format!("writing {}", p.display()),
        None => "writing stdout".into(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out_path = cli.out.as_deref();
    let format = cli.format;
    let mut out = open_output(out_path)?;
    let io_context = || match out_path {
        Some(p) => format!("writing {}", p.display()),
        None => "writing stdout".into(),
    };
    let workers = cli
        .workers
        .map_or_else(rayon::current_num_threads, |w| w as usize);
    match cli.command {
        Command::Gram {
            phi,
            t_min,
            t_max,
            count,
            chunk,
        } => {
            let config = SweepConfig {
                phi,
                t_min,
                t_max: t_max.unwrap_or(f64::INFINITY),
                chunk,
                workers,
                out_format: format.unwrap_or(OutFormat::Csv),
                cache_path: cache::resolve_path(cli.cache.as_deref()),
                ..SweepConfig::default()
            };
            config.validate()?;
            let mut cache = open_cache(config.cache_path.as_deref())?;
            let extent = match (t_max, count) {
                (Some(t), _) => Extent::UpTo(t),
                (None, Some(c)) => Extent::Count(c),
                (None, None) => unreachable!("clap requires one of --t-max, --count"),
            };
            let points = sweep::crossings(phi, t_min, extent, chunk, cache.as_mut())?;
            if let Some(c) = &cache {
                log::info!("{} cache hits in {}", c.hits(), c.path().display());
            }
            let rows: Vec<GramRow> = points.iter().map(GramRow::from).collect();
            write_rows(&mut out, &rows, config.out_format).with_context(io_context)?;
        }
        Command::Zeros { t_min, t_max } => {
            let mut cache = open_cache(cli.cache.as_deref())?;
            let zeros = sweep::zeros(t_min, t_max, cache.as_mut())?;
            log::info!("{} zeros in ({t_min}, {t_max}]", zeros.len());
            let rows: Vec<ZeroRow> = zeros.iter().map(ZeroRow::from).collect();
            write_rows(&mut out, &rows, format.unwrap_or(OutFormat::Csv))
                .with_context(io_context)?;
        }
        Command::Moments {
            phi,
            t_max,
            tolerance,
        } => {
            let report = MomentEngine::new(t_max)?.report(phi)?;
            for b in &report.zero_scan_ambiguous {
                log::warn!("ambiguous Gram block {}..{}", b.first_index, b.last_index);
            }
            let row = MomentRow::new(&report, tolerance);
            write_one(&mut out, &row, format.unwrap_or(OutFormat::Json))
                .with_context(io_context)?;
        }
        Command::Gramsums { count } => {
            let row = GramSumRow::from(&gram_sums(count)?);
            write_one(&mut out, &row, format.unwrap_or(OutFormat::Csv)).with_context(io_context)?;
        }
        Command::Curve {
            t_min,
            t_max,
            step,
            phi,
            precision,
        } => {
            let rows = sweep::curve(t_min, t_max, step, phi, precision)?;
            write_rows(&mut out, &rows, format.unwrap_or(OutFormat::Csv))
                .with_context(io_context)?;
        }
        Command::LargeValues { phi, t_min, t_max } => {
            let (lo, hi) = match t_min {
                Some(lo) => (lo, t_max),
                None => (t_max, 2.0 * t_max),
            };
            let found = large_value_window(phi, lo, hi)?;
            log::info!("{} large values in ({lo}, {hi}]", found.len());
            let rows: Vec<LargeValueRow> = found.iter().map(LargeValueRow::from).collect();
            write_rows(&mut out, &rows, format.unwrap_or(OutFormat::Csv))
                .with_context(io_context)?;
        }
        Command::Gramlaw { count } => {
            let audit = gram_law_audit(count)?;
            log::info!(
                "{} violations among n = 0..={count}, proportion {}",
                audit.violations.len(),
                audit.proportion
            );
            let rows: Vec<ViolationRow> = audit.violations.iter().map(ViolationRow::from).collect();
            write_rows(&mut out, &rows, format.unwrap_or(OutFormat::Csv))
                .with_context(io_context)?;
        }
        Command::Verify { suite } => {
            let checks = Verifier::new(suite)?.run_all()?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in checks.iter().filter(|c| !c.pass) {
                log::error!(
                    "criterion {} failed: {} = {} (expected {})",
                    c.criterion,
                    c.check,
                    c.measured,
                    c.expected
                );
            }
            write_rows(&mut out, &checks, format.unwrap_or(OutFormat::Json))
                .with_context(io_context)?;
            finish(out, out_path)?;
            return Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    finish(out, out_path)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build_global()
        {
            log::warn!("could not configure {w} workers: {e}");
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
