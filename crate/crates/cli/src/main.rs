use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use urdiv_core::montecarlo::{write_dump, SamplerConfig};
use urdiv_core::report::format::parse_k_db;
use urdiv_core::report::{
    cmd_curve, cmd_dkw_demo, cmd_mc, cmd_scenario, cmd_table, curve_csv, CurveRegistry, DkwDemo,
    MetricRegistry, ScenarioSpec, TABLE_K_DB, TABLE_M,
};
use urdiv_core::{ChannelSpec, Error, Result};

#[derive(Parser)]
#[command(
    name = "urdiv",
    version,
    about = "Local diversity and fading margins of multi-antenna Rician channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric table over K-factor rows and antenna-count columns.
    Table {
        /// nld | margin | ld
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 1e-6)]
        p: f64,
        /// Comma-separated K-factors in dB; `-inf` for Rayleigh.
        #[arg(long, value_parser = parse_k_db_list, allow_hyphen_values = true)]
        k_db: Option<KDbList>,
        /// Comma-separated antenna counts.
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<usize>>,
        /// Print at the metric's table precision.
        #[arg(long)]
        round: bool,
    },
    /// Curve as CSV.
    Curve {
        /// cdf | ld-gain | ld-prob
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_one_k_db, allow_hyphen_values = true)]
        k_db: f64,
        #[arg(long, default_value_t = 1.0)]
        p_dif: f64,
        /// Gain axis relative to the mean gain.
        #[arg(long)]
        normalize: bool,
        /// START:STOP:N in axis units (dB for gain, probability otherwise).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// ECDF, its DKW upper bound and the analytic CDF over a gain grid.
    Dkw {
        #[arg(long, default_value_t = 1_000_000)]
        r: usize,
        #[arg(long, default_value_t = 0.99)]
        xi: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_parser = parse_one_k_db, allow_hyphen_values = true, default_value = "-inf")]
        k_db: f64,
    },
    /// Deployment comparison report as JSON.
    Scenario {
        /// TOML scenario file; defaults to the 64- vs 32-antenna comparison.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Seeded Monte Carlo run checked against the analytic CDF.
    Mc {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_one_k_db, allow_hyphen_values = true)]
        k_db: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        p_dif: f64,
        #[arg(long, default_value_t = 0.99)]
        xi: f64,
        /// Worker threads (does not change the samples).
        #[arg(long)]
        streams: Option<usize>,
        /// Write sorted gains in the URDV binary format.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Clone)]
struct KDbList(Vec<f64>);

fn parse_one_k_db(s: &str) -> std::result::Result<f64, String> {
    parse_k_db(s).ok_or_else(|| format!("'{s}' is not a dB value (use -inf for Rayleigh)"))
}

fn parse_k_db_list(s: &str) -> std::result::Result<KDbList, String> {
    s.split(',')
        .map(parse_one_k_db)
        .collect::<std::result::Result<_, _>>()
        .map(KDbList)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Table {
            metric,
            p,
            k_db,
            m,
            round,
        } => {
            let registry = MetricRegistry::builtin();
            let metric = registry.get(&metric)?;
            let k_db = k_db.map_or_else(|| TABLE_K_DB.to_vec(), |l| l.0);
            let m = m.unwrap_or_else(|| TABLE_M.to_vec());
            Ok(cmd_table(metric, p, &k_db, &m)?.to_csv(round))
        }
        Command::Curve {
            kind,
            m,
            k_db,
            p_dif,
            normalize,
            grid,
        } => {
            let registry = CurveRegistry::builtin();
            let kind = registry.get(&kind)?;
            let grid = grid
                .map(|g| kind.default_grid().parse_like(&g))
                .transpose()?;
            let spec = ChannelSpec::uniform_db(p_dif, k_db, m)?;
            let points = cmd_curve(kind, &spec, grid, normalize)?;
            Ok(curve_csv(kind, &points))
        }
        Command::Dkw {
            r,
            xi,
            seed,
            m,
            k_db,
        } => {
            let mut demo = DkwDemo::new(r, xi, seed)?;
            demo.spec = ChannelSpec::uniform_db(1.0, k_db, m)?;
            Ok(cmd_dkw_demo(&demo)?.to_csv())
        }
        Command::Scenario { config } => {
            let scenario = match config {
                Some(path) => ScenarioSpec::from_toml(&std::fs::read_to_string(path)?)?,
                None => ScenarioSpec::default_comparison(),
            };
            Ok(cmd_scenario(&scenario)?.to_json())
        }
        Command::Mc {
            m,
            k_db,
            n,
            seed,
            p_dif,
            xi,
            streams,
            dump,
        } => {
            let spec = ChannelSpec::uniform_db(p_dif, k_db, m)?;
            let mut config = SamplerConfig::new(spec, seed, n);
            if let Some(s) = streams {
                config = config.with_streams(s);
            }
            let (report, ecdf) = cmd_mc(&config, xi)?;
            if let Some(path) = dump {
                write_dump(BufWriter::new(File::create(path)?), &ecdf)?;
            }
            Ok(report.to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("urdiv: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                _ => 1,
            })
        }
    }
}
