use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lapinv::grid::{make_time_grid, Spacing};
use lapinv::harness::{
    experiment_csv, pairs_csv, parse_methods, run_experiment, run_pairs_benchmark, summary_csv, write_outputs,
    ExperimentConfig, ExperimentId,
};
use lapinv::oracles::pair_catalog;
use lapinv::Method;

/// Numerical inverse Laplace transform benchmarks.
#[derive(Parser)]
#[command(name = "lapinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Default)]
struct Overrides {
    /// Comma-separated methods (stehfest, schapery, weeks, talbot, dehoog) or `all`.
    #[arg(long)]
    methods: Option<String>,
    /// Samples per time (experiment A) or per shared vector.
    #[arg(long)]
    terms: Option<usize>,
    /// Number of log-spaced output times.
    #[arg(long)]
    times: Option<usize>,
    /// Output time range as `t_min,t_max`.
    #[arg(long = "t-range")]
    t_range: Option<String>,
    /// Output directory; CSV goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or all boundary-element experiments.
    Run {
        /// A, B, C, D or `all`.
        #[arg(long, default_value = "all")]
        experiment: String,
        /// `key = value` configuration file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Boundary elements per unit length.
        #[arg(long = "mesh-density")]
        mesh_density: Option<usize>,
        /// Also write whitespace-separated `.dat` files.
        #[arg(long)]
        gnuplot: bool,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Invert the analytic transform pairs.
    Pairs {
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn configs(
    experiment: &str,
    file: Option<&PathBuf>,
    mesh_density: Option<usize>,
    gnuplot: bool,
    o: &Overrides,
) -> lapinv::Result<Vec<ExperimentConfig>> {
    let base = file.map(|p| ExperimentConfig::load(p)).transpose()?;
    let ids: Vec<ExperimentId> = if experiment.eq_ignore_ascii_case("all") {
        match &base {
            Some(b) => vec![b.experiment],
            None => ExperimentId::ALL.to_vec(),
        }
    } else {
        vec![experiment.parse()?]
    };
    ids.into_iter()
        .map(|id| {
            let mut cfg = match &base {
                Some(b) => {
                    let mut c = b.clone();
                    c.set("experiment", &id.to_string())?;
                    c
                }
                None => ExperimentConfig::new(id),
            };
            if let Some(m) = &o.methods {
                cfg.methods = parse_methods(m)?;
            }
            if let Some(t) = o.terms {
                cfg.terms = t;
            }
            if let Some(n) = o.times {
                cfg.n_times = n;
            }
            if let Some(r) = &o.t_range {
                cfg.set("t_range", r)?;
            }
            if let Some(d) = mesh_density {
                cfg.mesh_density = d;
            }
            if o.out.is_some() {
                cfg.out = o.out.clone();
            }
            cfg.gnuplot |= gnuplot;
            cfg.validate()?;
            Ok(cfg)
        })
        .collect()
}

fn run(cli: Cli) -> lapinv::Result<()> {
    match cli.command {
        Command::Run { experiment, config, mesh_density, gnuplot, overrides } => {
            let configs = configs(&experiment, config.as_ref(), mesh_density, gnuplot, &overrides)?;
            let results = configs.iter().map(run_experiment).collect::<lapinv::Result<Vec<_>>>()?;
            match configs[0].out.clone() {
                Some(dir) => {
                    let gnuplot = configs.iter().any(|c| c.gnuplot);
                    for path in write_outputs(&dir, &results, gnuplot)? {
                        eprintln!("wrote {}", path.display());
                    }
                }
                None => {
                    for r in &results {
                        print!("{}", experiment_csv(r));
                    }
                    eprint!("{}", summary_csv(&results));
                }
            }
        }
        Command::Pairs { overrides } => {
            let methods = match &overrides.methods {
                Some(m) => parse_methods(m)?,
                None => Method::ALL.to_vec(),
            };
            let (t_min, t_max) = match &overrides.t_range {
                Some(r) => {
                    let mut c = ExperimentConfig::new(ExperimentId::A);
                    c.set("t_range", r)?;
                    (c.t_min, c.t_max)
                }
                None => (0.1, 1.0),
            };
            let grid = make_time_grid(t_min, t_max, overrides.times.unwrap_or(20), Spacing::Logarithmic)?;
            let rows = run_pairs_benchmark(&methods, &pair_catalog(), overrides.terms.unwrap_or(16), &grid)?;
            let text = pairs_csv(&rows);
            match overrides.out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let path = dir.join("pairs.csv");
                    std::fs::write(&path, text)?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                lapinv::Error::InvalidArgument(_)
                | lapinv::Error::InvalidStrategy { .. }
                | lapinv::Error::Config { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
