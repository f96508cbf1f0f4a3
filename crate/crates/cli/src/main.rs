use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use risopt::config::{magnitude_from_db, ConfigFile, ExperimentConfig, Kind, Method};
use risopt::error::{CliError, Result};
use risopt::{output, recipes, run_experiment};
use risopt_core::sample::{ChannelSpec, RealizationStream};
use risopt_core::select::{evenly_spaced_set, imb_select, integral_s, omega_grid, DEFAULT_IMB_CAP};
use risopt_core::{
    cpp_optimize, exhaustive_optimize, improved_cpp_optimize, mcsb_select, optimize,
    ChannelRealization, ConfigurationSet, OptimizationResult,
};
use serde::Deserialize;

/// Optimal discrete reflection coefficients for RIS with coupled phase and
/// amplitude, configuration-set selection, and figure-reproduction sweeps.
#[derive(Debug, Parser)]
#[command(name = "risopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML file whose keys override the recipe (or default) configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// CSV destination for `bench` (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (all cores when omitted). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Method to run; repeat for several.
    #[arg(long = "method", global = true)]
    methods: Vec<Method>,
    /// RIS element counts (comma-separated or repeated).
    #[arg(long, global = true, value_delimiter = ',')]
    n: Vec<usize>,
    /// Configuration-set sizes.
    #[arg(long, global = true, value_delimiter = ',')]
    k: Vec<usize>,
    /// Candidate grid sizes.
    #[arg(long, global = true, value_delimiter = ',')]
    m: Vec<usize>,
    /// Channel realizations per sweep point.
    #[arg(long, global = true)]
    r: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize one channel realization and print the picks and capacity.
    Optimize {
        /// TOML channel file: `h0 = [mag, phase]`, `v = [[mag, phase], ...]`
        /// (linear magnitudes, radians). A seeded draw is used when omitted.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Replicate index of the seeded draw.
        #[arg(long, default_value_t = 0)]
        replicate: u64,
    },
    /// Select a configuration set from the candidate grid.
    SelectConfig {
        #[arg(value_enum)]
        method: Selector,
    },
    /// Run a named recipe (or the config file alone) and write CSV rows.
    Bench { recipe: Option<String> },
    /// List the named recipes.
    ListRecipes,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Selector {
    Imb,
    ImbSsc,
    Mcsb,
    Even,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    h0: (f64, f64),
    v: Vec<(f64, f64)>,
}

impl Cli {
    /// Recipe or default, then the config file, then flags.
    fn experiment(&self, base: ExperimentConfig) -> Result<ExperimentConfig> {
        let mut cfg = base;
        if let Some(path) = &self.config {
            ConfigFile::load(path)?.apply(&mut cfg);
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(r) = self.r {
            cfg.replicates = r;
        }
        if !self.methods.is_empty() {
            cfg.methods = self.methods.clone();
        }
        for (flag, target) in [
            (&self.n, &mut cfg.n),
            (&self.k, &mut cfg.k),
            (&self.m, &mut cfg.m),
        ] {
            if !flag.is_empty() {
                target.clone_from(flag);
            }
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build()?;
    pool.install(|| match &cli.command {
        Command::ListRecipes => list_recipes(),
        Command::Bench { recipe } => bench(cli, recipe.as_deref()),
        Command::Optimize { channel, replicate } => {
            optimize_one(cli, channel.as_deref(), *replicate)
        }
        Command::SelectConfig { method } => select_config(cli, *method),
    })
}

fn list_recipes() -> Result<()> {
    let mut out = io::stdout().lock();
    for r in recipes::RECIPES {
        writeln!(out, "{:<22} {}", r.name, r.description)?;
    }
    Ok(())
}

fn bench(cli: &Cli, recipe: Option<&str>) -> Result<()> {
    let base = match recipe {
        Some(name) => recipes::find(name)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown recipe `{name}` (see `risopt list-recipes`)"
                ))
            })?
            .config(),
        None if cli.config.is_some() => ExperimentConfig::default(),
        None => {
            return Err(CliError::Config(
                "bench needs a recipe name or --config".into(),
            ))
        }
    };
    let cfg = cli.experiment(base)?;
    let rows = run_experiment(&cfg)?;
    match &cli.out {
        Some(path) => output::write_csv(&rows, BufWriter::new(File::create(path)?)),
        None => output::write_csv(&rows, io::stdout().lock()),
    }
}

fn first<T: Copy>(values: &[T], what: &str) -> Result<T> {
    values
        .first()
        .copied()
        .ok_or_else(|| CliError::Config(format!("`{what}` is empty")))
}

fn load_channel(path: &Path) -> Result<ChannelRealization> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
        path: path.into(),
        source,
    })?;
    let file: ChannelFile = toml::from_str(&text).map_err(|source| CliError::ParseConfig {
        path: path.into(),
        source: Box::new(source),
    })?;
    Ok(ChannelRealization::from_polar(file.h0, &file.v)?)
}

fn solve(
    method: Method,
    r: &ChannelRealization,
    set: &ConfigurationSet,
    cfg: &ExperimentConfig,
) -> Result<OptimizationResult> {
    let link = cfg.link()?;
    Ok(match method {
        Method::Optimize => optimize(r, set, &link),
        Method::Exhaustive => exhaustive_optimize(r, set, &link, cfg.exhaustive_cap)?,
        Method::Cpp => cpp_optimize(r, set, &link)?,
        Method::ImprovedCpp => improved_cpp_optimize(r, set, &link)?,
        other => {
            return Err(CliError::Config(format!(
                "`{other}` is not a per-element optimizer"
            )))
        }
    })
}

fn optimize_one(cli: &Cli, channel: Option<&Path>, replicate: u64) -> Result<()> {
    let mut cfg = cli.experiment(ExperimentConfig::default())?;
    cfg.kind = Kind::Capacity;
    cfg.validate()?;
    let point = cfg.sweep()[0];
    let set = evenly_spaced_set(point.k, &cfg.coupling(&point)?)?;
    let r = match channel {
        Some(path) => load_channel(path)?,
        None => {
            let spec = ChannelSpec {
                elements: first(&cfg.n, "n")?,
                v_magnitude: cfg.v_magnitude(),
                h0_magnitude: magnitude_from_db(point.h0_db),
                h0_phase: cfg.h0_phase,
            };
            RealizationStream::new(cfg.seed).realization(replicate, &spec)?
        }
    };
    let mut out = io::stdout().lock();
    writeln!(out, "N {}  K {}", r.num_elements(), set.len())?;
    for &method in &cfg.methods {
        let res = solve(method, &r, &set, &cfg)?;
        let picks: Vec<String> = res.picks.iter().map(usize::to_string).collect();
        writeln!(out, "{method}")?;
        writeln!(out, "  picks               {}", picks.join(" "))?;
        writeln!(out, "  |h|                 {:.16e}", res.magnitude())?;
        writeln!(
            out,
            "  arg h               {:.16e}",
            risopt_core::angle::normalize(res.h_opt.im.atan2(res.h_opt.re))
        )?;
        writeln!(
            out,
            "  capacity_bits_per_s {:.16e}",
            res.capacity_bits_per_s
        )?;
    }
    Ok(())
}

fn print_set(out: &mut impl Write, set: &ConfigurationSet) -> Result<()> {
    writeln!(out, "  {:>22} {:>22}", "phase_rad", "amplitude")?;
    for c in set {
        writeln!(out, "  {:>22.16e} {:>22.16e}", c.alpha(), c.beta())?;
    }
    writeln!(out, "  integral            {:.16e}", integral_s(set))?;
    Ok(())
}

fn select_config(cli: &Cli, selector: Selector) -> Result<()> {
    let mut cfg = cli.experiment(ExperimentConfig::default())?;
    cfg.kind = Kind::Selection;
    cfg.methods = vec![Method::Imb];
    cfg.validate()?;
    let point = cfg.sweep()[0];
    let params = cfg.coupling(&point)?;
    let (k, m) = (point.k, point.m.expect("selection points have m"));
    let mut out = io::stdout().lock();
    let report = match selector {
        Selector::Even => {
            writeln!(out, "evenly_spaced K {k}")?;
            return print_set(&mut out, &evenly_spaced_set(k, &params)?);
        }
        Selector::Imb | Selector::ImbSsc => imb_select(
            m,
            k,
            &params,
            matches!(selector, Selector::ImbSsc),
            DEFAULT_IMB_CAP,
        )?,
        Selector::Mcsb => {
            let spec = ChannelSpec {
                elements: first(&cfg.n, "n")?,
                v_magnitude: cfg.v_magnitude(),
                h0_magnitude: magnitude_from_db(point.h0_db),
                h0_phase: cfg.h0_phase,
            };
            mcsb_select(
                m,
                k,
                &params,
                &cfg.link()?,
                &spec,
                cfg.replicates,
                cfg.seed,
                cfg.mcsb_budget,
            )?
        }
    };
    let indices: Vec<String> = report
        .best_option
        .indices()
        .iter()
        .map(usize::to_string)
        .collect();
    let name = selector.to_possible_value().expect("no skipped variants");
    writeln!(out, "{} M {m} K {k}", name.get_name())?;
    writeln!(out, "  option              {}", indices.join(" "))?;
    writeln!(out, "  score               {:.16e}", report.best_score)?;
    writeln!(out, "  options_examined    {}", report.options_examined)?;
    print_set(
        &mut out,
        &omega_grid(m, &params)?.config_set(&report.best_option),
    )
}
