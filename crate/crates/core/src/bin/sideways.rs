use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sideways::experiment::{
    inject_noise, noise_sweep, picard_config, read_boundary_csv, reference, relative_error,
    run_rate, run_table, solve_pair, write_amplification_csv, write_rate_csv, write_solution_csv,
    write_table_csv, ExperimentConfig, SpaceSetup,
};
use sideways::illposed::amplification_sweep;
use sideways::solver::{field_to_time, PicardReport, SpaceGrid};
use sideways::spectral::TimeGrid;
use sideways::Error;

/// Fourier-truncation solver for the sideways time-fractional problem.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once and write the field as `x,t,u`.
    Solve(Common),
    /// Mean relative errors over repetitions, one row per (x, omega_max).
    Table(Common),
    /// Log-log error slopes against the noise level.
    Rate(Common),
    /// Amplification of tiny high-frequency data.
    Illposed(Common),
}

#[derive(Args)]
struct Common {
    /// TOML experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
    /// No summary on standard error.
    #[arg(long)]
    quiet: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (Command::Solve(common)
    | Command::Table(common)
    | Command::Rate(common)
    | Command::Illposed(common)) = &cli.command;
    if let Some(n) = common.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("the global pool is configured once");
    }
    let result = load(common).and_then(|cfg| match &cli.command {
        Command::Solve(c) => solve(c, &cfg),
        Command::Table(c) => table(c, &cfg),
        Command::Rate(c) => rate(c, &cfg),
        Command::Illposed(c) => illposed(c, &cfg),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(common: &Common) -> Result<ExperimentConfig, Failure> {
    let mut cfg = ExperimentConfig::from_file(&common.config).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn output(common: &Common) -> Result<Box<dyn Write>, Failure> {
    match &common.out {
        None => Ok(Box::new(io::stdout().lock())),
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure {
                code: 2,
                message: format!("cannot create {}: {e}", path.display()),
            }),
    }
}

macro_rules! note {
    ($common:expr, $($arg:tt)*) => {
        if !$common.quiet {
            eprintln!($($arg)*);
        }
    };
}

fn report_line(r: &PicardReport) -> String {
    format!(
        "picard: {} iterations, last increment {:.3e}, converged {}, saturated {}",
        r.iterations,
        r.last_increment(),
        r.converged,
        r.saturated
    )
}

fn solve(common: &Common, cfg: &ExperimentConfig) -> Outcome {
    let space = SpaceGrid::new(cfg.n_x)?;
    let clean = match &cfg.data_file {
        Some(name) => {
            let path = resolve(&common.config, name);
            let file = File::open(&path).map_err(|e| Failure {
                code: 2,
                message: format!("cannot open {}: {e}", path.display()),
            })?;
            read_boundary_csv(file)?
        }
        None => cfg
            .problem
            .boundary(TimeGrid::new(cfg.n_samples, cfg.t_max)?),
    };
    let data = if cfg.noise_amplitude > 0.0 {
        let noisy = inject_noise(&clean, cfg.noise_amplitude, cfg.seed, 0)?;
        note!(common, "measured noise level {:.6e}", noisy.measured_delta);
        noisy.data
    } else {
        clean
    };
    let cutoff = cfg.omega_max.first().copied();
    let (solution, failure) = match solve_pair(cfg, space, &data, cutoff) {
        Ok(sol) => (sol, None),
        Err(e) => {
            let message = e.to_string();
            match e.into_partial_solution() {
                Some(sol) => (sol, Some(Failure { code: 3, message })),
                None => return Err(Failure { code: 3, message }),
            }
        }
    };
    note!(common, "{}", report_line(&solution.report));
    let field = field_to_time(&solution.field);
    write_solution_csv(output(common)?, &field)?;
    if failure.is_none() {
        field.ensure_real()?;
    }
    if cfg.data_file.is_none() && !common.quiet {
        let setup = SpaceSetup::new(cfg)?;
        for (&j, exact) in setup.rows.iter().zip(&setup.exact) {
            let err = relative_error(exact, field.row(j))?;
            eprintln!("x = {:.4}: relative error {err:.6e}", space.point(j));
        }
    }
    failure.map_or(Ok(()), Err)
}

fn resolve(config: &Path, name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    config
        .parent()
        .map_or_else(|| p.to_path_buf(), |dir| dir.join(p))
}

fn table(common: &Common, cfg: &ExperimentConfig) -> Outcome {
    let table = if cfg.noise_sweep.is_empty() {
        run_table(cfg)?
    } else {
        let sweep = noise_sweep(cfg)?;
        for e in &sweep.entries {
            note!(
                common,
                "amplitude {:<8} score {:.4} mean delta {:.4e}",
                e.amplitude,
                e.score,
                e.table.mean_delta
            );
        }
        note!(common, "best amplitude {}", sweep.best_entry().amplitude);
        sweep.entries[sweep.best].table.clone()
    };
    write_table_csv(output(common)?, &table)?;
    note!(
        common,
        "nondecreasing in x: {}, nonincreasing in omega_max: {}",
        table.nondecreasing_in_x(),
        table.nonincreasing_in_omega()
    );
    if let Some(published) = reference::published_table(cfg.alpha) {
        if cfg.x == reference::TABLE_X && cfg.omega_max == reference::OMEGA_MAX {
            note!(
                common,
                "worst factor against the published table: {:.3}",
                reference::worst_factor(&table.means(), published)
            );
        }
    }
    Ok(())
}

fn rate(common: &Common, cfg: &ExperimentConfig) -> Outcome {
    let study = run_rate(cfg)?;
    write_rate_csv(output(common)?, &study)?;
    for p in &study.points {
        note!(
            common,
            "delta {:.4e}: omega_max {:.3}, errors {:?}",
            p.mean_delta,
            p.mean_omega_max,
            p.mean_error
        );
    }
    for (f, b) in study.fits.iter().zip(&study.bound_fits) {
        note!(
            common,
            "x = {}: slope {:.4} (expected {:.4}, bound {:.4})",
            f.x,
            f.fit.slope,
            f.expected,
            b.fit.slope
        );
    }
    Ok(())
}

fn illposed(common: &Common, cfg: &ExperimentConfig) -> Outcome {
    let rows = amplification_sweep(
        &cfg.n_list,
        cfg.order()?,
        SpaceGrid::new(cfg.n_x)?,
        &picard_config(cfg),
        cfg.omega_max.first().copied(),
    )
    .map_err(|e| match e {
        Error::InvalidParameter(m) => Failure {
            code: 2,
            message: m,
        },
        other => other.into(),
    })?;
    write_amplification_csv(output(common)?, &rows)?;
    for a in &rows {
        note!(
            common,
            "n = {}: data {:.4e}, sup solution {:.4e}, ratio {:.4e}",
            a.n,
            a.data_norm,
            a.sup_solution_norm,
            a.ratio
        );
    }
    Ok(())
}
