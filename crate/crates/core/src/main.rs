use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gb_lrei::harness::{run_convergence, run_verification, step_dump, ConfigMap, ExperimentConfig};
use gb_lrei::Error;

const EXIT_CONFIG: u8 = 1;
const EXIT_ALL_DIVERGED: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// First-order low-regularity integrator for the periodic "good" Boussinesq
/// equation.
#[derive(Parser, Debug)]
#[command(name = "gb-lrei", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a convergence study and write the error table as CSV.
    Converge(Overrides),
    /// Check the closed-form terms against the brute-force oracle.
    Verify {
        /// Random spectra per grid size.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
    },
    /// Take one step from the configured initial state and print every term.
    Step {
        #[command(flatten)]
        overrides: Overrides,
        /// Step size; defaults to the largest configured tau.
        #[arg(long)]
        tau: Option<String>,
        /// Emit the term-by-term spectra.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args, Debug, Default)]
struct Overrides {
    /// Flat key = value file; flags below override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// soliton | rough
    #[arg(long)]
    init: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    vsign: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Velocity regularity, or `zero` for data at rest.
    #[arg(long = "theta-velocity", allow_hyphen_values = true)]
    theta_velocity: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "half-length")]
    half_length: Option<String>,
    /// Number of grid points.
    #[arg(long = "M")]
    m: Option<String>,
    /// Final time.
    #[arg(long = "T")]
    t: Option<String>,
    /// Sobolev index of the error metric.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Comma-separated step sizes.
    #[arg(long)]
    taus: Option<String>,
    /// exact | fine-psi1 | if-rk
    #[arg(long)]
    reference: Option<String>,
    #[arg(long = "tau-ref")]
    tau_ref: Option<String>,
    /// Apply the 2/3 rule in products; `--dealias` alone means true.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    dealias: Option<String>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<String>,
}

impl Overrides {
    fn resolve(&self) -> Result<ExperimentConfig, Error> {
        let mut map = match &self.config {
            Some(path) => ConfigMap::from_file(path)?,
            None => ConfigMap::new(),
        };
        let flags = [
            ("init", &self.init),
            ("omega", &self.omega),
            ("zeta0", &self.zeta0),
            ("vsign", &self.vsign),
            ("theta", &self.theta),
            ("theta-velocity", &self.theta_velocity),
            ("seed", &self.seed),
            ("half-length", &self.half_length),
            ("M", &self.m),
            ("T", &self.t),
            ("r", &self.r),
            ("taus", &self.taus),
            ("reference", &self.reference),
            ("tau-ref", &self.tau_ref),
            ("dealias", &self.dealias),
            ("out", &self.out),
        ];
        let mut overrides = ConfigMap::new();
        for (key, value) in flags {
            if let Some(v) = value {
                overrides.set(key, v)?;
            }
        }
        map.merge(&overrides);
        ExperimentConfig::from_map(&map)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn converge(overrides: &Overrides) -> Result<u8, Error> {
    let cfg = overrides.resolve()?;
    let table = run_convergence(&cfg)?;
    write_output(cfg.out.as_ref(), &table.to_csv())?;
    for row in &table.rows {
        if let Err(msg) = &row.error {
            eprintln!("tau = {}: {msg}", row.tau);
        }
    }
    Ok(if table.all_failed() {
        EXIT_ALL_DIVERGED
    } else {
        0
    })
}

fn verify(seeds: u64) -> Result<u8, Error> {
    let outcomes = run_verification(seeds)?;
    let mut ok = true;
    for o in &outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:<32} worst {:.3e} (tol {:.0e})",
            o.name, o.worst, o.tolerance
        );
        ok &= o.passed();
    }
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn step(overrides: &Overrides, tau: Option<&str>, dump: bool) -> Result<u8, Error> {
    let cfg = overrides.resolve()?;
    let tau = match tau {
        Some(t) => gb_lrei::harness::parse_real(t)?,
        None => cfg.taus[0],
    };
    let text = step_dump(&cfg, tau)?;
    if dump {
        write_output(cfg.out.as_ref(), &text)?;
    } else {
        let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
        println!(
            "one step of tau = {tau} produced {rows} spectral values; pass --dump to print them"
        );
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Converge(o) => converge(o),
        Command::Verify { seeds } => verify(*seeds),
        Command::Step {
            overrides,
            tau,
            dump,
        } => step(overrides, tau.as_deref(), *dump),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("gb-lrei: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
