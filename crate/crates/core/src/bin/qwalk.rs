use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cmv_qwalk::cli;

/// Quantum walk driven by a five-diagonal unitary: simulation and limit laws.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evolve the walk and write P(X_t = x) with amplitudes per site.
    Simulate(Flags),
    /// Tabulate a limit density on a padded 2001-point grid.
    Density(Flags),
    /// Score the finite-time distribution against a limit law.
    Compare(Flags),
    /// Support half-width h* over a (rho, nu) grid.
    Sweep(Flags),
}

#[derive(Args)]
struct Flags {
    /// Flat key=value file with the same keys as the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    /// Radians or a multiple of pi such as pi/2, -pi/4, 3pi/2.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Coin amplitude of |0>, as re,im.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Coin amplitude of |1>, as re,im.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    t: Option<String>,
    /// full | cmv_only
    #[arg(long)]
    variant: Option<String>,
    /// theorem1 | standard | cmv_only
    #[arg(long)]
    law: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// rho_steps,nu_steps,nu_min,nu_max[,rho_min,rho_max]
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
}

impl Flags {
    fn into_settings(self) -> (Option<PathBuf>, BTreeMap<String, String>) {
        let pairs = [
            ("rho", self.rho),
            ("nu", self.nu),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("t", self.t),
            ("variant", self.variant),
            ("law", self.law),
            ("n", self.n),
            ("grid", self.grid),
            ("out", self.out),
            ("format", self.format),
        ];
        let map = pairs
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
            .collect();
        (self.config, map)
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (name, flags) = match args.command {
        Cmd::Simulate(f) => ("simulate", f),
        Cmd::Density(f) => ("density", f),
        Cmd::Compare(f) => ("compare", f),
        Cmd::Sweep(f) => ("sweep", f),
    };
    let (config, settings) = flags.into_settings();
    match cli::run(name, config.as_deref(), settings) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
