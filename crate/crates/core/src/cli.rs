//! Run configuration, parsing, and the four data-export commands.
//!
//! Settings arrive as flat `key = value` pairs, first from an optional config
//! file and then from command-line flags, which override. Everything is
//! validated before any computation or file access. Output is rendered to
//! memory and written in one piece, so a failed run leaves no file behind.
//!
//! CSV floats carry 17 significant digits (`{:.16e}`); JSON mirrors the same
//! fields under snake_case keys with `"schema_version": 1`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{run_comparison, ComparisonReport};
use crate::law::{support_hstar, LawKind, LimitDensity};
use crate::params::{CoinSpinor, Variant, WalkParams};
use crate::walk::evolve;

pub const SCHEMA_VERSION: u32 = 1;

pub const SIMULATE_COLUMNS: [&str; 6] = ["x", "prob", "amp0_re", "amp0_im", "amp1_re", "amp1_im"];
pub const DENSITY_COLUMNS: [&str; 2] = ["x", "density"];
pub const COMPARE_COLUMNS: [&str; 3] = ["x", "simulated", "approx"];
pub const SWEEP_COLUMNS: [&str; 3] = ["rho", "nu", "h_star"];

/// Points on the density grid.
pub const DENSITY_POINTS: usize = 2001;
/// Relative zero padding on either side of the support.
pub const DENSITY_PAD: f64 = 0.05;

/// Keys accepted in config files and as flags.
pub const KEYS: [&str; 11] = [
    "rho", "nu", "alpha", "beta", "t", "variant", "law", "n", "grid", "out", "format",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Density,
    Compare,
    Sweep,
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simulate" => Ok(Command::Simulate),
            "density" => Ok(Command::Density),
            "compare" => Ok(Command::Compare),
            "sweep" => Ok(Command::Sweep),
            _ => Err(Error::Parse(format!("unknown command `{s}`"))),
        }
    }
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Density => "density",
            Command::Compare => "compare",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!(
                "unknown format `{s}` (expected csv or json)"
            ))),
        }
    }
}

/// Inclusive `(rho, nu)` sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub rho_steps: usize,
    pub nu_steps: usize,
    pub nu_min: f64,
    pub nu_max: f64,
    pub rho_min: f64,
    pub rho_max: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            rho_steps: 49,
            nu_steps: 73,
            nu_min: -PI,
            nu_max: PI,
            rho_min: 0.02,
            rho_max: 0.98,
        }
    }
}

impl FromStr for Grid {
    type Err = Error;
    /// `rho_steps,nu_steps,nu_min,nu_max[,rho_min,rho_max]`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 && parts.len() != 6 {
            return Err(Error::Parse(format!(
                "grid `{s}` must be rho_steps,nu_steps,nu_min,nu_max[,rho_min,rho_max]"
            )));
        }
        let steps = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grid size `{p}`")))
        };
        let mut g = Grid {
            rho_steps: steps(parts[0])?,
            nu_steps: steps(parts[1])?,
            nu_min: parse_angle(parts[2])?,
            nu_max: parse_angle(parts[3])?,
            ..Grid::default()
        };
        if parts.len() == 6 {
            g.rho_min = parse_real(parts[4])?;
            g.rho_max = parse_real(parts[5])?;
        }
        Ok(g)
    }
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.rho_steps < 2 || self.nu_steps < 2 {
            return Err(Error::InvalidParameter(
                "grid needs at least 2 steps along each axis".into(),
            ));
        }
        for rho in [self.rho_min, self.rho_max] {
            WalkParams::new(rho, 0.0)?;
        }
        if !(self.nu_min.is_finite() && self.nu_max.is_finite()) {
            return Err(Error::InvalidParameter(
                "grid nu bounds must be finite".into(),
            ));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    pub fn rho(&self, i: usize) -> f64 {
        Self::axis(self.rho_min, self.rho_max, self.rho_steps, i)
    }

    pub fn nu(&self, j: usize) -> f64 {
        Self::axis(self.nu_min, self.nu_max, self.nu_steps, j)
    }
}

/// Parses a real number, also accepting `1/sqrt2`, `1/sqrt(2)` and `sqrt2/2`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let v = match body {
        "1/sqrt2" | "1/sqrt(2)" | "sqrt2/2" | "sqrt(2)/2" => FRAC_1_SQRT_2,
        _ => {
            return t
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("cannot parse `{s}` as a number")))
        }
    };
    Ok(if neg { -v } else { v })
}

/// Parses an angle in radians or as a rational multiple of pi:
/// `pi`, `pi/2`, `-pi/4`, `3pi/2`, `3*pi/4`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let Some(pos) = t.find("pi") else {
        return parse_real(t);
    };
    let bad = || Error::Parse(format!("cannot parse angle `{s}`"));
    let head = t[..pos].trim_end_matches('*');
    let tail = &t[pos + 2..];
    let num: f64 = match head {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse::<i64>().map_err(|_| bad())? as f64,
    };
    let den: f64 = match tail {
        "" => 1.0,
        d => {
            let d = d.strip_prefix('/').ok_or_else(bad)?;
            let v = d.parse::<u64>().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            v as f64
        }
    };
    Ok(num * PI / den)
}

/// Parses `"re,im"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("complex value `{s}` must be written re,im")))?;
    Ok(Complex64::new(parse_real(re)?, parse_real(im)?))
}

/// Reads flat `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::Parse(format!(
                "config line {}: unknown key `{k}`",
                i + 1
            )));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: WalkParams,
    pub coin: CoinSpinor,
    pub t: usize,
    pub variant: Variant,
    pub law: LawKind,
    pub grid: Grid,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Builds and validates a configuration from merged settings.
    ///
    /// Defaults: `rho = 1/sqrt2`, `nu = pi/2`, coin `(1, 0)`, `t = 100`,
    /// variant `full` (or `cmv_only` when the law is), law `theorem1` for the
    /// full walk, CSV to standard output.
    pub fn from_settings(command: Command, settings: &BTreeMap<String, String>) -> Result<Self> {
        for k in settings.keys() {
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Parse(format!("unknown setting `{k}`")));
            }
        }
        let get = |k: &str| settings.get(k).map(String::as_str);
        let rho = get("rho")
            .map(parse_real)
            .transpose()?
            .unwrap_or(FRAC_1_SQRT_2);
        let nu = get("nu")
            .map(parse_angle)
            .transpose()?
            .unwrap_or(std::f64::consts::FRAC_PI_2);
        let params = WalkParams::new(rho, nu)?;
        let alpha = get("alpha")
            .map(parse_complex)
            .transpose()?
            .unwrap_or(Complex64::new(1.0, 0.0));
        let beta = get("beta")
            .map(parse_complex)
            .transpose()?
            .unwrap_or(Complex64::new(0.0, 0.0));
        let coin = CoinSpinor::new(alpha, beta);
        coin.validate()?;
        let t = match get("t") {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("t must be a nonnegative integer, got `{v}`")))?,
            None => 100,
        };
        let n = get("n")
            .map(|v| {
                v.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("n must be an integer, got `{v}`")))
            })
            .transpose()?;
        let law_name = get("law");
        let variant = match get("variant") {
            Some(v) => v.parse()?,
            None if law_name == Some("cmv_only") => Variant::CmvOnly,
            None => Variant::Full,
        };
        let law = match law_name {
            None => match variant {
                Variant::Full => LawKind::Theorem1,
                Variant::CmvOnly => LawKind::CmvOnly,
            },
            Some("theorem1") => LawKind::Theorem1,
            Some("cmv_only") => LawKind::CmvOnly,
            Some("standard") => {
                let n = match n.or(params.special_index()) {
                    Some(n) => n,
                    None => {
                        return Err(Error::InvalidParameter(
                            "the standard law needs (rho, nu) = (1/sqrt2, pi/2 + n pi)".into(),
                        ))
                    }
                };
                LawKind::Standard { n }
            }
            Some(other) => return Err(Error::Parse(format!("unknown law `{other}`"))),
        };
        let grid = get("grid")
            .map(Grid::from_str)
            .transpose()?
            .unwrap_or_default();
        let format = get("format")
            .map(Format::from_str)
            .transpose()?
            .unwrap_or(Format::Csv);
        let cfg = RunConfig {
            command,
            params,
            coin,
            t,
            variant,
            law,
            grid,
            output: get("out").map(PathBuf::from),
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Command-specific checks that do not need any computation.
    pub fn validate(&self) -> Result<()> {
        self.coin.validate()?;
        match self.command {
            Command::Density => {
                LimitDensity::new(self.law, self.params, self.coin)?;
            }
            Command::Compare => {
                crate::harness::check_consistent(self.variant, self.law)?;
                LimitDensity::new(self.law, self.params, self.coin)?;
            }
            Command::Sweep => self.grid.validate()?,
            Command::Simulate => {}
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_bytes(
    header: &[&str],
    comments: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for c in comments {
        writeln!(out, "# {c}").expect("write to memory");
    }
    let mut w = csv::Writer::from_writer(out);
    let to_err = |e: csv::Error| Error::Parse(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(to_err)?;
    for r in rows {
        w.write_record(&r).map_err(to_err)?;
    }
    w.into_inner()
        .map_err(|e| Error::Parse(format!("csv encoding failed: {e}")))
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)
        .map_err(|e| Error::Parse(format!("json encoding failed: {e}")))?;
    v.push(b'\n');
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulateRow {
    pub x: i64,
    pub prob: f64,
    pub amp0_re: f64,
    pub amp0_im: f64,
    pub amp1_re: f64,
    pub amp1_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub schema_version: u32,
    pub command: String,
    pub t: usize,
    pub variant: Variant,
    pub params: WalkParams,
    pub coin: CoinSpinor,
    pub rows: Vec<SimulateRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub x: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityOutput {
    pub schema_version: u32,
    pub command: String,
    pub law: LawKind,
    pub params: WalkParams,
    pub coin: CoinSpinor,
    pub support_hi: f64,
    pub coeff: f64,
    pub rows: Vec<DensityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub schema_version: u32,
    pub command: String,
    #[serde(flatten)]
    pub report: ComparisonReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub rho: f64,
    pub nu: f64,
    pub h_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub schema_version: u32,
    pub command: String,
    pub grid: Grid,
    pub rows: Vec<SweepRow>,
}

pub fn simulate_output(cfg: &RunConfig) -> Result<SimulateOutput> {
    let state = evolve(cfg.coin, &cfg.params, cfg.t, cfg.variant)?;
    let rows = state
        .positions()
        .zip(&state.amps)
        .map(|(x, a)| SimulateRow {
            x,
            prob: a[0].norm_sqr() + a[1].norm_sqr(),
            amp0_re: a[0].re,
            amp0_im: a[0].im,
            amp1_re: a[1].re,
            amp1_im: a[1].im,
        })
        .collect();
    Ok(SimulateOutput {
        schema_version: SCHEMA_VERSION,
        command: Command::Simulate.name().into(),
        t: cfg.t,
        variant: cfg.variant,
        params: cfg.params,
        coin: cfg.coin,
        rows,
    })
}

/// `x_i` on `[-(1+pad) s, (1+pad) s]` with [`DENSITY_POINTS`] nodes.
pub fn density_grid(support_hi: f64) -> Vec<f64> {
    let half = (1.0 + DENSITY_PAD) * support_hi;
    let n = DENSITY_POINTS - 1;
    (0..=n)
        .map(|i| {
            if 2 * i == n {
                0.0
            } else {
                -half + 2.0 * half * i as f64 / n as f64
            }
        })
        .collect()
}

pub fn density_output(cfg: &RunConfig) -> Result<DensityOutput> {
    let law = LimitDensity::new(cfg.law, cfg.params, cfg.coin)?;
    let rows = density_grid(law.support_hi())
        .into_iter()
        .map(|x| DensityRow {
            x,
            density: law.density(x),
        })
        .collect();
    Ok(DensityOutput {
        schema_version: SCHEMA_VERSION,
        command: Command::Density.name().into(),
        law: cfg.law,
        params: cfg.params,
        coin: cfg.coin,
        support_hi: law.support_hi(),
        coeff: law.coeff(),
        rows,
    })
}

pub fn compare_output(cfg: &RunConfig) -> Result<CompareOutput> {
    Ok(CompareOutput {
        schema_version: SCHEMA_VERSION,
        command: Command::Compare.name().into(),
        report: run_comparison(cfg.params, cfg.coin, cfg.t, cfg.variant, cfg.law)?,
    })
}

/// Rows in rho-major order; grid points are evaluated in parallel.
pub fn sweep_output(cfg: &RunConfig) -> Result<SweepOutput> {
    let g = cfg.grid;
    g.validate()?;
    let rows = (0..g.rho_steps * g.nu_steps)
        .into_par_iter()
        .map(|idx| {
            let (rho, nu) = (g.rho(idx / g.nu_steps), g.nu(idx % g.nu_steps));
            let p = WalkParams::new(rho, nu)?;
            Ok(SweepRow {
                rho,
                nu,
                h_star: support_hstar(&p),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput {
        schema_version: SCHEMA_VERSION,
        command: Command::Sweep.name().into(),
        grid: g,
        rows,
    })
}

fn law_label(law: LawKind) -> String {
    match law {
        LawKind::Standard { n } => format!("standard n={n}"),
        other => other.to_string(),
    }
}

/// Renders the command's output in the configured format.
pub fn render(cfg: &RunConfig) -> Result<Vec<u8>> {
    match (cfg.command, cfg.format) {
        (Command::Simulate, Format::Json) => json_bytes(&simulate_output(cfg)?),
        (Command::Simulate, Format::Csv) => {
            let out = simulate_output(cfg)?;
            let rows = out.rows.iter().map(|r| {
                vec![
                    r.x.to_string(),
                    num(r.prob),
                    num(r.amp0_re),
                    num(r.amp0_im),
                    num(r.amp1_re),
                    num(r.amp1_im),
                ]
            });
            csv_bytes(&SIMULATE_COLUMNS, &[], rows)
        }
        (Command::Density, Format::Json) => json_bytes(&density_output(cfg)?),
        (Command::Density, Format::Csv) => {
            let out = density_output(cfg)?;
            csv_bytes(
                &DENSITY_COLUMNS,
                &[],
                out.rows.iter().map(|r| vec![num(r.x), num(r.density)]),
            )
        }
        (Command::Compare, Format::Json) => json_bytes(&compare_output(cfg)?),
        (Command::Compare, Format::Csv) => {
            let r = compare_output(cfg)?.report;
            let mut comments = vec![
                format!("t={}", r.t),
                format!("variant={}", r.variant),
                format!("law={}", law_label(r.law)),
                format!("ks_distance={}", num(r.ks_distance)),
            ];
            for m in &r.moment_errors {
                let mut line = String::new();
                write!(
                    line,
                    "moment_r{}: empirical={} limit={} abs_error={}",
                    m.r,
                    num(m.empirical),
                    num(m.limit),
                    num(m.abs_error)
                )
                .expect("write to string");
                comments.push(line);
            }
            comments.push(format!("smoothing_width={}", r.smoothing_width));
            comments.push(format!("smoothed_mad={}", num(r.smoothed_mad)));
            let rows = r
                .rescaled_points
                .iter()
                .map(|p| vec![p.x.to_string(), num(p.simulated), num(p.approx)]);
            csv_bytes(&COMPARE_COLUMNS, &comments, rows)
        }
        (Command::Sweep, Format::Json) => json_bytes(&sweep_output(cfg)?),
        (Command::Sweep, Format::Csv) => {
            let out = sweep_output(cfg)?;
            csv_bytes(
                &SWEEP_COLUMNS,
                &[],
                out.rows
                    .iter()
                    .map(|r| vec![num(r.rho), num(r.nu), num(r.h_star)]),
            )
        }
    }
}

/// Renders and writes to `cfg.output`, or to standard output when unset.
pub fn execute(cfg: &RunConfig) -> Result<()> {
    let bytes = render(cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

/// Merges config-file settings with flag settings (flags win), then runs.
pub fn run(
    command: &str,
    config_file: Option<&Path>,
    flags: BTreeMap<String, String>,
) -> Result<()> {
    let command: Command = command.parse()?;
    let mut settings = match config_file {
        Some(p) => read_config_file(p)?,
        None => BTreeMap::new(),
    };
    settings.extend(flags);
    let cfg = RunConfig::from_settings(command, &settings)?;
    execute(&cfg)
}
