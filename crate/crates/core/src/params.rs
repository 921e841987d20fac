//! Walk parameters and coin spinors.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when deciding whether a parameter pair sits on the
/// special set `(1/sqrt2, pi/2 + n*pi)`.
pub const SPECIAL_TOL: f64 = 1e-12;

/// The pair `(rho, nu)` defining the five-diagonal evolution, with the
/// derived constants `rho0 = sqrt(1 - rho^2)` and `alpha0 = rho e^{i nu}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct WalkParams {
    rho: f64,
    nu: f64,
    rho0: f64,
    alpha0: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    rho: f64,
    nu: f64,
}

impl TryFrom<RawParams> for WalkParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        WalkParams::new(raw.rho, raw.nu)
    }
}

impl From<WalkParams> for RawParams {
    fn from(p: WalkParams) -> Self {
        RawParams {
            rho: p.rho,
            nu: p.nu,
        }
    }
}

impl WalkParams {
    /// Rejects `rho` outside the open interval `(0, 1)` and non-finite `nu`.
    pub fn new(rho: f64, nu: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in the open interval (0, 1), got {rho}"
            )));
        }
        if !nu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "nu must be finite, got {nu}"
            )));
        }
        let rho0 = (1.0 - rho * rho).sqrt();
        Ok(WalkParams {
            rho,
            nu,
            rho0,
            alpha0: Complex64::from_polar(rho, nu),
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }

    /// `rho * rho0`, which never exceeds 1/2.
    pub fn rho_rho0(&self) -> f64 {
        self.rho * self.rho0
    }

    /// Returns `Some(n)` with `n` in `{0, 1}` when `(rho, nu) = (1/sqrt2, pi/2 + n pi)`
    /// up to [`SPECIAL_TOL`]. Only the parity of `n` matters.
    pub fn special_index(&self) -> Option<i64> {
        if (self.rho - FRAC_1_SQRT_2).abs() > SPECIAL_TOL {
            return None;
        }
        let offset = (self.nu - FRAC_PI_2).rem_euclid(2.0 * PI);
        if offset < SPECIAL_TOL || 2.0 * PI - offset < SPECIAL_TOL {
            Some(0)
        } else if (offset - PI).abs() < SPECIAL_TOL {
            Some(1)
        } else {
            None
        }
    }

    pub fn is_special(&self) -> bool {
        self.special_index().is_some()
    }
}

/// Internal coin state `a0 |0> + a1 |1>`.
///
/// Serialized as the flat record `{alpha_re, alpha_im, beta_re, beta_im}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawCoin", into = "RawCoin")]
pub struct CoinSpinor {
    pub a0: Complex64,
    pub a1: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawCoin {
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
}

impl From<RawCoin> for CoinSpinor {
    fn from(r: RawCoin) -> Self {
        CoinSpinor::new(
            Complex64::new(r.alpha_re, r.alpha_im),
            Complex64::new(r.beta_re, r.beta_im),
        )
    }
}

impl From<CoinSpinor> for RawCoin {
    fn from(c: CoinSpinor) -> Self {
        RawCoin {
            alpha_re: c.a0.re,
            alpha_im: c.a0.im,
            beta_re: c.a1.re,
            beta_im: c.a1.im,
        }
    }
}

impl CoinSpinor {
    pub const NORM_TOL: f64 = 1e-9;

    pub fn new(a0: Complex64, a1: Complex64) -> Self {
        CoinSpinor { a0, a1 }
    }

    /// `|0>`.
    pub fn up() -> Self {
        CoinSpinor::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `(|0> + i|1>)/sqrt2`, the symmetric initial state.
    pub fn symmetric() -> Self {
        CoinSpinor::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, FRAC_1_SQRT_2),
        )
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0.norm_sqr() + self.a1.norm_sqr()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.norm_sqr();
        if !n.is_finite() || (n.sqrt() - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(())
    }

    /// `alpha * conj(beta)`.
    pub fn cross(&self) -> Complex64 {
        self.a0 * self.a1.conj()
    }

    /// Exchanges the two components (the per-site action of `U_f`).
    pub fn swapped(&self) -> Self {
        CoinSpinor::new(self.a1, self.a0)
    }
}

/// Which one-step operator drives the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// The five-diagonal operator `U = V U_f`.
    Full,
    /// The CMV factor `V` alone.
    CmvOnly,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::CmvOnly => "cmv_only",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "cmv_only" | "cmv-only" => Ok(Variant::CmvOnly),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}
