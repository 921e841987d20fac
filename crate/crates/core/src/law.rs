//! Long-time limit laws of `X_t / t`.
//!
//! Three densities are provided:
//!
//! * [`LawKind::Theorem1`] for the full walk at any `(rho, nu)`:
//!   `(sqrt(eta_+) + sqrt(eta_-)) / (2 pi (1 - x^2) sqrt(xi)) * gamma(x)` on `(-h*, h*)`;
//! * [`LawKind::Standard`] for the full walk at `(1/sqrt2, pi/2 + n pi)`, where it
//!   reduces to a two-step coined walk:
//!   `Theta_n(x) / (pi (1 - x^2) sqrt(1 - 2x^2))` on `(-1/sqrt2, 1/sqrt2)`;
//! * [`LawKind::CmvOnly`] for the `V`-only walk:
//!   `rho Delta(x) / (pi (1 - x^2) sqrt(rho0^2 - x^2))` on `(-rho0, rho0)`.
//!
//! Every density diverges like an inverse square root at the edges of its
//! support. CDFs and moments are therefore integrated in the angle `theta`
//! with `x = s sin(theta)`, which cancels the singular factor exactly and
//! leaves a bounded integrand.
//!
//! The linear weights `Theta_n` and `Delta` use `|alpha|^2 - |beta|^2` as the
//! leading coefficient, the form consistent with `gamma`. The alternative
//! `|alpha|^2 + |beta|^2` (identically 1) is available through
//! [`standard_coefficient`] with [`CoefficientForm::Sum`] for comparison.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{group_velocity_h, shifted_spinor, spectral_weights};
use crate::params::{CoinSpinor, WalkParams};
use crate::quad::TanhSinh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Support geometry shared by `xi`, `eta`, `h*` and `k*`.
///
/// `xi(x) = x^4 - (1 + c^2 cos^2 nu) x^2 + c^2 = (u_- - x^2)(u_+ - x^2)` with
/// `u_- = h*^2`. The discriminant factors as
/// `P1 P2 = [(1+c)^2 - c^2 sin^2 nu] [(1-c)^2 - c^2 sin^2 nu]`, and
/// `P2 = (1 - c(1+s)) (1 - c(1-s))` with `1 - 2c = (rho - rho0)^2`, which
/// keeps every quantity accurate on and near the special set where `P2 = 0`.
#[derive(Debug, Clone, Copy)]
struct Geometry {
    c: f64,
    sin_nu: f64,
    cos_nu: f64,
    /// `u_+ - u_-`
    root_gap: f64,
    h_star: f64,
}

impl Geometry {
    fn new(params: &WalkParams) -> Self {
        let (rho, rho0, nu) = (params.rho(), params.rho0(), params.nu());
        let c = rho * rho0;
        let (sin_nu, cos_nu) = nu.sin_cos();
        let one_minus_2c = (rho - rho0) * (rho - rho0);
        // 1 - sin nu and 1 + sin nu without cancellation
        let one_minus_s = 2.0 * (FRAC_PI_2 / 2.0 - nu / 2.0).sin().powi(2);
        let one_plus_s = 2.0 * (FRAC_PI_2 / 2.0 + nu / 2.0).sin().powi(2);
        // Within SPECIAL_TOL of the special set the rounded parameters leave
        // P2 ~ 1e-32, which opens a sqrt(eps) boundary layer at the edges.
        let p2 = if params.is_special() {
            0.0
        } else {
            ((one_minus_2c + c * one_minus_s) * (one_minus_2c + c * one_plus_s)).max(0.0)
        };
        let p1 = (1.0 + c * one_plus_s) * (1.0 + c * one_minus_s);
        let (sp1, sp2) = (p1.sqrt(), p2.sqrt());
        Geometry {
            c,
            sin_nu,
            cos_nu,
            root_gap: sp1 * sp2,
            h_star: 2.0 * c / (sp1 + sp2),
        }
    }

    /// `h*^2 - x^2`, clamped at zero.
    fn inner(&self, x: f64) -> f64 {
        let ax = x.abs();
        ((self.h_star - ax) * (self.h_star + ax)).max(0.0)
    }

    /// `sqrt(xi)` given `inner = h*^2 - x^2`.
    fn sqrt_xi(&self, inner: f64) -> f64 {
        (inner * (self.root_gap + inner)).sqrt()
    }

    /// `eta_pm` given `x` and `inner = h*^2 - x^2`.
    ///
    /// `A(x) = 1 - c^2(1 + sin^2 nu) - (1 - c^2 cos^2 nu) x^2` is evaluated as
    /// `(1 - h*^2) sqrt(P1 P2) + (1 - c^2 cos^2 nu)(h*^2 - x^2)`, a sum of
    /// nonnegative terms (the first is `A(h*)`, from `eta_+ eta_- = A^2 -
    /// 4c^2 sin^2(nu) xi = (1 - x^2)^2 P1 P2` at `xi = 0`). The larger branch is
    /// `A + 2c|sin nu| sqrt(xi)`; the smaller is the product divided by it.
    fn eta(&self, x: f64, inner: f64, branch: Branch) -> f64 {
        let cc = self.c * self.cos_nu;
        let base =
            (1.0 - self.h_star * self.h_star) * self.root_gap + (1.0 - cc) * (1.0 + cc) * inner;
        let cross = 2.0 * self.c * self.sin_nu * self.sqrt_xi(inner);
        let big = base + cross.abs();
        if branch.sign() * cross >= 0.0 {
            return big;
        }
        if big == 0.0 {
            return 0.0;
        }
        let w = (1.0 - x * x) * self.root_gap;
        w * w / big
    }

    /// Integrand of the general density, `theta` in `[-pi/2, pi/2]`.
    fn theorem1_theta(&self, theta: f64, coeff: f64) -> f64 {
        let (st, ct) = theta.sin_cos();
        let x = self.h_star * st;
        let ct = ct.max(0.0);
        let inner = self.h_star * self.h_star * ct * ct;
        let upper = self.root_gap + inner;
        if upper <= 0.0 {
            return 0.0;
        }
        let num =
            self.eta(x, inner, Branch::Plus).sqrt() + self.eta(x, inner, Branch::Minus).sqrt();
        num * (1.0 + coeff * x) / (2.0 * PI * (1.0 - x * x) * upper.sqrt())
    }
}

/// `xi(x) = (rho^2 - x^2)(rho0^2 - x^2) - rho^2 rho0^2 cos^2(nu) x^2`.
pub fn xi(x: f64, params: &WalkParams) -> f64 {
    let (r2, r02) = (params.rho().powi(2), params.rho0().powi(2));
    let x2 = x * x;
    (r2 - x2) * (r02 - x2) - r2 * r02 * params.nu().cos().powi(2) * x2
}

/// `eta_pm(x) = 1 - c^2(1 + sin^2 nu) - (1 - c^2 cos^2 nu) x^2 +- 2 c sin(nu) sqrt(xi(x))`.
///
/// Defined for `|x| <= h*`. On the special set one branch vanishes identically.
pub fn eta_pm(x: f64, params: &WalkParams, branch: Branch) -> Result<f64> {
    let g = Geometry::new(params);
    if !(x.abs() <= g.h_star) {
        return Err(Error::OutOfSupport {
            x,
            xi: xi(x, params),
        });
    }
    Ok(g.eta(x, g.inner(x), branch))
}

/// Slope of the affine weight `gamma(x) = 1 + slope * x`.
pub fn gamma_coefficient(params: &WalkParams, coin: &CoinSpinor) -> f64 {
    let ab = coin.cross();
    let (s, c) = params.nu().sin_cos();
    coin.a0.norm_sqr()
        - coin.a1.norm_sqr()
        - 2.0 * params.rho0() / params.rho() * (ab.re * c - ab.im * s)
}

pub fn gamma_weight(x: f64, params: &WalkParams, coin: &CoinSpinor) -> f64 {
    1.0 + gamma_coefficient(params, coin) * x
}

/// Half-width of the support of the general density,
/// `h* = (sqrt((1+c)^2 - c^2 sin^2 nu) - sqrt((1-c)^2 - c^2 sin^2 nu)) / 2`,
/// evaluated as `2c / (sqrt(P1) + sqrt(P2))`.
pub fn support_hstar(params: &WalkParams) -> f64 {
    Geometry::new(params).h_star
}

/// Maximizer of `h(nu; k)` on `[-pi/2, pi/2]`.
///
/// `sin k* = -2 c^2 sin(nu) / (sqrt(P1 P2) + 1 - c^2 (1 + sin^2 nu))`, an
/// algebraically equivalent rewrite of the arcsine argument that stays finite
/// as `sin nu -> 0` and gives `k* = 0` there.
pub fn kstar(params: &WalkParams) -> f64 {
    let g = Geometry::new(params);
    let c2 = g.c * g.c;
    let q = 1.0 - c2 * (1.0 + g.sin_nu * g.sin_nu);
    let arg = -2.0 * c2 * g.sin_nu / (g.root_gap + q);
    arg.clamp(-1.0, 1.0).asin()
}

fn check_inside(g: &Geometry, x: f64, params: &WalkParams) -> Result<()> {
    if x.abs() >= g.h_star {
        return Err(Error::OutOfSupport {
            x,
            xi: xi(x, params),
        });
    }
    Ok(())
}

/// Principal-branch solutions of `h(nu; k) = |x|`:
/// `k_pm(x) = arcsin((-c sin(nu) x^2 +- sqrt(xi)) / (c (1 - x^2)))`.
pub fn k_pm(x: f64, params: &WalkParams, branch: Branch) -> Result<f64> {
    let g = Geometry::new(params);
    check_inside(&g, x, params)?;
    let arg =
        (-g.c * g.sin_nu * x * x + branch.sign() * g.sqrt_xi(g.inner(x))) / (g.c * (1.0 - x * x));
    Ok(arg.clamp(-1.0, 1.0).asin())
}

/// Derivative of [`k_pm`]. For `x > 0` this is
/// `-+ sqrt(eta_pm) / ((1 - x^2) sqrt(xi))`; `k_pm` is even in `x`, so the
/// sign flips for `x < 0`. At `x = 0` the right derivative is returned.
pub fn dk_pm_dx(x: f64, params: &WalkParams, branch: Branch) -> Result<f64> {
    let g = Geometry::new(params);
    check_inside(&g, x, params)?;
    let inner = g.inner(x);
    let d = -branch.sign() * g.eta(x, inner, branch).sqrt() / ((1.0 - x * x) * g.sqrt_xi(inner));
    Ok(if x < 0.0 { -d } else { d })
}

/// `F_{i,pm}(nu_arg; k)` for `i` in `0..=3`.
pub fn f_helper(i: usize, branch: Branch, nu_arg: f64, k: f64, params: &WalkParams) -> Result<f64> {
    let (rho, rho0) = (params.rho(), params.rho0());
    let c = rho * rho0;
    let d = c * (k.sin() - nu_arg.sin());
    let root = (1.0 - d * d).sqrt();
    let s = branch.sign();
    match i {
        0 => Ok(0.5 - s * c * (k.cos() + nu_arg.cos()) / (2.0 * root)),
        1 => Ok(0.5 + s * c * (k.cos() + nu_arg.cos()) / (2.0 * root)),
        2 => Ok(s * (rho0 * rho0 * k.cos() - rho * rho * nu_arg.cos()) / root),
        3 => Ok(s * (rho0 * rho0 * k.sin() + rho * rho * nu_arg.sin()) / root),
        _ => Err(Error::InvalidParameter(format!(
            "helper index {i} not in 0..=3"
        ))),
    }
}

/// Limit moment `sum_j int (i lambda_j'/lambda_j)^r |<v_j|phi~>|^2 dk / 2pi`
/// computed directly in momentum space.
///
/// The integrand is smooth and periodic off the special set, so the
/// rectangle rule converges geometrically; the node count doubles until two
/// successive estimates agree to 1e-14.
pub fn asymptotic_moment_fourier(r: u32, params: &WalkParams, coin: &CoinSpinor) -> Result<f64> {
    if params.is_special() {
        return Err(Error::DegenerateNormalization {
            k: -params.nu(),
            j: 1,
            norm: 0.0,
        });
    }
    coin.validate()?;
    let phi = shifted_spinor(*coin, params);
    let term = |k: f64| -> Result<f64> {
        let h = group_velocity_h(k, params);
        let w = spectral_weights(k, params, phi)?;
        Ok((-h).powi(r as i32) * w[0] + h.powi(r as i32) * w[1])
    };
    let mut m = 64usize;
    let mut sum = 0.0;
    for i in 0..m {
        sum += term(-PI + 2.0 * PI * i as f64 / m as f64)?;
    }
    let mut value = sum / m as f64;
    while m < 1 << 20 {
        // add the midpoints
        for i in 0..m {
            sum += term(-PI + 2.0 * PI * (i as f64 + 0.5) / m as f64)?;
        }
        m *= 2;
        let next = sum / m as f64;
        let done = (next - value).abs() < 1e-14;
        value = next;
        if done {
            break;
        }
    }
    Ok(value)
}

/// Which limit law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawKind {
    Theorem1,
    Standard { n: i64 },
    CmvOnly,
}

impl std::fmt::Display for LawKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LawKind::Theorem1 => f.write_str("theorem1"),
            LawKind::Standard { n } => write!(f, "standard(n={n})"),
            LawKind::CmvOnly => f.write_str("cmv_only"),
        }
    }
}

/// Leading coefficient convention for the standard weight `Theta_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientForm {
    /// `|alpha|^2 - |beta|^2 + (-1)^n 2 Im(alpha conj(beta))`
    Difference,
    /// `|alpha|^2 + |beta|^2 + (-1)^n 2 Im(alpha conj(beta))`
    Sum,
}

pub fn standard_coefficient(coin: &CoinSpinor, n: i64, form: CoefficientForm) -> f64 {
    let lead = match form {
        CoefficientForm::Difference => coin.a0.norm_sqr() - coin.a1.norm_sqr(),
        CoefficientForm::Sum => coin.a0.norm_sqr() + coin.a1.norm_sqr(),
    };
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    lead + parity * 2.0 * coin.cross().im
}

/// Slope of `Delta(x)` for the `V`-only law.
pub fn cmv_coefficient(params: &WalkParams, coin: &CoinSpinor) -> f64 {
    let ab = coin.cross();
    let (s, c) = params.nu().sin_cos();
    coin.a0.norm_sqr()
        - coin.a1.norm_sqr()
        - 2.0 * params.rho() / params.rho0() * (ab.re * c + ab.im * s)
}

/// An analytic limit density with its support and linear weight.
#[derive(Debug, Clone)]
pub struct LimitDensity {
    kind: LawKind,
    params: WalkParams,
    coin: CoinSpinor,
    support_hi: f64,
    coeff: f64,
    geometry: Geometry,
    quad: TanhSinh,
}

impl LimitDensity {
    pub fn new(kind: LawKind, params: WalkParams, coin: CoinSpinor) -> Result<Self> {
        coin.validate()?;
        let geometry = Geometry::new(&params);
        let (support_hi, coeff) = match kind {
            LawKind::Theorem1 => (geometry.h_star, gamma_coefficient(&params, &coin)),
            LawKind::Standard { n } => {
                match params.special_index() {
                    Some(m) if m == n.rem_euclid(2) => {}
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "standard law with n = {n} needs (rho, nu) = (1/sqrt2, pi/2 + n pi), got ({}, {})",
                            params.rho(),
                            params.nu()
                        )))
                    }
                }
                (
                    std::f64::consts::FRAC_1_SQRT_2,
                    standard_coefficient(&coin, n, CoefficientForm::Difference),
                )
            }
            LawKind::CmvOnly => (params.rho0(), cmv_coefficient(&params, &coin)),
        };
        Ok(LimitDensity {
            kind,
            params,
            coin,
            support_hi,
            coeff,
            geometry,
            quad: TanhSinh::default(),
        })
    }

    /// Same law with the slope of its linear weight replaced.
    pub fn with_coefficient(mut self, coeff: f64) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    pub fn coin(&self) -> &CoinSpinor {
        &self.coin
    }

    pub fn support_hi(&self) -> f64 {
        self.support_hi
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    /// Density at `x`; zero outside the open support.
    pub fn density(&self, x: f64) -> f64 {
        let s = self.support_hi;
        let ax = x.abs();
        if !(ax < s) {
            return 0.0;
        }
        let weight = 1.0 + self.coeff * x;
        match self.kind {
            LawKind::Theorem1 => {
                let g = &self.geometry;
                let inner = g.inner(x);
                let sx = g.sqrt_xi(inner);
                if sx <= 0.0 {
                    return 0.0;
                }
                let num =
                    g.eta(x, inner, Branch::Plus).sqrt() + g.eta(x, inner, Branch::Minus).sqrt();
                num * weight / (2.0 * PI * (1.0 - x * x) * sx)
            }
            LawKind::Standard { .. } => {
                // 1 - 2x^2 = 2 (s - |x|)(s + |x|) with s = 1/sqrt2
                let root = (2.0 * (s - ax) * (s + ax)).sqrt();
                weight / (PI * (1.0 - x * x) * root)
            }
            LawKind::CmvOnly => {
                let root = ((s - ax) * (s + ax)).sqrt();
                self.params.rho() * weight / (PI * (1.0 - x * x) * root)
            }
        }
    }

    /// `density(s sin theta) * s cos theta`, bounded on `[-pi/2, pi/2]`.
    pub fn theta_integrand(&self, theta: f64) -> f64 {
        let x = self.support_hi * theta.sin();
        let weight = 1.0 + self.coeff * x;
        match self.kind {
            LawKind::Theorem1 => self.geometry.theorem1_theta(theta, self.coeff),
            LawKind::Standard { .. } => weight / (std::f64::consts::SQRT_2 * PI * (1.0 - x * x)),
            LawKind::CmvOnly => self.params.rho() * weight / (PI * (1.0 - x * x)),
        }
    }

    fn theta_of(&self, x: f64) -> f64 {
        (x / self.support_hi).clamp(-1.0, 1.0).asin()
    }

    /// `int_{-s}^{x} density`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -self.support_hi {
            return 0.0;
        }
        let upper = if x >= self.support_hi {
            FRAC_PI_2
        } else {
            self.theta_of(x)
        };
        self.quad
            .integrate(|th| self.theta_integrand(th), -FRAC_PI_2, upper)
            .value
    }

    /// `int x^r density`.
    pub fn moment(&self, r: u32) -> f64 {
        let s = self.support_hi;
        self.quad
            .integrate(
                |th| (s * th.sin()).powi(r as i32) * self.theta_integrand(th),
                -FRAC_PI_2,
                FRAC_PI_2,
            )
            .value
    }

    /// `int density`, ideally 1.
    pub fn total_mass(&self) -> f64 {
        self.moment(0)
    }
}
