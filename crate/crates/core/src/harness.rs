//! Finite-time simulation against the analytic limit laws.
//!
//! "Empirical" quantities here are exact finite-`t` probabilities, never
//! sampled trajectories. Rescaled positions are `x / t`; at `t = 0` the
//! unscaled position is used.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::{LawKind, LimitDensity};
use crate::params::{CoinSpinor, Variant, WalkParams};
use crate::quad::TanhSinh;
use crate::walk::{distribution, evolve, Distribution};

/// Number of grid points in a [`LimitCdf`] table.
pub const CDF_GRID: usize = 4096;

/// Width of the moving average in [`ComparisonReport::smoothed_mad`].
pub const SMOOTHING_WIDTH: usize = 5;

/// Moment orders reported by [`run_comparison`].
pub const MOMENT_ORDERS: [u32; 3] = [1, 2, 3];

fn scale(t: usize) -> f64 {
    t.max(1) as f64
}

/// `sum_x (x/t)^r P(X_t = x)`.
pub fn empirical_moment(dist: &Distribution, t: usize, r: u32) -> f64 {
    let s = scale(t);
    dist.iter()
        .map(|(x, p)| (x as f64 / s).powi(r as i32) * p)
        .sum()
}

/// Tabulated limit CDF.
///
/// The table is uniform in `theta` with `x = s sin(theta)`, where the CDF is
/// smooth with the bounded derivative [`LimitDensity::theta_integrand`].
/// Between nodes it is interpolated by monotone cubic Hermite segments.
#[derive(Debug, Clone)]
pub struct LimitCdf {
    support_hi: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl LimitCdf {
    pub fn new(law: &LimitDensity) -> Self {
        let n = CDF_GRID;
        let step = PI / (n - 1) as f64;
        let theta = |i: usize| -FRAC_PI_2 + step * i as f64;
        let quad = TanhSinh::new(1e-15);
        let mut values = Vec::with_capacity(n);
        let mut acc = 0.0;
        values.push(0.0);
        for i in 1..n {
            acc += quad
                .integrate(|th| law.theta_integrand(th), theta(i - 1), theta(i))
                .value;
            values.push(acc);
        }
        let mut slopes: Vec<f64> = (0..n)
            .map(|i| law.theta_integrand(theta(i)).max(0.0))
            .collect();
        // Fritsch-Carlson limiter keeps every segment monotone.
        for i in 0..n - 1 {
            let secant = (values[i + 1] - values[i]) / step;
            if secant <= 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let (a, b) = (slopes[i] / secant, slopes[i + 1] / secant);
            let r = a.hypot(b);
            if r > 3.0 {
                slopes[i] = 3.0 * a / r * secant;
                slopes[i + 1] = 3.0 * b / r * secant;
            }
        }
        LimitCdf {
            support_hi: law.support_hi(),
            step,
            values,
            slopes,
        }
    }

    pub fn support_hi(&self) -> f64 {
        self.support_hi
    }

    /// Total mass captured by the table.
    pub fn total(&self) -> f64 {
        *self.values.last().unwrap_or(&0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s = self.support_hi;
        if x <= -s {
            return 0.0;
        }
        if x >= s {
            return self.total();
        }
        let th = (x / s).asin() + FRAC_PI_2;
        let last = self.values.len() - 2;
        let i = ((th / self.step).floor() as usize).min(last);
        let u = (th - self.step * i as f64) / self.step;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.step, self.slopes[i + 1] * self.step);
        let u2 = u * u;
        let u3 = u2 * u;
        let v = (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * m1;
        v.clamp(y0.min(y1), y0.max(y1))
    }
}

/// `sup_x |F_emp(x) - F_limit(x)|` over rescaled positions.
pub fn kolmogorov_distance(dist: &Distribution, t: usize, law: &LimitDensity) -> f64 {
    kolmogorov_distance_with(dist, t, &LimitCdf::new(law))
}

/// As [`kolmogorov_distance`] with a prebuilt table.
///
/// The limit CDF is continuous and the empirical one is a step function, so
/// the supremum is attained on either side of a jump.
pub fn kolmogorov_distance_with(dist: &Distribution, t: usize, cdf: &LimitCdf) -> f64 {
    let s = scale(t);
    let mut below = 0.0;
    let mut sup: f64 = 0.0;
    for (x, p) in dist.iter() {
        let f = cdf.eval(x as f64 / s);
        let above = below + p;
        sup = sup.max((below - f).abs()).max((above - f).abs());
        below = above;
    }
    sup.min(1.0)
}

/// `density(x/t)/t` at every site of `x_min..=x_max`.
pub fn rescaled_density_points(
    law: &LimitDensity,
    t: usize,
    x_min: i64,
    x_max: i64,
) -> Vec<(i64, f64)> {
    let s = scale(t);
    (x_min..=x_max)
        .map(|x| (x, law.density(x as f64 / s) / s))
        .collect()
}

/// Centred moving average of `values` over `width` sites, zero outside.
pub fn moving_average(values: &[f64], width: usize) -> Vec<f64> {
    let half = (width / 2) as isize;
    let n = values.len() as isize;
    (0..n)
        .map(|i| {
            let lo = (i - half).max(0);
            let hi = (i + half).min(n - 1);
            (lo..=hi).map(|j| values[j as usize]).sum::<f64>() / width as f64
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentError {
    pub r: u32,
    pub empirical: f64,
    pub limit: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RescaledPoint {
    pub x: i64,
    pub approx: f64,
    pub simulated: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub t: usize,
    pub variant: Variant,
    pub law: LawKind,
    pub params: WalkParams,
    pub coin: CoinSpinor,
    pub ks_distance: f64,
    pub moment_errors: Vec<MomentError>,
    pub smoothing_width: usize,
    /// Mean absolute deviation between `approx` and the moving average of `simulated`.
    pub smoothed_mad: f64,
    pub rescaled_points: Vec<RescaledPoint>,
}

pub fn check_consistent(variant: Variant, law: LawKind) -> Result<()> {
    match (variant, law) {
        (Variant::Full, LawKind::Theorem1 | LawKind::Standard { .. })
        | (Variant::CmvOnly, LawKind::CmvOnly) => Ok(()),
        _ => Err(Error::InconsistentLaw {
            law: law.to_string(),
            variant: variant.to_string(),
        }),
    }
}

/// Scores an already evolved distribution.
pub fn compare_distribution(
    dist: &Distribution,
    t: usize,
    variant: Variant,
    law: &LimitDensity,
) -> Result<ComparisonReport> {
    check_consistent(variant, law.kind())?;
    let ks_distance = kolmogorov_distance(dist, t, law);
    let moment_errors = MOMENT_ORDERS
        .iter()
        .map(|&r| {
            let empirical = empirical_moment(dist, t, r);
            let limit = law.moment(r);
            MomentError {
                r,
                empirical,
                limit,
                abs_error: (empirical - limit).abs(),
            }
        })
        .collect();
    let approx = rescaled_density_points(law, t, dist.x_min, dist.x_max());
    let smooth = moving_average(&dist.probs, SMOOTHING_WIDTH);
    let smoothed_mad = approx
        .iter()
        .zip(&smooth)
        .map(|((_, a), m)| (a - m).abs())
        .sum::<f64>()
        / approx.len() as f64;
    let rescaled_points = approx
        .iter()
        .zip(&dist.probs)
        .map(|(&(x, approx), &simulated)| RescaledPoint {
            x,
            approx,
            simulated,
        })
        .collect();
    Ok(ComparisonReport {
        t,
        variant,
        law: law.kind(),
        params: *law.params(),
        coin: *law.coin(),
        ks_distance,
        moment_errors,
        smoothing_width: SMOOTHING_WIDTH,
        smoothed_mad,
        rescaled_points,
    })
}

pub fn run_comparison(
    params: WalkParams,
    coin: CoinSpinor,
    t: usize,
    variant: Variant,
    law: LawKind,
) -> Result<ComparisonReport> {
    check_consistent(variant, law)?;
    let density = LimitDensity::new(law, params, coin)?;
    let state = evolve(coin, &params, t, variant)?;
    compare_distribution(&distribution(&state), t, variant, &density)
}

/// One point of the regression grid.
#[derive(Debug, Clone, Copy)]
pub struct RegressionCase {
    pub label: &'static str,
    pub params: WalkParams,
    pub coin: CoinSpinor,
    pub variant: Variant,
    pub law: LawKind,
}

/// The three figure configurations, each with the coins `(1/sqrt2, i/sqrt2)` and `(1, 0)`.
pub fn regression_grid() -> Vec<RegressionCase> {
    let configs = [
        (
            "special",
            FRAC_PI_2,
            Variant::Full,
            LawKind::Standard { n: 0 },
        ),
        ("quarter", FRAC_PI_4, Variant::Full, LawKind::Theorem1),
        ("quarter-cmv", FRAC_PI_4, Variant::CmvOnly, LawKind::CmvOnly),
    ];
    let mut out = Vec::new();
    for (label, nu, variant, law) in configs {
        for coin in [CoinSpinor::symmetric(), CoinSpinor::up()] {
            out.push(RegressionCase {
                label,
                params: WalkParams::new(FRAC_1_SQRT_2, nu).expect("valid"),
                coin,
                variant,
                law,
            });
        }
    }
    out
}
