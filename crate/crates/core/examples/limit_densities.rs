//! The three limit densities, their supports and normalization.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use cmv_qwalk::error::Result;
use cmv_qwalk::law::{LawKind, LimitDensity};
use cmv_qwalk::params::{CoinSpinor, WalkParams};

pub fn run() -> Result<Vec<f64>> {
    let coin = CoinSpinor::symmetric();
    let laws = [
        LimitDensity::new(
            LawKind::Standard { n: 0 },
            WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_2)?,
            coin,
        )?,
        LimitDensity::new(
            LawKind::Theorem1,
            WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_4)?,
            coin,
        )?,
        LimitDensity::new(
            LawKind::CmvOnly,
            WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_4)?,
            coin,
        )?,
        LimitDensity::new(
            LawKind::Theorem1,
            WalkParams::new(0.3, 2.0)?,
            CoinSpinor::up(),
        )?,
    ];
    let mut masses = Vec::new();
    for law in &laws {
        let s = law.support_hi();
        let mass = law.total_mass();
        println!(
            "{:<14} rho={:.4} nu={:.4}  support (-{s:.6}, {s:.6})  slope {:+.4}  mass {mass:.12}",
            law.kind().to_string(),
            law.params().rho(),
            law.params().nu(),
            law.coeff()
        );
        for x in [-0.9 * s, -0.5 * s, 0.0, 0.5 * s, 0.9 * s] {
            println!("    f({x:+.4}) = {:.6}", law.density(x));
        }
        masses.push(mass);
    }
    Ok(masses)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
