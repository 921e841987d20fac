//! Moments of the limit density against the same moments computed from the
//! group velocity and spectral weights in momentum space.

use cmv_qwalk::error::Result;
use cmv_qwalk::law::{asymptotic_moment_fourier, LawKind, LimitDensity};
use cmv_qwalk::params::{CoinSpinor, WalkParams};

pub fn run() -> Result<f64> {
    let coin = CoinSpinor::symmetric();
    let mut worst = 0.0f64;
    for (rho, nu) in [(0.6, 1.0), (0.3, 2.2), (0.85, -0.7)] {
        let params = WalkParams::new(rho, nu)?;
        let law = LimitDensity::new(LawKind::Theorem1, params, coin)?;
        for r in 0..4 {
            let a = law.moment(r);
            let b = asymptotic_moment_fourier(r, &params, &coin)?;
            worst = worst.max((a - b).abs());
            println!(
                "rho={rho} nu={nu} r={r}: density {a:+.12}  momentum {b:+.12}  diff {:.1e}",
                (a - b).abs()
            );
        }
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
