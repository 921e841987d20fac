//! Same walk computed in momentum space: closed-form eigensystem of the
//! shifted symbol and an inverse FFT back to positions.

use cmv_qwalk::error::Result;
use cmv_qwalk::fourier::{eigensystem, evolve_fourier, shifted_matrix_htilde};
use cmv_qwalk::params::{CoinSpinor, Variant, WalkParams};
use cmv_qwalk::walk::{distribution, evolve};

pub fn run(t: usize) -> Result<f64> {
    let params = WalkParams::new(0.45, 0.9)?;
    let coin = CoinSpinor::symmetric();

    let mut worst = 0.0f64;
    for i in 0..1000 {
        let k = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / 1000.0;
        let es = eigensystem(k, &params)?;
        worst = worst.max(
            es.reconstruct()
                .max_abs_diff(&shifted_matrix_htilde(k, &params)),
        );
    }
    println!("max |sum_j lambda_j P_j - H(k)| over 1000 momenta: {worst:.2e}");

    let mut tv_max = 0.0f64;
    for variant in [Variant::Full, Variant::CmvOnly] {
        let direct = distribution(&evolve(coin, &params, t, variant)?);
        let spectral = distribution(&evolve_fourier(coin, &params, t, variant)?);
        let tv = direct.total_variation(&spectral);
        println!("{variant:>8}: total variation between pictures at t = {t}: {tv:.2e}");
        tv_max = tv_max.max(tv);
    }
    Ok(tv_max)
}

fn main() -> Result<()> {
    run(200).map(|_| ())
}
