//! Which leading coefficient in the standard weight matches simulation:
//! |alpha|^2 - |beta|^2 or |alpha|^2 + |beta|^2.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use cmv_qwalk::error::Result;
use cmv_qwalk::harness::empirical_moment;
use cmv_qwalk::law::{standard_coefficient, CoefficientForm, LawKind, LimitDensity};
use cmv_qwalk::params::{CoinSpinor, Variant, WalkParams};
use cmv_qwalk::walk::{distribution, evolve};

pub fn run(t: usize) -> Result<(f64, f64, f64)> {
    let params = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_2)?;
    let coin = CoinSpinor::symmetric();
    let simulated = empirical_moment(
        &distribution(&evolve(coin, &params, t, Variant::Full)?),
        t,
        1,
    );
    let law = LimitDensity::new(LawKind::Standard { n: 0 }, params, coin)?;
    let minus = law
        .clone()
        .with_coefficient(standard_coefficient(&coin, 0, CoefficientForm::Difference))
        .moment(1);
    let plus = law
        .with_coefficient(standard_coefficient(&coin, 0, CoefficientForm::Sum))
        .moment(1);
    println!("simulated E[X_t/t] at t = {t}: {simulated:+.5}");
    println!("difference form:              {minus:+.5}");
    println!("sum form:                     {plus:+.5}");
    Ok((simulated, minus, plus))
}

fn main() -> Result<()> {
    run(500).map(|_| ())
}
