//! Kolmogorov distance and moment errors for the regression grid at two times.

use cmv_qwalk::error::Result;
use cmv_qwalk::harness::{regression_grid, run_comparison};

pub fn run(times: &[usize]) -> Result<Vec<Vec<f64>>> {
    let mut table = Vec::new();
    for case in regression_grid() {
        let mut row = Vec::new();
        for &t in times {
            let r = run_comparison(case.params, case.coin, t, case.variant, case.law)?;
            println!(
                "{:<12} coin=({:.3},{:.3}i) t={t:<4} ks={:.4}  |m1 err|={:.2e}  mad={:.2e}",
                case.label,
                case.coin.a0.re,
                case.coin.a1.im,
                r.ks_distance,
                r.moment_errors[0].abs_error,
                r.smoothed_mad
            );
            row.push(r.ks_distance);
        }
        table.push(row);
    }
    Ok(table)
}

fn main() -> Result<()> {
    run(&[100, 500]).map(|_| ())
}
