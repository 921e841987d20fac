//! h*(rho, nu) on a coarse grid, printed as a table.

use std::f64::consts::PI;

use cmv_qwalk::error::Result;
use cmv_qwalk::law::support_hstar;
use cmv_qwalk::params::WalkParams;

pub fn run() -> Result<Vec<Vec<f64>>> {
    let rhos = [0.1, 0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.9];
    let nus: Vec<f64> = (0..=8).map(|j| j as f64 * PI / 8.0).collect();
    print!("{:>8}", "rho\\nu");
    for nu in &nus {
        print!("{:>8.3}", nu);
    }
    println!();
    let mut surface = Vec::new();
    for rho in rhos {
        print!("{rho:>8.4}");
        let mut row = Vec::new();
        for &nu in &nus {
            let h = support_hstar(&WalkParams::new(rho, nu)?);
            print!("{h:>8.4}");
            row.push(h);
        }
        println!();
        surface.push(row);
    }
    Ok(surface)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
