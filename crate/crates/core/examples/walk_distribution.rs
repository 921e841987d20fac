//! Evolve the walk to t = 500 and summarize the position distribution.
//!
//! Run with `cargo run --release --example walk_distribution`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use cmv_qwalk::error::Result;
use cmv_qwalk::params::{CoinSpinor, Variant, WalkParams};
use cmv_qwalk::walk::{distribution, evolve};

pub struct Summary {
    pub total: f64,
    pub mean: f64,
    pub sites: usize,
}

pub fn run(t: usize) -> Result<Summary> {
    let params = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_2)?;
    let state = evolve(CoinSpinor::symmetric(), &params, t, Variant::Full)?;
    let dist = distribution(&state);
    let mean = dist.iter().map(|(x, p)| x as f64 * p).sum::<f64>();
    // the two ballistic peaks
    let (mut left, mut right) = ((0, 0.0), (0, 0.0));
    for (x, p) in dist.iter() {
        if x < 0 && p > left.1 {
            left = (x, p);
        }
        if x > 0 && p > right.1 {
            right = (x, p);
        }
    }
    println!("t = {t}, sites {}..={}", dist.x_min, dist.x_max());
    println!("total probability {:.15}", dist.total());
    println!(
        "mean position {mean:.4} (x/t = {:.4})",
        mean / t.max(1) as f64
    );
    println!(
        "peaks at x = {} (p = {:.5}) and x = {} (p = {:.5})",
        left.0, left.1, right.0, right.1
    );
    Ok(Summary {
        total: dist.total(),
        mean,
        sites: dist.probs.len(),
    })
}

fn main() -> Result<()> {
    run(500).map(|_| ())
}
