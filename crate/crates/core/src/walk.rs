//! Position-space evolution.
//!
//! The state is stored densely over the reachable window `[-t, t]`. The
//! full operator is applied through its factorization into two local coins
//! and two conditional shifts,
//!
//! ```text
//! U = S_1 . C_a . S_0 . C_b
//! ```
//!
//! where `S_0` moves the `|0>` component one site to the right and `S_1`
//! moves the `|1>` component one site to the left. The CMV factor `V` is
//! applied through its own three-term stencil.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::{CoinSpinor, Variant, WalkParams};

pub type Amp = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Amplitudes of the walk at a fixed time over a contiguous lattice window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveState {
    pub time: usize,
    pub x_min: i64,
    pub amps: Vec<Amp>,
}

impl WaveState {
    pub fn x_max(&self) -> i64 {
        self.x_min + self.amps.len() as i64 - 1
    }

    pub fn amp(&self, x: i64) -> Amp {
        let i = x - self.x_min;
        if i < 0 || i >= self.amps.len() as i64 {
            [ZERO, ZERO]
        } else {
            self.amps[i as usize]
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .sum()
    }

    /// Applies `U_f` (the coin swap) at every site.
    pub fn swap_coin(&mut self) {
        for a in &mut self.amps {
            a.swap(0, 1);
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.amps.len() as i64).map(move |i| self.x_min + i)
    }
}

/// `P(X_t = x)` over a contiguous window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub x_min: i64,
    pub probs: Vec<f64>,
}

impl Distribution {
    pub fn x_max(&self) -> i64 {
        self.x_min + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, x: i64) -> f64 {
        let i = x - self.x_min;
        if i < 0 || i >= self.probs.len() as i64 {
            0.0
        } else {
            self.probs[i as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.x_min + i as i64, p))
    }

    /// Half the L1 distance, over the union of both windows.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        let lo = self.x_min.min(other.x_min);
        let hi = self.x_max().max(other.x_max());
        0.5 * (lo..=hi)
            .map(|x| (self.prob(x) - other.prob(x)).abs())
            .sum::<f64>()
    }
}

/// Point mass at the origin with internal state `coin`.
pub fn initial_state(coin: CoinSpinor) -> Result<WaveState> {
    coin.validate()?;
    Ok(WaveState {
        time: 0,
        x_min: 0,
        amps: vec![[coin.a0, coin.a1]],
    })
}

fn apply_coin(m: &[[Complex64; 2]; 2], a: &mut Amp) {
    let (u, v) = (a[0], a[1]);
    a[0] = m[0][0] * u + m[0][1] * v;
    a[1] = m[1][0] * u + m[1][1] * v;
}

/// The two local coins of the factorized `U`, `(C_b, C_a)` in application order.
fn factor_coins(params: &WalkParams) -> ([[Complex64; 2]; 2], [[Complex64; 2]; 2]) {
    let (rho, rho0) = (params.rho(), params.rho0());
    let e = Complex64::from_polar(1.0, params.nu() / 2.0);
    let ec = e.conj();
    let first = [[-rho * e, rho0 * ec], [-rho0 * e, -rho * ec]];
    let second = [[rho0 * e, rho * e], [rho * ec, -rho0 * ec]];
    (first, second)
}

/// One application of `U`.
pub fn step_full(state: &WaveState, params: &WalkParams) -> WaveState {
    let (c_first, c_second) = factor_coins(params);
    let n = state.amps.len();
    let mut buf = vec![[ZERO, ZERO]; n + 2];
    buf[1..=n].copy_from_slice(&state.amps);

    for a in &mut buf[1..=n] {
        apply_coin(&c_first, a);
    }
    // |x><x| (x) |0><0| shifted to |x+1>
    for i in (1..buf.len()).rev() {
        buf[i][0] = buf[i - 1][0];
    }
    buf[0][0] = ZERO;
    for a in &mut buf {
        apply_coin(&c_second, a);
    }
    // |1> component moves to x-1
    for i in 0..buf.len() - 1 {
        buf[i][1] = buf[i + 1][1];
    }
    buf[n + 1][1] = ZERO;

    WaveState {
        time: state.time + 1,
        x_min: state.x_min - 1,
        amps: buf,
    }
}

/// Blocks `(A_-, A_0, A_+)` of `V = sum_x |x-1><x| A_- + |x><x| A_0 + |x+1><x| A_+`.
pub(crate) fn cmv_blocks(params: &WalkParams) -> [[[Complex64; 2]; 2]; 3] {
    let rho0 = params.rho0();
    let a0 = params.alpha0();
    let r2 = Complex64::new(params.rho() * params.rho(), 0.0);
    let r02 = Complex64::new(rho0 * rho0, 0.0);
    let up = rho0 * a0.conj();
    let down = -a0 * rho0;
    [
        [[ZERO, ZERO], [up, r02]],
        [[-r2, down], [up, -r2]],
        [[r02, down], [ZERO, ZERO]],
    ]
}

/// One application of the CMV factor `V` alone.
pub fn step_cmv_only(state: &WaveState, params: &WalkParams) -> WaveState {
    let [left, stay, right] = cmv_blocks(params);
    let n = state.amps.len();
    let mut out = vec![[ZERO, ZERO]; n + 2];
    for (i, a) in state.amps.iter().enumerate() {
        // source site x = x_min + i maps to out index i + 1
        for (block, j) in [(&left, i), (&stay, i + 1), (&right, i + 2)] {
            let o = &mut out[j];
            o[0] += block[0][0] * a[0] + block[0][1] * a[1];
            o[1] += block[1][0] * a[0] + block[1][1] * a[1];
        }
    }
    WaveState {
        time: state.time + 1,
        x_min: state.x_min - 1,
        amps: out,
    }
}

pub fn step(state: &WaveState, params: &WalkParams, variant: Variant) -> WaveState {
    match variant {
        Variant::Full => step_full(state, params),
        Variant::CmvOnly => step_cmv_only(state, params),
    }
}

/// `t`-fold iteration from the localized initial state.
pub fn evolve(
    coin: CoinSpinor,
    params: &WalkParams,
    t: usize,
    variant: Variant,
) -> Result<WaveState> {
    let mut state = initial_state(coin)?;
    for _ in 0..t {
        state = step(&state, params, variant);
    }
    Ok(state)
}

/// Like [`evolve`], handing every intermediate state to `visit` (including `t = 0`).
pub fn evolve_with<F>(
    coin: CoinSpinor,
    params: &WalkParams,
    t: usize,
    variant: Variant,
    mut visit: F,
) -> Result<WaveState>
where
    F: FnMut(&WaveState),
{
    let mut state = initial_state(coin)?;
    visit(&state);
    for _ in 0..t {
        state = step(&state, params, variant);
        visit(&state);
    }
    Ok(state)
}

pub fn distribution(state: &WaveState) -> Distribution {
    Distribution {
        x_min: state.x_min,
        probs: state
            .amps
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Dense matrix of `U` on sites `lo..=hi`, assembled entry by entry from
    /// the three-term sum `|x-1><x| (x) B_- + |x><x| (x) B_0 + |x+1><x| (x) B_+`.
    /// Basis index is `2 (x - lo) + coin`.
    fn dense_u(p: &WalkParams, lo: i64, hi: i64) -> Vec<Vec<Complex64>> {
        let (r0, a0) = (p.rho0(), p.alpha0());
        let r2 = 1.0 - r0 * r0;
        let b_minus = [
            [c(0.0, 0.0), c(0.0, 0.0)],
            [c(r0 * r0, 0.0), r0 * a0.conj()],
        ];
        let b_stay = [[-a0 * r0, c(-r2, 0.0)], [c(-r2, 0.0), r0 * a0.conj()]];
        let b_plus = [[-a0 * r0, c(r0 * r0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        dense_from_blocks(&[b_minus, b_stay, b_plus], lo, hi)
    }

    fn dense_from_blocks(
        blocks: &[[[Complex64; 2]; 2]; 3],
        lo: i64,
        hi: i64,
    ) -> Vec<Vec<Complex64>> {
        let n = (hi - lo + 1) as usize;
        let mut m = vec![vec![c(0.0, 0.0); 2 * n]; 2 * n];
        for x in 0..n as i64 {
            for (shift, b) in [(-1i64, &blocks[0]), (0, &blocks[1]), (1, &blocks[2])] {
                let y = x + shift;
                if y < 0 || y >= n as i64 {
                    continue;
                }
                for r in 0..2 {
                    for s in 0..2 {
                        m[2 * y as usize + r][2 * x as usize + s] += b[r][s];
                    }
                }
            }
        }
        m
    }

    fn matvec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Runs the dense oracle from a point mass at 0 over `[lo, hi]`.
    fn dense_evolve(m: &[Vec<Complex64>], lo: i64, coin: CoinSpinor, t: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); m.len()];
        v[2 * (-lo) as usize] = coin.a0;
        v[2 * (-lo) as usize + 1] = coin.a1;
        for _ in 0..t {
            v = matvec(m, &v);
        }
        v
    }

    fn max_dev(state: &WaveState, v: &[Complex64], lo: i64) -> f64 {
        let n = v.len() / 2;
        (0..n)
            .map(|i| {
                let a = state.amp(lo + i as i64);
                (a[0] - v[2 * i]).norm().max((a[1] - v[2 * i + 1]).norm())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn initial_state_contents() {
        let s = initial_state(CoinSpinor::up()).unwrap();
        assert_eq!(s.time, 0);
        assert_eq!(s.amps, vec![[c(1.0, 0.0), c(0.0, 0.0)]]);
        let s = initial_state(CoinSpinor::symmetric()).unwrap();
        assert_eq!(s.amp(0), [c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]);
        let bad = CoinSpinor::new(c(1.0, 0.0), c(1.0, 0.0));
        assert!(initial_state(bad).is_err());
    }

    #[test]
    fn first_step_distribution_hand_computed() {
        // From |0>: P(-1) = rho0^4, P(0) = rho^2 rho0^2 + rho^4 = rho^2, P(1) = rho^2 rho0^2.
        let p = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_2).unwrap();
        let d = distribution(&step_full(&initial_state(CoinSpinor::up()).unwrap(), &p));
        assert_eq!(d.x_min, -1);
        for (got, want) in d.probs.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15, "{:?}", d.probs);
        }
        let p = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_4).unwrap();
        let d = distribution(&step_cmv_only(
            &initial_state(CoinSpinor::up()).unwrap(),
            &p,
        ));
        for (got, want) in d.probs.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15, "{:?}", d.probs);
        }
    }

    #[test]
    fn factorized_step_matches_dense_five_diagonal_matrix() {
        let coin = CoinSpinor::new(c(0.6, 0.0), c(0.0, 0.8));
        for (rho, nu) in [
            (0.6, 0.7),
            (0.3, 2.0),
            (FRAC_1_SQRT_2, FRAC_PI_4),
            (0.9, -1.3),
        ] {
            let p = WalkParams::new(rho, nu).unwrap();
            for t in [1usize, 2, 5, 12] {
                let (lo, hi) = (-(t as i64) - 2, t as i64 + 2);
                let m = dense_u(&p, lo, hi);
                let v = dense_evolve(&m, lo, coin, t);
                let s = evolve(coin, &p, t, Variant::Full).unwrap();
                assert!(max_dev(&s, &v, lo) < 1e-12, "rho={rho} nu={nu} t={t}");
            }
        }
    }

    #[test]
    fn t2_distribution_against_dense_oracle() {
        let p = WalkParams::new(0.6, 0.7).unwrap();
        let m = dense_u(&p, -3, 3);
        let v = dense_evolve(&m, -3, CoinSpinor::up(), 2);
        let d = distribution(&evolve(CoinSpinor::up(), &p, 2, Variant::Full).unwrap());
        for x in -3..=3i64 {
            let i = (x + 3) as usize;
            let want = v[2 * i].norm_sqr() + v[2 * i + 1].norm_sqr();
            assert!((d.prob(x) - want).abs() < 1e-14);
        }
        assert!((d.total() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cmv_stencil_matches_dense_v() {
        let p = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_4).unwrap();
        let blocks = cmv_blocks(&p);
        let m = dense_from_blocks(&blocks, -5, 5);
        let v = dense_evolve(&m, -5, CoinSpinor::up(), 3);
        let s = evolve(CoinSpinor::up(), &p, 3, Variant::CmvOnly).unwrap();
        assert!(max_dev(&s, &v, -5) < 1e-14);
    }

    #[test]
    fn full_step_is_cmv_after_coin_swap() {
        let p = WalkParams::new(0.45, 0.9).unwrap();
        let mut s = evolve(CoinSpinor::symmetric(), &p, 7, Variant::Full).unwrap();
        let full = step_full(&s, &p);
        s.swap_coin();
        let via_v = step_cmv_only(&s, &p);
        assert_eq!(full.x_min, via_v.x_min);
        for (a, b) in full.amps.iter().zip(&via_v.amps) {
            assert!((a[0] - b[0]).norm() < 1e-15 && (a[1] - b[1]).norm() < 1e-15);
        }
    }

    #[test]
    fn norm_after_100_steps() {
        let p = WalkParams::new(0.3, 1.1).unwrap();
        for variant in [Variant::Full, Variant::CmvOnly] {
            let s = evolve(CoinSpinor::symmetric(), &p, 100, variant).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            assert_eq!((s.x_min, s.x_max()), (-100, 100));
        }
    }

    #[test]
    fn zero_steps_is_identity() {
        let p = WalkParams::new(0.3, 1.1).unwrap();
        let s = evolve(CoinSpinor::symmetric(), &p, 0, Variant::Full).unwrap();
        assert_eq!(s, initial_state(CoinSpinor::symmetric()).unwrap());
        let d = distribution(&s);
        assert_eq!((d.x_min, d.probs.len()), (0, 1));
        assert!((d.probs[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        let p = WalkParams::new(0.77, 2.3).unwrap();
        let a = evolve(CoinSpinor::up(), &p, 64, Variant::Full).unwrap();
        let b = evolve(CoinSpinor::up(), &p, 64, Variant::Full).unwrap();
        assert_eq!(a, b);
    }

    fn coin_strategy() -> impl Strategy<Value = CoinSpinor> {
        (0.0..std::f64::consts::FRAC_PI_2, -3.2..3.2f64, -3.2..3.2f64).prop_map(|(th, p0, p1)| {
            CoinSpinor::new(
                Complex64::from_polar(th.cos(), p0),
                Complex64::from_polar(th.sin(), p1),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn unitarity_and_light_cone(
            rho in 0.01..0.99f64,
            nu in -7.0..7.0f64,
            coin in coin_strategy(),
            t in 0usize..40,
        ) {
            let p = WalkParams::new(rho, nu).unwrap();
            for variant in [Variant::Full, Variant::CmvOnly] {
                let s = evolve(coin, &p, t, variant).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
                prop_assert!(s.x_min >= -(t as i64) && s.x_max() <= t as i64);
                let d = distribution(&s);
                prop_assert!(d.probs.iter().all(|&q| q >= 0.0));
            }
        }

        #[test]
        fn semigroup(rho in 0.05..0.95f64, nu in -3.2..3.2f64, a in 0usize..15, b in 0usize..15) {
            let p = WalkParams::new(rho, nu).unwrap();
            let mut s = evolve(CoinSpinor::symmetric(), &p, a, Variant::Full).unwrap();
            for _ in 0..b {
                s = step_full(&s, &p);
            }
            let direct = evolve(CoinSpinor::symmetric(), &p, a + b, Variant::Full).unwrap();
            prop_assert_eq!(s, direct);
        }
    }
}
