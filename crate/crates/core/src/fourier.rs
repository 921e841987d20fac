//! Momentum-space picture of the walk.
//!
//! With `psi_hat(k) = sum_x e^{-ikx} psi(x)`, one step of the full walk is
//! multiplication by `R(-nu/2) H(k) R(nu/2)`. Shifting the integration
//! variable by `nu` replaces `H(k)` with `Htilde(k) = H(k + nu)` and the
//! initial spinor with `R(nu/2) phi`; amplitudes only pick up the phase
//! `e^{-i nu x}`, so probabilities are unchanged.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::params::{CoinSpinor, Variant, WalkParams};
use crate::walk::{initial_state, Amp, WaveState};

/// Eigenvector normalizations below this are reported as degenerate.
pub const DEGENERATE_NORM: f64 = 1e-14;

/// Below this normalization the spectral route loses too many digits and
/// powers are taken by repeated squaring instead.
const POWER_FALLBACK_NORM: f64 = 1e-6;

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Matrix2([[one, zero], [zero, one]])
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Matrix2([[a, zero], [zero, b]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let d = *self - *other;
        d.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Matrix2::identity())
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Matrix2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        Matrix2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        Matrix2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

/// `R(phi) = diag(e^{i phi}, e^{-i phi})`.
pub fn rotation(phi: f64) -> Matrix2 {
    let e = Complex64::from_polar(1.0, phi);
    Matrix2::diag(e, e.conj())
}

/// The symbol `H(k)`; one step of the full walk is `R(-nu/2) H(k) R(nu/2)`.
pub fn coin_matrix_h(k: f64, params: &WalkParams) -> Matrix2 {
    let (rho, rho0, nu) = (params.rho(), params.rho0(), params.nu());
    let c = rho * rho0;
    let e_nu = Complex64::from_polar(1.0, nu);
    let e_k = Complex64::from_polar(1.0, k - nu);
    Matrix2([
        [
            -c * (e_nu + e_k.conj()),
            -rho * rho * e_nu + rho0 * rho0 * e_k.conj(),
        ],
        [
            -rho * rho * e_nu.conj() + rho0 * rho0 * e_k,
            c * (e_nu.conj() + e_k),
        ],
    ])
}

/// `Htilde(k) = H(k + nu)`, written out directly.
pub fn shifted_matrix_htilde(k: f64, params: &WalkParams) -> Matrix2 {
    let (rho, rho0, nu) = (params.rho(), params.rho0(), params.nu());
    let c = rho * rho0;
    let e_nu = Complex64::from_polar(1.0, nu);
    let e_k = Complex64::from_polar(1.0, k);
    Matrix2([
        [
            -c * (e_nu + e_k.conj()),
            -rho * rho * e_nu + rho0 * rho0 * e_k.conj(),
        ],
        [
            -rho * rho * e_nu.conj() + rho0 * rho0 * e_k,
            c * (e_nu.conj() + e_k),
        ],
    ])
}

/// One step of the `V`-only walk in momentum space,
/// `R(nu/2) {R(-k/2) W}^2 R(-nu/2)` with `W = [[rho0, -rho], [rho, rho0]]`.
pub fn cmv_symbol(k: f64, params: &WalkParams) -> Matrix2 {
    let (rho, rho0) = (params.rho(), params.rho0());
    let w = Matrix2([
        [Complex64::new(rho0, 0.0), Complex64::new(-rho, 0.0)],
        [Complex64::new(rho, 0.0), Complex64::new(rho0, 0.0)],
    ]);
    let half = rotation(-k / 2.0) * w;
    rotation(params.nu() / 2.0) * half * half * rotation(-params.nu() / 2.0)
}

/// `phi~ = R(nu/2) phi`.
pub fn shifted_spinor(coin: CoinSpinor, params: &WalkParams) -> [Complex64; 2] {
    rotation(params.nu() / 2.0).apply([coin.a0, coin.a1])
}

/// Analytic eigen-decomposition of `Htilde(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub k: f64,
    /// `lambda_j` for `j = 1, 2`.
    pub lambda: [Complex64; 2],
    /// Normalized eigenvectors `v_1`, `v_2`.
    pub vectors: [[Complex64; 2]; 2],
    /// `J(k) = 1 - rho^2 rho0^2 (sin k - sin nu)^2`.
    pub j: f64,
    /// Normalizations `N_1`, `N_2`.
    pub norms: [f64; 2],
}

impl EigenSystem {
    /// Orthogonal projector onto `v_j` (index 0 or 1).
    pub fn projector(&self, idx: usize) -> Matrix2 {
        let v = self.vectors[idx];
        Matrix2([
            [v[0] * v[0].conj(), v[0] * v[1].conj()],
            [v[1] * v[0].conj(), v[1] * v[1].conj()],
        ])
    }

    /// `sum_j lambda_j P_j`.
    pub fn reconstruct(&self) -> Matrix2 {
        self.projector(0).scale(self.lambda[0]) + self.projector(1).scale(self.lambda[1])
    }

    /// `|<v_j | phi>|^2` for `j = 1, 2`.
    pub fn weights(&self, phi: [Complex64; 2]) -> [f64; 2] {
        self.vectors
            .map(|v| (v[0].conj() * phi[0] + v[1].conj() * phi[1]).norm_sqr())
    }
}

fn j_factor(k: f64, params: &WalkParams) -> f64 {
    let d = params.rho_rho0() * (k.sin() - params.nu().sin());
    1.0 - d * d
}

/// Eigenvalues of `Htilde(k)`, `lambda_j = i c (sin k - sin nu) - (-1)^j sqrt J`.
pub fn eigenvalues(k: f64, params: &WalkParams) -> [Complex64; 2] {
    let im = params.rho_rho0() * (k.sin() - params.nu().sin());
    let root = j_factor(k, params).max(0.0).sqrt();
    [Complex64::new(root, im), Complex64::new(-root, im)]
}

/// Closed-form eigenvalues and eigenvectors of `Htilde(k)`.
///
/// The eigenvector for `lambda_j` is `(a, b_j) / sqrt(N_j)` with
/// `a = -rho^2 e^{i nu} + rho0^2 e^{-ik}` and the real second component
/// `b_j = c (cos k + cos nu) - (-1)^j sqrt J`. `N_j` vanishes at isolated
/// `k` when `rho = 1/sqrt2` (at `k = -nu`, where `a = 0`) and on the
/// special set where `J` itself vanishes.
pub fn eigensystem(k: f64, params: &WalkParams) -> Result<EigenSystem> {
    let (rho, rho0, nu) = (params.rho(), params.rho0(), params.nu());
    let c = rho * rho0;
    let j = j_factor(k, params);
    let root = j.max(0.0).sqrt();
    let lambda = eigenvalues(k, params);
    let a =
        -rho * rho * Complex64::from_polar(1.0, nu) + rho0 * rho0 * Complex64::from_polar(1.0, -k);
    let cd = c * (k.cos() + nu.cos());

    let mut vectors = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut norms = [0.0; 2];
    for (idx, sign) in [(0usize, -1.0f64), (1, 1.0)] {
        // sign = (-1)^j
        let b = cd - sign * root;
        let n = 2.0 * (j - sign * cd * root);
        if !(n >= DEGENERATE_NORM) {
            return Err(Error::DegenerateNormalization {
                k,
                j: idx + 1,
                norm: n,
            });
        }
        let s = n.sqrt();
        vectors[idx] = [a / s, Complex64::new(b / s, 0.0)];
        norms[idx] = n;
    }
    Ok(EigenSystem {
        k,
        lambda,
        vectors,
        j,
        norms,
    })
}

/// `|<v_j(k)|phi>|^2` for `j = 1, 2`, falling back to the resolvent
/// projector `(Htilde - lambda_other)/(lambda_j - lambda_other)` where the
/// closed-form eigenvectors lose normalization.
pub fn spectral_weights(k: f64, params: &WalkParams, phi: [Complex64; 2]) -> Result<[f64; 2]> {
    match eigensystem(k, params) {
        Ok(es) if es.norms[0].min(es.norms[1]) >= POWER_FALLBACK_NORM => Ok(es.weights(phi)),
        _ => {
            let lam = eigenvalues(k, params);
            let gap = lam[0] - lam[1];
            if gap.norm() < 1e-8 {
                return Err(Error::DegenerateNormalization {
                    k,
                    j: 1,
                    norm: gap.norm(),
                });
            }
            let h = shifted_matrix_htilde(k, params);
            let id = Matrix2::identity();
            let p1 = (h - id.scale(lam[1])).scale(gap.inv());
            let p2 = id - p1;
            let w = |p: Matrix2| {
                let v = p.apply(phi);
                (phi[0].conj() * v[0] + phi[1].conj() * v[1]).re
            };
            Ok([w(p1), w(p2)])
        }
    }
}

/// Group velocity `h(nu; k) = c cos k / sqrt J(k)`, so that
/// `i lambda_j'/lambda_j = (-1)^j h`.
pub fn group_velocity_h(k: f64, params: &WalkParams) -> f64 {
    params.rho_rho0() * k.cos() / j_factor(k, params).sqrt()
}

/// `Htilde(k)^t phi`, through `lambda_j^t` when the closed-form eigenvectors
/// are well conditioned and by repeated squaring otherwise.
pub fn htilde_power_apply(
    k: f64,
    params: &WalkParams,
    t: usize,
    phi: [Complex64; 2],
) -> [Complex64; 2] {
    if let Ok(es) = eigensystem(k, params) {
        if es.norms[0].min(es.norms[1]) >= POWER_FALLBACK_NORM {
            let mut out = [Complex64::new(0.0, 0.0); 2];
            for idx in 0..2 {
                let v = es.vectors[idx];
                let coeff = v[0].conj() * phi[0] + v[1].conj() * phi[1];
                let lt = Complex64::from_polar(1.0, es.lambda[idx].arg() * t as f64);
                out[0] += lt * coeff * v[0];
                out[1] += lt * coeff * v[1];
            }
            return out;
        }
    }
    shifted_matrix_htilde(k, params).pow(t as u64).apply(phi)
}

/// Number of quadrature nodes used to invert a degree-`t` trigonometric polynomial.
pub fn node_count(t: usize) -> usize {
    (2 * t + 3).next_power_of_two()
}

/// Exact amplitudes at time `t` reconstructed from momentum space.
///
/// The integrand is a trigonometric polynomial of degree at most `t`, so an
/// `M`-point rectangle rule with `M > 2t` reproduces the inverse transform
/// exactly. For the full walk the shifted picture is sampled and mapped back
/// to the original amplitudes with `R(-nu/2)` and the phase `e^{i nu x}`.
pub fn evolve_fourier(
    coin: CoinSpinor,
    params: &WalkParams,
    t: usize,
    variant: Variant,
) -> Result<WaveState> {
    if t == 0 {
        return initial_state(coin);
    }
    let amps = fourier_amplitudes(coin, params, t, variant, -(t as i64), t as i64)?;
    Ok(WaveState {
        time: t,
        x_min: -(t as i64),
        amps,
    })
}

/// Reconstructed amplitudes on `lo..=hi` at time `t >= 1`.
///
/// Sites with `|x| <= t + 1` are free of aliasing; beyond the light cone
/// they vanish up to rounding.
pub fn fourier_amplitudes(
    coin: CoinSpinor,
    params: &WalkParams,
    t: usize,
    variant: Variant,
    lo: i64,
    hi: i64,
) -> Result<Vec<Amp>> {
    coin.validate()?;
    let m = node_count(t);
    let nodes: Vec<f64> = (0..m)
        .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / m as f64)
        .collect();

    let samples: Vec<[Complex64; 2]> = match variant {
        Variant::Full => {
            let phi = shifted_spinor(coin, params);
            nodes
                .iter()
                .map(|&k| htilde_power_apply(k, params, t, phi))
                .collect()
        }
        Variant::CmvOnly => {
            let phi = [coin.a0, coin.a1];
            nodes
                .iter()
                .map(|&k| cmv_symbol(k, params).pow(t as u64).apply(phi))
                .collect()
        }
    };

    let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(m);
    let mut comps = [Vec::with_capacity(m), Vec::with_capacity(m)];
    for s in &samples {
        comps[0].push(s[0]);
        comps[1].push(s[1]);
    }
    for c in &mut comps {
        fft.process(c);
    }

    // k_i = -pi + 2 pi i / M, so e^{i k_i x} = (-1)^x e^{2 pi i i x / M}.
    let back = rotation(-params.nu() / 2.0);
    let scale = 1.0 / m as f64;
    let amps: Vec<Amp> = (lo..=hi)
        .map(|x| {
            let idx = x.rem_euclid(m as i64) as usize;
            let sign = if x.rem_euclid(2) == 0 { scale } else { -scale };
            let a = [comps[0][idx] * sign, comps[1][idx] * sign];
            match variant {
                Variant::Full => {
                    let phase = Complex64::from_polar(1.0, params.nu() * x as f64);
                    let v = back.apply(a);
                    [v[0] * phase, v[1] * phase]
                }
                Variant::CmvOnly => a,
            }
        })
        .collect();
    Ok(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{distribution, evolve};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| -PI + 2.0 * PI * (i as f64 + 0.37) / n as f64)
    }

    #[test]
    fn rotation_basics() {
        assert!(rotation(0.0).max_abs_diff(&Matrix2::identity()) < 1e-16);
        let want = Matrix2::diag(Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0));
        assert!(rotation(FRAC_PI_2).max_abs_diff(&want) < 1e-16);
        assert!((rotation(0.4) * rotation(1.3)).max_abs_diff(&rotation(1.7)) < 1e-15);
    }

    #[test]
    fn symbols_are_unitary() {
        let p = WalkParams::new(0.3, 2.0).unwrap();
        for k in grid(64) {
            assert!(coin_matrix_h(k, &p).unitarity_defect() < 1e-12);
            assert!(shifted_matrix_htilde(k, &p).unitarity_defect() < 1e-12);
            assert!((shifted_matrix_htilde(k, &p).det().norm() - 1.0).abs() < 1e-12);
            assert!(cmv_symbol(k, &p).unitarity_defect() < 1e-12);
            assert!(
                coin_matrix_h(k + p.nu(), &p).max_abs_diff(&shifted_matrix_htilde(k, &p)) < 1e-14
            );
        }
    }

    #[test]
    fn htilde_at_zero_by_substitution() {
        // rho = 0.6, nu = 0: c = 0.48, entries [[-0.96, -0.36 + 0.64], [0.28, 0.96]].
        let p = WalkParams::new(0.6, 0.0).unwrap();
        let want = Matrix2([
            [Complex64::new(-0.96, 0.0), Complex64::new(0.28, 0.0)],
            [Complex64::new(0.28, 0.0), Complex64::new(0.96, 0.0)],
        ]);
        assert!(shifted_matrix_htilde(0.0, &p).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn special_set_is_two_coined_steps() {
        for n in [0i32, 1] {
            let sgn = if n == 0 { 1.0 } else { -1.0 };
            let p = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_2 + n as f64 * PI).unwrap();
            let e = Complex64::from_polar(1.0, -sgn * FRAC_PI_4);
            let v = Matrix2([[e, -e], [-e.conj(), -e.conj()]])
                .scale(Complex64::new(FRAC_1_SQRT_2, 0.0));
            for k in grid(50) {
                let step = rotation(-k / 2.0) * v;
                let want = (step * step).scale(Complex64::new(0.0, -sgn));
                assert!(
                    shifted_matrix_htilde(k, &p).max_abs_diff(&want) < 1e-12,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn eigensystem_residuals() {
        let p = WalkParams::new(0.45, 0.9).unwrap();
        for k in grid(1000) {
            let es = eigensystem(k, &p).unwrap();
            let h = shifted_matrix_htilde(k, &p);
            for idx in 0..2 {
                assert!((es.lambda[idx].norm() - 1.0).abs() < 1e-12);
                let hv = h.apply(es.vectors[idx]);
                let r = ((hv[0] - es.lambda[idx] * es.vectors[idx][0]).norm_sqr()
                    + (hv[1] - es.lambda[idx] * es.vectors[idx][1]).norm_sqr())
                .sqrt();
                assert!(r < 1e-10);
            }
            let v = es.vectors;
            assert!((v[0][0].conj() * v[1][0] + v[0][1].conj() * v[1][1]).norm() < 1e-10);
            assert!(((es.lambda[0] * es.lambda[1]) - h.det()).norm() < 1e-12);
            assert!((es.j - (1.0 - es.lambda[0].im.powi(2))).abs() < 1e-14);
            assert!(es.reconstruct().max_abs_diff(&h) < 1e-10);
            assert!(es.j > 0.0 && es.norms.iter().all(|&n| n > 0.0));
        }
    }

    #[test]
    fn degenerate_normalization_is_signalled() {
        // rho = 1/sqrt2 makes the first component vanish at k = -nu.
        let p = WalkParams::new(FRAC_1_SQRT_2, FRAC_PI_4).unwrap();
        assert!(matches!(
            eigensystem(-FRAC_PI_4, &p),
            Err(Error::DegenerateNormalization { .. })
        ));
        // The resolvent route still gives a complete pair of weights there.
        let phi = shifted_spinor(CoinSpinor::symmetric(), &p);
        let w = spectral_weights(-FRAC_PI_4, &p, phi).unwrap();
        assert!((w[0] + w[1] - 1.0).abs() < 1e-14);
        assert!(w.iter().all(|&x| x >= -1e-15));
    }

    #[test]
    fn group_velocity_values() {
        let p = WalkParams::new(0.6, 1.0).unwrap();
        assert!(group_velocity_h(FRAC_PI_2, &p).abs() < 1e-16);
        assert!(group_velocity_h(-FRAC_PI_2, &p).abs() < 1e-16);
        let p0 = WalkParams::new(0.6, 0.0).unwrap();
        assert!((group_velocity_h(0.0, &p0) - 0.48).abs() < 1e-15);
    }

    #[test]
    fn group_velocity_is_log_derivative_of_eigenvalue() {
        let p = WalkParams::new(0.35, -2.2).unwrap();
        let d = 1e-5;
        for k in grid(40) {
            let l = |k: f64| eigenvalues(k, &p);
            let (lp, lm, l0) = (l(k + d), l(k - d), l(k));
            for idx in 0..2 {
                let deriv = (lp[idx] - lm[idx]) / (2.0 * d);
                let ratio = Complex64::new(0.0, 1.0) * deriv / l0[idx];
                let sign = if idx == 0 { -1.0 } else { 1.0 };
                assert!((ratio.re - sign * group_velocity_h(k, &p)).abs() < 1e-8);
                assert!(ratio.im.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn fourier_matches_position_space() {
        let cases = [
            (FRAC_1_SQRT_2, FRAC_PI_4, CoinSpinor::up(), 50usize),
            (0.6, 0.7, CoinSpinor::symmetric(), 31),
            (FRAC_1_SQRT_2, FRAC_PI_2, CoinSpinor::symmetric(), 40),
            (0.2, -2.5, CoinSpinor::up(), 17),
        ];
        for (rho, nu, coin, t) in cases {
            let p = WalkParams::new(rho, nu).unwrap();
            for variant in [Variant::Full, Variant::CmvOnly] {
                let a = evolve(coin, &p, t, variant).unwrap();
                let b = evolve_fourier(coin, &p, t, variant).unwrap();
                assert_eq!(a.x_min, b.x_min);
                let dev = a
                    .amps
                    .iter()
                    .zip(&b.amps)
                    .map(|(u, v)| (u[0] - v[0]).norm().max((u[1] - v[1]).norm()))
                    .fold(0.0, f64::max);
                assert!(dev < 1e-11, "rho={rho} nu={nu} {variant}: {dev}");
                assert!(distribution(&a).total_variation(&distribution(&b)) < 1e-10);
            }
        }
    }

    #[test]
    fn fourier_zero_time_and_phi_norm() {
        let p = WalkParams::new(0.5, 1.0).unwrap();
        let s = evolve_fourier(CoinSpinor::symmetric(), &p, 0, Variant::Full).unwrap();
        let d = distribution(&s);
        assert_eq!((d.x_min, d.probs.len()), (0, 1));
        assert!((d.probs[0] - 1.0).abs() < 1e-15);
        let phi = shifted_spinor(CoinSpinor::symmetric(), &p);
        assert!((phi[0].norm_sqr() + phi[1].norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn power_routes_agree() {
        let p = WalkParams::new(0.8, 2.9).unwrap();
        let phi = shifted_spinor(CoinSpinor::symmetric(), &p);
        for k in grid(33) {
            let spectral = htilde_power_apply(k, &p, 137, phi);
            let squared = shifted_matrix_htilde(k, &p).pow(137).apply(phi);
            assert!((spectral[0] - squared[0]).norm() < 1e-12);
            assert!((spectral[1] - squared[1]).norm() < 1e-12);
        }
    }
}
