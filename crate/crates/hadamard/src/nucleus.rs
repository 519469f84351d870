//! Circular-nucleus equilibrium and everything it buys: the far-field
//! hydrostatic strain, the non-degeneracy constant, the hypothetical binodal
//! curves, and the quasiconvex envelope along the bisector.
//!
//! The radial equilibrium profile `eta(r)`, `r >= 1`, is integrated in the
//! transformed variables `x = 1/r^2`, `v = eta/r`, which compactify the
//! exterior domain to `x in [0, 1]` and give `v` a finite limit
//! `eps_inf = v(0)`:
//!
//! `v'' = -(v')^2 v h''(w) / (mu + v^2 h''(w))`, `w = v^2 - 2 x v v'`,
//! with `v(1) = eps0_W` and `v'(1) = (eps0_W - eps-_W) / 2`.

use crate::jumpset::{w_point, WPoint};
use crate::material::{DiagonalStrain, MaterialParams};
use crate::numerics::{integrate_ode_through, Tolerance, Trajectory};
use crate::par;
use crate::{Error, Result};

/// One sample of the transformed profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub x: f64,
    pub v: f64,
    pub v_prime: f64,
}

/// Solved radial profile plus the boundary data it came from.
#[derive(Debug, Clone)]
pub struct NucleusSolution {
    samples: Vec<ProfileSample>,
    eps_inf: f64,
    w_point: WPoint,
    mu: f64,
    trajectory: Trajectory<2>,
}

impl NucleusSolution {
    /// Uniform samples over `x in [0, 1]`, ascending.
    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    /// Far-field hydrostatic stretch `v(0)`.
    pub fn eps_inf(&self) -> f64 {
        self.eps_inf
    }

    pub fn w_point(&self) -> &WPoint {
        &self.w_point
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Dense evaluation of `(v, v')` anywhere in `[0, 1]`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let y = self.trajectory.sample(x);
        (y[0], y[1])
    }

    /// Physical profile `(eta, eta')` at radius `r >= 1`, reconstructed from
    /// the transformed variables: `eta = r v`, `eta' = v - 2 x v'`.
    pub fn eta(&self, r: f64) -> (f64, f64) {
        let x = 1.0 / (r * r);
        let (v, vp) = self.eval(x);
        (r * v, v - 2.0 * x * vp)
    }
}

const DEFAULT_PROFILE_SAMPLES: usize = 501;

/// Integrates the nucleus profile with the default sample density.
pub fn solve_nucleus(p: &MaterialParams) -> Result<NucleusSolution> {
    solve_nucleus_sampled(p, DEFAULT_PROFILE_SAMPLES)
}

/// Integrates from the boundary `x = 1` down to `x = 0` and resamples the
/// dense output on `n` uniform points.
///
/// A vanishing denominator `mu + v^2 h''` surfaces as
/// [`Error::StepUnderflow`]; it is reported, never clipped.
pub fn solve_nucleus_sampled(p: &MaterialParams, n: usize) -> Result<NucleusSolution> {
    let w = w_point(p)?;
    let mu = p.mu();
    let rhs = move |x: f64, y: &[f64; 2]| {
        let (v, vp) = (y[0], y[1]);
        let warg = v * v - 2.0 * x * v * vp;
        let hdd = p.well_dd(warg);
        [vp, -(vp * vp) * v * hdd / (mu + v * v * hdd)]
    };
    let v1 = w.eps0;
    let vp1 = 0.5 * (w.eps0 - w.eps_minus);
    let tol = Tolerance { abs: 1e-12, rel: 1e-12, max_iter: 200 };
    // land exactly on the sample grid so the reported profile consists of
    // solver states, not interpolants
    let n = n.max(2);
    let grid: Vec<f64> = (1..n - 1).map(|i| i as f64 / (n - 1) as f64).collect();
    let trajectory = integrate_ode_through(rhs, 1.0, 0.0, [v1, vp1], &tol, &grid)?;

    let samples = (0..n)
        .map(|i| {
            let x = i as f64 / (n - 1) as f64;
            let y = trajectory.sample(x);
            ProfileSample { x, v: y[0], v_prime: y[1] }
        })
        .collect();
    let eps_inf = trajectory.sample(0.0)[0];
    Ok(NucleusSolution { samples, eps_inf, w_point: w, mu, trajectory })
}

/// First-order far-field stretch:
/// `sqrt(d1) + mu ln(sqrt(d2)/sqrt(d1)) / (2 h''(d1) sqrt(d1))`.
pub fn eps_inf_asymptotic(p: &MaterialParams) -> f64 {
    let s1 = p.d1().sqrt();
    let s2 = p.d2().sqrt();
    s1 + p.mu() / (2.0 * p.well_dd(p.d1()) * s1) * (s2 / s1).ln()
}

/// First-order profile `(eta, eta')` at radius `r >= 1`.
///
/// `eta = sqrt(d1 r^2 + c0) + mu eta_t` with
/// `h''(d1) eta_t = (c1 r^2 + c2)/s - r^2 ln(s/r) / (2s)`, `s = sqrt(d1 r^2 + c0)`,
/// `c0 = d2 - d1`, `c1 = ln(sqrt(d2))/2`, `c2 = -(d2 - d1) h''(d1) / (4 d2 h''(d2))`.
pub fn eta_profile_asymptotic(r: f64, p: &MaterialParams) -> (f64, f64) {
    assert!(r >= 1.0, "profile lives on r >= 1");
    let (d1, d2, mu) = (p.d1(), p.d2(), p.mu());
    let hdd1 = p.well_dd(d1);
    let c0 = d2 - d1;
    let c1 = 0.5 * d2.sqrt().ln();
    let c2 = -c0 * hdd1 / (4.0 * d2 * p.well_dd(d2));

    let r2 = r * r;
    let s = (d1 * r2 + c0).sqrt();
    let log = (s / r).ln();

    let eta_t = ((c1 * r2 + c2) / s - r2 / (2.0 * s) * log) / hdd1;
    let eta_t_prime = (2.0 * c1 * r / s - (c1 * r2 + c2) * d1 * r / s.powi(3)
        - (r / s - d1 * r2 * r / (2.0 * s.powi(3))) * log
        - d1 * r2 * r / (2.0 * s.powi(3))
        + r / (2.0 * s))
        / hdd1;

    (s + mu * eta_t, d1 * r / s + mu * eta_t_prime)
}

const TAIL_R_LO: f64 = 20.0;
const TAIL_R_HI: f64 = 100.0;
const TAIL_SAMPLES: usize = 80;

/// Non-degeneracy constant `lim r (eta(r) - eps_inf r)`, extracted from the
/// far-field tail.
///
/// In the transformed variables the limit is the slope of `v(x) - eps_inf`
/// at `x = 0`; a cubic least-squares fit over `r in [20, 100]` removes the
/// curvature bias that a bare `L/r` fit would leave.
pub fn nondegeneracy(p: &MaterialParams, sol: &NucleusSolution) -> Result<f64> {
    if sol.mu() != p.mu() {
        return Err(Error::Domain(format!(
            "profile was solved at mu = {}, not mu = {}",
            sol.mu(),
            p.mu()
        )));
    }
    let x_hi = 1.0 / (TAIL_R_LO * TAIL_R_LO);
    let x_lo = 1.0 / (TAIL_R_HI * TAIL_R_HI);
    let first_x = sol.trajectory.points().next().map(|(x, _)| x).unwrap_or(1.0);
    if first_x > x_lo {
        return Err(Error::TailTooShort);
    }

    // fit v - eps_inf = a t + b t^2 + c t^3 in t = x / x_hi, log-spaced in x
    let mut ata = [[0.0_f64; 3]; 3];
    let mut atb = [0.0_f64; 3];
    let ratio = x_hi / x_lo;
    for i in 0..TAIL_SAMPLES {
        let x = x_lo * ratio.powf(i as f64 / (TAIL_SAMPLES - 1) as f64);
        let t = x / x_hi;
        let g = sol.trajectory.sample(x)[0] - sol.eps_inf;
        let row = [t, t * t, t * t * t];
        for a in 0..3 {
            for b in 0..3 {
                ata[a][b] += row[a] * row[b];
            }
            atb[a] += row[a] * g;
        }
    }
    let coeffs = solve3(&ata, &atb).ok_or(Error::TailTooShort)?;
    Ok(coeffs[0] / x_hi)
}

fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        let mut m = *a;
        for row in 0..3 {
            m[row][k] = b[row];
        }
        let dk = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        out[k] = dk / det;
    }
    Some(out)
}

/// The two parametric curves `(eta/r, eta')` and its swap traced by the
/// exterior profile; together they bound the binodal from the outside under
/// the conjectured stability of the far field.
pub fn binodal_curves(sol: &NucleusSolution) -> (Vec<DiagonalStrain>, Vec<DiagonalStrain>) {
    let curve: Vec<DiagonalStrain> = sol
        .samples()
        .iter()
        .map(|s| DiagonalStrain { eps1: s.v, eps2: s.v - 2.0 * s.x * s.v_prime })
        .collect();
    let mirror = curve.iter().map(|p| p.swap()).collect();
    (curve, mirror)
}

/// A point of the hydrostatic quasiconvex-envelope curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QwPoint {
    /// Hydrostatic stretch `eta(R)/R`.
    pub eps: f64,
    /// Envelope value from the equilibrium energy of the ball.
    pub qw: f64,
    /// Raw energy `W(eps I)` for comparison.
    pub w: f64,
    /// Determinant `eta' eta / R` at the ball boundary.
    pub d: f64,
}

/// Envelope curve along the bisector.
#[derive(Debug, Clone)]
pub struct HydroQWCurve {
    pub points: Vec<QwPoint>,
}

// Surface (Clapeyron) evaluation of the stored energy of the equilibrium
// ball of radius R, per unit area, in transformed variables: the hoop
// stretch is b = v, the radial stretch a = v - 2 x v', d = a b.
fn qw_point(mu: f64, p: &MaterialParams, x: f64, v: f64, vp: f64) -> QwPoint {
    let b = v;
    let a = v - 2.0 * x * vp;
    let d = a * b;
    let hp = p.well_d(d);
    let qw = (mu - hp) * d + (hp + 0.5 * mu) * b * b - 0.5 * mu * a * a + p.well(d);
    QwPoint { eps: b, qw, w: mu * b * b + p.well(b * b), d }
}

/// Quasiconvex envelope along the bisector from the numeric profile.
///
/// Points run over the profile samples with `x > 0`, i.e. stretches in
/// `(eps_inf, eps0_W]`.
pub fn qw_hydrostatic(p: &MaterialParams, sol: &NucleusSolution) -> HydroQWCurve {
    let points = sol
        .samples()
        .iter()
        .filter(|s| s.x > 0.0)
        .map(|s| qw_point(sol.mu(), p, s.x, s.v, s.v_prime))
        .collect();
    HydroQWCurve { points }
}

/// Same envelope evaluated on the first-order profile, on `n` uniform
/// `x`-grid points excluding the far-field limit.
pub fn qw_hydrostatic_asymptotic(p: &MaterialParams, n: usize) -> HydroQWCurve {
    let n = n.max(2);
    let points = (1..=n)
        .map(|i| {
            let x = i as f64 / n as f64;
            let r = 1.0 / x.sqrt();
            let (eta, eta_p) = eta_profile_asymptotic(r, p);
            let v = eta / r;
            let vp = (v - eta_p) / (2.0 * x);
            qw_point(p.mu(), p, x, v, vp)
        })
        .collect();
    HydroQWCurve { points }
}

/// Far-field stretch over a sweep of shear moduli, parallel when enabled.
pub fn eps_inf_sweep(base: &MaterialParams, mus: &[f64]) -> Result<Vec<(f64, f64)>> {
    par::map_indexed(mus.len(), |i| {
        let p = base.with_mu(mus[i])?;
        Ok((mus[i], solve_nucleus(&p)?.eps_inf()))
    })
    .into_iter()
    .collect()
}

/// Sequential twin of [`eps_inf_sweep`], kept for benchmarking.
pub fn eps_inf_sweep_seq(base: &MaterialParams, mus: &[f64]) -> Result<Vec<(f64, f64)>> {
    par::map_indexed_seq(mus.len(), |i| {
        let p = base.with_mu(mus[i])?;
        Ok((mus[i], solve_nucleus(&p)?.eps_inf()))
    })
    .into_iter()
    .collect()
}
