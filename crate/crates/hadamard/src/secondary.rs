//! Secondary jump set: strains from which a rank-two laminate nucleates at
//! zero energy cost.
//!
//! In the diagonal frame the unknowns reduce to `(eps_bar, d0)` at each
//! `eps0`: a traction equation and a Maxwell equation close the system, with
//! the volume fraction recovered from `eps_bar = eps- + lambda (eps+ - eps-)`.
//! The curve is traced by continuation across the small-mu window, seeded by
//! the explicit asymptotic solution.

use crate::jumpset::{jump_pair, JumpPair};
use crate::material::{DiagonalStrain, MaterialParams};
use crate::numerics::{newton2, Tolerance};
use crate::{Error, Result};

/// One solution of the secondary jump-set system.
///
/// `x0 = eps_bar` and `y0 = d0 / eps_bar` are the strain-plane coordinates
/// of the nucleating deformation `F0 = diag(x0, y0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondaryPoint {
    pub eps0: f64,
    pub eps_bar: f64,
    pub d0: f64,
    pub lambda: f64,
}

impl SecondaryPoint {
    pub fn x0(&self) -> f64 {
        self.eps_bar
    }

    pub fn y0(&self) -> f64 {
        self.d0 / self.eps_bar
    }

    pub fn strain(&self) -> DiagonalStrain {
        DiagonalStrain { eps1: self.x0(), eps2: self.y0() }
    }
}

fn check_args(eps_bar: f64, d0: f64) -> Result<()> {
    if eps_bar <= 0.0 || d0 <= 0.0 {
        return Err(Error::Domain(format!(
            "secondary residuals need eps_bar > 0 and d0 > 0, got ({eps_bar}, {d0})"
        )));
    }
    Ok(())
}

fn traction_raw(pair: &JumpPair, eps_bar: f64, d0: f64, p: &MaterialParams) -> f64 {
    let eps0 = pair.eps0();
    let mean = 0.5 * (pair.eps_plus() + pair.eps_minus());
    let prod = pair.eps_plus() * pair.eps_minus();
    d0 / eps_bar
        - (eps0 + (prod - mean * eps_bar) / eps0 - p.well_d(d0) * eps_bar / p.mu())
}

fn maxwell_raw(pair: &JumpPair, eps_bar: f64, d0: f64, p: &MaterialParams) -> f64 {
    let eps0 = pair.eps0();
    let (ep, em) = (pair.eps_plus(), pair.eps_minus());
    let mean = 0.5 * (ep + em);
    let mu = p.mu();
    let lhs = 0.5 * (eps_bar * eps_bar + d0 * d0 / (eps_bar * eps_bar)) + p.well(d0) / mu
        - (eps_bar - em) * mean
        - 0.5 * (em * em + eps0 * eps0)
        - mu / (16.0 * eps0.powi(4));
    let rhs = (d0 / eps_bar - eps0) * (eps0 + (ep * em - mean * eps_bar) / eps0);
    lhs - rhs
}

/// Left-minus-right of the traction continuity equation.
pub fn traction_residual(eps0: f64, eps_bar: f64, d0: f64, p: &MaterialParams) -> Result<f64> {
    check_args(eps_bar, d0)?;
    if p.mu() == 0.0 {
        return Err(Error::Domain("traction residual divides by mu".into()));
    }
    Ok(traction_raw(&jump_pair(eps0, p)?, eps_bar, d0, p))
}

/// Left-minus-right of the Maxwell (energy) equation.
pub fn maxwell_residual(eps0: f64, eps_bar: f64, d0: f64, p: &MaterialParams) -> Result<f64> {
    check_args(eps_bar, d0)?;
    if p.mu() == 0.0 {
        return Err(Error::Domain("maxwell residual divides by mu".into()));
    }
    Ok(maxwell_raw(&jump_pair(eps0, p)?, eps_bar, d0, p))
}

/// Window of `eps0` values occupied by the secondary jump set as `mu -> 0`:
/// `[(d2^2 - (d2 - d1)^2)^(1/4), sqrt(d2)]`. Used to seed the continuation,
/// which then extends until the volume fraction leaves `[0, 1]`.
pub fn secondary_eps0_range(p: &MaterialParams) -> (f64, f64) {
    let dd = p.d2() - p.d1();
    ((p.d2() * p.d2() - dd * dd).powf(0.25), p.d2().sqrt())
}

/// Limit curve `(x0, y0)` of the secondary jump set to first order in `mu`.
///
/// `x0 = (d2 - sqrt(d2^2 - eps0^4)) / eps0` and `y0 = (d1 + mu delta) / x0`
/// with the explicit rational `delta(eps0)`.
pub fn asymptotic_secondary(eps0: f64, p: &MaterialParams) -> Result<(f64, f64)> {
    let (lo, hi) = secondary_eps0_range(p);
    let slack = 1e-12 * hi;
    if !(lo - slack..=hi + slack).contains(&eps0) {
        return Err(Error::OutsideWindow { eps0, lo, hi });
    }
    let eps0 = eps0.clamp(lo, hi);
    let (d1, d2) = (p.d1(), p.d2());
    let e4 = eps0.powi(4);
    let tail = (d2 * d2 - e4).max(0.0).sqrt();
    let dbar = d2 - tail;
    let x0 = dbar / eps0;
    let dd = d2 - d1;
    let delta = (e4 * dd - 2.0 * (d2 * d2 - e4) * dbar) / (4.0 * eps0 * eps0 * dd * dd * dbar * dbar);
    Ok((x0, (d1 + p.mu() * delta) / x0))
}

const LAMBDA_SLACK: f64 = 1e-9;

/// Solves the two-equation system at `eps0`, seeded by the asymptotic curve.
pub fn solve_secondary(eps0: f64, p: &MaterialParams) -> Result<SecondaryPoint> {
    let (x0, y0) = asymptotic_secondary(eps0, p)?;
    solve_secondary_seeded(eps0, p, (x0, x0 * y0))
}

/// Same as [`solve_secondary`] with an explicit `(eps_bar, d0)` seed, which
/// is what the continuation feeds forward.
pub fn solve_secondary_seeded(
    eps0: f64,
    p: &MaterialParams,
    seed: (f64, f64),
) -> Result<SecondaryPoint> {
    if p.mu() == 0.0 {
        return Err(Error::Domain("secondary system divides by mu".into()));
    }
    let pair = jump_pair(eps0, p)?;
    let system = |eps_bar: f64, d0: f64| -> (f64, f64) {
        if eps_bar <= 0.0 {
            return (f64::NAN, f64::NAN);
        }
        (
            traction_raw(&pair, eps_bar, d0, p),
            maxwell_raw(&pair, eps_bar, d0, p),
        )
    };
    let tol = Tolerance { abs: 1e-12, rel: 1e-12, max_iter: 60 };
    let (eps_bar, d0) = newton2(system, seed, &tol).map_err(|_| Error::NoConvergence { eps0 })?;

    let lambda = (eps_bar - pair.eps_minus()) / (pair.eps_plus() - pair.eps_minus());
    if !(-LAMBDA_SLACK..=1.0 + LAMBDA_SLACK).contains(&lambda) {
        return Err(Error::LambdaOutOfRange { lambda, eps0 });
    }
    Ok(SecondaryPoint { eps0, eps_bar, d0, lambda })
}

/// Full continuation branch, ascending in `eps0`, not yet truncated.
///
/// Walks `n` samples across the asymptotic window from the W-point end down,
/// feeding each solution to the next as a seed, then extends past both ends
/// with the same step until the solver fails twice in a row.
pub fn secondary_continuation(p: &MaterialParams, n: usize) -> Result<Vec<SecondaryPoint>> {
    let n = n.max(2);
    let (lo, hi) = secondary_eps0_range(p);
    let step = (hi - lo) / (n - 1) as f64;
    let domain_floor = p.mu().sqrt() / (p.d2() - p.d1());

    let mut sols: Vec<SecondaryPoint> = Vec::with_capacity(n + 16);
    let mut seed: Option<(f64, f64)> = None;

    for i in 0..n {
        let eps0 = hi - step * i as f64;
        let attempt = match seed {
            Some(s) => solve_secondary_seeded(eps0, p, s),
            None => solve_secondary(eps0, p),
        };
        if let Ok(pt) = attempt {
            seed = Some((pt.eps_bar, pt.d0));
            sols.push(pt);
        }
    }
    if sols.is_empty() {
        return Err(Error::NoConvergence { eps0: hi });
    }

    // extend below the window
    let mut fails = 0;
    let mut eps0 = lo - step;
    let mut tail_seed = (sols.last().unwrap().eps_bar, sols.last().unwrap().d0);
    while fails < 2 && eps0 > domain_floor {
        match solve_secondary_seeded(eps0, p, tail_seed) {
            Ok(pt) => {
                tail_seed = (pt.eps_bar, pt.d0);
                sols.push(pt);
                fails = 0;
            }
            Err(_) => fails += 1,
        }
        eps0 -= step;
    }

    // extend above the window (past the W-point the volume fraction leaves
    // [0, 1], which is the stopping signal)
    let mut fails = 0;
    let mut eps0 = hi + step;
    let mut head_seed = (sols[0].eps_bar, sols[0].d0);
    while fails < 2 {
        match solve_secondary_seeded(eps0, p, head_seed) {
            Ok(pt) => {
                head_seed = (pt.eps_bar, pt.d0);
                sols.push(pt);
                fails = 0;
            }
            Err(_) => fails += 1,
        }
        eps0 += step;
    }

    sols.sort_by(|a, b| a.eps0.total_cmp(&b.eps0));
    Ok(sols)
}

/// The secondary jump-set curve, its mirror, and the bisector crossing.
#[derive(Debug, Clone)]
pub struct SecondaryCurve {
    /// Branch on the `x0 >= y0` side, ascending in `eps0`, truncated at the
    /// bisector.
    pub points: Vec<SecondaryPoint>,
    /// The symmetric branch, i.e. the kept points with coordinates swapped.
    pub mirror: Vec<DiagonalStrain>,
    /// Interpolated intersection with the bisector, if the branch reaches it.
    pub crossing: Option<DiagonalStrain>,
    /// Asymptotic seed window used by the continuation.
    pub window: (f64, f64),
}

/// Continuation plus symmetry bookkeeping: both curves are truncated where
/// they meet on the bisector `x0 = y0`.
pub fn secondary_curve(p: &MaterialParams, n: usize) -> Result<SecondaryCurve> {
    let all = secondary_continuation(p, n)?;
    let window = secondary_eps0_range(p);

    // x0 - y0 increases with eps0; keep the x0 >= y0 side
    let mut crossing = None;
    let mut points: Vec<SecondaryPoint> = Vec::with_capacity(all.len());
    for w in all.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (ga, gb) = (a.x0() - a.y0(), b.x0() - b.y0());
        if ga < 0.0 && gb >= 0.0 {
            let t = ga / (ga - gb);
            let x = a.x0() + t * (b.x0() - a.x0());
            let y = a.y0() + t * (b.y0() - a.y0());
            let eps = 0.5 * (x + y);
            crossing = Some(DiagonalStrain { eps1: eps, eps2: eps });
        }
    }
    for pt in &all {
        if pt.x0() >= pt.y0() {
            points.push(*pt);
        }
    }

    let mirror = points.iter().rev().map(|pt| pt.strain().swap()).collect();
    Ok(SecondaryCurve { points, mirror, crossing, window })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(mu: f64) -> MaterialParams {
        MaterialParams::new(mu, 1.0, 3.0).unwrap()
    }

    #[test]
    fn window_closed_form() {
        let (lo, hi) = secondary_eps0_range(&params(0.1));
        assert!((lo - 5.0_f64.powf(0.25)).abs() < 1e-14);
        assert!((hi - 3.0_f64.sqrt()).abs() < 1e-14);
        // nearly equal wells collapse the window to a point
        let (lo, hi) = secondary_eps0_range(&MaterialParams::new(0.1, 2.999, 3.0).unwrap());
        assert!(hi - lo < 1e-4);
    }

    #[test]
    fn asymptotic_endpoint_values() {
        let p = params(1.0);
        let s3 = 3.0_f64.sqrt();
        let (x0, y0) = asymptotic_secondary(s3, &p).unwrap();
        // the curve has a square-root endpoint, so rounding in eps0^4 is
        // amplified to ~1e-8 here
        assert!((x0 - s3).abs() < 1e-7);
        assert!((y0 - (1.0 + 1.0 / 24.0) / s3).abs() < 1e-7);
        assert!((y0 - 0.60140).abs() < 1e-5);
    }

    #[test]
    fn liquid_limit_curve_is_the_low_hyperbola() {
        let p = params(0.0);
        let (lo, hi) = secondary_eps0_range(&p);
        for k in 0..=32 {
            let eps0 = lo + (hi - lo) * k as f64 / 32.0;
            let (x0, y0) = asymptotic_secondary(eps0, &p).unwrap();
            assert!((x0 * y0 - 1.0).abs() < 1e-12, "x0 y0 = {}", x0 * y0);
        }
    }

    #[test]
    fn outside_window_is_rejected() {
        let p = params(0.5);
        assert!(matches!(
            asymptotic_secondary(1.0, &p),
            Err(Error::OutsideWindow { .. })
        ));
        assert!(matches!(
            asymptotic_secondary(2.0, &p),
            Err(Error::OutsideWindow { .. })
        ));
    }

    #[test]
    fn residuals_reject_nonpositive_arguments_and_the_liquid_limit() {
        let p = params(0.5);
        assert!(matches!(
            traction_residual(1.7, -1.0, 1.0, &p),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            maxwell_residual(1.7, 1.0, 0.0, &p),
            Err(Error::Domain(_))
        ));
        let liquid = params(0.0);
        assert!(matches!(
            traction_residual(1.7, 1.0, 1.0, &liquid),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn solved_point_satisfies_both_residuals() {
        let p = params(0.1);
        let pt = solve_secondary(1.7, &p).unwrap();
        let t = traction_residual(pt.eps0, pt.eps_bar, pt.d0, &p).unwrap();
        let m = maxwell_residual(pt.eps0, pt.eps_bar, pt.d0, &p).unwrap();
        assert!(t.abs() <= 1e-9, "traction residual {t}");
        assert!(m.abs() <= 1e-9, "maxwell residual {m}");
        assert!((0.0..=1.0).contains(&pt.lambda));
        assert!((pt.x0() * pt.y0() - pt.d0).abs() <= 1e-14 * pt.d0);
    }

    #[test]
    fn degenerate_laminate_solves_the_system_identically() {
        // (eps_bar, d0) = (eps+, d+) satisfies both equations for any pair
        let p = params(0.7);
        for eps0 in [1.3, 1.5, 1.65] {
            let pair = jump_pair(eps0, &p).unwrap();
            let t = traction_residual(eps0, pair.eps_plus(), pair.d_plus(), &p).unwrap();
            let m = maxwell_residual(eps0, pair.eps_plus(), pair.d_plus(), &p).unwrap();
            assert!(t.abs() < 1e-12, "traction {t} at eps0 = {eps0}");
            assert!(m.abs() < 1e-12, "maxwell {m} at eps0 = {eps0}");
        }
    }

    #[test]
    fn traction_residual_is_smooth_in_eps_bar() {
        let p = params(0.1);
        let pt = solve_secondary(1.7, &p).unwrap();
        let base = traction_residual(pt.eps0, pt.eps_bar, pt.d0, &p).unwrap();
        let bumped = traction_residual(pt.eps0, pt.eps_bar + 1e-3, pt.d0, &p).unwrap();
        let delta = (bumped - base).abs();
        assert!(delta > 1e-5 && delta < 1e-1, "perturbation response {delta}");
    }

    #[test]
    fn below_window_volume_fraction_leaves_range() {
        let p = params(0.1);
        let (lo, _) = secondary_eps0_range(&p);
        // seed from a converged interior solution, then ask far below the window
        let inner = solve_secondary(lo + 0.01, &p).unwrap();
        let r = solve_secondary_seeded(lo - 0.08, &p, (inner.eps_bar, inner.d0));
        assert!(
            matches!(r, Err(Error::LambdaOutOfRange { .. }) | Err(Error::NoConvergence { .. })),
            "got {r:?}"
        );
    }

    #[test]
    fn continuation_spans_the_window_and_is_monotone_in_lambda() {
        let p = params(0.1);
        let sols = secondary_continuation(&p, 200).unwrap();
        assert!(sols.len() > 150);
        for w in sols.windows(2) {
            assert!(w[0].eps0 < w[1].eps0);
            assert!(
                w[1].lambda >= w[0].lambda - 1e-7,
                "lambda not monotone: {} then {}",
                w[0].lambda,
                w[1].lambda
            );
        }
        // approaching the W-point end drives lambda -> 1 and the laminate
        // degenerates onto the jump pair
        let last = sols.last().unwrap();
        assert!(last.lambda > 0.9, "lambda at the top end: {}", last.lambda);
        let w = crate::jumpset::w_point(&p).unwrap();
        let near = solve_secondary_seeded(
            w.eps0 - 1e-7,
            &p,
            (last.eps_bar, last.d0),
        )
        .unwrap();
        assert!(near.lambda > 0.995, "lambda near the W-point: {}", near.lambda);
        // the laminate average degenerates onto the jump pair, while the
        // nucleating phase itself keeps its determinant near the low well
        let pair = jump_pair(near.eps0, &p).unwrap();
        assert!((near.eps_bar - pair.eps_plus()).abs() < 1e-3);
        assert!((near.d0 - (1.0 + p.mu() / 24.0)).abs() < 5e-3);
        let first = sols.first().unwrap();
        assert!(first.lambda < 0.1, "lambda at the bottom end: {}", first.lambda);
    }

    #[test]
    fn curve_mirror_symmetry_and_crossing() {
        let p = params(0.1);
        let curve = secondary_curve(&p, 200).unwrap();
        assert!(!curve.points.is_empty());
        for pt in &curve.points {
            assert!(pt.x0() >= pt.y0() - 1e-12);
        }
        for (pt, m) in curve.points.iter().rev().zip(curve.mirror.iter()) {
            assert!((pt.x0() - m.eps2).abs() < 1e-15);
            assert!((pt.y0() - m.eps1).abs() < 1e-15);
        }
        let crossing = curve.crossing.expect("branch reaches the bisector");
        assert!((crossing.eps1 - crossing.eps2).abs() < 1e-12);
        // crossing sits just above the low well bottom
        assert!(crossing.eps1 > 1.0 && crossing.eps1 < 1.1, "crossing at {}", crossing.eps1);
    }

    #[test]
    fn asymptotic_seed_error_rates() {
        // the nucleating determinant carries the full first-order term, so
        // its gap to the seed shrinks quadratically; eps_bar keeps an O(mu)
        // reparametrization term and shrinks linearly
        let err = |mu: f64| {
            let p = params(mu);
            let pt = solve_secondary(1.7, &p).unwrap();
            let (x0, y0) = asymptotic_secondary(1.7, &p).unwrap();
            ((pt.eps_bar - x0).abs(), (pt.d0 - x0 * y0).abs())
        };
        let (eb_coarse, d0_coarse) = err(0.2);
        let (eb_fine, d0_fine) = err(0.1);
        let d0_ratio = d0_coarse / d0_fine;
        assert!((3.5..=4.5).contains(&d0_ratio), "d0 ratio {d0_ratio}");
        let eb_ratio = eb_coarse / eb_fine;
        assert!((1.6..=2.6).contains(&eb_ratio), "eps_bar ratio {eb_ratio}");
    }

    #[test]
    fn d0_tends_to_the_low_well_as_mu_vanishes() {
        let eps0 = 1.6;
        let mut last_gap = f64::INFINITY;
        for mu in [0.2, 0.1, 0.05] {
            let pt = solve_secondary(eps0, &params(mu)).unwrap();
            let gap = (pt.d0 - 1.0).abs();
            assert!(gap < last_gap, "gap {gap} did not shrink at mu = {mu}");
            last_gap = gap;
        }
        assert!(last_gap < 0.02);
    }
}
