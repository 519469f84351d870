//! Polyconvexity tests along hydrostatic strains `eps * I`.
//!
//! Polyconvexity at `F` means there is a constant `m` with
//! `W^o(F, H) - m det H >= 0` for every increment `H`. Along the bisector
//! the candidate constant is pinned down by the boundary case
//! `det H = (tr H)^2 / 4`, which yields `m*`; whether some admissible
//! critical point of the reduced objective `f(delta)` dips negative then
//! decides the verdict. The test is sound but not complete, hence the
//! explicit `Indeterminate` outcome.

use crate::jumpset::JumpPair;
use crate::material::{self, MaterialParams};
use crate::numerics::{minimize_bounded_grid, real_roots_cubic, Tolerance};
use crate::par;
use crate::{Error, Result};

/// Outcome of a polyconvexity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcxStatus {
    Polyconvex,
    NotPolyconvex,
    Indeterminate,
}

/// Verdict plus the certifying constant or the failing witness.
///
/// `gap` is a signed margin: for `Polyconvex` how far the nearest critical
/// point stays from admissibility (or the boundary match for W-points), for
/// `NotPolyconvex` the most negative `f` value found at `witness_delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcxVerdict {
    pub status: PcxStatus,
    pub m_star: f64,
    pub witness_delta: Option<f64>,
    pub gap: f64,
}

const F_NEGATIVE_TOL: f64 = 1e-12;
const SCAN_POINTS: usize = 2048;
const THETA_GRID: usize = 1024;
const THETA_EXCLUSION: f64 = 1e-6;

/// Best polyconvexity constant available at `eps * I`:
/// `m* = mu + 4 min_theta [h(eps^2 + theta^2/4 + eps theta) - h(eps^2) - eps h'(eps^2) theta] / theta^2`.
pub fn m_star(eps: f64, p: &MaterialParams) -> f64 {
    m_star_argmin(eps, p).0
}

/// Same as [`m_star`] but also returns the minimizing `theta`.
pub fn m_star_argmin(eps: f64, p: &MaterialParams) -> (f64, f64) {
    assert!(eps > 0.0, "hydrostatic stretch must be positive");
    let e2 = eps * eps;
    let h0 = p.well(e2);
    let hp0 = p.well_d(e2);
    let objective = |theta: f64| {
        (p.well(e2 + 0.25 * theta * theta + eps * theta) - h0 - eps * hp0 * theta)
            / (theta * theta)
    };

    let theta_max = 8.0 * eps + 4.0 * p.d2().sqrt();
    let tol = Tolerance { abs: 1e-12, rel: 1e-12, max_iter: 200 };

    // the two halves never cross theta = 0; the removable singularity there
    // is covered by the quadratic Taylor limit
    let half = THETA_GRID / 2;
    let (neg_t, neg_v) =
        minimize_bounded_grid(objective, -theta_max, -THETA_EXCLUSION, half, &tol);
    let (pos_t, pos_v) = minimize_bounded_grid(objective, THETA_EXCLUSION, theta_max, half, &tol);
    let zero_limit = 0.25 * hp0 + 0.5 * e2 * p.well_dd(e2);

    let mut best = (neg_v, neg_t);
    if pos_v < best.0 {
        best = (pos_v, pos_t);
    }
    if zero_limit < best.0 {
        best = (zero_limit, 0.0);
    }
    (p.mu() + 4.0 * best.0, best.1)
}

/// Reduced objective along the family of critical points,
/// `f(delta) = h(delta) - h(eps^2) - h'(delta)(delta - eps^2) - eps^2 (h'(delta) - h'(eps^2))^2 / (2 mu)`.
fn f_of_delta(delta: f64, eps: f64, p: &MaterialParams) -> f64 {
    let e2 = eps * eps;
    let dh = p.well_d(delta) - p.well_d(e2);
    p.well(delta) - p.well(e2) - p.well_d(delta) * (delta - e2) - e2 * dh * dh / (2.0 * p.mu())
}

/// Roots of the critical-point equation `h'(delta) = target`, ascending.
fn critical_roots(target: f64, p: &MaterialParams) -> Vec<f64> {
    let s = p.d1() + p.d2();
    let q = p.d1() * p.d2();
    // h'(x) = 4x^3 - 6sx^2 + 2(s^2 + 2q)x - 2qs
    real_roots_cubic(4.0, -6.0 * s, 2.0 * (s * s + 2.0 * q), -2.0 * q * s - target)
        .expect("leading coefficient is 4")
        .into_iter()
        .map(|r| r.value)
        .collect()
}

/// Classifies the hydrostatic strain `eps * I`.
///
/// Polyconvex when no critical point of the reduced problem is admissible;
/// not polyconvex when an admissible `delta <= delta*` exhibits `f < 0`;
/// indeterminate otherwise. The liquid limit `mu = 0` is rejected since `f`
/// divides by `mu`.
pub fn pcx_classify_hydro(eps: f64, p: &MaterialParams) -> Result<PcxVerdict> {
    if eps <= 0.0 {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    if p.mu() == 0.0 {
        return Err(Error::Domain(
            "mu = 0 is handled by the convexification of h, not by this test".into(),
        ));
    }

    let ms = m_star(eps, p);
    let mu = p.mu();
    let e2 = eps * eps;
    let bound = e2 * (p.well_d(e2) + mu - ms).powi(2) / (4.0 * mu * mu);

    let roots = critical_roots(ms + mu, p);
    let slack = 1e-12 * (1.0 + bound.abs());
    let admissible = roots.iter().any(|&r| r <= bound + slack);

    if !admissible {
        let margin = roots
            .iter()
            .map(|&r| r - bound)
            .fold(f64::INFINITY, f64::min);
        return Ok(PcxVerdict {
            status: PcxStatus::Polyconvex,
            m_star: ms,
            witness_delta: None,
            gap: margin,
        });
    }

    // smallest root is admissible whenever any root is
    let delta_star = roots[0];
    let lo = (p.d1() / 4.0).min(delta_star - 0.25 * (p.d2() - p.d1()));
    let mut worst = (f64::INFINITY, delta_star);
    for i in 0..SCAN_POINTS {
        let delta = lo + (delta_star - lo) * i as f64 / (SCAN_POINTS - 1) as f64;
        let v = f_of_delta(delta, eps, p);
        if v < worst.0 {
            worst = (v, delta);
        }
    }

    if worst.0 < -F_NEGATIVE_TOL {
        Ok(PcxVerdict {
            status: PcxStatus::NotPolyconvex,
            m_star: ms,
            witness_delta: Some(worst.1),
            gap: worst.0,
        })
    } else {
        Ok(PcxVerdict {
            status: PcxStatus::Indeterminate,
            m_star: ms,
            witness_delta: None,
            gap: worst.0,
        })
    }
}

/// First-order stability bound along the bisector:
/// `sqrt(d1) + mu / (h''(d1) sqrt(d1)) * (sqrt(d2) - sqrt(d1)) / (sqrt(d2) + sqrt(d1))`.
pub fn pcx_bound_hydro_asymptotic(p: &MaterialParams) -> f64 {
    let s1 = p.d1().sqrt();
    let s2 = p.d2().sqrt();
    s1 + p.mu() / (p.well_dd(p.d1()) * s1) * (s2 - s1) / (s2 + s1)
}

/// Two-sided bracketing of the largest polyconvex hydrostatic stretch.
///
/// `polyconvex_up_to` classified Polyconvex, `not_polyconvex_from`
/// classified NotPolyconvex; the gap is at most the bisection tolerance
/// unless an `Indeterminate` verdict stopped the search, in which case the
/// stopping point is recorded and the interval stays wide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydroBound {
    pub polyconvex_up_to: f64,
    pub not_polyconvex_from: f64,
    pub indeterminate_at: Option<f64>,
}

impl HydroBound {
    /// Largest stretch proven polyconvex.
    pub fn value(&self) -> f64 {
        self.polyconvex_up_to
    }

    pub fn width(&self) -> f64 {
        self.not_polyconvex_from - self.polyconvex_up_to
    }
}

const BISECTION_TOL: f64 = 1e-8;

/// Locates the lower stability boundary on the bisector by bracketing the
/// first Polyconvex -> NotPolyconvex transition above `sqrt(d1)` and
/// bisecting it to 1e-8.
pub fn pcx_bound_hydro_numeric(p: &MaterialParams) -> Result<HydroBound> {
    if p.mu() <= 0.0 {
        return Err(Error::Domain("mu must be positive for the numeric bound".into()));
    }
    let s1 = p.d1().sqrt();
    let s2 = p.d2().sqrt();

    let mut lo = s1;
    match pcx_classify_hydro(lo, p)?.status {
        PcxStatus::Polyconvex => {}
        _ => {
            // the well bottom itself should certify; report a degenerate interval
            return Ok(HydroBound {
                polyconvex_up_to: s1,
                not_polyconvex_from: s1,
                indeterminate_at: Some(s1),
            });
        }
    }

    let step = (s2 - s1) / 64.0;
    let mut hi = None;
    let mut indeterminate_at = None;
    for i in 1..=64 {
        let eps = s1 + step * i as f64;
        match pcx_classify_hydro(eps, p)?.status {
            PcxStatus::Polyconvex => lo = eps,
            PcxStatus::NotPolyconvex => {
                hi = Some(eps);
                break;
            }
            PcxStatus::Indeterminate => {
                indeterminate_at = Some(eps);
                break;
            }
        }
    }

    let Some(mut hi) = hi else {
        return Ok(HydroBound {
            polyconvex_up_to: lo,
            not_polyconvex_from: indeterminate_at.unwrap_or(s2),
            indeterminate_at,
        });
    };

    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        match pcx_classify_hydro(mid, p)?.status {
            PcxStatus::Polyconvex => lo = mid,
            PcxStatus::NotPolyconvex => hi = mid,
            PcxStatus::Indeterminate => {
                indeterminate_at = Some(mid);
                break;
            }
        }
    }

    Ok(HydroBound { polyconvex_up_to: lo, not_polyconvex_from: hi, indeterminate_at })
}

/// The only constant that can certify a jump pair:
/// `m = <[P], cof [F]> / |[F]|^2`.
pub fn m_jump(pair: &JumpPair, p: &MaterialParams) -> f64 {
    let f_plus = pair.f_plus();
    let f_minus = pair.f_minus();
    let dp = material::piola(&f_plus, p).expect("jump pair has positive determinants")
        - material::piola(&f_minus, p).expect("jump pair has positive determinants");
    let df = f_plus - f_minus;
    dp.inner(&df.cof()) / df.norm2()
}

/// Verdicts on a uniform grid along the bisector, parallel when enabled.
pub fn classify_bisector(
    p: &MaterialParams,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<(f64, PcxVerdict)>> {
    let grid = bisector_grid(lo, hi, n);
    par::map_indexed(grid.len(), |i| {
        pcx_classify_hydro(grid[i], p).map(|v| (grid[i], v))
    })
    .into_iter()
    .collect()
}

/// Sequential twin of [`classify_bisector`], kept for benchmarking.
pub fn classify_bisector_seq(
    p: &MaterialParams,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<(f64, PcxVerdict)>> {
    let grid = bisector_grid(lo, hi, n);
    par::map_indexed_seq(grid.len(), |i| {
        pcx_classify_hydro(grid[i], p).map(|v| (grid[i], v))
    })
    .into_iter()
    .collect()
}

fn bisector_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 0 || hi < lo {
        return Vec::new();
    }
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
