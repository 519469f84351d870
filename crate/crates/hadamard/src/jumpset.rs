//! The primary jump set and its Weierstrass-stable arc.
//!
//! In the shared diagonal frame a jump pair is `F_pm = diag(eps_pm, eps0)`.
//! For the quartic well the determinants `d_pm = eps0 * eps_pm` solve
//! `(d - d1)(d - d2) = -mu / (4 eps0^2)`, which makes the whole set explicit
//! in the single parameter `eps0`.

use crate::material::{DiagonalStrain, MaterialParams, Matrix2};
use crate::numerics::real_roots_cubic;
use crate::par;
use crate::pcx::{m_jump, PcxStatus, PcxVerdict};
use crate::{Error, Result};

/// A primary jump-set pair in the shared diagonal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpPair {
    eps0: f64,
    eps_plus: f64,
    eps_minus: f64,
}

impl JumpPair {
    /// Shared singular value.
    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// Larger of the two distinguished singular values.
    pub fn eps_plus(&self) -> f64 {
        self.eps_plus
    }

    pub fn eps_minus(&self) -> f64 {
        self.eps_minus
    }

    pub fn d_plus(&self) -> f64 {
        self.eps0 * self.eps_plus
    }

    pub fn d_minus(&self) -> f64 {
        self.eps0 * self.eps_minus
    }

    pub fn f_plus(&self) -> Matrix2 {
        Matrix2::diag(self.eps_plus, self.eps0)
    }

    pub fn f_minus(&self) -> Matrix2 {
        Matrix2::diag(self.eps_minus, self.eps0)
    }

    /// Rank-one connection `a (x) n` with `n = e1`, `a = (eps+ - eps-) e1`.
    pub fn rank_one(&self) -> Matrix2 {
        Matrix2::outer([self.eps_plus - self.eps_minus, 0.0], [1.0, 0.0])
    }

    pub fn strain_plus(&self) -> DiagonalStrain {
        DiagonalStrain { eps1: self.eps_plus, eps2: self.eps0 }
    }

    pub fn strain_minus(&self) -> DiagonalStrain {
        DiagonalStrain { eps1: self.eps_minus, eps2: self.eps0 }
    }
}

/// Explicit jump pair at the parameter `eps0`.
///
/// Requires the discriminant `(d2 - d1)^2 - mu / eps0^2` to be nonnegative,
/// i.e. `eps0 >= sqrt(mu) / (d2 - d1)`; at equality the two wells merge into
/// a double root.
pub fn jump_pair(eps0: f64, p: &MaterialParams) -> Result<JumpPair> {
    if eps0 <= 0.0 {
        return Err(Error::Domain(format!("eps0 = {eps0} must be positive")));
    }
    let dd = p.d2() - p.d1();
    let disc = dd * dd - p.mu() / (eps0 * eps0);
    // forgive rounding at the double-root boundary
    if disc < -1e-12 * dd * dd {
        return Err(Error::OutsideDomain { eps0 });
    }
    let root = disc.max(0.0).sqrt();
    let s = p.d1() + p.d2();
    Ok(JumpPair {
        eps0,
        eps_plus: (s + root) / (2.0 * eps0),
        eps_minus: (s - root) / (2.0 * eps0),
    })
}

/// Weierstrass necessary condition restricted to the jump directions:
/// `eps0 >= eps_plus` and `eps0 >= eps_minus` (1e-12 slack).
pub fn weierstrass_ok(pair: &JumpPair) -> bool {
    let slack = 1e-12 * (1.0 + pair.eps0.abs());
    pair.eps0 - pair.eps_plus >= -slack && pair.eps0 - pair.eps_minus >= -slack
}

/// One sampled point of the jump-set curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpCurvePoint {
    pub pair: JumpPair,
    pub weierstrass_ok: bool,
}

/// Samples the jump set on `n` uniform `eps0` values across `range`.
pub fn jump_set_curve(
    p: &MaterialParams,
    range: (f64, f64),
    n: usize,
) -> Result<Vec<JumpCurvePoint>> {
    let grid = curve_grid(range, n);
    par::map_indexed(grid.len(), |i| curve_point(grid[i], p))
        .into_iter()
        .collect()
}

/// Sequential twin of [`jump_set_curve`], kept for benchmarking.
pub fn jump_set_curve_seq(
    p: &MaterialParams,
    range: (f64, f64),
    n: usize,
) -> Result<Vec<JumpCurvePoint>> {
    let grid = curve_grid(range, n);
    par::map_indexed_seq(grid.len(), |i| curve_point(grid[i], p))
        .into_iter()
        .collect()
}

fn curve_point(eps0: f64, p: &MaterialParams) -> Result<JumpCurvePoint> {
    let pair = jump_pair(eps0, p)?;
    Ok(JumpCurvePoint { weierstrass_ok: weierstrass_ok(&pair), pair })
}

fn curve_grid(range: (f64, f64), n: usize) -> Vec<f64> {
    let (lo, hi) = range;
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

/// The jump-set point where `eps_plus = eps0`, delimiting the stable arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WPoint {
    pub eps0: f64,
    pub eps_minus: f64,
    pub mu: f64,
}

impl WPoint {
    /// `alpha0 = eps0 + eps_minus`.
    pub fn alpha0(&self) -> f64 {
        self.eps0 + self.eps_minus
    }

    pub fn d_plus(&self) -> f64 {
        self.eps0 * self.eps0
    }

    pub fn d_minus(&self) -> f64 {
        self.eps0 * self.eps_minus
    }

    /// The three strain-plane coordinates occupied by the W-points.
    pub fn coordinates(&self) -> [DiagonalStrain; 3] {
        [
            DiagonalStrain { eps1: self.eps0, eps2: self.eps_minus },
            DiagonalStrain { eps1: self.eps_minus, eps2: self.eps0 },
            DiagonalStrain { eps1: self.eps0, eps2: self.eps0 },
        ]
    }

    /// The underlying jump pair (`eps_plus` coincides with `eps0`).
    pub fn to_jump_pair(&self) -> JumpPair {
        JumpPair { eps0: self.eps0, eps_plus: self.eps0, eps_minus: self.eps_minus }
    }
}

/// W-point coordinates from the cubic `-4d (d - d1)(d - d2) = mu`;
/// `eps0^2` is its largest root.
pub fn w_point(p: &MaterialParams) -> Result<WPoint> {
    let (d1, d2, mu) = (p.d1(), p.d2(), p.mu());
    // -4d^3 + 4(d1 + d2)d^2 - 4 d1 d2 d - mu = 0
    let roots = real_roots_cubic(-4.0, 4.0 * (d1 + d2), -4.0 * d1 * d2, -mu)?;
    let largest = roots.last().expect("cubic always has a real root").value;
    let slack = 1e-9 * d2;
    if largest <= d1 || largest > d2 + slack {
        return Err(Error::NoWPoint { mu });
    }
    let d = largest.min(d2);
    let eps0 = d.sqrt();
    Ok(WPoint { eps0, eps_minus: (d1 + d2 - d) / eps0, mu })
}

/// Largest `mu` for which the W-point cubic still has a root in the well
/// interval: the maximum of `-4d (d - d1)(d - d2)` over `(d1, d2)`, attained
/// at the root of `3d^2 - 2(d1 + d2)d + d1 d2` inside the interval.
pub fn w_point_existence_threshold(p: &MaterialParams) -> f64 {
    let (d1, d2) = (p.d1(), p.d2());
    let s = d1 + d2;
    let d_crit = (s + (s * s - 3.0 * d1 * d2).sqrt()) / 3.0;
    -4.0 * d_crit * (d_crit - d1) * (d_crit - d2)
}

const W_PCX_GAP_TOL: f64 = 1e-9;

/// Polyconvexity test at the W-points.
///
/// Minimizes `phi(d) = h(d) + mu (d + alpha0 d / (2 eps0) - 2 alpha0 sqrt(d))`
/// over `[alpha0^2/4, alpha0^2]` and compares with the marginal value
/// `phi(eps0^2) = h(eps0^2) - mu eps0 (eps0/2 + 3 eps-/2)`; a strictly lower
/// interior value disproves the certificate.
pub fn w_point_pcx_check(p: &MaterialParams) -> Result<PcxVerdict> {
    let w = w_point(p)?;
    let mu = p.mu();
    let (eps0, alpha0) = (w.eps0, w.alpha0());

    let phi = |d: f64| {
        p.well(d) + mu * (d + alpha0 * d / (2.0 * eps0) - 2.0 * alpha0 * d.sqrt())
    };
    let rhs = p.well(eps0 * eps0) - mu * eps0 * (0.5 * eps0 + 1.5 * w.eps_minus);

    let lo = 0.25 * alpha0 * alpha0;
    let hi = alpha0 * alpha0;
    let tol = crate::numerics::Tolerance { abs: 1e-12, rel: 1e-12, max_iter: 200 };
    let (d_min, phi_min) = crate::numerics::minimize_bounded_grid(phi, lo, hi, 256, &tol);

    let gap = phi_min - rhs;
    let m = m_jump(&w.to_jump_pair(), p);
    if gap < -W_PCX_GAP_TOL {
        Ok(PcxVerdict {
            status: PcxStatus::NotPolyconvex,
            m_star: m,
            witness_delta: Some(d_min),
            gap,
        })
    } else {
        Ok(PcxVerdict { status: PcxStatus::Polyconvex, m_star: m, witness_delta: None, gap })
    }
}

const W_PCX_THRESHOLD_TOL: f64 = 1e-5;

/// Largest `mu` below which the W-points stay polyconvex, by bisection on
/// the verdict of [`w_point_pcx_check`] over the existence range.
pub fn w_point_pcx_threshold(d1: f64, d2: f64) -> Result<f64> {
    let base = MaterialParams::new(0.0, d1, d2)?;
    let cap = w_point_existence_threshold(&base);

    let verdict_at = |mu: f64| -> Result<bool> {
        let p = base.with_mu(mu)?;
        Ok(w_point_pcx_check(&p)?.status == PcxStatus::Polyconvex)
    };

    let mut lo = 0.0;
    let mut hi = cap * (1.0 - 1e-9);
    if verdict_at(hi)? {
        // polyconvex all the way up to existence
        return Ok(hi);
    }
    while hi - lo > W_PCX_THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if mid == 0.0 || verdict_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
