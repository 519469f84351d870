//! Damped Newton iteration for two equations in two unknowns with a
//! finite-difference Jacobian.

use super::Tolerance;
use crate::{Error, Result};

const MAX_HALVINGS: u32 = 30;
const COND_LIMIT: f64 = 1e14;
// a persistently linear contraction means the root is degenerate
const SLOW_CONTRACTION: f64 = 0.05;
const SLOW_STREAK_LIMIT: u32 = 12;

fn norm_inf(v: (f64, f64)) -> f64 {
    v.0.abs().max(v.1.abs())
}

/// Solves `F(x, y) = 0` starting from `seed`.
///
/// The Jacobian is approximated by forward differences with step
/// `sqrt(eps) * max(1, |x|)`; each Newton step is halved (up to 30 times)
/// until the residual norm decreases. A long streak of merely linear
/// contraction is treated as non-convergence, since it signals a degenerate
/// root that full Newton steps cannot resolve.
pub fn newton2<F>(f: F, seed: (f64, f64), tol: &Tolerance) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let mut x = seed;
    let mut fx = f(x.0, x.1);
    let mut slow_streak = 0u32;

    for _ in 0..tol.max_iter {
        if norm_inf(fx) <= tol.abs {
            return Ok(x);
        }

        let hx = f64::EPSILON.sqrt() * x.0.abs().max(1.0);
        let hy = f64::EPSILON.sqrt() * x.1.abs().max(1.0);
        let fxh = f(x.0 + hx, x.1);
        let fyh = f(x.0, x.1 + hy);
        let j = [
            [(fxh.0 - fx.0) / hx, (fyh.0 - fx.0) / hy],
            [(fxh.1 - fx.1) / hx, (fyh.1 - fx.1) / hy],
        ];

        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let norm = (j[0][0].abs() + j[0][1].abs()).max(j[1][0].abs() + j[1][1].abs());
        let inv_norm = (j[1][1].abs() + j[0][1].abs()).max(j[1][0].abs() + j[0][0].abs());
        if det == 0.0 || norm * inv_norm / det.abs() > COND_LIMIT {
            return Err(Error::SingularJacobian {
                cond: if det == 0.0 { f64::INFINITY } else { norm * inv_norm / det.abs() },
            });
        }

        let dx = (j[0][1] * fx.1 - j[1][1] * fx.0) / det;
        let dy = (j[1][0] * fx.0 - j[0][0] * fx.1) / det;

        let mut s = 1.0;
        let mut candidate = (x.0 + s * dx, x.1 + s * dy);
        let mut fc = f(candidate.0, candidate.1);
        for _ in 0..MAX_HALVINGS {
            if norm_inf(fc) < norm_inf(fx) {
                break;
            }
            s *= 0.5;
            candidate = (x.0 + s * dx, x.1 + s * dy);
            fc = f(candidate.0, candidate.1);
        }
        if !norm_inf(fc).is_finite() {
            return Err(Error::MaxIterations(tol.max_iter));
        }
        if norm_inf(fc) > SLOW_CONTRACTION * norm_inf(fx) {
            slow_streak += 1;
            if slow_streak >= SLOW_STREAK_LIMIT {
                return Err(Error::MaxIterations(tol.max_iter));
            }
        } else {
            slow_streak = 0;
        }
        x = candidate;
        fx = fc;
    }

    if norm_inf(fx) <= tol.abs {
        Ok(x)
    } else {
        Err(Error::MaxIterations(tol.max_iter))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_system_converges_in_one_step() {
        let r = newton2(|x, y| (x - 1.0, y - 2.0), (0.0, 0.0), &Tolerance::default()).unwrap();
        assert!((r.0 - 1.0).abs() < 1e-10 && (r.1 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn circle_line_intersection() {
        let r = newton2(
            |x, y| (x * x + y * y - 1.0, x - y),
            (1.0, 0.0),
            &Tolerance::default(),
        )
        .unwrap();
        let s = 0.5_f64.sqrt();
        assert!((r.0 - s).abs() < 1e-10 && (r.1 - s).abs() < 1e-10);
    }

    #[test]
    fn degenerate_root_is_reported() {
        let r = newton2(|x, y| (x * x, y * y), (1.0, 1.0), &Tolerance::default());
        assert!(
            matches!(r, Err(Error::SingularJacobian { .. }) | Err(Error::MaxIterations(_))),
            "got {r:?}"
        );
    }

    #[test]
    fn residual_at_solution_is_within_tolerance() {
        let tol = Tolerance::default();
        let f = |x: f64, y: f64| ((x - 0.3).exp() - y, x * y - 0.7);
        let r = newton2(f, (0.5, 1.0), &tol).unwrap();
        let res = f(r.0, r.1);
        assert!(res.0.abs().max(res.1.abs()) <= tol.abs);
    }
}
