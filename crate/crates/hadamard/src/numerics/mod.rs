//! Shared scalar kernels: bracketed root finding, bounded 1D minimization,
//! damped Newton for 2x2 systems, adaptive explicit Runge-Kutta integration,
//! and real roots of cubics.

mod cubic;
mod minimize;
mod newton;
mod ode;

pub use cubic::{real_roots_cubic, CubicRoot};
pub use minimize::{minimize_bounded, minimize_bounded_grid, DEFAULT_GRID};
pub use newton::newton2;
pub use ode::{integrate_ode, integrate_ode_through, Trajectory};

use crate::{Error, Result};

/// Absolute/relative tolerances plus an iteration cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64, max_iter: usize) -> Result<Self> {
        if abs > 0.0 && rel > 0.0 && max_iter >= 1 {
            Ok(Self { abs, rel, max_iter })
        } else {
            Err(Error::InvalidParams(format!(
                "tolerances must be positive with max_iter >= 1, got abs={abs} rel={rel} max_iter={max_iter}"
            )))
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-10, max_iter: 200 }
    }
}

/// A sign-change interval for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidParams(format!("bracket needs lo < hi, got [{lo}, {hi}]")))
        }
    }
}

/// Brent's method on a bracketing interval.
///
/// Returns `x` with `|f(x)| <= tol.abs` or with the bracket shrunk below
/// `tol.rel * |x| + tol.abs`.
pub fn find_root<F>(mut f: F, bracket: Bracket, tol: &Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: bracket.lo, hi: bracket.hi });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol_x = 0.5 * (tol.rel * b.abs() + tol.abs);
        let m = 0.5 * (c - b);
        if fb.abs() <= tol.abs {
            return Ok(b);
        }
        if m.abs() <= tol_x {
            // width-based stop: a few secant steps drive the residual from
            // |f'| * width down to rounding level
            return Ok(polish_secant(&mut f, b, fb, b + 2.0 * m, fc));
        }
        if e.abs() < tol_x || fa.abs() <= fb.abs() {
            d = m;
            e = m;
        } else {
            // inverse quadratic interpolation, falling back to secant
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol_x * q).abs()).min((e * q / 2.0).abs() * 2.0) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol_x { d } else { tol_x.copysign(m) };
        fb = f(b);
    }
    Err(Error::MaxIterations(tol.max_iter))
}

fn polish_secant<F>(f: &mut F, mut x0: f64, mut f0: f64, mut x1: f64, mut f1: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut best_x, mut best_f) = if f0.abs() <= f1.abs() { (x0, f0) } else { (x1, f1) };
    for _ in 0..4 {
        let denom = f1 - f0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !x2.is_finite() {
            break;
        }
        let f2 = f(x2);
        if f2.abs() < best_f.abs() {
            best_x = x2;
            best_f = f2;
        }
        if f2.abs() == 0.0 {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    best_x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_to_machine_precision() {
        let tol = Tolerance::default();
        let x = find_root(|x| x * x - 2.0, Bracket::new(1.0, 2.0).unwrap(), &tol).unwrap();
        assert!((x - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    // plain bisection, used as the independent oracle
    fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
        let mut fa = f(a);
        assert!(fa * f(b) <= 0.0);
        while b - a > tol {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fa.signum() == fm.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn cubic_root_matches_bisection_oracle() {
        let f = |d: f64| -4.0 * d * (d - 1.0) * (d - 3.0) - 1.0;
        let oracle = bisect(f, 2.5, 3.0, 1e-10);
        let x = find_root(f, Bracket::new(2.5, 3.0).unwrap(), &Tolerance::default()).unwrap();
        assert!((x - oracle).abs() < 1e-9);
        assert!((x - 2.9568).abs() < 1e-4);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let err = find_root(|x| x, Bracket::new(1.0, 2.0).unwrap(), &Tolerance::default());
        assert!(matches!(err, Err(Error::NoSignChange { .. })));
    }

    type Case = (Box<dyn Fn(f64) -> f64>, f64, f64);

    #[test]
    fn residual_within_ten_times_abs_tolerance() {
        let tol = Tolerance::default();
        let cases: Vec<Case> = vec![
            (Box::new(|x: f64| x * x - 2.0), 1.0, 2.0),
            (Box::new(|x: f64| x.cos() - x), 0.0, 1.0),
            (Box::new(|x: f64| x.exp() - 3.0), 0.0, 2.0),
            (Box::new(|x: f64| x.powi(3) - 2.0 * x - 5.0), 2.0, 3.0),
        ];
        for (f, lo, hi) in cases {
            let x = find_root(&*f, Bracket::new(lo, hi).unwrap(), &tol).unwrap();
            assert!(f(x).abs() <= 10.0 * tol.abs, "residual {} too large", f(x).abs());
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(1e-12, 1e-10, 0).is_err());
        assert!(Tolerance::new(0.0, 1e-10, 10).is_err());
        assert!(Bracket::new(2.0, 1.0).is_err());
    }
}
