//! Bounded scalar minimization: coarse grid scan refined by golden section.
//!
//! Heuristically global (the grid), exactly local (the refinement). All
//! objectives in this crate are smooth with a handful of local minima on
//! bounded intervals, which is what the grid density is calibrated for.

use super::Tolerance;

/// Grid points used by [`minimize_bounded`].
pub const DEFAULT_GRID: usize = 256;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes `f` on `[lo, hi]` with the default grid density.
///
/// Ties break to the leftmost grid point; a constant objective returns
/// `(lo, f(lo))`.
pub fn minimize_bounded<F>(f: F, lo: f64, hi: f64, tol: &Tolerance) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    minimize_bounded_grid(f, lo, hi, DEFAULT_GRID, tol)
}

/// Same as [`minimize_bounded`] with an explicit grid density (`n >= 2`).
pub fn minimize_bounded_grid<F>(f: F, lo: f64, hi: f64, n: usize, tol: &Tolerance) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    assert!(lo < hi, "minimize_bounded needs lo < hi");
    let n = n.max(2);
    let step = (hi - lo) / (n - 1) as f64;

    let mut best_i = 0;
    let mut best_x = lo;
    let mut best_f = f(lo);
    for i in 1..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v < best_f {
            best_f = v;
            best_x = x;
            best_i = i;
        }
    }

    let a = if best_i == 0 { lo } else { best_x - step };
    let b = if best_i == n - 1 { hi } else { best_x + step };
    let (gx, gf) = golden_section(&f, a.max(lo), b.min(hi), tol);

    if gf < best_f {
        (gx, gf)
    } else {
        (best_x, best_f)
    }
}

fn golden_section<F>(f: &F, mut a: f64, mut b: f64, tol: &Tolerance) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..tol.max_iter {
        if b - a <= tol.abs + tol.rel * (0.5 * (a + b)).abs() {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
