//! Real roots of cubic polynomials, closed form plus Newton polish.

use crate::{Error, Result};

/// A real root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoot {
    pub value: f64,
    pub multiplicity: u8,
}

/// All real roots of `c3 x^3 + c2 x^2 + c1 x + c0`, ascending.
///
/// Roots come from the trigonometric/Cardano closed forms on the depressed
/// cubic, are polished by Newton on the original polynomial, and carry the
/// multiplicity determined by the discriminant.
pub fn real_roots_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<CubicRoot>> {
    if c3 == 0.0 || !c3.is_finite() {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;

    // depressed form t^3 + p t + q with x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;

    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let scale = 4.0 * p.abs().powi(3) + 27.0 * q * q;
    let disc_tol = 1e-12 * scale.max(f64::MIN_POSITIVE);

    let f = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
    let fp = |x: f64| (3.0 * c3 * x + 2.0 * c2) * x + c1;

    let polish = |x0: f64, mult: u8| -> f64 {
        let mut x = x0;
        for _ in 0..8 {
            let d = fp(x);
            if d == 0.0 {
                break;
            }
            let step = f64::from(mult) * f(x) / d;
            if !step.is_finite() || step.abs() <= f64::EPSILON * x.abs().max(1.0) * 0.25 {
                x -= step;
                break;
            }
            x -= step;
        }
        x
    };

    let mut roots: Vec<CubicRoot> = if disc > disc_tol {
        // three distinct real roots
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos();
        (0..3)
            .map(|k| {
                let t = m * ((phi - 2.0 * std::f64::consts::PI * f64::from(k)) / 3.0).cos();
                CubicRoot { value: polish(t + shift, 1), multiplicity: 1 }
            })
            .collect()
    } else if disc < -disc_tol {
        // one real root; take the larger-magnitude Cardano branch to avoid
        // cancellation, then recover the partner from u*v = -p/3
        let half_q = 0.5 * q;
        let r = (half_q * half_q + p * p * p / 27.0).sqrt();
        let big = if (-half_q + r).abs() >= (-half_q - r).abs() { -half_q + r } else { -half_q - r };
        let u = big.cbrt();
        let t = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        vec![CubicRoot { value: polish(t + shift, 1), multiplicity: 1 }]
    } else if p.abs() <= 1e-10 * (1.0 + a * a) {
        // triple root
        vec![CubicRoot { value: shift, multiplicity: 3 }]
    } else {
        // double root plus a simple one
        let double = -3.0 * q / (2.0 * p);
        let simple = 3.0 * q / p;
        vec![
            CubicRoot { value: polish(double + shift, 2), multiplicity: 2 },
            CubicRoot { value: polish(simple + shift, 1), multiplicity: 1 },
        ]
    };

    roots.sort_by(|l, r| l.value.total_cmp(&r.value));
    Ok(roots)
}
