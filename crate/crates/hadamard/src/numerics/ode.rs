//! Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with the matching
//! fourth-order dense output.

use super::Tolerance;
use crate::{Error, Result};

// Dormand-Prince coefficients. FSAL: the seventh stage is the first stage
// of the next step.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// difference between the 5th- and 4th-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// dense-output weights
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const MAX_STEPS: usize = 2_000_000;
const UNDERFLOW_FRACTION: f64 = 1e-14;

// One accepted step: interval plus the quartic interpolation coefficients.
#[derive(Debug, Clone, Copy)]
struct Segment<const N: usize> {
    x_start: f64,
    h: f64,
    rcont: [[f64; N]; 5],
}

impl<const N: usize> Segment<N> {
    fn eval(&self, x: f64) -> [f64; N] {
        let theta = (x - self.x_start) / self.h;
        let theta1 = 1.0 - theta;
        let mut out = [0.0; N];
        let r = &self.rcont;
        for i in 0..N {
            out[i] = r[0][i]
                + theta
                    * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
        }
        out
    }

    fn lo(&self) -> f64 {
        self.x_start.min(self.x_start + self.h)
    }

    fn hi(&self) -> f64 {
        self.x_start.max(self.x_start + self.h)
    }
}

/// Accepted solver steps plus fourth-order dense interpolation inside them.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    // ascending x
    knots: Vec<(f64, [f64; N])>,
    segments: Vec<Segment<N>>,
    x_end: f64,
}

impl<const N: usize> Trajectory<N> {
    /// State at the final integration point.
    pub fn end(&self) -> (f64, [f64; N]) {
        let first = self.knots.first().expect("trajectory has at least the initial knot");
        let last = self.knots.last().expect("trajectory has at least the initial knot");
        if (first.0 - self.x_end).abs() < (last.0 - self.x_end).abs() {
            *first
        } else {
            *last
        }
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    /// Interpolates the state at `x` inside the integration range
    /// (clamped to the endpoints beyond it).
    pub fn sample(&self, x: f64) -> [f64; N] {
        let n = self.knots.len();
        if self.segments.is_empty() || x <= self.knots[0].0 {
            return self.knots[0].1;
        }
        if x >= self.knots[n - 1].0 {
            return self.knots[n - 1].1;
        }
        let idx = self
            .segments
            .partition_point(|s| s.hi() < x)
            .min(self.segments.len() - 1);
        debug_assert!(self.segments[idx].lo() <= x && x <= self.segments[idx].hi());
        self.segments[idx].eval(x)
    }

    /// `(x, y)` at every accepted step, ascending in `x`.
    pub fn points(&self) -> impl Iterator<Item = (f64, [f64; N])> + '_ {
        self.knots.iter().copied()
    }
}

/// Integrates `y' = rhs(x, y)` from `x0` to `x1` (either direction).
pub fn integrate_ode<const N: usize, F>(
    rhs: F,
    x0: f64,
    x1: f64,
    y0: [f64; N],
    tol: &Tolerance,
) -> Result<Trajectory<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    integrate_ode_through(rhs, x0, x1, y0, tol, &[])
}

/// Same as [`integrate_ode`] but forces the solver to land exactly on each
/// checkpoint, so those states are genuine Runge-Kutta points rather than
/// interpolants. Checkpoints must lie strictly between `x0` and `x1`; order
/// does not matter.
///
/// The local error per step is kept below `tol.abs + tol.rel * |y|`
/// componentwise. A controller step collapsing below `1e-14 |x1 - x0|`
/// reports [`Error::StepUnderflow`], which is how singularities of the
/// right-hand side surface.
pub fn integrate_ode_through<const N: usize, F>(
    rhs: F,
    x0: f64,
    x1: f64,
    y0: [f64; N],
    tol: &Tolerance,
    checkpoints: &[f64],
) -> Result<Trajectory<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let span = x1 - x0;
    if span == 0.0 || !span.is_finite() {
        return Err(Error::Domain(format!("bad integration range [{x0}, {x1}]")));
    }
    let dir = span.signum();

    let mut stops: Vec<f64> = checkpoints
        .iter()
        .copied()
        .filter(|&c| (c - x0) * dir > 0.0 && (x1 - c) * dir > 0.0)
        .collect();
    stops.sort_by(|a, b| (a * dir).total_cmp(&(b * dir)));
    let mut next_stop = 0usize;

    let mut x = x0;
    let mut y = y0;
    let mut k1 = rhs(x, &y);
    if !k1.iter().all(|v| v.is_finite()) {
        return Err(Error::Domain(format!("right-hand side not finite at x = {x}")));
    }

    let mut knots = Vec::with_capacity(256);
    let mut segments = Vec::with_capacity(256);
    knots.push((x, y));

    let mut h_ctrl = span.abs() / 100.0;
    let mut k = [[0.0; N]; 7];

    for _ in 0..MAX_STEPS {
        if (x - x1) * dir >= 0.0 {
            return Ok(finish(knots, segments, dir, x1));
        }
        if h_ctrl < UNDERFLOW_FRACTION * span.abs() {
            return Err(Error::StepUnderflow { x });
        }
        while next_stop < stops.len() && (stops[next_stop] - x) * dir <= 0.0 {
            next_stop += 1;
        }
        let mut target = x1;
        if next_stop < stops.len() && (stops[next_stop] - x1) * dir < 0.0 {
            target = stops[next_stop];
        }
        let mut h = dir * h_ctrl;
        let clamped = (x + h - target) * dir > 0.0;
        if clamped {
            h = target - x;
        }

        k[0] = k1;
        let mut failed_stage = false;
        for s in 1..7 {
            let mut ys = y;
            for i in 0..N {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ys[i] += h * acc;
            }
            k[s] = rhs(x + C[s] * h, &ys);
            if !k[s].iter().all(|v| v.is_finite()) {
                failed_stage = true;
                break;
            }
        }
        if failed_stage {
            h_ctrl *= 0.25;
            continue;
        }

        // 5th-order solution; the A[6] row doubles as its weights (FSAL)
        let mut y5 = y;
        for i in 0..N {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[6][j] * kj[i];
            }
            y5[i] += h * acc;
        }

        let mut err: f64 = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let scale = tol.abs + tol.rel * y[i].abs().max(y5[i].abs());
            err = err.max((e / scale).abs());
        }

        if err <= 1.0 {
            let mut rcont = [[0.0; N]; 5];
            for i in 0..N {
                let ydiff = y5[i] - y[i];
                let bspl = h * k[0][i] - ydiff;
                rcont[0][i] = y[i];
                rcont[1][i] = ydiff;
                rcont[2][i] = bspl;
                rcont[3][i] = ydiff - h * k[6][i] - bspl;
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate() {
                    acc += D[j] * kj[i];
                }
                rcont[4][i] = h * acc;
            }
            segments.push(Segment { x_start: x, h, rcont });
            x += h;
            y = y5;
            k1 = k[6];
            knots.push((x, y));
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !clamped {
                h_ctrl = h.abs() * factor;
            }
        } else {
            h_ctrl = h.abs() * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Err(Error::MaxIterations(MAX_STEPS))
}

fn finish<const N: usize>(
    mut knots: Vec<(f64, [f64; N])>,
    mut segments: Vec<Segment<N>>,
    dir: f64,
    x_end: f64,
) -> Trajectory<N> {
    if dir < 0.0 {
        knots.reverse();
        segments.reverse();
    }
    Trajectory { knots, segments, x_end }
}
