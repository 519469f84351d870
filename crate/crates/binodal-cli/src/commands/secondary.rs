//! `binodal secondary`: the numerically continued laminate-nucleation curve
//! next to its small-mu closed form, plus the mirror branch.

use hadamard::secondary;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{write_summary, write_table, Cell, Summary, Table};
use crate::AppError;

const DEFAULT_SAMPLES: usize = 400;

pub fn run(cfg: &RunConfig) -> Result<(), AppError> {
    let p = &cfg.material;
    let n = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    if p.mu() == 0.0 {
        return Err(AppError::Numeric(hadamard::Error::Domain(
            "the secondary system needs mu > 0; at mu = 0 it degenerates to the hyperbola x0 y0 = d1"
                .into(),
        )));
    }

    let curve = secondary::secondary_curve(p, n)?;

    let mut t = Table::new(vec!["eps0", "eps_bar", "d0", "lambda", "x0", "y0"]);
    for pt in &curve.points {
        t.push(vec![
            Cell::Float(pt.eps0),
            Cell::Float(pt.eps_bar),
            Cell::Float(pt.d0),
            Cell::Float(pt.lambda),
            Cell::Float(pt.x0()),
            Cell::Float(pt.y0()),
        ]);
    }
    write_table(&cfg.out, "secondary", &t, cfg.format)?;

    let mut m = Table::new(vec!["eps1", "eps2"]);
    for s in &curve.mirror {
        m.push(vec![Cell::Float(s.eps1), Cell::Float(s.eps2)]);
    }
    write_table(&cfg.out, "secondary_mirror", &m, cfg.format)?;

    let (lo, hi) = curve.window;
    let mut a = Table::new(vec!["eps0", "x0", "y0"]);
    for i in 0..n {
        let eps0 = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let (x0, y0) = secondary::asymptotic_secondary(eps0, p)?;
        a.push(vec![Cell::Float(eps0), Cell::Float(x0), Cell::Float(y0)]);
    }
    write_table(&cfg.out, "secondary_asymptotic", &a, cfg.format)?;

    let crossing = curve.crossing.map(|c| json!([c.eps1, c.eps2]));
    let first = curve.points.first();
    let last = curve.points.last();
    write_summary(
        &cfg.out,
        &Summary {
            command: "secondary".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "window": [lo, hi],
                "bisector_crossing": crossing,
                "points_kept": curve.points.len(),
                "eps0_first": first.map(|q| q.eps0),
                "eps0_last": last.map(|q| q.eps0),
                "lambda_range": [
                    first.map(|q| q.lambda),
                    last.map(|q| q.lambda),
                ],
            }),
            warnings: Vec::new(),
        },
    )
}
