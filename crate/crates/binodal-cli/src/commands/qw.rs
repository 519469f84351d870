//! `binodal qw`: the hydrostatic quasiconvex envelope from the numeric
//! profile, side by side with its small-mu closed form.

use hadamard::nucleus;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{write_summary, write_table, Cell, Summary, Table};
use crate::AppError;

const DEFAULT_SAMPLES: usize = 400;

fn curve_table(curve: &nucleus::HydroQWCurve) -> Table {
    let mut t = Table::new(vec!["eps", "qw", "w", "d"]);
    for pt in &curve.points {
        t.push(vec![
            Cell::Float(pt.eps),
            Cell::Float(pt.qw),
            Cell::Float(pt.w),
            Cell::Float(pt.d),
        ]);
    }
    t
}

pub fn run(cfg: &RunConfig) -> Result<(), AppError> {
    let p = &cfg.material;
    let n = cfg.samples.unwrap_or(DEFAULT_SAMPLES);

    let sol = nucleus::solve_nucleus_sampled(p, n + 1)?;
    let numeric = nucleus::qw_hydrostatic(p, &sol);
    let asym = nucleus::qw_hydrostatic_asymptotic(p, n);
    write_table(&cfg.out, "qw", &curve_table(&numeric), cfg.format)?;
    write_table(&cfg.out, "qw_asymptotic", &curve_table(&asym), cfg.format)?;

    let max_excess = numeric
        .points
        .iter()
        .map(|pt| pt.qw - pt.w)
        .fold(f64::NEG_INFINITY, f64::max);
    write_summary(
        &cfg.out,
        &Summary {
            command: "qw".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "eps_inf": sol.eps_inf(),
                "eps_boundary": sol.w_point().eps0,
                "max_qw_minus_w": max_excess,
                "boundary_qw": numeric.points.last().map(|pt| pt.qw),
                "boundary_w": numeric.points.last().map(|pt| pt.w),
            }),
            warnings: Vec::new(),
        },
    )
}
