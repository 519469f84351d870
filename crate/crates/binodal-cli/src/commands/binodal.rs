//! `binodal binodal`: the two-sided bound data. Outer (nucleation) curves
//! from the inclusion profile, inner (laminate) curves from the secondary
//! jump set, and the scalar bounds on the bisector.

use hadamard::{nucleus, pcx, secondary};
use log::warn;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{write_summary, write_table, Cell, Summary, Table};
use crate::AppError;

const DEFAULT_SAMPLES: usize = 400;

pub fn run(cfg: &RunConfig) -> Result<(), AppError> {
    let p = &cfg.material;
    let n = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let mut warnings = Vec::new();

    let sol = nucleus::solve_nucleus_sampled(p, n)?;
    let (outer, outer_mirror) = nucleus::binodal_curves(&sol);
    let mut t = Table::new(vec!["branch", "eps1", "eps2"]);
    for s in &outer {
        t.push(vec![Cell::Text("a".into()), Cell::Float(s.eps1), Cell::Float(s.eps2)]);
    }
    for s in &outer_mirror {
        t.push(vec![Cell::Text("b".into()), Cell::Float(s.eps1), Cell::Float(s.eps2)]);
    }
    write_table(&cfg.out, "binodal_outer", &t, cfg.format)?;

    // first-order outer curve on the same grid, both branches
    let mut ta = Table::new(vec!["branch", "eps1", "eps2"]);
    let asym_pts: Vec<(f64, f64)> = sol
        .samples()
        .iter()
        .filter(|s| s.x > 0.0)
        .map(|s| {
            let r = 1.0 / s.x.sqrt();
            let (eta, eta_p) = nucleus::eta_profile_asymptotic(r, p);
            (eta / r, eta_p)
        })
        .collect();
    for (e1, e2) in &asym_pts {
        ta.push(vec![Cell::Text("a".into()), Cell::Float(*e1), Cell::Float(*e2)]);
    }
    for (e1, e2) in asym_pts.iter().rev() {
        ta.push(vec![Cell::Text("b".into()), Cell::Float(*e2), Cell::Float(*e1)]);
    }
    write_table(&cfg.out, "binodal_outer_asymptotic", &ta, cfg.format)?;

    let mut crossing = json!(null);
    let mut inner = Table::new(vec!["branch", "eps1", "eps2"]);
    if p.mu() > 0.0 {
        let green = secondary::secondary_curve(p, n)?;
        for pt in &green.points {
            inner.push(vec![
                Cell::Text("a".into()),
                Cell::Float(pt.x0()),
                Cell::Float(pt.y0()),
            ]);
        }
        for s in &green.mirror {
            inner.push(vec![Cell::Text("b".into()), Cell::Float(s.eps1), Cell::Float(s.eps2)]);
        }
        crossing = green.crossing.map_or(json!(null), |c| json!([c.eps1, c.eps2]));
    } else {
        let msg = "mu = 0: inner laminate curve degenerates to the hyperbola eps1 eps2 = d1; table left empty".to_string();
        warn!("{msg}");
        warnings.push(msg);
    }
    write_table(&cfg.out, "secondary_inner", &inner, cfg.format)?;

    let (bound_numeric, bound_asym) = if p.mu() > 0.0 {
        let b = pcx::pcx_bound_hydro_numeric(p)?;
        (json!(b.polyconvex_up_to), json!(pcx::pcx_bound_hydro_asymptotic(p)))
    } else {
        (json!(p.d1().sqrt()), json!(p.d1().sqrt()))
    };

    let nd = nucleus::nondegeneracy(p, &sol)?;
    write_summary(
        &cfg.out,
        &Summary {
            command: "binodal".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "eps_inf": sol.eps_inf(),
                "eps_inf_asymptotic": nucleus::eps_inf_asymptotic(p),
                "pcx_bound_numeric": bound_numeric,
                "pcx_bound_asymptotic": bound_asym,
                "secondary_bisector_crossing": crossing,
                "nondegeneracy": nd,
            }),
            warnings,
        },
    )
}
