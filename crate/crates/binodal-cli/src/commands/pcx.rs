//! `binodal pcx`: polyconvexity verdicts along the bisector, the hydrostatic
//! stability bounds, and the W-point thresholds.

use hadamard::pcx::{self, PcxStatus};
use hadamard::{jumpset, nucleus};
use log::warn;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{write_summary, write_table, Cell, Summary, Table};
use crate::AppError;

const DEFAULT_SAMPLES: usize = 50;

fn status_name(s: PcxStatus) -> &'static str {
    match s {
        PcxStatus::Polyconvex => "polyconvex",
        PcxStatus::NotPolyconvex => "not_polyconvex",
        PcxStatus::Indeterminate => "indeterminate",
    }
}

pub fn run(cfg: &RunConfig) -> Result<(), AppError> {
    let p = &cfg.material;
    let n = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let mut warnings = Vec::new();

    let threshold = jumpset::w_point_pcx_threshold(p.d1(), p.d2())?;
    let existence = jumpset::w_point_existence_threshold(p);

    let mut indeterminate_eps = Vec::new();
    let mut bound_json = json!(null);
    let mut asym_json = json!(null);

    let mut t = Table::new(vec!["eps", "status", "m_star", "witness_delta", "gap"]);
    if p.mu() > 0.0 {
        let scan = pcx::classify_bisector(p, p.d1().sqrt(), p.d2().sqrt(), n)?;
        for (eps, v) in &scan {
            if v.status == PcxStatus::Indeterminate {
                indeterminate_eps.push(*eps);
            }
            t.push(vec![
                Cell::Float(*eps),
                Cell::Text(status_name(v.status).into()),
                Cell::Float(v.m_star),
                v.witness_delta.map_or(Cell::Missing, Cell::Float),
                Cell::Float(v.gap),
            ]);
        }

        let bound = pcx::pcx_bound_hydro_numeric(p)?;
        bound_json = json!({
            "polyconvex_up_to": bound.polyconvex_up_to,
            "not_polyconvex_from": bound.not_polyconvex_from,
            "indeterminate_at": bound.indeterminate_at,
        });
        asym_json = json!(pcx::pcx_bound_hydro_asymptotic(p));
    } else {
        let msg = "mu = 0: bisector classification is handled by convexifying h; scan skipped"
            .to_string();
        warn!("{msg}");
        warnings.push(msg);
    }
    write_table(&cfg.out, "pcx_scan", &t, cfg.format)?;

    let eps_inf_asym = nucleus::eps_inf_asymptotic(p);
    write_summary(
        &cfg.out,
        &Summary {
            command: "pcx".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "pcx_threshold": threshold,
                "w_point_existence_threshold": existence,
                "bound_numeric": bound_json,
                "bound_asymptotic": asym_json,
                "eps_inf_asymptotic": eps_inf_asym,
                "indeterminate_eps": indeterminate_eps,
            }),
            warnings,
        },
    )
}
