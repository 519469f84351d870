//! `binodal jumpset`: the jump-set curve tagged by the Weierstrass flag,
//! the convexification hyperbolas, and the W-points.

use hadamard::{jumpset, pcx::PcxStatus};
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

    let s2 = p.d2().sqrt();
    let disc_floor = p.mu().sqrt() / (p.d2() - p.d1());
    let lo = (0.25 * s2).max(disc_floor * (1.0 + 1e-9));
    let hi = 2.5 * s2;

    let curve = jumpset::jump_set_curve(p, (lo, hi), n)?;
    let mut t = Table::new(vec![
        "eps0",
        "eps_plus",
        "eps_minus",
        "d_plus",
        "d_minus",
        "weierstrass_ok",
    ]);
    for c in &curve {
        t.push(vec![
            Cell::Float(c.pair.eps0()),
            Cell::Float(c.pair.eps_plus()),
            Cell::Float(c.pair.eps_minus()),
            Cell::Float(c.pair.d_plus()),
            Cell::Float(c.pair.d_minus()),
            Cell::Bool(c.weierstrass_ok),
        ]);
    }
    write_table(&cfg.out, "jumpset", &t, cfg.format)?;

    let mut hyp = Table::new(vec!["eps1", "eps2_low", "eps2_high"]);
    for i in 0..n {
        let eps1 = lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64;
        hyp.push(vec![
            Cell::Float(eps1),
            Cell::Float(p.d1() / eps1),
            Cell::Float(p.d2() / eps1),
        ]);
    }
    write_table(&cfg.out, "hyperbolas", &hyp, cfg.format)?;

    let mut wp = Table::new(vec!["eps0", "eps_minus", "alpha0"]);
    let threshold = jumpset::w_point_existence_threshold(p);
    let mut w_json = json!(null);
    match jumpset::w_point(p) {
        Ok(w) => {
            wp.push(vec![
                Cell::Float(w.eps0),
                Cell::Float(w.eps_minus),
                Cell::Float(w.alpha0()),
            ]);
            let check = jumpset::w_point_pcx_check(p)?;
            w_json = json!({
                "eps0": w.eps0,
                "eps_minus": w.eps_minus,
                "polyconvex": check.status == PcxStatus::Polyconvex,
                "certificate_m": check.m_star,
                "gap": check.gap,
            });
        }
        Err(hadamard::Error::NoWPoint { mu }) => {
            let msg =
                format!("no W-point at mu = {mu} (existence threshold {threshold:.6}); wpoints table left empty");
            warn!("{msg}");
            warnings.push(msg);
        }
        Err(e) => return Err(e.into()),
    }
    write_table(&cfg.out, "wpoints", &wp, cfg.format)?;

    write_summary(
        &cfg.out,
        &Summary {
            command: "jumpset".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "eps0_range": [lo, hi],
                "w_point_existence_threshold": threshold,
                "w_point": w_json,
                "stable_samples": curve.iter().filter(|c| c.weierstrass_ok).count(),
                "total_samples": curve.len(),
            }),
            warnings,
        },
    )
}
