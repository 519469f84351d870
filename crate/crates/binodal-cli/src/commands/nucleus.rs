//! `binodal nucleus`: the equilibrium inclusion profile at the configured
//! shear modulus plus the far-field stretch across a modulus sweep.

use hadamard::nucleus;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{write_summary, write_table, Cell, Summary, Table};
use crate::AppError;

const DEFAULT_SAMPLES: usize = 501;

pub fn default_sweep() -> Vec<f64> {
    (1..=12).map(|k| 0.25 * k as f64).collect()
}

pub fn run(cfg: &RunConfig) -> Result<(), AppError> {
    let p = &cfg.material;
    let n = cfg.samples.unwrap_or(DEFAULT_SAMPLES);

    let sol = nucleus::solve_nucleus_sampled(p, n)?;
    let mut t = Table::new(vec!["x", "v", "v_prime", "d"]);
    for s in sol.samples() {
        t.push(vec![
            Cell::Float(s.x),
            Cell::Float(s.v),
            Cell::Float(s.v_prime),
            Cell::Float(s.v * (s.v - 2.0 * s.x * s.v_prime)),
        ]);
    }
    write_table(&cfg.out, "profile", &t, cfg.format)?;

    // first-order profile on the same interior grid
    let mut ta = Table::new(vec!["x", "v", "v_prime", "d"]);
    for s in sol.samples().iter().filter(|s| s.x > 0.0) {
        let r = 1.0 / s.x.sqrt();
        let (eta, eta_p) = nucleus::eta_profile_asymptotic(r, p);
        let v = eta / r;
        let vp = (v - eta_p) / (2.0 * s.x);
        ta.push(vec![
            Cell::Float(s.x),
            Cell::Float(v),
            Cell::Float(vp),
            Cell::Float(v * eta_p),
        ]);
    }
    write_table(&cfg.out, "profile_asymptotic", &ta, cfg.format)?;

    let sweep = cfg.mu_sweep.clone().unwrap_or_else(default_sweep);
    let pairs = nucleus::eps_inf_sweep(p, &sweep)?;
    let mut sw = Table::new(vec!["mu", "eps_inf", "eps_inf_asymptotic", "rel_gap"]);
    for (mu, eps_inf) in &pairs {
        let asym = nucleus::eps_inf_asymptotic(&p.with_mu(*mu)?);
        sw.push(vec![
            Cell::Float(*mu),
            Cell::Float(*eps_inf),
            Cell::Float(asym),
            Cell::Float((eps_inf - asym).abs() / eps_inf),
        ]);
    }
    write_table(&cfg.out, "eps_inf_vs_mu", &sw, cfg.format)?;

    let nd = nucleus::nondegeneracy(p, &sol)?;
    write_summary(
        &cfg.out,
        &Summary {
            command: "nucleus".into(),
            params: super::params_block(cfg, n),
            results: json!({
                "eps_inf": sol.eps_inf(),
                "eps_inf_asymptotic": nucleus::eps_inf_asymptotic(p),
                "nondegeneracy": nd,
                "w_point": { "eps0": sol.w_point().eps0, "eps_minus": sol.w_point().eps_minus },
                "sweep_mus": sweep,
            }),
            warnings: Vec::new(),
        },
    )
}
