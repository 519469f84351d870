pub mod binodal;
pub mod jumpset;
pub mod nucleus;
pub mod pcx;
pub mod qw;
pub mod secondary;

use hadamard::MaterialParams;

use crate::config::RunConfig;
use crate::output::Params;

pub(crate) fn params_block(cfg: &RunConfig, samples: usize) -> Params {
    let m: &MaterialParams = &cfg.material;
    Params {
        mu: m.mu(),
        d1: m.d1(),
        d2: m.d2(),
        samples,
        mu_sweep: cfg.mu_sweep.clone(),
    }
}
