use std::fmt;

use num_traits::ToPrimitive;

use super::{
    conformal_factor, conformality, curvature_gaussian, density_lagrangian, density_topological,
    el_residual, mean_curvature_sq, FdConfig, HermitianProjector, ProjectorField, SampleConfig,
    VeroneseField, C64,
};
use crate::error::{Error, Result};
use crate::exact::{beta_invariants, BetaVector};

pub const PROJECTOR_TOL: f64 = 1e-10;
pub const EL_TOL: f64 = 1e-5;
pub const CONFORMAL_TOL: f64 = 1e-6;

/// Worst residual of one named check over all samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: &str, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            residual: 0.0,
            tolerance,
        }
    }

    pub fn record(&mut self, residual: f64) {
        if residual.is_nan() || residual > self.residual {
            self.residual = residual;
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<14} worst {:.3e}  tol {:.1e}  {}",
            self.name,
            self.residual,
            self.tolerance,
            if self.passed() { "ok" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub samples: Vec<C64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub sampling: SampleConfig,
    pub fd: FdConfig,
    /// Relative tolerance on `r`, `q`, `K` and `H²`.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 5,
            sampling: SampleConfig::default(),
            fd: FdConfig::extrapolated(1e-3),
            tol: 1e-5,
        }
    }
}

/// Draws `count` points from the seeded stream, skipping points where the
/// field cannot be evaluated.
pub(crate) fn admissible_points(
    field: &dyn ProjectorField,
    sampling: &SampleConfig,
    count: usize,
) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(count);
    for (tries, x) in sampling.stream().enumerate() {
        if out.len() == count {
            break;
        }
        if tries > 100 * count.max(1) {
            return Err(Error::SingularPoint {
                re: x.re,
                im: x.im,
                reason: "too many rejected sample points".into(),
            });
        }
        match field.projector_at(x) {
            Ok(_) => out.push(x),
            Err(Error::SingularPoint { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Compares the finite-difference invariants of `P_β` on the Veronese curve
/// with the exact ones, and checks the structural identities along the way.
pub fn verify_veronese(beta: &BetaVector, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let exact = beta_invariants(beta);
    let r = exact.r.to_f64().unwrap();
    let q = exact.q.to_f64().unwrap();
    let kappa = exact.kappa.to_f64().unwrap();
    let h2 = exact.h2.to_f64().unwrap();

    let field = VeroneseField::veronese(beta.clone())?;
    let samples = admissible_points(&field, &cfg.sampling, cfg.samples)?;

    let mut c_r = Check::new("r", cfg.tol);
    let mut c_q = Check::new("q", cfg.tol);
    let mut c_k = Check::new("K", cfg.tol);
    let mut c_h = Check::new("H2", cfg.tol);
    let mut c_p = Check::new("projector", PROJECTOR_TOL);
    let mut c_el = Check::new("el_residual", EL_TOL);
    let mut c_conf = Check::new("conformality", CONFORMAL_TOL);

    for &x in &samples {
        let w = 2.0 * conformal_factor(x);
        let fd = &cfg.fd;
        c_r.record((density_lagrangian(&field, x, fd)?.value * w - r).abs() / r);
        // q may vanish; |q| ≤ r sets the scale
        c_q.record((density_topological(&field, x, fd)?.value * w - q).abs() / r);
        c_k.record((curvature_gaussian(&field, x, fd)?.value - kappa).abs() / kappa);
        c_h.record((mean_curvature_sq(&field, x, fd)?.value - h2).abs() / h2);
        let p = HermitianProjector {
            matrix: field.projector_at(x)?,
            rank: beta.m(),
        };
        c_p.record(p.max_defect());
        c_el.record(el_residual(&field, x, &FdConfig::with_step(fd.h))?);
        let (pp, mm) = conformality(&field, x, fd)?.relative();
        c_conf.record(pp.max(mm));
    }
    Ok(VerificationReport {
        checks: vec![c_r, c_q, c_k, c_h, c_p, c_el, c_conf],
        samples,
    })
}
