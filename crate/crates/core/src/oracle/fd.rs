//! Finite differences in the real coordinates of `x₊ = x + iy`, with
//! `∂± = ½(∂_x ∓ i∂_y)` and `∂₊∂₋ = ¼(∂_xx + ∂_yy)`.

use super::{hs_inner, hs_norm, CMatrix, ProjectorField, C64};
use crate::error::{Error, Result};

/// Smallest metric coefficient accepted by the curvature estimators.
const METRIC_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    /// Step for derivatives of the projector.
    pub h: f64,
    /// Step for the Laplacian of `ln g₊₋`, which differences values that
    /// already carry the rounding of one differentiation.
    pub outer_h: f64,
    /// Combine steps `h` and `h/2` to cancel the `O(h²)` term, and use a
    /// sixth-order Laplacian for `ln g₊₋`.
    pub richardson: bool,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            h: 1e-3,
            outer_h: 1e-2,
            richardson: false,
        }
    }
}

impl FdConfig {
    pub fn with_step(h: f64) -> Self {
        FdConfig {
            h,
            outer_h: 10.0 * h,
            richardson: false,
        }
    }

    /// Step `h` with Richardson, outer step `100h` with the sixth-order stencil.
    pub fn extrapolated(h: f64) -> Self {
        FdConfig {
            h,
            outer_h: 100.0 * h,
            richardson: true,
        }
    }

    fn extrapolate<T, F>(&self, at_step: F) -> Result<T>
    where
        F: FnMut(f64) -> Result<T>,
        T: Extrapolate,
    {
        self.extrapolate_at(self.h, at_step)
    }

    fn extrapolate_at<T, F>(&self, h: f64, mut at_step: F) -> Result<T>
    where
        F: FnMut(f64) -> Result<T>,
        T: Extrapolate,
    {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::StepSize(h));
        }
        if self.richardson {
            let coarse = at_step(h)?;
            let fine = at_step(0.5 * h)?;
            Ok(T::richardson(fine, coarse))
        } else {
            at_step(h)
        }
    }
}

/// `(4·fine − coarse)/3` for a halved step.
trait Extrapolate {
    fn richardson(fine: Self, coarse: Self) -> Self;
}

impl Extrapolate for f64 {
    fn richardson(fine: f64, coarse: f64) -> f64 {
        (4.0 * fine - coarse) / 3.0
    }
}

impl Extrapolate for CMatrix {
    fn richardson(fine: CMatrix, coarse: CMatrix) -> CMatrix {
        (fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEstimate {
    pub value: f64,
    pub step: f64,
    pub point: C64,
}

pub type CurvatureEstimate = DensityEstimate;

fn finite_matrix(m: CMatrix, h: f64) -> Result<CMatrix> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(m)
    } else {
        Err(Error::StepSize(h))
    }
}

fn finite(v: f64, h: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::StepSize(h))
    }
}

/// `(P, ∂₊P, ∂₋P)` at `x` by central differences.
pub fn first_derivatives(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<(CMatrix, CMatrix, CMatrix)> {
    let p = field.projector_at(x)?;
    let i = C64::new(0.0, 1.0);
    let px = cfg.extrapolate(|h| {
        let d = (field.projector_at(x + h)? - field.projector_at(x - h)?) / C64::new(2.0 * h, 0.0);
        finite_matrix(d, h)
    })?;
    let py = cfg.extrapolate(|h| {
        let d = (field.projector_at(x + i * h)? - field.projector_at(x - i * h)?)
            / C64::new(2.0 * h, 0.0);
        finite_matrix(d, h)
    })?;
    let half = C64::new(0.5, 0.0);
    let dp = (&px - &py * i) * half;
    let dm = (&px + &py * i) * half;
    Ok((p, dp, dm))
}

fn lagrangian_of(dp: &CMatrix, dm: &CMatrix) -> f64 {
    hs_inner(dp, dm).re
}

/// `L = ½ Tr(∂₊P ∂₋P)`, which is also the metric coefficient `g₊₋`.
pub fn density_lagrangian(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<DensityEstimate> {
    let (_, dp, dm) = first_derivatives(field, x, cfg)?;
    Ok(DensityEstimate {
        value: finite(lagrangian_of(&dp, &dm), cfg.h)?,
        step: cfg.h,
        point: x,
    })
}

/// `Q = ½ Tr(P [∂₋P, ∂₊P])`.
pub fn density_topological(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<DensityEstimate> {
    let (p, dp, dm) = first_derivatives(field, x, cfg)?;
    let comm = &dm * &dp - &dp * &dm;
    let value = hs_inner(&p, &comm).re;
    Ok(DensityEstimate {
        value: finite(value, cfg.h)?,
        step: cfg.h,
        point: x,
    })
}

fn metric(field: &dyn ProjectorField, x: C64, cfg: &FdConfig) -> Result<f64> {
    let g = density_lagrangian(field, x, cfg)?.value;
    if g > METRIC_FLOOR {
        Ok(g)
    } else {
        Err(Error::DegenerateMetric(g))
    }
}

/// Five-point Laplacian of a scalar function.
fn laplacian<F>(mut s: F, x: C64, h: f64) -> Result<f64>
where
    F: FnMut(C64) -> Result<f64>,
{
    let i = C64::new(0.0, 1.0);
    let centre = s(x)?;
    let sum = s(x + h)? + s(x - h)? + s(x + i * h)? + s(x - i * h)?;
    finite((sum - 4.0 * centre) / (h * h), h)
}

/// Sixth-order cross stencil for the Laplacian, on the axes at `±h, ±2h, ±3h`.
fn laplacian_sixth_order<F>(mut s: F, x: C64, h: f64) -> Result<f64>
where
    F: FnMut(C64) -> Result<f64>,
{
    const W: [f64; 3] = [270.0, -27.0, 2.0];
    let i = C64::new(0.0, 1.0);
    let mut acc = -4.0 * 490.0 / 2.0 * s(x)?;
    for (k, w) in W.iter().enumerate() {
        let d = (k + 1) as f64 * h;
        acc += w * (s(x + d)? + s(x - d)? + s(x + i * d)? + s(x - i * d)?);
    }
    finite(acc / (180.0 * h * h), h)
}

/// Brioschi form for a conformal metric: `K = -(1/g₊₋) ∂₊∂₋ ln g₊₋`. With
/// `richardson` set, the Laplacian uses the sixth-order stencil at `outer_h`.
pub fn curvature_gaussian(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<CurvatureEstimate> {
    let h = cfg.outer_h;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::StepSize(h));
    }
    let g = metric(field, x, cfg)?;
    let ln_g = |z| Ok(metric(field, z, cfg)?.ln());
    let lap = if cfg.richardson {
        laplacian_sixth_order(ln_g, x, h)?
    } else {
        laplacian(ln_g, x, h)?
    };
    let value = -0.25 * lap / g;
    Ok(CurvatureEstimate {
        value: finite(value, cfg.h)?,
        step: cfg.h,
        point: x,
    })
}

/// `H² = 4‖[∂₊P, ∂₋P]‖² / Tr(∂₊P∂₋P)²`, with the commutator symmetrized to
/// its hermitian part before the norm is taken.
pub fn mean_curvature_sq(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<CurvatureEstimate> {
    let (_, dp, dm) = first_derivatives(field, x, cfg)?;
    let tr = 2.0 * lagrangian_of(&dp, &dm);
    if tr <= 2.0 * METRIC_FLOOR {
        return Err(Error::DegenerateMetric(0.5 * tr));
    }
    let m = &dp * &dm - &dm * &dp;
    let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let norm = hs_norm(&sym);
    let value = 4.0 * norm * norm / (tr * tr);
    Ok(CurvatureEstimate {
        value: finite(value, cfg.h)?,
        step: cfg.h,
        point: x,
    })
}

/// `H = 2‖[∂₊P, ∂₋P]‖ / Tr(∂₊P∂₋P)`.
pub fn curvature_mean(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<CurvatureEstimate> {
    let h2 = mean_curvature_sq(field, x, cfg)?;
    Ok(CurvatureEstimate {
        value: h2.value.sqrt(),
        ..h2
    })
}

/// `‖[∂₊∂₋P, P]‖`, zero for solutions of the field equations.
pub fn el_residual(field: &dyn ProjectorField, x: C64, cfg: &FdConfig) -> Result<f64> {
    let p = field.projector_at(x)?;
    let i = C64::new(0.0, 1.0);
    let box_p = cfg.extrapolate(|h| {
        let sum = field.projector_at(x + h)?
            + field.projector_at(x - h)?
            + field.projector_at(x + i * h)?
            + field.projector_at(x - i * h)?
            - &p * C64::new(4.0, 0.0);
        finite_matrix(sum / C64::new(4.0 * h * h, 0.0), h)
    })?;
    let comm = &box_p * &p - &p * &box_p;
    finite(hs_norm(&comm), cfg.h)
}

/// Metric components `g₊₊ = -⟨∂₊P, ∂₊P⟩`, `g₋₋`, and `g₊₋`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conformality {
    pub g_pp: C64,
    pub g_mm: C64,
    pub g_pm: f64,
}

impl Conformality {
    /// `(|g₊₊|/g₊₋, |g₋₋|/g₊₋)`
    pub fn relative(&self) -> (f64, f64) {
        (self.g_pp.norm() / self.g_pm, self.g_mm.norm() / self.g_pm)
    }
}

pub fn conformality(field: &dyn ProjectorField, x: C64, cfg: &FdConfig) -> Result<Conformality> {
    let (_, dp, dm) = first_derivatives(field, x, cfg)?;
    let g_pm = lagrangian_of(&dp, &dm);
    if g_pm <= METRIC_FLOOR {
        return Err(Error::DegenerateMetric(g_pm));
    }
    Ok(Conformality {
        g_pp: -hs_inner(&dp, &dp),
        g_mm: -hs_inner(&dm, &dm),
        g_pm,
    })
}

/// Tangent vectors `∂₊X = [∂₊P, P]`, `∂₋X = -[∂₋P, P]` and the unit normal
/// `N = [∂₊X, ∂₋X] / ‖[∂₊X, ∂₋X]‖`.
#[derive(Debug, Clone)]
pub struct SurfaceFrame {
    pub d_plus: CMatrix,
    pub d_minus: CMatrix,
    pub normal: CMatrix,
}

pub fn surface_tangent_normal(
    field: &dyn ProjectorField,
    x: C64,
    cfg: &FdConfig,
) -> Result<SurfaceFrame> {
    let (p, dp, dm) = first_derivatives(field, x, cfg)?;
    let d_plus = &dp * &p - &p * &dp;
    let d_minus = -(&dm * &p - &p * &dm);
    let bracket = &d_plus * &d_minus - &d_minus * &d_plus;
    let norm = hs_norm(&bracket);
    if norm <= METRIC_FLOOR {
        return Err(Error::DegenerateMetric(norm));
    }
    let normal = bracket / C64::new(norm, 0.0);
    Ok(SurfaceFrame {
        d_plus,
        d_minus,
        normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::BetaVector;
    use crate::oracle::VeroneseField;

    fn field(n: usize, grid: &[usize]) -> VeroneseField {
        VeroneseField::veronese(BetaVector::from_indices(n, grid).unwrap()).unwrap()
    }

    fn weight(x: C64) -> f64 {
        2.0 * (1.0 + x.norm_sqr()).powi(2)
    }

    #[test]
    fn cp1_densities_at_origin() {
        let f = field(2, &[0]);
        let x = C64::new(0.0, 0.0);
        let cfg = FdConfig::extrapolated(1e-3);
        let l = density_lagrangian(&f, x, &cfg).unwrap().value;
        let q = density_topological(&f, x, &cfg).unwrap().value;
        assert!((l - 0.5).abs() < 1e-9, "{l}");
        assert!((q - 0.5).abs() < 1e-9, "{q}");
    }

    #[test]
    fn g27_lagrangian_coefficient() {
        let f = field(7, &[0, 5]);
        let x = C64::new(0.5, 0.0);
        let cfg = FdConfig::extrapolated(1e-3);
        let l = density_lagrangian(&f, x, &cfg).unwrap().value * weight(x);
        assert!((l - 22.0).abs() < 1e-6 * 22.0, "{l}");
    }

    #[test]
    fn g26_topological_coefficient() {
        let f = field(6, &[0, 3]);
        let x = C64::new(1.0, 1.0);
        let cfg = FdConfig::extrapolated(1e-3);
        let q = density_topological(&f, x, &cfg).unwrap().value * weight(x);
        assert!((q - 4.0).abs() < 1e-6 * 22.0, "{q}");
    }

    #[test]
    fn gaussian_curvature_examples() {
        let cfg = FdConfig::extrapolated(1e-3);
        for (n, grid, k) in [
            (2usize, vec![0usize], 4.0),
            (3, vec![0], 2.0),
            (5, vec![1, 3], 0.2),
        ] {
            let f = field(n, &grid);
            for x in [C64::new(0.3, 0.2), C64::new(-1.1, 0.7)] {
                let got = curvature_gaussian(&f, x, &cfg).unwrap().value;
                assert!((got - k).abs() < 1e-5 * k, "{grid:?}: {got} vs {k}");
            }
        }
    }

    #[test]
    fn mean_curvature_examples() {
        let cfg = FdConfig::extrapolated(1e-3);
        for (n, grid, h2) in [
            (4usize, vec![0usize, 1], 4.0),
            (7, vec![2, 3], 244.0 / 121.0),
            (6, vec![2, 3], 2.0),
        ] {
            let f = field(n, &grid);
            let x = C64::new(0.4, -0.9);
            let got = mean_curvature_sq(&f, x, &cfg).unwrap().value;
            assert!((got - h2).abs() < 1e-6 * h2, "{grid:?}: {got} vs {h2}");
            let h = curvature_mean(&f, x, &cfg).unwrap().value;
            assert!((h * h - got).abs() < 1e-12);
        }
    }

    #[test]
    fn structure_of_solutions() {
        let cfg = FdConfig::default();
        let f = field(5, &[0, 2, 3]);
        let x = C64::new(0.6, 0.25);
        assert!(el_residual(&f, x, &cfg).unwrap() < 1e-5);
        let c = conformality(&f, x, &cfg).unwrap();
        let (pp, mm) = c.relative();
        assert!(pp < 1e-6 && mm < 1e-6, "{pp} {mm}");
        let frame = surface_tangent_normal(&f, x, &cfg).unwrap();
        assert!((hs_inner(&frame.normal, &frame.normal).re - 1.0).abs() < 1e-12);
        assert!(hs_inner(&frame.d_plus, &frame.normal).norm() < 1e-6);
        assert!(hs_inner(&frame.d_minus, &frame.normal).norm() < 1e-6);
    }

    #[test]
    fn complement_shares_tangent() {
        let cfg = FdConfig::default();
        let a = field(4, &[1, 2]);
        let b = field(4, &[0, 3]);
        let x = C64::new(-0.7, 0.45);
        let ta = surface_tangent_normal(&a, x, &cfg).unwrap();
        let tb = surface_tangent_normal(&b, x, &cfg).unwrap();
        assert!((&ta.d_plus - &tb.d_plus).camax() < 1e-8);
        assert!((&ta.d_minus - &tb.d_minus).camax() < 1e-8);
    }

    #[test]
    fn bad_steps_rejected() {
        let f = field(3, &[1]);
        let x = C64::new(0.1, 0.1);
        for h in [0.0, -1e-3, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                density_lagrangian(&f, x, &FdConfig::with_step(h)),
                Err(Error::StepSize(_))
            ));
        }
    }
}
