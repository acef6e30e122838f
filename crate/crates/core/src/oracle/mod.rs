//! Floating-point route to the same invariants.
//!
//! A holomorphic curve is orthogonalized into its `P₊` tower by Gram-Schmidt
//! on the derivative stack, projectors are assembled from the tower (or from
//! a frame, see [`crate::frames`]), and densities and curvatures are
//! recovered from finite differences in the real coordinates `x₊ = x + iy`.
//! None of it reads the closed forms in [`crate::exact`].

mod curve;
mod fd;
mod projector;
mod sampling;
mod tower;
mod verify;

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

pub use curve::{veronese_curve, DerivativeStack, PolyCurve};
pub use fd::{
    conformality, curvature_gaussian, curvature_mean, density_lagrangian, density_topological,
    el_residual, first_derivatives, mean_curvature_sq, surface_tangent_normal, Conformality,
    CurvatureEstimate, DensityEstimate, FdConfig, SurfaceFrame,
};
pub use projector::{
    hs_inner, hs_norm, projector_beta, tower_projectors, HermitianProjector, ProjectorField,
    VeroneseField,
};
pub use sampling::{conformal_factor, sample_points, SampleConfig};
pub use tower::{gram_ratio_residual, gram_tower, orthogonal_tower, OrthogonalTower};
pub use verify::{
    verify_veronese, Check, VerificationReport, VerifyConfig, CONFORMAL_TOL, EL_TOL, PROJECTOR_TOL,
};
