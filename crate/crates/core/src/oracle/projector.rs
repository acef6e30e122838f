use super::{orthogonal_tower, CMatrix, PolyCurve, C64};
use crate::error::{Error, Result};
use crate::exact::BetaVector;

/// `⟨A, B⟩ = ½ Tr(AB)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    (a * b).trace() * 0.5
}

/// `√(½ Tr(M†M))`; agrees with `√⟨M, M⟩` on hermitian matrices.
pub fn hs_norm(m: &CMatrix) -> f64 {
    (0.5 * m.norm_squared()).sqrt()
}

/// A sampled rank-`m` orthogonal projector.
#[derive(Debug, Clone)]
pub struct HermitianProjector {
    pub matrix: CMatrix,
    pub rank: usize,
}

impl HermitianProjector {
    /// `‖P − P†‖_F`
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    /// `‖P² − P‖_F`
    pub fn idempotency_defect(&self) -> f64 {
        (&self.matrix * &self.matrix - &self.matrix).norm()
    }

    /// `|Tr P − m|`
    pub fn trace_defect(&self) -> f64 {
        (self.matrix.trace() - C64::new(self.rank as f64, 0.0)).norm()
    }

    pub fn max_defect(&self) -> f64 {
        self.hermiticity_defect()
            .max(self.idempotency_defect())
            .max(self.trace_defect())
    }
}

/// A projector-valued field that can be sampled at any point of its domain.
pub trait ProjectorField: Sync {
    fn dim(&self) -> usize;
    fn rank(&self) -> usize;
    fn projector_at(&self, x: C64) -> Result<CMatrix>;
}

/// `P_β = Σ β_j P_j` over the tower of a holomorphic curve.
#[derive(Debug, Clone)]
pub struct VeroneseField {
    pub curve: PolyCurve,
    pub beta: BetaVector,
}

impl VeroneseField {
    pub fn new(curve: PolyCurve, beta: BetaVector) -> Result<Self> {
        if curve.n() != beta.n() {
            return Err(Error::InvalidSelection(format!(
                "selection has length {} but the curve lives in C^{}",
                beta.n(),
                curve.n()
            )));
        }
        Ok(VeroneseField { curve, beta })
    }

    /// Field of `P_β` built on the Veronese curve of matching dimension.
    pub fn veronese(beta: BetaVector) -> Result<Self> {
        VeroneseField::new(super::veronese_curve(beta.n())?, beta)
    }
}

impl ProjectorField for VeroneseField {
    fn dim(&self) -> usize {
        self.curve.n()
    }

    fn rank(&self) -> usize {
        self.beta.m()
    }

    fn projector_at(&self, x: C64) -> Result<CMatrix> {
        let tower = orthogonal_tower(&self.curve, self.beta.top(), x)?;
        let n = self.curve.n();
        let mut p = CMatrix::zeros(n, n);
        for (j, (u, u2)) in tower.directions.iter().zip(&tower.norms_sq).enumerate() {
            if self.beta.bits()[j] {
                p += (u * u.adjoint()) / C64::new(*u2, 0.0);
            }
        }
        Ok(p)
    }
}

pub fn projector_beta(curve: &PolyCurve, beta: &BetaVector, x: C64) -> Result<HermitianProjector> {
    let field = VeroneseField::new(curve.clone(), beta.clone())?;
    Ok(HermitianProjector {
        matrix: field.projector_at(x)?,
        rank: beta.m(),
    })
}

/// The rank-one tower projectors `P_0, …, P_k` at one point.
pub fn tower_projectors(curve: &PolyCurve, k: usize, x: C64) -> Result<Vec<CMatrix>> {
    let tower = orthogonal_tower(curve, k, x)?;
    Ok(tower
        .directions
        .iter()
        .zip(&tower.norms_sq)
        .map(|(u, u2)| (u * u.adjoint()) / C64::new(*u2, 0.0))
        .collect())
}
