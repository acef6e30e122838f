//! Two holomorphic `G(2,5)` solutions with `r = 5` that do not come from the
//! Veronese curve, given as polynomial frames `Ẑ` with projector
//! `P = Ẑ(Ẑ†Ẑ)⁻¹Ẑ†`.
//!
//! Frame entries are stored as signed square roots of rationals, so the Gram
//! matrix `Ẑ†Ẑ` has exact rational coefficients before anything is rounded.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::oracle::{
    conformal_factor, curvature_gaussian, curvature_mean, density_lagrangian, density_topological,
    CMatrix, Check, FdConfig, HermitianProjector, ProjectorField, SampleConfig, C64,
};

/// Reciprocal condition number of `Ẑ†Ẑ` below which a point is rejected.
pub const GRAM_RCOND_MIN: f64 = 1e-10;

/// `sign · √coeff_sq · x₊^power`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub sign: i8,
    pub coeff_sq: BigRational,
    pub power: u32,
}

impl Monomial {
    pub fn new(sign: i8, coeff_sq: (i64, i64), power: u32) -> Self {
        Monomial {
            sign,
            coeff_sq: BigRational::new(coeff_sq.0.into(), coeff_sq.1.into()),
            power,
        }
    }

    fn coefficient(&self) -> f64 {
        f64::from(self.sign) * self.coeff_sq.to_f64().unwrap().sqrt()
    }
}

/// `n × m` matrix of real-coefficient polynomials in `x₊`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoloFrame {
    pub n: usize,
    pub m: usize,
    /// `entries[row][col]` is a sum of monomials.
    pub entries: Vec<Vec<Vec<Monomial>>>,
}

/// Bivariate polynomial `Σ c · x̄^a x^b` with exact coefficients, keyed by `(a, b)`.
pub type GramPolynomial = BTreeMap<(u32, u32), BigRational>;

fn exact_sqrt(v: &BigRational) -> Option<BigRational> {
    if v.is_negative() {
        return None;
    }
    let (n, d) = (v.numer(), v.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl HoloFrame {
    pub fn new(entries: Vec<Vec<Vec<Monomial>>>) -> Result<Self> {
        let n = entries.len();
        let m = entries.first().map_or(0, Vec::len);
        if n == 0 || m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidCurve(
                "frame must be a non-empty n x m matrix".into(),
            ));
        }
        Ok(HoloFrame { n, m, entries })
    }

    pub fn eval(&self, x: C64) -> CMatrix {
        CMatrix::from_fn(self.n, self.m, |r, c| {
            self.entries[r][c]
                .iter()
                .map(|t| x.powu(t.power) * t.coefficient())
                .sum()
        })
    }

    /// `Ẑ†Ẑ` as an `m × m` matrix of exact bivariate polynomials.
    pub fn gram_polynomials(&self) -> Result<Vec<Vec<GramPolynomial>>> {
        let mut gram = vec![vec![GramPolynomial::new(); self.m]; self.m];
        for row in &self.entries {
            for (a, ta) in row.iter().enumerate() {
                for (b, tb) in row.iter().enumerate() {
                    for u in ta {
                        for v in tb {
                            let prod = &u.coeff_sq * &v.coeff_sq;
                            let root = exact_sqrt(&prod).ok_or(Error::InexactFrame)?;
                            let c = root * BigInt::from(i64::from(u.sign) * i64::from(v.sign));
                            *gram[a][b]
                                .entry((u.power, v.power))
                                .or_insert_with(BigRational::zero) += c;
                        }
                    }
                }
            }
        }
        for row in &mut gram {
            for poly in row {
                poly.retain(|_, c| !c.is_zero());
            }
        }
        Ok(gram)
    }
}

fn mono(sign: i8, coeff_sq: (i64, i64), power: u32) -> Vec<Monomial> {
    vec![Monomial::new(sign, coeff_sq, power)]
}

fn frame_from_columns(cols: [[Vec<Monomial>; 5]; 2]) -> HoloFrame {
    let [c0, c1] = cols;
    let entries = c0.into_iter().zip(c1).map(|(a, b)| vec![a, b]).collect();
    HoloFrame::new(entries).expect("5 x 2 frame")
}

/// Columns `(1, 0, √5x, √5x², 0)` and `(0, 1, √5x², (7/√5)x³, (1/√5)x³)`.
pub fn frame_z1() -> HoloFrame {
    frame_from_columns([
        [
            mono(1, (1, 1), 0),
            vec![],
            mono(1, (5, 1), 1),
            mono(1, (5, 1), 2),
            vec![],
        ],
        [
            vec![],
            mono(1, (1, 1), 0),
            mono(1, (5, 1), 2),
            mono(1, (49, 5), 3),
            mono(1, (1, 5), 3),
        ],
    ])
}

/// Columns `(1, 0, x, (1/√5)x², 0)` and `(0, 1, 2x, (7/√5)x², √5x³)`.
pub fn frame_z2() -> HoloFrame {
    frame_from_columns([
        [
            mono(1, (1, 1), 0),
            vec![],
            mono(1, (1, 1), 1),
            mono(1, (1, 5), 2),
            vec![],
        ],
        [
            vec![],
            mono(1, (1, 1), 0),
            mono(1, (4, 1), 1),
            mono(1, (49, 5), 2),
            mono(1, (5, 1), 3),
        ],
    ])
}

/// [`GramPolynomial`] entries as `((a, b), c)` term lists for `c · x̄^a x^b`.
type GramTerms = Vec<Vec<Vec<((u32, u32), f64)>>>;

/// A frame with its exact Gram polynomials, sampled as a projector field.
#[derive(Debug, Clone)]
pub struct FrameField {
    pub frame: HoloFrame,
    gram: GramTerms,
}

impl FrameField {
    pub fn new(frame: HoloFrame) -> Result<Self> {
        let gram = frame
            .gram_polynomials()?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|poly| {
                        poly.into_iter()
                            .map(|(k, c)| (k, c.to_f64().unwrap()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(FrameField { frame, gram })
    }

    /// `Ẑ†Ẑ` at `x`.
    pub fn gram_at(&self, x: C64) -> CMatrix {
        let xb = x.conj();
        CMatrix::from_fn(self.frame.m, self.frame.m, |a, b| {
            self.gram[a][b]
                .iter()
                .map(|&((pa, pb), c)| xb.powu(pa) * x.powu(pb) * c)
                .sum()
        })
    }

    pub fn projector(&self, x: C64) -> Result<HermitianProjector> {
        Ok(HermitianProjector {
            matrix: self.projector_at(x)?,
            rank: self.frame.m,
        })
    }
}

impl ProjectorField for FrameField {
    fn dim(&self) -> usize {
        self.frame.n
    }

    fn rank(&self) -> usize {
        self.frame.m
    }

    fn projector_at(&self, x: C64) -> Result<CMatrix> {
        let z = self.frame.eval(x);
        let g = self.gram_at(x);
        let singular = |reason: String| Error::SingularPoint {
            re: x.re,
            im: x.im,
            reason,
        };
        let eig = g.clone().symmetric_eigenvalues();
        let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
        if !(lo > GRAM_RCOND_MIN * hi) {
            return Err(singular(format!(
                "Gram matrix reciprocal condition {:.1e}",
                lo / hi
            )));
        }
        let chol = g
            .cholesky()
            .ok_or_else(|| singular("Gram matrix not positive definite".into()))?;
        let y = chol.solve(&z.adjoint());
        Ok(&z * y)
    }
}

pub fn projector_from_frame(frame: &HoloFrame, x: C64) -> Result<HermitianProjector> {
    FrameField::new(frame.clone())?.projector(x)
}

/// `P₂(y) = 25 + 110y + 285y² + 428y³ + 355y⁴ + 150y⁵ + 25y⁶` and its
/// reciprocal `P₁(y) = y⁶P₂(1/y)`; `(H₁/H₂)² = P₁(|x|²)/P₂(|x|²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioPolynomial {
    /// Ascending coefficients of `P₂`.
    pub p2: [i64; 7],
}

impl Default for RatioPolynomial {
    fn default() -> Self {
        RatioPolynomial {
            p2: [25, 110, 285, 428, 355, 150, 25],
        }
    }
}

impl RatioPolynomial {
    pub fn p1(&self) -> [i64; 7] {
        let mut c = self.p2;
        c.reverse();
        c
    }

    pub fn eval_exact(coeffs: &[i64; 7], y: &BigRational) -> BigRational {
        coeffs.iter().rev().fold(BigRational::zero(), |acc, &c| {
            acc * y + BigRational::from(BigInt::from(c))
        })
    }

    pub fn eval(coeffs: &[i64; 7], y: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c as f64)
    }

    pub fn ratio_exact(&self, y: &BigRational) -> BigRational {
        Self::eval_exact(&self.p1(), y) / Self::eval_exact(&self.p2, y)
    }

    pub fn ratio(&self, y: f64) -> f64 {
        Self::eval(&self.p1(), y) / Self::eval(&self.p2, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G25Config {
    pub samples: usize,
    pub sampling: SampleConfig,
    pub fd: FdConfig,
    /// Tolerance on the `H²` ratio, on `r = 5` and on `Q = L` (relative).
    pub tol: f64,
    /// Tolerance on `K = 4/5` (relative).
    pub curvature_tol: f64,
}

impl Default for G25Config {
    fn default() -> Self {
        G25Config {
            samples: 25,
            sampling: SampleConfig::default(),
            fd: FdConfig::extrapolated(1e-3),
            tol: 1e-6,
            curvature_tol: 1e-4,
        }
    }
}

/// Sample values `(|x|², H₁², H₂²)` behind the ratio check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCurvatureSample {
    pub point: C64,
    pub y: f64,
    pub h1: f64,
    pub h2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct G25Report {
    pub checks: Vec<Check>,
    pub samples: Vec<MeanCurvatureSample>,
    /// `max H₁ - min H₁` over the samples.
    pub h1_spread: f64,
    pub spread_threshold: f64,
}

impl G25Report {
    pub fn nonconstant(&self) -> bool {
        self.h1_spread > self.spread_threshold
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed) && self.nonconstant()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Numeric checks on both frames: `r = 5`, `K = 4/5`, `Q = L`, the `H²`
/// ratio against `P₁/P₂`, and that `H` is not constant.
pub fn verify_g25(cfg: &G25Config) -> Result<G25Report> {
    let fields = [FrameField::new(frame_z1())?, FrameField::new(frame_z2())?];
    let poly = RatioPolynomial::default();
    let mut checks: Vec<Check> = Vec::new();
    let mut names = Vec::new();
    for tag in ["z1", "z2"] {
        names.push(tag);
        checks.push(Check::new(&format!("{tag}_r"), cfg.tol));
        checks.push(Check::new(&format!("{tag}_K"), cfg.curvature_tol));
        checks.push(Check::new(&format!("{tag}_Q=L"), cfg.tol));
        checks.push(Check::new(
            &format!("{tag}_projector"),
            crate::oracle::PROJECTOR_TOL,
        ));
    }
    let mut ratio = Check::new("H2_ratio", cfg.tol);

    let mut samples = Vec::with_capacity(cfg.samples);
    let mut stream = cfg.sampling.stream();
    let mut tries = 0usize;
    while samples.len() < cfg.samples {
        let x = stream.next().expect("endless sample stream");
        tries += 1;
        if tries > 100 * cfg.samples.max(1) {
            return Err(Error::SingularPoint {
                re: x.re,
                im: x.im,
                reason: "too many rejected points".into(),
            });
        }
        if fields.iter().any(|f| f.projector_at(x).is_err()) {
            continue;
        }
        let mut h2s = [0.0; 2];
        for (idx, field) in fields.iter().enumerate() {
            let base = 4 * idx;
            let l = density_lagrangian(field, x, &cfg.fd)?.value;
            let q = density_topological(field, x, &cfg.fd)?.value;
            checks[base].record((l * 2.0 * conformal_factor(x) - 5.0).abs() / 5.0);
            let k = curvature_gaussian(field, x, &cfg.fd)?.value;
            checks[base + 1].record((k - 0.8).abs() / 0.8);
            checks[base + 2].record((q - l).abs() / l);
            checks[base + 3].record(field.projector(x)?.max_defect());
            let h = curvature_mean(field, x, &cfg.fd)?.value;
            h2s[idx] = h * h;
        }
        let y = x.norm_sqr();
        let want = poly.ratio(y);
        ratio.record((h2s[0] / h2s[1] - want).abs() / want);
        samples.push(MeanCurvatureSample {
            point: x,
            y,
            h1: h2s[0].sqrt(),
            h2: h2s[1].sqrt(),
        });
    }
    checks.push(ratio);
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.h1), hi.max(s.h1))
        });
    Ok(G25Report {
        checks,
        samples,
        h1_spread: hi - lo,
        spread_threshold: 10.0 * cfg.tol,
    })
}
