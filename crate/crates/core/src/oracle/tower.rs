use super::{veronese_curve, CVector, PolyCurve, C64};
use crate::error::{Error, Result};

/// Pivots below this fraction of the stack norm are treated as rank loss.
pub(crate) const PIVOT_THRESHOLD: f64 = 1e-12;

/// Orthogonal directions `P₊^j f`, `j = 0…k`, at one point.
///
/// `P₊^j f` is the component of `f^{(j)}` orthogonal to `f, …, f^{(j-1)}`, so
/// the tower is Gram-Schmidt on the derivative stack and `|P₊^j f|²` is the
/// squared diagonal of its triangular factor, i.e. `G_{j+1}/G_j` for the
/// Gram determinants `G_j`.
#[derive(Debug, Clone)]
pub struct OrthogonalTower {
    pub point: C64,
    pub directions: Vec<CVector>,
    pub norms_sq: Vec<f64>,
}

pub fn orthogonal_tower(curve: &PolyCurve, k: usize, x: C64) -> Result<OrthogonalTower> {
    let n = curve.n();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n - 1,
        });
    }
    let stack = curve.derivative_stack(k, x);
    let stack_norm = stack.columns.norm();
    let mut directions: Vec<CVector> = Vec::with_capacity(k + 1);
    let mut norms_sq: Vec<f64> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut v = stack.columns.column(j).into_owned();
        // modified Gram-Schmidt, two passes
        for _ in 0..2 {
            for (u, u2) in directions.iter().zip(&norms_sq) {
                let coeff = u.dotc(&v) / *u2;
                v.axpy(-coeff, u, C64::new(1.0, 0.0));
            }
        }
        let v2 = v.norm_squared();
        if !(v2.sqrt() > PIVOT_THRESHOLD * stack_norm) {
            return Err(Error::SingularPoint {
                re: x.re,
                im: x.im,
                reason: format!("derivative stack loses rank at column {j}"),
            });
        }
        directions.push(v);
        norms_sq.push(v2);
    }
    Ok(OrthogonalTower {
        point: x,
        directions,
        norms_sq,
    })
}

/// `|P₊^j f|²` for `j = 0…k`.
pub fn gram_tower(curve: &PolyCurve, k: usize, x: C64) -> Result<Vec<f64>> {
    Ok(orthogonal_tower(curve, k, x)?.norms_sq)
}

/// Worst relative deviation of `(1+|x|²)² |f_{k+1}|²/|f_k|²` from
/// `(k+1)(n-1-k)` along the full Veronese tower in `ℂⁿ`.
pub fn gram_ratio_residual(n: usize, x: C64) -> Result<f64> {
    let tower = gram_tower(&veronese_curve(n)?, n - 1, x)?;
    let w = (1.0 + x.norm_sqr()).powi(2);
    Ok(tower
        .windows(2)
        .enumerate()
        .map(|(k, p)| {
            let want = ((k + 1) * (n - 1 - k)) as f64;
            (p[1] / p[0] * w - want).abs() / want
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaled_ratios(n: usize, x: C64) -> Vec<f64> {
        let t = gram_tower(&veronese_curve(n).unwrap(), n - 1, x).unwrap();
        let w = (1.0 + x.norm_sqr()).powi(2);
        t.windows(2).map(|p| p[1] / p[0] * w).collect()
    }

    #[test]
    fn veronese_n3_at_origin() {
        let r = scaled_ratios(3, C64::new(0.0, 0.0));
        assert!(
            (r[0] - 2.0).abs() < 1e-14 && (r[1] - 2.0).abs() < 1e-14,
            "{r:?}"
        );
    }

    #[test]
    fn veronese_n6_off_origin() {
        let r = scaled_ratios(6, C64::new(0.7, 0.3));
        for (got, want) in r.iter().zip([5.0, 8.0, 9.0, 8.0, 5.0]) {
            assert!((got - want).abs() < 1e-10 * want, "{r:?}");
        }
    }

    #[test]
    fn first_entry_is_squared_norm_of_curve() {
        let f = veronese_curve(5).unwrap();
        let x = C64::new(-0.4, 1.1);
        let t = gram_tower(&f, 2, x).unwrap();
        assert!((t[0] - f.eval(x).norm_squared()).abs() < 1e-12 * t[0]);
    }

    #[test]
    fn rank_loss_is_reported() {
        // f = (1, x, x): f' and f'' never separate the last two components
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let f = PolyCurve::new(vec![vec![one], vec![zero, one], vec![zero, one]]).unwrap();
        assert!(matches!(
            gram_tower(&f, 2, C64::new(0.3, 0.1)),
            Err(Error::SingularPoint { .. })
        ));
        assert!(gram_tower(&f, 1, C64::new(0.3, 0.1)).is_ok());
        assert!(gram_tower(&f, 3, C64::new(0.3, 0.1)).is_err());
    }
}
