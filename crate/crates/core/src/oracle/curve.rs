use super::{CMatrix, CVector, C64};
use crate::error::{Error, Result};

/// Holomorphic curve `f: ℂ → ℂⁿ` with polynomial components.
///
/// `components[r][p]` is the coefficient of `x₊^p` in component `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve {
    components: Vec<Vec<C64>>,
}

impl PolyCurve {
    pub fn new(components: Vec<Vec<C64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidCurve("no components".into()));
        }
        if components
            .iter()
            .all(|c| c.iter().all(|z| *z == C64::new(0.0, 0.0)))
        {
            return Err(Error::InvalidCurve("all components vanish".into()));
        }
        let mut components = components;
        for c in &mut components {
            while c.last().is_some_and(|z| *z == C64::new(0.0, 0.0)) {
                c.pop();
            }
        }
        Ok(PolyCurve { components })
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn coefficients(&self, component: usize) -> &[C64] {
        &self.components[component]
    }

    /// `f^{(order)}(x)`.
    pub fn derivative_at(&self, order: usize, x: C64) -> CVector {
        CVector::from_iterator(
            self.n(),
            self.components.iter().map(|coeffs| {
                // Horner on the differentiated coefficients.
                let mut acc = C64::new(0.0, 0.0);
                for p in (order..coeffs.len()).rev() {
                    acc = acc * x + coeffs[p] * falling_factorial(p, order);
                }
                acc
            }),
        )
    }

    pub fn eval(&self, x: C64) -> CVector {
        self.derivative_at(0, x)
    }

    pub fn derivative_stack(&self, k: usize, x: C64) -> DerivativeStack {
        let cols: Vec<CVector> = (0..=k).map(|d| self.derivative_at(d, x)).collect();
        DerivativeStack {
            point: x,
            columns: CMatrix::from_columns(&cols),
        }
    }
}

fn falling_factorial(p: usize, order: usize) -> f64 {
    ((p - order + 1)..=p).fold(1.0, |acc, v| acc * v as f64)
}

/// Columns `f, f′, …, f^{(K)}` at one point.
#[derive(Debug, Clone)]
pub struct DerivativeStack {
    pub point: C64,
    pub columns: CMatrix,
}

/// The Veronese curve: component `r` is `√C(n-1, r) · x₊^r`.
pub fn veronese_curve(n: usize) -> Result<PolyCurve> {
    if n < 2 {
        return Err(Error::InvalidCurve(format!(
            "Veronese curve needs n >= 2, got {n}"
        )));
    }
    let components = (0..n)
        .map(|r| {
            let mut c = vec![C64::new(0.0, 0.0); r + 1];
            c[r] = C64::new(binomial(n - 1, r).sqrt(), 0.0);
            c
        })
        .collect();
    PolyCurve::new(components)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    // exact in u128 for every dimension this crate evaluates numerically
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn veronese_components() {
        let f = veronese_curve(2).unwrap();
        let v = f.eval(C64::new(0.3, -0.2));
        assert_eq!(v[0], C64::new(1.0, 0.0));
        assert_eq!(v[1], C64::new(0.3, -0.2));

        let f = veronese_curve(3).unwrap();
        assert_eq!(
            f.coefficients(1),
            &[C64::new(0.0, 0.0), C64::new(2f64.sqrt(), 0.0)]
        );
        assert_eq!(f.coefficients(2)[2], C64::new(1.0, 0.0));

        let f = veronese_curve(5).unwrap();
        assert_eq!(f.coefficients(2)[2], C64::new(6f64.sqrt(), 0.0));
        assert_eq!(f.degree(), 4);
        assert!(veronese_curve(1).is_err());
    }

    #[test]
    fn derivatives_of_monomials() {
        let f = PolyCurve::new(vec![vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ]])
        .unwrap();
        let x = C64::new(0.5, 1.0);
        assert!((f.derivative_at(1, x)[0] - x * x * 3.0).norm() < 1e-14);
        assert!((f.derivative_at(2, x)[0] - x * 6.0).norm() < 1e-14);
        assert_eq!(f.derivative_at(3, x)[0], C64::new(6.0, 0.0));
        assert_eq!(f.derivative_at(4, x)[0], C64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_zero_curve() {
        assert!(PolyCurve::new(vec![vec![C64::new(0.0, 0.0)]; 3]).is_err());
        assert!(PolyCurve::new(vec![]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(11, 5), 462.0);
        assert_eq!(binomial(0, 0), 1.0);
    }
}
