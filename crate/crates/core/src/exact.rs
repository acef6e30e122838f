//! Closed-form invariants of Veronese-based projector solutions.
//!
//! A solution of `G(m,n)` is selected by a 0/1 vector `β` of weight `m`; its
//! projector is the sum of the tower projectors `P_j` with `β_j = 1`. The
//! Lagrangian and topological densities are `r/(2(1+|x|²)²)` and
//! `q/(2(1+|x|²)²)` with integer coefficients
//!
//! ```text
//! r = Σ (β_{j-1} - β_j)² α_j      q = Σ (β_{j-1} - β_j) α_j      α_j = j(n-j)
//! ```
//!
//! and the boundary convention `β_{-1} = β_n = 0`. Everything here is exact:
//! integers are `BigInt`, curvatures are `BigRational`, and the mean curvature
//! is carried as `H²`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted list of the tower indices `i₁ < … < i_m` that make up a solution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridLabel(Vec<usize>);

impl GridLabel {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidSelection("empty grid".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSelection(format!(
                "grid {indices:?} is not strictly increasing"
            )));
        }
        Ok(GridLabel(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"i1,i2,…"`.
    pub fn parse(s: &str) -> Result<Self> {
        let indices = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad grid index {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GridLabel::new(indices)
    }
}

impl fmt::Display for GridLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Projector selection `β ∈ {0,1}ⁿ` with weight `1 ≤ m ≤ n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaVector {
    bits: Vec<bool>,
}

impl BetaVector {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        let n = bits.len();
        let m = bits.iter().filter(|b| **b).count();
        if n < 2 {
            return Err(Error::InvalidSelection(format!("dimension n = {n} < 2")));
        }
        if m == 0 || m == n {
            return Err(Error::InvalidSelection(format!(
                "weight m = {m} must satisfy 1 <= m <= n-1 = {}",
                n - 1
            )));
        }
        Ok(BetaVector { bits })
    }

    pub fn from_grid(n: usize, grid: &GridLabel) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in grid.indices() {
            if i >= n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: n.saturating_sub(1),
                });
            }
            bits[i] = true;
        }
        BetaVector::from_bits(bits)
    }

    /// Shorthand for `from_grid` with a literal index list.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        BetaVector::from_grid(n, &GridLabel::new(indices.to_vec())?)
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn m(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `β_j` with the boundary convention: zero outside `0..n`.
    pub fn bit(&self, j: isize) -> i64 {
        if j < 0 || j as usize >= self.bits.len() {
            0
        } else {
            i64::from(self.bits[j as usize])
        }
    }

    pub fn grid(&self) -> GridLabel {
        GridLabel(
            self.bits
                .iter()
                .enumerate()
                .filter_map(|(j, b)| b.then_some(j))
                .collect(),
        )
    }

    /// Largest selected tower index.
    pub fn top(&self) -> usize {
        self.bits.iter().rposition(|b| *b).unwrap_or(0)
    }

    /// `I - P_β`: flips every bit.
    pub fn complement(&self) -> BetaVector {
        BetaVector {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// `β_j → β_{n-1-j}`.
    pub fn reversal(&self) -> BetaVector {
        BetaVector {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }
}

/// Exact invariants of one solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub n: usize,
    pub m: usize,
    pub grid: GridLabel,
    /// Lagrangian density coefficient.
    pub r: BigInt,
    /// Topological density coefficient.
    pub q: BigInt,
    /// Squared mean curvature.
    pub h2: BigRational,
    /// Gaussian curvature `4/r`.
    pub kappa: BigRational,
}

impl InvariantRecord {
    fn assemble(n: usize, grid: GridLabel, r: BigInt, q: BigInt, h2: BigRational) -> Self {
        let kappa = BigRational::new(BigInt::from(4), r.clone());
        InvariantRecord {
            n,
            m: grid.len(),
            grid,
            r,
            q,
            h2,
            kappa,
        }
    }

    /// `(r, q, h2)`, the part that is compared between routes.
    pub fn key(&self) -> (&BigInt, &BigInt, &BigRational) {
        (&self.r, &self.q, &self.h2)
    }
}

fn check_alpha_index(i: usize, n: usize) -> Result<()> {
    if i > n {
        Err(Error::IndexOutOfRange { index: i, max: n })
    } else {
        Ok(())
    }
}

/// `α_{i,n} = i(n-i)` for `0 ≤ i ≤ n`.
pub fn alpha(i: usize, n: usize) -> Result<BigInt> {
    check_alpha_index(i, n)?;
    Ok(alpha_unchecked(i as isize, n))
}

/// `α` with the boundary convention extended: zero outside `0..=n`.
fn alpha_unchecked(i: isize, n: usize) -> BigInt {
    if i <= 0 || i as usize >= n {
        BigInt::zero()
    } else {
        BigInt::from(i) * BigInt::from(n as isize - i)
    }
}

/// `CP^{n-1}` specialization for the single tower index `i`:
/// `r = n-1+2i(n-1-i)`, `q = n-1-2i`, `H² = (r²+3q²)/r²`.
pub fn cp_invariants(i: usize, n: usize) -> Result<InvariantRecord> {
    if n < 2 {
        return Err(Error::InvalidSelection(format!("dimension n = {n} < 2")));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    let (ni, ii) = (BigInt::from(n), BigInt::from(i));
    let one = BigInt::one();
    let two = BigInt::from(2);
    let r = &ni - &one + &two * &ii * (&ni - &one - &ii);
    let q = &ni - &one - &two * &ii;
    let h2 = BigRational::new(&r * &r + BigInt::from(3) * &q * &q, &r * &r);
    Ok(InvariantRecord::assemble(n, GridLabel(vec![i]), r, q, h2))
}

/// `α_{m+j,n}` recovered from the `CP^{n-1}` coefficients of index `m`:
/// `½[r_m + (2j-1)q_m] - j(j-1)`.
pub fn alpha_via_recurrence(m: usize, j: usize, n: usize) -> Result<BigInt> {
    if m + j > n {
        return Err(Error::IndexOutOfRange {
            index: m + j,
            max: n,
        });
    }
    if m >= n {
        return Err(Error::IndexOutOfRange {
            index: m,
            max: n - 1,
        });
    }
    let cp = cp_invariants(m, n)?;
    let jj = BigInt::from(j);
    let twice = &cp.r + (BigInt::from(2) * &jj - BigInt::one()) * &cp.q;
    let (half, rem) = twice.div_rem(&BigInt::from(2));
    debug_assert!(rem.is_zero());
    Ok(half - &jj * (&jj - BigInt::one()))
}

/// Invariants of `P_β` from the general sums.
///
/// With `w_j = (β_{j-1}-β_j)² α_j`, the squared commutator norm is
/// proportional to `S₂ = Σ w_j (w_j - ½w_{j+1} - ½w_{j-1})`, and the
/// normalization fixed by the `CP¹` sphere (`H = 2`) gives `H² = 4 S₂ / r²`.
pub fn beta_invariants(beta: &BetaVector) -> InvariantRecord {
    let n = beta.n();
    let jump = |j: isize| beta.bit(j - 1) - beta.bit(j);
    let weight = |j: isize| -> BigInt {
        let d = jump(j);
        alpha_unchecked(j, n) * BigInt::from(d * d)
    };

    let mut r = BigInt::zero();
    let mut q = BigInt::zero();
    let mut twice_s2 = BigInt::zero();
    for j in 0..=n as isize {
        let w = weight(j);
        r += &w;
        q += alpha_unchecked(j, n) * BigInt::from(jump(j));
        if !w.is_zero() {
            twice_s2 += &w * (BigInt::from(2) * &w - weight(j + 1) - weight(j - 1));
        }
    }
    // H² = 4 S₂ / r² = 2 (2 S₂) / r²
    let h2 = BigRational::new(BigInt::from(2) * twice_s2, &r * &r);
    InvariantRecord::assemble(n, beta.grid(), r, q, h2)
}

/// `(r - q, r + q)` evaluated from the interaction form of the sums, in which
/// consecutive selected projectors contribute through `β_j β_{j-1}`.
pub fn rq_interaction_split(beta: &BetaVector) -> (BigInt, BigInt) {
    let n = beta.n();
    let mut own = BigInt::zero();
    let mut prev = BigInt::zero();
    let mut pair = BigInt::zero();
    for j in 1..n as isize {
        let a = alpha_unchecked(j, n);
        own += &a * beta.bit(j);
        prev += &a * beta.bit(j - 1);
        pair += &a * (beta.bit(j) * beta.bit(j - 1));
    }
    let two = BigInt::from(2);
    (&two * (&own - &pair), &two * (&prev - &pair))
}

/// The three `G(2,n)` closed forms for grid `(i, j)`: adjacent (`j = i+1`),
/// one gap (`j = i+2`) and wider gaps (`j > i+2`).
pub fn g2_closed_forms(i: usize, j: usize, n: usize) -> Result<InvariantRecord> {
    if j <= i {
        return Err(Error::InvalidSelection(format!(
            "grid ({i},{j}) needs j > i"
        )));
    }
    if j >= n {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: n.saturating_sub(1),
        });
    }
    if n < 3 {
        return Err(Error::InvalidSelection(format!("G(2,{n}) needs n >= 3")));
    }
    let a = |k: usize| alpha_unchecked(k as isize, n);
    let (nn, ii, jj) = (
        BigInt::from(n as i64),
        BigInt::from(i as i64),
        BigInt::from(j as i64),
    );
    let two = BigInt::from(2);
    let one = BigInt::one();

    let (r, q, num, den) = if j == i + 1 {
        let q = &two * (&nn - &two - &two * &ii);
        let r = &two * (&nn - &two + &ii * (&nn - &two - &ii));
        let num = a(i) * a(i) + a(i + 2) * a(i + 2);
        let den = a(i) + a(i + 2);
        (r, q, num, den)
    } else {
        let q = &two * (&nn - &one - &ii - &jj);
        let r = &two * (&nn - &one + &ii * (&nn - &one - &ii) + &jj * (&nn - &one - &jj));
        let (num, den) = if j == i + 2 {
            let (a0, a1, a2, a3) = (a(i), a(i + 1), a(i + 2), a(i + 3));
            (
                &a0 * &a0 - &a0 * &a1 + &a1 * &a1 - &a1 * &a2 + &a2 * &a2 - &a2 * &a3 + &a3 * &a3,
                &a0 + &a1 + &a2 + &a3,
            )
        } else {
            let (a0, a1, b0, b1) = (a(i), a(i + 1), a(j), a(j + 1));
            (
                &a0 * &a0 - &a0 * &a1 + &a1 * &a1 + &b0 * &b0 - &b0 * &b1 + &b1 * &b1,
                &a0 + &a1 + &b0 + &b1,
            )
        };
        (r, q, num, den)
    };
    let h2 = BigRational::new(BigInt::from(4) * num, &den * &den);
    Ok(InvariantRecord::assemble(
        n,
        GridLabel(vec![i, j]),
        r,
        q,
        h2,
    ))
}

/// The holomorphic solution `β = {0, …, m-1}`.
pub fn holomorphic_beta(m: usize, n: usize) -> Result<(BetaVector, InvariantRecord)> {
    let beta = BetaVector::from_bits((0..n).map(|j| j < m).collect())?;
    let rec = beta_invariants(&beta);
    Ok((beta, rec))
}

pub fn complement(beta: &BetaVector) -> BetaVector {
    beta.complement()
}

pub fn reversal(beta: &BetaVector) -> BetaVector {
    beta.reversal()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn all_betas(n: usize) -> impl Iterator<Item = BetaVector> {
        (1u32..(1 << n) - 1).map(move |mask| {
            BetaVector::from_bits((0..n).map(|j| mask >> j & 1 == 1).collect()).unwrap()
        })
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(0, 5).unwrap(), 0.into());
        assert_eq!(alpha(2, 7).unwrap(), 10.into());
        assert_eq!(alpha(3, 6).unwrap(), 9.into());
        assert_eq!(alpha(6, 6).unwrap(), 0.into());
        assert!(alpha(7, 6).is_err());
        for n in 1..20 {
            for i in 0..=n {
                assert_eq!(alpha(i, n).unwrap(), alpha(n - i, n).unwrap());
            }
        }
    }

    #[test]
    fn cp_examples() {
        let c = cp_invariants(0, 2).unwrap();
        assert_eq!((c.r, c.q, c.h2), (1.into(), 1.into(), rat(4, 1)));
        for n in 2..12 {
            let c = cp_invariants(0, n).unwrap();
            assert_eq!(c.r, BigInt::from(n - 1));
            assert_eq!(c.q, BigInt::from(n - 1));
            assert_eq!(c.h2, rat(4, 1));
        }
        let c = cp_invariants(1, 5).unwrap();
        assert_eq!((c.r, c.q, c.h2), (10.into(), 2.into(), rat(28, 25)));
        assert!(cp_invariants(5, 5).is_err());
    }

    #[test]
    fn cp_symmetries() {
        for n in 2..15 {
            for i in 0..n {
                let a = cp_invariants(i, n).unwrap();
                let b = cp_invariants(n - 1 - i, n).unwrap();
                assert_eq!(a.r, b.r);
                assert_eq!(a.q, -b.q);
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(alpha_via_recurrence(2, 0, 7).unwrap(), 10.into());
        assert_eq!(alpha_via_recurrence(0, 1, 4).unwrap(), 3.into());
        assert_eq!(alpha_via_recurrence(1, 3, 8).unwrap(), 16.into());
        assert!(alpha_via_recurrence(5, 3, 7).is_err());
    }

    #[test]
    fn recurrence_matches_alpha() {
        for n in 2..=12 {
            for m in 0..n {
                for j in 0..=(n - m) {
                    assert_eq!(
                        alpha_via_recurrence(m, j, n).unwrap(),
                        alpha(m + j, n).unwrap(),
                        "m={m} j={j} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn beta_examples() {
        let cases: [(usize, &[usize], i64, i64, (i64, i64)); 4] = [
            (4, &[0, 1], 4, 4, (4, 1)),
            (2, &[0], 1, 1, (4, 1)),
            (7, &[2, 3], 22, 2, (244, 121)),
            (7, &[0, 5], 22, 2, (112, 121)),
        ];
        for (n, grid, r, q, (hp, hq)) in cases {
            let rec = beta_invariants(&BetaVector::from_indices(n, grid).unwrap());
            assert_eq!(rec.r, r.into(), "{grid:?}");
            assert_eq!(rec.q, q.into(), "{grid:?}");
            assert_eq!(rec.h2, rat(hp, hq), "{grid:?}");
            assert_eq!(&rec.kappa * BigRational::from(rec.r.clone()), rat(4, 1));
        }
    }

    #[test]
    fn beta_rejects_degenerate_weights() {
        assert!(BetaVector::from_bits(vec![false; 4]).is_err());
        assert!(BetaVector::from_bits(vec![true; 4]).is_err());
        assert!(BetaVector::from_indices(4, &[4]).is_err());
        assert!(GridLabel::new(vec![2, 1]).is_err());
    }

    #[test]
    fn record_invariants_hold() {
        for n in 2..=10 {
            for beta in all_betas(n) {
                let rec = beta_invariants(&beta);
                assert!(rec.r > BigInt::zero());
                assert!(rec.q.clone() * &rec.q <= rec.r.clone() * &rec.r);
                assert!(rec.h2 > BigRational::zero());
            }
        }
    }

    #[test]
    fn split_examples() {
        let cases: [(usize, &[usize], i64, i64); 3] = [
            (4, &[0, 1], 0, 8),
            (5, &[1, 3], 20, 20),
            (6, &[0, 4], 16, 20),
        ];
        for (n, grid, a, b) in cases {
            let (d, s) = rq_interaction_split(&BetaVector::from_indices(n, grid).unwrap());
            assert_eq!((d, s), (a.into(), b.into()), "{grid:?}");
        }
    }

    #[test]
    fn split_matches_sums() {
        for n in 2..=12 {
            for beta in all_betas(n) {
                let rec = beta_invariants(&beta);
                let (d, s) = rq_interaction_split(&beta);
                assert_eq!(d, &rec.r - &rec.q);
                assert_eq!(s, &rec.r + &rec.q);
            }
        }
    }

    #[test]
    fn g2_examples() {
        let cases = [
            ((0, 2, 4), (10, 2, (2, 5))),
            ((1, 4, 6), (26, 0, (98, 169))),
            ((1, 2, 5), (10, 2, (52, 25))),
        ];
        for ((i, j, n), (r, q, (hp, hq))) in cases {
            let rec = g2_closed_forms(i, j, n).unwrap();
            assert_eq!((rec.r, rec.q, rec.h2), (r.into(), q.into(), rat(hp, hq)));
        }
        assert!(g2_closed_forms(3, 3, 6).is_err());
        assert!(g2_closed_forms(3, 1, 6).is_err());
        assert!(g2_closed_forms(1, 6, 6).is_err());
    }

    #[test]
    fn g2_closed_forms_match_general_sums() {
        for n in 3..=30 {
            for i in 0..n {
                for j in i + 1..n {
                    let closed = g2_closed_forms(i, j, n).unwrap();
                    let general = beta_invariants(&BetaVector::from_indices(n, &[i, j]).unwrap());
                    assert_eq!(closed, general, "({i},{j}) in G(2,{n})");
                }
            }
        }
    }

    #[test]
    fn cp_matches_general_sums() {
        for n in 2..=12 {
            for i in 0..n {
                let cp = cp_invariants(i, n).unwrap();
                let general = beta_invariants(&BetaVector::from_indices(n, &[i]).unwrap());
                assert_eq!(cp, general);
            }
        }
    }

    #[test]
    fn holomorphic_examples() {
        for (m, n, rq) in [(2, 5, 6), (1, 2, 1), (3, 6, 9)] {
            let (beta, rec) = holomorphic_beta(m, n).unwrap();
            assert_eq!(beta.grid().indices(), (0..m).collect::<Vec<_>>().as_slice());
            assert_eq!((rec.r, rec.q, rec.h2), (rq.into(), rq.into(), rat(4, 1)));
        }
        for n in 2..=40 {
            for m in 1..n {
                let (_, rec) = holomorphic_beta(m, n).unwrap();
                assert_eq!(rec.r, BigInt::from(m * (n - m)));
                assert_eq!(rec.r, rec.q);
                assert_eq!(rec.h2, rat(4, 1));
            }
        }
    }

    #[test]
    fn complement_and_reversal_examples() {
        let b = BetaVector::from_indices(4, &[1, 2]).unwrap();
        assert_eq!(complement(&b).grid().indices(), &[0, 3]);
        let b = BetaVector::from_indices(7, &[3, 4]).unwrap();
        assert_eq!(reversal(&b).grid().indices(), &[2, 3]);
        assert_eq!(complement(&complement(&b)), b);
        assert_eq!(reversal(&reversal(&b)), b);
    }

    // Q(I - P) = ½Tr[[∂₋P, ∂₊P]] - Q(P) = -Q(P): complement keeps r and H²
    // but flips the sign of q, exactly like reversal.
    #[test]
    fn complement_and_reversal_transport() {
        for n in 2..=12 {
            for beta in all_betas(n) {
                let rec = beta_invariants(&beta);
                let comp = beta_invariants(&beta.complement());
                let rev = beta_invariants(&beta.reversal());
                assert_eq!(comp.r, rec.r);
                assert_eq!(comp.h2, rec.h2);
                assert_eq!(comp.q, -rec.q.clone());
                assert_eq!(rev.r, rec.r);
                assert_eq!(rev.h2, rec.h2);
                assert_eq!(rev.q, -rec.q.clone());
            }
        }
    }

    #[test]
    fn large_dimension_stays_exact() {
        let beta = BetaVector::from_indices(200, &[3, 97, 98, 150]).unwrap();
        let rec = beta_invariants(&beta);
        let (d, s) = rq_interaction_split(&beta);
        assert_eq!(d, &rec.r - &rec.q);
        assert_eq!(s, &rec.r + &rec.q);
    }

    #[test]
    fn grid_parse_and_display() {
        let g = GridLabel::parse("0, 5").unwrap();
        assert_eq!(g.indices(), &[0, 5]);
        assert_eq!(g.to_string(), "(0,5)");
        assert!(GridLabel::parse("a,1").is_err());
        assert!(GridLabel::parse("3,1").is_err());
    }
}
