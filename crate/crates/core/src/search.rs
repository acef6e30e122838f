//! Enumeration of projector selections, grouping by shared invariants, and
//! the `G(2,n)` coincidence analysis between adjacent grids `(i, i+1)` and
//! gapped grids `(k, l)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{beta_invariants, BetaVector, GridLabel, InvariantRecord};

/// All `C(n, m)` selections of weight `m`, in lexicographic grid order.
///
/// With `canonical_only` and `2m = n`, each complement pair is reported once,
/// by the member containing index `0`. For `2m ≠ n` complements have a
/// different weight and never meet here.
pub fn enumerate(
    n: usize,
    m: usize,
    canonical_only: bool,
) -> Result<impl Iterator<Item = BetaVector>> {
    if m == 0 || m >= n {
        return Err(Error::InvalidSelection(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let keep_all = !canonical_only || 2 * m != n;
    Ok((0..n).combinations(m).filter_map(move |grid| {
        if keep_all || grid[0] == 0 {
            Some(BetaVector::from_indices(n, &grid).expect("combination is a valid grid"))
        } else {
            None
        }
    }))
}

/// What solutions must share to land in one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKey {
    /// Gaussian curvature only, i.e. equal `r`.
    Curvature,
    /// Gaussian curvature and topological charge, i.e. equal `(r, q)`.
    CurvatureCharge,
}

/// Non-equivalent solutions of `G(m,n)` sharing the grouping key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceGroup {
    pub n: usize,
    pub m: usize,
    pub r: BigInt,
    /// Shared `q` for [`GroupKey::CurvatureCharge`]; for [`GroupKey::Curvature`]
    /// the per-member values are in `q_values`.
    pub q: Option<BigInt>,
    pub members: Vec<GridLabel>,
    pub q_values: Vec<BigInt>,
    pub h2_values: Vec<BigRational>,
    /// Every member has a distinct `H²`.
    pub fully_separated: bool,
}

impl CoincidenceGroup {
    /// Members are told apart by `q` alone.
    pub fn separated_by_charge(&self) -> bool {
        self.q_values.iter().all_unique()
    }
}

fn complement_grid(n: usize, grid: &GridLabel) -> GridLabel {
    let sel = grid.indices();
    GridLabel::new((0..n).filter(|j| !sel.contains(j)).collect())
        .expect("complement of a valid grid")
}

/// Groups every weight-`m` selection of `G(m,n)` by exact key and returns the
/// groups that keep at least two members after complement pairs are merged.
pub fn group_solutions(n: usize, m: usize, key: GroupKey) -> Result<Vec<CoincidenceGroup>> {
    let betas: Vec<BetaVector> = enumerate(n, m, false)?.collect();
    let records: Vec<InvariantRecord> = betas.par_iter().map(beta_invariants).collect();

    let mut buckets: BTreeMap<(BigInt, Option<BigInt>), Vec<InvariantRecord>> = BTreeMap::new();
    for rec in records {
        let q = match key {
            GroupKey::Curvature => None,
            GroupKey::CurvatureCharge => Some(rec.q.clone()),
        };
        buckets.entry((rec.r.clone(), q)).or_default().push(rec);
    }

    let mut groups = Vec::new();
    for ((r, q), mut recs) in buckets {
        if 2 * m == n {
            // drop the non-canonical member of any complement pair
            let grids: Vec<GridLabel> = recs.iter().map(|r| r.grid.clone()).collect();
            recs.retain(|rec| {
                let comp = complement_grid(n, &rec.grid);
                !(grids.contains(&comp) && comp < rec.grid)
            });
        }
        if recs.len() < 2 {
            continue;
        }
        recs.sort_by(|a, b| a.grid.cmp(&b.grid));
        let h2_values: Vec<BigRational> = recs.iter().map(|r| r.h2.clone()).collect();
        groups.push(CoincidenceGroup {
            n,
            m,
            r,
            q,
            fully_separated: h2_values.iter().all_unique(),
            members: recs.iter().map(|r| r.grid.clone()).collect(),
            q_values: recs.iter().map(|r| r.q.clone()).collect(),
            h2_values,
        });
    }
    Ok(groups)
}

/// Groups sharing `(r, q)`: the degeneracies that only `H²` can resolve.
pub fn coincidences(n: usize, m: usize) -> Result<Vec<CoincidenceGroup>> {
    group_solutions(n, m, GroupKey::CurvatureCharge)
}

/// `n_{k,i} = 3i + 1 - 4k + 2k(1+k)/(1+i)` when the division is exact.
pub fn n_ki(k: u64, i: u64) -> Option<i64> {
    let (k, i) = (k as i128, i as i128);
    let num = 2 * k * (1 + k);
    (num % (1 + i) == 0).then(|| (3 * i + 1 - 4 * k + num / (1 + i)) as i64)
}

/// One integral dimension `n_{k,i}`: in `G(2,n)` the adjacent grid
/// `(i, i+1)` and the gapped grid `(k, l)`, `l = 2i - k + 1`, share `(r, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkiRecord {
    pub k: u64,
    pub i: u64,
    pub n: i64,
    pub l: i64,
    /// `l ≤ n-1` and `i+1 ≤ n-1`.
    pub admissible: bool,
    /// `(H²_{i,i+1}, H²_{k,l})`, present for admissible records.
    pub h2_pair: Option<(BigRational, BigRational)>,
}

impl NkiRecord {
    pub fn adjacent_grid(&self) -> GridLabel {
        GridLabel::new(vec![self.i as usize, self.i as usize + 1]).unwrap()
    }

    pub fn gapped_grid(&self) -> GridLabel {
        GridLabel::new(vec![self.k as usize, self.l as usize]).unwrap()
    }

    /// The two surfaces have different mean curvature.
    pub fn separated(&self) -> Option<bool> {
        self.h2_pair.as_ref().map(|(a, b)| a != b)
    }
}

/// The record for `(k, i)`, or `None` when `n_{k,i}` is not an integer.
pub fn nki_record(k: u64, i: u64) -> Result<Option<NkiRecord>> {
    if i <= k {
        return Err(Error::InvalidSelection(format!(
            "need i > k, got k = {k}, i = {i}"
        )));
    }
    let Some(n) = n_ki(k, i) else { return Ok(None) };
    let l = 2 * i as i64 - k as i64 + 1;
    let admissible = l < n && (i as i64) < n - 1;
    let h2_pair = if admissible {
        let nu = n as usize;
        let adj = beta_invariants(&BetaVector::from_indices(
            nu,
            &[i as usize, i as usize + 1],
        )?);
        let gap = beta_invariants(&BetaVector::from_indices(nu, &[k as usize, l as usize])?);
        if (&adj.r, &adj.q) != (&gap.r, &gap.q) {
            return Err(Error::FamilyMismatch(format!(
                "(k,i) = ({k},{i}): ({},{}) vs ({},{})",
                adj.r, adj.q, gap.r, gap.q
            )));
        }
        Some((adj.h2, gap.h2))
    } else {
        None
    };
    Ok(Some(NkiRecord {
        k,
        i,
        n,
        l,
        admissible,
        h2_pair,
    }))
}

/// Every `(k, i)` with `k ≤ k_max`, `k < i ≤ i_max` and `n_{k,i}` integral,
/// in `(k, i)` order. Inadmissible records are kept and flagged.
pub fn nki_scan(k_max: u64, i_max: u64) -> Result<Vec<NkiRecord>> {
    let pairs: Vec<(u64, u64)> = (0..=k_max)
        .flat_map(|k| (k + 1..=i_max).map(move |i| (k, i)))
        .collect();
    let found: Vec<Option<NkiRecord>> = pairs
        .par_iter()
        .map(|&(k, i)| nki_record(k, i))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Default `i` bound for a scan up to `k_max`: `2k_max(1+k_max)`. For `k ≥ 1`,
/// `1+i` divides `2k(1+k)`, so no integral record lies beyond it.
pub fn default_i_max(k_max: u64) -> u64 {
    (2 * k_max * (1 + k_max)).max(1)
}

/// Number of admissible records for each `k` (divisor-driven for `k ≥ 1`).
pub fn admissible_counts(records: &[NkiRecord]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for r in records.iter().filter(|r| r.admissible) {
        *out.entry(r.k).or_insert(0) += 1;
    }
    out
}

/// Parametric rows of the tabulated `n_{k,i}` families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyRow {
    /// `i = 2k(1+k) - 1`, `n = 6k² + 2k - 1`, `l = 4k² + 3k - 1`, `k > 0`.
    LargestDivisor,
    /// `i = k(1+k) - 1`, `n = k(3k - 1)`, `l = 2k² + k - 1`, `k > 1`.
    HalfDivisor,
    /// `i = 2k + 1`, `n = 3k + 4`, `l = 3(k+1) = n - 1`, `k ≥ 0`.
    LastColumn,
    /// `i = 2k - 1`, `n = l = 3k - 1`: never admissible.
    Degenerate,
    /// `k = 2p + 1`, `i = p(2p + 3)`, `n = 6p² + p + 1`, `l = 4p(p+1)`, `p ≥ 2`.
    OddQuarter,
    /// `k = 2p`, `i = p(2p + 1) - 1`, `n = 6p² - 5p + 2`, `l = 4p² - 1`, `p ≥ 2`.
    EvenQuarter,
}

impl FamilyRow {
    pub const ALL: [FamilyRow; 6] = [
        FamilyRow::LargestDivisor,
        FamilyRow::HalfDivisor,
        FamilyRow::LastColumn,
        FamilyRow::Degenerate,
        FamilyRow::OddQuarter,
        FamilyRow::EvenQuarter,
    ];

    /// `(k, i, n, l)` for the row parameter (`k`, or `p` for the quarter rows).
    fn instantiate(self, param: u64) -> Result<(u64, u64, i64, i64)> {
        let t = param as i64;
        let check = |ok: bool, range: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(Error::FamilyRange { param, range })
            }
        };
        Ok(match self {
            FamilyRow::LargestDivisor => {
                check(t > 0, "k > 0")?;
                (
                    param,
                    (2 * t * (1 + t) - 1) as u64,
                    6 * t * t + 2 * t - 1,
                    4 * t * t + 3 * t - 1,
                )
            }
            FamilyRow::HalfDivisor => {
                check(t > 1, "k > 1")?;
                (
                    param,
                    (t * (1 + t) - 1) as u64,
                    t * (3 * t - 1),
                    2 * t * t + t - 1,
                )
            }
            FamilyRow::LastColumn => (param, (2 * t + 1) as u64, 3 * t + 4, 3 * (t + 1)),
            FamilyRow::Degenerate => {
                check(t > 1, "k > 1")?;
                (param, (2 * t - 1) as u64, 3 * t - 1, 3 * t - 1)
            }
            FamilyRow::OddQuarter => {
                check(t >= 2, "p >= 2")?;
                (
                    (2 * t + 1) as u64,
                    (t * (2 * t + 3)) as u64,
                    6 * t * t + t + 1,
                    4 * t * (t + 1),
                )
            }
            FamilyRow::EvenQuarter => {
                check(t >= 2, "p >= 2")?;
                (
                    (2 * t) as u64,
                    (t * (2 * t + 1) - 1) as u64,
                    6 * t * t - 5 * t + 2,
                    4 * t * t - 1,
                )
            }
        })
    }
}

/// Instantiates a family row and cross-checks its `n` and `l` against the
/// general `n_{k,i}` formula.
pub fn family_row(row: FamilyRow, param: u64) -> Result<NkiRecord> {
    let (k, i, n, l) = row.instantiate(param)?;
    let rec = nki_record(k, i)?.ok_or_else(|| {
        Error::FamilyMismatch(format!("{row:?} at {param}: n_{{{k},{i}}} is not integral"))
    })?;
    if (rec.n, rec.l) != (n, l) {
        return Err(Error::FamilyMismatch(format!(
            "{row:?} at {param}: tabulated (n, l) = ({n}, {l}), computed ({}, {})",
            rec.n, rec.l
        )));
    }
    if !rec.admissible {
        return Err(Error::Inadmissible { l, n });
    }
    Ok(rec)
}

/// Every instance of the family rows for parameters `0..=max_param`,
/// skipping out-of-range and inadmissible ones.
pub fn family_rows(row: FamilyRow, max_param: u64) -> Result<Vec<NkiRecord>> {
    let mut out = Vec::new();
    for p in 0..=max_param {
        match family_row(row, p) {
            Ok(rec) => out.push(rec),
            Err(Error::FamilyRange { .. } | Error::Inadmissible { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// One parameter value of a ratio identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub param: u64,
    pub n: usize,
    /// `H²` ratio from the general sums.
    pub computed: BigRational,
    /// The quartic rational function at the same parameter.
    pub quartic: BigRational,
}

impl RatioRow {
    pub fn agrees(&self) -> bool {
        self.computed == self.quartic
    }

    pub fn is_unit(&self) -> bool {
        self.computed.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    /// `(H_{0,2i+1}/H_{i,i+1})²` in `G(2, 3i+1)`, for `i = 1…max`.
    pub adjacent_family: Vec<RatioRow>,
    /// `(H_{k,3+3k}/H_{1+2k,2+2k})²` in `G(2, 4+3k)`, for `k = 0…max`.
    pub last_column_family: Vec<RatioRow>,
}

impl RatioReport {
    pub fn all_agree(&self) -> bool {
        self.adjacent_family
            .iter()
            .chain(&self.last_column_family)
            .all(RatioRow::agrees)
    }

    pub fn unit_params_adjacent(&self) -> Vec<u64> {
        self.adjacent_family
            .iter()
            .filter(|r| r.is_unit())
            .map(|r| r.param)
            .collect()
    }

    pub fn unit_params_last_column(&self) -> Vec<u64> {
        self.last_column_family
            .iter()
            .filter(|r| r.is_unit())
            .map(|r| r.param)
            .collect()
    }

    /// Both identities hold and the ratio is one only at `i = 1` and `k = 0`.
    pub fn holds(&self) -> bool {
        self.all_agree()
            && self.unit_params_adjacent() == [1]
            && self.unit_params_last_column() == [0]
    }
}

fn quartic(c: [i64; 5], d: [i64; 5], t: u64) -> BigRational {
    let eval = |p: [i64; 5]| {
        let t = BigInt::from(t);
        p.iter().rev().fold(BigInt::from(0), |acc, &c| acc * &t + c)
    };
    BigRational::new(eval(c), eval(d))
}

fn h2_of(n: usize, grid: &[usize]) -> Result<BigRational> {
    Ok(beta_invariants(&BetaVector::from_indices(n, grid)?).h2)
}

/// Checks both quartic ratio identities against ratios of `H²` from the
/// general sums, for parameters up to `max_param`.
pub fn ratio_identities(max_param: u64) -> Result<RatioReport> {
    let mut adjacent_family = Vec::new();
    for i in 1..=max_param {
        let n = 3 * i as usize + 1;
        let iu = i as usize;
        let computed = h2_of(n, &[0, 2 * iu + 1])? / h2_of(n, &[iu, iu + 1])?;
        adjacent_family.push(RatioRow {
            param: i,
            n,
            computed,
            quartic: quartic([2, 1, 3, 1, 2], [2, -6, 1, 8, 4], i),
        });
    }
    let mut last_column_family = Vec::new();
    for k in 0..=max_param {
        let n = 3 * k as usize + 4;
        let ku = k as usize;
        let computed = h2_of(n, &[ku, 3 + 3 * ku])? / h2_of(n, &[1 + 2 * ku, 2 + 2 * ku])?;
        last_column_family.push(RatioRow {
            param: k,
            n,
            computed,
            quartic: quartic([9, 18, 18, 9, 2], [9, 36, 49, 24, 4], k),
        });
    }
    Ok(RatioReport {
        adjacent_family,
        last_column_family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn admissible(k: u64) -> BTreeSet<(u64, i64, i64)> {
        nki_scan(k, default_i_max(k))
            .unwrap()
            .into_iter()
            .filter(|r| r.k == k && r.admissible)
            .map(|r| (r.i, r.n, r.l))
            .collect()
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(4, 2, false).unwrap().count(), 6);
        assert_eq!(enumerate(7, 2, false).unwrap().count(), 21);
        assert_eq!(enumerate(4, 2, true).unwrap().count(), 3);
        assert_eq!(enumerate(7, 2, true).unwrap().count(), 21);
        let grids: Vec<_> = enumerate(5, 1, false).unwrap().map(|b| b.grid()).collect();
        assert_eq!(
            grids,
            (0..5)
                .map(|i| GridLabel::new(vec![i]).unwrap())
                .collect::<Vec<_>>()
        );
        assert!(enumerate(4, 0, false).is_err());
        assert!(enumerate(4, 4, false).is_err());
    }

    #[test]
    fn enumerate_is_lexicographic() {
        let grids: Vec<_> = enumerate(6, 3, false).unwrap().map(|b| b.grid()).collect();
        assert!(grids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn g27_pair() {
        let groups = coincidences(7, 2).unwrap();
        let g = groups
            .iter()
            .find(|g| g.r == 22.into() && g.q == Some(2.into()))
            .expect("group (22, 2)");
        assert_eq!(
            g.members,
            vec![
                GridLabel::new(vec![0, 5]).unwrap(),
                GridLabel::new(vec![2, 3]).unwrap()
            ]
        );
        assert_eq!(g.h2_values, vec![rat(112, 121), rat(244, 121)]);
        assert!(g.fully_separated);
    }

    #[test]
    fn g24_merges_complements() {
        assert!(coincidences(4, 2).unwrap().is_empty());
    }

    #[test]
    fn cp_pairs_share_curvature_not_charge() {
        // in CP^1 the two grids are complements and merge
        assert!(group_solutions(2, 1, GroupKey::Curvature)
            .unwrap()
            .is_empty());
        for n in 3..=12 {
            assert!(coincidences(n, 1).unwrap().is_empty());
            let groups = group_solutions(n, 1, GroupKey::Curvature).unwrap();
            assert_eq!(groups.len(), n / 2);
            for g in groups {
                let i = g.members[0].indices()[0];
                assert_eq!(g.members[1].indices(), &[n - 1 - i]);
                assert!(g.separated_by_charge());
            }
        }
    }

    #[test]
    fn m2_groups_pair_adjacent_with_gapped() {
        for n in 4..=30 {
            for g in coincidences(n, 2).unwrap() {
                assert!(g.fully_separated, "{g:?}");
                let adjacent = g
                    .members
                    .iter()
                    .filter(|gr| gr.indices()[1] == gr.indices()[0] + 1)
                    .count();
                assert_eq!(adjacent, 1, "{g:?}");
                assert_eq!(g.members.len(), 2, "{g:?}");
            }
        }
    }

    #[test]
    fn gapped_pairs_never_coincide() {
        for n in 4..=30 {
            let gapped: Vec<_> = enumerate(n, 2, false)
                .unwrap()
                .filter(|b| {
                    let g = b.grid();
                    g.indices()[1] > g.indices()[0] + 1
                })
                .map(|b| beta_invariants(&b))
                .collect();
            for (a, b) in gapped.iter().tuple_combinations() {
                assert!(
                    (&a.r, &a.q) != (&b.r, &b.q),
                    "{:?} {:?} in {n}",
                    a.grid,
                    b.grid
                );
            }
        }
    }

    #[test]
    fn nki_examples() {
        assert_eq!(admissible(1), BTreeSet::from([(3, 7, 6)]));
        assert_eq!(admissible(2), BTreeSet::from([(5, 10, 9), (11, 27, 21)]));
        let k5 = admissible(5);
        assert!(k5.contains(&(19, 41, 34)));
        assert!(k5.contains(&(14, 27, 24)));
        for i in 1..40 {
            let r = nki_record(0, i).unwrap().unwrap();
            assert_eq!((r.n, r.l), (3 * i as i64 + 1, 2 * i as i64 + 1));
            assert!(r.admissible);
        }
        assert!(nki_record(3, 3).is_err());
        assert_eq!(nki_record(1, 2).unwrap(), None);
    }

    #[test]
    fn admissible_records_are_separated() {
        for r in nki_scan(12, default_i_max(12)).unwrap() {
            if r.admissible && (r.k >= 1 || r.i >= 2) {
                assert_eq!(r.separated(), Some(true), "{r:?}");
            }
        }
        let degenerate = nki_record(0, 1).unwrap().unwrap();
        assert_eq!(degenerate.separated(), Some(false));
    }

    #[test]
    fn family_examples() {
        let r = family_row(FamilyRow::LastColumn, 1).unwrap();
        assert_eq!((r.k, r.i, r.n, r.l), (1, 3, 7, 6));
        let r = family_row(FamilyRow::OddQuarter, 2).unwrap();
        assert_eq!((r.k, r.i, r.n, r.l), (5, 14, 27, 24));
        for k in 2..20 {
            assert!(matches!(
                family_row(FamilyRow::Degenerate, k),
                Err(Error::Inadmissible { .. })
            ));
        }
        assert!(matches!(
            family_row(FamilyRow::LargestDivisor, 0),
            Err(Error::FamilyRange { .. })
        ));
        assert!(matches!(
            family_row(FamilyRow::HalfDivisor, 1),
            Err(Error::FamilyRange { .. })
        ));
        assert!(matches!(
            family_row(FamilyRow::OddQuarter, 1),
            Err(Error::FamilyRange { .. })
        ));
    }

    #[test]
    fn family_rows_are_scanned() {
        let scan: BTreeSet<(u64, u64)> = nki_scan(12, default_i_max(12))
            .unwrap()
            .into_iter()
            .filter(|r| r.admissible)
            .map(|r| (r.k, r.i))
            .collect();
        for row in FamilyRow::ALL {
            for rec in family_rows(row, 12).unwrap() {
                if rec.k <= 12 {
                    assert!(scan.contains(&(rec.k, rec.i)), "{row:?} {rec:?}");
                }
            }
        }
    }

    #[test]
    fn ratio_example_i2() {
        let report = ratio_identities(3).unwrap();
        let row = &report.adjacent_family[1];
        assert_eq!((row.param, row.n), (2, 7));
        assert_eq!(row.computed, rat(28, 61));
        assert_eq!(row.quartic, rat(28, 61));
        assert!(report.holds());
    }
}
