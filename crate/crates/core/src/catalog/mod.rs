//! Newline-delimited JSON records for invariants, coincidence groups, `n_{k,i}`
//! scans and verification runs, plus the tabulated fixtures and the command
//! line front end.
//!
//! Exact quantities never pass through floats: integers are decimal strings
//! and rationals are reduced `"p/q"` strings with `q > 0`.

pub mod cli;
pub mod fixtures;

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{GridLabel, InvariantRecord};
use crate::frames::G25Report;
use crate::oracle::{Check, VerificationReport};
use crate::search::{CoincidenceGroup, NkiRecord};

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational, serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("{s:?} is not a canonical p/q rational"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if !q.is_positive() || !p.gcd(&q).is_one() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new_raw(p, q)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Arbitrary-precision integer, serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Integer(pub BigInt);

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigInt>()
            .map(Integer)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPayload {
    pub n: usize,
    pub m: usize,
    pub grid: GridLabel,
    pub r: Integer,
    pub q: Integer,
    pub h2: Rational,
    pub kappa: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPayload {
    pub n: usize,
    pub m: usize,
    pub r: Integer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Integer>,
    pub members: Vec<GridLabel>,
    pub h2_values: Vec<Rational>,
    pub fully_separated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkiPayload {
    pub n: i64,
    pub m: usize,
    pub k: u64,
    pub i: u64,
    pub l: i64,
    /// Adjacent grid `(i, i+1)`.
    pub grid: GridLabel,
    /// Gapped grid `(k, l)`.
    pub partner: GridLabel,
    pub admissible: bool,
    pub h2_pair: Option<[Rational; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyPayload {
    /// `"veronese"` or `"nonveronese"`.
    pub target: String,
    pub n: usize,
    pub m: usize,
    pub grid: Option<GridLabel>,
    pub tol: f64,
    pub h: f64,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckPayload>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Invariant(InvariantPayload),
    Group(GroupPayload),
    Nki(NkiPayload),
    Verify(VerifyPayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

impl CatalogRecord {
    pub fn new(payload: Payload) -> Self {
        CatalogRecord {
            schema_version: SCHEMA_VERSION,
            payload,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let rec: CatalogRecord =
            serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {}",
                rec.schema_version
            )));
        }
        Ok(rec)
    }
}

impl From<&InvariantRecord> for CatalogRecord {
    fn from(r: &InvariantRecord) -> Self {
        CatalogRecord::new(Payload::Invariant(InvariantPayload {
            n: r.n,
            m: r.m,
            grid: r.grid.clone(),
            r: Integer(r.r.clone()),
            q: Integer(r.q.clone()),
            h2: Rational(r.h2.clone()),
            kappa: Rational(r.kappa.clone()),
        }))
    }
}

impl From<&CoincidenceGroup> for CatalogRecord {
    fn from(g: &CoincidenceGroup) -> Self {
        CatalogRecord::new(Payload::Group(GroupPayload {
            n: g.n,
            m: g.m,
            r: Integer(g.r.clone()),
            q: g.q.clone().map(Integer),
            members: g.members.clone(),
            h2_values: g.h2_values.iter().cloned().map(Rational).collect(),
            fully_separated: g.fully_separated,
        }))
    }
}

impl From<&NkiRecord> for CatalogRecord {
    fn from(r: &NkiRecord) -> Self {
        CatalogRecord::new(Payload::Nki(NkiPayload {
            n: r.n,
            m: 2,
            k: r.k,
            i: r.i,
            l: r.l,
            grid: r.adjacent_grid(),
            partner: r.gapped_grid(),
            admissible: r.admissible,
            h2_pair: r
                .h2_pair
                .as_ref()
                .map(|(a, b)| [Rational(a.clone()), Rational(b.clone())]),
        }))
    }
}

fn check_payloads(checks: &[Check]) -> Vec<CheckPayload> {
    checks
        .iter()
        .map(|c| CheckPayload {
            name: c.name.clone(),
            residual: c.residual,
            tolerance: c.tolerance,
            passed: c.passed(),
        })
        .collect()
}

/// Run parameters carried alongside a verification report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunParams {
    pub tol: f64,
    pub h: f64,
    pub seed: u64,
}

pub fn veronese_verify_record(
    n: usize,
    grid: &GridLabel,
    report: &VerificationReport,
    params: RunParams,
) -> CatalogRecord {
    CatalogRecord::new(Payload::Verify(VerifyPayload {
        target: "veronese".into(),
        n,
        m: grid.len(),
        grid: Some(grid.clone()),
        tol: params.tol,
        h: params.h,
        seed: params.seed,
        samples: report.samples.len(),
        checks: check_payloads(&report.checks),
        passed: report.passed(),
    }))
}

pub fn g25_verify_record(report: &G25Report, params: RunParams) -> CatalogRecord {
    let mut checks = check_payloads(&report.checks);
    checks.push(CheckPayload {
        name: "H1_spread".into(),
        residual: report.h1_spread,
        tolerance: report.spread_threshold,
        passed: report.nonconstant(),
    });
    CatalogRecord::new(Payload::Verify(VerifyPayload {
        target: "nonveronese".into(),
        n: 5,
        m: 2,
        grid: None,
        tol: params.tol,
        h: params.h,
        seed: params.seed,
        samples: report.samples.len(),
        checks,
        passed: report.passed(),
    }))
}

/// Writes one record per line.
pub fn write_records<'a, W, I>(out: &mut W, records: I) -> std::io::Result<()>
where
    W: Write + ?Sized,
    I: IntoIterator<Item = &'a CatalogRecord>,
{
    for rec in records {
        writeln!(out, "{}", rec.to_line())?;
    }
    Ok(())
}

/// Reads newline-delimited records, skipping blank lines.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<CatalogRecord>> {
    input
        .lines()
        .map(|l| l.map_err(|e| Error::Parse(e.to_string())))
        .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()))
        .map(|l| CatalogRecord::from_line(&l?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{beta_invariants, BetaVector};

    #[test]
    fn rational_strings() {
        let r: Rational = "112/121".parse().unwrap();
        assert_eq!(r.0, BigRational::new(112.into(), 121.into()));
        assert_eq!(
            Rational(BigRational::from_integer(4.into())).to_string(),
            "4/1"
        );
        assert_eq!(
            Rational(BigRational::new((-6).into(), 4.into())).to_string(),
            "-3/2"
        );
        for bad in ["4", "2/4", "1/-2", "1/0", "a/b", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn invariant_line_format() {
        let rec = beta_invariants(&BetaVector::from_indices(7, &[0, 5]).unwrap());
        let line = CatalogRecord::from(&rec).to_line();
        assert_eq!(
            line,
            r#"{"schema_version":1,"kind":"invariant","n":7,"m":2,"grid":[0,5],"r":"22","q":"2","h2":"112/121","kappa":"2/11"}"#
        );
        assert_eq!(
            CatalogRecord::from_line(&line).unwrap(),
            CatalogRecord::from(&rec)
        );
    }

    #[test]
    fn rejects_other_schema_versions() {
        let line = r#"{"schema_version":2,"kind":"invariant","n":2,"m":1,"grid":[0],"r":"1","q":"1","h2":"4/1","kappa":"4/1"}"#;
        assert!(CatalogRecord::from_line(line).is_err());
    }
}
