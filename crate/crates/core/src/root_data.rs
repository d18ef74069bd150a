//! ADE configuration data: intersection matrices of exceptional curves,
//! fundamental cycles, and the sign-selection rule used by the lifting
//! walk.
//!
//! Curves are indexed 1..n in a fixed order: series A in path order;
//! series D trivalent node first, then the long tail, then the two short
//! legs; series E trivalent node first, then arms longest to shortest.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{rat_int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::D => 'D',
            Series::E => 'E',
        }
    }
}

/// A Dynkin series together with its rank (number of exceptional curves).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdeType {
    pub series: Series,
    pub rank: usize,
}

impl AdeType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(AdeType { series, rank })
        } else {
            Err(Error::InvalidRank {
                series: series.letter(),
                rank,
            })
        }
    }

    /// All legal types up to a rank bound, in series order. Test sweeps
    /// use `all_up_to_rank(8)`.
    pub fn all_up_to_rank(max: usize) -> Vec<AdeType> {
        let mut out = Vec::new();
        for n in 1..=max {
            out.push(AdeType::new(Series::A, n).unwrap());
        }
        for n in 4..=max {
            if let Ok(t) = AdeType::new(Series::D, n) {
                out.push(t);
            }
        }
        for n in 6..=8.min(max) {
            if let Ok(t) = AdeType::new(Series::E, n) {
                out.push(t);
            }
        }
        out
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AdeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadAdeType(s.to_owned());
        let mut chars = s.chars();
        let series = match chars.next() {
            Some('A' | 'a') => Series::A,
            Some('D' | 'd') => Series::D,
            Some('E' | 'e') => Series::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        AdeType::new(series, rank)
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Validated configuration of one ADE exceptional locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeData {
    ade_type: AdeType,
    gram: Vec<Vec<i64>>,
    /// Dynkin tree edges, 0-based.
    adjacency: Vec<(usize, usize)>,
    fund_cycle: Vec<i64>,
}

impl AdeData {
    pub fn ade_type(&self) -> AdeType {
        self.ade_type
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Intersection matrix of the exceptional curves.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Tree edges as 0-based index pairs.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Fundamental cycle multiplicities.
    pub fn fund_cycle(&self) -> &[i64] {
        &self.fund_cycle
    }

    pub fn gram_rational(&self) -> linalg::Matrix {
        self.gram
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    /// Pairings `C_k . (sum_i a_i C_i)` for all k (that is, `G a`).
    pub fn curve_pairings(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: a.len(),
            });
        }
        Ok(self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(a)
                    .fold(Rational::zero(), |acc, (&g, ai)| acc + rat_int(g) * ai)
            })
            .collect())
    }
}

fn dynkin_edges(t: AdeType) -> Vec<(usize, usize)> {
    let n = t.rank;
    match t.series {
        Series::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Series::D => {
            // Node 0 trivalent, tail 1..=n-3 chained outward, legs n-2 and n-1.
            let mut e = vec![(0, 1)];
            for i in 1..n - 3 {
                e.push((i, i + 1));
            }
            e.push((0, n - 2));
            e.push((0, n - 1));
            e
        }
        Series::E => {
            let arms: &[usize] = match n {
                6 => &[2, 2, 1],
                7 => &[3, 2, 1],
                8 => &[4, 2, 1],
                _ => unreachable!("validated rank"),
            };
            let mut e = Vec::new();
            let mut next = 1;
            for &len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    e.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            e
        }
    }
}

/// Constructs the Gram matrix, adjacency, and fundamental cycle of a
/// legal ADE type.
pub fn build_ade(t: AdeType) -> Result<AdeData> {
    // Re-validate so `AdeData` can only hold legal configurations even if
    // the caller assembled `AdeType` by hand.
    let t = AdeType::new(t.series, t.rank)?;
    let n = t.rank;
    let adjacency = dynkin_edges(t);
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        gram[i][i] = -2;
    }
    for &(i, j) in &adjacency {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    let fund_cycle = fundamental_cycle(&gram)?;
    Ok(AdeData {
        ade_type: t,
        gram,
        adjacency,
        fund_cycle,
    })
}

/// Artin's algorithm: the minimal positive vector `m` with
/// `(sum m_i C_i) . C_j <= 0` for all j.
///
/// Starts from all ones and increments any offending coordinate until
/// no pairing is positive. The iteration cap converts a malformed Gram
/// matrix into a diagnosable error instead of a hang. The result of a
/// legal ADE input always squares to -2, which is asserted.
pub fn fundamental_cycle(gram: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = gram.len();
    let cap = 8 * n * 8;
    let mut m = vec![1i64; n];
    let mut steps = 0usize;
    loop {
        let pairings: Vec<i64> = gram
            .iter()
            .map(|row| row.iter().zip(&m).map(|(&g, &mi)| g * mi).sum())
            .collect();
        match pairings.iter().position(|&p| p > 0) {
            None => {
                let square: i64 = pairings.iter().zip(&m).map(|(&p, &mi)| p * mi).sum();
                assert_eq!(square, -2, "fundamental cycle must square to -2");
                return Ok(m);
            }
            Some(j) => {
                m[j] += 1;
                steps += 1;
                if steps > cap {
                    return Err(Error::NonTerminating { cap });
                }
            }
        }
    }
}

/// Certificate produced by [`inverse_negativity_check`].
#[derive(Debug, Clone, Serialize)]
pub struct InverseNegativityCertificate {
    #[serde(with = "crate::rational::serde_ratio_mat")]
    pub inverse: linalg::Matrix,
    pub all_negative: bool,
}

/// Exact inverse of the intersection matrix together with the
/// all-entries-negative flag (true for every legal ADE input).
pub fn inverse_negativity_check(data: &AdeData) -> Result<InverseNegativityCertificate> {
    let inverse = linalg::inverse(&data.gram_rational())?;
    let all_negative = inverse
        .iter()
        .all(|row| row.iter().all(|e| e.is_negative()));
    Ok(InverseNegativityCertificate {
        inverse,
        all_negative,
    })
}

/// Smallest 1-based index `k` with `a_k < 0` and `C_k . (sum a_i C_i) > 0`,
/// or `None` when no entry of `a` is negative.
///
/// For a legal ADE intersection matrix such a `k` always exists when some
/// entry is negative; failure to find one is an internal contradiction.
pub fn cartan_select(data: &AdeData, a: &[Rational]) -> Result<Option<usize>> {
    if a.iter().all(|ai| !ai.is_negative()) {
        return Ok(None);
    }
    let pairings = data.curve_pairings(a)?;
    for (k, (ak, pk)) in a.iter().zip(&pairings).enumerate() {
        if ak.is_negative() && pk.is_positive() {
            return Ok(Some(k + 1));
        }
    }
    Err(Error::InternalContradiction)
}
