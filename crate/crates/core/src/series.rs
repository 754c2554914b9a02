//! Generating-function coefficients by exact integer recurrences, and their
//! cross-check against enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graft::{generate_set, generate_trees, Algebra, FamilySelector};
use crate::hopf::{prim_tot_dimension, PRIM_TOT_MAX_DEGREE};

pub const SERIES_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("degree {degree} exceeds the limit {max} for {id}")]
    DegreeTooLarge { id: SeriesId, degree: usize, max: usize },
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("table index must be at least 1")]
    ZeroIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesId {
    /// G-forests.
    BinftyForests,
    /// G-trees.
    BinftyTrees,
    /// G-forests with exactly `k` trees.
    BinftyLength(usize),
    B0Trees,
    B0Forests,
    BiTrees(usize),
    /// Free words over the trees of G^i.
    BiForests(usize),
    BTrees,
    BForests,
    /// Dimensions of the totally primitive part.
    DDims,
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::BinftyForests => f.write_str("Binfty_forests"),
            SeriesId::BinftyTrees => f.write_str("Binfty_trees"),
            SeriesId::BinftyLength(k) => write!(f, "Binfty_length({k})"),
            SeriesId::B0Trees => f.write_str("B0_trees"),
            SeriesId::B0Forests => f.write_str("B0_forests"),
            SeriesId::BiTrees(i) => write!(f, "Bi_trees({i})"),
            SeriesId::BiForests(i) => write!(f, "Bi_forests({i})"),
            SeriesId::BTrees => f.write_str("B_trees"),
            SeriesId::BForests => f.write_str("B_forests"),
            SeriesId::DDims => f.write_str("D_dims"),
        }
    }
}

impl FromStr for SeriesId {
    type Err = SeriesError;
    /// Parametrized tables are written `Bi_trees(3)` or `Bi_trees:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SeriesError::UnknownTable(s.to_string());
        let (name, arg) = match s.split_once(['(', ':']) {
            Some((name, rest)) => {
                let digits = rest.strip_suffix(')').unwrap_or(rest);
                let k: usize = digits.parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(SeriesError::ZeroIndex);
                }
                (name, Some(k))
            }
            None => (s, None),
        };
        Ok(match (name, arg) {
            ("Binfty_forests", None) => SeriesId::BinftyForests,
            ("Binfty_trees", None) => SeriesId::BinftyTrees,
            ("Binfty_length", Some(k)) => SeriesId::BinftyLength(k),
            ("B0_trees", None) => SeriesId::B0Trees,
            ("B0_forests", None) => SeriesId::B0Forests,
            ("Bi_trees", Some(i)) => SeriesId::BiTrees(i),
            ("Bi_forests", Some(i)) => SeriesId::BiForests(i),
            ("B_trees", None) => SeriesId::BTrees,
            ("B_forests", None) => SeriesId::BForests,
            ("D_dims", None) => SeriesId::DDims,
            _ => return Err(unknown()),
        })
    }
}

/// Coefficients of degrees `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    values: Vec<BigInt>,
}

impl CoefficientTable {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn max_degree(&self) -> usize {
        self.values.len()
    }

    /// Coefficient of `x^degree`, for `degree ≥ 1`.
    pub fn get(&self, degree: usize) -> Option<&BigInt> {
        degree.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }
}

/// `f[k][n]`: G-forests of degree `n` with `k` trees, `1 ≤ k ≤ n ≤ max`.
fn binfty_triangle(max: usize) -> Vec<Vec<BigInt>> {
    let mut f = vec![vec![BigInt::zero(); max + 1]; max + 1];
    if max == 0 {
        return f;
    }
    f[1][1] = BigInt::one();
    for n in 2..=max {
        let total: BigInt = (1..n).map(|k| &f[k][n - 1]).sum();
        f[1][n] = total * 2;
        for k in 2..=n {
            f[k][n] = (k - 1..n).map(|j| &f[j][n - 1]).sum();
        }
    }
    f
}

/// Free words over trees counted by `t[1..]`; returns `w[0..]` with `w[0] = 1`.
fn words(t: &[BigInt]) -> Vec<BigInt> {
    let mut w = vec![BigInt::one()];
    for n in 1..t.len() {
        let v = (1..=n).map(|k| &t[k] * &w[n - k]).sum();
        w.push(v);
    }
    w
}

fn catalan(max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for m in 0..max {
        let v = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(v);
    }
    c
}

/// Trees of T from `T = x + xT + T²`, indexed from 0.
fn schroeder_trees(max: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); max + 1];
    for n in 1..=max {
        let mut v: BigInt = (1..n).map(|k| &t[k] * &t[n - k]).sum();
        v += &t[n - 1];
        if n == 1 {
            v += 1;
        }
        t[n] = v;
    }
    t
}

fn indexed(max: usize, f: impl Fn(usize) -> BigInt) -> Vec<BigInt> {
    (0..=max).map(|n| if n == 0 { BigInt::zero() } else { f(n) }).collect()
}

/// Coefficients indexed from degree 0.
fn raw(id: SeriesId, max: usize) -> Vec<BigInt> {
    match id {
        SeriesId::BinftyForests => {
            let f = binfty_triangle(max);
            indexed(max, |n| (1..=n).map(|k| &f[k][n]).sum())
        }
        SeriesId::BinftyTrees => {
            let f = binfty_triangle(max);
            indexed(max, |n| f[1][n].clone())
        }
        SeriesId::BinftyLength(k) => {
            let f = binfty_triangle(max);
            indexed(max, |n| if k <= n { f[k][n].clone() } else { BigInt::zero() })
        }
        SeriesId::B0Trees => {
            let c = catalan(max);
            indexed(max, |n| c[n - 1].clone())
        }
        SeriesId::B0Forests => words(&raw(SeriesId::B0Trees, max)),
        SeriesId::BiTrees(i) => {
            let g = raw(SeriesId::BinftyTrees, max);
            let b0 = raw(SeriesId::B0Forests, max);
            indexed(max, |k| {
                if k <= i + 1 {
                    g[k].clone()
                } else {
                    let sub: BigInt = (1..k - i).map(|j| &b0[j] * &g[k - j]).sum();
                    &g[k] - sub
                }
            })
        }
        SeriesId::BiForests(i) => words(&raw(SeriesId::BiTrees(i), max)),
        SeriesId::BTrees => schroeder_trees(max),
        SeriesId::BForests => words(&schroeder_trees(max)),
        SeriesId::DDims => {
            let fb = words(&schroeder_trees(max));
            let sq: Vec<BigInt> = (0..=max).map(|n| (0..=n).map(|k| &fb[k] * &fb[n - k]).sum()).collect();
            // q·sq = fb − 1 with sq[0] = 1.
            let mut q = vec![BigInt::zero(); max + 1];
            for n in 1..=max {
                let acc: BigInt = (0..n).map(|k| &q[k] * &sq[n - k]).sum();
                q[n] = &fb[n] - acc;
            }
            q
        }
    }
}

pub fn series_coefficients(id: SeriesId, max: usize) -> Result<CoefficientTable, SeriesError> {
    if max > SERIES_MAX_DEGREE {
        return Err(SeriesError::DegreeTooLarge { id, degree: max, max: SERIES_MAX_DEGREE });
    }
    let mut values = raw(id, max);
    values.remove(0);
    Ok(CoefficientTable { values })
}

/// Largest degree [`verify_against_enumeration`] accepts for a table.
pub fn enumeration_bound(id: SeriesId) -> usize {
    match id {
        SeriesId::DDims => PRIM_TOT_MAX_DEGREE,
        _ => 8,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub degree: usize,
    pub expected: BigInt,
    pub enumerated: BigInt,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.expected == self.enumerated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: SeriesId,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(ReportRow::matches)
    }
}

/// Cardinality of the enumerated family behind a table at one degree.
pub fn enumerated_count(id: SeriesId, n: usize) -> BigInt {
    let len = |v: usize| BigInt::from(v);
    let forests = |sel| generate_set(sel, n, None).expect("degree ≥ 1");
    match id {
        SeriesId::BinftyForests => len(forests(FamilySelector::G).len()),
        SeriesId::BinftyTrees => len(generate_trees(FamilySelector::G, n).expect("degree ≥ 1").len()),
        SeriesId::BinftyLength(k) => len(forests(FamilySelector::G).iter().filter(|f| f.length() == k).count()),
        SeriesId::B0Trees => len(Algebra::B0.generators(n).len()),
        // All-plus forests; they coincide with free words over all-plus trees.
        SeriesId::B0Forests => len(forests(FamilySelector::G0).len()),
        SeriesId::BiTrees(i) => len(Algebra::Bi(i).generators(n).len()),
        SeriesId::BiForests(i) => len(Algebra::Bi(i).basis(n).len()),
        SeriesId::BTrees => len(Algebra::B.generators(n).len()),
        SeriesId::BForests => len(Algebra::B.basis(n).len()),
        SeriesId::DDims => len(prim_tot_dimension(n).expect("within bound")),
    }
}

pub fn verify_against_enumeration(id: SeriesId, max: usize) -> Result<Report, SeriesError> {
    let bound = enumeration_bound(id);
    if max > bound {
        return Err(SeriesError::DegreeTooLarge { id, degree: max, max: bound });
    }
    let table = series_coefficients(id, max)?;
    let rows = table
        .iter()
        .map(|(degree, expected)| ReportRow {
            degree,
            expected: expected.clone(),
            enumerated: enumerated_count(id, degree),
        })
        .collect();
    Ok(Report { id, rows })
}
