//! Generalized Cartan matrices and their Coxeter labels.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcmError {
    #[error("cartan matrix must be square and non-empty (got {rows} rows)")]
    Shape { rows: usize },
    #[error("declared rank {declared} does not match matrix size {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error("diagonal entry a[{0}][{0}] must be 2")]
    Diagonal(usize),
    #[error("off-diagonal entry a[{i}][{j}] = {value} must be <= 0")]
    Positive { i: usize, j: usize, value: i64 },
    #[error("zero pattern not symmetric at ({i}, {j})")]
    ZeroPattern { i: usize, j: usize },
    #[error("unknown cartan type {0:?}")]
    UnknownType(String),
}

/// Label of an edge in a Coxeter diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterLabel {
    Finite(u32),
    Infinite,
}

impl CoxeterLabel {
    pub fn is_finite(self) -> bool {
        matches!(self, CoxeterLabel::Finite(_))
    }

    pub fn value(self) -> Option<u32> {
        match self {
            CoxeterLabel::Finite(m) => Some(m),
            CoxeterLabel::Infinite => None,
        }
    }

    /// Crystallographic table: product a_ij * a_ji mapped to m_ij.
    pub fn from_cartan_product(product: i64) -> CoxeterLabel {
        match product {
            0 => CoxeterLabel::Finite(2),
            1 => CoxeterLabel::Finite(3),
            2 => CoxeterLabel::Finite(4),
            3 => CoxeterLabel::Finite(6),
            _ => CoxeterLabel::Infinite,
        }
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterLabel::Finite(m) => write!(f, "{m}"),
            CoxeterLabel::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for CoxeterLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CoxeterLabel::Finite(m) => s.serialize_u32(*m),
            CoxeterLabel::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A generalized Cartan matrix `a`, stored row-major.
///
/// Convention: `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`, so that
/// `h_i(c_j) = a[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gcm {
    rank: usize,
    entries: Vec<i64>,
}

/// JSON form `{"rank": n, "cartan": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GcmDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub cartan: Vec<Vec<i64>>,
}

impl Gcm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Gcm, GcmError> {
        let rank = rows.len();
        if rank == 0 || rows.iter().any(|r| r.len() != rank) {
            return Err(GcmError::Shape { rows: rank });
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let gcm = Gcm { rank, entries };
        gcm.validate()?;
        Ok(gcm)
    }

    fn validate(&self) -> Result<(), GcmError> {
        for i in 0..self.rank {
            if self.entry(i, i) != 2 {
                return Err(GcmError::Diagonal(i));
            }
            for j in 0..self.rank {
                if i == j {
                    continue;
                }
                let value = self.entry(i, j);
                if value > 0 {
                    return Err(GcmError::Positive { i, j, value });
                }
                if (value == 0) != (self.entry(j, i) == 0) {
                    return Err(GcmError::ZeroPattern { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn from_document(doc: &GcmDocument) -> Result<Gcm, GcmError> {
        let gcm = Gcm::new(doc.cartan.clone())?;
        if let Some(declared) = doc.rank {
            if declared != gcm.rank {
                return Err(GcmError::RankMismatch {
                    declared,
                    actual: gcm.rank,
                });
            }
        }
        Ok(gcm)
    }

    pub fn to_document(&self) -> GcmDocument {
        GcmDocument {
            rank: Some(self.rank),
            cartan: self.rows(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn coxeter_label(&self, i: usize, j: usize) -> CoxeterLabel {
        if i == j {
            return CoxeterLabel::Finite(1);
        }
        CoxeterLabel::from_cartan_product(self.entry(i, j) * self.entry(j, i))
    }

    /// Principal submatrix on the given index list.
    pub fn restrict(&self, indices: &[usize]) -> Gcm {
        let rows = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        Gcm::new(rows).expect("principal submatrix of a GCM is a GCM")
    }

    /// Type A_n (n >= 1).
    pub fn type_a(n: usize) -> Gcm {
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            rows[i][i] = 2;
            if i + 1 < n {
                rows[i][i + 1] = -1;
                rows[i + 1][i] = -1;
            }
        }
        Gcm::new(rows).expect("type A is a GCM")
    }

    /// Named Cartan types: `A<n>`, `B<n>`, `C<n>`, `D<n>`, `E6`..`E8`,
    /// `F4`, `G2`, and `A1~` (affine A_1).
    pub fn named(name: &str) -> Result<Gcm, GcmError> {
        let unknown = || GcmError::UnknownType(name.to_string());
        let trimmed = name.trim();
        if trimmed.eq_ignore_ascii_case("A1~") || trimmed.eq_ignore_ascii_case("A1t") {
            return Gcm::new(vec![vec![2, -2], vec![-2, 2]]);
        }
        let (letter, digits) = trimmed.split_at(1.min(trimmed.len()));
        let n: usize = digits.parse().map_err(|_| unknown())?;
        let letter = letter.to_ascii_uppercase();
        let mut rows = Gcm::type_a(n.max(1)).rows();
        match (letter.as_str(), n) {
            ("A", n) if n >= 1 => {}
            ("B", n) if n >= 2 => {
                // long roots 1..n-1, short root n
                rows[n - 1][n - 2] = -2;
            }
            ("C", n) if n >= 2 => {
                rows[n - 2][n - 1] = -2;
            }
            ("D", n) if n >= 4 => {
                rows[n - 2][n - 1] = 0;
                rows[n - 1][n - 2] = 0;
                rows[n - 3][n - 1] = -1;
                rows[n - 1][n - 3] = -1;
            }
            ("E", n) if (6..=8).contains(&n) => {
                // Bourbaki labelling: 1-3-4-5-..., 2 attached to 4
                rows = vec![vec![0; n]; n];
                let edges = [(0, 2), (2, 3), (3, 4), (1, 3), (4, 5), (5, 6), (6, 7)];
                for i in 0..n {
                    rows[i][i] = 2;
                }
                for &(a, b) in edges.iter().filter(|(a, b)| *a < n && *b < n) {
                    rows[a][b] = -1;
                    rows[b][a] = -1;
                }
            }
            ("F", 4) => {
                rows[2][1] = -2;
            }
            ("G", 2) => {
                rows[1][0] = -3;
            }
            _ => return Err(unknown()),
        }
        Gcm::new(rows)
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
