use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::subset::SubsetMask;

/// A point of Z^m. Comparison via [`DegreeVector::leq`] is componentwise
/// (partial); the derived `Ord` is lexicographic and only used for sorting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn zeros(m: usize) -> Self {
        DegreeVector(vec![0; m])
    }

    pub fn unit(m: usize, j: usize) -> Self {
        let mut v = vec![0; m];
        v[j] = 1;
        DegreeVector(v)
    }

    pub fn ones(m: usize) -> Self {
        DegreeVector(vec![1; m])
    }

    /// Sum of the unit vectors indexed by `mask`.
    pub fn indicator(m: usize, mask: SubsetMask) -> Self {
        DegreeVector((0..m).map(|j| mask.contains(j) as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &DegreeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn with(&self, j: usize, value: i64) -> DegreeVector {
        let mut v = self.clone();
        v.0[j] = value;
        v
    }

    pub fn plus_unit(&self, j: usize) -> DegreeVector {
        let mut v = self.clone();
        v.0[j] += 1;
        v
    }

    /// `"1,0,2"`, the key format used in JSON tables.
    pub fn key(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses `"1,0,2"` (whitespace and surrounding parentheses tolerated).
    pub fn parse(text: &str) -> Result<DegreeVector, ParseError> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(DegreeVector(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(DegreeVector)
            .map_err(|_| ParseError::Degree(text.to_string()))
    }
}

impl From<Vec<i64>> for DegreeVector {
    fn from(v: Vec<i64>) -> Self {
        DegreeVector(v)
    }
}

impl From<&[i64]> for DegreeVector {
    fn from(v: &[i64]) -> Self {
        DegreeVector(v.to_vec())
    }
}

impl Index<usize> for DegreeVector {
    type Output = i64;

    fn index(&self, j: usize) -> &i64 {
        &self.0[j]
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;

    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.len(), rhs.len(), "degree length mismatch");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeVector {
    type Output = DegreeVector;

    fn sub(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.len(), rhs.len(), "degree length mismatch");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every integer point of the box `[lo, hi]`, in lexicographic order.
pub fn box_points(lo: &DegreeVector, hi: &DegreeVector) -> Vec<DegreeVector> {
    assert_eq!(lo.len(), hi.len());
    if lo.0.iter().zip(&hi.0).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = vec![lo.clone()];
    for j in 0..lo.len() {
        out = out
            .into_iter()
            .flat_map(|p| (lo[j]..=hi[j]).map(move |c| p.with(j, c)))
            .collect();
    }
    out
}

/// Number of points in `[lo, hi]`.
pub fn box_size(lo: &DegreeVector, hi: &DegreeVector) -> u128 {
    lo.0.iter()
        .zip(&hi.0)
        .map(|(l, h)| if h < l { 0 } else { (h - l + 1) as u128 })
        .product()
}
