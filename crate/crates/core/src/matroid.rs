//! Matrix-representable matroids, their formal duals, and the flat / T-flat
//! enumeration used by the counting bound.
//!
//! A T-flat of `M` is a set whose complement is a proper flat of the dual
//! matroid; its level is `|A| - r(A) - 1`. Level-0 T-flats are exactly the
//! circuits.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::ExactMatrix;
use crate::subset::{sort_canonical, SubsetMask, MASK_BITS};

/// Largest ground set accepted by the exhaustive enumerations.
pub const ENUMERATION_CAP: usize = 20;

#[derive(Clone, Debug)]
enum Backing {
    Matrix(ExactMatrix),
    Dual(Box<Matroid>),
}

/// A matroid on `{0..n}` given by a rank oracle.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    backing: Backing,
    full_rank: usize,
}

impl Matroid {
    /// Column matroid of `m`: a set of columns is independent iff the
    /// columns are linearly independent. Zero columns are loops.
    pub fn from_matrix(m: &ExactMatrix) -> Matroid {
        assert!(m.cols() <= MASK_BITS, "at most {MASK_BITS} columns");
        Matroid { n: m.cols(), full_rank: m.rank(), backing: Backing::Matrix(m.clone()) }
    }

    /// `U_{r,n}` as the column matroid of an `r x n` Vandermonde matrix with
    /// nodes `0..n` (the zero matrix when `r = 0`).
    pub fn uniform(r: usize, n: usize, field: Field) -> Result<Matroid> {
        if r > n {
            return Err(Error::BadSpec(format!("uniform matroid needs r <= n, got r={r}, n={n}")));
        }
        if let Field::Prime(p) = field {
            if r > 1 && (n as u64) > p {
                return Err(Error::FieldTooSmall { field: field.to_string(), nodes: n });
            }
        }
        Ok(Matroid::from_matrix(&vandermonde(field, r, n)))
    }

    /// Formal dual: `r*(A) = |A| - r(S) + r(S \ A)`. No representation of
    /// the dual is computed.
    pub fn dual(&self) -> Matroid {
        Matroid {
            n: self.n,
            full_rank: self.n - self.full_rank,
            backing: Backing::Dual(Box::new(self.clone())),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    /// The representing matrix, absent for formal duals.
    pub fn matrix(&self) -> Option<&ExactMatrix> {
        match &self.backing {
            Backing::Matrix(m) => Some(m),
            Backing::Dual(_) => None,
        }
    }

    fn check(&self, a: SubsetMask) -> Result<()> {
        if a.bound() > self.n {
            return Err(Error::IndexOutOfRange { index: a.bound() - 1, n: self.n });
        }
        Ok(())
    }

    pub fn rank_of(&self, a: SubsetMask) -> Result<usize> {
        self.check(a)?;
        Ok(self.rank_unchecked(a))
    }

    fn rank_unchecked(&self, a: SubsetMask) -> usize {
        match &self.backing {
            Backing::Matrix(m) => {
                if a.is_empty() {
                    0
                } else {
                    m.select_columns(&a.indices()).rank()
                }
            }
            Backing::Dual(primal) => {
                a.len() + primal.rank_unchecked(a.complement(self.n)) - primal.full_rank
            }
        }
    }

    pub fn is_independent(&self, a: SubsetMask) -> Result<bool> {
        Ok(self.rank_of(a)? == a.len())
    }

    /// `|A| - r(A) - 1`.
    pub fn level(&self, a: SubsetMask) -> Result<i64> {
        Ok(a.len() as i64 - self.rank_of(a)? as i64 - 1)
    }

    /// True iff adding any element outside `f` raises the rank.
    pub fn is_flat(&self, f: SubsetMask) -> Result<bool> {
        let r = self.rank_of(f)?;
        Ok((0..self.n)
            .filter(|&x| !f.contains(x))
            .all(|x| self.rank_unchecked(f.insert(x)) == r + 1))
    }

    /// True iff `S \ A` is a proper flat of the dual matroid.
    pub fn is_tflat(&self, a: SubsetMask) -> Result<bool> {
        self.check(a)?;
        let complement = a.complement(self.n);
        if complement == self.ground_set() {
            return Ok(false);
        }
        self.dual().is_flat(complement)
    }

    /// Ranks of all `2^n` subsets, indexed by mask.
    pub fn rank_table(&self) -> Result<RankTable> {
        if self.n > ENUMERATION_CAP {
            return Err(Error::GroundSetTooLarge { n: self.n, max: ENUMERATION_CAP });
        }
        let ranks = match &self.backing {
            Backing::Dual(primal) => {
                let t = primal.rank_table()?;
                let full = SubsetMask::full(self.n);
                (0..1u64 << self.n)
                    .map(|a| {
                        let a = SubsetMask(a);
                        (a.len() + t.rank(a.complement(self.n)) - t.rank(full)) as u8
                    })
                    .collect()
            }
            Backing::Matrix(_) => (0..1u64 << self.n)
                .into_par_iter()
                .map(|a| self.rank_unchecked(SubsetMask(a)) as u8)
                .collect(),
        };
        Ok(RankTable { n: self.n, ranks })
    }

    /// All inclusion-minimal dependent sets, canonically sorted.
    pub fn circuits(&self) -> Result<Vec<SubsetMask>> {
        Ok(self.rank_table()?.circuits())
    }

    /// All flats of rank exactly `rho`, canonically sorted.
    pub fn flats_of_rank(&self, rho: usize) -> Result<Vec<SubsetMask>> {
        Ok(self.rank_table()?.flats_of_rank(rho))
    }

    /// All T-flats of level `k`, canonically sorted.
    pub fn tflats_of_level(&self, k: usize) -> Result<Vec<SubsetMask>> {
        let primal = self.rank_table()?;
        let dual = primal.dual();
        let n = self.n;
        let mut out: Vec<SubsetMask> = (0..1u64 << n)
            .map(SubsetMask)
            .filter(|a| !a.is_empty() && a.len() > k)
            .filter(|&a| a.len() == k + 1 + primal.rank(a))
            .filter(|&a| dual.is_flat(a.complement(n)))
            .collect();
        sort_canonical(&mut out);
        Ok(out)
    }
}

/// Precomputed ranks of every subset of a small ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self, a: SubsetMask) -> usize {
        self.ranks[a.0 as usize] as usize
    }

    pub fn full_rank(&self) -> usize {
        self.rank(SubsetMask::full(self.n))
    }

    pub fn dual(&self) -> RankTable {
        let r = self.full_rank();
        let ranks = (0..1u64 << self.n)
            .map(|a| {
                let a = SubsetMask(a);
                (a.len() + self.rank(a.complement(self.n)) - r) as u8
            })
            .collect();
        RankTable { n: self.n, ranks }
    }

    pub fn is_flat(&self, f: SubsetMask) -> bool {
        let r = self.rank(f);
        (0..self.n).filter(|&x| !f.contains(x)).all(|x| self.rank(f.insert(x)) == r + 1)
    }

    pub fn circuits(&self) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = (1..1u64 << self.n)
            .map(SubsetMask)
            .filter(|&a| self.rank(a) + 1 == a.len())
            .filter(|&a| a.indices().into_iter().all(|x| self.rank(a.remove(x)) + 1 == a.len()))
            .collect();
        sort_canonical(&mut out);
        out
    }

    pub fn flats_of_rank(&self, rho: usize) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = (0..1u64 << self.n)
            .map(SubsetMask)
            .filter(|a| a.len() >= rho)
            .filter(|&a| self.rank(a) == rho && self.is_flat(a))
            .collect();
        sort_canonical(&mut out);
        out
    }
}

/// `r x n` matrix with columns `(1, t, .., t^{r-1})` at nodes `t = 0..n`.
pub fn vandermonde(field: Field, r: usize, n: usize) -> ExactMatrix {
    let nodes: Vec<_> = (0..n as i64).map(|t| field.from_i64(t)).collect();
    vandermonde_at(field, r, &nodes)
}

pub fn vandermonde_at(field: Field, r: usize, nodes: &[crate::field::Scalar]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, r, nodes.len());
    for (j, t) in nodes.iter().enumerate() {
        let mut power = field.one();
        for i in 0..r {
            m.set(i, j, power.clone());
            power = field.mul(&power, t);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn set(idx: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(idx.iter().copied())
    }

    fn u24() -> Matroid {
        Matroid::from_matrix(&ExactMatrix::from_i64(Q, &[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]))
    }

    fn u13() -> Matroid {
        Matroid::from_matrix(&ExactMatrix::from_i64(Q, &[vec![1, 1, 1]]))
    }

    fn free(n: usize) -> Matroid {
        Matroid::from_matrix(&ExactMatrix::identity(Q, n))
    }

    #[test]
    fn from_matrix_examples() {
        let f = free(2);
        assert_eq!(f.full_rank(), 2);
        assert!(f.circuits().unwrap().is_empty());
        assert_eq!(u13().full_rank(), 1);
        let u = u24();
        for pair in crate::subset::subsets_of_size(4, 2) {
            assert!(u.is_independent(pair).unwrap());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(u24().rank_of(SubsetMask::EMPTY).unwrap(), 0);
        assert_eq!(u24().rank_of(set(&[0, 1, 2])).unwrap(), 2);
        assert_eq!(free(3).rank_of(SubsetMask::full(3)).unwrap(), 3);
        assert!(matches!(
            free(3).rank_of(set(&[3])),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn zero_columns_are_loops() {
        let m = Matroid::from_matrix(&ExactMatrix::from_i64(Q, &[vec![1, 0, 1]]));
        assert_eq!(m.rank_of(set(&[1])).unwrap(), 0);
        assert_eq!(m.circuits().unwrap(), vec![set(&[1]), set(&[0, 2])]);
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(u13().circuits().unwrap(), vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(
            u24().circuits().unwrap(),
            vec![set(&[0, 1, 2]), set(&[0, 1, 3]), set(&[0, 2, 3]), set(&[1, 2, 3])]
        );
    }

    #[test]
    fn dual_examples() {
        let d = u24().dual();
        assert_eq!(d.full_rank(), 2);
        for pair in crate::subset::subsets_of_size(4, 2) {
            assert!(d.is_independent(pair).unwrap());
        }
        assert_eq!(free(2).dual().full_rank(), 0);
        assert_eq!(u13().dual().full_rank(), 2);
        assert!(d.matrix().is_none());
    }

    #[test]
    fn level_examples() {
        assert_eq!(u24().level(set(&[0, 1])).unwrap(), -1);
        assert_eq!(u24().level(set(&[0, 1, 2])).unwrap(), 0);
        assert_eq!(u24().level(SubsetMask::full(4)).unwrap(), 1);
    }

    #[test]
    fn flat_examples() {
        let u = u24();
        assert!(u.is_flat(SubsetMask::full(4)).unwrap());
        assert!(u.is_flat(set(&[0])).unwrap());
        assert!(!u.is_flat(set(&[0, 1])).unwrap());
        assert_eq!(u.flats_of_rank(0).unwrap(), vec![SubsetMask::EMPTY]);
        assert_eq!(u.flats_of_rank(1).unwrap(), vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(free(2).flats_of_rank(1).unwrap(), vec![set(&[0]), set(&[1])]);
        assert!(u.flats_of_rank(5).unwrap().is_empty());
    }

    #[test]
    fn tflat_examples() {
        let u = u24();
        assert!(u.is_tflat(set(&[0, 1, 2])).unwrap());
        assert!(u.is_tflat(SubsetMask::full(4)).unwrap());
        assert!(!free(2).is_tflat(set(&[0])).unwrap());
        assert!(!u.is_tflat(SubsetMask::EMPTY).unwrap());
        assert_eq!(u.tflats_of_level(0).unwrap(), u.circuits().unwrap());
        assert_eq!(u13().tflats_of_level(1).unwrap(), vec![SubsetMask::full(3)]);
        for k in 0..4 {
            assert!(free(3).tflats_of_level(k).unwrap().is_empty());
        }
    }

    #[test]
    fn enumeration_cap() {
        let big = Matroid::from_matrix(&ExactMatrix::zeros(Q, 1, 21));
        assert!(matches!(big.circuits(), Err(Error::GroundSetTooLarge { n: 21, max: 20 })));
        assert_eq!(big.rank_of(set(&[20])).unwrap(), 0);
    }

    #[test]
    fn uniform_constructor() {
        let u = Matroid::uniform(2, 4, Field::Prime(10007)).unwrap();
        assert_eq!(u.circuits().unwrap(), u24().circuits().unwrap());
        assert_eq!(Matroid::uniform(0, 3, Q).unwrap().full_rank(), 0);
        assert!(Matroid::uniform(2, 6, Field::Prime(5)).is_err());
    }
}
