//! Presentations of uniform rank with generic relation degrees, whose
//! minimal resolutions have exactly the Buchsbaum-Rim-Taylor ranks.
//!
//! Column `j` carries the Vandermonde coefficients `(1, t_j, .., t_j^{r-1})`,
//! so every `r` columns are independent, and sits in degree
//! `(1, .., 1) + K * u_j` in `n` variables. Joins of column degrees then
//! determine the column set, so distinct T-flats get distinct multidegrees.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{sharpness_report, VerificationReport};
use crate::degree::DegreeVector;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matroid::vandermonde_at;
use crate::presentation::Presentation;
use crate::subset::subsets_of_size;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenexSpec {
    pub rank: usize,
    pub cols: usize,
    pub field: Field,
    pub spike: i64,
    /// When set, Vandermonde nodes are distinct field elements drawn from
    /// this seed instead of `0..n`.
    pub seed: Option<u64>,
}

impl GenexSpec {
    pub fn new(rank: usize, cols: usize) -> Self {
        GenexSpec { rank, cols, field: Field::Rational, spike: 1, seed: None }
    }

    pub fn over(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn with_spike(mut self, spike: i64) -> Self {
        self.spike = spike;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn nodes(&self) -> Vec<Scalar> {
        let f = self.field;
        match self.seed {
            None => (0..self.cols as i64).map(|t| f.from_i64(t)).collect(),
            Some(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                match f {
                    Field::Prime(p) => sample(&mut rng, p as usize, self.cols)
                        .into_iter()
                        .map(|t| f.from_i64(t as i64))
                        .collect(),
                    // Distinct integers in [-1000, 1000].
                    Field::Rational => sample(&mut rng, 2001, self.cols)
                        .into_iter()
                        .map(|t| f.from_i64(t as i64 - 1000))
                        .collect(),
                }
            }
        }
    }
}

/// Builds the `rank x cols` presentation in `cols` variables.
pub fn generic_presentation(spec: &GenexSpec) -> Result<Presentation> {
    let (r, n) = (spec.rank, spec.cols);
    if r < 1 || r > n {
        return Err(Error::BadSpec(format!("need 1 <= rank <= cols, got rank={r}, cols={n}")));
    }
    if spec.spike < 1 {
        return Err(Error::BadSpec(format!("spike must be positive, got {}", spec.spike)));
    }
    if let Field::Prime(p) = spec.field {
        if p <= n as u64 {
            return Err(Error::FieldTooSmall { field: spec.field.to_string(), nodes: n });
        }
    }
    let coeffs = vandermonde_at(spec.field, r, &spec.nodes());
    let cols = (0..n)
        .map(|j| {
            let mut e = DegreeVector::ones(n);
            e.0[j] += spec.spike;
            e
        })
        .collect();
    Presentation::new(spec.field, n, vec![DegreeVector::zeros(n); r], cols, coeffs)
}

/// Checks that the coefficient matroid is uniform of rank `r` and that the
/// computed Betti numbers equal `brt_rank(n, r, i)` for every `i >= 2`.
pub fn verify_sharpness(p: &Presentation) -> Result<VerificationReport> {
    let matroid = p.coefficient_matroid()?;
    let r = matroid.full_rank();
    for cols in subsets_of_size(p.cols(), r) {
        if !matroid.is_independent(cols)? {
            return Err(Error::NotUniform(cols.indices()));
        }
    }
    sharpness_report(p, r as u64)
}
