//! Seeded random instances for property checks: minimal presentations,
//! monomial ideals and coefficient matrices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::degree::DegreeVector;
use crate::duality::MonomialIdeal;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::koszul;
use crate::linalg::ExactMatrix;
use crate::presentation::Presentation;

/// Size limits for random presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentationLimits {
    pub max_vars: usize,
    pub max_rows: usize,
    pub max_cols: usize,
    pub max_degree: i64,
}

impl Default for PresentationLimits {
    fn default() -> Self {
        PresentationLimits { max_vars: 3, max_rows: 3, max_cols: 6, max_degree: 3 }
    }
}

fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => {
            let v = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            field.from_i64(v)
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
    }
}

fn random_degree(rng: &mut impl Rng, vars: usize, max: i64) -> DegreeVector {
    DegreeVector((0..vars).map(|_| rng.gen_range(0..=max)).collect())
}

/// A presentation satisfying the entrywise invariants (homogeneity, no
/// degree-zero entries, no zero columns). It may still fail to be minimal.
pub fn random_presentation(rng: &mut impl Rng, field: Field, limits: PresentationLimits) -> Presentation {
    let vars = rng.gen_range(1..=limits.max_vars);
    let rows = rng.gen_range(1..=limits.max_rows);
    let cols = rng.gen_range(0..=limits.max_cols);
    let row_degrees: Vec<DegreeVector> =
        (0..rows).map(|_| random_degree(rng, vars, limits.max_degree - 1)).collect();
    let mut col_degrees = Vec::with_capacity(cols);
    let mut coeffs = ExactMatrix::zeros(field, rows, cols);
    for j in 0..cols {
        loop {
            let e = random_degree(rng, vars, limits.max_degree);
            let allowed: Vec<usize> =
                (0..rows).filter(|&t| row_degrees[t].leq(&e) && row_degrees[t] != e).collect();
            if allowed.is_empty() {
                continue;
            }
            let mut any = false;
            for &t in &allowed {
                if rng.gen_bool(0.7) {
                    coeffs.set(t, j, random_scalar(rng, field));
                    any = true;
                }
            }
            if !any {
                let t = allowed[rng.gen_range(0..allowed.len())];
                coeffs.set(t, j, random_scalar(rng, field));
            }
            col_degrees.push(e);
            break;
        }
    }
    Presentation::new(field, vars, row_degrees, col_degrees, coeffs).expect("consistent shapes")
}

/// `count` minimal presentations, cycling through `fields`. Candidates whose
/// computed `beta_1` falls short of the column count are discarded.
pub fn minimal_presentations(seed: u64, count: usize, fields: &[Field], limits: PresentationLimits) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let field = fields[out.len() % fields.len()];
        let p = random_presentation(&mut rng, field, limits);
        match koszul::betti_table(&p) {
            Ok(_) => out.push(p),
            Err(Error::MinimalityBroken { .. }) => continue,
            Err(e) => panic!("unexpected error on random presentation: {e}"),
        }
    }
    out
}

/// A monomial ideal with up to `max_gens` nonzero generators of coordinates
/// at most `max_degree`.
pub fn random_monomial_ideal(rng: &mut impl Rng, vars: usize, max_gens: usize, max_degree: i64) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n)
        .map(|_| loop {
            let g = random_degree(rng, vars, max_degree);
            if g.coords().iter().any(|&c| c > 0) {
                break g;
            }
        })
        .collect();
    MonomialIdeal::new(vars, gens).expect("nonnegative generators")
}

/// Uniformly random matrix over a prime field, or small integers over Q.
pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize, zero_prob: f64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if !rng.gen_bool(zero_prob) {
                m.set(r, c, random_scalar(rng, field));
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_valid() {
        let fields = [Field::Rational, Field::Prime(10007)];
        let a = minimal_presentations(11, 6, &fields, PresentationLimits::default());
        let b = minimal_presentations(11, 6, &fields, PresentationLimits::default());
        assert_eq!(a, b);
        for p in &a {
            assert!(p.validate().is_empty());
            assert!(p.vars() <= 3 && p.rows() <= 3 && p.cols() <= 6);
        }
    }
}
