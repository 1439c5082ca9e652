//! Alexander duality of monomial ideals inside the box `[0, a]`, and a
//! degreewise probe of the correspondence between Betti numbers of a
//! candidate dual module and Bass numbers of the original.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::degree::{box_points, box_size, DegreeVector};
use crate::error::{Error, Result};
use crate::koszul::{self, MAX_BOX};
use crate::presentation::{minimalize, Presentation};
use crate::subset::SubsetMask;

/// A monomial ideal given by a divisibility-minimal, lex-sorted list of
/// exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub vars: usize,
    pub gens: Vec<DegreeVector>,
}

impl MonomialIdeal {
    pub fn new(vars: usize, gens: Vec<DegreeVector>) -> Result<MonomialIdeal> {
        for g in &gens {
            if g.len() != vars {
                return Err(Error::DegreeLength(g.clone()));
            }
            if !g.is_nonnegative() {
                return Err(Error::NegativeDegrees(g.clone()));
            }
        }
        let mut gens = minimalize(&gens);
        gens.sort();
        Ok(MonomialIdeal { vars, gens })
    }

    pub fn zero(vars: usize) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    /// The whole ring.
    pub fn unit(vars: usize) -> Self {
        MonomialIdeal { vars, gens: vec![DegreeVector::zeros(vars)] }
    }

    /// Whether `x^b` lies in the ideal.
    pub fn contains(&self, b: &DegreeVector) -> bool {
        self.gens.iter().any(|g| g.leq(b))
    }

    /// Pairwise lcms, minimalized.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let lcms: Vec<DegreeVector> =
            self.gens.iter().flat_map(|g| other.gens.iter().map(move |h| g.join(h))).collect();
        MonomialIdeal::new(self.vars, lcms).expect("lcms of valid generators")
    }

    /// The ideal `(x_j^{e_j} : j in supp)`.
    fn irreducible(vars: usize, exponents: &[(usize, i64)]) -> MonomialIdeal {
        let gens = exponents
            .iter()
            .map(|&(j, e)| DegreeVector::zeros(vars).with(j, e))
            .collect();
        MonomialIdeal::new(vars, gens).expect("nonnegative exponents")
    }

    pub fn to_presentation(&self, field: crate::field::Field) -> Result<Presentation> {
        Presentation::from_monomial_ideal(field, self.vars, &self.gens)
    }
}

/// `{j : b_j >= 1}`.
pub fn support(b: &DegreeVector) -> SubsetMask {
    SubsetMask::from_indices((0..b.len()).filter(|&j| b[j] >= 1))
}

/// `(a \ b)_j = a_j + 1 - b_j` where `b_j >= 1`, else 0. Requires
/// `0 <= b <= a * supp(b)`.
pub fn complement_degree(a: &DegreeVector, b: &DegreeVector) -> Result<DegreeVector> {
    if a.len() != b.len() {
        return Err(Error::DegreeLength(b.clone()));
    }
    let violated = (0..b.len()).any(|j| b[j] < 0 || (b[j] >= 1 && b[j] > a[j]));
    if violated {
        return Err(Error::ConstraintViolated { a: a.clone(), b: b.clone() });
    }
    Ok(DegreeVector((0..b.len()).map(|j| if b[j] >= 1 { a[j] + 1 - b[j] } else { 0 }).collect()))
}

fn check_generators(i: &MonomialIdeal, a: &DegreeVector) -> Result<()> {
    if a.len() != i.vars {
        return Err(Error::DegreeLength(a.clone()));
    }
    if let Some(g) = i.gens.iter().find(|g| !g.leq(a)) {
        return Err(Error::GeneratorExceedsA { gen: g.clone(), a: a.clone() });
    }
    let size = box_size(&DegreeVector::zeros(i.vars), a);
    if size > MAX_BOX {
        return Err(Error::BoxTooLarge { size, max: MAX_BOX });
    }
    Ok(())
}

/// Alexander dual with respect to `a`: for `0 <= b <= a`, `x^b` is in the
/// dual iff `x^(a-b)` is not in `I`.
pub fn alexander_dual(i: &MonomialIdeal, a: &DegreeVector) -> Result<MonomialIdeal> {
    check_generators(i, a)?;
    let members: Vec<DegreeVector> = box_points(&DegreeVector::zeros(i.vars), a)
        .into_iter()
        .filter(|b| !i.contains(&(a - b)))
        .collect();
    MonomialIdeal::new(i.vars, members)
}

/// The same dual as the intersection over generators `b` of the irreducible
/// ideals `(x_j^{(a\b)_j} : j in supp(b))`.
pub fn alexander_dual_by_intersection(i: &MonomialIdeal, a: &DegreeVector) -> Result<MonomialIdeal> {
    check_generators(i, a)?;
    let mut acc = MonomialIdeal::unit(i.vars);
    for b in &i.gens {
        let c = complement_degree(a, b)?;
        let exps: Vec<(usize, i64)> = support(b).indices().into_iter().map(|j| (j, c[j])).collect();
        acc = acc.intersect(&MonomialIdeal::irreducible(i.vars, &exps));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeMismatch {
    pub i: usize,
    #[serde(serialize_with = "key")]
    pub b: DegreeVector,
    pub betti: u64,
    #[serde(serialize_with = "key")]
    pub bass_degree: DegreeVector,
    pub prime: SubsetMask,
    pub bass: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    #[serde(serialize_with = "key")]
    pub a: DegreeVector,
    pub compared: usize,
    pub matches: usize,
    pub mismatches: Vec<ProbeMismatch>,
    pub degreewise_pass: bool,
    /// `*mu_i(L)` over all primes.
    pub total_bass: Vec<u64>,
    /// `beta_i` of the candidate.
    pub candidate_betti: Vec<u64>,
    pub totals_equal: bool,
    pub pass: bool,
}

fn key<S: serde::Serializer>(d: &DegreeVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.key())
}

/// Compares `beta_{i,b}(Q)` with `mu_{i,(a\b)-supp(b)}(p_{supp(b)}, L)` for
/// every `i` and every `0 <= b <= a`, where `L = coker(P)` and `Q` is a
/// candidate presentation of the Alexander dual of `L` with respect to `a`.
pub fn miller_relation_probe(p: &Presentation, q: &Presentation, a: &DegreeVector) -> Result<ProbeReport> {
    p.ensure_valid()?;
    q.ensure_valid()?;
    if a.len() != p.vars() || q.vars() != p.vars() {
        return Err(Error::DegreeLength(a.clone()));
    }
    if !a.is_nonnegative() {
        return Err(Error::NegativeDegrees(a.clone()));
    }
    let zero = DegreeVector::zeros(p.vars());
    let betti = koszul::betti_in_box(q, &zero, a)?;
    let mut cache: BTreeMap<(SubsetMask, DegreeVector), Vec<u64>> = BTreeMap::new();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for b in box_points(&zero, a) {
        let prime = support(&b);
        let bass_degree = &complement_degree(a, &b)? - &DegreeVector::indicator(p.vars(), prime);
        let bass = match cache.get(&(prime, bass_degree.clone())) {
            Some(v) => v.clone(),
            None => {
                let v = koszul::bass_at_degree(p, prime, &bass_degree)?;
                cache.insert((prime, bass_degree.clone()), v.clone());
                v
            }
        };
        for (i, &mu) in bass.iter().enumerate() {
            compared += 1;
            let beta = betti.get(i, &b);
            if beta != mu {
                mismatches.push(ProbeMismatch {
                    i,
                    b: b.clone(),
                    betti: beta,
                    bass_degree: bass_degree.clone(),
                    prime,
                    bass: mu,
                });
            }
        }
    }
    let total_bass = koszul::total_bass(p)?;
    let mut candidate_betti = koszul::betti_in_box(q, &zero, &q.determining_degree()?.join(a))?.totals();
    candidate_betti.resize(total_bass.len(), 0);
    let totals_equal = total_bass == candidate_betti;
    let degreewise_pass = mismatches.is_empty();
    Ok(ProbeReport {
        a: a.clone(),
        compared,
        matches: compared - mismatches.len(),
        mismatches,
        degreewise_pass,
        total_bass,
        candidate_betti,
        totals_equal,
        pass: degreewise_pass && totals_equal,
    })
}
