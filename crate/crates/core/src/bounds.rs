//! Closed-form upper bounds for Betti and Bass numbers and the harness that
//! compares them with computed invariants.
//!
//! For a module with `beta_0` generators, `beta_1` relations and rank `rho`,
//! write `r = beta_0 - rho` for the rank of the presentation matrix. Then for
//! `i >= 2`
//!
//! ```text
//! beta_i <= C(beta_1, r + i - 1) * C(r + i - 3, i - 2)
//! ```
//!
//! which is the number of T-flats of level `i - 2` allowed by the counting
//! bound times the dimension of the `(i-2)`-th symmetric power of an
//! `r`-dimensional space. The same expression with `rho = 0` bounds the
//! total multigraded Bass numbers in terms of `mu_0` and `mu_1`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::koszul::{self, PrimeSelection};
use crate::presentation::Presentation;

/// `C(a, b)`, zero unless `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for k in 0..b {
        acc *= BigUint::from((a - k) as u64);
        acc /= BigUint::from((k + 1) as u64);
    }
    acc
}

/// Dimension of the `k`-th symmetric power of an `r`-dimensional space,
/// `C(r + k - 1, k)`, under the same vanishing convention (so `(0, 0)` is 0).
pub fn symmetric_power_dim(r: u64, k: u64) -> BigUint {
    binomial(r as i64 + k as i64 - 1, k as i64)
}

fn check_index(i: u64, min: u64) -> Result<()> {
    if i < min {
        Err(Error::IndexTooSmall { i: i as usize, min: min as usize })
    } else {
        Ok(())
    }
}

/// `C(beta1, beta0 - rank + i - 1) * C(beta0 - rank + i - 3, i - 2)` for `i >= 2`.
pub fn betti_bound(beta0: u64, beta1: u64, rank: u64, i: u64) -> Result<BigUint> {
    check_index(i, 2)?;
    if rank > beta0 {
        return Err(Error::BadSpec(format!("rank {rank} exceeds beta_0 = {beta0}")));
    }
    let r = (beta0 - rank) as i64;
    let i = i as i64;
    Ok(binomial(beta1 as i64, r + i - 1) * binomial(r + i - 3, i - 2))
}

/// Rank of the `i`-th module of the Buchsbaum-Rim-Taylor complex of an
/// `r x n` matrix of uniform rank `r`.
pub fn brt_rank(n: u64, r: u64, i: u64) -> Result<BigUint> {
    check_index(i, 2)?;
    if r > n {
        return Err(Error::BadSpec(format!("rank {r} exceeds column count {n}")));
    }
    let (n, r, i) = (n as i64, r as i64, i as i64);
    Ok(binomial(n, r + i - 1) * binomial(r + i - 3, i - 2))
}

/// Bound on `mu_i` at a prime whose multigraded core sits `d` below it:
/// the Betti bound with a rank-zero profile, evaluated at `i - d`.
pub fn bass_bound(mu0: u64, mu1: u64, i: u64, d: u64) -> Result<BigUint> {
    check_index(i, 2 + d)?;
    betti_bound(mu0, mu1, 0, i - d)
}

/// Inputs to the Betti bound and the derived quantities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundProfile {
    pub beta0: u64,
    pub beta1: u64,
    pub rank: u64,
    /// Rank of the presentation matrix, `beta0 - rank`.
    pub matrix_rank: u64,
    /// Length of the T-flat resolution, `beta1 - matrix_rank + 1`.
    pub lambda: i64,
}

impl BoundProfile {
    pub fn new(beta0: u64, beta1: u64, rank: u64) -> Result<BoundProfile> {
        if rank > beta0 {
            return Err(Error::BadSpec(format!("rank {rank} exceeds beta_0 = {beta0}")));
        }
        let matrix_rank = beta0 - rank;
        Ok(BoundProfile { beta0, beta1, rank, matrix_rank, lambda: beta1 as i64 - matrix_rank as i64 + 1 })
    }

    pub fn bound(&self, i: u64) -> Result<BigUint> {
        betti_bound(self.beta0, self.beta1, self.rank, i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    Betti,
    Bass,
    Sharpness,
}

/// Comparison at one homological index `i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexCheck {
    pub i: usize,
    pub computed: u64,
    #[serde(serialize_with = "big_as_number")]
    pub bound: BigUint,
    #[serde(serialize_with = "big_as_number")]
    pub slack: BigInt,
    pub pass: bool,
    pub equal: bool,
}

impl IndexCheck {
    fn at_most(i: usize, computed: u64, bound: BigUint) -> IndexCheck {
        let slack = BigInt::from(bound.clone()) - BigInt::from(computed);
        let equal = slack.is_zero();
        IndexCheck { i, computed, bound, pass: slack >= BigInt::zero(), slack, equal }
    }

    fn exactly(i: usize, computed: u64, bound: BigUint) -> IndexCheck {
        let mut c = IndexCheck::at_most(i, computed, bound);
        c.pass = c.equal;
        c
    }
}

/// Direct check of `beta_0`/`beta_1` (or `mu_0`/`mu_1`) against the sizes
/// they are expected to match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeCheck {
    pub i: usize,
    pub computed: u64,
    pub expected: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub field: String,
    pub vars: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Provenance {
    pub fn of(p: &Presentation) -> Provenance {
        let field = match p.field() {
            Field::Rational => "q".to_string(),
            Field::Prime(q) => format!("fp:{q}"),
        };
        Provenance { field, vars: p.vars(), rows: p.rows(), cols: p.cols() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub kind: ReportKind,
    pub inputs: Provenance,
    pub profile: BoundProfile,
    /// Computed totals indexed by homological degree.
    pub totals: Vec<u64>,
    pub size_checks: Vec<SizeCheck>,
    pub checks: Vec<IndexCheck>,
    pub pass: bool,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.pass = self.size_checks.iter().all(|c| c.pass) && self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn check(&self, i: usize) -> Option<&IndexCheck> {
        self.checks.iter().find(|c| c.i == i)
    }
}

/// Highest homological index compared: the Koszul length, at least 2.
fn top_index(p: &Presentation) -> usize {
    p.vars().max(2)
}

fn padded(mut totals: Vec<u64>, len: usize) -> Vec<u64> {
    if totals.len() < len {
        totals.resize(len, 0);
    }
    totals
}

/// Computes the Betti table and checks `beta_i` against the bound at every
/// `i >= 2` up to the Koszul length; `beta_0`, `beta_1` are checked against
/// the presentation sizes.
pub fn verify_betti(p: &Presentation) -> Result<VerificationReport> {
    let table = koszul::betti_table(p)?;
    let rank = p.module_rank()? as u64;
    let totals = padded(table.totals(), top_index(p) + 1);
    let profile = BoundProfile::new(p.rows() as u64, p.cols() as u64, rank)?;
    let size_checks = vec![
        SizeCheck { i: 0, computed: totals[0], expected: p.rows() as u64, pass: totals[0] == p.rows() as u64 },
        SizeCheck { i: 1, computed: totals[1], expected: p.cols() as u64, pass: totals[1] == p.cols() as u64 },
    ];
    let checks = (2..totals.len())
        .map(|i| Ok(IndexCheck::at_most(i, totals[i], profile.bound(i as u64)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        kind: ReportKind::Betti,
        inputs: Provenance::of(p),
        profile,
        totals,
        size_checks,
        checks,
        pass: false,
    }
    .finish())
}

/// Bass verification together with both total conventions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BassVerification {
    pub selection: &'static str,
    pub totals_all: Vec<u64>,
    pub totals_positive: Vec<u64>,
    pub report: VerificationReport,
}

/// Checks `*mu_i <= C(*mu_1, *mu_0 + i - 1) * C(*mu_0 + i - 3, i - 2)` for
/// `i >= 2`, with totals summed over the selected primes.
pub fn verify_bass_with(p: &Presentation, selection: PrimeSelection) -> Result<BassVerification> {
    let tables = koszul::bass_all_primes(p)?;
    let len = top_index(p) + 1;
    let totals_all = padded(koszul::sum_totals(&tables, PrimeSelection::All, p.vars()), len);
    let totals_positive = padded(koszul::sum_totals(&tables, PrimeSelection::Positive, p.vars()), len);
    let totals = match selection {
        PrimeSelection::All => totals_all.clone(),
        PrimeSelection::Positive => totals_positive.clone(),
    };
    let profile = BoundProfile::new(totals[0], totals[1], 0)?;
    let checks = (2..len)
        .map(|i| Ok(IndexCheck::at_most(i, totals[i], bass_bound(totals[0], totals[1], i as u64, 0)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = VerificationReport {
        kind: ReportKind::Bass,
        inputs: Provenance::of(p),
        profile,
        totals,
        size_checks: Vec::new(),
        checks,
        pass: false,
    }
    .finish();
    let selection = match selection {
        PrimeSelection::All => "all",
        PrimeSelection::Positive => "positive",
    };
    Ok(BassVerification { selection, totals_all, totals_positive, report })
}

pub fn verify_bass(p: &Presentation) -> Result<VerificationReport> {
    Ok(verify_bass_with(p, PrimeSelection::All)?.report)
}

/// Report asserting `beta_i = brt_rank(n, r, i)` for every `i >= 2` in the
/// Koszul range, plus `beta_0 = rows` and `beta_1 = n`.
pub(crate) fn sharpness_report(p: &Presentation, r: u64) -> Result<VerificationReport> {
    let table = koszul::betti_table(p)?;
    let n = p.cols() as u64;
    let totals = padded(table.totals(), top_index(p) + 1);
    let rank = p.rows() as u64 - r;
    let profile = BoundProfile::new(p.rows() as u64, n, rank)?;
    let size_checks = vec![
        SizeCheck { i: 0, computed: totals[0], expected: p.rows() as u64, pass: totals[0] == p.rows() as u64 },
        SizeCheck { i: 1, computed: totals[1], expected: n, pass: totals[1] == n },
    ];
    let checks = (2..totals.len())
        .map(|i| Ok(IndexCheck::exactly(i, totals[i], brt_rank(n, r, i as u64)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        kind: ReportKind::Sharpness,
        inputs: Provenance::of(p),
        profile,
        totals,
        size_checks,
        checks,
        pass: false,
    }
    .finish())
}

fn big_as_number<T: ToString, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    let text = v.to_string();
    match text.parse::<i64>() {
        Ok(n) => s.serialize_i64(n),
        Err(_) => match text.parse::<u64>() {
            Ok(n) => s.serialize_u64(n),
            Err(_) => s.serialize_str(&text),
        },
    }
}
