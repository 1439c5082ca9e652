//! Multigraded Betti numbers as degreewise Koszul homology of `L`, and
//! multigraded Bass numbers as degreewise Koszul cohomology of the
//! homogeneous localizations of `L` at the primes `p_A = (x_j : j in A)`.
//!
//! Degrees are scanned over a finite box. For a positively `a`-determined
//! module (`a` the join of all generator and relation degrees) Betti numbers
//! live in `[0, a]` and Bass numbers in `[-1, a]` on the prime's coordinates.
//! Localizing at `p_A` inverts `x_j` for `j` outside `A`; multiplication by
//! those variables is bijective from degree `a_j` upward, so the localized
//! module at any degree is the original module with those coordinates clamped
//! to `a_j`. Each orbit along the inverted directions is reported once, with
//! coordinate 0.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::degree::{box_points, box_size, DegreeVector};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::presentation::{multiply_between, GradedPiece, Presentation};
use crate::subset::{subsets_of_size, SubsetMask};

/// Largest number of variables for the exhaustive prime loop.
pub const MAX_PRIME_VARS: usize = 6;
/// Largest number of degrees scanned in one box.
pub const MAX_BOX: u128 = 1_000_000;

/// Multiplicities indexed by homological index and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedTable {
    pub vars: usize,
    /// `by_index[i]` maps a degree to its nonzero multiplicity.
    pub by_index: Vec<BTreeMap<DegreeVector, u64>>,
}

impl GradedTable {
    fn new(vars: usize, len: usize) -> Self {
        GradedTable { vars, by_index: vec![BTreeMap::new(); len] }
    }

    fn record(&mut self, i: usize, b: DegreeVector, mult: u64) {
        if mult > 0 {
            *self.by_index[i].entry(b).or_insert(0) += mult;
        }
    }

    pub fn get(&self, i: usize, b: &DegreeVector) -> u64 {
        self.by_index.get(i).and_then(|m| m.get(b)).copied().unwrap_or(0)
    }

    /// Sum over degrees, one entry per homological index.
    pub fn totals(&self) -> Vec<u64> {
        self.by_index.iter().map(|m| m.values().sum()).collect()
    }

    /// Alternating sum of the totals.
    pub fn euler_characteristic(&self) -> i64 {
        self.totals()
            .iter()
            .enumerate()
            .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }
}

pub type BettiTable = GradedTable;

/// Bass numbers at one multigraded prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BassTable {
    /// Variables generating the prime.
    pub prime: SubsetMask,
    pub table: GradedTable,
}

impl BassTable {
    pub fn totals(&self) -> Vec<u64> {
        self.table.totals()
    }
}

/// Which multigraded primes enter a total Bass number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Every `p_A`, including the zero prime `A = {}`.
    All,
    /// Only nonzero primes.
    Positive,
}

/// A complex of finite-dimensional spaces: `dims[i]` and the maps between
/// consecutive terms.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub dims: Vec<usize>,
    /// Homological: `maps[i-1]` is `d_i : K_i -> K_{i-1}`.
    /// Cohomological: `maps[i]` is `d^i : C^i -> C^{i+1}`.
    pub maps: Vec<ExactMatrix>,
    pub cohomological: bool,
}

impl FiniteComplex {
    /// True iff every composite of consecutive maps vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (first, second) = if self.cohomological { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
            first.rows() == 0 || first.cols() == 0 || second.rows() == 0 || second.mul(first).is_zero()
        })
    }

    /// Dimension of the (co)homology at every position.
    pub fn homology(&self) -> Vec<u64> {
        let n = self.dims.len();
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        (0..n)
            .map(|i| {
                let (out_rank, in_rank) = if self.cohomological {
                    (ranks.get(i).copied().unwrap_or(0), if i > 0 { ranks[i - 1] } else { 0 })
                } else {
                    (if i > 0 { ranks[i - 1] } else { 0 }, ranks.get(i).copied().unwrap_or(0))
                };
                (self.dims[i] - out_rank - in_rank) as u64
            })
            .collect()
    }
}

struct PieceCache<'a> {
    p: &'a Presentation,
    pieces: HashMap<DegreeVector, GradedPiece>,
}

impl<'a> PieceCache<'a> {
    fn new(p: &'a Presentation) -> Self {
        PieceCache { p, pieces: HashMap::new() }
    }

    fn dim(&mut self, b: &DegreeVector) -> usize {
        self.piece(b).dim()
    }

    fn piece(&mut self, b: &DegreeVector) -> &GradedPiece {
        let p = self.p;
        self.pieces.entry(b.clone()).or_insert_with(|| p.piece(b))
    }

    fn multiply(&mut self, b: &DegreeVector, j: usize) -> ExactMatrix {
        let up = b.plus_unit(j);
        self.piece(b);
        self.piece(&up);
        multiply_between(self.p.field(), &self.pieces[b], &self.pieces[&up])
    }
}

fn sign(pos: usize) -> bool {
    pos % 2 == 1
}

/// The Koszul complex `L (x) K(x_1..x_m)` in degree `b`: term `i` is the sum
/// over `|J| = i` of `L_{b - e_J}`, and the component of `d` from summand `J`
/// to `J \ {j}` is `(-1)^pos * x_j`, `pos` the position of `j` in `J`.
pub fn koszul_complex(p: &Presentation, b: &DegreeVector) -> Result<FiniteComplex> {
    p.ensure_valid()?;
    p.check_degree(b)?;
    Ok(tor_complex(&mut PieceCache::new(p), b))
}

fn tor_complex(cache: &mut PieceCache<'_>, b: &DegreeVector) -> FiniteComplex {
    let m = cache.p.vars();
    let f = cache.p.field();
    let summands: Vec<Vec<SubsetMask>> = (0..=m).map(|i| subsets_of_size(m, i)).collect();
    let deg = |j: SubsetMask| b - &DegreeVector::indicator(m, j);
    let mut offsets: Vec<HashMap<SubsetMask, usize>> = Vec::with_capacity(m + 1);
    let mut dims = Vec::with_capacity(m + 1);
    for terms in &summands {
        let mut off = HashMap::new();
        let mut total = 0;
        for &j in terms {
            off.insert(j, total);
            total += cache.dim(&deg(j));
        }
        offsets.push(off);
        dims.push(total);
    }
    let mut maps = Vec::with_capacity(m);
    for i in 1..=m {
        let mut d = ExactMatrix::zeros(f, dims[i - 1], dims[i]);
        for &big in &summands[i] {
            let src = deg(big);
            if cache.dim(&src) == 0 {
                continue;
            }
            for (pos, j) in big.indices().into_iter().enumerate() {
                let small = big.remove(j);
                let mut block = cache.multiply(&src, j);
                if block.rows() == 0 {
                    continue;
                }
                if sign(pos) {
                    block = block.scaled(&f.neg(&f.one()));
                }
                d.set_block(offsets[i - 1][&small], offsets[i][&big], &block);
            }
        }
        maps.push(d);
    }
    FiniteComplex { dims, maps, cohomological: false }
}

/// Koszul cochain complex on the variables of `prime` in degree `b`
/// (coordinates outside `prime` are used as given): term `i` is the sum over
/// `J` in `prime`, `|J| = i`, of `L_{b + e_J}`; the component from `J` to
/// `J + {j}` is `(-1)^pos * x_j`, `pos` the position of `j` in `J + {j}`.
pub fn ext_complex(p: &Presentation, prime: SubsetMask, b: &DegreeVector) -> Result<FiniteComplex> {
    p.ensure_valid()?;
    p.check_degree(b)?;
    check_prime(p, prime)?;
    Ok(cochain_complex(&mut PieceCache::new(p), prime, b))
}

fn check_prime(p: &Presentation, prime: SubsetMask) -> Result<()> {
    if prime.bound() > p.vars() {
        return Err(Error::IndexOutOfRange { index: prime.bound() - 1, n: p.vars() });
    }
    Ok(())
}

fn cochain_complex(cache: &mut PieceCache<'_>, prime: SubsetMask, b: &DegreeVector) -> FiniteComplex {
    let m = cache.p.vars();
    let f = cache.p.field();
    let vars = prime.indices();
    let l = vars.len();
    let lift = |local: SubsetMask| SubsetMask::from_indices(local.indices().into_iter().map(|k| vars[k]));
    let summands: Vec<Vec<SubsetMask>> =
        (0..=l).map(|i| subsets_of_size(l, i).into_iter().map(lift).collect()).collect();
    let deg = |j: SubsetMask| b + &DegreeVector::indicator(m, j);
    let mut offsets: Vec<HashMap<SubsetMask, usize>> = Vec::with_capacity(l + 1);
    let mut dims = Vec::with_capacity(l + 1);
    for terms in &summands {
        let mut off = HashMap::new();
        let mut total = 0;
        for &j in terms {
            off.insert(j, total);
            total += cache.dim(&deg(j));
        }
        offsets.push(off);
        dims.push(total);
    }
    let mut maps = Vec::with_capacity(l);
    for i in 0..l {
        let mut d = ExactMatrix::zeros(f, dims[i + 1], dims[i]);
        for &small in &summands[i] {
            let src = deg(small);
            if cache.dim(&src) == 0 {
                continue;
            }
            for &j in vars.iter().filter(|&&j| !small.contains(j)) {
                let big = small.insert(j);
                let pos = big.indices().iter().position(|&k| k == j).expect("member");
                let mut block = cache.multiply(&src, j);
                if block.rows() == 0 {
                    continue;
                }
                if sign(pos) {
                    block = block.scaled(&f.neg(&f.one()));
                }
                d.set_block(offsets[i + 1][&big], offsets[i][&small], &block);
            }
        }
        maps.push(d);
    }
    FiniteComplex { dims, maps, cohomological: true }
}

fn check_box(lo: &DegreeVector, hi: &DegreeVector) -> Result<()> {
    let size = box_size(lo, hi);
    if size > MAX_BOX {
        return Err(Error::BoxTooLarge { size, max: MAX_BOX });
    }
    Ok(())
}

/// Betti numbers `beta_{i,b}` for every `b` in `[lo, hi]`, without the
/// minimality check.
pub fn betti_in_box(p: &Presentation, lo: &DegreeVector, hi: &DegreeVector) -> Result<BettiTable> {
    p.ensure_valid()?;
    p.check_degree(lo)?;
    p.check_degree(hi)?;
    check_box(lo, hi)?;
    let m = p.vars();
    let per_degree: Vec<(DegreeVector, Vec<u64>)> = box_points(lo, hi)
        .into_par_iter()
        .map(|b| {
            let h = tor_complex(&mut PieceCache::new(p), &b).homology();
            (b, h)
        })
        .collect();
    let mut table = GradedTable::new(m, m + 1);
    for (b, h) in per_degree {
        for (i, v) in h.into_iter().enumerate() {
            table.record(i, b.clone(), v);
        }
    }
    Ok(table)
}

/// Multigraded Betti numbers over the box `[0, a]`, `a` the determining
/// degree. Fails with `MinimalityBroken` when `beta_0` or `beta_1` differ from
/// the presentation sizes.
pub fn betti_table(p: &Presentation) -> Result<BettiTable> {
    p.ensure_valid()?;
    p.ensure_nonnegative()?;
    let a = p.determining_degree()?;
    let table = betti_in_box(p, &DegreeVector::zeros(p.vars()), &a)?;
    let totals = table.totals();
    if totals[0] != p.rows() as u64 || totals.get(1).copied().unwrap_or(0) != p.cols() as u64 {
        return Err(Error::MinimalityBroken {
            beta0: totals[0],
            beta1: totals.get(1).copied().unwrap_or(0),
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    Ok(table)
}

/// Degree `b` with coordinates outside `prime` replaced by the clamp.
fn clamped(b: &DegreeVector, prime: SubsetMask, clamp: &DegreeVector) -> DegreeVector {
    DegreeVector((0..b.len()).map(|j| if prime.contains(j) { b[j] } else { clamp[j] }).collect())
}

fn reported(b: &DegreeVector, prime: SubsetMask) -> DegreeVector {
    DegreeVector((0..b.len()).map(|j| if prime.contains(j) { b[j] } else { 0 }).collect())
}

/// Bass numbers at `p_A` scanning `prime`-coordinates over `[lo, hi]`
/// (other coordinates of `lo`/`hi` are ignored).
pub fn bass_in_window(
    p: &Presentation,
    prime: SubsetMask,
    lo: &DegreeVector,
    hi: &DegreeVector,
) -> Result<BassTable> {
    p.ensure_valid()?;
    p.ensure_nonnegative()?;
    check_prime(p, prime)?;
    let a = p.determining_degree()?;
    let (lo, hi) = (clamped(lo, prime, &a), clamped(hi, prime, &a));
    check_box(&lo, &hi)?;
    let m = p.vars();
    let per_degree: Vec<(DegreeVector, Vec<u64>)> = box_points(&lo, &hi)
        .into_par_iter()
        .map(|b| {
            let h = cochain_complex(&mut PieceCache::new(p), prime, &b).homology();
            (reported(&b, prime), h)
        })
        .collect();
    let mut table = GradedTable::new(m, m + 1);
    for (b, h) in per_degree {
        for (i, v) in h.into_iter().enumerate() {
            table.record(i, b.clone(), v);
        }
    }
    Ok(BassTable { prime, table })
}

/// Multigraded Bass numbers `mu_{i,b}(p_A, L)` over the window `[-1, a]` on
/// the coordinates of `A`.
pub fn bass_at_prime(p: &Presentation, prime: SubsetMask) -> Result<BassTable> {
    p.ensure_valid()?;
    p.ensure_nonnegative()?;
    let a = p.determining_degree()?;
    let lo = DegreeVector(vec![-1; p.vars()]);
    bass_in_window(p, prime, &lo, &a)
}

/// `mu_{i,b}(p_A, L)` for every `i` at a single reported degree `b`
/// (coordinates of `b` outside `A` are ignored).
pub fn bass_at_degree(p: &Presentation, prime: SubsetMask, b: &DegreeVector) -> Result<Vec<u64>> {
    p.ensure_valid()?;
    p.ensure_nonnegative()?;
    p.check_degree(b)?;
    check_prime(p, prime)?;
    let a = p.determining_degree()?;
    let mut h = cochain_complex(&mut PieceCache::new(p), prime, &clamped(b, prime, &a)).homology();
    h.resize(p.vars() + 1, 0);
    Ok(h)
}

/// Bass tables at every multigraded prime, ordered by mask value.
pub fn bass_all_primes(p: &Presentation) -> Result<Vec<BassTable>> {
    if p.vars() > MAX_PRIME_VARS {
        return Err(Error::TooManyVariables { vars: p.vars(), max: MAX_PRIME_VARS });
    }
    (0..1u64 << p.vars())
        .into_par_iter()
        .map(|mask| bass_at_prime(p, SubsetMask(mask)))
        .collect()
}

/// Total multigraded Bass numbers, summed over the selected primes.
pub fn total_bass_with(p: &Presentation, selection: PrimeSelection) -> Result<Vec<u64>> {
    Ok(sum_totals(&bass_all_primes(p)?, selection, p.vars()))
}

/// Total multigraded Bass numbers over all primes, zero prime included.
pub fn total_bass(p: &Presentation) -> Result<Vec<u64>> {
    total_bass_with(p, PrimeSelection::All)
}

pub fn sum_totals(tables: &[BassTable], selection: PrimeSelection, vars: usize) -> Vec<u64> {
    let mut out = vec![0u64; vars + 1];
    for t in tables {
        if selection == PrimeSelection::Positive && t.prime.is_empty() {
            continue;
        }
        for (i, v) in t.totals().into_iter().enumerate() {
            out[i] += v;
        }
    }
    out
}
