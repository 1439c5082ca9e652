//! Finitely presented Z^m-graded modules `L = coker(E -> G)`.
//!
//! The presentation matrix has entries `c * x^(e_j - g_t)`, where `g_t` is the
//! degree of generator `t` of `G` and `e_j` the degree of generator `j` of
//! `E`. Homogeneity forces the monomial, so only the scalar grid `c` is
//! stored.

use std::collections::BTreeMap;

use crate::degree::DegreeVector;
use crate::error::{Error, Result, Violation};
use crate::field::{Field, Scalar};
use crate::linalg::{quotient_space, ExactMatrix, QuotientSpace};
use crate::matroid::Matroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    vars: usize,
    row_degrees: Vec<DegreeVector>,
    col_degrees: Vec<DegreeVector>,
    coeffs: ExactMatrix,
}

/// The degree-`b` part of a module, as a quotient of the span of the
/// generators that live below `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: DegreeVector,
    /// `(t, b - g_t)` for every generator `t` with `g_t <= b`, sorted by `t`.
    pub labels: Vec<(usize, DegreeVector)>,
    pub space: QuotientSpace,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.space.dim
    }
}

impl Presentation {
    /// Checks shapes only; call [`Presentation::validate`] for the
    /// homogeneity and minimality invariants.
    pub fn new(
        field: Field,
        vars: usize,
        row_degrees: Vec<DegreeVector>,
        col_degrees: Vec<DegreeVector>,
        coeffs: ExactMatrix,
    ) -> Result<Presentation> {
        let mut problems = Vec::new();
        if coeffs.field() != field {
            problems.push(Violation::DimensionMismatch(format!(
                "coefficients over {} but presentation over {field}",
                coeffs.field()
            )));
        }
        if coeffs.rows() != row_degrees.len() || coeffs.cols() != col_degrees.len() {
            problems.push(Violation::DimensionMismatch(format!(
                "coefficient matrix is {}x{} but there are {} row and {} column degrees",
                coeffs.rows(),
                coeffs.cols(),
                row_degrees.len(),
                col_degrees.len()
            )));
        }
        for (kind, degs) in [("row", &row_degrees), ("column", &col_degrees)] {
            for (i, d) in degs.iter().enumerate() {
                if d.len() != vars {
                    problems.push(Violation::DimensionMismatch(format!(
                        "{kind} degree {i} = {d} has {} coordinates, expected {vars}",
                        d.len()
                    )));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::Invalid(problems));
        }
        Ok(Presentation { field, vars, row_degrees, col_degrees, coeffs })
    }

    /// The free module `R^k` with generators in the given degrees.
    pub fn free(field: Field, vars: usize, degrees: Vec<DegreeVector>) -> Result<Presentation> {
        let rows = degrees.len();
        Presentation::new(field, vars, degrees, Vec::new(), ExactMatrix::zeros(field, rows, 0))
    }

    /// The zero module (no generators, no relations).
    pub fn zero_module(field: Field, vars: usize) -> Presentation {
        Presentation {
            field,
            vars,
            row_degrees: Vec::new(),
            col_degrees: Vec::new(),
            coeffs: ExactMatrix::zeros(field, 0, 0),
        }
    }

    /// `k(-c)`: the residue field generated in degree `c`, presented by the
    /// variables.
    pub fn residue_field(field: Field, c: DegreeVector) -> Presentation {
        let m = c.len();
        let cols = (0..m).map(|j| c.plus_unit(j)).collect();
        let coeffs = ExactMatrix::from_rows(field, vec![vec![field.one(); m]], m);
        Presentation { field, vars: m, row_degrees: vec![c], col_degrees: cols, coeffs }
    }

    /// Cyclic module `R/I` for the monomial ideal generated by `gens`.
    /// Generators are reduced to a divisibility-minimal set (first occurrence
    /// order kept). A zero generator makes `I = R` and yields the zero module.
    pub fn from_monomial_ideal(field: Field, vars: usize, gens: &[DegreeVector]) -> Result<Presentation> {
        for g in gens {
            if g.len() != vars {
                return Err(Error::DegreeLength(g.clone()));
            }
            if !g.is_nonnegative() {
                return Err(Error::NegativeDegrees(g.clone()));
            }
        }
        if gens.iter().any(|g| g.coords().iter().all(|&c| c == 0)) {
            return Ok(Presentation::zero_module(field, vars));
        }
        let minimal = minimalize(gens);
        let n = minimal.len();
        let coeffs = ExactMatrix::from_rows(field, vec![vec![field.one(); n]], n);
        Presentation::new(field, vars, vec![DegreeVector::zeros(vars)], minimal, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn row_degrees(&self) -> &[DegreeVector] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[DegreeVector] {
        &self.col_degrees
    }

    pub fn coeffs(&self) -> &ExactMatrix {
        &self.coeffs
    }

    /// Number of generators, `beta_0` of a minimal presentation.
    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    /// Number of relations, `beta_1` of a minimal presentation.
    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    /// Every violated invariant, in row-major order of the offending entry.
    pub fn validate(&self) -> Vec<Violation> {
        let f = self.field;
        let mut out = Vec::new();
        for j in 0..self.cols() {
            let mut nonzero = false;
            for t in 0..self.rows() {
                if f.is_zero(self.coeffs.get(t, j)) {
                    continue;
                }
                nonzero = true;
                let (g, e) = (&self.row_degrees[t], &self.col_degrees[j]);
                if !g.leq(e) {
                    out.push(Violation::Homogeneity { t, j });
                } else if g == e {
                    out.push(Violation::NonMinimal { t, j });
                }
            }
            if !nonzero {
                out.push(Violation::ZeroColumn { j });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Column matroid of the scalar matrix `Phi (x) k`; ground element `j`
    /// is relation column `j`.
    pub fn coefficient_matroid(&self) -> Result<Matroid> {
        self.ensure_valid()?;
        Ok(Matroid::from_matrix(&self.coeffs))
    }

    /// Rank of the presentation matrix over the fraction field. The monomial
    /// matrix is a diagonal rescaling of the scalar matrix by units of the
    /// fraction field, so this is the scalar rank.
    pub fn fraction_field_rank(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.coeffs.rank())
    }

    /// Independent route to [`Presentation::fraction_field_rank`]: expands
    /// every square minor of the monomial-entry matrix as a polynomial and
    /// returns the largest size with a nonzero minor. Limited to six columns.
    pub fn fraction_field_rank_by_minors(&self) -> Result<usize> {
        self.ensure_valid()?;
        if self.cols() > 6 {
            return Err(Error::BadSpec(format!(
                "minor expansion is limited to 6 columns, got {}",
                self.cols()
            )));
        }
        let max = self.rows().min(self.cols());
        for k in (1..=max).rev() {
            for rows in crate::subset::subsets_of_size(self.rows(), k) {
                for cols in crate::subset::subsets_of_size(self.cols(), k) {
                    if !self.minor_polynomial(&rows.indices(), &cols.indices()).is_empty() {
                        return Ok(k);
                    }
                }
            }
        }
        Ok(0)
    }

    /// Leibniz expansion of a square minor; returns the nonzero terms keyed
    /// by exponent vector.
    fn minor_polynomial(&self, rows: &[usize], cols: &[usize]) -> BTreeMap<Vec<i64>, Scalar> {
        let f = self.field;
        let k = rows.len();
        let mut terms: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
        for perm in permutations(k) {
            let mut coeff = if inversions(&perm).is_multiple_of(2) { f.one() } else { f.neg(&f.one()) };
            let mut exponent = vec![0i64; self.vars];
            for (i, &p) in perm.iter().enumerate() {
                let (t, j) = (rows[i], cols[p]);
                coeff = f.mul(&coeff, self.coeffs.get(t, j));
                for (x, (e, g)) in exponent
                    .iter_mut()
                    .zip(self.col_degrees[j].coords().iter().zip(self.row_degrees[t].coords()))
                {
                    *x += e - g;
                }
            }
            if f.is_zero(&coeff) {
                continue;
            }
            let slot = terms.entry(exponent).or_insert_with(|| f.zero());
            *slot = f.add(slot, &coeff);
        }
        terms.retain(|_, c| !f.is_zero(c));
        terms
    }

    /// `rank L = rank G - rank Phi`.
    pub fn module_rank(&self) -> Result<usize> {
        Ok(self.rows() - self.fraction_field_rank()?)
    }

    pub fn graded_piece(&self, b: &DegreeVector) -> Result<GradedPiece> {
        self.ensure_valid()?;
        self.check_degree(b)?;
        Ok(self.piece(b))
    }

    pub(crate) fn check_degree(&self, b: &DegreeVector) -> Result<()> {
        if b.len() != self.vars {
            return Err(Error::DegreeLength(b.clone()));
        }
        Ok(())
    }

    /// Graded piece without re-validating the presentation.
    pub(crate) fn piece(&self, b: &DegreeVector) -> GradedPiece {
        let f = self.field;
        let gens: Vec<usize> = (0..self.rows()).filter(|&t| self.row_degrees[t].leq(b)).collect();
        let rels: Vec<usize> = (0..self.cols()).filter(|&j| self.col_degrees[j].leq(b)).collect();
        let mut relations = ExactMatrix::zeros(f, gens.len(), rels.len());
        for (r, &t) in gens.iter().enumerate() {
            for (c, &j) in rels.iter().enumerate() {
                relations.set(r, c, self.coeffs.get(t, j).clone());
            }
        }
        let labels = gens.iter().map(|&t| (t, b - &self.row_degrees[t])).collect();
        GradedPiece { degree: b.clone(), labels, space: quotient_space(&relations) }
    }

    /// Matrix of multiplication by `x_j` from `L_b` to `L_{b+u_j}` in the
    /// canonical bases of both pieces.
    pub fn multiplication_map(&self, b: &DegreeVector, j: usize) -> Result<ExactMatrix> {
        self.ensure_valid()?;
        self.check_degree(b)?;
        if j >= self.vars {
            return Err(Error::IndexOutOfRange { index: j, n: self.vars });
        }
        let src = self.piece(b);
        let dst = self.piece(&b.plus_unit(j));
        Ok(multiply_between(self.field, &src, &dst))
    }

    /// Componentwise maximum of all generator and relation degrees.
    pub fn determining_degree(&self) -> Result<DegreeVector> {
        self.ensure_valid()?;
        let mut a = DegreeVector::zeros(self.vars);
        for d in self.row_degrees.iter().chain(&self.col_degrees) {
            if !d.is_nonnegative() {
                return Err(Error::NegativeDegrees(d.clone()));
            }
            a = a.join(d);
        }
        Ok(a)
    }

    /// `L(-c)`: every degree translated by `+c`.
    pub fn shift(&self, c: &DegreeVector) -> Result<Presentation> {
        self.check_degree(c)?;
        let mut out = self.clone();
        for d in out.row_degrees.iter_mut().chain(out.col_degrees.iter_mut()) {
            *d = &*d + c;
        }
        Ok(out)
    }

    /// Errors unless every degree is nonnegative.
    pub(crate) fn ensure_nonnegative(&self) -> Result<()> {
        match self.row_degrees.iter().chain(&self.col_degrees).find(|d| !d.is_nonnegative()) {
            Some(d) => Err(Error::NegativeDegrees(d.clone())),
            None => Ok(()),
        }
    }
}

/// Multiplication by a variable between two pieces where `dst` sits one step
/// above `src`. Each generator label of `src` is also a label of `dst`.
pub(crate) fn multiply_between(field: Field, src: &GradedPiece, dst: &GradedPiece) -> ExactMatrix {
    let mut embed = ExactMatrix::zeros(field, dst.labels.len(), src.labels.len());
    for (c, (t, _)) in src.labels.iter().enumerate() {
        let r = dst
            .labels
            .iter()
            .position(|(u, _)| u == t)
            .expect("generator present in the higher degree");
        embed.set(r, c, field.one());
    }
    dst.space.projection.mul(&embed).mul(&src.space.section)
}

/// Divisibility-minimal subset, first occurrences kept in input order.
pub fn minimalize(gens: &[DegreeVector]) -> Vec<DegreeVector> {
    let mut out: Vec<DegreeVector> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let dominated = gens.iter().enumerate().any(|(k, h)| {
            k != i && h.leq(g) && (h != g || k < i)
        });
        if !dominated {
            out.push(g.clone());
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}
