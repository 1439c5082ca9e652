//! Exact computation of multigraded Betti and Bass numbers of finitely
//! presented Z^m-graded modules over `k[x_1, .., x_m]`, the coefficient
//! matroid of a minimal presentation, and the T-flat upper bounds on those
//! invariants.
//!
//! Everything is exact: scalars are rationals or prime-field residues, and
//! homology is computed degreewise from Koszul complexes over finite boxes.

pub mod bounds;
pub mod corpus;
pub mod degree;
pub mod duality;
pub mod error;
pub mod field;
pub mod genex;
pub mod json;
pub mod koszul;
pub mod linalg;
pub mod matroid;
pub mod presentation;
pub mod subset;

pub use bounds::{
    bass_bound, betti_bound, binomial, brt_rank, symmetric_power_dim, verify_bass, verify_bass_with,
    verify_betti, BoundProfile, IndexCheck, VerificationReport,
};
pub use degree::DegreeVector;
pub use duality::{
    alexander_dual, alexander_dual_by_intersection, complement_degree, miller_relation_probe, support,
    MonomialIdeal, ProbeReport,
};
pub use error::{Error, ParseError, Result, Violation};
pub use field::{Field, Scalar};
pub use genex::{generic_presentation, verify_sharpness, GenexSpec};
pub use koszul::{
    bass_at_prime, betti_table, total_bass, total_bass_with, BassTable, BettiTable, PrimeSelection,
};
pub use linalg::{quotient_space, ExactMatrix, QuotientSpace};
pub use matroid::Matroid;
pub use presentation::{GradedPiece, Presentation};
pub use subset::SubsetMask;
