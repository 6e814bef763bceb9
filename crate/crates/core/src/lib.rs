//! Ambarzumian-type mixed inverse spectral problems for discrete Schrödinger
//! matrices.
//!
//! The free matrix `F_n` is the `n x n` Jacobi matrix with zero diagonal and
//! unit off-diagonal. The perturbed matrix `S_{n,m}` replaces the first `m`
//! diagonal entries by unknowns `b_1..b_m`. For a choice of `m` ordered
//! eigenvalue positions of `F_n`, this crate decides whether sharing those
//! ordered eigenvalues forces `b = 0` ([`Classification::Rigid`]) or admits a
//! nontrivial real counterexample ([`Classification::Flexible`]).
//!
//! Layout:
//!
//! * [`matrix`]: Jacobi matrices, Sturm counts, certified ordered spectra.
//! * [`poly`]: sparse multivariate polynomials over `f64` or exact `Q(sqrt 3)`.
//! * [`system`]: symbolic characteristic polynomial, case enumeration and
//!   the two polynomial-system formulations.
//! * [`solver`]: multistart damped Newton and univariate real root isolation.
//! * [`classify`]: rigid/flexible classification, witnesses, certificates.
//! * [`report`]: JSON, CSV and table renderings of reports.

pub mod classify;
pub mod cli;
mod error;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod solver;
pub mod system;

pub use classify::{
    case4_equation_residuals, certificate_checks, classify_case, sweep, verify_candidate,
    CaseReport, Classification, SweepReport, SystemChoice,
};
pub use error::{Error, Result};
pub use matrix::{
    charpoly_eval, eigenvalues, free_matrix, free_spectrum, schrodinger_matrix, sturm_count,
    JacobiMatrix, Spectrum,
};
pub use poly::{MultiPoly, QuadExtRational, Ring};
pub use solver::{multistart_solve, newton_polish, real_roots_univariate, Solution, SolverConfig};
pub use system::{
    build_coeff_match_system, build_root_subst_system, enumerate_cases, symbolic_charpoly,
    symmetry_classes, CaseSpec, PolySystem,
};
