//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use ambarzumian::{JacobiMatrix, MultiPoly, QuadExtRational};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Jacobi matrix: size in `1..=max_n`, diagonal in `[-3, 3]`,
/// off-diagonal in `[0.2, 2]`.
pub fn random_jacobi(rng: &mut ChaCha8Rng, max_n: usize) -> JacobiMatrix {
    let n = rng.random_range(1..=max_n);
    let diag = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
    let off = (0..n - 1).map(|_| rng.random_range(0.2..2.0)).collect();
    JacobiMatrix::new(diag, off).unwrap()
}

pub fn dense(j: &JacobiMatrix) -> DMatrix<f64> {
    let n = j.n();
    DMatrix::from_fn(n, n, |r, c| j.to_dense()[r][c])
}

/// `det(J - x I)` by LU on the dense matrix.
pub fn dense_charpoly(j: &JacobiMatrix, x: f64) -> f64 {
    let n = j.n();
    (dense(j) - DMatrix::identity(n, n) * x).determinant()
}

/// Ascending eigenvalues from a dense symmetric QR eigensolver.
pub fn dense_eigenvalues(j: &JacobiMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(dense(j)).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

pub const CHARPOLY_VARS: [&str; 4] = ["b1", "b2", "b3", "L"];

/// The 19-term expansion of `det(S_{5,3} - L I)` as printed, term by term:
/// `(coefficient, [deg b1, deg b2, deg b3, deg L])`.
pub const LISTED_5_3: [(i64, [u32; 4]); 19] = [
    (1, [1, 1, 1, 2]),
    (-1, [1, 1, 1, 0]),
    (-1, [1, 1, 0, 3]),
    (2, [1, 1, 0, 1]),
    (-1, [1, 0, 1, 3]),
    (1, [1, 0, 1, 1]),
    (1, [1, 0, 0, 4]),
    (-3, [1, 0, 0, 2]),
    (1, [1, 0, 0, 0]),
    (-1, [0, 1, 1, 3]),
    (1, [0, 1, 1, 1]),
    (1, [0, 1, 0, 4]),
    (-2, [0, 1, 0, 2]),
    (1, [0, 0, 1, 4]),
    (-2, [0, 0, 1, 2]),
    (1, [0, 0, 1, 0]),
    (-1, [0, 0, 0, 5]),
    (4, [0, 0, 0, 3]),
    (-3, [0, 0, 0, 1]),
];

pub fn listed_5_3() -> MultiPoly<QuadExtRational> {
    MultiPoly::from_terms(
        &CHARPOLY_VARS,
        LISTED_5_3
            .iter()
            .map(|(c, e)| (QuadExtRational::from_ints(*c, 0), e.to_vec())),
    )
    .unwrap()
}

pub fn q(p: i64, s: i64) -> QuadExtRational {
    QuadExtRational::from_ints(p, s)
}
