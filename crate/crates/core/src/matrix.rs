//! Jacobi matrices, the free and perturbed discrete Schrödinger family, and
//! Sturm-certified ordered spectra.
//!
//! Characteristic polynomials follow the convention `det(J - x I)`, whose
//! leading coefficient is `(-1)^n`. The opposite convention `det(x I - J)`
//! flips the sign of every odd-degree equation derived from it, so all of the
//! polynomial machinery in this crate uses the same `det(J - x I)` form.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Minimum gap between consecutive computed eigenvalues.
pub const SPECTRUM_GAP_TOL: f64 = 1e-12;

const BISECTION_REL_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;
const NEWTON_POLISH_STEPS: usize = 3;

/// Real symmetric tridiagonal matrix with strictly positive off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::LengthMismatch {
                diag: diag.len(),
                offdiag: offdiag.len(),
            });
        }
        if let Some((i, &a)) = offdiag.iter().enumerate().find(|(_, a)| a.is_nan() || **a <= 0.0) {
            return Err(Error::NonPositiveOffDiagonal {
                index: i + 1,
                value: a,
            });
        }
        Ok(Self { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Squared Frobenius norm, `sum b_k^2 + 2 sum a_k^2`.
    pub fn frobenius_sq(&self) -> f64 {
        self.diag.iter().map(|b| b * b).sum::<f64>()
            + 2.0 * self.offdiag.iter().map(|a| a * a).sum::<f64>()
    }

    /// Same off-diagonal, negated diagonal. Similar to `-J` through the
    /// alternating sign matrix, so its spectrum is the negated reversed one.
    pub fn negated_diagonal(&self) -> Self {
        Self {
            diag: self.diag.iter().map(|b| -b).collect(),
            offdiag: self.offdiag.clone(),
        }
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n() {
            return Err(Error::InvalidUnknownCount { n: self.n(), m: k });
        }
        Ok(Self {
            diag: self.diag[..k].to_vec(),
            offdiag: self.offdiag[..k - 1].to_vec(),
        })
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut rows = vec![vec![0.0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = self.diag[i];
            if i + 1 < n {
                row[i + 1] = self.offdiag[i];
            }
            if i > 0 {
                row[i - 1] = self.offdiag[i - 1];
            }
        }
        rows
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1] } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i] } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs()).max(1.0)
    }
}

/// Eigenvalues sorted strictly ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, w) in values.windows(2).enumerate() {
            let gap = w[1] - w[0];
            if gap.is_nan() || gap <= SPECTRUM_GAP_TOL {
                return Err(Error::EigenvalueSeparation { index: i + 2 });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ordered eigenvalue at 1-based position `i`.
    pub fn at(&self, position: usize) -> Option<f64> {
        position
            .checked_sub(1)
            .and_then(|i| self.values.get(i).copied())
    }

    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// `F_n`: zero diagonal, unit off-diagonal.
pub fn free_matrix(n: usize) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    JacobiMatrix::new(vec![0.0; n], vec![1.0; n - 1])
}

/// `S_{n,m}` with leading diagonal `b` (length `m`) and zeros beyond.
pub fn schrodinger_matrix(n: usize, b: &[f64]) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if b.is_empty() || b.len() > n {
        return Err(Error::InvalidUnknownCount { n, m: b.len() });
    }
    let mut diag = b.to_vec();
    diag.resize(n, 0.0);
    JacobiMatrix::new(diag, vec![1.0; n - 1])
}

/// Closed-form ordered eigenvalue `lambda_i` (1-based) of `F_n`.
///
/// `-2 cos(i pi / (n+1))` is evaluated as `2 sin((2i - n - 1) pi / (2n + 2))`
/// so that the middle eigenvalue is exactly zero for odd `n` and the spectrum
/// is exactly symmetric.
pub fn free_eigenvalue(n: usize, position: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if position == 0 || position > n {
        return Err(Error::InvalidCase(format!(
            "position {position} outside 1..={n}"
        )));
    }
    let num = 2 * position as i64 - n as i64 - 1;
    let den = 2 * (n as i64 + 1);
    // reduce to the first quadrant relative to zero for exact symmetry
    let magnitude = 2.0 * (num.unsigned_abs() as f64 * PI / den as f64).sin();
    Ok(if num < 0 { -magnitude } else { magnitude })
}

/// Closed-form spectrum of `F_n`, ascending.
pub fn free_spectrum(n: usize) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let values = (1..=n)
        .map(|i| free_eigenvalue(n, i))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(values)
}

/// `det(J - x I)` by the leading-minor recurrence.
pub fn charpoly_eval(j: &JacobiMatrix, x: f64) -> f64 {
    charpoly_with_derivative(j, x).0
}

/// `det(J - x I)` and its derivative in `x`.
pub fn charpoly_with_derivative(j: &JacobiMatrix, x: f64) -> (f64, f64) {
    let (mut d_prev, mut dd_prev) = (1.0, 0.0);
    let (mut d, mut dd) = (j.diag[0] - x, -1.0);
    for k in 1..j.n() {
        let a2 = j.offdiag[k - 1] * j.offdiag[k - 1];
        let shift = j.diag[k] - x;
        let d_next = shift * d - a2 * d_prev;
        let dd_next = -d + shift * dd - a2 * dd_prev;
        d_prev = d;
        dd_prev = dd;
        d = d_next;
        dd = dd_next;
    }
    (d, dd)
}

/// Number of eigenvalues strictly below `x`.
///
/// Counts negative pivots of the `LDL^T` factorization of `J - x I`. An exact
/// zero pivot is replaced by a tiny positive value, which corresponds to
/// evaluating just below `x`, so an eigenvalue equal to `x` is not counted.
pub fn sturm_count(j: &JacobiMatrix, x: f64) -> usize {
    let tiny = f64::EPSILON * f64::EPSILON * j.scale();
    let mut count = 0;
    let mut q = j.diag[0] - x;
    for k in 0..j.n() {
        if k > 0 {
            let a = j.offdiag[k - 1];
            q = (j.diag[k] - x) - a * a / q;
        }
        if q == 0.0 {
            q = tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, ascending: bisection on Sturm counts, then a few guarded
/// Newton steps on `det(J - x I)`.
pub fn eigenvalues(j: &JacobiMatrix) -> Result<Spectrum> {
    let n = j.n();
    let (glo, ghi) = j.gershgorin_bounds();
    let margin = 1e-3 * (ghi - glo).max(1.0);
    let (lo0, hi0) = (glo - margin, ghi + margin);
    let tol = BISECTION_REL_TOL * (hi0 - lo0);

    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let (mut lo, mut hi) = (lo0, hi0);
        let mut converged = false;
        for _ in 0..BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if sturm_count(j, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if !converged {
            return Err(Error::EigenvalueSeparation { index: k + 1 });
        }
        values.push(polish(j, lo, hi));
    }
    Spectrum::new(values)
}

fn polish(j: &JacobiMatrix, lo: f64, hi: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    let (mut f, mut df) = charpoly_with_derivative(j, x);
    for _ in 0..NEWTON_POLISH_STEPS {
        if f == 0.0 || df == 0.0 || !df.is_finite() {
            break;
        }
        let candidate = x - f / df;
        if !(candidate >= lo && candidate <= hi) {
            break;
        }
        let (fc, dfc) = charpoly_with_derivative(j, candidate);
        if fc.abs() > f.abs() {
            break;
        }
        x = candidate;
        f = fc;
        df = dfc;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn free_matrix_shapes() {
        let f5 = free_matrix(5).unwrap();
        assert_eq!(f5.diag(), &[0.0; 5]);
        assert_eq!(f5.offdiag(), &[1.0; 4]);
        let f1 = free_matrix(1).unwrap();
        assert_eq!(f1.diag(), &[0.0]);
        assert!(f1.offdiag().is_empty());
        let f3 = free_matrix(3).unwrap();
        assert_eq!(f3.diag(), &[0.0; 3]);
        assert_eq!(f3.offdiag(), &[1.0, 1.0]);
        assert_eq!(free_matrix(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn schrodinger_matrix_layout() {
        assert_eq!(
            schrodinger_matrix(5, &[0.0, 0.0, 0.0]).unwrap(),
            free_matrix(5).unwrap()
        );
        let s = schrodinger_matrix(3, &[7.0]).unwrap();
        assert_eq!(s.diag(), &[7.0, 0.0, 0.0]);
        let b = [-1.11542462377894, 0.527281667822498, 0.702345226288011];
        let s = schrodinger_matrix(5, &b).unwrap();
        assert_eq!(&s.diag()[..3], &b);
        assert_eq!(&s.diag()[3..], &[0.0, 0.0]);
        assert_eq!(s.offdiag(), &[1.0; 4]);
        assert!(matches!(
            schrodinger_matrix(2, &[1.0, 2.0, 3.0]),
            Err(Error::InvalidUnknownCount { n: 2, m: 3 })
        ));
        assert!(matches!(
            schrodinger_matrix(2, &[]),
            Err(Error::InvalidUnknownCount { n: 2, m: 0 })
        ));
    }

    #[test]
    fn rejects_nonpositive_offdiagonal() {
        assert!(matches!(
            JacobiMatrix::new(vec![0.0, 0.0, 0.0], vec![1.0, 0.0]),
            Err(Error::NonPositiveOffDiagonal { index: 2, .. })
        ));
        assert!(JacobiMatrix::new(vec![0.0, 0.0], vec![-1.0]).is_err());
        assert!(JacobiMatrix::new(vec![0.0, 0.0], vec![f64::NAN]).is_err());
        assert!(matches!(
            JacobiMatrix::new(vec![0.0, 0.0], vec![1.0, 1.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn free_spectrum_closed_form() {
        let s = free_spectrum(5).unwrap();
        let expected = [-SQRT3, -1.0, 0.0, 1.0, SQRT3];
        for (a, b) in s.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
        assert_eq!(s.at(3), Some(0.0));
        assert_eq!(free_spectrum(1).unwrap().values(), &[0.0]);
        let s2 = free_spectrum(2).unwrap();
        assert!((s2.values()[0] + 1.0).abs() < 1e-15);
        assert!((s2.values()[1] - 1.0).abs() < 1e-15);
        assert!(free_spectrum(0).is_err());
    }

    #[test]
    fn charpoly_known_values() {
        assert_eq!(charpoly_eval(&free_matrix(2).unwrap(), 0.0), -1.0);
        assert!(charpoly_eval(&free_matrix(5).unwrap(), SQRT3).abs() < 1e-12);
        // leading behaviour (-1)^n x^n
        let x = 1e3;
        let v = charpoly_eval(&free_matrix(5).unwrap(), x);
        assert!((v / -x.powi(5) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn sturm_counts() {
        let f5 = free_matrix(5).unwrap();
        assert_eq!(sturm_count(&f5, 0.0), 2);
        assert_eq!(sturm_count(&f5, 10.0), 5);
        assert_eq!(sturm_count(&f5, -2.5), 0);
        assert_eq!(sturm_count(&f5, 1.0), 3);
        assert_eq!(sturm_count(&f5, 1.0 + 1e-9), 4);
    }

    #[test]
    fn eigenvalues_of_free_and_scalar() {
        let s = eigenvalues(&free_matrix(5).unwrap()).unwrap();
        let expected = [-SQRT3, -1.0, 0.0, 1.0, SQRT3];
        for (a, b) in s.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-10);
        }
        let one = JacobiMatrix::new(vec![3.0], vec![]).unwrap();
        assert!((eigenvalues(&one).unwrap().values()[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn counterexample_spectrum() {
        let b = [-1.11542462377894, 0.527281667822498, 0.702345226288011];
        let s = eigenvalues(&schrodinger_matrix(5, &b).unwrap()).unwrap();
        let expected = [-SQRT3, -1.25874960534751, 0.0, 1.0, 2.10500268324796];
        for (a, e) in s.values().iter().zip(expected) {
            assert!((a - e).abs() < 1e-6, "{a} vs {e}");
        }
    }

    #[test]
    fn spectrum_rejects_unsorted() {
        assert!(Spectrum::new(vec![1.0, 1.0]).is_err());
        assert!(Spectrum::new(vec![2.0, 1.0]).is_err());
        assert!(Spectrum::new(vec![1.0, 2.0]).is_ok());
    }
}
