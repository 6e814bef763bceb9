mod common;

use ambarzumian::matrix::{charpoly_with_derivative, free_eigenvalue};
use ambarzumian::system::b_var;
use ambarzumian::{
    charpoly_eval, eigenvalues, free_matrix, free_spectrum, schrodinger_matrix, sturm_count, symbolic_charpoly,
    Error, JacobiMatrix,
};
use common::{dense_charpoly, dense_eigenvalues, random_jacobi, rng};
use rand::Rng;
use std::collections::HashMap;

#[test]
fn charpoly_matches_dense_determinant() {
    let mut r = rng(7);
    for _ in 0..100 {
        let j = random_jacobi(&mut r, 6);
        let x: f64 = r.random_range(-4.0..4.0);
        let want = dense_charpoly(&j, x);
        let got = charpoly_eval(&j, x);
        let scale = want.abs().max(1.0);
        assert!((got - want).abs() <= 1e-9 * scale, "{j:?} at {x}: {got} vs {want}");
    }
}

#[test]
fn derivative_matches_central_difference() {
    let mut r = rng(8);
    for _ in 0..50 {
        let j = random_jacobi(&mut r, 6);
        let x: f64 = r.random_range(-4.0..4.0);
        let h = 1e-6;
        let fd = (charpoly_eval(&j, x + h) - charpoly_eval(&j, x - h)) / (2.0 * h);
        let (_, d) = charpoly_with_derivative(&j, x);
        assert!((d - fd).abs() <= 1e-5 * fd.abs().max(1.0), "{d} vs {fd}");
    }
}

#[test]
fn eigenvalues_match_dense_eigensolver() {
    let mut r = rng(9);
    for _ in 0..100 {
        let j = random_jacobi(&mut r, 8);
        let ours = eigenvalues(&j).unwrap();
        for (a, b) in ours.values().iter().zip(dense_eigenvalues(&j)) {
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }
}

#[test]
fn spectral_identities() {
    let mut r = rng(10);
    for _ in 0..100 {
        let j = random_jacobi(&mut r, 8);
        let s = eigenvalues(&j).unwrap();
        let v = s.values();
        assert!((v.iter().sum::<f64>() - j.trace()).abs() <= 1e-9);
        assert!((v.iter().map(|x| x * x).sum::<f64>() - j.frobenius_sq()).abs() <= 1e-9 * j.frobenius_sq().max(1.0));
        assert!(v.windows(2).all(|w| w[0] < w[1]));

        let neg = eigenvalues(&j.negated_diagonal()).unwrap();
        // Negating the diagonal maps lambda_i to -lambda_{n+1-i}.
        for (a, b) in v.iter().zip(neg.values().iter().rev()) {
            assert!((a + b).abs() <= 1e-9);
        }

        if j.n() >= 2 {
            let minor = eigenvalues(&j.leading(j.n() - 1).unwrap()).unwrap();
            for (k, mu) in minor.values().iter().enumerate() {
                assert!(v[k] <= mu + 1e-9 && *mu <= v[k + 1] + 1e-9, "interlacing at {k}");
            }
        }
    }
}

#[test]
fn sturm_count_is_monotone_and_counts_eigenvalues() {
    let mut r = rng(11);
    for _ in 0..50 {
        let j = random_jacobi(&mut r, 7);
        let s = eigenvalues(&j).unwrap();
        let (lo, hi) = j.gershgorin_bounds();
        assert_eq!(sturm_count(&j, lo - 1.0), 0);
        assert_eq!(sturm_count(&j, hi + 1.0), j.n());
        let mut last = 0;
        for k in 0..=200 {
            let x = lo - 1.0 + (hi - lo + 2.0) * k as f64 / 200.0;
            let c = sturm_count(&j, x);
            assert!(c >= last);
            last = c;
            let below = s.values().iter().filter(|&&l| l < x - 1e-9).count();
            let at_most = s.values().iter().filter(|&&l| l < x + 1e-9).count();
            assert!(below <= c && c <= at_most, "x={x} count={c}");
        }
    }
}

#[test]
fn free_spectrum_closed_form() {
    let s3 = 3f64.sqrt();
    let five = eigenvalues(&free_matrix(5).unwrap()).unwrap();
    for (a, b) in five.values().iter().zip([-s3, -1.0, 0.0, 1.0, s3]) {
        assert!((a - b).abs() <= 1e-10);
    }
    for n in 1..=50 {
        let computed = eigenvalues(&free_matrix(n).unwrap()).unwrap();
        let closed = free_spectrum(n).unwrap();
        assert!(computed.max_deviation(&closed) <= 1e-10, "n={n}");
        for (i, v) in closed.values().iter().enumerate() {
            assert_eq!(*v, free_eigenvalue(n, i + 1).unwrap());
            assert_eq!(*v, -closed.values()[n - 1 - i], "symmetric at n={n}");
        }
    }
    assert_eq!(free_spectrum(0), Err(Error::ZeroDimension));
    assert!(free_eigenvalue(3, 4).is_err());
}

#[test]
fn symbolic_charpoly_agrees_with_recurrence() {
    let mut r = rng(12);
    for _ in 0..100 {
        let n = r.random_range(1..=6);
        let m = r.random_range(1..=n);
        let b: Vec<f64> = (0..m).map(|_| r.random_range(-3.0..3.0)).collect();
        let x: f64 = r.random_range(-3.0..3.0);
        let p = symbolic_charpoly::<f64>(n, m).unwrap();
        let mut point: HashMap<String, f64> = (1..=m).map(|k| (b_var(k), b[k - 1])).collect();
        point.insert("L".into(), x);
        let sym = p.evaluate(&point).unwrap();
        let num = charpoly_eval(&schrodinger_matrix(n, &b).unwrap(), x);
        assert!((sym - num).abs() <= 1e-9 * num.abs().max(1.0), "n={n} m={m}");
    }
}

#[test]
fn matrix_validation() {
    assert!(matches!(JacobiMatrix::new(vec![], vec![]), Err(Error::ZeroDimension)));
    assert!(matches!(
        JacobiMatrix::new(vec![0.0, 0.0], vec![]),
        Err(Error::LengthMismatch { .. })
    ));
    assert!(matches!(
        JacobiMatrix::new(vec![0.0, 0.0], vec![0.0]),
        Err(Error::NonPositiveOffDiagonal { .. })
    ));
    assert!(schrodinger_matrix(3, &[1.0; 4]).is_err());
    let s = schrodinger_matrix(4, &[0.5, -1.0]).unwrap();
    assert_eq!(s.diag(), [0.5, -1.0, 0.0, 0.0]);
    assert_eq!(s.offdiag(), [1.0; 3]);
}
