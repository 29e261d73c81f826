//! Eigenvalues of Hermitian matrices by cyclic complex Jacobi rotations.

use num_complex::Complex;
use num_traits::Zero;

use super::OperatorMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the Hermitian part `(A + A†)/2`, in ascending order.
pub fn hermitian_eigenvalues<T: Scalar>(a: &OperatorMatrix<T>) -> Result<Vec<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let half = T::lit(0.5);
    let mut m: Vec<Complex<T>> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (a.get(i, j) + a.get(j, i).conj()) * half
        })
        .collect();

    let total: T = m.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    let threshold = T::epsilon() * T::epsilon() * total;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + m[p * n + q].norm_sqr();
            }
        }
        if off <= threshold || off.is_zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence);
    }

    let mut eig: Vec<T> = (0..n).map(|i| m[i * n + i].re).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(eig)
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eigenvalue<T: Scalar>(a: &OperatorMatrix<T>) -> Result<T> {
    Ok(hermitian_eigenvalues(a)?[0])
}

// Annihilates m[p][q] with the unitary diag-phase-then-rotation V, m <- V† m V.
fn rotate<T: Scalar>(m: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let g = m[p * n + q];
    let ag = g.norm();
    if ag.is_zero() {
        return;
    }
    let phase = (g / ag).conj();
    let two = T::lit(2.0);
    let theta = (m[q * n + q].re - m[p * n + p].re) / (two * ag);
    let t = if theta.is_zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let v_qp = phase * (-s);
    let v_qq = phase * c;
    for k in 0..n {
        let kp = m[k * n + p];
        let kq = m[k * n + q];
        m[k * n + p] = kp * c + kq * v_qp;
        m[k * n + q] = kp * s + kq * v_qq;
    }
    let (cv_qp, cv_qq) = (v_qp.conj(), v_qq.conj());
    for k in 0..n {
        let pk = m[p * n + k];
        let qk = m[q * n + k];
        m[p * n + k] = pk * c + qk * cv_qp;
        m[q * n + k] = pk * s + qk * cv_qq;
    }
    m[p * n + q] = Complex::zero();
    m[q * n + p] = Complex::zero();
    m[p * n + p].im = T::zero();
    m[q * n + q].im = T::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn three_by_three_closed_form() {
        // [[1, i, i], [-i, 1, i], [-i, -i, 1]] has eigenvalues 1 - √3, 1, 1 + √3
        let a = OperatorMatrix::<f64>::from_rows(&[
            vec![c(1., 0.), c(0., 1.), c(0., 1.)],
            vec![c(0., -1.), c(1., 0.), c(0., 1.)],
            vec![c(0., -1.), c(0., -1.), c(1., 0.)],
        ])
        .unwrap();
        let e = hermitian_eigenvalues(&a).unwrap();
        let r3 = 3f64.sqrt();
        for (got, want) in e.iter().zip([1. - r3, 1., 1. + r3]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn diagonal_and_scalar() {
        let d = OperatorMatrix::diagonal(&[c(3., 0.), c(-1., 0.), c(2., 0.)]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![-1., 2., 3.]);
        let s = OperatorMatrix::scalar(c(0.25, 0.));
        assert_eq!(min_eigenvalue(&s).unwrap(), 0.25);
    }

    #[test]
    fn rejects_rectangular() {
        assert!(hermitian_eigenvalues(&OperatorMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
