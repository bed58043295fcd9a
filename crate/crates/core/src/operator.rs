//! Dense complex operator matrices.
//!
//! Convention: column `j` of an operator is the image of the `j`-th basis
//! vector, so `M[i][j] = (O δ_j)(i)`.

use nalgebra::DMatrix;

use crate::scalar::{Scalar, ONE, ZERO};

pub type Operator = DMatrix<Scalar>;

pub fn identity(n: usize) -> Operator {
    DMatrix::identity(n, n)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_deviation(a: &Operator, b: &Operator) -> f64 {
    assert_eq!(a.shape(), b.shape(), "operator shapes differ");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Deviation of `O^† O` from the identity.
pub fn unitarity_deviation(o: &Operator) -> f64 {
    max_deviation(&(o.adjoint() * o), &identity(o.ncols()))
}

/// The scalar `λ` minimizing `‖p - λ r‖_F`, and the largest entry of the
/// remaining difference.
pub fn fit_scalar(p: &Operator, r: &Operator) -> (Scalar, f64) {
    let num: Scalar = r.iter().zip(p.iter()).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = r.iter().map(|x| x.norm_sqr()).sum();
    let lambda = if den == 0.0 { ZERO } else { num / den };
    (lambda, max_deviation(p, &(r * lambda)))
}

pub fn trace(o: &Operator) -> Scalar {
    o.diagonal().iter().sum()
}

/// Whether the operator is a monomial matrix: one nonzero per row and column.
pub fn is_monomial(o: &Operator, tol: f64) -> bool {
    let nonzero = |x: &Scalar| x.norm() > tol;
    o.row_iter().all(|r| r.iter().filter(|x| nonzero(x)).count() == 1)
        && o.column_iter().all(|c| c.iter().filter(|x| nonzero(x)).count() == 1)
}

pub fn is_diagonal(o: &Operator, tol: f64) -> bool {
    o.iter().enumerate().all(|(k, x)| k % (o.nrows() + 1) == 0 || x.norm() <= tol)
}

/// Whether every nonzero entry is 1.
pub fn is_permutation(o: &Operator, tol: f64) -> bool {
    is_monomial(o, tol) && o.iter().all(|x| x.norm() <= tol || (x - ONE).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::I;

    #[test]
    fn fit_recovers_scalar() {
        let r = Operator::from_fn(3, 3, |i, j| Scalar::new(i as f64, j as f64 + 1.0));
        let p = &r * (I * 2.0);
        let (lambda, residual) = fit_scalar(&p, &r);
        assert!((lambda - I * 2.0).norm() < 1e-12);
        assert!(residual < 1e-12);
    }

    #[test]
    fn shapes() {
        let mut p = identity(3);
        assert!(is_permutation(&p, 1e-12));
        assert!(is_diagonal(&p, 1e-12));
        p[(0, 1)] = ONE;
        assert!(!is_monomial(&p, 1e-12));
        assert!(!is_diagonal(&p, 1e-12));
        assert!(unitarity_deviation(&identity(4)) < 1e-15);
    }
}
