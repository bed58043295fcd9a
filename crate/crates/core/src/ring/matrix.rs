use std::sync::Arc;

use super::InvolutiveRing;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::linalg;

/// Row-major `n × n` matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat(pub Vec<Fq>);

/// `M(n, F_q)` with the transpose as involution.
#[derive(Clone, Debug)]
pub struct MatrixRing {
    field: Arc<FiniteField>,
    n: usize,
}

impl MatrixRing {
    pub fn new(field: Arc<FiniteField>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("matrix size must be positive".into()));
        }
        Ok(MatrixRing { field, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field_arc(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self, a: &Mat) -> Vec<Vec<Fq>> {
        a.0.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self, a: &Mat) -> Mat {
        let n = self.n;
        Mat((0..n * n).map(|k| a.0[(k % n) * n + k / n]).collect())
    }
}

impl InvolutiveRing for MatrixRing {
    type Elem = Mat;

    fn field(&self) -> &FiniteField {
        &self.field
    }

    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn coords(&self, a: &Mat) -> Vec<Fq> {
        a.0.clone()
    }

    fn from_coords(&self, coords: &[Fq]) -> Mat {
        debug_assert_eq!(coords.len(), self.n * self.n);
        Mat(coords.to_vec())
    }

    fn zero(&self) -> Mat {
        Mat(vec![Fq::ZERO; self.n * self.n])
    }

    fn one(&self) -> Mat {
        self.scalar(self.field.one())
    }

    fn add(&self, a: &Mat, b: &Mat) -> Mat {
        Mat(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    fn neg(&self, a: &Mat) -> Mat {
        Mat(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let f = &*self.field;
        let mut out = vec![Fq::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a.0[i * n + k];
                if x == Fq::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(x, b.0[k * n + j]));
                }
            }
        }
        Mat(out)
    }

    fn star(&self, a: &Mat) -> Mat {
        self.transpose(a)
    }

    fn is_unit(&self, a: &Mat) -> bool {
        linalg::rank(&self.field, &self.rows(a)) == self.n
    }

    fn inv(&self, a: &Mat) -> Result<Mat> {
        let inv = linalg::inverse(&self.field, &self.rows(a)).ok_or_else(|| Error::NotInvertible(self.format(a)))?;
        Ok(Mat(inv.into_iter().flatten().collect()))
    }

    /// The center of a full matrix ring is the scalar matrices.
    fn is_central(&self, a: &Mat) -> bool {
        let n = self.n;
        let d = a.0[0];
        (0..n * n).all(|k| a.0[k] == if k / n == k % n { d } else { Fq::ZERO })
    }

    fn scalar(&self, t: Fq) -> Mat {
        let n = self.n;
        Mat((0..n * n).map(|k| if k / n == k % n { t } else { Fq::ZERO }).collect())
    }

    fn format(&self, a: &Mat) -> String {
        let rows: Vec<String> = self
            .rows(a)
            .iter()
            .map(|r| r.iter().map(|&c| self.field.display(c)).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }

    fn describe(&self) -> String {
        format!("M({}, F_{})", self.n, self.field.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Subset;

    fn m2() -> MatrixRing {
        MatrixRing::new(Arc::new(FiniteField::prime(3).unwrap()), 2).unwrap()
    }

    #[test]
    fn transpose_example() {
        let r = m2();
        let a = r.parse_coords(&[1, 2, 0, 1]).unwrap();
        assert_eq!(r.star(&a), r.parse_coords(&[1, 0, 2, 1]).unwrap());
    }

    #[test]
    fn unit_count_is_gl2() {
        let r = m2();
        assert_eq!(r.enumerate(Subset::Units).unwrap().len(), 48);
        assert_eq!(r.enumerate(Subset::Symmetric).unwrap().len(), 27);
        assert_eq!(r.enumerate(Subset::CentralSymmetricUnits).unwrap().len(), 2);
    }

    #[test]
    fn inverse_is_two_sided() {
        let r = m2();
        for a in r.enumerate(Subset::Units).unwrap() {
            let b = r.inv(&a).unwrap();
            assert_eq!(r.mul(&a, &b), r.one());
            assert_eq!(r.mul(&b, &a), r.one());
        }
        assert!(r.inv(&r.parse_coords(&[1, 1, 1, 1]).unwrap()).is_err());
    }
}
