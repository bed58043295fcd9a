use super::{InvolutiveRing, Mat, MatrixRing};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};

/// An element `(x_1, x_2)` of the involutive double.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pair(pub Mat, pub Mat);

/// `R ⊕ R` for `R = M(r, F_q)`, multiplied componentwise, with
/// `(x_1, x_2)* = (x_2^T, x_1^T)`; the transpose is the anti-isomorphism
/// between the two factors.
#[derive(Clone, Debug)]
pub struct Doubling {
    base: MatrixRing,
}

impl Doubling {
    pub fn new(base: MatrixRing) -> Self {
        Doubling { base }
    }

    pub fn base(&self) -> &MatrixRing {
        &self.base
    }
}

impl InvolutiveRing for Doubling {
    type Elem = Pair;

    fn field(&self) -> &FiniteField {
        self.base.field()
    }

    fn dim(&self) -> usize {
        2 * self.base.dim()
    }

    fn coords(&self, a: &Pair) -> Vec<Fq> {
        let mut c = a.0 .0.clone();
        c.extend_from_slice(&a.1 .0);
        c
    }

    fn from_coords(&self, coords: &[Fq]) -> Pair {
        let (x, y) = coords.split_at(self.base.dim());
        Pair(Mat(x.to_vec()), Mat(y.to_vec()))
    }

    fn zero(&self) -> Pair {
        Pair(self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Pair {
        Pair(self.base.one(), self.base.one())
    }

    fn add(&self, a: &Pair, b: &Pair) -> Pair {
        Pair(self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }

    fn neg(&self, a: &Pair) -> Pair {
        Pair(self.base.neg(&a.0), self.base.neg(&a.1))
    }

    fn mul(&self, a: &Pair, b: &Pair) -> Pair {
        Pair(self.base.mul(&a.0, &b.0), self.base.mul(&a.1, &b.1))
    }

    fn star(&self, a: &Pair) -> Pair {
        Pair(self.base.transpose(&a.1), self.base.transpose(&a.0))
    }

    fn is_unit(&self, a: &Pair) -> bool {
        self.base.is_unit(&a.0) && self.base.is_unit(&a.1)
    }

    fn inv(&self, a: &Pair) -> Result<Pair> {
        match (self.base.inv(&a.0), self.base.inv(&a.1)) {
            (Ok(x), Ok(y)) => Ok(Pair(x, y)),
            _ => Err(Error::NotInvertible(self.format(a))),
        }
    }

    fn is_central(&self, a: &Pair) -> bool {
        self.base.is_central(&a.0) && self.base.is_central(&a.1)
    }

    fn scalar(&self, t: Fq) -> Pair {
        Pair(self.base.scalar(t), self.base.scalar(t))
    }

    fn format(&self, a: &Pair) -> String {
        format!("({}, {})", self.base.format(&a.0), self.base.format(&a.1))
    }

    fn describe(&self) -> String {
        format!("D({})", self.base.describe())
    }
}
