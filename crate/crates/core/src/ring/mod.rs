//! Finite rings with involution.
//!
//! Every ring here is a finite-dimensional `F_q`-algebra, so elements have a
//! coordinate vector over `F_q`. The canonical enumeration order is the
//! lexicographic order of that vector, which is also the derived `Ord` of each
//! element type.

mod doubling;
mod matrix;
mod truncated;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use doubling::{Doubling, Pair};
pub use matrix::{Mat, MatrixRing};
pub use truncated::{Involution, Poly, TruncatedPoly};

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};

/// Largest ring that may be enumerated exhaustively.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subset {
    All,
    Symmetric,
    Units,
    SymmetricUnits,
    CentralSymmetricUnits,
}

pub trait InvolutiveRing: Clone + fmt::Debug {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn field(&self) -> &FiniteField;

    /// Dimension over `F_q`.
    fn dim(&self) -> usize;

    fn coords(&self, a: &Self::Elem) -> Vec<Fq>;

    fn from_coords(&self, coords: &[Fq]) -> Self::Elem;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The involutive anti-automorphism `a -> a*`.
    fn star(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_central(&self, a: &Self::Elem) -> bool;

    /// The scalar `t · 1`.
    fn scalar(&self, t: Fq) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;

    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.scalar(self.field().from_int(n))
    }

    fn is_symmetric(&self, a: &Self::Elem) -> bool {
        self.star(a) == *a
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn size(&self) -> u128 {
        (self.field().q() as u128).pow(self.dim() as u32)
    }

    /// Position of `a` in the canonical enumeration.
    fn index_of(&self, a: &Self::Elem) -> usize {
        let q = self.field().q() as usize;
        self.coords(a).iter().fold(0, |acc, c| acc * q + c.index())
    }

    fn element_at(&self, mut index: usize) -> Self::Elem {
        let q = self.field().q() as usize;
        let mut coords = vec![Fq::ZERO; self.dim()];
        for c in coords.iter_mut().rev() {
            *c = Fq((index % q) as u32);
            index /= q;
        }
        self.from_coords(&coords)
    }

    fn satisfies(&self, a: &Self::Elem, subset: Subset) -> bool {
        match subset {
            Subset::All => true,
            Subset::Symmetric => self.is_symmetric(a),
            Subset::Units => self.is_unit(a),
            Subset::SymmetricUnits => self.is_symmetric(a) && self.is_unit(a),
            Subset::CentralSymmetricUnits => self.is_symmetric(a) && self.is_unit(a) && self.is_central(a),
        }
    }

    /// Exhaustive list of the elements in `subset`, in canonical order.
    fn enumerate(&self, subset: Subset) -> Result<Vec<Self::Elem>> {
        let size = self.size();
        if size > ENUMERATION_LIMIT {
            return Err(Error::SizeGuard { what: self.describe(), size, limit: ENUMERATION_LIMIT });
        }
        Ok((0..size as usize)
            .map(|i| self.element_at(i))
            .filter(|a| self.satisfies(a, subset))
            .collect())
    }

    /// Validates a coordinate literal and builds the element.
    fn parse_coords(&self, raw: &[i64]) -> Result<Self::Elem> {
        if raw.len() != self.dim() {
            return Err(Error::Parse(format!(
                "{} expects {} coordinates, got {}",
                self.describe(),
                self.dim(),
                raw.len()
            )));
        }
        let q = self.field().q() as i64;
        let coords: Vec<Fq> = raw.iter().map(|&c| Fq(c.rem_euclid(q) as u32)).collect();
        Ok(self.from_coords(&coords))
    }
}

/// First symmetric `s` in canonical order with `a + s c` a unit.
///
/// Requires `a* c = c* a` and that `a`, `c` generate the ring as a left ideal;
/// the latter is detected by the search coming up empty.
pub fn coprime_reduction<R: InvolutiveRing>(ring: &R, a: &R::Elem, c: &R::Elem) -> Result<R::Elem> {
    if ring.mul(&ring.star(a), c) != ring.mul(&ring.star(c), a) {
        return Err(Error::NotCoprime);
    }
    if ring.is_unit(a) {
        return Ok(ring.zero());
    }
    for s in ring.enumerate(Subset::Symmetric)? {
        let candidate = ring.add(a, &ring.mul(&s, c));
        if ring.is_unit(&candidate) {
            debug_assert!(ring.is_unit(&ring.add(a, &ring.mul(&s, c))));
            return Ok(s);
        }
    }
    Err(Error::NotCoprime)
}

/// First symmetric unit `x` with `a - x^{-1}` and `b + x` symmetric units.
pub fn symmetric_unit_shift<R: InvolutiveRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    for (name, v) in [("a", a), ("b", b)] {
        if !ring.is_symmetric(v) {
            return Err(Error::NotSymmetric(format!("{name} = {}", ring.format(v))));
        }
        if ring.is_unit(v) {
            return Err(Error::NotCoprime);
        }
    }
    for x in ring.enumerate(Subset::SymmetricUnits)? {
        let left = ring.sub(a, &ring.inv(&x)?);
        let right = ring.add(b, &x);
        if ring.satisfies(&left, Subset::SymmetricUnits) && ring.satisfies(&right, Subset::SymmetricUnits) {
            return Ok(x);
        }
    }
    Err(Error::NoShift)
}
