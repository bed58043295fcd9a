use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{InvolutiveRing, Subset};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    /// `x -> -x`
    NegateX,
    Identity,
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Involution::NegateX => f.write_str("negate_x"),
            Involution::Identity => f.write_str("identity"),
        }
    }
}

/// `a_0 + a_1 x + .. + a_{m-1} x^{m-1}` in `F_q[x]/(x^m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly(pub Vec<Fq>);

impl Poly {
    pub fn coeff(&self, i: usize) -> Fq {
        self.0[i]
    }

    pub fn constant_term(&self) -> Fq {
        self.0[0]
    }
}

/// The truncated polynomial algebra `A_m = F_q[x]/(x^m)`.
#[derive(Clone, Debug)]
pub struct TruncatedPoly {
    field: Arc<FiniteField>,
    m: usize,
    involution: Involution,
}

impl TruncatedPoly {
    pub fn new(field: Arc<FiniteField>, m: usize, involution: Involution) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidRing("m must be positive".into()));
        }
        Ok(TruncatedPoly { field, m, involution })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    pub fn field_arc(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Whether the Weil constructions apply: `m` odd, and the nontrivial
    /// involution unless `m = 1`.
    pub fn check_weil(&self) -> Result<()> {
        if self.m % 2 == 1 && (self.involution == Involution::NegateX || self.m == 1) {
            Ok(())
        } else {
            Err(Error::WeilPrecondition { m: self.m, involution: self.involution.to_string() })
        }
    }

    pub fn x(&self) -> Poly {
        let mut c = vec![Fq::ZERO; self.m];
        if self.m > 1 {
            c[1] = self.field.one();
        }
        Poly(c)
    }

    /// The top coefficient `a_{m-1}`.
    pub fn trace_tr(&self, a: &Poly) -> Fq {
        a.0[self.m - 1]
    }

    /// `Q(t) = t* t`
    pub fn quadratic_form(&self, t: &Poly) -> Poly {
        self.mul(&self.star(t), t)
    }

    /// `B_Q(t, s) = t* s + t s*`
    pub fn polar_form(&self, t: &Poly, s: &Poly) -> Poly {
        self.add(&self.mul(&self.star(t), s), &self.mul(t, &self.star(s)))
    }

    /// Number of units, `(q-1) q^{m-1}`.
    pub fn unit_count(&self) -> u128 {
        let q = self.field.q() as u128;
        (q - 1) * q.pow(self.m as u32 - 1)
    }

    pub fn symmetric_units(&self) -> Result<Vec<Poly>> {
        self.enumerate(Subset::SymmetricUnits)
    }
}

impl InvolutiveRing for TruncatedPoly {
    type Elem = Poly;

    fn field(&self) -> &FiniteField {
        &self.field
    }

    fn dim(&self) -> usize {
        self.m
    }

    fn coords(&self, a: &Poly) -> Vec<Fq> {
        a.0.clone()
    }

    fn from_coords(&self, coords: &[Fq]) -> Poly {
        debug_assert_eq!(coords.len(), self.m);
        Poly(coords.to_vec())
    }

    fn zero(&self) -> Poly {
        Poly(vec![Fq::ZERO; self.m])
    }

    fn one(&self) -> Poly {
        self.scalar(self.field.one())
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        Poly(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &*self.field;
        let mut out = vec![Fq::ZERO; self.m];
        for (i, &x) in a.0.iter().enumerate() {
            if x == Fq::ZERO {
                continue;
            }
            for (j, &y) in b.0.iter().take(self.m - i).enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly(out)
    }

    fn star(&self, a: &Poly) -> Poly {
        match self.involution {
            Involution::Identity => a.clone(),
            Involution::NegateX => Poly(
                a.0.iter()
                    .enumerate()
                    .map(|(i, &c)| if i % 2 == 1 { self.field.neg(c) } else { c })
                    .collect(),
            ),
        }
    }

    /// Local ring: units are exactly the elements with nonzero constant term.
    fn is_unit(&self, a: &Poly) -> bool {
        a.0[0] != Fq::ZERO
    }

    /// Power-series inversion truncated at degree `m`.
    fn inv(&self, a: &Poly) -> Result<Poly> {
        let f = &*self.field;
        let a0_inv = f.inv(a.0[0]).map_err(|_| Error::NotInvertible(self.format(a)))?;
        let mut b = vec![Fq::ZERO; self.m];
        b[0] = a0_inv;
        for k in 1..self.m {
            let mut acc = Fq::ZERO;
            for j in 1..=k {
                acc = f.add(acc, f.mul(a.0[j], b[k - j]));
            }
            b[k] = f.neg(f.mul(a0_inv, acc));
        }
        Ok(Poly(b))
    }

    fn is_central(&self, _a: &Poly) -> bool {
        true
    }

    fn scalar(&self, t: Fq) -> Poly {
        let mut c = vec![Fq::ZERO; self.m];
        c[0] = t;
        Poly(c)
    }

    fn format(&self, a: &Poly) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Fq::ZERO)
            .map(|(i, &c)| {
                let coeff = self.field.display(c);
                match i {
                    0 => coeff,
                    1 if c == self.field.one() => "x".into(),
                    1 => format!("{coeff}x"),
                    _ if c == self.field.one() => format!("x^{i}"),
                    _ => format!("{coeff}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn describe(&self) -> String {
        format!("A_{} over F_{} ({})", self.m, self.field.q(), self.involution)
    }
}
