//! The base field `F_q`, `q = p^e` odd, with `e <= 3`.
//!
//! Elements are indices into the canonical enumeration: the coefficient
//! vector `(c_0, .., c_{e-1})` of `c_0 + c_1 y + .. ` read as a base-`p` number
//! with `c_0` most significant. Arithmetic goes through precomputed tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

const MAX_Q: u32 = 1024;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// User-facing description of a field: characteristic, degree and an optional
/// monic modulus given as low-to-high coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> usize {
    1
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: None }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    psi: Vec<Scalar>,
    square: Vec<bool>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn eval_mod_p(poly: &[u32], x: u32, p: u32) -> u32 {
    poly.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
}

/// Monic polynomials of degree <= 3 are irreducible iff they have no root.
fn irreducible_small(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    deg == 1 || (0..p).all(|x| eval_mod_p(poly, x, p) != 0)
}

/// First monic irreducible polynomial of degree `e` in lexicographic order of
/// its lower coefficients.
pub fn default_modulus(p: u32, e: usize) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e as u32);
    for n in 0..count {
        let mut poly = vec![0u32; e + 1];
        let mut rest = n;
        for c in poly.iter_mut().take(e) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        poly[e] = 1;
        if irreducible_small(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(&FieldSpec::prime(p))
    }

    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let FieldSpec { p, e, .. } = *spec;
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidField(format!("p = {p} must be an odd prime")));
        }
        if !(1..=3).contains(&e) {
            return Err(Error::InvalidField(format!("degree e = {e} must be 1, 2 or 3")));
        }
        let q = (p as u64).pow(e as u32);
        if q > MAX_Q as u64 {
            return Err(Error::InvalidField(format!("q = {q} exceeds the table limit {MAX_Q}")));
        }
        let q = q as u32;
        let modulus = match &spec.modulus {
            Some(m) => m.clone(),
            None => default_modulus(p, e),
        };
        if modulus.len() != e + 1 || modulus[e] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} must be monic of degree {e} with coefficients below {p}"
            )));
        }
        if !irreducible_small(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }

        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            trace: Vec::new(),
            psi: Vec::new(),
            square: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let coeffs: Vec<Vec<u32>> = (0..q as u32).map(|i| self.coeffs(Fq(i))).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                let sum: Vec<u32> = coeffs[i].iter().zip(&coeffs[j]).map(|(a, b)| (a + b) % self.p).collect();
                self.add[i * q + j] = self.from_coeffs(&sum).0;
                self.mul[i * q + j] = self.from_coeffs(&self.poly_mul_mod(&coeffs[i], &coeffs[j])).0;
            }
        }
        self.neg = (0..q).map(|i| (0..q).find(|&j| self.add[i * q + j] == 0).unwrap() as u32).collect();
        let one = self.one().0;
        self.inv = (0..q)
            .map(|i| if i == 0 { 0 } else { (1..q).find(|&j| self.mul[i * q + j] == one).unwrap() as u32 })
            .collect();
        self.trace = (0..q as u32)
            .map(|i| {
                // t + t^p + .. + t^{p^{e-1}} lies in the prime field
                let mut acc = Fq::ZERO;
                let mut frob = Fq(i);
                for _ in 0..self.e {
                    acc = self.add(acc, frob);
                    frob = self.pow(frob, self.p as u64);
                }
                debug_assert!(self.coeffs(acc)[1..].iter().all(|&c| c == 0));
                self.coeffs(acc)[0]
            })
            .collect();
        self.psi = self
            .trace
            .iter()
            .map(|&t| scalar::root_of_unity(self.p as u64, t as i64).unwrap())
            .collect();
        self.square = vec![false; q];
        for i in 1..q {
            self.square[self.mul[i * q + i] as usize] = true;
        }
    }

    fn poly_mul_mod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let e = self.e;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce with y^e = -(m_0 + .. + m_{e-1} y^{e-1})
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in self.modulus.iter().take(e).enumerate() {
                let idx = k - e + j;
                prod[idx] = (prod[idx] + (p - c) * mj as u64) % p;
            }
        }
        prod.truncate(e);
        prod.into_iter().map(|c| c as u32).collect()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, e: self.e, modulus: Some(self.modulus.clone()) }
    }

    /// Coefficients `(c_0, .., c_{e-1})` of an element.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let mut out = vec![0; self.e];
        let mut rest = a.0;
        for c in out.iter_mut().rev() {
            *c = rest % self.p;
            rest /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fq {
        Fq(coeffs.iter().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u32;
        let mut coeffs = vec![0; self.e];
        coeffs[0] = r;
        self.from_coeffs(&coeffs)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.index() * self.q as usize + b.index()])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::NotInvertible("0 in F_q".into()));
        }
        Ok(Fq(self.inv[a.index()]))
    }

    pub fn pow(&self, a: Fq, mut n: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Absolute trace `Tr_{F_q/F_p}` as a residue in `[0, p)`.
    pub fn trace(&self, a: Fq) -> u32 {
        self.trace[a.index()]
    }

    /// Canonical nontrivial additive character `t -> exp(2πi Tr(t)/p)`.
    #[inline]
    pub fn psi(&self, a: Fq) -> Scalar {
        self.psi[a.index()]
    }

    pub fn is_square(&self, a: Fq) -> Result<bool> {
        if a.0 == 0 {
            return Err(Error::ZeroCharacter);
        }
        Ok(self.square[a.index()])
    }

    /// The quadratic character `±1` on `F_q^×`.
    pub fn quadratic_character(&self, a: Fq) -> Result<i8> {
        Ok(if self.is_square(a)? { 1 } else { -1 })
    }

    pub fn display(&self, a: Fq) -> String {
        if self.e == 1 {
            a.0.to_string()
        } else {
            format!("{:?}", self.coeffs(a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{approx_equal, root_of_unity, sqrt_nonneg_int, DEFAULT_TOLERANCE, I};

    fn f9() -> FiniteField {
        FiniteField::new(&FieldSpec { p: 3, e: 2, modulus: Some(vec![1, 0, 1]) }).unwrap()
    }

    #[test]
    fn f3_arithmetic() {
        let f = FiniteField::prime(3).unwrap();
        assert_eq!(f.inv(Fq(2)).unwrap(), Fq(2));
        assert_eq!(f.add(Fq(1), Fq(2)), Fq(0));
        assert!(f.inv(Fq(0)).is_err());
    }

    #[test]
    fn f9_x_squared_is_minus_one() {
        let f = f9();
        let x = f.from_coeffs(&[0, 1]);
        assert_eq!(f.mul(x, x), f.from_int(-1));
        assert_eq!(f.coeffs(f.mul(x, x)), vec![2, 0]);
    }

    #[test]
    fn enumeration() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.elements().collect::<Vec<_>>(), vec![Fq(0), Fq(1), Fq(2)]);
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(f5.elements().map(|a| a.0).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        let f = f9();
        let mut all: Vec<_> = f.elements().map(|a| f.coeffs(a)).collect();
        assert_eq!(all.len(), 9);
        let sorted = all.clone();
        all.dedup();
        assert_eq!(all.len(), 9);
        let mut check = sorted.clone();
        check.sort();
        assert_eq!(check, sorted, "canonical order is lexicographic");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FiniteField::prime(2).is_err());
        assert!(FiniteField::prime(9).is_err());
        assert!(FiniteField::new(&FieldSpec { p: 3, e: 2, modulus: Some(vec![2, 0, 1]) }).is_err());
        assert!(FiniteField::new(&FieldSpec { p: 3, e: 4, modulus: None }).is_err());
    }

    #[test]
    fn f3_character() {
        let f = FiniteField::prime(3).unwrap();
        assert_eq!(f.psi(Fq(0)), crate::scalar::ONE);
        assert_eq!(f.psi(Fq(1)), root_of_unity(3, 1).unwrap());
        let gauss: Scalar = f.elements().map(|t| f.psi(f.mul(t, t))).sum();
        assert!(approx_equal(gauss, I * sqrt_nonneg_int(3), DEFAULT_TOLERANCE));
    }

    #[test]
    fn squares() {
        let f3 = FiniteField::prime(3).unwrap();
        assert!(f3.is_square(Fq(1)).unwrap());
        assert!(!f3.is_square(Fq(2)).unwrap());
        assert!(f3.is_square(Fq(0)).is_err());
        let f5 = FiniteField::prime(5).unwrap();
        assert!(f5.is_square(Fq(4)).unwrap());
    }

    fn all_fields() -> Vec<FiniteField> {
        let mut out: Vec<_> = [3, 5, 7, 11].iter().map(|&p| FiniteField::prime(p).unwrap()).collect();
        out.push(f9());
        out.push(FiniteField::new(&FieldSpec { p: 3, e: 3, modulus: None }).unwrap());
        out.push(FiniteField::new(&FieldSpec { p: 5, e: 2, modulus: None }).unwrap());
        out
    }

    #[test]
    fn character_orthogonality() {
        for f in all_fields() {
            for a in f.elements().skip(1) {
                let s: Scalar = f.elements().map(|t| f.psi(f.mul(a, t))).sum();
                assert!(s.norm() <= DEFAULT_TOLERANCE, "q = {}", f.q());
            }
        }
    }

    #[test]
    fn psi_is_additive() {
        for f in all_fields() {
            for s in f.elements() {
                for t in f.elements() {
                    assert!(approx_equal(f.psi(f.add(s, t)), f.psi(s) * f.psi(t), 1e-12));
                }
            }
        }
    }

    #[test]
    fn half_the_units_are_squares() {
        for f in all_fields() {
            let count = f.elements().skip(1).filter(|&t| f.is_square(t).unwrap()).count();
            assert_eq!(count as u32, (f.q() - 1) / 2);
            for s in f.elements().skip(1) {
                for t in f.elements().skip(1) {
                    let lhs = f.quadratic_character(f.mul(s, t)).unwrap();
                    let rhs = f.quadratic_character(s).unwrap() * f.quadratic_character(t).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }
}
