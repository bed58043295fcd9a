//! The bundle of fibers `E_L` over the Lagrangians of `W`, its group action
//! `τ`, the connection `γ`, geometric Gauss sums and the multiplier.
//!
//! Fiber functions are dense tables over `W`. Operators between fibers are
//! also available as matrices in the coset bases `f_r(r + ζ) = χ(r, ζ)`,
//! where `r` runs over the minimal coset representatives. Every coset basis
//! vector has squared norm `|L| = q^m`, the same for every fiber, so these
//! matrices are unitary exactly when the fiber maps are.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{self, StarMatrix};
use crate::operator::{self, Operator};
use crate::report::Check;
use crate::ring::{Poly, TruncatedPoly};
use crate::scalar::{Scalar, ONE, ZERO};
use crate::symplectic::{LagrangianTable, SelfDualModule};

/// The symplectic space together with its Lagrangian table.
#[derive(Debug)]
pub struct Bundle {
    pub module: SelfDualModule,
    pub table: LagrangianTable,
}

impl Bundle {
    pub fn new(ring: TruncatedPoly) -> Result<Self> {
        let module = SelfDualModule::new(ring)?;
        let table = LagrangianTable::enumerate(&module);
        Ok(Bundle { module, table })
    }

    pub fn from_parts(module: SelfDualModule, table: LagrangianTable) -> Self {
        Bundle { module, table }
    }

    pub fn base_point(&self) -> usize {
        self.table.base_point(&self.module)
    }

    /// `|L ∩ L'|`
    pub fn intersection(&self, l: usize, lp: usize) -> usize {
        let (a, b) = (&self.table.get(l).elements, &self.table.get(lp).elements);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// `g·L`
    pub fn act(&self, g: &StarMatrix<Poly>, l: usize) -> Result<usize> {
        self.table.act(&self.module, g, l)
    }

    pub fn fiber_basis(&self, l: usize) -> Vec<FiberFunction> {
        let lag = self.table.get(l);
        let cosets = lag.cosets(&self.module);
        (0..cosets.reps.len())
            .map(|k| {
                let mut values = vec![ZERO; self.module.size_w()];
                for &z in &lag.elements {
                    let r = cosets.reps[k];
                    values[self.module.add(r, z)] = self.module.chi(r, z);
                }
                FiberFunction { lagrangian: l, values }
            })
            .collect()
    }

    /// Exhaustive covariance test `f(w+ζ) = χ(w,ζ) f(w)`.
    pub fn is_in_fiber(&self, f: &FiberFunction, l: usize, tol: f64) -> bool {
        let lag = self.table.get(l);
        (0..self.module.size_w()).all(|w| {
            lag.elements.iter().all(|&z| {
                let lhs = f.values[self.module.add(w, z)];
                (lhs - self.module.chi(w, z) * f.values[w]).norm() <= tol
            })
        })
    }

    /// `(τ_g f)(w) = f(w.g)`, a function in the fiber over `g·L`.
    pub fn tau(&self, g: &StarMatrix<Poly>, f: &FiberFunction) -> Result<FiberFunction> {
        let target = self.act(g, f.lagrangian)?;
        let perm = self.module.action_permutation(g);
        Ok(FiberFunction { lagrangian: target, values: perm.iter().map(|&v| f.values[v]).collect() })
    }

    fn gamma_norm(&self, lp: usize, l: usize) -> f64 {
        let size = self.table.get(l).len() * self.intersection(l, lp);
        1.0 / (size as f64).sqrt()
    }

    /// `γ_{L',L} f (w) = (|L||L∩L'|)^{-1/2} Σ_{ζ'∈L'} conj χ(w,ζ') f(w+ζ')`
    pub fn gamma(&self, lp: usize, f: &FiberFunction) -> FiberFunction {
        let norm = self.gamma_norm(lp, f.lagrangian);
        let lag = self.table.get(lp);
        let values = (0..self.module.size_w())
            .map(|w| {
                let s: Scalar = lag
                    .elements
                    .iter()
                    .map(|&z| self.module.chi(w, z).conj() * f.values[self.module.add(w, z)])
                    .sum();
                s * norm
            })
            .collect();
        FiberFunction { lagrangian: lp, values }
    }

    /// Coordinates of `f` in the coset basis: its values at the representatives.
    pub fn coset_coordinates(&self, f: &FiberFunction) -> Vec<Scalar> {
        let cosets = self.table.get(f.lagrangian).cosets(&self.module);
        cosets.reps.iter().map(|&r| f.values[r]).collect()
    }

    /// Value of the coset basis function `f_rep` at `rep + offset`.
    fn basis_value(&self, l: usize, w: usize) -> (usize, Scalar) {
        let cosets = self.table.get(l).cosets(&self.module);
        let k = cosets.coset_of[w] as usize;
        (k, self.module.chi(cosets.reps[k], cosets.offset[w] as usize))
    }

    /// Matrix of `γ_{L',L}: E_L -> E_{L'}` in the coset bases.
    pub fn gamma_matrix(&self, lp: usize, l: usize) -> Operator {
        let n = self.module.size_w() / self.table.get(l).len();
        let norm = self.gamma_norm(lp, l);
        let target = self.table.get(lp);
        let reps = &target.cosets(&self.module).reps;
        let mut out = Operator::zeros(n, n);
        for (j, &r) in reps.iter().enumerate() {
            for &z in &target.elements {
                let (k, value) = self.basis_value(l, self.module.add(r, z));
                out[(j, k)] += self.module.chi(r, z).conj() * value * norm;
            }
        }
        out
    }

    /// Matrix of `τ_g: E_L -> E_{g·L}` in the coset bases, with `g·L`.
    pub fn tau_matrix(&self, g: &StarMatrix<Poly>, l: usize) -> Result<(usize, Operator)> {
        let target = self.act(g, l)?;
        let n = self.module.size_w() / self.table.get(l).len();
        let reps = &self.table.get(target).cosets(&self.module).reps;
        let mut out = Operator::zeros(n, n);
        for (j, &r) in reps.iter().enumerate() {
            let (k, value) = self.basis_value(l, self.module.act_index(g, r));
            out[(j, k)] = value;
        }
        Ok((target, out))
    }

    /// `ρ^L_g = γ_{L, g·L} ∘ τ_g` on `E_L`.
    pub fn contraction(&self, g: &StarMatrix<Poly>, l: usize) -> Result<Operator> {
        let (gl, tau) = self.tau_matrix(g, l)?;
        Ok(self.gamma_matrix(l, gl) * tau)
    }

    /// `S_W(L; L', L'') = Σ_{ζ ∈ L∩(L'+L'')} χ(ζ', ζ'')`, each `ζ` split as
    /// `ζ' + ζ''` with `ζ'` the first element of `L'` (in the given scan
    /// direction) for which `ζ - ζ' ∈ L''`.
    pub fn geometric_gauss_sum_scan(&self, l: usize, lp: usize, lpp: usize, reverse: bool) -> Scalar {
        let (lag, first, second) = (self.table.get(l), self.table.get(lp), self.table.get(lpp));
        let mut total = ZERO;
        for &z in &lag.elements {
            let split = |&zp: &usize| {
                let rest = self.module.sub(z, zp);
                second.contains(rest).then_some((zp, rest))
            };
            let found =
                if reverse { first.elements.iter().rev().find_map(split) } else { first.elements.iter().find_map(split) };
            if let Some((zp, zpp)) = found {
                total += self.module.chi(zp, zpp);
            }
        }
        total
    }

    pub fn geometric_gauss_sum(&self, l: usize, lp: usize, lpp: usize) -> Scalar {
        self.geometric_gauss_sum_scan(l, lp, lpp, false)
    }

    /// `μ(L'',L',L) = sqrt(|L''∩L'| / (|L∩L''||L'∩L||L|)) S_W(L; L', L'')`,
    /// the scalar in `γ_{L'',L'} γ_{L',L} = μ γ_{L'',L}`.
    pub fn multiplier(&self, lpp: usize, lp: usize, l: usize) -> Scalar {
        let num = self.intersection(lpp, lp) as f64;
        let den = (self.intersection(l, lpp) * self.intersection(lp, l) * self.table.get(l).len()) as f64;
        self.geometric_gauss_sum(l, lp, lpp) * (num / den).sqrt()
    }

    /// Checks the connection properties a) to e), well-definedness of `S_W`
    /// and independence of the base point.
    pub fn verify_connection(&self, mode: Mode, tol: f64) -> Result<Vec<Check>> {
        let n = self.table.len();
        let mut rng = ChaCha8Rng::seed_from_u64(mode.seed());
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let triples: Vec<(usize, usize, usize)> = match mode {
            Mode::Exhaustive => (0..n).flat_map(|a| pairs.iter().map(move |&(b, c)| (a, b, c))).collect(),
            Mode::Sampled { samples, .. } => {
                (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
            }
        };
        let elements = self.group_sample(mode, &mut rng)?;

        let gammas: Vec<Operator> = pairs.iter().map(|&(lp, l)| self.gamma_matrix(lp, l)).collect();
        let gm = |lp: usize, l: usize| &gammas[lp * n + l];
        let pair_name = |lp: usize, l: usize| move || format!("L'={lp}, L={l}");

        let mut adjoint = Check::new("a) adjoint: <γ_{L',L} f, h> = <f, γ_{L,L'} h>", tol);
        let mut unitary = Check::new("b) isometry of γ_{L',L}", tol);
        let mut inverse = Check::new("c) γ_{L,L'} γ_{L',L} = id", tol);
        let mut identity = Check::new("c) γ_{L,L} = id", tol);
        let mut printed = Check::new("c) printed order γ_{L',L} γ_{L',L} = id, composable only for L' = L", tol);
        for &(lp, l) in &pairs {
            adjoint.add(pair_name(lp, l), operator::max_deviation(&gm(l, lp).adjoint(), gm(lp, l)));
            unitary.add(pair_name(lp, l), operator::unitarity_deviation(gm(lp, l)));
            let size = gm(lp, l).ncols();
            inverse.add(pair_name(lp, l), operator::max_deviation(&(gm(l, lp) * gm(lp, l)), &operator::identity(size)));
            if lp == l {
                identity.add(pair_name(l, l), operator::max_deviation(gm(l, l), &operator::identity(size)));
                printed.add(pair_name(l, l), operator::max_deviation(&(gm(l, l) * gm(l, l)), &operator::identity(size)));
            }
        }

        let mut composition = Check::new("d) γ_{L'',L'} γ_{L',L} = μ(L'',L',L) γ_{L'',L}", tol);
        let mut fitted = Check::new("d) multiplier equals the fitted composition scalar", tol);
        let mut modulus = Check::new("d) |μ(L'',L',L)| = 1", tol);
        let mut well_defined = Check::new("S_W independent of the decomposition scan order", tol);
        for &(l, lp, lpp) in &triples {
            let name = move || format!("L''={lpp}, L'={lp}, L={l}");
            let lhs = gm(lpp, lp) * gm(lp, l);
            let rhs = gm(lpp, l);
            let mu = self.multiplier(lpp, lp, l);
            composition.add(name, operator::max_deviation(&lhs, &(rhs * mu)));
            let (lambda, _) = operator::fit_scalar(&lhs, rhs);
            fitted.add(name, (lambda - mu).norm());
            modulus.add(name, (mu.norm() - 1.0).abs());
            let forward = self.geometric_gauss_sum_scan(l, lp, lpp, false);
            let backward = self.geometric_gauss_sum_scan(l, lp, lpp, true);
            well_defined.add(name, (forward - backward).norm());
        }

        let mut equivariance = Check::new("e) τ_g γ_{L',L} = γ_{gL',gL} τ_g", tol);
        let mut intertwiner = Check::new("γ_{L',L} ρ^L_g γ_{L,L'} = λ ρ^{L'}_g with |λ| = 1", tol);
        for (gi, g) in elements.iter().enumerate() {
            let taus: Vec<(usize, Operator)> = (0..n).map(|l| self.tau_matrix(g, l)).collect::<Result<_>>()?;
            for &(lp, l) in &pairs {
                let (glp, tau_lp) = &taus[lp];
                let (gl, tau_l) = &taus[l];
                let lhs = tau_lp * gm(lp, l);
                let rhs = gm(*glp, *gl) * tau_l;
                equivariance.add(|| format!("g#{gi}, L'={lp}, L={l}"), operator::max_deviation(&lhs, &rhs));

                let rho_l = gm(l, *gl) * tau_l;
                let rho_lp = gm(lp, *glp) * tau_lp;
                let conj = gm(lp, l) * rho_l * gm(l, lp);
                let (lambda, residual) = operator::fit_scalar(&conj, &rho_lp);
                intertwiner.add(|| format!("g#{gi}, L'={lp}, L={l}"), residual.max((lambda.norm() - 1.0).abs()));
            }
        }
        Ok(vec![
            adjoint,
            unitary,
            inverse,
            identity,
            printed,
            composition,
            fitted,
            modulus,
            well_defined,
            equivariance,
            intertwiner,
        ])
    }

    /// The whole group when it is small and the mode is exhaustive, otherwise
    /// `w` followed by seeded samples.
    fn group_sample(&self, mode: Mode, rng: &mut ChaCha8Rng) -> Result<Vec<StarMatrix<Poly>>> {
        let ring = self.module.ring();
        match mode {
            Mode::Exhaustive => group::enumerate_group(ring, 20_000),
            Mode::Sampled { samples, .. } => {
                let count = samples.clamp(1, 40);
                let mut out = vec![group::w(ring)];
                out.extend((1..count).map(|_| group::sample_element(ring, rng.gen())).collect::<Result<Vec<_>>>()?);
                Ok(out)
            }
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Mode {
    fn seed(self) -> u64 {
        match self {
            Mode::Exhaustive => 0,
            Mode::Sampled { seed, .. } => seed,
        }
    }
}

/// A function on `W` labelled by the Lagrangian whose fiber it should lie in.
#[derive(Clone, Debug)]
pub struct FiberFunction {
    pub lagrangian: usize,
    pub values: Vec<Scalar>,
}

impl FiberFunction {
    pub fn zero(lagrangian: usize, size_w: usize) -> Self {
        FiberFunction { lagrangian, values: vec![ZERO; size_w] }
    }

    pub fn constant(lagrangian: usize, size_w: usize) -> Self {
        FiberFunction { lagrangian, values: vec![ONE; size_w] }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// `<f,h> = Σ_w f(w) conj h(w)`
pub fn inner_product(f: &FiberFunction, h: &FiberFunction) -> Result<Scalar> {
    if f.lagrangian != h.lagrangian {
        return Err(Error::LagrangianMismatch(f.lagrangian, h.lagrangian));
    }
    Ok(f.values.iter().zip(&h.values).map(|(a, b)| a * b.conj()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::ring::{InvolutiveRing, Involution};
    use crate::scalar::{approx_equal, I};
    use crate::symplectic::WVector;
    use std::sync::Arc;

    fn bundle(q: u32, m: usize) -> Bundle {
        let inv = if m == 1 { Involution::Identity } else { Involution::NegateX };
        Bundle::new(TruncatedPoly::new(Arc::new(FiniteField::prime(q).unwrap()), m, inv).unwrap()).unwrap()
    }

    fn lag(b: &Bundle, first: i64, second: i64) -> usize {
        let r = b.module.ring();
        let v = WVector::new(r.from_int(first), r.from_int(second));
        b.table.find_generated(&b.module, &[v]).unwrap()
    }

    #[test]
    fn fiber_basis_properties() {
        for m in [1, 3] {
            let b = bundle(3, m);
            for l in 0..b.table.len() {
                let basis = b.fiber_basis(l);
                assert_eq!(basis.len(), 3usize.pow(m as u32));
                for (i, f) in basis.iter().enumerate() {
                    assert!(b.is_in_fiber(f, l, 1e-12));
                    for (j, h) in basis.iter().enumerate() {
                        let ip = inner_product(f, h).unwrap();
                        let expected = if i == j { b.table.get(l).len() as f64 } else { 0.0 };
                        assert!(approx_equal(ip, Scalar::new(expected, 0.0), 1e-9));
                    }
                }
                if m == 3 {
                    break;
                }
            }
        }
    }

    #[test]
    fn fiber_membership_examples() {
        let b = bundle(3, 1);
        let l0 = b.base_point();
        let n = b.module.size_w();
        assert!(!b.is_in_fiber(&FiberFunction::constant(l0, n), l0, 1e-9));
        assert!(b.is_in_fiber(&FiberFunction::zero(l0, n), l0, 1e-9));
        let f = FiberFunction::zero(0, n);
        assert!(matches!(inner_product(&f, &FiberFunction::zero(1, n)), Err(Error::LagrangianMismatch(0, 1))));
    }

    #[test]
    fn tau_dense_and_matrix_agree() {
        let b = bundle(3, 3);
        let r = b.module.ring();
        let id = group::identity(r);
        for seed in 0..6 {
            let g = group::sample_element(r, seed).unwrap();
            for l in [0, 5, b.base_point()] {
                let (gl, mat) = b.tau_matrix(&g, l).unwrap();
                assert!(operator::is_monomial(&mat, 1e-9));
                for (k, f) in b.fiber_basis(l).iter().enumerate().step_by(4) {
                    let t = b.tau(&g, f).unwrap();
                    assert_eq!(t.lagrangian, gl);
                    assert!(b.is_in_fiber(&t, gl, 1e-9));
                    assert!((t.norm_sqr() - f.norm_sqr()).abs() < 1e-9);
                    let coords = b.coset_coordinates(&t);
                    for (j, c) in coords.iter().enumerate() {
                        assert!(approx_equal(*c, mat[(j, k)], 1e-9));
                    }
                    let same = b.tau(&id, f).unwrap();
                    assert_eq!(same.lagrangian, l);
                    assert!(same.values.iter().zip(&f.values).all(|(x, y)| approx_equal(*x, *y, 0.0)));
                }
            }
        }
    }

    #[test]
    fn gamma_dense_and_matrix_agree() {
        let b = bundle(3, 1);
        for l in 0..b.table.len() {
            for lp in 0..b.table.len() {
                let mat = b.gamma_matrix(lp, l);
                for (k, f) in b.fiber_basis(l).iter().enumerate() {
                    let g = b.gamma(lp, f);
                    assert!(b.is_in_fiber(&g, lp, 1e-9));
                    for (j, c) in b.coset_coordinates(&g).iter().enumerate() {
                        assert!(approx_equal(*c, mat[(j, k)], 1e-9));
                    }
                    let back = b.gamma(l, &g);
                    assert!(back.values.iter().zip(&f.values).all(|(x, y)| approx_equal(*x, *y, 1e-9)));
                    if lp == l {
                        assert!(g.values.iter().zip(&f.values).all(|(x, y)| approx_equal(*x, *y, 1e-9)));
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let b = bundle(3, 1);
        let (l, lp, lpp) = (lag(&b, 0, 1), lag(&b, 1, 0), lag(&b, 1, 1));
        for x in 0..b.table.len() {
            assert!(approx_equal(b.geometric_gauss_sum(x, x, x), Scalar::new(3.0, 0.0), 1e-12));
            assert!(approx_equal(b.multiplier(x, x, x), ONE, 1e-12));
        }
        let s = b.geometric_gauss_sum(l, lp, lpp);
        assert!(approx_equal(s, -I * 3f64.sqrt(), 1e-12));
        assert!(approx_equal(b.geometric_gauss_sum(l, lpp, lp), s.conj(), 1e-12));
        // sqrt(1/3) · (-i√3)
        let mu = b.multiplier(lpp, lp, l);
        assert!(approx_equal(mu, -I, 1e-12));
        let lhs = b.gamma_matrix(lpp, lp) * b.gamma_matrix(lp, l);
        assert!(operator::max_deviation(&lhs, &(b.gamma_matrix(lpp, l) * mu)) < 1e-12);
    }

    #[test]
    fn connection_properties_m1() {
        let b = bundle(3, 1);
        for check in b.verify_connection(Mode::Exhaustive, 1e-8).unwrap() {
            assert!(check.passed(), "{:?}", check.record());
        }
    }

    #[test]
    fn connection_properties_m3_sampled() {
        let b = bundle(3, 3);
        for check in b.verify_connection(Mode::Sampled { samples: 50, seed: 3 }, 1e-8).unwrap() {
            assert!(check.passed(), "{:?}", check.record());
        }
    }
}
