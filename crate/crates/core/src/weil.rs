//! Gauss sums, the sign character, and the two constructions of the Weil
//! representation of `SL_*(2,A_m)`: from the Bruhat generators on `L²(A_m)`,
//! and by contracting the Lagrangian bundle to the fiber over `L0 = <(0,1)>`.
//!
//! Operators act on functions `A_m -> C` in the point basis, indexed by the
//! canonical order of `A_m`. The coset representatives of `L0` are the
//! vectors `(a, 0)` in the same order, so the coset basis of `E_{L0}` is the
//! point basis under `f -> f'(a) = f(a, 0)`.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::{self, BruhatForm, Cell, Generator, GeneratorSets, StarMatrix};
use crate::operator::{self, Operator};
use crate::report::{Check, Report};
use crate::ring::{InvolutiveRing, Poly, Subset, TruncatedPoly};
use crate::scalar::{Scalar, ONE, ZERO};

/// Residual above which an operator product is not a scalar multiple.
pub const COCYCLE_RESIDUAL_LIMIT: f64 = 1e-6;

/// `ψ̄ = ψ ∘ tr`
pub fn psi_bar(ring: &TruncatedPoly, a: &Poly) -> Scalar {
    ring.field().psi(ring.trace_tr(a))
}

/// `S(a) = Σ_{t ∈ A_m} ψ̄(a Q(t))` with `Q(t) = t* t`.
pub fn gauss_sum_sq(ring: &TruncatedPoly, a: &Poly) -> Result<Scalar> {
    ring.check_weil()?;
    let mut total = ZERO;
    for t in ring.enumerate(Subset::All)? {
        total += psi_bar(ring, &ring.mul(a, &ring.quadratic_form(&t)));
    }
    Ok(total)
}

/// `α(a) = S(a) / S(1)` for a symmetric unit `a`.
pub fn alpha(ring: &TruncatedPoly, a: &Poly) -> Result<Scalar> {
    if !ring.is_symmetric(a) {
        return Err(Error::NotSymmetric(ring.format(a)));
    }
    alpha_of_unit(ring, a)
}

/// The same Gauss-sum ratio for an arbitrary unit, as used by `ρ(h(t))` and
/// by the cell values of `δ`.
pub fn alpha_of_unit(ring: &TruncatedPoly, t: &Poly) -> Result<Scalar> {
    if !ring.is_unit(t) {
        return Err(Error::NotInvertible(ring.format(t)));
    }
    Ok(gauss_sum_sq(ring, t)? / gauss_sum_sq(ring, &ring.one())?)
}

/// The order-2 character of the symmetric units whose kernel is the subgroup
/// of squares of symmetric units.
pub fn sign_character(ring: &TruncatedPoly) -> Result<HashMap<Poly, i8>> {
    let units = ring.enumerate(Subset::SymmetricUnits)?;
    let squares: BTreeSet<Poly> = units.iter().map(|u| ring.mul(u, u)).collect();
    if 2 * squares.len() != units.len() {
        return Err(Error::Internal(format!(
            "squares have index {} in the symmetric units, expected 2",
            units.len() as f64 / squares.len() as f64
        )));
    }
    Ok(units.into_iter().map(|u| {
        let s = if squares.contains(&u) { 1 } else { -1 };
        (u, s)
    }).collect())
}

/// `ω = Σ_{t ∈ F_q} ψ(t²) / √q`
pub fn omega(field: &FiniteField) -> Scalar {
    let s: Scalar = field.elements().map(|t| field.psi(field.mul(t, t))).sum();
    s / (field.q() as f64).sqrt()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Bruhat,
    Geometric,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleMethod {
    Formula,
    Operational,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleValue {
    pub value: Scalar,
    pub method: CocycleMethod,
}

/// One row of the cocycle table. Complex values serialize as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleRecord {
    pub g_word: String,
    pub h_word: String,
    pub c_formula: [f64; 2],
    pub c_operational: [f64; 2],
    pub delta_g: [f64; 2],
    pub delta_h: [f64; 2],
    pub delta_gh: [f64; 2],
    pub residual: f64,
}

fn pair(z: Scalar) -> [f64; 2] {
    let z = crate::scalar::tidy(z);
    [z.re, z.im]
}

/// Both Weil constructions over one ring `A_m`.
#[derive(Debug)]
pub struct Weil {
    pub bundle: Bundle,
    elements: Vec<Poly>,
    s1: Scalar,
    alpha_minus_one: Scalar,
    omega: Scalar,
    l0: usize,
    rho_w: Operator,
}

impl Weil {
    pub fn new(ring: TruncatedPoly) -> Result<Self> {
        Self::from_bundle(Bundle::new(ring)?)
    }

    pub fn from_bundle(bundle: Bundle) -> Result<Self> {
        let ring = bundle.module.ring().clone();
        let elements = ring.enumerate(Subset::All)?;
        let s1 = gauss_sum_sq(&ring, &ring.one())?;
        let alpha_minus_one = alpha(&ring, &ring.from_int(-1))?;
        let omega = omega(ring.field());
        let l0 = bundle.base_point();
        let reps = &bundle.table.get(l0).cosets(&bundle.module).reps;
        let expected: Vec<usize> = (0..elements.len()).map(|k| k * bundle.module.size_a()).collect();
        if *reps != expected {
            return Err(Error::Internal("coset representatives of L0 are not the vectors (a, 0)".into()));
        }
        let mut weil = Weil { bundle, elements, s1, alpha_minus_one, omega, l0, rho_w: Operator::zeros(0, 0) };
        let scale = weil.alpha_minus_one / weil.s1;
        weil.rho_w = weil.kernel(|a, c| psi_bar(&ring, &ring.polar_form(a, c)) * scale);
        Ok(weil)
    }

    pub fn ring(&self) -> &TruncatedPoly {
        self.bundle.module.ring()
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn omega(&self) -> Scalar {
        self.omega
    }

    pub fn s1(&self) -> Scalar {
        self.s1
    }

    pub fn base_point(&self) -> usize {
        self.l0
    }

    fn kernel(&self, f: impl Fn(&Poly, &Poly) -> Scalar) -> Operator {
        let n = self.dim();
        Operator::from_fn(n, n, |i, j| f(&self.elements[i], &self.elements[j]))
    }

    fn diagonal(&self, f: impl Fn(&Poly) -> Scalar) -> Operator {
        Operator::from_diagonal(&nalgebra::DVector::from_iterator(self.dim(), self.elements.iter().map(f)))
    }

    /// `M[i][j] = value` where `a_i t = a_j`.
    fn dilation(&self, t: &Poly, value: Scalar) -> Operator {
        let ring = self.ring();
        let n = self.dim();
        let mut out = Operator::zeros(n, n);
        for (i, a) in self.elements.iter().enumerate() {
            out[(i, ring.index_of(&ring.mul(a, t)))] = value;
        }
        out
    }

    /// `ρ(h(t)) f(a) = α(t) f(at)`, `ρ(u(b)) f(a) = ψ̄(b Q(a)) f(a)`,
    /// `ρ(w) f(a) = α(-1)/S(1) Σ_c ψ̄(B_Q(a,c)) f(c)`.
    pub fn rho_generator(&self, gen: &Generator<Poly>) -> Result<Operator> {
        let ring = self.ring();
        match gen {
            Generator::H(t) => Ok(self.dilation(t, alpha_of_unit(ring, t)?)),
            Generator::U(b) => {
                if !ring.is_symmetric(b) {
                    return Err(Error::NotSymmetric(ring.format(b)));
                }
                Ok(self.diagonal(|a| psi_bar(ring, &ring.mul(b, &ring.quadratic_form(a)))))
            }
            Generator::W => Ok(self.rho_w.clone()),
        }
    }

    pub fn rho_word(&self, word: &[Generator<Poly>]) -> Result<Operator> {
        word.iter().try_fold(operator::identity(self.dim()), |acc, gen| Ok(acc * self.rho_generator(gen)?))
    }

    /// The generator-defined representation, extended along the Bruhat
    /// normal form.
    pub fn bruhat_weil_op(&self, g: &StarMatrix<Poly>) -> Result<Operator> {
        self.rho_word(&group::bruhat_normal_form(self.ring(), g)?.word())
    }

    /// `ρ^{L}_g = γ_{L, gL} τ_g` in the coset basis of `E_L`.
    pub fn geometric_weil_op_at(&self, g: &StarMatrix<Poly>, l: usize) -> Result<Operator> {
        self.bundle.contraction(g, l)
    }

    /// `σ_g = ρ^{L0}_g` transported to `L²(A_m)`.
    pub fn geometric_weil_op(&self, g: &StarMatrix<Poly>) -> Result<Operator> {
        self.geometric_weil_op_at(g, self.l0)
    }

    pub fn weil_op(&self, g: &StarMatrix<Poly>, method: Method) -> Result<Operator> {
        match method {
            Method::Bruhat => self.bruhat_weil_op(g),
            Method::Geometric => self.geometric_weil_op(g),
        }
    }

    /// `σ_{h(a)} f'(c) = f'(ac)`
    pub fn sigma_h(&self, a: &Poly) -> Operator {
        self.dilation(a, ONE)
    }

    /// `σ_{u(b)} f'(c) = ψ̄(b c c*) f'(c)`
    pub fn sigma_u(&self, b: &Poly) -> Operator {
        let ring = self.ring();
        self.diagonal(|c| psi_bar(ring, &ring.mul(&ring.mul(b, c), &ring.star(c))))
    }

    /// `σ_w f'(c) = q^{-m/2} Σ_a ψ̄(2 c* a) f'(a)`
    pub fn sigma_w(&self) -> Operator {
        let ring = self.ring();
        let two = ring.from_int(2);
        let scale = 1.0 / (self.dim() as f64).sqrt();
        self.kernel(|c, a| psi_bar(ring, &ring.mul(&two, &ring.mul(&ring.star(c), a))) * scale)
    }

    /// `c(g,h) = μ(L0, g·L0, gh·L0)`, the scalar in `ρ_g ρ_h = c(g,h) ρ_{gh}`.
    pub fn cocycle_formula(&self, g: &StarMatrix<Poly>, h: &StarMatrix<Poly>) -> Result<Scalar> {
        let gh = group::mul(self.ring(), g, h);
        let gl = self.bundle.act(g, self.l0)?;
        let ghl = self.bundle.act(&gh, self.l0)?;
        Ok(self.bundle.multiplier(self.l0, gl, ghl))
    }

    /// The displayed form `μ(gh·L0, g·L0, L0)`.
    pub fn cocycle_displayed(&self, g: &StarMatrix<Poly>, h: &StarMatrix<Poly>) -> Result<Scalar> {
        let gh = group::mul(self.ring(), g, h);
        let gl = self.bundle.act(g, self.l0)?;
        let ghl = self.bundle.act(&gh, self.l0)?;
        Ok(self.bundle.multiplier(ghl, gl, self.l0))
    }

    /// Least-squares scalar `λ` with `ρ_g ρ_h = λ ρ_{gh}`, and its residual.
    pub fn cocycle_operational(&self, g: &StarMatrix<Poly>, h: &StarMatrix<Poly>) -> Result<(Scalar, f64)> {
        let gh = group::mul(self.ring(), g, h);
        let lhs = self.geometric_weil_op(g)? * self.geometric_weil_op(h)?;
        let (lambda, residual) = operator::fit_scalar(&lhs, &self.geometric_weil_op(&gh)?);
        if residual > COCYCLE_RESIDUAL_LIMIT {
            return Err(Error::CocycleResidual(residual));
        }
        Ok((lambda, residual))
    }

    pub fn cocycle(&self, g: &StarMatrix<Poly>, h: &StarMatrix<Poly>, method: CocycleMethod) -> Result<CocycleValue> {
        let value = match method {
            CocycleMethod::Formula => self.cocycle_formula(g, h)?,
            CocycleMethod::Operational => self.cocycle_operational(g, h)?.0,
        };
        Ok(CocycleValue { value, method })
    }

    /// The cell values `α(a)`, `α(a) ω`, `α(-a)`, with `a` the leading unit
    /// of the normal form.
    pub fn delta_of_form(&self, form: &BruhatForm<Poly>) -> Result<Scalar> {
        let ring = self.ring();
        let a = form.leading_unit();
        Ok(match form.cell() {
            Cell::B => alpha_of_unit(ring, a)?,
            Cell::BwB => alpha_of_unit(ring, a)? * self.omega,
            Cell::BwBwB => alpha_of_unit(ring, &ring.neg(a))?,
        })
    }

    pub fn delta(&self, g: &StarMatrix<Poly>) -> Result<Scalar> {
        self.delta_of_form(&group::bruhat_normal_form(self.ring(), g)?)
    }

    /// The scalar `λ` with `ρ(g) = λ σ_g`, and its residual.
    pub fn delta_operational(&self, g: &StarMatrix<Poly>) -> Result<(Scalar, f64)> {
        Ok(operator::fit_scalar(&self.bruhat_weil_op(g)?, &self.geometric_weil_op(g)?))
    }

    pub fn cocycle_record(&self, g: &StarMatrix<Poly>, h: &StarMatrix<Poly>) -> Result<CocycleRecord> {
        let ring = self.ring();
        let gh = group::mul(ring, g, h);
        let word = |x: &StarMatrix<Poly>| -> Result<String> {
            Ok(group::format_word(ring, &group::bruhat_normal_form(ring, x)?.word()))
        };
        let (c_op, residual) = self.cocycle_operational(g, h)?;
        Ok(CocycleRecord {
            g_word: word(g)?,
            h_word: word(h)?,
            c_formula: pair(self.cocycle_formula(g, h)?),
            c_operational: pair(c_op),
            delta_g: pair(self.delta(g)?),
            delta_h: pair(self.delta(h)?),
            delta_gh: pair(self.delta(&gh)?),
            residual,
        })
    }

    fn sample_pairs(&self, samples: usize, seed: u64) -> Result<Vec<(StarMatrix<Poly>, StarMatrix<Poly>)>> {
        let sets = GeneratorSets::new(self.ring())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| group::eval_word(self.ring(), &sets.sample_form(rng).word());
        (0..samples).map(|_| Ok((draw(&mut rng)?, draw(&mut rng)?))).collect()
    }

    /// The cocycle table on seeded pairs.
    pub fn cocycle_table(&self, samples: usize, seed: u64) -> Result<Vec<CocycleRecord>> {
        self.sample_pairs(samples, seed)?.iter().map(|(g, h)| self.cocycle_record(g, h)).collect()
    }

    /// Checks the Bruhat generator operators against all presentation
    /// relations.
    pub fn verify_operator_relations(&self, sample_size: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
        let ring = self.ring();
        let mut out = Vec::new();
        for (relation, instances) in group::relation_instances(ring, sample_size, seed)? {
            let mut check = Check::new(format!("operator relation {}", relation.label()), tol);
            for inst in &instances {
                let dev = operator::max_deviation(&self.rho_word(&inst.lhs)?, &self.rho_word(&inst.rhs)?);
                check.add(|| format!("{} vs {}", group::format_word(ring, &inst.lhs), group::format_word(ring, &inst.rhs)), dev);
            }
            out.push(check);
        }
        Ok(out)
    }

    /// `ρ(g) ρ(h) = ρ(gh)` for the given pairs.
    pub fn check_homomorphism(&self, pairs: &[(StarMatrix<Poly>, StarMatrix<Poly>)], tol: f64) -> Result<Check> {
        let ring = self.ring();
        let mut check = Check::new("ρ(g) ρ(h) = ρ(gh)", tol);
        let mut cache: HashMap<StarMatrix<Poly>, Operator> = HashMap::new();
        let mut op = |g: &StarMatrix<Poly>| -> Result<Operator> {
            if let Some(o) = cache.get(g) {
                return Ok(o.clone());
            }
            let o = self.bruhat_weil_op(g)?;
            cache.insert(g.clone(), o.clone());
            Ok(o)
        };
        for (i, (g, h)) in pairs.iter().enumerate() {
            let gh = group::mul(ring, g, h);
            let dev = operator::max_deviation(&(op(g)? * op(h)?), &op(&gh)?);
            check.add(|| format!("pair #{i}"), dev);
        }
        Ok(check)
    }

    /// Geometric projective law with the formula cocycle, and agreement of
    /// the formula with the fitted scalar.
    pub fn check_projective_law(&self, samples: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
        let ring = self.ring();
        let mut law = Check::new("ρ^{L0}_g ρ^{L0}_h = c(g,h) ρ^{L0}_{gh}, c(g,h) = μ(L0, gL0, ghL0)", tol);
        let mut agree = Check::new("formula cocycle equals operational cocycle", tol);
        let mut residual = Check::new("operational cocycle residual", COCYCLE_RESIDUAL_LIMIT);
        let mut displayed = Check::new("displayed form μ(ghL0, gL0, L0) equals conj c(g,h)", tol);
        let mut modulus = Check::new("|c(g,h)| = 1", tol);
        for (i, (g, h)) in self.sample_pairs(samples, seed)?.iter().enumerate() {
            let gh = group::mul(ring, g, h);
            let lhs = self.geometric_weil_op(g)? * self.geometric_weil_op(h)?;
            let rhs = self.geometric_weil_op(&gh)?;
            let c = self.cocycle_formula(g, h)?;
            let (lambda, res) = operator::fit_scalar(&lhs, &rhs);
            let name = || format!("pair #{i}");
            law.add(name, operator::max_deviation(&lhs, &(rhs * c)));
            agree.add(name, (c - lambda).norm());
            residual.add(name, res);
            displayed.add(name, (self.cocycle_displayed(g, h)? - lambda.conj()).norm());
            modulus.add(name, (c.norm() - 1.0).abs());
        }
        Ok(vec![law, agree, residual, modulus, displayed])
    }

    /// The comparison between the two constructions: generator identities,
    /// `ρ(g) = δ(g) σ_g`, and the coboundary identity in both orientations.
    pub fn compare_representations(&self, samples: usize, seed: u64, tol: f64) -> Result<Report> {
        let ring = self.ring();
        let mut report = Report::new("weil compare", ring.describe());
        report.observe("samples", samples);
        report.observe("seed", seed);
        report.observe("omega", pair(self.omega));
        report.observe("s1", pair(self.s1));

        let units = ring.enumerate(Subset::Units)?;
        let symmetric = ring.enumerate(Subset::Symmetric)?;

        let mut explicit_h = Check::new("σ_{h(a)} f'(c) = f'(ac)", tol);
        let mut explicit_u = Check::new("σ_{u(b)} f'(c) = ψ̄(bcc*) f'(c)", tol);
        let mut explicit_w = Check::new("σ_w f'(c) = q^{-m/2} Σ_a ψ̄(2c*a) f'(a)", tol);
        let mut gen_h = Check::new("ρ(h(a)) = α(a) σ_{h(a)}", tol);
        let mut gen_u = Check::new("ρ(u(b)) = σ_{u(b)}", tol);
        let mut gen_w = Check::new("ρ(w) = ω σ_w", tol);
        for a in &units {
            let ha = group::h(ring, a)?;
            let sigma = self.geometric_weil_op(&ha)?;
            let name = || format!("a = {}", ring.format(a));
            explicit_h.add(name, operator::max_deviation(&sigma, &self.sigma_h(a)));
            let rho = self.rho_generator(&Generator::H(a.clone()))?;
            gen_h.add(name, operator::max_deviation(&rho, &(sigma * alpha_of_unit(ring, a)?)));
        }
        for b in &symmetric {
            let sigma = self.geometric_weil_op(&group::u(ring, b)?)?;
            let name = || format!("b = {}", ring.format(b));
            explicit_u.add(name, operator::max_deviation(&sigma, &self.sigma_u(b)));
            gen_u.add(name, operator::max_deviation(&self.rho_generator(&Generator::U(b.clone()))?, &sigma));
        }
        let sigma_w = self.geometric_weil_op(&group::w(ring))?;
        explicit_w.add(|| "w".into(), operator::max_deviation(&sigma_w, &self.sigma_w()));
        gen_w.add(|| "w".into(), operator::max_deviation(&self.rho_w, &(sigma_w.clone() * self.omega)));
        let (ratio_w, _) = operator::fit_scalar(&self.rho_w, &sigma_w);
        report.observe("rho_w_over_sigma_w", pair(ratio_w));

        let pairs = self.sample_pairs(samples, seed)?;
        let mut factor = Check::new("ρ(g) = δ(g) σ_g", tol);
        let mut factor_op = Check::new("ρ(g) is a scalar multiple of σ_g", tol);
        let mut ratios: BTreeSet<String> = BTreeSet::new();
        let mut cob_a = Check::new("coboundary c(g,h) δ(g) δ(h) = δ(gh)", tol);
        let mut cob_b = Check::new("coboundary c(g,h) δ(gh) = δ(g) δ(h)", tol);
        let mut cob_op = Check::new("coboundary with the fitted δ: c(g,h) δ(g) δ(h) = δ(gh)", tol);
        let mut delta_cache: HashMap<StarMatrix<Poly>, (Scalar, Scalar)> = HashMap::new();
        let mut deltas = |g: &StarMatrix<Poly>, ratios: &mut BTreeSet<String>| -> Result<(Scalar, Scalar, f64)> {
            if let Some(&(d, op)) = delta_cache.get(g) {
                return Ok((d, op, 0.0));
            }
            let form = group::bruhat_normal_form(ring, g)?;
            let d = self.delta_of_form(&form)?;
            let (op, res) = self.delta_operational(g)?;
            let lead = form.leading_unit();
            let tidy = crate::scalar::tidy(op / alpha_of_unit(ring, lead)?);
            ratios.insert(format!("{}: ρ/σ ÷ α(t) = ({:.6}, {:.6})", form.cell(), tidy.re, tidy.im));
            delta_cache.insert(g.clone(), (d, op));
            Ok((d, op, res))
        };
        for (i, (g, h)) in pairs.iter().enumerate() {
            let gh = group::mul(ring, g, h);
            let c = self.cocycle_formula(g, h)?;
            let mut dev = |x: &StarMatrix<Poly>, ratios: &mut BTreeSet<String>| -> Result<(Scalar, Scalar)> {
                let (d, op, res) = deltas(x, ratios)?;
                factor.add(|| format!("pair #{i}"), (op - d).norm().max(res));
                factor_op.add(|| format!("pair #{i}"), res);
                Ok((d, op))
            };
            let (dg, og) = dev(g, &mut ratios)?;
            let (dh, oh) = dev(h, &mut ratios)?;
            let (dgh, ogh) = dev(&gh, &mut ratios)?;
            let name = || format!("pair #{i}");
            cob_a.add(name, (c * dg * dh - dgh).norm());
            cob_b.add(name, (c * dgh - dg * dh).norm());
            cob_op.add(name, (c * og * oh - ogh).norm());
        }
        report.observe("cell_ratios", ratios);
        let orientation = match (cob_a.passed(), cob_b.passed()) {
            (true, true) => "both",
            (true, false) => "c(g,h) delta(g) delta(h) = delta(gh)",
            (false, true) => "c(g,h) delta(gh) = delta(g) delta(h)",
            (false, false) => "none",
        };
        report.observe("coboundary_orientation", orientation);
        let mut coboundary = if cob_a.max_deviation <= cob_b.max_deviation { cob_a.clone() } else { cob_b.clone() };
        coboundary.property = format!("coboundary identity in one consistent orientation ({orientation})");
        report.observe("coboundary_c_delta_delta_eq_delta", cob_a.record());
        report.observe("coboundary_c_delta_eq_delta_delta", cob_b.record());

        for check in [explicit_h, explicit_u, explicit_w, gen_h, gen_u, gen_w, factor, factor_op, coboundary, cob_op] {
            report.push(check);
        }
        Ok(report)
    }

    /// `g -> tr ρ(g)` over the whole group.
    pub fn rep_character(&self, method: Method, limit: usize) -> Result<Vec<(StarMatrix<Poly>, Scalar)>> {
        let group = group::enumerate_group(self.ring(), limit)?;
        group.into_iter().map(|g| Ok((g.clone(), operator::trace(&self.weil_op(&g, method)?)))).collect()
    }
}

/// `(1/|G|) Σ_g χ1(g) conj χ2(g)` over characters listed in the same order.
pub fn character_inner_product(chi1: &[Scalar], chi2: &[Scalar]) -> Scalar {
    assert_eq!(chi1.len(), chi2.len(), "characters of different groups");
    let s: Scalar = chi1.iter().zip(chi2).map(|(a, b)| a * b.conj()).sum();
    s / chi1.len() as f64
}

/// Convenience: sampled `SL_*(2,A)` elements for a seed.
pub fn sample_elements(ring: &TruncatedPoly, count: usize, seed: u64) -> Result<Vec<StarMatrix<Poly>>> {
    let sets = GeneratorSets::new(ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| group::eval_word(ring, &sets.sample_form(&mut rng).word())).collect()
}

/// Random generator words, used to reach the same element by a second route.
pub fn random_word(ring: &TruncatedPoly, len: usize, rng: &mut impl Rng) -> Result<Vec<Generator<Poly>>> {
    let sets = GeneratorSets::new(ring)?;
    Ok((0..len).map(|_| sets.sample_generator(rng)).collect())
}
