//! The groups `GL_*(2,A)` and `SL_*(2,A)`, their Bruhat generators, normal
//! forms and presentation relations.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{coprime_reduction, Doubling, InvolutiveRing, Mat, Subset};

/// A 2×2 matrix `(a b; c d)` over an involutive ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StarMatrix<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E> StarMatrix<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        StarMatrix { a, b, c, d }
    }
}

pub fn format_matrix<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> String {
    format!(
        "(({}, {}), ({}, {}))",
        ring.format(&g.a),
        ring.format(&g.b),
        ring.format(&g.c),
        ring.format(&g.d)
    )
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    SlStar,
    GlStar,
    None,
}

/// Checks the defining conditions of `GL_*(2,A)`, then `det_* = 1`.
pub fn membership<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> Membership {
    let s = |x: &R::Elem| ring.star(x);
    let m = |x: &R::Elem, y: &R::Elem| ring.mul(x, y);
    let StarMatrix { a, b, c, d } = g;
    let commuting = m(a, &s(b)) == m(b, &s(a))
        && m(c, &s(d)) == m(d, &s(c))
        && m(&s(a), c) == m(&s(c), a)
        && m(&s(b), d) == m(&s(d), b);
    if !commuting {
        return Membership::None;
    }
    let det = star_det(ring, g);
    let det_alt = ring.sub(&m(&s(a), d), &m(&s(c), b));
    if det != det_alt || !ring.satisfies(&det, Subset::CentralSymmetricUnits) {
        return Membership::None;
    }
    if det == ring.one() {
        Membership::SlStar
    } else {
        Membership::GlStar
    }
}

/// `det_*(g) = a d* - b c*`
pub fn star_det<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> R::Elem {
    ring.sub(&ring.mul(&g.a, &ring.star(&g.d)), &ring.mul(&g.b, &ring.star(&g.c)))
}

pub fn identity<R: InvolutiveRing>(ring: &R) -> StarMatrix<R::Elem> {
    StarMatrix::new(ring.one(), ring.zero(), ring.zero(), ring.one())
}

/// `h(t) = (t 0; 0 (t*)^{-1})`
pub fn h<R: InvolutiveRing>(ring: &R, t: &R::Elem) -> Result<StarMatrix<R::Elem>> {
    let t_star_inv = ring.inv(&ring.star(t))?;
    Ok(StarMatrix::new(t.clone(), ring.zero(), ring.zero(), t_star_inv))
}

/// `u(s) = (1 s; 0 1)` for symmetric `s`.
pub fn u<R: InvolutiveRing>(ring: &R, s: &R::Elem) -> Result<StarMatrix<R::Elem>> {
    if !ring.is_symmetric(s) {
        return Err(Error::NotSymmetric(ring.format(s)));
    }
    Ok(StarMatrix::new(ring.one(), s.clone(), ring.zero(), ring.one()))
}

/// `w = (0 1; -1 0)`
pub fn w<R: InvolutiveRing>(ring: &R) -> StarMatrix<R::Elem> {
    StarMatrix::new(ring.zero(), ring.one(), ring.neg(&ring.one()), ring.zero())
}

pub fn mul<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>, k: &StarMatrix<R::Elem>) -> StarMatrix<R::Elem> {
    let dot = |x: &R::Elem, y: &R::Elem, z: &R::Elem, t: &R::Elem| ring.add(&ring.mul(x, y), &ring.mul(z, t));
    StarMatrix::new(
        dot(&g.a, &k.a, &g.b, &k.c),
        dot(&g.a, &k.b, &g.b, &k.d),
        dot(&g.c, &k.a, &g.d, &k.c),
        dot(&g.c, &k.b, &g.d, &k.d),
    )
}

/// Inverse through the star-adjugate `(d*, -b*; -c*, a*)` scaled by `det_*^{-1}`.
pub fn inv<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> Result<StarMatrix<R::Elem>> {
    if membership(ring, g) == Membership::None {
        return Err(Error::NotInGroup("GL_*(2,A)"));
    }
    let scale = ring.inv(&star_det(ring, g))?;
    let sc = |x: R::Elem| ring.mul(&x, &scale);
    let out = StarMatrix::new(
        sc(ring.star(&g.d)),
        sc(ring.neg(&ring.star(&g.b))),
        sc(ring.neg(&ring.star(&g.c))),
        sc(ring.star(&g.a)),
    );
    if mul(ring, g, &out) != identity(ring) {
        return Err(Error::Internal("star-adjugate inverse failed to invert".into()));
    }
    Ok(out)
}

/// A Bruhat generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Generator<E> {
    H(E),
    U(E),
    W,
}

impl<E> Generator<E> {
    pub fn matrix<R: InvolutiveRing<Elem = E>>(&self, ring: &R) -> Result<StarMatrix<E>> {
        match self {
            Generator::H(t) => h(ring, t),
            Generator::U(s) => u(ring, s),
            Generator::W => Ok(w(ring)),
        }
    }
}

pub fn format_word<R: InvolutiveRing>(ring: &R, word: &[Generator<R::Elem>]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|g| match g {
            Generator::H(t) => format!("h({})", ring.format(t)),
            Generator::U(s) => format!("u({})", ring.format(s)),
            Generator::W => "w".into(),
        })
        .collect()
}

pub fn eval_word<R: InvolutiveRing>(ring: &R, word: &[Generator<R::Elem>]) -> Result<StarMatrix<R::Elem>> {
    word.iter().try_fold(identity(ring), |acc, g| Ok(mul(ring, &acc, &g.matrix(ring)?)))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cell {
    B,
    BwB,
    BwBwB,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cell::B => "B",
            Cell::BwB => "BwB",
            Cell::BwBwB => "BwBwB",
        })
    }
}

/// Canonical Bruhat word `h(t)u(b)`, `h(t)u(b)wu(c)` or `h(t)u(b)wu(c)wu(d)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BruhatForm<E> {
    B { t: E, b: E },
    BwB { t: E, b: E, c: E },
    BwBwB { t: E, b: E, c: E, d: E },
}

impl<E: Clone> BruhatForm<E> {
    pub fn cell(&self) -> Cell {
        match self {
            BruhatForm::B { .. } => Cell::B,
            BruhatForm::BwB { .. } => Cell::BwB,
            BruhatForm::BwBwB { .. } => Cell::BwBwB,
        }
    }

    pub fn w_length(&self) -> u8 {
        match self.cell() {
            Cell::B => 0,
            Cell::BwB => 1,
            Cell::BwBwB => 2,
        }
    }

    /// The unit `t` of the leading `h(t)`.
    pub fn leading_unit(&self) -> &E {
        match self {
            BruhatForm::B { t, .. } | BruhatForm::BwB { t, .. } | BruhatForm::BwBwB { t, .. } => t,
        }
    }

    pub fn word(&self) -> Vec<Generator<E>> {
        match self.clone() {
            BruhatForm::B { t, b } => vec![Generator::H(t), Generator::U(b)],
            BruhatForm::BwB { t, b, c } => vec![Generator::H(t), Generator::U(b), Generator::W, Generator::U(c)],
            BruhatForm::BwBwB { t, b, c, d } => vec![
                Generator::H(t),
                Generator::U(b),
                Generator::W,
                Generator::U(c),
                Generator::W,
                Generator::U(d),
            ],
        }
    }
}

/// Factorization of `g` with a unit lower-left entry:
/// `g = h(-(c*)^{-1}) u(c* a) w u(c^{-1} d)`.
fn big_cell<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> Result<(R::Elem, R::Elem, R::Elem)> {
    let c_inv = ring.inv(&g.c)?;
    let t = ring.neg(&ring.inv(&ring.star(&g.c))?);
    let b = ring.mul(&ring.star(&g.c), &g.a);
    let c = ring.mul(&c_inv, &g.d);
    Ok((t, b, c))
}

/// Bruhat normal form with the mandatory re-multiplication check.
pub fn bruhat_normal_form<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> Result<BruhatForm<R::Elem>> {
    if membership(ring, g) != Membership::SlStar {
        return Err(Error::NotInGroup("SL_*(2,A)"));
    }
    let form = if ring.is_zero(&g.c) {
        let b = ring.mul(&ring.inv(&g.a)?, &g.b);
        BruhatForm::B { t: g.a.clone(), b }
    } else if ring.is_unit(&g.c) {
        let (t, b, c) = big_cell(ring, g)?;
        BruhatForm::BwB { t, b, c }
    } else {
        // w u(s) g has the unit -(a + s c) in the lower-left corner
        let s = coprime_reduction(ring, &g.a, &g.c)?;
        let shifted = mul(ring, &mul(ring, &w(ring), &u(ring, &s)?), g);
        let (t1, c, d) = big_cell(ring, &shifted)?;
        // g = u(-s) h(-1) w h(t1) u(c) w u(d) = h(T) u(-T^{-1} s T*^{-1}) w u(c) w u(d)
        let t = ring.neg(&ring.inv(&ring.star(&t1))?);
        let t_inv = ring.inv(&t)?;
        let b = ring.neg(&ring.mul(&ring.mul(&t_inv, &s), &ring.star(&t_inv)));
        BruhatForm::BwBwB { t, b, c, d }
    };
    if eval_word(ring, &form.word())? != *g {
        return Err(Error::Internal(format!(
            "normal form {} does not reproduce {}",
            format_word(ring, &form.word()),
            format_matrix(ring, g)
        )));
    }
    Ok(form)
}

/// 0 if `c = 0`, 1 if `c` is a unit, 2 otherwise.
pub fn w_length<R: InvolutiveRing>(ring: &R, g: &StarMatrix<R::Elem>) -> Result<u8> {
    if membership(ring, g) != Membership::SlStar {
        return Err(Error::NotInGroup("SL_*(2,A)"));
    }
    Ok(if ring.is_zero(&g.c) {
        0
    } else if ring.is_unit(&g.c) {
        1
    } else {
        2
    })
}

/// Enumeration tables shared by the samplers.
#[derive(Clone, Debug)]
pub struct GeneratorSets<E> {
    pub units: Vec<E>,
    pub symmetric: Vec<E>,
    pub symmetric_units: Vec<E>,
    /// Nonzero symmetric non-units.
    pub symmetric_radical: Vec<E>,
}

impl<E: Clone> GeneratorSets<E> {
    pub fn new<R: InvolutiveRing<Elem = E>>(ring: &R) -> Result<Self> {
        let symmetric = ring.enumerate(Subset::Symmetric)?;
        let symmetric_radical = symmetric.iter().filter(|s| !ring.is_zero(s) && !ring.is_unit(s)).cloned().collect();
        Ok(GeneratorSets {
            units: ring.enumerate(Subset::Units)?,
            symmetric_units: symmetric.iter().filter(|s| ring.is_unit(s)).cloned().collect(),
            symmetric,
            symmetric_radical,
        })
    }

    /// Random canonical word. Cells are weighted by the number of canonical
    /// words they contain; over a local ring such as `A_m` every group element
    /// has exactly one such word, so the sample is uniform on the group.
    pub fn sample_form<G: Rng>(&self, rng: &mut G) -> BruhatForm<E> {
        let nu = self.units.len() as u128;
        let ns = self.symmetric.len() as u128;
        let nr = self.symmetric_radical.len() as u128;
        let weights = [nu * ns, nu * ns * ns, nu * nr * ns];
        let total: u128 = weights.iter().sum();
        let pick = rng.gen_range(0..total);
        let pick_sym = |rng: &mut G| self.symmetric.choose(rng).unwrap().clone();
        let t = self.units.choose(rng).unwrap().clone();
        if pick < weights[0] {
            BruhatForm::B { t, b: pick_sym(rng) }
        } else if pick < weights[0] + weights[1] {
            let b = pick_sym(rng);
            BruhatForm::BwB { t, b, c: pick_sym(rng) }
        } else {
            let c = self.symmetric_radical.choose(rng).unwrap().clone();
            BruhatForm::BwBwB { t, b: self.symmetric[0].clone(), c, d: pick_sym(rng) }
        }
    }

    pub fn sample_generator<G: Rng>(&self, rng: &mut G) -> Generator<E> {
        match rng.gen_range(0..3) {
            0 => Generator::H(self.units.choose(rng).unwrap().clone()),
            1 => Generator::U(self.symmetric.choose(rng).unwrap().clone()),
            _ => Generator::W,
        }
    }
}

/// Deterministic random element of `SL_*(2,A)` for a seed.
pub fn sample_element<R: InvolutiveRing>(ring: &R, seed: u64) -> Result<StarMatrix<R::Elem>> {
    let sets = GeneratorSets::new(ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    eval_word(ring, &sets.sample_form(&mut rng).word())
}

/// Breadth-first closure of the Bruhat generators.
pub fn enumerate_group<R: InvolutiveRing>(ring: &R, limit: usize) -> Result<Vec<StarMatrix<R::Elem>>> {
    let sets = GeneratorSets::new(ring)?;
    let mut gens = Vec::new();
    for t in &sets.units {
        gens.push(h(ring, t)?);
    }
    for s in &sets.symmetric {
        gens.push(u(ring, s)?);
    }
    gens.push(w(ring));

    let start = identity(ring);
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for k in &gens {
            let next = mul(ring, &g, k);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(Error::LimitExceeded(limit));
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// `h(t)h(t') = h(tt')`
    HH,
    /// `u(b)u(b') = u(b+b')`
    UU,
    /// `h(t)u(b) = u(tbt*)h(t)`
    HU,
    /// `w^2 = h(-1)`
    WW,
    /// `wh(t) = h(t*^{-1})w`
    WH,
    /// `u(t)wu(t^{-1})wu(t) = wh(-t^{-1})`
    UWUWU,
    /// `wu(t^{-1})wu(t)wu(t^{-1}) = h(t)`
    WUWUWU,
}

impl Relation {
    pub const ALL: [Relation; 7] =
        [Relation::HH, Relation::UU, Relation::HU, Relation::WW, Relation::WH, Relation::UWUWU, Relation::WUWUWU];

    pub fn label(self) -> &'static str {
        match self {
            Relation::HH => "1: h(t)h(t') = h(tt')",
            Relation::UU => "2: u(b)u(b') = u(b+b')",
            Relation::HU => "3: h(t)u(b) = u(tbt*)h(t)",
            Relation::WW => "4: w^2 = h(-1)",
            Relation::WH => "5: wh(t) = h(t*^-1)w",
            Relation::UWUWU => "6: u(t)wu(t^-1)wu(t) = wh(-t^-1)",
            Relation::WUWUWU => "6': wu(t^-1)wu(t)wu(t^-1) = h(t)",
        }
    }
}

/// Both sides of one relation instance, as generator words.
#[derive(Clone, Debug)]
pub struct RelationInstance<E> {
    pub lhs: Vec<Generator<E>>,
    pub rhs: Vec<Generator<E>>,
}

fn pick_tuples<T: Clone>(all: Vec<T>, sample_size: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if all.len() <= sample_size {
        all
    } else {
        all.choose_multiple(rng, sample_size).cloned().collect()
    }
}

/// Instances of each relation: exhaustive over the parameter range when it
/// has at most `sample_size` tuples, otherwise a seeded sample of that size.
pub fn relation_instances<R: InvolutiveRing>(
    ring: &R,
    sample_size: usize,
    seed: u64,
) -> Result<Vec<(Relation, Vec<RelationInstance<R::Elem>>)>> {
    use Generator::{H, U, W};
    let sets = GeneratorSets::new(ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = |xs: &[R::Elem], ys: &[R::Elem]| -> Vec<(R::Elem, R::Elem)> {
        xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect()
    };
    let minus_one = ring.from_int(-1);
    let mut out = Vec::new();
    for rel in Relation::ALL {
        let instances = match rel {
            Relation::HH => pick_tuples(pairs(&sets.units, &sets.units), sample_size, &mut rng)
                .into_iter()
                .map(|(t, s)| RelationInstance { lhs: vec![H(t.clone()), H(s.clone())], rhs: vec![H(ring.mul(&t, &s))] })
                .collect(),
            Relation::UU => pick_tuples(pairs(&sets.symmetric, &sets.symmetric), sample_size, &mut rng)
                .into_iter()
                .map(|(b, c)| RelationInstance { lhs: vec![U(b.clone()), U(c.clone())], rhs: vec![U(ring.add(&b, &c))] })
                .collect(),
            Relation::HU => pick_tuples(pairs(&sets.units, &sets.symmetric), sample_size, &mut rng)
                .into_iter()
                .map(|(t, b)| {
                    let tbt = ring.mul(&ring.mul(&t, &b), &ring.star(&t));
                    RelationInstance { lhs: vec![H(t.clone()), U(b)], rhs: vec![U(tbt), H(t)] }
                })
                .collect(),
            Relation::WW => vec![RelationInstance { lhs: vec![W, W], rhs: vec![H(minus_one.clone())] }],
            Relation::WH => {
                let mut v = Vec::new();
                for t in pick_tuples(sets.units.clone(), sample_size, &mut rng) {
                    let ts = ring.inv(&ring.star(&t))?;
                    v.push(RelationInstance { lhs: vec![W, H(t)], rhs: vec![H(ts), W] });
                }
                v
            }
            Relation::UWUWU => {
                let mut v = Vec::new();
                for t in pick_tuples(sets.symmetric_units.clone(), sample_size, &mut rng) {
                    let ti = ring.inv(&t)?;
                    v.push(RelationInstance {
                        lhs: vec![U(t.clone()), W, U(ti.clone()), W, U(t)],
                        rhs: vec![W, H(ring.neg(&ti))],
                    });
                }
                v
            }
            Relation::WUWUWU => {
                let mut v = Vec::new();
                for t in pick_tuples(sets.symmetric_units.clone(), sample_size, &mut rng) {
                    let ti = ring.inv(&t)?;
                    v.push(RelationInstance {
                        lhs: vec![W, U(ti.clone()), W, U(t.clone()), W, U(ti)],
                        rhs: vec![H(t)],
                    });
                }
                v
            }
        };
        out.push((rel, instances));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationOutcome {
    pub relation: Relation,
    pub label: String,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Checks every relation as an identity of matrices.
pub fn verify_relations<R: InvolutiveRing>(ring: &R, sample_size: usize, seed: u64) -> Result<Vec<RelationOutcome>> {
    let mut out = Vec::new();
    for (relation, instances) in relation_instances(ring, sample_size, seed)? {
        let mut failures = 0;
        let mut witness = None;
        for inst in &instances {
            if eval_word(ring, &inst.lhs)? != eval_word(ring, &inst.rhs)? {
                failures += 1;
                witness.get_or_insert_with(|| {
                    format!("{} != {}", format_word(ring, &inst.lhs), format_word(ring, &inst.rhs))
                });
            }
        }
        out.push(RelationOutcome {
            relation,
            label: relation.label().into(),
            instances: instances.len(),
            failures,
            passed: failures == 0,
            witness,
        });
    }
    Ok(out)
}

/// First-component projection `SL_*(2, D(R)) -> GL(2, R)`.
pub fn doubling_projection(ring: &Doubling, g: &StarMatrix<crate::ring::Pair>) -> Result<StarMatrix<Mat>> {
    if membership(ring, g) != Membership::SlStar {
        return Err(Error::NotInGroup("SL_*(2,A)"));
    }
    let image = StarMatrix::new(g.a.0.clone(), g.b.0.clone(), g.c.0.clone(), g.d.0.clone());
    if !block_invertible(ring.base(), &image) {
        return Err(Error::Internal("projection is not invertible over the base ring".into()));
    }
    Ok(image)
}

/// Whether a 2×2 matrix over `M(r, F_q)` is invertible as a `2r × 2r` matrix.
pub fn block_invertible(base: &crate::ring::MatrixRing, g: &StarMatrix<Mat>) -> bool {
    let r = base.n();
    let rows: Vec<Vec<_>> = (0..2 * r)
        .map(|i| {
            let (left, right) = if i < r { (&g.a, &g.b) } else { (&g.c, &g.d) };
            let row = i % r;
            left.0[row * r..(row + 1) * r].iter().chain(&right.0[row * r..(row + 1) * r]).copied().collect()
        })
        .collect();
    linalg::rank(base.field(), &rows) == 2 * r
}

/// Product in `GL(2, R)` for the doubling homomorphism check.
pub fn base_mul(base: &crate::ring::MatrixRing, g: &StarMatrix<Mat>, k: &StarMatrix<Mat>) -> StarMatrix<Mat> {
    mul(base, g, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::ring::{Involution, MatrixRing, Poly, TruncatedPoly};
    use std::sync::Arc;

    fn tp(p: u32, m: usize, inv: Involution) -> TruncatedPoly {
        TruncatedPoly::new(Arc::new(FiniteField::prime(p).unwrap()), m, inv).unwrap()
    }

    fn el(r: &TruncatedPoly, c: &[i64]) -> Poly {
        r.parse_coords(c).unwrap()
    }

    fn mat(r: &TruncatedPoly, entries: [&[i64]; 4]) -> StarMatrix<Poly> {
        StarMatrix::new(el(r, entries[0]), el(r, entries[1]), el(r, entries[2]), el(r, entries[3]))
    }

    #[test]
    fn membership_examples() {
        let r = tp(3, 3, Involution::NegateX);
        assert_eq!(membership(&r, &identity(&r)), Membership::SlStar);
        assert_eq!(membership(&r, &w(&r)), Membership::SlStar);
        let bad = mat(&r, [&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(membership(&r, &bad), Membership::None);
        let scaled = mat(&r, [&[2, 0, 0], &[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(membership(&r, &scaled), Membership::GlStar);
    }

    #[test]
    fn det_examples() {
        let r = tp(3, 3, Involution::NegateX);
        assert_eq!(star_det(&r, &identity(&r)), r.one());
        for t in r.enumerate(Subset::Units).unwrap() {
            assert_eq!(star_det(&r, &h(&r, &t).unwrap()), r.one());
        }
        let r1 = tp(3, 1, Involution::Identity);
        let g = mul(&r1, &u(&r1, &r1.one()).unwrap(), &w(&r1));
        assert_eq!(g, mat(&r1, [&[-1], &[1], &[-1], &[0]]));
        assert_eq!(star_det(&r1, &g), r1.one());
    }

    #[test]
    fn generator_errors() {
        let r = tp(3, 3, Involution::NegateX);
        assert!(h(&r, &r.x()).is_err());
        assert!(u(&r, &r.x()).is_err());
    }

    #[test]
    fn generator_identities() {
        let r = tp(3, 3, Involution::NegateX);
        let ww = mul(&r, &w(&r), &w(&r));
        assert_eq!(ww, h(&r, &r.from_int(-1)).unwrap());
        let b = el(&r, &[1, 0, 2]);
        let c = el(&r, &[0, 0, 1]);
        assert_eq!(mul(&r, &u(&r, &b).unwrap(), &u(&r, &c).unwrap()), u(&r, &r.add(&b, &c)).unwrap());
        let t = el(&r, &[2, 1, 1]);
        let ht = h(&r, &t).unwrap();
        let conj = mul(&r, &mul(&r, &ht, &u(&r, &b).unwrap()), &inv(&r, &ht).unwrap());
        assert_eq!(conj, u(&r, &r.mul(&r.mul(&t, &b), &r.star(&t))).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let r1 = tp(3, 1, Involution::Identity);
        let g = mat(&r1, [&[1], &[0], &[1], &[1]]);
        assert_eq!(mul(&r1, &g, &identity(&r1)), g);
        assert_eq!(inv(&r1, &g).unwrap(), mat(&r1, [&[1], &[0], &[-1], &[1]]));
        let ww = w(&r1);
        assert_eq!(mul(&r1, &ww, &inv(&r1, &ww).unwrap()), identity(&r1));
        let r = tp(3, 3, Involution::NegateX);
        assert!(inv(&r, &mat(&r, [&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[1, 0, 0]])).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r1 = tp(3, 1, Involution::Identity);
        let nf = bruhat_normal_form(&r1, &w(&r1)).unwrap();
        assert_eq!(nf, BruhatForm::BwB { t: r1.one(), b: r1.zero(), c: r1.zero() });

        let g = mat(&r1, [&[1], &[0], &[1], &[1]]);
        let nf = bruhat_normal_form(&r1, &g).unwrap();
        assert_eq!(nf, BruhatForm::BwB { t: r1.from_int(-1), b: r1.one(), c: r1.one() });
        assert_eq!(format_word(&r1, &nf.word()), "h(2)u(1)wu(1)");

        let r = tp(3, 3, Involution::NegateX);
        let x2 = el(&r, &[0, 0, 1]);
        let g = eval_word(&r, &[Generator::W, Generator::U(x2.clone()), Generator::W, Generator::U(r.one())]).unwrap();
        assert!(!r.is_zero(&g.c) && !r.is_unit(&g.c));
        let nf = bruhat_normal_form(&r, &g).unwrap();
        assert_eq!(nf.cell(), Cell::BwBwB);
        assert_eq!(eval_word(&r, &nf.word()).unwrap(), g);
        assert_eq!(w_length(&r, &g).unwrap(), 2);
    }

    #[test]
    fn w_length_examples() {
        let r = tp(3, 3, Involution::NegateX);
        assert_eq!(w_length(&r, &identity(&r)).unwrap(), 0);
        assert_eq!(w_length(&r, &w(&r)).unwrap(), 1);
        let bad = mat(&r, [&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert!(w_length(&r, &bad).is_err());
        assert!(bruhat_normal_form(&r, &bad).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let r = tp(3, 3, Involution::NegateX);
        for seed in 0..50 {
            let g = sample_element(&r, seed).unwrap();
            assert_eq!(g, sample_element(&r, seed).unwrap());
            assert_eq!(membership(&r, &g), Membership::SlStar);
            let nf = bruhat_normal_form(&r, &g).unwrap();
            assert_eq!(nf.w_length(), w_length(&r, &g).unwrap());
        }
    }

    #[test]
    fn group_orders_match_sl2() {
        for (p, order) in [(3, 24), (5, 120)] {
            let r = tp(p, 1, Involution::Identity);
            let all = enumerate_group(&r, 1000).unwrap();
            assert_eq!(all.len(), order);
            assert!(all.iter().all(|g| membership(&r, g) == Membership::SlStar));
        }
        assert!(matches!(enumerate_group(&tp(5, 1, Involution::Identity), 50), Err(Error::LimitExceeded(50))));
    }

    #[test]
    fn normal_form_on_whole_group() {
        let r = tp(3, 3, Involution::NegateX);
        let all = enumerate_group(&r, 100_000).unwrap();
        let sets = GeneratorSets::new(&r).unwrap();
        let nu = sets.units.len();
        let ns = sets.symmetric.len();
        let nr = sets.symmetric_radical.len();
        assert_eq!(all.len(), nu * ns * (1 + ns + nr));
        for g in &all {
            let nf = bruhat_normal_form(&r, g).unwrap();
            assert_eq!(nf.w_length(), w_length(&r, g).unwrap());
        }
    }

    #[test]
    fn relations_hold_for_truncated_rings() {
        for (p, m, inv) in [(3, 1, Involution::Identity), (3, 3, Involution::NegateX), (5, 3, Involution::NegateX)] {
            let r = tp(p, m, inv);
            for outcome in verify_relations(&r, 400, 7).unwrap() {
                assert!(outcome.passed, "{} failed on {}: {:?}", outcome.label, r.describe(), outcome.witness);
            }
        }
    }

    #[test]
    fn relations_hold_for_sp4() {
        let m = MatrixRing::new(Arc::new(FiniteField::prime(3).unwrap()), 2).unwrap();
        for outcome in verify_relations(&m, 200, 1).unwrap() {
            assert!(outcome.passed, "{} failed: {:?}", outcome.label, outcome.witness);
        }
    }

    #[test]
    fn matrix_ring_normal_forms() {
        let m = MatrixRing::new(Arc::new(FiniteField::prime(3).unwrap()), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sets = GeneratorSets::new(&m).unwrap();
        for _ in 0..200 {
            let word: Vec<_> = (0..6).map(|_| sets.sample_generator(&mut rng)).collect();
            let g = eval_word(&m, &word).unwrap();
            let nf = bruhat_normal_form(&m, &g).unwrap();
            assert_eq!(nf.w_length(), w_length(&m, &g).unwrap());
        }
    }

    #[test]
    fn doubling_projects_onto_gl2() {
        let base = MatrixRing::new(Arc::new(FiniteField::prime(3).unwrap()), 1).unwrap();
        let d = Doubling::new(base.clone());
        let all = enumerate_group(&d, 10_000).unwrap();
        let image: HashSet<_> = all.iter().map(|g| doubling_projection(&d, g).unwrap()).collect();
        assert_eq!(image.len(), 48);
        assert_eq!(doubling_projection(&d, &identity(&d)).unwrap(), identity(&base));
        for g in all.iter().take(30) {
            for k in all.iter().rev().take(30) {
                let lhs = doubling_projection(&d, &mul(&d, g, k)).unwrap();
                let rhs = base_mul(&base, &doubling_projection(&d, g).unwrap(), &doubling_projection(&d, k).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
