//! The self-dual module `S = A_m`, the symplectic space `W = S ⊕ S` and its
//! Lagrangians.
//!
//! Vectors of `W` are addressed by index: the base-`q` number formed by the
//! coordinates of the first component followed by those of the second. Index
//! order is the canonical order of `W`.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::group::{self, StarMatrix};
use crate::linalg::{self, Row};
use crate::ring::{InvolutiveRing, Poly, TruncatedPoly};
use crate::scalar::Scalar;

/// Largest `W` handled by the dense tables.
pub const W_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WVector {
    pub first: Poly,
    pub second: Poly,
}

impl WVector {
    pub fn new(first: Poly, second: Poly) -> Self {
        WVector { first, second }
    }
}

/// `A_m` with the pairing `η(a,b) = tr(a* b)`, and the doubled space `W`.
#[derive(Debug)]
pub struct SelfDualModule {
    ring: TruncatedPoly,
    q: usize,
    size_a: usize,
    size_w: usize,
    coords: Vec<Row>,
    gram: Vec<Row>,
    /// `coords[v] · gram` for every `v`, so `B(v,w)` is one dot product.
    gram_rows: Vec<Row>,
}

impl SelfDualModule {
    pub fn new(ring: TruncatedPoly) -> Result<Self> {
        ring.check_weil()?;
        let q = ring.field().q() as usize;
        let size = (q as u128).pow(2 * ring.m() as u32);
        if size > W_LIMIT {
            return Err(Error::SizeGuard { what: format!("W over {}", ring.describe()), size, limit: W_LIMIT });
        }
        let size_w = size as usize;
        let size_a = ring.size() as usize;
        let dim = 2 * ring.m();
        let coords: Vec<Row> = (0..size_w)
            .map(|i| {
                let mut c = vec![Fq::ZERO; dim];
                let mut rest = i;
                for x in c.iter_mut().rev() {
                    *x = Fq((rest % q) as u32);
                    rest /= q;
                }
                c
            })
            .collect();
        let mut module = SelfDualModule { ring, q, size_a, size_w, coords, gram: Vec::new(), gram_rows: Vec::new() };
        let basis: Vec<WVector> = (0..dim).map(|i| module.unit_vector(i)).collect();
        module.gram = basis.iter().map(|v| basis.iter().map(|w| module.b_form(v, w)).collect()).collect();
        module.gram_rows = module.coords.iter().map(|c| module.row_times(c, &module.gram)).collect();
        Ok(module)
    }

    pub fn ring(&self) -> &TruncatedPoly {
        &self.ring
    }

    pub fn field(&self) -> &FiniteField {
        self.ring.field()
    }

    pub fn m(&self) -> usize {
        self.ring.m()
    }

    /// Dimension of `W` over `F_q`.
    pub fn dim(&self) -> usize {
        2 * self.ring.m()
    }

    pub fn size_a(&self) -> usize {
        self.size_a
    }

    pub fn size_w(&self) -> usize {
        self.size_w
    }

    pub fn coords(&self, v: usize) -> &Row {
        &self.coords[v]
    }

    pub fn index_of_coords(&self, c: &[Fq]) -> usize {
        c.iter().fold(0, |acc, x| acc * self.q + x.index())
    }

    pub fn vector(&self, v: usize) -> WVector {
        let (first, second) = self.coords[v].split_at(self.m());
        WVector::new(self.ring.from_coords(first), self.ring.from_coords(second))
    }

    pub fn index(&self, v: &WVector) -> usize {
        self.ring.index_of(&v.first) * self.size_a + self.ring.index_of(&v.second)
    }

    fn unit_vector(&self, i: usize) -> WVector {
        let mut c = vec![Fq::ZERO; self.dim()];
        c[i] = self.field().one();
        let (first, second) = c.split_at(self.m());
        WVector::new(self.ring.from_coords(first), self.ring.from_coords(second))
    }

    fn row_times(&self, v: &[Fq], mat: &[Row]) -> Row {
        let f = self.field();
        let mut out = vec![Fq::ZERO; mat.first().map_or(0, |r| r.len())];
        for (&c, row) in v.iter().zip(mat) {
            if c == Fq::ZERO {
                continue;
            }
            for (o, &y) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, y));
            }
        }
        out
    }

    pub fn add(&self, v: usize, w: usize) -> usize {
        let f = self.field();
        let c: Row = self.coords[v].iter().zip(&self.coords[w]).map(|(&x, &y)| f.add(x, y)).collect();
        self.index_of_coords(&c)
    }

    pub fn neg(&self, v: usize) -> usize {
        let c: Row = self.coords[v].iter().map(|&x| self.field().neg(x)).collect();
        self.index_of_coords(&c)
    }

    pub fn sub(&self, v: usize, w: usize) -> usize {
        self.add(v, self.neg(w))
    }

    /// Scalar action `(v1, v2) a = (v1 a, v2 a)`.
    pub fn scale(&self, v: &WVector, a: &Poly) -> WVector {
        WVector::new(self.ring.mul(&v.first, a), self.ring.mul(&v.second, a))
    }

    /// `η(a,b) = tr(a* b)`
    pub fn eta(&self, a: &Poly, b: &Poly) -> Fq {
        self.ring.trace_tr(&self.ring.mul(&self.ring.star(a), b))
    }

    /// `B(v,w) = η(v1,w2) - η(v2,w1)`
    pub fn b_form(&self, v: &WVector, w: &WVector) -> Fq {
        self.field().sub(self.eta(&v.first, &w.second), self.eta(&v.second, &w.first))
    }

    /// `B` on indices through the Gram matrix.
    #[inline]
    pub fn b_index(&self, v: usize, w: usize) -> Fq {
        linalg::dot(self.field(), &self.gram_rows[v], &self.coords[w])
    }

    /// `χ(v,w) = ψ(B(v,w))`
    #[inline]
    pub fn chi(&self, v: usize, w: usize) -> Scalar {
        self.field().psi(self.b_index(v, w))
    }

    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    /// `𝔹(v,w) = v1* w2 - v2* w1`
    pub fn hermitian(&self, v: &WVector, w: &WVector) -> Poly {
        let r = &self.ring;
        r.sub(&r.mul(&r.star(&v.first), &w.second), &r.mul(&r.star(&v.second), &w.first))
    }

    /// Right action `v.g = (v1 a + v2 c, v1 b + v2 d)`.
    pub fn act(&self, g: &StarMatrix<Poly>, v: &WVector) -> WVector {
        let r = &self.ring;
        WVector::new(
            r.add(&r.mul(&v.first, &g.a), &r.mul(&v.second, &g.c)),
            r.add(&r.mul(&v.first, &g.b), &r.mul(&v.second, &g.d)),
        )
    }

    pub fn act_index(&self, g: &StarMatrix<Poly>, v: usize) -> usize {
        self.index(&self.act(g, &self.vector(v)))
    }

    /// `F_q`-matrix of `v -> v.g` acting on row coordinate vectors.
    pub fn action_matrix(&self, g: &StarMatrix<Poly>) -> Vec<Row> {
        (0..self.dim())
            .map(|i| self.coords[self.index(&self.act(g, &self.unit_vector(i)))].clone())
            .collect()
    }

    /// The permutation `v -> v.g` of `W`.
    pub fn action_permutation(&self, g: &StarMatrix<Poly>) -> Vec<usize> {
        let mat = self.action_matrix(g);
        (0..self.size_w).map(|v| self.index_of_coords(&self.row_times(&self.coords[v], &mat))).collect()
    }

    /// Canonical basis of the submodule generated by `gens`.
    pub fn generated_basis(&self, gens: &[usize]) -> Vec<Row> {
        let rows: Vec<Row> = gens.iter().flat_map(|&v| self.cyclic_rows(v)).collect();
        canonical_basis(self.field(), &rows)
    }

    /// Rows spanning the cyclic submodule `v A`.
    fn cyclic_rows(&self, v: usize) -> Vec<Row> {
        let mut out = Vec::with_capacity(self.m());
        let mut cur = self.vector(v);
        let x = self.ring.x();
        for _ in 0..self.m() {
            out.push(self.coords[self.index(&cur)].clone());
            cur = self.scale(&cur, &x);
        }
        out
    }

    /// Whether `B` vanishes on the span of `basis`.
    pub fn is_isotropic(&self, basis: &[Row]) -> bool {
        let f = self.field();
        basis.iter().all(|v| {
            let gv = self.row_times(v, &self.gram);
            basis.iter().all(|w| linalg::dot(f, &gv, w) == Fq::ZERO)
        })
    }

    /// Basis of the `B`-orthogonal of a subspace.
    pub fn orthogonal(&self, basis: &[Row]) -> Vec<Row> {
        let rows: Vec<Row> = basis.iter().map(|v| self.row_times(v, &self.gram)).collect();
        linalg::kernel(self.field(), &rows, self.dim())
    }

    /// Basis of `{w : 𝔹(v,w) = 0 for all v in the span}`.
    pub fn hermitian_orthogonal(&self, basis: &[Row]) -> Vec<Row> {
        let m = self.m();
        let units: Vec<WVector> = (0..self.dim()).map(|j| self.unit_vector(j)).collect();
        let mut rows = Vec::new();
        for v in basis {
            let vv = self.vector(self.index_of_coords(v));
            let cols: Vec<Row> = units.iter().map(|e| self.ring.coords(&self.hermitian(&vv, e))).collect();
            rows.extend((0..m).map(|k| cols.iter().map(|c| c[k]).collect::<Row>()));
        }
        linalg::kernel(self.field(), &rows, self.dim())
    }

    fn same_subspace(&self, a: &[Row], b: &[Row]) -> bool {
        canonical_basis(self.field(), a) == canonical_basis(self.field(), b)
    }

    /// `L = L^⊥` for the symplectic form `B`.
    pub fn is_lagrangian_b(&self, basis: &[Row]) -> bool {
        self.same_subspace(basis, &self.orthogonal(basis))
    }

    /// `L` equals its orthogonal for the anti-hermitian form `𝔹`.
    pub fn is_lagrangian_hermitian(&self, basis: &[Row]) -> bool {
        self.same_subspace(basis, &self.hermitian_orthogonal(basis))
    }

    /// Set-based test: an `A`-submodule, totally isotropic, equal to its
    /// orthogonal.
    pub fn is_lagrangian(&self, elements: &BTreeSet<usize>) -> bool {
        if !elements.contains(&0) {
            return false;
        }
        let x = self.ring.x();
        for &v in elements {
            let vv = self.vector(v);
            if !elements.contains(&self.index(&self.scale(&vv, &x))) {
                return false;
            }
            for t in self.field().elements() {
                if !elements.contains(&self.index(&self.scale(&vv, &self.ring.scalar(t)))) {
                    return false;
                }
            }
            for &w in elements {
                if !elements.contains(&self.add(v, w)) || self.b_index(v, w) != Fq::ZERO {
                    return false;
                }
            }
        }
        let perp: BTreeSet<usize> =
            (0..self.size_w).filter(|&w| elements.iter().all(|&v| self.b_index(v, w) == Fq::ZERO)).collect();
        perp == *elements
    }

    /// Every `A`-submodule generated by at most two elements, each as a
    /// canonical basis, in sorted order.
    pub fn candidate_submodules(&self) -> Vec<Vec<Row>> {
        let cyclic = self.cyclic_submodules();
        let mut all: BTreeSet<Vec<Row>> = cyclic.iter().cloned().collect();
        for (i, a) in cyclic.iter().enumerate() {
            for b in &cyclic[i + 1..] {
                let rows: Vec<Row> = a.iter().chain(b).cloned().collect();
                all.insert(canonical_basis(self.field(), &rows));
            }
        }
        all.into_iter().collect()
    }

    fn cyclic_submodules(&self) -> Vec<Vec<Row>> {
        let set: BTreeSet<Vec<Row>> =
            (0..self.size_w).map(|v| canonical_basis(self.field(), &self.cyclic_rows(v))).collect();
        set.into_iter().collect()
    }

    pub fn span_indices(&self, basis: &[Row]) -> Vec<usize> {
        let mut out: Vec<usize> =
            linalg::span(self.field(), basis, self.dim()).iter().map(|c| self.index_of_coords(c)).collect();
        out.sort_unstable();
        out
    }
}

/// Reduced row echelon basis, the canonical key of a subspace.
pub fn canonical_basis(f: &FiniteField, rows: &[Row]) -> Vec<Row> {
    let mut work = rows.to_vec();
    linalg::rref(f, &mut work);
    work
}

/// Coset data of `W/L`: the minimal representative of each coset, and for
/// every `w` its coset and the `ζ ∈ L` with `w = rep + ζ`.
#[derive(Debug)]
pub struct Cosets {
    pub reps: Vec<usize>,
    pub coset_of: Vec<u32>,
    pub offset: Vec<u32>,
}

#[derive(Debug)]
pub struct Lagrangian {
    pub id: usize,
    pub generators: Vec<WVector>,
    /// Sorted indices of all members.
    pub elements: Vec<usize>,
    basis: Vec<Row>,
    cosets: OnceLock<Cosets>,
}

impl Lagrangian {
    pub fn contains(&self, v: usize) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn cosets(&self, module: &SelfDualModule) -> &Cosets {
        self.cosets.get_or_init(|| {
            let n = module.size_w();
            let mut coset_of = vec![u32::MAX; n];
            let mut offset = vec![0u32; n];
            let mut reps = Vec::new();
            for w in 0..n {
                if coset_of[w] != u32::MAX {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push(w);
                for &z in &self.elements {
                    let v = module.add(w, z);
                    coset_of[v] = k;
                    offset[v] = z as u32;
                }
            }
            Cosets { reps, coset_of, offset }
        })
    }
}

/// Every Lagrangian of `W`, with stable ids.
#[derive(Debug)]
pub struct LagrangianTable {
    lagrangians: Vec<Lagrangian>,
    by_basis: HashMap<Vec<Row>, usize>,
}

impl LagrangianTable {
    /// Lagrangians are generated by at most two elements over the local ring
    /// `A_m`: cyclic isotropic submodules of dimension `m`, plus sums of two
    /// orthogonal isotropic cyclic submodules.
    pub fn enumerate(module: &SelfDualModule) -> Self {
        let f = module.field();
        let m = module.m();
        let iso: Vec<(Vec<Row>, usize)> = {
            let mut seen: BTreeSet<Vec<Row>> = BTreeSet::new();
            let mut out = Vec::new();
            for v in 0..module.size_w() {
                let key = canonical_basis(f, &module.cyclic_rows(v));
                if module.is_isotropic(&key) && seen.insert(key.clone()) {
                    out.push((key, v));
                }
            }
            out
        };
        let mut found: BTreeSet<(Vec<usize>, Vec<Row>, Vec<usize>)> = BTreeSet::new();
        for (basis, v) in &iso {
            if basis.len() == m {
                found.insert((module.span_indices(basis), basis.clone(), vec![*v]));
            }
        }
        for (i, (a, va)) in iso.iter().enumerate() {
            if a.len() >= m {
                continue;
            }
            for (b, vb) in &iso[i + 1..] {
                let rows: Vec<Row> = a.iter().chain(b).cloned().collect();
                let basis = canonical_basis(f, &rows);
                if basis.len() == m && module.is_isotropic(&basis) {
                    found.insert((module.span_indices(&basis), basis, vec![*va, *vb]));
                }
            }
        }
        // keep one generating set per Lagrangian: the first in sorted order
        let mut lagrangians: Vec<Lagrangian> = Vec::new();
        for (elements, basis, gens) in found {
            if lagrangians.last().is_some_and(|l| l.elements == elements) {
                continue;
            }
            lagrangians.push(Lagrangian {
                id: lagrangians.len(),
                generators: gens.iter().map(|&g| module.vector(g)).collect(),
                elements,
                basis,
                cosets: OnceLock::new(),
            });
        }
        Self::from_list(lagrangians)
    }

    fn from_list(lagrangians: Vec<Lagrangian>) -> Self {
        let by_basis = lagrangians.iter().map(|l| (l.basis.clone(), l.id)).collect();
        LagrangianTable { lagrangians, by_basis }
    }

    /// Rebuilds a table from stored generators and element lists.
    pub fn from_records(module: &SelfDualModule, records: Vec<(Vec<WVector>, Vec<usize>)>) -> Result<Self> {
        let mut lagrangians = Vec::new();
        for (id, (generators, elements)) in records.into_iter().enumerate() {
            let rows: Vec<Row> = elements.iter().map(|&v| module.coords(v).clone()).collect();
            let basis = canonical_basis(module.field(), &rows);
            if module.span_indices(&basis) != elements || !module.is_lagrangian_b(&basis) {
                return Err(Error::Parse(format!("stored Lagrangian {id} is not a Lagrangian")));
            }
            lagrangians.push(Lagrangian { id, generators, elements, basis, cosets: OnceLock::new() });
        }
        Ok(Self::from_list(lagrangians))
    }

    pub fn len(&self) -> usize {
        self.lagrangians.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lagrangians.is_empty()
    }

    pub fn get(&self, id: usize) -> &Lagrangian {
        &self.lagrangians[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Lagrangian> {
        self.lagrangians.iter()
    }

    pub fn find_basis(&self, f: &FiniteField, rows: &[Row]) -> Option<usize> {
        self.by_basis.get(&canonical_basis(f, rows)).copied()
    }

    /// The Lagrangian generated by `gens`, if it is one.
    pub fn find_generated(&self, module: &SelfDualModule, gens: &[WVector]) -> Option<usize> {
        let idx: Vec<usize> = gens.iter().map(|v| module.index(v)).collect();
        self.find_basis(module.field(), &module.generated_basis(&idx))
    }

    /// `L0 = <(0,1)>`
    pub fn base_point(&self, module: &SelfDualModule) -> usize {
        let e = WVector::new(module.ring().zero(), module.ring().one());
        self.find_basis(module.field(), &module.cyclic_rows(module.index(&e))).expect("<(0,1)> is Lagrangian")
    }

    /// `L1 = <(1,0)>`
    pub fn supplement(&self, module: &SelfDualModule) -> usize {
        let e = WVector::new(module.ring().one(), module.ring().zero());
        self.find_basis(module.field(), &module.cyclic_rows(module.index(&e))).expect("<(1,0)> is Lagrangian")
    }

    /// `g·L = L.g^{-1}`, located in the table.
    pub fn act(&self, module: &SelfDualModule, g: &StarMatrix<Poly>, id: usize) -> Result<usize> {
        let g_inv = group::inv(module.ring(), g)?;
        self.act_right(module, &g_inv, id)
    }

    /// `L.g`, located in the table.
    pub fn act_right(&self, module: &SelfDualModule, g: &StarMatrix<Poly>, id: usize) -> Result<usize> {
        let mat = module.action_matrix(g);
        let rows: Vec<Row> = self.get(id).basis.iter().map(|v| module.row_times(v, &mat)).collect();
        self.find_basis(module.field(), &rows)
            .ok_or_else(|| Error::Internal("image of a Lagrangian is missing from the table".into()))
    }
}
