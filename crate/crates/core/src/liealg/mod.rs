//! The matrix Lie algebra `so_{2r+1}` over the coordinate algebra with its
//! involution: sparse matrices, the commutator bracket, membership, the
//! shorthand constructors and the root-space decomposition.

pub mod axioms;
pub mod lemmas;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coordalg::{CoordAlgebra, NCElement};
use crate::error::{Error, Result};
use crate::rootsys::{root_of_position, GradingDegree};
use crate::scalar::Scalar;

/// Sparse square matrix over the coordinate algebra. Indices are 1-based;
/// absent entries are zero and stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), NCElement>,
}

impl CoordMatrix {
    pub fn zero(n: usize) -> Self {
        CoordMatrix { n, entries: BTreeMap::new() }
    }

    /// `E_{i,j}(a)`: the single entry `a` at `(i, j)`.
    pub fn single(n: usize, i: usize, j: usize, a: NCElement) -> Result<Self> {
        let mut m = CoordMatrix::zero(n);
        m.check(i)?;
        m.check(j)?;
        m.add_entry(i, j, &a);
        Ok(m)
    }

    /// The anti-diagonal matrix of ones.
    pub fn g(n: usize) -> Self {
        let mut m = CoordMatrix::zero(n);
        for i in 1..=n {
            m.add_entry(i, n + 1 - i, &NCElement::one());
        }
        m
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::Index { index: i, bound: self.n })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&NCElement> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &NCElement)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_entry(&mut self, i: usize, j: usize, a: &NCElement) {
        if a.is_zero() {
            return;
        }
        match self.entries.get_mut(&(i, j)) {
            Some(e) => {
                e.add_assign(a);
                if e.is_zero() {
                    self.entries.remove(&(i, j));
                }
            }
            None => {
                self.entries.insert((i, j), a.clone());
            }
        }
    }

    pub fn add(&self, other: &CoordMatrix) -> CoordMatrix {
        let mut out = self.clone();
        for (&(i, j), a) in &other.entries {
            out.add_entry(i, j, a);
        }
        out
    }

    pub fn sub(&self, other: &CoordMatrix) -> CoordMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CoordMatrix {
        CoordMatrix { n: self.n, entries: self.entries.iter().map(|(k, a)| (*k, a.neg())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> CoordMatrix {
        if s.is_zero() {
            return CoordMatrix::zero(self.n);
        }
        CoordMatrix { n: self.n, entries: self.entries.iter().map(|(k, a)| (*k, a.scale(s))).collect() }
    }

    /// Matrix product with entries multiplied in the coordinate algebra.
    pub fn mul(&self, other: &CoordMatrix, alg: &CoordAlgebra) -> CoordMatrix {
        let mut rows: BTreeMap<usize, Vec<(usize, &NCElement)>> = BTreeMap::new();
        for (&(k, j), b) in &other.entries {
            rows.entry(k).or_default().push((j, b));
        }
        let mut out = CoordMatrix::zero(self.n);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    out.add_entry(i, j, &alg.mul(a, b));
                }
            }
        }
        out
    }

    /// `(M^eta)^t`: transpose with the involution applied entrywise.
    pub fn eta_transpose(&self, alg: &CoordAlgebra) -> CoordMatrix {
        let mut out = CoordMatrix::zero(self.n);
        for (&(i, j), a) in &self.entries {
            out.add_entry(j, i, &alg.eta(a));
        }
        out
    }

    /// `(row, col, rendering)` triples in row-major order.
    pub fn render(&self, alg: &CoordAlgebra) -> Vec<(usize, usize, String)> {
        self.entries.iter().map(|(&(i, j), a)| (i, j, alg.render(a))).collect()
    }
}

/// The five families of off-diagonal shorthand elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Vert,
    Hort,
    Ul,
    Ur,
    Bl,
}

impl Shape {
    pub const ALL: [Shape; 5] = [Shape::Vert, Shape::Hort, Shape::Ul, Shape::Ur, Shape::Bl];

    /// Number of indices: one for `Vert`/`Hort`, two otherwise.
    pub fn arity(self) -> usize {
        match self {
            Shape::Vert | Shape::Hort => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Vert => "VERT",
            Shape::Hort => "HORT",
            Shape::Ul => "UL",
            Shape::Ur => "UR",
            Shape::Bl => "BL",
        }
    }

    /// Case-insensitive inverse of [`Shape::name`].
    pub fn parse(s: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|sh| sh.name().eq_ignore_ascii_case(s))
    }
}

impl core::fmt::Display for Shape {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A matrix satisfying the membership condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SoElement {
    m: CoordMatrix,
}

impl SoElement {
    pub fn matrix(&self) -> &CoordMatrix {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, other: &SoElement) -> SoElement {
        SoElement { m: self.m.add(&other.m) }
    }

    pub fn sub(&self, other: &SoElement) -> SoElement {
        SoElement { m: self.m.sub(&other.m) }
    }

    pub fn neg(&self) -> SoElement {
        SoElement { m: self.m.neg() }
    }

    pub fn scale(&self, s: &Scalar) -> SoElement {
        SoElement { m: self.m.scale(s) }
    }
}

/// Parts of an element grouped by the degree of their matrix positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousDecomposition {
    pub parts: BTreeMap<GradingDegree, SoElement>,
}

impl HomogeneousDecomposition {
    /// The common degree when there is exactly one nonzero part.
    pub fn degree(&self) -> Option<&GradingDegree> {
        if self.parts.len() == 1 {
            self.parts.keys().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn sum(&self, n: usize) -> SoElement {
        let mut m = CoordMatrix::zero(n);
        for p in self.parts.values() {
            m = m.add(&p.m);
        }
        SoElement { m }
    }
}

/// `so_{2r+1}` over a fixed coordinate algebra.
#[derive(Clone, Debug)]
pub struct SoAlgebra {
    alg: CoordAlgebra,
    r: usize,
}

impl SoAlgebra {
    pub fn new(alg: CoordAlgebra) -> Self {
        let r = alg.spec().rank();
        SoAlgebra { alg, r }
    }

    pub fn coords(&self) -> &CoordAlgebra {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Matrix dimension `2r + 1`.
    pub fn dim(&self) -> usize {
        2 * self.r + 1
    }

    /// `2r + 2 - p`, the mirror position of `p`.
    pub fn mirror(&self, p: usize) -> usize {
        2 * self.r + 2 - p
    }

    fn mid(&self) -> usize {
        self.r + 1
    }

    pub fn zero(&self) -> SoElement {
        SoElement { m: CoordMatrix::zero(self.dim()) }
    }

    /// `(M^eta)^t G + G M`, which vanishes exactly on members.
    pub fn membership_defect(&self, m: &CoordMatrix) -> CoordMatrix {
        let g = CoordMatrix::g(m.n());
        m.eta_transpose(&self.alg).mul(&g, &self.alg).add(&g.mul(m, &self.alg))
    }

    pub fn membership_check(&self, m: &CoordMatrix) -> bool {
        m.n() == self.dim() && self.membership_defect(m).is_zero()
    }

    /// Wrap a matrix, refusing anything outside the algebra.
    pub fn element(&self, m: CoordMatrix) -> Result<SoElement> {
        if m.n() != self.dim() {
            return Err(Error::Dimension { rows: self.dim(), row: 1, cols: m.n() });
        }
        if !self.membership_check(&m) {
            return Err(Error::Membership(self.render_matrix(&m)));
        }
        Ok(SoElement { m })
    }

    fn index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.r {
            Err(Error::Index { index: k, bound: self.r })
        } else {
            Ok(())
        }
    }

    /// `E_{i,j}(a) + E_{k,l}(-eta(a))`.
    fn pair(&self, (i, j): (usize, usize), (k, l): (usize, usize), a: &NCElement) -> SoElement {
        let mut m = CoordMatrix::zero(self.dim());
        m.add_entry(i, j, a);
        m.add_entry(k, l, &self.alg.eta(a).neg());
        SoElement { m }
    }

    pub fn vert(&self, k: usize, a: &NCElement) -> Result<SoElement> {
        self.index(k)?;
        Ok(self.pair((k, self.mid()), (self.mid(), self.mirror(k)), a))
    }

    pub fn hort(&self, k: usize, a: &NCElement) -> Result<SoElement> {
        self.index(k)?;
        Ok(self.pair((self.mid(), k), (self.mirror(k), self.mid()), a))
    }

    pub fn ul(&self, p: usize, q: usize, a: &NCElement) -> Result<SoElement> {
        self.index(p)?;
        self.index(q)?;
        Ok(self.pair((p, q), (self.mirror(q), self.mirror(p)), a))
    }

    pub fn ur(&self, p: usize, q: usize, a: &NCElement) -> Result<SoElement> {
        self.index(p)?;
        self.index(q)?;
        Ok(self.pair((p, self.mirror(q)), (q, self.mirror(p)), a))
    }

    pub fn bl(&self, p: usize, q: usize, a: &NCElement) -> Result<SoElement> {
        self.index(p)?;
        self.index(q)?;
        Ok(self.pair((self.mirror(p), q), (self.mirror(q), p), a))
    }

    /// The shorthand element of `shape` at `indices` with coordinate `a`.
    pub fn construct(&self, shape: Shape, indices: &[usize], a: &NCElement) -> Result<SoElement> {
        if indices.len() != shape.arity() {
            return Err(Error::Arity { shape: shape.name(), expected: shape.arity(), got: indices.len() });
        }
        match shape {
            Shape::Vert => self.vert(indices[0], a),
            Shape::Hort => self.hort(indices[0], a),
            Shape::Ul => self.ul(indices[0], indices[1], a),
            Shape::Ur => self.ur(indices[0], indices[1], a),
            Shape::Bl => self.bl(indices[0], indices[1], a),
        }
    }

    /// Matrix position holding the coordinate `a` of `construct(shape, indices, a)`.
    pub fn primary_position(&self, shape: Shape, indices: &[usize]) -> Result<(usize, usize)> {
        if indices.len() != shape.arity() {
            return Err(Error::Arity { shape: shape.name(), expected: shape.arity(), got: indices.len() });
        }
        for &k in indices {
            self.index(k)?;
        }
        Ok(match shape {
            Shape::Vert => (indices[0], self.mid()),
            Shape::Hort => (self.mid(), indices[0]),
            Shape::Ul => (indices[0], indices[1]),
            Shape::Ur => (indices[0], self.mirror(indices[1])),
            Shape::Bl => (self.mirror(indices[0]), indices[1]),
        })
    }

    /// The entry of `x` at the primary position of `shape`/`indices`.
    pub fn primary_entry(&self, x: &SoElement, shape: Shape, indices: &[usize]) -> Result<NCElement> {
        let (i, j) = self.primary_position(shape, indices)?;
        Ok(x.m.get(i, j).cloned().unwrap_or_default())
    }

    /// Diagonal element `ul(p, p, s)`.
    pub fn h_diag(&self, p: usize, s: &Scalar) -> Result<SoElement> {
        self.ul(p, p, &NCElement::scalar(s.clone()))
    }

    /// `E_{r+1,r+1}(b)`, a member exactly when `eta(b) = -b`.
    pub fn center(&self, b: &NCElement) -> Result<SoElement> {
        self.element(CoordMatrix::single(self.dim(), self.mid(), self.mid(), b.clone())?)
    }

    /// The commutator `ab - ba`, checked to stay in the algebra.
    pub fn bracket(&self, a: &SoElement, b: &SoElement) -> Result<SoElement> {
        if a.m.n() != self.dim() || b.m.n() != self.dim() {
            return Err(Error::Dimension { rows: self.dim(), row: 1, cols: a.m.n().max(b.m.n()) });
        }
        let m = a.m.mul(&b.m, &self.alg).sub(&b.m.mul(&a.m, &self.alg));
        if !self.membership_check(&m) {
            return Err(Error::Membership(self.render_matrix(&m)));
        }
        Ok(SoElement { m })
    }

    /// Group entries by the degree of their positions.
    pub fn decompose(&self, x: &SoElement) -> HomogeneousDecomposition {
        let mut parts: BTreeMap<GradingDegree, CoordMatrix> = BTreeMap::new();
        for (&(i, j), a) in x.m.entries() {
            let deg = root_of_position(i, j, self.r).expect("stored indices are in range");
            parts.entry(deg).or_insert_with(|| CoordMatrix::zero(self.dim())).add_entry(i, j, a);
        }
        HomogeneousDecomposition { parts: parts.into_iter().map(|(d, m)| (d, SoElement { m })).collect() }
    }

    /// `{(i,j): a, ...}` rendering used in messages.
    pub fn render_matrix(&self, m: &CoordMatrix) -> String {
        let parts: Vec<String> = m.render(&self.alg).into_iter().map(|(i, j, s)| format!("({i},{j}): {s}")).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn render(&self, x: &SoElement) -> String {
        self.render_matrix(&x.m)
    }
}
