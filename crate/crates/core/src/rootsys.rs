//! Roots of B_r / BC_r in the epsilon basis, Cartan pairings, and the
//! affinized GIM matrix.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

fn render_vec(v: &[i32]) -> String {
    let mut s = String::from("[");
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{c}"));
    }
    s.push(']');
    s
}

/// Shape of a root of BC_r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootKind {
    /// `+-e_i +- e_j`, i != j
    Long,
    /// `+-e_i`
    Short,
    /// `+-2 e_i`
    ExtraLong,
}

fn classify(coeffs: &[i32]) -> Option<RootKind> {
    let nz: Vec<i32> = coeffs.iter().copied().filter(|&c| c != 0).collect();
    match nz.as_slice() {
        [a, b] if a.abs() == 1 && b.abs() == 1 => Some(RootKind::Long),
        [a] if a.abs() == 1 => Some(RootKind::Short),
        [a] if a.abs() == 2 => Some(RootKind::ExtraLong),
        _ => None,
    }
}

/// A root of BC_r given by its epsilon coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Result<Self> {
        if classify(&coeffs).is_none() {
            return Err(Error::InvalidRoot(render_vec(&coeffs)));
        }
        Ok(Root { coeffs })
    }

    /// `e_i - e_j` in rank `r` (1-based indices).
    pub fn diff(r: usize, i: usize, j: usize) -> Result<Self> {
        Self::two(r, i, 1, j, -1)
    }

    /// `s e_i + t e_j` in rank `r` (1-based indices).
    pub fn two(r: usize, i: usize, s: i32, j: usize, t: i32) -> Result<Self> {
        for &k in &[i, j] {
            if k == 0 || k > r {
                return Err(Error::Index { index: k, bound: r });
            }
        }
        let mut c = vec![0; r];
        c[i - 1] += s;
        c[j - 1] += t;
        Self::new(c)
    }

    /// `s e_i` in rank `r`.
    pub fn one(r: usize, i: usize, s: i32) -> Result<Self> {
        if i == 0 || i > r {
            return Err(Error::Index { index: i, bound: r });
        }
        let mut c = vec![0; r];
        c[i - 1] = s;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn kind(&self) -> RootKind {
        classify(&self.coeffs).expect("validated at construction")
    }

    pub fn negated(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Nonzero positions as `(1-based index, coefficient)`, ascending.
    pub fn support(&self) -> Vec<(usize, i32)> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    /// For a long root, its shape as a [`LongShape`].
    pub fn long_shape(&self) -> Option<LongShape> {
        if self.kind() != RootKind::Long {
            return None;
        }
        let s = self.support();
        let ((a, ca), (b, cb)) = (s[0], s[1]);
        Some(if ca == cb {
            LongShape::Sum { sign: ca, a, b }
        } else if ca == 1 {
            LongShape::Diff { p: a, q: b }
        } else {
            LongShape::Diff { p: b, q: a }
        })
    }

    /// True for `+-(e_i + e_{i+1})`, the roots that form the set Omega.
    pub fn is_omega(&self) -> bool {
        matches!(self.long_shape(), Some(LongShape::Sum { a, b, .. }) if b == a + 1)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_vec(&self.coeffs))
    }
}

/// Long roots split by shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LongShape {
    /// `e_p - e_q`
    Diff { p: usize, q: usize },
    /// `sign * (e_a + e_b)` with `a < b`
    Sum { sign: i32, a: usize, b: usize },
}

/// `2 (a,b) / (a,a)` in the epsilon dot product.
pub fn cartan_pairing(a: &Root, b: &Root) -> Result<i64> {
    if a.rank() != b.rank() {
        return Err(Error::InvalidRoot(format!("{a} and {b} have different ranks")));
    }
    let num = 2 * a.dot(b);
    let den = a.dot(a);
    if num % den != 0 {
        return Err(Error::InvalidRoot(format!("pairing of {a} with {b} is not integral")));
    }
    Ok(num / den)
}

/// `(e_1 - e_2, ..., e_{r-1} - e_r, e_r)`.
pub fn base_roots(r: usize) -> Result<Vec<Root>> {
    if r < 3 {
        return Err(Error::Rank(r));
    }
    let mut out = Vec::with_capacity(r);
    for i in 1..r {
        out.push(Root::diff(r, i, i + 1)?);
    }
    out.push(Root::one(r, r, 1)?);
    Ok(out)
}

/// Rank plus the ordered list of adjoined long roots with their copy counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinizationSpec {
    rank: usize,
    adjoined: Vec<(Root, usize)>,
}

impl AffinizationSpec {
    pub fn new(rank: usize, adjoined: Vec<(Root, usize)>) -> Result<Self> {
        if rank < 3 {
            return Err(Error::Rank(rank));
        }
        let mut seen = BTreeSet::new();
        for (root, copies) in &adjoined {
            if root.rank() != rank {
                return Err(Error::InvalidRoot(format!("{root} has length {} but rank is {rank}", root.rank())));
            }
            if root.kind() != RootKind::Long {
                return Err(Error::UnsupportedRoot(format!("{root}")));
            }
            if *copies == 0 {
                return Err(Error::Copies(format!("{root}")));
            }
            if !seen.insert(root.clone()) {
                return Err(Error::DuplicateRoot(format!("{root}")));
            }
        }
        Ok(AffinizationSpec { rank, adjoined })
    }

    /// Spec with nothing adjoined.
    pub fn plain(rank: usize) -> Result<Self> {
        Self::new(rank, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn adjoined(&self) -> &[(Root, usize)] {
        &self.adjoined
    }

    /// Total number of adjoined generators, counting copies.
    pub fn d(&self) -> usize {
        self.adjoined.iter().map(|(_, c)| c).sum()
    }

    /// Generator sources in matrix order: base roots, then each adjoined
    /// root's copies consecutively.
    pub fn sources(&self) -> Vec<Source> {
        let mut out: Vec<Source> = (1..=self.rank).map(Source::Base).collect();
        for (idx, (_, copies)) in self.adjoined.iter().enumerate() {
            for k in 1..=*copies {
                out.push(Source::Adjoined { root: idx, copy: k });
            }
        }
        out
    }

    /// The root attached to a generator source.
    pub fn source_root(&self, s: Source) -> Root {
        match s {
            Source::Base(i) => base_roots(self.rank).expect("rank validated")[i - 1].clone(),
            Source::Adjoined { root, .. } => self.adjoined[root].0.clone(),
        }
    }
}

/// Where a generator triple comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// Simple root `alpha_i`, 1-based.
    Base(usize),
    /// Copy `copy` (1-based) of the adjoined root at position `root` (0-based) in the adjoined list.
    Adjoined { root: usize, copy: usize },
}

/// A square integer matrix, validated only as square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GimMatrix {
    entries: Vec<Vec<i64>>,
}

impl GimMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { rows: n, row: i + 1, cols: row.len() });
            }
        }
        Ok(GimMatrix { entries: rows })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_gim(&self) -> bool {
        gim_axioms(&self.entries)
    }
}

fn gim_axioms(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row[i] == 2
            && row.iter().enumerate().all(|(j, &a)| {
                let b = m[j][i];
                i == j || ((a < 0) == (b < 0) && (a > 0) == (b > 0))
            })
    })
}

/// GIM predicate on a raw square matrix.
pub fn is_gim(m: &[Vec<i64>]) -> Result<bool> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension { rows: n, row: i + 1, cols: row.len() });
        }
    }
    Ok(gim_axioms(m))
}

/// The `(r+d) x (r+d)` matrix of Cartan pairings in generator order.
pub fn build_affinized_matrix(spec: &AffinizationSpec) -> Result<GimMatrix> {
    let roots: Vec<Root> = spec.sources().into_iter().map(|s| spec.source_root(s)).collect();
    let mut rows = Vec::with_capacity(roots.len());
    for a in &roots {
        let mut row = Vec::with_capacity(roots.len());
        for b in &roots {
            row.push(cartan_pairing(a, b)?);
        }
        rows.push(row);
    }
    GimMatrix::from_rows(rows)
}

/// Distinct adjoined roots split into Omega (`+-(e_i + e_{i+1})`) and Theta.
pub fn classify_omega_theta(spec: &AffinizationSpec) -> (Vec<Root>, Vec<Root>) {
    let mut omega = Vec::new();
    let mut theta = Vec::new();
    for (root, _) in spec.adjoined() {
        if root.is_omega() {
            omega.push(root.clone());
        } else {
            theta.push(root.clone());
        }
    }
    (omega, theta)
}

/// An element of the integer lattice spanned by the roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradingDegree {
    coeffs: Vec<i32>,
}

impl GradingDegree {
    pub fn zero(r: usize) -> Self {
        GradingDegree { coeffs: vec![0; r] }
    }

    pub fn from_coeffs(coeffs: Vec<i32>) -> Self {
        GradingDegree { coeffs }
    }

    pub fn of_root(root: &Root) -> Self {
        GradingDegree { coeffs: root.coeffs().to_vec() }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The root with these coordinates, if it is one.
    pub fn as_root(&self) -> Option<Root> {
        Root::new(self.coeffs.clone()).ok()
    }

    /// Membership in `Delta u {0}` where Delta is BC_r.
    pub fn in_delta_or_zero(&self) -> bool {
        self.is_zero() || classify(&self.coeffs).is_some()
    }

    pub fn add(&self, other: &GradingDegree) -> GradingDegree {
        GradingDegree { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> GradingDegree {
        GradingDegree { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for GradingDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            f.write_str(&render_vec(&self.coeffs))
        }
    }
}

/// `lambda_i - lambda_j` for `lambda = (e_1, .., e_r, 0, -e_r, .., -e_1)`.
pub fn root_of_position(i: usize, j: usize, r: usize) -> Result<GradingDegree> {
    let n = 2 * r + 1;
    for &k in &[i, j] {
        if k == 0 || k > n {
            return Err(Error::Index { index: k, bound: n });
        }
    }
    Ok(position_weight(i, r).add(&position_weight(j, r).neg()))
}

fn position_weight(i: usize, r: usize) -> GradingDegree {
    let mut c = vec![0; r];
    if i <= r {
        c[i - 1] = 1;
    } else if i > r + 1 {
        c[2 * r + 1 - i] = -1;
    }
    GradingDegree { coeffs: c }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3(v: [i32; 3]) -> Root {
        Root::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gim_examples() {
        let m = vec![vec![2, -1, 0, 1], vec![-1, 2, -1, 1], vec![0, -2, 2, -2], vec![1, 1, -1, 2]];
        assert!(is_gim(&m).unwrap());
        assert!(is_gim(&[vec![2, 0], vec![0, 2]]).unwrap());
        assert!(!is_gim(&[vec![2, -1], vec![1, 2]]).unwrap());
        assert!(matches!(is_gim(&[vec![2, 0], vec![0]]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn pairing_examples() {
        let a12 = r3([1, -1, 0]);
        let a23 = r3([0, 1, -1]);
        let e3 = r3([0, 0, 1]);
        assert_eq!(cartan_pairing(&a12, &a23).unwrap(), -1);
        assert_eq!(cartan_pairing(&e3, &e3).unwrap(), 2);
        assert_eq!(cartan_pairing(&e3, &a23).unwrap(), -2);
        assert_eq!(cartan_pairing(&a23, &e3).unwrap(), -1);
    }

    #[test]
    fn base_and_cartan() {
        let b = base_roots(3).unwrap();
        assert_eq!(b, vec![r3([1, -1, 0]), r3([0, 1, -1]), r3([0, 0, 1])]);
        assert_eq!(base_roots(4).unwrap().len(), 4);
        assert_eq!(base_roots(2), Err(Error::Rank(2)));
        let m = build_affinized_matrix(&AffinizationSpec::plain(3).unwrap()).unwrap();
        // a_ij = <alpha_i, alpha_j^vee> style: row i pairs alpha_i against alpha_j
        assert_eq!(m.rows(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        let transposed: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| m.get(j, i)).collect()).collect();
        assert_eq!(transposed, vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
    }

    #[test]
    fn affine_b3() {
        let spec = AffinizationSpec::new(3, vec![(r3([-1, -1, 0]), 1)]).unwrap();
        let m = build_affinized_matrix(&spec).unwrap();
        assert_eq!(m.rows(), &[vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -2, 2, 0], vec![0, -1, 0, 2]]);
        assert!(m.is_gim());
    }

    #[test]
    fn positive_entry_against_alpha2() {
        let spec = AffinizationSpec::new(3, vec![(r3([1, 1, 0]), 1)]).unwrap();
        let m = build_affinized_matrix(&spec).unwrap();
        assert_eq!(m.get(3, 1), 1);
        assert_eq!(m.get(1, 3), 1);
        assert!(m.is_gim());
    }

    #[test]
    fn copies_pair_to_two() {
        let spec = AffinizationSpec::new(3, vec![(r3([1, 0, -1]), 2)]).unwrap();
        let m = build_affinized_matrix(&spec).unwrap();
        assert_eq!(m.n(), 5);
        assert_eq!(m.get(3, 4), 2);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(AffinizationSpec::new(3, vec![(r3([1, 0, 0]), 1)]), Err(Error::UnsupportedRoot(_))));
        assert!(matches!(
            AffinizationSpec::new(3, vec![(r3([1, 1, 0]), 1), (r3([1, 1, 0]), 1)]),
            Err(Error::DuplicateRoot(_))
        ));
        assert!(matches!(AffinizationSpec::new(3, vec![(r3([1, 1, 0]), 0)]), Err(Error::Copies(_))));
        assert!(Root::new(vec![1, 1, 1]).is_err());
        assert!(Root::new(vec![0, 0, 0]).is_err());
        assert_eq!(Root::new(vec![0, -2, 0]).unwrap().kind(), RootKind::ExtraLong);
    }

    #[test]
    fn omega_theta() {
        let spec = AffinizationSpec::new(3, vec![(r3([1, 1, 0]), 1), (r3([1, 0, -1]), 1)]).unwrap();
        assert_eq!(classify_omega_theta(&spec), (vec![r3([1, 1, 0])], vec![r3([1, 0, -1])]));
        let spec = AffinizationSpec::new(3, vec![(r3([0, -1, -1]), 1)]).unwrap();
        assert_eq!(classify_omega_theta(&spec), (vec![r3([0, -1, -1])], vec![]));
        let spec = AffinizationSpec::new(3, vec![(r3([1, 0, 1]), 1)]).unwrap();
        assert_eq!(classify_omega_theta(&spec), (vec![], vec![r3([1, 0, 1])]));
    }

    #[test]
    fn positions() {
        assert_eq!(root_of_position(1, 2, 3).unwrap().coeffs(), &[1, -1, 0]);
        assert_eq!(root_of_position(1, 7, 3).unwrap().coeffs(), &[2, 0, 0]);
        assert!(root_of_position(4, 4, 3).unwrap().is_zero());
        assert_eq!(root_of_position(3, 4, 3).unwrap().coeffs(), &[0, 0, 1]);
        assert_eq!(root_of_position(4, 5, 3).unwrap().coeffs(), &[0, 0, 1]);
        assert!(root_of_position(0, 1, 3).is_err());
        assert!(root_of_position(1, 8, 3).is_err());
    }

    #[test]
    fn long_shapes() {
        assert_eq!(r3([0, -1, 1]).long_shape(), Some(LongShape::Diff { p: 3, q: 2 }));
        assert_eq!(r3([-1, 0, -1]).long_shape(), Some(LongShape::Sum { sign: -1, a: 1, b: 3 }));
        assert!(r3([-1, -1, 0]).is_omega());
        assert!(!r3([1, 0, 1]).is_omega());
    }
}
