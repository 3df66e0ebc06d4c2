//! The presented coordinate algebra: group algebra over Q(sqrt 2) on the
//! invertible generators x (Omega), y and z (Theta), modulo the mixing
//! relations, together with its involution.

pub mod rewrite;
pub mod soundness;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rootsys::{AffinizationSpec, LongShape, Root};
use crate::scalar::Scalar;
pub use rewrite::{wreath_cmp, RewriteStats, RewriteSystem};

/// Default number of critical pairs completion may examine.
pub const DEFAULT_PAIR_BUDGET: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    X,
    Z,
    Y,
}

impl GenKind {
    fn symbol(self) -> char {
        match self {
            GenKind::X => 'x',
            GenKind::Y => 'y',
            GenKind::Z => 'z',
        }
    }
}

/// A coordinate generator: kind, adjoined root (position in the adjoined list), copy (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub kind: GenKind,
    pub root: usize,
    pub copy: usize,
}

/// A generator or its inverse, encoded as `2*generator + inverse`.
///
/// Generators are numbered X first, then Z, then Y, each block in adjoined-root
/// order and then by copy, so code order is the letter order used by
/// the rewriting system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn new(gen: u16, inverse: bool) -> Self {
        Letter(gen * 2 + inverse as u16)
    }

    pub fn gen(self) -> u16 {
        self.0 / 2
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn code(self) -> u16 {
        self.0
    }
}

pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Finite linear combination of normal-form words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCElement {
    terms: BTreeMap<Word, Scalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Vec::new(), s);
        }
        NCElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty word when the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &NCElement) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> NCElement {
        NCElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> NCElement {
        if s.is_zero() {
            return NCElement::zero();
        }
        NCElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }
}

/// Generator table, completed rewriting system and involution for one affinization.
#[derive(Clone, Debug)]
pub struct CoordAlgebra {
    spec: AffinizationSpec,
    gens: Vec<GenId>,
    index: BTreeMap<GenId, u16>,
    eta_letter: Vec<Letter>,
    relations: Vec<(Word, Word)>,
    system: RewriteSystem,
}

/// The ring element for `coordinate` of copy `copy` of adjoined root `root`:
/// `x` for Omega roots, `y` for Theta roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coordinate {
    pub letter: Letter,
    pub bar: Letter,
}

impl CoordAlgebra {
    pub fn new(spec: &AffinizationSpec) -> Result<Self> {
        Self::with_budget(spec, DEFAULT_PAIR_BUDGET)
    }

    pub fn with_budget(spec: &AffinizationSpec, budget: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for kind in [GenKind::X, GenKind::Z, GenKind::Y] {
            for (idx, (root, copies)) in spec.adjoined().iter().enumerate() {
                let wanted = if root.is_omega() { kind == GenKind::X } else { kind != GenKind::X };
                if wanted {
                    for copy in 1..=*copies {
                        gens.push(GenId { kind, root: idx, copy });
                    }
                }
            }
        }
        let index: BTreeMap<GenId, u16> = gens.iter().enumerate().map(|(i, g)| (*g, i as u16)).collect();
        let mut eta_letter = Vec::with_capacity(2 * gens.len());
        for g in &gens {
            let partner = match g.kind {
                GenKind::X => *g,
                GenKind::Y => GenId { kind: GenKind::Z, ..*g },
                GenKind::Z => GenId { kind: GenKind::Y, ..*g },
            };
            let p = index[&partner];
            eta_letter.push(Letter::new(p, false));
            eta_letter.push(Letter::new(p, true));
        }
        let mut alg = CoordAlgebra {
            spec: spec.clone(),
            gens,
            index,
            eta_letter,
            relations: Vec::new(),
            system: RewriteSystem::default(),
        };
        alg.relations = alg.mixing_relations();
        let mut seeds = Vec::new();
        for g in 0..alg.gens.len() as u16 {
            let t = Letter::new(g, false);
            seeds.push((vec![t, t.inverse()], Vec::new()));
            seeds.push((vec![t.inverse(), t], Vec::new()));
        }
        seeds.extend(alg.relations.iter().cloned());
        let render = |w: &[Letter]| alg.render_word(w);
        let system = rewrite::complete(&seeds, budget, &render)?;
        alg.system = system;
        Ok(alg)
    }

    /// The mixing relations `L = R`, one per (minus-type root copy, plus-type
    /// partner copy) sharing an index pair.
    ///
    /// With `s` the coordinate of `e_p - e_q` and `t` that of `+-(e_a + e_b)`
    /// (images oriented with `a < b`), the relation is the vanishing of the
    /// degree `+-2e` entry of their bracket:
    /// plus-type: `s bar(t) = t bar(s)` if `p < q`, `s t = bar(t) bar(s)` if `p > q`;
    /// minus-type: `bar(s) t = bar(t) s` if `p < q`, `bar(s) bar(t) = t s` if `p > q`.
    fn mixing_relations(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for (ti, (theta, tc)) in self.spec.adjoined().iter().enumerate() {
            let (p, q) = match theta.long_shape() {
                Some(LongShape::Diff { p, q }) => (p, q),
                _ => continue,
            };
            for (ki, (kappa, kc)) in self.spec.adjoined().iter().enumerate() {
                let (sign, a, b) = match kappa.long_shape() {
                    Some(LongShape::Sum { sign, a, b }) => (sign, a, b),
                    _ => continue,
                };
                if (a, b) != (p.min(q), p.max(q)) {
                    continue;
                }
                for i in 1..=*tc {
                    for j in 1..=*kc {
                        let s = self.coordinate(ti, i).expect("generator exists");
                        let t = self.coordinate(ki, j).expect("generator exists");
                        let (l, r) = match (sign > 0, p < q) {
                            (true, true) => ([s.letter, t.bar], [t.letter, s.bar]),
                            (true, false) => ([s.letter, t.letter], [t.bar, s.bar]),
                            (false, true) => ([s.bar, t.letter], [t.bar, s.letter]),
                            (false, false) => ([s.bar, t.bar], [t.letter, s.letter]),
                        };
                        out.push((l.to_vec(), r.to_vec()));
                    }
                }
            }
        }
        out
    }

    pub fn spec(&self) -> &AffinizationSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[GenId] {
        &self.gens
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn letter_count(&self) -> usize {
        2 * self.gens.len()
    }

    pub fn gen_id(&self, l: Letter) -> GenId {
        self.gens[l.gen() as usize]
    }

    pub fn letter(&self, g: GenId, inverse: bool) -> Result<Letter> {
        self.index
            .get(&g)
            .map(|&i| Letter::new(i, inverse))
            .ok_or_else(|| Error::UnknownGenerator(format!("{:?}[{};{}]", g.kind, g.root, g.copy)))
    }

    /// Coordinate letters of an adjoined root copy: `(x, x)` or `(y, z)`.
    pub fn coordinate(&self, root: usize, copy: usize) -> Result<Coordinate> {
        let (r, copies) =
            self.spec.adjoined().get(root).ok_or_else(|| Error::UnknownGenerator(format!("adjoined root #{root}")))?;
        if copy == 0 || copy > *copies {
            return Err(Error::UnknownGenerator(format!("copy {copy} of {r}")));
        }
        if r.is_omega() {
            let x = self.letter(GenId { kind: GenKind::X, root, copy }, false)?;
            Ok(Coordinate { letter: x, bar: x })
        } else {
            Ok(Coordinate {
                letter: self.letter(GenId { kind: GenKind::Y, root, copy }, false)?,
                bar: self.letter(GenId { kind: GenKind::Z, root, copy }, false)?,
            })
        }
    }

    pub fn normal_form(&self, w: &[Letter]) -> Word {
        self.system.normal_form(w)
    }

    pub fn word(&self, w: &[Letter]) -> NCElement {
        let mut terms = BTreeMap::new();
        terms.insert(self.normal_form(w), Scalar::one());
        NCElement { terms }
    }

    pub fn letter_element(&self, l: Letter) -> NCElement {
        self.word(&[l])
    }

    /// Sum of `coefficient * word` with each word normalized.
    pub fn element(&self, terms: &[(Scalar, Word)]) -> NCElement {
        let mut out = NCElement::zero();
        for (c, w) in terms {
            out.add_term(self.normal_form(w), c.clone());
        }
        out
    }

    pub fn mul(&self, a: &NCElement, b: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (u, c) in &a.terms {
            for (v, d) in &b.terms {
                out.add_term(self.system.append_normal(u, v), c * d);
            }
        }
        out
    }

    /// Involution on letters: fixes x, swaps y and z.
    pub fn eta_letter(&self, l: Letter) -> Letter {
        self.eta_letter[l.code() as usize]
    }

    /// Anti-automorphism: reverse each word, map letters, renormalize.
    pub fn eta(&self, a: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (w, c) in &a.terms {
            let img: Word = w.iter().rev().map(|&l| self.eta_letter(l)).collect();
            out.add_term(self.normal_form(&img), c.clone());
        }
        out
    }

    pub fn eta_word(&self, w: &[Letter]) -> Word {
        let img: Word = w.iter().rev().map(|&l| self.eta_letter(l)).collect();
        self.normal_form(&img)
    }

    pub fn is_equal(&self, a: &NCElement, b: &NCElement) -> bool {
        a.sub(b).is_zero()
    }

    pub fn render_letter(&self, l: Letter) -> String {
        let g = self.gen_id(l);
        let root = &self.spec.adjoined()[g.root].0;
        let coeffs: Vec<String> = root.coeffs().iter().map(|c| format!("{c}")).collect();
        let mut s = format!("{}[{};{}]", g.kind.symbol(), coeffs.join(","), g.copy);
        if l.is_inverse() {
            s.push_str("^-1");
        }
        s
    }

    /// Letters joined by `·`; the empty word renders as `1`.
    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let parts: Vec<String> = w.iter().map(|&l| self.render_letter(l)).collect();
        parts.join("·")
    }

    /// `(c)·word` terms joined by ` + `; zero renders as `0`.
    pub fn render(&self, a: &NCElement) -> String {
        if a.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = a.terms.iter().map(|(w, c)| format!("({})·{}", c, self.render_word(w))).collect();
        parts.join(" + ")
    }

    /// Parse a word written as letters `x[1,1,0;1]`, `y[..;k]^-1`, separated
    /// by `*`, `·` or whitespace; `1` or the empty string is the unit. The
    /// result is normalized.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == '*' || c == '·' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let kind = match rest.chars().next() {
                Some('x') => GenKind::X,
                Some('y') => GenKind::Y,
                Some('z') => GenKind::Z,
                _ => return Err(Error::UnknownGenerator(String::from(rest))),
            };
            let open = rest[1..].strip_prefix('[').ok_or_else(|| Error::UnknownGenerator(String::from(rest)))?;
            let close = open.find(']').ok_or_else(|| Error::UnknownGenerator(String::from(rest)))?;
            let inner = &open[..close];
            rest = &open[close + 1..];
            let (vec_part, copy_part) =
                inner.split_once(';').ok_or_else(|| Error::UnknownGenerator(String::from(inner)))?;
            let coeffs: core::result::Result<Vec<i32>, _> =
                vec_part.split(',').map(|c| c.trim().parse::<i32>()).collect();
            let coeffs = coeffs.map_err(|_| Error::UnknownGenerator(String::from(inner)))?;
            let copy: usize = copy_part.trim().parse().map_err(|_| Error::UnknownGenerator(String::from(inner)))?;
            let root = Root::new(coeffs)?;
            let idx = self
                .spec
                .adjoined()
                .iter()
                .position(|(r, _)| *r == root)
                .ok_or_else(|| Error::UnknownGenerator(format!("{root} is not adjoined")))?;
            let inverse = if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                true
            } else {
                false
            };
            out.push(self.letter(GenId { kind, root: idx, copy }, inverse)?);
        }
        Ok(self.normal_form(&out))
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, roots: &[(&[i32], usize)]) -> AffinizationSpec {
        AffinizationSpec::new(r, roots.iter().map(|(c, k)| (Root::new(c.to_vec()).unwrap(), *k)).collect()).unwrap()
    }

    /// Omega e1+e2 at position 0, Theta e1-e2 at position 1.
    fn mixed() -> (CoordAlgebra, Letter, Letter, Letter) {
        let alg = CoordAlgebra::new(&spec(3, &[(&[1, 1, 0], 1), (&[1, -1, 0], 1)])).unwrap();
        let c0 = alg.coordinate(0, 1).unwrap();
        let c1 = alg.coordinate(1, 1).unwrap();
        (alg, c0.letter, c1.letter, c1.bar)
    }

    #[test]
    fn omega_only_has_cancellation_rules() {
        let alg = CoordAlgebra::new(&spec(3, &[(&[1, 1, 0], 1)])).unwrap();
        assert_eq!(alg.generators().len(), 1);
        assert!(alg.relations().is_empty());
        assert_eq!(alg.rewrite_system().len(), 2);
    }

    #[test]
    fn empty_spec_is_scalar_field() {
        let alg = CoordAlgebra::new(&spec(3, &[])).unwrap();
        assert!(alg.generators().is_empty());
        assert!(alg.rewrite_system().is_empty());
        let two = NCElement::scalar(Scalar::from_int(2));
        assert_eq!(alg.mul(&two, &two), NCElement::scalar(Scalar::from_int(4)));
    }

    #[test]
    fn mixing_rule_present() {
        let (alg, x, y, z) = mixed();
        assert_eq!(alg.relations(), &[(vec![y, x], vec![x, z])]);
        assert_eq!(alg.normal_form(&[y, x]), vec![x, z]);
        assert_eq!(alg.normal_form(&[y, y.inverse()]), vec![]);
    }

    #[test]
    fn inverse_variant_from_completion() {
        let (alg, x, y, z) = mixed();
        // x^-1 y = z x^-1 follows from y x = x z
        let a = alg.word(&[x.inverse(), y]);
        let b = alg.word(&[z, x.inverse()]);
        assert!(alg.is_equal(&a, &b));
        assert_eq!(alg.normal_form(&[x.inverse(), y]), vec![z, x.inverse()]);
    }

    #[test]
    fn ring_examples() {
        let (alg, x, y, z) = mixed();
        let one = NCElement::one();
        let ye = alg.letter_element(y);
        let xe = alg.letter_element(x);
        assert_eq!(alg.mul(&ye, &alg.letter_element(y.inverse())), one);
        let lhs = alg.mul(&ye.add(&one), &xe);
        let rhs = alg.word(&[x, z]).add(&xe);
        assert!(alg.is_equal(&lhs, &rhs));
        assert!(xe.scale(&Scalar::zero()).is_zero());
        assert!(!alg.is_equal(&ye, &alg.letter_element(z)));
    }

    #[test]
    fn eta_examples() {
        let (alg, x, y, z) = mixed();
        assert_eq!(alg.eta(&alg.letter_element(y)), alg.letter_element(z));
        assert_eq!(alg.eta(&NCElement::one()), NCElement::one());
        assert_eq!(alg.eta(&alg.word(&[x, y])), alg.word(&[z, x]));
        assert_eq!(alg.eta_letter(y.inverse()), z.inverse());
        assert_eq!(alg.eta_letter(x.inverse()), x.inverse());
    }

    #[test]
    fn render_and_parse_round_trip() {
        let (alg, x, y, z) = mixed();
        let w = alg.normal_form(&[z, y.inverse(), x]);
        let text = alg.render_word(&w);
        assert_eq!(alg.parse_word(&text).unwrap(), w);
        assert_eq!(alg.render_letter(x.inverse()), "x[1,1,0;1]^-1");
        assert_eq!(alg.render_word(&[]), "1");
        assert!(alg.parse_word("q[1,1,0;1]").is_err());
        assert!(alg.parse_word("x[1,0,1;1]").is_err());
        assert!(alg.parse_word("x[1,1,0;2]").is_err());
    }

    #[test]
    fn element_rendering() {
        let (alg, x, _, _) = mixed();
        let e = alg.letter_element(x).scale(&Scalar::from_parts(1, 1, 1, 1)).add(&NCElement::one());
        assert_eq!(alg.render(&e), "(1)·1 + (1+√2)·x[1,1,0;1]");
        assert_eq!(alg.render(&NCElement::zero()), "0");
    }
}
