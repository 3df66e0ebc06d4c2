//! Seeded pseudo-random sampling of coordinates and scalars for the
//! verification suites.

use alloc::vec::Vec;
use rand::Rng;

use crate::coordalg::{CoordAlgebra, Letter, NCElement, Word};
use crate::error::Result;
use crate::liealg::{Shape, SoAlgebra, SoElement};
use crate::rootsys::{AffinizationSpec, Root};
use crate::scalar::Scalar;

/// The deterministic generator every suite uses.
pub type SuiteRng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Derive an independent stream for sub-task `tag` of a run seeded with `seed`.
pub fn sub_rng(seed: u64, tag: u64) -> SuiteRng {
    rng(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17))
}

/// Small nonzero scalar, sometimes with a sqrt 2 part.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let a = rng.gen_range(-3i64..=3);
        let b = if rng.gen_bool(0.25) { rng.gen_range(-2i64..=2) } else { 0 };
        let den = if rng.gen_bool(0.2) { 2 } else { 1 };
        let s = Scalar::from_parts(a, den, b, 1);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Uniform random word of length `0..=max_len` over all letters (before normalization).
pub fn raw_word<R: Rng>(alg: &CoordAlgebra, rng: &mut R, max_len: usize) -> Word {
    let letters = alg.letter_count();
    if letters == 0 {
        return Vec::new();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| letter(rng, letters)).collect()
}

fn letter<R: Rng>(rng: &mut R, letters: usize) -> Letter {
    let code = rng.gen_range(0..letters) as u16;
    Letter::new(code / 2, code % 2 == 1)
}

/// `scalar * word` with a random word of length at most `max_len`.
pub fn monomial<R: Rng>(alg: &CoordAlgebra, rng: &mut R, max_len: usize) -> NCElement {
    let w = raw_word(alg, rng, max_len);
    alg.word(&w).scale(&scalar(rng))
}

/// Sum of one to `max_terms` random monomials (may cancel to zero).
pub fn element<R: Rng>(alg: &CoordAlgebra, rng: &mut R, max_terms: usize, max_len: usize) -> NCElement {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut out = NCElement::zero();
    for _ in 0..terms {
        out.add_assign(&monomial(alg, rng, max_len));
    }
    out
}

/// Random long root `+-e_i +- e_j` (i < j) of rank `r`.
pub fn long_root<R: Rng>(rng: &mut R, r: usize) -> Root {
    let i = rng.gen_range(1..r);
    let j = rng.gen_range(i + 1..=r);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    let t = if rng.gen_bool(0.5) { 1 } else { -1 };
    Root::two(r, i, s, j, t).expect("indices in range")
}

/// Random affinization of rank `r` with `1..=max_d` adjoined generators in total,
/// distinct roots, and at most `max_copies` copies each.
pub fn spec<R: Rng>(rng: &mut R, r: usize, max_d: usize, max_copies: usize) -> Result<AffinizationSpec> {
    let target = rng.gen_range(1..=max_d.max(1));
    let mut adjoined: Vec<(Root, usize)> = Vec::new();
    let mut d = 0;
    while d < target {
        let root = long_root(rng, r);
        if adjoined.iter().any(|(x, _)| *x == root) {
            continue;
        }
        let copies = rng.gen_range(1..=max_copies.max(1)).min(target - d);
        d += copies;
        adjoined.push((root, copies));
    }
    AffinizationSpec::new(r, adjoined)
}

/// Random homogeneous element: a random shape and indices of rank `r`
/// carrying a random monomial coordinate.
pub fn homogeneous<R: Rng>(so: &SoAlgebra, rng: &mut R, max_len: usize) -> Result<SoElement> {
    let r = so.rank();
    let shape = Shape::ALL[rng.gen_range(0..Shape::ALL.len())];
    let indices: Vec<usize> = (0..shape.arity()).map(|_| rng.gen_range(1..=r)).collect();
    so.construct(shape, &indices, &monomial(so.coords(), rng, max_len))
}
