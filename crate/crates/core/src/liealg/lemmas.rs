//! The fifteen closed-form bracket formulas between shorthand elements,
//! checked against the matrix commutator on random coordinates.

use alloc::string::String;
use alloc::vec::Vec;

use super::{Shape, SoAlgebra, SoElement};
use crate::coordalg::NCElement;
use crate::error::Result;
use crate::sample;

/// One formula `[left(a), right(b)] = ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma {
    pub left: Shape,
    pub right: Shape,
}

impl Lemma {
    /// Name such as `[vert,hort]`.
    pub fn name(&self) -> String {
        let mut s = String::from("[");
        s.push_str(&self.left.name().to_ascii_lowercase());
        s.push(',');
        s.push_str(&self.right.name().to_ascii_lowercase());
        s.push(']');
        s
    }

    pub fn arity(&self) -> usize {
        self.left.arity() + self.right.arity()
    }
}

/// All unordered shape pairs, in the order `[vert,vert]` .. `[bl,bl]`.
pub fn all_lemmas() -> Vec<Lemma> {
    let mut out = Vec::new();
    for (i, &left) in Shape::ALL.iter().enumerate() {
        for &right in &Shape::ALL[i..] {
            out.push(Lemma { left, right });
        }
    }
    out
}

/// Right-hand side of `lemma` for left indices `li`, right indices `ri`.
pub fn expected(
    so: &SoAlgebra,
    lemma: Lemma,
    li: &[usize],
    ri: &[usize],
    a: &NCElement,
    b: &NCElement,
) -> Result<SoElement> {
    let alg = so.coords();
    let bar = |x: &NCElement| alg.eta(x);
    let mul = |x: &NCElement, y: &NCElement| alg.mul(x, y);
    let mut out = so.zero();
    let mut add = |cond: bool, x: Result<SoElement>| -> Result<()> {
        if cond {
            out = out.add(&x?);
        }
        Ok(())
    };
    use Shape::*;
    match (lemma.left, lemma.right) {
        (Vert, Vert) => add(true, so.ur(li[0], ri[0], &mul(a, &bar(b)).neg()))?,
        (Vert, Hort) => {
            let (k, p) = (li[0], ri[0]);
            add(true, so.ul(k, p, &mul(a, b)))?;
            add(k == p, so.center(&mul(&bar(a), &bar(b)).sub(&mul(b, a))))?;
        }
        (Vert, Ul) => add(li[0] == ri[1], so.vert(ri[0], &mul(b, a).neg()))?,
        (Vert, Ur) | (Hort, Bl) | (Ur, Ur) | (Bl, Bl) => {}
        (Vert, Bl) => {
            let (k, p, q) = (li[0], ri[0], ri[1]);
            add(k == p, so.hort(q, &mul(&bar(a), b).neg()))?;
            add(k == q, so.hort(p, &mul(&bar(a), &bar(b))))?;
        }
        (Hort, Hort) => add(true, so.bl(li[0], ri[0], &mul(&bar(a), b).neg()))?,
        (Hort, Ul) => add(li[0] == ri[0], so.hort(ri[1], &mul(a, b)))?,
        (Hort, Ur) => {
            let (k, p, q) = (li[0], ri[0], ri[1]);
            add(k == p, so.vert(q, &mul(&bar(b), &bar(a)).neg()))?;
            add(k == q, so.vert(p, &mul(b, &bar(a))))?;
        }
        (Ul, Ul) => {
            let (p, q, k, l) = (li[0], li[1], ri[0], ri[1]);
            add(q == k, so.ul(p, l, &mul(a, b)))?;
            add(l == p, so.ul(k, q, &mul(b, a).neg()))?;
        }
        (Ul, Ur) => {
            let (p, q, k, l) = (li[0], li[1], ri[0], ri[1]);
            add(q == k, so.ur(p, l, &mul(a, b)))?;
            add(q == l, so.ur(p, k, &mul(a, &bar(b)).neg()))?;
        }
        (Ul, Bl) => {
            let (p, q, k, l) = (li[0], li[1], ri[0], ri[1]);
            add(p == k, so.bl(q, l, &mul(&bar(a), b).neg()))?;
            add(p == l, so.bl(q, k, &mul(&bar(a), &bar(b))))?;
        }
        (Ur, Bl) => {
            let (p, q, k, l) = (li[0], li[1], ri[0], ri[1]);
            add(p == k, so.ul(q, l, &mul(&bar(a), b).neg()))?;
            add(p == l, so.ul(q, k, &mul(&bar(a), &bar(b))))?;
            add(q == k, so.ul(p, l, &mul(a, b)))?;
            add(q == l, so.ul(p, k, &mul(a, &bar(b)).neg()))?;
        }
        (l, r) => unreachable!("lemma pair {l:?},{r:?} is not in canonical order"),
    }
    Ok(out)
}

/// Per-lemma tally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub tuples: usize,
    pub checks: usize,
    pub failures: usize,
}

/// A mismatch between the commutator and the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaFailure {
    pub lemma: String,
    pub indices: Vec<usize>,
    pub a: String,
    pub b: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub outcomes: Vec<LemmaOutcome>,
    /// The first [`MAX_RECORDED_FAILURES`] mismatches.
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    pub fn checks(&self) -> usize {
        self.outcomes.iter().map(|o| o.checks).sum()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.iter().map(|o| o.failures).sum()
    }
}

pub const MAX_RECORDED_FAILURES: usize = 50;

/// Every index tuple in `1..=r` of length `len`, lexicographic.
pub fn index_tuples(r: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * r);
        for t in &out {
            for i in 1..=r {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Check one lemma instance; `Ok(None)` on agreement.
pub fn check_instance(
    so: &SoAlgebra,
    lemma: Lemma,
    indices: &[usize],
    a: &NCElement,
    b: &NCElement,
) -> Result<Option<LemmaFailure>> {
    let (li, ri) = indices.split_at(lemma.left.arity());
    let x = so.construct(lemma.left, li, a)?;
    let y = so.construct(lemma.right, ri, b)?;
    let lhs = so.bracket(&x, &y)?;
    let rhs = expected(so, lemma, li, ri, a, b)?;
    if lhs == rhs {
        return Ok(None);
    }
    let alg = so.coords();
    Ok(Some(LemmaFailure {
        lemma: lemma.name(),
        indices: indices.to_vec(),
        a: alg.render(a),
        b: alg.render(b),
        lhs: so.render(&lhs),
        rhs: so.render(&rhs),
    }))
}

/// Run every lemma on every index tuple with `trials` random coordinate
/// pairs (one or two monomials of length at most 3 each).
pub fn verify_bracket_lemmas(so: &SoAlgebra, trials: usize, seed: u64) -> Result<LemmaReport> {
    let mut report = LemmaReport::default();
    for (n, lemma) in all_lemmas().into_iter().enumerate() {
        let tuples = index_tuples(so.rank(), lemma.arity());
        let mut outcome = LemmaOutcome { lemma: lemma.name(), tuples: tuples.len(), checks: 0, failures: 0 };
        let mut rng = sample::sub_rng(seed, n as u64);
        for t in &tuples {
            for _ in 0..trials {
                let a = sample::element(so.coords(), &mut rng, 2, 3);
                let b = sample::element(so.coords(), &mut rng, 2, 3);
                outcome.checks += 1;
                if let Some(f) = check_instance(so, lemma, t, &a, &b)? {
                    outcome.failures += 1;
                    if report.failures.len() < MAX_RECORDED_FAILURES {
                        report.failures.push(f);
                    }
                }
            }
        }
        report.outcomes.push(outcome);
    }
    Ok(report)
}
