//! Randomized soundness checks for the coordinate algebra: termination of
//! rewriting, canonical normal forms, and the laws of the involution.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::CoordAlgebra;
use crate::error::Result;
use crate::sample;

/// Failed samples are recorded up to this many.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    pub words: usize,
    pub step_bound: usize,
    /// Words whose normalization needed more than `step_bound` rewrites.
    pub nonterminating: usize,
    /// Normal forms that are reducible or not fixed by renormalization.
    pub non_canonical: usize,
    /// Samples violating `eta(eta a) = a` or `eta(ab) = eta(b) eta(a)`.
    pub eta_failures: usize,
    /// Relations or completed rules whose eta image does not hold.
    pub stability_failures: usize,
    pub stability_checks: usize,
    pub max_steps: usize,
    pub max_normal_len: usize,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn failed(&self) -> usize {
        self.nonterminating + self.non_canonical + self.eta_failures + self.stability_failures
    }

    pub fn checks(&self) -> usize {
        self.words + self.stability_checks
    }
}

/// Normalize `words` random words of length at most `max_len` within
/// `step_bound` rewrites each, check the normal forms are canonical, check
/// the involution laws on those words and on random element pairs, and
/// check that every relation and completed rule is mapped by `eta` to an
/// identity of the algebra.
pub fn verify_soundness(
    alg: &CoordAlgebra,
    words: usize,
    max_len: usize,
    step_bound: usize,
    seed: u64,
) -> Result<SoundnessReport> {
    let sys = alg.rewrite_system();
    let mut rng = sample::rng(seed);
    let mut report = SoundnessReport { step_bound, ..SoundnessReport::default() };
    for n in 0..words {
        let w = sample::raw_word(alg, &mut rng, max_len);
        report.words += 1;
        let Some((nf, stats)) = sys.normal_form_bounded(&w, step_bound) else {
            report.nonterminating += 1;
            note(
                &mut report.failures,
                format!("word {n} ({}) exceeds {step_bound} rewrite steps", alg.render_word(&w)),
            );
            continue;
        };
        report.max_steps = report.max_steps.max(stats.steps);
        report.max_normal_len = report.max_normal_len.max(nf.len());
        if !sys.is_irreducible(&nf) || sys.normal_form(&nf) != nf {
            report.non_canonical += 1;
            note(&mut report.failures, format!("word {n}: normal form {} is not canonical", alg.render_word(&nf)));
        }
        let a = alg.word(&w);
        let b = sample::element(alg, &mut rng, 2, 4);
        let involutive = alg.eta(&alg.eta(&a)) == a;
        let anti = alg.eta(&alg.mul(&a, &b)) == alg.mul(&alg.eta(&b), &alg.eta(&a));
        if !involutive || !anti {
            report.eta_failures += 1;
            note(&mut report.failures, format!("word {n}: eta law fails on {}", alg.render_word(&w)));
        }
    }
    let rules: Vec<(Vec<_>, Vec<_>)> = sys.rules().map(|(l, r)| (l.clone(), r.clone())).collect();
    for (l, r) in alg.relations().iter().chain(rules.iter()) {
        report.stability_checks += 1;
        let lhs = alg.word(&alg.eta_word(l));
        let rhs = alg.word(&alg.eta_word(r));
        if !alg.is_equal(&lhs, &rhs) {
            report.stability_failures += 1;
            note(&mut report.failures, format!("eta({} = {}) fails", alg.render_word(l), alg.render_word(r)));
        }
    }
    Ok(report)
}

fn note(failures: &mut Vec<String>, s: String) {
    if failures.len() < MAX_RECORDED_FAILURES {
        failures.push(s);
    }
}
