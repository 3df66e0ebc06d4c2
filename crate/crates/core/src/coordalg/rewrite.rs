//! String rewriting over letters with a wreath-product reduction order and
//! critical-pair completion.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Letter;
use crate::error::{Error, Result};

/// Wreath-product order on words.
///
/// Generators are levels (higher generator index = higher level). Two words
/// are first compared by how many letters of the highest level present they
/// contain; ties are broken by comparing the pieces between those letters
/// recursively and the separating letters by code, left to right. This is a
/// reduction order: well-founded and compatible with concatenation.
pub fn wreath_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    if u == v {
        return Ordering::Equal;
    }
    let top = match u.iter().chain(v).map(|l| l.gen()).max() {
        Some(t) => t,
        None => return Ordering::Equal,
    };
    let count = |w: &[Letter]| w.iter().filter(|l| l.gen() == top).count();
    match count(u).cmp(&count(v)) {
        Ordering::Equal => {}
        other => return other,
    }
    let mut pu = u.split(|l| l.gen() == top);
    let mut pv = v.split(|l| l.gen() == top);
    let mut su = u.iter().filter(|l| l.gen() == top);
    let mut sv = v.iter().filter(|l| l.gen() == top);
    loop {
        match (pu.next(), pv.next()) {
            (Some(a), Some(b)) => match wreath_cmp(a, b) {
                Ordering::Equal => {}
                other => return other,
            },
            _ => return Ordering::Equal,
        }
        match (su.next(), sv.next()) {
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Equal => {}
                other => return other,
            },
            _ => return Ordering::Equal,
        }
    }
}

/// A finite set of oriented rules `lhs -> rhs` with `rhs < lhs` in the wreath order.
#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: BTreeMap<Vec<Letter>, Vec<Letter>>,
    max_lhs: usize,
}

/// Counters from a single normalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub peak_len: usize,
}

impl RewriteSystem {
    pub fn rules(&self) -> impl Iterator<Item = (&Vec<Letter>, &Vec<Letter>)> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn max_lhs(&self) -> usize {
        self.max_lhs
    }

    fn recompute_max(&mut self) {
        self.max_lhs = self.rules.keys().map(|k| k.len()).max().unwrap_or(0);
    }

    /// Feed `todo` (consumed from the back) onto the irreducible stack `out`.
    /// Returns false if more than `max_steps` rewrites would be needed.
    fn drive(&self, out: &mut Vec<Letter>, mut todo: Vec<Letter>, stats: &mut RewriteStats, max_steps: usize) -> bool {
        while let Some(c) = todo.pop() {
            out.push(c);
            if out.len() + todo.len() > stats.peak_len {
                stats.peak_len = out.len() + todo.len();
            }
            let top = out.len();
            for l in 1..=self.max_lhs.min(top) {
                if let Some(rhs) = self.rules.get(&out[top - l..]) {
                    out.truncate(top - l);
                    todo.extend(rhs.iter().rev());
                    stats.steps += 1;
                    if stats.steps > max_steps {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    pub fn normal_form(&self, w: &[Letter]) -> Vec<Letter> {
        self.normal_form_stats(w).0
    }

    pub fn normal_form_stats(&self, w: &[Letter]) -> (Vec<Letter>, RewriteStats) {
        let mut stats = RewriteStats::default();
        let mut out = Vec::with_capacity(w.len());
        self.drive(&mut out, w.iter().rev().copied().collect(), &mut stats, usize::MAX);
        (out, stats)
    }

    /// Like `normal_form_stats`, but gives up after `max_steps` rewrites.
    pub fn normal_form_bounded(&self, w: &[Letter], max_steps: usize) -> Option<(Vec<Letter>, RewriteStats)> {
        let mut stats = RewriteStats::default();
        let mut out = Vec::with_capacity(w.len());
        self.drive(&mut out, w.iter().rev().copied().collect(), &mut stats, max_steps).then_some((out, stats))
    }

    /// Normal form of `u * v` where `u` is already irreducible.
    pub fn append_normal(&self, u: &[Letter], v: &[Letter]) -> Vec<Letter> {
        let mut stats = RewriteStats::default();
        let mut out = u.to_vec();
        self.drive(&mut out, v.iter().rev().copied().collect(), &mut stats, usize::MAX);
        out
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        for i in 0..w.len() {
            for l in 1..=self.max_lhs.min(w.len() - i) {
                if self.rules.contains_key(&w[i..i + l]) {
                    return false;
                }
            }
        }
        true
    }

    /// Add `u = v` as a rule after normalizing both sides. Rules whose
    /// left side becomes reducible are turned back into equations.
    fn add_equation(&mut self, u: &[Letter], v: &[Letter], pending: &mut VecDeque<(Vec<Letter>, Vec<Letter>)>) -> bool {
        let u = self.normal_form(u);
        let v = self.normal_form(v);
        let (lhs, rhs) = match wreath_cmp(&u, &v) {
            Ordering::Equal => return false,
            Ordering::Greater => (u, v),
            Ordering::Less => (v, u),
        };
        let stale: Vec<Vec<Letter>> = self
            .rules
            .keys()
            .filter(|k| k.len() >= lhs.len() && k.windows(lhs.len()).any(|w| w == lhs.as_slice()))
            .cloned()
            .collect();
        for k in stale {
            let r = self.rules.remove(&k).expect("key just listed");
            pending.push_back((k, r));
        }
        self.rules.insert(lhs, rhs);
        self.recompute_max();
        true
    }
}

/// Knuth-Bendix completion of `seeds` under [`wreath_cmp`].
///
/// Fails with [`Error::CompletionBudget`] once more than `budget` critical
/// pairs have been examined without reaching a confluent system.
pub fn complete(
    seeds: &[(Vec<Letter>, Vec<Letter>)],
    budget: usize,
    render: &dyn Fn(&[Letter]) -> String,
) -> Result<RewriteSystem> {
    let mut sys = RewriteSystem::default();
    let mut pending: VecDeque<(Vec<Letter>, Vec<Letter>)> = seeds.iter().cloned().collect();
    let mut examined: BTreeSet<(Vec<Letter>, Vec<Letter>, usize)> = BTreeSet::new();
    let mut pairs = 0usize;
    loop {
        while let Some((u, v)) = pending.pop_front() {
            sys.add_equation(&u, &v, &mut pending);
        }
        // One breadth-first round over all unexamined overlaps keeps the
        // procedure fair: no rule family can starve the others.
        let mut found: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
        let keys: Vec<Vec<Letter>> = sys.rules.keys().cloned().collect();
        for l1 in &keys {
            for l2 in &keys {
                for o in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - o..] != l2[..o] {
                        continue;
                    }
                    if !examined.insert((l1.clone(), l2.clone(), o)) {
                        continue;
                    }
                    pairs += 1;
                    let mut left = sys.rules[l1].clone();
                    left.extend_from_slice(&l2[o..]);
                    let mut right = l1[..l1.len() - o].to_vec();
                    right.extend_from_slice(&sys.rules[l2]);
                    let a = sys.normal_form(&left);
                    let b = sys.normal_form(&right);
                    if a != b {
                        if pairs > budget {
                            return Err(Error::CompletionBudget { budget, left: render(&a), right: render(&b) });
                        }
                        found.push((a, b));
                    }
                }
            }
        }
        if found.is_empty() {
            return Ok(sys);
        }
        found.sort_by_key(|(a, b)| (a.len() + b.len(), a.clone(), b.clone()));
        pending.extend(found);
    }
}
