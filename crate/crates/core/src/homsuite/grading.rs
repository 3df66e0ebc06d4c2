//! Degree bookkeeping for the images and random bracket words in them.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use super::{GeneratorSymbol, ImageTable, Role};
use crate::error::Result;
use crate::liealg::SoElement;
use crate::rootsys::GradingDegree;
use crate::sample;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingFailure {
    pub word: String,
    pub degree: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradingReport {
    pub images_checked: usize,
    /// Images whose decomposition disagrees with their assigned degree.
    pub image_failures: Vec<String>,
    pub words: usize,
    /// Words whose degree lies outside `Delta u {0}`.
    pub outside_delta: usize,
    /// Sampled words that evaluated to a nonzero element.
    pub nonzero: usize,
    pub failures: Vec<GradingFailure>,
}

impl GradingReport {
    pub fn failed(&self) -> usize {
        self.image_failures.len() + self.failures.len()
    }

    pub fn checks(&self) -> usize {
        self.images_checked + self.words
    }
}

enum Tree {
    Leaf(GeneratorSymbol),
    Node(Box<Tree>, Box<Tree>),
}

fn random_tree<R: Rng>(rng: &mut R, syms: &[GeneratorSymbol], leaves: usize) -> Tree {
    if leaves == 1 {
        // E leaves are favored so that sampled degrees often leave Delta.
        let role = match rng.gen_range(0..10) {
            0..=5 => Role::E,
            6..=8 => Role::F,
            _ => Role::H,
        };
        let candidates: Vec<&GeneratorSymbol> = syms.iter().filter(|s| s.role == role).collect();
        return Tree::Leaf(*candidates[rng.gen_range(0..candidates.len())]);
    }
    let k = rng.gen_range(1..leaves);
    Tree::Node(Box::new(random_tree(rng, syms, k)), Box::new(random_tree(rng, syms, leaves - k)))
}

fn eval(table: &ImageTable, t: &Tree) -> Result<(SoElement, GradingDegree, String)> {
    match t {
        Tree::Leaf(s) => {
            let e = table.entry(*s)?;
            Ok((e.element.clone(), e.degree.clone(), table.render_symbol(*s)))
        }
        Tree::Node(a, b) => {
            let (x, dx, sx) = eval(table, a)?;
            let (y, dy, sy) = eval(table, b)?;
            Ok((table.so().bracket(&x, &y)?, dx.add(&dy), format!("[{sx},{sy}]")))
        }
    }
}

/// Check image degrees, then sample `words` bracket words with at most
/// four leaves and require each to be zero or homogeneous of its degree,
/// and exactly zero when that degree is outside `Delta u {0}`.
pub fn verify_gradedness(table: &ImageTable, words: usize, seed: u64) -> Result<GradingReport> {
    let mut report = GradingReport::default();
    for sym in table.symbols() {
        let e = table.entry(*sym)?;
        report.images_checked += 1;
        if !table.has_degree(&e.element, &e.degree) || e.element.is_zero() {
            report.image_failures.push(table.render_symbol(*sym));
        }
    }
    let syms: Vec<GeneratorSymbol> = table.symbols().copied().collect();
    let mut rng = sample::rng(seed);
    for _ in 0..words {
        let leaves = rng.gen_range(1..=4);
        let tree = random_tree(&mut rng, &syms, leaves);
        let (value, degree, word) = eval(table, &tree)?;
        report.words += 1;
        let inside = degree.in_delta_or_zero();
        if !inside {
            report.outside_delta += 1;
        }
        if !value.is_zero() {
            report.nonzero += 1;
        }
        let ok = if inside { table.has_degree(&value, &degree) } else { value.is_zero() };
        if !ok {
            report.failures.push(GradingFailure {
                word,
                degree: format!("{degree}"),
                value: table.so().render(&value),
            });
        }
    }
    Ok(report)
}
