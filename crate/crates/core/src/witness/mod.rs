//! Generation witnesses: bracket expressions over the generator images
//! that evaluate exactly to a requested element with monomial coordinate.

mod builder;

pub use builder::witness;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::coordalg::Word;
use crate::error::{Error, Result};
use crate::homsuite::{GeneratorSymbol, ImageTable};
use crate::liealg::{Shape, SoElement};
use crate::sample;
use crate::scalar::Scalar;

/// Shared handle to an expression node.
pub type Expr = Rc<BracketExpr>;

/// A bracket expression over generator symbols. Subtrees may be shared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Leaf(GeneratorSymbol),
    Scale(Scalar, Expr),
    Bracket(Expr, Expr),
    Sum(Vec<Expr>),
}

impl BracketExpr {
    pub fn leaf(sym: GeneratorSymbol) -> Expr {
        Rc::new(BracketExpr::Leaf(sym))
    }

    pub fn scale(s: Scalar, e: Expr) -> Expr {
        Rc::new(BracketExpr::Scale(s, e))
    }

    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Rc::new(BracketExpr::Bracket(a, b))
    }

    pub fn sum(parts: Vec<Expr>) -> Expr {
        Rc::new(BracketExpr::Sum(parts))
    }
}

fn key(e: &Expr) -> usize {
    Rc::as_ptr(e) as usize
}

/// Exact evaluation; shared subtrees are evaluated once.
pub fn evaluate(expr: &Expr, table: &ImageTable) -> Result<SoElement> {
    let mut memo = BTreeMap::new();
    eval_memo(expr, table, &mut memo)
}

fn eval_memo(expr: &Expr, table: &ImageTable, memo: &mut BTreeMap<usize, SoElement>) -> Result<SoElement> {
    if let Some(v) = memo.get(&key(expr)) {
        return Ok(v.clone());
    }
    let so = table.so();
    let v = match expr.as_ref() {
        BracketExpr::Leaf(s) => table.image(*s)?.clone(),
        BracketExpr::Scale(s, e) => eval_memo(e, table, memo)?.scale(s),
        BracketExpr::Bracket(a, b) => {
            let x = eval_memo(a, table, memo)?;
            let y = eval_memo(b, table, memo)?;
            so.bracket(&x, &y)?
        }
        BracketExpr::Sum(parts) => {
            let mut acc = so.zero();
            for p in parts {
                acc = acc.add(&eval_memo(p, table, memo)?);
            }
            acc
        }
    };
    memo.insert(key(expr), v.clone());
    Ok(v)
}

/// Depth and node count of the fully expanded tree.
pub fn depth_and_size(expr: &Expr) -> (usize, u64) {
    let mut memo = BTreeMap::new();
    depth_size_memo(expr, &mut memo)
}

fn depth_size_memo(expr: &Expr, memo: &mut BTreeMap<usize, (usize, u64)>) -> (usize, u64) {
    if let Some(v) = memo.get(&key(expr)) {
        return *v;
    }
    let v = match expr.as_ref() {
        BracketExpr::Leaf(_) => (1, 1),
        BracketExpr::Scale(_, e) => {
            let (d, s) = depth_size_memo(e, memo);
            (d + 1, s.saturating_add(1))
        }
        BracketExpr::Bracket(a, b) => {
            let (da, sa) = depth_size_memo(a, memo);
            let (db, sb) = depth_size_memo(b, memo);
            (da.max(db) + 1, sa.saturating_add(sb).saturating_add(1))
        }
        BracketExpr::Sum(parts) => {
            let mut d = 0;
            let mut s = 1u64;
            for p in parts {
                let (dp, sp) = depth_size_memo(p, memo);
                d = d.max(dp);
                s = s.saturating_add(sp);
            }
            (d + 1, s)
        }
    };
    memo.insert(key(expr), v);
    v
}

/// Text form: `[A, B]`, `(s)·A`, `A + B`, leaves as generator names.
pub fn render(expr: &Expr, table: &ImageTable) -> String {
    match expr.as_ref() {
        BracketExpr::Leaf(s) => table.render_symbol(*s),
        BracketExpr::Scale(s, e) => format!("({s})·{}", render(e, table)),
        BracketExpr::Bracket(a, b) => format!("[{}, {}]", render(a, table), render(b, table)),
        BracketExpr::Sum(parts) => {
            let ps: Vec<String> = parts.iter().map(|p| render(p, table)).collect();
            format!("({})", ps.join(" + "))
        }
    }
}

/// A requested element `construct(shape, indices, scale * monomial)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSpec {
    pub shape: Shape,
    pub indices: Vec<usize>,
    pub monomial: Word,
    pub scale: Scalar,
}

impl TargetSpec {
    pub fn new(shape: Shape, indices: Vec<usize>, monomial: Word) -> Self {
        TargetSpec { shape, indices, monomial, scale: Scalar::one() }
    }

    /// The element this target names. The monomial is normalized first.
    pub fn element(&self, table: &ImageTable) -> Result<SoElement> {
        let alg = table.so().coords();
        let a = alg.word(&self.monomial).scale(&self.scale);
        table.so().construct(self.shape, &self.indices, &a)
    }

    pub fn render(&self, table: &ImageTable) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| format!("{i}")).collect();
        let alg = table.so().coords();
        let word = alg.render_word(&alg.normal_form(&self.monomial));
        if self.scale.is_one() {
            format!("{}({}) {}", self.shape, idx.join(","), word)
        } else {
            format!("{}({}) ({})·{}", self.shape, idx.join(","), self.scale, word)
        }
    }
}

/// Outcome of building and independently re-evaluating one witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub target: String,
    pub passed: bool,
    pub expression: String,
    pub depth: usize,
    pub size: u64,
    pub detail: Option<String>,
}

/// Build the witness for `target`, evaluate it from scratch and compare.
pub fn verify_witness(target: &TargetSpec, table: &ImageTable) -> Result<WitnessReport> {
    let expr = witness(target, table)?;
    let value = evaluate(&expr, table)?;
    let want = target.element(table)?;
    let (depth, size) = depth_and_size(&expr);
    let passed = value == want;
    let so = table.so();
    Ok(WitnessReport {
        target: target.render(table),
        passed,
        expression: render(&expr, table),
        depth,
        size,
        detail: (!passed).then(|| format!("evaluates to {}; target {}", so.render(&value), so.render(&want))),
    })
}

/// `count` targets of `shape`: first one per letter (so every generator,
/// inverse and `z` letter appears), then random words of raw length at
/// most `max_len` with random indices and occasional scale factors.
pub fn sample_targets(table: &ImageTable, shape: Shape, count: usize, max_len: usize, seed: u64) -> Vec<TargetSpec> {
    let alg = table.so().coords();
    let r = table.spec().rank();
    let mut rng = sample::sub_rng(seed, shape as u64);
    let mut out = Vec::with_capacity(count);
    let indices = |rng: &mut sample::SuiteRng| -> Vec<usize> {
        let i = rng.gen_range(1..=r);
        match shape {
            Shape::Vert | Shape::Hort => alloc::vec![i],
            Shape::Ul => {
                let mut j = rng.gen_range(1..r);
                if j >= i {
                    j += 1;
                }
                alloc::vec![i, j]
            }
            Shape::Ur | Shape::Bl => alloc::vec![i, rng.gen_range(1..=r)],
        }
    };
    for code in 0..alg.letter_count().min(count) {
        let l = crate::coordalg::Letter::new((code / 2) as u16, code % 2 == 1);
        let idx = indices(&mut rng);
        out.push(TargetSpec::new(shape, idx, alloc::vec![l]));
    }
    while out.len() < count {
        let idx = indices(&mut rng);
        let w = alg.normal_form(&sample::raw_word(alg, &mut rng, max_len));
        let mut t = TargetSpec::new(shape, idx, w);
        if rng.gen_bool(0.2) {
            t.scale = sample::scalar(&mut rng);
        }
        out.push(t);
    }
    out
}

pub(crate) fn unsupported(target: &TargetSpec, table: &ImageTable, why: &str) -> Error {
    Error::UnsupportedTarget(format!("{}: {why}", target.render(table)))
}
