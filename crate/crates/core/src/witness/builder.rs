//! Construction of witnesses.
//!
//! Every intermediate expression is carried with its value. Each bracket
//! step names the element it is supposed to produce; the step is accepted
//! if the value equals it or its negative (then a `Scale(-1)` is wrapped
//! around), and anything else is reported as a construction bug.
//!
//! Everything is routed through `vert_i(a)` elements: units come from
//! `e_r`, `f_r` scaled by `1/sqrt 2` and shifted one index at a time;
//! single letters come from the generator images, with `z` letters
//! obtained through the bracket chains below; longer words are built by
//! concatenation `vert_i(uv) = [[vert_i(u), hort_k(1)], vert_k(v)]`, `k != i`.

use alloc::collections::BTreeMap;
use alloc::format;

use super::{unsupported, BracketExpr, Expr, TargetSpec};
use crate::coordalg::{GenKind, Letter, NCElement, Word};
use crate::error::{Error, Result};
use crate::homsuite::{GeneratorSymbol, ImageTable, Role};
use crate::liealg::{Shape, SoAlgebra, SoElement};
use crate::rootsys::{LongShape, Source};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Built {
    expr: Expr,
    value: SoElement,
}

struct Builder<'a> {
    table: &'a ImageTable,
    so: &'a SoAlgebra,
    r: usize,
    vert1: BTreeMap<usize, Built>,
    hort1: BTreeMap<usize, Built>,
}

impl<'a> Builder<'a> {
    fn new(table: &'a ImageTable) -> Self {
        Builder { table, so: table.so(), r: table.spec().rank(), vert1: BTreeMap::new(), hort1: BTreeMap::new() }
    }

    fn el(&self, w: &[Letter]) -> NCElement {
        self.so.coords().word(w)
    }

    fn leaf(&self, role: Role, source: Source) -> Result<Built> {
        let sym = GeneratorSymbol::new(role, source);
        Ok(Built { expr: BracketExpr::leaf(sym), value: self.table.image(sym)?.clone() })
    }

    fn scale(&self, s: Scalar, b: &Built) -> Built {
        Built { value: b.value.scale(&s), expr: BracketExpr::scale(s, b.expr.clone()) }
    }

    fn neg(&self, b: &Built) -> Built {
        self.scale(Scalar::from_int(-1), b)
    }

    /// `[a, b]`, expected to equal `want` up to sign.
    fn bracket(&self, a: &Built, b: &Built, want: Result<SoElement>) -> Result<Built> {
        let want = want?;
        let value = self.so.bracket(&a.value, &b.value)?;
        let expr = BracketExpr::bracket(a.expr.clone(), b.expr.clone());
        if value == want {
            Ok(Built { expr, value })
        } else if value.neg() == want {
            Ok(Built { expr: BracketExpr::scale(Scalar::from_int(-1), expr), value: want })
        } else {
            Err(Error::ConstructionBug(format!(
                "step produced {} instead of +-{}",
                self.so.render(&value),
                self.so.render(&want)
            )))
        }
    }

    fn other(&self, i: usize) -> usize {
        if i == 1 {
            2
        } else {
            1
        }
    }

    /// `vert_i(1)`: `e_r / sqrt 2`, then `vert_{i}(a) = [e_i, vert_{i+1}(a)]`.
    fn vert_one(&mut self, i: usize) -> Result<Built> {
        if let Some(b) = self.vert1.get(&i) {
            return Ok(b.clone());
        }
        let b = if i == self.r {
            let e = self.leaf(Role::E, Source::Base(self.r))?;
            self.scale(Scalar::from_parts(0, 1, 1, 2), &e)
        } else {
            let up = self.vert_one(i + 1)?;
            let e = self.leaf(Role::E, Source::Base(i))?;
            self.bracket(&e, &up, self.so.vert(i, &NCElement::one()))?
        };
        self.vert1.insert(i, b.clone());
        Ok(b)
    }

    /// `hort_i(1)`: `f_r / sqrt 2`, then `hort_i(a) = [hort_{i+1}(a), f_i]`.
    fn hort_one(&mut self, i: usize) -> Result<Built> {
        if let Some(b) = self.hort1.get(&i) {
            return Ok(b.clone());
        }
        let b = if i == self.r {
            let f = self.leaf(Role::F, Source::Base(self.r))?;
            self.scale(Scalar::from_parts(0, 1, 1, 2), &f)
        } else {
            let up = self.hort_one(i + 1)?;
            let f = self.leaf(Role::F, Source::Base(i))?;
            self.bracket(&up, &f, self.so.hort(i, &NCElement::one()))?
        };
        self.hort1.insert(i, b.clone());
        Ok(b)
    }

    /// `ur_{p,q}(1) = [vert_p(1), vert_q(-1)]`.
    fn ur_one(&mut self, p: usize, q: usize) -> Result<Built> {
        let a = self.vert_one(p)?;
        let b = self.vert_one(q)?;
        self.bracket(&a, &self.neg(&b), self.so.ur(p, q, &NCElement::one()))
    }

    /// `bl_{p,q}(1) = [hort_p(-1), hort_q(1)]`.
    fn bl_one(&mut self, p: usize, q: usize) -> Result<Built> {
        let a = self.hort_one(p)?;
        let b = self.hort_one(q)?;
        self.bracket(&self.neg(&a), &b, self.so.bl(p, q, &NCElement::one()))
    }

    /// Move `vert_from(a)` to `vert_to(a)` through adjacent indices.
    fn shift_vert(&mut self, mut x: Built, from: usize, to: usize, a: &NCElement) -> Result<Built> {
        let mut cur = from;
        while cur > to {
            let e = self.leaf(Role::E, Source::Base(cur - 1))?;
            x = self.bracket(&e, &x, self.so.vert(cur - 1, a))?;
            cur -= 1;
        }
        while cur < to {
            let f = self.leaf(Role::F, Source::Base(cur))?;
            x = self.bracket(&f, &x, self.so.vert(cur + 1, a))?;
            cur += 1;
        }
        Ok(x)
    }

    /// Move `hort_from(a)` to `hort_to(a)` through adjacent indices.
    fn shift_hort(&mut self, mut x: Built, from: usize, to: usize, a: &NCElement) -> Result<Built> {
        let mut cur = from;
        while cur > to {
            let f = self.leaf(Role::F, Source::Base(cur - 1))?;
            x = self.bracket(&x, &f, self.so.hort(cur - 1, a))?;
            cur -= 1;
        }
        while cur < to {
            let e = self.leaf(Role::E, Source::Base(cur))?;
            x = self.bracket(&x, &e, self.so.hort(cur + 1, a))?;
            cur += 1;
        }
        Ok(x)
    }

    /// `vert_i(a)` from `hort_j(a)`: `[[vert_i(1), hort_k(a)], vert_k(1)]` with `k != i`.
    fn vert_from_hort(&mut self, x: Built, j: usize, i: usize, a: &NCElement) -> Result<Built> {
        let k = if j != i { j } else { self.other(i) };
        let h = self.shift_hort(x, j, k, a)?;
        let v1 = self.vert_one(i)?;
        let ul = self.bracket(&v1, &h, self.so.ul(i, k, a))?;
        let vk = self.vert_one(k)?;
        self.bracket(&ul, &vk, self.so.vert(i, a))
    }

    /// `hort_i(a)` from `vert_j(a)`: `[hort_k(1), [vert_k(a), hort_i(1)]]` with `k != i`.
    fn hort_from_vert(&mut self, x: Built, j: usize, i: usize, a: &NCElement) -> Result<Built> {
        let k = if j != i { j } else { self.other(i) };
        let v = self.shift_vert(x, j, k, a)?;
        let hi = self.hort_one(i)?;
        let ul = self.bracket(&v, &hi, self.so.ul(k, i, a))?;
        let hk = self.hort_one(k)?;
        self.bracket(&hk, &ul, self.so.hort(i, a))
    }

    /// `ul_{p,q}(c) -> ul_{p,q}(eta c)` via
    /// `[vert_p(1), [bl_{p,q}(1), [vert_q(-1), ul_{p,q}(c)]]]`.
    fn ul_chain(&mut self, x0: Built, p: usize, q: usize, c: &NCElement) -> Result<Built> {
        let alg = self.so.coords();
        let cb = alg.eta(c);
        let vq = self.vert_one(q)?;
        let x1 = self.bracket(&self.neg(&vq), &x0, self.so.vert(p, c))?;
        let bl = self.bl_one(p, q)?;
        let x2 = self.bracket(&bl, &x1, self.so.hort(q, &cb))?;
        let vp = self.vert_one(p)?;
        self.bracket(&vp, &x2, self.so.ul(p, q, &cb))
    }

    /// `ur_{p,q}(c) -> ur_{p,q}(eta c)` via
    /// `[vert_q(1), [vert_q(1), [vert_p(1), [bl_{p,q}(1), [hort_q(-1), ur_{p,q}(c)]]]]]`.
    fn ur_chain(&mut self, x0: Built, p: usize, q: usize, c: &NCElement) -> Result<Built> {
        let alg = self.so.coords();
        let cb = alg.eta(c);
        let hq = self.hort_one(q)?;
        let x1 = self.bracket(&self.neg(&hq), &x0, self.so.vert(p, c))?;
        let bl = self.bl_one(p, q)?;
        let x2 = self.bracket(&bl, &x1, self.so.hort(q, &cb))?;
        let vp = self.vert_one(p)?;
        let x3 = self.bracket(&vp, &x2, self.so.ul(p, q, &cb))?;
        let vq = self.vert_one(q)?;
        let x4 = self.bracket(&vq, &x3, self.so.vert(p, &cb))?;
        self.bracket(&vq, &x4, self.so.ur(p, q, &cb))
    }

    /// `bl_{p,q}(c) -> bl_{p,q}(eta c)` via
    /// `[hort_p(1), [hort_p(1), [hort_q(1), [ur_{p,q}(1), [vert_p(1), bl_{p,q}(c)]]]]]`.
    fn bl_chain(&mut self, x0: Built, p: usize, q: usize, c: &NCElement) -> Result<Built> {
        let alg = self.so.coords();
        let cb = alg.eta(c);
        let vp = self.vert_one(p)?;
        let x1 = self.bracket(&vp, &x0, self.so.hort(q, c))?;
        let ur = self.ur_one(p, q)?;
        let x2 = self.bracket(&ur, &x1, self.so.vert(p, &cb))?;
        let hq = self.hort_one(q)?;
        let x3 = self.bracket(&hq, &x2, self.so.ul(p, q, &cb))?;
        let hp = self.hort_one(p)?;
        let x4 = self.bracket(&hp, &x3, self.so.hort(q, &cb))?;
        self.bracket(&hp, &x4, self.so.bl(p, q, &cb))
    }

    /// `(j, vert_j(t))` for a single letter `t`.
    fn letter_vert(&mut self, t: Letter) -> Result<(usize, Built)> {
        let alg = self.so.coords();
        let g = alg.gen_id(t);
        let src = Source::Adjoined { root: g.root, copy: g.copy };
        let root = &self.table.spec().adjoined()[g.root].0;
        let shape = root.long_shape().ok_or_else(|| Error::UnsupportedRoot(format!("{root}")))?;
        let inv = t.is_inverse();
        let te = self.el(&[t]);
        // image whose coordinate is the `x`/`y` letter of this copy, or its inverse
        let base = self.leaf(if inv { Role::F } else { Role::E }, src)?;
        if g.kind != GenKind::Z {
            return match (shape, inv) {
                (LongShape::Diff { p, q }, false) => {
                    let v = self.vert_one(q)?;
                    Ok((p, self.bracket(&base, &v, self.so.vert(p, &te))?))
                }
                (LongShape::Diff { p, q }, true) => {
                    let v = self.vert_one(p)?;
                    Ok((q, self.bracket(&base, &v, self.so.vert(q, &te))?))
                }
                (LongShape::Sum { sign, a, b }, false) if sign > 0 => {
                    let h = self.hort_one(b)?;
                    Ok((a, self.bracket(&h, &base, self.so.vert(a, &te))?))
                }
                (LongShape::Sum { sign, a, b }, true) if sign > 0 => {
                    let v = self.vert_one(b)?;
                    let h = self.bracket(&self.neg(&v), &base, self.so.hort(a, &te))?;
                    Ok((a, self.vert_from_hort(h, a, a, &te)?))
                }
                (LongShape::Sum { a, b, .. }, false) => {
                    let v = self.vert_one(a)?;
                    let h = self.bracket(&v, &base, self.so.hort(b, &te))?;
                    Ok((b, self.vert_from_hort(h, b, b, &te)?))
                }
                (LongShape::Sum { a, b, .. }, true) => {
                    let h = self.hort_one(a)?;
                    Ok((b, self.bracket(&h, &base, self.so.vert(b, &te))?))
                }
            };
        }
        // z letters: run the chain on the image carrying y or y^-1, which
        // turns its coordinate into eta of it, i.e. z or z^-1
        let y = self.el(&[alg.eta_letter(t)]);
        match shape {
            LongShape::Diff { p, q } => {
                let (p, q) = if inv { (q, p) } else { (p, q) };
                let ul = self.ul_chain(base, p, q, &y)?;
                let v = self.vert_one(q)?;
                Ok((p, self.bracket(&ul, &v, self.so.vert(p, &te))?))
            }
            LongShape::Sum { sign, a, b } => {
                let plus_chain = (sign > 0) != inv;
                let (p, q) = if inv { (b, a) } else { (a, b) };
                if plus_chain {
                    // image is ur_{p,q}(y^{+-1})
                    let ur = self.ur_chain(base, p, q, &y)?;
                    let h = self.hort_one(q)?;
                    Ok((p, self.bracket(&h, &ur, self.so.vert(p, &te))?))
                } else {
                    // image is bl_{p,q}(y^{+-1})
                    let bl = self.bl_chain(base, p, q, &y)?;
                    let v = self.vert_one(p)?;
                    let h = self.bracket(&v, &bl, self.so.hort(q, &te))?;
                    Ok((q, self.vert_from_hort(h, q, q, &te)?))
                }
            }
        }
    }

    /// `vert_i(w)` for a normal-form word `w`.
    fn word_vert(&mut self, i: usize, w: &[Letter]) -> Result<Built> {
        match w.len() {
            0 => self.vert_one(i),
            1 => {
                let (j, x) = self.letter_vert(w[0])?;
                self.shift_vert(x, j, i, &self.el(w))
            }
            m => {
                let prefix = self.word_vert(i, &w[..m - 1])?;
                let k = self.other(i);
                let (j, x) = self.letter_vert(w[m - 1])?;
                let last = self.shift_vert(x, j, k, &self.el(&w[m - 1..]))?;
                let hk = self.hort_one(k)?;
                let ul = self.bracket(&prefix, &hk, self.so.ul(i, k, &self.el(&w[..m - 1])))?;
                self.bracket(&ul, &last, self.so.vert(i, &self.el(w)))
            }
        }
    }

    fn hort_word(&mut self, i: usize, w: &[Letter]) -> Result<Built> {
        let k = self.other(i);
        let v = self.word_vert(k, w)?;
        self.hort_from_vert(v, k, i, &self.el(w))
    }
}

/// Build a bracket expression over the generator images evaluating to `target`.
pub fn witness(target: &TargetSpec, table: &ImageTable) -> Result<Expr> {
    let so = table.so();
    let alg = so.coords();
    for &l in &target.monomial {
        if (l.gen() as usize) >= alg.generators().len() {
            return Err(Error::UnknownGenerator(format!("letter code {}", l.code())));
        }
    }
    let want = target.element(table)?;
    let w: Word = alg.normal_form(&target.monomial);
    let a = alg.word(&w);
    let mut b = Builder::new(table);
    let idx = &target.indices;
    let built = match target.shape {
        Shape::Vert => b.word_vert(idx[0], &w)?,
        Shape::Hort => b.hort_word(idx[0], &w)?,
        Shape::Ul => {
            let (i, j) = (idx[0], idx[1]);
            if i == j && alg.eta(&a) != a {
                return Err(unsupported(target, table, "diagonal UL needs an eta-fixed coordinate"));
            }
            let v = b.word_vert(i, &w)?;
            let h = b.hort_one(j)?;
            b.bracket(&v, &h, so.ul(i, j, &a))?
        }
        Shape::Ur => {
            let (i, j) = (idx[0], idx[1]);
            let v = b.word_vert(i, &w)?;
            let vj = b.vert_one(j)?;
            b.bracket(&v, &b.neg(&vj), so.ur(i, j, &a))?
        }
        Shape::Bl => {
            let (i, j) = (idx[0], idx[1]);
            let h = b.hort_word(j, &w)?;
            let hi = b.hort_one(i)?;
            b.bracket(&b.neg(&hi), &h, so.bl(i, j, &a))?
        }
    };
    let built = if target.scale.is_one() { built } else { b.scale(target.scale.clone(), &built) };
    if built.value != want {
        return Err(Error::ConstructionBug(format!(
            "witness for {} evaluates to {}",
            target.render(table),
            so.render(&built.value)
        )));
    }
    Ok(built.expr)
}
