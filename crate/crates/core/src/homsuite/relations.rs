//! The defining relations checked on the images.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::{ad_power, GeneratorSymbol, ImageTable, Role};
use crate::error::{Error, Result};
use crate::liealg::SoElement;
use crate::rootsys::{GimMatrix, Source};
use crate::scalar::Scalar;

/// Outcome of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRecord {
    /// `R1.he`, `R1.hf`, `R1.ef`, `R2.ef`, `R2.fe`, `R2.ee`, `R2.ff`,
    /// `R3.ee`, `R3.ff`, `R3.ef` or `R3.fe`.
    pub id: &'static str,
    /// Positions of the two generators in matrix order (0-based).
    pub i: usize,
    pub j: usize,
    pub left: String,
    pub right: String,
    pub passed: bool,
    /// Both sides rendered, on failure only.
    pub detail: Option<String>,
}

/// A computed bracket the relations leave unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub records: Vec<RelationRecord>,
    /// `[e_{mu,i}, f_{mu,j}]` for distinct copies of one adjoined root.
    pub observations: Vec<Observation>,
}

impl RelationReport {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| !r.passed)
    }
}

struct Checker<'a> {
    table: &'a ImageTable,
    report: RelationReport,
}

impl Checker<'_> {
    fn sym(&self, role: Role, i: usize) -> GeneratorSymbol {
        GeneratorSymbol::new(role, self.table.sources()[i])
    }

    fn img(&self, role: Role, i: usize) -> Result<&SoElement> {
        self.table.image(self.sym(role, i))
    }

    fn record(
        &mut self,
        id: &'static str,
        (ri, i): (Role, usize),
        (rj, j): (Role, usize),
        lhs: &SoElement,
        rhs: &SoElement,
    ) {
        let passed = lhs == rhs;
        let so = self.table.so();
        let detail = (!passed).then(|| format!("lhs = {}; rhs = {}", so.render(lhs), so.render(rhs)));
        let left = self.table.render_symbol(self.sym(ri, i));
        let right = self.table.render_symbol(self.sym(rj, j));
        self.report.records.push(RelationRecord { id, i, j, left, right, passed, detail });
    }
}

/// Check every relation of the presentation defined by `a` on the images.
pub fn verify_gim_relations(table: &ImageTable, a: &GimMatrix) -> Result<RelationReport> {
    let n = table.sources().len();
    if a.n() != n {
        return Err(Error::ContextMismatch);
    }
    let so = table.so();
    let zero = so.zero();
    let mut c = Checker { table, report: RelationReport::default() };
    use Role::*;
    for i in 0..n {
        for j in 0..n {
            let aij = Scalar::from_int(a.get(i, j));
            let lhs = so.bracket(c.img(H, i)?, c.img(E, j)?)?;
            let rhs = c.img(E, j)?.scale(&aij);
            c.record("R1.he", (H, i), (E, j), &lhs, &rhs);
            let lhs = so.bracket(c.img(H, i)?, c.img(F, j)?)?;
            let rhs = c.img(F, j)?.scale(&-aij);
            c.record("R1.hf", (H, i), (F, j), &lhs, &rhs);
        }
    }
    for i in 0..n {
        let lhs = so.bracket(c.img(E, i)?, c.img(F, i)?)?;
        let rhs = c.img(H, i)?.clone();
        c.record("R1.ef", (E, i), (F, i), &lhs, &rhs);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let aij = a.get(i, j);
            if aij <= 0 {
                let power = (1 - aij) as usize;
                let lhs = so.bracket(c.img(E, i)?, c.img(F, j)?)?;
                c.record("R2.ef", (E, i), (F, j), &lhs, &zero);
                let lhs = so.bracket(c.img(F, i)?, c.img(E, j)?)?;
                c.record("R2.fe", (F, i), (E, j), &lhs, &zero);
                let lhs = ad_power(so, c.img(E, i)?, c.img(E, j)?, power)?;
                c.record("R2.ee", (E, i), (E, j), &lhs, &zero);
                let lhs = ad_power(so, c.img(F, i)?, c.img(F, j)?, power)?;
                c.record("R2.ff", (F, i), (F, j), &lhs, &zero);
            } else {
                let power = (aij + 1) as usize;
                let lhs = so.bracket(c.img(E, i)?, c.img(E, j)?)?;
                c.record("R3.ee", (E, i), (E, j), &lhs, &zero);
                let lhs = so.bracket(c.img(F, i)?, c.img(F, j)?)?;
                c.record("R3.ff", (F, i), (F, j), &lhs, &zero);
                let lhs = ad_power(so, c.img(E, i)?, c.img(F, j)?, power)?;
                c.record("R3.ef", (E, i), (F, j), &lhs, &zero);
                let lhs = ad_power(so, c.img(F, i)?, c.img(E, j)?, power)?;
                c.record("R3.fe", (F, i), (E, j), &lhs, &zero);
                if let (Source::Adjoined { root: ri, .. }, Source::Adjoined { root: rj, .. }) =
                    (table.sources()[i], table.sources()[j])
                {
                    if ri == rj {
                        let value = so.bracket(c.img(E, i)?, c.img(F, j)?)?;
                        c.report.observations.push(Observation {
                            left: table.render_symbol(c.sym(E, i)),
                            right: table.render_symbol(c.sym(F, j)),
                            value: so.render(&value),
                        });
                    }
                }
            }
        }
    }
    Ok(c.report)
}

/// Read the integer `c_ij` with `[h_i, e_j] = c_ij e_j` off the images.
///
/// Fails when some bracket is not a rational integer multiple of `e_j`.
pub fn derived_cartan(table: &ImageTable) -> Result<Vec<Vec<i64>>> {
    let so = table.so();
    let n = table.sources().len();
    let mut rows = Vec::with_capacity(n);
    for &si in table.sources() {
        let mut row = Vec::with_capacity(n);
        for &sj in table.sources() {
            let e = table.image(GeneratorSymbol::new(Role::E, sj))?;
            let h = table.image(GeneratorSymbol::new(Role::H, si))?;
            let br = so.bracket(h, e)?;
            let bad = || Error::ConstructionBug(format!("[h, e] is not an integer multiple of e for {si:?}, {sj:?}"));
            let (pos, a) = e.matrix().entries().next().ok_or_else(bad)?;
            let (w, c1) = a.terms().iter().next().ok_or_else(bad)?;
            let c2 = br.matrix().get(pos.0, pos.1).and_then(|b| b.terms().get(w).cloned()).unwrap_or_else(Scalar::zero);
            let ratio = &c2 * &c1.inverse().ok_or_else(bad)?;
            if !ratio.sqrt2_part().is_zero() || !ratio.rational_part().is_integer() {
                return Err(bad());
            }
            if br != e.scale(&ratio) {
                return Err(bad());
            }
            row.push(ratio.rational_part().to_integer().to_i64().ok_or_else(bad)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::super::tests::table;
    use super::*;
    use crate::rootsys::build_affinized_matrix;

    #[test]
    fn plain_b3_passes() {
        let t = table(3, &[]);
        let a = build_affinized_matrix(t.spec()).unwrap();
        let rep = verify_gim_relations(&t, &a).unwrap();
        assert_eq!(rep.failed(), 0, "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(derived_cartan(&t).unwrap(), a.rows());
    }

    #[test]
    fn affine_b3_passes() {
        let t = table(3, &[(&[-1, -1, 0], 1)]);
        let a = build_affinized_matrix(t.spec()).unwrap();
        let rep = verify_gim_relations(&t, &a).unwrap();
        assert_eq!(rep.failed(), 0, "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn transposed_matrix_is_rejected() {
        let t = table(3, &[]);
        let a = build_affinized_matrix(t.spec()).unwrap();
        let tr: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| a.get(j, i)).collect()).collect();
        let rep = verify_gim_relations(&t, &GimMatrix::from_rows(tr).unwrap()).unwrap();
        assert!(rep.failed() > 0);
    }

    #[test]
    fn copies_record_observations() {
        let t = table(3, &[(&[1, 0, -1], 2)]);
        let a = build_affinized_matrix(t.spec()).unwrap();
        let rep = verify_gim_relations(&t, &a).unwrap();
        assert_eq!(rep.failed(), 0, "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.observations.len(), 2);
    }
}
