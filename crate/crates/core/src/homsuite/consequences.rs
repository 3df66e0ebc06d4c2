//! Identities the relations force on the coordinates read off the images:
//! inverses, eta-fixed Omega coordinates, and the mixing relations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{GeneratorSymbol, ImageTable, Role};
use crate::coordalg::NCElement;
use crate::error::Result;
use crate::rootsys::{LongShape, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordCheck {
    /// `inverse`, `eta-fixed`, `omega-plus`, `theta-plus`, `omega-minus` or `theta-minus`.
    pub kind: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordReport {
    pub checks: Vec<CoordCheck>,
}

impl CoordReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

/// Check inverse coordinates, eta-fixedness of Omega coordinates, and the
/// mixing relation for every difference root and sum root sharing an index pair.
pub fn verify_coordinate_consequences(table: &ImageTable) -> Result<CoordReport> {
    let alg = table.so().coords();
    let spec = table.spec();
    let mut report = CoordReport::default();
    let mut push = |kind: &'static str, subject: String, lhs: NCElement, rhs: NCElement| {
        let passed = alg.is_equal(&lhs, &rhs);
        let detail = (!passed).then(|| format!("{} != {}", alg.render(&lhs), alg.render(&rhs)));
        report.checks.push(CoordCheck { kind, subject, passed, detail });
    };
    let coord = |role: Role, root: usize, copy: usize| {
        table.coordinate(GeneratorSymbol::new(role, Source::Adjoined { root, copy }))
    };
    for (idx, (root, copies)) in spec.adjoined().iter().enumerate() {
        for k in 1..=*copies {
            let s = coord(Role::E, idx, k)?;
            let s_inv = coord(Role::F, idx, k)?;
            let name = table.render_symbol(GeneratorSymbol::new(Role::E, Source::Adjoined { root: idx, copy: k }));
            push("inverse", format!("{name} * inverse"), alg.mul(&s, &s_inv), NCElement::one());
            push("inverse", format!("inverse * {name}"), alg.mul(&s_inv, &s), NCElement::one());
            if root.is_omega() {
                push("eta-fixed", name, alg.eta(&s), s.clone());
            }
        }
    }
    for (ti, (theta, tc)) in spec.adjoined().iter().enumerate() {
        let Some(LongShape::Diff { p, q }) = theta.long_shape() else { continue };
        for (ki, (kappa, kc)) in spec.adjoined().iter().enumerate() {
            let Some(LongShape::Sum { sign, a, b }) = kappa.long_shape() else { continue };
            if (a, b) != (p.min(q), p.max(q)) {
                continue;
            }
            let kind = match (kappa.is_omega(), sign > 0) {
                (true, true) => "omega-plus",
                (false, true) => "theta-plus",
                (true, false) => "omega-minus",
                (false, false) => "theta-minus",
            };
            for i in 1..=*tc {
                for j in 1..=*kc {
                    let s = coord(Role::E, ti, i)?;
                    let t = coord(Role::E, ki, j)?;
                    let (es, et) = (alg.eta(&s), alg.eta(&t));
                    let (lhs, rhs) = match (sign > 0, p < q) {
                        (true, true) => (alg.mul(&s, &et), alg.mul(&t, &es)),
                        (true, false) => (alg.mul(&s, &t), alg.mul(&et, &es)),
                        (false, true) => (alg.mul(&es, &t), alg.mul(&et, &s)),
                        (false, false) => (alg.mul(&es, &et), alg.mul(&t, &s)),
                    };
                    let subject = format!(
                        "{} with {}",
                        table.render_symbol(GeneratorSymbol::new(Role::E, Source::Adjoined { root: ti, copy: i })),
                        table.render_symbol(GeneratorSymbol::new(Role::E, Source::Adjoined { root: ki, copy: j }))
                    );
                    push(kind, subject, lhs, rhs);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::tests::table;
    use super::*;

    #[test]
    fn adjacent_omega_pair() {
        let t = table(3, &[(&[1, -1, 0], 1), (&[1, 1, 0], 1)]);
        let rep = verify_coordinate_consequences(&t).unwrap();
        assert_eq!(rep.failed(), 0);
        assert_eq!(rep.count("inverse"), 4);
        assert_eq!(rep.count("eta-fixed"), 1);
        assert_eq!(rep.count("omega-plus"), 1);
    }

    #[test]
    fn all_four_families() {
        let t = table(
            4,
            &[(&[0, 1, -1, 0], 1), (&[0, 1, 1, 0], 1), (&[0, -1, -1, 0], 1), (&[0, 0, 1, -1], 1), (&[0, 0, 1, 1], 1)],
        );
        let rep = verify_coordinate_consequences(&t).unwrap();
        assert_eq!(rep.failed(), 0, "{:?}", rep.checks);
        assert_eq!(rep.count("omega-plus"), 2);
        assert_eq!(rep.count("omega-minus"), 1);
        let t = table(4, &[(&[0, -1, 0, 1], 2), (&[0, 1, 0, 1], 1), (&[0, -1, 0, -1], 1)]);
        let rep = verify_coordinate_consequences(&t).unwrap();
        assert_eq!(rep.failed(), 0, "{:?}", rep.checks);
        assert_eq!(rep.count("theta-plus"), 2);
        assert_eq!(rep.count("theta-minus"), 2);
    }
}
