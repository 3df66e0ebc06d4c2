//! Randomized check of the Lie algebra axioms and of closure under the bracket.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{SoAlgebra, SoElement};
use crate::error::Result;
use crate::sample;

/// Failed samples are recorded up to this many.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples: usize,
    pub antisymmetry_failures: usize,
    pub jacobi_failures: usize,
    pub membership_failures: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn failed(&self) -> usize {
        self.antisymmetry_failures + self.jacobi_failures + self.membership_failures
    }
}

/// Sample `triples` homogeneous triples `(x, y, z)` with monomial
/// coordinates of length at most 3 and check `[x,y] = -[y,x]`, the Jacobi
/// identity and membership of every bracket computed along the way.
pub fn verify_lie_axioms(so: &SoAlgebra, triples: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = sample::rng(seed);
    let mut report = AxiomReport::default();
    for n in 0..triples {
        let x = sample::homogeneous(so, &mut rng, 3)?;
        let y = sample::homogeneous(so, &mut rng, 3)?;
        let z = sample::homogeneous(so, &mut rng, 3)?;
        report.triples += 1;
        let mut outputs: Vec<SoElement> = Vec::new();
        // `bracket` itself rejects non-members; the check is repeated here
        // on the raw product so a failure is counted rather than aborting
        let mut br = |a: &SoElement, b: &SoElement| -> SoElement {
            let m = a.matrix().mul(b.matrix(), so.coords()).sub(&b.matrix().mul(a.matrix(), so.coords()));
            let v = SoElement { m };
            outputs.push(v.clone());
            v
        };
        let xy = br(&x, &y);
        let yx = br(&y, &x);
        let yz = br(&y, &z);
        let zx = br(&z, &x);
        let j = br(&x, &yz).add(&br(&y, &zx)).add(&br(&z, &xy));
        if xy.add(&yx) != so.zero() {
            report.antisymmetry_failures += 1;
            note(&mut report.failures, format!("triple {n}: [x,y] + [y,x] = {}", so.render(&xy.add(&yx))));
        }
        if !j.is_zero() {
            report.jacobi_failures += 1;
            note(&mut report.failures, format!("triple {n}: Jacobi sum = {}", so.render(&j)));
        }
        let bad = outputs.iter().filter(|v| !so.membership_check(v.matrix())).count();
        if bad > 0 {
            report.membership_failures += 1;
            note(&mut report.failures, format!("triple {n}: {bad} bracket outputs outside the algebra"));
        }
    }
    Ok(report)
}

fn note(failures: &mut Vec<String>, s: String) {
    if failures.len() < MAX_RECORDED_FAILURES {
        failures.push(s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordalg::CoordAlgebra;
    use crate::rootsys::{AffinizationSpec, Root};

    #[test]
    fn axioms_hold_with_noncommuting_coordinates() {
        let spec = AffinizationSpec::new(
            3,
            alloc::vec![(Root::new(alloc::vec![1, 1, 0]).unwrap(), 1), (Root::new(alloc::vec![0, 1, -1]).unwrap(), 2)],
        )
        .unwrap();
        let so = SoAlgebra::new(CoordAlgebra::new(&spec).unwrap());
        let rep = verify_lie_axioms(&so, 50, 1).unwrap();
        assert_eq!(rep.triples, 50);
        assert_eq!(rep.failed(), 0, "{:?}", rep.failures);
    }
}
