//! Images of the Chevalley-type generators in `so_{2r+1}` and the suites
//! that check them: the defining relations of the intersection-matrix
//! algebra, gradedness, and the coordinate identities they force.

mod consequences;
mod grading;
mod relations;

pub use consequences::{verify_coordinate_consequences, CoordCheck, CoordReport};
pub use grading::{verify_gradedness, GradingFailure, GradingReport};
pub use relations::{derived_cartan, verify_gim_relations, Observation, RelationRecord, RelationReport};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coordalg::NCElement;
use crate::error::{Error, Result};
use crate::liealg::{Shape, SoAlgebra, SoElement};
use crate::rootsys::{AffinizationSpec, GradingDegree, LongShape, Source};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    E,
    F,
    H,
}

impl Role {
    fn letter(self) -> char {
        match self {
            Role::E => 'e',
            Role::F => 'f',
            Role::H => 'h',
        }
    }
}

/// One of the `3(r+d)` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub role: Role,
    pub source: Source,
}

impl GeneratorSymbol {
    pub fn new(role: Role, source: Source) -> Self {
        GeneratorSymbol { role, source }
    }

    /// `e_2` for base generators, `f[1,-1,0;2]` for adjoined ones.
    pub fn render(&self, spec: &AffinizationSpec) -> String {
        match self.source {
            Source::Base(i) => format!("{}_{}", self.role.letter(), i),
            Source::Adjoined { root, copy } => {
                let coeffs: Vec<String> = spec.adjoined()[root].0.coeffs().iter().map(|c| format!("{c}")).collect();
                format!("{}[{};{}]", self.role.letter(), coeffs.join(","), copy)
            }
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.letter().to_ascii_uppercase();
        write!(f, "{c}")
    }
}

/// Image of one generator with its assigned degree and, for `E`/`F`, the
/// shorthand family and indices it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageEntry {
    pub element: SoElement,
    pub degree: GradingDegree,
    pub form: Option<(Shape, Vec<usize>)>,
}

/// All generator images for one affinization.
#[derive(Clone, Debug)]
pub struct ImageTable {
    so: SoAlgebra,
    sources: Vec<Source>,
    images: BTreeMap<GeneratorSymbol, ImageEntry>,
}

/// Build the image of every generator and check each is homogeneous of its degree.
pub fn build_image_table(spec: &AffinizationSpec, so: SoAlgebra) -> Result<ImageTable> {
    if so.coords().spec() != spec {
        return Err(Error::ContextMismatch);
    }
    let r = spec.rank();
    let sources = spec.sources();
    let mut images = BTreeMap::new();
    let one = NCElement::one();
    for &src in &sources {
        let root = spec.source_root(src);
        let deg = GradingDegree::of_root(&root);
        let (e_form, e_coord, f_form, f_coord, h): (_, NCElement, _, NCElement, SoElement) = match src {
            Source::Base(i) if i < r => (
                (Shape::Ul, vec![i, i + 1]),
                one.clone(),
                (Shape::Ul, vec![i + 1, i]),
                one.clone(),
                so.h_diag(i, &Scalar::one())?.sub(&so.h_diag(i + 1, &Scalar::one())?),
            ),
            Source::Base(_) => {
                let s2 = NCElement::scalar(Scalar::sqrt2());
                ((Shape::Vert, vec![r]), s2.clone(), (Shape::Hort, vec![r]), s2, so.h_diag(r, &Scalar::from_int(2))?)
            }
            Source::Adjoined { root: idx, copy } => {
                let c = so.coords().coordinate(idx, copy)?;
                let coord = so.coords().letter_element(c.letter);
                let inv = so.coords().letter_element(c.letter.inverse());
                let h1 = |p: usize| so.h_diag(p, &Scalar::one());
                match root.long_shape() {
                    Some(LongShape::Diff { p, q }) => {
                        ((Shape::Ul, vec![p, q]), coord, (Shape::Ul, vec![q, p]), inv, h1(p)?.sub(&h1(q)?))
                    }
                    Some(LongShape::Sum { sign, a, b }) if sign > 0 => {
                        ((Shape::Ur, vec![a, b]), coord, (Shape::Bl, vec![b, a]), inv, h1(a)?.add(&h1(b)?))
                    }
                    Some(LongShape::Sum { a, b, .. }) => {
                        ((Shape::Bl, vec![a, b]), coord, (Shape::Ur, vec![b, a]), inv, h1(a)?.add(&h1(b)?).neg())
                    }
                    None => return Err(Error::UnsupportedRoot(format!("{root}"))),
                }
            }
        };
        let e = so.construct(e_form.0, &e_form.1, &e_coord)?;
        let f = so.construct(f_form.0, &f_form.1, &f_coord)?;
        images.insert(
            GeneratorSymbol::new(Role::E, src),
            ImageEntry { element: e, degree: deg.clone(), form: Some(e_form) },
        );
        images.insert(
            GeneratorSymbol::new(Role::F, src),
            ImageEntry { element: f, degree: deg.neg(), form: Some(f_form) },
        );
        images.insert(
            GeneratorSymbol::new(Role::H, src),
            ImageEntry { element: h, degree: GradingDegree::zero(r), form: None },
        );
    }
    let table = ImageTable { so, sources, images };
    for (sym, entry) in &table.images {
        if !table.has_degree(&entry.element, &entry.degree) {
            return Err(Error::ConstructionBug(format!(
                "image of {} is not homogeneous of degree {}",
                sym.render(spec),
                entry.degree
            )));
        }
    }
    Ok(table)
}

impl ImageTable {
    pub fn so(&self) -> &SoAlgebra {
        &self.so
    }

    pub fn spec(&self) -> &AffinizationSpec {
        self.so.coords().spec()
    }

    /// Generator sources in matrix order.
    pub fn sources(&self) -> &[Source] {
        &self.sources
    }

    pub fn entry(&self, sym: GeneratorSymbol) -> Result<&ImageEntry> {
        self.images.get(&sym).ok_or_else(|| Error::UnknownGenerator(format!("{sym:?}")))
    }

    pub fn image(&self, sym: GeneratorSymbol) -> Result<&SoElement> {
        Ok(&self.entry(sym)?.element)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GeneratorSymbol> {
        self.images.keys()
    }

    pub fn render_symbol(&self, sym: GeneratorSymbol) -> String {
        sym.render(self.spec())
    }

    /// Replace an image without any check. Only meant for negative
    /// controls that confirm the suites detect a wrong table.
    pub fn override_image(&mut self, sym: GeneratorSymbol, element: SoElement) {
        if let Some(e) = self.images.get_mut(&sym) {
            e.element = element;
        }
    }

    /// The coordinate of an `E`/`F` image read off its primary matrix position.
    pub fn coordinate(&self, sym: GeneratorSymbol) -> Result<NCElement> {
        let entry = self.entry(sym)?;
        let (shape, idx) = entry
            .form
            .as_ref()
            .ok_or_else(|| Error::UnknownGenerator(format!("{} has no coordinate", self.render_symbol(sym))))?;
        self.so.primary_entry(&entry.element, *shape, idx)
    }

    /// Zero, or a single homogeneous part of degree `deg`.
    pub fn has_degree(&self, x: &SoElement, deg: &GradingDegree) -> bool {
        let d = self.so.decompose(x);
        d.parts.is_empty() || (d.parts.len() == 1 && d.parts.contains_key(deg))
    }
}

/// `ad(x)^n y`, stopping early once the result vanishes.
pub fn ad_power(so: &SoAlgebra, x: &SoElement, y: &SoElement, n: usize) -> Result<SoElement> {
    let mut acc = y.clone();
    for _ in 0..n {
        if acc.is_zero() {
            break;
        }
        acc = so.bracket(x, &acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordalg::CoordAlgebra;
    use crate::rootsys::Root;

    pub(crate) fn table(r: usize, roots: &[(&[i32], usize)]) -> ImageTable {
        let spec = AffinizationSpec::new(r, roots.iter().map(|(c, k)| (Root::new(c.to_vec()).unwrap(), *k)).collect())
            .unwrap();
        let so = SoAlgebra::new(CoordAlgebra::new(&spec).unwrap());
        build_image_table(&spec, so).unwrap()
    }

    #[test]
    fn omega_h_image() {
        let t = table(3, &[(&[1, 1, 0], 1)]);
        let so = t.so();
        let h = t.image(GeneratorSymbol::new(Role::H, Source::Adjoined { root: 0, copy: 1 })).unwrap();
        let expected = so.h_diag(1, &Scalar::one()).unwrap().add(&so.h_diag(2, &Scalar::one()).unwrap());
        assert_eq!(h, &expected);
    }

    #[test]
    fn theta_images() {
        let t = table(3, &[(&[1, 0, -1], 1), (&[1, 0, 1], 1)]);
        let so = t.so();
        let alg = so.coords();
        let y0 = alg.letter_element(alg.coordinate(0, 1).unwrap().letter);
        let e = t.image(GeneratorSymbol::new(Role::E, Source::Adjoined { root: 0, copy: 1 })).unwrap();
        assert_eq!(e, &so.ul(1, 3, &y0).unwrap());
        let y1 = alg.coordinate(1, 1).unwrap().letter;
        let f = t.image(GeneratorSymbol::new(Role::F, Source::Adjoined { root: 1, copy: 1 })).unwrap();
        assert_eq!(f, &so.bl(3, 1, &alg.letter_element(y1.inverse())).unwrap());
        assert_eq!(
            t.coordinate(GeneratorSymbol::new(Role::F, Source::Adjoined { root: 1, copy: 1 })).unwrap(),
            alg.letter_element(y1.inverse())
        );
    }

    #[test]
    fn ad_power_basics() {
        let t = table(3, &[]);
        let so = t.so();
        let e1 = t.image(GeneratorSymbol::new(Role::E, Source::Base(1))).unwrap();
        let e2 = t.image(GeneratorSymbol::new(Role::E, Source::Base(2))).unwrap();
        assert_eq!(&ad_power(so, e1, e2, 0).unwrap(), e2);
        assert!(!ad_power(so, e1, e2, 1).unwrap().is_zero());
        assert!(ad_power(so, e1, e2, 2).unwrap().is_zero());
    }

    #[test]
    fn tampered_table_keeps_other_images() {
        let mut t = table(3, &[]);
        let sym = GeneratorSymbol::new(Role::E, Source::Base(1));
        let zero = t.so().zero();
        t.override_image(sym, zero.clone());
        assert_eq!(t.image(sym).unwrap(), &zero);
        assert!(!t.image(GeneratorSymbol::new(Role::E, Source::Base(2))).unwrap().is_zero());
    }
}
