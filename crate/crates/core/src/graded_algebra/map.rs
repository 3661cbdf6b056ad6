use num_bigint::BigInt;

use crate::abelian::{AbMap, IntMatrix};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::poly::Polynomial;

use super::module::{GradedModule, ModuleElement};

/// A homogeneous `R`-linear map of degree `offset`, given by the images of
/// the source generators. It sends `M_g` to `N_{g+offset}`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    images: Vec<ModuleElement>,
    offset: Degree,
}

impl GradedMap {
    /// Checks homogeneity of every image and that source relations map to zero.
    pub fn new(
        source: &GradedModule,
        target: &GradedModule,
        images: Vec<ModuleElement>,
        offset: Degree,
    ) -> Result<Self> {
        let map = Self::unchecked(source, target, images, offset)?;
        for (s, img) in map.images.iter().enumerate() {
            let want = &source.shifts()[s] + &map.offset;
            if let Some(d) = target.degree_of(img)? {
                if d != want {
                    return Err(Error::NotHomogeneous(format!(
                        "image of generator {s} has degree {d}, expected {want}"
                    )));
                }
            }
        }
        map.check_well_defined()?;
        Ok(map)
    }

    /// Checks shapes only.
    pub fn unchecked(
        source: &GradedModule,
        target: &GradedModule,
        images: Vec<ModuleElement>,
        offset: Degree,
    ) -> Result<Self> {
        if !source.ring().same_as(target.ring()) {
            return Err(Error::RingMismatch);
        }
        if images.len() != source.num_generators()
            || images.iter().any(|e| e.len() != target.num_generators())
        {
            return Err(Error::DimensionMismatch(
                "graded map images have wrong shape".into(),
            ));
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            images,
            offset,
        })
    }

    /// From a matrix `entries[t][s]` of ring elements.
    pub fn from_matrix(
        source: &GradedModule,
        target: &GradedModule,
        entries: &[Vec<Polynomial>],
        offset: Degree,
    ) -> Result<Self> {
        if entries.len() != target.num_generators()
            || entries.iter().any(|r| r.len() != source.num_generators())
        {
            return Err(Error::DimensionMismatch(
                "graded map matrix has wrong shape".into(),
            ));
        }
        let images = (0..source.num_generators())
            .map(|s| ModuleElement(entries.iter().map(|row| row[s].clone()).collect()))
            .collect();
        Self::new(source, target, images, offset)
    }

    pub fn identity(m: &GradedModule) -> Self {
        let images = (0..m.num_generators()).map(|j| m.generator(j)).collect();
        GradedMap {
            source: m.clone(),
            target: m.clone(),
            images,
            offset: m.ring().zero_degree(),
        }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule, offset: Degree) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.zero_element(); source.num_generators()],
            offset,
        }
    }

    /// Multiplication by a homogeneous `h` of the stated degree, `M → M`.
    pub fn multiplication(m: &GradedModule, h: &Polynomial, degree: &Degree) -> Result<Self> {
        if !m.ring().is_homogeneous_of(h, degree) {
            return Err(Error::NotHomogeneous(m.ring().format(h)));
        }
        let images = (0..m.num_generators())
            .map(|j| m.element_on(j, h.clone()))
            .collect();
        Ok(GradedMap {
            source: m.clone(),
            target: m.clone(),
            images,
            offset: degree.clone(),
        })
    }

    /// Multiplication by a nonzero homogeneous element, degree inferred.
    pub fn multiplication_by(m: &GradedModule, h: &Polynomial) -> Result<Self> {
        let d = m.ring().homogeneous_degree(h)?;
        Self::multiplication(m, h, &d)
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn images(&self) -> &[ModuleElement] {
        &self.images
    }

    pub fn offset(&self) -> &Degree {
        &self.offset
    }

    /// Entry `[t][s]`: component `t` of the image of generator `s`.
    pub fn entry(&self, t: usize, s: usize) -> &Polynomial {
        &self.images[s].0[t]
    }

    /// Relations of the source are carried to zero in the target.
    ///
    /// Each relation is checked in its own degree; since relation submodules
    /// are `R`-submodules this certifies the map in every degree.
    pub fn check_well_defined(&self) -> Result<()> {
        for (c, r) in self.source.relations().iter().enumerate() {
            let img = self.apply(&r.element);
            let piece = self.target.piece(&(&r.degree + &self.offset));
            if !piece.is_zero_element(&img)? {
                return Err(Error::IllDefinedMap(format!(
                    "relation {c} does not map to zero"
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, e: &ModuleElement) -> ModuleElement {
        let mut out = self.target.zero_element();
        for (s, p) in e.0.iter().enumerate() {
            if !p.is_zero() {
                out = out.add(&self.images[s].mul_ring(p));
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        if !inner.target.same_as(&self.source) {
            return Err(Error::DimensionMismatch(
                "composition: modules differ".into(),
            ));
        }
        Ok(GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|e| self.apply(e)).collect(),
            offset: &inner.offset + &self.offset,
        })
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<()> {
        if !self.source.same_as(&other.source)
            || !self.target.same_as(&other.target)
            || self.offset != other.offset
        {
            return Err(Error::DimensionMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(GradedMap {
            images,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(GradedMap {
            images,
            ..self.clone()
        })
    }

    pub fn scale(&self, k: &BigInt) -> GradedMap {
        GradedMap {
            images: self.images.iter().map(|e| e.scale(k)).collect(),
            ..self.clone()
        }
    }

    /// Zero as a map of modules: every generator image vanishes in the target.
    pub fn is_zero(&self) -> bool {
        self.images.iter().enumerate().all(|(s, img)| {
            let piece = self
                .target
                .piece(&(&self.source.shifts()[s] + &self.offset));
            piece.is_zero_element(img).unwrap_or(false)
        })
    }

    pub fn equals(&self, other: &GradedMap) -> bool {
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// The component `M_g → N_{g+offset}` as a map of presented groups.
    pub fn realize(&self, g: &Degree) -> AbMap {
        let sp = self.source.piece(g);
        let tp = self.target.piece(&(g + &self.offset));
        let columns: Vec<Vec<BigInt>> = sp
            .basis
            .iter()
            .map(|(s, m)| {
                tp.coords(&self.images[*s].mul_monomial(m))
                    .expect("homogeneous image lands in the target piece")
            })
            .collect();
        let matrix = IntMatrix::from_columns(tp.dimension(), &columns);
        AbMap::new_unchecked(sp.group.clone(), tp.group.clone(), matrix)
            .expect("shape by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FpAbGroup;
    use crate::graded_algebra::GradedRing;

    #[test]
    fn multiplication_realizes() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = r.as_module();
        let x = GradedMap::multiplication_by(&m, &r.parse("x").unwrap()).unwrap();
        let f = x.realize(&Degree::int(2));
        assert!(f.is_isomorphism());
        let p = GradedMap::multiplication(&m, &r.parse("3").unwrap(), &Degree::int(0)).unwrap();
        assert_eq!(
            p.realize(&Degree::int(1)).cokernel().group,
            FpAbGroup::cyclic(3)
        );
    }

    #[test]
    fn ill_defined_map_rejected() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let q = GradedModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let free = r.as_module();
        assert!(matches!(
            GradedMap::new(&q, &free, vec![free.generator(0)], Degree::int(0)),
            Err(Error::IllDefinedMap(_))
        ));
        assert!(GradedMap::new(&free, &q, vec![q.generator(0)], Degree::int(0)).is_ok());
    }

    #[test]
    fn composition_offsets_add() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let m = r.as_module();
        let x = GradedMap::multiplication_by(&m, &r.parse("x").unwrap()).unwrap();
        let y = GradedMap::multiplication_by(&m, &r.parse("y").unwrap()).unwrap();
        let xy = x.compose(&y).unwrap();
        assert_eq!(xy.offset(), &Degree::int(2));
        assert!(xy.equals(&y.compose(&x).unwrap()));
        assert!(!xy.is_zero());
    }
}
