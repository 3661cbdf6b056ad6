use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::abelian::{AbMap, IntMatrix};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::poly::{Monomial, Polynomial};

use super::map::GradedMap;
use super::module::{GradedModule, ModuleElement};

/// An additive map between total spaces, known on the monomial basis of the
/// source pieces in `window`. Images need not be homogeneous.
#[derive(Clone, Debug)]
pub struct UngradedMap {
    source: GradedModule,
    target: GradedModule,
    window: Vec<Degree>,
    images: HashMap<(usize, Monomial), ModuleElement>,
}

impl UngradedMap {
    /// From an arbitrary rule on basis elements `m·e_j`.
    pub fn from_basis_fn(
        source: &GradedModule,
        target: &GradedModule,
        window: &[Degree],
        f: impl Fn(usize, &Monomial) -> ModuleElement,
    ) -> Result<Self> {
        if !source.ring().same_as(target.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut images = HashMap::new();
        for g in window {
            for (j, m) in &source.piece(g).basis {
                let img = f(*j, m);
                if img.len() != target.num_generators() {
                    return Err(Error::DimensionMismatch("image has wrong shape".into()));
                }
                images.insert((*j, m.clone()), img);
            }
        }
        Ok(UngradedMap {
            source: source.clone(),
            target: target.clone(),
            window: window.to_vec(),
            images,
        })
    }

    /// The `R`-linear map sending `e_j` to an arbitrary (inhomogeneous) element.
    pub fn from_generator_images(
        source: &GradedModule,
        target: &GradedModule,
        window: &[Degree],
        images: &[ModuleElement],
    ) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::DimensionMismatch(
                "one image per generator expected".into(),
            ));
        }
        Self::from_basis_fn(source, target, window, |j, m| images[j].mul_monomial(m))
    }

    /// Multiplication by an arbitrary ring element `h` on `M`.
    pub fn multiplication(m: &GradedModule, h: &Polynomial, window: &[Degree]) -> Result<Self> {
        Self::from_basis_fn(m, m, window, |j, mono| {
            m.element_on(j, h.mul_monomial(mono))
        })
    }

    /// The underlying additive map of a graded map.
    pub fn forget(phi: &GradedMap, window: &[Degree]) -> Result<Self> {
        Self::from_basis_fn(phi.source(), phi.target(), window, |j, m| {
            phi.images()[j].mul_monomial(m)
        })
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn window(&self) -> &[Degree] {
        &self.window
    }

    pub fn image(&self, j: usize, m: &Monomial) -> Option<&ModuleElement> {
        self.images.get(&(j, m.clone()))
    }
}

/// `p_{N,g} ∘ φ ∘ ι_{M,g}` for every `g` in the window.
pub fn retract_degreewise(phi: &UngradedMap) -> Result<BTreeMap<Degree, AbMap>> {
    let mut out = BTreeMap::new();
    for g in &phi.window {
        let sp = phi.source.piece(g);
        let tp = phi.target.piece(g);
        let columns = sp
            .basis
            .iter()
            .map(|(j, m)| {
                let img = phi.image(*j, m).expect("basis images cover the window");
                tp.coords(&phi.target.homogeneous_component(img, g))
            })
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        let matrix = IntMatrix::from_columns(tp.dimension(), &columns);
        out.insert(
            g.clone(),
            AbMap::new(sp.group.clone(), tp.group.clone(), matrix)?,
        );
    }
    Ok(out)
}

/// The degree-preserving part of an `R`-linear map, as a graded map.
///
/// Generator `e_j` goes to the degree-`a_j` component of `φ(e_j)`. The
/// result is checked against the degreewise retraction on every window
/// degree, so a map that is not `R`-linear on the window is rejected.
pub fn retract_map(phi: &UngradedMap) -> Result<GradedMap> {
    let source = &phi.source;
    let one = Monomial::one(source.nvars());
    let mut images = Vec::with_capacity(source.num_generators());
    for (j, a) in source.shifts().iter().enumerate() {
        let img = phi.image(j, &one).ok_or_else(|| {
            Error::OutOfWindow(format!(
                "generator {j} in degree {a} lies outside the window"
            ))
        })?;
        images.push(phi.target.homogeneous_component(img, a));
    }
    let graded = GradedMap::new(source, &phi.target, images, source.ring().zero_degree())?;
    for (g, component) in retract_degreewise(phi)? {
        if !graded.realize(&g).sub(&component)?.is_zero() {
            return Err(Error::IllDefinedMap(format!(
                "degree-{g} component is not induced by the generator images"
            )));
        }
    }
    Ok(graded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::GradedRing;
    use num_rational::BigRational;

    fn window(m: &GradedModule, hi: i64) -> Vec<Degree> {
        m.window(
            &BigRational::from_integer(0.into()),
            &BigRational::from_integer(hi.into()),
        )
    }

    #[test]
    fn one_plus_x_retracts_to_identity() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = r.as_module();
        let w = window(&m, 6);
        let phi = UngradedMap::multiplication(&m, &r.parse("1 + x").unwrap(), &w).unwrap();
        assert!(retract_map(&phi).unwrap().equals(&GradedMap::identity(&m)));
        let x = UngradedMap::multiplication(&m, &r.parse("x").unwrap(), &w).unwrap();
        assert!(retract_map(&x).unwrap().is_zero());
    }

    #[test]
    fn graded_map_is_fixed() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &["x^2 - x*y"]).unwrap();
        let m = GradedModule::free(&r, vec![Degree::int(0), Degree::int(1)]);
        let n = r.as_module();
        let phi = GradedMap::new(
            &m,
            &n,
            vec![
                n.element_on(0, r.parse("3").unwrap()),
                n.element_on(0, r.parse("x - 2y").unwrap()),
            ],
            Degree::int(0),
        )
        .unwrap();
        let w = window(&m, 5);
        let back = retract_map(&UngradedMap::forget(&phi, &w).unwrap()).unwrap();
        assert!(back.equals(&phi));
    }

    #[test]
    fn non_linear_additive_map_rejected() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = r.as_module();
        let w = window(&m, 3);
        // Identity on degree 0 only: additive but not R-linear.
        let phi = UngradedMap::from_basis_fn(&m, &m, &w, |j, mono| {
            if mono.is_one() {
                m.generator(j)
            } else {
                m.zero_element()
            }
        })
        .unwrap();
        assert!(matches!(retract_map(&phi), Err(Error::IllDefinedMap(_))));
        assert_eq!(retract_degreewise(&phi).unwrap().len(), 4);
    }
}
