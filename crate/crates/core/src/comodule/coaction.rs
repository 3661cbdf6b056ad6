use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graded_algebra::{GradedMap, GradedModule, GradedRing, ModuleElement};
use crate::grading::{Degree, GradingSignature};
use crate::poly::Polynomial;

use super::group_ring::{tensor_add, Coefficient, GroupRingElement, GroupRingTensor};

/// A coaction `ρ: X → X[G]` on a carrier whose elements have type `Elem`.
pub trait Coaction {
    type Elem: Coefficient;
    fn apply(&self, x: &Self::Elem) -> GroupRingElement<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
}

/// A ring presentation `Z[v_1..v_n]/(relations)` with `ρ` given on variables
/// and extended multiplicatively.
#[derive(Clone, Debug, PartialEq)]
pub struct RingCoaction {
    pub names: Vec<String>,
    pub relations: Vec<Polynomial>,
    pub dimension: usize,
    pub weight: Vec<BigRational>,
    pub images: Vec<GroupRingElement<Polynomial>>,
}

impl RingCoaction {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// The trivial coaction `v ↦ v·t⁰`.
    pub fn trivial(
        names: Vec<String>,
        relations: Vec<Polynomial>,
        dimension: usize,
        weight: Vec<BigRational>,
    ) -> Self {
        let n = names.len();
        let images = (0..n)
            .map(|i| {
                GroupRingElement::monomial(Polynomial::variable(n, i), Degree::zero(dimension))
            })
            .collect();
        RingCoaction {
            names,
            relations,
            dimension,
            weight,
            images,
        }
    }
}

impl Coaction for RingCoaction {
    type Elem = Polynomial;

    fn apply(&self, f: &Polynomial) -> GroupRingElement<Polynomial> {
        let n = self.nvars();
        let mut out = GroupRingElement::zero();
        for (m, c) in f.terms() {
            let mut acc = GroupRingElement::monomial(
                Polynomial::constant(n, c.clone()),
                Degree::zero(self.dimension),
            );
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&self.images[i]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    fn generators(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| Polynomial::variable(self.nvars(), i))
            .collect()
    }
}

/// `ρ_M` on a module over a ring with coaction, given on module generators and
/// extended by `ρ(r·m) = ρ_R(r)·ρ(m)`.
#[derive(Clone, Debug)]
pub struct ModuleCoaction {
    pub module: GradedModule,
    pub ring: RingCoaction,
    pub images: Vec<GroupRingElement<ModuleElement>>,
}

impl Coaction for ModuleCoaction {
    type Elem = ModuleElement;

    fn apply(&self, e: &ModuleElement) -> GroupRingElement<ModuleElement> {
        let mut out = GroupRingElement::zero();
        for (j, r) in e.components().iter().enumerate() {
            for (h, rh) in self.ring.apply(r).terms() {
                for (k, mk) in self.images[j].terms() {
                    out.add_term(h + k, mk.mul_ring(rh));
                }
            }
        }
        out
    }

    fn zero(&self) -> ModuleElement {
        self.module.zero_element()
    }

    fn generators(&self) -> Vec<ModuleElement> {
        (0..self.module.num_generators())
            .map(|j| self.module.generator(j))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub diagram: String,
    pub element: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failure as an error.
    pub fn into_result(self) -> Result<()> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(Error::AxiomViolation {
                diagram: f.diagram,
                detail: f.element,
            }),
        }
    }
}

/// `(id ⊗ Δ)∘ρ = (ρ ⊗ id)∘ρ` and `(id ⊗ e)∘ρ = id`, as exact equalities of
/// formal sums, on the generators and the given samples.
pub fn verify_coaction_axioms<C: Coaction>(c: &C, samples: &[C::Elem]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let mut elements = c.generators();
    elements.extend(samples.iter().cloned());
    for x in &elements {
        report.checked += 1;
        let rho = c.apply(x);
        let left = rho.comultiply();
        let mut right: GroupRingTensor<C::Elem> = BTreeMap::new();
        for (g, xg) in rho.terms() {
            for (h, y) in c.apply(xg).terms() {
                tensor_add(&mut right, (h.clone(), g.clone()), y.clone());
            }
        }
        if left != right {
            report.failures.push(AxiomFailure {
                diagram: "coassociativity".into(),
                element: format!("{x:?}"),
            });
        }
        if rho.counit(&c.zero()) != *x {
            report.failures.push(AxiomFailure {
                diagram: "counit".into(),
                element: format!("{x:?}"),
            });
        }
    }
    report
}

/// `Φ(R)`: `ρ(v) = v·t^{deg v}` on variables.
pub fn coaction_from_grading(r: &GradedRing) -> RingCoaction {
    let n = r.nvars();
    let sig = r.sig();
    RingCoaction {
        names: r.names().to_vec(),
        relations: r.ideal().iter().map(|(p, _)| p.clone()).collect(),
        dimension: sig.dimension(),
        weight: sig.weight_functional().to_vec(),
        images: sig
            .generator_degrees()
            .iter()
            .enumerate()
            .map(|(i, d)| GroupRingElement::monomial(Polynomial::variable(n, i), d.clone()))
            .collect(),
    }
}

/// Decomposition of `f` through `ρ`: the components must each be homogeneous
/// of their label and sum back to `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Ψ(C)`: reads `deg v` off pure images `v·t^{g_v}` and returns the graded ring,
/// checking on every window degree (and on their sum) that `ρ` splits elements
/// into homogeneous components summing to the element.
pub fn grading_from_coaction(
    c: &RingCoaction,
    window: &[Degree],
) -> Result<(GradedRing, ConsistencyReport)> {
    let n = c.nvars();
    let mut degrees = Vec::with_capacity(n);
    for (i, img) in c.images.iter().enumerate() {
        if img.terms().len() > 1 {
            return Err(Error::MixedGeneratorImage {
                generator: c.names[i].clone(),
            });
        }
        match img.as_pure() {
            Some((g, coeff)) if *coeff == Polynomial::variable(n, i) => degrees.push(g.clone()),
            _ => {
                return Err(Error::AxiomViolation {
                    diagram: "counit".into(),
                    detail: format!("image of {} is not {}·t^g", c.names[i], c.names[i]),
                })
            }
        }
    }
    verify_coaction_axioms(c, &[]).into_result()?;
    for r in &c.relations {
        if c.apply(r).terms().len() > 1 {
            return Err(Error::AxiomViolation {
                diagram: "relations".into(),
                detail: format!("relation {} does not coact purely", r.format(&c.names)),
            });
        }
    }
    let sig = GradingSignature::new(c.dimension, degrees, c.weight.clone())?;
    let ring = GradedRing::new(sig, c.names.clone(), c.relations.clone())?;

    let mut report = ConsistencyReport::default();
    let mut samples: Vec<Polynomial> = Vec::new();
    for g in window {
        let sum = ring
            .monomials(g)
            .iter()
            .enumerate()
            .fold(Polynomial::zero(n), |acc, (k, m)| {
                acc.add(&Polynomial::term(m.clone(), k as i64 + 1))
            });
        samples.push(sum);
    }
    samples.push(samples.iter().fold(Polynomial::zero(n), |a, b| a.add(b)));
    for f in &samples {
        report.checked += 1;
        let rho = c.apply(f);
        if rho.counit(&Polynomial::zero(n)) != *f {
            report.failures.push(format!(
                "components of {} do not sum back",
                f.format(&c.names)
            ));
        }
        for (g, fg) in rho.terms() {
            if !ring.is_homogeneous_of(fg, g) {
                report.failures.push(format!(
                    "component of {} at {g} is not homogeneous",
                    f.format(&c.names)
                ));
            }
        }
    }
    Ok((ring, report))
}

/// `M[G]` restricted to finitely many twists: `⊕_δ M(−δ)`, where the summand
/// `δ` holds the elements `m·t^{deg m + δ}`. Multiplication by `r_h` moves
/// `m·t^g` to `(r_h m)·t^{g+h}` and so keeps `δ`.
pub fn module_group_ring(m: &GradedModule, twists: &[Degree]) -> Result<GradedModule> {
    let parts: Vec<GradedModule> = twists.iter().map(|d| m.shift(&-d)).collect();
    if parts.is_empty() {
        return Ok(GradedModule::zero(m.ring()));
    }
    GradedModule::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// `ρ_M(e_j) = e_j·t^{a_j}` over `Φ(R)`.
pub fn comodule_coaction(m: &GradedModule) -> ModuleCoaction {
    ModuleCoaction {
        module: m.clone(),
        ring: coaction_from_grading(m.ring()),
        images: (0..m.num_generators())
            .map(|j| GroupRingElement::monomial(m.generator(j), m.shifts()[j].clone()))
            .collect(),
    }
}

impl ModuleCoaction {
    /// `ρ_M` as a graded map `M → M[G]` into the untwisted summand; `twists` must contain `0`.
    pub fn graded_map(&self, twists: &[Degree]) -> Result<GradedMap> {
        let m = &self.module;
        let zero = m.ring().zero_degree();
        let at = twists
            .iter()
            .position(|d| d.is_zero())
            .ok_or_else(|| Error::OutOfWindow("the zero twist is required".into()))?;
        let target = module_group_ring(m, twists)?;
        let n = m.num_generators();
        let images = (0..n)
            .map(|j| {
                let img = &self.images[j];
                let (g, e) = img.as_pure().ok_or_else(|| Error::MixedGeneratorImage {
                    generator: format!("e{j}"),
                })?;
                if *g != m.shifts()[j] {
                    return Err(Error::NotHomogeneous(format!("e{j} coacts with label {g}")));
                }
                let mut parts = vec![ModuleElement::zero(n, m.nvars()); twists.len()];
                parts[at] = e.clone();
                Ok(ModuleElement::concat(&parts.iter().collect::<Vec<_>>()))
            })
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(m, &target, images, zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zxy() -> GradedRing {
        GradedRing::integer_graded(&["x", "y"], &[1, 2], &[]).unwrap()
    }

    #[test]
    fn phi_on_polynomials() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let c = coaction_from_grading(&r);
        let f = r.parse("3 + 2x").unwrap();
        let rho = c.apply(&f);
        assert_eq!(
            rho.coefficient(&Degree::int(0)),
            Some(&r.parse("3").unwrap())
        );
        assert_eq!(
            rho.coefficient(&Degree::int(1)),
            Some(&r.parse("2x").unwrap())
        );
        assert!(verify_coaction_axioms(&c, &[f, r.parse("x^2").unwrap()]).passed());
    }

    #[test]
    fn coassociativity_on_a_square() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let c = coaction_from_grading(&r);
        let x2 = r.parse("x^2").unwrap();
        let two = Degree::int(2);
        assert_eq!(c.apply(&x2).comultiply()[&(two.clone(), two)], x2);
    }

    #[test]
    fn psi_recovers_degrees() {
        let r = zxy();
        let (back, rep) = grading_from_coaction(
            &coaction_from_grading(&r),
            &(0..5).map(Degree::int).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(rep.passed());
        assert_eq!(back.sig().generator_degrees(), r.sig().generator_degrees());
    }

    #[test]
    fn relation_coacts_homogeneously() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &["x^2 - x*y"]).unwrap();
        let c = coaction_from_grading(&r);
        let rel = r.parse("x^2 - x*y").unwrap();
        assert_eq!(c.apply(&rel).support(), vec![Degree::int(2)]);
    }

    #[test]
    fn mixed_image_is_rejected() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let mut c = coaction_from_grading(&r);
        let x = r.parse("x").unwrap();
        c.images[0] =
            GroupRingElement::from_terms([(Degree::int(1), x.clone()), (Degree::int(2), x)]);
        assert!(matches!(
            grading_from_coaction(&c, &[]),
            Err(Error::MixedGeneratorImage { .. })
        ));
    }

    #[test]
    fn zero_image_breaks_the_counit() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let mut c = coaction_from_grading(&r);
        c.images[0] = GroupRingElement::zero();
        let rep = verify_coaction_axioms(&c, &[]);
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].diagram, "counit");
    }

    #[test]
    fn trivial_coaction_on_a_variable_is_not_pointed() {
        let one = vec![BigRational::from_integer(1.into())];
        let c = RingCoaction::trivial(vec!["x".into()], vec![], 1, one.clone());
        assert!(matches!(
            grading_from_coaction(&c, &[]),
            Err(Error::NotPointed { .. })
        ));
        let z = RingCoaction::trivial(vec![], vec![], 1, one);
        let (ring, _) = grading_from_coaction(&z, &[Degree::int(0)]).unwrap();
        assert_eq!(ring.nvars(), 0);
    }

    #[test]
    fn shifted_generator_coacts_with_its_degree() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = GradedModule::free(&r, vec![Degree::int(1)]);
        let c = comodule_coaction(&m);
        assert_eq!(c.images[0].support(), vec![Degree::int(1)]);
        let e = m.element_on(0, r.parse("1 + x").unwrap());
        assert_eq!(c.apply(&e).support(), vec![Degree::int(1), Degree::int(2)]);
        assert!(verify_coaction_axioms(&c, &[e]).passed());
        assert!(c.graded_map(&[Degree::int(-1), Degree::int(0)]).is_ok());
    }

    #[test]
    fn group_ring_of_the_ring() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let twists: Vec<Degree> = (0..3).map(Degree::int).collect();
        let rg = module_group_ring(&r.as_module(), &twists).unwrap();
        assert_eq!(
            rg.piece_group(&Degree::int(2)),
            crate::abelian::FpAbGroup::free(3)
        );
        assert_eq!(
            rg.piece_group(&Degree::int(1)),
            crate::abelian::FpAbGroup::free(2)
        );
        assert!(module_group_ring(&GradedModule::zero(&r), &twists)
            .unwrap()
            .piece_group(&Degree::int(0))
            .is_zero());
    }
}
