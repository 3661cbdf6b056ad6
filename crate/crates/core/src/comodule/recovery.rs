use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{AbMap, FpAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::graded_algebra::{GradedModule, ModuleElement};
use crate::grading::Degree;
use crate::poly::{Monomial, Polynomial};

use super::coaction::{
    comodule_coaction, grading_from_coaction, verify_coaction_axioms, AxiomReport, Coaction,
    ModuleCoaction,
};
use super::group_ring::{Coefficient, GroupRingElement};

/// `M_g = {m : ρ(m) = m·t^g}` inside the windowed carrier, with its inclusion.
#[derive(Clone, Debug)]
pub struct GradedPart {
    pub degree: Degree,
    pub group: FpAbGroup,
    /// The carrier `⊕_{h∈window} M_h`, presented from the coaction data alone.
    pub carrier: FpAbGroup,
    pub inclusion: AbMap,
    /// `p_g ∘ ι_g = ι_g`, with `p_g` reading off the `t^g` coefficient.
    pub section_ok: bool,
}

fn pure_label<T: Coefficient>(
    img: &GroupRingElement<T>,
    expected: &T,
    name: &str,
) -> Result<Degree> {
    if img.terms().len() > 1 {
        return Err(Error::MixedGeneratorImage {
            generator: name.into(),
        });
    }
    match img.as_pure() {
        Some((g, c)) if c == expected => Ok(g.clone()),
        _ => Err(Error::AxiomViolation {
            diagram: "counit".into(),
            detail: format!("{name} does not coact as itself times a single t^g"),
        }),
    }
}

/// Recovers the degree-`g` part of a module from its coaction by exact linear
/// algebra on the carrier restricted to `window ∪ {g}`.
pub fn graded_part_from_coaction(
    c: &ModuleCoaction,
    g: &Degree,
    window: &[Degree],
) -> Result<GradedPart> {
    let (ring, _) = grading_from_coaction(&c.ring, &[])?;
    let sig = ring.sig();
    let m = &c.module;
    let labels = (0..m.num_generators())
        .map(|j| pure_label(&c.images[j], &m.generator(j), &format!("e{j}")))
        .collect::<Result<Vec<_>>>()?;
    let mut degrees: Vec<Degree> = window.to_vec();
    if !degrees.contains(g) {
        degrees.push(g.clone());
    }

    let mut basis: Vec<(usize, Monomial, Degree)> = Vec::new();
    for h in &degrees {
        for (j, l) in labels.iter().enumerate() {
            for mono in sig.monomials_of_degree(&(h - l)) {
                basis.push((j, mono, h.clone()));
            }
        }
    }
    let index: HashMap<(usize, Monomial), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, (j, mono, _))| ((*j, mono.clone()), i))
        .collect();
    let coords = |e: &ModuleElement| -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::from(0); basis.len()];
        for (j, p) in e.components().iter().enumerate() {
            for (mono, k) in p.terms() {
                let i = index.get(&(j, mono.clone())).ok_or_else(|| {
                    Error::OutOfWindow("relation multiple leaves the carrier".into())
                })?;
                v[*i] += k;
            }
        }
        Ok(v)
    };

    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for rel in m.relations() {
        let label = match c.apply(&rel.element).as_pure() {
            Some((l, _)) => l.clone(),
            None if rel.element.is_zero() => continue,
            None => {
                return Err(Error::AxiomViolation {
                    diagram: "relations".into(),
                    detail: "module relation does not coact purely".into(),
                })
            }
        };
        for h in &degrees {
            for mono in sig.monomials_of_degree(&(h - &label)) {
                relations.push(coords(&rel.element.mul_monomial(&mono))?);
            }
        }
    }
    for q in &c.ring.relations {
        let Some((lq, _)) = c
            .ring
            .apply(q)
            .as_pure()
            .map(|(l, p)| (l.clone(), p.clone()))
        else {
            return Err(Error::AxiomViolation {
                diagram: "relations".into(),
                detail: "ring relation does not coact purely".into(),
            });
        };
        for (j, l) in labels.iter().enumerate() {
            for h in &degrees {
                for mono in sig.monomials_of_degree(&(&(h - l) - &lq)) {
                    let p = q.mul_monomial(&mono);
                    relations.push(coords(&m.element_on(j, p))?);
                }
            }
        }
    }
    let dim = basis.len();
    let carrier = FpAbGroup::from_relations(IntMatrix::from_columns(dim, &relations));

    // m ↦ ρ(m) − m·t^g in ⊕_{h} carrier·t^h
    let slot: HashMap<&Degree, usize> = degrees.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let gs = slot[g];
    let mut eq = IntMatrix::zeros(dim * degrees.len(), dim);
    let mut proj = IntMatrix::zeros(dim, dim);
    for (b, (_, _, label)) in basis.iter().enumerate() {
        if label == g {
            proj[(b, b)] = BigInt::from(1);
            continue;
        }
        eq[(slot[label] * dim + b, b)] += 1;
        eq[(gs * dim + b, b)] -= 1;
    }
    let copies = vec![&carrier; degrees.len()];
    let equalizer = AbMap::new(carrier.clone(), FpAbGroup::direct_sum(&copies), eq)?;
    let kernel = equalizer.kernel();
    let inclusion = kernel.inclusion();
    let p = AbMap::new(carrier.clone(), carrier.clone(), proj)?;
    let section_ok = p.compose(&inclusion)?.sub(&inclusion)?.is_zero();
    Ok(GradedPart {
        degree: g.clone(),
        group: kernel.group,
        carrier,
        inclusion,
        section_ok,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripRow {
    pub degree: Degree,
    pub recovered: FpAbGroup,
    pub expected: FpAbGroup,
    pub section_ok: bool,
}

impl RoundtripRow {
    pub fn passed(&self) -> bool {
        self.section_ok && self.recovered == self.expected
    }
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub axioms: AxiomReport,
    pub graded_map_ok: bool,
    pub rows: Vec<RoundtripRow>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.graded_map_ok && self.rows.iter().all(RoundtripRow::passed)
    }
}

/// Builds `ρ_M`, checks the axioms, recovers every graded part in the window from
/// the coaction, and compares with the pieces of `M`.
pub fn roundtrip_equivalence_check(m: &GradedModule, window: &[Degree]) -> Result<RoundtripReport> {
    let c = comodule_coaction(m);
    let sig = m.ring().sig();
    let n = m.nvars();
    let mut samples = Vec::new();
    let mut mixed = m.zero_element();
    for h in window {
        for (j, a) in m.shifts().iter().enumerate() {
            let p = sig
                .monomials_of_degree(&(h - a))
                .into_iter()
                .fold(Polynomial::zero(n), |acc, mono| {
                    acc.add(&Polynomial::term(mono, 1))
                });
            let e = m.element_on(j, p);
            mixed = mixed.add(&e);
            samples.push(e);
        }
    }
    samples.push(mixed);
    let axioms = verify_coaction_axioms(&c, &samples);
    let graded_map_ok = c.graded_map(&[m.ring().zero_degree()]).is_ok();
    let rows = window
        .par_iter()
        .map(|g| {
            let part = graded_part_from_coaction(&c, g, window)?;
            Ok(RoundtripRow {
                degree: g.clone(),
                recovered: part.group,
                expected: m.piece_group(g),
                section_ok: part.section_ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RoundtripReport {
        axioms,
        graded_map_ok,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::GradedRing;

    fn degrees(lo: i64, hi: i64) -> Vec<Degree> {
        (lo..=hi).map(Degree::int).collect()
    }

    #[test]
    fn square_of_x_is_recovered() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let c = comodule_coaction(&r.as_module());
        let part = graded_part_from_coaction(&c, &Degree::int(2), &degrees(0, 3)).unwrap();
        assert_eq!(part.group, FpAbGroup::free(1));
        assert!(part.section_ok);
        let outside = graded_part_from_coaction(&c, &Degree::int(-1), &degrees(0, 3)).unwrap();
        assert!(outside.group.is_zero());
    }

    #[test]
    fn roundtrip_on_quotient_ring() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &["x^2 - x*y"]).unwrap();
        let rep = roundtrip_equivalence_check(&r.as_module(), &degrees(0, 5)).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn roundtrip_splits_shifts() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = GradedModule::free(&r, vec![Degree::int(1), Degree::int(-2)]);
        let rep = roundtrip_equivalence_check(&m, &degrees(-2, 4)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.rows[0].recovered, FpAbGroup::free(1));
        assert_eq!(rep.rows[3].recovered, FpAbGroup::free(2));
    }

    #[test]
    fn roundtrip_on_zero_and_torsion() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        assert!(
            roundtrip_equivalence_check(&GradedModule::zero(&r), &degrees(0, 3))
                .unwrap()
                .passed()
        );
        let m =
            GradedModule::cyclic(&r, &[r.parse("6").unwrap(), r.parse("x^2").unwrap()]).unwrap();
        let rep = roundtrip_equivalence_check(&m, &degrees(0, 3)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.rows[1].recovered, FpAbGroup::cyclic(6));
    }

    #[test]
    fn twisted_action_moves_the_exponent() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = r.as_module();
        let c = comodule_coaction(&m);
        let x_times_one = m.element_on(0, r.parse("x").unwrap());
        assert_eq!(c.apply(&x_times_one).support(), vec![Degree::int(1)]);
    }
}
