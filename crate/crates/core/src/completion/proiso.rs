use std::collections::BTreeMap;

use crate::derived::{ChainMap, GradedComplex};
use crate::error::Result;
use crate::graded_algebra::{GradedMap, GradedModule};
use crate::grading::Degree;
use crate::poly::Polynomial;

use super::adic::derived_completion_module;

/// Bounded `f`-power torsion and the resulting agreement of the derived and
/// classical `f`-adic towers.
#[derive(Clone, Debug)]
pub struct ProIsoReport {
    /// Per degree, the smallest `c` with `M[f^c]_g = M[f^depth]_g`.
    pub torsion_bounds: BTreeMap<Degree, u32>,
    /// The largest per-degree bound on the window; only a certificate for the window.
    pub bound: u32,
    /// Per-degree bounds differ, so the bound depends on the window.
    pub window_dependent: bool,
    /// `π_1(M/^L f^{n+c})_g → π_1(M/^L f^n)_g` is zero whenever `n + c ≤ depth`.
    pub pi1_pro_zero: bool,
    /// `π_0(M/^L f^n)_g → (M/f^n M)_g` is an isomorphism for every stage.
    pub pi0_agree: bool,
}

impl ProIsoReport {
    pub fn passed(&self) -> bool {
        self.pi1_pro_zero && self.pi0_agree
    }
}

fn kernel_contained(
    m: &GradedModule,
    f: &Polynomial,
    e: &Degree,
    g: &Degree,
    big: u32,
    small: u32,
) -> Result<bool> {
    let power = |k: u32| GradedMap::multiplication(m, &f.pow(k), &e.scale(k as i64));
    let ker = power(big)?.realize(g).kernel();
    let small_map = power(small)?.realize(g);
    Ok(small_map.compose(&ker.inclusion())?.is_zero())
}

pub fn pro_isomorphism_check(
    m: &GradedModule,
    f: &Polynomial,
    depth: u32,
    window: &[Degree],
) -> Result<ProIsoReport> {
    let e = m.ring().homogeneous_degree(f)?;
    let mut torsion_bounds = BTreeMap::new();
    for g in window {
        let mut c = depth;
        while c > 0 && kernel_contained(m, f, &e, g, depth, c - 1)? {
            c -= 1;
        }
        torsion_bounds.insert(g.clone(), c);
    }
    let bound = torsion_bounds.values().copied().max().unwrap_or(0);
    let window_dependent = torsion_bounds.values().any(|&c| c != bound);

    let approx = derived_completion_module(m, std::slice::from_ref(f), depth)?;
    let mut pi1_pro_zero = true;
    for g in window {
        let t = approx.tower().homotopy_tower(1, g)?;
        if !t.is_pro_zero_with(bound as usize)? {
            pi1_pro_zero = false;
        }
    }

    let zero = m.ring().zero_degree();
    let mut pi0_agree = true;
    for n in 1..=depth {
        let stage = approx.stage(n).expect("stage exists");
        let naive = m.quotient(
            (0..m.num_generators())
                .map(|j| m.element_on(j, f.pow(n)))
                .collect(),
        )?;
        let naive_c = GradedComplex::concentrated(&naive, 0);
        let src = stage.term(0);
        let images = (0..src.num_generators())
            .map(|j| naive.generator(j))
            .collect();
        let cmp = ChainMap::new(
            stage,
            &naive_c,
            zero.clone(),
            BTreeMap::from([(0, GradedMap::new(&src, &naive, images, zero.clone())?)]),
        )?;
        for g in window {
            let from = stage.homology_at(0, g)?;
            let to = naive_c.homology_at(0, g)?;
            if !cmp.induced(0, g, &from, &to)?.is_isomorphism() {
                pi0_agree = false;
            }
        }
    }
    Ok(ProIsoReport {
        torsion_bounds,
        bound,
        window_dependent,
        pi1_pro_zero,
        pi0_agree,
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
    fn polynomial_plus_point() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let point = GradedModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let m = GradedModule::direct_sum(&[&r.as_module(), &point]).unwrap();
        let rep = pro_isomorphism_check(&m, &r.parse("x").unwrap(), 5, &degrees(0, 4)).unwrap();
        assert_eq!(rep.bound, 1);
        assert_eq!(rep.torsion_bounds[&Degree::int(1)], 0);
        assert!(rep.passed());
    }

    #[test]
    fn truncated_sum_has_window_dependent_bound() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let parts: Vec<GradedModule> = (1..=3)
            .map(|k| GradedModule::cyclic(&r, &[r.parse(&format!("x^{k}")).unwrap()]).unwrap())
            .collect();
        let m = GradedModule::direct_sum(&parts.iter().collect::<Vec<_>>()).unwrap();
        let rep = pro_isomorphism_check(&m, &r.parse("x").unwrap(), 6, &degrees(0, 3)).unwrap();
        assert_eq!(rep.bound, 3);
        assert!(rep.window_dependent);
        assert!(rep.passed());
    }
}
