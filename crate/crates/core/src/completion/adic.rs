use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::FpAbGroup;
use crate::derived::{
    koszul_complex, tensor_complex, tensor_with_perfect, ChainMap, GradedComplex, KoszulData,
    TensorComplex,
};
use crate::error::{Error, Result};
use crate::graded_algebra::{GradedMap, GradedModule};
use crate::grading::Degree;
use crate::poly::Polynomial;

use super::tower::{ComplexTower, DegreeLimit, LimitStatus, ModuleTower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionKind {
    /// Stages `M/I^m M`, `m = 0..=n`.
    Gradedwise,
    /// Stages `C/^L(f_1^m, …, f_r^m)`, `m = 1..=n`.
    Derived,
}

/// A finite-precision approximation to a completion: the stage tower plus
/// per-degree stabilization flags computed on demand.
#[derive(Clone, Debug)]
pub struct CompletionApproximation {
    pub kind: CompletionKind,
    pub elements: Vec<(Polynomial, Degree)>,
    pub precision: u32,
    tower: ComplexTower,
    modules: Option<ModuleTower>,
    first_exponent: u32,
}

impl CompletionApproximation {
    pub fn tower(&self) -> &ComplexTower {
        &self.tower
    }

    pub fn module_tower(&self) -> Option<&ModuleTower> {
        self.modules.as_ref()
    }

    /// The stage with exponent `m`.
    pub fn stage(&self, m: u32) -> Option<&GradedComplex> {
        self.tower
            .stages
            .get(m.checked_sub(self.first_exponent)? as usize)
    }

    /// The precision-`n` value `π_i(stage n)_g`.
    pub fn value(&self, i: i64, g: &Degree) -> Result<FpAbGroup> {
        self.tower
            .stages
            .last()
            .expect("non-empty tower")
            .homotopy_group(i, g)
    }

    /// Limit status of `{π_i(stage m)_g}`; stabilization stages are reported as exponents.
    pub fn limits(&self, i: i64, window: &[Degree]) -> Result<BTreeMap<Degree, DegreeLimit>> {
        let mut out = self.tower.limits(i, window)?;
        for lim in out.values_mut() {
            if let LimitStatus::Stabilized { stage, .. } = &mut lim.status {
                *stage += self.first_exponent as usize;
            }
        }
        Ok(out)
    }

    /// Indices where some stage has a term.
    pub fn indices(&self) -> Vec<i64> {
        match self.tower.index_bounds() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    /// Flags for every index and window degree.
    pub fn flags(&self, window: &[Degree]) -> Result<BTreeMap<(i64, Degree), DegreeLimit>> {
        let mut out = BTreeMap::new();
        for i in self.indices() {
            for (g, lim) in self.limits(i, window)? {
                out.insert((i, g), lim);
            }
        }
        Ok(out)
    }
}

fn homogeneous_elements(m: &GradedModule, fs: &[Polynomial]) -> Result<Vec<(Polynomial, Degree)>> {
    fs.iter()
        .map(|f| Ok((f.clone(), m.ring().homogeneous_degree(f)?)))
        .collect()
}

/// Stages `M/I^m M` for `m = 0..=n` with the quotient transitions; `M/I⁰M = 0`.
pub fn gradedwise_completion(
    m: &GradedModule,
    fs: &[Polynomial],
    n: u32,
) -> Result<CompletionApproximation> {
    let elements = homogeneous_elements(m, fs)?;
    let stages = (0..=n)
        .map(|k| m.ideal_power_quotient(fs, k))
        .collect::<Result<Vec<_>>>()?;
    let zero = m.ring().zero_degree();
    let transitions = (0..n as usize)
        .map(|k| {
            let (src, tgt) = (&stages[k + 1], &stages[k]);
            let images = (0..src.num_generators())
                .map(|j| tgt.generator(j))
                .collect();
            GradedMap::new(src, tgt, images, zero.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let modules = ModuleTower::new(stages, transitions)?;
    Ok(CompletionApproximation {
        kind: CompletionKind::Gradedwise,
        elements,
        precision: n,
        tower: ComplexTower::from_modules(&modules)?,
        modules: Some(modules),
        first_exponent: 0,
    })
}

/// `K(f^{m+1}) → K(f^m)`, `e_S ↦ (Π_{i∈S} f_i) e_S`.
pub fn koszul_transition(
    upper: &GradedComplex,
    lower: &GradedComplex,
    k: &KoszulData,
) -> Result<ChainMap> {
    let zero = k.ring.zero_degree();
    let mut comps = BTreeMap::new();
    for (p, src) in upper.terms() {
        let tgt = lower.term(*p);
        let sets = crate::derived::subsets(k.len(), *p as usize);
        let images = sets
            .iter()
            .enumerate()
            .map(|(idx, s)| {
                let prod = s
                    .iter()
                    .fold(k.ring.one(), |acc, &i| acc.mul(&k.elements[i].0));
                tgt.element_on(idx, prod)
            })
            .collect();
        comps.insert(*p, GradedMap::new(src, &tgt, images, zero.clone())?);
    }
    ChainMap::new(upper, lower, zero, comps)
}

/// `id_C ⊗ φ` between total complexes sharing the block layout of `C`.
pub fn tensor_chain_map(
    src: &TensorComplex,
    tgt: &TensorComplex,
    phi: &ChainMap,
) -> Result<ChainMap> {
    let zero = phi.offset().clone();
    let mut comps = BTreeMap::new();
    for (n, blocks) in &src.blocks {
        let s = src.complex.term(*n);
        let t = tgt.complex.term(*n);
        let mut images = vec![t.zero_element(); s.num_generators()];
        for b in blocks {
            let comp = phi.component(b.p_index);
            let column = &comp.images()[b.p_generator];
            for (l, u) in column.0.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let tb = tgt
                    .block(*n, b.c_index, l)
                    .ok_or_else(|| Error::DimensionMismatch("target block missing".into()))?;
                for j in 0..b.len {
                    let img = &mut images[b.offset + j];
                    img.0[tb.offset + j] = img.0[tb.offset + j].add(u);
                }
            }
        }
        comps.insert(*n, GradedMap::new(&s, &t, images, zero.clone())?);
    }
    ChainMap::new(&src.complex, &tgt.complex, zero, comps)
}

/// Stages `C/^L(f_1^m, …, f_r^m)` for `m = 1..=n`.
pub fn derived_completion(
    c: &GradedComplex,
    fs: &[Polynomial],
    n: u32,
) -> Result<CompletionApproximation> {
    if n == 0 {
        return Err(Error::DimensionMismatch(
            "derived completion needs precision at least 1".into(),
        ));
    }
    let base = KoszulData::new(c.ring(), fs, 1)?;
    let mut koszuls = Vec::new();
    let mut totals = Vec::new();
    for m in 1..=n {
        let k = koszul_complex(&base.with_exponent(m)?)?;
        totals.push(tensor_complex(c, &k)?);
        koszuls.push(k);
    }
    let mut transitions = Vec::new();
    for m in 0..(n as usize - 1) {
        let phi = koszul_transition(&koszuls[m + 1], &koszuls[m], &base)?;
        transitions.push(tensor_chain_map(&totals[m + 1], &totals[m], &phi)?);
    }
    let stages = totals.into_iter().map(|t| t.complex).collect();
    Ok(CompletionApproximation {
        kind: CompletionKind::Derived,
        elements: base.elements.clone(),
        precision: n,
        tower: ComplexTower::new(stages, transitions)?,
        modules: None,
        first_exponent: 1,
    })
}

/// `derived_completion` of a module in index 0.
pub fn derived_completion_module(
    m: &GradedModule,
    fs: &[Polynomial],
    n: u32,
) -> Result<CompletionApproximation> {
    derived_completion(&GradedComplex::concentrated(m, 0), fs, n)
}

/// The completion of `M ⊗ P` for `P` perfect.
pub fn completed_tensor(
    m: &GradedComplex,
    p: &GradedComplex,
    fs: &[Polynomial],
    n: u32,
) -> Result<CompletionApproximation> {
    derived_completion(&tensor_with_perfect(m, p)?, fs, n)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvariantReport {
    pub checked: usize,
    /// `(index or stage, degree)` where the comparison failed.
    pub failures: Vec<(i64, Degree)>,
    /// Entries the tower could not decide at this precision.
    pub undetermined: Vec<(i64, Degree)>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.undetermined.is_empty() && self.checked > 0
    }
}

/// Gradedwise idempotence: the stages `m ≤ n` of the completion of `M/I^n M`
/// agree with those of `M`, via the map that is the identity on generators.
pub fn gradedwise_idempotence(
    m: &GradedModule,
    fs: &[Polynomial],
    n: u32,
    window: &[Degree],
) -> Result<InvariantReport> {
    let mn = m.ideal_power_quotient(fs, n)?;
    let a = gradedwise_completion(m, fs, n)?;
    let b = gradedwise_completion(&mn, fs, n)?;
    let (ta, tb) = (
        a.module_tower().expect("gradedwise"),
        b.module_tower().expect("gradedwise"),
    );
    let zero = m.ring().zero_degree();
    let mut rep = InvariantReport::default();
    for k in 0..=n as usize {
        let (src, tgt) = (&ta.stages[k], &tb.stages[k]);
        let images = (0..src.num_generators())
            .map(|j| tgt.generator(j))
            .collect();
        let cmp = GradedMap::new(src, tgt, images, zero.clone())?;
        for g in window {
            rep.checked += 1;
            if !cmp.realize(g).is_isomorphism() {
                rep.failures.push((k as i64, g.clone()));
            }
        }
    }
    Ok(rep)
}

/// Derived idempotence: completing `Q = C/^L(f^n)` again returns `Q`. The
/// second completion runs deep enough that, in every window degree, only the
/// `e_∅` block of `Q/^L f^N` survives for weight reasons; then each
/// `{π_i(Q/^L f^m)_g}` must stabilize and the unit `π_i(Q) → π_i(Q/^L f^N)` must
/// be an isomorphism. With a weight-zero element the depth stays `n` and
/// unstabilized entries are undetermined.
pub fn derived_idempotence(
    c: &GradedComplex,
    fs: &[Polynomial],
    n: u32,
    window: &[Degree],
) -> Result<InvariantReport> {
    let first = derived_completion(c, fs, n)?;
    let q = first.stage(n).expect("top stage").clone();
    let sig = c.ring().sig();
    let elements = KoszulData::new(c.ring(), fs, 1)?;
    let lightest = elements.elements.iter().map(|(_, e)| sig.weight(e)).min();
    let lowest = q.terms().values().filter_map(|t| t.min_weight()).min();
    let mut depth = n;
    if let (Some(we), Some(lo)) = (lightest, lowest) {
        if we > BigRational::zero() {
            for g in window {
                let wg = sig.weight(g);
                let steps = if wg < lo {
                    0
                } else {
                    ((wg - &lo) / &we)
                        .floor()
                        .to_integer()
                        .to_u32()
                        .unwrap_or(u32::MAX - 1)
                        + 1
                };
                depth = depth.max(steps + 1);
            }
        }
    }
    let base = KoszulData::new(c.ring(), fs, depth)?;
    let tc = tensor_complex(&q, &koszul_complex(&base)?)?;
    let again = derived_completion(&q, fs, depth)?;
    let zero = c.ring().zero_degree();
    let mut unit = BTreeMap::new();
    for (i, t) in q.terms() {
        let target = tc.complex.term(*i);
        let b = tc.block(*i, *i, 0).expect("e_∅ block present");
        let images = (0..t.num_generators())
            .map(|j| target.generator(b.offset + j))
            .collect();
        unit.insert(*i, GradedMap::new(t, &target, images, zero.clone())?);
    }
    let unit = ChainMap::new(&q, &tc.complex, zero, unit)?;
    let mut rep = InvariantReport::default();
    for i in again.indices() {
        let lims = again.limits(i, window)?;
        for g in window {
            rep.checked += 1;
            if lims[g].value().is_none() {
                rep.undetermined.push((i, g.clone()));
                continue;
            }
            let from = q.homology_at(i, g)?;
            let to = tc.complex.homology_at(i, g)?;
            if lims[g].value() != Some(&from.group)
                || !unit.induced(i, g, &from, &to)?.is_isomorphism()
            {
                rep.failures.push((i, g.clone()));
            }
        }
    }
    Ok(rep)
}

/// Iterating principal derived quotients reproduces the joint one at every stage.
pub fn iterated_vs_joint(
    c: &GradedComplex,
    fs: &[Polynomial],
    n: u32,
    window: &[Degree],
) -> Result<InvariantReport> {
    let joint = derived_completion(c, fs, n)?;
    let mut rep = InvariantReport::default();
    let mut stages_iter: Vec<GradedComplex> = Vec::new();
    for m in 1..=n {
        let mut it = c.clone();
        for f in fs {
            it = crate::derived::derived_quotient(
                &it,
                &KoszulData::new(c.ring(), std::slice::from_ref(f), m)?,
            )?;
        }
        stages_iter.push(it);
    }
    for (k, it) in stages_iter.iter().enumerate() {
        let m = k as u32 + 1;
        let jt = joint.stage(m).expect("stage exists");
        let (lo, hi) = match (it.bounds(), jt.bounds()) {
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => continue,
        };
        for i in lo..=hi {
            for g in window {
                rep.checked += 1;
                if it.homotopy_group(i, g)? != jt.homotopy_group(i, g)? {
                    rep.failures.push((i, g.clone()));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Lim1Status;
    use crate::graded_algebra::GradedRing;

    fn zx() -> GradedRing {
        GradedRing::integer_graded(&["x"], &[1], &[]).unwrap()
    }

    fn degrees(lo: i64, hi: i64) -> Vec<Degree> {
        (lo..=hi).map(Degree::int).collect()
    }

    #[test]
    fn x_adic_stabilizes_one_past_the_degree() {
        let r = zx();
        let a = gradedwise_completion(&r.as_module(), &[r.parse("x").unwrap()], 8).unwrap();
        let lims = a.limits(0, &degrees(0, 6)).unwrap();
        for (g, lim) in &lims {
            let d: usize = g.to_string().parse().unwrap();
            assert_eq!(
                lim.status,
                LimitStatus::Stabilized {
                    value: FpAbGroup::free(1),
                    stage: d + 1
                }
            );
        }
    }

    #[test]
    fn p_adic_never_stabilizes() {
        let r = zx();
        let a = gradedwise_completion(&r.as_module(), &[r.parse("2").unwrap()], 5).unwrap();
        for (g, lim) in a.limits(0, &degrees(0, 3)).unwrap() {
            assert_eq!(lim.status, LimitStatus::SurjectiveTail);
            assert_eq!(lim.lim1, Lim1Status::CertifiedZero);
            assert_eq!(a.value(0, &g).unwrap(), FpAbGroup::cyclic(32));
        }
    }

    #[test]
    fn derived_x_adic_of_polynomials() {
        let r = zx();
        let a = derived_completion_module(&r.as_module(), &[r.parse("x").unwrap()], 6).unwrap();
        let lims = a.limits(0, &degrees(0, 4)).unwrap();
        for (d, g) in degrees(0, 4).iter().enumerate() {
            assert_eq!(lims[g].stage(), Some(d + 1));
            assert_eq!(lims[g].value(), Some(&FpAbGroup::free(1)));
        }
        assert!(a
            .limits(1, &degrees(0, 4))
            .unwrap()
            .values()
            .all(|l| l.value().map_or(false, FpAbGroup::is_zero)));
    }

    #[test]
    fn empty_ideal_returns_the_input() {
        let r = zx();
        let m = GradedModule::cyclic(&r, &[r.parse("x^2").unwrap()]).unwrap();
        let a = derived_completion_module(&m, &[], 3).unwrap();
        for g in degrees(0, 3) {
            assert_eq!(a.value(0, &g).unwrap(), m.piece_group(&g));
            assert_eq!(a.limits(0, &[g.clone()]).unwrap()[&g].stage(), Some(1));
        }
    }

    #[test]
    fn idempotence_and_iteration() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let fs = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        let m = r.as_module();
        assert!(gradedwise_idempotence(&m, &fs, 3, &degrees(0, 4))
            .unwrap()
            .passed());
        let c = GradedComplex::concentrated(&m, 0);
        assert!(iterated_vs_joint(&c, &fs, 2, &degrees(0, 4))
            .unwrap()
            .passed());
        let zx = zx();
        let cx = GradedComplex::concentrated(&zx.as_module(), 0);
        assert!(
            derived_idempotence(&cx, &[zx.parse("x").unwrap()], 5, &degrees(0, 3))
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn idempotence_reaches_past_the_first_precision() {
        // Z[x]/x^2 has π_1(Q/^L x^2) ≠ 0 in degrees 2, 3; only deeper stages recover Q.
        let zx = zx();
        let cx = GradedComplex::concentrated(&zx.as_module(), 0);
        let rep = derived_idempotence(&cx, &[zx.parse("x").unwrap()], 2, &degrees(0, 6)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let c = GradedComplex::concentrated(&r.as_module(), 0);
        let fs = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        assert!(derived_idempotence(&c, &fs, 2, &degrees(0, 3))
            .unwrap()
            .passed());
    }

    #[test]
    fn idempotence_with_a_degree_zero_element_is_undetermined_not_failed() {
        let zx = zx();
        let cx = GradedComplex::concentrated(&zx.as_module(), 0);
        let rep = derived_idempotence(&cx, &[zx.parse("3").unwrap()], 2, &degrees(0, 1)).unwrap();
        assert!(rep.failures.is_empty(), "{rep:?}");
    }
}
