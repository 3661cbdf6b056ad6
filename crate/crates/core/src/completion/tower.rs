use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::abelian::{AbMap, FpAbGroup};
use crate::derived::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::graded_algebra::{GradedMap, GradedModule};
use crate::grading::Degree;

/// A finite tower of groups `T_0 ← T_1 ← … ← T_N`; `transitions[n]: T_{n+1} → T_n`.
#[derive(Clone, Debug)]
pub struct AbTower {
    pub objects: Vec<FpAbGroup>,
    pub transitions: Vec<AbMap>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitStatus {
    /// Transitions are isomorphisms from `stage` to the top of the computed tower.
    Stabilized {
        value: FpAbGroup,
        stage: usize,
    },
    /// Every computed transition is surjective but the tail is not constant;
    /// the limit itself is not materialized.
    SurjectiveTail,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lim1Status {
    CertifiedZero,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeLimit {
    pub status: LimitStatus,
    pub lim1: Lim1Status,
}

impl DegreeLimit {
    pub fn value(&self) -> Option<&FpAbGroup> {
        match &self.status {
            LimitStatus::Stabilized { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn stage(&self) -> Option<usize> {
        match &self.status {
            LimitStatus::Stabilized { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

impl AbTower {
    pub fn new(objects: Vec<FpAbGroup>, transitions: Vec<AbMap>) -> Result<Self> {
        if objects.is_empty() || transitions.len() + 1 != objects.len() {
            return Err(Error::DimensionMismatch(
                "a tower of N+1 stages needs N transitions".into(),
            ));
        }
        for (n, t) in transitions.iter().enumerate() {
            if t.source() != &objects[n + 1] || t.target() != &objects[n] {
                return Err(Error::DimensionMismatch(format!(
                    "transition {n} does not fit its stages"
                )));
            }
        }
        Ok(AbTower {
            objects,
            transitions,
        })
    }

    /// The constant tower on `a` with identity transitions.
    pub fn constant(a: &FpAbGroup, stages: usize) -> Self {
        AbTower {
            objects: vec![a.clone(); stages],
            transitions: vec![AbMap::identity(a); stages.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `T_{n+c} → T_n`.
    pub fn composite(&self, n: usize, c: usize) -> Result<AbMap> {
        let mut acc = AbMap::identity(&self.objects[n + c]);
        for k in (n..n + c).rev() {
            acc = self.transitions[k].compose(&acc)?;
        }
        Ok(acc)
    }

    /// Smallest `n₀` such that every transition out of a stage `≥ n₀ + 1` is an
    /// isomorphism, provided at least one transition is covered.
    pub fn stabilization_stage(&self) -> Option<usize> {
        let top = self.transitions.len();
        let mut n0 = top;
        while n0 > 0 && self.transitions[n0 - 1].is_isomorphism() {
            n0 -= 1;
        }
        (n0 < top).then_some(n0)
    }

    pub fn limit(&self) -> DegreeLimit {
        if let Some(stage) = self.stabilization_stage() {
            return DegreeLimit {
                status: LimitStatus::Stabilized {
                    value: self.objects[stage].clone(),
                    stage,
                },
                lim1: Lim1Status::CertifiedZero,
            };
        }
        if !self.transitions.is_empty() && self.transitions.iter().all(AbMap::is_surjective) {
            return DegreeLimit {
                status: LimitStatus::SurjectiveTail,
                lim1: Lim1Status::CertifiedZero,
            };
        }
        DegreeLimit {
            status: LimitStatus::Undetermined,
            lim1: Lim1Status::Undetermined,
        }
    }

    /// Is the tower pro-zero with bound `c`: every `T_{n+c} → T_n` inside the range is zero?
    pub fn is_pro_zero_with(&self, c: usize) -> Result<bool> {
        for n in 0..self.len().saturating_sub(c) {
            if !self.composite(n, c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A finite tower of graded modules with degree-preserving transitions.
#[derive(Clone, Debug)]
pub struct ModuleTower {
    pub stages: Vec<GradedModule>,
    pub transitions: Vec<GradedMap>,
}

impl ModuleTower {
    pub fn new(stages: Vec<GradedModule>, transitions: Vec<GradedMap>) -> Result<Self> {
        if stages.is_empty() || transitions.len() + 1 != stages.len() {
            return Err(Error::DimensionMismatch(
                "a tower of N+1 stages needs N transitions".into(),
            ));
        }
        for (n, t) in transitions.iter().enumerate() {
            if !t.source().same_as(&stages[n + 1])
                || !t.target().same_as(&stages[n])
                || !t.offset().is_zero()
            {
                return Err(Error::DimensionMismatch(format!(
                    "transition {n} does not fit its stages"
                )));
            }
        }
        Ok(ModuleTower {
            stages,
            transitions,
        })
    }

    pub fn at(&self, g: &Degree) -> AbTower {
        AbTower {
            objects: self.stages.iter().map(|m| m.piece_group(g)).collect(),
            transitions: self.transitions.iter().map(|t| t.realize(g)).collect(),
        }
    }

    pub fn limits(&self, window: &[Degree]) -> BTreeMap<Degree, DegreeLimit> {
        window
            .par_iter()
            .map(|g| (g.clone(), self.at(g).limit()))
            .collect()
    }
}

/// A finite tower of complexes with strict chain-map transitions.
#[derive(Clone, Debug)]
pub struct ComplexTower {
    pub stages: Vec<GradedComplex>,
    pub transitions: Vec<ChainMap>,
}

impl ComplexTower {
    pub fn new(stages: Vec<GradedComplex>, transitions: Vec<ChainMap>) -> Result<Self> {
        if stages.is_empty() || transitions.len() + 1 != stages.len() {
            return Err(Error::DimensionMismatch(
                "a tower of N+1 stages needs N transitions".into(),
            ));
        }
        for (n, t) in transitions.iter().enumerate() {
            if !t.offset().is_zero() {
                return Err(Error::NotHomogeneous(format!(
                    "transition {n} is not degree-preserving"
                )));
            }
        }
        Ok(ComplexTower {
            stages,
            transitions,
        })
    }

    /// A module tower viewed as complexes in index 0.
    pub fn from_modules(t: &ModuleTower) -> Result<Self> {
        let stages: Vec<GradedComplex> = t
            .stages
            .iter()
            .map(|m| GradedComplex::concentrated(m, 0))
            .collect();
        let transitions = t
            .transitions
            .iter()
            .enumerate()
            .map(|(n, f)| {
                ChainMap::new(
                    &stages[n + 1],
                    &stages[n],
                    f.offset().clone(),
                    BTreeMap::from([(0, f.clone())]),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexTower {
            stages,
            transitions,
        })
    }

    /// Smallest and largest index carrying a term at any stage.
    pub fn index_bounds(&self) -> Option<(i64, i64)> {
        let bs: Vec<(i64, i64)> = self
            .stages
            .iter()
            .filter_map(GradedComplex::bounds)
            .collect();
        Some((bs.iter().map(|b| b.0).min()?, bs.iter().map(|b| b.1).max()?))
    }

    /// `{π_i(C_n)_g}` with induced transitions.
    pub fn homotopy_tower(&self, i: i64, g: &Degree) -> Result<AbTower> {
        let hs = self
            .stages
            .iter()
            .map(|c| c.homology_at(i, g))
            .collect::<Result<Vec<_>>>()?;
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .map(|(n, t)| t.induced(i, g, &hs[n + 1], &hs[n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbTower {
            objects: hs.into_iter().map(|h| h.group).collect(),
            transitions,
        })
    }

    pub fn limits(&self, i: i64, window: &[Degree]) -> Result<BTreeMap<Degree, DegreeLimit>> {
        window
            .par_iter()
            .map(|g| Ok((g.clone(), self.homotopy_tower(i, g)?.limit())))
            .collect()
    }
}

/// Per-degree limit status of a module tower.
pub fn tower_limits(t: &ModuleTower, window: &[Degree]) -> BTreeMap<Degree, DegreeLimit> {
    t.limits(window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntMatrix;

    fn times(a: &FpAbGroup, k: i64) -> AbMap {
        let n = a.num_generators();
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            m[(i, i)] = k.into();
        }
        AbMap::new(a.clone(), a.clone(), m).unwrap()
    }

    #[test]
    fn constant_tower_stabilizes_at_zero() {
        let z = FpAbGroup::free(1);
        let lim = AbTower::constant(&z, 4).limit();
        assert_eq!(lim.status, LimitStatus::Stabilized { value: z, stage: 0 });
        assert_eq!(lim.lim1, Lim1Status::CertifiedZero);
    }

    #[test]
    fn multiplication_by_p_is_undetermined() {
        let z = FpAbGroup::free(1);
        let t = AbTower::new(vec![z.clone(); 4], vec![times(&z, 3); 3]).unwrap();
        let lim = t.limit();
        assert_eq!(lim.status, LimitStatus::Undetermined);
        assert_eq!(lim.lim1, Lim1Status::Undetermined);
    }

    #[test]
    fn p_adic_tower_is_a_surjective_tail() {
        let objects: Vec<FpAbGroup> = (0..5u32)
            .map(|n| FpAbGroup::cyclic(num_bigint::BigInt::from(2).pow(n)))
            .collect();
        let transitions = (0..4)
            .map(|n| {
                AbMap::new(
                    objects[n + 1].clone(),
                    objects[n].clone(),
                    IntMatrix::identity(1),
                )
                .unwrap()
            })
            .collect();
        let t = AbTower::new(objects, transitions).unwrap();
        let lim = t.limit();
        assert_eq!(lim.status, LimitStatus::SurjectiveTail);
        assert_eq!(lim.lim1, Lim1Status::CertifiedZero);
    }

    #[test]
    fn single_stage_is_not_stabilized() {
        let z = FpAbGroup::free(1);
        assert!(AbTower::constant(&z, 1).stabilization_stage().is_none());
    }

    #[test]
    fn pro_zero_composites() {
        let z2 = FpAbGroup::cyclic(4);
        let t = AbTower::new(vec![z2.clone(); 5], vec![times(&z2, 2); 4]).unwrap();
        assert!(!t.is_pro_zero_with(1).unwrap());
        assert!(t.is_pro_zero_with(2).unwrap());
    }
}
