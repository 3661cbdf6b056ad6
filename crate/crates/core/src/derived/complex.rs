use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{homology, AbMap, FpAbGroup, GroupComplex, Subquotient};
use crate::error::{Error, Result};
use crate::graded_algebra::{GradedMap, GradedModule, GradedRing};
use crate::grading::Degree;
use crate::poly::Polynomial;

/// A bounded complex of graded modules with degree-preserving differentials
/// `d_i: C_i → C_{i−1}` (homological indexing).
#[derive(Clone, Debug)]
pub struct GradedComplex {
    ring: GradedRing,
    terms: BTreeMap<i64, GradedModule>,
    diffs: BTreeMap<i64, GradedMap>,
}

impl GradedComplex {
    /// `diffs[i]` maps `terms[i]` to `terms[i − 1]`; missing entries are zero.
    /// Checks `d ∘ d = 0` exactly.
    pub fn new(
        ring: &GradedRing,
        terms: BTreeMap<i64, GradedModule>,
        diffs: BTreeMap<i64, GradedMap>,
    ) -> Result<Self> {
        if terms.values().any(|m| !m.ring().same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        let c = GradedComplex {
            ring: ring.clone(),
            terms,
            diffs,
        };
        for (i, d) in &c.diffs {
            if !d.source().same_as(&c.term(*i)) || !d.target().same_as(&c.term(i - 1)) {
                return Err(Error::DimensionMismatch(format!(
                    "differential {i} has the wrong source or target"
                )));
            }
            if !d.offset().is_zero() {
                return Err(Error::NotHomogeneous(format!(
                    "differential {i} is not degree-preserving"
                )));
            }
        }
        c.check_d_squared()?;
        Ok(c)
    }

    /// `M` placed in homological index `i`.
    pub fn concentrated(m: &GradedModule, i: i64) -> Self {
        GradedComplex {
            ring: m.ring().clone(),
            terms: BTreeMap::from([(i, m.clone())]),
            diffs: BTreeMap::new(),
        }
    }

    /// `source → target` with the source in index `i` and the target in `i − 1`.
    pub fn two_term(d: &GradedMap, i: i64) -> Result<Self> {
        Self::new(
            d.source().ring(),
            BTreeMap::from([(i, d.source().clone()), (i - 1, d.target().clone())]),
            BTreeMap::from([(i, d.clone())]),
        )
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i64, GradedModule> {
        &self.terms
    }

    /// The term in index `i`, zero outside the support.
    pub fn term(&self, i: i64) -> GradedModule {
        self.terms
            .get(&i)
            .cloned()
            .unwrap_or_else(|| GradedModule::zero(&self.ring))
    }

    pub fn differential(&self, i: i64) -> GradedMap {
        self.diffs.get(&i).cloned().unwrap_or_else(|| {
            GradedMap::zero(&self.term(i), &self.term(i - 1), self.ring.zero_degree())
        })
    }

    /// Smallest and largest index carrying a term.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn is_free(&self) -> bool {
        self.terms.values().all(GradedModule::is_free)
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i - 1)) {
                if !next.compose(d)?.is_zero() {
                    return Err(Error::CompositionNotZero);
                }
            }
        }
        Ok(())
    }

    /// `C[k]`: `C[k]_i = C_{i−k}` with differential `(−1)^k d`.
    pub fn suspend(&self, k: i64) -> GradedComplex {
        let sign = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
        GradedComplex {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(i, m)| (i + k, m.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(i, d)| (i + k, d.scale(&sign)))
                .collect(),
        }
    }

    /// Grade shift of every term, `C(g)`.
    pub fn shift_degree(&self, g: &Degree) -> GradedComplex {
        let terms: BTreeMap<i64, GradedModule> =
            self.terms.iter().map(|(i, m)| (*i, m.shift(g))).collect();
        let zero = self.ring.zero_degree();
        let diffs = self
            .diffs
            .iter()
            .map(|(i, d)| {
                let src = terms
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| GradedModule::zero(&self.ring));
                let tgt = terms
                    .get(&(i - 1))
                    .cloned()
                    .unwrap_or_else(|| GradedModule::zero(&self.ring));
                let map = GradedMap::unchecked(&src, &tgt, d.images().to_vec(), zero.clone())
                    .expect("same shape");
                (*i, map)
            })
            .collect();
        GradedComplex {
            ring: self.ring.clone(),
            terms,
            diffs,
        }
    }

    /// `d_i` in degree `g` as a map of groups.
    pub fn realize_differential(&self, i: i64, g: &Degree) -> AbMap {
        self.differential(i).realize(g)
    }

    /// The degree-`g` strand as a complex of groups.
    pub fn realize(&self, g: &Degree) -> GroupComplex {
        let terms = self
            .terms
            .iter()
            .map(|(i, m)| (*i, m.piece_group(g)))
            .collect();
        let diffs = self.diffs.iter().map(|(i, d)| (*i, d.realize(g))).collect();
        GroupComplex::new(terms, diffs).expect("realized strand has matching shapes")
    }

    /// `π_i` in degree `g` with cycle witnesses.
    pub fn homology_at(&self, i: i64, g: &Degree) -> Result<Subquotient> {
        homology(
            &self.realize_differential(i + 1, g),
            &self.realize_differential(i, g),
        )
    }

    pub fn homotopy_group(&self, i: i64, g: &Degree) -> Result<FpAbGroup> {
        Ok(self.homology_at(i, g)?.group)
    }

    /// `π_i(C)_g` for every `g` in the window; degrees are computed in parallel.
    pub fn homotopy_groups(
        &self,
        i: i64,
        window: &[Degree],
    ) -> Result<BTreeMap<Degree, FpAbGroup>> {
        window
            .par_iter()
            .map(|g| Ok((g.clone(), self.homotopy_group(i, g)?)))
            .collect()
    }

    /// Multiplication by a homogeneous ring element, as a chain map `C → C`.
    pub fn multiplication(&self, h: &Polynomial, degree: &Degree) -> Result<ChainMap> {
        let components = self
            .terms
            .iter()
            .map(|(i, m)| Ok((*i, GradedMap::multiplication(m, h, degree)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::new(self, self, degree.clone(), components)
    }
}

/// `homotopy_groups` as a free function.
pub fn homotopy_groups(
    c: &GradedComplex,
    i: i64,
    window: &[Degree],
) -> Result<BTreeMap<Degree, FpAbGroup>> {
    c.homotopy_groups(i, window)
}

/// A map of complexes of a fixed degree offset, commuting strictly with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: GradedComplex,
    target: GradedComplex,
    offset: Degree,
    components: BTreeMap<i64, GradedMap>,
}

impl ChainMap {
    pub fn new(
        source: &GradedComplex,
        target: &GradedComplex,
        offset: Degree,
        components: BTreeMap<i64, GradedMap>,
    ) -> Result<Self> {
        let map = ChainMap {
            source: source.clone(),
            target: target.clone(),
            offset,
            components,
        };
        for (i, c) in &map.components {
            if !c.source().same_as(&source.term(*i))
                || !c.target().same_as(&target.term(*i))
                || *c.offset() != map.offset
            {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component {i} does not fit"
                )));
            }
        }
        let lo = source.bounds().map(|b| b.0).unwrap_or(0);
        let hi = source.bounds().map(|b| b.1).unwrap_or(-1);
        for i in lo..=hi + 1 {
            let left = target.differential(i).compose(&map.component(i))?;
            let right = map.component(i - 1).compose(&source.differential(i))?;
            if !left.equals(&right) {
                return Err(Error::IllDefinedMap(format!(
                    "chain map does not commute with d_{i}"
                )));
            }
        }
        Ok(map)
    }

    pub fn component(&self, i: i64) -> GradedMap {
        self.components.get(&i).cloned().unwrap_or_else(|| {
            GradedMap::zero(
                &self.source.term(i),
                &self.target.term(i),
                self.offset.clone(),
            )
        })
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    pub fn offset(&self) -> &Degree {
        &self.offset
    }

    /// `C[k] → D[k]`; components pick up no sign since both differentials do.
    pub fn suspend(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.suspend(k),
            target: self.target.suspend(k),
            offset: self.offset.clone(),
            components: self
                .components
                .iter()
                .map(|(i, c)| (i + k, c.clone()))
                .collect(),
        }
    }

    /// Induced map `π_i(C)_g → π_i(D)_{g+offset}` between the given subquotients.
    pub fn induced(
        &self,
        i: i64,
        g: &Degree,
        from: &Subquotient,
        to: &Subquotient,
    ) -> Result<AbMap> {
        from.induced_map(&self.component(i).realize(g), to)
    }
}
