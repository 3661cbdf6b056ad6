use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{block_map, AbMap, FpAbGroup, GroupComplex, IntMatrix};
use crate::error::{Error, Result};
use crate::grading::Degree;

use super::tower::{ComplexTower, Lim1Status, LimitStatus};

#[derive(Clone, Debug, PartialEq)]
pub struct MilnorRow {
    pub degree: Degree,
    /// `π_i` of the fiber of `id − s` on the product of the stages.
    pub holim: FpAbGroup,
    /// The stabilized value of `{π_i(C_n)_g}`.
    pub stable: FpAbGroup,
    pub stage: usize,
    /// `lim¹ π_{i+1}` is certified zero.
    pub lim1_zero: bool,
    /// The projection of the fiber onto the stabilization stage is an isomorphism on `π_i`.
    pub projection_iso: bool,
}

impl MilnorRow {
    pub fn passed(&self) -> bool {
        self.lim1_zero && self.projection_iso && self.holim == self.stable
    }
}

#[derive(Clone, Debug)]
pub struct MilnorReport {
    pub index: i64,
    pub rows: Vec<MilnorRow>,
}

impl MilnorReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(MilnorRow::passed)
    }
}

/// The fiber of `id − s: Π_{n≤N} C_n → Π_{n<N} C_n` in indices `i−1..=i+1`,
/// with `Fib_j = A_j ⊕ B_{j+1}` and `d(a, b) = (d a, −(a − s a) − d b)`.
fn holim_strand(
    stages: &[GroupComplex],
    trans: &[BTreeMap<i64, AbMap>],
    i: i64,
) -> Result<(GroupComplex, Vec<FpAbGroup>)> {
    let n_top = stages.len();
    let parts = |j: i64| -> Vec<FpAbGroup> {
        let mut v: Vec<FpAbGroup> = stages.iter().map(|c| c.term(j)).collect();
        v.extend(stages[..n_top - 1].iter().map(|c| c.term(j + 1)));
        v
    };
    let minus = BigInt::from(-1);
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for j in i - 1..=i + 1 {
        terms.insert(
            j,
            FpAbGroup::direct_sum(&parts(j).iter().collect::<Vec<_>>()),
        );
    }
    for j in i..=i + 1 {
        let (src, tgt) = (parts(j), parts(j - 1));
        let mut owned: Vec<(usize, usize, IntMatrix)> = Vec::new();
        for (n, c) in stages.iter().enumerate() {
            owned.push((n, n, c.differential(j).matrix().clone()));
        }
        for n in 0..n_top - 1 {
            let b_tgt = n_top + n;
            owned.push((
                b_tgt,
                n,
                IntMatrix::identity(src[n].num_generators()).scaled(&minus),
            ));
            owned.push((b_tgt, n + 1, trans[n][&j].matrix().clone()));
            owned.push((
                b_tgt,
                n_top + n,
                stages[n].differential(j + 1).matrix().scaled(&minus),
            ));
        }
        let blocks: Vec<(usize, usize, &IntMatrix)> =
            owned.iter().map(|(t, s, m)| (*t, *s, m)).collect();
        diffs.insert(j, block_map(&src, &tgt, &blocks)?);
    }
    Ok((GroupComplex::new(terms, diffs)?, parts(i)))
}

/// Compares `π_i` of the homotopy limit, built as a fiber on the product of the
/// stages, with the stabilized value of the `π_i` tower, on every window degree.
///
/// Requires the `π_i` and `π_{i+1}` towers to be stabilized in every degree;
/// otherwise fails with `NotStabilized` instead of reporting a value.
pub fn milnor_check(t: &ComplexTower, i: i64, window: &[Degree]) -> Result<MilnorReport> {
    let rows = window
        .par_iter()
        .map(|g| -> Result<MilnorRow> {
            let lim_i = t.homotopy_tower(i, g)?.limit();
            let lim_next = t.homotopy_tower(i + 1, g)?.limit();
            let (LimitStatus::Stabilized { value, stage }, LimitStatus::Stabilized { .. }) =
                (&lim_i.status, &lim_next.status)
            else {
                let index = if matches!(lim_i.status, LimitStatus::Stabilized { .. }) {
                    i + 1
                } else {
                    i
                };
                return Err(Error::NotStabilized {
                    degree: g.clone(),
                    index,
                });
            };
            let stages: Vec<GroupComplex> = t.stages.iter().map(|c| c.realize(g)).collect();
            let trans: Vec<BTreeMap<i64, AbMap>> = t
                .transitions
                .iter()
                .map(|s| {
                    (i - 1..=i + 2)
                        .map(|j| (j, s.component(j).realize(g)))
                        .collect()
                })
                .collect();
            let (fib, fib_parts) = holim_strand(&stages, &trans, i)?;
            let h = fib.homology(i)?;
            let target = stages[*stage].homology(i)?;
            let pick = IntMatrix::identity(fib_parts[*stage].num_generators());
            let proj = block_map(
                &fib_parts,
                &[fib_parts[*stage].clone()],
                &[(0, *stage, &pick)],
            )?;
            let proj = AbMap::new(
                proj.source().clone(),
                stages[*stage].term(i),
                proj.matrix().clone(),
            )?;
            let induced = h.induced_map(&proj, &target)?;
            Ok(MilnorRow {
                degree: g.clone(),
                holim: h.group.clone(),
                stable: value.clone(),
                stage: *stage,
                lim1_zero: lim_next.lim1 == Lim1Status::CertifiedZero,
                projection_iso: induced.is_isomorphism(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MilnorReport { index: i, rows })
}
