use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::abelian::{FpAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::grading::{Degree, GradingSignature};

use super::module::GradedModule;

/// A graded abelian group known exactly on all degrees of weight at most
/// `known_below`; degrees missing from `pieces` are zero there.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedGroup {
    pieces: BTreeMap<Degree, FpAbGroup>,
    weight: Vec<BigRational>,
    min_weight: Option<BigRational>,
    known_below: BigRational,
}

impl GradedGroup {
    /// Pieces of `m` of weight at most `bound`.
    pub fn truncate(m: &GradedModule, bound: &BigRational) -> GradedGroup {
        let sig = m.ring().sig();
        let min_weight = m.min_weight();
        let mut pieces = BTreeMap::new();
        if let Some(lo) = &min_weight {
            for g in m.window(lo, bound) {
                let p = m.piece_group(&g);
                if !p.is_zero() {
                    pieces.insert(g, p);
                }
            }
        }
        GradedGroup {
            pieces,
            weight: sig.weight_functional().to_vec(),
            min_weight,
            known_below: bound.clone(),
        }
    }

    /// A single group placed in one degree; known in every degree.
    pub fn concentrated(
        sig: &GradingSignature,
        degree: Degree,
        group: FpAbGroup,
        bound: &BigRational,
    ) -> GradedGroup {
        let w = sig.weight(&degree);
        let mut pieces = BTreeMap::new();
        if !group.is_zero() {
            pieces.insert(degree, group);
        }
        GradedGroup {
            pieces,
            weight: sig.weight_functional().to_vec(),
            min_weight: Some(w),
            known_below: bound.clone(),
        }
    }

    pub fn pieces(&self) -> &BTreeMap<Degree, FpAbGroup> {
        &self.pieces
    }

    pub fn piece(&self, g: &Degree) -> FpAbGroup {
        self.pieces.get(g).cloned().unwrap_or_else(FpAbGroup::zero)
    }

    pub fn known_below(&self) -> &BigRational {
        &self.known_below
    }

    fn weight(&self, g: &Degree) -> BigRational {
        g.coords()
            .iter()
            .zip(&self.weight)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Direct sum of all known pieces.
    pub fn total(&self) -> FpAbGroup {
        let parts: Vec<&FpAbGroup> = self.pieces.values().collect();
        FpAbGroup::direct_sum(&parts)
    }

    /// Direct sum of the pieces of weight at most `bound`.
    pub fn total_below(&self, bound: &BigRational) -> FpAbGroup {
        let parts: Vec<&FpAbGroup> = self
            .pieces
            .iter()
            .filter(|(g, _)| self.weight(g) <= *bound)
            .map(|(_, p)| p)
            .collect();
        FpAbGroup::direct_sum(&parts)
    }

    /// Day convolution. The result is known below the largest weight for
    /// which every contributing pair is known.
    pub fn day_tensor(&self, other: &GradedGroup) -> Result<GradedGroup> {
        if self.weight != other.weight {
            return Err(Error::UnboundedDecomposition {
                degree: Degree::zero(self.weight.len()),
                reason: "weight functionals differ".into(),
            });
        }
        let (Some(ma), Some(mb)) = (&self.min_weight, &other.min_weight) else {
            let known = self.known_below.clone().min(other.known_below.clone());
            return Ok(GradedGroup {
                pieces: BTreeMap::new(),
                weight: self.weight.clone(),
                min_weight: None,
                known_below: known,
            });
        };
        let known = (&self.known_below + mb).min(&other.known_below + ma);
        let mut acc: BTreeMap<Degree, Vec<FpAbGroup>> = BTreeMap::new();
        for (s, a) in &self.pieces {
            for (t, b) in &other.pieces {
                let g = s + t;
                if self.weight(&g) <= known {
                    acc.entry(g).or_default().push(a.tensor(b));
                }
            }
        }
        let pieces = acc
            .into_iter()
            .map(|(g, v)| (g, FpAbGroup::direct_sum(&v.iter().collect::<Vec<_>>())))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Ok(GradedGroup {
            pieces,
            weight: self.weight.clone(),
            min_weight: Some(ma + mb),
            known_below: known,
        })
    }
}

fn check_comparable(m: &GradedModule, n: &GradedModule, g: &Degree) -> Result<()> {
    let (sm, sn) = (m.ring().sig(), n.ring().sig());
    if sm.dimension() != sn.dimension() || g.dim() != sm.dimension() {
        return Err(Error::UnboundedDecomposition {
            degree: g.clone(),
            reason: "grading dimensions differ".into(),
        });
    }
    if sm.weight_functional() != sn.weight_functional() {
        return Err(Error::UnboundedDecomposition {
            degree: g.clone(),
            reason: "weight functionals differ, so the decomposition set is not bounded by a common weight".into(),
        });
    }
    Ok(())
}

/// The pairs `(s, g − s)` of the free-cover supports of `m` and `n`.
pub fn decomposition_set(
    m: &GradedModule,
    n: &GradedModule,
    g: &Degree,
    support_bound: Option<&BigRational>,
) -> Result<Vec<(Degree, Degree)>> {
    check_comparable(m, n, g)?;
    let (Some(ma), Some(mb)) = (m.min_weight(), n.min_weight()) else {
        return Ok(Vec::new());
    };
    let sig = m.ring().sig();
    let wg = sig.weight(g);
    let cap = &wg - &mb;
    if let Some(b) = support_bound {
        if cap > *b {
            return Err(Error::UnboundedDecomposition {
                degree: g.clone(),
                reason: format!("left factor would need weights up to {cap}, above the bound {b}"),
            });
        }
    }
    let right: BTreeSet<Degree> = n.window(&mb, &(&wg - &ma)).into_iter().collect();
    Ok(m.window(&ma, &cap)
        .into_iter()
        .filter_map(|s| {
            let t = g - &s;
            right.contains(&t).then_some((s, t))
        })
        .collect())
}

/// `(M ⊗ N)_g = ⊕_{s+t=g} M_s ⊗ N_t` over `Z`.
pub fn day_tensor_piece(
    m: &GradedModule,
    n: &GradedModule,
    g: &Degree,
    support_bound: Option<&BigRational>,
) -> Result<FpAbGroup> {
    let pairs = decomposition_set(m, n, g, support_bound)?;
    let parts: Vec<FpAbGroup> = pairs
        .iter()
        .map(|(s, t)| m.piece_group(s).tensor(&n.piece_group(t)))
        .collect();
    Ok(FpAbGroup::direct_sum(&parts.iter().collect::<Vec<_>>()))
}

/// A total space presented on the monomial bases of all pieces of weight at most `bound`.
struct TotalPresentation {
    degrees: Vec<Degree>,
    relations: IntMatrix,
}

fn total_presentation(m: &GradedModule, bound: &BigRational) -> TotalPresentation {
    let mut degrees = Vec::new();
    let mut blocks = Vec::new();
    if let Some(lo) = m.min_weight() {
        for g in m.window(&lo, bound) {
            let p = m.piece(&g);
            degrees.extend(std::iter::repeat_n(g.clone(), p.dimension()));
            blocks.push(p.group.relations().clone());
        }
    }
    TotalPresentation {
        degrees,
        relations: IntMatrix::block_diagonal(&blocks.iter().collect::<Vec<_>>()),
    }
}

/// The ungraded tensor of the truncated total spaces, cut down to pairs of
/// total weight at most `bound`.
///
/// Built from the Kronecker presentation `[R_M ⊗ 1 | 1 ⊗ R_N]`; since every
/// relation column is homogeneous the presentation splits by total degree,
/// which is used only to keep the Smith reductions small.
pub fn forgetful_tensor(
    m: &GradedModule,
    n: &GradedModule,
    bound: &BigRational,
) -> Result<FpAbGroup> {
    check_comparable(m, n, &m.ring().zero_degree())?;
    let sig = m.ring().sig();
    let a = total_presentation(m, bound);
    let b = total_presentation(n, bound);
    let (na, nb) = (a.degrees.len(), b.degrees.len());
    let kron = a
        .relations
        .kronecker(&IntMatrix::identity(nb))
        .hstack(&IntMatrix::identity(na).kronecker(&b.relations));
    let mut blocks: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for i in 0..na {
        for j in 0..nb {
            let g = &a.degrees[i] + &b.degrees[j];
            if sig.weight(&g) <= *bound {
                blocks.entry(g).or_default().push(i * nb + j);
            }
        }
    }
    let mut parts = Vec::new();
    for rows in blocks.values() {
        let selected = kron.select_rows(rows);
        let cols: Vec<usize> = (0..selected.cols())
            .filter(|&c| {
                (0..selected.rows()).any(|r| !num_traits::Zero::is_zero(&selected[(r, c)]))
            })
            .collect();
        parts.push(FpAbGroup::from_relations(selected.select_cols(&cols)));
    }
    Ok(FpAbGroup::direct_sum(&parts.iter().collect::<Vec<_>>()))
}

/// `⊕_{w(g) ≤ bound} (M ⊗ N)_g`.
pub fn day_tensor_total(
    m: &GradedModule,
    n: &GradedModule,
    bound: &BigRational,
) -> Result<FpAbGroup> {
    check_comparable(m, n, &m.ring().zero_degree())?;
    let (Some(ma), Some(mb)) = (m.min_weight(), n.min_weight()) else {
        return Ok(FpAbGroup::zero());
    };
    let sig = m.ring().sig();
    let mut supports = BTreeSet::new();
    for s in m.window(&ma, &(bound - &mb)) {
        for t in n.window(&mb, &(bound - &ma)) {
            let g = &s + &t;
            if sig.weight(&g) <= *bound {
                supports.insert(g);
            }
        }
    }
    let parts = supports
        .iter()
        .map(|g| day_tensor_piece(m, n, g, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpAbGroup::direct_sum(&parts.iter().collect::<Vec<_>>()))
}
