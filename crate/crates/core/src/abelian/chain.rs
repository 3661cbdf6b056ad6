use std::collections::BTreeMap;

use super::group::{AbMap, FpAbGroup};
use super::homology::{homology, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A bounded chain complex of presented groups, `d_i: C_i → C_{i−1}`.
#[derive(Clone, Debug, Default)]
pub struct GroupComplex {
    terms: BTreeMap<i64, FpAbGroup>,
    diffs: BTreeMap<i64, AbMap>,
}

impl GroupComplex {
    pub fn new(terms: BTreeMap<i64, FpAbGroup>, diffs: BTreeMap<i64, AbMap>) -> Result<Self> {
        let c = GroupComplex { terms, diffs };
        for (i, d) in &c.diffs {
            if d.source().num_generators() != c.term(*i).num_generators()
                || d.target().num_generators() != c.term(i - 1).num_generators()
            {
                return Err(Error::DimensionMismatch(format!(
                    "differential {i} does not fit the terms"
                )));
            }
        }
        Ok(c)
    }

    pub fn term(&self, i: i64) -> FpAbGroup {
        self.terms.get(&i).cloned().unwrap_or_else(FpAbGroup::zero)
    }

    pub fn differential(&self, i: i64) -> AbMap {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| AbMap::zero(&self.term(i), &self.term(i - 1)))
    }

    pub fn homology(&self, i: i64) -> Result<Subquotient> {
        homology(&self.differential(i + 1), &self.differential(i))
    }
}

/// A map between direct sums given by blocks `(target part, source part, matrix)`
/// on presentation generators.
pub fn block_map(
    sources: &[FpAbGroup],
    targets: &[FpAbGroup],
    blocks: &[(usize, usize, &IntMatrix)],
) -> Result<AbMap> {
    let src = FpAbGroup::direct_sum(&sources.iter().collect::<Vec<_>>());
    let tgt = FpAbGroup::direct_sum(&targets.iter().collect::<Vec<_>>());
    let offsets = |parts: &[FpAbGroup]| {
        let mut v = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            v.push(acc);
            acc += p.num_generators();
        }
        v
    };
    let (so, to) = (offsets(sources), offsets(targets));
    let mut m = IntMatrix::zeros(tgt.num_generators(), src.num_generators());
    for (t, s, block) in blocks {
        if block.rows() != targets[*t].num_generators()
            || block.cols() != sources[*s].num_generators()
        {
            return Err(Error::DimensionMismatch("block has the wrong shape".into()));
        }
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                m[(to[*t] + r, so[*s] + c)] += &block[(r, c)];
            }
        }
    }
    AbMap::new(src, tgt, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_complex() {
        let z = FpAbGroup::free(1);
        let d = AbMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![3]])).unwrap();
        let c = GroupComplex::new(
            BTreeMap::from([(0, z.clone()), (1, z)]),
            BTreeMap::from([(1, d)]),
        )
        .unwrap();
        assert_eq!(c.homology(0).unwrap().group, FpAbGroup::cyclic(3));
        assert!(c.homology(1).unwrap().group.is_zero());
    }

    #[test]
    fn blocks_assemble() {
        let z = FpAbGroup::free(1);
        let one = IntMatrix::identity(1);
        let m = block_map(
            &[z.clone(), z.clone()],
            &[z.clone()],
            &[(0, 0, &one), (0, 1, &one)],
        )
        .unwrap();
        assert!(m.is_surjective());
        assert_eq!(m.kernel().group, FpAbGroup::free(1));
    }
}
