use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graded_algebra::{GradedMap, GradedModule, GradedRing};
use crate::grading::Degree;
use crate::poly::Polynomial;

use super::complex::GradedComplex;

/// A sequence of homogeneous elements with declared degrees and an exponent `n ≥ 1`.
#[derive(Clone, Debug)]
pub struct KoszulData {
    pub ring: GradedRing,
    pub elements: Vec<(Polynomial, Degree)>,
    pub exponent: u32,
}

impl KoszulData {
    /// Degrees are inferred; every element must be nonzero and homogeneous.
    pub fn new(ring: &GradedRing, elements: &[Polynomial], exponent: u32) -> Result<Self> {
        let elements = elements
            .iter()
            .map(|f| Ok((f.clone(), ring.homogeneous_degree(f)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::with_degrees(ring, elements, exponent)
    }

    pub fn with_degrees(
        ring: &GradedRing,
        elements: Vec<(Polynomial, Degree)>,
        exponent: u32,
    ) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::DimensionMismatch(
                "Koszul exponent must be at least 1".into(),
            ));
        }
        for (f, d) in &elements {
            if !ring.is_homogeneous_of(f, d) {
                return Err(Error::NotHomogeneous(ring.format(f)));
            }
        }
        Ok(KoszulData {
            ring: ring.clone(),
            elements,
            exponent,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The powers `f_i^n` with their degrees.
    pub fn powers(&self) -> Vec<(Polynomial, Degree)> {
        self.elements
            .iter()
            .map(|(f, d)| (f.pow(self.exponent), d.scale(self.exponent as i64)))
            .collect()
    }

    pub fn with_exponent(&self, exponent: u32) -> Result<Self> {
        Self::with_degrees(&self.ring, self.elements.clone(), exponent)
    }
}

/// `p`-element subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..r {
            acc.push(i);
            rec(i + 1, r, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, p, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex on `f_1^n, …, f_r^n`: index `p` is `⊕_{|S|=p} R(−Σ_{i∈S} n·deg f_i)`
/// and `e_S ↦ Σ_t (−1)^t f_{s_t}^n e_{S∖s_t}`.
pub fn koszul_complex(k: &KoszulData) -> Result<GradedComplex> {
    let ring = &k.ring;
    let powers = k.powers();
    let r = powers.len();
    let mut sets: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    let mut terms = BTreeMap::new();
    for p in 0..=r {
        let ss = subsets(r, p);
        let shifts = ss
            .iter()
            .map(|s| {
                s.iter()
                    .fold(ring.zero_degree(), |acc, &i| &acc + &powers[i].1)
            })
            .collect();
        terms.insert(p as i64, GradedModule::free(ring, shifts));
        sets.insert(p as i64, ss);
    }
    let mut diffs = BTreeMap::new();
    for p in 1..=r as i64 {
        let lower: BTreeMap<&Vec<usize>, usize> = sets[&(p - 1)]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let target = &terms[&(p - 1)];
        let images = sets[&p]
            .iter()
            .map(|s| {
                let mut e = target.zero_element();
                for (t, &i) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(t);
                    let f = if t % 2 == 0 {
                        powers[i].0.clone()
                    } else {
                        powers[i].0.neg()
                    };
                    e.0[lower[&rest]] = e.0[lower[&rest]].add(&f);
                }
                e
            })
            .collect();
        diffs.insert(
            p,
            GradedMap::new(&terms[&p], target, images, ring.zero_degree())?,
        );
    }
    GradedComplex::new(ring, terms, diffs)
}

/// Where each summand `C_i ⊗ P_p e_k` sits inside the total complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub c_index: i64,
    pub p_index: i64,
    pub p_generator: usize,
    pub offset: usize,
    pub len: usize,
}

/// The total complex of `C ⊗ P` for `P` a bounded complex of free modules,
/// with the block layout of every term.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: GradedComplex,
    pub blocks: BTreeMap<i64, Vec<Block>>,
}

impl TensorComplex {
    pub fn block(&self, n: i64, c_index: i64, p_generator: usize) -> Option<&Block> {
        self.blocks.get(&n)?.iter().find(|b| {
            b.c_index == c_index && b.p_generator == p_generator && b.p_index == n - c_index
        })
    }
}

/// `C ⊗ P` with `d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy`.
pub fn tensor_complex(c: &GradedComplex, p: &GradedComplex) -> Result<TensorComplex> {
    if !c.ring().same_as(p.ring()) {
        return Err(Error::RingMismatch);
    }
    for (i, t) in p.terms() {
        if !t.is_free() {
            return Err(Error::NotPerfect { index: *i });
        }
    }
    let ring = c.ring();
    let (Some((clo, chi)), Some((plo, phi))) = (c.bounds(), p.bounds()) else {
        return Ok(TensorComplex {
            complex: GradedComplex::new(ring, BTreeMap::new(), BTreeMap::new())?,
            blocks: BTreeMap::new(),
        });
    };
    let mut blocks: BTreeMap<i64, Vec<Block>> = BTreeMap::new();
    let mut terms = BTreeMap::new();
    for n in clo + plo..=chi + phi {
        let mut parts = Vec::new();
        let mut list = Vec::new();
        let mut offset = 0;
        for pi in plo..=phi {
            let ci = n - pi;
            if !c.terms().contains_key(&ci) {
                continue;
            }
            let cm = c.term(ci);
            for (k, shift) in p.term(pi).shifts().iter().enumerate() {
                let part = cm.shift(&-shift);
                list.push(Block {
                    c_index: ci,
                    p_index: pi,
                    p_generator: k,
                    offset,
                    len: part.num_generators(),
                });
                offset += part.num_generators();
                parts.push(part);
            }
        }
        if parts.is_empty() {
            continue;
        }
        terms.insert(
            n,
            GradedModule::direct_sum(&parts.iter().collect::<Vec<_>>())?,
        );
        blocks.insert(n, list);
    }
    let mut diffs = BTreeMap::new();
    for (&n, src_blocks) in &blocks {
        let Some(tgt_blocks) = blocks.get(&(n - 1)) else {
            continue;
        };
        let source = &terms[&n];
        let target = &terms[&(n - 1)];
        let mut images = vec![target.zero_element(); source.num_generators()];
        for b in src_blocks {
            let dc = c.differential(b.c_index);
            let dp = p.differential(b.p_index);
            let sign = if b.c_index.rem_euclid(2) == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            let to_c = tgt_blocks.iter().find(|t| {
                t.c_index == b.c_index - 1
                    && t.p_index == b.p_index
                    && t.p_generator == b.p_generator
            });
            for j in 0..b.len {
                let img = &mut images[b.offset + j];
                if let Some(t) = to_c {
                    for (l, q) in dc.images()[j].0.iter().enumerate() {
                        img.0[t.offset + l] = img.0[t.offset + l].add(q);
                    }
                }
                for (l, u) in dp.images()[b.p_generator].0.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let t = tgt_blocks
                        .iter()
                        .find(|t| {
                            t.c_index == b.c_index
                                && t.p_index == b.p_index - 1
                                && t.p_generator == l
                        })
                        .expect("target block exists when P has a differential");
                    img.0[t.offset + j] = img.0[t.offset + j].add(&u.scale(&sign));
                }
            }
        }
        diffs.insert(
            n,
            GradedMap::new(source, target, images, ring.zero_degree())?,
        );
    }
    Ok(TensorComplex {
        complex: GradedComplex::new(ring, terms, diffs)?,
        blocks,
    })
}

/// `C ⊗ P` for a bounded complex `P` of graded free modules.
pub fn tensor_with_perfect(c: &GradedComplex, p: &GradedComplex) -> Result<GradedComplex> {
    Ok(tensor_complex(c, p)?.complex)
}

/// `C ⊗ K(f_1^n, …, f_r^n)`.
pub fn derived_quotient(c: &GradedComplex, k: &KoszulData) -> Result<GradedComplex> {
    if !c.ring().same_as(&k.ring) {
        return Err(Error::RingMismatch);
    }
    tensor_with_perfect(c, &koszul_complex(k)?)
}

/// `M/^L(f_1^n, …, f_r^n)` for a module in index 0.
pub fn derived_quotient_module(m: &GradedModule, k: &KoszulData) -> Result<GradedComplex> {
    derived_quotient(&GradedComplex::concentrated(m, 0), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FpAbGroup;

    fn degrees(lo: i64, hi: i64) -> Vec<Degree> {
        (lo..=hi).map(Degree::int).collect()
    }

    #[test]
    fn koszul_on_x_is_multiplication() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let k = koszul_complex(&KoszulData::new(&r, &[r.parse("x").unwrap()], 1).unwrap()).unwrap();
        assert_eq!(k.term(1).shifts(), &[Degree::int(1)]);
        assert_eq!(k.term(0).shifts(), &[Degree::int(0)]);
        assert_eq!(k.differential(1).entry(0, 0), &r.parse("x").unwrap());
    }

    #[test]
    fn koszul_two_elements_signs() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let k = koszul_complex(
            &KoszulData::new(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()], 1).unwrap(),
        )
        .unwrap();
        assert_eq!(k.term(2).shifts(), &[Degree::int(2)]);
        assert_eq!(k.term(1).shifts(), &[Degree::int(1), Degree::int(1)]);
        // e_{01} ↦ x e_1 − y e_0.
        let d2 = k.differential(2);
        assert_eq!(d2.entry(0, 0), &r.parse("-y").unwrap());
        assert_eq!(d2.entry(1, 0), &r.parse("x").unwrap());
        k.check_d_squared().unwrap();
        for g in degrees(0, 4) {
            assert!(k.homotopy_group(1, &g).unwrap().is_zero());
            assert!(k.homotopy_group(2, &g).unwrap().is_zero());
        }
        assert_eq!(
            k.homotopy_group(0, &Degree::int(0)).unwrap(),
            FpAbGroup::free(1)
        );
    }

    #[test]
    fn unit_sequence_is_acyclic() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let k = koszul_complex(&KoszulData::new(&r, &[r.one()], 1).unwrap()).unwrap();
        for g in degrees(0, 3) {
            for i in -1..3 {
                assert!(k.homotopy_group(i, &g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn derived_quotients_over_zx() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let x = KoszulData::new(&r, &[r.parse("x").unwrap()], 1).unwrap();
        let q = derived_quotient_module(&r.as_module(), &x).unwrap();
        assert_eq!(
            q.homotopy_group(0, &Degree::int(0)).unwrap(),
            FpAbGroup::free(1)
        );
        for g in degrees(1, 4) {
            assert!(q.homotopy_group(0, &g).unwrap().is_zero());
        }
        for g in degrees(0, 4) {
            assert!(q.homotopy_group(1, &g).unwrap().is_zero());
        }
        let m = GradedModule::cyclic(&r, &[r.parse("x^2").unwrap()]).unwrap();
        let q = derived_quotient_module(&m, &x).unwrap();
        let pi0 = q.homotopy_groups(0, &degrees(0, 3)).unwrap();
        let pi1 = q.homotopy_groups(1, &degrees(0, 3)).unwrap();
        assert_eq!(pi0[&Degree::int(0)], FpAbGroup::free(1));
        assert!(pi0[&Degree::int(1)].is_zero());
        assert!(pi1[&Degree::int(1)].is_zero());
        assert_eq!(pi1[&Degree::int(2)], FpAbGroup::free(1));
        assert!(pi1[&Degree::int(3)].is_zero());
    }

    #[test]
    fn integers_mod_p() {
        let z = GradedRing::integers();
        let q = derived_quotient_module(
            &z.as_module(),
            &KoszulData::new(&z, &[z.parse("5").unwrap()], 1).unwrap(),
        )
        .unwrap();
        assert_eq!(
            q.homotopy_group(0, &Degree::int(0)).unwrap(),
            FpAbGroup::cyclic(5)
        );
        assert!(q.homotopy_group(1, &Degree::int(0)).unwrap().is_zero());
    }

    #[test]
    fn tor_over_z() {
        let z = GradedRing::integers();
        let m = GradedModule::cyclic(&z, &[z.parse("2").unwrap()]).unwrap();
        let f = GradedMap::multiplication(&z.as_module(), &z.parse("2").unwrap(), &Degree::int(0))
            .unwrap();
        let p = GradedComplex::two_term(&f, 1).unwrap();
        let t = tensor_with_perfect(&GradedComplex::concentrated(&m, 0), &p).unwrap();
        let g = Degree::int(0);
        assert_eq!(t.homotopy_group(0, &g).unwrap(), FpAbGroup::cyclic(2));
        assert_eq!(t.homotopy_group(1, &g).unwrap(), FpAbGroup::cyclic(2));
    }

    #[test]
    fn unit_complex_and_non_perfect() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let m = GradedModule::cyclic(&r, &[r.parse("x^3").unwrap()]).unwrap();
        let unit = GradedComplex::concentrated(&r.as_module(), 0);
        let t = tensor_with_perfect(&GradedComplex::concentrated(&m, 0), &unit).unwrap();
        for g in degrees(0, 4) {
            assert_eq!(t.homotopy_group(0, &g).unwrap(), m.piece_group(&g));
        }
        let bad = GradedComplex::concentrated(&m, 2);
        assert_eq!(
            tensor_with_perfect(&unit, &bad).unwrap_err(),
            Error::NotPerfect { index: 2 }
        );
    }

    #[test]
    fn iterated_equals_joint() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let m = GradedModule::cyclic(&r, &[r.parse("x*y").unwrap()]).unwrap();
        let (x, y) = (r.parse("x").unwrap(), r.parse("y").unwrap());
        let c = GradedComplex::concentrated(&m, 0);
        let step = derived_quotient(&c, &KoszulData::new(&r, &[x.clone()], 1).unwrap()).unwrap();
        let iterated =
            derived_quotient(&step, &KoszulData::new(&r, &[y.clone()], 1).unwrap()).unwrap();
        let joint = derived_quotient(&c, &KoszulData::new(&r, &[x, y], 1).unwrap()).unwrap();
        for g in degrees(0, 4) {
            for i in 0..3 {
                assert_eq!(
                    iterated.homotopy_group(i, &g).unwrap(),
                    joint.homotopy_group(i, &g).unwrap()
                );
            }
        }
    }
}
