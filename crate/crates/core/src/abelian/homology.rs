use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{divisible, AbMap, FpAbGroup};
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Solves `K w = b` over the integers for a fixed matrix `K`.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    snf: SmithForm,
    cols: usize,
}

impl LatticeSolver {
    pub fn new(k: &IntMatrix) -> Self {
        LatticeSolver {
            snf: smith_normal_form(k),
            cols: k.cols(),
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.snf.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.snf.rank {
                let d = &self.snf.d[(i, i)];
                if !divisible(ci, d) {
                    return None;
                }
                y[i] = ci / d;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }
}

/// Basis of the integer kernel of `a`, as columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols()).collect();
    snf.v.select_cols(&idx)
}

/// A basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(gens);
    let mut basis = IntMatrix::zeros(gens.rows(), snf.rank);
    for j in 0..snf.rank {
        let d = &snf.d[(j, j)];
        for i in 0..gens.rows() {
            basis[(i, j)] = &snf.u_inv[(i, j)] * d;
        }
    }
    basis
}

/// A subquotient `K / L` of an ambient group, where `K` is a lattice in the
/// ambient canonical coordinates. The presentation generators of `group` are
/// the columns of `cycles`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FpAbGroup,
    pub ambient: FpAbGroup,
    pub cycles: IntMatrix,
    solver: Arc<LatticeSolver>,
}

impl Subquotient {
    /// Coordinates in `group` (canonical) of an ambient element, if it lies in `K`.
    pub fn element_coords(&self, ambient_canonical: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.solver.solve(ambient_canonical)?;
        Some(self.group.to_canonical(&w))
    }

    pub fn contains(&self, ambient_canonical: &[BigInt]) -> bool {
        self.solver.solve(ambient_canonical).is_some()
    }

    /// An ambient representative (canonical coordinates) of a group element.
    pub fn representative(&self, group_canonical: &[BigInt]) -> Vec<BigInt> {
        let w = self.group.from_canonical(group_canonical);
        self.ambient.reduce(&self.cycles.mul_vec(&w))
    }

    /// The map `K → ambient` on presentation coordinates.
    pub fn inclusion(&self) -> AbMap {
        let m = &self.ambient.presentation().from_canonical * &self.cycles;
        AbMap::new_unchecked(self.group.clone(), self.ambient.clone(), m)
            .expect("shape by construction")
    }

    /// Map induced on subquotients by a map of ambients.
    pub fn induced_map(&self, ambient_map: &AbMap, target: &Subquotient) -> Result<AbMap> {
        let mut columns = Vec::with_capacity(self.cycles.cols());
        for col in self.cycles.columns() {
            let pres = self.ambient.from_canonical(&col);
            let image = ambient_map.apply(&pres);
            let can = target.ambient.to_canonical(&image);
            let w = target.solver.solve(&can).ok_or_else(|| {
                Error::IllDefinedMap("ambient map does not carry cycles to cycles".into())
            })?;
            columns.push(w);
        }
        let m = IntMatrix::from_columns(target.group.num_generators(), &columns);
        AbMap::new(self.group.clone(), target.group.clone(), m)
    }
}

/// `ker(d_out) / im(d_in)` in canonical form, with cycle witnesses.
pub fn homology(d_in: &AbMap, d_out: &AbMap) -> Result<Subquotient> {
    let b = d_in.target();
    if b.num_generators() != d_out.source().num_generators() || b != d_out.source() {
        return Err(Error::DimensionMismatch(
            "homology: middle groups differ".into(),
        ));
    }
    let comp = d_out.compose(d_in)?;
    if !comp.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let cb = b.canonical_len();
    let out = d_out.canonical_matrix();
    let c = d_out.target();
    let cycles = if c.canonical_len() == 0 {
        IntMatrix::identity(cb)
    } else {
        let stacked = out.hstack(&c.canonical_relations());
        let ker = integer_kernel(&stacked);
        let proj = ker.select_rows(&(0..cb).collect::<Vec<_>>());
        lattice_basis(&proj)
    };
    let solver = Arc::new(LatticeSolver::new(&cycles));
    let boundaries = d_in.canonical_matrix().hstack(&b.canonical_relations());
    let mut rel_cols = Vec::with_capacity(boundaries.cols());
    for col in boundaries.columns() {
        let w = solver
            .solve(&col)
            .ok_or_else(|| Error::IllDefinedMap("boundary is not a cycle".into()))?;
        rel_cols.push(w);
    }
    let rel = IntMatrix::from_columns(cycles.cols(), &rel_cols);
    Ok(Subquotient {
        group: FpAbGroup::from_relations(rel),
        ambient: b.clone(),
        cycles,
        solver,
    })
}

/// Is `A →α→ B →β→ C` exact at `B`?
pub fn is_exact_at(alpha: &AbMap, beta: &AbMap) -> Result<bool> {
    Ok(homology(alpha, beta)?.group.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(s: &FpAbGroup, t: &FpAbGroup, rows: &[Vec<i64>]) -> AbMap {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, s.num_generators())
        } else {
            IntMatrix::from_rows(rows)
        };
        AbMap::new(s.clone(), t.clone(), m).unwrap()
    }

    #[test]
    fn times_two_on_z() {
        let z = FpAbGroup::free(1);
        let zero = FpAbGroup::zero();
        let d = map(&z, &z, &[vec![2]]);
        let middle = homology(&AbMap::zero(&zero, &z), &d).unwrap();
        assert!(middle.group.is_zero());
        let right = homology(&d, &AbMap::zero(&z, &zero)).unwrap();
        assert_eq!(right.group, FpAbGroup::cyclic(2));
    }

    #[test]
    fn zero_maps_around_z6() {
        let g = FpAbGroup::cyclic(6);
        let zero = FpAbGroup::zero();
        let h = homology(&AbMap::zero(&zero, &g), &AbMap::zero(&g, &zero)).unwrap();
        assert_eq!(h.group, FpAbGroup::cyclic(6));
    }

    #[test]
    fn diagonal_then_difference() {
        let z = FpAbGroup::free(1);
        let z2 = FpAbGroup::free(2);
        let d_in = map(&z, &z2, &[vec![1], vec![1]]);
        let d_out = map(&z2, &z, &[vec![1, -1]]);
        assert!(homology(&d_in, &d_out).unwrap().group.is_zero());
    }

    #[test]
    fn composition_checked() {
        let z = FpAbGroup::free(1);
        let id = AbMap::identity(&z);
        assert_eq!(homology(&id, &id).unwrap_err(), Error::CompositionNotZero);
    }

    #[test]
    fn exact_sequence_from_ses() {
        // 0 -> Z --x4--> Z --> Z/4 -> 0, and Z/2 -> Z/4 -> Z/2.
        let z = FpAbGroup::free(1);
        let z4 = FpAbGroup::cyclic(4);
        let z2 = FpAbGroup::cyclic(2);
        let a = map(&z, &z, &[vec![4]]);
        let b = map(&z, &z4, &[vec![1]]);
        assert!(is_exact_at(&a, &b).unwrap());
        let i = map(&z2, &z4, &[vec![2]]);
        let p = map(&z4, &z2, &[vec![1]]);
        assert!(is_exact_at(&i, &p).unwrap());
        assert!(i.is_injective() && p.is_surjective());
    }

    #[test]
    fn homology_over_torsion_ambient() {
        // Z/4 --x2--> Z/4 --x2--> Z/4: ker = {0,2}, im = {0,2}.
        let z4 = FpAbGroup::cyclic(4);
        let t = map(&z4, &z4, &[vec![2]]);
        assert!(homology(&t, &t).unwrap().group.is_zero());
        // Z/4 --0--> Z/4 --x2--> Z/4: ker = Z/2.
        let h = homology(&AbMap::zero(&z4, &z4), &t).unwrap();
        assert_eq!(h.group, FpAbGroup::cyclic(2));
    }

    #[test]
    fn induced_map_on_homology() {
        // Identity chain map on 0 -> Z --x2--> Z induces the identity on Z/2.
        let z = FpAbGroup::free(1);
        let zero = FpAbGroup::zero();
        let d = map(&z, &z, &[vec![2]]);
        let h = homology(&d, &AbMap::zero(&z, &zero)).unwrap();
        let f = h.induced_map(&AbMap::identity(&z), &h).unwrap();
        assert!(f.is_isomorphism());
        let f3 = h.induced_map(&map(&z, &z, &[vec![2]]), &h).unwrap();
        assert!(f3.is_zero());
    }
}
