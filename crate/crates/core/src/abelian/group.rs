use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::homology::{homology, Subquotient};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Generators-and-relations data behind a canonical form.
///
/// Presentation generators are the columns of the identity on `Z^n`; the
/// relations are the columns of `relations`. Canonical coordinates list the
/// torsion summands first (in divisibility order) and then the free ones.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub relations: IntMatrix,
    pub to_canonical: IntMatrix,
    pub from_canonical: IntMatrix,
}

/// A finitely presented abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with
/// `d_1 | … | d_t` and every `d_i ≥ 2`.
///
/// Equality compares the canonical form only, so two groups are equal exactly
/// when they are isomorphic.
#[derive(Clone)]
pub struct FpAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
    presentation: Arc<Presentation>,
}

impl FpAbGroup {
    /// Cokernel of `relations` acting on `Z^rows`.
    pub fn from_relations(relations: IntMatrix) -> Self {
        let n = relations.rows();
        let snf = smith_normal_form(&relations);
        let mut torsion_idx = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..snf.rank {
            let d = &snf.d[(i, i)];
            if !d.is_one() {
                torsion_idx.push(i);
                torsion.push(d.clone());
            }
        }
        let free_idx: Vec<usize> = (snf.rank..n).collect();
        let idx: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
        let presentation = Presentation {
            to_canonical: snf.u.select_rows(&idx),
            from_canonical: snf.u_inv.select_cols(&idx),
            relations,
        };
        FpAbGroup {
            rank: free_idx.len(),
            torsion,
            presentation: Arc::new(presentation),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(IntMatrix::zeros(rank, 0))
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_relations(IntMatrix::from_rows(&[vec![order.into()]]))
    }

    /// `Z^rank ⊕ ⊕ Z/orders[i]`; the orders need not form a divisibility chain.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigInt]) -> Self {
        let t = orders.len();
        let mut rel = IntMatrix::zeros(t + rank, t);
        for (i, d) in orders.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Self::from_relations(rel)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Number of presentation generators.
    pub fn num_generators(&self) -> usize {
        self.presentation.relations.rows()
    }

    /// Number of canonical coordinates (`t + r`).
    pub fn canonical_len(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.presentation.relations
    }

    /// Order of the `i`-th canonical coordinate; zero for free coordinates.
    pub fn coordinate_order(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Diagonal relation matrix of the canonical form (`c × t`).
    pub fn canonical_relations(&self) -> IntMatrix {
        let c = self.canonical_len();
        let mut m = IntMatrix::zeros(c, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// An isomorphic group whose presentation generators are the canonical
    /// generators of `self`.
    pub fn canonical_model(&self) -> FpAbGroup {
        Self::from_relations(self.canonical_relations())
    }

    /// Reduces canonical coordinates into `[0, d_i)` on torsion summands.
    pub fn reduce(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        canonical
            .iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    /// Canonical coordinates of an element given on presentation generators.
    pub fn to_canonical(&self, element: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&self.presentation.to_canonical.mul_vec(element))
    }

    /// A presentation-coordinate representative of a canonical element.
    pub fn from_canonical(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        self.presentation.from_canonical.mul_vec(canonical)
    }

    pub fn is_zero_element(&self, element: &[BigInt]) -> bool {
        self.to_canonical(element).iter().all(Zero::is_zero)
    }

    /// Direct sum whose presentation generators are the concatenated
    /// presentation generators of the summands.
    pub fn direct_sum(groups: &[&FpAbGroup]) -> Self {
        let blocks: Vec<&IntMatrix> = groups.iter().map(|g| g.relations()).collect();
        Self::from_relations(IntMatrix::block_diagonal(&blocks))
    }

    /// Tensor product from the canonical forms: `Z/a ⊗ Z/b = Z/gcd(a, b)`.
    pub fn tensor(&self, other: &FpAbGroup) -> Self {
        let mut orders = Vec::new();
        let mut rank = 0;
        let left: Vec<BigInt> = self
            .torsion
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), self.rank))
            .collect();
        let right: Vec<BigInt> = other
            .torsion
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), other.rank))
            .collect();
        for a in &left {
            for b in &right {
                let g = a.gcd(b);
                if g.is_zero() {
                    rank += 1;
                } else if !g.is_one() {
                    orders.push(g);
                }
            }
        }
        Self::from_cyclic_orders(rank, &orders)
    }

    /// Tensor product computed from the presentations:
    /// `coker(P ⊗ I | I ⊗ Q)` on `Z^{m n}`.
    pub fn tensor_presented(&self, other: &FpAbGroup) -> Self {
        let p = self.relations();
        let q = other.relations();
        let left = p.kronecker(&IntMatrix::identity(q.rows()));
        let right = IntMatrix::identity(p.rows()).kronecker(q);
        Self::from_relations(left.hstack(&right))
    }
}

impl PartialEq for FpAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }
}

impl Eq for FpAbGroup {}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAbGroup({self})")
    }
}

/// Homomorphism between presented groups, given on presentation generators:
/// column `j` of `matrix` is the image of source generator `j`.
#[derive(Clone, Debug)]
pub struct AbMap {
    source: FpAbGroup,
    target: FpAbGroup,
    matrix: IntMatrix,
}

impl AbMap {
    pub fn new(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix)?;
        map.check_well_defined()?;
        Ok(map)
    }

    /// Checks only the shape; relations are not verified.
    pub fn new_unchecked(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        Ok(AbMap {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: &FpAbGroup, target: &FpAbGroup) -> Self {
        AbMap {
            matrix: IntMatrix::zeros(target.num_generators(), source.num_generators()),
            source: source.clone(),
            target: target.clone(),
        }
    }

    pub fn identity(group: &FpAbGroup) -> Self {
        AbMap {
            matrix: IntMatrix::identity(group.num_generators()),
            source: group.clone(),
            target: group.clone(),
        }
    }

    pub fn source(&self) -> &FpAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn check_well_defined(&self) -> Result<()> {
        for (c, rel) in self.source.relations().columns().enumerate() {
            let image = self.matrix.mul_vec(&rel);
            if !self.target.is_zero_element(&image) {
                return Err(Error::IllDefinedMap(format!(
                    "source relation {c} maps to a nonzero element of {}",
                    self.target
                )));
            }
        }
        Ok(())
    }

    pub fn is_well_defined(&self) -> bool {
        self.check_well_defined().is_ok()
    }

    /// The map in canonical coordinates (`c_target × c_source`).
    pub fn canonical_matrix(&self) -> IntMatrix {
        let t = &self.target.presentation().to_canonical;
        let s = &self.source.presentation().from_canonical;
        &(t * &self.matrix) * s
    }

    pub fn apply(&self, element: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(element)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbMap) -> Result<AbMap> {
        if inner.target != self.source
            || inner.target.num_generators() != self.source.num_generators()
        {
            return Err(Error::DimensionMismatch(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(AbMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    pub fn add(&self, other: &AbMap) -> Result<AbMap> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return Err(Error::DimensionMismatch(
                "sum of maps with different shapes".into(),
            ));
        }
        let mut matrix = self.matrix.clone();
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                matrix[(i, j)] += &other.matrix[(i, j)];
            }
        }
        Ok(AbMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }

    pub fn sub(&self, other: &AbMap) -> Result<AbMap> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return Err(Error::DimensionMismatch(
                "difference of maps with different shapes".into(),
            ));
        }
        Ok(AbMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.sub(&other.matrix),
        })
    }

    pub fn is_zero(&self) -> bool {
        let m = self.canonical_matrix();
        let zero = m
            .columns()
            .all(|c| self.target.reduce(&c).iter().all(Zero::is_zero));
        zero
    }

    pub fn kernel(&self) -> Subquotient {
        let into = AbMap::zero(&FpAbGroup::zero(), &self.source);
        homology(&into, self).expect("zero map composes to zero")
    }

    pub fn cokernel(&self) -> Subquotient {
        let out = AbMap::zero(&self.target, &FpAbGroup::zero());
        homology(self, &out).expect("zero map composes to zero")
    }

    pub fn image_group(&self) -> FpAbGroup {
        // im ≅ source / ker
        let ker = self.kernel();
        let incl = ker.inclusion();
        incl.cokernel().group
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Is `value` divisible by `d` (with `d = 0` meaning equality to zero)?
pub(crate) fn divisible(value: &BigInt, d: &BigInt) -> bool {
    if d.is_zero() {
        value.is_zero()
    } else {
        value.is_multiple_of(d)
    }
}
