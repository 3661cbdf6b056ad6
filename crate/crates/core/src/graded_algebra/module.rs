use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{FpAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::poly::{Monomial, Polynomial};

use super::ring::GradedRing;

/// An element of a graded-free module `⊕_j R e_j`, one polynomial per generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleElement(pub Vec<Polynomial>);

impl ModuleElement {
    pub fn zero(ngens: usize, nvars: usize) -> Self {
        ModuleElement(vec![Polynomial::zero(nvars); ngens])
    }

    pub fn basis(ngens: usize, nvars: usize, j: usize) -> Self {
        let mut e = Self::zero(ngens, nvars);
        e.0[j] = Polynomial::one(nvars);
        e
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement(self.0.iter().map(Polynomial::neg).collect())
    }

    pub fn scale(&self, k: &BigInt) -> ModuleElement {
        ModuleElement(self.0.iter().map(|p| p.scale(k)).collect())
    }

    /// `r · self`.
    pub fn mul_ring(&self, r: &Polynomial) -> ModuleElement {
        ModuleElement(self.0.iter().map(|p| r.mul(p)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ModuleElement {
        ModuleElement(self.0.iter().map(|p| p.mul_monomial(m)).collect())
    }

    /// Concatenation, for direct sums.
    pub fn concat(parts: &[&ModuleElement]) -> ModuleElement {
        ModuleElement(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }
}

/// A relation column of a presentation: its degree and one entry per generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub degree: Degree,
    pub element: ModuleElement,
}

/// The degree-`g` piece of a graded module with its traced basis `(generator, monomial)`.
#[derive(Clone, Debug)]
pub struct ModulePiece {
    pub degree: Degree,
    pub basis: Vec<(usize, Monomial)>,
    pub group: FpAbGroup,
    index: HashMap<(usize, Monomial), usize>,
    ngens: usize,
    nvars: usize,
}

impl ModulePiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Presentation coordinates of a homogeneous element of this degree.
    pub fn coords(&self, e: &ModuleElement) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.basis.len()];
        for (j, p) in e.0.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.index.get(&(j, m.clone())).ok_or_else(|| {
                    Error::NotHomogeneous(format!(
                        "term in component {j} is not of degree {}",
                        self.degree
                    ))
                })?;
                v[*i] += c;
            }
        }
        Ok(v)
    }

    pub fn canonical(&self, e: &ModuleElement) -> Result<Vec<BigInt>> {
        Ok(self.group.to_canonical(&self.coords(e)?))
    }

    pub fn element(&self, coords: &[BigInt]) -> ModuleElement {
        let mut e = ModuleElement::zero(self.ngens, self.nvars);
        for ((j, m), c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                e.0[*j].add_term(m.clone(), c.clone());
            }
        }
        e
    }

    /// Is a homogeneous element of this degree zero in the module?
    pub fn is_zero_element(&self, e: &ModuleElement) -> Result<bool> {
        Ok(self.group.is_zero_element(&self.coords(e)?))
    }
}

struct ModuleData {
    ring: GradedRing,
    shifts: Vec<Degree>,
    relations: Vec<Relation>,
    pieces: Mutex<HashMap<Degree, Arc<ModulePiece>>>,
}

/// `(⊕_j R(−a_j)) / (relations)`, with generator `e_j` in degree `a_j`.
///
/// Pieces are computed on demand and cached; clones share the cache.
#[derive(Clone)]
pub struct GradedModule {
    inner: Arc<ModuleData>,
}

impl GradedModule {
    /// Builds a module from shifts and relation elements; each relation must be homogeneous.
    pub fn new(
        ring: &GradedRing,
        shifts: Vec<Degree>,
        relations: Vec<ModuleElement>,
    ) -> Result<Self> {
        let dim = ring.sig().dimension();
        if let Some(a) = shifts.iter().find(|a| a.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "generator shift {a} has wrong dimension"
            )));
        }
        let mut rels = Vec::new();
        for r in relations {
            if r.len() != shifts.len() || r.0.iter().any(|p| p.nvars() != ring.nvars()) {
                return Err(Error::DimensionMismatch("relation has wrong shape".into()));
            }
            if let Some(degree) = element_degree(ring, &shifts, &r)? {
                rels.push(Relation { degree, element: r });
            }
        }
        Ok(Self::from_parts(ring.clone(), shifts, rels))
    }

    /// Builds a module from relation columns with declared degrees, checking
    /// each entry `P[j][c]` is homogeneous of degree `b_c − a_j`.
    pub fn with_relation_degrees(
        ring: &GradedRing,
        shifts: Vec<Degree>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        for r in &relations {
            if r.element.len() != shifts.len() {
                return Err(Error::DimensionMismatch("relation has wrong shape".into()));
            }
            for (j, p) in r.element.0.iter().enumerate() {
                if !ring.is_homogeneous_of(p, &(&r.degree - &shifts[j])) {
                    return Err(Error::NotHomogeneous(format!(
                        "relation entry {} for generator {j} is not of degree {}",
                        ring.format(p),
                        &r.degree - &shifts[j]
                    )));
                }
            }
        }
        Ok(Self::from_parts(ring.clone(), shifts, relations))
    }

    fn from_parts(ring: GradedRing, shifts: Vec<Degree>, relations: Vec<Relation>) -> Self {
        GradedModule {
            inner: Arc::new(ModuleData {
                ring,
                shifts,
                relations,
                pieces: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn free(ring: &GradedRing, shifts: Vec<Degree>) -> Self {
        Self::from_parts(ring.clone(), shifts, Vec::new())
    }

    pub fn zero(ring: &GradedRing) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R / (f_1, …, f_k)` as a cyclic module generated in degree 0.
    pub fn cyclic(ring: &GradedRing, relations: &[Polynomial]) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|f| ModuleElement(vec![f.clone()]))
            .collect();
        Self::new(ring, vec![ring.zero_degree()], rels)
    }

    pub fn ring(&self) -> &GradedRing {
        &self.inner.ring
    }

    pub fn shifts(&self) -> &[Degree] {
        &self.inner.shifts
    }

    pub fn relations(&self) -> &[Relation] {
        &self.inner.relations
    }

    pub fn num_generators(&self) -> usize {
        self.inner.shifts.len()
    }

    pub fn is_free(&self) -> bool {
        self.inner.relations.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.inner.ring.nvars()
    }

    pub fn zero_element(&self) -> ModuleElement {
        ModuleElement::zero(self.num_generators(), self.nvars())
    }

    pub fn generator(&self, j: usize) -> ModuleElement {
        ModuleElement::basis(self.num_generators(), self.nvars(), j)
    }

    /// `r · e_j`.
    pub fn element_on(&self, j: usize, r: Polynomial) -> ModuleElement {
        let mut e = self.zero_element();
        e.0[j] = r;
        e
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree_of(&self, e: &ModuleElement) -> Result<Option<Degree>> {
        element_degree(self.ring(), self.shifts(), e)
    }

    /// Splits an element into homogeneous components, keyed by degree.
    pub fn decompose(&self, e: &ModuleElement) -> BTreeMap<Degree, ModuleElement> {
        let sig = self.ring().sig();
        let mut out: BTreeMap<Degree, ModuleElement> = BTreeMap::new();
        for (j, p) in e.0.iter().enumerate() {
            for (m, c) in p.terms() {
                let d = &sig.monomial_degree(m) + &self.shifts()[j];
                out.entry(d).or_insert_with(|| self.zero_element()).0[j]
                    .add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The degree-`g` component `p_g(e)`.
    pub fn homogeneous_component(&self, e: &ModuleElement, g: &Degree) -> ModuleElement {
        self.decompose(e)
            .remove(g)
            .unwrap_or_else(|| self.zero_element())
    }

    /// Smallest weight of a generator, if any.
    pub fn min_weight(&self) -> Option<BigRational> {
        self.shifts()
            .iter()
            .map(|a| self.ring().sig().weight(a))
            .min()
    }

    /// `M(g)`: generator shifts `a_j − g`, so that `M(g)_h = M_{g+h}`.
    pub fn shift(&self, g: &Degree) -> GradedModule {
        let shifts = self.shifts().iter().map(|a| a - g).collect();
        let relations = self
            .relations()
            .iter()
            .map(|r| Relation {
                degree: &r.degree - g,
                element: r.element.clone(),
            })
            .collect();
        Self::from_parts(self.ring().clone(), shifts, relations)
    }

    pub fn direct_sum(parts: &[&GradedModule]) -> Result<GradedModule> {
        let Some(first) = parts.first() else {
            return Err(Error::DimensionMismatch(
                "direct sum of no modules needs a ring".into(),
            ));
        };
        let ring = first.ring().clone();
        if parts.iter().any(|m| !m.ring().same_as(&ring)) {
            return Err(Error::RingMismatch);
        }
        let total: usize = parts.iter().map(|m| m.num_generators()).sum();
        let mut shifts = Vec::with_capacity(total);
        let mut relations = Vec::new();
        let mut offset = 0;
        for m in parts {
            shifts.extend(m.shifts().iter().cloned());
            for r in m.relations() {
                let mut e = ModuleElement::zero(total, ring.nvars());
                for (j, p) in r.element.0.iter().enumerate() {
                    e.0[offset + j] = p.clone();
                }
                relations.push(Relation {
                    degree: r.degree.clone(),
                    element: e,
                });
            }
            offset += m.num_generators();
        }
        Ok(Self::from_parts(ring, shifts, relations))
    }

    /// The module with additional homogeneous relations.
    pub fn quotient(&self, extra: Vec<ModuleElement>) -> Result<GradedModule> {
        let mut relations = self.relations().to_vec();
        for e in extra {
            if e.len() != self.num_generators() {
                return Err(Error::DimensionMismatch("relation has wrong shape".into()));
            }
            if let Some(degree) = self.degree_of(&e)? {
                relations.push(Relation { degree, element: e });
            }
        }
        Ok(Self::from_parts(
            self.ring().clone(),
            self.shifts().to_vec(),
            relations,
        ))
    }

    /// `M / I^n M` for `I = (f_1, …, f_r)`; `n = 0` gives the zero quotient.
    pub fn ideal_power_quotient(&self, fs: &[Polynomial], n: u32) -> Result<GradedModule> {
        let products = ideal_power_generators(self.ring(), fs, n)?;
        let mut extra = Vec::new();
        for j in 0..self.num_generators() {
            for p in &products {
                extra.push(self.element_on(j, p.clone()));
            }
        }
        self.quotient(extra)
    }

    /// The degree-`g` piece with its traced basis.
    pub fn piece(&self, g: &Degree) -> Arc<ModulePiece> {
        if let Some(p) = self
            .inner
            .pieces
            .lock()
            .expect("piece cache poisoned")
            .get(g)
        {
            return p.clone();
        }
        let piece = Arc::new(self.compute_piece(g));
        self.inner
            .pieces
            .lock()
            .expect("piece cache poisoned")
            .entry(g.clone())
            .or_insert(piece)
            .clone()
    }

    fn compute_piece(&self, g: &Degree) -> ModulePiece {
        let ring = self.ring();
        let mut basis = Vec::new();
        for (j, a) in self.shifts().iter().enumerate() {
            for m in ring.monomials(&(g - a)).iter() {
                basis.push((j, m.clone()));
            }
        }
        let index: HashMap<(usize, Monomial), usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let mut piece = ModulePiece {
            degree: g.clone(),
            basis,
            group: FpAbGroup::zero(),
            index,
            ngens: self.num_generators(),
            nvars: self.nvars(),
        };
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for (j, a) in self.shifts().iter().enumerate() {
            for f in ring.ideal_multiples(&(g - a)) {
                columns.push(
                    piece
                        .coords(&self.element_on(j, f))
                        .expect("ideal multiple has degree g"),
                );
            }
        }
        for r in self.relations() {
            for m in ring.monomials(&(g - &r.degree)).iter() {
                let e = r.element.mul_monomial(m);
                columns.push(piece.coords(&e).expect("relation multiple has degree g"));
            }
        }
        piece.group =
            FpAbGroup::from_relations(IntMatrix::from_columns(piece.basis.len(), &columns));
        piece
    }

    /// `module_piece` as a bare group.
    pub fn piece_group(&self, g: &Degree) -> FpAbGroup {
        self.piece(g).group.clone()
    }

    /// Degrees in the support of the free cover with weight in `[lo, hi]`.
    pub fn window(&self, lo: &BigRational, hi: &BigRational) -> Vec<Degree> {
        self.ring().sig().window_degrees(self.shifts(), lo, hi)
    }

    pub fn same_as(&self, other: &GradedModule) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ring == other.inner.ring
                && self.inner.shifts == other.inner.shifts
                && self.inner.relations == other.inner.relations)
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shifts: Vec<String> = self.shifts().iter().map(|a| format!("R(-{a})")).collect();
        write!(f, "{:?}-module ", self.ring())?;
        if shifts.is_empty() {
            write!(f, "0")
        } else {
            write!(
                f,
                "{} / {} relations",
                shifts.join(" + "),
                self.relations().len()
            )
        }
    }
}

/// `module_piece(M, g)`.
pub fn module_piece(m: &GradedModule, g: &Degree) -> FpAbGroup {
    m.piece_group(g)
}

pub fn shift(m: &GradedModule, g: &Degree) -> GradedModule {
    m.shift(g)
}

fn element_degree(
    ring: &GradedRing,
    shifts: &[Degree],
    e: &ModuleElement,
) -> Result<Option<Degree>> {
    let mut deg: Option<Degree> = None;
    for (j, p) in e.0.iter().enumerate() {
        let Some(d) = ring.degree_of(p)? else {
            continue;
        };
        let total = &d + &shifts[j];
        match &deg {
            None => deg = Some(total),
            Some(t) if *t == total => {}
            Some(t) => {
                return Err(Error::NotHomogeneous(format!(
                    "components have degrees {t} and {total}"
                )))
            }
        }
    }
    Ok(deg)
}

/// All products `f_{i_1} ⋯ f_{i_n}` (multisets of size `n`); `n = 0` gives `[1]`.
pub fn ideal_power_generators(
    ring: &GradedRing,
    fs: &[Polynomial],
    n: u32,
) -> Result<Vec<Polynomial>> {
    for f in fs {
        ring.degree_of(f)?;
    }
    let mut out = Vec::new();
    fn rec(fs: &[Polynomial], start: usize, left: u32, acc: Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            if !acc.is_zero() {
                out.push(acc);
            }
            return;
        }
        for i in start..fs.len() {
            rec(fs, i, left - 1, acc.mul(&fs[i]), out);
        }
    }
    rec(fs, 0, n, ring.one(), &mut out);
    Ok(out)
}
