use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{hom_group, AbMap, FpAbGroup, HomGroup, IntMatrix, Subquotient};
use crate::error::{Error, Result};
use crate::grading::Degree;

use super::map::GradedMap;
use super::module::GradedModule;

/// Degree-preserving `R`-linear maps `M → N`.
///
/// Realized as the kernel of `⊕_j N_{a_j} → ⊕_c N_{b_c}`, `(y_j) ↦ (Σ_j P[j][c] y_j)`.
#[derive(Clone, Debug)]
pub struct GradedHom {
    source: GradedModule,
    target: GradedModule,
    sub: Subquotient,
    blocks: Vec<usize>,
}

impl GradedHom {
    pub fn group(&self) -> &FpAbGroup {
        &self.sub.group
    }

    /// The graded map represented by ambient presentation coordinates.
    fn map_from_ambient(&self, coords: &[BigInt]) -> GradedMap {
        let mut images = Vec::with_capacity(self.source.num_generators());
        let mut at = 0;
        for (j, a) in self.source.shifts().iter().enumerate() {
            let piece = self.target.piece(a);
            images.push(piece.element(&coords[at..at + self.blocks[j]]));
            at += self.blocks[j];
        }
        GradedMap::unchecked(
            &self.source,
            &self.target,
            images,
            self.source.ring().zero_degree(),
        )
        .expect("shape by construction")
    }

    /// The map for an element in canonical coordinates of `group`.
    pub fn map_of(&self, canonical: &[BigInt]) -> GradedMap {
        let rep = self.sub.representative(canonical);
        self.map_from_ambient(&self.sub.ambient.from_canonical(&rep))
    }

    /// One map per presentation generator of `group` (the kernel lattice basis).
    pub fn generators(&self) -> Vec<GradedMap> {
        self.sub
            .cycles
            .columns()
            .map(|c| self.map_from_ambient(&self.sub.ambient.from_canonical(&c)))
            .collect()
    }

    /// `Σ c_k φ_k` over the generators.
    pub fn combination(&self, coefficients: &[BigInt]) -> GradedMap {
        let mut amb = vec![BigInt::zero(); self.sub.ambient.canonical_len()];
        for (k, col) in self.sub.cycles.columns().enumerate() {
            for (x, c) in amb.iter_mut().zip(&col) {
                *x += &coefficients[k] * c;
            }
        }
        self.map_from_ambient(&self.sub.ambient.from_canonical(&amb))
    }
}

pub fn graded_hom(m: &GradedModule, n: &GradedModule) -> Result<GradedHom> {
    if !m.ring().same_as(n.ring()) {
        return Err(Error::RingMismatch);
    }
    let gen_pieces: Vec<_> = m.shifts().iter().map(|a| n.piece(a)).collect();
    let rel_pieces: Vec<_> = m.relations().iter().map(|r| n.piece(&r.degree)).collect();
    let blocks: Vec<usize> = gen_pieces.iter().map(|p| p.dimension()).collect();
    let src = FpAbGroup::direct_sum(&gen_pieces.iter().map(|p| &p.group).collect::<Vec<_>>());
    let tgt = FpAbGroup::direct_sum(&rel_pieces.iter().map(|p| &p.group).collect::<Vec<_>>());
    let mut columns = Vec::with_capacity(src.num_generators());
    for (j, gp) in gen_pieces.iter().enumerate() {
        for b in 0..gp.dimension() {
            let mut unit = vec![BigInt::zero(); gp.dimension()];
            unit[b] = BigInt::from(1);
            let y = gp.element(&unit);
            let mut col = Vec::with_capacity(tgt.num_generators());
            for (c, r) in m.relations().iter().enumerate() {
                let image = y.mul_ring(&r.element.0[j]);
                col.extend(rel_pieces[c].coords(&image)?);
            }
            columns.push(col);
        }
    }
    let constraint = AbMap::new(
        src,
        tgt.clone(),
        IntMatrix::from_columns(tgt.num_generators(), &columns),
    )?;
    Ok(GradedHom {
        source: m.clone(),
        target: n.clone(),
        sub: constraint.kernel(),
        blocks,
    })
}

/// Outcome of comparing graded Homs with degreewise-compatible families.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub degrees: Vec<Degree>,
    /// Graded `R`-linear maps.
    pub graded: FpAbGroup,
    /// Families `(φ_g)` of group maps commuting with every variable inside the window.
    pub degreewise: FpAbGroup,
    /// Whether the window contains every generator and relation degree of the source.
    pub window_covers_presentation: bool,
    /// Kernel and cokernel of the comparison map; both zero when the sides agree.
    pub comparison_kernel: FpAbGroup,
    pub comparison_cokernel: FpAbGroup,
}

impl FiberReport {
    pub fn equal(&self) -> bool {
        self.comparison_kernel.is_zero() && self.comparison_cokernel.is_zero()
    }
}

/// Compares `Hom_gr(M, N)` with the families of degreewise maps commuting
/// with multiplication by the ring variables, over pieces of weight at most `bound`.
pub fn graded_hom_fiber_check(
    m: &GradedModule,
    n: &GradedModule,
    bound: &BigRational,
) -> Result<FiberReport> {
    let side_a = graded_hom(m, n)?;
    let ring = m.ring();
    let sig = ring.sig();
    let degrees = match m.min_weight() {
        Some(lo) => m.window(&lo, bound),
        None => Vec::new(),
    };
    let covers = m
        .shifts()
        .iter()
        .chain(m.relations().iter().map(|r| &r.degree))
        .all(|d| sig.weight(d) <= *bound);

    // Ambient: ⊕_g Hom(M_g, N_g), presented on canonical generators.
    let homs: Vec<HomGroup> = degrees
        .iter()
        .map(|g| hom_group(&m.piece_group(g), &n.piece_group(g)))
        .collect();
    let models: Vec<FpAbGroup> = homs.iter().map(|h| h.group().canonical_model()).collect();
    let ambient = FpAbGroup::direct_sum(&models.iter().collect::<Vec<_>>());
    let position: BTreeMap<&Degree, usize> =
        degrees.iter().enumerate().map(|(i, g)| (g, i)).collect();

    // Constraints φ_{g+d} ∘ x − x ∘ φ_g for each variable x of degree d.
    let mut constraints = Vec::new();
    for (gi, g) in degrees.iter().enumerate() {
        for (v, d) in sig.generator_degrees().iter().enumerate() {
            let h = g + d;
            if let Some(&hi) = position.get(&h) {
                let x = ring.variable(v);
                let xm = GradedMap::multiplication(m, &x, d)?.realize(g);
                let xn = GradedMap::multiplication(n, &x, d)?.realize(g);
                let target = hom_group(xm.source(), xn.target());
                constraints.push((gi, hi, xm, xn, target));
            }
        }
    }
    let models_c: Vec<FpAbGroup> = constraints
        .iter()
        .map(|c| c.4.group().canonical_model())
        .collect();
    let constraint_group = FpAbGroup::direct_sum(&models_c.iter().collect::<Vec<_>>());
    let mut columns = Vec::with_capacity(ambient.num_generators());
    for (gi, hom) in homs.iter().enumerate() {
        for psi in hom.generators() {
            let mut col = Vec::with_capacity(constraint_group.num_generators());
            for (cg, ch, xm, xn, target) in &constraints {
                let mut diff = AbMap::zero(xm.source(), xn.target());
                if *ch == gi {
                    diff = diff.add(&psi.compose(xm)?)?;
                }
                if *cg == gi {
                    diff = diff.sub(&xn.compose(&psi)?)?;
                }
                col.extend(target.coords_of(&diff));
            }
            columns.push(col);
        }
    }
    let commute = AbMap::new(
        ambient.clone(),
        constraint_group.clone(),
        IntMatrix::from_columns(constraint_group.num_generators(), &columns),
    )?;
    let side_b = commute.kernel();

    // Comparison: realize each graded generator in every window degree.
    let mut comp_columns = Vec::new();
    for phi in side_a.generators() {
        let mut coords = Vec::with_capacity(ambient.num_generators());
        for (g, hom) in degrees.iter().zip(&homs) {
            coords.extend(hom.coords_of(&phi.realize(g)));
        }
        let canon = ambient.to_canonical(&coords);
        let in_b = side_b.element_coords(&canon).ok_or_else(|| {
            Error::IllDefinedMap("graded map does not commute with the variables".into())
        })?;
        comp_columns.push(side_b.group.from_canonical(&in_b));
    }
    let comparison = AbMap::new(
        side_a.group().clone(),
        side_b.group.clone(),
        IntMatrix::from_columns(side_b.group.num_generators(), &comp_columns),
    )?;
    Ok(FiberReport {
        degrees,
        graded: side_a.group().clone(),
        degreewise: side_b.group.clone(),
        window_covers_presentation: covers,
        comparison_kernel: comparison.kernel().group,
        comparison_cokernel: comparison.cokernel().group,
    })
}

/// Sample linear combinations of graded-Hom generators.
pub fn graded_map_from_coefficients(hom: &GradedHom, coefficients: &[i64]) -> GradedMap {
    let c: Vec<BigInt> = coefficients.iter().map(|&k| BigInt::from(k)).collect();
    hom.combination(&c)
}
