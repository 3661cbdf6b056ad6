use num_bigint::BigInt;

use super::group::{AbMap, FpAbGroup};
use super::homology::Subquotient;
use super::matrix::IntMatrix;

/// `Hom(A, B)` realized as the subgroup of `B^{c_A}` of tuples `(y_i)` with
/// `ord(a_i) · y_i = 0`, where `a_i` runs over the canonical generators of `A`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    source: FpAbGroup,
    target: FpAbGroup,
    sub: Subquotient,
}

impl HomGroup {
    pub fn group(&self) -> &FpAbGroup {
        &self.sub.group
    }

    pub fn source(&self) -> &FpAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbGroup {
        &self.target
    }

    /// The homomorphism represented by an element in canonical coordinates.
    pub fn map_of(&self, canonical: &[BigInt]) -> AbMap {
        let rep = self.sub.representative(canonical);
        let stacked = self.sub.ambient.from_canonical(&rep);
        let cb = self.target.canonical_len();
        let ca = self.source.canonical_len();
        let mut y = IntMatrix::zeros(cb, ca);
        for i in 0..ca {
            for r in 0..cb {
                y[(r, i)] = stacked[i * cb + r].clone();
            }
        }
        let m = &(&self.target.presentation().from_canonical * &y)
            * &self.source.presentation().to_canonical;
        AbMap::new_unchecked(self.source.clone(), self.target.clone(), m)
            .expect("shape by construction")
    }

    /// Canonical coordinates of a homomorphism `A → B`.
    pub fn coords_of(&self, map: &AbMap) -> Vec<BigInt> {
        let y = map.canonical_matrix();
        let stacked: Vec<BigInt> = (0..y.cols()).flat_map(|i| y.column(i)).collect();
        let can = self.sub.ambient.to_canonical(&stacked);
        self.sub
            .element_coords(&can)
            .expect("a well-defined map satisfies the order constraints")
    }

    /// One representing map per canonical generator of the Hom group.
    pub fn generators(&self) -> Vec<AbMap> {
        let n = self.group().canonical_len();
        (0..n)
            .map(|i| {
                let mut e = vec![BigInt::from(0); n];
                e[i] = BigInt::from(1);
                self.map_of(&e)
            })
            .collect()
    }
}

pub fn hom_group(a: &FpAbGroup, b: &FpAbGroup) -> HomGroup {
    let ca = a.canonical_len();
    let cb = b.canonical_len();
    let b_canonical = FpAbGroup::from_relations(b.canonical_relations());
    let copies: Vec<&FpAbGroup> = std::iter::repeat_n(&b_canonical, ca).collect();
    let ambient = FpAbGroup::direct_sum(&copies);
    let mut mult = IntMatrix::zeros(ca * cb, ca * cb);
    for i in 0..ca {
        let d = a.coordinate_order(i);
        for r in 0..cb {
            mult[(i * cb + r, i * cb + r)] = d.clone();
        }
    }
    let constraint =
        AbMap::new(ambient.clone(), ambient, mult).expect("multiplication is well defined");
    HomGroup {
        source: a.clone(),
        target: b.clone(),
        sub: constraint.kernel(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Zero;

    #[test]
    fn basic_homs() {
        assert!(hom_group(&FpAbGroup::cyclic(2), &FpAbGroup::free(1))
            .group()
            .is_zero());
        assert_eq!(
            *hom_group(&FpAbGroup::cyclic(4), &FpAbGroup::cyclic(2)).group(),
            FpAbGroup::cyclic(2)
        );
        assert_eq!(
            *hom_group(&FpAbGroup::free(1), &FpAbGroup::free(1)).group(),
            FpAbGroup::free(1)
        );
    }

    // Brute force: a map Z/m -> Z/n is determined by the image k of 1 with m k ≡ 0 (mod n).
    fn brute_force_count(m: u32, n: u32) -> u32 {
        (0..n).filter(|k| (m * k) % n == 0).count() as u32
    }

    #[test]
    fn hom_cyclic_order_is_gcd() {
        for m in 1..=12u32 {
            for n in 1..=12u32 {
                let h = hom_group(&FpAbGroup::cyclic(m), &FpAbGroup::cyclic(n));
                let expected = brute_force_count(m, n);
                assert_eq!(expected, m.gcd(&n));
                assert_eq!(
                    h.group().order(),
                    Some(BigInt::from(expected)),
                    "Hom(Z/{m}, Z/{n})"
                );
            }
        }
    }

    #[test]
    fn generators_are_well_defined_and_roundtrip() {
        let a = FpAbGroup::from_cyclic_orders(1, &[BigInt::from(4), BigInt::from(6)]);
        let b = FpAbGroup::from_cyclic_orders(1, &[BigInt::from(12)]);
        let h = hom_group(&a, &b);
        for (i, g) in h.generators().iter().enumerate() {
            assert!(g.is_well_defined());
            let c = h.coords_of(g);
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }
}
