use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graded_algebra::ModuleElement;
use crate::grading::Degree;
use crate::poly::Polynomial;

/// Values that can sit in front of `t^g`.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn coeff_is_zero(&self) -> bool;
    fn coeff_add(&self, other: &Self) -> Self;
}

impl Coefficient for BigInt {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coeff_add(&self, other: &Self) -> Self {
        self + other
    }
}

impl Coefficient for Polynomial {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coeff_add(&self, other: &Self) -> Self {
        self.add(other)
    }
}

impl Coefficient for ModuleElement {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coeff_add(&self, other: &Self) -> Self {
        self.add(other)
    }
}

/// A finite sum `Σ_g c_g t^g` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement<T> {
    terms: BTreeMap<Degree, T>,
}

/// A formal sum over pairs, `Σ c_{g,h} t^g ⊗ t^h`.
pub type GroupRingTensor<T> = BTreeMap<(Degree, Degree), T>;

impl<T: Coefficient> Default for GroupRingElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> GroupRingElement<T> {
    pub fn zero() -> Self {
        GroupRingElement {
            terms: BTreeMap::new(),
        }
    }

    /// `c·t^g`.
    pub fn monomial(c: T, g: Degree) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Degree, T)>) -> Self {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    }

    pub fn add_term(&mut self, g: Degree, c: T) {
        let merged = match self.terms.remove(&g) {
            Some(old) => old.coeff_add(&c),
            None => c,
        };
        if !merged.coeff_is_zero() {
            self.terms.insert(g, merged);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Degree, T> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Degree> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, g: &Degree) -> Option<&T> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    /// `Δ(c t^g) = c (t^g ⊗ t^g)`.
    pub fn comultiply(&self) -> GroupRingTensor<T> {
        self.terms
            .iter()
            .map(|(g, c)| ((g.clone(), g.clone()), c.clone()))
            .collect()
    }

    /// `e(Σ c_g t^g) = Σ c_g`; `zero` is returned for the empty sum.
    pub fn counit(&self, zero: &T) -> T {
        self.terms
            .values()
            .fold(zero.clone(), |acc, c| acc.coeff_add(c))
    }

    /// `ι(c t^g) = c t^{−g}`.
    pub fn antipode(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(g, c)| (-g, c.clone())).collect(),
        }
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> GroupRingElement<U> {
        GroupRingElement::from_terms(self.terms.iter().map(|(g, c)| (g.clone(), f(c))))
    }

    /// The single `(g, c)` of a one-term sum.
    pub fn as_pure(&self) -> Option<(&Degree, &T)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl GroupRingElement<Polynomial> {
    /// `(Σ a_g t^g)(Σ b_h t^h) = Σ a_g b_h t^{g+h}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g + h, a.mul(b));
            }
        }
        out
    }
}

/// Adds a tensor term, dropping zeros.
pub fn tensor_add<T: Coefficient>(t: &mut GroupRingTensor<T>, key: (Degree, Degree), c: T) {
    let merged = match t.remove(&key) {
        Some(old) => old.coeff_add(&c),
        None => c,
    };
    if !merged.coeff_is_zero() {
        t.insert(key, merged);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn comultiply_is_diagonal() {
        let x = GroupRingElement::from_terms([(Degree::int(0), int(2)), (Degree::int(1), int(3))]);
        let d = x.comultiply();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&(Degree::int(1), Degree::int(1))], int(3));
        assert!(GroupRingElement::<BigInt>::zero().comultiply().is_empty());
    }

    #[test]
    fn counit_and_antipode() {
        let x = GroupRingElement::monomial(int(5), Degree::int(3));
        assert_eq!(x.counit(&int(0)), int(5));
        assert_eq!(GroupRingElement::<BigInt>::zero().counit(&int(0)), int(0));
        assert_eq!(x.antipode().support(), vec![Degree::int(-3)]);
        assert_eq!(x.antipode().antipode(), x);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = GroupRingElement::from_terms([(Degree::int(1), int(2)), (Degree::int(1), int(-2))]);
        assert!(x.is_zero());
        assert!(GroupRingElement::monomial(int(0), Degree::int(4)).is_zero());
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let a = GroupRingElement::monomial(Polynomial::variable(1, 0), Degree::int(1));
        let b = a.mul(&a);
        assert_eq!(b.support(), vec![Degree::int(2)]);
        assert_eq!(
            b.coefficient(&Degree::int(2)),
            Some(&Polynomial::variable(1, 0).pow(2))
        );
    }
}
