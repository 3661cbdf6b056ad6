use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::abelian::FpAbGroup;
use crate::error::{Error, Result};
use crate::grading::{Degree, GradingSignature};
use crate::poly::{parse_polynomial, Monomial, Polynomial};

use super::module::GradedModule;

struct RingData {
    sig: GradingSignature,
    names: Vec<String>,
    ideal: Vec<(Polynomial, Degree)>,
    monomials: Mutex<HashMap<Degree, Arc<Vec<Monomial>>>>,
}

/// `Z[x_1, …, x_n] / I` with a grading signature and a homogeneous ideal.
///
/// Cloning is cheap: clones share the data and the per-degree monomial cache.
#[derive(Clone)]
pub struct GradedRing {
    inner: Arc<RingData>,
}

impl GradedRing {
    /// Ideal generators are checked termwise for homogeneity; zero generators are dropped.
    pub fn new(sig: GradingSignature, names: Vec<String>, ideal: Vec<Polynomial>) -> Result<Self> {
        if names.len() != sig.num_variables() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names for {} variable degrees",
                names.len(),
                sig.num_variables()
            )));
        }
        let mut gens = Vec::new();
        for f in ideal {
            if f.nvars() != names.len() {
                return Err(Error::DimensionMismatch("ideal generator arity".into()));
            }
            match homogeneous_degree(&sig, &f) {
                Ok(Some(d)) => gens.push((f, d)),
                Ok(None) => {}
                Err(_) => {
                    return Err(Error::NotHomogeneous(format!(
                        "ideal generator {}",
                        f.format(&names)
                    )))
                }
            }
        }
        Ok(GradedRing {
            inner: Arc::new(RingData {
                sig,
                names,
                ideal: gens,
                monomials: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn polynomial(sig: GradingSignature, names: Vec<String>) -> Result<Self> {
        Self::new(sig, names, Vec::new())
    }

    /// `Z` with the trivial one-dimensional grading.
    pub fn integers() -> Self {
        Self::new(
            GradingSignature::integer(&[]).expect("empty signature is pointed"),
            vec![],
            vec![],
        )
        .expect("no generators")
    }

    /// `Z[names]` with every variable of the given integer degree.
    pub fn integer_graded(names: &[&str], degrees: &[i64], ideal: &[&str]) -> Result<Self> {
        let sig = GradingSignature::integer(degrees)?;
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let ideal = ideal
            .iter()
            .map(|s| parse_polynomial(s, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sig, names, ideal)
    }

    pub fn sig(&self) -> &GradingSignature {
        &self.inner.sig
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn nvars(&self) -> usize {
        self.inner.names.len()
    }

    pub fn ideal(&self) -> &[(Polynomial, Degree)] {
        &self.inner.ideal
    }

    pub fn zero_degree(&self) -> Degree {
        self.inner.sig.zero_degree()
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        parse_polynomial(s, &self.inner.names)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.inner.names)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.nvars(), i)
    }

    pub fn monomials(&self, g: &Degree) -> Arc<Vec<Monomial>> {
        let mut cache = self
            .inner
            .monomials
            .lock()
            .expect("monomial cache poisoned");
        cache
            .entry(g.clone())
            .or_insert_with(|| Arc::new(self.inner.sig.monomials_of_degree(g)))
            .clone()
    }

    /// Degree of a homogeneous polynomial; `None` for zero.
    pub fn degree_of(&self, p: &Polynomial) -> Result<Option<Degree>> {
        homogeneous_degree(&self.inner.sig, p).map_err(|_| Error::NotHomogeneous(self.format(p)))
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Result<Degree> {
        self.degree_of(p)?
            .ok_or_else(|| Error::NotHomogeneous("the zero element has no degree".into()))
    }

    pub fn is_homogeneous_of(&self, p: &Polynomial, d: &Degree) -> bool {
        p.terms()
            .all(|(m, _)| self.inner.sig.monomial_degree(m) == *d)
    }

    /// Ideal generators whose degree is `g` minus a monomial degree, realized
    /// as polynomials of degree `g`.
    pub(crate) fn ideal_multiples(&self, g: &Degree) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (f, e) in self.ideal() {
            for m in self.monomials(&(g - e)).iter() {
                out.push(f.mul_monomial(m));
            }
        }
        out
    }

    /// The ring as a free module of rank one on a generator in degree 0.
    pub fn as_module(&self) -> GradedModule {
        GradedModule::free(self, vec![self.zero_degree()])
    }

    pub fn same_as(&self, other: &GradedRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.sig == other.inner.sig
                && self.inner.names == other.inner.names
                && self.inner.ideal == other.inner.ideal)
    }
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .names()
            .iter()
            .zip(self.sig().generator_degrees())
            .map(|(n, d)| format!("{n}:{d}"))
            .collect();
        let ideal: Vec<String> = self.ideal().iter().map(|(p, _)| self.format(p)).collect();
        write!(f, "Z[{}]", vars.join(", "))?;
        if !ideal.is_empty() {
            write!(f, "/({})", ideal.join(", "))?;
        }
        Ok(())
    }
}

fn homogeneous_degree(
    sig: &GradingSignature,
    p: &Polynomial,
) -> std::result::Result<Option<Degree>, ()> {
    let mut deg: Option<Degree> = None;
    for (m, _) in p.terms() {
        let d = sig.monomial_degree(m);
        match &deg {
            None => deg = Some(d),
            Some(e) if *e == d => {}
            Some(_) => return Err(()),
        }
    }
    Ok(deg)
}

/// The degree-`g` piece of a graded ring with its traced monomial basis.
#[derive(Clone, Debug)]
pub struct RingPiece {
    pub degree: Degree,
    pub basis: Vec<Monomial>,
    pub group: FpAbGroup,
}

/// `R_g` as `Z{monomials of degree g} / span{m·f}`.
pub fn ring_piece(ring: &GradedRing, g: &Degree) -> RingPiece {
    let piece = ring.as_module().piece(g);
    RingPiece {
        degree: g.clone(),
        basis: piece.basis.iter().map(|(_, m)| m.clone()).collect(),
        group: piece.group.clone(),
    }
}

/// Splits a polynomial into homogeneous components.
pub fn decompose(ring: &GradedRing, element: &Polynomial) -> BTreeMap<Degree, Polynomial> {
    let mut out: BTreeMap<Degree, Polynomial> = BTreeMap::new();
    for (m, c) in element.terms() {
        let d = ring.sig().monomial_degree(m);
        out.entry(d)
            .or_insert_with(|| Polynomial::zero(ring.nvars()))
            .add_term(m.clone(), c.clone());
    }
    out
}
