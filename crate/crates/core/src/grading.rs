//! Grading groups inside `Q^k`: exact degree arithmetic, pointedness
//! certificates and enumeration of monomials of a prescribed degree.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// An element of the grading group, as an exact vector in `Q^k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Vec<BigRational>);

impl Degree {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Degree(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Degree(vec![BigRational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Degree(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// One-dimensional integer degree.
    pub fn int(c: i64) -> Self {
        Self::from_ints(&[c])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: i64) -> Degree {
        let k = BigRational::from_integer(k.into());
        Degree(self.0.iter().map(|c| c * &k).collect())
    }

    pub fn scale_big(&self, k: &BigInt) -> Degree {
        let k = BigRational::from_integer(k.clone());
        Degree(self.0.iter().map(|c| c * &k).collect())
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.dim(), rhs.dim(), "degree dimension mismatch");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        assert_eq!(self.dim(), rhs.dim(), "degree dimension mismatch");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", fmt_rational(&self.0[0]));
        }
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Degree({self})")
    }
}

/// Parses an exact rational such as `3`, `-2` or `1/2`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        column: 0,
        message: format!("invalid rational `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for Degree {
    type Err = Error;

    /// `3`, `1/2`, or `(1,0)` for higher dimensions.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let coords = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Degree(coords))
    }
}

/// Dimension, one degree per ring variable, and a weight functional that is
/// positive on every variable degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingSignature {
    dimension: usize,
    generator_degrees: Vec<Degree>,
    weight: Vec<BigRational>,
}

impl GradingSignature {
    pub fn new(
        dimension: usize,
        generator_degrees: Vec<Degree>,
        weight: Vec<BigRational>,
    ) -> Result<Self> {
        let sig = Self::unchecked(dimension, generator_degrees, weight);
        validate_signature(&sig)?;
        Ok(sig)
    }

    /// Builds a signature without checking pointedness.
    pub fn unchecked(
        dimension: usize,
        generator_degrees: Vec<Degree>,
        weight: Vec<BigRational>,
    ) -> Self {
        GradingSignature {
            dimension,
            generator_degrees,
            weight,
        }
    }

    /// `Z`-grading with integer variable degrees and the identity weight.
    pub fn integer(degrees: &[i64]) -> Result<Self> {
        Self::new(
            1,
            degrees.iter().map(|&d| Degree::int(d)).collect(),
            vec![BigRational::from_integer(1.into())],
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_variables(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn generator_degrees(&self) -> &[Degree] {
        &self.generator_degrees
    }

    pub fn weight_functional(&self) -> &[BigRational] {
        &self.weight
    }

    pub fn weight(&self, d: &Degree) -> BigRational {
        d.coords()
            .iter()
            .zip(&self.weight)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.dimension)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        let mut d = self.zero_degree();
        for (e, g) in m.exponents().iter().zip(&self.generator_degrees) {
            if *e > 0 {
                d = &d + &g.scale(*e as i64);
            }
        }
        d
    }

    /// Every monomial `x^a` with `Σ a_i deg(x_i) = g`, in graded-lex order.
    pub fn monomials_of_degree(&self, g: &Degree) -> Vec<Monomial> {
        let n = self.num_variables();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.enumerate(0, g.clone(), &mut exps, &mut out);
        out.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| b.exponents().cmp(a.exponents()))
        });
        out
    }

    fn enumerate(&self, i: usize, rest: Degree, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = self.num_variables();
        if i == n {
            if rest.is_zero() {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let w_rest = self.weight(&rest);
        if w_rest.is_negative() {
            return;
        }
        let d = &self.generator_degrees[i];
        if i + 1 == n {
            let Some(c) = d.coords().iter().position(|x| !x.is_zero()) else {
                return;
            };
            let a = &rest.coords()[c] / &d.coords()[c];
            if !a.is_integer() || a.is_negative() {
                return;
            }
            let a = a.to_integer();
            if d.scale_big(&a) == rest {
                exps[i] = u32::try_from(a).expect("exponent fits in u32");
                out.push(Monomial::new(exps.clone()));
                exps[i] = 0;
            }
            return;
        }
        let w = self.weight(d);
        let max = (&w_rest / &w).floor().to_integer();
        let max = u32::try_from(max).expect("exponent bound fits in u32");
        let mut r = rest;
        for a in 0..=max {
            exps[i] = a;
            self.enumerate(i + 1, r.clone(), exps, out);
            r = &r - d;
        }
        exps[i] = 0;
    }

    /// Degrees `Σ n_i deg(x_i)` of weight at most `max_weight`, sorted.
    pub fn support_degrees(&self, max_weight: &BigRational) -> BTreeSet<Degree> {
        let mut seen = BTreeSet::new();
        let zero = self.zero_degree();
        if self.weight(&zero) > *max_weight {
            return seen;
        }
        let mut frontier = vec![zero];
        while let Some(d) = frontier.pop() {
            if !seen.insert(d.clone()) {
                continue;
            }
            for g in &self.generator_degrees {
                let next = &d + g;
                if self.weight(&next) <= *max_weight && !seen.contains(&next) {
                    frontier.push(next);
                }
            }
        }
        seen
    }

    /// Degrees `shift + s` (for `s` in the monoid support and `shift` among
    /// `shifts`) whose weight lies in `[lo, hi]`, sorted by weight then degree.
    pub fn window_degrees(
        &self,
        shifts: &[Degree],
        lo: &BigRational,
        hi: &BigRational,
    ) -> Vec<Degree> {
        let mut all = BTreeSet::new();
        for a in shifts {
            let room = hi - self.weight(a);
            for s in self.support_degrees(&room) {
                let d = a + &s;
                let w = self.weight(&d);
                if &w >= lo && &w <= hi {
                    all.insert(d);
                }
            }
        }
        let mut v: Vec<Degree> = all.into_iter().collect();
        v.sort_by(|a, b| self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b)));
        v
    }
}

/// Confirms `k ≥ 1`, consistent dimensions, and `w(d) > 0` on every variable degree.
pub fn validate_signature(sig: &GradingSignature) -> Result<()> {
    if sig.dimension == 0 {
        return Err(Error::InvalidSignature(
            "dimension must be at least 1".into(),
        ));
    }
    if sig.weight.len() != sig.dimension {
        return Err(Error::InvalidSignature(format!(
            "weight functional has {} coordinates, expected {}",
            sig.weight.len(),
            sig.dimension
        )));
    }
    for (index, d) in sig.generator_degrees.iter().enumerate() {
        if d.dim() != sig.dimension {
            return Err(Error::InvalidSignature(format!(
                "degree {d} of generator {index} has wrong dimension"
            )));
        }
        let w = sig.weight(d);
        if !w.is_positive() {
            return Err(Error::NotPointed {
                index,
                degree: d.clone(),
                weight: fmt_rational(&w),
            });
        }
    }
    Ok(())
}
