use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::abelian::{AbMap, FpAbGroup};
use crate::derived::{derived_quotient, GradedComplex, KoszulData};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub enum VanishReason {
    /// The group is zero outright.
    ZeroPiece,
    /// The pieces `π_i(C)_{g − k·deg f}` are zero for `k ≥ steps` by weight.
    Weight { steps: usize },
    /// `f^power` acts as zero on the (constant) tower.
    Nilpotent { power: u32 },
}

/// Certainty-annotated vanishing of `π_i` of `lim(⋯ →f→ C(−deg f) →f→ C)` in one degree.
#[derive(Clone, Debug, PartialEq)]
pub enum TelescopeVerdict {
    Vanishes(VanishReason),
    /// `f` acts invertibly on a nonzero constant tower, whose limit is the witness.
    NonVanishing {
        witness: FpAbGroup,
    },
    Undetermined,
}

fn min_weight(c: &GradedComplex) -> Option<BigRational> {
    c.terms().values().filter_map(|m| m.min_weight()).min()
}

/// Decides the telescope in homological index `i`, degree `g`, looking at most
/// `depth` steps down the tower.
pub fn telescope(
    c: &GradedComplex,
    f: &Polynomial,
    i: i64,
    g: &Degree,
    depth: u32,
) -> Result<TelescopeVerdict> {
    let ring = c.ring();
    let e = ring.homogeneous_degree(f)?;
    let sig = ring.sig();
    if e.is_zero() {
        let h = c.homology_at(i, g)?;
        if h.group.is_zero() {
            return Ok(TelescopeVerdict::Vanishes(VanishReason::ZeroPiece));
        }
        let act = c.multiplication(f, &e)?.induced(i, g, &h, &h)?;
        if act.is_isomorphism() {
            return Ok(TelescopeVerdict::NonVanishing { witness: h.group });
        }
        let mut power = act.clone();
        for k in 1..=depth {
            if power.is_zero() {
                return Ok(TelescopeVerdict::Vanishes(VanishReason::Nilpotent {
                    power: k,
                }));
            }
            power = act.compose(&power)?;
        }
        return Ok(TelescopeVerdict::Undetermined);
    }
    let Some(lowest) = min_weight(c) else {
        return Ok(TelescopeVerdict::Vanishes(VanishReason::ZeroPiece));
    };
    let we = sig.weight(&e);
    let wg = sig.weight(g);
    let steps = if wg < lowest {
        0
    } else {
        ((wg - &lowest) / &we)
            .floor()
            .to_integer()
            .to_usize()
            .map_or(usize::MAX, |k| k + 1)
    };
    if steps == 0 && c.homology_at(i, g)?.group.is_zero() {
        return Ok(TelescopeVerdict::Vanishes(VanishReason::ZeroPiece));
    }
    if steps <= depth as usize {
        return Ok(TelescopeVerdict::Vanishes(VanishReason::Weight { steps }));
    }
    Ok(TelescopeVerdict::Undetermined)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    CertifiedYes,
    CertifiedNo,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub verdict: Completeness,
    /// `(generator index, homological index, degree) → verdict`.
    pub telescopes: BTreeMap<(usize, i64, Degree), TelescopeVerdict>,
}

/// Derived `I`-completeness on a window: every telescope of every generator vanishes.
/// A yes is relative to the window; a no is witnessed by an invertible action.
pub fn is_derived_gradedwise_complete(
    c: &GradedComplex,
    fs: &[Polynomial],
    window: &[Degree],
    depth: u32,
) -> Result<CompletenessReport> {
    let mut telescopes = BTreeMap::new();
    let indices: Vec<i64> = c
        .bounds()
        .map(|(lo, hi)| (lo..=hi).collect())
        .unwrap_or_default();
    for (k, f) in fs.iter().enumerate() {
        for &i in &indices {
            for g in window {
                telescopes.insert((k, i, g.clone()), telescope(c, f, i, g, depth)?);
            }
        }
    }
    let verdict = if telescopes
        .values()
        .any(|t| matches!(t, TelescopeVerdict::NonVanishing { .. }))
    {
        Completeness::CertifiedNo
    } else if telescopes
        .values()
        .all(|t| matches!(t, TelescopeVerdict::Vanishes(_)))
    {
        Completeness::CertifiedYes
    } else {
        Completeness::Undetermined
    };
    Ok(CompletenessReport {
        verdict,
        telescopes,
    })
}

#[derive(Clone, Debug)]
pub struct NakayamaReport {
    pub connectivity: i64,
    /// The window closed downward to the bottom of the support.
    pub window: Vec<Degree>,
    /// `π_i(C/^L I)` vanishes below `connectivity` on the window.
    pub quotient_connective: bool,
    /// Asserted: `π_i(C)` vanishes below `connectivity` on the window.
    pub asserted: bool,
    /// `(index, degree)` contradicting an assertion.
    pub counterexamples: Vec<(i64, Degree)>,
}

impl NakayamaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Derived Nakayama on a window: for certified-complete `C`, connectivity of
/// `C/^L I` below `m` forces connectivity of `C`.
pub fn derived_nakayama_check(
    c: &GradedComplex,
    fs: &[Polynomial],
    m: i64,
    window: &[Degree],
    depth: u32,
) -> Result<NakayamaReport> {
    let sig = c.ring().sig();
    let shifts: Vec<Degree> = c
        .terms()
        .values()
        .flat_map(|t| t.shifts().to_vec())
        .collect();
    let top = window.iter().map(|g| sig.weight(g)).max();
    let closed = match (min_weight(c), top) {
        (Some(lo), Some(hi)) => {
            let mut v = sig.window_degrees(&shifts, &lo, &hi);
            v.retain(|d| sig.weight(d) <= hi);
            v
        }
        _ => Vec::new(),
    };
    let mut full = closed.clone();
    for g in window {
        if !full.contains(g) {
            full.push(g.clone());
        }
    }
    full.sort();
    let report = is_derived_gradedwise_complete(c, fs, &full, depth)?;
    if report.verdict != Completeness::CertifiedYes {
        return Err(Error::PreconditionNotCertified(format!(
            "completeness is {:?} on the downward-closed window",
            report.verdict
        )));
    }
    let q = derived_quotient(c, &KoszulData::new(c.ring(), fs, 1)?)?;
    let lo = c.bounds().map(|b| b.0).unwrap_or(m);
    let mut quotient_connective = true;
    'outer: for i in lo..m {
        for g in &full {
            if !q.homotopy_group(i, g)?.is_zero() {
                quotient_connective = false;
                break 'outer;
            }
        }
    }
    let mut counterexamples = Vec::new();
    if quotient_connective {
        for i in lo..m {
            for g in &full {
                if !c.homotopy_group(i, g)?.is_zero() {
                    counterexamples.push((i, g.clone()));
                }
            }
        }
    }
    Ok(NakayamaReport {
        connectivity: m,
        window: full,
        quotient_connective,
        asserted: quotient_connective,
        counterexamples,
    })
}

/// The induced action of `f` on `π_i(C)_g`, for callers inspecting telescopes.
pub fn action_on_homotopy(c: &GradedComplex, f: &Polynomial, i: i64, g: &Degree) -> Result<AbMap> {
    let e = c.ring().homogeneous_degree(f)?;
    let from = c.homology_at(i, g)?;
    let to = c.homology_at(i, &(g + &e))?;
    c.multiplication(f, &e)?.induced(i, g, &from, &to)
}
