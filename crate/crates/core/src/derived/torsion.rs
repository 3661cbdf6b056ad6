use std::collections::BTreeMap;

use crate::error::Result;
use crate::grading::Degree;
use crate::poly::Polynomial;

use super::complex::GradedComplex;

/// All products of `k` elements of the sequence, with their degrees.
pub fn products(
    elements: &[(Polynomial, Degree)],
    k: u32,
    nvars: usize,
    dim: usize,
) -> Vec<(Polynomial, Degree)> {
    let mut out = Vec::new();
    fn rec(
        elements: &[(Polynomial, Degree)],
        start: usize,
        left: u32,
        acc: (Polynomial, Degree),
        out: &mut Vec<(Polynomial, Degree)>,
    ) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..elements.len() {
            let (f, d) = &elements[i];
            rec(elements, i, left - 1, (acc.0.mul(f), &acc.1 + d), out);
        }
    }
    rec(
        elements,
        0,
        k,
        (Polynomial::one(nvars), Degree::zero(dim)),
        &mut out,
    );
    out
}

/// Smallest `k ≤ max_power` such that every product of `k` sequence elements
/// acts as zero on `π_i(C)_g`.
pub fn annihilating_power(
    c: &GradedComplex,
    elements: &[(Polynomial, Degree)],
    i: i64,
    g: &Degree,
    max_power: u32,
) -> Result<Option<u32>> {
    let ring = c.ring();
    let h = c.homology_at(i, g)?;
    if h.group.is_zero() {
        return Ok(Some(0));
    }
    for k in 1..=max_power {
        let mut all_zero = true;
        for (f, d) in products(elements, k, ring.nvars(), ring.sig().dimension()) {
            let target = c.homology_at(i, &(g + &d))?;
            let mult = c.multiplication(&f, &d)?;
            if !mult.induced(i, g, &h, &target)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Per `(index, degree)`, the annihilating power, or `None` when not found within `max_power`.
pub fn torsion_exponents(
    c: &GradedComplex,
    elements: &[(Polynomial, Degree)],
    indices: &[i64],
    window: &[Degree],
    max_power: u32,
) -> Result<BTreeMap<(i64, Degree), Option<u32>>> {
    let mut out = BTreeMap::new();
    for &i in indices {
        for g in window {
            out.insert(
                (i, g.clone()),
                annihilating_power(c, elements, i, g, max_power)?,
            );
        }
    }
    Ok(out)
}

/// Indices in `range` where some window degree has nonzero `π_i`.
pub fn nonvanishing_indices(
    c: &GradedComplex,
    range: std::ops::RangeInclusive<i64>,
    window: &[Degree],
) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for i in range {
        if c.homotopy_groups(i, window)?.values().any(|p| !p.is_zero()) {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{derived_quotient_module, KoszulData};
    use crate::graded_algebra::{GradedModule, GradedRing};

    #[test]
    fn quotient_is_killed_by_the_ideal() {
        let r = GradedRing::integer_graded(&["x", "y"], &[1, 1], &[]).unwrap();
        let k = KoszulData::new(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()], 2).unwrap();
        let q = derived_quotient_module(&r.as_module(), &k).unwrap();
        for d in 0..4 {
            let p = annihilating_power(&q, &k.elements, 0, &Degree::int(d), 6).unwrap();
            assert!(p.is_some());
        }
        assert_eq!(
            annihilating_power(&q, &k.elements, 0, &Degree::int(0), 6).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn free_module_is_not_torsion() {
        let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
        let c = crate::derived::GradedComplex::concentrated(
            &GradedModule::free(&r, vec![Degree::int(0)]),
            0,
        );
        let x = vec![(r.parse("x").unwrap(), Degree::int(1))];
        assert_eq!(
            annihilating_power(&c, &x, 0, &Degree::int(1), 4).unwrap(),
            None
        );
        assert_eq!(
            nonvanishing_indices(&c, -1..=1, &[Degree::int(0)]).unwrap(),
            vec![0]
        );
    }
}
