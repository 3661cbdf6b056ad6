//! Smith normal form over the integers.
//!
//! Pivoting always selects the nonzero entry of smallest absolute value in the
//! active submatrix, ties broken by lowest `(row, col)`, so the output is a
//! deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d`, with `u`, `v` unimodular and `u_inv == u⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn diagonal_entry(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.d[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    // Clears row and column k below/right of the pivot with Euclidean steps.
    // Returns true when a nonzero remainder survived.
    fn eliminate(&mut self, k: usize) -> bool {
        let mut dirty = false;
        for i in k + 1..self.a.rows() {
            if self.a[(i, k)].is_zero() {
                continue;
            }
            let q = self.a[(i, k)].div_floor(&self.a[(k, k)]);
            self.add_row(i, k, &-q);
            if !self.a[(i, k)].is_zero() {
                dirty = true;
            }
        }
        for j in k + 1..self.a.cols() {
            if self.a[(k, j)].is_zero() {
                continue;
            }
            let q = self.a[(k, j)].div_floor(&self.a[(k, k)]);
            self.add_col(j, k, &-q);
            if !self.a[(k, j)].is_zero() {
                dirty = true;
            }
        }
        dirty
    }

    fn first_non_multiple(&self, k: usize) -> Option<usize> {
        let p = &self.a[(k, k)];
        for i in k + 1..self.a.rows() {
            for j in k + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for k in 0..m.min(n) {
        let Some(_) = w.pivot(k) else { break };
        loop {
            let (pi, pj) = w.pivot(k).expect("active submatrix became zero");
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.eliminate(k) {
                continue;
            }
            match w.first_non_multiple(k) {
                Some(i) => w.add_row(k, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(k, k)].is_negative() {
            w.negate_row(k);
        }
        rank += 1;
    }
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        rank,
    }
}
