//! Smith normal form with unimodular transforms.
//!
//! Pivot rule: the entry of smallest absolute value in the remaining
//! submatrix, ties broken by lowest row and then lowest column. The output is
//! therefore a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal,
/// `d[0] | d[1] | ... | d[rank-1]`, all other entries zero.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue 'pivot;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                        let one = BigInt::from(1);
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            rank = t + 1;
            break;
        }
        if rank <= t {
            break;
        }
    }

    let out = SmithForm { u, d: a, v, rank };
    debug_assert!(verify(m, &out), "Smith form verification failed for {m:?}");
    out
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Re-checks every defining property of a Smith form.
pub fn verify(m: &IntMatrix, snf: &SmithForm) -> bool {
    if !snf.u.is_unimodular() || !snf.v.is_unimodular() {
        return false;
    }
    if &(&snf.u * m) * &snf.v != snf.d {
        return false;
    }
    let d = &snf.d;
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    for i in 0..d.rows().min(d.cols()) {
        let x = &d[(i, i)];
        if i < snf.rank {
            if !x.is_positive() {
                return false;
            }
            if i > 0 && !x.is_multiple_of(&d[(i - 1, i - 1)]) {
                return false;
            }
        } else if !x.is_zero() {
            return false;
        }
    }
    true
}
