//! Hermite and Smith normal forms of integer matrices.
//!
//! Both routines keep track of the unimodular transforms so callers can
//! recompose: `U·M = H` for Hermite, `U·M·V = S` for Smith.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::ZMat;

/// Row-style Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: ZMat,
    pub u: ZMat,
    /// Number of nonzero rows of `h` (these come first).
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: ZMat,
    pub u: ZMat,
    pub v: ZMat,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | …`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

// row[target] -= q * row[src]
fn row_sub(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = &m[(target, j)] - q * &m[(src, j)];
        m[(target, j)] = v;
    }
}

// col[target] -= q * col[src]
fn col_sub(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = &m[(i, target)] - q * &m[(i, src)];
        m[(i, target)] = v;
    }
}

fn negate_row(m: &mut ZMat, r: usize) {
    for j in 0..m.cols() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

/// Row Hermite normal form: `U·M = H`, `H` in row echelon form with
/// positive pivots and every entry above a pivot reduced into `[0, pivot)`.
pub fn hnf(m: &ZMat) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = ZMat::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let piv = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = piv else { break };
            found = true;
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = &h[(i, c)] / &h[(r, c)];
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            row_sub(&mut h, i, r, &q);
            row_sub(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Smith normal form: `U·M·V = S` with nonnegative diagonal `d_1 | d_2 | …`.
pub fn snf(m: &ZMat) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = ZMat::identity(rows);
    let mut v = ZMat::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap_rows(pi, t);
            u.swap_rows(pi, t);
            a.swap_cols(pj, t);
            v.swap_cols(pj, t);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = &a[(i, t)] / &a[(t, t)];
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = &a[(t, j)] / &a[(t, t)];
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    // pull the offending row into the pivot row and retry
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut a, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    finish(a, u, v)
}

fn finish(s: ZMat, u: ZMat, v: ZMat) -> Snf {
    Snf { s, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        ZMat::from_i64_rows(rows)
    }

    fn check_hnf(m: &ZMat) -> Hnf {
        let r = hnf(m);
        assert_eq!(&r.u * m, r.h);
        assert_eq!(r.u.det().unwrap().abs(), BigInt::from(1));
        r
    }

    fn check_snf(m: &ZMat) -> Snf {
        let r = snf(m);
        assert_eq!(&(&r.u * m) * &r.v, r.s);
        assert_eq!(r.u.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(r.v.det().unwrap().abs(), BigInt::from(1));
        r
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(check_hnf(&z(&[&[2, 0], &[1, 1]])).h, z(&[&[1, 1], &[0, 2]]));
        let id = check_hnf(&ZMat::identity(2));
        assert_eq!(id.h, ZMat::identity(2));
        assert_eq!(id.u, ZMat::identity(2));
        assert_eq!(check_hnf(&z(&[&[0, 3], &[0, 0]])).h, z(&[&[0, 3], &[0, 0]]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let r = check_hnf(&z(&[&[3, 7, 5], &[0, 4, 9], &[0, 0, 6]]));
        for (row, &c) in r.pivots.iter().enumerate() {
            let p = &r.h[(row, c)];
            assert!(p > &BigInt::zero());
            for above in 0..row {
                let e = &r.h[(above, c)];
                assert!(e >= &BigInt::zero() && e < p);
            }
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&z(&[&[2, 0], &[0, 3]])).s, z(&[&[1, 0], &[0, 6]]));
        assert_eq!(check_snf(&z(&[&[4, 0], &[0, 2]])).s, z(&[&[2, 0], &[0, 4]]));
        assert_eq!(check_snf(&ZMat::zeros(2, 3)).s, ZMat::zeros(2, 3));
    }

    #[test]
    fn snf_rectangular_rank_deficient() {
        let r = check_snf(&z(&[&[2, 4, 6], &[1, 2, 3]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
    }
}
