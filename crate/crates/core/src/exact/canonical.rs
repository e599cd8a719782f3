//! Characteristic polynomials, rational invariant factors, and the search
//! for unimodular divisors of integer polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith;
use super::matrix::{QMat, ZMat};
use super::poly::{QPoly, ZPoly};
use crate::error::{Error, Result};

/// Characteristic polynomial `det(zI - M)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(m: &QMat) -> Result<QPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut aux = QMat::zeros(n, n);
    for k in 1..=n {
        // aux_k = M·aux_{k-1} + c_{n-k+1}·I ; c_{n-k} = -tr(M·aux_k)/k
        aux = &(m * &aux) + &QMat::identity(n).scale(&coeffs[n - k + 1]);
        let t = (m * &aux).trace();
        coeffs[n - k] = -t / BigRational::from_integer(BigInt::from(k));
    }
    Ok(QPoly::new(coeffs))
}

/// Characteristic polynomial of an integer matrix, which has integer coefficients.
pub fn charpoly_z(m: &ZMat) -> Result<ZPoly> {
    Ok(charpoly(&m.to_q())?
        .to_z()
        .expect("integer matrices have integral characteristic polynomials"))
}

/// Invariant factors of `zI - M` over Q[z]: the nonconstant monic diagonal
/// entries of its Smith form, each dividing the next.
#[allow(clippy::needless_range_loop)]
pub fn poly_invariant_factors(m: &QMat) -> Result<Vec<QPoly>> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let mut a: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = QPoly::constant(-m[(i, j)].clone());
                    if i == j {
                        &c + &QPoly::z()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            a.swap(pi, t);
            for row in a.iter_mut() {
                row.swap(pj, t);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&pivot);
                for j in t..n {
                    let v = &a[i][j] - &(&q * &a[t][j]);
                    a[i][j] = v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&pivot);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &(&q * &row[t]);
                    row[j] = v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !pivot.divides(&a[i][j])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n)
        .map(|i| a[i][i].monic())
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect())
}

/// Minimal polynomial: the last invariant factor.
pub fn minimal_polynomial(m: &QMat) -> Result<QPoly> {
    Ok(poly_invariant_factors(m)?
        .pop()
        .unwrap_or_else(QPoly::one))
}

/// Outcome of searching a monic integer polynomial for a monic integer
/// divisor with constant term ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnimodularSearch {
    Found(ZPoly),
    NoneExists,
    /// The interpolation search exceeded its budget.
    Inconclusive,
}

const DIVISOR_SEARCH_BUDGET: u64 = 2_000_000;

/// Decides whether the monic integer polynomial `f` (with `f(0) ≠ 0`) has a
/// monic integer divisor `g`, `deg g ≥ 1`, with `g(0) = ±1`.
///
/// A divisor of degree above `deg f / 2` is found through its cofactor,
/// whose constant term is `±f(0)`. Candidates of degree `k` are pinned by
/// their constant term and their values at `k - 1` nonzero sample points,
/// each of which must divide the value of `f` there.
pub fn unimodular_divisor(f: &ZPoly) -> Result<UnimodularSearch> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    let f0 = f.coeff(0);
    if n == 0 {
        return Ok(UnimodularSearch::NoneExists);
    }
    if f0.is_zero() {
        return Err(Error::InvalidArgument("f(0) = 0".into()));
    }
    if f0.abs().is_one() {
        return Ok(UnimodularSearch::Found(f.clone()));
    }
    let mut budget = DIVISOR_SEARCH_BUDGET;
    for k in 1..=n / 2 {
        let mut constants = vec![BigInt::one(), -BigInt::one(), f0.abs(), -f0.abs()];
        constants.dedup();
        let points = sample_points(f, k - 1);
        let Some(points) = points else {
            return Ok(UnimodularSearch::Inconclusive);
        };
        let value_choices: Vec<Vec<BigInt>> = points
            .iter()
            .map(|(_, v)| signed_divisors(v))
            .collect::<Option<_>>()
            .unwrap_or_else(Vec::new);
        if value_choices.len() != points.len() {
            return Ok(UnimodularSearch::Inconclusive);
        }
        for c in &constants {
            let mut idx = vec![0usize; points.len()];
            loop {
                if budget == 0 {
                    return Ok(UnimodularSearch::Inconclusive);
                }
                budget -= 1;
                let values: Vec<BigInt> = idx
                    .iter()
                    .zip(&value_choices)
                    .map(|(&i, ch)| ch[i].clone())
                    .collect();
                if let Some(h) = interpolate_monic(k, c, &points, &values) {
                    if let Ok((q, r)) = f.div_rem_monic(&h) {
                        if r.is_zero() {
                            let g = if h.coeff(0).abs().is_one() { h } else { q };
                            return Ok(UnimodularSearch::Found(g));
                        }
                    }
                }
                // odometer over the divisor choices
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < value_choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
    }
    Ok(UnimodularSearch::NoneExists)
}

// `count` distinct nonzero integers where f does not vanish, preferring
// small |f(a)|.
fn sample_points(f: &ZPoly, count: usize) -> Option<Vec<(BigInt, BigInt)>> {
    let mut cands: Vec<(BigInt, BigInt)> = (1..=(4 * count as i64 + 8))
        .flat_map(|a| [a, -a])
        .map(BigInt::from)
        .map(|a| {
            let v = f.eval(&a);
            (a, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    cands.sort_by(|x, y| x.1.abs().cmp(&y.1.abs()).then(x.0.abs().cmp(&y.0.abs())));
    cands.truncate(count);
    (cands.len() == count).then_some(cands)
}

fn signed_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let m = v.abs().to_u64()?;
    Some(
        arith::divisors(m)
            .into_iter()
            .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
            .collect(),
    )
}

// Monic h of degree k with h(0) = c and h(a_i) = v_i; None unless integral.
fn interpolate_monic(
    k: usize,
    c: &BigInt,
    points: &[(BigInt, BigInt)],
    values: &[BigInt],
) -> Option<ZPoly> {
    if k == 1 {
        return Some(ZPoly::new(vec![c.clone(), BigInt::one()]));
    }
    // unknown coefficients b_1..b_{k-1}
    let m = k - 1;
    let mut sys = QMat::zeros(m, m + 1);
    for (row, ((a, _), v)) in points.iter().zip(values).enumerate() {
        let mut pw = a.clone();
        for col in 0..m {
            sys[(row, col)] = BigRational::from_integer(pw.clone());
            pw *= a;
        }
        // pw = a^k now
        sys[(row, m)] = BigRational::from_integer(v - c - &pw);
    }
    let (r, pivots) = sys.rref();
    if pivots.len() != m || pivots.contains(&m) {
        return None;
    }
    let mut coeffs = vec![c.clone()];
    for i in 0..m {
        let b = &r[(i, m)];
        if !b.is_integer() {
            return None;
        }
        coeffs.push(b.to_integer());
    }
    coeffs.push(BigInt::one());
    Some(ZPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMat {
        QMat::from_i64_rows(rows)
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&q(&[&[2]])).unwrap(), QPoly::from_i64(&[-2, 1]));
        assert_eq!(
            charpoly(&q(&[&[0, 1], &[1, 1]])).unwrap(),
            QPoly::from_i64(&[-1, -1, 1])
        );
        assert_eq!(
            charpoly(&q(&[&[0, -1], &[1, 0]])).unwrap(),
            QPoly::from_i64(&[1, 0, 1])
        );
        assert!(charpoly(&QMat::zeros(2, 3)).is_err());
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(
            poly_invariant_factors(&q(&[&[2, 0], &[0, 2]])).unwrap(),
            vec![QPoly::from_i64(&[-2, 1]), QPoly::from_i64(&[-2, 1])]
        );
        assert_eq!(
            poly_invariant_factors(&q(&[&[2, 1], &[0, 2]])).unwrap(),
            vec![QPoly::from_i64(&[4, -4, 1])]
        );
        let comp = super::super::poly::companion_q(&QPoly::from_i64(&[6, -5, 1])).unwrap();
        assert_eq!(
            poly_invariant_factors(&comp).unwrap(),
            vec![QPoly::from_i64(&[6, -5, 1])]
        );
    }

    #[test]
    fn unimodular_divisors() {
        // z - 2: none
        assert_eq!(
            unimodular_divisor(&ZPoly::from_i64(&[-2, 1])).unwrap(),
            UnimodularSearch::NoneExists
        );
        // (z - 1)(z - 2)
        assert_eq!(
            unimodular_divisor(&ZPoly::from_i64(&[2, -3, 1])).unwrap(),
            UnimodularSearch::Found(ZPoly::from_i64(&[-1, 1]))
        );
        // z^2 - z - 1 is itself unimodular
        assert!(matches!(
            unimodular_divisor(&ZPoly::from_i64(&[-1, -1, 1])).unwrap(),
            UnimodularSearch::Found(_)
        ));
        // (z^2 - z - 1)(z - 3): divisor of degree 2 > 3/2, found via cofactor z - 3
        let f = &ZPoly::from_i64(&[-1, -1, 1]) * &ZPoly::from_i64(&[-3, 1]);
        assert_eq!(
            unimodular_divisor(&f).unwrap(),
            UnimodularSearch::Found(ZPoly::from_i64(&[-1, -1, 1]))
        );
        // z^2 - 2 and z^2 + z + 2 have none
        assert_eq!(
            unimodular_divisor(&ZPoly::from_i64(&[-2, 0, 1])).unwrap(),
            UnimodularSearch::NoneExists
        );
        assert_eq!(
            unimodular_divisor(&ZPoly::from_i64(&[2, 1, 1])).unwrap(),
            UnimodularSearch::NoneExists
        );
        // (z^2 + z + 1)(z^2 - 3): quadratic unimodular factor via interpolation
        let g = &ZPoly::from_i64(&[1, 1, 1]) * &ZPoly::from_i64(&[-3, 0, 1]);
        assert_eq!(
            unimodular_divisor(&g).unwrap(),
            UnimodularSearch::Found(ZPoly::from_i64(&[1, 1, 1]))
        );
    }
}
