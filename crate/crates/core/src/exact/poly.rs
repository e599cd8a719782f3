//! Dense univariate polynomials over Z and Q, coefficients low degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, QMat, Scalar, ZMat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type ZPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let acc = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = acc + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::from_i64(coeffs).to_q()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (QPoly::zero(), QPoly::zero());
        };
        if sd < dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => QPoly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_z(&self) -> Option<ZPoly> {
        self.coeffs
            .iter()
            .all(BigRational::is_integer)
            .then(|| ZPoly::new(self.coeffs.iter().map(BigRational::to_integer).collect()))
    }

    /// Least positive integer whose multiple of `self` has integer coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl ZPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_q(&self) -> QPoly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Division by a monic divisor stays inside Z[z].
    pub fn div_rem_monic(&self, d: &ZPoly) -> Result<(ZPoly, ZPoly)> {
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let (q, r) = self.to_q().div_rem(&d.to_q());
        Ok((q.to_z().expect("monic division is integral"), r.to_z().expect("monic division is integral")))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

/// Column-convention companion matrix of a monic polynomial: ones on the
/// subdiagonal and `-c_0, …, -c_{d-1}` down the last column, so it is the
/// matrix of multiplication by `z` on the basis `1, z, …, z^{d-1}`.
pub fn companion<T: Scalar>(f: &Poly<T>) -> Result<Matrix<T>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Err(Error::InvalidArgument("companion of a constant".into()));
    }
    let mut m = Matrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = T::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -f.coeff(i);
    }
    Ok(m)
}

pub fn companion_z(f: &ZPoly) -> Result<ZMat> {
    companion(f)
}

pub fn companion_q(f: &QPoly) -> Result<QMat> {
    companion(f)
}

/// The k-th cyclotomic polynomial, by dividing `z^k - 1` by `Φ_d` for every
/// proper divisor `d` of `k`.
pub fn cyclotomic(k: u64) -> ZPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut cache: std::collections::BTreeMap<u64, ZPoly> = std::collections::BTreeMap::new();
    cyclotomic_cached(k, &mut cache)
}

fn cyclotomic_cached(k: u64, cache: &mut std::collections::BTreeMap<u64, ZPoly>) -> ZPoly {
    if let Some(p) = cache.get(&k) {
        return p.clone();
    }
    let mut num = ZPoly::monomial(BigInt::one(), k as usize);
    num = &num - &ZPoly::one();
    for d in super::arith::divisors(k) {
        if d == k {
            continue;
        }
        let phi_d = cyclotomic_cached(d, cache);
        let (q, r) = num.div_rem_monic(&phi_d).expect("cyclotomic polynomials are monic");
        debug_assert!(r.is_zero());
        num = q;
    }
    cache.insert(k, num.clone());
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), ZPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ZPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for k in 1..=30u64 {
            let prod = super::super::arith::divisors(k)
                .into_iter()
                .fold(ZPoly::one(), |acc, d| &acc * &cyclotomic(d));
            let mut expect = ZPoly::monomial(BigInt::one(), k as usize);
            expect = &expect - &ZPoly::one();
            assert_eq!(prod, expect, "k = {k}");
            assert_eq!(
                cyclotomic(k).degree().unwrap() as u64,
                super::super::arith::euler_phi(k)
            );
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(ZPoly::from_i64(&[-1, -1, 1]).to_string(), "z^2 - z - 1");
        assert_eq!(ZPoly::from_i64(&[6, -5, 1]).to_string(), "z^2 - 5*z + 6");
        assert_eq!(ZPoly::from_i64(&[0, -2]).to_string(), "-2*z");
        assert_eq!(ZPoly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_and_division() {
        let a = QPoly::from_i64(&[-1, 0, 1]); // z^2 - 1
        let b = QPoly::from_i64(&[-1, 1]); // z - 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_i64(&[1, 1]));
        assert!(!QPoly::from_i64(&[1, 2, 1]).is_squarefree());
        assert!(a.is_squarefree());
    }

    #[test]
    fn companion_convention() {
        let c = companion_z(&ZPoly::from_i64(&[-1, -1, 1])).unwrap();
        assert_eq!(c, ZMat::from_i64_rows(&[&[0, 1], &[1, 1]]));
        let c2 = companion_z(&ZPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(c2, ZMat::from_i64_rows(&[&[0, 2], &[1, 0]]));
        assert!(companion_z(&ZPoly::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn matrix_evaluation() {
        let f = ZPoly::from_i64(&[-1, -1, 1]);
        let c = companion_z(&f).unwrap();
        assert!(f.eval_matrix(&c).is_zero());
    }
}
