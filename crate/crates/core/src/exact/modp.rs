//! Polynomials over F_p and the distinct-degree splitting signature.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::arith::{is_prime, mul_mod, pow_mod};
use super::poly::ZPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&bp).to_u64().expect("reduced coefficient fits"))
                .collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = self.inv(l);
                Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = self.inv(*d.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, p);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mul_mod(c, dc, p)) % p;
            }
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Splitting pattern of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signature {
    /// Sorted degrees of the irreducible factors of a squarefree reduction.
    Degrees(Vec<usize>),
    /// `f mod p` has a repeated factor.
    Ramified,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Signature::Ramified => write!(f, "ramified"),
            Signature::Degrees(d) => {
                let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// Distinct-degree factorization pattern of a monic `f` modulo the prime `p`.
pub fn ddf_signature(f: &ZPoly, p: u64) -> Result<Signature> {
    if !is_prime(p) {
        return Err(Error::Composite(p));
    }
    let lead = f
        .leading()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if (lead % BigInt::from(p)) == BigInt::from(0) {
        return Err(Error::InvalidArgument(format!("{p} divides the leading coefficient")));
    }
    let g = ModPoly::from_zpoly(f, p).monic();
    let n = g.degree().unwrap();
    if n == 0 {
        return Ok(Signature::Degrees(vec![]));
    }
    if g.gcd(&g.derivative()).degree() != Some(0) {
        return Ok(Signature::Ramified);
    }
    let x = ModPoly::x(p);
    let mut rest = g;
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut i = 1;
    while let Some(dr) = rest.degree() {
        if dr < 2 * i {
            if dr > 0 {
                degrees.push(dr);
            }
            break;
        }
        h = h.pow_mod(p, &rest);
        let common = rest.gcd(&h.sub(&x));
        let dc = common.degree().unwrap();
        if dc > 0 {
            degrees.extend(std::iter::repeat_n(i, dc / i));
            rest = rest.div_rem(&common).0;
            h = h.rem(&rest);
        }
        i += 1;
    }
    degrees.sort_unstable();
    Ok(Signature::Degrees(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_mod(f: &ZPoly, p: u64) -> usize {
        (0..p)
            .filter(|&a| {
                let v = f.eval(&BigInt::from(a));
                (v % BigInt::from(p)) == BigInt::from(0)
            })
            .count()
    }

    #[test]
    fn sum_of_squares_examples() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        assert_eq!(roots_mod(&f, 5), 2);
        assert_eq!(ddf_signature(&f, 5).unwrap(), Signature::Degrees(vec![1, 1]));
        assert_eq!(roots_mod(&f, 3), 0);
        assert_eq!(ddf_signature(&f, 3).unwrap(), Signature::Degrees(vec![2]));
        assert_eq!(ddf_signature(&f, 2).unwrap(), Signature::Ramified);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(
            ddf_signature(&ZPoly::from_i64(&[1, 0, 1]), 9),
            Err(Error::Composite(9))
        );
    }

    #[test]
    fn linear_factor_count_matches_root_count() {
        let f = ZPoly::from_i64(&[-2, 0, 0, 1]); // z^3 - 2
        for p in [5u64, 7, 11, 13, 31, 43] {
            if let Signature::Degrees(d) = ddf_signature(&f, p).unwrap() {
                assert_eq!(d.iter().sum::<usize>(), 3);
                assert_eq!(d.iter().filter(|&&x| x == 1).count(), roots_mod(&f, p), "p = {p}");
            }
        }
    }
}
