//! Full-rank sublattices of `Z^n` and their finite quotients.
//!
//! Vectors are rows. A matrix `M` acts on column vectors, so the image of a
//! lattice with basis rows `B` is spanned by the rows of `B·Mᵀ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{hnf, snf, ZMat};

/// A full-rank subgroup of `Z^n`, stored by its canonical row Hermite basis,
/// so two lattices are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Lattice {
    basis: ZMat,
}

impl Lattice {
    /// `Z^n`.
    pub fn whole(n: usize) -> Self {
        Lattice {
            basis: ZMat::identity(n),
        }
    }

    /// `k·Z^n` for `k > 0`.
    pub fn scaled(n: usize, k: &BigInt) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(Lattice {
            basis: ZMat::identity(n).scale(k),
        })
    }

    pub fn from_generators(n: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!(
                "vector of length {} in rank {}",
                v.len(),
                n
            )));
        }
        if vectors.is_empty() {
            return Err(Error::RankDeficient {
                rank: 0,
                expected: n,
            });
        }
        Self::from_generator_matrix(&ZMat::from_rows(vectors.to_vec())?)
    }

    /// Lattice spanned by the rows of `m`.
    pub fn from_generator_matrix(m: &ZMat) -> Result<Self> {
        let n = m.cols();
        let h = hnf(m);
        if h.rank < n {
            return Err(Error::RankDeficient {
                rank: h.rank,
                expected: n,
            });
        }
        Ok(Lattice {
            basis: h.h.submatrix(0..n, 0..n),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_generator_matrix(&ZMat::from_i64_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ZMat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.to_rows()
    }

    /// `#(Z^n / L)`: the product of the Hermite pivots.
    pub fn index(&self) -> BigInt {
        (0..self.rank()).map(|i| self.basis[(i, i)].clone()).product()
    }

    pub fn is_whole(&self) -> bool {
        self.index().is_one()
    }

    fn check_rank(&self, other: usize) -> Result<()> {
        if self.rank() != other {
            return Err(Error::RankMismatch(self.rank(), other));
        }
        Ok(())
    }

    /// Canonical representative of `x + L`: the unique vector of the coset
    /// in the box `∏ [0, h_ii)` spanned by the Hermite pivots.
    pub fn reduce(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_rank(x.len())?;
        let mut y = x.to_vec();
        for i in 0..self.rank() {
            let q = y[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for (j, yj) in y.iter_mut().enumerate().skip(i) {
                *yj -= &q * &self.basis[(i, j)];
            }
        }
        Ok(y)
    }

    pub fn member(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(Zero::is_zero))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Lattice) -> Result<bool> {
        self.check_rank(other.rank())?;
        for row in other.basis.row_iter() {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_rank(other.rank())?;
        Self::from_generator_matrix(&self.basis.vstack(&other.basis)?)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_rank(other.rank())?;
        let n = self.rank();
        // rows (b1, b1) and (b2, 0): the part with vanishing first block is
        // {(0, x) : x ∈ L1 ∩ L2}
        let mut block = ZMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                block[(i, j)] = self.basis[(i, j)].clone();
                block[(i, n + j)] = self.basis[(i, j)].clone();
                block[(n + i, j)] = other.basis[(i, j)].clone();
            }
        }
        let h = hnf(&block);
        debug_assert_eq!(h.rank, 2 * n);
        Self::from_generator_matrix(&h.h.submatrix(n..2 * n, n..2 * n))
    }

    /// `M·L`.
    pub fn image(&self, m: &ZMat) -> Result<Lattice> {
        self.check_square(m)?;
        if m.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Self::from_generator_matrix(&(&self.basis * &m.transpose()))
    }

    /// `{x ∈ Z^n : M·x ∈ L}` for any square `M`. Writing vectors as rows,
    /// `x·Mᵀ = −y·B` for some integer `y` exactly when `(x, y)` lies in the
    /// left kernel of `[Mᵀ; B]`, which the bottom rows of the Hermite
    /// transform span; the preimage is their projection onto `x`.
    pub fn preimage(&self, m: &ZMat) -> Result<Lattice> {
        self.check_square(m)?;
        let n = self.rank();
        let stacked = m.transpose().vstack(&self.basis)?;
        let h = hnf(&stacked);
        debug_assert_eq!(h.rank, n);
        Self::from_generator_matrix(&h.u.submatrix(h.rank..2 * n, 0..n))
    }

    fn check_square(&self, m: &ZMat) -> Result<()> {
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        self.check_rank(m.rows())
    }

    pub fn quotient(&self) -> QuotientLevel {
        QuotientLevel::new(self.clone())
    }

    /// All canonical coset representatives, in lexicographic box order.
    /// Refuses quotients larger than `limit`.
    pub fn representatives(&self, limit: u64) -> Result<Vec<Vec<BigInt>>> {
        let idx = self.index();
        if idx.to_u64().is_none_or(|v| v > limit) {
            return Err(Error::TooLarge(idx.to_string()));
        }
        let bounds: Vec<BigInt> = (0..self.rank()).map(|i| self.basis[(i, i)].clone()).collect();
        Ok(box_points(&bounds))
    }

    pub fn to_json_rows(&self) -> LatticeRepr {
        LatticeRepr {
            basis: self.basis_rows(),
        }
    }
}

/// Every integer vector of the box `∏ [0, bounds_i)`.
pub(crate) fn box_points(bounds: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for b in bounds {
        let b = b.to_u64().expect("box side fits in u64");
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for prefix in &out {
            for v in 0..b {
                let mut p = prefix.clone();
                p.push(BigInt::from(v));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

/// JSON form of a lattice: its canonical basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRepr {
    #[serde(with = "crate::json::int_rows")]
    pub basis: Vec<Vec<BigInt>>,
}

/// The finite group `Z^n / L` with its Smith decomposition `⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLevel {
    lattice: Lattice,
    factors: Vec<BigInt>,
    // x ↦ x·V gives coordinates modulo the factors
    to_coords: ZMat,
    from_coords: ZMat,
}

impl QuotientLevel {
    fn new(lattice: Lattice) -> Self {
        let s = snf(lattice.basis());
        let factors = s.diagonal();
        let from_coords = s
            .v
            .to_q()
            .inverse()
            .expect("unimodular")
            .to_z()
            .expect("unimodular inverse is integral");
        QuotientLevel {
            lattice,
            factors,
            to_coords: s.v,
            from_coords,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Cyclic factors `d_1 | d_2 | … | d_n`.
    pub fn cyclic_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Coordinates of `x + L` in `⊕ Z/d_i`, each in `[0, d_i)`.
    pub fn coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.lattice.check_rank(x.len())?;
        let row = ZMat::from_rows(vec![x.to_vec()])?;
        let c = &row * &self.to_coords;
        Ok(c.row(0)
            .iter()
            .zip(&self.factors)
            .map(|(v, d)| v.mod_floor(d))
            .collect())
    }

    /// Canonical representative of the coset with the given coordinates.
    pub fn from_coords(&self, c: &[BigInt]) -> Result<Vec<BigInt>> {
        self.lattice.check_rank(c.len())?;
        let row = ZMat::from_rows(vec![c.to_vec()])?;
        let x = &row * &self.from_coords;
        self.lattice.reduce(x.row(0))
    }

    pub fn reduce(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.lattice.reduce(x)
    }

    pub fn elements(&self, limit: u64) -> Result<Vec<Vec<BigInt>>> {
        self.lattice.representatives(limit)
    }

    /// Sum of two cosets, reduced.
    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Result<Vec<BigInt>> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn generator_examples() {
        let l = Lattice::from_generators(2, &[v(&[2, 0]), v(&[1, 1]), v(&[3, 1])]).unwrap();
        assert_eq!(l.basis(), &ZMat::from_i64_rows(&[&[1, 1], &[0, 2]]));
        let g = Lattice::from_generators(1, &[v(&[6]), v(&[10])]).unwrap();
        assert_eq!(g.basis(), &ZMat::from_i64_rows(&[&[2]]));
        assert!(matches!(
            Lattice::from_generators(2, &[v(&[1, 0])]),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn index_examples() {
        assert_eq!(lat(&[&[2]]).index(), BigInt::from(2));
        assert_eq!(lat(&[&[1, 1], &[0, 2]]).index(), BigInt::from(2));
        assert_eq!(Lattice::whole(3).index(), BigInt::one());
    }

    #[test]
    fn meet_join_membership() {
        let two = lat(&[&[2]]);
        let three = lat(&[&[3]]);
        assert_eq!(two.intersect(&three).unwrap(), lat(&[&[6]]));
        assert_eq!(two.sum(&three).unwrap(), Lattice::whole(1));
        assert!(lat(&[&[1, 1], &[0, 2]]).member(&v(&[1, 1])).unwrap());
        assert!(!lat(&[&[1, 1], &[0, 2]]).member(&v(&[1, 0])).unwrap());
        assert!(matches!(two.intersect(&Lattice::whole(2)), Err(Error::RankMismatch(1, 2))));
    }

    #[test]
    fn image_preimage_examples() {
        let two_i = ZMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let z2 = Lattice::whole(2);
        assert_eq!(z2.image(&two_i).unwrap(), lat(&[&[2, 0], &[0, 2]]));
        assert_eq!(z2.preimage(&two_i).unwrap(), z2);

        let d21 = ZMat::from_i64_rows(&[&[2, 0], &[0, 1]]);
        let even = lat(&[&[2, 0], &[0, 2]]);
        assert_eq!(even.preimage(&d21).unwrap(), lat(&[&[1, 0], &[0, 2]]));

        let fib = ZMat::from_i64_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(even.preimage(&fib).unwrap().index(), BigInt::from(4));
        assert_eq!(z2.image(&ZMat::from_i64_rows(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn quotient_examples() {
        let q = lat(&[&[4]]).quotient();
        assert_eq!(q.cyclic_factors(), &[BigInt::from(4)]);
        assert_eq!(q.reduce(&v(&[7])).unwrap(), v(&[3]));
        assert_eq!(q.reduce(&v(&[-1])).unwrap(), v(&[3]));

        let q2 = lat(&[&[1, 1], &[0, 2]]).quotient();
        assert_eq!(q2.cyclic_factors(), &[BigInt::from(1), BigInt::from(2)]);

        let q3 = Lattice::whole(3).quotient();
        assert!(q3.cyclic_factors().iter().all(One::is_one));
        assert!(q3.reduce(&v(&[5, -2, 9])).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn coords_round_trip() {
        let q = lat(&[&[2, 1, 0], &[0, 3, 1], &[0, 0, 4]]).quotient();
        assert_eq!(q.order(), BigInt::from(24));
        for x in q.elements(100).unwrap() {
            let c = q.coords(&x).unwrap();
            assert_eq!(q.from_coords(&c).unwrap(), x);
        }
    }
}
