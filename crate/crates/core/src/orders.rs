//! Rings with a `Z`-basis given by structure constants: multiplication,
//! left-regular representation, norms, and the actions of their regular
//! elements by left multiplication.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::action::{AlgebraicAction, Generator, MonoidKind};
use crate::error::{Error, Result};
use crate::exact::{ZMat, ZPoly};

/// A ring structure on `Z^n`: `e_i·e_j = Σ_k c[(i·n + j)·n + k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureRing {
    n: usize,
    constants: Vec<BigInt>,
    one: Vec<BigInt>,
}

pub const PRESETS: &[&str] = &["Z", "Z[i]", "Z[sqrt2]", "M2(Z)", "Z[C2]"];

impl StructureRing {
    /// Validated ring; see [`StructureRing::validate`].
    pub fn new(n: usize, constants: Vec<BigInt>, one: Vec<BigInt>) -> Result<Self> {
        if constants.len() != n * n * n {
            return Err(Error::Dimension(format!(
                "{} structure constants for rank {} (expected {})",
                constants.len(),
                n,
                n * n * n
            )));
        }
        if one.len() != n {
            return Err(Error::Dimension(format!("unit of length {} in rank {}", one.len(), n)));
        }
        let r = StructureRing { n, constants, one };
        r.validate()?;
        Ok(r)
    }

    pub fn from_i64(n: usize, constants: &[i64], one: &[i64]) -> Result<Self> {
        Self::new(
            n,
            constants.iter().map(|&x| BigInt::from(x)).collect(),
            one.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// `Z[u]/(f)` on the basis `1, u, …, u^{d−1}` for monic `f`.
    pub fn monogenic(f: &ZPoly) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = f.degree().unwrap_or(0);
        if d == 0 {
            return Err(Error::InvalidArgument("constant polynomial".into()));
        }
        let mut constants = vec![BigInt::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let (_, r) = ZPoly::monomial(BigInt::one(), i + j).div_rem_monic(f)?;
                for k in 0..d {
                    constants[(i * d + j) * d + k] = r.coeff(k);
                }
            }
        }
        let mut one = vec![BigInt::zero(); d];
        one[0] = BigInt::one();
        Self::new(d, constants, one)
    }

    pub fn preset(name: &str) -> Option<Self> {
        let r = match name {
            "Z" => Self::from_i64(1, &[1], &[1]),
            "Z[i]" => Self::monogenic(&ZPoly::from_i64(&[1, 0, 1])),
            "Z[sqrt2]" => Self::monogenic(&ZPoly::from_i64(&[-2, 0, 1])),
            "Z[C2]" => Self::monogenic(&ZPoly::from_i64(&[-1, 0, 1])),
            "M2(Z)" => {
                // basis E11, E12, E21, E22 (index 2a + b); E_ab E_cd = δ_bc E_ad
                let mut c = vec![0i64; 64];
                for i in 0..4 {
                    for j in 0..4 {
                        let (a, b) = (i / 2, i % 2);
                        let (cc, d) = (j / 2, j % 2);
                        if b == cc {
                            c[(i * 4 + j) * 4 + 2 * a + d] = 1;
                        }
                    }
                }
                Self::from_i64(4, &c, &[1, 0, 0, 1])
            }
            _ => return None,
        };
        Some(r.expect("presets are valid"))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn constants(&self) -> &[BigInt] {
        &self.constants
    }

    pub fn one(&self) -> &[BigInt] {
        &self.one
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.constants[(i * self.n + j) * self.n + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.n];
        e[i] = BigInt::one();
        e
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Associativity on all basis triples and two-sided unit laws.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            let ei = self.basis_vector(i);
            if self.mul(&self.one, &ei) != ei || self.mul(&ei, &self.one) != ei {
                return Err(Error::BadUnit);
            }
        }
        for i in 0..self.n {
            let ei = self.basis_vector(i);
            for j in 0..self.n {
                let ej = self.basis_vector(j);
                let ij = self.mul(&ei, &ej);
                for k in 0..self.n {
                    let ek = self.basis_vector(k);
                    if self.mul(&ij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| (0..self.n).all(|k| self.c(i, j, k) == self.c(j, i, k)))
        })
    }

    /// Matrix of `x ↦ a·x`; column `j` holds the coordinates of `a·e_j`.
    pub fn act_matrix(&self, a: &[BigInt]) -> Result<ZMat> {
        if a.len() != self.n {
            return Err(Error::Dimension(format!("element of length {} in rank {}", a.len(), self.n)));
        }
        let cols: Vec<Vec<BigInt>> = (0..self.n).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Ok(ZMat::from_rows(cols)?.transpose())
    }

    /// `N(a) = |det σ_a|`.
    pub fn norm(&self, a: &[BigInt]) -> Result<BigInt> {
        Ok(self.act_matrix(a)?.det()?.abs())
    }

    pub fn is_regular(&self, a: &[BigInt]) -> Result<bool> {
        Ok(!self.norm(a)?.is_zero())
    }

    /// Smallest `κ ≥ 1` making `a + κ·1` regular. At most `n` values of `κ`
    /// fail, one per eigenvalue of `σ_a`.
    pub fn regular_shift(&self, a: &[BigInt]) -> Result<u64> {
        for k in 1..=(self.n as u64 + 1) {
            let shifted: Vec<BigInt> = a
                .iter()
                .zip(&self.one)
                .map(|(x, u)| x + u * BigInt::from(k))
                .collect();
            if self.is_regular(&shifted)? {
                return Ok(k);
            }
        }
        unreachable!("σ_a has at most n eigenvalues")
    }
}

/// The action of the monoid generated by regular elements on the ring by
/// left multiplication; free abelian when the generators commute.
pub fn action_from_ring(r: &StructureRing, gens: &[(String, Vec<BigInt>)]) -> Result<AlgebraicAction> {
    let mut generators = Vec::with_capacity(gens.len());
    for (i, (name, a)) in gens.iter().enumerate() {
        if !r.is_regular(a)? {
            return Err(Error::NonRegular(i));
        }
        generators.push(Generator {
            name: name.clone(),
            matrix: r.act_matrix(a)?,
        });
    }
    let commuting = gens
        .iter()
        .enumerate()
        .all(|(i, (_, a))| gens[i + 1..].iter().all(|(_, b)| r.mul(a, b) == r.mul(b, a)));
    let kind = if commuting {
        MonoidKind::FreeAbelian
    } else {
        MonoidKind::Free
    };
    AlgebraicAction::new(r.rank(), generators, kind)
}
