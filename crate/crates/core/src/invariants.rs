//! Rigidity invariants: conjugacy over Q, torsion orders, unipotent
//! logarithms and the rank bound for commuting unipotent families, and a
//! one-sided distinguisher for the number fields of two polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::cyclotomic_orders;
use crate::error::{Error, Result};
use crate::exact::{
    arith, charpoly_z, cyclotomic, ddf_signature, minimal_polynomial,
    poly_invariant_factors, QMat, QPoly, Signature, ZMat, ZPoly,
};

/// Rational conjugacy class of a square matrix: its size and the invariant
/// factors of `zI − M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub dimension: usize,
    pub invariant_factors: Vec<QPoly>,
}

impl ConjugacyClass {
    pub fn of(m: &QMat) -> Result<Self> {
        Ok(ConjugacyClass {
            dimension: m.rows(),
            invariant_factors: poly_invariant_factors(m)?,
        })
    }

    pub fn characteristic_polynomial(&self) -> QPoly {
        self.invariant_factors
            .iter()
            .fold(QPoly::one(), |acc, f| &acc * f)
    }

    /// Factors as strings, lowest first.
    pub fn describe(&self) -> Vec<String> {
        self.invariant_factors.iter().map(ToString::to_string).collect()
    }
}

/// Whether `GL_n(Q)` conjugates `a` to `b`.
pub fn q_conjugate(a: &QMat, b: &QMat) -> Result<bool> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare);
    }
    Ok(ConjugacyClass::of(a)? == ConjugacyClass::of(b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionOrder {
    Finite(u64),
    Infinite,
}

/// Multiplicative order of an invertible integer matrix.
pub fn torsion_order(m: &ZMat) -> Result<TorsionOrder> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let mut rest = charpoly_z(m)?.to_q();
    let mut order = 1u64;
    for k in cyclotomic_orders(n) {
        let phi = cyclotomic(k).to_q();
        while rest.degree() > Some(0) && phi.divides(&rest) {
            rest = rest.div_rem(&phi).0;
            order = order.lcm(&k);
        }
    }
    if rest.degree() != Some(0) || !minimal_polynomial(&m.to_q())?.is_squarefree() {
        return Ok(TorsionOrder::Infinite);
    }
    if !m.pow(order).is_identity() {
        return Err(Error::InvalidArgument(format!(
            "matrix with cyclotomic spectrum fails M^{order} = I"
        )));
    }
    Ok(TorsionOrder::Finite(order))
}

fn q(k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Smallest `i` with `N^i = 0`, if `N` is nilpotent.
pub fn nilpotency_index(nil: &QMat) -> Option<usize> {
    let n = nil.rows();
    let mut p = QMat::identity(n);
    for i in 1..=n.max(1) {
        p = &p * nil;
        if p.is_zero() {
            return Some(i);
        }
    }
    None
}

pub fn is_unipotent(a: &QMat) -> bool {
    a.is_square() && nilpotency_index(&(a - &QMat::identity(a.rows()))).is_some()
}

/// `log α = Σ_{i≥1} (−1)^{i−1} (α − 1)^i / i`, a finite sum.
pub fn unipotent_log(alpha: &QMat) -> Result<QMat> {
    if !alpha.is_square() {
        return Err(Error::NotSquare);
    }
    let n = alpha.rows();
    let eta = alpha - &QMat::identity(n);
    let idx = nilpotency_index(&eta).ok_or(Error::NotUnipotent)?;
    let mut out = QMat::zeros(n, n);
    let mut p = QMat::identity(n);
    for i in 1..idx as u64 {
        p = &p * &eta;
        let term = p.scale(&q(i).recip());
        out = if i % 2 == 1 { &out + &term } else { &out - &term };
    }
    Ok(out)
}

/// `exp N = Σ N^i / i!`, a finite sum.
pub fn nilpotent_exp(nil: &QMat) -> Result<QMat> {
    if !nil.is_square() {
        return Err(Error::NotSquare);
    }
    let n = nil.rows();
    let idx = nilpotency_index(nil).ok_or(Error::NotNilpotent)?;
    let mut out = QMat::identity(n);
    let mut p = QMat::identity(n);
    let mut fact = BigRational::one();
    for i in 1..idx as u64 {
        p = &p * nil;
        fact *= q(i);
        out = &out + &p.scale(&fact.recip());
    }
    Ok(out)
}

/// Pairwise commuting unipotent matrices generating a subgroup `Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentFamily {
    n: usize,
    members: Vec<QMat>,
}

impl UnipotentFamily {
    pub fn new(n: usize, members: Vec<QMat>) -> Result<Self> {
        for m in &members {
            if !m.is_square() || m.rows() != n {
                return Err(Error::Dimension(format!("family member is not {n}x{n}")));
            }
            if !is_unipotent(m) {
                return Err(Error::NotUnipotent);
            }
        }
        for (i, a) in members.iter().enumerate() {
            if members[i + 1..].iter().any(|b| !a.commutes_with(b)) {
                return Err(Error::NonCommuting);
            }
        }
        Ok(UnipotentFamily { n, members })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[QMat] {
        &self.members
    }

    /// `η_α = α − 1` for each member.
    pub fn nilpotents(&self) -> Vec<QMat> {
        let id = QMat::identity(self.n);
        self.members.iter().map(|m| m - &id).collect()
    }

    pub fn logs(&self) -> Vec<QMat> {
        self.members
            .iter()
            .map(|m| unipotent_log(m).expect("members are unipotent"))
            .collect()
    }

    /// `dim ⋂ ker η_α`.
    pub fn common_kernel_dim(&self) -> usize {
        let etas = self.nilpotents();
        if etas.is_empty() {
            return self.n;
        }
        let stacked = etas
            .iter()
            .skip(1)
            .fold(etas[0].clone(), |acc, e| acc.vstack(e).expect("same width"));
        self.n - stacked.rank()
    }
}

fn flatten_rank(ms: &[QMat]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> = ms.iter().map(|m| m.entries().to_vec()).collect();
    QMat::from_rows(rows).expect("equal sizes").rank()
}

/// Dimension of the (non-unital) algebra generated by the given matrices.
pub fn generated_algebra_dim(gens: &[QMat]) -> usize {
    let mut basis: Vec<QMat> = Vec::new();
    let mut rank = 0;
    let mut queue: Vec<QMat> = gens.to_vec();
    while let Some(m) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(m.clone());
        let r = flatten_rank(&trial);
        if r == rank {
            continue;
        }
        rank = r;
        basis.push(m.clone());
        for b in &basis {
            queue.push(b * &m);
            queue.push(&m * b);
        }
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBoundReport {
    pub n: usize,
    /// Rank of `Σ`, read off the span of the logarithms.
    pub rank: usize,
    /// `dim_Q` of the algebra spanned by the `η_α`.
    pub algebra_dim: usize,
    pub k: usize,
    /// `n·(n − k)`.
    pub bound: usize,
    pub trivial: bool,
    /// `rank ≤ algebra_dim < bound`, or the family is trivial.
    pub holds: bool,
}

pub fn rank_bound_check(f: &UnipotentFamily) -> RankBoundReport {
    let n = f.dimension();
    let logs = f.logs();
    let rank = flatten_rank(&logs);
    let algebra_dim = generated_algebra_dim(&f.nilpotents());
    let k = f.common_kernel_dim();
    let bound = n * (n - k);
    let trivial = rank == 0;
    RankBoundReport {
        n,
        rank,
        algebra_dim,
        k,
        bound,
        trivial,
        holds: trivial || (rank <= algebra_dim && algebra_dim < bound),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWitness {
    /// `m = κ·(dim_bound)! − 1`.
    pub m: u64,
    /// `α^m − 1`.
    pub eta: QMat,
    pub nilpotency_index: usize,
}

/// Given `α = γ α^κ γ⁻¹`, verifies that `α^m − 1` is nilpotent for
/// `m = κ·(dim_bound)! − 1`.
pub fn unipotent_power_witness(
    alpha: &QMat,
    kappa: u64,
    gamma: &QMat,
    dim_bound: usize,
) -> Result<PowerWitness> {
    if !alpha.is_square() || !gamma.is_square() {
        return Err(Error::NotSquare);
    }
    if alpha.rows() != gamma.rows() {
        return Err(Error::Dimension("alpha and gamma differ in size".into()));
    }
    if kappa < 2 {
        return Err(Error::InvalidArgument("kappa must be at least 2".into()));
    }
    if gamma.det()?.is_zero() || alpha.det()?.is_zero() {
        return Err(Error::Singular);
    }
    if &alpha.pow(kappa) * &gamma.inverse()? != &gamma.inverse()? * alpha {
        return Err(Error::RelationFails);
    }
    let fact = (1..=dim_bound as u64)
        .try_fold(1u64, |acc, i| acc.checked_mul(i))
        .and_then(|f| f.checked_mul(kappa))
        .ok_or_else(|| Error::TooLarge(format!("{kappa}·{dim_bound}!")))?;
    let m = fact - 1;
    let eta = &alpha.pow(m) - &QMat::identity(alpha.rows());
    let nilpotency_index = nilpotency_index(&eta).ok_or(Error::NotNilpotent)?;
    Ok(PowerWitness {
        m,
        eta,
        nilpotency_index,
    })
}

/// How irreducibility over Q of an input polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Degree at most 3 with no rational root.
    Decided,
    /// No rational root and no cyclotomic factor; taken on trust beyond that.
    Asserted,
}

fn has_rational_root(f: &ZPoly) -> Option<bool> {
    let c = f.coeff(0);
    if c.is_zero() {
        return Some(true);
    }
    let c = c.abs().to_u64()?;
    Some(arith::divisors(c).into_iter().any(|d| {
        let d = BigInt::from(d);
        f.eval(&d).is_zero() || f.eval(&-d).is_zero()
    }))
}

/// Rejects polynomials the distinguisher cannot use and reports how
/// irreducibility was settled.
pub fn check_irreducible(f: &ZPoly) -> Result<Irreducibility> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::InvalidArgument("constant polynomial".into()));
    }
    if n == 1 {
        return Ok(Irreducibility::Decided);
    }
    if !f.to_q().is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let rational_root = has_rational_root(f);
    if rational_root == Some(true) {
        return Err(Error::Reducible);
    }
    let fq = f.to_q();
    if cyclotomic_orders(n)
        .into_iter()
        .any(|k| euler_lt(k, n) && cyclotomic(k).to_q().divides(&fq))
    {
        return Err(Error::Reducible);
    }
    if n <= 3 && rational_root == Some(false) {
        Ok(Irreducibility::Decided)
    } else {
        Ok(Irreducibility::Asserted)
    }
}

// a proper cyclotomic factor: φ(k) < deg f
fn euler_lt(k: u64, n: usize) -> bool {
    (arith::euler_phi(k) as usize) < n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Distinction {
    DistinguishedDegree {
        f_degree: usize,
        g_degree: usize,
    },
    DistinguishedAt {
        p: u64,
        f_signature: Signature,
        g_signature: Signature,
    },
    /// Signatures agree at every prime up to the bound where both are
    /// unramified. Never a claim of isomorphism.
    Indistinguishable { bound: u64, primes_compared: usize },
}

impl Distinction {
    pub fn is_distinguished(&self) -> bool {
        !matches!(self, Distinction::Indistinguishable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguisherReport {
    pub f: String,
    pub g: String,
    pub f_irreducibility: Irreducibility,
    pub g_irreducibility: Irreducibility,
    pub verdict: Distinction,
}

/// Compares the splitting patterns of `f` and `g` modulo every prime up to
/// `prime_bound`. Differing patterns at a prime unramified for both mean the
/// fields `Q[z]/f` and `Q[z]/g` are not isomorphic.
pub fn splitting_signature_distinguisher(
    f: &ZPoly,
    g: &ZPoly,
    prime_bound: u64,
) -> Result<DistinguisherReport> {
    let f_irreducibility = check_irreducible(f)?;
    let g_irreducibility = check_irreducible(g)?;
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let verdict = if df != dg {
        Distinction::DistinguishedDegree {
            f_degree: df,
            g_degree: dg,
        }
    } else {
        let mut compared = 0;
        let mut found = None;
        for p in arith::primes_up_to(prime_bound) {
            let (sf, sg) = (ddf_signature(f, p)?, ddf_signature(g, p)?);
            if sf == Signature::Ramified || sg == Signature::Ramified {
                continue;
            }
            compared += 1;
            if sf != sg {
                found = Some(Distinction::DistinguishedAt {
                    p,
                    f_signature: sf,
                    g_signature: sg,
                });
                break;
            }
        }
        found.unwrap_or(Distinction::Indistinguishable {
            bound: prime_bound,
            primes_compared: compared,
        })
    };
    Ok(DistinguisherReport {
        f: f.to_string(),
        g: g.to_string(),
        f_irreducibility,
        g_irreducibility,
        verdict,
    })
}

/// `η_α η_β = η_{αβ} − η_α − η_β` for `η_x = x − 1`.
pub fn eta_closure_identity(alpha: &QMat, beta: &QMat) -> bool {
    let id = QMat::identity(alpha.rows());
    let (ea, eb) = (alpha - &id, beta - &id);
    let eab = &(alpha * beta) - &id;
    &ea * &eb == &(&eab - &ea) - &eb
}
