//! Finite-level simulation of the partial transformation groupoid of an
//! algebraic action: semidirect arithmetic on `Q^n ⋊ GL_n(Q)`, the maps a
//! monoid element induces between finite quotients, partial arrows, orbits,
//! and the polynomial identities satisfied by each generator.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{constructible_family, AlgebraicAction, Word};
use crate::error::{Error, Result};
use crate::exact::{arith, charpoly, QMat, ZMat};
use crate::lattice::{Lattice, LatticeRepr};

/// Largest quotient a level table will enumerate.
pub const LEVEL_LIMIT: u64 = 1 << 16;

/// An element `(a, g)` of `Q^n ⋊ GL_n(Q)`, acting by `x ↦ a + g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElem {
    pub vec: Vec<BigRational>,
    pub mat: QMat,
}

impl SemidirectElem {
    pub fn new(vec: Vec<BigRational>, mat: QMat) -> Result<Self> {
        if !mat.is_square() || mat.rows() != vec.len() {
            return Err(Error::Dimension(format!(
                "vector of length {} with a {}x{} matrix",
                vec.len(),
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(SemidirectElem { vec, mat })
    }

    pub fn identity(n: usize) -> Self {
        SemidirectElem {
            vec: vec![BigRational::zero(); n],
            mat: QMat::identity(n),
        }
    }

    /// `(x, 1)`.
    pub fn translation(x: &[BigInt]) -> Self {
        SemidirectElem {
            vec: x.iter().cloned().map(BigRational::from_integer).collect(),
            mat: QMat::identity(x.len()),
        }
    }

    /// `(0, m)`.
    pub fn linear(m: QMat) -> Result<Self> {
        let n = m.rows();
        Self::new(vec![BigRational::zero(); n], m)
    }

    pub fn rank(&self) -> usize {
        self.vec.len()
    }

    /// `(a, g)(b, h) = (a + g·b, g·h)`.
    pub fn mul(&self, other: &Self) -> Self {
        let gb = self.mat.mul_vec(&other.vec);
        SemidirectElem {
            vec: self.vec.iter().zip(gb).map(|(a, b)| a + b).collect(),
            mat: &self.mat * &other.mat,
        }
    }

    /// `(a, g)⁻¹ = (−g⁻¹a, g⁻¹)`.
    pub fn inv(&self) -> Self {
        let gi = self.mat.inverse().expect("semidirect elements are invertible");
        let v = gi.mul_vec(&self.vec).into_iter().map(|x| -x).collect();
        SemidirectElem { vec: v, mat: gi }
    }

    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.mat
            .mul_vec(x)
            .into_iter()
            .zip(&self.vec)
            .map(|(y, a)| y + a)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.vec.iter().all(Zero::is_zero) && self.mat.is_identity()
    }
}

fn to_q_vec(x: &[BigInt]) -> Vec<BigRational> {
    x.iter().cloned().map(BigRational::from_integer).collect()
}

fn to_z_vec(x: &[BigRational]) -> Option<Vec<BigInt>> {
    x.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
}

/// The injection `Z^n/σ_s⁻¹C → Z^n/C`, `x ↦ σ_s x`, tabulated on canonical
/// coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub word: Word,
    pub matrix: ZMat,
    pub source: Lattice,
    pub target: Lattice,
    pub table: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    /// `[Z^n : σ_s Z^n + C]`.
    pub image_index: BigInt,
}

impl LevelMap {
    /// Image of an arbitrary vector, reduced modulo the target level.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&Vec<BigInt>> = self.table.iter().map(|(_, y)| y).collect();
        images.len() == self.table.len()
    }

    pub fn image_size(&self) -> usize {
        self.table.len()
    }
}

pub fn level_map(a: &AlgebraicAction, s: &Word, c: &Lattice) -> Result<LevelMap> {
    level_map_limited(a, s, c, LEVEL_LIMIT)
}

pub fn level_map_limited(a: &AlgebraicAction, s: &Word, c: &Lattice, limit: u64) -> Result<LevelMap> {
    if c.rank() != a.rank() {
        return Err(Error::RankMismatch(c.rank(), a.rank()));
    }
    let m = a.eval_monoid_word(s)?;
    let source = c.preimage(&m)?;
    let table = source
        .representatives(limit)?
        .into_iter()
        .map(|x| {
            let y = c.reduce(&m.mul_vec(&x))?;
            Ok((x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    let image_index = Lattice::whole(a.rank()).image(&m)?.sum(c)?.index();
    Ok(LevelMap {
        word: s.clone(),
        matrix: m,
        source,
        target: c.clone(),
        table,
        image_index,
    })
}

/// An arrow of the groupoid at level `C`: the element `(z, σ_w)` for a group
/// word `w` and an integer translation `z`, restricted to the points of
/// `Z^n` it maps back into `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialArrow {
    pub word: Word,
    pub translation: Vec<BigInt>,
    pub elem: SemidirectElem,
    pub level: Lattice,
    /// `{x ∈ Z^n : σ_w x ∈ Z^n}`.
    pub domain: Lattice,
    /// `{x ∈ domain : σ_w x ∈ C}`; the arrow is a map `domain/source → Z^n/C`.
    pub source: Lattice,
}

impl PartialArrow {
    pub fn new(a: &AlgebraicAction, word: &Word, translation: &[BigInt], level: &Lattice) -> Result<Self> {
        let n = a.rank();
        if translation.len() != n {
            return Err(Error::Dimension(format!("translation of length {} in rank {}", translation.len(), n)));
        }
        if level.rank() != n {
            return Err(Error::RankMismatch(level.rank(), n));
        }
        let m = a.eval_word(word)?;
        let q = m.common_denominator();
        let scaled = m.scale(&BigRational::from_integer(q.clone())).to_z().expect("cleared denominators");
        let domain = Lattice::scaled(n, &q)?.preimage(&scaled)?;
        let q_level = Lattice::from_generator_matrix(&level.basis().scale(&q))?;
        let source = q_level.preimage(&scaled)?;
        let mut elem = SemidirectElem::translation(translation);
        elem = elem.mul(&SemidirectElem::linear(m)?);
        Ok(PartialArrow {
            word: word.clone(),
            translation: translation.to_vec(),
            elem,
            level: level.clone(),
            domain,
            source,
        })
    }

    pub fn defined_at(&self, x: &[BigInt]) -> Result<bool> {
        self.domain.member(x)
    }

    /// Target coset of `x`, or `None` outside the domain.
    pub fn apply(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        match to_z_vec(&self.elem.apply(&to_q_vec(x))) {
            Some(y) => Ok(Some(self.level.reduce(&y)?)),
            None => Ok(None),
        }
    }

    /// Source cosets inside the domain, each with its target.
    pub fn table(&self, limit: u64) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
        let mut out = Vec::new();
        for x in self.source.representatives(limit)? {
            if let Some(y) = self.apply(&x)? {
                out.push((x, y));
            }
        }
        Ok(out)
    }
}

/// Orbit of `start + C` under translation by the given vectors (all of
/// `Z^n`, via the standard basis, when `None`).
pub fn translation_orbit(
    c: &Lattice,
    start: &[BigInt],
    translations: Option<&[Vec<BigInt>]>,
) -> Result<BTreeSet<Vec<BigInt>>> {
    let n = c.rank();
    let basis: Vec<Vec<BigInt>>;
    let steps = match translations {
        Some(t) => t,
        None => {
            basis = ZMat::identity(n).to_rows();
            &basis
        }
    };
    let first = c.reduce(start)?;
    let mut seen = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(x) = queue.pop_front() {
        for t in steps {
            if t.len() != n {
                return Err(Error::Dimension(format!("translation of length {} in rank {}", t.len(), n)));
            }
            let y = c.reduce(&x.iter().zip(t).map(|(a, b)| a + b).collect::<Vec<_>>())?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Outcome of checking `κ_d σ^d x = Σ κ_i σ^i x` and its semidirect form
/// `s^d (κ_d x) = (κ_0 x) s (κ_1 x) s ⋯ (κ_{d−1} x) s` for one monoid word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChIdentityReport {
    pub word: String,
    pub d: usize,
    /// `κ_0, …, κ_d` with `κ_d z^d − Σ κ_i z^i = κ_d · det(z − σ)`.
    #[serde(with = "crate::json::int_vec")]
    pub kappa: Vec<BigInt>,
    /// `ε = κ_d − Σ_{i<d} κ_i`.
    #[serde(with = "crate::json::int")]
    pub epsilon: BigInt,
    #[serde(with = "crate::json::rat")]
    pub det_one_minus: BigRational,
    /// `ε = κ_d · det(1 − σ)`.
    pub epsilon_matches: bool,
    pub samples: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

/// Standard basis vectors followed by their sum.
pub fn default_samples(n: usize) -> Vec<Vec<BigInt>> {
    let mut out = ZMat::identity(n).to_rows();
    if n > 1 {
        out.push(vec![BigInt::one(); n]);
    }
    out
}

pub fn verify_ch_identity(
    a: &AlgebraicAction,
    s: &Word,
    samples: Option<&[Vec<BigInt>]>,
) -> Result<ChIdentityReport> {
    let n = a.rank();
    let m = a.eval_monoid_word(s)?.to_q();
    let chi = charpoly(&m)?;
    let d = chi.degree().expect("characteristic polynomial is nonzero");
    let kd = chi.denominator_lcm();
    let kdq = BigRational::from_integer(kd.clone());
    let mut kappa: Vec<BigInt> = (0..d)
        .map(|i| (-(chi.coeff(i) * &kdq)).to_integer())
        .collect();
    kappa.push(kd.clone());
    let epsilon = &kd - kappa[..d].iter().sum::<BigInt>();
    let det_one_minus = (&QMat::identity(n) - &m).det()?;
    let epsilon_matches = BigRational::from_integer(epsilon.clone()) == &kdq * &det_one_minus;

    let owned;
    let samples = match samples {
        Some(s) => s,
        None => {
            owned = default_samples(n);
            &owned
        }
    };
    let word = s.display(&a.names());
    let step = SemidirectElem::linear(m.clone())?;
    let powers: Vec<QMat> = std::iter::successors(Some(QMat::identity(n)), |p| Some(p * &m))
        .take(d + 1)
        .collect();
    let mut failures = Vec::new();
    for x in samples {
        if x.len() != n {
            return Err(Error::Dimension(format!("sample of length {} in rank {}", x.len(), n)));
        }
        let xq = to_q_vec(x);
        let scaled = |k: &BigInt| -> Vec<BigRational> {
            let k = BigRational::from_integer(k.clone());
            xq.iter().map(|v| v * &k).collect()
        };

        let lhs = powers[d].mul_vec(&scaled(&kappa[d]));
        let mut rhs = vec![BigRational::zero(); n];
        for (i, k) in kappa[..d].iter().enumerate() {
            for (r, v) in rhs.iter_mut().zip(powers[i].mul_vec(&scaled(k))) {
                *r += v;
            }
        }
        if lhs != rhs {
            failures.push(format!("module identity fails at {}", fmt_vec(x)));
        }

        let mut left = SemidirectElem::identity(n);
        for _ in 0..d {
            left = left.mul(&step);
        }
        left = left.mul(&SemidirectElem::new(scaled(&kappa[d]), QMat::identity(n))?);
        let mut right = SemidirectElem::identity(n);
        for k in &kappa[..d] {
            right = right
                .mul(&SemidirectElem::new(scaled(k), QMat::identity(n))?)
                .mul(&step);
        }
        if left != right {
            failures.push(format!("semidirect identity fails at {}", fmt_vec(x)));
        }
    }
    Ok(ChIdentityReport {
        word,
        d,
        kappa,
        epsilon,
        det_one_minus,
        epsilon_matches,
        samples: samples.len(),
        holds: failures.is_empty() && epsilon_matches,
        failures,
    })
}

fn fmt_vec(x: &[BigInt]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Checks `γ^d α^{κ_d} = α^{κ_0} γ α^{κ_1} γ ⋯ α^{κ_{d−1}} γ` for
/// `κ = (κ_0, …, κ_d)`.
pub fn verify_gamma_alpha_relation(alpha: &QMat, gamma: &QMat, kappa: &[i64]) -> Result<bool> {
    if !alpha.is_square() || !gamma.is_square() {
        return Err(Error::NotSquare);
    }
    if alpha.rows() != gamma.rows() {
        return Err(Error::Dimension("alpha and gamma differ in size".into()));
    }
    let (&kd, rest) = kappa
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty kappa".into()))?;
    let d = rest.len() as u64;
    let lhs = &gamma.pow(d) * &alpha.zpow(kd)?;
    let mut rhs = QMat::identity(alpha.rows());
    for &k in rest {
        rhs = &(&rhs * &alpha.zpow(k)?) * gamma;
    }
    Ok(lhs == rhs)
}

/// Primes dividing a denominator of `σ_w x`.
pub fn denominator_support(a: &AlgebraicAction, w: &Word, x: &[BigInt]) -> Result<BTreeSet<BigInt>> {
    if x.len() != a.rank() {
        return Err(Error::Dimension(format!("vector of length {} in rank {}", x.len(), a.rank())));
    }
    let y = a.eval_word(w)?.mul_vec(&to_q_vec(x));
    let mut out = BTreeSet::new();
    for v in y {
        let den = v.denom();
        if den.is_one() {
            continue;
        }
        let primes = arith::prime_support(den)
            .ok_or_else(|| Error::Unfactored(den.to_string()))?;
        out.extend(primes);
    }
    Ok(out)
}

/// Primes dividing some index `#(Z^n/C)` of a constructible `C`: those of
/// the generator determinants, since `σ_s Z^n` has index `|det σ_s|` and
/// every index divides a product of such.
pub fn index_primes(a: &AlgebraicAction) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    for g in a.generators() {
        let d = g.matrix.det()?.abs();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        out.extend(arith::prime_support(&d).ok_or_else(|| Error::Unfactored(d.to_string()))?);
    }
    Ok(out)
}

/// One `(arrow, source coset, target coset)` triple of a level trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub arrow: String,
    #[serde(with = "crate::json::int_vec")]
    pub source: Vec<BigInt>,
    #[serde(with = "crate::json::int_vec")]
    pub target: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMapSummary {
    pub word: String,
    pub source: LatticeRepr,
    pub entries: usize,
    pub injective: bool,
    #[serde(with = "crate::json::int")]
    pub image_index: BigInt,
    /// `#image · [Z^n : σ_s Z^n + C] = #(Z^n/C)`.
    pub index_identity: bool,
}

/// Everything the simulator reports about one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: LatticeRepr,
    #[serde(with = "crate::json::int")]
    pub order: BigInt,
    #[serde(with = "crate::json::int_vec")]
    pub cyclic_factors: Vec<BigInt>,
    pub family_depth: usize,
    pub maps: Vec<LevelMapSummary>,
    pub orbit_size: usize,
    pub orbit_covers_level: bool,
    pub identities: Vec<ChIdentityReport>,
    pub trace: Vec<TraceEntry>,
}

impl LevelReport {
    /// Every theorem-backed check at this level passed.
    pub fn consistent(&self) -> bool {
        self.orbit_covers_level
            && self.maps.iter().all(|m| m.injective && m.index_identity)
            && self.identities.iter().all(|r| r.holds)
    }
}

/// Runs the level maps of every generator, the translation orbit of `0`,
/// and the generator identities at a constructible level `C`.
pub fn simulate_level(a: &AlgebraicAction, c: &Lattice, depth: usize) -> Result<LevelReport> {
    if c.rank() != a.rank() {
        return Err(Error::RankMismatch(c.rank(), a.rank()));
    }
    let family = constructible_family(a, depth)?;
    if !family.contains(c) {
        return Err(Error::NotConstructible(depth));
    }
    let names = a.names();
    let order = c.index();
    let mut maps = Vec::new();
    let mut trace = Vec::new();
    let mut identities = Vec::new();
    for g in 0..a.generators().len() {
        let w = Word::generator(g);
        let lm = level_map(a, &w, c)?;
        let label = w.display(&names);
        for (x, y) in &lm.table {
            trace.push(TraceEntry {
                arrow: label.clone(),
                source: x.clone(),
                target: y.clone(),
            });
        }
        maps.push(LevelMapSummary {
            word: label,
            source: lm.source.to_json_rows(),
            entries: lm.table.len(),
            injective: lm.is_injective(),
            image_index: lm.image_index.clone(),
            index_identity: BigInt::from(lm.image_size()) * &lm.image_index == order,
        });
        identities.push(verify_ch_identity(a, &w, None)?);
    }
    let orbit = translation_orbit(c, &vec![BigInt::zero(); a.rank()], None)?;
    Ok(LevelReport {
        level: c.to_json_rows(),
        cyclic_factors: c.quotient().cyclic_factors().to_vec(),
        family_depth: depth,
        maps,
        orbit_size: orbit.len(),
        orbit_covers_level: order.to_usize() == Some(orbit.len()),
        order,
        identities,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Generator, MonoidKind};
    use crate::exact::{companion_z, ZPoly};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        to_q_vec(&v(xs))
    }

    fn times(k: i64) -> AlgebraicAction {
        AlgebraicAction::scalars_on_z(&[k]).unwrap()
    }

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_i64_rows(rows).unwrap()
    }

    fn fib() -> AlgebraicAction {
        AlgebraicAction::single("s", companion_z(&ZPoly::from_i64(&[-1, -1, 1])).unwrap()).unwrap()
    }

    #[test]
    fn semidirect_law() {
        let a = SemidirectElem::new(qv(&[1]), QMat::from_i64_rows(&[&[2]])).unwrap();
        let b = SemidirectElem::new(qv(&[1]), QMat::from_i64_rows(&[&[3]])).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.vec, qv(&[3]));
        assert_eq!(ab.mat, QMat::from_i64_rows(&[&[6]]));
        assert_eq!(SemidirectElem::identity(1).mul(&a), a);
        assert!(a.mul(&a.inv()).is_identity());
        assert!(a.inv().mul(&a).is_identity());
        assert_eq!(ab.apply(&qv(&[5])), a.apply(&b.apply(&qv(&[5]))));
    }

    #[test]
    fn doubling_level_map() {
        let lm = level_map(&times(2), &Word::generator(0), &lat(&[&[4]])).unwrap();
        assert_eq!(lm.source, lat(&[&[2]]));
        assert_eq!(lm.table, vec![(v(&[0]), v(&[0])), (v(&[1]), v(&[2]))]);
        assert!(lm.is_injective());
        assert_eq!(lm.image_index, BigInt::from(2));
    }

    #[test]
    fn tripling_level_map_is_bijective() {
        let lm = level_map(&times(3), &Word::generator(0), &lat(&[&[4]])).unwrap();
        assert_eq!(lm.source, lat(&[&[4]]));
        assert_eq!(lm.table.len(), 4);
        assert!(lm.is_injective());
        assert_eq!(lm.image_index, BigInt::one());
    }

    #[test]
    fn identity_word_is_identity_map() {
        let c = lat(&[&[2, 1], &[0, 3]]);
        let lm = level_map(&fib(), &Word::identity(), &c).unwrap();
        assert!(lm.table.iter().all(|(x, y)| x == y));
        assert_eq!(lm.table.len(), 6);
    }

    #[test]
    fn level_maps_compose() {
        let a = AlgebraicAction::scalars_on_z(&[2, 3]).unwrap();
        let c = lat(&[&[12]]);
        let (s, t) = (Word::generator(0), Word::generator(1));
        let ms = level_map(&a, &s, &c).unwrap();
        let mt = level_map(&a, &t, &ms.source).unwrap();
        let mst = level_map(&a, &s.concat(&t), &c).unwrap();
        assert_eq!(mt.source, mst.source);
        for (x, y) in &mst.table {
            let via = ms.apply(&mt.apply(x).unwrap()).unwrap();
            assert_eq!(&via, y);
        }
    }

    #[test]
    fn orbits() {
        let all = translation_orbit(&lat(&[&[4]]), &v(&[1]), None).unwrap();
        assert_eq!(all.len(), 4);
        let two = translation_orbit(&lat(&[&[1, 1], &[0, 2]]), &v(&[0, 0]), None).unwrap();
        assert_eq!(two.len(), 2);
        let sub = translation_orbit(&lat(&[&[4]]), &v(&[1]), Some(&[v(&[2])])).unwrap();
        assert_eq!(sub, BTreeSet::from([v(&[1]), v(&[3])]));
    }

    #[test]
    fn ch_identity_examples() {
        let r = verify_ch_identity(&times(2), &Word::generator(0), None).unwrap();
        assert_eq!((r.d, r.kappa.clone()), (1, v(&[2, 1])));
        assert!(r.holds);

        let r = verify_ch_identity(&fib(), &Word::generator(0), None).unwrap();
        assert_eq!(r.kappa, v(&[1, 1, 1]));
        assert_eq!(r.samples, 3);
        assert!(r.holds);
        assert_eq!(r.epsilon, BigInt::from(-1));
        assert_eq!(r.det_one_minus, BigRational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn gamma_alpha_relation() {
        // α = γ α² γ⁻¹, i.e. γ α² = α γ
        let alpha = QMat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let gamma = QMat::from_i64_rows(&[&[1, 0], &[0, 2]]);
        assert!(verify_gamma_alpha_relation(&alpha, &gamma, &[1, 2]).unwrap());
        let swapped = QMat::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(!verify_gamma_alpha_relation(&alpha, &swapped, &[1, 2]).unwrap());
    }

    #[test]
    fn denominator_examples() {
        let a = times(2);
        let s_inv = Word::power(0, -1);
        assert_eq!(denominator_support(&a, &s_inv, &v(&[1])).unwrap(), BTreeSet::from([BigInt::from(2)]));
        let back = Word::from_syllables(vec![(0, -1), (0, 1)]);
        assert!(denominator_support(&a, &back, &v(&[1])).unwrap().is_empty());

        let sqrt2 = AlgebraicAction::single("s", companion_z(&ZPoly::from_i64(&[-2, 0, 1])).unwrap()).unwrap();
        let primes = denominator_support(&sqrt2, &s_inv, &v(&[1, 0])).unwrap();
        assert!(primes.is_subset(&index_primes(&sqrt2).unwrap()));
    }

    #[test]
    fn partial_arrow_of_inverse() {
        let a = times(2);
        let arrow = PartialArrow::new(&a, &Word::power(0, -1), &v(&[1]), &lat(&[&[4]])).unwrap();
        assert_eq!(arrow.domain, lat(&[&[2]]));
        assert_eq!(arrow.source, lat(&[&[8]]));
        assert!(!arrow.defined_at(&v(&[3])).unwrap());
        assert_eq!(arrow.apply(&v(&[6])).unwrap(), Some(v(&[0])));
        let table = arrow.table(64).unwrap();
        assert_eq!(table.len(), 4);
        let targets: BTreeSet<_> = table.iter().map(|(_, y)| y.clone()).collect();
        assert_eq!(targets.len(), 4);
    }

    #[test]
    fn simulated_levels() {
        let r = simulate_level(&times(2), &lat(&[&[4]]), 4).unwrap();
        assert_eq!(r.trace.len(), 2);
        assert_eq!(r.orbit_size, 4);
        assert!(r.consistent());
        let whole = simulate_level(&times(2), &Lattice::whole(1), 2).unwrap();
        assert_eq!(whole.order, BigInt::one());
        assert_eq!(
            simulate_level(&times(2), &lat(&[&[3]]), 2),
            Err(Error::NotConstructible(2))
        );
        let free = AlgebraicAction::new(
            2,
            vec![Generator {
                name: "s".into(),
                matrix: ZMat::from_i64_rows(&[&[2, 0], &[0, 1]]),
            }],
            MonoidKind::Free,
        )
        .unwrap();
        assert!(simulate_level(&free, &lat(&[&[2, 0], &[0, 1]]), 2).unwrap().consistent());
    }
}
