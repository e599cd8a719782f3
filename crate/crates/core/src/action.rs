//! Algebraic actions of finitely generated monoids on `Z^n` by injective
//! integer matrices, and the hypothesis checkers run on them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    arith, charpoly, charpoly_z, cyclotomic, hnf, unimodular_divisor, QMat, UnimodularSearch,
    ZMat,
};
use crate::lattice::{Lattice, LatticeRepr};

pub const DEFAULT_WORD_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoidKind {
    Free,
    FreeAbelian,
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonoidKind::Free => "free",
            MonoidKind::FreeAbelian => "free-abelian",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub matrix: ZMat,
}

/// `σ: S ↷ Z^n` with `S` free or free abelian on the named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicAction {
    rank: usize,
    generators: Vec<Generator>,
    kind: MonoidKind,
}

impl AlgebraicAction {
    pub fn new(rank: usize, generators: Vec<Generator>, kind: MonoidKind) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let mut names = HashSet::new();
        for g in &generators {
            if !names.insert(g.name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
            if g.matrix.rows() != rank || g.matrix.cols() != rank {
                return Err(Error::Dimension(format!(
                    "generator `{}` is {}x{}, expected {rank}x{rank}",
                    g.name,
                    g.matrix.rows(),
                    g.matrix.cols()
                )));
            }
            if g.matrix.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        if kind == MonoidKind::FreeAbelian {
            for (i, a) in generators.iter().enumerate() {
                for b in &generators[i + 1..] {
                    if !a.matrix.commutes_with(&b.matrix) {
                        return Err(Error::NonCommuting);
                    }
                }
            }
        }
        Ok(AlgebraicAction {
            rank,
            generators,
            kind,
        })
    }

    /// Action of `N` by powers of one matrix.
    pub fn single(name: &str, matrix: ZMat) -> Result<Self> {
        let rank = matrix.rows();
        Self::new(
            rank,
            vec![Generator {
                name: name.to_string(),
                matrix,
            }],
            MonoidKind::FreeAbelian,
        )
    }

    /// Multiplication by the given integers on `Z`.
    pub fn scalars_on_z(factors: &[i64]) -> Result<Self> {
        let gens = factors
            .iter()
            .map(|&k| Generator {
                name: format!("x{k}"),
                matrix: ZMat::from_i64_rows(&[&[k]]),
            })
            .collect();
        Self::new(1, gens, MonoidKind::FreeAbelian)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrix(&self, i: usize) -> &ZMat {
        &self.generators[i].matrix
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    /// Matrix of a group word, acting on `Q^n`.
    pub fn eval_word(&self, w: &Word) -> Result<QMat> {
        let mut acc = QMat::identity(self.rank);
        for &(g, e) in w.letters() {
            let m = self
                .generators
                .get(g)
                .ok_or_else(|| Error::InvalidArgument(format!("no generator {g}")))?;
            acc = &acc * &m.matrix.to_q().zpow(e)?;
        }
        Ok(acc)
    }

    /// Integer matrix of a monoid word (nonnegative exponents only).
    pub fn eval_monoid_word(&self, w: &Word) -> Result<ZMat> {
        if !w.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "{} is not a monoid word",
                w.display(&self.names())
            )));
        }
        let mut acc = ZMat::identity(self.rank);
        for &(g, e) in w.letters() {
            let m = self
                .generators
                .get(g)
                .ok_or_else(|| Error::InvalidArgument(format!("no generator {g}")))?;
            acc = &acc * &m.matrix.pow(e as u64);
        }
        Ok(acc)
    }
}

/// A word in the generators and their inverses, as `(generator, exponent)`
/// syllables read left to right; the matrix of `g^a h^b` is `M_g^a · M_h^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power(g: usize, e: i64) -> Self {
        Word(vec![(g, e)]).reduced()
    }

    pub fn from_syllables(s: Vec<(usize, i64)>) -> Self {
        Word(s).reduced()
    }

    /// `g_1^{e_1} ⋯ g_m^{e_m}` from an exponent vector.
    pub fn from_exponents(e: &[i64]) -> Self {
        Word(e.iter().copied().enumerate().collect()).reduced()
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn length(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        Word(s).reduced()
    }

    /// Free reduction: merge equal neighbours and drop zero exponents.
    fn reduced(self) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(self.0.len());
        for (g, e) in self.0 {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    /// Exponent vector (the normal form in a free abelian monoid).
    pub fn exponents(&self, generators: usize) -> Vec<i64> {
        let mut e = vec![0; generators];
        for &(g, x) in &self.0 {
            e[g] += x;
        }
        e
    }

    pub fn normalize(&self, kind: MonoidKind, generators: usize) -> Self {
        match kind {
            MonoidKind::Free => self.clone(),
            MonoidKind::FreeAbelian => Self::from_exponents(&self.exponents(generators)),
        }
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let name = names.get(g).copied().unwrap_or("?");
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Every nontrivial group word up to the given length: exponent vectors for
/// free abelian monoids, freely reduced words otherwise. Shorter words first.
pub fn group_words(kind: MonoidKind, generators: usize, bound: usize) -> Vec<Word> {
    let mut out = Vec::new();
    match kind {
        MonoidKind::FreeAbelian => {
            for len in 1..=bound as i64 {
                let mut found = Vec::new();
                exponent_vectors(generators, len, &mut vec![], &mut found);
                found.sort_by_key(|e: &Vec<i64>| (e.iter().filter(|&&x| x < 0).count(), e.clone()));
                out.extend(found.iter().map(|e| Word::from_exponents(e)));
            }
        }
        MonoidKind::Free => {
            let mut layer: Vec<Vec<(usize, i64)>> = vec![vec![]];
            for _ in 0..bound {
                let mut next = Vec::new();
                for w in &layer {
                    for g in 0..generators {
                        for s in [1i64, -1] {
                            if let Some(&(lg, le)) = w.last() {
                                if lg == g && le.signum() != s {
                                    continue;
                                }
                            }
                            let mut nw = w.clone();
                            nw.push((g, s));
                            next.push(nw);
                        }
                    }
                }
                out.extend(next.iter().map(|w| Word::from_syllables(w.clone())));
                layer = next;
            }
        }
    }
    out
}

// exponent vectors with l1-norm exactly `len`
fn exponent_vectors(m: usize, len: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let used: i64 = prefix.iter().map(|x| x.abs()).sum();
    if prefix.len() == m {
        if used == len {
            out.push(prefix.clone());
        }
        return;
    }
    let left = len - used;
    for x in -left..=left {
        prefix.push(x);
        exponent_vectors(m, len, prefix, out);
        prefix.pop();
    }
}

/// Every nonempty positive word of length at most `bound` in a free monoid.
fn positive_words(generators: usize, bound: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<(usize, i64)>> = vec![vec![]];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..generators {
                let mut nw = w.clone();
                nw.push((g, 1));
                next.push(nw);
            }
        }
        out.extend(next.iter().map(|w| Word::from_syllables(w.clone())));
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandingReport {
    /// Every generator has nonzero determinant; checking generators suffices.
    pub fi_holds: bool,
    #[serde(with = "crate::json::int_vec")]
    pub determinants: Vec<BigInt>,
    /// Some generator has `|det| > 1`.
    pub non_automorphic: bool,
    pub faithful_on_generators: bool,
    pub faithfulness_word_bound: usize,
    pub faithfulness_witness: Option<String>,
    pub jf_note: String,
    pub pc_note: String,
}

/// Finite index, non-automorphic, and faithfulness (up to `word_bound`).
pub fn check_standing(a: &AlgebraicAction, word_bound: usize) -> Result<StandingReport> {
    let determinants: Vec<BigInt> = a
        .generators
        .iter()
        .map(|g| g.matrix.det())
        .collect::<Result<_>>()?;
    let fi_holds = determinants.iter().all(|d| !d.is_zero());
    let non_automorphic = determinants.iter().any(|d| d.abs() > BigInt::one());
    let names = a.names();

    let mut witness = None;
    for (i, g) in a.generators.iter().enumerate() {
        if g.matrix.is_identity() {
            witness = Some(format!("{} acts as the identity", names[i]));
            break;
        }
        if let Some(h) = a.generators[i + 1..].iter().find(|h| h.matrix == g.matrix) {
            witness = Some(format!("{} and {} have the same matrix", g.name, h.name));
            break;
        }
    }
    if witness.is_none() {
        witness = match a.kind {
            MonoidKind::FreeAbelian => group_words(a.kind, a.generators.len(), word_bound)
                .into_iter()
                .find_map(|w| match a.eval_word(&w) {
                    Ok(m) if m.is_identity() => {
                        Some(format!("{} acts trivially", w.display(&names)))
                    }
                    _ => None,
                }),
            MonoidKind::Free => {
                let mut seen: HashMap<ZMat, Word> = HashMap::new();
                let mut hit = None;
                for w in positive_words(a.generators.len(), word_bound) {
                    let m = a.eval_monoid_word(&w)?;
                    if let Some(prev) = seen.get(&m) {
                        hit = Some(format!(
                            "{} and {} act identically",
                            prev.display(&names),
                            w.display(&names)
                        ));
                        break;
                    }
                    seen.insert(m, w);
                }
                hit
            }
        };
    }

    let (jf_note, pc_note) = match a.kind {
        MonoidKind::FreeAbelian => (
            "holds automatically: the monoid is left Ore and Z^n is torsion-free".to_string(),
            "holds: abelian monoids are left reversible".to_string(),
        ),
        MonoidKind::Free if a.generators.len() <= 1 => (
            "holds automatically: the monoid is left Ore and Z^n is torsion-free".to_string(),
            "holds: abelian monoids are left reversible".to_string(),
        ),
        MonoidKind::Free => (
            "not checked: a free monoid on two or more generators is not left Ore".to_string(),
            "not checked: a free monoid on two or more generators is not left reversible"
                .to_string(),
        ),
    };

    Ok(StandingReport {
        fi_holds,
        determinants,
        non_automorphic,
        faithful_on_generators: witness.is_none(),
        faithfulness_word_bound: word_bound,
        faithfulness_witness: witness,
        jf_note,
        pc_note,
    })
}

/// How a member of the constructible family was first obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum Derivation {
    Whole,
    Image { generator: usize, of: usize },
    Preimage { generator: usize, of: usize },
    Intersection { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub lattice: Lattice,
    pub index: BigInt,
    /// Closure round in which the lattice first appeared.
    pub depth: usize,
    pub derivation: Derivation,
}

/// Constructible subgroups reachable from `Z^n` within a number of closure
/// rounds. Each round applies every generator's image and preimage to, and
/// intersects every pair of, the lattices known after the previous round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFamily {
    pub members: Vec<FamilyMember>,
    /// Pairs `(i, j)` with `members[i] ⊆ members[j]`, `i ≠ j`.
    pub inclusions: Vec<(usize, usize)>,
    /// One further round would add nothing.
    pub saturated: bool,
    pub depth: usize,
}

impl ConstructibleFamily {
    pub fn lattices(&self) -> impl Iterator<Item = &Lattice> {
        self.members.iter().map(|m| &m.lattice)
    }

    pub fn position(&self, l: &Lattice) -> Option<usize> {
        self.members.iter().position(|m| &m.lattice == l)
    }

    pub fn contains(&self, l: &Lattice) -> bool {
        self.position(l).is_some()
    }

    /// Members that appeared within the first `k` rounds.
    pub fn up_to_depth(&self, k: usize) -> impl Iterator<Item = &FamilyMember> {
        self.members.iter().filter(move |m| m.depth <= k)
    }

    /// Rebuilds member `i` from its derivation chain.
    pub fn replay(&self, a: &AlgebraicAction, i: usize) -> Result<Lattice> {
        match &self.members[i].derivation {
            Derivation::Whole => Ok(Lattice::whole(a.rank())),
            Derivation::Image { generator, of } => {
                self.replay(a, *of)?.image(a.matrix(*generator))
            }
            Derivation::Preimage { generator, of } => {
                self.replay(a, *of)?.preimage(a.matrix(*generator))
            }
            Derivation::Intersection { left, right } => {
                self.replay(a, *left)?.intersect(&self.replay(a, *right)?)
            }
        }
    }

    pub fn summary(&self) -> FamilySummary {
        FamilySummary {
            depth: self.depth,
            saturated: self.saturated,
            size: self.members.len(),
            index_set: self.index_set().into_iter().collect(),
            members: self
                .members
                .iter()
                .map(|m| m.lattice.to_json_rows())
                .collect(),
        }
    }

    pub fn index_set(&self) -> BTreeSet<BigInt> {
        self.members.iter().map(|m| m.index.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub depth: usize,
    pub saturated: bool,
    pub size: usize,
    #[serde(with = "crate::json::int_vec")]
    pub index_set: Vec<BigInt>,
    pub members: Vec<LatticeRepr>,
}

struct Closure<'a> {
    action: &'a AlgebraicAction,
    members: Vec<FamilyMember>,
    seen: HashMap<Lattice, usize>,
}

impl Closure<'_> {
    // candidates produced by one round from members[..known] where at least
    // one input appeared in the previous round
    fn round_candidates(&self, known: usize, fresh_from: usize) -> Result<Vec<(Lattice, Derivation)>> {
        let mut out = Vec::new();
        for i in fresh_from..known {
            let l = &self.members[i].lattice;
            for (g, gen) in self.action.generators.iter().enumerate() {
                out.push((l.image(&gen.matrix)?, Derivation::Image { generator: g, of: i }));
                out.push((
                    l.preimage(&gen.matrix)?,
                    Derivation::Preimage { generator: g, of: i },
                ));
            }
        }
        for j in fresh_from..known {
            for i in 0..j {
                let meet = self.members[i].lattice.intersect(&self.members[j].lattice)?;
                out.push((meet, Derivation::Intersection { left: i, right: j }));
            }
        }
        Ok(out)
    }
}

pub fn constructible_family(a: &AlgebraicAction, depth: usize) -> Result<ConstructibleFamily> {
    let whole = Lattice::whole(a.rank());
    let mut c = Closure {
        action: a,
        members: vec![FamilyMember {
            index: BigInt::one(),
            lattice: whole.clone(),
            depth: 0,
            derivation: Derivation::Whole,
        }],
        seen: HashMap::from([(whole, 0)]),
    };
    let mut fresh_from = 0;
    let mut saturated = false;
    for round in 1..=depth + 1 {
        let known = c.members.len();
        let mut added = false;
        for (l, d) in c.round_candidates(known, fresh_from)? {
            if c.seen.contains_key(&l) {
                continue;
            }
            added = true;
            if round > depth {
                break;
            }
            c.seen.insert(l.clone(), c.members.len());
            c.members.push(FamilyMember {
                index: l.index(),
                lattice: l,
                depth: round,
                derivation: d,
            });
        }
        if !added {
            saturated = true;
            break;
        }
        fresh_from = known;
    }

    let mut inclusions = Vec::new();
    for (i, small) in c.members.iter().enumerate() {
        for (j, big) in c.members.iter().enumerate() {
            if i != j && big.lattice.contains(&small.lattice)? {
                inclusions.push((i, j));
            }
        }
    }
    Ok(ConstructibleFamily {
        members: c.members,
        inclusions,
        saturated,
        depth,
    })
}

/// `{#(Z^n / C) : C constructible within depth}`.
pub fn index_set(a: &AlgebraicAction, depth: usize) -> Result<BTreeSet<BigInt>> {
    Ok(constructible_family(a, depth)?.index_set())
}

/// Orders `k` with `φ(k) ≤ n`, enumerated over `k ≤ 2n²`.
pub fn cyclotomic_orders(n: usize) -> Vec<u64> {
    let n = n as u64;
    (1..=(2 * n * n).max(2))
        .filter(|&k| arith::euler_phi(k) <= n)
        .collect()
}

/// Smallest `k` such that a primitive k-th root of unity is an eigenvalue.
pub fn has_root_of_unity_eigenvalue(m: &ZMat) -> Result<Option<u64>> {
    let chi = charpoly(&m.to_q())?;
    for k in cyclotomic_orders(m.rows()) {
        if chi.gcd(&cyclotomic(k).to_q()).degree() != Some(0) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFReport {
    /// `det(I - M_w) ≠ 0` for every nontrivial word up to the bound.
    pub holds_up_to_bound: bool,
    pub word_bound: usize,
    pub words_checked: usize,
    pub witness: Option<String>,
    /// Single generator only: (F) over all powers, decided exactly by the
    /// absence of root-of-unity eigenvalues.
    pub single_generator_verdict: Option<bool>,
    pub root_of_unity_order: Option<u64>,
}

pub fn check_condition_f(a: &AlgebraicAction, word_bound: usize) -> Result<ConditionFReport> {
    let names = a.names();
    let words = group_words(a.kind, a.generators.len(), word_bound);
    let mut witness = None;
    let mut checked = 0;
    for w in &words {
        checked += 1;
        let m = a.eval_word(w)?;
        let det = (&QMat::identity(a.rank) - &m).det()?;
        if det.is_zero() {
            witness = Some(w.display(&names));
            break;
        }
    }
    let (single, order) = if a.generators.len() == 1 {
        let k = has_root_of_unity_eigenvalue(a.matrix(0))?;
        (Some(k.is_none()), k)
    } else {
        (None, None)
    };
    Ok(ConditionFReport {
        holds_up_to_bound: witness.is_none(),
        word_bound,
        words_checked: checked,
        witness,
        single_generator_verdict: single,
        root_of_unity_order: order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfReport {
    /// `e ↦ ∏ det(M_i)^{e_i}` is injective on `Z^m`.
    pub determinant_map_injective: bool,
    #[serde(with = "crate::json::int_vec")]
    pub determinants: Vec<BigInt>,
    #[serde(with = "crate::json::int_vec")]
    pub primes: Vec<BigInt>,
    /// Nonzero exponent vector with `∏ det^e = 1`, if any.
    #[serde(with = "crate::json::int_vec")]
    pub kernel_witness: Vec<BigInt>,
}

/// Sufficient test for strong faithfulness: injectivity of the determinant
/// map on the free abelian group of exponent vectors.
pub fn check_sf_via_det(a: &AlgebraicAction) -> Result<SfReport> {
    if a.kind != MonoidKind::FreeAbelian {
        return Err(Error::InvalidArgument(
            "the determinant test needs a free abelian monoid".into(),
        ));
    }
    let dets: Vec<BigInt> = a
        .generators
        .iter()
        .map(|g| g.matrix.det())
        .collect::<Result<_>>()?;
    let mut factorizations = Vec::new();
    for d in &dets {
        let f = arith::trial_factor(d, arith::TRIAL_DIVISION_BOUND)
            .ok_or_else(|| Error::Unfactored(d.to_string()))?;
        factorizations.push(f);
    }
    let primes: Vec<BigInt> = factorizations
        .iter()
        .flat_map(|f| f.iter().map(|(p, _)| p.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = dets.len();
    // exponent matrix transposed: one row per generator, one column per prime
    let mut pt = ZMat::zeros(m, primes.len());
    for (i, f) in factorizations.iter().enumerate() {
        for (p, e) in f {
            let j = primes.iter().position(|q| q == p).unwrap();
            pt[(i, j)] = BigInt::from(*e);
        }
    }
    let h = hnf(&pt);
    let kernel_witness = if h.rank < m {
        let mut e = h.u.row(h.rank).to_vec();
        // the sign row: an odd count of negative determinants needs doubling
        let negatives: BigInt = e
            .iter()
            .zip(&dets)
            .filter(|(_, d)| d.is_negative())
            .map(|(x, _)| x.clone())
            .sum();
        if negatives.is_odd() {
            e.iter_mut().for_each(|x| *x *= 2);
        }
        e
    } else {
        Vec::new()
    };
    Ok(SfReport {
        determinant_map_injective: h.rank == m,
        determinants: dets,
        primes,
        kernel_witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exact,
    NotExact,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCriterion {
    pub verdict: Verdict,
    /// Why the verdict follows, or why none could be reached.
    pub basis: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    /// Index of the intersection of the family after each round `0..=depth`.
    #[serde(with = "crate::json::int_vec")]
    pub intersection_indices: Vec<BigInt>,
    pub strictly_increasing: bool,
    /// First round after which the intersection stopped changing.
    pub stabilized_at: Option<usize>,
    /// Standard basis vectors whose order in `Z^n / ⋂C` did not grow in the
    /// last round: candidate directions that survive every constructible subgroup.
    pub persistent_directions: Vec<usize>,
    pub criterion: ExactnessCriterion,
    /// Smallest `k` with `Φ_k` dividing some generator's characteristic polynomial.
    pub cyclotomic_factor: Option<u64>,
}

pub fn exactness(a: &AlgebraicAction, depth: usize) -> Result<ExactnessReport> {
    let family = constructible_family(a, depth)?;
    let n = a.rank();
    let mut meets = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let mut meet = Lattice::whole(n);
        for m in family.up_to_depth(k) {
            meet = meet.intersect(&m.lattice)?;
        }
        meets.push(meet);
    }
    let intersection_indices: Vec<BigInt> = meets.iter().map(Lattice::index).collect();
    let strictly_increasing = intersection_indices.windows(2).all(|w| w[0] < w[1]);
    let stabilized_at = meets.windows(2).position(|w| w[0] == w[1]);

    let persistent_directions = if depth == 0 {
        Vec::new()
    } else {
        let (prev, last) = (&meets[depth - 1], &meets[depth]);
        (0..n)
            .filter(|&i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                element_order(prev, &e) == element_order(last, &e)
            })
            .collect()
    };

    let names = a.names();
    let mut cyclotomic_factor: Option<u64> = None;
    let mut searches = Vec::new();
    for g in &a.generators {
        if let Some(k) = has_root_of_unity_eigenvalue(&g.matrix)? {
            cyclotomic_factor = Some(cyclotomic_factor.map_or(k, |c| c.min(k)));
        }
        searches.push(unimodular_divisor(&charpoly_z(&g.matrix)?)?);
    }

    let criterion = if a.generators.is_empty() {
        ExactnessCriterion {
            verdict: Verdict::NotExact,
            basis: "trivial monoid: the family is {Z^n}".into(),
            witness: None,
        }
    } else if a.generators.len() == 1 {
        match &searches[0] {
            UnimodularSearch::NoneExists => ExactnessCriterion {
                verdict: Verdict::Exact,
                basis: "single generator: exact iff no monic integer divisor of the characteristic polynomial has constant term ±1".into(),
                witness: None,
            },
            UnimodularSearch::Found(g) => ExactnessCriterion {
                verdict: Verdict::NotExact,
                basis: "single generator: a unimodular divisor spans a sublattice on which the generator is an automorphism".into(),
                witness: Some(g.to_string()),
            },
            UnimodularSearch::Inconclusive => ExactnessCriterion {
                verdict: Verdict::Inconclusive,
                basis: "unimodular divisor search exceeded its budget".into(),
                witness: None,
            },
        }
    } else if let Some(i) = searches
        .iter()
        .position(|s| *s == UnimodularSearch::NoneExists)
    {
        ExactnessCriterion {
            verdict: Verdict::Exact,
            basis: "sufficient condition: one generator alone already acts exactly".into(),
            witness: Some(names[i].to_string()),
        }
    } else if a.generators.iter().all(|g| {
        g.matrix
            .det()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    }) {
        ExactnessCriterion {
            verdict: Verdict::NotExact,
            basis: "every generator is an automorphism, so the family is {Z^n}".into(),
            witness: None,
        }
    } else {
        ExactnessCriterion {
            verdict: Verdict::Inconclusive,
            basis: "heuristic only: every generator has a unimodular divisor; see the empirical trend".into(),
            witness: None,
        }
    };

    Ok(ExactnessReport {
        intersection_indices,
        strictly_increasing,
        stabilized_at,
        persistent_directions,
        criterion,
        cyclotomic_factor,
    })
}

// order of x + L in Z^n / L
fn element_order(l: &Lattice, x: &[BigInt]) -> BigInt {
    let idx = l.index();
    let mut k = BigInt::one();
    let mut y = x.to_vec();
    while k <= idx {
        if l.member(&y).unwrap_or(false) {
            return k;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += xi;
        }
        k += 1;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        ZMat::from_i64_rows(rows)
    }

    fn ints(xs: &[i64]) -> BTreeSet<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn standing_examples() {
        let r = check_standing(&AlgebraicAction::scalars_on_z(&[2]).unwrap(), 6).unwrap();
        assert!(r.fi_holds && r.non_automorphic && r.faithful_on_generators);

        let rot = AlgebraicAction::single("r", z(&[&[-1, 0], &[0, -1]])).unwrap();
        let r = check_standing(&rot, 6).unwrap();
        assert!(r.fi_holds);
        assert!(!r.non_automorphic);
        // (-I)^2 = I
        assert!(!r.faithful_on_generators);

        let dup = AlgebraicAction::new(
            2,
            vec![
                Generator { name: "a".into(), matrix: z(&[&[2, 0], &[0, 2]]) },
                Generator { name: "b".into(), matrix: z(&[&[2, 0], &[0, 2]]) },
            ],
            MonoidKind::FreeAbelian,
        )
        .unwrap();
        let r = check_standing(&dup, 6).unwrap();
        assert!(!r.faithful_on_generators);
        assert!(r.faithfulness_witness.unwrap().contains("same matrix"));
    }

    #[test]
    fn duplicate_names_and_singular_rejected() {
        let g = Generator { name: "a".into(), matrix: z(&[&[2]]) };
        assert!(AlgebraicAction::new(1, vec![g.clone(), g], MonoidKind::Free).is_err());
        assert_eq!(
            AlgebraicAction::single("s", z(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn family_of_doubling() {
        let a = AlgebraicAction::scalars_on_z(&[2]).unwrap();
        let f = constructible_family(&a, 3).unwrap();
        let got: BTreeSet<Lattice> = f.lattices().cloned().collect();
        let want: BTreeSet<Lattice> = [1, 2, 4, 8]
            .iter()
            .map(|&k| Lattice::from_i64_rows(&[&[k]]).unwrap())
            .collect();
        assert_eq!(got, want);
        assert!(!f.saturated);
        assert_eq!(index_set(&a, 3).unwrap(), ints(&[1, 2, 4, 8]));
    }

    #[test]
    fn family_of_trivial_monoid() {
        let a = AlgebraicAction::new(2, vec![], MonoidKind::FreeAbelian).unwrap();
        let f = constructible_family(&a, 4).unwrap();
        assert_eq!(f.members.len(), 1);
        assert!(f.saturated);
        assert_eq!(index_set(&a, 4).unwrap(), ints(&[1]));
    }

    #[test]
    fn scalar_index_set() {
        let p = 3;
        let a = AlgebraicAction::single("p", z(&[&[p, 0], &[0, p]])).unwrap();
        assert_eq!(index_set(&a, 1).unwrap(), ints(&[1, 9]));
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(has_root_of_unity_eigenvalue(&z(&[&[0, -1], &[1, 0]])).unwrap(), Some(4));
        assert_eq!(has_root_of_unity_eigenvalue(&z(&[&[0, 1], &[1, 1]])).unwrap(), None);
        assert_eq!(has_root_of_unity_eigenvalue(&z(&[&[1, 1], &[0, 1]])).unwrap(), Some(1));
    }

    #[test]
    fn condition_f_examples() {
        let r = check_condition_f(&AlgebraicAction::scalars_on_z(&[2]).unwrap(), 6).unwrap();
        assert!(r.holds_up_to_bound);
        assert_eq!(r.single_generator_verdict, Some(true));

        let rot = AlgebraicAction::single("g", z(&[&[0, -1], &[1, 0]])).unwrap();
        let r = check_condition_f(&rot, 6).unwrap();
        assert!(!r.holds_up_to_bound);
        assert_eq!(r.witness.as_deref(), Some("g^4"));
        assert_eq!(r.root_of_unity_order, Some(4));

        let fib = AlgebraicAction::single("s", z(&[&[0, 1], &[1, 1]])).unwrap();
        assert!(check_condition_f(&fib, 6).unwrap().holds_up_to_bound);
    }

    #[test]
    fn sf_examples() {
        let r = check_sf_via_det(&AlgebraicAction::scalars_on_z(&[2, 3]).unwrap()).unwrap();
        assert!(r.determinant_map_injective);

        let r = check_sf_via_det(&AlgebraicAction::scalars_on_z(&[2, 4]).unwrap()).unwrap();
        assert!(!r.determinant_map_injective);
        let e = &r.kernel_witness;
        assert!(e == &[BigInt::from(2), BigInt::from(-1)] || e == &[BigInt::from(-2), BigInt::from(1)]);

        let r = check_sf_via_det(&AlgebraicAction::scalars_on_z(&[6, 10, 15]).unwrap()).unwrap();
        assert!(r.determinant_map_injective);
    }

    #[test]
    fn sf_sign_row_doubles_witness() {
        // dets -2 and 2: (1, -1) gives -1, so the witness must be doubled
        let r = check_sf_via_det(&AlgebraicAction::scalars_on_z(&[-2, 2]).unwrap()).unwrap();
        assert!(!r.determinant_map_injective);
        let prod = r
            .determinants
            .iter()
            .zip(&r.kernel_witness)
            .fold(num_rational::BigRational::one(), |acc, (d, e)| {
                let e: i32 = num_traits::ToPrimitive::to_i32(e).unwrap();
                acc * num_rational::BigRational::from_integer(d.clone()).pow(e)
            });
        assert!(prod.is_one());
    }

    #[test]
    fn exactness_examples() {
        let r = exactness(&AlgebraicAction::scalars_on_z(&[2]).unwrap(), 3).unwrap();
        assert_eq!(r.criterion.verdict, Verdict::Exact);
        assert_eq!(r.intersection_indices, vec![1, 2, 4, 8].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(r.strictly_increasing);

        let r = exactness(&AlgebraicAction::single("s", z(&[&[2, 0], &[0, 1]])).unwrap(), 3).unwrap();
        assert_eq!(r.criterion.verdict, Verdict::NotExact);
        assert_eq!(r.persistent_directions, vec![1]);
        assert_eq!(r.cyclotomic_factor, Some(1));

        let r = exactness(&AlgebraicAction::single("u", z(&[&[0, 1], &[1, 1]])).unwrap(), 3).unwrap();
        assert_eq!(r.criterion.verdict, Verdict::NotExact);
        assert_eq!(r.stabilized_at, Some(0));
        assert_eq!(r.cyclotomic_factor, None);
    }

    #[test]
    fn word_helpers() {
        let w = Word::from_syllables(vec![(0, 2), (1, -1), (1, 1), (0, 1)]);
        assert_eq!(w, Word::power(0, 3));
        assert_eq!(w.inverse().concat(&w), Word::identity());
        assert_eq!(group_words(MonoidKind::FreeAbelian, 1, 3).len(), 6);
        // reduced words of length <= 2 on two generators: 4 + 12
        assert_eq!(group_words(MonoidKind::Free, 2, 2).len(), 16);
    }
}
