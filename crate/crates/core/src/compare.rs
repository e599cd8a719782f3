//! Non-isomorphism certificates. Each verdict compares invariants that the
//! relevant rigidity theorem forces to agree for isomorphic groupoids; a
//! disagreement, with every hypothesis checked, proves the groupoids differ.
//! Agreement proves nothing.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::action::{has_root_of_unity_eigenvalue, AlgebraicAction};
use crate::error::{Error, Result};
use crate::exact::{charpoly, ddf_signature, BigRational, QMat, Signature, ZPoly};
use crate::exact::arith::primes_up_to;
use crate::invariants::{check_irreducible, splitting_signature_distinguisher, ConjugacyClass, Distinction};
use crate::orders::StructureRing;
use crate::polyring::{commalg_conditions, QuotientAlgebra};
use crate::schema::{IdealSpec, RingSpec};

pub const DEFAULT_PRIME_BOUND: u64 = 200;

// Coefficient range and search cap for primitive elements of étale algebras.
const PRIMITIVE_RANGE: i64 = 2;
const PRIMITIVE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    Toral,
    Ring,
    Poly,
}

impl std::str::FromStr for CompareMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "toral" => Ok(CompareMode::Toral),
            "ring" => Ok(CompareMode::Ring),
            "poly" => Ok(CompareMode::Poly),
            _ => Err(format!("unknown compare mode {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareStatus {
    Distinguished,
    Consistent,
    Inconclusive,
}

impl fmt::Display for CompareStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareStatus::Distinguished => "distinguished",
            CompareStatus::Consistent => "consistent",
            CompareStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub invariant: String,
    pub first: String,
    pub second: String,
}

impl Evidence {
    fn new(invariant: impl Into<String>, first: impl ToString, second: impl ToString) -> Self {
        Evidence {
            invariant: invariant.into(),
            first: first.to_string(),
            second: second.to_string(),
        }
    }

    pub fn differs(&self) -> bool {
        self.first != self.second
    }
}

/// A theorem hypothesis checked on both inputs; `None` when undecided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub first: Option<bool>,
    pub second: Option<bool>,
}

impl Hypothesis {
    fn new(name: impl Into<String>, first: Option<bool>, second: Option<bool>) -> Self {
        Hypothesis {
            name: name.into(),
            first,
            second,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.first == Some(true) && self.second == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareVerdict {
    pub mode: CompareMode,
    pub status: CompareStatus,
    /// One-line outcome, e.g. "distinguished at p = 5".
    pub summary: String,
    pub evidence: Vec<Evidence>,
    pub theorem_basis: String,
    pub hypotheses: Vec<Hypothesis>,
    pub notes: Vec<String>,
}

impl CompareVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(Hypothesis::satisfied)
    }

    /// A distinction must rest on a differing invariant and satisfied hypotheses.
    pub fn is_sound(&self) -> bool {
        self.status != CompareStatus::Distinguished
            || (self.hypotheses_hold() && self.evidence.iter().any(Evidence::differs))
    }

    fn settle(
        mode: CompareMode,
        theorem_basis: &str,
        hypotheses: Vec<Hypothesis>,
        evidence: Vec<Evidence>,
        notes: Vec<String>,
    ) -> Self {
        let holds = hypotheses.iter().all(Hypothesis::satisfied);
        let differing = evidence.iter().find(|e| e.differs());
        let (status, summary) = match (holds, differing) {
            (false, _) => {
                let failed: Vec<&str> = hypotheses
                    .iter()
                    .filter(|h| !h.satisfied())
                    .map(|h| h.name.as_str())
                    .collect();
                (
                    CompareStatus::Inconclusive,
                    format!("inconclusive: hypotheses not verified ({})", failed.join("; ")),
                )
            }
            (true, Some(e)) => (CompareStatus::Distinguished, format!("distinguished by {}", e.invariant)),
            (true, None) => (
                CompareStatus::Consistent,
                "consistent: all computed invariants agree (not a proof of isomorphism)".to_string(),
            ),
        };
        CompareVerdict {
            mode,
            status,
            summary,
            evidence,
            theorem_basis: theorem_basis.to_string(),
            hypotheses,
            notes,
        }
    }
}

const TORAL_BASIS: &str = "rigidity for toral endomorphisms: for integer matrices a, b with |det| > 1 \
     and no root-of-unity eigenvalues, isomorphic groupoids of the N-actions force equal size and \
     conjugacy over Q";

fn single_generator(a: &AlgebraicAction) -> Option<&crate::exact::ZMat> {
    (a.generators().len() == 1).then(|| a.matrix(0))
}

/// Toral endomorphisms: each action must have a single generator.
pub fn compare_toral(a: &AlgebraicAction, b: &AlgebraicAction) -> Result<CompareVerdict> {
    let (ma, mb) = (single_generator(a), single_generator(b));
    let det_ok = |m: Option<&crate::exact::ZMat>| -> Result<Option<bool>> {
        m.map(|m| Ok(m.det()?.abs() > BigInt::from(1))).transpose()
    };
    let mixing = |m: Option<&crate::exact::ZMat>| -> Result<Option<bool>> {
        m.map(|m| Ok(has_root_of_unity_eigenvalue(m)?.is_none())).transpose()
    };
    let hypotheses = vec![
        Hypothesis::new(
            "single generator",
            Some(ma.is_some()),
            Some(mb.is_some()),
        ),
        Hypothesis::new("|det| > 1", det_ok(ma)?, det_ok(mb)?),
        Hypothesis::new("no root-of-unity eigenvalue (mixing)", mixing(ma)?, mixing(mb)?),
    ];
    let mut evidence = vec![Evidence::new("rank", a.rank(), b.rank())];
    if let (Some(ma), Some(mb)) = (ma, mb) {
        let (ca, cb) = (ConjugacyClass::of(&ma.to_q())?, ConjugacyClass::of(&mb.to_q())?);
        evidence.push(Evidence::new(
            "rational invariant factors",
            ca.describe().join(" | "),
            cb.describe().join(" | "),
        ));
    }
    Ok(CompareVerdict::settle(CompareMode::Toral, TORAL_BASIS, hypotheses, evidence, Vec::new()))
}

const COMMUTATIVE_BASIS: &str = "commutative ring rigidity: for finitely generated torsion-free \
     commutative rings acted on by their non-zerodivisors, isomorphic groupoids force \
     Q ⊗ R1 ≅ Q ⊗ R2 as Q-algebras";

const SEMISIMPLE_BASIS: &str = "semisimple ring rigidity: for finitely generated torsion-free rings \
     with Q ⊗ R semisimple, acted on by their left regular elements, isomorphic groupoids force \
     Q ⊗ R1 ≅ Q ⊗ R2 as Q-algebras";

/// Gram matrix of the trace form `(x, y) ↦ tr(L_{xy})`. Over a field of
/// characteristic zero its kernel is the Jacobson radical.
fn trace_form(r: &StructureRing) -> Result<QMat> {
    let n = r.rank();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let prod = r.mul(&r.basis_vector(i), &r.basis_vector(j));
            data.push(BigRational::from_integer(r.act_matrix(&prod)?.trace()));
        }
    }
    QMat::new(n, n, data)
}

pub fn radical_dimension(r: &StructureRing) -> Result<usize> {
    Ok(r.rank() - trace_form(r)?.rank())
}

pub fn is_semisimple(r: &StructureRing) -> Result<bool> {
    Ok(radical_dimension(r)? == 0)
}

/// Dimension over Q of the center of `Q ⊗ R`.
pub fn center_dimension(r: &StructureRing) -> Result<usize> {
    let n = r.rank();
    let mut data = Vec::with_capacity(n * n * n);
    for j in 0..n {
        let ej = r.basis_vector(j);
        for k in 0..n {
            for i in 0..n {
                let ei = r.basis_vector(i);
                let c = &r.mul(&ei, &ej)[k] - &r.mul(&ej, &ei)[k];
                data.push(BigRational::from_integer(c));
            }
        }
    }
    Ok(n - QMat::new(n * n, n, data)?.rank())
}

/// A monic `f` with `Q ⊗ R ≅ Q[z]/f`: the characteristic polynomial of a
/// small element whose left multiplication has squarefree characteristic
/// polynomial. Only exists for commutative semisimple rings.
pub fn defining_polynomial(r: &StructureRing) -> Result<Option<(Vec<BigInt>, ZPoly)>> {
    let n = r.rank();
    let width = (2 * PRIMITIVE_RANGE + 1) as usize;
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let total = width.checked_pow(n as u32).unwrap_or(usize::MAX).min(PRIMITIVE_CAP);
    for idx in 0..total {
        let mut rest = idx;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (rest % width) as i64 - PRIMITIVE_RANGE;
                rest /= width;
                d
            })
            .collect();
        candidates.push(v);
    }
    candidates.sort_by_key(|v| (v.iter().map(|x| x.abs()).max(), v.iter().map(|x| x.abs()).sum::<i64>()));
    for v in candidates {
        let a: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let chi = charpoly(&r.act_matrix(&a)?.to_q())?;
        if chi.is_squarefree() {
            let f = chi
                .to_z()
                .ok_or_else(|| Error::InvalidArgument("non-integral characteristic polynomial".into()))?;
            return Ok(Some((a, f)));
        }
    }
    Ok(None)
}

fn ring_polynomial(spec: &RingSpec) -> Result<Option<ZPoly>> {
    if let Some(f) = &spec.polynomial {
        if f.to_q().is_squarefree() {
            return Ok(Some(f.clone()));
        }
    }
    Ok(defining_polynomial(&spec.ring)?.map(|(_, f)| f))
}

/// Compares splitting patterns of two squarefree monic polynomials at primes
/// unramified for both. For such `p` the pattern is the multiset of residue
/// degrees of the étale algebra `Q[z]/f` at `p`, an isomorphism invariant.
fn etale_signatures(f: &ZPoly, g: &ZPoly, prime_bound: u64) -> Result<Distinction> {
    let mut compared = 0;
    for p in primes_up_to(prime_bound) {
        let (sf, sg) = (ddf_signature(f, p)?, ddf_signature(g, p)?);
        if sf == Signature::Ramified || sg == Signature::Ramified {
            continue;
        }
        compared += 1;
        if sf != sg {
            return Ok(Distinction::DistinguishedAt {
                p,
                f_signature: sf,
                g_signature: sg,
            });
        }
    }
    Ok(Distinction::Indistinguishable {
        bound: prime_bound,
        primes_compared: compared,
    })
}

/// Rings acted on by left multiplication of their regular elements.
pub fn compare_rings(a: &RingSpec, b: &RingSpec, prime_bound: u64) -> Result<CompareVerdict> {
    let (ra, rb) = (&a.ring, &b.ring);
    let (ca, cb) = (ra.is_commutative(), rb.is_commutative());
    let (sa, sb) = (is_semisimple(ra)?, is_semisimple(rb)?);
    let mut evidence = vec![Evidence::new("rank", ra.rank(), rb.rank())];
    let mut notes = vec![
        "the acting monoid is the full monoid of regular elements, which contains every nonzero integer"
            .to_string(),
    ];

    if !(ca && cb) {
        let hypotheses = vec![Hypothesis::new("Q ⊗ R semisimple (trace form nondegenerate)", Some(sa), Some(sb))];
        evidence.push(Evidence::new("commutative", ca, cb));
        evidence.push(Evidence::new("center dimension", center_dimension(ra)?, center_dimension(rb)?));
        notes.push("for non-commutative rings only rank, commutativity and center dimension are compared".into());
        return Ok(CompareVerdict::settle(CompareMode::Ring, SEMISIMPLE_BASIS, hypotheses, evidence, notes));
    }

    let hypotheses = vec![Hypothesis::new("commutative", Some(true), Some(true))];
    evidence.push(Evidence::new(
        "radical dimension",
        radical_dimension(ra)?,
        radical_dimension(rb)?,
    ));
    if ra.rank() != rb.rank() || !(sa && sb) {
        if !(sa && sb) {
            notes.push("splitting patterns are only compared for reduced algebras".into());
        }
        return Ok(CompareVerdict::settle(CompareMode::Ring, COMMUTATIVE_BASIS, hypotheses, evidence, notes));
    }

    let (fa, fb) = match (ring_polynomial(a)?, ring_polynomial(b)?) {
        (Some(f), Some(g)) => (f, g),
        _ => {
            notes.push("no primitive element found in the search range; splitting patterns not compared".into());
            return Ok(CompareVerdict::settle(CompareMode::Ring, COMMUTATIVE_BASIS, hypotheses, evidence, notes));
        }
    };
    evidence.push(Evidence::new("defining polynomial degree", fa.degree().unwrap_or(0), fb.degree().unwrap_or(0)));
    let both_fields = check_irreducible(&fa).is_ok() && check_irreducible(&fb).is_ok();
    let distinction = if both_fields {
        splitting_signature_distinguisher(&fa, &fb, prime_bound)?.verdict
    } else {
        notes.push("at least one algebra is a product of fields; compared as étale algebras".into());
        etale_signatures(&fa, &fb, prime_bound)?
    };
    notes.push(format!("defining polynomials: {fa} and {fb}"));
    let verdict = match &distinction {
        Distinction::DistinguishedAt { p, f_signature, g_signature } => {
            evidence.push(Evidence::new(format!("splitting pattern mod {p}"), f_signature, g_signature));
            let mut v = CompareVerdict::settle(CompareMode::Ring, COMMUTATIVE_BASIS, hypotheses, evidence, notes);
            if v.status == CompareStatus::Distinguished {
                v.summary = format!("distinguished at p = {p}");
            }
            v
        }
        Distinction::Indistinguishable { bound, primes_compared } => {
            evidence.push(Evidence::new(
                format!("splitting patterns at {primes_compared} unramified primes up to {bound}"),
                "agree",
                "agree",
            ));
            let mut v = CompareVerdict::settle(CompareMode::Ring, COMMUTATIVE_BASIS, hypotheses, evidence, notes);
            if v.status == CompareStatus::Consistent {
                v.summary = format!(
                    "indistinguishable at all unramified primes up to {bound} (not a proof of isomorphism)"
                );
            }
            v
        }
        Distinction::DistinguishedDegree { .. } => {
            CompareVerdict::settle(CompareMode::Ring, COMMUTATIVE_BASIS, hypotheses, evidence, notes)
        }
    };
    Ok(verdict)
}

const POLY_BASIS: &str = "rigidity for zero-dimensional ideals: when conditions (a) to (d) hold for \
     both ideals, the groupoids are isomorphic exactly when the N^d-actions are isomorphic, which \
     forces equal d, equal rank, and a matching of generators by rational conjugacy";

fn chi_invariants(qa: &QuotientAlgebra) -> Result<(Vec<String>, Vec<String>)> {
    let mut chis = Vec::new();
    let mut norms = Vec::new();
    for t in qa.mult_matrices() {
        chis.push(ConjugacyClass::of(t)?.describe().join(" | "));
        norms.push(t.det()?.abs().to_string());
    }
    chis.sort();
    norms.sort_by_key(|s| (s.len(), s.clone()));
    Ok((chis, norms))
}

/// `N^d`-actions on `Z[u]/I` for zero-dimensional ideals.
pub fn compare_ideals(a: &IdealSpec, b: &IdealSpec) -> Result<CompareVerdict> {
    let (ga, gb) = (a.groebner(), b.groebner());
    let (rep_a, rep_b) = (commalg_conditions(&a.vars, &ga)?, commalg_conditions(&b.vars, &gb)?);
    let cond = |name: &str, f: &dyn Fn(&crate::polyring::CommalgReport) -> Option<bool>| {
        Hypothesis::new(name, f(&rep_a), f(&rep_b))
    };
    let hypotheses = vec![
        cond("(a) finitely many zeros and no variable in the ideal", &|r| Some(r.a)),
        cond("(b) no zero has a vanishing coordinate", &|r| r.b),
        cond("(c) some monomial avoids 1 on all zeros", &|r| r.c.as_ref().map(|c| c.holds)),
        cond("(d) each variable has a private prime in its norm", &|r| r.d.as_ref().and_then(|d| d.holds)),
    ];
    let mut evidence = vec![Evidence::new("number of variables", a.vars.len(), b.vars.len())];
    let mut notes = Vec::new();
    if let (Some(da), Some(db)) = (rep_a.dimension, rep_b.dimension) {
        evidence.push(Evidence::new("rank of Z[u]/I", da, db));
        let qa = QuotientAlgebra::new(ga)?;
        let qb = QuotientAlgebra::new(gb)?;
        if qa.mult_matrices().iter().chain(qb.mult_matrices()).any(|t| t.to_z().is_none()) {
            notes.push("Z[u]/I has torsion or is not spanned by standard monomials over Z".into());
        }
        let (chi_a, norm_a) = chi_invariants(&qa)?;
        let (chi_b, norm_b) = chi_invariants(&qb)?;
        evidence.push(Evidence::new("generator norms (sorted)", norm_a.join(", "), norm_b.join(", ")));
        evidence.push(Evidence::new(
            "generator rational invariant factors (sorted)",
            chi_a.join("; "),
            chi_b.join("; "),
        ));
    }
    if !rep_a.note.is_empty() {
        notes.push(format!("first: {}", rep_a.note));
    }
    if !rep_b.note.is_empty() {
        notes.push(format!("second: {}", rep_b.note));
    }
    Ok(CompareVerdict::settle(CompareMode::Poly, POLY_BASIS, hypotheses, evidence, notes))
}
