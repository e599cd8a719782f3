//! The full battery of checks for one action, as a single serializable report.

use serde::{Deserialize, Serialize};

use crate::action::{
    check_condition_f, check_sf_via_det, check_standing, constructible_family, exactness,
    has_root_of_unity_eigenvalue, AlgebraicAction, ConditionFReport, ExactnessReport, FamilySummary,
    MonoidKind, SfReport, StandingReport, Word,
};
use crate::error::Result;
use crate::groupoid::{verify_ch_identity, ChIdentityReport};

pub const DEFAULT_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub rank: usize,
    pub monoid: MonoidKind,
    pub generators: Vec<String>,
    pub depth: usize,
    pub word_bound: usize,
    pub standing: StandingReport,
    pub family: FamilySummary,
    pub exactness: ExactnessReport,
    /// Per generator, the smallest `k` with a primitive k-th root of unity
    /// as eigenvalue.
    pub root_of_unity_orders: Vec<Option<u64>>,
    /// Single-generator actions only: no root-of-unity eigenvalue.
    pub mixing: Option<bool>,
    pub condition_f: ConditionFReport,
    /// The determinant test for (SF); only defined for free abelian monoids.
    pub sf: Option<SfReport>,
    pub identities: Vec<ChIdentityReport>,
}

impl AnalysisReport {
    /// Every identity that must hold by construction did hold.
    pub fn consistent(&self) -> bool {
        self.identities.iter().all(|r| r.holds)
    }
}

pub fn analyze(a: &AlgebraicAction, depth: usize, word_bound: usize) -> Result<AnalysisReport> {
    let family = constructible_family(a, depth)?;
    let root_of_unity_orders = a
        .generators()
        .iter()
        .map(|g| has_root_of_unity_eigenvalue(&g.matrix))
        .collect::<Result<Vec<_>>>()?;
    let mixing = (root_of_unity_orders.len() == 1).then(|| root_of_unity_orders[0].is_none());
    let identities = (0..a.generators().len())
        .map(|g| verify_ch_identity(a, &Word::generator(g), None))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        rank: a.rank(),
        monoid: a.kind(),
        generators: a.names().iter().map(|s| s.to_string()).collect(),
        depth,
        word_bound,
        standing: check_standing(a, word_bound)?,
        family: family.summary(),
        exactness: exactness(a, depth)?,
        root_of_unity_orders,
        mixing,
        condition_f: check_condition_f(a, word_bound)?,
        sf: match a.kind() {
            MonoidKind::FreeAbelian => Some(check_sf_via_det(a)?),
            MonoidKind::Free => None,
        },
        identities,
    })
}
