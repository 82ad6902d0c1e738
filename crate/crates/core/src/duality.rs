//! Hitting sets and the duality between minimal equivalent label sets and
//! the complements of maximal non-equivalent label sets.
//!
//! When a formula has at least one active label, and at least one
//! irredundant label in case it has unlabelled clauses, the co-LMNS family
//! is exactly the family of irreducible hitting sets of the LMES family, and
//! vice versa. Consequently the union of all LMESes equals the active labels
//! minus the intersection of all LMNSes.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::analysis::{AnalysisError, Analyzer};
use crate::bruteforce::AnalysisReport;
use crate::formula::{Label, LabelSet, LcnfFormula};
use crate::oracle::OracleConfig;

/// Default cap on the number of hitting sets a single enumeration may emit.
pub const DEFAULT_HITTING_SET_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("hitting set enumeration exceeded the limit of {0} sets")]
    LimitExceeded(usize),
    #[error("duality does not apply: {0}")]
    NotApplicable(AnalysisError),
    #[error(transparent)]
    Analysis(AnalysisError),
}

impl From<AnalysisError> for DualityError {
    fn from(e: AnalysisError) -> Self {
        if e.is_precondition() {
            DualityError::NotApplicable(e)
        } else {
            DualityError::Analysis(e)
        }
    }
}

/// A finite family of label sets over a universe.
///
/// Members are kept in canonical (lexicographic) order. Equality compares
/// members only.
#[derive(Clone, Default)]
pub struct SetFamily {
    members: BTreeSet<LabelSet>,
    universe: LabelSet,
}

impl SetFamily {
    /// An empty family over `universe`.
    pub fn new(universe: LabelSet) -> Self {
        SetFamily {
            members: BTreeSet::new(),
            universe,
        }
    }

    /// A family whose universe is the union of its members.
    pub fn from_members<I: IntoIterator<Item = LabelSet>>(members: I) -> Self {
        let members: BTreeSet<LabelSet> = members.into_iter().collect();
        let universe = members.iter().fold(LabelSet::new(), |acc, m| acc.union(m));
        SetFamily { members, universe }
    }

    /// A family over an explicit universe, which is widened to cover every
    /// member.
    pub fn with_universe<I: IntoIterator<Item = LabelSet>>(members: I, universe: LabelSet) -> Self {
        let mut family = SetFamily::new(universe);
        for m in members {
            family.insert(m);
        }
        family
    }

    pub fn insert(&mut self, member: LabelSet) -> bool {
        self.universe = self.universe.union(&member);
        self.members.insert(member)
    }

    pub fn universe(&self) -> &LabelSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, member: &LabelSet) -> bool {
        self.members.contains(member)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabelSet> + '_ {
        self.members.iter()
    }

    pub fn union_all(&self) -> LabelSet {
        self.members
            .iter()
            .fold(LabelSet::new(), |acc, m| acc.union(m))
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn intersection_all(&self) -> Option<LabelSet> {
        let mut it = self.members.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.intersection(m)))
    }

    /// Each member replaced by its complement within the universe.
    pub fn complements(&self) -> SetFamily {
        SetFamily::with_universe(
            self.members.iter().map(|m| self.universe.difference(m)),
            self.universe.clone(),
        )
    }

    /// Whether no member is a strict subset of another.
    pub fn is_antichain(&self) -> bool {
        self.members
            .iter()
            .all(|a| self.members.iter().all(|b| a == b || !a.is_subset(b)))
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a LabelSet;
    type IntoIter = std::collections::btree_set::Iter<'a, LabelSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

pub fn is_hitting_set(candidate: &LabelSet, family: &SetFamily) -> bool {
    family.iter().all(|m| !m.is_disjoint(candidate))
}

/// A hitting set is irreducible iff each of its elements is the only one it
/// shares with some member.
pub fn is_irreducible_hitting_set(candidate: &LabelSet, family: &SetFamily) -> bool {
    is_hitting_set(candidate, family)
        && candidate
            .iter()
            .all(|h| has_private_member(candidate, h, family.iter()))
}

fn has_private_member<'a, I>(set: &LabelSet, element: Label, members: I) -> bool
where
    I: IntoIterator<Item = &'a LabelSet>,
{
    members
        .into_iter()
        .any(|m| m.contains(element) && m.iter().filter(|&x| set.contains(x)).count() == 1)
}

/// All irreducible hitting sets of `family`, over the family's universe.
///
/// Depth-first search that repeatedly picks the smallest member not yet hit
/// (ties broken by label order) and branches on its elements. A branch is cut
/// as soon as some chosen element loses its last private member, and
/// elements already branched on are excluded from later siblings, so each
/// minimal set is produced once.
pub fn minimal_hitting_sets(family: &SetFamily, limit: usize) -> Result<SetFamily, DualityError> {
    let mut members: Vec<&LabelSet> = family.iter().collect();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut search = HittingSetSearch {
        members,
        limit,
        found: Vec::new(),
    };
    let mut current = LabelSet::new();
    search.descend(&mut current, family.universe().clone())?;
    let found = std::mem::take(&mut search.found);
    let result = SetFamily::with_universe(
        found
            .into_iter()
            .filter(|h| is_irreducible_hitting_set(h, family)),
        family.universe().clone(),
    );
    Ok(result)
}

struct HittingSetSearch<'a> {
    members: Vec<&'a LabelSet>,
    limit: usize,
    found: Vec<LabelSet>,
}

impl HittingSetSearch<'_> {
    fn descend(
        &mut self,
        current: &mut LabelSet,
        mut candidates: LabelSet,
    ) -> Result<(), DualityError> {
        let Some(unhit) = self
            .members
            .iter()
            .find(|m| m.is_disjoint(current))
            .copied()
        else {
            if self.found.len() == self.limit {
                return Err(DualityError::LimitExceeded(self.limit));
            }
            self.found.push(current.clone());
            return Ok(());
        };
        let branch = candidates.intersection(unhit);
        candidates = candidates.difference(&branch);
        for e in branch.iter() {
            current.insert(e);
            let minimal = current
                .iter()
                .all(|x| has_private_member(current, x, self.members.iter().copied()));
            if minimal {
                self.descend(current, candidates.clone())?;
            }
            current.remove(e);
            candidates.insert(e);
        }
        Ok(())
    }
}

fn applicable(formula: &LcnfFormula, config: &OracleConfig) -> Result<(), DualityError> {
    Analyzer::new(formula, config).duality_preconditions()?;
    Ok(())
}

/// The co-LMNS family of `formula`, as the irreducible hitting sets of its
/// complete LMES family.
pub fn colmns_via_duality(
    formula: &LcnfFormula,
    lmes: &SetFamily,
    config: &OracleConfig,
) -> Result<SetFamily, DualityError> {
    applicable(formula, config)?;
    let family = SetFamily::with_universe(lmes.iter().cloned(), formula.active_labels().clone());
    minimal_hitting_sets(&family, DEFAULT_HITTING_SET_LIMIT)
}

/// The LMES family of `formula`, as the irreducible hitting sets of its
/// complete co-LMNS family.
pub fn lmes_via_duality(
    formula: &LcnfFormula,
    colmns: &SetFamily,
    config: &OracleConfig,
) -> Result<SetFamily, DualityError> {
    applicable(formula, config)?;
    let family = SetFamily::with_universe(colmns.iter().cloned(), formula.active_labels().clone());
    minimal_hitting_sets(&family, DEFAULT_HITTING_SET_LIMIT)
}

/// Outcome of checking the duality on one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityVerdict {
    /// The formula does not meet the preconditions; nothing was checked.
    NotApplicable(AnalysisError),
    Checked(DualityChecks),
}

impl DualityVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DualityVerdict::Checked(c) if c.passed())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityChecks {
    /// co-LMNS equals the irreducible hitting sets of LMES.
    pub colmns_from_lmes: bool,
    /// LMES equals the irreducible hitting sets of co-LMNS.
    pub lmes_from_colmns: bool,
    /// Union of LMESes equals the active labels minus the intersection of
    /// LMNSes.
    pub union_intersection: bool,
    /// co-LMNS equals the complements of the LMNSes.
    pub complementation: bool,
    pub lmes_union: LabelSet,
    pub lmns_intersection: LabelSet,
}

impl DualityChecks {
    pub fn passed(&self) -> bool {
        self.colmns_from_lmes
            && self.lmes_from_colmns
            && self.union_intersection
            && self.complementation
    }
}

/// Checks both directions of the duality, the union/intersection identity
/// and complementation against a complete report for `formula`. The
/// preconditions are evaluated with the SAT oracle, not read from the report.
pub fn verify_duality(
    formula: &LcnfFormula,
    report: &AnalysisReport,
    config: &OracleConfig,
) -> Result<DualityVerdict, DualityError> {
    match Analyzer::new(formula, config).duality_preconditions() {
        Ok(()) => {}
        Err(e) if e.is_precondition() => return Ok(DualityVerdict::NotApplicable(e)),
        Err(e) => return Err(DualityError::Analysis(e)),
    }
    let universe = formula.active_labels().clone();
    let lmes = SetFamily::with_universe(report.lmes.iter().cloned(), universe.clone());
    let colmns = SetFamily::with_universe(report.colmns.iter().cloned(), universe.clone());

    let colmns_from_lmes = minimal_hitting_sets(&lmes, DEFAULT_HITTING_SET_LIMIT)? == colmns;
    let lmes_from_colmns = minimal_hitting_sets(&colmns, DEFAULT_HITTING_SET_LIMIT)? == lmes;
    let lmes_union = lmes.union_all();
    let lmns_intersection = report.lmns.intersection_all().unwrap_or_default();
    let union_intersection =
        !report.lmns.is_empty() && lmes_union == universe.difference(&lmns_intersection);
    let complements = SetFamily::with_universe(
        report.lmns.iter().map(|s| universe.difference(s)),
        universe.clone(),
    );
    let complementation = complements == colmns;
    Ok(DualityVerdict::Checked(DualityChecks {
        colmns_from_lmes,
        lmes_from_colmns,
        union_intersection,
        complementation,
        lmes_union,
        lmns_intersection,
    }))
}
