//! Single-witness extraction.
//!
//! Minimal sets (LMES, LMUS) are found by deletion: start from all active
//! labels and drop each label, in the given order, whose removal keeps the
//! property. Maximal sets (LMNS, LMSS) are found by growing a seed. Every
//! test runs against the current, already reduced set of labels, because a
//! label that is redundant in a formula can be irredundant in a subformula.

use itertools::Itertools;
use thiserror::Error;

use crate::formula::{Label, LabelSet, LcnfFormula};
use crate::oracle::{LabelOracle, OracleConfig};
use crate::solver::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("label {0} is not an active label of the formula")]
    InactiveLabel(Label),
    #[error("the formula is satisfiable and has no minimal unsatisfiable label set")]
    Satisfiable,
    #[error("the unlabelled clauses are unsatisfiable, so no label set induces a satisfiable subformula")]
    UnsatisfiableBackground,
    #[error("the seed labels induce an unsatisfiable subformula")]
    SeedUnsatisfiable,
    #[error("the formula has no active labels")]
    NoActiveLabels,
    #[error("the unlabelled clauses alone are equivalent to the formula, so every subformula is equivalent")]
    AllLabelsRedundant,
    #[error("the formula has unlabelled clauses and every label is redundant")]
    NoIrredundantLabel,
    #[error("the seed labels induce a subformula equivalent to the formula")]
    SeedEquivalent,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl AnalysisError {
    /// Whether the error reports an unmet precondition, as opposed to a
    /// resource limit.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, AnalysisError::Solver(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    Lmes,
    Lmus,
    Lmns,
    Lmss,
    CoLmns,
    CoLmss,
}

impl WitnessKind {
    /// The kind of the complement of a maximal set, and back.
    pub fn complement(self) -> Option<WitnessKind> {
        match self {
            WitnessKind::Lmns => Some(WitnessKind::CoLmns),
            WitnessKind::Lmss => Some(WitnessKind::CoLmss),
            WitnessKind::CoLmns => Some(WitnessKind::Lmns),
            WitnessKind::CoLmss => Some(WitnessKind::Lmss),
            WitnessKind::Lmes | WitnessKind::Lmus => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Lmes => "lmes",
            WitnessKind::Lmus => "lmus",
            WitnessKind::Lmns => "lmns",
            WitnessKind::Lmss => "lmss",
            WitnessKind::CoLmns => "colmns",
            WitnessKind::CoLmss => "colmss",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub labels: LabelSet,
}

/// Complement of `labels` within the active labels of `formula`, tagged with
/// the complementary kind. No verification is performed. Returns `None` for
/// kinds without a complement (LMES, LMUS).
pub fn complement_of(
    formula: &LcnfFormula,
    labels: &LabelSet,
    kind: WitnessKind,
) -> Option<Witness> {
    Some(Witness {
        kind: kind.complement()?,
        labels: formula.active_labels().difference(labels),
    })
}

/// Extraction front end over one formula and one oracle instance.
pub struct Analyzer {
    formula: LcnfFormula,
    oracle: LabelOracle,
}

impl Analyzer {
    pub fn new(formula: &LcnfFormula, config: &OracleConfig) -> Self {
        Analyzer {
            formula: formula.clone(),
            oracle: LabelOracle::new(formula, config),
        }
    }

    pub fn formula(&self) -> &LcnfFormula {
        &self.formula
    }

    pub fn oracle(&mut self) -> &mut LabelOracle {
        &mut self.oracle
    }

    fn all(&self) -> LabelSet {
        self.formula.active_labels().clone()
    }

    /// Expands a possibly partial ordering: listed labels first, then the
    /// remaining active labels ascending.
    pub fn resolve_order(&self, order: &[Label]) -> Result<Vec<Label>, AnalysisError> {
        let active = self.formula.active_labels();
        if let Some(&bad) = order.iter().find(|&&l| !active.contains(l)) {
            return Err(AnalysisError::InactiveLabel(bad));
        }
        let mut out: Vec<Label> = order.iter().copied().unique().collect();
        out.extend(active.iter().filter(|l| !order.contains(l)));
        Ok(out)
    }

    fn check_labels(&self, labels: &LabelSet) -> Result<(), AnalysisError> {
        match labels
            .iter()
            .find(|&l| !self.formula.active_labels().contains(l))
        {
            Some(bad) => Err(AnalysisError::InactiveLabel(bad)),
            None => Ok(()),
        }
    }

    pub fn is_satisfiable(&mut self) -> Result<bool, AnalysisError> {
        let all = self.all();
        Ok(self.oracle.is_sat(&all)?)
    }

    /// Whether removing `label` preserves equivalence.
    pub fn is_label_redundant(&mut self, label: Label) -> Result<bool, AnalysisError> {
        let all = self.all();
        if !all.contains(label) {
            return Err(AnalysisError::InactiveLabel(label));
        }
        Ok(self
            .oracle
            .is_equivalent_within(&all.without(label), &all)?)
    }

    /// Labels whose removal changes the set of models. They belong to every
    /// LMES.
    pub fn irredundant_labels(&mut self) -> Result<LabelSet, AnalysisError> {
        let mut out = LabelSet::new();
        for l in self.all().iter() {
            if !self.is_label_redundant(l)? {
                out.insert(l);
            }
        }
        Ok(out)
    }

    /// Checks that the hitting-set duality applies: some label is active,
    /// and if unlabelled clauses exist, some label is irredundant. Stops at
    /// the first irredundant label found.
    pub fn duality_preconditions(&mut self) -> Result<(), AnalysisError> {
        let all = self.all();
        if all.is_empty() {
            return Err(AnalysisError::NoActiveLabels);
        }
        if !self.formula.has_unlabelled() {
            return Ok(());
        }
        for l in all.iter() {
            if !self.is_label_redundant(l)? {
                return Ok(());
            }
        }
        Err(AnalysisError::NoIrredundantLabel)
    }

    /// Checks that at least one LMNS exists: some label is active and the
    /// unlabelled clauses alone are not equivalent to the formula.
    pub fn lmns_exists(&mut self) -> Result<(), AnalysisError> {
        if self.formula.active_labels().is_empty() {
            return Err(AnalysisError::NoActiveLabels);
        }
        if self.oracle.is_equivalent(&LabelSet::new())? {
            return Err(AnalysisError::AllLabelsRedundant);
        }
        Ok(())
    }

    /// Checks that at least one LMSS exists: the unlabelled clauses are
    /// satisfiable.
    pub fn lmss_exists(&mut self) -> Result<(), AnalysisError> {
        if self.oracle.is_sat(&LabelSet::new())? {
            Ok(())
        } else {
            Err(AnalysisError::UnsatisfiableBackground)
        }
    }

    /// A minimal set of labels inducing a subformula equivalent to the
    /// formula, by deletion in `order`.
    pub fn compute_lmes(&mut self, order: &[Label]) -> Result<LabelSet, AnalysisError> {
        let order = self.resolve_order(order)?;
        let mut current = self.all();
        for l in order {
            let reduced = current.without(l);
            if self.oracle.is_equivalent_within(&reduced, &current)? {
                current = reduced;
            }
        }
        Ok(current)
    }

    /// A minimal set of labels inducing an unsatisfiable subformula, by
    /// deletion in `order`.
    pub fn compute_lmus(&mut self, order: &[Label]) -> Result<LabelSet, AnalysisError> {
        let order = self.resolve_order(order)?;
        let mut current = self.all();
        if self.oracle.is_sat(&current)? {
            return Err(AnalysisError::Satisfiable);
        }
        for l in order {
            let reduced = current.without(l);
            if !self.oracle.is_sat(&reduced)? {
                current = reduced;
            }
        }
        Ok(current)
    }

    /// Grows `seed` into a maximal set satisfying `keep`, trying labels in
    /// `order`, then sweeps the remaining labels until nothing more can be
    /// added.
    fn grow<F>(
        &mut self,
        seed: &LabelSet,
        order: &[Label],
        mut keep: F,
    ) -> Result<LabelSet, AnalysisError>
    where
        F: FnMut(&mut LabelOracle, &LabelSet) -> Result<bool, SolverError>,
    {
        let order = self.resolve_order(order)?;
        let mut current = seed.clone();
        for &l in &order {
            if current.contains(l) {
                continue;
            }
            let grown = current.with(l);
            if keep(&mut self.oracle, &grown)? {
                current = grown;
            }
        }
        loop {
            let mut changed = false;
            for &l in &order {
                if current.contains(l) {
                    continue;
                }
                let grown = current.with(l);
                if keep(&mut self.oracle, &grown)? {
                    current = grown;
                    changed = true;
                }
            }
            if !changed {
                return Ok(current);
            }
        }
    }

    /// A maximal set of labels containing `seed` that induces a satisfiable
    /// subformula.
    pub fn compute_lmss(
        &mut self,
        seed: &LabelSet,
        order: &[Label],
    ) -> Result<LabelSet, AnalysisError> {
        self.check_labels(seed)?;
        self.lmss_exists()?;
        if !self.oracle.is_sat(seed)? {
            return Err(AnalysisError::SeedUnsatisfiable);
        }
        self.grow(seed, order, |oracle, labels| oracle.is_sat(labels))
    }

    /// A maximal set of labels containing `seed` that induces a subformula
    /// not equivalent to the formula.
    pub fn compute_lmns(
        &mut self,
        seed: &LabelSet,
        order: &[Label],
    ) -> Result<LabelSet, AnalysisError> {
        self.check_labels(seed)?;
        self.lmns_exists()?;
        if self.oracle.is_equivalent(seed)? {
            return Err(AnalysisError::SeedEquivalent);
        }
        self.grow(seed, order, |oracle, labels| {
            Ok(!oracle.is_equivalent(labels)?)
        })
    }

    /// Complement of an LMSS grown from the empty seed: a minimal set of
    /// labels whose removal restores satisfiability.
    pub fn compute_colmss(&mut self, order: &[Label]) -> Result<LabelSet, AnalysisError> {
        let lmss = self.compute_lmss(&LabelSet::new(), order)?;
        Ok(self.formula.active_labels().difference(&lmss))
    }

    /// Complement of an LMNS grown from the empty seed.
    pub fn compute_colmns(&mut self, order: &[Label]) -> Result<LabelSet, AnalysisError> {
        let lmns = self.compute_lmns(&LabelSet::new(), order)?;
        Ok(self.formula.active_labels().difference(&lmns))
    }

    /// An LMSS of maximum cardinality. Subsets are tried by decreasing size
    /// and, within a size, in lexicographic order; the first satisfiable one
    /// is returned.
    pub fn max_lmss(&mut self) -> Result<LabelSet, AnalysisError> {
        self.lmss_exists()?;
        let labels = self.all().to_vec();
        for size in (0..=labels.len()).rev() {
            for combo in labels.iter().copied().combinations(size) {
                let candidate: LabelSet = combo.into_iter().collect();
                if self.oracle.is_sat(&candidate)? {
                    return Ok(candidate);
                }
            }
        }
        unreachable!("the empty label set is satisfiable once the background is")
    }
}
