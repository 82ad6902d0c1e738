//! Satisfiability, entailment and equivalence queries over label-induced
//! subformulas.
//!
//! A [`LabelOracle`] loads a formula once into a [`Solver`], extending every
//! labelled clause `c` to `c ∨ ¬s_l` for each of its labels `l`, where `s_l`
//! is a fresh selector variable. Activating exactly the selectors of a label
//! set `L` (and deactivating the rest) makes the solver equisatisfiable with
//! the subformula induced by `L`, so every query is a solve under
//! assumptions on the same instance.

use std::collections::BTreeMap;

use crate::formula::{Clause, Label, LabelSet, LcnfFormula, Lit, Var};
use crate::solver::{Model, SatOutcome, Solver, SolverError};

/// Shared settings for oracle instances. Cloning it is how work is sharded:
/// each worker builds its own [`LabelOracle`] from the same config.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of conflicts per query; `None` is unlimited.
    pub conflict_budget: Option<u64>,
}

impl OracleConfig {
    pub fn with_conflict_budget(budget: Option<u64>) -> Self {
        OracleConfig {
            conflict_budget: budget,
        }
    }

    pub fn build(&self, formula: &LcnfFormula) -> LabelOracle {
        LabelOracle::new(formula, self)
    }
}

/// Selector-encoded solver for one formula. Single owner; build one per
/// thread.
#[derive(Debug, Clone)]
pub struct LabelOracle {
    formula: LcnfFormula,
    solver: Solver,
    selectors: BTreeMap<Label, Var>,
    num_vars: Var,
}

impl LabelOracle {
    pub fn new(formula: &LcnfFormula, config: &OracleConfig) -> Self {
        let num_vars = formula.num_vars();
        let mut solver = Solver::new();
        solver.set_conflict_budget(config.conflict_budget);
        solver.reserve_vars(num_vars);
        let selectors: BTreeMap<Label, Var> = formula
            .active_labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l, num_vars + 1 + i as Var))
            .collect();
        solver.reserve_vars(num_vars + selectors.len() as Var);
        for c in formula.clauses() {
            let mut lits = c.clause.lits().to_vec();
            lits.extend(c.labels.iter().map(|l| Lit::negative(selectors[&l])));
            if !solver.add_clause(&lits) {
                break;
            }
        }
        LabelOracle {
            formula: formula.clone(),
            solver,
            selectors,
            num_vars,
        }
    }

    pub fn formula(&self) -> &LcnfFormula {
        &self.formula
    }

    /// Solver conflicts spent so far.
    pub fn conflicts(&self) -> u64 {
        self.solver.conflicts()
    }

    fn assumptions(&self, labels: &LabelSet) -> Vec<Lit> {
        self.selectors
            .iter()
            .map(|(&l, &s)| {
                if labels.contains(l) {
                    Lit::positive(s)
                } else {
                    Lit::negative(s)
                }
            })
            .collect()
    }

    /// Solves the subformula induced by `labels`. A model assigns the
    /// formula's variables only.
    pub fn solve_induced(&mut self, labels: &LabelSet) -> Result<SatOutcome, SolverError> {
        let assumptions = self.assumptions(labels);
        Ok(match self.solver.solve(&assumptions)? {
            SatOutcome::Sat(m) => SatOutcome::Sat(self.restrict(&m)),
            SatOutcome::Unsat => SatOutcome::Unsat,
        })
    }

    fn restrict(&self, model: &Model) -> Model {
        model.truncated(self.num_vars)
    }

    pub fn is_sat(&mut self, labels: &LabelSet) -> Result<bool, SolverError> {
        let assumptions = self.assumptions(labels);
        Ok(self.solver.solve(&assumptions)?.is_sat())
    }

    /// Whether the subformula induced by `premise` entails `clause`.
    pub fn entails(&mut self, premise: &LabelSet, clause: &Clause) -> Result<bool, SolverError> {
        let mut assumptions = self.assumptions(premise);
        assumptions.extend(clause.lits().iter().map(|&l| !l));
        Ok(!self.solver.solve(&assumptions)?.is_sat())
    }

    /// Whether the subformula induced by `premise` is equivalent to the one
    /// induced by `target`. Requires `premise ⊆ target`, so only the clauses
    /// of the larger subformula that the smaller one lacks need checking.
    /// Clauses are visited in index order; the first one not entailed ends
    /// the check.
    pub fn is_equivalent_within(
        &mut self,
        premise: &LabelSet,
        target: &LabelSet,
    ) -> Result<bool, SolverError> {
        debug_assert!(premise.is_subset(target));
        let missing: Vec<Clause> = self
            .formula
            .clauses()
            .filter(|c| c.labels.is_subset(target) && !c.labels.is_subset(premise))
            .map(|c| c.clause.clone())
            .collect();
        for clause in &missing {
            if !self.entails(premise, clause)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the subformula induced by `labels` is equivalent to the whole
    /// formula.
    pub fn is_equivalent(&mut self, labels: &LabelSet) -> Result<bool, SolverError> {
        let all = self.formula.active_labels().clone();
        let premise = labels.intersection(&all);
        self.is_equivalent_within(&premise, &all)
    }
}

/// Satisfiability of `formula.induced(labels)`.
pub fn is_sat_induced(
    formula: &LcnfFormula,
    labels: &LabelSet,
    config: &OracleConfig,
) -> Result<bool, SolverError> {
    LabelOracle::new(formula, config).is_sat(labels)
}

/// Whether `premise ⊨ clause`.
pub fn entails(
    premise: &[Clause],
    clause: &Clause,
    config: &OracleConfig,
) -> Result<bool, SolverError> {
    let assumptions: Vec<Lit> = clause.lits().iter().map(|&l| !l).collect();
    let outcome = crate::solver::solve(premise, &assumptions, config.conflict_budget)?;
    Ok(!outcome.is_sat())
}

/// Whether `formula.induced(labels)` is equivalent to `formula`.
pub fn is_equivalent_subformula(
    formula: &LcnfFormula,
    labels: &LabelSet,
    config: &OracleConfig,
) -> Result<bool, SolverError> {
    LabelOracle::new(formula, config).is_equivalent(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{running_example, unsat_pairs};
    use crate::solver;
    use proptest::prelude::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn induced_satisfiability() {
        let phi = running_example();
        assert!(is_sat_induced(&phi, &LabelSet::from([1, 2, 3, 4]), &cfg()).unwrap());
        let u = unsat_pairs();
        assert!(!is_sat_induced(&u, &LabelSet::from([1, 2]), &cfg()).unwrap());
        assert!(is_sat_induced(&u, &LabelSet::new(), &cfg()).unwrap());
    }

    #[test]
    fn entailment_examples() {
        let phi = running_example();
        let c: Vec<Clause> = phi.clauses().map(|c| c.clause.clone()).collect();
        // c1 from c7 and c8 by resolution; c2 subsumed by c8
        assert!(entails(&[c[6].clone(), c[7].clone()], &c[0], &cfg()).unwrap());
        assert!(entails(&[c[7].clone()], &c[1], &cfg()).unwrap());
        assert!(!entails(&[], &Clause::from_dimacs(&[1]).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let phi = running_example();
        assert!(is_equivalent_subformula(&phi, &LabelSet::from([2, 3, 4]), &cfg()).unwrap());
        assert!(!is_equivalent_subformula(&phi, &LabelSet::from([2, 3]), &cfg()).unwrap());
        assert!(is_equivalent_subformula(&phi, phi.active_labels(), &cfg()).unwrap());
    }

    #[test]
    fn model_is_restricted_to_formula_variables() {
        let phi = running_example();
        let mut oracle = LabelOracle::new(&phi, &cfg());
        let outcome = oracle.solve_induced(&LabelSet::from([1, 2, 3, 4])).unwrap();
        assert_eq!(outcome.model().unwrap().num_vars(), 4);
    }

    /// Models of `clauses` over variables `1..=n`, as bitmasks.
    fn models(clauses: &[Clause], n: Var) -> Vec<u32> {
        (0u32..1 << n)
            .filter(|bits| {
                clauses
                    .iter()
                    .all(|c| c.is_satisfied_by(|v| bits >> (v - 1) & 1 == 1))
            })
            .collect()
    }

    fn arb_formula() -> impl Strategy<Value = LcnfFormula> {
        let clause = (
            proptest::collection::btree_map(1u32..7, any::<bool>(), 0..4),
            proptest::collection::btree_set(1u32..6, 0..3),
        );
        proptest::collection::vec(clause, 0..14).prop_map(|rows| {
            let (clauses, labels) = rows
                .into_iter()
                .map(|(lits, ls)| {
                    let lits = lits.into_iter().map(|(v, neg)| {
                        if neg {
                            Lit::negative(v)
                        } else {
                            Lit::positive(v)
                        }
                    });
                    (
                        Clause::new(lits).unwrap(),
                        ls.into_iter().collect::<LabelSet>(),
                    )
                })
                .unzip();
            LcnfFormula::new(clauses, labels).unwrap()
        })
    }

    fn arb_labels() -> impl Strategy<Value = LabelSet> {
        proptest::collection::btree_set(1u32..6, 0..6).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn selector_encoding_matches_fresh_solve(phi in arb_formula(), l in arb_labels()) {
            let via_selectors = is_sat_induced(&phi, &l, &cfg()).unwrap();
            let fresh = solver::solve(&phi.induced(&l).cnf().clauses, &[], None).unwrap();
            prop_assert_eq!(via_selectors, fresh.is_sat());
        }

        #[test]
        fn equivalence_matches_model_sets(phi in arb_formula(), l in arb_labels()) {
            let n = phi.num_vars();
            let all = models(&phi.cnf().clauses, n);
            let sub = models(&phi.induced(&l).cnf().clauses, n);
            let eq = is_equivalent_subformula(&phi, &l, &cfg()).unwrap();
            prop_assert_eq!(eq, all == sub);
        }

        #[test]
        fn unsatisfiability_is_upward_closed(phi in arb_formula(), a in arb_labels(), b in arb_labels()) {
            let mut oracle = LabelOracle::new(&phi, &cfg());
            let small = a.clone();
            let big = a.union(&b);
            if !oracle.is_sat(&small).unwrap() {
                prop_assert!(!oracle.is_sat(&big).unwrap());
            }
        }
    }
}
