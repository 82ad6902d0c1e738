#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use lcnf_core::{Clause, LabelSet, LcnfFormula, Var};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn lcnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcnf"))
        .args(args)
        .env_remove("LCNF_CONFLICT_BUDGET")
        .output()
        .expect("binary runs")
}

pub fn run_on(args: &[&str], file: &str) -> Output {
    let path = fixture(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    lcnf(&all)
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Label sets printed one per line.
pub fn sets(out: &Output) -> Vec<Vec<u32>> {
    stdout(out)
        .lines()
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect()
}

/// Satisfiability by trying every assignment of variables `1..=n`.
pub fn brute_sat<'a>(clauses: impl IntoIterator<Item = &'a Clause> + Clone, n: Var) -> bool {
    (0u32..1 << n).any(|bits| {
        clauses
            .clone()
            .into_iter()
            .all(|c| c.is_satisfied_by(|v| bits >> (v - 1) & 1 == 1))
    })
}

/// Models of `clauses` over variables `1..=n`, one flag per assignment.
pub fn brute_models(clauses: &[Clause], n: Var) -> Vec<bool> {
    (0u32..1 << n)
        .map(|bits| {
            clauses
                .iter()
                .all(|c| c.is_satisfied_by(|v| bits >> (v - 1) & 1 == 1))
        })
        .collect()
}

/// Clauses of `formula` whose label sets lie inside `labels`.
pub fn induced_clauses(formula: &LcnfFormula, labels: &LabelSet) -> Vec<Clause> {
    formula
        .clauses()
        .filter(|c| c.labels.is_subset(labels))
        .map(|c| c.clause.clone())
        .collect()
}

pub fn all_clauses(formula: &LcnfFormula) -> Vec<Clause> {
    formula.clauses().map(|c| c.clause.clone()).collect()
}

/// Whether the unlabelled clauses alone have the same models as the formula.
pub fn background_equivalent(formula: &LcnfFormula) -> bool {
    let n = formula.num_vars();
    brute_models(&induced_clauses(formula, &LabelSet::new()), n)
        == brute_models(&all_clauses(formula), n)
}

/// Every subset of `universe`, as label sets.
pub fn subsets(universe: &[u32]) -> Vec<LabelSet> {
    (0usize..1 << universe.len())
        .map(|m| {
            universe
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect()
        })
        .collect()
}
