//! Small hand-built formulas used throughout the tests, benches and docs.

use crate::formula::{Clause, LabelSet, LcnfFormula};

fn build(rows: &[(&[i32], &[u32])]) -> LcnfFormula {
    let clauses = rows
        .iter()
        .map(|(lits, _)| Clause::from_dimacs(lits).expect("valid clause"))
        .collect();
    let labels = rows
        .iter()
        .map(|(_, labels)| labels.iter().copied().collect::<LabelSet>())
        .collect();
    LcnfFormula::new(clauses, labels).expect("labelling is total")
}

/// Satisfiable formula over x, y, z, t (variables 1..=4) with four labels
/// and one unlabelled clause:
///
/// ```text
/// c1 = (-y)_{1}        c5 = (x y z)_{}
/// c2 = (y -t)_{1}      c6 = (-x y)_{2,3}
/// c3 = (z t)_{1}       c7 = (-y t)_{3}
/// c4 = (-x)_{1,2}      c8 = (-t)_{4}
/// ```
///
/// Its only model is `{-x, -y, z, -t}`; its minimal equivalent label sets
/// are `{1,2}` and `{2,3,4}`.
pub fn running_example() -> LcnfFormula {
    build(&[
        (&[-2], &[1]),
        (&[2, -4], &[1]),
        (&[3, 4], &[1]),
        (&[-1], &[1, 2]),
        (&[1, 2, 3], &[]),
        (&[-1, 2], &[2, 3]),
        (&[-2, 4], &[3]),
        (&[-4], &[4]),
    ])
}

/// `(x)_{1} (-x)_{2} (y)_{3} (-y)_{3}`: unsatisfiable, minimal unsatisfiable
/// label sets `{1,2}` and `{3}`.
pub fn unsat_pairs() -> LcnfFormula {
    build(&[(&[1], &[1]), (&[-1], &[2]), (&[2], &[3]), (&[-2], &[3])])
}

/// `(x)_{1} (-x)_{2} (-x)_{3}`: the largest satisfiable label set is `{2,3}`.
pub fn one_against_two() -> LcnfFormula {
    build(&[(&[1], &[1]), (&[-1], &[2]), (&[-1], &[3])])
}
