//! Redundancy analysis for labelled CNF formulas.
//!
//! A labelled CNF formula attaches a finite set of labels to every clause.
//! Removing a label removes every clause that carries it, which lets one
//! framework express clause-level, group-level and variable-level redundancy.
//! This crate computes minimal equivalent and minimal unsatisfiable label
//! sets, maximal non-equivalent and maximal satisfiable label sets, their
//! complements, and the hitting-set duality between them.

pub mod analysis;
pub mod bruteforce;
pub mod duality;
pub mod formula;
pub mod io;
pub mod oracle;
pub mod samples;
pub mod solver;

pub use analysis::{complement_of, AnalysisError, Analyzer, Witness, WitnessKind};
pub use bruteforce::{
    classify_all, random_lcnf, AnalysisReport, BruteForceConfig, BruteForceError, Profile,
};
pub use duality::{
    colmns_via_duality, is_hitting_set, is_irreducible_hitting_set, lmes_via_duality,
    minimal_hitting_sets, verify_duality, DualityChecks, DualityError, DualityVerdict, SetFamily,
};
pub use formula::{
    label, Clause, Cnf, FormulaError, Label, LabelSet, Labelling, LcnfFormula, Lit, Var,
};
pub use io::{
    parse_dimacs, parse_document, parse_gcnf, parse_lcnf, write_dimacs, write_gcnf, write_lcnf,
    Format, InputDocument, LabellingError, LabellingMode, ParseError, ParseErrorKind, Warning,
};
pub use oracle::{LabelOracle, OracleConfig};
pub use solver::{Model, SatOutcome, Solver, SolverError};
