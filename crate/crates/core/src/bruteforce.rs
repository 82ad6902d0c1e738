//! Exhaustive ground truth for small formulas.
//!
//! [`classify_all`] decides satisfiability and equivalence for every subset
//! of the active labels and then reads each family off its definition,
//! quantifying over all subsets and supersets. When the formula has few
//! enough variables the verdicts come from a truth table, so this module
//! does not share failure modes with the SAT oracle.
//!
//! Subsets are walked in Gray-code order: consecutive subsets differ in one
//! label, so the set of induced clauses is updated incrementally.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::Analyzer;
use crate::duality::SetFamily;
use crate::formula::{Clause, Label, LabelSet, LcnfFormula, Lit, Var};
use crate::oracle::{LabelOracle, OracleConfig};
use crate::solver::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("formula has {found} active labels, more than the limit of {limit}")]
    TooManyLabels { found: usize, limit: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceConfig {
    /// Largest number of active labels accepted (2^n subsets are visited).
    pub max_labels: usize,
    /// Formulas with at most this many variables use truth tables.
    pub truth_table_vars: usize,
    /// Worker threads for subset classification. Results do not depend on it.
    pub jobs: usize,
    pub oracle: OracleConfig,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig {
            max_labels: 16,
            truth_table_vars: 12,
            jobs: 1,
            oracle: OracleConfig::default(),
        }
    }
}

/// Verdicts for one label subset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubsetStatus {
    pub sat: bool,
    pub equivalent: bool,
}

/// Every family of a formula, plus the per-subset verdicts they were read
/// from.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    labels: Vec<Label>,
    statuses: Vec<SubsetStatus>,
    pub has_unlabelled: bool,
    pub lmes: SetFamily,
    /// Empty unless the formula is unsatisfiable.
    pub lmus: SetFamily,
    pub lmns: SetFamily,
    pub lmss: SetFamily,
    pub colmns: SetFamily,
    pub colmss: SetFamily,
}

impl AnalysisReport {
    pub fn universe(&self) -> LabelSet {
        self.labels.iter().copied().collect()
    }

    fn mask_of(&self, labels: &LabelSet) -> Option<usize> {
        let mut mask = 0usize;
        for l in labels.iter() {
            let bit = self.labels.binary_search(&l).ok()?;
            mask |= 1 << bit;
        }
        Some(mask)
    }

    /// Verdicts for `labels`; `None` if it contains an inactive label.
    pub fn status(&self, labels: &LabelSet) -> Option<SubsetStatus> {
        self.mask_of(labels).map(|m| self.statuses[m])
    }

    /// All classified subsets with their verdicts, in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = (LabelSet, SubsetStatus)> + '_ {
        self.statuses
            .iter()
            .enumerate()
            .map(|(mask, &s)| (self.set_of(mask), s))
    }

    fn set_of(&self, mask: usize) -> LabelSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect()
    }

    pub fn satisfiable(&self) -> bool {
        self.statuses[self.statuses.len() - 1].sat
    }

    pub fn background_satisfiable(&self) -> bool {
        self.statuses[0].sat
    }

    pub fn lmns_exists(&self) -> bool {
        !self.lmns.is_empty()
    }

    pub fn lmss_exists(&self) -> bool {
        !self.lmss.is_empty()
    }

    /// Whether the empty set is an LMES.
    pub fn lmes_is_empty(&self) -> bool {
        self.lmes.contains(&LabelSet::new())
    }

    /// Labels whose individual removal breaks equivalence.
    pub fn irredundant_labels(&self) -> LabelSet {
        let full = self.statuses.len() - 1;
        (0..self.labels.len())
            .filter(|&i| !self.statuses[full & !(1 << i)].equivalent)
            .map(|i| self.labels[i])
            .collect()
    }

    /// The duality preconditions, read from the verdicts.
    pub fn duality_applies(&self) -> bool {
        !self.labels.is_empty() && (!self.has_unlabelled || !self.irredundant_labels().is_empty())
    }
}

/// Clause-subset masks, at most 128 clauses.
type ClauseMask = u128;

const MAX_TABLE_CLAUSES: usize = 128;

/// Truth-table summary: for each distinct set of clauses falsified by some
/// assignment, one entry.
struct TruthTable {
    falsified: Vec<ClauseMask>,
}

impl TruthTable {
    fn build(clauses: &[&Clause]) -> TruthTable {
        let vars: Vec<Var> = {
            let mut v: Vec<Var> = clauses.iter().flat_map(|c| c.vars()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let position: BTreeMap<Var, usize> =
            vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // each clause as (positive mask, negative mask) over compact variables
        let compiled: Vec<(u32, u32)> = clauses
            .iter()
            .map(|c| {
                c.lits().iter().fold((0, 0), |(p, n), l| {
                    let bit = 1u32 << position[&l.var()];
                    if l.is_negative() {
                        (p, n | bit)
                    } else {
                        (p | bit, n)
                    }
                })
            })
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for assignment in 0u32..1 << vars.len() {
            let mut mask: ClauseMask = 0;
            for (i, &(p, n)) in compiled.iter().enumerate() {
                if assignment & p == 0 && !assignment & n == 0 {
                    mask |= 1 << i;
                }
            }
            seen.insert(mask);
        }
        TruthTable {
            falsified: seen.into_iter().collect(),
        }
    }

    fn status(&self, induced: ClauseMask) -> SubsetStatus {
        let mut sat = false;
        let mut equivalent = true;
        for &f in &self.falsified {
            if f & induced == 0 {
                sat = true;
                if f != 0 {
                    // a model of the subformula that falsifies the formula
                    equivalent = false;
                }
            }
        }
        SubsetStatus { sat, equivalent }
    }
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Decides every subset of the active labels of `formula` and derives all
/// families from the verdicts.
pub fn classify_all(
    formula: &LcnfFormula,
    config: &BruteForceConfig,
) -> Result<AnalysisReport, BruteForceError> {
    let labels: Vec<Label> = formula.active_labels().to_vec();
    let n = labels.len();
    if n > config.max_labels {
        return Err(BruteForceError::TooManyLabels {
            found: n,
            limit: config.max_labels,
        });
    }
    let bit_of: BTreeMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let clause_bits: Vec<usize> = formula
        .clauses()
        .map(|c| c.labels.iter().fold(0usize, |m, l| m | 1 << bit_of[&l]))
        .collect();
    let total = 1usize << n;

    let use_table =
        formula.variables().len() <= config.truth_table_vars && formula.len() <= MAX_TABLE_CLAUSES;
    let table = use_table.then(|| {
        let clauses: Vec<&Clause> = formula.clauses().map(|c| c.clause).collect();
        TruthTable::build(&clauses)
    });

    // contiguous ranges of Gray-code positions, one walk per chunk
    let chunks = config.jobs.max(1) * 4;
    let chunk_len = total.div_ceil(chunks).max(1);
    let ranges: Vec<(usize, usize)> = (0..total)
        .step_by(chunk_len)
        .map(|start| (start, (start + chunk_len).min(total)))
        .collect();

    let classify_range =
        |(start, end): (usize, usize)| -> Result<Vec<(usize, SubsetStatus)>, SolverError> {
            let mut out = Vec::with_capacity(end - start);
            match &table {
                Some(table) => {
                    let mut walk = GrayWalk::new(&clause_bits, n, gray(start));
                    out.push((walk.subset, table.status(walk.induced)));
                    for i in start + 1..end {
                        let flipped = (gray(i) ^ gray(i - 1)).trailing_zeros() as usize;
                        walk.flip(flipped);
                        out.push((walk.subset, table.status(walk.induced)));
                    }
                }
                None => {
                    let mut oracle = LabelOracle::new(formula, &config.oracle);
                    for i in start..end {
                        let mask = gray(i);
                        let set: LabelSet = (0..n)
                            .filter(|b| mask >> b & 1 == 1)
                            .map(|b| labels[b])
                            .collect();
                        let sat = oracle.is_sat(&set)?;
                        let equivalent = oracle.is_equivalent(&set)?;
                        out.push((mask, SubsetStatus { sat, equivalent }));
                    }
                }
            }
            Ok(out)
        };

    let parts: Vec<Result<Vec<(usize, SubsetStatus)>, SolverError>> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| ranges.par_iter().copied().map(classify_range).collect())
    } else {
        ranges.iter().copied().map(classify_range).collect()
    };
    let mut statuses = vec![SubsetStatus::default(); total];
    for part in parts {
        for (mask, status) in part? {
            statuses[mask] = status;
        }
    }

    Ok(derive_families(labels, statuses, formula.has_unlabelled()))
}

/// Incrementally maintained set of induced clauses while labels are toggled.
struct GrayWalk<'a> {
    clause_bits: &'a [usize],
    subset: usize,
    /// For each clause, the number of its labels missing from `subset`.
    missing: Vec<u32>,
    induced: ClauseMask,
    by_label: Vec<Vec<usize>>,
}

impl<'a> GrayWalk<'a> {
    fn new(clause_bits: &'a [usize], num_labels: usize, subset: usize) -> Self {
        let mut by_label = vec![Vec::new(); num_labels];
        let mut missing = Vec::with_capacity(clause_bits.len());
        let mut induced = 0;
        for (ci, &bits) in clause_bits.iter().enumerate() {
            for (b, list) in by_label.iter_mut().enumerate() {
                if bits >> b & 1 == 1 {
                    list.push(ci);
                }
            }
            let m = (bits & !subset).count_ones();
            if m == 0 {
                induced |= 1 << ci;
            }
            missing.push(m);
        }
        GrayWalk {
            clause_bits,
            subset,
            missing,
            induced,
            by_label,
        }
    }

    fn flip(&mut self, bit: usize) {
        let adding = self.subset >> bit & 1 == 0;
        self.subset ^= 1 << bit;
        for &ci in &self.by_label[bit] {
            if adding {
                self.missing[ci] -= 1;
                if self.missing[ci] == 0 {
                    self.induced |= 1 << ci;
                }
            } else {
                if self.missing[ci] == 0 {
                    self.induced &= !(1 << ci);
                }
                self.missing[ci] += 1;
            }
        }
        debug_assert_eq!(
            self.missing
                .iter()
                .zip(self.clause_bits)
                .filter(|(m, _)| **m == 0)
                .count(),
            self.induced.count_ones() as usize
        );
    }
}

/// Iterates the strict submasks of `mask`, ending with 0.
fn strict_submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut current = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        current = current.wrapping_sub(1) & mask;
        done = current == 0;
        Some(current)
    })
}

fn derive_families(
    labels: Vec<Label>,
    statuses: Vec<SubsetStatus>,
    has_unlabelled: bool,
) -> AnalysisReport {
    let n = labels.len();
    let full = (1usize << n) - 1;
    let universe: LabelSet = labels.iter().copied().collect();
    let set_of = |mask: usize| -> LabelSet {
        (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| labels[b])
            .collect()
    };
    let eq = |m: usize| statuses[m].equivalent;
    let sat = |m: usize| statuses[m].sat;
    // strict supersets of m are m | t for nonempty submasks t of its complement
    let strict_supermasks = |m: usize| {
        let rest = full & !m;
        strict_submasks(rest).map(move |t| m | (rest & !t))
    };

    let mut lmes = SetFamily::new(universe.clone());
    let mut lmus = SetFamily::new(universe.clone());
    let mut lmns = SetFamily::new(universe.clone());
    let mut lmss = SetFamily::new(universe.clone());
    for m in 0..=full {
        if eq(m) && strict_submasks(m).all(|s| !eq(s)) {
            lmes.insert(set_of(m));
        }
        if !sat(m) && strict_submasks(m).all(sat) {
            lmus.insert(set_of(m));
        }
        if !eq(m) && strict_supermasks(m).all(eq) {
            lmns.insert(set_of(m));
        }
        if sat(m) && strict_supermasks(m).all(|s| !sat(s)) {
            lmss.insert(set_of(m));
        }
    }
    let colmns = lmns.complements();
    let colmss = lmss.complements();
    AnalysisReport {
        labels,
        statuses,
        has_unlabelled,
        lmes,
        lmus,
        lmns,
        lmss,
        colmns,
        colmss,
    }
}

/// Parameters for [`random_lcnf`]. Out-of-range values are clamped to
/// 1..=8 variables, 0..=20 clauses, 1..=6 labels and 0..=3 labels per
/// clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub num_labels: u32,
    /// Upper bound on the label-set size of a labelled clause.
    pub max_labels_per_clause: usize,
    pub max_clause_width: usize,
    /// Probability that a clause is unlabelled.
    pub unlabelled_probability: f64,
    /// Every labelled clause gets exactly one label, as in group CNF.
    pub grouped: bool,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            num_vars: 5,
            num_clauses: 10,
            num_labels: 4,
            max_labels_per_clause: 2,
            max_clause_width: 3,
            unlabelled_probability: 0.2,
            grouped: false,
        }
    }
}

impl Profile {
    /// A profile whose sizes vary with `seed`, for building mixed corpora.
    pub fn varied(seed: u64) -> Profile {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
        Profile {
            num_vars: rng.gen_range(2..=8),
            num_clauses: rng.gen_range(1..=20),
            num_labels: rng.gen_range(1..=6),
            max_labels_per_clause: rng.gen_range(1..=3),
            max_clause_width: rng.gen_range(1..=3),
            unlabelled_probability: [0.0, 0.1, 0.3][rng.gen_range(0..3)],
            grouped: rng.gen_bool(0.2),
        }
    }

    fn clamped(&self) -> Profile {
        Profile {
            num_vars: self.num_vars.clamp(1, 8),
            num_clauses: self.num_clauses.min(20),
            num_labels: self.num_labels.clamp(1, 6),
            max_labels_per_clause: self.max_labels_per_clause.min(3),
            max_clause_width: self.max_clause_width.max(1),
            unlabelled_probability: self.unlabelled_probability.clamp(0.0, 1.0),
            grouped: self.grouped,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedFormula {
    pub formula: LcnfFormula,
    /// Whether the hitting-set duality preconditions hold.
    pub duality_applies: bool,
}

/// A reproducible random formula for `seed`.
pub fn random_lcnf(seed: u64, profile: &Profile) -> GeneratedFormula {
    let p = profile.clamped();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::with_capacity(p.num_clauses);
    let mut label_sets = Vec::with_capacity(p.num_clauses);
    for _ in 0..p.num_clauses {
        let width = rng.gen_range(1..=p.max_clause_width.min(p.num_vars as usize));
        let vars = sample(&mut rng, p.num_vars as usize, width);
        let lits: Vec<Lit> = vars
            .iter()
            .map(|v| {
                let v = v as Var + 1;
                if rng.gen_bool(0.5) {
                    Lit::negative(v)
                } else {
                    Lit::positive(v)
                }
            })
            .collect();
        clauses.push(Clause::new(lits).expect("distinct variables"));

        let unlabelled = p.max_labels_per_clause == 0 || rng.gen_bool(p.unlabelled_probability);
        let labels: LabelSet = if unlabelled {
            LabelSet::new()
        } else {
            let size = if p.grouped {
                1
            } else {
                rng.gen_range(1..=p.max_labels_per_clause.min(p.num_labels as usize))
            };
            sample(&mut rng, p.num_labels as usize, size)
                .iter()
                .map(|l| l as Label + 1)
                .collect()
        };
        label_sets.push(labels);
    }
    let formula =
        LcnfFormula::with_num_vars(p.num_vars, clauses, label_sets).expect("total labelling");
    let duality_applies = Analyzer::new(&formula, &OracleConfig::default())
        .duality_preconditions()
        .is_ok();
    GeneratedFormula {
        formula,
        duality_applies,
    }
}

/// One formula for each corner case of existence and emptiness of the
/// families, named by what makes it special.
pub fn corner_case_corpus() -> Vec<(&'static str, LcnfFormula)> {
    let build = |rows: &[(&[i32], &[Label])]| {
        let clauses = rows
            .iter()
            .map(|(c, _)| Clause::from_dimacs(c).unwrap())
            .collect();
        let labels = rows
            .iter()
            .map(|(_, l)| l.iter().copied().collect())
            .collect();
        LcnfFormula::new(clauses, labels).unwrap()
    };
    vec![
        ("empty-formula", build(&[])),
        ("no-active-labels", build(&[(&[1, 2], &[]), (&[-1], &[])])),
        (
            "background-entails-all",
            build(&[(&[1], &[]), (&[1, 2], &[1]), (&[1], &[2])]),
        ),
        (
            "unsat-background",
            build(&[(&[1], &[]), (&[-1], &[]), (&[2], &[1]), (&[-2], &[2])]),
        ),
        ("satisfiable", crate::samples::running_example()),
        ("unsatisfiable", crate::samples::unsat_pairs()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{one_against_two, running_example, unsat_pairs};

    fn fam(sets: &[&[Label]]) -> SetFamily {
        SetFamily::from_members(sets.iter().map(|s| s.iter().copied().collect()))
    }

    fn report(phi: &LcnfFormula) -> AnalysisReport {
        classify_all(phi, &BruteForceConfig::default()).unwrap()
    }

    #[test]
    fn running_example_families() {
        let r = report(&running_example());
        assert_eq!(r.lmes, fam(&[&[1, 2], &[2, 3, 4]]));
        assert_eq!(r.lmns, fam(&[&[1, 3, 4], &[2, 3], &[2, 4]]));
        assert_eq!(r.colmns, fam(&[&[2], &[1, 3], &[1, 4]]));
        assert!(r.lmus.is_empty());
        assert_eq!(r.lmss, fam(&[&[1, 2, 3, 4]]));
        assert_eq!(r.colmss, fam(&[&[]]));
        assert!(r.satisfiable());
        assert!(r.duality_applies());
    }

    #[test]
    fn unsat_pairs_families() {
        let r = report(&unsat_pairs());
        assert_eq!(r.lmus, fam(&[&[1, 2], &[3]]));
        assert_eq!(r.lmss, fam(&[&[1], &[2]]));
        assert_eq!(r.colmss, fam(&[&[1, 3], &[2, 3]]));
        assert_eq!(r.lmes, r.lmus);
        assert_eq!(r.lmns, r.lmss);
    }

    #[test]
    fn one_against_two_families() {
        let r = report(&one_against_two());
        assert_eq!(r.lmss, fam(&[&[1], &[2, 3]]));
    }

    #[test]
    fn no_labels_corner_case() {
        let phi = LcnfFormula::new(
            vec![Clause::from_dimacs(&[1]).unwrap()],
            vec![LabelSet::new()],
        )
        .unwrap();
        let r = report(&phi);
        assert_eq!(r.lmes, fam(&[&[]]));
        assert!(r.lmns.is_empty());
        assert!(!r.lmns_exists());
        assert!(r.lmes_is_empty());
        assert!(!r.duality_applies());
    }

    #[test]
    fn label_budget() {
        let cfg = BruteForceConfig {
            max_labels: 3,
            ..Default::default()
        };
        assert_eq!(
            classify_all(&running_example(), &cfg).unwrap_err(),
            BruteForceError::TooManyLabels { found: 4, limit: 3 }
        );
    }

    #[test]
    fn strict_submask_enumeration() {
        let mut subs: Vec<usize> = strict_submasks(0b101).collect();
        subs.sort();
        assert_eq!(subs, vec![0b000, 0b001, 0b100]);
        assert_eq!(strict_submasks(0).count(), 0);
    }

    #[test]
    fn truth_table_and_oracle_paths_agree() {
        let table = BruteForceConfig::default();
        let oracle = BruteForceConfig {
            truth_table_vars: 0,
            ..Default::default()
        };
        for seed in 0..60 {
            let phi = random_lcnf(seed, &Profile::varied(seed)).formula;
            let a = classify_all(&phi, &table).unwrap();
            let b = classify_all(&phi, &oracle).unwrap();
            assert_eq!(a.statuses, b.statuses, "seed {seed}");
        }
    }

    #[test]
    fn jobs_do_not_change_results() {
        for seed in 0..20 {
            let phi = random_lcnf(seed, &Profile::varied(seed)).formula;
            let one = classify_all(&phi, &BruteForceConfig::default()).unwrap();
            let four = classify_all(
                &phi,
                &BruteForceConfig {
                    jobs: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(one.statuses, four.statuses);
            assert_eq!(one.lmes, four.lmes);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_lcnf(0, &Profile::default());
        let b = random_lcnf(0, &Profile::default());
        assert_eq!(a.formula, b.formula);
        assert_eq!(a.formula.len(), 10);
    }

    #[test]
    fn generator_profiles() {
        let none = Profile {
            unlabelled_probability: 0.0,
            ..Default::default()
        };
        for seed in 0..20 {
            let phi = random_lcnf(seed, &none).formula;
            assert!(!phi.has_unlabelled());
            assert!(random_lcnf(seed, &none).duality_applies);
        }
        let grouped = Profile {
            grouped: true,
            ..Default::default()
        };
        for seed in 0..20 {
            let phi = random_lcnf(seed, &grouped).formula;
            assert!(phi.clauses().all(|c| c.labels.len() <= 1));
        }
    }

    #[test]
    fn corner_cases_have_expected_flags() {
        let corpus: BTreeMap<_, _> = corner_case_corpus().into_iter().collect();
        let r = report(&corpus["empty-formula"]);
        assert!(r.lmes_is_empty() && !r.lmns_exists() && r.lmss_exists());
        let r = report(&corpus["no-active-labels"]);
        assert!(r.lmes_is_empty() && !r.lmns_exists());
        let r = report(&corpus["background-entails-all"]);
        assert!(r.lmes_is_empty() && !r.lmns_exists() && !r.duality_applies());
        let r = report(&corpus["unsat-background"]);
        assert!(!r.lmss_exists() && r.lmes_is_empty() && r.colmss.is_empty());
        let r = report(&corpus["satisfiable"]);
        assert!(r.lmns_exists() && !r.lmes_is_empty());
        let r = report(&corpus["unsatisfiable"]);
        assert!(!r.satisfiable() && r.lmss_exists());
    }
}
