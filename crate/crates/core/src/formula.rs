//! Labelled CNF data model.
//!
//! An [`LcnfFormula`] pairs a CNF formula (an indexed multi-set of clauses)
//! with a total labelling function that maps every clause to a finite set of
//! labels. Clauses with an empty label set are *unlabelled*; they play the
//! role of background (group-0) clauses and survive in every subformula.
//!
//! The only structural operation on a labelled formula is the removal of
//! labels: [`LcnfFormula::induced`] keeps exactly the clauses whose labels are
//! all contained in the given set. Views produced this way share clause
//! storage with their parent and only carry an index list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Not;
use std::sync::Arc;

use thiserror::Error;

/// A propositional variable, numbered from 1 as in DIMACS.
pub type Var = u32;

/// A clause label. Labels are dense nonnegative integers.
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("literal 0 is not a valid literal")]
    ZeroLiteral,
    #[error("clause contains variable {0} in both polarities")]
    ComplementaryLiterals(Var),
    #[error("labelling covers {found} clauses but the formula has {expected}")]
    LabellingLength { expected: usize, found: usize },
    #[error("clause {0} has no label entry")]
    MissingLabels(usize),
}

/// A literal in DIMACS convention: positive for a variable, negative for its
/// negation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    pub fn from_dimacs(value: i32) -> Result<Self, FormulaError> {
        if value == 0 {
            Err(FormulaError::ZeroLiteral)
        } else {
            Ok(Lit(value))
        }
    }

    /// # Panics
    /// If `var` is 0.
    pub fn positive(var: Var) -> Self {
        assert!(var > 0, "variables are numbered from 1");
        Lit(var as i32)
    }

    /// # Panics
    /// If `var` is 0.
    pub fn negative(var: Var) -> Self {
        assert!(var > 0, "variables are numbered from 1");
        Lit(-(var as i32))
    }

    pub fn var(self) -> Var {
        self.0.unsigned_abs()
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A clause: a deduplicated set of literals that never contains a variable in
/// both polarities. Literals are kept sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Self, FormulaError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_by_key(|l| (l.var(), l.is_negative()));
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(FormulaError::ComplementaryLiterals(w[0].var()));
        }
        Ok(Clause { lits })
    }

    pub fn from_dimacs(values: &[i32]) -> Result<Self, FormulaError> {
        let lits = values
            .iter()
            .map(|&v| Lit::from_dimacs(v))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn max_var(&self) -> Var {
        self.vars().max().unwrap_or(0)
    }

    /// Evaluates the clause under `value`, which reports the truth value of a
    /// variable.
    pub fn is_satisfied_by<F: Fn(Var) -> bool>(&self, value: F) -> bool {
        self.lits.iter().any(|l| value(l.var()) != l.is_negative())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.lits.iter()).finish()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lit in &self.lits {
            write!(f, "{lit} ")?;
        }
        write!(f, "0")
    }
}

/// A finite set of labels.
///
/// The derived ordering compares the sorted element sequences
/// lexicographically, which is the canonical order used for families.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(BTreeSet<Label>);

impl LabelSet {
    pub fn new() -> Self {
        LabelSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.contains(&label)
    }

    pub fn insert(&mut self, label: Label) -> bool {
        self.0.insert(label)
    }

    pub fn remove(&mut self, label: Label) -> bool {
        self.0.remove(&label)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Label> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &LabelSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_superset(&self, other: &LabelSet) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn is_disjoint(&self, other: &LabelSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        LabelSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &LabelSet) -> LabelSet {
        LabelSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &LabelSet) -> LabelSet {
        LabelSet(self.0.difference(&other.0).copied().collect())
    }

    /// Copy of `self` with `label` added.
    pub fn with(&self, label: Label) -> LabelSet {
        let mut out = self.clone();
        out.insert(label);
        out
    }

    /// Copy of `self` with `label` removed.
    pub fn without(&self, label: Label) -> LabelSet {
        let mut out = self.clone();
        out.remove(label);
        out
    }

    pub fn first(&self) -> Option<Label> {
        self.0.first().copied()
    }

    pub fn to_vec(&self) -> Vec<Label> {
        self.iter().collect()
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        LabelSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Label; N]> for LabelSet {
    fn from(labels: [Label; N]) -> Self {
        labels.into_iter().collect()
    }
}

impl Extend<Label> for LabelSet {
    fn extend<I: IntoIterator<Item = Label>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a LabelSet {
    type Item = Label;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Label>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Space separated, ascending. The empty set renders as an empty string.
impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A plain CNF formula with a declared variable count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: Var,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(clauses: Vec<Clause>) -> Self {
        let num_vars = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Cnf { num_vars, clauses }
    }
}

/// How clauses of a plain CNF formula are assigned labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Labelling {
    /// Clause `i` (0-based) gets the singleton label `{i + 1}`.
    Clause,
    /// One group index per clause; group 0 clauses are unlabelled and group
    /// `g > 0` clauses get `{g}`.
    Group(Vec<u32>),
    /// Each clause is labelled with its variables.
    Variable,
    /// Each clause is labelled with its literals, `2v` for `v` and `2v + 1`
    /// for its negation.
    Literal,
    /// Label sets given per clause, e.g. read from a file.
    Explicit(Vec<Option<LabelSet>>),
}

/// Label encoding of a literal in [`Labelling::Literal`] mode.
pub fn literal_label(lit: Lit) -> Label {
    2 * lit.var() + lit.is_negative() as u32
}

/// Builds a labelled formula from `cnf` according to `scheme`.
pub fn label(cnf: &Cnf, scheme: Labelling) -> Result<LcnfFormula, FormulaError> {
    let labels: Vec<LabelSet> = match scheme {
        Labelling::Clause => (1..=cnf.clauses.len() as Label)
            .map(|l| LabelSet::from([l]))
            .collect(),
        Labelling::Group(groups) => {
            if groups.len() != cnf.clauses.len() {
                return Err(FormulaError::LabellingLength {
                    expected: cnf.clauses.len(),
                    found: groups.len(),
                });
            }
            groups
                .into_iter()
                .map(|g| {
                    if g == 0 {
                        LabelSet::new()
                    } else {
                        LabelSet::from([g])
                    }
                })
                .collect()
        }
        Labelling::Variable => cnf.clauses.iter().map(|c| c.vars().collect()).collect(),
        Labelling::Literal => cnf
            .clauses
            .iter()
            .map(|c| c.lits().iter().map(|&l| literal_label(l)).collect())
            .collect(),
        Labelling::Explicit(sets) => {
            if sets.len() > cnf.clauses.len() {
                return Err(FormulaError::LabellingLength {
                    expected: cnf.clauses.len(),
                    found: sets.len(),
                });
            }
            let mut out = Vec::with_capacity(cnf.clauses.len());
            for i in 0..cnf.clauses.len() {
                match sets.get(i) {
                    Some(Some(set)) => out.push(set.clone()),
                    _ => return Err(FormulaError::MissingLabels(i)),
                }
            }
            out
        }
    };
    LcnfFormula::with_num_vars(cnf.num_vars, cnf.clauses.clone(), labels)
}

#[derive(Debug)]
struct Store {
    num_vars: Var,
    clauses: Vec<Clause>,
    labels: Vec<LabelSet>,
    aliases: BTreeMap<Label, String>,
}

/// A labelled CNF formula, or a label-induced view of one.
///
/// Cloning is cheap: clause storage is shared. Clause indices always refer to
/// positions in the root formula, so views keep the identity of the clauses
/// they retain.
#[derive(Clone)]
pub struct LcnfFormula {
    store: Arc<Store>,
    view: Arc<[usize]>,
    active: LabelSet,
}

/// A clause of a formula together with its index and label set.
#[derive(Debug, Clone, Copy)]
pub struct ClauseRef<'a> {
    pub index: usize,
    pub clause: &'a Clause,
    pub labels: &'a LabelSet,
}

impl LcnfFormula {
    pub fn new(clauses: Vec<Clause>, labels: Vec<LabelSet>) -> Result<Self, FormulaError> {
        let num_vars = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Self::with_num_vars(num_vars, clauses, labels)
    }

    /// Like [`LcnfFormula::new`], with a declared variable count. The count is
    /// raised to the largest variable that actually occurs.
    pub fn with_num_vars(
        num_vars: Var,
        clauses: Vec<Clause>,
        labels: Vec<LabelSet>,
    ) -> Result<Self, FormulaError> {
        if clauses.len() != labels.len() {
            return Err(FormulaError::LabellingLength {
                expected: clauses.len(),
                found: labels.len(),
            });
        }
        let num_vars = clauses.iter().map(Clause::max_var).fold(num_vars, Var::max);
        let view: Arc<[usize]> = (0..clauses.len()).collect();
        let store = Arc::new(Store {
            num_vars,
            clauses,
            labels,
            aliases: BTreeMap::new(),
        });
        Ok(Self::from_view(store, view))
    }

    /// Attaches names to labels. Only meaningful on a root formula; views
    /// created afterwards inherit the table.
    pub fn with_aliases(self, aliases: BTreeMap<Label, String>) -> Self {
        let store = Store {
            num_vars: self.store.num_vars,
            clauses: self.store.clauses.clone(),
            labels: self.store.labels.clone(),
            aliases,
        };
        Self::from_view(Arc::new(store), self.view)
    }

    fn from_view(store: Arc<Store>, view: Arc<[usize]>) -> Self {
        let mut active = LabelSet::new();
        for &i in view.iter() {
            active.extend(store.labels[i].iter());
        }
        LcnfFormula {
            store,
            view,
            active,
        }
    }

    /// Number of clauses in the CNF part.
    pub fn len(&self) -> usize {
        self.view.len()
    }

    pub fn is_empty(&self) -> bool {
        self.view.is_empty()
    }

    /// Declared variable count of the root formula.
    pub fn num_vars(&self) -> Var {
        self.store.num_vars
    }

    /// Variables occurring in the clauses of this formula.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.clauses().flat_map(|c| c.clause.vars()).collect()
    }

    /// Root indices of the clauses in this formula, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.view
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = ClauseRef<'_>> + '_ {
        self.view.iter().map(move |&i| self.root_clause(i))
    }

    fn root_clause(&self, index: usize) -> ClauseRef<'_> {
        ClauseRef {
            index,
            clause: &self.store.clauses[index],
            labels: &self.store.labels[index],
        }
    }

    /// The clause at root index `index`, if it belongs to this formula.
    pub fn clause(&self, index: usize) -> Option<ClauseRef<'_>> {
        self.view
            .binary_search(&index)
            .ok()
            .map(|_| self.root_clause(index))
    }

    /// Owned copy of the CNF part.
    pub fn cnf(&self) -> Cnf {
        Cnf {
            num_vars: self.num_vars(),
            clauses: self.clauses().map(|c| c.clause.clone()).collect(),
        }
    }

    /// The active labels: the union of all clause label sets.
    pub fn active_labels(&self) -> &LabelSet {
        &self.active
    }

    /// Clauses with an empty label set.
    pub fn unlabelled(&self) -> impl Iterator<Item = ClauseRef<'_>> + '_ {
        self.clauses().filter(|c| c.labels.is_empty())
    }

    pub fn has_unlabelled(&self) -> bool {
        self.unlabelled().next().is_some()
    }

    /// Clauses whose label set contains `label`.
    pub fn labelled_with(&self, label: Label) -> impl Iterator<Item = ClauseRef<'_>> + '_ {
        self.clauses().filter(move |c| c.labels.contains(label))
    }

    pub fn alias(&self, label: Label) -> Option<&str> {
        self.store.aliases.get(&label).map(String::as_str)
    }

    pub fn aliases(&self) -> &BTreeMap<Label, String> {
        &self.store.aliases
    }

    /// The subformula induced by `labels`: every clause whose labels are all
    /// in `labels`, including every unlabelled clause. Labels that are not
    /// active are harmless.
    pub fn induced(&self, labels: &LabelSet) -> LcnfFormula {
        let view: Arc<[usize]> = self
            .view
            .iter()
            .copied()
            .filter(|&i| self.store.labels[i].is_subset(labels))
            .collect();
        Self::from_view(Arc::clone(&self.store), view)
    }

    /// Drops every clause carrying `label`.
    pub fn remove_label(&self, label: Label) -> LcnfFormula {
        let view: Arc<[usize]> = self
            .view
            .iter()
            .copied()
            .filter(|&i| !self.store.labels[i].contains(label))
            .collect();
        Self::from_view(Arc::clone(&self.store), view)
    }

    /// Whether `self` can be obtained from `parent` by removing labels, that
    /// is `self = parent.induced(L)` for some `L` within the active labels of
    /// `parent`. Clauses are compared by content and label set, so the two
    /// formulas need not share storage.
    pub fn is_subformula_of(&self, parent: &LcnfFormula) -> bool {
        if !self.active.is_subset(&parent.active) {
            return false;
        }
        let candidate = parent.induced(&self.active);
        candidate.len() == self.len() && candidate.sorted_entries() == self.sorted_entries()
    }

    fn sorted_entries(&self) -> Vec<(&Clause, &LabelSet)> {
        let mut entries: Vec<_> = self.clauses().map(|c| (c.clause, c.labels)).collect();
        entries.sort();
        entries
    }
}

impl fmt::Debug for LcnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.clauses().map(|c| (c.index, (c.clause, c.labels))))
            .finish()
    }
}

/// Same clause multiset with the same label sets.
impl PartialEq for LcnfFormula {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sorted_entries() == other.sorted_entries()
    }
}

impl Eq for LcnfFormula {}
