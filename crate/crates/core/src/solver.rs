//! A small CDCL SAT solver.
//!
//! Two-watched-literal propagation, first-UIP clause learning, VSIDS-style
//! variable activities with phase saving, and Luby restarts. Assumptions are
//! decided first, one decision level each, so a single instance can answer
//! many queries that differ only in their assumptions.

use thiserror::Error;

use crate::formula::{Clause, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("conflict budget exhausted after {0} conflicts without a verdict")]
    BudgetExhausted(u64),
}

/// A total assignment to variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn from_values(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn num_vars(&self) -> Var {
        self.values.len() as Var
    }

    /// # Panics
    /// If `var` is 0 or beyond the assignment.
    pub fn value(&self, var: Var) -> bool {
        self.values[var as usize - 1]
    }

    pub fn lit_value(&self, lit: Lit) -> bool {
        self.value(lit.var()) != lit.is_negative()
    }

    pub fn satisfies(&self, clause: &Clause) -> bool {
        clause.lits().iter().any(|&l| self.lit_value(l))
    }

    /// The assignment as a set of true literals.
    pub fn lits(&self) -> Vec<Lit> {
        (1..=self.num_vars())
            .map(|v| {
                if self.value(v) {
                    Lit::positive(v)
                } else {
                    Lit::negative(v)
                }
            })
            .collect()
    }

    pub fn truncated(&self, num_vars: Var) -> Model {
        Model {
            values: self.values[..num_vars as usize].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Model),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }

    pub fn model(&self) -> Option<&Model> {
        match self {
            SatOutcome::Sat(m) => Some(m),
            SatOutcome::Unsat => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Value {
    True,
    False,
    Undef,
}

/// Internal literal code: `2 * (var - 1) + negative`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Code(u32);

impl Code {
    fn from_lit(lit: Lit) -> Code {
        Code(2 * (lit.var() - 1) + lit.is_negative() as u32)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn neg(self) -> Code {
        Code(self.0 ^ 1)
    }

    fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

const RESTART_BASE: u64 = 64;
const VAR_DECAY: f64 = 0.95;

#[derive(Debug, Clone)]
pub struct Solver {
    clauses: Vec<Vec<Code>>,
    watches: Vec<Vec<usize>>,
    assigns: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<Option<usize>>,
    trail: Vec<Code>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    conflict_budget: Option<u64>,
    conflicts: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            phase: Vec::new(),
            seen: Vec::new(),
            ok: true,
            conflict_budget: None,
            conflicts: 0,
        }
    }

    /// Limits the number of conflicts a single [`Solver::solve`] call may
    /// spend. `None` means unlimited.
    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.conflict_budget = budget;
    }

    pub fn num_vars(&self) -> Var {
        self.assigns.len() as Var
    }

    /// Total number of conflicts over the lifetime of the instance.
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    pub fn reserve_vars(&mut self, num_vars: Var) {
        let n = num_vars as usize;
        if n <= self.assigns.len() {
            return;
        }
        self.assigns.resize(n, Value::Undef);
        self.level.resize(n, 0);
        self.reason.resize(n, None);
        self.activity.resize(n, 0.0);
        self.phase.resize(n, false);
        self.seen.resize(n, false);
        self.watches.resize(2 * n, Vec::new());
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.num_vars() + 1;
        self.reserve_vars(v);
        v
    }

    fn value(&self, c: Code) -> Value {
        match self.assigns[c.var()] {
            Value::Undef => Value::Undef,
            Value::True if c.is_negative() => Value::False,
            Value::False if !c.is_negative() => Value::False,
            _ => Value::True,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause permanently. Returns `false` once the clause set is known
    /// to be unsatisfiable at the top level.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        debug_assert_eq!(self.decision_level(), 0);
        if !self.ok {
            return false;
        }
        if let Some(max) = lits.iter().map(|l| l.var()).max() {
            self.reserve_vars(max);
        }
        let mut codes: Vec<Code> = lits.iter().map(|&l| Code::from_lit(l)).collect();
        codes.sort_by_key(|c| c.0);
        codes.dedup();
        let mut kept = Vec::with_capacity(codes.len());
        for (i, &c) in codes.iter().enumerate() {
            if i + 1 < codes.len() && codes[i + 1] == c.neg() {
                return true; // tautology
            }
            match self.value(c) {
                Value::True => return true,
                Value::False => {}
                Value::Undef => kept.push(c),
            }
        }
        match kept.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.enqueue(kept[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(kept);
            }
        }
        self.ok
    }

    fn attach(&mut self, clause: Vec<Code>) -> usize {
        let idx = self.clauses.len();
        self.watches[clause[0].idx()].push(idx);
        self.watches[clause[1].idx()].push(idx);
        self.clauses.push(clause);
        idx
    }

    fn enqueue(&mut self, c: Code, reason: Option<usize>) {
        let v = c.var();
        self.assigns[v] = if c.is_negative() {
            Value::False
        } else {
            Value::True
        };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(c);
    }

    /// Unit propagation. Returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p.neg();
            let mut ws = std::mem::take(&mut self.watches[false_lit.idx()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                if self.clauses[ci][0] == false_lit {
                    self.clauses[ci].swap(0, 1);
                }
                let first = self.clauses[ci][0];
                if self.value(first) == Value::True {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..self.clauses[ci].len() {
                    let cand = self.clauses[ci][k];
                    if self.value(cand) != Value::False {
                        self.clauses[ci].swap(1, k);
                        self.watches[cand.idx()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if self.value(first) == Value::False {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(ci));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.idx()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause, asserting
    /// literal first, and the level to backjump to.
    fn analyze(&mut self, mut confl: usize) -> (Vec<Code>, u32) {
        let current = self.decision_level();
        let mut learnt = vec![Code(0)];
        let mut path = 0usize;
        let mut idx = self.trail.len();
        let mut pivot: Option<Code> = None;
        loop {
            let start = usize::from(pivot.is_some());
            for k in start..self.clauses[confl].len() {
                let q = self.clauses[confl][k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[p.var()] = false;
            path -= 1;
            if path == 0 {
                pivot = Some(p);
                break;
            }
            confl = self.reason[p.var()].expect("implied literal has a reason");
            pivot = Some(p);
        }
        learnt[0] = pivot.expect("conflict at a positive level").neg();
        for c in &learnt[1..] {
            self.seen[c.var()] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var()] > self.level[learnt[max_i].var()] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            back = self.level[learnt[1].var()];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let c = self.trail[k];
            let v = c.var();
            self.phase[v] = !c.is_negative();
            self.assigns[v] = Value::Undef;
            self.reason[v] = None;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&self) -> Option<Code> {
        let mut best: Option<usize> = None;
        for v in 0..self.assigns.len() {
            if self.assigns[v] == Value::Undef
                && best.is_none_or(|b| self.activity[v] > self.activity[b])
            {
                best = Some(v);
            }
        }
        best.map(|v| Code(2 * v as u32 + (!self.phase[v]) as u32))
    }

    /// Decides satisfiability of the clause set under `assumptions`.
    ///
    /// On `Sat` the model covers every variable known to the solver. The
    /// solver is back at the top level afterwards and can be queried again.
    pub fn solve(&mut self, assumptions: &[Lit]) -> Result<SatOutcome, SolverError> {
        if !self.ok {
            return Ok(SatOutcome::Unsat);
        }
        if let Some(max) = assumptions.iter().map(|l| l.var()).max() {
            self.reserve_vars(max);
        }
        let assumptions: Vec<Code> = assumptions.iter().map(|&l| Code::from_lit(l)).collect();
        let mut spent = 0u64;
        let mut restart_idx = 0u32;
        let mut restart_limit = luby(restart_idx) * RESTART_BASE;
        let mut since_restart = 0u64;
        let result = loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                spent += 1;
                since_restart += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    break Ok(SatOutcome::Unsat);
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let idx = self.attach(learnt);
                    self.enqueue(asserting, Some(idx));
                }
                self.var_inc /= VAR_DECAY;
                if self.conflict_budget.is_some_and(|b| spent >= b) {
                    break Err(SolverError::BudgetExhausted(spent));
                }
                continue;
            }
            if since_restart >= restart_limit {
                since_restart = 0;
                restart_idx += 1;
                restart_limit = luby(restart_idx) * RESTART_BASE;
                self.backtrack(0);
                continue;
            }
            // TODO: learnt clause deletion; clause databases grow without bound
            // across queries on a reused instance.
            let level = self.decision_level() as usize;
            let next = if level < assumptions.len() {
                let a = assumptions[level];
                match self.value(a) {
                    Value::True => {
                        self.trail_lim.push(self.trail.len());
                        continue;
                    }
                    Value::False => break Ok(SatOutcome::Unsat),
                    Value::Undef => a,
                }
            } else {
                match self.pick_branch() {
                    Some(c) => c,
                    None => {
                        let values = self.assigns.iter().map(|&v| v == Value::True).collect();
                        break Ok(SatOutcome::Sat(Model { values }));
                    }
                }
            };
            self.trail_lim.push(self.trail.len());
            self.enqueue(next, None);
        };
        self.backtrack(0);
        result
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < u64::from(i) + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = u64::from(i);
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    i = seq;
    1u64 << i
}

/// One-shot satisfiability check of `clauses` under `assumptions`.
pub fn solve(
    clauses: &[Clause],
    assumptions: &[Lit],
    conflict_budget: Option<u64>,
) -> Result<SatOutcome, SolverError> {
    let mut solver = Solver::new();
    solver.set_conflict_budget(conflict_budget);
    let max = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
    solver.reserve_vars(max);
    for c in clauses {
        if !solver.add_clause(c.lits()) {
            break;
        }
    }
    solver.solve(assumptions)
}
