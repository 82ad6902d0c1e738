use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use lcnf_core::{AnalysisReport, DualityChecks, Format, Label, LabelSet, LcnfFormula, SetFamily};

#[derive(Debug, Serialize)]
pub struct FormulaInfo {
    path: String,
    format: &'static str,
    variables: u32,
    clauses: usize,
    labels: Vec<Label>,
    unlabelled: usize,
}

impl FormulaInfo {
    pub fn new(path: &Path, format: Format, formula: &LcnfFormula) -> Self {
        FormulaInfo {
            path: path.display().to_string(),
            format: format.name(),
            variables: formula.num_vars(),
            clauses: formula.len(),
            labels: formula.active_labels().to_vec(),
            unlabelled: formula.unlabelled().count(),
        }
    }
}

/// Everything one command prints. Field order is the JSON key order.
#[derive(Debug, Serialize)]
pub struct Report {
    formula: FormulaInfo,
    family: String,
    sets: Vec<Vec<Label>>,
    checks: BTreeMap<String, Value>,
    #[serde(skip)]
    lines: Vec<String>,
    #[serde(skip)]
    pub exit_code: u8,
}

impl Report {
    pub fn new(formula: FormulaInfo, family: &str) -> Self {
        Report {
            formula,
            family: family.to_string(),
            sets: Vec::new(),
            checks: BTreeMap::new(),
            lines: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn single(formula: FormulaInfo, family: &str, set: LabelSet) -> Self {
        let mut r = Report::new(formula, family);
        r.push_set(&set);
        r
    }

    pub fn family(formula: FormulaInfo, family: &str, members: SetFamily) -> Self {
        let mut r = Report::new(formula, family);
        for set in members.iter() {
            r.push_set(set);
        }
        r
    }

    pub fn duality(formula: FormulaInfo, report: &AnalysisReport, checks: &DualityChecks) -> Self {
        let mut r = Report::new(formula, "duality");
        let rows = [
            ("colmns-from-lmes", checks.colmns_from_lmes),
            ("lmes-from-colmns", checks.lmes_from_colmns),
            ("union-intersection", checks.union_intersection),
            ("complementation", checks.complementation),
        ];
        for (name, ok) in rows {
            r.line(&format!("{name} {}", if ok { "pass" } else { "FAIL" }));
            r.check(name, Value::from(ok));
        }
        r.check("lmes", family_value(&report.lmes));
        r.check("colmns", family_value(&report.colmns));
        r.check("lmes-union", Value::from(checks.lmes_union.to_vec()));
        r.check(
            "lmns-intersection",
            Value::from(checks.lmns_intersection.to_vec()),
        );
        r.check("passed", Value::from(checks.passed()));
        if !checks.passed() {
            r.exit_code = 1;
        }
        r
    }

    pub fn stats(formula: FormulaInfo, phi: &LcnfFormula, satisfiable: bool) -> Self {
        let mut r = Report::new(formula, "stats");
        let rows: [(&str, Value); 5] = [
            ("variables", phi.num_vars().into()),
            ("clauses", phi.len().into()),
            ("labels", phi.active_labels().len().into()),
            ("unlabelled", phi.unlabelled().count().into()),
            ("satisfiable", satisfiable.into()),
        ];
        for (name, value) in rows {
            r.line(&format!("{name} {value}"));
            r.check(name, value);
        }
        r
    }

    fn push_set(&mut self, set: &LabelSet) {
        self.lines.push(set.to_string());
        self.sets.push(set.to_vec());
    }

    pub fn line(&mut self, text: &str) {
        self.lines.push(text.to_string());
    }

    pub fn check(&mut self, name: &str, value: Value) {
        self.checks.insert(name.to_string(), value);
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn family_value(family: &SetFamily) -> Value {
    family.iter().map(|s| Value::from(s.to_vec())).collect()
}
