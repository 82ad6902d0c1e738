//! Reading and writing DIMACS CNF, group CNF (GCNF) and labelled CNF (LCNF).
//!
//! ```text
//! p cnf  <vars> <clauses>            lit lit ... 0
//! p gcnf <vars> <clauses> <groups>   {g} lit lit ... 0
//! p lcnf <vars> <clauses>            {l1 l2 ...} lit lit ... 0
//! ```
//!
//! Lines starting with `c` are comments; in LCNF files `c alias <label>
//! <name>` names a label. A line starting with `%` ends the input. Clauses
//! may span lines in DIMACS, but every GCNF/LCNF clause starts with its brace
//! block. Header counts that disagree with the body only produce warnings.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{
    label, Clause, Cnf, FormulaError, Label, LabelSet, Labelling, LcnfFormula, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Dimacs,
    Gcnf,
    Lcnf,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Dimacs => "dimacs",
            Format::Gcnf => "gcnf",
            Format::Lcnf => "lcnf",
        }
    }

    /// Reads the format from the first `p` line, if any.
    pub fn detect(text: &str) -> Option<Format> {
        text.lines()
            .map(str::trim)
            .find(|l| l.starts_with('p'))
            .and_then(|l| match l.split_whitespace().nth(1)? {
                "cnf" => Some(Format::Dimacs),
                "gcnf" => Some(Format::Gcnf),
                "lcnf" => Some(Format::Lcnf),
                _ => None,
            })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" | "cnf" => Ok(Format::Dimacs),
            "gcnf" => Ok(Format::Gcnf),
            "lcnf" => Ok(Format::Lcnf),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p` header line")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    BadHeader(String),
    #[error("header declares `{found}` but `{expected}` was requested")]
    WrongFormat { expected: Format, found: String },
    #[error("duplicate header line")]
    DuplicateHeader,
    #[error("malformed integer `{0}`")]
    MalformedInteger(String),
    #[error("clause is not terminated by 0")]
    MissingTerminator,
    #[error("clause must start with a brace block")]
    MissingBraceBlock,
    #[error("unexpected brace block inside a clause")]
    UnexpectedBraceBlock,
    #[error("brace block is not closed")]
    UnclosedBrace,
    #[error("negative label {0}")]
    NegativeLabel(i64),
    #[error("group {group} is outside 0..={groups}")]
    GroupOutOfRange { group: i64, groups: u32 },
    #[error("a group clause needs exactly one group index")]
    GroupArity,
    #[error("literal {0} is out of range")]
    LiteralOutOfRange(i64),
    #[error("malformed alias directive")]
    BadAlias,
    #[error(transparent)]
    Clause(#[from] FormulaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A non-fatal remark about the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

/// A parsed input file. `labels` is present for GCNF and LCNF input.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub format: Format,
    pub cnf: Cnf,
    pub labels: Option<Vec<LabelSet>>,
    pub aliases: BTreeMap<Label, String>,
    pub warnings: Vec<Warning>,
}

/// How to turn a document into a labelled formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabellingMode {
    Clause,
    Group,
    Variable,
    Literal,
    /// Label sets as written in the file.
    File,
}

impl LabellingMode {
    pub fn default_for(format: Format) -> LabellingMode {
        match format {
            Format::Dimacs => LabellingMode::Clause,
            Format::Gcnf => LabellingMode::Group,
            Format::Lcnf => LabellingMode::File,
        }
    }
}

impl FromStr for LabellingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clause" => Ok(LabellingMode::Clause),
            "group" => Ok(LabellingMode::Group),
            "variable" => Ok(LabellingMode::Variable),
            "literal" => Ok(LabellingMode::Literal),
            "file" => Ok(LabellingMode::File),
            other => Err(format!("unknown labelling `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabellingError {
    #[error("{0} input carries no label sets")]
    NoLabels(Format),
    #[error("clause {0} has more than one label and cannot be read as a group")]
    NotAGroup(usize),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

impl InputDocument {
    /// Builds the labelled formula under `mode`.
    pub fn labelled(&self, mode: LabellingMode) -> Result<LcnfFormula, LabellingError> {
        let scheme = match mode {
            LabellingMode::Clause => Labelling::Clause,
            LabellingMode::Variable => Labelling::Variable,
            LabellingMode::Literal => Labelling::Literal,
            LabellingMode::Group => {
                let sets = self
                    .labels
                    .as_ref()
                    .ok_or(LabellingError::NoLabels(self.format))?;
                let mut groups = Vec::with_capacity(sets.len());
                for (i, s) in sets.iter().enumerate() {
                    match s.len() {
                        0 => groups.push(0),
                        1 => groups.push(s.first().unwrap()),
                        _ => return Err(LabellingError::NotAGroup(i)),
                    }
                }
                Labelling::Group(groups)
            }
            LabellingMode::File => {
                let sets = self
                    .labels
                    .as_ref()
                    .ok_or(LabellingError::NoLabels(self.format))?;
                Labelling::Explicit(sets.iter().cloned().map(Some).collect())
            }
        };
        let formula = label(&self.cnf, scheme)?;
        Ok(
            if matches!(mode, LabellingMode::File | LabellingMode::Group) {
                formula.with_aliases(self.aliases.clone())
            } else {
                formula
            },
        )
    }
}

enum Token {
    Int(i64),
    Brace(Vec<i64>),
}

struct Parser {
    format: Option<Format>,
    header: Option<(Format, Vec<u64>, usize)>,
    clauses: Vec<Clause>,
    labels: Vec<LabelSet>,
    aliases: BTreeMap<Label, String>,
    warnings: Vec<Warning>,
    open: Option<(usize, Option<Vec<i64>>, Vec<i64>)>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(out);
        }
        if let Some(after) = rest.strip_prefix('{') {
            let close = after
                .find('}')
                .ok_or_else(|| err(line, ParseErrorKind::UnclosedBrace))?;
            let inner = after[..close]
                .split_whitespace()
                .map(|t| parse_int(t, line))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(Token::Brace(inner));
            rest = &after[close + 1..];
        } else {
            let end = rest
                .find(|c: char| c.is_whitespace() || c == '{')
                .unwrap_or(rest.len());
            out.push(Token::Int(parse_int(&rest[..end], line)?));
            rest = &rest[end..];
        }
    }
}

fn parse_int(token: &str, line: usize) -> Result<i64, ParseError> {
    token
        .parse::<i64>()
        .map_err(|_| err(line, ParseErrorKind::MalformedInteger(token.to_string())))
}

impl Parser {
    fn new(format: Option<Format>) -> Self {
        Parser {
            format,
            header: None,
            clauses: Vec::new(),
            labels: Vec::new(),
            aliases: BTreeMap::new(),
            warnings: Vec::new(),
            open: None,
        }
    }

    fn warn(&mut self, line: usize, message: String) {
        self.warnings.push(Warning { line, message });
    }

    fn header_line(&mut self, text: &str, line: usize) -> Result<(), ParseError> {
        if self.header.is_some() {
            return Err(err(line, ParseErrorKind::DuplicateHeader));
        }
        let mut fields = text.split_whitespace().skip(1);
        let bad = || err(line, ParseErrorKind::BadHeader(text.to_string()));
        let kind = fields.next().ok_or_else(bad)?;
        let format = match kind {
            "cnf" => Format::Dimacs,
            "gcnf" => Format::Gcnf,
            "lcnf" => Format::Lcnf,
            _ => return Err(bad()),
        };
        if let Some(expected) = self.format {
            if expected != format {
                return Err(err(
                    line,
                    ParseErrorKind::WrongFormat {
                        expected,
                        found: kind.to_string(),
                    },
                ));
            }
        }
        let counts = fields
            .map(|f| f.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let arity = if format == Format::Gcnf { 3 } else { 2 };
        if counts.len() != arity {
            return Err(bad());
        }
        self.header = Some((format, counts, line));
        Ok(())
    }

    fn comment_line(&mut self, text: &str, line: usize) -> Result<(), ParseError> {
        let mut fields = text.split_whitespace();
        fields.next();
        if fields.next() != Some("alias") || !matches!(self.header, Some((Format::Lcnf, _, _))) {
            return Ok(());
        }
        let label = fields
            .next()
            .and_then(|l| l.parse::<Label>().ok())
            .ok_or_else(|| err(line, ParseErrorKind::BadAlias))?;
        let name: Vec<&str> = fields.collect();
        if name.is_empty() {
            return Err(err(line, ParseErrorKind::BadAlias));
        }
        self.aliases.insert(label, name.join(" "));
        Ok(())
    }

    fn body_line(&mut self, text: &str, line: usize) -> Result<(), ParseError> {
        let format = match &self.header {
            Some((f, _, _)) => *f,
            None => return Err(err(line, ParseErrorKind::MissingHeader)),
        };
        for token in tokenize(text, line)? {
            match token {
                Token::Brace(block) => {
                    if format == Format::Dimacs {
                        return Err(err(line, ParseErrorKind::UnexpectedBraceBlock));
                    }
                    if self.open.is_some() {
                        return Err(err(line, ParseErrorKind::MissingTerminator));
                    }
                    self.open = Some((line, Some(block), Vec::new()));
                }
                Token::Int(value) => {
                    if self.open.is_none() {
                        if format != Format::Dimacs {
                            return Err(err(line, ParseErrorKind::MissingBraceBlock));
                        }
                        self.open = Some((line, None, Vec::new()));
                    }
                    if value == 0 {
                        let (start, block, lits) = self.open.take().unwrap();
                        self.finish_clause(format, start, block, lits)?;
                    } else {
                        self.open.as_mut().unwrap().2.push(value);
                    }
                }
            }
        }
        Ok(())
    }

    fn finish_clause(
        &mut self,
        format: Format,
        line: usize,
        block: Option<Vec<i64>>,
        lits: Vec<i64>,
    ) -> Result<(), ParseError> {
        let lits = lits
            .into_iter()
            .map(|l| i32::try_from(l).map_err(|_| err(line, ParseErrorKind::LiteralOutOfRange(l))))
            .collect::<Result<Vec<i32>, _>>()?;
        let clause = Clause::from_dimacs(&lits).map_err(|e| err(line, e.into()))?;
        self.clauses.push(clause);
        let labels = match (format, block) {
            (Format::Dimacs, _) | (_, None) => return Ok(()),
            (Format::Gcnf, Some(block)) => {
                let groups = self.header.as_ref().unwrap().1[2] as u32;
                let [g] = block[..] else {
                    return Err(err(line, ParseErrorKind::GroupArity));
                };
                if g < 0 || g > i64::from(groups) {
                    return Err(err(
                        line,
                        ParseErrorKind::GroupOutOfRange { group: g, groups },
                    ));
                }
                if g == 0 {
                    LabelSet::new()
                } else {
                    LabelSet::from([g as Label])
                }
            }
            (Format::Lcnf, Some(block)) => {
                let mut set = LabelSet::new();
                for &l in &block {
                    if l < 0 {
                        return Err(err(line, ParseErrorKind::NegativeLabel(l)));
                    }
                    let l = Label::try_from(l)
                        .map_err(|_| err(line, ParseErrorKind::MalformedInteger(l.to_string())))?;
                    if !set.insert(l) {
                        self.warn(line, format!("duplicate label {l} collapsed"));
                    }
                }
                set
            }
        };
        self.labels.push(labels);
        Ok(())
    }

    fn run(mut self, text: &str) -> Result<InputDocument, ParseError> {
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('c') {
                self.comment_line(trimmed, line)?;
            } else if trimmed.starts_with('p') {
                self.header_line(trimmed, line)?;
            } else {
                self.body_line(trimmed, line)?;
            }
        }
        if let Some((start, _, _)) = self.open {
            return Err(err(start, ParseErrorKind::MissingTerminator));
        }
        let (format, counts, header_line) = self
            .header
            .clone()
            .ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader))?;
        let declared_vars = counts[0];
        let declared_clauses = counts[1] as usize;
        if declared_clauses != self.clauses.len() {
            self.warn(
                header_line,
                format!(
                    "header declares {declared_clauses} clauses, found {}",
                    self.clauses.len()
                ),
            );
        }
        let max_var = self.clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        if u64::from(max_var) > declared_vars {
            self.warn(
                header_line,
                format!("header declares {declared_vars} variables, found variable {max_var}"),
            );
        }
        let num_vars = (declared_vars.min(u64::from(Var::MAX)) as Var).max(max_var);
        Ok(InputDocument {
            format,
            cnf: Cnf {
                num_vars,
                clauses: self.clauses,
            },
            labels: (format != Format::Dimacs).then_some(self.labels),
            aliases: self.aliases,
            warnings: self.warnings,
        })
    }
}

/// Parses any of the three formats; with `format` set, the header must
/// match it.
pub fn parse_document(text: &str, format: Option<Format>) -> Result<InputDocument, ParseError> {
    Parser::new(format).run(text)
}

pub fn parse_dimacs(text: &str) -> Result<Parsed<Cnf>, ParseError> {
    let doc = parse_document(text, Some(Format::Dimacs))?;
    Ok(Parsed {
        value: doc.cnf,
        warnings: doc.warnings,
    })
}

/// Group-0 clauses become unlabelled, group `g` clauses get `{g}`.
pub fn parse_gcnf(text: &str) -> Result<Parsed<LcnfFormula>, ParseError> {
    let doc = parse_document(text, Some(Format::Gcnf))?;
    let value = doc
        .labelled(LabellingMode::Group)
        .expect("group clauses carry at most one label");
    Ok(Parsed {
        value,
        warnings: doc.warnings,
    })
}

pub fn parse_lcnf(text: &str) -> Result<Parsed<LcnfFormula>, ParseError> {
    let doc = parse_document(text, Some(Format::Lcnf))?;
    let value = doc
        .labelled(LabellingMode::File)
        .expect("every lcnf clause has a label block");
    Ok(Parsed {
        value,
        warnings: doc.warnings,
    })
}

pub fn write_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for c in &cnf.clauses {
        writeln!(out, "{c}").unwrap();
    }
    out
}

/// GCNF text for `formula`, or `None` if some clause has more than one
/// label.
pub fn write_gcnf(formula: &LcnfFormula) -> Option<String> {
    if formula.clauses().any(|c| c.labels.len() > 1) {
        return None;
    }
    let groups = formula.active_labels().iter().max().unwrap_or(0);
    let mut out = format!(
        "p gcnf {} {} {}\n",
        formula.num_vars(),
        formula.len(),
        groups
    );
    for c in formula.clauses() {
        writeln!(out, "{{{}}} {}", c.labels.first().unwrap_or(0), c.clause).unwrap();
    }
    Some(out)
}

pub fn write_lcnf(formula: &LcnfFormula) -> String {
    let mut out = format!("p lcnf {} {}\n", formula.num_vars(), formula.len());
    for (label, name) in formula.aliases() {
        writeln!(out, "c alias {label} {name}").unwrap();
    }
    for c in formula.clauses() {
        writeln!(out, "{{{}}} {}", c.labels, c.clause).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruteforce::{random_lcnf, Profile};
    use crate::samples::running_example;
    use proptest::prelude::*;

    fn kind<T: fmt::Debug>(r: Result<T, ParseError>) -> ParseErrorKind {
        r.unwrap_err().kind
    }

    #[test]
    fn dimacs_basics() {
        let p = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(
            p.value.clauses,
            vec![
                Clause::from_dimacs(&[1, 2]).unwrap(),
                Clause::from_dimacs(&[-1]).unwrap()
            ]
        );
        assert!(p.warnings.is_empty());

        let empty = parse_dimacs("p cnf 1 0\n").unwrap().value;
        assert_eq!(empty.num_vars, 1);
        assert!(empty.clauses.is_empty());

        let e = parse_dimacs("p cnf 2 1\n1 -1 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(
            e.kind,
            ParseErrorKind::Clause(FormulaError::ComplementaryLiterals(1))
        );
    }

    #[test]
    fn dimacs_layout_variants() {
        let text = "c comment\np cnf 3 3\n1 2\n 3 0 -1 0\n\n0\n%\n0\n";
        let p = parse_dimacs(text).unwrap();
        assert_eq!(p.value.clauses.len(), 3);
        assert!(p.value.clauses[2].is_empty());
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(
            kind(parse_dimacs("p cnf 1 1\n1 x 0\n")),
            ParseErrorKind::MalformedInteger("x".into())
        );
        let e = parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::MissingTerminator));
        assert_eq!(kind(parse_dimacs("1 0\n")), ParseErrorKind::MissingHeader);
        assert_eq!(kind(parse_dimacs("")), ParseErrorKind::MissingHeader);
        assert!(matches!(
            kind(parse_dimacs("p cnf 1\n")),
            ParseErrorKind::BadHeader(_)
        ));
        assert!(matches!(
            kind(parse_dimacs("p gcnf 1 1 1\n")),
            ParseErrorKind::WrongFormat { .. }
        ));
    }

    #[test]
    fn dimacs_count_mismatch_is_a_warning() {
        let p = parse_dimacs("p cnf 1 3\n1 2 0\n").unwrap();
        assert_eq!(p.warnings.len(), 2);
        assert_eq!(p.value.num_vars, 2);
    }

    #[test]
    fn gcnf_groups() {
        let phi = parse_gcnf("p gcnf 1 2 1\n{0} 1 0\n{1} -1 0\n")
            .unwrap()
            .value;
        let sets: Vec<_> = phi.clauses().map(|c| c.labels.clone()).collect();
        assert_eq!(sets, vec![LabelSet::new(), LabelSet::from([1])]);

        let all0 = parse_gcnf("p gcnf 2 2 0\n{0} 1 0\n{0} 2 0\n")
            .unwrap()
            .value;
        assert!(all0.active_labels().is_empty());

        let e = kind(parse_gcnf("p gcnf 1 1 1\n{2} 1 0\n"));
        assert_eq!(
            e,
            ParseErrorKind::GroupOutOfRange {
                group: 2,
                groups: 1
            }
        );
        assert_eq!(
            kind(parse_gcnf("p gcnf 1 1 1\n1 0\n")),
            ParseErrorKind::MissingBraceBlock
        );
        assert_eq!(
            kind(parse_gcnf("p gcnf 1 1 1\n{1 2} 1 0\n")),
            ParseErrorKind::GroupArity
        );
    }

    #[test]
    fn lcnf_blocks() {
        let phi = parse_lcnf("p lcnf 1 1\n{1 2} -1 0\n").unwrap().value;
        let c = phi.clauses().next().unwrap();
        assert_eq!(c.labels, &LabelSet::from([1, 2]));
        assert_eq!(c.clause, &Clause::from_dimacs(&[-1]).unwrap());

        let phi = parse_lcnf("p lcnf 3 1\n{} 1 2 3 0\n").unwrap().value;
        assert_eq!(phi.unlabelled().count(), 1);

        let p = parse_lcnf("p lcnf 1 1\n{3 3} 1 0\n").unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.value.active_labels(), &LabelSet::from([3]));

        assert_eq!(
            kind(parse_lcnf("p lcnf 1 1\n-1 0\n")),
            ParseErrorKind::MissingBraceBlock
        );
        assert_eq!(
            kind(parse_lcnf("p lcnf 1 1\n{-2} 1 0\n")),
            ParseErrorKind::NegativeLabel(-2)
        );
        assert_eq!(
            kind(parse_lcnf("p lcnf 1 1\n{1 1 0\n")),
            ParseErrorKind::UnclosedBrace
        );
        assert_eq!(
            kind(parse_lcnf("p lcnf 1 2\n{1} 1 {2} 1 0\n")),
            ParseErrorKind::MissingTerminator
        );
    }

    #[test]
    fn lcnf_aliases() {
        let text = "p lcnf 1 1\nc alias 1 first group\n{1} 1 0\n";
        let phi = parse_lcnf(text).unwrap().value;
        assert_eq!(phi.alias(1), Some("first group"));
        assert_eq!(write_lcnf(&phi), text);
    }

    #[test]
    fn running_example_round_trip() {
        let phi = running_example();
        let text = write_lcnf(&phi);
        assert!(text.contains("{1 2} -1 0\n"));
        assert!(text.contains("{} 1 2 3 0\n"));
        assert_eq!(parse_lcnf(&text).unwrap().value, phi);
    }

    #[test]
    fn format_detection() {
        assert_eq!(Format::detect("c x\np gcnf 1 1 1\n"), Some(Format::Gcnf));
        assert_eq!(Format::detect("p lcnf 1 1\n"), Some(Format::Lcnf));
        assert_eq!(Format::detect("1 0\n"), None);
    }

    #[test]
    fn labelling_modes() {
        let doc = parse_document("p cnf 2 2\n-1 0\n1 -2 0\n", None).unwrap();
        let by_var = doc.labelled(LabellingMode::Variable).unwrap();
        for c in by_var.clauses() {
            assert_eq!(c.labels, &c.clause.vars().collect::<LabelSet>());
        }
        assert_eq!(
            doc.labelled(LabellingMode::File).unwrap_err(),
            LabellingError::NoLabels(Format::Dimacs)
        );
        let lcnf = parse_document("p lcnf 1 1\n{1 2} 1 0\n", None).unwrap();
        assert_eq!(
            lcnf.labelled(LabellingMode::Group).unwrap_err(),
            LabellingError::NotAGroup(0)
        );
    }

    #[test]
    fn gcnf_writer() {
        let phi = parse_gcnf("p gcnf 2 2 3\n{0} 1 0\n{3} -1 2 0\n")
            .unwrap()
            .value;
        assert_eq!(
            write_gcnf(&phi).unwrap(),
            "p gcnf 2 2 3\n{0} 1 0\n{3} -1 2 0\n"
        );
        assert!(write_gcnf(&running_example()).is_none());
        let cnf = parse_dimacs("p cnf 2 1\n2 -1 0\n").unwrap().value;
        assert_eq!(write_dimacs(&cnf), "p cnf 2 1\n-1 2 0\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn lcnf_round_trip(seed in any::<u64>()) {
            let phi = random_lcnf(seed, &Profile::varied(seed)).formula;
            let back = parse_lcnf(&write_lcnf(&phi)).unwrap();
            prop_assert!(back.warnings.is_empty());
            let a: Vec<_> = phi.clauses().map(|c| (c.clause.clone(), c.labels.clone())).collect();
            let b: Vec<_> = back.value.clauses().map(|c| (c.clause.clone(), c.labels.clone())).collect();
            prop_assert_eq!(a, b);
        }
    }
}
