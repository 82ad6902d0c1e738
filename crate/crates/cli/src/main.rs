//! `lcnf`: redundancy analysis of labelled CNF files from the command line.

mod output;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lcnf_core::{
    classify_all, parse_document, verify_duality, AnalysisError, AnalysisReport, Analyzer,
    BruteForceConfig, BruteForceError, DualityError, DualityVerdict, Format, Label, LabelSet,
    LabellingMode, LcnfFormula, OracleConfig, SetFamily,
};

use output::{FormulaInfo, Report};

#[derive(Parser, Debug)]
#[command(
    name = "lcnf",
    version,
    about = "Redundancy analysis for labelled CNF formulas"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// How clauses get their labels.
    #[arg(long, global = true, value_enum)]
    labelling: Option<LabellingArg>,
    /// Input format; guessed from the extension or header when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Refuse exhaustive enumeration above this many active labels.
    #[arg(long, global = true, default_value_t = 16)]
    max_labels: usize,
    /// Conflict limit per SAT call.
    #[arg(long, global = true, env = "LCNF_CONFLICT_BUDGET")]
    conflict_budget: Option<u64>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for exhaustive enumeration. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether removing one label keeps the formula equivalent.
    CheckRedundant {
        #[arg(long)]
        label: Label,
        file: PathBuf,
    },
    /// One minimal equivalent label set.
    Lmes {
        #[arg(long, value_parser = parse_labels)]
        order: Option<LabelList>,
        file: PathBuf,
    },
    /// One minimal unsatisfiable label set.
    Lmus {
        #[arg(long, value_parser = parse_labels)]
        order: Option<LabelList>,
        file: PathBuf,
    },
    /// One maximal satisfiable label set.
    Lmss(Grow),
    /// One minimal correction label set (complement of an LMSS).
    Mcs(Grow),
    /// One maximal non-equivalent label set.
    Lmns(Grow),
    /// A maximal satisfiable label set of largest size.
    MaxLmss { file: PathBuf },
    /// Every member of a family, by exhaustive enumeration.
    Enum {
        #[arg(long, value_enum)]
        family: FamilyArg,
        file: PathBuf,
    },
    /// Checks the hitting-set duality between LMES and co-LMNS.
    VerifyDuality { file: PathBuf },
    /// Size and satisfiability summary.
    Stats { file: PathBuf },
}

#[derive(Args, Debug)]
struct Grow {
    /// Labels the result must contain.
    #[arg(long, value_parser = parse_labels)]
    seed_labels: Option<LabelList>,
    /// Order in which the remaining labels are tried.
    #[arg(long, value_parser = parse_labels)]
    order: Option<LabelList>,
    file: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LabellingArg {
    Clause,
    Group,
    Variable,
    Literal,
    File,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Dimacs,
    Gcnf,
    Lcnf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Lmes,
    Lmus,
    Lmns,
    Lmss,
    Colmns,
    Colmss,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::Lmes => "lmes",
            FamilyArg::Lmus => "lmus",
            FamilyArg::Lmns => "lmns",
            FamilyArg::Lmss => "lmss",
            FamilyArg::Colmns => "colmns",
            FamilyArg::Colmss => "colmss",
        }
    }
}

/// Label list such as `3,4,1,2` or `"3 4 1 2"`.
#[derive(Clone, Debug)]
struct LabelList(Vec<Label>);

fn parse_labels(text: &str) -> Result<LabelList, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Label>()
                .map_err(|_| format!("`{t}` is not a label"))
        })
        .collect::<Result<_, _>>()
        .map(LabelList)
}

fn order_of(order: &Option<LabelList>) -> &[Label] {
    order.as_ref().map_or(&[], |o| &o.0)
}

/// A failed run: exit code plus what to tell the user.
struct Failure {
    code: u8,
    message: String,
}

const EXIT_VIOLATED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let code = match e {
            AnalysisError::InactiveLabel(_) => EXIT_INPUT,
            AnalysisError::Solver(_) => EXIT_RESOURCE,
            _ => EXIT_NOT_APPLICABLE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BruteForceError> for Failure {
    fn from(e: BruteForceError) -> Self {
        Failure {
            code: EXIT_RESOURCE,
            message: e.to_string(),
        }
    }
}

impl From<DualityError> for Failure {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::NotApplicable(a) | DualityError::Analysis(a) => a.into(),
            DualityError::LimitExceeded(_) => Failure {
                code: EXIT_RESOURCE,
                message: e.to_string(),
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.global.json));
            ExitCode::from(report.exit_code)
        }
        Err(f) => {
            let prefix = if f.code == EXIT_NOT_APPLICABLE {
                "not applicable"
            } else {
                "error"
            };
            eprintln!("{prefix}: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn choose_format(path: &Path, text: &str, flag: Option<FormatArg>) -> Format {
    if let Some(f) = flag {
        return match f {
            FormatArg::Dimacs => Format::Dimacs,
            FormatArg::Gcnf => Format::Gcnf,
            FormatArg::Lcnf => Format::Lcnf,
        };
    }
    let by_extension = match path.extension().and_then(|e| e.to_str()) {
        Some("cnf" | "dimacs") => Some(Format::Dimacs),
        Some("gcnf") => Some(Format::Gcnf),
        Some("lcnf") => Some(Format::Lcnf),
        _ => None,
    };
    by_extension
        .or_else(|| Format::detect(text))
        .unwrap_or(Format::Dimacs)
}

fn load(path: &Path, global: &GlobalArgs) -> Result<(LcnfFormula, FormulaInfo), Failure> {
    let text = read_input(path)?;
    let format = choose_format(path, &text, global.format);
    let doc = parse_document(&text, Some(format))
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    for w in &doc.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    let mode = match global.labelling {
        None => LabellingMode::default_for(format),
        Some(LabellingArg::Clause) => LabellingMode::Clause,
        Some(LabellingArg::Group) => LabellingMode::Group,
        Some(LabellingArg::Variable) => LabellingMode::Variable,
        Some(LabellingArg::Literal) => LabellingMode::Literal,
        Some(LabellingArg::File) => LabellingMode::File,
    };
    let formula = doc
        .labelled(mode)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let info = FormulaInfo::new(path, format, &formula);
    Ok((formula, info))
}

fn oracle_config(global: &GlobalArgs) -> OracleConfig {
    OracleConfig::with_conflict_budget(global.conflict_budget)
}

fn bruteforce(formula: &LcnfFormula, global: &GlobalArgs) -> Result<AnalysisReport, Failure> {
    let config = BruteForceConfig {
        max_labels: global.max_labels,
        jobs: global.jobs as usize,
        oracle: oracle_config(global),
        ..BruteForceConfig::default()
    };
    Ok(classify_all(formula, &config)?)
}

fn seed_set(seed: &Option<LabelList>) -> LabelSet {
    seed.iter().flat_map(|s| s.0.iter().copied()).collect()
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::CheckRedundant { label, file } => {
            let (formula, info) = load(file, g)?;
            let mut analyzer = Analyzer::new(&formula, &oracle_config(g));
            let redundant = analyzer.is_label_redundant(*label)?;
            let mut report = Report::new(info, "check-redundant");
            report.line(if redundant {
                "redundant"
            } else {
                "irredundant"
            });
            report.check("label", Value::from(*label));
            report.check("redundant", Value::from(redundant));
            Ok(report)
        }
        Command::Lmes { order, file } => {
            let (formula, info) = load(file, g)?;
            let mut analyzer = Analyzer::new(&formula, &oracle_config(g));
            let set = analyzer.compute_lmes(order_of(order))?;
            Ok(Report::single(info, "lmes", set))
        }
        Command::Lmus { order, file } => {
            let (formula, info) = load(file, g)?;
            let mut analyzer = Analyzer::new(&formula, &oracle_config(g));
            let set = analyzer.compute_lmus(order_of(order))?;
            Ok(Report::single(info, "lmus", set))
        }
        Command::Lmss(grow) | Command::Mcs(grow) => {
            let (formula, info) = load(&grow.file, g)?;
            let mut analyzer = Analyzer::new(&formula, &oracle_config(g));
            let order = order_of(&grow.order);
            let lmss = analyzer.compute_lmss(&seed_set(&grow.seed_labels), order)?;
            Ok(match cli.command {
                Command::Mcs(_) => {
                    let mcs = formula.active_labels().difference(&lmss);
                    Report::single(info, "colmss", mcs)
                }
                _ => Report::single(info, "lmss", lmss),
            })
        }
        Command::Lmns(grow) => {
            let (formula, info) = load(&grow.file, g)?;
            let mut analyzer = Analyzer::new(&formula, &oracle_config(g));
            let order = order_of(&grow.order);
            let set = analyzer.compute_lmns(&seed_set(&grow.seed_labels), order)?;
            Ok(Report::single(info, "lmns", set))
        }
        Command::MaxLmss { file } => {
            let (formula, info) = load(file, g)?;
            let set = Analyzer::new(&formula, &oracle_config(g)).max_lmss()?;
            Ok(Report::single(info, "max-lmss", set))
        }
        Command::Enum { family, file } => {
            let (formula, info) = load(file, g)?;
            let report = bruteforce(&formula, g)?;
            let members = select_family(&formula, &report, *family, g)?;
            Ok(Report::family(info, family.name(), members))
        }
        Command::VerifyDuality { file } => {
            let (formula, info) = load(file, g)?;
            let report = bruteforce(&formula, g)?;
            match verify_duality(&formula, &report, &oracle_config(g))? {
                DualityVerdict::NotApplicable(e) => Err(e.into()),
                DualityVerdict::Checked(checks) => Ok(Report::duality(info, &report, &checks)),
            }
        }
        Command::Stats { file } => {
            let (formula, info) = load(file, g)?;
            let satisfiable = Analyzer::new(&formula, &oracle_config(g)).is_satisfiable()?;
            Ok(Report::stats(info, &formula, satisfiable))
        }
    }
}

/// The requested family, or the reason it does not exist.
fn select_family(
    formula: &LcnfFormula,
    report: &AnalysisReport,
    family: FamilyArg,
    g: &GlobalArgs,
) -> Result<SetFamily, Failure> {
    let mut analyzer = Analyzer::new(formula, &oracle_config(g));
    match family {
        FamilyArg::Lmes => return Ok(report.lmes.clone()),
        FamilyArg::Lmus if report.satisfiable() => return Err(AnalysisError::Satisfiable.into()),
        FamilyArg::Lmns | FamilyArg::Colmns if !report.lmns_exists() => {
            analyzer.lmns_exists()?;
        }
        FamilyArg::Lmss | FamilyArg::Colmss if !report.lmss_exists() => {
            analyzer.lmss_exists()?;
        }
        _ => {}
    }
    let members = match family {
        FamilyArg::Lmes => &report.lmes,
        FamilyArg::Lmus => &report.lmus,
        FamilyArg::Lmns => &report.lmns,
        FamilyArg::Lmss => &report.lmss,
        FamilyArg::Colmns => &report.colmns,
        FamilyArg::Colmss => &report.colmss,
    };
    if members.is_empty() {
        return Err(Failure {
            code: EXIT_VIOLATED,
            message: format!("exhaustive enumeration found no {} member", family.name()),
        });
    }
    Ok(members.clone())
}
