//! Command-line front end. Commands build a [`Report`] (rendered output plus
//! exit status); `main` only parses arguments and writes the result.

use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::brace::{SkewBrace, StarIdentityReport};
use crate::catalog::{group_name, read_jsonl, BraceCatalog, CatalogEntry};
use crate::constructors::example_by_name;
use crate::enumerate::{Dedup, DEFAULT_ORDER_CAP, MAX_ORDER_CAP};
use crate::error::{Error, Result};
use crate::group::{named_group, SubSet};
use crate::series::{
    abelian_type_check, b_squared, bound_attainment_search, central_term_check, kernel_chain_check,
    right_class_bound_from_report, CentralTermCheck, KernelChainReport, RightClassBound,
    SearchReport, SeriesReport, Verdict,
};
use crate::ybe::{solution_from_brace, Solution};

#[derive(Debug, Parser)]
#[command(name = "skewbrace", version, about = "Finite skew brace toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in example brace with its full analysis.
    Example { name: String },
    /// Analyze a brace stored as JSON.
    Analyze { file: PathBuf },
    /// List all skew braces on a named additive group.
    Enumerate {
        group: String,
        /// Largest accepted group order (at most 12).
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
        /// Keep every regular subgroup instead of one brace per isomorphism class.
        #[arg(long)]
        no_dedup: bool,
    },
    /// Run the nilpotency checks on every brace of a catalog.
    Verify { catalog: PathBuf },
    /// Rank the braces of a catalog by how close they come to the `2 + mr` bound.
    Search { catalog: PathBuf },
    /// Retraction tower of a Yang-Baxter solution stored as JSON.
    Retract { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    VerificationFailure = 1,
    InputError = 2,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn for_error(e: &Error) -> Status {
        match e {
            Error::ConstructionInvariantFailed(_) => Status::VerificationFailure,
            _ => Status::InputError,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub output: String,
    pub status: Status,
}

/// Runs one command. Paths are checked before any computation starts.
pub fn run(cli: &Cli) -> Result<Report> {
    if let Some(out) = &cli.out {
        check_output_path(out)?;
    }
    let fmt = cli.format;
    match &cli.command {
        Command::Example { name } => {
            let brace = example_by_name(name)?;
            let analysis = Analysis::compute(name, &brace)?;
            Ok(Report::ok(render(fmt, &analysis, |a| a.text())))
        }
        Command::Analyze { file } => {
            let text = read_input(file)?;
            let brace: SkewBrace =
                serde_json::from_str(&text).map_err(|e| Error::MalformedEntry {
                    line: e.line(),
                    message: e.to_string(),
                })?;
            let name = file
                .file_stem()
                .map_or("brace".into(), |s| s.to_string_lossy());
            let analysis = Analysis::compute(&name, &brace)?;
            Ok(Report::ok(render(fmt, &analysis, |a| a.text())))
        }
        Command::Enumerate {
            group,
            cap,
            no_dedup,
        } => cmd_enumerate(fmt, group, *cap, *no_dedup),
        Command::Verify { catalog } => {
            let entries = read_catalog(catalog)?;
            let report = verify_entries(&entries)?;
            let status = if report.counts.fail > 0 {
                Status::VerificationFailure
            } else {
                Status::Success
            };
            Ok(Report {
                output: render(fmt, &report, VerifyReport::text),
                status,
            })
        }
        Command::Search { catalog } => {
            let entries = read_catalog(catalog)?;
            let report =
                bound_attainment_search(entries.iter().map(|e| (e.id.as_str(), &e.brace)))?;
            Ok(Report::ok(render(fmt, &report, search_text)))
        }
        Command::Retract { file } => {
            let text = read_input(file)?;
            let solution: Solution =
                serde_json::from_str(&text).map_err(|e| Error::MalformedEntry {
                    line: e.line(),
                    message: e.to_string(),
                })?;
            let report = RetractReport::compute(&solution)?;
            Ok(Report::ok(render(fmt, &report, RetractReport::text)))
        }
    }
}

impl Report {
    fn ok(output: String) -> Self {
        Report {
            output,
            status: Status::Success,
        }
    }
}

fn render<T: Serialize>(fmt: Format, value: &T, text: impl Fn(&T) -> String) -> String {
    match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(value),
    }
}

fn check_output_path(out: &Path) -> Result<()> {
    let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
    if parent.is_some_and(|p| !p.is_dir()) {
        return Err(Error::FileUnreadable {
            path: out.display().to_string(),
            message: "parent directory does not exist".into(),
        });
    }
    if out.is_dir() {
        return Err(Error::FileUnreadable {
            path: out.display().to_string(),
            message: "is a directory".into(),
        });
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::FileUnreadable {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn read_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let file = fs::File::open(path).map_err(|e| Error::FileUnreadable {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    read_jsonl(BufReader::new(file))
}

fn cmd_enumerate(fmt: Format, group: &str, cap: usize, no_dedup: bool) -> Result<Report> {
    if cap > MAX_ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: cap,
            cap: MAX_ORDER_CAP,
        });
    }
    let add = named_group(group)?;
    if add.order() > DEFAULT_ORDER_CAP && add.order() <= cap {
        eprintln!(
            "warning: enumerating order {} may take a while",
            add.order()
        );
    }
    let dedup = if no_dedup {
        Dedup::None
    } else {
        Dedup::BraceIsomorphism
    };
    let catalog = BraceCatalog::enumerate(group, &add, dedup, cap)?;
    let output = match fmt {
        Format::Json => catalog.to_jsonl(),
        Format::Text => {
            let mut s = String::new();
            for e in &catalog.entries {
                let series = SeriesReport::compute(&e.brace)?;
                writeln!(
                    s,
                    "{:<12} (B,.) = {:<8} left {:<3} right {:<3} central {}",
                    e.id,
                    e.mul_group,
                    class_str(series.left_class),
                    class_str(series.right_class),
                    class_str(series.central_class),
                )
                .unwrap();
            }
            writeln!(s, "{} braces on {}", catalog.len(), group).unwrap();
            s
        }
    };
    Ok(Report::ok(output))
}

fn class_str(c: Option<usize>) -> String {
    c.map_or_else(|| "-".into(), |c| c.to_string())
}

fn set_str(b: &SkewBrace, s: &SubSet) -> String {
    if s.is_full() && s.len() > 1 {
        return "B".into();
    }
    let items: Vec<String> = s.iter().map(|x| b.label(x)).collect();
    format!("{{{}}}", items.join(", "))
}

fn verdict_str(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(why) => format!("FAIL ({why})"),
        Verdict::NotApplicable(why) => format!("not applicable ({why})"),
    }
}

/// Everything computed for a single brace.
#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub name: String,
    pub add_group: String,
    pub mul_group: String,
    pub brace: SkewBrace,
    pub series: SeriesReport,
    pub b_squared: SubSet,
    pub kernel_lambda: SubSet,
    pub centre: SubSet,
    pub bound_check: RightClassBound,
    pub abelian_type: Verdict,
    pub central_terms: CentralTermCheck,
    pub kernel_chain: Option<KernelChainReport>,
    pub star_identities: StarIdentityReport,
    pub multipermutation_level: Option<usize>,
    pub retraction_tower: Vec<usize>,
}

impl Analysis {
    pub fn compute(name: &str, b: &SkewBrace) -> Result<Self> {
        let series = SeriesReport::compute(b)?;
        let bound_check = right_class_bound_from_report(&series)?;
        let kernel_chain = if bound_check.verdict.is_applicable() {
            Some(kernel_chain_check(b)?)
        } else {
            None
        };
        let solution = solution_from_brace(b)?;
        Ok(Analysis {
            name: name.to_string(),
            add_group: group_name(b.additive()),
            mul_group: group_name(b.multiplicative()),
            brace: b.clone(),
            b_squared: b_squared(b),
            kernel_lambda: b.kernel_lambda(),
            centre: b.centre(),
            abelian_type: abelian_type_check(b),
            central_terms: central_term_check(b),
            star_identities: b.star_identities_check(),
            multipermutation_level: solution.multipermutation_level()?,
            retraction_tower: solution.retraction_tower()?,
            kernel_chain,
            bound_check,
            series,
        })
    }

    pub fn text(&self) -> String {
        let b = &self.brace;
        let s = &self.series;
        let mut out = String::new();
        let w = &mut out;
        writeln!(
            w,
            "{}: order {}, (B,+) = {}, (B,.) = {}",
            self.name,
            b.order(),
            self.add_group,
            self.mul_group
        )
        .unwrap();
        for (name, chain, open, close) in [
            ("left series", &s.left_chain, "", ""),
            ("right series", &s.right_chain, "(", ")"),
        ] {
            writeln!(w, "{name}:").unwrap();
            for (i, t) in chain.iter().enumerate() {
                writeln!(
                    w,
                    "  B^{open}{}{close} = {} [{}]",
                    i + 1,
                    set_str(b, t),
                    t.len()
                )
                .unwrap();
            }
            if !chain.last().unwrap().is_zero() {
                let k = chain.len();
                writeln!(w, "  B^{open}{}{close} = B^{open}{k}{close}, stable", k + 1).unwrap();
            }
        }
        writeln!(w, "upper central chain:").unwrap();
        for (i, t) in s.central_chain.iter().enumerate() {
            writeln!(w, "  zeta_{i} = {} [{}]", set_str(b, t), t.len()).unwrap();
        }
        writeln!(
            w,
            "classes: left {}, right {}, central {}; m = {}, r = {}",
            class_str(s.left_class),
            class_str(s.right_class),
            class_str(s.central_class),
            class_str(s.add_class_m),
            class_str(s.bsq_class_r),
        )
        .unwrap();
        writeln!(w, "Ker lambda = {}", set_str(b, &self.kernel_lambda)).unwrap();
        writeln!(w, "centre = {}", set_str(b, &self.centre)).unwrap();
        let bc = &self.bound_check;
        let detail = match bc.bound {
            Some(bound) if bc.verdict.is_applicable() => {
                format!(", bound {bound}, right class {}", class_str(bc.right_class))
            }
            _ => String::new(),
        };
        writeln!(
            w,
            "right class bound 2+mr: {}{detail}",
            verdict_str(&bc.verdict)
        )
        .unwrap();
        writeln!(
            w,
            "abelian type B^(4) = 0: {}",
            verdict_str(&self.abelian_type)
        )
        .unwrap();
        writeln!(
            w,
            "central terms: {}",
            verdict_str(&self.central_terms.verdict)
        )
        .unwrap();
        if let Some(kc) = &self.kernel_chain {
            let v = if kc.all_pass() { "pass" } else { "FAIL" };
            writeln!(w, "kernel chain: {v}").unwrap();
        }
        let star = if self.star_identities.all_pass() {
            "pass"
        } else {
            "FAIL"
        };
        writeln!(w, "star identities: {star}").unwrap();
        let tower: Vec<String> = self
            .retraction_tower
            .iter()
            .map(|n| n.to_string())
            .collect();
        writeln!(
            w,
            "Yang-Baxter solution: multipermutation level {}, retraction tower {}",
            class_str(self.multipermutation_level),
            tower.join(" -> ")
        )
        .unwrap();
        out
    }
}

/// Per-brace verification verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraceVerdict {
    pub brace_id: String,
    pub applicable: bool,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub left_class: Option<usize>,
    pub right_class: Option<usize>,
    pub bound: Option<usize>,
    /// `None` when not applicable.
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub abelian_type: Verdict,
    pub central_terms: Verdict,
    /// Whether every kernel-chain containment holds; `None` when not applicable.
    pub kernel_chain: Option<bool>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerifyCounts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub verdicts: Vec<BraceVerdict>,
    pub counts: VerifyCounts,
}

pub fn verify_brace(id: &str, b: &SkewBrace) -> Result<BraceVerdict> {
    let series = SeriesReport::compute(b)?;
    let bound = right_class_bound_from_report(&series)?;
    let abelian_type = abelian_type_check(b);
    let central_terms = central_term_check(b).verdict;
    let applicable = bound.verdict.is_applicable();
    let kernel_chain = if applicable {
        Some(kernel_chain_check(b)?.all_pass())
    } else {
        None
    };
    let failed = bound.verdict.is_fail()
        || abelian_type.is_fail()
        || central_terms.is_fail()
        || kernel_chain == Some(false);
    let reason = match (&bound.verdict, failed) {
        (Verdict::NotApplicable(why) | Verdict::Fail(why), _) => Some(why.clone()),
        (Verdict::Pass, true) => Some("a secondary check failed".into()),
        (Verdict::Pass, false) => None,
    };
    Ok(BraceVerdict {
        brace_id: id.to_string(),
        applicable,
        m: bound.m,
        r: bound.r,
        left_class: bound.left_class,
        right_class: bound.right_class,
        bound: bound.bound,
        pass: applicable.then_some(!failed),
        reason,
        abelian_type,
        central_terms,
        kernel_chain,
    })
}

pub fn verify_entries(entries: &[CatalogEntry]) -> Result<VerifyReport> {
    let mut verdicts = Vec::with_capacity(entries.len());
    let mut counts = VerifyCounts::default();
    for e in entries {
        let v = verify_brace(&e.id, &e.brace)?;
        counts.total += 1;
        match v.pass {
            None => counts.not_applicable += 1,
            Some(true) => counts.pass += 1,
            Some(false) => counts.fail += 1,
        }
        verdicts.push(v);
    }
    Ok(VerifyReport { verdicts, counts })
}

impl VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for v in &self.verdicts {
            let status = match v.pass {
                None => "n/a ",
                Some(true) => "PASS",
                Some(false) => "FAIL",
            };
            write!(s, "{status} {}", v.brace_id).unwrap();
            if v.applicable {
                write!(
                    s,
                    ": m={} r={} right class {} bound {}",
                    class_str(v.m),
                    class_str(v.r),
                    class_str(v.right_class),
                    class_str(v.bound)
                )
                .unwrap();
            }
            if let Some(why) = &v.reason {
                write!(s, " ({why})").unwrap();
            }
            s.push('\n');
        }
        let c = &self.counts;
        writeln!(
            s,
            "{} braces: {} pass, {} fail, {} not applicable",
            c.total, c.pass, c.fail, c.not_applicable
        )
        .unwrap();
        s
    }
}

fn search_text(r: &SearchReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} examined, {} applicable", r.examined, r.applicable).unwrap();
    for i in &r.ranking {
        writeln!(
            s,
            "{:<16} m={} r={} right class {} bound {} ratio {:.3}",
            i.id, i.m, i.r, i.right_class, i.bound, i.ratio
        )
        .unwrap();
    }
    if r.attaining.is_empty() {
        writeln!(s, "no instance with mr > 1 attains the bound").unwrap();
    } else {
        let ids: Vec<&str> = r.attaining.iter().map(|i| i.id.as_str()).collect();
        writeln!(s, "attaining with mr > 1: {}", ids.join(", ")).unwrap();
    }
    s
}

/// Retraction data for a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractReport {
    pub n: usize,
    pub retraction_tower: Vec<usize>,
    pub multipermutation_level: Option<usize>,
    /// Projection onto the first retraction, classes numbered by least member.
    pub projection: Vec<usize>,
}

impl RetractReport {
    pub fn compute(s: &Solution) -> Result<Self> {
        let (_, projection) = s.retract()?;
        Ok(RetractReport {
            n: s.size(),
            retraction_tower: s.retraction_tower()?,
            multipermutation_level: s.multipermutation_level()?,
            projection,
        })
    }

    fn text(&self) -> String {
        let tower: Vec<String> = self
            .retraction_tower
            .iter()
            .map(|n| n.to_string())
            .collect();
        let level = self
            .multipermutation_level
            .map_or_else(|| "none (not multipermutation)".into(), |l| l.to_string());
        format!(
            "solution on {} points\nretraction tower: {}\nmultipermutation level: {level}\n",
            self.n,
            tower.join(" -> ")
        )
    }
}
