//! The `outerext` command line.
//!
//! Every subcommand is a pure function of its inputs and flags. Errors go to
//! stderr as a single `error[<kind>]: <message>` line; the exit status is 0
//! on success, 1 when a check fails or a contradiction is found, 2 on error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::extengine::{
    assemble_equivariant, compare_tables, compute_ext2_table, e1_support, expected_ext0, expected_ext1,
    invert_for_multiplicities, load_ext_file, run_koszul_recursion, verify_a2_vanishing, A2Outcome, CellKind,
    ExtStatus, ExtTable, Mode,
};
use crate::liechar::{lie_rep, verify_cyclic_restriction, CyclicOutcome};
use crate::multdata::{
    column_row_value, load_mult_file, merge_and_validate, parse_raw_export, records_to_text, translate_gh22, Mult,
    MultTable,
};
use crate::partition::{factorial, generate_partitions, Partition};
use crate::repring::BiRep;

/// Default data directory when no `--data` is given.
pub const DATA_ENV: &str = "OUTEREXT_DATA";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "outerext",
    version,
    about = "Ext groups between simple polynomial outer functors"
)]
struct Args {
    /// Data file or directory (`.mult`, `.ext`, `.tsv`); repeatable.
    #[arg(long = "data", global = true)]
    data: Vec<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    /// Where to write the computed Ext table.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equivariant decomposition of Ext²(a⊗(n−2), a⊗n).
    Ext2 {
        #[arg(long)]
        n: usize,
    },
    /// Euler-characteristic recursion with contradiction reports.
    Recursion {
        #[arg(long)]
        max: usize,
        /// Stop at the first contradiction.
        #[arg(long)]
        strict: bool,
    },
    /// E₁-page support diagram.
    Diagram {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        svg: bool,
    },
    /// Invariant battery over the loaded data.
    Validate {
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Multiplicities recovered from Ext groups.
    Invert {
        #[arg(long)]
        max: usize,
    },
    /// Lie characters and the cyclic restriction check.
    LieCheck {
        #[arg(long)]
        max: usize,
    },
    /// Rewrite a raw tabular export as `phi` lines.
    Convert {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RunMode {
    Strict,
    #[default]
    Continue,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub data_paths: Vec<PathBuf>,
    pub max_degree: usize,
    pub mode: RunMode,
    pub output_format: OutputFormat,
    pub cache_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(max_degree: usize) -> Self {
        RunConfig {
            data_paths: Vec::new(),
            max_degree,
            mode: RunMode::Continue,
            output_format: OutputFormat::Human,
            cache_path: None,
        }
    }

    fn check(&self) -> std::result::Result<(), Failure> {
        if self.max_degree < 2 {
            return Err(Failure::new(
                "input",
                format!("max degree must be >= 2, got {}", self.max_degree),
            ));
        }
        Ok(())
    }
}

/// A diagnostic for stderr.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub msg: String,
}

impl Failure {
    fn new(kind: &'static str, msg: impl Into<String>) -> Self {
        Failure { kind, msg: msg.into() }
    }

    pub fn line(&self) -> String {
        let msg: Vec<&str> = self.msg.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        format!("error[{}]: {}", self.kind, msg.join("; "))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.kind(), e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one invocation and returns the exit status.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e);
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "{}", Failure::new("usage", first).line());
            return 2;
        }
    };
    let mut buf = String::new();
    let status = match dispatch(args, &mut buf) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.write_all(buf.as_bytes());
            let _ = writeln!(err, "{}", f.line());
            return 2;
        }
    };
    if out.write_all(buf.as_bytes()).is_err() {
        return 2;
    }
    status
}

fn dispatch(args: Args, out: &mut String) -> CliResult<i32> {
    let data = if args.data.is_empty() {
        std::env::var_os(DATA_ENV).map(PathBuf::from).into_iter().collect()
    } else {
        args.data
    };
    let cfg = |max: usize, mode: RunMode| RunConfig {
        data_paths: data.clone(),
        max_degree: max,
        mode,
        output_format: args.format,
        cache_path: args.cache.clone(),
    };
    match args.command {
        Command::Ext2 { n } => cmd_ext2(&cfg(n.max(2), RunMode::Continue), n, out),
        Command::Recursion { max, strict } => {
            let mode = if strict { RunMode::Strict } else { RunMode::Continue };
            cmd_recursion(&cfg(max, mode), out)
        }
        Command::Diagram { nu, lambda, svg } => {
            let format = if svg { OutputFormat::Svg } else { args.format };
            out.push_str(&cmd_diagram(nu, lambda, format));
            Ok(0)
        }
        Command::Validate { max } => cmd_validate(&cfg(max, RunMode::Continue), out),
        Command::Invert { max } => cmd_invert(&cfg(max, RunMode::Continue), out),
        Command::LieCheck { max } => cmd_lie_check(&cfg(max, RunMode::Continue), out),
        Command::Convert { input } => {
            let text = read(&input)?;
            out.push_str(&records_to_text(&parse_raw_export(&text)?));
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Everything found under the data paths, before merging.
#[derive(Debug, Default)]
pub struct Loaded {
    pub fragments: Vec<MultTable>,
    pub ext: ExtTable,
    pub files: Vec<PathBuf>,
}

impl Loaded {
    pub fn has_mult(&self) -> bool {
        !self.fragments.is_empty()
    }

    /// Fragments merged over the built-in entries through `degree`.
    pub fn table(&self, degree: usize) -> Result<MultTable> {
        let top = self.fragments.iter().map(MultTable::max_degree).max().unwrap_or(0);
        let base = MultTable::builtin(degree.max(top));
        merge_and_validate(std::iter::once(&base).chain(&self.fragments))
    }
}

fn collect_files(path: &Path, files: &mut Vec<PathBuf>) -> Result<()> {
    let meta = std::fs::metadata(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    if meta.is_dir() {
        let entries = std::fs::read_dir(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut found: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
        found.sort();
        for f in found {
            if f.is_file() && matches!(extension(&f), "mult" | "ext" | "tsv") {
                files.push(f);
            }
        }
    } else {
        files.push(path.to_path_buf());
    }
    Ok(())
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

/// Reads every data file. Missing paths and unknown extensions are errors.
pub fn load_data(paths: &[PathBuf]) -> Result<Loaded> {
    let mut loaded = Loaded {
        ext: ExtTable::new(false),
        ..Loaded::default()
    };
    let mut files = Vec::new();
    for p in paths {
        collect_files(p, &mut files)?;
    }
    for f in &files {
        match extension(f) {
            "mult" => loaded.fragments.push(load_mult_file(f, false)?.table),
            "ext" => loaded.ext.merge(&load_ext_file(f)?)?,
            "tsv" => {
                let name = f
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                loaded
                    .fragments
                    .push(translate_gh22(&parse_raw_export(&read(f)?)?, &name)?);
            }
            other => {
                return Err(Error::Load {
                    source_name: f.display().to_string(),
                    line: 0,
                    msg: format!("unrecognised extension {:?}", other),
                })
            }
        }
    }
    loaded.files = files;
    Ok(loaded)
}

fn coverage_failure(needed: usize, mult: &MultTable, e: Error) -> Failure {
    match e {
        Error::UnknownCell(cell) => Failure::new(
            "coverage",
            format!(
                "multiplicities cover degree {} but degree {} is needed (first unknown cell {})",
                mult.coverage_degree(),
                needed,
                cell
            ),
        ),
        other => other.into(),
    }
}

/// Ext² from the ext data when every cell is present there.
fn ext2_from_fixture(n: usize, ext: &ExtTable) -> Option<BiRep> {
    if ext.is_empty() {
        return None;
    }
    assemble_equivariant(n - 2, n, ext, 2).ok()
}

pub fn cmd_ext2(cfg: &RunConfig, n: usize, out: &mut String) -> CliResult<i32> {
    if n < 2 {
        return Err(Failure::new("input", format!("ext2 needs n >= 2, got {}", n)));
    }
    let loaded = load_data(&cfg.data_paths)?;
    let mult = loaded.table(n)?;
    let (birep, source) = if mult.covers(n) {
        (compute_ext2_table(n, &mult)?.birep, "computed from multiplicities")
    } else if let Some(b) = ext2_from_fixture(n, &loaded.ext) {
        (b, "assembled from ext data")
    } else {
        let e = crate::extengine::require_coverage(&mult, n).expect_err("not covered");
        return Err(coverage_failure(n, &mult, e));
    };
    match cfg.output_format {
        OutputFormat::Csv => out.push_str(&birep.to_csv()),
        _ => {
            let _ = writeln!(out, "Ext^2(a^{}, a^{}) = {}", n - 2, n, birep.render());
            let _ = writeln!(out, "dim = {}", birep.dim());
            let _ = writeln!(out, "source: {}", source);
        }
    }
    Ok(0)
}

pub fn cmd_recursion(cfg: &RunConfig, out: &mut String) -> CliResult<i32> {
    cfg.check()?;
    let loaded = load_data(&cfg.data_paths)?;
    let mult = loaded.table(cfg.max_degree)?;
    let mode = match cfg.mode {
        RunMode::Strict => Mode::Strict,
        RunMode::Continue => Mode::Continue,
    };
    let outcome =
        run_koszul_recursion(cfg.max_degree, &mult, mode).map_err(|e| coverage_failure(cfg.max_degree, &mult, e))?;
    if let Some(path) = &cfg.cache_path {
        outcome.table.save(path)?;
    }
    let t = &outcome.table;
    match cfg.output_format {
        OutputFormat::Csv => {
            out.push_str("nu,lambda,k,terms,forced,blame\n");
            for r in &outcome.reports {
                let dims: Vec<String> = r.term_dims.iter().map(u64::to_string).collect();
                let blame: Vec<String> = r
                    .blame_set
                    .iter()
                    .map(|(n, l, k)| format!("{} {} {}", k, n, l))
                    .collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    space(&r.nu),
                    space(&r.lambda),
                    r.degree(),
                    dims.join(" "),
                    r.forced_value,
                    blame.join(" | ").replace(',', " ")
                );
            }
        }
        _ => {
            let _ = writeln!(
                out,
                "recursion through degree {}: {} cells (computed {}, conditional {}, contradiction {}, blocked {})",
                cfg.max_degree,
                t.len(),
                t.count_status(ExtStatus::Computed),
                t.count_status(ExtStatus::Conditional),
                t.count_status(ExtStatus::Contradiction),
                t.count_status(ExtStatus::Blocked)
            );
            if outcome.halted {
                out.push_str("halted at the first contradiction\n");
            }
            if outcome.reports.is_empty() {
                out.push_str("no contradiction found\n");
            }
            for r in &outcome.reports {
                out.push('\n');
                out.push_str(&r.render());
            }
        }
    }
    Ok(i32::from(!outcome.reports.is_empty()))
}

fn space(p: &Partition) -> String {
    p.parts().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn cmd_diagram(nu_size: usize, lambda_size: usize, format: OutputFormat) -> String {
    let s = e1_support(nu_size, lambda_size);
    match format {
        OutputFormat::Svg => s.render_svg(),
        OutputFormat::Human => s.render_ascii(),
        OutputFormat::Csv => {
            let mut out = String::from("p,q,kind\n");
            for &(p, q) in &s.region {
                let kind = match s.kind(p, q) {
                    CellKind::KnownZero => "zero",
                    CellKind::Open => "open",
                    CellKind::Outside => continue,
                };
                let _ = writeln!(out, "{},{},{}", p, q, kind);
            }
            out
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

fn line(name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        status,
        detail: detail.into(),
    }
}

fn verdict(name: impl Into<String>, ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> CheckLine {
    if ok {
        line(name, CheckStatus::Pass, pass)
    } else {
        line(name, CheckStatus::Fail, fail)
    }
}

/// The invariant battery behind `validate`.
pub fn validation_checks(loaded: &Loaded, max: usize) -> Vec<CheckLine> {
    const ABSENT: &str = "skipped: dataset absent";
    let mut checks = Vec::new();

    let builtin = MultTable::builtin(max);
    let diag_ok = (0..=max)
        .flat_map(generate_partitions)
        .all(|l| builtin.query(&l, &l) == Mult::Entry(1));
    checks.push(verdict(
        "builtin.diagonal",
        diag_ok,
        format!("through degree {}", max),
        "diagonal entry differs from 1",
    ));
    let mut hook_bad = None;
    for m in 2..=max {
        let col = Partition::column(m);
        for r in 2..m {
            for rho in generate_partitions(r) {
                if builtin.query(&col, &rho).value() != column_row_value(&col, &rho) && hook_bad.is_none() {
                    hook_bad = Some(format!("mult[{} ; {}]", col, rho));
                }
            }
        }
    }
    checks.push(verdict(
        "builtin.hook-rows",
        hook_bad.is_none(),
        format!("(1^m) rows through degree {}", max),
        hook_bad.unwrap_or_default(),
    ));
    match builtin.validate() {
        Ok(()) => checks.push(line("builtin.structural-zeros", CheckStatus::Pass, "")),
        Err(e) => checks.push(line("builtin.structural-zeros", CheckStatus::Fail, e.to_string())),
    }
    let lie_bad: Vec<String> = (1..=max.min(9))
        .filter(|&n| {
            lie_rep(n)
                .map(|l| l.dim() != factorial(n - 1) || !l.rep.is_nonnegative())
                .unwrap_or(true)
        })
        .map(|n| n.to_string())
        .collect();
    checks.push(verdict(
        "lie.dimensions",
        lie_bad.is_empty(),
        format!("dim Lie(n) = (n-1)! for n <= {}", max.min(9)),
        format!("n = {}", lie_bad.join(" ")),
    ));

    if !loaded.has_mult() {
        checks.push(line("data.merge", CheckStatus::Skip, ABSENT));
    }
    let mult = if loaded.has_mult() {
        match loaded.table(max) {
            Ok(t) => {
                checks.push(line(
                    "data.merge",
                    CheckStatus::Pass,
                    format!("{} entries, covered through degree {}", t.len(), t.coverage_degree()),
                ));
                Some(t)
            }
            Err(e) => {
                checks.push(line("data.merge", CheckStatus::Fail, e.to_string()));
                None
            }
        }
    } else {
        None
    };

    match &mult {
        Some(t) => match verify_a2_vanishing(t, max) {
            Ok(r) => {
                if r.ext1.is_none() {
                    checks.push(line("a2.low-degree", CheckStatus::Skip, "degree 3 not covered"));
                } else {
                    checks.push(verdict(
                        "a2.low-degree",
                        r.low_degree_ok(),
                        format!(
                            "Ext^0 = {} ; Ext^1 = {}",
                            expected_ext0().render(),
                            expected_ext1().render()
                        ),
                        format!(
                            "Ext^0 = {} ; Ext^1 = {}",
                            r.ext0.render(),
                            r.ext1.as_ref().map(BiRep::render).unwrap_or_default()
                        ),
                    ));
                }
                for n in 4..=max {
                    let name = format!("a2.degree-{}", n);
                    let rows: Vec<_> = r.checks.iter().filter(|c| c.lambda.size() == n).collect();
                    let fail: Vec<String> = rows
                        .iter()
                        .filter_map(|c| match &c.outcome {
                            A2Outcome::Fail { lhs, rhs } => Some(format!(
                                "{} at lambda = {} ({} vs {})",
                                c.obligation, c.lambda, lhs, rhs
                            )),
                            _ => None,
                        })
                        .collect();
                    if !fail.is_empty() {
                        checks.push(line(name, CheckStatus::Fail, fail.join("; ")));
                    } else if rows.iter().any(|c| matches!(c.outcome, A2Outcome::Unknown(_))) {
                        checks.push(line(name, CheckStatus::Skip, ABSENT));
                    } else {
                        checks.push(line(name, CheckStatus::Pass, format!("{} obligations", rows.len())));
                    }
                }
            }
            Err(e) => checks.push(line("a2", CheckStatus::Fail, e.to_string())),
        },
        None => checks.push(line("a2", CheckStatus::Skip, ABSENT)),
    }

    match &mult {
        Some(t) => {
            for n in 3..=max {
                let name = format!("cyclic-lie.{}", n);
                match verify_cyclic_restriction(t, n) {
                    Ok(c) => match c.outcome {
                        CyclicOutcome::Pass => checks.push(line(name, CheckStatus::Pass, "")),
                        CyclicOutcome::Fail { difference, dim_ok } => checks.push(line(
                            name,
                            CheckStatus::Fail,
                            format!("restriction differs by {} (dimension ok: {})", difference, dim_ok),
                        )),
                        CyclicOutcome::Unknown(_) => checks.push(line(name, CheckStatus::Skip, ABSENT)),
                    },
                    Err(e) => checks.push(line(name, CheckStatus::Fail, e.to_string())),
                }
            }
        }
        None => checks.push(line("cyclic-lie", CheckStatus::Skip, ABSENT)),
    }

    for n in 2..=max {
        let name = format!("ext2.{}", n);
        let fixture = ext2_from_fixture(n, &loaded.ext);
        let computed = mult.as_ref().filter(|t| t.covers(n)).map(|t| compute_ext2_table(n, t));
        match (fixture, computed) {
            (Some(f), Some(Ok(c))) => checks.push(verdict(
                name,
                f == c.birep,
                format!("ext data agrees with multiplicities, dim {}", c.birep.dim()),
                format!("ext data {} vs computed {}", f.render(), c.birep.render()),
            )),
            (_, Some(Err(e))) => checks.push(line(name, CheckStatus::Fail, e.to_string())),
            (Some(f), None) => checks.push(line(name, CheckStatus::Skip, format!("ext data only, dim {}", f.dim()))),
            (None, Some(Ok(c))) => checks.push(line(
                name,
                CheckStatus::Pass,
                format!("computed, dim {}", c.birep.dim()),
            )),
            (None, None) => checks.push(line(name, CheckStatus::Skip, ABSENT)),
        }
    }
    checks
}

pub fn cmd_validate(cfg: &RunConfig, out: &mut String) -> CliResult<i32> {
    cfg.check()?;
    let loaded = load_data(&cfg.data_paths)?;
    let checks = validation_checks(&loaded, cfg.max_degree);
    match cfg.output_format {
        OutputFormat::Csv => {
            out.push_str("check,status,detail\n");
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{},{},\"{}\"",
                    c.name,
                    c.status.as_str(),
                    c.detail.replace('"', "'")
                );
            }
        }
        _ => {
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{}",
                    format!("{} {} {}", c.status.as_str(), c.name, c.detail).trim_end()
                );
            }
            let fails = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
            let skips = checks.iter().filter(|c| c.status == CheckStatus::Skip).count();
            let _ = writeln!(out, "{} checks: {} failed, {} skipped", checks.len(), fails, skips);
        }
    }
    Ok(i32::from(checks.iter().any(|c| c.status == CheckStatus::Fail)))
}

pub fn cmd_invert(cfg: &RunConfig, out: &mut String) -> CliResult<i32> {
    let loaded = load_data(&cfg.data_paths)?;
    let (ext, reference) = if !loaded.ext.is_empty() {
        let reference = loaded.table(cfg.max_degree).ok().filter(|t| t.covers(cfg.max_degree));
        (loaded.ext.clone(), reference)
    } else {
        let mult = loaded.table(cfg.max_degree)?;
        let outcome = run_koszul_recursion(cfg.max_degree, &mult, Mode::Continue)
            .map_err(|e| coverage_failure(cfg.max_degree, &mult, e))?;
        if let Some(r) = outcome.first_report() {
            return Err(Failure::new(
                "contradiction",
                format!("inversion needs a contradiction-free range; {}", r.headline()),
            ));
        }
        (outcome.table, Some(mult))
    };
    let inv = invert_for_multiplicities(&ext, cfg.max_degree)?;
    match cfg.output_format {
        OutputFormat::Csv => {
            out.push_str("lambda,rho,value\n");
            for line in inv.to_canonical_text().lines() {
                let f: Vec<&str> = line.trim_start_matches("mult ").split(" ; ").collect();
                let _ = writeln!(out, "{},{},{}", f[0].replace(',', " "), f[1].replace(',', " "), f[2]);
            }
        }
        _ => out.push_str(&inv.to_canonical_text()),
    }
    let mut status = 0;
    if let Some(reference) = reference {
        let diff = compare_tables(&inv, &reference, cfg.max_degree);
        if cfg.output_format == OutputFormat::Human {
            if diff.is_empty() {
                let _ = writeln!(out, "# round trip: identical through degree {}", cfg.max_degree);
            } else {
                let _ = writeln!(out, "# round trip: {} cells differ, first {}", diff.len(), diff[0]);
            }
        }
        status = i32::from(!diff.is_empty());
    }
    Ok(status)
}

pub fn cmd_lie_check(cfg: &RunConfig, out: &mut String) -> CliResult<i32> {
    let loaded = load_data(&cfg.data_paths)?;
    let mult = loaded.table(cfg.max_degree)?;
    let mut failed = false;
    let csv = cfg.output_format == OutputFormat::Csv;
    if csv {
        out.push_str("kind,n,dim,status,rep\n");
    }
    for n in 1..=cfg.max_degree {
        let l = lie_rep(n)?;
        let ok = l.dim() == factorial(n - 1) && l.rep.is_nonnegative();
        failed |= !ok;
        let status = if ok { "PASS" } else { "FAIL" };
        if csv {
            let _ = writeln!(out, "lie,{},{},{},{}", n, l.dim(), status, l.rep);
        } else {
            let _ = writeln!(out, "{} Lie({}) dim {} = {}", status, n, l.dim(), l.rep);
        }
    }
    for n in 3..=cfg.max_degree {
        let c = verify_cyclic_restriction(&mult, n)?;
        let dim = c.cyclic.as_ref().map(|c| c.dim()).unwrap_or_else(|| BigInt::from(0));
        let (status, detail) = match &c.outcome {
            CyclicOutcome::Pass => ("PASS", c.cyclic.as_ref().map(|c| c.rep.to_string()).unwrap_or_default()),
            CyclicOutcome::Fail { difference, .. } => {
                failed = true;
                ("FAIL", format!("restriction differs by {}", difference))
            }
            CyclicOutcome::Unknown(cell) => ("SKIP", format!("unknown cell {}", cell)),
        };
        if csv {
            let _ = writeln!(out, "cyclic,{},{},{},{}", n, dim, status, detail);
        } else {
            let _ = writeln!(out, "{} Lie(({})) {}", status, n, detail);
        }
    }
    Ok(i32::from(failed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("outerext").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn fixture(name: &str) -> String {
        format!("{}/data/{}", env!("CARGO_MANIFEST_DIR"), name)
    }

    #[test]
    fn usage_errors() {
        let (code, out, err) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.starts_with("error[usage]: "), "{}", err);
        assert_eq!(err.lines().count(), 1);
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("recursion"));
    }

    #[test]
    fn missing_file() {
        let (code, _, err) = run(&["--data", "/nonexistent/x.mult", "ext2", "--n", "3"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[load]: /nonexistent/x.mult"), "{}", err);
    }

    #[test]
    fn ext2_sources() {
        let (code, out, _) = run(&["--data", &fixture("degree3.mult"), "ext2", "--n", "3"]);
        assert_eq!(code, 0);
        assert!(
            out.starts_with("Ext^2(a^1, a^3) = 0\ndim = 0\nsource: computed"),
            "{}",
            out
        );

        let (code, out, _) = run(&["--data", &fixture("table1.ext"), "ext2", "--n", "5"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("dim = 28\n"));
        assert!(out.contains("source: assembled from ext data"));

        let (code, out, _) = run(&["--data", &fixture("table1.ext"), "--format", "csv", "ext2", "--n", "5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("nu,lambda,coeff\n"));

        let (code, _, err) = run(&["ext2", "--n", "4"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[coverage]: "), "{}", err);
        assert!(err.contains("degree 4 is needed"));
    }

    #[test]
    fn diagram_formats() {
        let (_, out, _) = run(&["diagram", "--nu", "3", "--lambda", "8"]);
        assert!(out.starts_with("E1 page for |nu| = 3, |lambda| = 8"));
        let (_, svg, _) = run(&["diagram", "--nu", "3", "--lambda", "8", "--svg"]);
        assert!(svg.starts_with("<svg"));
        let (_, csv, _) = run(&["--format", "csv", "diagram", "--nu", "4", "--lambda", "4"]);
        assert_eq!(csv, "p,q,kind\n4,-4,open\n");
        let (code, empty, _) = run(&["diagram", "--nu", "5", "--lambda", "3"]);
        assert_eq!(code, 0);
        assert!(empty.contains("(empty)"));
    }

    #[test]
    fn recursion_exit_and_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("out.ext");
        let args = [
            "--data",
            &fixture("degree3.mult"),
            "--cache",
            cache.to_str().unwrap(),
            "recursion",
            "--max",
            "3",
        ];
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{}", err);
        assert!(out.contains("no contradiction found"));
        let first = std::fs::read_to_string(&cache).unwrap();
        assert!(first.contains("ext 2 ; 1,1,1 ; 1 ; 1 ; computed"), "{}", first);
        run(&args);
        assert_eq!(std::fs::read_to_string(&cache).unwrap(), first);

        let (code, _, err) = run(&["recursion", "--max", "1"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[input]"));
    }

    #[test]
    fn recursion_reports_contradictions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.mult");
        let mut text = std::fs::read_to_string(fixture("degree3.mult")).unwrap();
        for l in generate_partitions(4) {
            if l == Partition::column(4) {
                continue;
            }
            for r in 2..4 {
                for rho in generate_partitions(r) {
                    let v = match (l.to_string().as_str(), rho.to_string().as_str()) {
                        ("2,1,1", "2") => 3,
                        ("2,1,1", "1,1,1") => 1,
                        _ => 0,
                    };
                    text.push_str(&format!("mult {} ; {} ; {}\n", l, rho, v));
                }
            }
        }
        std::fs::write(&path, text).unwrap();
        let (code, out, _) = run(&["--data", path.to_str().unwrap(), "recursion", "--max", "4"]);
        assert_eq!(code, 1);
        assert!(out.contains("contradiction nu = 2 ; lambda = 2,1^2\n"), "{}", out);
        assert!(out.contains("  forced: Ext^2 = -2\n"));
        let (code, csv, _) = run(&[
            "--data",
            path.to_str().unwrap(),
            "--format",
            "csv",
            "recursion",
            "--max",
            "4",
        ]);
        assert_eq!(code, 1);
        assert_eq!(csv.lines().nth(1), Some("2,2 1 1,2,3 1,-2,"));
    }

    #[test]
    fn validate_builtin_and_corrupted() {
        let (code, out, _) = run(&["validate", "--max", "6"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("PASS builtin.diagonal"));
        assert!(out.contains("PASS builtin.hook-rows"));
        assert!(out.contains("SKIP a2 skipped: dataset absent"));
        assert!(!out.contains("FAIL"));

        let (code, out, _) = run(&["--data", &fixture("degree3.mult"), "validate", "--max", "4"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("PASS a2.low-degree"));
        assert!(out.contains("PASS cyclic-lie.3"));
        assert!(out.contains("PASS ext2.3 computed, dim 0"));

        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.mult");
        let text = std::fs::read_to_string(fixture("degree3.mult")).unwrap();
        std::fs::write(&bad, text.replace("mult 2,1 ; 2 ; 0", "mult 2,1 ; 2 ; 1")).unwrap();
        let (code, out, _) = run(&[
            "--data",
            bad.to_str().unwrap(),
            "--format",
            "csv",
            "validate",
            "--max",
            "4",
        ]);
        assert_eq!(code, 1);
        assert!(out.starts_with("check,status,detail\n"));
        assert!(out.contains("a2.low-degree,FAIL,"), "{}", out);
    }

    #[test]
    fn invert_round_trip() {
        let (code, out, err) = run(&["--data", &fixture("degree3.mult"), "invert", "--max", "3"]);
        assert_eq!(code, 0, "{}", err);
        assert!(out.contains("mult 1,1,1 ; 2 ; 1\n"));
        assert!(out.ends_with("# round trip: identical through degree 3\n"));
    }

    #[test]
    fn lie_check() {
        let (code, out, _) = run(&["--data", &fixture("degree3.mult"), "lie-check", "--max", "4"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("PASS Lie(3) dim 2 = 1*2,1\n"));
        assert!(out.contains("PASS Lie((3)) 1*1,1,1\n"));
        assert!(out.contains("SKIP Lie((4)) unknown cell"));
    }

    #[test]
    fn convert_raw_export() {
        let dir = tempfile::tempdir().unwrap();
        let raw = dir.path().join("raw.tsv");
        std::fs::write(&raw, "k\tlambda\trho\tvalue\n1\t[3]\t[2]\t1\n").unwrap();
        let (code, out, _) = run(&["convert", "--input", raw.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "phi 1 ; 3 ; 2 ; 1\n");
    }
}
