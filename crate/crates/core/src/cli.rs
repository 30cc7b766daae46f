//! Command-line front end: `analyze`, `sweep` and `export`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gamma::{build_gamma, GammaError, MIN_GROUP_ORDER};
use crate::graph::GraphError;
use crate::group::{
    all_subgroups, catalog_group, is_normal, subgroup_generate, symmetric_element, write_table_file, FiniteGroup,
    GroupError, GroupSpec, Subgroup, DEFAULT_ORDER_BOUND,
};
use crate::qsrg::{certify_instance, classify, Classification, ParameterReport};
use crate::symmetry::{
    certify_aut_group, corollary_elem_abelian_check, BruteforceLeg, CorollaryVerdict, SymmetryError, SymmetryVerdict,
};

/// Largest group order the sweep accepts.
pub const MAX_SWEEP_ORDER: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeBoundExceeded { .. } | GraphError::OrderOverflow => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GammaError> for CliError {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::Group(g) => g.into(),
            GammaError::Graph(g) => g.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Overall {
    Pass,
    Fail,
    Degenerate,
}

impl Overall {
    pub fn exit_code(self) -> i32 {
        match self {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::Degenerate => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub condition: bool,
    pub vertex_orbits: bool,
    pub edge_orbits: bool,
    pub arc_orbits: bool,
    pub corollary: CorollaryVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub build_ms: f64,
    pub profile_ms: f64,
    pub aut_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub group_label: String,
    pub group_order: usize,
    pub subgroup_members: Vec<usize>,
    pub subgroup_order: usize,
    pub index: usize,
    pub is_normal: bool,
    pub parameters: Option<ParameterReport>,
    pub classification: Option<Classification>,
    pub symmetry: Option<SymmetryVerdict>,
    pub transitivity: Option<TransitivityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub overall: Overall,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub allow_small: bool,
    pub bruteforce: BruteforceLeg,
    pub timing: bool,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs every check on `(group, h)` and folds the outcomes into one report.
pub fn analyze(group: &FiniteGroup, h: &Subgroup, opts: AnalyzeOptions) -> Result<CertificationReport, CliError> {
    let normal = is_normal(group, h);
    let mut report = CertificationReport {
        group_label: group.label().to_string(),
        group_order: group.order(),
        subgroup_members: h.members().to_vec(),
        subgroup_order: h.order(),
        index: h.index(),
        is_normal: normal,
        parameters: None,
        classification: None,
        symmetry: None,
        transitivity: None,
        timing: None,
        overall: Overall::Pass,
        failures: Vec::new(),
        notes: Vec::new(),
    };
    if group.order() < MIN_GROUP_ORDER && !opts.allow_small {
        report.overall = Overall::Degenerate;
        report.notes.push(format!("group order below {MIN_GROUP_ORDER}; rerun with --allow-small to analyze anyway"));
        return Ok(report);
    }

    let t = Instant::now();
    let inst = build_gamma(group, h, opts.allow_small)?;
    let build_ms = ms(t);

    let t = Instant::now();
    let params = certify_instance(&inst);
    let profile_ms = ms(t);
    report.failures.extend(params.failures());
    report.classification = Some(classify(&params.profile));
    report.parameters = Some(params);

    if h.is_whole() {
        report.overall = Overall::Degenerate;
        report.notes.push("H = G gives the edgeless graph; symmetry checks skipped".into());
        if opts.timing {
            report.timing = Some(Timing { build_ms, profile_ms, aut_ms: 0.0 });
        }
        return Ok(report);
    }

    let t = Instant::now();
    let symmetry_claims = !h.is_trivial();
    match certify_aut_group(&inst, opts.bruteforce) {
        Ok(v) => {
            if symmetry_claims {
                report.failures.extend(v.failures());
            } else if !v.vertex_transitive {
                report.failures.push("vertex_transitive".into());
            }
            match corollary_elem_abelian_check(group, h) {
                Ok(corollary) => {
                    report.transitivity = Some(TransitivityReport {
                        condition: v.edge_transitive_algebraic,
                        vertex_orbits: v.vertex_transitive,
                        edge_orbits: v.edge_transitive_orbits,
                        arc_orbits: v.arc_transitive_orbits,
                        corollary,
                    });
                }
                Err(SymmetryError::CorollaryViolated { detail }) => {
                    report.failures.push(format!("corollary_elementary_abelian: {detail}"))
                }
                Err(e) => return Err(symmetry_error(e)),
            }
            if !v.alpha_is_automorphism {
                report.notes.push("alpha is not an automorphism for this subgroup".into());
            }
            if v.bruteforce_order.is_none() {
                report.notes.push("refinement search skipped; orbits use the generated group".into());
            }
            report.symmetry = Some(v);
        }
        Err(SymmetryError::AutomorphismCheckFailed { map }) => {
            report.failures.push(format!("named_automorphism: {map}"));
        }
        Err(e) => return Err(symmetry_error(e)),
    }
    if !symmetry_claims {
        report.notes.push("trivial H: order formula and transitivity equivalence not asserted".into());
    }
    if opts.timing {
        report.timing = Some(Timing { build_ms, profile_ms, aut_ms: ms(t) });
    }
    if !report.failures.is_empty() {
        report.overall = Overall::Fail;
    }
    Ok(report)
}

fn symmetry_error(e: SymmetryError) -> CliError {
    match e {
        SymmetryError::Group(g) => g.into(),
        SymmetryError::Graph(g) => g.into(),
        other => CliError::Input(other.to_string()),
    }
}

/// Parses `--subgroup`: comma-separated generators, each an element index
/// or, for symmetric groups, a cycle product such as `(12)(34)`. Empty
/// input means the trivial subgroup.
pub fn parse_subgroup(spec: &GroupSpec, group: &FiniteGroup, text: &str) -> Result<Subgroup, CliError> {
    let mut tokens = Vec::new();
    let (mut depth, mut current) = (0i32, String::new());
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            tokens.push(std::mem::take(&mut current));
        } else {
            current.push(ch);
        }
    }
    tokens.push(current);
    let mut gens = Vec::new();
    for token in tokens.iter().map(|t| t.trim()).filter(|t| !t.is_empty()) {
        if token.starts_with('(') {
            let GroupSpec::Symmetric(n) = spec else {
                return Err(CliError::Input(format!("cycle notation {token:?} needs a symmetric group")));
            };
            gens.push(symmetric_element(*n, token)?);
        } else {
            let x: usize = token.parse().map_err(|_| CliError::Input(format!("bad subgroup generator {token:?}")))?;
            group.check_index(x)?;
            gens.push(x);
        }
    }
    Ok(subgroup_generate(group, &gens)?)
}

/// Sweep catalog: cyclic, dihedral, `Z_a x Z_b` with `2 <= a <= b`, S3, S4
/// and Q8, orders 5 to `max_order`, without repeated labels.
pub fn sweep_catalog(max_order: usize) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    for n in MIN_GROUP_ORDER..=max_order {
        specs.push(GroupSpec::Cyclic(n));
        if n % 2 == 0 && n >= 6 {
            specs.push(GroupSpec::Dihedral(n));
        }
        for a in 2..=n {
            if n % a == 0 && a <= n / a && n / a >= 2 {
                specs.push(GroupSpec::product(GroupSpec::Cyclic(a), GroupSpec::Cyclic(n / a)));
            }
        }
        match n {
            6 => specs.push(GroupSpec::Symmetric(3)),
            8 => specs.push(GroupSpec::Quaternion),
            24 => specs.push(GroupSpec::Symmetric(4)),
            _ => {}
        }
    }
    let mut seen = BTreeSet::new();
    specs.retain(|s| seen.insert(catalog_group(s).expect("catalog spec builds").label().to_string()));
    specs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub edge_transitive: Vec<String>,
    pub collisions: Vec<String>,
    pub failing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub max_order: usize,
    pub reports: Vec<CertificationReport>,
    pub summary: SweepSummary,
}

fn instance_name(r: &CertificationReport) -> String {
    format!("{} H={:?}", r.group_label, r.subgroup_members)
}

/// Every catalog group of order `5..=max_order` with every nontrivial
/// proper subgroup. Reports keep catalog and subgroup order whatever the
/// worker count.
pub fn sweep(max_order: usize, opts: AnalyzeOptions, workers: usize) -> Result<SweepReport, CliError> {
    if max_order > MAX_SWEEP_ORDER {
        return Err(CliError::Input(format!("--max-order {max_order} is above {MAX_SWEEP_ORDER}")));
    }
    let mut jobs = Vec::new();
    for spec in sweep_catalog(max_order) {
        let g = catalog_group(&spec)?;
        for h in all_subgroups(&g, DEFAULT_ORDER_BOUND)? {
            if !h.is_trivial() && !h.is_whole() {
                jobs.push((g.clone(), h));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let reports: Vec<CertificationReport> =
        pool.install(|| jobs.par_iter().map(|(g, h)| analyze(g, h, opts)).collect::<Result<_, _>>())?;

    let summary = SweepSummary {
        instances: reports.len(),
        pass: reports.iter().filter(|r| r.overall == Overall::Pass).count(),
        fail: reports.iter().filter(|r| r.overall == Overall::Fail).count(),
        edge_transitive: reports
            .iter()
            .filter(|r| r.transitivity.as_ref().is_some_and(|t| t.edge_orbits))
            .map(instance_name)
            .collect(),
        collisions: reports
            .iter()
            .filter_map(|r| {
                let p = r.parameters.as_ref()?;
                (!p.prediction.collisions.is_empty()).then(|| {
                    let values: Vec<String> = p.prediction.collisions.iter().map(|c| c.value.to_string()).collect();
                    format!("{} (collides at {})", instance_name(r), values.join(", "))
                })
            })
            .collect(),
        failing: reports.iter().filter(|r| r.overall == Overall::Fail).map(instance_name).collect(),
    };
    Ok(SweepReport { max_order, reports, summary })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set_text(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn order_text(x: Option<u128>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn render_report(r: &CertificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} / H = {:?}  (|H| = {}, index {}, {})",
        r.group_label,
        r.subgroup_members,
        r.subgroup_order,
        r.index,
        if r.is_normal { "normal" } else { "not normal" }
    );
    if let Some(p) = &r.parameters {
        let a_pred = p.prediction.a.map_or_else(|| "-".to_string(), |a| a.to_string());
        let _ = writeln!(
            out,
            "  case {}: a = {} (observed {}), c-set {} (observed {})",
            p.prediction.case_tag,
            a_pred,
            set_text(&p.profile.a_values),
            set_text(&p.prediction.c_set),
            set_text(&p.profile.c_values)
        );
        for c in &p.prediction.collisions {
            let _ = writeln!(out, "  collision: {} all equal {}", c.terms.join(" and "), c.value);
        }
    }
    if let Some(v) = &r.symmetry {
        let _ = writeln!(
            out,
            "  aut order: predicted {}, generated {}, search {}",
            order_text(v.predicted_full_order),
            v.generated_order,
            order_text(v.bruteforce_order)
        );
    }
    if let Some(t) = &r.transitivity {
        let corollary = match t.corollary {
            CorollaryVerdict::Holds => "holds",
            CorollaryVerdict::NotApplicable { converse_failure: true } => "not applicable (converse fails here)",
            CorollaryVerdict::NotApplicable { converse_failure: false } => "not applicable",
        };
        let _ = writeln!(
            out,
            "  transitivity: vertex {}, edge {}, arc {}, condition {}; corollary {}",
            yes(t.vertex_orbits),
            yes(t.edge_orbits),
            yes(t.arc_orbits),
            yes(t.condition),
            corollary
        );
    }
    if let Some(t) = &r.timing {
        let _ = writeln!(out, "  timing ms: build {}, profile {}, aut {}", t.build_ms, t.profile_ms, t.aut_ms);
    }
    for note in &r.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    let overall = match r.overall {
        Overall::Pass => "PASS",
        Overall::Fail => "FAIL",
        Overall::Degenerate => "DEGENERATE",
    };
    if r.failures.is_empty() {
        let _ = writeln!(out, "  overall {overall}");
    } else {
        let _ = writeln!(out, "  overall {overall}: {}", r.failures.join(", "));
    }
    out
}

pub fn render_summary(s: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:<28} {:<15} {:>3} {:<18} {:>8} {:>3}  result",
        "group", "H", "case", "a", "c-set", "|Aut|", "ET"
    );
    for r in &s.reports {
        let (case, a, cset) = r.parameters.as_ref().map_or_else(
            || ("-".to_string(), "-".to_string(), "-".to_string()),
            |p| (p.prediction.case_tag.to_string(), set_text(&p.profile.a_values), set_text(&p.profile.c_values)),
        );
        let aut = r.symmetry.as_ref().map_or_else(|| "-".to_string(), |v| v.generated_order.to_string());
        let et = r.transitivity.as_ref().map_or("-", |t| yes(t.edge_orbits));
        let result = match r.overall {
            Overall::Pass => "PASS",
            Overall::Fail => "FAIL",
            Overall::Degenerate => "DEGENERATE",
        };
        let _ = writeln!(
            out,
            "{:<10} {:<28} {:<15} {:>3} {:<18} {:>8} {:>3}  {}",
            r.group_label,
            format!("{:?}", r.subgroup_members),
            case,
            a,
            cset,
            aut,
            et,
            result
        );
    }
    let m = &s.summary;
    let _ = writeln!(out, "\n{} instances: {} PASS, {} FAIL", m.instances, m.pass, m.fail);
    let _ = writeln!(
        out,
        "edge-transitive: {}",
        if m.edge_transitive.is_empty() { "none".into() } else { m.edge_transitive.join("; ") }
    );
    let _ = writeln!(
        out,
        "c-set collisions: {}",
        if m.collisions.is_empty() { "none".into() } else { m.collisions.join("; ") }
    );
    for f in &m.failing {
        let _ = writeln!(out, "FAIL {f}");
    }
    out
}

/// Writes `{prefix}.edges` and `{prefix}.table`.
pub fn export(
    group: &FiniteGroup,
    h: &Subgroup,
    prefix: &Path,
    allow_small: bool,
) -> Result<(PathBuf, PathBuf), CliError> {
    let inst = build_gamma(group, h, allow_small)?;
    let edges = with_suffix(prefix, "edges");
    let table = with_suffix(prefix, "table");
    inst.graph().write_edge_list(&edges)?;
    write_table_file(group, &table)?;
    Ok((edges, table))
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

#[derive(Debug, Parser)]
#[command(name = "qsrg", version, about = "Cayley graphs of G x G relative to a subgroup H")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check parameters, automorphism group and transitivity for one (G, H)
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        checks: CheckFlags,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze every catalog group of order 5..=max with each nontrivial proper subgroup
    Sweep {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[command(flatten)]
        checks: CheckFlags,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write all reports as one JSON document here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph edge list and the group table
    Export {
        #[command(flatten)]
        target: Target,
        /// Output prefix; `.edges` and `.table` are appended
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        allow_small: bool,
    },
}

#[derive(Debug, Args)]
pub struct Target {
    /// `cyclic:n`, `dihedral:2n`, `symmetric:n`, `quaternion`, `product(A,B)` or `file:path`
    #[arg(long)]
    pub group: String,
    /// Generators: element indices, or cycles like "(12)" for symmetric groups
    #[arg(long, default_value = "")]
    pub subgroup: String,
}

#[derive(Debug, Args)]
pub struct CheckFlags {
    /// Analyze groups of order below 5
    #[arg(long)]
    pub allow_small: bool,
    #[arg(long, conflicts_with = "force_bruteforce_aut")]
    pub skip_bruteforce_aut: bool,
    /// Run the refinement search even when |G| > 8 (up to 100 vertices)
    #[arg(long)]
    pub force_bruteforce_aut: bool,
    /// Record per-phase wall-clock times in reports
    #[arg(long)]
    pub timing: bool,
}

impl CheckFlags {
    fn options(&self) -> AnalyzeOptions {
        let bruteforce = match (self.skip_bruteforce_aut, self.force_bruteforce_aut) {
            (true, _) => BruteforceLeg::Skip,
            (_, true) => BruteforceLeg::Force,
            _ => BruteforceLeg::Auto,
        };
        AnalyzeOptions { allow_small: self.allow_small, bruteforce, timing: self.timing }
    }
}

fn load_target(t: &Target) -> Result<(FiniteGroup, Subgroup), CliError> {
    let spec: GroupSpec = t.group.parse()?;
    let group = catalog_group(&spec)?;
    let h = parse_subgroup(&spec, &group, &t.subgroup)?;
    Ok((group, h))
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { target, checks, out } => {
            let (group, h) = load_target(&target)?;
            let report = analyze(&group, &h, checks.options())?;
            print!("{}", render_report(&report));
            if let Some(path) = out {
                write_json(&report, &path)?;
            }
            Ok(report.overall.exit_code())
        }
        Command::Sweep { max_order, checks, workers, out } => {
            let report = sweep(max_order, checks.options(), workers)?;
            print!("{}", render_summary(&report));
            if let Some(path) = out {
                write_json(&report, &path)?;
            }
            Ok(if report.summary.fail > 0 { 1 } else { 0 })
        }
        Command::Export { target, out, allow_small } => {
            let (group, h) = load_target(&target)?;
            let (edges, table) = export(&group, &h, &out, allow_small)?;
            println!("wrote {} and {}", edges.display(), table.display());
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
