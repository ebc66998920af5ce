//! Batch commands and their reports.
//!
//! Every command builds a [`Report`]: pass/fail checks plus display tables,
//! rendered as JSON (the schema in `schema/report.schema.json`) or markdown.
//! Reports hold no timings or paths, so equal configurations give equal
//! output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::deform::{self, DeformError};
use crate::enumerate::{self, EnumError, Presentation};
use crate::farey::{self, FareyError, Slope};
use crate::kernels::{self, KernelError};
use crate::reps::{self, Builtin, RepError, RepRecord};
use crate::words::{conjugate_test, Word};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_COSET_LIMIT: usize = 100_000;
pub const DEFAULT_SLOPE_BUDGET: usize = 6;
/// Elements enumerated before an image counts as infinite; the largest
/// finite builtin image has 343 elements.
pub const DEFAULT_CLI_IMAGE_BOUND: usize = 20_000;
/// Probe words when comparing kernels of two reps.
pub const KERNEL_PROBES: usize = 200;
/// Random words per multitwist check.
pub const MULTITWIST_SAMPLES: usize = 50;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for usage errors, 1 for anything that stopped a
    /// check from completing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "primpow",
    version,
    about = "Finite quotients, representations and kernel lattices for the groups F2/P_k"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT, global = true)]
    pub coset_limit: usize,
    /// Slopes added per round when solving for `P_k`-killing lifts.
    #[arg(long, default_value_t = DEFAULT_SLOPE_BUDGET, global = true)]
    pub slope_budget: usize,
    #[arg(long, default_value_t = DEFAULT_CLI_IMAGE_BOUND, global = true)]
    pub image_bound: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Normal generators of P_k from the quotient of the Farey complex.
    Generators {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = farey::DEFAULT_RADIUS)]
        radius: u32,
    },
    /// Run a suite of checks.
    Verify {
        /// all, rep:<name>, faithful-p4, k-odd:<k>, k6 or quotients.
        #[arg(long, default_value = "all")]
        scope: String,
    },
    /// Extend a rep by the invariant lifts that kill P_k.
    Improve {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        k: u32,
    },
}

/// The suites reachable through `verify --scope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Rep(Builtin),
    FaithfulP4,
    OddK(u32),
    K6,
    Quotients,
}

impl std::str::FromStr for Scope {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Scope, CliError> {
        match s.split_once(':') {
            Some(("rep", name)) => Ok(Scope::Rep(
                name.parse().map_err(|e: RepError| CliError::Usage(e.to_string()))?,
            )),
            Some(("k-odd", k)) => match k.parse::<u32>() {
                Ok(k) if k >= 5 && k % 2 == 1 => Ok(Scope::OddK(k)),
                _ => Err(CliError::Usage(format!("k-odd needs an odd k >= 5, got `{k}`"))),
            },
            None => match s {
                "all" => Ok(Scope::All),
                "faithful-p4" => Ok(Scope::FaithfulP4),
                "k6" => Ok(Scope::K6),
                "quotients" => Ok(Scope::Quotients),
                _ => Err(CliError::Usage(format!("unknown scope `{s}`"))),
            },
            _ => Err(CliError::Usage(format!("unknown scope `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
}

impl Check {
    pub fn new(name: impl Into<String>, computed: impl ToString, expected: impl ToString, pass: bool) -> Check {
        Check {
            name: name.into(),
            pass,
            computed: computed.to_string(),
            expected: expected.to_string(),
        }
    }

    /// Passes when the two displays agree.
    pub fn equal(name: impl Into<String>, computed: impl ToString, expected: impl ToString) -> Check {
        let (c, e) = (computed.to_string(), expected.to_string());
        let pass = c == e;
        Check::new(name, c, e, pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    /// Reps produced by the run, in the catalogue's serialized form.
    pub reps: Vec<RepRecord>,
}

impl Report {
    fn new(command: impl Into<String>, seed: u64) -> Report {
        Report {
            command: command.into(),
            seed,
            passed: true,
            checks: Vec::new(),
            tables: Vec::new(),
            reps: Vec::new(),
        }
    }

    fn check(&mut self, c: Check) {
        self.passed &= c.pass;
        self.checks.push(c);
    }

    fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.check(c);
        }
        self.tables.extend(other.tables);
        self.reps.extend(other.reps);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "# {}\n\nseed {}, {status}\n", self.command, self.seed);
        if !self.checks.is_empty() {
            s.push_str("| check | result | computed | expected |\n|---|---|---|---|\n");
            for c in &self.checks {
                let r = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "| {} | {r} | {} | {} |",
                    cell(&c.name),
                    cell(&c.computed),
                    cell(&c.expected)
                );
            }
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n## {}\n", t.title);
            let _ = writeln!(s, "| {} |", t.columns.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(t.columns.len()));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|c| cell(c)).collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
        }
        for r in &self.reps {
            let _ = writeln!(s, "\n## rep {}\n\ndimension {}, conductor {}", r.name, r.n, r.conductor);
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Parses arguments, runs the command, writes the report and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&config).and_then(|r| emit(&config, &r).map(|_| r)) {
        Ok(r) => i32::from(!r.passed),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, report: &Report) -> Result<(), CliError> {
    let text = report.render(config.format);
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Validates the configuration, then runs the command.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    if config.coset_limit == 0 || config.slope_budget == 0 || config.image_bound == 0 {
        return Err(CliError::Usage("limits and budgets must be positive".into()));
    }
    match &config.command {
        Command::Generators { k, radius } => cmd_generators(*k, *radius, config.seed),
        Command::Verify { scope } => cmd_verify(&scope.parse()?, config),
        Command::Improve { rep, k } => {
            let b: Builtin = rep.parse().map_err(|e: RepError| CliError::Usage(e.to_string()))?;
            if *k < 2 {
                return Err(CliError::Usage(format!("k must be at least 2, got {k}")));
            }
            cmd_improve(b, *k, config)
        }
    }
}

/// Conjugate to `v` or to `v⁻¹`.
fn matches_up_to_inversion(u: &Word, v: &Word) -> bool {
    conjugate_test(u, v) || conjugate_test(u, &v.inv())
}

pub fn cmd_generators(k: u32, radius: u32, seed: u64) -> Result<Report, CliError> {
    if k < 2 {
        return Err(CliError::Usage(format!("k must be at least 2, got {k}")));
    }
    let mut report = Report::new(format!("generators --k {k} --radius {radius}"), seed);
    let gens = farey::normal_generators(k, radius)?;
    let reference = farey::reference_generators(k);
    let mut columns = vec!["slope", "generator"];
    if reference.is_some() {
        columns.extend(["reference", "match"]);
    }
    let mut table = Table::new(format!("normal generators of P_{k}"), &columns);
    for g in &gens {
        let mut row = vec![g.slope.to_string(), format!("({})^{}", g.base, g.power)];
        if let Some(refs) = &reference {
            let hit = refs.iter().find(|(s, _)| *s == g.slope);
            let ok = hit.is_some_and(|(_, w)| matches_up_to_inversion(&g.base, w));
            row.push(hit.map_or("-".into(), |(_, w)| format!("({w})^{k}")));
            row.push(ok.to_string());
            report.check(Check::new(
                format!("slope {} matches the table up to conjugacy and inversion", g.slope),
                &g.base,
                hit.map_or("no entry".into(), |(_, w)| w.to_string()),
                ok,
            ));
        }
        table.push(row);
    }
    if let Some(refs) = &reference {
        report.check(Check::equal("generator count", gens.len(), refs.len()));
    } else {
        let complex = farey::quotient_complex(k, radius)?;
        report.check(Check::new(
            format!("finite patch of radius {radius}"),
            format!("{} generators, {} vertices", gens.len(), complex.vertex_count()),
            "a nonempty patch",
            !gens.is_empty(),
        ));
    }
    report.tables.push(table);
    Ok(report)
}

pub fn cmd_verify(scope: &Scope, config: &RunConfig) -> Result<Report, CliError> {
    let seed = config.seed;
    match scope {
        Scope::All => {
            let mut report = Report::new("verify --scope all", seed);
            report.extend(verify_quotients(config)?);
            for b in Builtin::catalogue() {
                report.extend(verify_rep(b, config)?);
            }
            for k in [5, 7] {
                report.extend(verify_odd(k, config)?);
            }
            report.extend(verify_k6(config)?);
            report.extend(verify_faithful(seed)?);
            Ok(report)
        }
        Scope::Rep(b) => verify_rep(*b, config),
        Scope::FaithfulP4 => verify_faithful(seed),
        Scope::OddK(k) => verify_odd(*k, config),
        Scope::K6 => verify_k6(config),
        Scope::Quotients => verify_quotients(config),
    }
}

fn verify_quotients(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new("verify --scope quotients", config.seed);
    let mut table = Table::new("finite quotients F2/P_k", &["k", "coset enumeration", "matrix image"]);
    for (k, b, order) in [(2, Builtin::Rho2, 4), (3, Builtin::RhoOdd(3), 27)] {
        let enumerated = enumerate::group_order(&enumerate::power_quotient(k), config.coset_limit)?;
        let image = reps::image_closure(&b.rep(), config.image_bound)?.order();
        report.check(Check::equal(
            format!("|F2/P_{k}| by coset enumeration"),
            enumerated,
            order,
        ));
        report.check(Check::equal(format!("|{b}(F2)|"), image, order));
        table.push(vec![k.to_string(), enumerated.to_string(), image.to_string()]);
    }
    let c = Word::commutator(&Word::a(), &Word::b());
    let heisenberg = Presentation::new(vec![
        Word::a().pow(3),
        Word::b().pow(3),
        c.pow(3),
        Word::commutator(&Word::a(), &c),
        Word::commutator(&Word::b(), &c),
    ])?;
    let iso = enumerate::iso_order_exponent_check(&enumerate::power_quotient(3), &heisenberg, config.coset_limit)?;
    report.check(Check::new(
        "F2/P_3 has the invariants of the Heisenberg group mod 3",
        iso,
        true,
        iso,
    ));
    let p4 = enumerate::todd_coxeter(&enumerate::power_quotient(4), config.coset_limit);
    let overflow = matches!(p4, Err(EnumError::Overflow { .. }));
    let shown = match &p4 {
        Ok(t) => format!("order {}", t.order()),
        Err(e) => e.to_string(),
    };
    table.push(vec!["4".into(), shown.clone(), "infinite".into()]);
    report.check(Check::new(
        format!(
            "P_4 enumeration overflows at {} cosets (not a proof of infiniteness)",
            config.coset_limit
        ),
        shown,
        "overflow",
        overflow,
    ));
    report.tables.push(table);
    Ok(report)
}

fn verify_rep(b: Builtin, config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(format!("verify --scope rep:{b}"), config.seed);
    let rep = b.rep();
    let witness = b.witness();
    let check = reps::check_characteristic(&rep, &witness);
    let failures: Vec<String> = check.failures.iter().map(|f| f.to_string()).collect();
    report.check(Check::new(
        format!("{b} passes the characteristic criterion"),
        if failures.is_empty() {
            "all equations hold".into()
        } else {
            failures.join("; ")
        },
        "all equations hold",
        check.passed(),
    ));
    let k = b.power();
    if check.passed() {
        let contains = reps::kernel_contains_pk(&rep, &witness, k, config.seed)?;
        report.check(Check::new(format!("P_{k} lies in ker {b}"), contains, true, contains));
    }
    if let Builtin::RhoOdd(k) = b {
        let c = rep.evaluate(&Word::commutator(&Word::a(), &Word::b()));
        let expected =
            crate::cyclotomic::CycMatrix::identity(k as usize, k).scale(&crate::cyclotomic::CycNum::zeta_pow(k, -1));
        let ok = c.same_value(&expected);
        report.check(Check::new(
            format!("{b}([a,b]) = w^-1 I"),
            if ok { "w^-1 I" } else { "a different matrix" },
            "w^-1 I",
            ok,
        ));
    }
    let slope = Slope::new(1, 1)?;
    if rep
        .evaluate(&farey::primitive_word(&slope).pow(i64::from(k)))
        .is_identity()
    {
        let ok = reps::multitwist_check(&rep, &slope, i64::from(k), MULTITWIST_SAMPLES, config.seed)?;
        report.check(Check::new(
            format!("multitwist at slope 1 acts trivially on {b}"),
            ok,
            true,
            ok,
        ));
    }
    let image = match reps::image_closure(&rep, config.image_bound) {
        Ok(img) => img.order().to_string(),
        Err(RepError::Overflow { .. }) => format!("more than {}", config.image_bound),
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(format!("{b}"), &["dimension", "conductor", "P_k", "image order"]);
    table.push(vec![
        rep.dim().to_string(),
        rep.conductor().to_string(),
        k.to_string(),
        image,
    ]);
    report.tables.push(table);
    Ok(report)
}

fn verify_odd(k: u32, config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(format!("verify --scope k-odd:{k}"), config.seed);
    let eig = deform::eigen_split(k)?;
    let mut table = Table::new(
        format!("eigen-analysis of N1^2 for rho_odd:{k}"),
        &["item", "eigenvalue", "pass"],
    );
    for item in &eig.items {
        table.push(vec![
            item.label.clone(),
            item.expected_eigenvalue.to_string(),
            item.pass.to_string(),
        ]);
        report.check(Check::new(
            format!("k = {k}: {}", item.label),
            item.pass,
            true,
            item.pass,
        ));
    }
    report.check(Check::equal(
        format!("k = {k}: +{k} eigenspace dimension"),
        eig.plus_dim,
        (k - 3) / 2,
    ));
    report.check(Check::new(
        format!("k = {k}: +{k} eigenspace is spanned by the extension columns"),
        eig.plus_space_is_extension_span,
        true,
        eig.plus_space_is_extension_span,
    ));
    report.tables.push(table);
    let lattice = kernels::conjugate_orbit_lattice(
        &Builtin::RhoOdd(k).rep(),
        &Builtin::TildeRhoOdd(k).rep(),
        &[kernels::odd_kernel_word()],
        config.image_bound,
    )?;
    report.check(Check::equal(
        format!("rank of trho_odd:{k}(ker rho_odd:{k})"),
        lattice.rank(),
        kernels::odd_rank_formula(k),
    ));
    report.extend(verify_rep(Builtin::TildeRhoOdd(k), config)?);
    Ok(report)
}

fn verify_k6(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new("verify --scope k6", config.seed);
    let rels = kernels::kernel_normal_generators(Builtin::Rho6).expect("finite image");
    let seq = kernels::exact_sequence_report(
        &Builtin::Rho6.rep(),
        &Builtin::TildeRho6.rep(),
        &rels,
        config.image_bound,
    )?;
    report.check(Check::equal("|rho6(F2)|", display_order(seq.base_order), 108));
    report.check(Check::equal("rank of trho6(ker rho6)", seq.rank, 18));
    report.extend(verify_rep(Builtin::Rho6, config)?);
    report.extend(verify_rep(Builtin::TildeRho6, config)?);
    Ok(report)
}

fn display_order(o: Option<usize>) -> String {
    o.map_or("infinite or past the bound".into(), |n| n.to_string())
}

fn verify_faithful(seed: u64) -> Result<Report, CliError> {
    let mut report = Report::new("verify --scope faithful-p4", seed);
    let chain = kernels::verify_faithful_p4()?;
    for s in &chain.steps {
        report.check(Check::new(
            format!("({}) {}", s.step, s.claim),
            &s.computed,
            &s.expected,
            s.pass,
        ));
    }
    let mut table = Table::new(
        "exact sequences",
        &["base", "extension", "base image", "rank", "method"],
    );
    let cases = [
        (
            Builtin::Rho4.rep(),
            Builtin::TildeRho4.rep(),
            kernels::kernel_normal_generators(Builtin::Rho4).expect("finite image"),
            DEFAULT_CLI_IMAGE_BOUND,
        ),
        (
            kernels::trho4_prime(),
            Builtin::TildeTildeRho4.rep(),
            kernels::trho4_image_relators()?,
            2_000,
        ),
    ];
    for (base, ext, rels, bound) in cases {
        let seq = kernels::exact_sequence_report(&base, &ext, &rels, bound)?;
        table.push(vec![
            seq.base.clone(),
            seq.ext.clone(),
            display_order(seq.base_order),
            seq.rank.to_string(),
            format!("{:?}", seq.method),
        ]);
    }
    report.tables.push(table);
    Ok(report)
}

/// The builtin the improvement is expected to reproduce, if any.
fn improvement_target(b: Builtin) -> Option<Builtin> {
    match b {
        Builtin::RhoOdd(k) if k >= 5 => Some(Builtin::TildeRhoOdd(k)),
        Builtin::Rho4 => Some(Builtin::TildeRho4),
        _ => None,
    }
}

pub fn cmd_improve(b: Builtin, k: u32, config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(
        format!("improve --rep {b} --k {k} --slope-budget {}", config.slope_budget),
        config.seed,
    );
    let base = b.rep();
    let out = deform::improve(&base, &b.witness(), k, config.slope_budget)?;
    let mut table = Table::new(
        format!("improvement of {b}"),
        &[
            "base dimension",
            "translations",
            "solution dimensions by round",
            "certified slopes",
            "invariant dimension",
            "new dimension",
        ],
    );
    table.push(vec![
        base.dim().to_string(),
        out.subspace.translation_dim.to_string(),
        format!("{:?}", out.subspace.dims_by_round),
        out.subspace.certified_budget.to_string(),
        out.invariant_basis.len().to_string(),
        out.rep.dim().to_string(),
    ]);
    report.tables.push(table);
    if out.invariant_basis.is_empty() {
        report.check(Check::new(
            "invariant subspace",
            "empty, nothing to add",
            "reported",
            true,
        ));
        return Ok(report);
    }
    let witness_ok = reps::check_characteristic(&out.rep, &out.witness).passed();
    report.check(Check::new(
        "solved witness for the extension",
        witness_ok,
        true,
        witness_ok,
    ));
    if let Some(target) = improvement_target(b).filter(|_| k == b.power()) {
        let probes = deform::kernel_probe_words(k, KERNEL_PROBES, config.seed);
        let same = deform::same_kernel_on(&out.rep, &target.rep(), &probes);
        report.check(Check::new(
            format!("same kernel as {target} on {KERNEL_PROBES} probe words"),
            same,
            true,
            same,
        ));
        report.check(Check::equal(
            format!("dimension matches {target}"),
            out.rep.dim(),
            target.rep().dim(),
        ));
    }
    report.reps.push(out.rep.to_record());
    Ok(report)
}
