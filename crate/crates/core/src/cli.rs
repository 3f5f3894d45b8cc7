//! Batch front-end: single classifications, enumeration of `A`, existence
//! queries, sweeps over a grid and the verification suites.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{classify, enumerate_good_a, exists, Class, Classification};
use crate::error::{Error, Result};
use crate::matching::InjectionWitness;
use crate::nabla::CostandardModel;
use crate::report::CheckReport;
use crate::seq_graph::{sequence_vanishes, Quad, SeqX};
use crate::verify::{self, GridSpec};
use crate::weights::{join, open_interval, BranchingPair, IndexSet};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lowering",
    version,
    about = "Vanishing and high-weight tests for lowering operators on costandard modules"
)]
pub struct Cli {
    /// TOML file with defaults for any flag; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify `S_{i,j}(A) f_{μ,λ}` for one case.
    Classify(CaseArgs),
    /// Classify every `A ⊆ (i..j)`.
    Enumerate(CaseArgs),
    /// Find a set `A` giving a non-zero high weight vector, if any.
    Exists(CaseArgs),
    /// Classify every case of a generated grid.
    Sweep(GridArgs),
    /// Cross-check the criteria against the sequence graph and the explicit model.
    Verify(GridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Criteria only (sweep default).
    Criteria,
    /// Criteria plus per-record cross-check flags (sweep).
    Checked,
    /// Every verification suite (verify default).
    All,
    Agreement,
    Raised,
    Existence,
    Symbolic,
    Identities,
    Structural,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CaseArgs {
    #[arg(long)]
    pub p: Option<u64>,
    /// Comma-separated, e.g. `2,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Comma-separated elements of `A`; empty for `∅`.
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Primes, comma-separated.
    #[arg(long)]
    pub p: Option<String>,
    /// Values of `n`, comma-separated.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub max_lambda1: Option<i64>,
    #[arg(long)]
    pub max_size: Option<i64>,
    /// Largest `j − i` in the symbolic suite.
    #[arg(long)]
    pub max_gap: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// One value or a list, as TOML allows either for `p` and `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

/// Contents of a `--config` file; keys mirror the flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<OneOrMany<u64>>,
    pub lambda: Option<Vec<i64>>,
    pub mu: Option<Vec<i64>>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    #[serde(rename = "A")]
    pub a: Option<Vec<usize>>,
    pub n: Option<OneOrMany<usize>>,
    pub max_lambda1: Option<i64>,
    pub max_size: Option<i64>,
    pub max_gap: Option<usize>,
    pub mode: Option<Mode>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Error::input(format!("bad config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub lambda: Option<Vec<i64>>,
    pub mu: Option<Vec<i64>>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub a: IndexSet,
    pub ns: Vec<usize>,
    pub max_lambda1: i64,
    pub max_size: i64,
    pub max_gap: usize,
    pub mode: Option<Mode>,
    pub workers: usize,
    /// Records default to JSON; the verify summary defaults to text.
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub inject_fault: bool,
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::input(format!("cannot parse {what} entry {t:?}")))
        })
        .collect()
}

impl RunConfig {
    fn defaults(file: FileConfig) -> Self {
        let standard = GridSpec::standard();
        RunConfig {
            primes: file.p.map_or(standard.primes, |p| p.to_vec()),
            lambda: file.lambda,
            mu: file.mu,
            i: file.i,
            j: file.j,
            a: file.a.unwrap_or_default().into_iter().collect(),
            ns: file.n.map_or(standard.ns, |n| n.to_vec()),
            max_lambda1: file.max_lambda1.unwrap_or(standard.max_lambda1),
            max_size: file.max_size.unwrap_or(standard.max_size),
            max_gap: file.max_gap.unwrap_or(6),
            mode: file.mode,
            workers: file.workers.unwrap_or(1),
            format: file.format,
            out: file.out,
            inject_fault: false,
        }
    }

    fn apply_output(&mut self, o: &OutputArgs) {
        if let Some(f) = o.format {
            self.format = Some(f);
        }
        if let Some(out) = &o.out {
            self.out = Some(out.clone());
        }
    }

    pub fn from_case(file: FileConfig, args: &CaseArgs) -> Result<Self> {
        let mut cfg = RunConfig::defaults(file);
        if let Some(p) = args.p {
            cfg.primes = vec![p];
        }
        if let Some(l) = &args.lambda {
            cfg.lambda = Some(parse_list("lambda", l)?);
        }
        if let Some(m) = &args.mu {
            cfg.mu = Some(parse_list("mu", m)?);
        }
        cfg.i = args.i.or(cfg.i);
        cfg.j = args.j.or(cfg.j);
        if let Some(a) = &args.a {
            cfg.a = parse_list("A", a)?.into_iter().collect();
        }
        cfg.apply_output(&args.output);
        Ok(cfg)
    }

    pub fn from_grid(file: FileConfig, args: &GridArgs) -> Result<Self> {
        let mut cfg = RunConfig::defaults(file);
        if let Some(p) = &args.p {
            cfg.primes = parse_list("p", p)?;
        }
        if let Some(n) = &args.n {
            cfg.ns = parse_list("n", n)?;
        }
        cfg.max_lambda1 = args.max_lambda1.unwrap_or(cfg.max_lambda1);
        cfg.max_size = args.max_size.unwrap_or(cfg.max_size);
        cfg.max_gap = args.max_gap.unwrap_or(cfg.max_gap);
        cfg.mode = args.mode.or(cfg.mode);
        cfg.workers = args.workers.unwrap_or(cfg.workers);
        cfg.inject_fault = args.inject_fault;
        cfg.apply_output(&args.output);
        if cfg.primes.is_empty() || cfg.ns.is_empty() {
            return Err(Error::input("p and n ranges must be non-empty"));
        }
        if cfg.workers == 0 {
            return Err(Error::input("workers must be at least 1"));
        }
        Ok(cfg)
    }

    fn pair(&self) -> Result<BranchingPair> {
        let p = match self.primes.as_slice() {
            [p] => *p,
            _ => return Err(Error::input("exactly one prime p is required")),
        };
        let lambda = self
            .lambda
            .clone()
            .ok_or_else(|| Error::input("--lambda is required"))?;
        let mu = self
            .mu
            .clone()
            .ok_or_else(|| Error::input("--mu is required"))?;
        BranchingPair::new(p, lambda, mu)
    }

    fn ij(&self) -> Result<(usize, usize)> {
        match (self.i, self.j) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(Error::input("--i and --j are required")),
        }
    }

    fn grid_spec(&self) -> GridSpec {
        GridSpec {
            primes: self.primes.clone(),
            ns: self.ns.clone(),
            max_lambda1: self.max_lambda1,
            max_size: self.max_size,
        }
    }
}

/// One classified case. `checks` is present only when cross-checks ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub p: u64,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub i: usize,
    pub j: usize,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub class: Class,
    pub nu: Option<Vec<i64>>,
    pub witness_d: Option<BTreeMap<usize, usize>>,
    pub witness_eps: Option<BTreeMap<usize, usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness_theta: Vec<(usize, BTreeMap<usize, usize>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<BTreeMap<String, bool>>,
}

impl ResultRecord {
    pub fn new(pair: &BranchingPair, i: usize, j: usize, a: &IndexSet, c: &Classification) -> Self {
        ResultRecord {
            p: pair.p(),
            lambda: pair.lambda().to_vec(),
            mu: pair.mu().to_vec(),
            i,
            j,
            a: a.iter().copied().collect(),
            class: c.class,
            nu: c.nu.clone(),
            witness_d: c.d.as_ref().map(|w| w.map.clone()),
            witness_eps: None,
            witness_theta: c.thetas.iter().map(|(k, w)| (*k, w.map.clone())).collect(),
            checks: None,
        }
    }

    pub const CSV_HEADER: [&'static str; 11] = [
        "p",
        "lambda",
        "mu",
        "i",
        "j",
        "A",
        "class",
        "nu",
        "witness_d",
        "witness_eps",
        "checks",
    ];

    pub fn csv_row(&self) -> [String; 11] {
        let map = |m: &Option<BTreeMap<usize, usize>>| {
            m.as_ref().map_or(String::new(), |m| {
                m.iter()
                    .map(|(s, t)| format!("{s}->{t}"))
                    .collect::<Vec<_>>()
                    .join(";")
            })
        };
        [
            self.p.to_string(),
            join(&self.lambda),
            join(&self.mu),
            self.i.to_string(),
            self.j.to_string(),
            join(&self.a),
            self.class.to_string(),
            self.nu.as_deref().map_or(String::new(), join),
            map(&self.witness_d),
            map(&self.witness_eps),
            self.checks.as_ref().map_or(String::new(), |c| {
                c.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";")
            }),
        ]
    }
}

fn check_witness(
    pair: &BranchingPair,
    i: usize,
    j: usize,
    a: &IndexSet,
    c: &Classification,
) -> Result<()> {
    let Some(d) = &c.d else { return Ok(()) };
    let sources: IndexSet = open_interval(i, j).difference(a).copied().collect();
    let covers = pair.b_lambda_set(i, j)?.is_subset(&d.image());
    let valid = d.is_valid_for(&sources, &open_interval(i, j), |s, t| {
        pair.b_lambda(s, t).map(|r| r.is_zero()).unwrap_or(false)
    });
    if covers && valid {
        Ok(())
    } else {
        Err(Error::internal(format!(
            "witness d = {:?} does not re-validate",
            d.map
        )))
    }
}

fn classified(pair: &BranchingPair, i: usize, j: usize, a: &IndexSet) -> Result<ResultRecord> {
    let c = classify(pair, i, j, a)?;
    check_witness(pair, i, j, a, &c)?;
    Ok(ResultRecord::new(pair, i, j, a, &c))
}

fn eps_valid(w: &InjectionWitness, a: &IndexSet, i: usize, j: usize) -> bool {
    let image = w.image();
    image.len() == w.map.len()
        && image.is_disjoint(a)
        && image.iter().chain(a).all(|&t| i < t && t < j)
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<Vec<ResultRecord>> {
    let pair = cfg.pair()?;
    let (i, j) = cfg.ij()?;
    Ok(vec![classified(&pair, i, j, &cfg.a)?])
}

pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Vec<ResultRecord>> {
    let pair = cfg.pair()?;
    let (i, j) = cfg.ij()?;
    enumerate_good_a(&pair, i, j)?
        .into_iter()
        .map(|(a, c)| {
            check_witness(&pair, i, j, &a, &c)?;
            Ok(ResultRecord::new(&pair, i, j, &a, &c))
        })
        .collect()
}

/// Zero records when no good `A` exists.
pub fn cmd_exists(cfg: &RunConfig) -> Result<Vec<ResultRecord>> {
    let pair = cfg.pair()?;
    let (i, j) = cfg.ij()?;
    let Some(w) = exists(&pair, i, j)? else {
        return Ok(Vec::new());
    };
    if !eps_valid(&w.eps, &w.a, i, j) {
        return Err(Error::internal(format!(
            "witness ε = {:?} does not re-validate",
            w.eps.map
        )));
    }
    let mut rec = classified(&pair, i, j, &w.a)?;
    rec.witness_eps = Some(w.eps.map);
    Ok(vec![rec])
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::internal(format!("worker pool: {e}")))
}

/// Every case of the grid in canonical order; with `Mode::Checked` each
/// record carries agreement flags against the sequence graph and the model.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<ResultRecord>> {
    let checked = match cfg.mode.unwrap_or(Mode::Criteria) {
        Mode::Criteria => false,
        Mode::Checked => true,
        other => {
            return Err(Error::input(format!(
                "sweep does not support mode {other:?}"
            )))
        }
    };
    let pairs = verify::grid(&cfg.grid_spec())?;
    let parts: Vec<Result<Vec<ResultRecord>>> = pool(cfg.workers)?.install(|| {
        pairs
            .par_iter()
            .map(|pair| {
                let model = if checked {
                    Some(CostandardModel::build(pair.p(), pair.lambda())?)
                } else {
                    None
                };
                let f = model.as_ref().map(|m| m.find_f_mu(pair.mu())).transpose()?;
                let mut out = Vec::new();
                for (i, j, a) in verify::cases(pair.n()) {
                    let mut rec = classified(pair, i, j, &a)?;
                    if let (Some(model), Some(f)) = (&model, &f) {
                        let oracle = model.classify_vector(&model.apply_s(i, j, &a, f)?);
                        let x = SeqX::single(Quad::new(i, j, j, a.iter().copied()));
                        let seq_zero = sequence_vanishes(pair, &x)?;
                        rec.checks = Some(BTreeMap::from([
                            (
                                "nabla".to_string(),
                                oracle.class == rec.class
                                    && (rec.class != Class::NonzeroHighWeight
                                        || oracle.nu == rec.nu),
                            ),
                            (
                                "sequences".to_string(),
                                seq_zero == (rec.class == Class::Zero),
                            ),
                        ]));
                    }
                    out.push(rec);
                }
                Ok(out)
            })
            .collect()
    });
    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all)
}

/// Per-suite reports, in a fixed order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub pairs: usize,
    pub by_class: BTreeMap<String, usize>,
    pub suites: Vec<(String, CheckReport)>,
}

impl VerifySummary {
    pub fn disagreements(&self) -> usize {
        self.suites.iter().map(|(_, r)| r.failures.len()).sum()
    }

    pub fn is_ok(&self) -> bool {
        self.disagreements() == 0
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifySummary> {
    let mode = cfg.mode.unwrap_or(Mode::All);
    let want = |m: Mode| mode == Mode::All || mode == m;
    if matches!(mode, Mode::Criteria | Mode::Checked) {
        return Err(Error::input(format!(
            "verify does not support mode {mode:?}"
        )));
    }
    let pairs = verify::grid(&cfg.grid_spec())?;
    let mut summary = VerifySummary {
        pairs: pairs.len(),
        ..Default::default()
    };
    for pair in &pairs {
        for (i, j, a) in verify::cases(pair.n()) {
            *summary
                .by_class
                .entry(classify(pair, i, j, &a)?.class.to_string())
                .or_default() += 1;
        }
    }
    let w = cfg.workers;
    let fault = cfg.inject_fault;
    if want(Mode::Agreement) {
        let r = verify::run_grid(&pairs, w, |m, p, idx| {
            verify::agreement(m, p, fault && idx == 0)
        })?;
        summary.suites.push(("agreement".into(), r));
    }
    if want(Mode::Raised) {
        let r = verify::run_grid(&pairs, w, |m, p, _| verify::raised_agreement(m, p))?;
        summary.suites.push(("raised".into(), r));
    }
    if want(Mode::Existence) {
        let r = verify::run_grid(&pairs, w, |m, p, _| verify::existence(m, p))?;
        summary.suites.push(("existence".into(), r));
    }
    if want(Mode::Symbolic) {
        let r = pool(w)?.install(|| verify::symbolic_suite(2, cfg.max_gap))?;
        summary.suites.push(("symbolic".into(), r));
    }
    if want(Mode::Identities) {
        let r = verify::run_grid(&pairs, w, |m, p, _| {
            let mut r = verify::identity_suite(m, p, 2)?;
            if p.mu() == verify::interlacing(p.lambda())[0].as_slice() {
                r.merge(verify::commutation_suite(m, 2));
            }
            Ok(r)
        })?;
        summary.suites.push(("identities".into(), r));
    }
    if want(Mode::Structural) {
        let r = verify::run_grid(&pairs, w, |m, p, _| {
            let mut r = CheckReport::default();
            if p.mu() == verify::interlacing(p.lambda())[0].as_slice() {
                r.merge(verify::branching_dimensions(m)?);
            }
            r.merge(verify::split_point_sets(p)?);
            r.merge(verify::pi_equivalence(p)?);
            r.merge(verify::shift_invariance(p, &[1, 2, 3])?);
            Ok(r)
        })?;
        summary.suites.push(("structural".into(), r));
    }
    Ok(summary)
}

fn suite_line(name: &str, r: &CheckReport) -> String {
    match name {
        "symbolic" => format!(
            "k_poly_def==k_poly_rec: {} ({r})",
            if r.is_ok() { "pass" } else { "FAIL" }
        ),
        _ => format!("{name}: {r}"),
    }
}

pub fn render_summary(s: &VerifySummary, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(s).map_err(|e| Error::internal(e.to_string())),
        Format::Csv => Err(Error::input("verify writes text or json, not csv")),
    }
}

fn render_text(s: &VerifySummary) -> String {
    let mut out = format!("pairs: {}\n", s.pairs);
    for (class, count) in &s.by_class {
        out += &format!("{class}: {count}\n");
    }
    for (name, r) in &s.suites {
        out += &suite_line(name, r);
        out.push('\n');
    }
    out += &format!("{} disagreements\n", s.disagreements());
    out
}

pub fn render_records(records: &[ResultRecord], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                out += &serde_json::to_string(r).map_err(|e| Error::internal(e.to_string()))?;
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Error::internal(e.to_string());
            w.write_record(ResultRecord::CSV_HEADER).map_err(io_err)?;
            for r in records {
                w.write_record(r.csv_row()).map_err(io_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))
        }
    }
}

/// JSON-lines records back into values.
pub fn parse_records(text: &str) -> Result<Vec<ResultRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::input(format!("bad record: {e}"))))
        .collect()
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::internal(e.to_string())),
    }
}

fn write_records(cfg: &RunConfig, records: &[ResultRecord]) -> Result<u8> {
    emit(
        cfg,
        &render_records(records, cfg.format.unwrap_or(Format::Json))?,
    )?;
    Ok(EXIT_OK)
}

fn run_inner(cli: &Cli) -> Result<u8> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match &cli.command {
        Command::Classify(a) => {
            let cfg = RunConfig::from_case(file, a)?;
            write_records(&cfg, &cmd_classify(&cfg)?)
        }
        Command::Enumerate(a) => {
            let cfg = RunConfig::from_case(file, a)?;
            write_records(&cfg, &cmd_enumerate(&cfg)?)
        }
        Command::Exists(a) => {
            let cfg = RunConfig::from_case(file, a)?;
            let recs = cmd_exists(&cfg)?;
            if recs.is_empty() {
                eprintln!("no good set A");
            }
            write_records(&cfg, &recs)
        }
        Command::Sweep(g) => {
            let cfg = RunConfig::from_grid(file, g)?;
            write_records(&cfg, &cmd_sweep(&cfg)?)
        }
        Command::Verify(g) => {
            let cfg = RunConfig::from_grid(file, g)?;
            let summary = cmd_verify(&cfg)?;
            let text = match cfg.format {
                Some(f) => render_summary(&summary, f)?,
                None => render_text(&summary),
            };
            emit(&cfg, &text)?;
            match summary.suites.iter().flat_map(|(_, r)| &r.failures).next() {
                Some(first) => {
                    let json =
                        serde_json::to_string(first).map_err(|e| Error::internal(e.to_string()))?;
                    eprintln!("{json}");
                    Ok(EXIT_VERIFY)
                }
                None => Ok(EXIT_OK),
            }
        }
    }
}

/// Parses arguments, runs the command and maps errors to exit codes.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_inner(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => EXIT_VERIFY,
                _ => EXIT_USAGE,
            }
        }
    }
}
