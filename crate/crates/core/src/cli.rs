//! Command layer behind the `pmcg` binary: typed commands, a structured
//! output document, text/JSON/CSV rendering, and an append-only result cache.
//!
//! Every JSON document has the shape
//! `{"command": ..., "params": {...}, "result": {...}, "version": ...}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write as _};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cohomology::{farrell_npk_report, vcd_npk, FarrellReport};
use crate::error::{Error, Result};
use crate::liftability::{liftability_report, LiftabilityReport};
use crate::modular::Prime;
use crate::nec_presentations::standard_kernel;
use crate::riemann_hurwitz::{has_p_torsion, solve_all, RhInstance, RhSolution, TorsionReport};
use crate::surface_kernels::{orbit_partition, valid_kernel_count, KernelRecord, DEFAULT_BUDGET};
use crate::tuple_classes::{canonical_form, count_classes, enumerate_classes, kernel_from_tuple, phi_of, TupleRecord};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "PMCG_CACHE_DIR";

const CACHE_FILE: &str = "queries.jsonl";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ORACLE_FAIL: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Torsion {
        g: u32,
        k: u32,
        p: i64,
    },
    Solutions {
        g: u32,
        p: i64,
    },
    Classes {
        g: u32,
        k: u32,
        p: i64,
        h: Option<u32>,
        t: Option<u32>,
    },
    Verify {
        p: i64,
        h: u32,
        t: u32,
        k: u32,
    },
    Cohomology {
        p: i64,
        k: u32,
    },
    Liftability {
        p: i64,
    },
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Torsion { .. } => "torsion",
            Command::Solutions { .. } => "solutions",
            Command::Classes { .. } => "classes",
            Command::Verify { .. } => "verify",
            Command::Cohomology { .. } => "cohomology",
            Command::Liftability { .. } => "liftability",
            Command::Selftest => "selftest",
        }
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        match *self {
            Command::Torsion { g, k, p } => {
                put("g", g.into());
                put("k", k.into());
                put("p", p.into());
            }
            Command::Solutions { g, p } => {
                put("g", g.into());
                put("p", p.into());
            }
            Command::Classes { g, k, p, h, t } => {
                put("g", g.into());
                put("k", k.into());
                put("p", p.into());
                put("h", h.map_or(Value::Null, Value::from));
                put("t", t.map_or(Value::Null, Value::from));
            }
            Command::Verify { p, h, t, k } => {
                put("p", p.into());
                put("h", h.into());
                put("t", t.into());
                put("k", k.into());
            }
            Command::Cohomology { p, k } => {
                put("p", p.into());
                put("k", k.into());
            }
            Command::Liftability { p } => put("p", p.into()),
            Command::Selftest => {}
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub format: Format,
    pub use_cache: bool,
    pub budget: usize,
    /// Overrides [`CACHE_DIR_ENV`] and the platform default.
    pub cache_dir: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Text,
            use_cache: true,
            budget: DEFAULT_BUDGET,
            cache_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub version: String,
}

/// A cached query. The timestamp is bookkeeping only and never part of the
/// cache key or the rendered output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub version: String,
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionsResult {
    pub solutions: Vec<RhSolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub tuple: TupleRecord,
    pub kernel: KernelRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionClasses {
    pub h: u32,
    pub t: u32,
    pub count: u64,
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesResult {
    pub has_torsion: bool,
    pub solutions: Vec<SolutionClasses>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub kernels: u64,
    pub orbits: usize,
    pub classes: usize,
    /// The t-tuple class is the same for every kernel of each orbit.
    pub phi_constant_on_orbits: bool,
    /// Distinct orbits land in distinct classes and every class is hit.
    pub bijective: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    #[serde(flatten)]
    pub farrell: FarrellReport,
    pub vcd: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestResult {
    pub checks: Vec<SelftestCheck>,
    pub pass: bool,
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub exit_code: i32,
    pub cache_hit: bool,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn prime(p: i64) -> Result<Prime> {
    Prime::new(p)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Cache(e.to_string()))
}

fn from_value<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Cache(e.to_string()))
}

pub fn torsion(g: u32, k: u32, p: i64) -> Result<TorsionReport> {
    Ok(has_p_torsion(&RhInstance::new(g, k, prime(p)?)?))
}

pub fn solutions(g: u32, p: i64) -> Result<SolutionsResult> {
    Ok(SolutionsResult {
        solutions: solve_all(&RhInstance::new(g, 0, prime(p)?)?),
    })
}

pub fn classes(g: u32, k: u32, p: i64, h: Option<u32>, t: Option<u32>) -> Result<ClassesResult> {
    let q = prime(p)?;
    let report = has_p_torsion(&RhInstance::new(g, k, q)?);
    let selected: Vec<_> = report
        .witnesses
        .iter()
        .filter(|s| h.is_none_or(|h| s.h == h) && t.is_none_or(|t| s.t == t))
        .collect();
    if selected.is_empty() {
        let note = if report.has_torsion {
            "no witness matches the requested (h, t)".to_string()
        } else {
            format!("N_{g}^{k} has no {p}-torsion")
        };
        return Ok(ClassesResult {
            has_torsion: report.has_torsion,
            solutions: Vec::new(),
            note: Some(note),
        });
    }
    let mut out = Vec::new();
    for s in selected {
        let list = enumerate_classes(q, s.t as usize, k as usize)?;
        let mut entries = Vec::with_capacity(list.len());
        for class in &list {
            let sk = kernel_from_tuple(class.canonical(), s.h as usize)?;
            entries.push(ClassEntry {
                tuple: class.canonical().into(),
                kernel: (&sk).into(),
            });
        }
        out.push(SolutionClasses {
            h: s.h,
            t: s.t,
            count: count_classes(q, s.t as usize, k as usize)?,
            classes: entries,
        });
    }
    Ok(ClassesResult {
        has_torsion: true,
        solutions: out,
        note: None,
    })
}

/// Enumerates every surface kernel, splits them into move-orbits and
/// compares with the congruence classes of t-tuples.
pub fn verify(p: i64, h: u32, t: u32, k: u32, budget: usize) -> Result<VerifyResult> {
    let q = prime(p)?;
    let (h, t, k) = (h as usize, t as usize, k as usize);
    let orbits = orbit_partition(q, h, t, k, budget)?;
    let classes: BTreeSet<_> = enumerate_classes(q, t, k)?
        .into_iter()
        .map(|c| c.canonical().clone())
        .collect();

    let mut phi_constant = true;
    let mut hit = BTreeSet::new();
    for orbit in &orbits {
        let first = canonical_form(&phi_of(&orbit[0]));
        phi_constant &= orbit.iter().all(|sk| canonical_form(&phi_of(sk)) == first);
        hit.insert(first);
    }
    let bijective = hit.len() == orbits.len() && hit == classes;
    Ok(VerifyResult {
        kernels: valid_kernel_count(q, h, t).unwrap_or(0),
        orbits: orbits.len(),
        classes: classes.len(),
        phi_constant_on_orbits: phi_constant,
        bijective,
        pass: phi_constant && bijective && orbits.len() == classes.len(),
    })
}

pub fn cohomology(p: i64, k: u32) -> Result<CohomologyResult> {
    let q = prime(p)?;
    Ok(CohomologyResult {
        farrell: farrell_npk_report(q, k)?,
        vcd: vcd_npk(q, k),
    })
}

pub fn liftability(p: i64) -> Result<LiftabilityReport> {
    Ok(liftability_report(prime(p)?))
}

/// A fast battery over the example families and small oracles.
pub fn selftest() -> Result<SelftestResult> {
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| {
        checks.push(SelftestCheck {
            name: name.into(),
            pass,
        })
    };
    for n in [3i64, 5, 7, 11, 13] {
        let q = prime(n)?;
        let g = n as u32;
        let pairs = |g| {
            solve_all(&RhInstance::new(g, 0, q).unwrap())
                .iter()
                .filter(|s| !s.free_action)
                .map(|s| (s.h, s.t))
                .collect::<Vec<_>>()
        };
        check(
            &format!("p={n}: example families"),
            pairs(g) == [(1, 2)] && pairs(g + 1) == [(2, 1)] && pairs(2 * g - 1) == [(1, 3)],
        );
        let half = q.half_units() as u64;
        check(
            &format!("p={n}: (p-1)/2 classes for k = 1, 2"),
            count_classes(q, 2, 1)? == half && count_classes(q, 2, 2)? == half,
        );
        let lift = liftability_report(q);
        check(&format!("p={n}: Im(I) has order 2"), lift.image_order == 2);
        let f1 = farrell_npk_report(q, 1)?.pattern;
        check(
            &format!("p={n}: Farrell rank (p-1)/2 at 0 mod 4"),
            f1.ranks == [half as u32, 0, 0, 0],
        );
        check(
            &format!("p={n}: standard kernel valid"),
            standard_kernel(1, 2, q, 2).is_ok(),
        );
    }
    for (n, h, t, k) in [(3, 1, 2, 0), (5, 1, 2, 1), (5, 2, 2, 1), (7, 1, 3, 2)] {
        let v = verify(n, h, t, k, DEFAULT_BUDGET)?;
        check(&format!("orbit/class bijection p={n} h={h} t={t} k={k}"), v.pass);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SelftestResult { checks, pass })
}

/// Runs a command without the cache and returns its result payload.
pub fn execute(cmd: &Command, budget: usize) -> Result<Value> {
    match *cmd {
        Command::Torsion { g, k, p } => to_value(&torsion(g, k, p)?),
        Command::Solutions { g, p } => to_value(&solutions(g, p)?),
        Command::Classes { g, k, p, h, t } => to_value(&classes(g, k, p, h, t)?),
        Command::Verify { p, h, t, k } => to_value(&verify(p, h, t, k, budget)?),
        Command::Cohomology { p, k } => to_value(&cohomology(p, k)?),
        Command::Liftability { p } => to_value(&liftability(p)?),
        Command::Selftest => to_value(&selftest()?),
    }
}

pub fn document(cmd: &Command, result: Value) -> Document {
    Document {
        command: cmd.name().into(),
        params: cmd.params(),
        result,
        version: VERSION.into(),
    }
}

/// Append-only JSON-lines store of [`QueryRecord`]s.
#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn in_dir(dir: &Path) -> Self {
        Cache {
            path: dir.join(CACHE_FILE),
        }
    }

    /// `$PMCG_CACHE_DIR`, else the platform cache directory.
    pub fn default_dir() -> Option<PathBuf> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
            _ => dirs::cache_dir().map(|d| d.join("pmcg-torsion")),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, command: &str, params: &BTreeMap<String, Value>) -> Result<Option<Value>> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(e.to_string())),
        };
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| Error::Cache(e.to_string()))?;
            // Skip torn or foreign lines rather than failing the query.
            let Ok(rec) = serde_json::from_str::<QueryRecord>(&line) else {
                continue;
            };
            if rec.command == command && &rec.params == params && rec.version == VERSION {
                return Ok(Some(rec.result));
            }
        }
        Ok(None)
    }

    pub fn append(&self, doc: &Document) -> Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        }
        let rec = QueryRecord {
            command: doc.command.clone(),
            params: doc.params.clone(),
            result: doc.result.clone(),
            version: doc.version.clone(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let line = serde_json::to_string(&rec).map_err(|e| Error::Cache(e.to_string()))?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(e.to_string()))?;
        writeln!(f, "{line}").map_err(|e| Error::Cache(e.to_string()))
    }
}

/// Runs `cmd`, consulting the cache unless disabled, and renders the result.
pub fn run(cmd: &Command, opts: &Options) -> Result<RunOutput> {
    if opts.format == Format::Csv && !matches!(cmd, Command::Classes { .. } | Command::Solutions { .. }) {
        return Err(Error::InvalidParameter(format!(
            "--csv is not available for {}",
            cmd.name()
        )));
    }
    let cache = match (opts.use_cache && *cmd != Command::Selftest, &opts.cache_dir) {
        (false, _) => None,
        (true, Some(dir)) => Some(Cache::in_dir(dir)),
        (true, None) => Cache::default_dir().map(|d| Cache::in_dir(&d)),
    };
    let params = cmd.params();
    let cached = match &cache {
        Some(c) => c.lookup(cmd.name(), &params).unwrap_or(None),
        None => None,
    };
    let cache_hit = cached.is_some();
    let result = match cached {
        Some(v) => v,
        None => execute(cmd, opts.budget)?,
    };
    let doc = document(cmd, result);
    if let (Some(c), false) = (&cache, cache_hit) {
        // A read-only cache directory should not fail the query.
        let _ = c.append(&doc);
    }
    let exit_code = match cmd {
        Command::Verify { .. } if !from_value::<VerifyResult>(&doc.result)?.pass => EXIT_ORACLE_FAIL,
        Command::Selftest if !from_value::<SelftestResult>(&doc.result)?.pass => EXIT_ORACLE_FAIL,
        _ => EXIT_OK,
    };
    Ok(RunOutput {
        text: render(&doc, opts.format)?,
        exit_code,
        cache_hit,
    })
}

pub fn render(doc: &Document, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Cache(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(doc),
        Format::Text => render_text(doc),
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn tuple_text(t: &TupleRecord) -> String {
    let (marked, free) = t.betas.split_at(t.marked);
    match (marked.is_empty(), free.is_empty()) {
        (true, _) => format!("({})", join(free, ", ")),
        (false, true) => format!("({} |)", join(marked, ", ")),
        (false, false) => format!("({} | {})", join(marked, ", "), join(free, ", ")),
    }
}

fn pairs_text(sols: &[RhSolution]) -> String {
    if sols.is_empty() {
        return "none".into();
    }
    join(
        &sols.iter().map(|s| format!("({}, {})", s.h, s.t)).collect::<Vec<_>>(),
        ", ",
    )
}

fn param(doc: &Document, key: &str) -> String {
    doc.params.get(key).map(|v| v.to_string()).unwrap_or_default()
}

fn render_text(doc: &Document) -> Result<String> {
    let mut out = String::new();
    let (g, k, p) = (param(doc, "g"), param(doc, "k"), param(doc, "p"));
    match doc.command.as_str() {
        "torsion" => {
            let r: TorsionReport = from_value(&doc.result)?;
            let _ = writeln!(out, "N_{g}^{k}, p = {p}: {}", if r.has_torsion { "yes" } else { "no" });
            let _ = writeln!(out, "witnesses (h, t): {}", pairs_text(&r.witnesses));
            if !r.free_solutions.is_empty() {
                let _ = writeln!(
                    out,
                    "free solutions (t = 0, not counted): {}",
                    pairs_text(&r.free_solutions)
                );
            }
        }
        "solutions" => {
            let r: SolutionsResult = from_value(&doc.result)?;
            let _ = writeln!(out, "g - 2 = p(h - 2) + t(p - 1) with g = {g}, p = {p}");
            for s in &r.solutions {
                let flag = if s.free_action { "  [free action]" } else { "" };
                let _ = writeln!(out, "  h = {}, t = {}{flag}", s.h, s.t);
            }
            if r.solutions.is_empty() {
                let _ = writeln!(out, "  no solutions");
            }
        }
        "classes" => {
            let r: ClassesResult = from_value(&doc.result)?;
            if let Some(note) = &r.note {
                let _ = writeln!(out, "{note}");
            }
            for s in &r.solutions {
                let _ = writeln!(out, "(h, t) = ({}, {}): {} classes", s.h, s.t, s.count);
                for (i, c) in s.classes.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  {}. {}  kernel x=({}) d=({})",
                        i + 1,
                        tuple_text(&c.tuple),
                        join(&c.kernel.x, ", "),
                        join(&c.kernel.d, ", ")
                    );
                }
            }
        }
        "verify" => {
            let r: VerifyResult = from_value(&doc.result)?;
            let _ = writeln!(
                out,
                "p = {p}, h = {}, t = {}, k = {k}",
                param(doc, "h"),
                param(doc, "t")
            );
            let _ = writeln!(out, "kernels {}", r.kernels);
            let _ = writeln!(out, "orbits {}, classes {}", r.orbits, r.classes);
            let _ = writeln!(out, "phi constant on orbits: {}", r.phi_constant_on_orbits);
            let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
        }
        "cohomology" => {
            let r: CohomologyResult = from_value(&doc.result)?;
            let f = &r.farrell;
            let _ = writeln!(out, "p-primary Farrell cohomology of N_{p}^{k}");
            if f.pattern.is_zero() {
                let _ = writeln!(out, "  zero in every degree ({})", f.reason);
            } else {
                for (res, rank) in f.pattern.ranks.iter().enumerate() {
                    let group = if *rank == 0 {
                        "0".to_string()
                    } else {
                        format!("(Z/{p})^{rank}")
                    };
                    let _ = writeln!(out, "  i = {res} mod {}: {group}", f.pattern.period);
                }
                let _ = writeln!(out, "  {}", f.reason);
            }
            let _ = writeln!(out, "vcd = {}; ordinary cohomology agrees for i >= vcd", r.vcd);
        }
        "liftability" => {
            let r: LiftabilityReport = from_value(&doc.result)?;
            let _ = writeln!(out, "p = {p}, {} monodromy assignments", r.assignments);
            let _ = writeln!(
                out,
                "lift: {{{}}}",
                join(&r.liftable.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ", ")
            );
            let _ = writeln!(
                out,
                "do not lift: {{{}}}",
                join(&r.not_liftable.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ", ")
            );
            let _ = writeln!(out, "Im(I) has order {}", r.image_order);
        }
        "selftest" => {
            let r: SelftestResult = from_value(&doc.result)?;
            for c in &r.checks {
                let _ = writeln!(out, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            let _ = writeln!(
                out,
                "{}",
                if r.pass {
                    "all checks passed"
                } else {
                    "some checks FAILED"
                }
            );
        }
        other => return Err(Error::InvalidParameter(format!("unknown command {other}"))),
    }
    Ok(out)
}

fn render_csv(doc: &Document) -> Result<String> {
    let csv_err = |e: csv::Error| Error::Cache(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.command.as_str() {
        "classes" => {
            let r: ClassesResult = from_value(&doc.result)?;
            w.write_record(["h", "t", "marked", "class", "betas", "kernel_x", "kernel_d"])
                .map_err(csv_err)?;
            for s in &r.solutions {
                for (i, c) in s.classes.iter().enumerate() {
                    w.write_record([
                        s.h.to_string(),
                        s.t.to_string(),
                        c.tuple.marked.to_string(),
                        (i + 1).to_string(),
                        join(&c.tuple.betas, " "),
                        join(&c.kernel.x, " "),
                        join(&c.kernel.d, " "),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        "solutions" => {
            let r: SolutionsResult = from_value(&doc.result)?;
            w.write_record(["h", "t", "free_action"]).map_err(csv_err)?;
            for s in &r.solutions {
                w.write_record([s.h.to_string(), s.t.to_string(), s.free_action.to_string()])
                    .map_err(csv_err)?;
            }
        }
        other => return Err(Error::InvalidParameter(format!("--csv is not available for {other}"))),
    }
    let bytes = w.into_inner().map_err(|e| Error::Cache(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Cache(e.to_string()))
}
