//! Command-line front end.
//!
//! Subcommands: `count`, `sequence`, `bounds`, `constants`, `figure`,
//! `verify`. Exit codes: 0 ok, 1 verification failure, 2 usage or parse
//! error, 3 resource guard (brute-force cap, DP size).

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::asympt::{self, GAMMA2_REFERENCE, RHO1_REFERENCE, RHO2_REFERENCE};
use crate::enumerate::{
    check_submultiplicative, count_consecutive_dp, count_sequence_with, CountSequence,
    EnumerateError, Limits, Method, DP_MAX_PATTERN_LEN,
};
use crate::formulas::{self, BoundsReport, FormulaError, VerdictStatus};
use crate::pattern::{GeneralizedPattern, PatternError, Permutation};
use crate::series::{format_rational, ln_biguint, ln_factorials, nth_root_of, FloatSeries};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Brute-force cap without `--force`.
pub const CLI_CAP: usize = 11;
/// Brute-force horizon used by figures and sandwiches under `--force`.
pub const FORCED_HORIZON: usize = 13;
/// Largest `n` for the transfer DP without `--force`.
pub const DP_CAP: usize = 300;
/// Exact rational series stop here; float mode takes over above.
pub const EXACT_ORDER_LIMIT: usize = 60;
pub const FLOAT_ORDER_LIMIT: usize = 200;
/// DP horizon for the consecutive patterns of figure 3.
pub const FIGURE3_DP_HORIZON: usize = 40;

pub const FIGURE3_PATTERNS: [&str; 8] = [
    "1-2-3", "1-23", "132", "123", "1-23-4", "12-34", "3-14-2", "13-24",
];

pub const BELL_PATTERNS: [&str; 8] = ["1-23", "3-21", "32-1", "12-3", "1-32", "23-1", "3-12", "21-3"];
pub const CATALAN_PATTERNS: [&str; 4] = ["2-13", "2-31", "31-2", "13-2"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("cache {path}: {detail}")]
    Cache { path: String, detail: String },
    #[error("cache entry for {0} disagrees with recomputation")]
    CacheMismatch(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CacheMismatch(_) | CliError::Verification(_) => 1,
            CliError::Enumerate(e) | CliError::Formula(FormulaError::Enumerate(e)) => match e {
                EnumerateError::CapExceeded { .. } | EnumerateError::StateSpace { .. } => 3,
                _ => 2,
            },
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Sandwiches,
    Equalities,
    Fekete,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "genpat", version, about = "Permutations avoiding generalized patterns")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// JSON file of previously computed count sequences.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Recompute cache hits and fail on disagreement.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Lift the brute-force and DP caps.
    #[arg(long, global = true)]
    pub force: bool,
    /// Highest order computed in floating point by `bounds` and `figure`.
    #[arg(long, global = true, default_value_t = 120)]
    pub float_order: usize,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print α_n(pattern), or test one permutation with --contains.
    Count {
        pattern: String,
        n: usize,
        #[arg(long, value_name = "PERM")]
        contains: Option<String>,
    },
    /// Tabulate α_0..α_N with normalized values and n-th roots.
    Sequence { pattern: String, n_max: usize },
    /// Bounds table for 12-34 or 1-23-4.
    Bounds {
        name: String,
        #[arg(default_value_t = EXACT_ORDER_LIMIT)]
        order: usize,
        #[arg(long, default_value_t = 10)]
        bf_cap: usize,
    },
    /// Growth constants and their published values.
    Constants,
    /// Write the CSV behind figure 1, 2 or 3.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub n_max: usize,
    pub counts: Vec<String>,
    pub method: Method,
    pub tool_version: String,
}

/// Canonical pattern text → stored sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CacheFile {
    pub entries: BTreeMap<String, CacheEntry>,
}

impl CacheFile {
    /// A missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Self::default()),
            Err(source) => {
                return Err(CliError::Io {
                    path: path.display().to_string(),
                    source,
                })
            }
        };
        serde_json::from_str(&text).map_err(|e| CliError::Cache {
            path: path.display().to_string(),
            detail: e.to_string(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn insert(&mut self, seq: &CountSequence) {
        self.entries.insert(
            seq.pattern.to_string(),
            CacheEntry {
                n_max: seq.n_max(),
                counts: seq.counts.iter().map(BigUint::to_string).collect(),
                method: seq.method,
                tool_version: TOOL_VERSION.to_string(),
            },
        );
    }

    /// The cached sequence for `pat`, if it reaches `n`.
    pub fn lookup(&self, pat: &GeneralizedPattern, n: usize) -> Result<Option<CountSequence>, String> {
        let Some(entry) = self.entries.get(&pat.to_string()) else {
            return Ok(None);
        };
        if entry.counts.len() != entry.n_max + 1 {
            return Err(format!("{pat}: n_max {} but {} counts", entry.n_max, entry.counts.len()));
        }
        if entry.n_max < n {
            return Ok(None);
        }
        let counts = entry
            .counts
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(|e| format!("{pat}: {c:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(
            CountSequence {
                pattern: pat.clone(),
                counts,
                method: entry.method,
            }
            .truncated(n),
        ))
    }
}

/// Shared state of one invocation.
pub struct Session {
    pub force: bool,
    pub verify_cache: bool,
    pub float_order: usize,
    pub format: Format,
    cache: Option<(PathBuf, CacheFile, bool)>,
}

impl Session {
    pub fn new(cli: &Cli) -> Result<Self, CliError> {
        let cache = match &cli.cache {
            Some(path) => Some((path.clone(), CacheFile::load(path)?, false)),
            None => None,
        };
        Ok(Self {
            force: cli.force,
            verify_cache: cli.verify_cache,
            float_order: cli.float_order,
            format: cli.format,
            cache,
        })
    }

    /// A session without cache, for library callers.
    pub fn plain(force: bool) -> Self {
        Self {
            force,
            verify_cache: false,
            float_order: 120,
            format: Format::Csv,
            cache: None,
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            cap: CLI_CAP,
            force: self.force,
        }
    }

    /// Brute-force horizon for figures: the cap, or 13 under `--force`.
    pub fn horizon(&self) -> usize {
        if self.force {
            FORCED_HORIZON
        } else {
            CLI_CAP
        }
    }

    fn compute(&self, pat: &GeneralizedPattern, n: usize) -> Result<CountSequence, CliError> {
        if pat.is_consecutive() && pat.len() <= DP_MAX_PATTERN_LEN {
            if n > DP_CAP && !self.force {
                return Err(EnumerateError::CapExceeded { n, cap: DP_CAP }.into());
            }
            return Ok(count_consecutive_dp(pat, n)?);
        }
        Ok(count_sequence_with(pat, n, self.limits())?)
    }

    /// `α_0..=α_n`, through the cache when one is configured.
    pub fn counts(&mut self, pat: &GeneralizedPattern, n: usize) -> Result<CountSequence, CliError> {
        if let Some((path, cache, _)) = &self.cache {
            let hit = cache.lookup(pat, n).map_err(|detail| CliError::Cache {
                path: path.display().to_string(),
                detail,
            })?;
            if let Some(seq) = hit {
                if self.verify_cache && self.compute(pat, n)? != seq {
                    return Err(CliError::CacheMismatch(pat.to_string()));
                }
                return Ok(seq);
            }
        }
        let seq = self.compute(pat, n)?;
        if let Some((_, cache, dirty)) = &mut self.cache {
            cache.insert(&seq);
            *dirty = true;
        }
        Ok(seq)
    }

    pub fn finish(self) -> Result<(), CliError> {
        if let Some((path, cache, true)) = &self.cache {
            cache.save(path)?;
        }
        Ok(())
    }
}

fn parse_pattern(text: &str) -> Result<GeneralizedPattern, CliError> {
    Ok(text.parse()?)
}

/// `x` in scientific notation with 12 fractional digits, given `ln |x|`.
pub fn format_from_ln(ln: f64, negative: bool) -> String {
    if ln == f64::NEG_INFINITY {
        return "0".into();
    }
    let log10 = ln / std::f64::consts::LN_10;
    let mut exp = log10.floor();
    let mut mantissa = format!("{:.12}", 10f64.powf(log10 - exp));
    if mantissa.starts_with("10") {
        exp += 1.0;
        mantissa = format!("{:.12}", 10f64.powf(log10 - exp).max(1.0));
    }
    format!("{}{mantissa}e{exp}", if negative { "-" } else { "" })
}

/// Blank for missing, zero or non-finite roots.
pub fn format_root(r: Option<f64>) -> String {
    match r {
        Some(r) if r.is_finite() && r > 0.0 => format!("{r:.12}"),
        _ => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceRow {
    pub n: usize,
    pub alpha_n: String,
    pub alpha_over_factorial: String,
    pub nth_root: Option<f64>,
}

pub fn sequence_rows(seq: &CountSequence) -> Vec<SequenceRow> {
    let lf = ln_factorials(seq.n_max());
    seq.counts
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let ln = if a.is_zero() {
                f64::NEG_INFINITY
            } else {
                ln_biguint(a) - lf[n]
            };
            SequenceRow {
                n,
                alpha_n: a.to_string(),
                alpha_over_factorial: format_from_ln(ln, false),
                nth_root: (n > 0).then(|| (ln / n as f64).exp()),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub exact: bool,
    pub lower_count: String,
    pub alpha_n: Option<String>,
    pub upper_count: String,
    pub lower_root: Option<f64>,
    pub alpha_root: Option<f64>,
    pub upper_root: Option<f64>,
    pub verdict: Option<VerdictStatus>,
}

pub const BOUNDS_HEADER: [&str; 7] = [
    "n",
    "lower_count",
    "alpha_n",
    "upper_count",
    "lower_root",
    "alpha_root",
    "upper_root",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundName {
    TwelveThirtyFour,
    OneTwentyThreeFour,
}

impl std::str::FromStr for BoundName {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "12-34" => Ok(Self::TwelveThirtyFour),
            "1-23-4" => Ok(Self::OneTwentyThreeFour),
            _ => Err(CliError::Usage(format!(
                "unknown bound {s:?} (expected 12-34 or 1-23-4)"
            ))),
        }
    }
}

/// Float bound series to `order`.
pub fn float_bounds(name: BoundName, order: usize) -> (FloatSeries, FloatSeries) {
    match name {
        BoundName::TwelveThirtyFour => formulas::series_12_34_float(order),
        BoundName::OneTwentyThreeFour => formulas::series_1_23_4_float(order),
    }
}

fn exact_report(
    session: &mut Session,
    name: BoundName,
    order: usize,
    bf_cap: usize,
) -> Result<BoundsReport, CliError> {
    let (text, lower, upper) = match name {
        BoundName::TwelveThirtyFour => {
            let (l, u) = formulas::series_12_34(order);
            ("12-34", l, u)
        }
        BoundName::OneTwentyThreeFour => {
            let l = formulas::lower_1_23_4(order);
            assert_eq!(l, formulas::lower_1_23_4_alternative(order));
            ("1-23-4", l, formulas::upper_1_23_4(order))
        }
    };
    let pat = parse_pattern(text)?;
    let bf = session.counts(&pat, bf_cap)?;
    Ok(BoundsReport::new(pat, lower, upper, bf))
}

/// Rows `0..=min(order, 60)` exactly, then `..=float_order` in floating point.
pub fn bounds_rows(
    session: &mut Session,
    name: BoundName,
    order: usize,
    bf_cap: usize,
    float_order: usize,
) -> Result<(BoundsReport, Vec<BoundsRow>), CliError> {
    if float_order > FLOAT_ORDER_LIMIT {
        return Err(CliError::Usage(format!(
            "float order {float_order} exceeds {FLOAT_ORDER_LIMIT}"
        )));
    }
    let exact_order = order.min(EXACT_ORDER_LIMIT);
    let report = exact_report(session, name, exact_order, bf_cap)?;
    let (lc, uc) = (report.lower.counts(), report.upper.counts());
    let alpha_roots = crate::series::nth_root_ratios_of_counts(&report.bruteforce.counts);
    let mut rows: Vec<BoundsRow> = (0..=exact_order)
        .map(|n| BoundsRow {
            n,
            exact: true,
            lower_count: format_rational(&lc[n]),
            alpha_n: report.bruteforce.get(n).map(BigUint::to_string),
            upper_count: format_rational(&uc[n]),
            lower_root: (n > 0).then(|| nth_root_of(report.lower.coeff(n), n)),
            alpha_root: (n > 0).then(|| alpha_roots.get(n - 1).copied()).flatten(),
            upper_root: (n > 0).then(|| nth_root_of(report.upper.coeff(n), n)),
            verdict: report.verdicts.get(n).map(|v| v.status),
        })
        .collect();
    if float_order > exact_order {
        let (lower, upper) = float_bounds(name, float_order);
        rows.extend((exact_order + 1..=float_order).map(|n| BoundsRow {
            n,
            exact: false,
            lower_count: format_from_ln(lower.ln_abs_count(n), lower.sign(n) < 0.0),
            alpha_n: None,
            upper_count: format_from_ln(upper.ln_abs_count(n), upper.sign(n) < 0.0),
            lower_root: Some(lower.nth_root(n)),
            alpha_root: None,
            upper_root: Some(upper.nth_root(n)),
            verdict: None,
        }));
    }
    Ok((report, rows))
}

pub fn write_bounds_csv<W: Write>(rows: &[BoundsRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BOUNDS_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.lower_count.clone(),
            r.alpha_n.clone().unwrap_or_default(),
            r.upper_count.clone(),
            format_root(r.lower_root),
            format_root(r.alpha_root),
            format_root(r.upper_root),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Wide CSV of `(α_n/n!)^{1/n}` for the figure-3 patterns, with the two
/// reference constants as trailing columns.
pub fn figure3<W: Write>(session: &mut Session, out: W) -> Result<(), CliError> {
    let mut columns = Vec::new();
    for text in FIGURE3_PATTERNS {
        let pat = parse_pattern(text)?;
        let n = if pat.is_consecutive() {
            FIGURE3_DP_HORIZON
        } else {
            session.horizon()
        };
        let seq = session.counts(&pat, n)?;
        columns.push(crate::series::nth_root_ratios_of_counts(&seq.counts));
    }
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend(FIGURE3_PATTERNS.iter().map(|p| p.to_string()));
    header.push(format!("rho2_{RHO2_REFERENCE}"));
    header.push(format!("rho1_{RHO1_REFERENCE}"));
    w.write_record(&header)?;
    for i in 0..rows {
        let mut record = vec![(i + 1).to_string()];
        record.extend(columns.iter().map(|c| format_root(c.get(i).copied())));
        record.push(format!("{RHO2_REFERENCE}"));
        record.push(format!("{RHO1_REFERENCE}"));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes figure `which` to `out`.
pub fn figure<W: Write>(session: &mut Session, which: u8, out: W) -> Result<(), CliError> {
    let name = match which {
        1 => BoundName::TwelveThirtyFour,
        2 => BoundName::OneTwentyThreeFour,
        3 => return figure3(session, out),
        _ => return Err(CliError::Usage(format!("no figure {which}"))),
    };
    let horizon = session.horizon();
    let float_order = session.float_order;
    let (_, rows) = bounds_rows(session, name, EXACT_ORDER_LIMIT, horizon, float_order)?;
    write_bounds_csv(&rows, out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(suite: &'static str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        suite,
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn identities(session: &mut Session, cap: usize) -> Result<Vec<Check>, CliError> {
    let n = cap.min(10);
    let bell = formulas::bell_egf(n).integer_counts().expect("integer counts");
    let catalan = formulas::catalan_numbers(n);
    let mut out = Vec::new();
    for text in BELL_PATTERNS {
        let seq = session.counts(&parse_pattern(text)?, n)?;
        let pass = seq.counts.iter().zip(&bell).all(|(a, b)| a.to_string() == b.to_string());
        out.push(check("identities", format!("{text} = Bell"), pass, format!("n <= {n}")));
    }
    for text in CATALAN_PATTERNS {
        let seq = session.counts(&parse_pattern(text)?, n)?;
        out.push(check(
            "identities",
            format!("{text} = Catalan"),
            seq.counts == catalan,
            format!("n <= {n}"),
        ));
    }
    Ok(out)
}

fn sandwiches(session: &mut Session, cap: usize) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let order = cap.max(12);
    let r = exact_report(session, BoundName::TwelveThirtyFour, order, cap)?;
    out.push(check(
        "sandwiches",
        "e^S < 12-34 < e^(S+e^z+z-1)",
        r.strict_on(1..=cap),
        format!("strict for 1 <= n <= {cap}"),
    ));
    let r = exact_report(session, BoundName::OneTwentyThreeFour, order, cap)?;
    out.push(check(
        "sandwiches",
        "1-23-4 lower < alpha < C(e^z-1)",
        r.strict_on(2..=cap),
        format!("strict for 2 <= n <= {cap}"),
    ));
    let sigma = parse_pattern("132")?;
    let pat = GeneralizedPattern::one_dash_dash_max(&sigma);
    let (lower, upper) = formulas::bounds_1_sigma_k(&formulas::a_consecutive_egf(&sigma, order)?)?;
    let r = BoundsReport::new(pat.clone(), lower, upper, session.counts(&pat, cap.min(9))?);
    out.push(check(
        "sandwiches",
        format!("{pat} between generic bounds"),
        r.violations().count() == 0,
        format!("no violation for n <= {}", cap.min(9)),
    ));
    Ok(out)
}

fn equalities(session: &mut Session, cap: usize) -> Result<Vec<Check>, CliError> {
    let n = cap.min(9);
    let pairs = [
        ("12-345", "21-345"),
        ("1-23-4", "1-32-4"),
        ("12-354", "12-453"),
        ("12-354", "12-435"),
        ("12-354", "12-534"),
    ];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let sa = session.counts(&parse_pattern(a)?, n)?;
        let sb = session.counts(&parse_pattern(b)?, n)?;
        out.push(check(
            "equalities",
            format!("{a} ~ {b}"),
            sa.counts == sb.counts,
            format!("n <= {n}"),
        ));
    }
    Ok(out)
}

fn fekete(session: &mut Session) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for k in 3..=4 {
        for perm in Permutation::all(k) {
            let pat = GeneralizedPattern::consecutive(perm)?;
            let seq = session.counts(&pat, 12)?;
            let mut pass = asympt::fekete_check(&seq);
            for m in 1..12 {
                for n in 1..=12 - m {
                    pass &= check_submultiplicative(&seq, m, n)?;
                }
            }
            out.push(check("fekete", pat.to_string(), pass, "m + n <= 12"));
        }
    }
    Ok(out)
}

/// Runs a suite and returns every check.
pub fn verify(session: &mut Session, suite: Suite, cap: usize) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(identities(session, cap)?);
    }
    if matches!(suite, Suite::Sandwiches | Suite::All) {
        out.extend(sandwiches(session, cap)?);
    }
    if matches!(suite, Suite::Equalities | Suite::All) {
        out.extend(equalities(session, cap)?);
    }
    if matches!(suite, Suite::Fekete | Suite::All) {
        out.extend(fekete(session)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRow {
    pub name: &'static str,
    pub value: f64,
    pub reference: f64,
    pub tolerance: Option<f64>,
    pub within: Option<bool>,
}

pub fn constants() -> Result<Vec<ConstantRow>, CliError> {
    let rho2 = asympt::rho2(1e-12).map_err(|e| CliError::Verification(e.to_string()))?;
    let row = |name, value: f64, reference: f64, tol: f64| ConstantRow {
        name,
        value,
        reference,
        tolerance: Some(tol),
        within: Some((value - reference).abs() < tol),
    };
    Ok(vec![
        row("rho1", asympt::rho1(), RHO1_REFERENCE, 1e-7),
        row("rho2", rho2, RHO2_REFERENCE, 1e-6),
        row("gamma2", asympt::gamma2(), GAMMA2_REFERENCE, 1e-5),
        ConstantRow {
            name: "gamma1",
            value: asympt::gamma1_reference(),
            reference: asympt::gamma1_reference(),
            tolerance: None,
            within: None,
        },
    ])
}

fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run_command<W: Write>(cli: &Cli, session: &mut Session, out: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Count {
            pattern,
            n,
            contains,
        } => {
            let pat = parse_pattern(pattern)?;
            if let Some(text) = contains {
                let perm: Permutation = text.parse()?;
                if perm.len() != *n {
                    return Err(CliError::Usage(format!(
                        "permutation {perm} has length {}, not {n}",
                        perm.len()
                    )));
                }
                let verdict = if crate::pattern::avoids(&perm, &pat) {
                    "avoids"
                } else {
                    "contains"
                };
                writeln!(out, "{verdict}")?;
                return Ok(());
            }
            let seq = session.counts(&pat, *n)?;
            writeln!(out, "{}", seq.counts[*n])?;
        }
        Command::Sequence { pattern, n_max } => {
            let pat = parse_pattern(pattern)?;
            let seq = session.counts(&pat, *n_max)?;
            let rows = sequence_rows(&seq);
            match cli.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["n", "alpha_n", "alpha_over_factorial", "nth_root"])?;
                    for r in &rows {
                        w.write_record([
                            r.n.to_string(),
                            r.alpha_n.clone(),
                            r.alpha_over_factorial.clone(),
                            format_root(r.nth_root),
                        ])?;
                    }
                    w.flush()?;
                }
                Format::Json => write_json(
                    out,
                    &json!({"pattern": pat.to_string(), "method": seq.method, "rows": rows}),
                )?,
            }
        }
        Command::Bounds {
            name,
            order,
            bf_cap,
        } => {
            let name: BoundName = name.parse()?;
            let (report, rows) = bounds_rows(session, name, *order, *bf_cap, cli.float_order)?;
            match cli.format {
                Format::Csv => write_bounds_csv(&rows, &mut *out)?,
                Format::Json => write_json(
                    out,
                    &json!({"pattern": report.pattern.to_string(), "rows": rows}),
                )?,
            }
            let violated = report.violations().next().map(|v| v.n);
            if let Some(n) = violated {
                return Err(CliError::Verification(format!("bound violated at n = {n}")));
            }
        }
        Command::Constants => {
            let rows = constants()?;
            match cli.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["name", "value", "reference", "tolerance", "within"])?;
                    for r in &rows {
                        w.write_record([
                            r.name.to_string(),
                            format!("{:.10}", r.value),
                            r.reference.to_string(),
                            r.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
                            r.within.map(|b| b.to_string()).unwrap_or_default(),
                        ])?;
                    }
                    w.flush()?;
                }
                Format::Json => write_json(out, &rows)?,
            }
        }
        Command::Figure { which, output } => {
            let mut buf = Vec::new();
            figure(session, *which, &mut buf)?;
            fs::write(output, buf).map_err(|source| CliError::Io {
                path: output.display().to_string(),
                source,
            })?;
        }
        Command::Verify { suite, cap } => {
            let checks = verify(session, *suite, *cap)?;
            match cli.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["suite", "check", "status", "detail"])?;
                    for c in &checks {
                        w.write_record([
                            c.suite,
                            &c.name,
                            if c.pass { "pass" } else { "FAIL" },
                            &c.detail,
                        ])?;
                    }
                    w.flush()?;
                }
                Format::Json => write_json(out, &checks)?,
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                return Err(CliError::Verification(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(())
}

/// Runs a parsed command line, writing results to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        // only the first pool configuration in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let mut session = Session::new(cli)?;
    let result = run_command(cli, &mut session, out);
    session.finish()?;
    result
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
