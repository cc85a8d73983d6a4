//! Command-line front end. Every command prints a JSON report to stdout or
//! to `--out`; a one-line verdict per check goes to stderr.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
//! budget or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::analysis::{
    classify_params, distributions, macwilliams_transform, monic_census, nmds_identity_holds, weight_distribution,
    Strategy, WeightDistribution,
};
use crate::codes::{bch_build, BchSpec, CyclicCode};
use crate::error::{Error, Result};
use crate::gf::{field_build, format_coeffs, load_field_cache, prime_power, unity_tower, write_field_cache, Field};
use crate::nmds::{certify_generic, certify_pairs, PairMode};
use crate::pipeline::{run_conjecture, Budgets, Status};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable naming the directory of the field cache.
pub const CACHE_ENV: &str = "NMDS_CACHE_DIR";
const CACHE_FILE: &str = "fields.txt";

const UNITY_CONVENTION: &str = "beta = gamma^(q-1)";

#[derive(Debug, Parser)]
#[command(
    name = "nmds",
    version,
    about = "BCH codes of length q+1 over GF(3^m): construction, analysis, near-MDS certification"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Omit the timestamp so repeated runs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report (or code file) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of codewords to enumerate.
    #[arg(long, global = true, default_value_t = crate::analysis::DEFAULT_WORD_BUDGET)]
    pub budget: u64,
    /// Maximum number of coordinate subsets to examine.
    #[arg(long, global = true, default_value_t = crate::analysis::DEFAULT_SUBSET_BUDGET)]
    pub subset_budget: u64,
    /// Maximum number of determinants for the pair certifier.
    #[arg(long, global = true, default_value_t = crate::nmds::DEFAULT_PAIR_BUDGET)]
    pub pair_budget: u64,
}

impl GlobalArgs {
    fn budgets(&self) -> Budgets {
        Budgets { words: self.budget, subsets: self.subset_budget, pairs: self.pair_budget }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe GF(p^m): modulus, primitive element, roots of unity.
    Ff {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    /// Build a BCH code and write it as JSON.
    Bch {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// Length (default q + 1).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        h: u64,
    },
    /// Weight distributions, classification and the monic census of a code file.
    Analyze {
        code: PathBuf,
        /// Weight distributions of the code and its dual.
        #[arg(long)]
        weights: bool,
        /// MDS / AMDS / NMDS label.
        #[arg(long)]
        classify: bool,
        /// Monic-codeword census over all (n-k+1)-subsets.
        #[arg(long)]
        census: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Near-MDS certification of a code file or of C(3^m, 3^m+1, 3, 4).
    Certify {
        code: Option<PathBuf>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Scan every z in the pair certifier instead of only the closed form.
        #[arg(long)]
        scan: bool,
    },
    /// Build, analyze and certify C(3^m, 3^m+1, 3, 4) for odd m.
    Conjecture {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Direct,
    ViaDual,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::ViaDual => Strategy::ViaDual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Generic,
    Pairs,
    Both,
}

/// A finished command: the report and whether its checks passed.
pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let cache = std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(CACHE_FILE));
    if let Some(path) = cache.as_deref().filter(|p| p.exists()) {
        if let Err(e) = load_field_cache(path) {
            eprintln!("error: field cache {}: {e}", path.display());
            return EXIT_ERROR;
        }
    }
    let result = with_pool(cli.global.jobs, || execute(&cli));
    if let Some(path) = cache.as_deref() {
        if let Err(e) = save_cache(path) {
            eprintln!("warning: could not write field cache {}: {e}", path.display());
        }
    }
    match result.and_then(|o| emit(&cli.global, &cli.command, o)) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => EXIT_FAIL,
                _ => EXIT_ERROR,
            }
        }
    }
}

fn save_cache(path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    write_field_cache(path)
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        Some(0) => Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(f),
        None => f(),
    }
}

fn emit(global: &GlobalArgs, command: &Command, outcome: Outcome) -> Result<bool> {
    let text = match command {
        Command::Bch { .. } => serde_json::to_string_pretty(&outcome.report)?,
        _ => {
            let mut report = outcome.report;
            if let Value::Object(map) = &mut report {
                let meta = meta(global, command, map);
                map.insert("meta".into(), meta);
            }
            serde_json::to_string_pretty(&report)?
        }
    };
    match &global.out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(outcome.pass)
}

/// Runs the parsed command without printing the report.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Ff { p, m } => field_info(*p, *m),
        Command::Bch { p, m, n, delta, h } => {
            let q =
                (*p as u64).checked_pow(*m).ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} is too large")))?;
            let spec = BchSpec::new(q, n.unwrap_or(q + 1), *delta, *h);
            let code = bch_build(&spec)?;
            eprintln!("built {spec}: [{}, {}] code, generator {}", code.n(), code.k(), code.generator_poly());
            Ok(Outcome { report: serde_json::to_value(code.to_record())?, pass: true })
        }
        Command::Analyze { code, weights, classify, census, strategy } => {
            let code = read_code(code)?;
            let default = !(*weights || *classify || *census);
            analyze(&code, *weights || default, *classify || default, *census, (*strategy).into(), &g.budgets())
        }
        Command::Certify { code, m, mode, scan } => {
            let code = match (code, m) {
                (Some(path), None) => read_code(path)?,
                (None, Some(m)) => bch_build(&BchSpec::amds(3u64.pow(*m)))?,
                _ => return Err(Error::InvalidArgument("give exactly one of a code file and --m".into())),
            };
            certify(&code, *mode, *scan, &g.budgets())
        }
        Command::Conjecture { m } => {
            let report = run_conjecture(*m, &g.budgets(), g.seed)?;
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                eprintln!("{tag} {}: {} ({})", c.name, c.detail, c.method);
            }
            let mut value = serde_json::to_value(&report)?;
            if let (Some((wd, dual)), Value::Object(map)) = (&report.weights, &mut value) {
                map.insert("weights".into(), weights_json(wd));
                map.insert("dual_weights".into(), weights_json(dual));
            }
            if let Value::Object(map) = &mut value {
                map.insert("pass".into(), json!(report.pass()));
                map.insert("complete".into(), json!(report.complete()));
            }
            Ok(Outcome { report: value, pass: report.pass() })
        }
    }
}

fn read_code(path: &Path) -> Result<CyclicCode> {
    CyclicCode::from_json(&fs::read_to_string(path)?)
}

fn field_info(p: u32, m: u32) -> Result<Outcome> {
    let f = field_build(p, m)?;
    let gamma = f.primitive_element();
    let mut report = Map::new();
    report.insert("p".into(), json!(p));
    report.insert("m".into(), json!(m));
    report.insert("q".into(), json!(f.order()));
    report.insert("modulus".into(), json!(f.modulus()));
    report.insert("modulus_poly".into(), json!(format_coeffs(f.modulus(), "x")));
    report.insert("primitive_element".into(), json!({"index": gamma.index(), "poly": f.format_elem(gamma)}));
    report.insert("table_backed".into(), json!(f.has_tables()));
    let ext_bits = 2.0 * m as f64 * (p as f64).log2();
    let unity = if ext_bits <= 24.0 {
        let u = unity_tower(p, m)?;
        let ext = u.ext();
        json!({
            "order": u.len(),
            "extension_modulus": ext.modulus(),
            "extension_modulus_poly": format_coeffs(ext.modulus(), "x"),
            "generator_exponent": f.order() - 1,
            "convention": UNITY_CONVENTION,
            "beta": {"index": u.beta().index(), "poly": ext.format_elem(u.beta())},
        })
    } else {
        Value::Null
    };
    report.insert("unity".into(), unity);
    eprintln!("GF({p}^{m}) = GF({}) with modulus {}", f.order(), format_coeffs(f.modulus(), "x"));
    Ok(Outcome { report: Value::Object(report), pass: true })
}

/// `{"0": "A_0", "1": "A_1", ...}` with decimal strings.
pub fn weights_json(wd: &WeightDistribution) -> Value {
    let map: Map<String, Value> =
        wd.counts().iter().enumerate().map(|(i, c)| (i.to_string(), Value::String(c.to_string()))).collect();
    Value::Object(map)
}

fn analyze(
    code: &CyclicCode,
    weights: bool,
    classify: bool,
    census: bool,
    strategy: Strategy,
    b: &Budgets,
) -> Result<Outcome> {
    let (n, k, q) = (code.n(), code.k(), code.q());
    let mut report = Map::new();
    report.insert("q".into(), json!(q));
    report.insert("params".into(), json!([n, k, Value::Null]));
    if weights || classify {
        let (wd, dual) = if strategy == Strategy::Auto {
            distributions(code, b.words)?
        } else {
            let wd = weight_distribution(code, strategy, b.words)?;
            let dual = macwilliams_transform(&wd, k, q)?;
            (wd, dual)
        };
        let d = wd.min_weight().unwrap_or(n + 1);
        let dd = dual.min_weight().unwrap_or(n + 1);
        report.insert("params".into(), json!([n, k, d]));
        if classify {
            let c = classify_params(n, k, d, dd)?;
            report.insert("classification".into(), json!(c.label.to_string()));
            report.insert("dual_params".into(), json!([n, n - k, dd]));
        }
        if weights {
            report.insert("weights".into(), weights_json(&wd));
            report.insert("dual_weights".into(), weights_json(&dual));
            report.insert("distinct_nonzero_weights".into(), json!(wd.nonzero_weight_count()));
        }
        let identity = if k > 0 && d + k == n { Some(nmds_identity_holds(&wd, k, q)?) } else { None };
        report.insert("weight_identity".into(), json!(identity));
        eprintln!("[{n}, {k}, {d}] code, dual distance {dd}");
    }
    if census {
        let c = monic_census(code, b.subsets)?;
        let total: BigUint = num_integer::binomial(BigUint::from(n), BigUint::from(n - k + 1));
        report.insert(
            "census".into(),
            json!({
                "e1": c.e1, "e2": c.e2, "f1": c.f1, "f2": c.f2,
                "overlap": c.overlap, "subsets": c.subsets,
                "dim_one": c.dim_one, "dim_two": c.dim_two,
                "binomial": total.to_string(),
            }),
        );
        eprintln!("census: e1 = {}, e2 = {}, f1 = {}, f2 = {}", c.e1, c.e2, c.f1, c.f2);
    }
    Ok(Outcome { report: Value::Object(report), pass: true })
}

fn certify(code: &CyclicCode, mode: ModeArg, scan: bool, b: &Budgets) -> Result<Outcome> {
    let q = code.q();
    let mut report = Map::new();
    report.insert("mode".into(), json!(format!("{mode:?}").to_lowercase()));
    report.insert("q".into(), json!(q));
    let mut checked = 0u64;
    let mut pass = true;
    let mut witnesses = Vec::new();
    if matches!(mode, ModeArg::Generic | ModeArg::Both) {
        let r = certify_generic(code, b.subsets)?;
        checked += r.subsets_checked;
        pass &= r.all_dim_one;
        witnesses.extend(r.failures.iter().map(|f| json!({"subset": f.subset, "dim": f.dim})));
        eprintln!(
            "{} generic: {} subsets, {} with dimension != 1",
            if r.all_dim_one { "PASS" } else { "FAIL" },
            r.subsets_checked,
            r.failure_count
        );
        report.insert("generic".into(), serde_json::to_value(&r)?);
    }
    if matches!(mode, ModeArg::Pairs | ModeArg::Both) {
        if code.bch_spec() != Some(&BchSpec::amds(q)) {
            return Err(Error::Unsupported("the pair certifier applies only to C(q, q+1, 3, 4)".into()));
        }
        let pm = if scan { PairMode::ExhaustiveScan } else { PairMode::FormulaOnly };
        let r = certify_pairs(q, pm, b.pairs)?;
        checked += r.pairs_checked;
        pass &= r.all_unique;
        witnesses.extend(r.failures.iter().map(|f| serde_json::to_value(f).expect("serializable")));
        eprintln!(
            "{} pairs ({pm}): {} pairs, {} failures",
            if r.all_unique { "PASS" } else { "FAIL" },
            r.pairs_checked,
            r.failure_count
        );
        report.insert("pairs".into(), serde_json::to_value(&r)?);
    }
    report.insert("checked".into(), json!(checked));
    report.insert("pass".into(), json!(pass));
    report.insert("witnesses".into(), Value::Array(witnesses));
    report.insert("alpha_exponent_convention".into(), json!(UNITY_CONVENTION));
    Ok(Outcome { report: Value::Object(report), pass })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ff { .. } => "ff",
        Command::Bch { .. } => "bch",
        Command::Analyze { .. } => "analyze",
        Command::Certify { .. } => "certify",
        Command::Conjecture { .. } => "conjecture",
    }
}

/// Reproducibility block: field, conventions, budgets, seed.
fn meta(global: &GlobalArgs, command: &Command, report: &Map<String, Value>) -> Value {
    let field: Option<Field> = match command {
        Command::Ff { p, m } => field_build(*p, *m).ok(),
        _ => report.get("q").and_then(Value::as_u64).and_then(prime_power).and_then(|(p, m)| field_build(p, m).ok()),
    };
    let mut meta = Map::new();
    meta.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("command".into(), json!(command_name(command)));
    if let Some(f) = field {
        meta.insert("p".into(), json!(f.characteristic()));
        meta.insert("m".into(), json!(f.degree()));
        meta.insert("modulus".into(), json!(f.modulus()));
    }
    meta.insert(
        "conventions".into(),
        json!({
            "elements": "index = sum of coefficient c_i * p^i in the polynomial basis",
            "modulus": "first monic irreducible polynomial in base-p order of (c_{m-1}, ..., c_0)",
            "primitive_element": "gamma = smallest-index primitive element of GF(q^2)",
            "unity_generator": UNITY_CONVENTION,
            "coordinates": "1-based; coordinate j carries beta^j, coordinate n carries 1",
        }),
    );
    meta.insert("budgets".into(), serde_json::to_value(global.budgets()).expect("serializable"));
    meta.insert("seed".into(), json!(global.seed));
    if !global.deterministic {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        meta.insert("timestamp".into(), json!(now));
    }
    Value::Object(meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("nmds").chain(args.iter().copied()))
    }

    #[test]
    fn parses_subcommands_and_globals() {
        let cli =
            parse(&["certify", "--m", "3", "--mode", "pairs", "--scan", "--deterministic", "--jobs", "2"]).unwrap();
        assert!(cli.global.deterministic);
        assert_eq!(cli.global.jobs, Some(2));
        match cli.command {
            Command::Certify { code: None, m: Some(3), mode: ModeArg::Pairs, scan: true } => {}
            other => panic!("unexpected {other:?}"),
        }
        let cli = parse(&["analyze", "code.json", "--strategy", "via-dual"]).unwrap();
        assert!(matches!(cli.command, Command::Analyze { strategy: StrategyArg::ViaDual, .. }));
        assert!(parse(&["bch", "--m", "3"]).is_err());
        assert!(parse(&["certify", "--mode", "all"]).is_err());
        assert!(parse(&["frobnicate"]).is_err());
    }

    #[test]
    fn certify_needs_exactly_one_source() {
        for args in [&["certify"][..], &["certify", "c.json", "--m", "3"]] {
            let err = execute(&parse(args).unwrap()).err().unwrap();
            assert!(matches!(err, Error::InvalidArgument(_)));
        }
    }

    #[test]
    fn ff_report_and_meta() {
        let cli = parse(&["ff", "--p", "3", "--m", "3", "--deterministic"]).unwrap();
        let outcome = execute(&cli).unwrap();
        assert!(outcome.pass);
        assert_eq!(outcome.report["modulus"], json!([1, 2, 0, 1]));
        let Value::Object(map) = &outcome.report else { panic!() };
        let meta = meta(&cli.global, &cli.command, map);
        assert_eq!(meta["command"], "ff");
        assert_eq!(meta["m"], 3);
        assert!(meta.get("timestamp").is_none());
    }
}
