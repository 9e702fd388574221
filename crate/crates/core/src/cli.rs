//! The `pdiscrete` command line. `run` does all the work and returns what the process
//! should print and its exit code: 0 success, 1 computation refused, 2 usage error,
//! 3 input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bertini::{bertini_scan, pb_falsify, BertiniError, LaurentPoly, ScanOptions, ThetaPolicy};
use crate::ff::{FFElem, Field};
use crate::io;
use crate::linalg::{parse_q, Q};
use crate::order::{snf, Cone, OrderError, WeightOrder};
use crate::roots::{newton_puiseux_with, PuiseuxOptions, RootError, DEFAULT_AS_DEPTH};
use crate::series::{ExtQ, GPSeries, SeriesError};
use crate::subst::{nonpolynomial_witness, phi, SubstError, SubstSpec};
use crate::support::{pdiscrete_check, StructuredSupport};
use crate::tropical::{connectivity_through_codim1, transverse_intersect, trop_hypersurface, TropicalError};

/// Resource bounds; each can be overridden through the environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// `PDISCRETE_MAX_DEPTH`: levels of `p`-th roots per series (Artin–Schreier depth).
    pub max_depth: u32,
    /// `PDISCRETE_MAX_BOX`: largest scan box `B` for `bertini-scan` and `pb-falsify`.
    pub max_box: i64,
    /// `PDISCRETE_MAX_SUBSETS`: most facet subsets `connectivity_through_codim1` may visit.
    pub max_subsets: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_depth: 64, max_box: 8, max_subsets: 276 }
    }
}

impl Bounds {
    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Result<Bounds, CliError> {
        let mut b = Bounds::default();
        let read = |k: &str| -> Result<Option<u64>, CliError> {
            match get(k) {
                None => Ok(None),
                Some(v) => v.trim().parse().map(Some).map_err(|_| CliError::Usage(format!("{k} must be a nonnegative integer"))),
            }
        };
        if let Some(v) = read("PDISCRETE_MAX_DEPTH")? {
            b.max_depth = v as u32;
        }
        if let Some(v) = read("PDISCRETE_MAX_BOX")? {
            b.max_box = v as i64;
        }
        if let Some(v) = read("PDISCRETE_MAX_SUBSETS")? {
            b.max_subsets = v;
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {pointer}: {reason}")]
    Parse { path: String, pointer: String, reason: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refused(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse { .. } | CliError::Input(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Parse { .. } => "ParseError",
            CliError::Input(_) => "InputError",
            CliError::Refused(_) => "Refused",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind(), "message": self.to_string(), "exitCode": self.exit_code() });
        if let CliError::Parse { path, pointer, reason } = self {
            e["path"] = json!(path);
            e["pointer"] = json!(pointer);
            e["reason"] = json!(reason);
        }
        json!({ "error": e })
    }
}

impl From<BertiniError> for CliError {
    fn from(e: BertiniError) -> Self {
        match e {
            BertiniError::NotMonic | BertiniError::ConstantPolynomial | BertiniError::DimensionMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotMonicInY | RootError::ConstantPolynomial => CliError::Input(e.to_string()),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<SubstError> for CliError {
    fn from(e: SubstError) -> Self {
        match e {
            SubstError::ZeroDirection | SubstError::ZeroTheta | SubstError::DimensionMismatch { .. } | SubstError::FieldMismatch => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Refused(e.to_string())
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TropicalError> for CliError {
    fn from(e: TropicalError) -> Self {
        match e {
            TropicalError::ResourceBound { .. } => CliError::Refused(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pdiscrete", version, about = "p-discrete generalized power series, toric Bertini scans and tropical hypersurfaces")]
struct Cli {
    /// Seed for every random choice (equal-degree splitting, random θ).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an arithmetic expression over named series files.
    Series(SeriesArgs),
    /// Newton–Puiseux roots of a polynomial monic in y.
    Root(RootArgs),
    /// The monomial substitution t^u ↦ θ^u x^{n·u}.
    Subst(SubstArgs),
    /// Certify a structured support as p-discrete.
    PdiscreteCheck(CheckArgs),
    /// Irreducibility of the restrictions to one-parameter subtori n in a box.
    BertiniScan(ScanArgs),
    /// Search diagonal isogenies whose pullback becomes reducible.
    PbFalsify(PbArgs),
    /// Smith normal form U·M·V = D of an integer matrix.
    Snf(SnfArgs),
    /// Tropical hypersurface, hyperplane section and connectivity.
    Trop(TropArgs),
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// `name=file.json`, repeatable; a bare path is named by its file stem.
    #[arg(long = "input", required = true)]
    inputs: Vec<String>,
    /// Expression over the names: + − * ^k, parentheses, frob(·), pth_root(·), inv(·).
    #[arg(long)]
    expr: Option<String>,
    /// Target cutoff for inv(·).
    #[arg(long)]
    cutoff: Option<String>,
}

#[derive(Args, Debug)]
struct RootArgs {
    #[arg(long)]
    input: PathBuf,
    /// Weight order; lex when absent.
    #[arg(long)]
    order: Option<PathBuf>,
    #[arg(long, default_value = "10")]
    cutoff: String,
    #[arg(long, default_value_t = 20)]
    max_steps: usize,
    /// Levels of p-th roots in Artin–Schreier delegations.
    #[arg(long, default_value_t = DEFAULT_AS_DEPTH)]
    depth: u32,
}

#[derive(Args, Debug)]
struct SubstArgs {
    #[arg(long)]
    input: PathBuf,
    /// Direction, e.g. `3,1`.
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    /// θ, e.g. `1,1`; extension field entries as coordinates `0:1`.
    #[arg(long)]
    theta: Option<String>,
    /// Also look for a non-polynomiality obstruction.
    #[arg(long)]
    witness: bool,
    /// Polynomial the series is a root of, for the degree-bound obstruction.
    #[arg(long)]
    poly: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    /// Weight order; lex when absent.
    #[arg(long)]
    order: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    input: PathBuf,
    /// Cone of directions; the positive orthant when absent.
    #[arg(long)]
    cone: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    bound: i64,
    /// `ones`, `random` (from --seed) or `exhaustive[:k]` over 𝔽_{q^k}.
    #[arg(long, default_value = "ones")]
    theta: String,
    /// Test absolute irreducibility.
    #[arg(long)]
    absolute: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct PbArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 4)]
    bound: i64,
}

#[derive(Args, Debug)]
struct SnfArgs {
    /// JSON file holding a matrix (list of rows) or `{"matrix": …}`.
    #[arg(long, conflicts_with = "matrix")]
    input: Option<PathBuf>,
    /// Inline matrix, rows separated by `;`, e.g. `2,4;6,8`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Args, Debug)]
struct TropArgs {
    /// A ValuedPoly, or a complex with `cells`.
    #[arg(long)]
    input: PathBuf,
    /// `a1,…,an;b` for the hyperplane a·x = b.
    #[arg(long, allow_hyphen_values = true)]
    hyperplane: Option<String>,
    /// Check connectivity through codimension one after removing k − 1 facets.
    #[arg(long)]
    connectivity: Option<usize>,
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, S>(args: I, env: impl Fn(&str) -> Option<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => {
                    let err = CliError::Usage(e.kind().to_string());
                    Outcome { code: 2, stdout: String::new(), stderr: format!("{text}{}\n", err.to_json()) }
                }
            };
        }
    };
    let result = Bounds::from_env(env).and_then(|b| dispatch(&cli, &b));
    match result {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => {
                    let err = CliError::Input(format!("{}: {e}", path.display()));
                    Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("{}\n", err.to_json()) }
                }
            },
            None => Outcome { code: 0, stdout: text, stderr: String::new() },
        },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{}\n", e.to_json()) },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{p}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: p, pointer: "/".into(), reason: e.to_string() })
}

fn load<T>(path: &Path, f: impl Fn(&Value, &str) -> io::Result<T>) -> Result<T, CliError> {
    let v = read_json(path)?;
    f(&v, "").map_err(|e| CliError::Parse { path: path.display().to_string(), pointer: e.pointer, reason: e.reason })
}

fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("{what}: `{x}` is not an integer")))).collect()
}

fn parse_q_list(s: &str, what: &str) -> Result<Vec<Q>, CliError> {
    s.split(',').map(|x| parse_q(x).ok_or_else(|| CliError::Usage(format!("{what}: `{x}` is not a rational")))).collect()
}

fn parse_theta(field: &Field, s: &str) -> Result<Vec<FFElem>, CliError> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            if x.contains(':') {
                let coords: Result<Vec<u64>, _> = x.split(':').map(|c| c.trim().parse::<u64>()).collect();
                match coords {
                    Ok(c) if c.len() <= field.k() && c.iter().all(|&v| v < field.p()) => Ok(field.elem(&c)),
                    _ => Err(CliError::Usage(format!("theta: `{x}` is not a coordinate vector"))),
                }
            } else {
                x.parse::<i64>().map(|v| field.from_int(v)).map_err(|_| CliError::Usage(format!("theta: `{x}` is not an integer")))
            }
        })
        .collect()
}

fn load_order(path: &Option<PathBuf>, d: usize) -> Result<WeightOrder, CliError> {
    match path {
        Some(p) => {
            let o = load(p, io::order_of)?;
            if o.dim() != d {
                return Err(CliError::Input(format!("{}: order has dimension {}, expected {d}", p.display(), o.dim())));
            }
            Ok(o)
        }
        None => Ok(WeightOrder::lex(d)),
    }
}

fn dispatch(cli: &Cli, bounds: &Bounds) -> Result<String, CliError> {
    match &cli.cmd {
        Cmd::Series(a) => cmd_series(a),
        Cmd::Root(a) => cmd_root(a, cli.seed, bounds),
        Cmd::Subst(a) => cmd_subst(a),
        Cmd::PdiscreteCheck(a) => cmd_check(a),
        Cmd::BertiniScan(a) => cmd_scan(a, cli.seed, bounds),
        Cmd::PbFalsify(a) => cmd_pb(a, bounds),
        Cmd::Snf(a) => cmd_snf(a),
        Cmd::Trop(a) => cmd_trop(a, bounds),
    }
}

fn cmd_series(a: &SeriesArgs) -> Result<String, CliError> {
    let mut env: BTreeMap<String, GPSeries> = BTreeMap::new();
    for spec in &a.inputs {
        let (name, path) = match spec.split_once('=') {
            Some((n, p)) => (n.trim().to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(spec);
                let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("f").to_string();
                (stem, p)
            }
        };
        env.insert(name, load(&path, io::series_of)?);
    }
    let cutoff = a.cutoff.as_deref().map(|c| parse_q(c).ok_or_else(|| CliError::Usage(format!("--cutoff: `{c}` is not a rational")))).transpose()?;
    let value = match &a.expr {
        Some(e) => expr::eval(e, &env, cutoff.as_ref())?,
        None if env.len() == 1 => env.values().next().expect("one input").clone(),
        None => return Err(CliError::Usage("--expr is required with several inputs".into())),
    };
    let valuation = match value.valuation() {
        Ok(v) => io::extq_json(&v),
        Err(_) => Value::Null,
    };
    Ok(pretty(&json!({ "result": io::series_json(&value), "valuation": valuation })))
}

fn cmd_root(a: &RootArgs, seed: u64, bounds: &Bounds) -> Result<String, CliError> {
    if a.depth > bounds.max_depth {
        return Err(CliError::Refused(format!("depth {} exceeds the bound {} (PDISCRETE_MAX_DEPTH)", a.depth, bounds.max_depth)));
    }
    let f = load(&a.input, io::laurent_of)?;
    let order = load_order(&a.order, f.dim())?;
    let target = parse_q(&a.cutoff).ok_or_else(|| CliError::Usage(format!("--cutoff: `{}` is not a rational", a.cutoff)))?;
    let opts = PuiseuxOptions { max_steps: a.max_steps, as_depth: a.depth, seed };
    let e = newton_puiseux_with(&f, &order, &target, &opts)?;
    Ok(pretty(&json!({ "polynomial": io::laurent_json(&f), "order": io::order_json(&order), "cutoff": io::q_json(&target), "expansion": io::puiseux_json(&e) })))
}

fn cmd_subst(a: &SubstArgs) -> Result<String, CliError> {
    let mut f = load(&a.input, io::series_of)?;
    if f.support_model().is_none() && *f.cutoff() == ExtQ::Infinity {
        // an exact series is its own support model
        let finite = f.terms_sorted().into_iter().map(|(e, _)| e).collect();
        let m = StructuredSupport { p: f.field().p(), d: f.dim(), finite, families: vec![] };
        f = f.with_support(m)?;
    }
    let n = parse_i64_list(&a.n, "--n")?;
    let spec = match &a.theta {
        Some(t) => SubstSpec::new(n, parse_theta(f.field(), t)?)?,
        None => SubstSpec::ones(f.field(), n)?,
    };
    let mut out = json!({ "n": spec.n(), "theta": spec.theta().iter().map(io::elem_json).collect::<Vec<_>>() });
    if a.witness {
        let h: Option<LaurentPoly> = a.poly.as_ref().map(|p| load(p, io::laurent_of)).transpose()?;
        out["witness"] = io::witness_json(&nonpolynomial_witness(&f, &spec, h.as_ref())?);
    }
    match phi(&f, &spec) {
        Ok(o) => out["phi"] = io::phi_json(&o),
        // a witness run reports the obstruction even when the image does not exist
        Err(e @ SubstError::InfiniteFiber { .. }) if a.witness => out["phi"] = json!({ "error": e.to_string() }),
        Err(e) => return Err(e.into()),
    }
    Ok(pretty(&out))
}

fn cmd_check(a: &CheckArgs) -> Result<String, CliError> {
    let s = load(&a.input, |v, p| io::support_of(v, p, None, None))?;
    let order = load_order(&a.order, s.d)?;
    Ok(pretty(&match pdiscrete_check(&s, &order) {
        Ok(c) => io::certificate_json(&c),
        Err(v) => io::violation_json(&v),
    }))
}

fn cmd_scan(a: &ScanArgs, seed: u64, bounds: &Bounds) -> Result<String, CliError> {
    if a.bound > bounds.max_box {
        return Err(CliError::Refused(format!("box {} exceeds the bound {} (PDISCRETE_MAX_BOX)", a.bound, bounds.max_box)));
    }
    if a.bound < 1 {
        return Err(CliError::Usage("--bound must be at least 1".into()));
    }
    let f = load(&a.input, io::laurent_of)?;
    let cone = match &a.cone {
        Some(p) => load(p, io::cone_of)?,
        None => Cone::positive_orthant(f.dim()),
    };
    let theta = match a.theta.as_str() {
        "ones" => ThetaPolicy::Ones,
        "random" => ThetaPolicy::Random { seed },
        t => match t.strip_prefix("exhaustive") {
            Some("") => ThetaPolicy::Exhaustive { extension: 1 },
            Some(k) => match k.strip_prefix(':').and_then(|k| k.parse::<usize>().ok()).filter(|&k| k >= 1) {
                Some(k) => ThetaPolicy::Exhaustive { extension: k },
                None => return Err(CliError::Usage(format!("--theta: bad extension degree in `{t}`"))),
            },
            None => return Err(CliError::Usage(format!("--theta: unknown policy `{t}`"))),
        },
    };
    let opts = ScanOptions { bound: a.bound, theta, absolute: a.absolute, exclude: vec![] };
    let r = bertini_scan(&f, &cone, &opts)?;
    Ok(match a.format {
        Format::Json => pretty(&io::scan_json(&r)),
        Format::Csv => io::scan_csv(&r),
    })
}

fn cmd_pb(a: &PbArgs, bounds: &Bounds) -> Result<String, CliError> {
    if a.bound > bounds.max_box {
        return Err(CliError::Refused(format!("box {} exceeds the bound {} (PDISCRETE_MAX_BOX)", a.bound, bounds.max_box)));
    }
    let f = load(&a.input, io::laurent_of)?;
    Ok(pretty(&io::pb_json(&pb_falsify(&f, a.bound)?)))
}

fn cmd_snf(a: &SnfArgs) -> Result<String, CliError> {
    let m: Vec<Vec<BigInt>> = match (&a.input, &a.matrix) {
        (Some(p), None) => load(p, |v, ptr| match v.get("matrix") {
            Some(m) => io::int_matrix_of(m, &format!("{ptr}/matrix")),
            None => io::int_matrix_of(v, ptr),
        })?,
        (None, Some(s)) => {
            let rows: Vec<Vec<BigInt>> = s
                .split(';')
                .map(|r| parse_i64_list(r, "--matrix").map(|v| v.into_iter().map(BigInt::from).collect()))
                .collect::<Result<_, _>>()?;
            if rows.iter().any(|r| r.len() != rows[0].len()) {
                return Err(CliError::Usage("--matrix: rows have different lengths".into()));
            }
            rows
        }
        _ => return Err(CliError::Usage("give --input or --matrix".into())),
    };
    let s = snf(&m);
    Ok(pretty(&json!({ "matrix": io::int_matrix_json(&m), "smith": io::smith_json(&s) })))
}

fn cmd_trop(a: &TropArgs, bounds: &Bounds) -> Result<String, CliError> {
    let v = read_json(&a.input)?;
    let path = a.input.display().to_string();
    let parse_err = |e: io::SchemaError| CliError::Parse { path: path.clone(), pointer: e.pointer, reason: e.reason };
    let (sigma, input) = if v.get("cells").is_some() {
        let c = io::complex_of(&v, "").map_err(parse_err)?;
        (c, Value::Null)
    } else {
        let f = io::valued_of(&v, "").map_err(parse_err)?;
        (trop_hypersurface(&f)?, io::valued_json(&f))
    };
    let mut out = json!({ "input": input, "complex": io::complex_json(&sigma) });
    if let Some(h) = &a.hyperplane {
        let (normal, offset) = h.split_once(';').ok_or_else(|| CliError::Usage("--hyperplane: expected `a1,…,an;b`".into()))?;
        let normal = parse_q_list(normal, "--hyperplane")?;
        let offset = parse_q(offset).ok_or_else(|| CliError::Usage(format!("--hyperplane: `{offset}` is not a rational")))?;
        let (section, transverse) = transverse_intersect(&sigma, &normal, &offset)?;
        out["intersection"] = json!({ "hyperplane": { "normal": io::qvec_json(&normal), "offset": io::q_json(&offset) }, "transverse": transverse, "complex": io::complex_json(&section) });
    }
    if let Some(k) = a.connectivity {
        let subsets = binomial(sigma.top.len() as u64, k.saturating_sub(1) as u64);
        if subsets > bounds.max_subsets {
            return Err(CliError::Refused(format!("{subsets} facet subsets exceed the bound {} (PDISCRETE_MAX_SUBSETS)", bounds.max_subsets)));
        }
        out["connectivity"] = json!({ "k": k, "subsets": subsets, "connected": connectivity_through_codim1(&sigma, k)? });
    }
    Ok(pretty(&out))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// A small recursive-descent evaluator for `series --expr`.
mod expr {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    enum Tok {
        Ident(String),
        Int(u64),
        Op(char),
    }

    fn lex(s: &str) -> Result<Vec<Tok>, CliError> {
        let cs: Vec<char> = s.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[st..i].iter().collect();
                out.push(Tok::Int(t.parse().map_err(|_| CliError::Usage(format!("--expr: number `{t}` too large")))?));
            } else if c.is_alphabetic() || c == '_' {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            } else if "+-*^()".contains(c) {
                out.push(Tok::Op(c));
                i += 1;
            } else {
                return Err(CliError::Usage(format!("--expr: unexpected `{c}`")));
            }
        }
        Ok(out)
    }

    struct P<'a> {
        toks: Vec<Tok>,
        i: usize,
        env: &'a BTreeMap<String, GPSeries>,
        cutoff: Option<&'a Q>,
    }

    fn usage(m: impl Into<String>) -> CliError {
        CliError::Usage(format!("--expr: {}", m.into()))
    }

    impl P<'_> {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.i)
        }

        fn eat(&mut self, c: char) -> bool {
            if self.peek() == Some(&Tok::Op(c)) {
                self.i += 1;
                true
            } else {
                false
            }
        }

        fn any(&self) -> &GPSeries {
            self.env.values().next().expect("inputs are required")
        }

        fn sum(&mut self) -> Result<GPSeries, CliError> {
            let mut acc = self.product()?;
            loop {
                if self.eat('+') {
                    acc = acc.add(&self.product()?)?;
                } else if self.eat('-') {
                    acc = acc.sub(&self.product()?)?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn product(&mut self) -> Result<GPSeries, CliError> {
            let mut acc = self.power()?;
            while self.eat('*') {
                acc = acc.mul(&self.power()?)?;
            }
            Ok(acc)
        }

        fn power(&mut self) -> Result<GPSeries, CliError> {
            let base = self.unary()?;
            if self.eat('^') {
                match self.peek().cloned() {
                    Some(Tok::Int(k)) => {
                        self.i += 1;
                        return Ok(base.pow(k)?);
                    }
                    _ => return Err(usage("exponent must be a nonnegative integer")),
                }
            }
            Ok(base)
        }

        fn unary(&mut self) -> Result<GPSeries, CliError> {
            if self.eat('-') {
                return Ok(self.unary()?.neg());
            }
            self.atom()
        }

        fn atom(&mut self) -> Result<GPSeries, CliError> {
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.i += 1;
                    let f = self.any();
                    Ok(GPSeries::constant(&f.field().from_int((k % f.field().p()) as i64), f.order()))
                }
                Some(Tok::Op('(')) => {
                    self.i += 1;
                    let v = self.sum()?;
                    if !self.eat(')') {
                        return Err(usage("missing `)`"));
                    }
                    Ok(v)
                }
                Some(Tok::Ident(name)) => {
                    self.i += 1;
                    if self.eat('(') {
                        let arg = self.sum()?;
                        if !self.eat(')') {
                            return Err(usage("missing `)`"));
                        }
                        return match name.as_str() {
                            "frob" => Ok(arg.frobenius()),
                            "pth_root" => Ok(arg.pth_root_series()),
                            "inv" => {
                                let target = match self.cutoff {
                                    Some(c) => c.clone(),
                                    None => match arg.cutoff() {
                                        ExtQ::Finite(c) => c.clone(),
                                        ExtQ::Infinity => return Err(usage("inv of an exact series needs --cutoff")),
                                    },
                                };
                                Ok(arg.inverse(&target)?)
                            }
                            _ => Err(usage(format!("unknown function `{name}`"))),
                        };
                    }
                    self.env.get(&name).cloned().ok_or_else(|| usage(format!("unknown series `{name}`")))
                }
                _ => Err(usage("unexpected end of expression")),
            }
        }
    }

    pub(super) fn eval(s: &str, env: &BTreeMap<String, GPSeries>, cutoff: Option<&Q>) -> Result<GPSeries, CliError> {
        let mut p = P { toks: lex(s)?, i: 0, env, cutoff };
        let v = p.sum()?;
        if p.i != p.toks.len() {
            return Err(usage(format!("trailing input at token {}", p.i + 1)));
        }
        Ok(v)
    }
}
