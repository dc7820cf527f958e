//! Command-line front end for `tangent_forge`.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error,
//! 3 budget or degeneracy error.

pub mod args;
pub mod config;
pub mod output;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use rayon::ThreadPool;
use tangent_forge::{
    derive, grid_search, instantiate, normalize, oracle_enumerate, rearrange_equal_sums, verify_numeric,
    verify_solution, Coefficient, ConstructionError, ExploreError, NumericTuple, OracleConfig, PolyError, Power,
    ProblemSpec, SearchConfig,
};
use thiserror::Error;

use args::{
    Cli, Command, DeriveArgs, Format, InstantiateArgs, OracleArgs, ProblemArgs, ReproduceArgs, SearchArgs, VerifyArgs,
};
use config::{parse_assignment, parse_int, parse_ints, parse_range, parse_var_range, ConfigFile};
use output::{Kind, NumericPayload, OraclePayload, OutputRecord, SymbolicPayload, VerificationPayload};

pub const THREADS_ENV: &str = "TANGENT_FORGE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::DegenerateTemplates { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExploreError> for CliError {
    fn from(e: ExploreError) -> Self {
        match e {
            ExploreError::Poly(p) => p.into(),
            ExploreError::Construction(c) => c.into(),
            ExploreError::VerificationFailed { .. } => CliError::Failed(e.to_string()),
            ExploreError::UnsupportedCoefficients | ExploreError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            ExploreError::AllZeroTuple | ExploreError::BudgetExceeded { .. } | ExploreError::Overflow => {
                CliError::Budget(e.to_string())
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let result = thread_pool().and_then(|pool| dispatch(&cli, pool.as_ref(), out, err));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// A pool sized by the thread-cap variable, if it is set.
fn thread_pool() -> Result<Option<ThreadPool>, CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let threads = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Some(pool))
}

fn in_pool<R: Send>(pool: Option<&ThreadPool>, f: impl FnOnce() -> R + Send) -> R {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn dispatch(cli: &Cli, pool: Option<&ThreadPool>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Derive(a) => cmd_derive(a, cli.format, out),
        Command::Instantiate(a) => cmd_instantiate(a, cli.format, out),
        Command::Verify(a) => cmd_verify(a, cli.format, out, err),
        Command::Search(a) => cmd_search(a, pool, cli.format, out, err),
        Command::Oracle(a) => cmd_oracle(a, pool, cli.format, out),
        Command::Reproduce(a) => cmd_reproduce(a, cli.format, out, err),
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    kind: Kind,
    payload: &impl serde::Serialize,
    text: String,
) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", OutputRecord::new(kind, payload).to_json_line())?,
        Format::Text => write!(out, "{text}")?,
    }
    Ok(())
}

fn coefficient(v: Option<u64>) -> Coefficient {
    v.map_or(Coefficient::Symbolic, Coefficient::Fixed)
}

fn problem_spec(p: &ProblemArgs) -> Result<ProblemSpec, CliError> {
    Ok(ProblemSpec::new(p.t1, p.t2, coefficient(p.m), coefficient(p.n))?)
}

fn cmd_derive(a: &DeriveArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let sol = derive(&problem_spec(&a.problem)?)?;
    let report = a.verify.then(|| verify_solution(&sol));
    let payload = SymbolicPayload::new(&sol, report.as_ref());
    emit(out, format, Kind::SymbolicSolution, &payload, payload.to_text())?;
    match report {
        Some(r) if !r.is_nontrivial_solution() => Ok(1),
        _ => Ok(0),
    }
}

fn cmd_instantiate(a: &InstantiateArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let sol = derive(&problem_spec(&a.problem)?)?;
    let values = parse_assignment(&a.assign)?;
    let mut s = instantiate(&sol, &values)?;
    if a.normalize {
        s = normalize(&s)?;
    }
    let sums = if a.equal_sums { Some(rearrange_equal_sums(s.tuple())?) } else { None };
    let payload = NumericPayload::new(&s, sums.as_ref());
    emit(out, format, Kind::NumericSolution, &payload, payload.to_text())?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let file = a.file.as_deref().map(ConfigFile::load).transpose()?.unwrap_or_default();
    file.check_keys(&["m", "n", "xs", "ys"], &[])?;
    let field = |flag: &Option<String>, key: &str| {
        flag.as_deref()
            .or_else(|| file.get(key))
            .map(str::to_string)
            .ok_or_else(|| CliError::Usage(format!("missing `{key}`; pass --{key} or a tuple file")))
    };
    let tuple = NumericTuple::new(
        parse_int(&field(&a.m, "m")?)?,
        parse_int(&field(&a.n, "n")?)?,
        parse_ints(&field(&a.xs, "xs")?)?,
        parse_ints(&field(&a.ys, "ys")?)?,
    );
    let powers = match a.k {
        None => Power::BOTH.to_vec(),
        Some(k) => vec![Power::from_exponent(k).ok_or_else(|| CliError::Usage(format!("k must be 1 or 3, got {k}")))?],
    };
    let checks: Vec<_> = powers.into_iter().map(|k| (k, verify_numeric(&tuple, k))).collect();
    let payload = VerificationPayload::new(&tuple, &checks);
    emit(out, format, Kind::Verification, &payload, payload.to_text())?;
    if payload.ok {
        Ok(0)
    } else {
        for c in payload.checks.iter().filter(|c| !c.ok) {
            writeln!(err, "k={} check failed: {} != {}", c.k, c.lhs, c.rhs)?;
        }
        Ok(1)
    }
}

const SEARCH_KEYS: [&str; 10] =
    ["t1", "t2", "m", "n", "range", "height", "dedup", "filter_degenerate", "limit", "max_points"];

fn search_config(a: &SearchArgs) -> Result<(SearchConfig, Option<usize>), CliError> {
    let file = a.config.as_deref().map(ConfigFile::load).transpose()?.unwrap_or_default();
    file.check_keys(&SEARCH_KEYS, &["range."])?;
    let need = |v: Option<usize>, key: &str| v.ok_or_else(|| CliError::Usage(format!("search needs `{key}`")));
    let t1 = need(file.pick(a.t1, "t1")?, "t1")?;
    let t2 = need(file.pick(a.t2, "t2")?, "t2")?;
    let m = file.pick(a.m, "m")?.unwrap_or(1);
    let n = file.pick(a.n, "n")?.unwrap_or(1);
    let spec = ProblemSpec::new(t1, t2, Coefficient::Fixed(m), Coefficient::Fixed(n))?;

    let range = match a.range.as_deref().or(file.get("range")) {
        Some(r) => parse_range(r)?,
        None => -3..=3,
    };
    let mut cfg = SearchConfig::new(spec, range);
    for (var, r) in file.with_prefix("range.") {
        let (v, r) = parse_var_range(&format!("{var}={r}"))?;
        cfg.ranges.insert(v, r);
    }
    for spec in &a.vars {
        let (v, r) = parse_var_range(spec)?;
        cfg.ranges.insert(v, r);
    }
    if let Some(h) = a.height.as_deref().or(file.get("height")) {
        cfg.height_bound = parse_int(h)?;
    }
    cfg.dedup = !a.no_dedup && file.flag("dedup")?.unwrap_or(true);
    cfg.filter_degenerate = !a.keep_degenerate && file.flag("filter_degenerate")?.unwrap_or(true);
    if let Some(mp) = file.pick(a.max_points, "max_points")? {
        cfg.max_points = mp;
    }
    let limit = file.pick(a.limit, "limit")?;
    Ok((cfg, limit))
}

fn cmd_search(
    a: &SearchArgs,
    pool: Option<&ThreadPool>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let (cfg, limit) = search_config(a)?;
    let outcome = in_pool(pool, || grid_search(&cfg))?;
    let shown = limit.unwrap_or(usize::MAX).min(outcome.solutions.len());
    for s in &outcome.solutions[..shown] {
        let sums = rearrange_equal_sums(s.tuple()).ok();
        let payload = NumericPayload::new(s, sums.as_ref());
        emit(out, format, Kind::NumericSolution, &payload, payload.to_text_line() + "\n")?;
    }
    let st = &outcome.stats;
    writeln!(
        err,
        "search: {} points, {} solutions ({} shown), {} degenerate, {} collapsed, {} above height, {} duplicates",
        st.points,
        outcome.solutions.len(),
        shown,
        st.degenerate,
        st.collapsed,
        st.above_height,
        st.duplicates
    )?;
    Ok(0)
}

fn cmd_oracle(a: &OracleArgs, pool: Option<&ThreadPool>, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let file = a.config.as_deref().map(ConfigFile::load).transpose()?.unwrap_or_default();
    file.check_keys(&["m", "n", "t1", "t2", "bound", "ceiling"], &[])?;
    let need = |key: &str| CliError::Usage(format!("oracle needs `{key}`"));
    let t1 = file.pick(a.t1, "t1")?.ok_or_else(|| need("t1"))?;
    let t2 = file.pick(a.t2, "t2")?.ok_or_else(|| need("t2"))?;
    let bound = file.pick(a.bound, "bound")?.ok_or_else(|| need("bound"))?;
    let m = file.pick(a.m, "m")?.unwrap_or(1);
    let n = file.pick(a.n, "n")?.unwrap_or(1);
    let mut cfg = OracleConfig::new(m, n, t1, t2, bound);
    if let Some(c) = file.pick(a.ceiling, "ceiling")? {
        cfg.ceiling = c;
    }
    let found = in_pool(pool, || oracle_enumerate(&cfg))?;
    let payload = OraclePayload::new(&cfg, &found);
    emit(out, format, Kind::OracleSet, &payload, payload.to_text())?;
    Ok(0)
}

fn cmd_reproduce(a: &ReproduceArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let payload = reproduce::reproduce(a.example)?;
    emit(out, format, Kind::Reproduction, &payload, payload.to_text())?;
    if payload.ok {
        return Ok(0);
    }
    for c in payload.mismatches() {
        writeln!(err, "{} {}: expected {}, got {}", payload.example, c.label, c.expected, c.actual)?;
    }
    Ok(1)
}
