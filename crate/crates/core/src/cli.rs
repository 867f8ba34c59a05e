//! The `casselman` command line.
//!
//! Exit codes: 0 on success (for `verify`, when the observed failures are the
//! expected ones), 1 on a verification mismatch or internal failure, 2 on a
//! usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bruhat::{classify, find_good_word, is_tight};
use crate::cache::{load_or_build, resolve_dir};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::rootsys::CartanType;
use crate::scalars::{random_generic_point, random_rational_point, IdentityCheckConfig, MERSENNE_61};
use crate::verify::{default_config, run_suite, Context, Suite, SweepReport};
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Parser, Debug)]
#[command(name = "casselman", version, about = "Bruhat combinatorics, KL polynomials and Casselman transition matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical element list, lengths and Bruhat statistics.
    Group(Common),
    /// The matrices m(u,v) and m̃(u,v) at one random generic point.
    Mmatrix(Common),
    /// The first good word for v with respect to u.
    Goodword(Common),
    /// S(u,v), S′(u,v) and the rest of the pair classification.
    Ssets(Common),
    /// Kazhdan–Lusztig polynomials, for one pair or the whole group.
    Kl(Common),
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type, e.g. A3, B2, D4.
    #[arg(long = "type", value_parser = parse_type)]
    cartan: CartanType,
    /// Element as a word of 1-based generator digits ("" is the identity).
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    /// Prime for the scalar field; repeat for several.
    #[arg(long = "prime")]
    primes: Vec<u64>,
    /// Sample points per prime.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use exact rational arithmetic instead of prime fields.
    #[arg(long)]
    rational: bool,
    /// Check only this many qualifying pairs (main and telescoping suites).
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_type(s: &str) -> std::result::Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Output of a command: JSON plus, optionally, a table for `--format csv`.
struct Output {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    exit: i32,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, table: None, exit: 0 }
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match (format, &self.table) {
            (Format::Csv, Some((header, rows))) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).map_err(csv_err)?;
                for r in rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                w.into_inner().map_err(|e| Error::InvalidConfig(e.to_string()))
            }
            (Format::Csv, None) => Err(Error::InvalidConfig("this command has no CSV form".into())),
            (Format::Json, _) => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidConfig(e.to_string())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedType(_)
        | Error::BadTypeName(_)
        | Error::NotPrime(_)
        | Error::InvalidConfig(_)
        | Error::GeneratorOutOfRange { .. }
        | Error::BadWord(_)
        | Error::NotReduced(_)
        | Error::NotPositive(_)
        | Error::Precondition(_) => 2,
        _ => 1,
    }
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Group(c)
        | Command::Mmatrix(c)
        | Command::Goodword(c)
        | Command::Ssets(c)
        | Command::Kl(c)
        | Command::Verify { common: c, .. } => c,
    };
    let result = execute(&cli.command, common).and_then(|out| {
        let bytes = out.render(common.format)?;
        match &common.out {
            Some(path) => fs::write(path, &bytes)?,
            None => stdout.write_all(&bytes)?,
        }
        Ok(out.exit)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run_with`] on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn context(c: &Common, need_kl: bool) -> Result<Context> {
    load_or_build(&resolve_dir(c.cache_dir.as_deref()), c.cartan, need_kl)
}

/// Parses an element word; the word need not be reduced.
pub fn parse_element(word: &str, g: &WeylGroup) -> Result<WeylElement> {
    g.parse(word)
}

fn pair(c: &Common, g: &WeylGroup) -> Result<(WeylElement, WeylElement)> {
    let (Some(u), Some(v)) = (&c.u, &c.v) else {
        return Err(Error::Precondition("--u and --v are required".into()));
    };
    let (u, v) = (parse_element(u, g)?, parse_element(v, g)?);
    if !g.bruhat_leq(u, v) {
        return Err(Error::Precondition(format!("{} ≰ {} in the Bruhat order", g.format(u), g.format(v))));
    }
    Ok((u, v))
}

fn config(c: &Common) -> Result<IdentityCheckConfig> {
    let mut cfg = default_config(c.cartan);
    if !c.primes.is_empty() {
        cfg.primes = c.primes.clone();
    }
    if let Some(p) = c.points {
        cfg.points_per_prime = p;
    }
    cfg.seed = c.seed;
    cfg.rational = c.rational;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cmd: &Command, c: &Common) -> Result<Output> {
    match cmd {
        Command::Group(_) => group(c),
        Command::Mmatrix(_) => mmatrix(c),
        Command::Goodword(_) => goodword(c),
        Command::Ssets(_) => ssets(c),
        Command::Kl(_) => kl(c),
        Command::Verify { suite, .. } => verify(*suite, c),
    }
}

fn group(c: &Common) -> Result<Output> {
    let ctx = context(c, false)?;
    let g = ctx.group();
    let rows: Vec<Vec<String>> = g.elements().map(|w| vec![g.format(w), g.length(w).to_string()]).collect();
    let json = json!({
        "type": g.cartan().to_string(),
        "order": g.order(),
        "checksum": g.checksum(),
        "longest_element": g.format(g.longest_element()),
        "bruhat_pairs": g.bruhat_pair_count(),
        "positive_roots": g.roots().positive().map(|a| g.roots().coords(a).to_vec()).collect::<Vec<_>>(),
        "elements": g.elements().map(|w| json!({"word": g.format(w), "length": g.length(w)})).collect::<Vec<_>>(),
    });
    Ok(Output { json, table: Some((vec!["word", "length"], rows)), exit: 0 })
}

fn mmatrix(c: &Common) -> Result<Output> {
    let ctx = context(c, false)?;
    let g = ctx.group();
    let z = if c.rational {
        random_rational_point(g.roots(), c.seed)?
    } else {
        let cfg = config(c)?;
        let p = cfg.primes.first().copied().unwrap_or(MERSENNE_61);
        random_generic_point(g.roots(), p, c.seed)?
    };
    let h = HeckeAlgebra::new(g, z.q.clone())?;
    let mut tm = h.m_matrix(&z)?;
    tm.seed = Some(c.seed);
    let mut rows = Vec::new();
    for u in g.elements() {
        for v in g.elements().filter(|&v| g.bruhat_leq(u, v)) {
            rows.push(vec![g.format(u), g.format(v), tm.m(u, v).to_string(), tm.mtilde(u, v).to_string()]);
        }
    }
    Ok(Output { json: tm.to_json(), table: Some((vec!["u", "v", "m", "mtilde"], rows)), exit: 0 })
}

fn goodword(c: &Common) -> Result<Output> {
    let ctx = context(c, false)?;
    let g = ctx.group();
    let (u, v) = pair(c, g)?;
    let gw = find_good_word(g, u, v)?;
    Ok(Output::json(json!({
        "type": g.cartan().to_string(),
        "u": g.format(u),
        "v": g.format(v),
        "deodhar_tight": is_tight(g, u, v),
        "good_word": gw.map(|w| w.to_json(g)),
    })))
}

fn ssets(c: &Common) -> Result<Output> {
    let ctx = context(c, true)?;
    let g = ctx.group();
    let (u, v) = pair(c, g)?;
    Ok(Output::json(classify(g, ctx.kl(), u, v)?.to_json(g)))
}

fn kl(c: &Common) -> Result<Output> {
    let ctx = context(c, true)?;
    let g = ctx.group();
    let kl = ctx.kl();
    let header = vec!["u", "v", "coefficients", "mu"];
    let row = |u: WeylElement, v: WeylElement| {
        let p = kl.p(u, v);
        let coeffs = p.coeffs().iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        vec![g.format(u), g.format(v), coeffs, kl.mu(u, v).to_string()]
    };
    if c.u.is_some() || c.v.is_some() {
        let (u, v) = pair(c, g)?;
        let p = kl.p(u, v);
        let json = json!({
            "type": g.cartan().to_string(),
            "u": g.format(u),
            "v": g.format(v),
            "coefficients": p.coeffs(),
            "polynomial": p.to_string(),
            "mu": kl.mu(u, v),
            "prec": kl.prec(u, v),
        });
        return Ok(Output { json, table: Some((header, vec![row(u, v)])), exit: 0 });
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for u in g.elements() {
        for v in g.elements().filter(|&v| g.bruhat_leq(u, v)) {
            rows.push(row(u, v));
            entries.push(json!({"u": g.format(u), "v": g.format(v), "coefficients": kl.p(u, v).coeffs()}));
        }
    }
    let json = json!({"type": g.cartan().to_string(), "entries": entries});
    Ok(Output { json, table: Some((header, rows)), exit: 0 })
}

fn verify(suite: Suite, c: &Common) -> Result<Output> {
    let cfg = config(c)?;
    let ctx = context(c, true)?;
    let report: SweepReport = run_suite(suite, &ctx, &cfg, c.sample)?;
    let rows = report
        .failures
        .iter()
        .map(|f| {
            vec![
                f.u.clone(),
                f.v.clone(),
                f.length_difference.to_string(),
                f.s_size.to_string(),
                f.sprime_size.to_string(),
                f.kl_one.to_string(),
                f.kl_dual_one.to_string(),
                f.ascending_good_word.map(|b| b.to_string()).unwrap_or_default(),
                f.detail.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = vec!["u", "v", "length_difference", "s_size", "sprime_size", "kl_one", "kl_dual_one", "ascending_good_word", "detail"];
    let exit = if report.ok() { 0 } else { 1 };
    Ok(Output { json: serde_json::to_value(&report)?, table: Some((header, rows)), exit })
}
