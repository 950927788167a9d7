//! `glmn`: command-line driver for the gl(m|n) checks in `glmn-core`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glmn_core::modrep::{cross_layer_check, scan_simplicity, verify_theorem53_consequences};
use glmn_core::scalar::{parse_rational, rational_to_short_string};
use glmn_core::superpbw::{
    parse_expression, pbw_to_json, verify_lemma41, verify_theorem, PbwElement, Straightener,
};
use glmn_core::{Error, Integer, Shape, Weight};
use num_traits::{One, Signed};
use serde_json::json;

const EXIT_DISAGREEMENT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "glmn",
    version,
    about = "Exact checks for gl(m|n) typicality and Kac modules"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Output format; csv is available for `scan` and `morita-check`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "GLMN_FORMAT")]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, env = "GLMN_OUT")]
    out: Option<PathBuf>,
    /// Largest m·n accepted by the symbolic straightening checks.
    #[arg(long, global = true, default_value_t = glmn_core::superpbw::DEFAULT_BLOWUP_CAP, env = "GLMN_CAP_TERMS")]
    cap_terms: usize,
    /// Largest number of lines enumerated per weight space by the simplicity oracle.
    #[arg(long, global = true, default_value_t = glmn_core::modrep::DEFAULT_LINE_CAP, env = "GLMN_CAP_LINES")]
    cap_lines: u128,
    /// Largest extension degree k tried for 𝔽_{p^k}; defaults to p.
    #[arg(long, global = true, env = "GLMN_KMAX")]
    kmax: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240601, env = "GLMN_SEED")]
    seed: u64,
    /// Worker threads; output does not depend on this value.
    #[arg(long, global = true, env = "GLMN_THREADS")]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
struct ShapeArgs {
    #[arg(long, env = "GLMN_M")]
    m: usize,
    #[arg(long, env = "GLMN_N")]
    n: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape, Error> {
        Shape::new(self.m, self.n)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the factored typicality polynomial, optionally evaluated at λ.
    Typicality {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Comma-separated coordinates; rationals as a/b.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Compare the highest-weight value of e_top·f_top with the typicality polynomial.
    VerifyTheorem {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Check that e_{i,m+n} times the odd tail kills v_λ for every i ≤ m.
    Lemma41 {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Straighten a word expression such as "e 1 2 * f 1 2".
    Straighten {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare typicality with simplicity of K(λ) for every restricted λ, χ = 0.
    Scan {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, env = "GLMN_P")]
        p: u64,
    },
    /// Check simplicity and invariants of K_χ(λ) for a diagonal p-character χ.
    MoritaCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, env = "GLMN_P")]
        p: u64,
        /// Comma-separated diagonal values of χ.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Compare raw word actions on K(λ) with their straightened forms.
    CrossCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, env = "GLMN_P")]
        p: u64,
        #[arg(long, default_value_t = 5)]
        lambdas: usize,
        #[arg(long, default_value_t = 60)]
        words: usize,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
}

/// A finished report: its rendering and whether every check passed.
struct Outcome {
    body: String,
    ok: bool,
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Core(Error::ResourceCap { .. }) => EXIT_RESOURCE,
        Failure::Core(Error::Internal(_)) | Failure::Io(_) => EXIT_DISAGREEMENT,
        Failure::Core(_) | Failure::Usage(_) => EXIT_PRECONDITION,
    }
}

fn message(f: &Failure) -> String {
    match f {
        Failure::Core(e) => e.to_string(),
        Failure::Usage(s) => format!("usage: {s}"),
        Failure::Io(s) => format!("i/o error: {s}"),
    }
}

fn no_csv(cfg: &RunConfig, command: &str) -> Result<(), Failure> {
    if cfg.format == Format::Csv {
        return Err(Failure::Usage(format!(
            "`{command}` has no csv output; use json or text"
        )));
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serialises")
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Core(Error::Parse(format!("malformed integer `{t}`"))))
        })
        .collect()
}

fn cmd_typicality(cfg: &RunConfig, shape: &Shape, lambda: Option<&str>) -> CmdResult {
    no_csv(cfg, "typicality")?;
    let poly = shape.typicality_poly()?;
    let value = match lambda {
        None => None,
        Some(s) => {
            let coords = s
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            Some(poly.evaluate(&Weight::new(coords))?)
        }
    };
    let body = match cfg.format {
        Format::Json => {
            let mut v = json!({ "polynomial": poly.to_string(), "factors": poly.to_json() });
            if let Some(x) = &value {
                v["value"] = json!(glmn_core::scalar::rational_to_string(x));
            }
            pretty(&v)
        }
        _ => match &value {
            Some(x) => rational_to_short_string(x),
            None => poly.to_string(),
        },
    };
    Ok(Outcome { body, ok: true })
}

fn cmd_verify_theorem(cfg: &RunConfig, shape: &Shape) -> CmdResult {
    no_csv(cfg, "verify-theorem")?;
    let check = verify_theorem(shape, cfg.cap_terms)?;
    let verdict = if check.matches { "match" } else { "mismatch" };
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "m": shape.m,
            "n": shape.n,
            "f_h": check.f_h.to_json(),
            "expected": check.expected.to_json(),
            "balanced": check.balanced,
            "matches": check.matches,
        })),
        _ => format!(
            "f(h)(λ) = {}\nf_{{m,n}}(λ) = {}\n{verdict}",
            check.f_h, check.expected
        ),
    };
    Ok(Outcome {
        body,
        ok: check.matches,
    })
}

fn cmd_lemma41(cfg: &RunConfig, shape: &Shape) -> CmdResult {
    no_csv(cfg, "lemma41")?;
    if shape.odd_dim() > cfg.cap_terms {
        return Err(Error::ResourceCap {
            what: format!("m·n for gl({}|{})", shape.m, shape.n),
            needed: shape.odd_dim() as u128,
            cap: cfg.cap_terms as u128,
        }
        .into());
    }
    let results = (1..=shape.m)
        .map(|i| verify_lemma41(shape, i).map(|v| (i, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = results.iter().all(|(_, v)| *v);
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "m": shape.m,
            "n": shape.n,
            "results": results.iter().map(|(i, v)| json!({ "i": i, "vanishes": v })).collect::<Vec<_>>(),
        })),
        _ => results
            .iter()
            .map(|(i, v)| {
                format!(
                    "i = {i}: {}",
                    if *v { "vanishes" } else { "does not vanish" }
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome { body, ok })
}

fn render_pbw(x: &PbwElement<Integer>, st: &Straightener<Integer>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (factors, c)) in x.factor_terms(st.order()).into_iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (k, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            _ => out.push_str(&format!(" {sign} ")),
        }
        let mag = c.abs();
        let mut parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        if !mag.is_one() || parts.is_empty() {
            parts.insert(0, mag.to_string());
        }
        out.push_str(&parts.join("·"));
    }
    out
}

fn cmd_straighten(cfg: &RunConfig, shape: &Shape, expr: &str) -> CmdResult {
    no_csv(cfg, "straighten")?;
    let words = parse_expression(shape, expr)?;
    let mut st = Straightener::new(*shape, Integer::one());
    let x = st.straighten(&words)?;
    let body = match cfg.format {
        Format::Json => pretty(&pbw_to_json(&x, st.order())),
        _ => render_pbw(&x, &st),
    };
    Ok(Outcome { body, ok: true })
}

fn cmd_scan(cfg: &RunConfig, shape: &Shape, p: u64) -> CmdResult {
    let report = scan_simplicity(shape, p, cfg.cap_lines, None)?;
    let body = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => format!(
            "gl({}|{}) over F_{p}: {} weights, {} typical, {} simple, {} disagreements",
            shape.m,
            shape.n,
            report.rows.len(),
            report.typical_count,
            report.simple_count,
            report.disagreements
        ),
    };
    Ok(Outcome {
        body,
        ok: report.disagreements == 0,
    })
}

fn cmd_morita_check(cfg: &RunConfig, shape: &Shape, p: u64, chi: &str) -> CmdResult {
    let chi = parse_ints(chi)?;
    let report = verify_theorem53_consequences(shape, p, &chi, cfg.kmax, cfg.cap_lines)?;
    let body = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let simple = report.rows.iter().filter(|r| r.kac_simple).count();
            format!(
                "gl({}|{}), χ = ({}) over F_{}^{}: {} weights, {} simple, {} failures",
                shape.m,
                shape.n,
                report
                    .chi
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                report.p,
                report.k,
                report.rows.len(),
                simple,
                report.failures
            )
        }
    };
    Ok(Outcome {
        body,
        ok: report.failures == 0,
    })
}

fn cmd_cross_check(
    cfg: &RunConfig,
    shape: &Shape,
    p: u64,
    lambdas: usize,
    words: usize,
    max_len: usize,
) -> CmdResult {
    no_csv(cfg, "cross-check")?;
    let report = cross_layer_check(shape, p, lambdas, words, max_len, cfg.seed)?;
    let body = match cfg.format {
        Format::Json => report.to_json(),
        _ => format!(
            "gl({}|{}) over F_{p}, seed {}: {} comparisons, {} mismatches",
            shape.m, shape.n, report.seed, report.comparisons, report.mismatches
        ),
    };
    Ok(Outcome {
        body,
        ok: report.mismatches == 0,
    })
}

fn dispatch(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Typicality { shape, lambda } => {
            cmd_typicality(cfg, &shape.shape()?, lambda.as_deref())
        }
        Command::VerifyTheorem { shape } => cmd_verify_theorem(cfg, &shape.shape()?),
        Command::Lemma41 { shape } => cmd_lemma41(cfg, &shape.shape()?),
        Command::Straighten { shape, expr } => cmd_straighten(cfg, &shape.shape()?, expr),
        Command::Scan { shape, p } => cmd_scan(cfg, &shape.shape()?, *p),
        Command::MoritaCheck { shape, p, chi } => cmd_morita_check(cfg, &shape.shape()?, *p, chi),
        Command::CrossCheck {
            shape,
            p,
            lambdas,
            words,
            max_len,
        } => cmd_cross_check(cfg, &shape.shape()?, *p, *lambdas, *words, *max_len),
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let outcome = match cli.config.threads {
        Some(0) => return Err(Failure::Usage("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Failure::Core(Error::Internal(format!("thread pool: {e}"))))?
            .install(|| dispatch(cli))?,
        None => dispatch(cli)?,
    };
    let mut body = outcome.body;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.config.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PRECONDITION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("glmn: a check failed");
            ExitCode::from(EXIT_DISAGREEMENT)
        }
        Err(f) => {
            eprintln!("glmn: {}", message(&f));
            ExitCode::from(exit_code(&f))
        }
    }
}
