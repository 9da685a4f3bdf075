//! Command-line front end: evaluate registered functions at given points,
//! run named identity suites, compute expansion coefficients, and apply the
//! lattice transforms, emitting machine-readable JSON or CSV reports.
//!
//! Exit codes: 0 = success / all cases pass, 1 = numeric failure,
//! 2 = usage or parameter error.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Float, Rational};

use qwave::lattice::LatticeFunction;
use qwave::qbessel::{
    bessel_normalized, dunkl_kernel, jackson3_bessel_real, q_cos, q_sin, rubin_exp, rubin_exp_i,
    BesselOrder, KernelParams,
};
use qwave::qcore::pochhammer::{qpochhammer_inf_real, qpochhammer_real};
use qwave::qexpansion::{i_minus, i_plus, neumann_coefficients};
use qwave::qortho::{gegenbauer, gegenbauer_gen, little_q_jacobi, PolyParams};
use qwave::qtransform::{dunkl_transform, hankel_transform};
use qwave::report::format_float;
use qwave::{run_suite, QContext, QError, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "qwave",
    version,
    about = "Numerics for q-special functions on the q-linear lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    /// q-Dunkl-type transform on the signed lattice.
    Fourier,
    /// Inverse q-Dunkl-type transform.
    InverseFourier,
    /// q-Hankel transform on the positive lattice (its own inverse).
    Hankel,
}

/// Flags shared by every subcommand. Decimal strings for q, alpha, beta and
/// nu are parsed to exact rationals where branch decisions depend on them.
#[derive(Args)]
struct CommonOpts {
    /// Base q in (0,1), as a decimal string.
    #[arg(long, default_value = "0.5")]
    q: String,
    /// First parameter alpha (> -1), decimal or fraction a/b.
    #[arg(long, default_value = "0.3")]
    alpha: String,
    /// Second parameter beta (> -1), decimal or fraction a/b.
    #[arg(long, default_value = "0.7")]
    beta: String,
    /// Bessel order nu (> -1), decimal or fraction a/b.
    #[arg(long)]
    nu: Option<String>,
    /// First q-Pochhammer argument (eval qpochhammer*).
    #[arg(long)]
    a: Option<String>,
    /// Degree / index.
    #[arg(long)]
    n: Option<u32>,
    /// Suite size knob: matrix size, truncation order, or draw count.
    #[arg(long = "N")]
    big_n: Option<u32>,
    /// Evaluation point x.
    #[arg(long)]
    x: Option<String>,
    /// Evaluation point t.
    #[arg(long)]
    t: Option<String>,
    /// Lower lattice-window exponent.
    #[arg(long, default_value_t = -40)]
    kmin: i64,
    /// Upper lattice-window exponent.
    #[arg(long, default_value_t = 60)]
    kmax: i64,
    /// Working precision in decimal digits (>= 30).
    #[arg(long, default_value_t = 40)]
    precision: u32,
    /// Pass/fail tolerance for suites, e.g. 1e-12.
    #[arg(long, default_value = "1e-12")]
    tol: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the suites' random draws (recorded in the report).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a registered function at a point; prints value, error
    /// estimate and term count.
    Eval {
        /// One of: qpochhammer, qpochhammer-inf, jackson3-bessel,
        /// bessel-normalized, q-cos, q-sin, rubin-exp, rubin-exp-i,
        /// dunkl-kernel, little-q-jacobi, gegenbauer, gegenbauer-gen,
        /// i-minus, i-plus.
        function: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run a named identity suite and emit its report; exits 0 iff all
    /// cases pass.
    Check {
        /// One of the registered suite names (see --help for the list in
        /// the error message of an unknown name).
        suite: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Expansion coefficients of a tabulated signed-lattice function against
    /// the q-Neumann system with parameters (alpha, beta), written as CSV
    /// rows (n, re, im).
    Expand {
        /// Input lattice function, CSV with columns (sign,k,re,im).
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Apply a lattice transform to a tabulated function and emit the result
    /// as CSV with columns (sign,k,re,im).
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        /// Input lattice function, CSV with columns (sign,k,re,im).
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

/// Parse "a/b" or a decimal string (with optional exponent) into an exact
/// rational.
fn parse_rational(s: &str) -> Result<Rational, QError> {
    let s = s.trim();
    if let Ok(r) = s.parse::<Rational>() {
        return Ok(r);
    }
    // decimal: sign, digits, optional fraction, optional e-exponent
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i64>()
                .map_err(|_| QError::Parse(format!("invalid exponent in {s:?}")))?,
        ),
        None => (s, 0i64),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(QError::Parse(format!("invalid number {s:?}")));
    }
    let num = digits
        .parse::<Rational>()
        .map_err(|_| QError::Parse(format!("invalid number {s:?}")))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = Rational::from(10);
    let mut scale = Rational::from(1);
    for _ in 0..shift.unsigned_abs() {
        scale *= &ten;
    }
    Ok(if shift >= 0 { num * scale } else { num / scale })
}

fn parse_float(s: &str, ctx: &QContext) -> Result<Float, QError> {
    let p = Float::parse(s).map_err(|e| QError::Parse(format!("invalid number {s:?}: {e}")))?;
    Ok(Float::with_val(ctx.prec(), p))
}

fn context(opts: &CommonOpts) -> Result<QContext, QError> {
    let ctx = QContext::from_decimal(&opts.q, opts.precision)?;
    if opts.kmin >= opts.kmax {
        return Err(QError::InvalidParameter(format!(
            "window requires kmin < kmax, got ({}, {})",
            opts.kmin, opts.kmax
        )));
    }
    Ok(ctx.with_window(opts.kmin, opts.kmax))
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, QError> {
    v.as_deref()
        .ok_or_else(|| QError::InvalidParameter(format!("missing required flag --{flag}")))
}

fn require_n(v: Option<u32>) -> Result<u32, QError> {
    v.ok_or_else(|| QError::InvalidParameter("missing required flag --n".into()))
}

fn write_output(opts: &CommonOpts, content: &str) -> Result<(), QError> {
    match &opts.out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
    }
}

/// A single evaluated value: complex result plus truncation metadata.
struct EvalResult {
    re: String,
    im: String,
    err: String,
    terms: usize,
}

impl EvalResult {
    fn from_series(v: qwave::SeriesValue) -> Self {
        EvalResult {
            re: format_float(&v.re()),
            im: format_float(&v.im()),
            err: format_float(&v.err_estimate),
            terms: v.terms_used,
        }
    }

    fn from_real(v: Float) -> Self {
        let prec = v.prec();
        EvalResult {
            re: format_float(&v),
            im: format_float(&Float::with_val(prec, 0)),
            err: String::from("0"),
            terms: 0,
        }
    }

    fn render(&self, function: &str, opts: &CommonOpts) -> String {
        match opts.format {
            Format::Json => format!(
                concat!(
                    "{{\"function\":\"{}\",\"q\":\"{}\",",
                    "\"value\":{{\"re\":\"{}\",\"im\":\"{}\"}},",
                    "\"err_estimate\":\"{}\",\"terms_used\":{}}}\n"
                ),
                function, opts.q, self.re, self.im, self.err, self.terms
            ),
            Format::Csv => format!(
                "function,q,re,im,err_estimate,terms_used\n{},{},{},{},{},{}\n",
                function, opts.q, self.re, self.im, self.err, self.terms
            ),
        }
    }
}

fn eval(function: &str, opts: &CommonOpts) -> Result<EvalResult, QError> {
    let ctx = context(opts)?;
    let alpha = parse_rational(&opts.alpha)?;
    let beta = parse_rational(&opts.beta)?;
    let poly = || PolyParams::new(alpha.clone(), beta.clone());
    let xval = |ctx: &QContext| parse_float(require(&opts.x, "x")?, ctx);
    let tval = |ctx: &QContext| parse_float(require(&opts.t, "t")?, ctx);
    match function {
        "qpochhammer" => {
            let a = parse_float(require(&opts.a, "a")?, &ctx)?;
            let n = require_n(opts.n)?;
            Ok(EvalResult::from_real(qpochhammer_real(&a, ctx.q(), n)))
        }
        "qpochhammer-inf" => {
            let a = parse_float(require(&opts.a, "a")?, &ctx)?;
            Ok(EvalResult::from_real(qpochhammer_inf_real(
                &a,
                ctx.q(),
                &ctx,
            )?))
        }
        "jackson3-bessel" => {
            let nu = BesselOrder::new(parse_rational(require(&opts.nu, "nu")?)?)?;
            let x = xval(&ctx)?;
            let v = jackson3_bessel_real(&nu, &x, ctx.q(), &ctx)?;
            Ok(EvalResult::from_series(v))
        }
        "bessel-normalized" => {
            let nu = BesselOrder::new(parse_rational(require(&opts.nu, "nu")?)?)?;
            let x = xval(&ctx)?;
            let v = bessel_normalized(&nu, &x, &ctx.q_squared(), &ctx)?;
            Ok(EvalResult::from_series(v))
        }
        "q-cos" => Ok(EvalResult::from_series(q_cos(&xval(&ctx)?, &ctx)?)),
        "q-sin" => Ok(EvalResult::from_series(q_sin(&xval(&ctx)?, &ctx)?)),
        "rubin-exp" => Ok(EvalResult::from_series(rubin_exp(&xval(&ctx)?, &ctx)?)),
        "rubin-exp-i" => Ok(EvalResult::from_series(rubin_exp_i(&xval(&ctx)?, &ctx)?)),
        "dunkl-kernel" => {
            let params = KernelParams::new(alpha.clone())?;
            Ok(EvalResult::from_series(dunkl_kernel(
                &params,
                &xval(&ctx)?,
                &ctx,
            )?))
        }
        "little-q-jacobi" => {
            let n = require_n(opts.n)?;
            let x = xval(&ctx)?;
            let v = little_q_jacobi(n, &x, &poly()?, &ctx.q_squared(), true, &ctx)?;
            Ok(EvalResult::from_real(v))
        }
        "gegenbauer" => {
            let n = require_n(opts.n)?;
            let t = tval(&ctx)?;
            Ok(EvalResult::from_real(gegenbauer(n, &t, &beta, &ctx)?))
        }
        "gegenbauer-gen" => {
            let n = require_n(opts.n)?;
            let t = tval(&ctx)?;
            Ok(EvalResult::from_real(gegenbauer_gen(n, &t, &poly()?, &ctx)?))
        }
        "i-minus" => {
            let n = require_n(opts.n)?;
            let t = tval(&ctx)?;
            Ok(EvalResult::from_real(i_minus(&poly()?, n, &t, &ctx)?))
        }
        "i-plus" => {
            let n = require_n(opts.n)?;
            let t = tval(&ctx)?;
            Ok(EvalResult::from_real(i_plus(&poly()?, n, &t, &ctx)?))
        }
        other => Err(QError::InvalidParameter(format!(
            "unknown function {other:?}; registered: qpochhammer, qpochhammer-inf, \
             jackson3-bessel, bessel-normalized, q-cos, q-sin, rubin-exp, rubin-exp-i, \
             dunkl-kernel, little-q-jacobi, gegenbauer, gegenbauer-gen, i-minus, i-plus"
        ))),
    }
}

/// Returns the process exit code: 0 iff all cases pass, 1 otherwise.
fn check(suite: &str, opts: &CommonOpts) -> Result<u8, QError> {
    if !SUITE_NAMES.contains(&suite) {
        return Err(QError::InvalidParameter(format!(
            "unknown suite {suite:?}; available: {}",
            SUITE_NAMES.join(", ")
        )));
    }
    let cfg = SuiteConfig {
        q: opts.q.clone(),
        alpha: parse_rational(&opts.alpha)?,
        beta: parse_rational(&opts.beta)?,
        n_max: opts.big_n,
        precision_digits: opts.precision,
        window: (opts.kmin, opts.kmax),
        tolerance: opts.tol.clone(),
        seed: opts.seed,
    };
    let report = run_suite(suite, &cfg)?;
    let rendered = match opts.format {
        Format::Json => report.to_json_string(),
        Format::Csv => report.to_csv_string(),
    };
    write_output(opts, &rendered)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn read_lattice(path: &PathBuf, ctx: &QContext, force_real_line: bool) -> Result<LatticeFunction, QError> {
    let f = File::open(path)?;
    LatticeFunction::read_csv(BufReader::new(f), ctx.prec(), force_real_line)
}

fn expand(input: &PathBuf, opts: &CommonOpts) -> Result<(), QError> {
    let ctx = context(opts)?;
    let p = PolyParams::new(parse_rational(&opts.alpha)?, parse_rational(&opts.beta)?)?;
    let n_max = opts.big_n.unwrap_or(16);
    let f = read_lattice(input, &ctx, true)?;
    let coeffs = neumann_coefficients(&f, &p, n_max, &ctx)?;
    let mut out = String::from("n,re,im\n");
    for (n, c) in coeffs.coeffs.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            n,
            format_float(c.real()),
            format_float(c.imag())
        ));
    }
    write_output(opts, &out)
}

fn transform(kind: TransformKind, input: &PathBuf, opts: &CommonOpts) -> Result<(), QError> {
    let ctx = context(opts)?;
    let alpha = parse_rational(&opts.alpha)?;
    let result = match kind {
        TransformKind::Fourier => {
            let f = read_lattice(input, &ctx, true)?;
            dunkl_transform(&f, &alpha, false, &ctx)?
        }
        TransformKind::InverseFourier => {
            let f = read_lattice(input, &ctx, true)?;
            dunkl_transform(&f, &alpha, true, &ctx)?
        }
        TransformKind::Hankel => {
            let f = read_lattice(input, &ctx, false)?;
            hankel_transform(&f, &alpha, &ctx)?
        }
    };
    let mut buf = Vec::new();
    result.write_csv(&mut buf)?;
    let s = String::from_utf8(buf)
        .map_err(|e| QError::Parse(format!("non-utf8 transform output: {e}")))?;
    write_output(opts, &s)
}

/// Usage/parameter errors exit 2; numeric failures exit 1.
fn error_code(e: &QError) -> u8 {
    match e {
        QError::InvalidParameter(_)
        | QError::Parse(_)
        | QError::DomainError(_)
        | QError::ZeroArgument
        | QError::BranchCut
        | QError::OutsideWindow { .. }
        | QError::Io(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, QError> {
    match cli.command {
        Command::Eval { function, opts } => {
            let r = eval(&function, &opts)?;
            write_output(&opts, &r.render(&function, &opts))?;
            Ok(0)
        }
        Command::Check { suite, opts } => check(&suite, &opts),
        Command::Expand { input, opts } => {
            expand(&input, &opts)?;
            Ok(0)
        }
        Command::Transform { kind, input, opts } => {
            transform(kind, &input, &opts)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
