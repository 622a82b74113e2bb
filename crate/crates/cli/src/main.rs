//! Command-line front end: motive analysis, certification, identity
//! verification sweeps, catalog inspection, sine evaluation, and truncated
//! Euler products over length spectra.
//!
//! Exit codes: 0 success/pass, 1 I/O or parse, 2 verdict `gamma_fe_only`,
//! 3 `not_automorphic`, 4 suite failure.

mod suites;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use motive_selberg::motive::{AutomorphyStatus, TateMotive, VanishingOrder};
use motive_selberg::numerics::{multiple_sine, AccuracyRequest};
use motive_selberg::sine::NormalForm;
use motive_selberg::spaces::{make_space, Family, Space};
use motive_selberg::zeta::{
    load_length_spectrum, truncated_zeta, truncated_zeta_motive, Certifier, TruncatedValue,
    Verdict,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{json, Value};
use suites::{SuiteConfig, SuiteReport};

#[derive(Parser)]
#[command(name = "motive-selberg", version, about = "Functional-equation toolkit for twisted Selberg zeta functions")]
struct Cli {
    /// Residual tolerance override for verification suites.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Numeric precision: `standard`, `high`, or a digit count (6..=30).
    /// Defaults to the MOTIVE_SELBERG_PRECISION environment variable.
    #[arg(long, global = true)]
    precision: Option<String>,

    /// Seed for randomized sweeps; the seed fully determines the sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overwrite an existing --out file; with `zeta`, also compute outside
    /// the convergence region.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a motive: automorphy constants, vanishing order, derivatives.
    Motive {
        /// Polynomial in x, e.g. "1 - 2x^-1 + x^-2".
        text: String,
    },
    /// Certify the functional-equation shape of a twisted zeta function.
    ///
    /// Exit code 0 iff the verdict is simple_fe (2: gamma_fe_only,
    /// 3: not_automorphic).
    Certify {
        /// Space: family then numbers, e.g. `so 1 2` (n=1, vol=2) or `f4 1`.
        #[arg(num_args = 1..=3, required = true)]
        space: Vec<String>,
        /// The twist polynomial itself.
        #[arg(long, conflicts_with = "symmetrize")]
        motive: Option<String>,
        /// Build the twist as symmetrize(h, dim) from this h.
        #[arg(long)]
        symmetrize: Option<String>,
    },
    /// Run a named identity suite; exit 4 if any case fails.
    Verify {
        /// One of: ladder, s1, reflection, gamma-relation, plancherel, parity.
        suite: String,
        /// Largest sine level for the ladder suite.
        #[arg(long, default_value_t = 6)]
        rmax: u32,
    },
    /// Catalog space inspection.
    Space {
        #[command(subcommand)]
        command: SpaceCommand,
    },
    /// Multiple sine function evaluation.
    Sf {
        #[command(subcommand)]
        command: SfCommand,
    },
    /// Truncated Euler product over a `length,multiplicity` CSV spectrum.
    Zeta {
        /// CSV file with a `length,multiplicity` header.
        spectrum: PathBuf,
        /// Re(s).
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// Im(s).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s_im: f64,
        /// Weight cut N: weights 0..=N enter each factor.
        #[arg(long, default_value_t = 0)]
        weight_cut: u32,
        /// Length cut L: geodesics with length <= L enter the product.
        #[arg(long, default_value_t = f64::INFINITY)]
        length_cut: f64,
        /// Optional twist polynomial a(k) x^k -> Z(s - k)^{a(k)}.
        #[arg(long)]
        motive: Option<String>,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Dimensions, exponent table, and parity of one catalog space.
    Info {
        /// Space: family then numbers, e.g. `su 2 1` or `f4 1`.
        #[arg(num_args = 1..=3, required = true)]
        space: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SfCommand {
    /// Evaluate S_level at re + im*i inside the strip 0 < Re < level.
    Eval {
        level: u32,
        #[arg(allow_hyphen_values = true)]
        re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors are exit 1 here; clap's default 2 is taken by the
            // gamma_fe_only verdict.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

struct Ctx {
    acc: AccuracyRequest,
    tol: Option<f64>,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
    force: bool,
}

fn run(cli: Cli) -> Result<i32, String> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol must be a positive finite number, got {t}"));
        }
    }
    let ctx = Ctx {
        acc: resolve_precision(cli.precision.as_deref())?,
        tol: cli.tol,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
        force: cli.force,
    };
    match cli.command {
        Command::Motive { text } => cmd_motive(&ctx, &text),
        Command::Certify {
            space,
            motive,
            symmetrize,
        } => cmd_certify(&ctx, &space, motive.as_deref(), symmetrize.as_deref()),
        Command::Verify { suite, rmax } => cmd_verify(&ctx, &suite, rmax),
        Command::Space {
            command: SpaceCommand::Info { space },
        } => cmd_space_info(&ctx, &space),
        Command::Sf {
            command: SfCommand::Eval { level, re, im },
        } => cmd_sf_eval(&ctx, level, re, im),
        Command::Zeta {
            spectrum,
            s,
            s_im,
            weight_cut,
            length_cut,
            motive,
        } => cmd_zeta(
            &ctx,
            &spectrum,
            Complex64::new(s, s_im),
            weight_cut,
            length_cut,
            motive.as_deref(),
        ),
    }
}

/// `--precision` beats the environment; absent both, the library default.
fn resolve_precision(flag: Option<&str>) -> Result<AccuracyRequest, String> {
    let owned = match flag {
        Some(v) => Some(v.to_string()),
        None => std::env::var("MOTIVE_SELBERG_PRECISION").ok(),
    };
    match owned.as_deref() {
        None | Some("standard") => Ok(AccuracyRequest::default()),
        Some("high") => Ok(AccuracyRequest {
            rel_tol: 1e-12,
            digits: 30,
            head_terms: 100,
            bernoulli_order: 30,
        }),
        Some(other) => match other.parse::<u32>() {
            Ok(d) if (6..=30).contains(&d) => Ok(AccuracyRequest::with_digits(d)),
            _ => Err(format!(
                "invalid precision `{other}`: expected `standard`, `high`, or digits 6..=30"
            )),
        },
    }
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Writes the chosen rendering to stdout or `--out` (never both).
fn emit(ctx: &Ctx, text: String, jsonv: Value) -> Result<(), String> {
    let body = match ctx.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&jsonv)
                .map_err(|e| format!("serializing report: {e}"))?;
            s.push('\n');
            s
        }
    };
    match &ctx.out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            if path.exists() && !ctx.force {
                return Err(format!(
                    "{} already exists; pass --force to overwrite",
                    path.display()
                ));
            }
            std::fs::write(path, body).map_err(|e| format!("writing {}: {e}", path.display()))
        }
    }
}

fn bigint_json(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse()
            .expect("integer strings are valid JSON numbers"),
    )
}

fn automorphy_json(status: &AutomorphyStatus) -> Value {
    match status {
        AutomorphyStatus::Degenerate => json!("degenerate"),
        AutomorphyStatus::NotAutomorphic => json!("none"),
        AutomorphyStatus::Automorphic(a) => json!({"C": a.sign, "D": a.degree}),
    }
}

fn automorphy_text(status: &AutomorphyStatus) -> String {
    match status {
        AutomorphyStatus::Degenerate => "degenerate (zero motive)".into(),
        AutomorphyStatus::NotAutomorphic => "none".into(),
        AutomorphyStatus::Automorphic(a) => format!("C={}, D={}", a.sign, a.degree),
    }
}

fn order_json(order: VanishingOrder) -> Value {
    match order {
        VanishingOrder::Finite(n) => json!(n),
        VanishingOrder::Infinite => json!("infinite"),
    }
}

fn order_text(order: VanishingOrder) -> String {
    match order {
        VanishingOrder::Finite(n) => n.to_string(),
        VanishingOrder::Infinite => "infinite".into(),
    }
}

fn parse_motive(text: &str, what: &str) -> Result<TateMotive, String> {
    text.parse::<TateMotive>()
        .map_err(|e| format!("{what}: {e}"))
}

fn cmd_motive(ctx: &Ctx, text: &str) -> Result<i32, String> {
    let f = parse_motive(text, "parsing motive")?;
    let automorphy = f.detect_automorphy();
    let order = f.vanishing_order_at_one();
    let derivative_count = match order {
        VanishingOrder::Finite(n) => n + 2,
        VanishingOrder::Infinite => 2,
    };
    let derivatives: Vec<(u32, BigInt)> = (0..derivative_count)
        .map(|m| (m, f.derivative_at_one(m)))
        .collect();

    let mut out = String::new();
    out.push_str(&format!("motive: {f}\n"));
    out.push_str(&format!("automorphy: {}\n", automorphy_text(&automorphy)));
    out.push_str(&format!("order at x=1: {}\n", order_text(order)));
    for (m, v) in &derivatives {
        out.push_str(&format!("f^({m})(1) = {v}\n"));
    }
    let jsonv = json!({
        "motive": serde_json::to_value(&f).unwrap(),
        "automorphy": automorphy_json(&automorphy),
        "order": order_json(order),
        "derivatives": derivatives
            .iter()
            .map(|(m, v)| json!({"m": m, "value": bigint_json(v)}))
            .collect::<Vec<_>>(),
        "timestamp": timestamp(),
    });
    emit(ctx, out, jsonv)?;
    Ok(0)
}

/// `so 1 2` is family, n, vol; `f4 1` is family, vol.
fn parse_space(args: &[String]) -> Result<Space, String> {
    let family = match args[0].to_ascii_lowercase().as_str() {
        "so" => Family::So,
        "su" => Family::Su,
        "sp" => Family::Sp,
        "f4" => Family::F4,
        other => return Err(format!("unknown family `{other}`: expected so, su, sp, f4")),
    };
    let nums: Vec<u32> = args[1..]
        .iter()
        .map(|a| {
            a.parse::<u32>()
                .map_err(|_| format!("invalid space parameter `{a}`: expected an integer"))
        })
        .collect::<Result<_, _>>()?;
    let (n, vol) = match (family, nums.as_slice()) {
        (Family::F4, [vol]) => (None, *vol),
        (Family::F4, _) => return Err("f4 takes exactly one parameter: vol".into()),
        (_, [n, vol]) => (Some(*n), *vol),
        (_, _) => {
            return Err(format!(
                "{} takes exactly two parameters: n vol",
                family.tag()
            ))
        }
    };
    make_space(family, n, vol).map_err(|e| e.to_string())
}

fn normal_form_text(nf: &NormalForm) -> String {
    let residues = if nf.residues.is_empty() {
        "none".to_string()
    } else {
        nf.residues
            .iter()
            .map(|(r, c)| format!("S_{r}^{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("sign {}, residues {residues}", nf.sign)
}

fn cmd_certify(
    ctx: &Ctx,
    space_args: &[String],
    motive: Option<&str>,
    symmetrize: Option<&str>,
) -> Result<i32, String> {
    let space = parse_space(space_args)?;
    let f = match (motive, symmetrize) {
        (Some(text), None) => parse_motive(text, "parsing --motive")?,
        (None, Some(text)) => {
            let h = parse_motive(text, "parsing --symmetrize")?;
            TateMotive::symmetrize(&h, space.dim())
        }
        _ => return Err("exactly one of --motive or --symmetrize is required".into()),
    };
    let cert = Certifier::new(ctx.acc).certify_simple_fe(&space, &f);

    let mut out = String::new();
    out.push_str(&format!(
        "space: {space}, vol = {} (dim {}, level {}, 2rho = {})\n",
        space.vol(),
        space.dim(),
        space.level(),
        space.rho2()
    ));
    out.push_str(&format!("motive: {}\n", cert.motive));
    out.push_str(&format!(
        "automorphy: {}\n",
        automorphy_text(&cert.automorphy)
    ));
    out.push_str(&format!("order at x=1: {}\n", order_text(cert.order)));
    if let Some(q) = &cert.quotient {
        out.push_str(&format!("quotient: {q}\n"));
    }
    out.push_str(&format!(
        "normal form: {}\n",
        normal_form_text(&cert.normal_form)
    ));
    if let Some(r) = &cert.reflection {
        out.push_str(&format!("reflection: Z({} - s)^({}) = Z(s)\n", r.point, r.c));
    }
    if let Some(n) = &cert.numeric {
        out.push_str(&format!(
            "numeric: max residual {:.3e} over {} samples\n",
            n.max_residual,
            n.samples.len()
        ));
    }
    out.push_str(&format!("verdict: {}\n", cert.verdict));

    emit(ctx, out, cert.to_json())?;
    Ok(match cert.verdict {
        Verdict::SimpleFe => 0,
        Verdict::GammaFeOnly => 2,
        Verdict::NotAutomorphic => 3,
    })
}

fn suite_report_text(report: &SuiteReport, seed: u64) -> String {
    let mut out = String::new();
    match report.tolerance {
        Some(tol) => out.push_str(&format!(
            "suite: {}   seed {seed}   tolerance {tol:.1e}\n",
            report.suite
        )),
        None => out.push_str(&format!("suite: {} (exact)   seed {seed}\n", report.suite)),
    }
    let width = report.cases.iter().map(|c| c.key.len()).max().unwrap_or(0);
    for case in &report.cases {
        let status = if case.pass { "pass" } else { "FAIL" };
        match case.residual {
            Some(r) => out.push_str(&format!(
                "  [{status}] {:width$}   residual {r:.3e}\n",
                case.key
            )),
            None => out.push_str(&format!("  [{status}] {:width$}   exact\n", case.key)),
        }
    }
    if let Some(max) = report.max_residual() {
        out.push_str(&format!("max residual: {max:.3e}\n"));
    }
    out.push_str(&format!(
        "{} ({} cases)\n",
        if report.pass() { "PASS" } else { "FAIL" },
        report.cases.len()
    ));
    out
}

fn cmd_verify(ctx: &Ctx, suite: &str, rmax: u32) -> Result<i32, String> {
    let cfg = SuiteConfig {
        seed: ctx.seed,
        tol: ctx.tol,
        acc: ctx.acc,
        rmax,
    };
    let report = suites::run_suite(suite, &cfg)?;
    let text = suite_report_text(&report, ctx.seed);
    let jsonv = json!({
        "suite": report.suite,
        "seed": ctx.seed,
        "tolerance": report.tolerance,
        "cases": report
            .cases
            .iter()
            .map(|c| json!({"case": c.key, "residual": c.residual, "pass": c.pass}))
            .collect::<Vec<_>>(),
        "max_residual": report.max_residual(),
        "pass": report.pass(),
        "timestamp": timestamp(),
    });
    let pass = report.pass();
    emit(ctx, text, jsonv)?;
    Ok(if pass { 0 } else { 4 })
}

fn cmd_space_info(ctx: &Ctx, space_args: &[String]) -> Result<i32, String> {
    let space = parse_space(space_args)?;
    let table = space.sine_exponents();
    let entries_text = table
        .entries
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let text = format!(
        "{space}, vol = {}\ndim {}, level {}, 2rho = {}\nexponents: [{entries_text}], outer {}, parity {}\n",
        space.vol(),
        space.dim(),
        space.level(),
        space.rho2(),
        table.outer,
        space.exponent_parity(),
    );
    let jsonv = json!({
        "family": space.family().tag(),
        "n": space.n(),
        "vol": space.vol(),
        "dim": space.dim(),
        "level": space.level(),
        "rho2": space.rho2(),
        "exponents": table.entries.iter().map(bigint_json).collect::<Vec<_>>(),
        "outer": table.outer,
        "parity": space.exponent_parity().to_string(),
    });
    emit(ctx, text, jsonv)?;
    Ok(0)
}

fn cmd_sf_eval(ctx: &Ctx, level: u32, re: f64, im: f64) -> Result<i32, String> {
    let w = Complex64::new(re, im);
    let result = multiple_sine(level, w, &ctx.acc).map_err(|e| e.to_string())?;
    let text = format!(
        "S_{level}({re} + {im}i) = {:.15e} + {:.15e}i   (err est {:.1e})\n",
        result.value.re, result.value.im, result.error_estimate
    );
    let jsonv = json!({
        "value_re": result.value.re,
        "value_im": result.value.im,
        "err_est": result.error_estimate,
    });
    emit(ctx, text, jsonv)?;
    Ok(0)
}

fn cmd_zeta(
    ctx: &Ctx,
    spectrum_path: &std::path::Path,
    s: Complex64,
    weight_cut: u32,
    length_cut: f64,
    motive: Option<&str>,
) -> Result<i32, String> {
    let spectrum = load_length_spectrum(spectrum_path).map_err(|e| e.to_string())?;
    let f = motive
        .map(|text| parse_motive(text, "parsing --motive"))
        .transpose()?;

    let in_region = match &f {
        None => s.re > 1.0,
        Some(f) => f.terms().all(|(k, _)| s.re - k as f64 > 1.0),
    };
    if !in_region && !ctx.force {
        return Err(format!(
            "Re(s) = {} lies outside the convergence region of the product; \
             pass --force to compute the truncation anyway",
            s.re
        ));
    }

    let TruncatedValue {
        value,
        delta,
        in_convergence_region,
    } = match &f {
        None => truncated_zeta(&spectrum, s, weight_cut, length_cut),
        Some(f) => truncated_zeta_motive(&spectrum, f, s, weight_cut, length_cut),
    };

    let included = spectrum
        .entries()
        .iter()
        .filter(|e| e.length <= length_cut)
        .count();
    let mut out = String::new();
    out.push_str(&format!(
        "spectrum: {} ({} entries, {included} included)\n",
        spectrum.source(),
        spectrum.len()
    ));
    out.push_str(&format!(
        "s = {} + {}i, weight cut {weight_cut}, length cut {length_cut}\n",
        s.re, s.im
    ));
    if let Some(f) = &f {
        out.push_str(&format!("motive: {f}\n"));
    }
    out.push_str(&format!("value = {:.15e} + {:.15e}i\n", value.re, value.im));
    out.push_str(&format!("delta = {delta:.3e}\n"));
    out.push_str(&format!(
        "convergence region: {}\n",
        if in_convergence_region {
            "yes"
        } else {
            "no (truncation only; the full product diverges here)"
        }
    ));
    let jsonv = json!({
        "spectrum": spectrum.source(),
        "entries": spectrum.len(),
        "included": included,
        "s_re": s.re,
        "s_im": s.im,
        "weight_cut": weight_cut,
        "length_cut": if length_cut.is_finite() { json!(length_cut) } else { Value::Null },
        "motive": f.as_ref().map_or(Value::Null, |f| serde_json::to_value(f).unwrap()),
        "value_re": value.re,
        "value_im": value.im,
        "delta": delta,
        "in_convergence_region": in_convergence_region,
        "timestamp": timestamp(),
    });
    emit(ctx, out, jsonv)?;
    Ok(0)
}
