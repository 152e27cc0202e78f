//! Command-line front end. Exit codes: 0 for a proved width, 2 for a bound
//! or heuristic, 1 for an error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::{evaluate_with, parse, GroupExpr, DEFAULT_DEGREE_CAP};
use crate::monodromy::{family_width, MonodromyOptions, MonodromyResult, ParametricFamily};
use crate::poly::{certify_group, parse_polynomial, width_of_certificate, GaloisCertificate, DEFAULT_PRIME_BUDGET};
use crate::width::{factor_multiset, width_by_factors, width_oracle, width_with, Confidence, WidthOptions, WidthReport};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BOUNDED: i32 = 2;

/// Evidence lines printed in full before switching to a summary.
const EVIDENCE_LINES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Fast,
    CrossCheck,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub oracle_bound: u64,
    pub mu_bound: u64,
    pub coset_cap: u64,
    pub prime_budget: usize,
    pub monodromy: MonodromyOptions,
    pub format: OutputFormat,
    pub verification: Verification,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            oracle_bound: 2000,
            mu_bound: 2000,
            coset_cap: 100_000,
            prime_budget: DEFAULT_PRIME_BUDGET,
            monodromy: MonodromyOptions::default(),
            format: OutputFormat::Text,
            verification: Verification::Fast,
        }
    }
}

impl RunConfig {
    pub fn width_options(&self) -> WidthOptions {
        let mut opts = WidthOptions {
            oracle_bound: self.oracle_bound,
            cross_check: self.verification == Verification::CrossCheck,
            ..WidthOptions::default()
        };
        opts.structure.coset_cap = self.coset_cap;
        opts.structure.identify.mu_bound = self.mu_bound;
        opts
    }
}

#[derive(Parser, Debug)]
#[command(name = "galois-width", version, about = "Galois width of groups, polynomials and families")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "GW_JSON", value_parser = clap::builder::FalseyValueParser::new())]
    json: bool,
    /// Largest group order handed to the exhaustive chain search.
    #[arg(long, global = true, env = "GW_ORACLE_BOUND", value_parser = clap::value_parser!(u64).range(1..))]
    oracle_bound: Option<u64>,
    /// Largest factor order for which mu is found by exhaustive search.
    #[arg(long, global = true, env = "GW_MU_BOUND", value_parser = clap::value_parser!(u64).range(1..))]
    mu_bound: Option<u64>,
    /// Number of good primes scanned when certifying a polynomial.
    #[arg(long, global = true, env = "GW_PRIME_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    prime_budget: Option<u64>,
    /// Largest index for which a coset action is built.
    #[arg(long, global = true, env = "GW_COSET_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    coset_cap: Option<u64>,
    /// Compare against the exhaustive chain search when the order allows.
    #[arg(long, global = true, env = "GW_CROSS_CHECK", value_parser = clap::builder::FalseyValueParser::new())]
    cross_check: bool,
    /// Fiber matching tolerance for monodromy, relative to the fiber diameter.
    #[arg(long, global = true, env = "GW_TOL")]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Width of a group expression such as "S(4)" or "wr(S(2),S(10)) & alt".
    WidthGroup { expr: String },
    /// Width of the Galois group of an integer polynomial in x.
    WidthPoly { poly: String },
    /// Monodromy group and width lower bound of a family in y and p.
    Monodromy { family: String },
    /// Width by exhaustive search over maximal subgroup chains.
    Oracle { expr: String },
}

fn config_from(g: &GlobalArgs) -> std::result::Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(v) = g.oracle_bound {
        cfg.oracle_bound = v;
    }
    if let Some(v) = g.mu_bound {
        cfg.mu_bound = v;
    }
    if let Some(v) = g.prime_budget {
        cfg.prime_budget = usize::try_from(v).map_err(|_| "prime budget too large".to_string())?;
    }
    if let Some(v) = g.coset_cap {
        cfg.coset_cap = v;
    }
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err("--tol must be a positive number".into());
        }
        cfg.monodromy.match_tol = t;
    }
    cfg.format = if g.json { OutputFormat::Json } else { OutputFormat::Text };
    cfg.verification = if g.cross_check { Verification::CrossCheck } else { Verification::Fast };
    Ok(cfg)
}

/// A rendered command result.
pub struct Outcome {
    pub report: WidthReport,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.report.confidence {
            Confidence::Proved => EXIT_PROVED,
            _ => EXIT_BOUNDED,
        }
    }
}

fn report_json(report: &WidthReport) -> Value {
    let mut v = serde_json::to_value(report.to_json()).expect("serializable");
    v["notes"] = json!(report.notes);
    v
}

/// Width of a group expression. Expressions too large to build fall back to
/// their symbolic composition factors.
pub fn cmd_group(expr: &str, cfg: &RunConfig) -> Result<Outcome> {
    let e = parse(expr)?;
    let (report, order, degree) = match evaluate_with(&e, DEFAULT_DEGREE_CAP) {
        Ok(g) => {
            let report = width_with(&g, &cfg.width_options())?;
            check_symbolic(&e, &report)?;
            (report, g.order(), Some(g.degree()))
        }
        Err(Error::DegreeCap { degree, cap }) => {
            let factors = e.symbolic_factors().ok_or(Error::DegreeCap { degree, cap })?;
            let mut report = width_by_factors(&factors);
            report.notes.push("read off symbolic composition factors; the group was not built".into());
            let order = factors.iter().map(|f| f.order.clone()).product();
            (report, order, None)
        }
        Err(other) => return Err(other),
    };
    let mut text = format!("group: {e}\n");
    match degree {
        Some(d) => text += &format!("degree: {d}, order: {order}\n"),
        None => text += &format!("order: {order}\n"),
    }
    text += &report.to_string();
    let mut json = report_json(&report);
    json["command"] = json!("width-group");
    json["input"] = json!(e.to_string());
    json["order"] = json!(order.to_string());
    json["degree"] = json!(degree);
    Ok(Outcome { report, text, json })
}

/// Computed factors must agree with the factors the construction predicts.
fn check_symbolic(e: &GroupExpr, report: &WidthReport) -> Result<()> {
    if report.factors.is_empty() && report.width != 1 {
        return Ok(());
    }
    if let Some(expected) = e.symbolic_factors() {
        if factor_multiset(&expected) != factor_multiset(&report.factors) {
            return Err(Error::Internal(format!("computed composition factors differ from those predicted by {e}")));
        }
    }
    Ok(())
}

pub fn cmd_oracle(expr: &str, cfg: &RunConfig) -> Result<Outcome> {
    let e = parse(expr)?;
    let g = evaluate_with(&e, DEFAULT_DEGREE_CAP)?;
    let report = width_oracle(&g, cfg.oracle_bound)?;
    let mut text = format!("group: {e}\ndegree: {}, order: {}\n", g.degree(), g.order());
    text += &report.to_string();
    let mut json = report_json(&report);
    json["command"] = json!("oracle");
    json["input"] = json!(e.to_string());
    json["order"] = json!(g.order().to_string());
    Ok(Outcome { report, text, json })
}

fn render_certificate(cert: &GaloisCertificate) -> String {
    let mut text =
        format!("discriminant: {} ({})\n", cert.discriminant, if cert.discriminant_square { "a square" } else { "not a square" });
    match cert.irreducible_mod_p_witness {
        Some(p) => text += &format!("irreducible modulo {p}\n"),
        None => text += "irreducible over Q (no irreducible reduction seen)\n",
    }
    text += &format!("Galois group: {}\n", cert.group_claim);
    text += &format!("evidence from {} primes:\n", cert.evidence.len());
    if cert.evidence.len() <= EVIDENCE_LINES {
        for e in &cert.evidence {
            text += &format!("  {e}\n");
        }
    } else {
        for (t, first, count) in cert.cycle_type_summary() {
            let parts: Vec<String> = t.iter().map(|d| d.to_string()).collect();
            text += &format!("  {{{}}}: first at p = {first}, seen {count} times\n", parts.join(", "));
        }
    }
    text
}

pub fn cmd_poly(poly: &str, cfg: &RunConfig) -> Result<(Outcome, GaloisCertificate)> {
    let f = parse_polynomial(poly)?;
    let cert = certify_group(&f, cfg.prime_budget)?;
    let report = width_of_certificate(&cert);
    let mut text = format!("polynomial: {}\ndegree: {}\n", f, cert.degree);
    text += &render_certificate(&cert);
    text += &report.to_string();
    let mut json = report_json(&report);
    json["command"] = json!("width-poly");
    json["input"] = json!(f.to_string());
    json["group_claim"] = json!(cert.group_claim.to_string());
    json["discriminant"] = json!(cert.discriminant.to_string());
    json["discriminant_square"] = json!(cert.discriminant_square);
    json["irreducible_mod_p_witness"] = json!(cert.irreducible_mod_p_witness);
    json["evidence"] = serde_json::to_value(&cert.evidence).expect("serializable");
    Ok((Outcome { report, text, json }, cert))
}

fn complex_string(z: num_complex::Complex64) -> String {
    format!("{:.9} {} {:.9}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

pub fn cmd_monodromy(family: &str, cfg: &RunConfig) -> Result<(Outcome, MonodromyResult)> {
    let fam = ParametricFamily::parse(family)?;
    let (result, report) = family_width(&fam, &cfg.monodromy)?;
    let order: BigUint = result.group.order();
    let mut text = format!("family: {}\nfiber degree: {}\n", family.trim(), fam.fiber_degree());
    text += &format!("branch points ({}):\n", result.branch_points.len());
    for (k, b) in result.branch_points.iter().enumerate() {
        text += &format!("  #{k} {} (residual {:.1e})\n", complex_string(b.value), b.residual);
    }
    text += &format!("base point: {}\n", complex_string(result.base_point));
    text += "permutations:\n";
    for (k, g) in result.loop_permutations.iter().enumerate() {
        text += &format!("  #{k} {g}\n");
    }
    text += &format!("group order: {order} ({})\n", if result.group.is_transitive() { "transitive" } else { "intransitive" });
    text += &report.to_string();
    let mut json = report_json(&report);
    json["command"] = json!("monodromy");
    json["input"] = json!(family.trim());
    json["fiber_degree"] = json!(fam.fiber_degree());
    json["group_order"] = json!(order.to_string());
    json["transitive"] = json!(result.group.is_transitive());
    json["base_point"] = json!([result.base_point.re, result.base_point.im]);
    json["branch_points"] =
        result.branch_points.iter().map(|b| json!({"re": b.value.re, "im": b.value.im, "residual": b.residual})).collect();
    json["permutations"] = result.loop_permutations.iter().map(|g| json!(g.to_string())).collect();
    Ok((Outcome { report, text, json }, result))
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    match e {
        Error::Parse { offset, .. } | Error::OutOfRange { offset, .. } => v["offset"] = json!(offset),
        Error::Reducible { factors } => v["factors"] = json!(factors),
        Error::Tracking { branch_point, history, .. } => {
            v["branch_point"] = json!(branch_point);
            v["history"] = json!(history);
        }
        _ => {}
    }
    v
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PROVED };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let cfg = match config_from(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_ERROR;
        }
    };
    let result = match &cli.command {
        Command::WidthGroup { expr } => cmd_group(expr, &cfg),
        Command::WidthPoly { poly } => cmd_poly(poly, &cfg).map(|(o, _)| o),
        Command::Monodromy { family } => cmd_monodromy(family, &cfg).map(|(o, _)| o),
        Command::Oracle { expr } => cmd_oracle(expr, &cfg),
    };
    match result {
        Ok(outcome) => {
            let _ = match cfg.format {
                OutputFormat::Text => write!(out, "{}", outcome.text),
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("json")),
            };
            outcome.exit_code()
        }
        Err(e) => {
            match cfg.format {
                OutputFormat::Text => {
                    let _ = writeln!(err, "error: {e}");
                    if let Error::Tracking { history, .. } = &e {
                        for h in history {
                            let _ = writeln!(err, "  {h}");
                        }
                    }
                }
                OutputFormat::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&error_json(&e)).expect("json"));
                }
            }
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["galois-width"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn group_commands() {
        let (code, out, _) = go(&["width-group", "S(4)"]);
        assert_eq!(code, 0);
        assert!(out.contains("width: 3 (proved)"), "{out}");
        let (code, out, _) = go(&["width-group", "C(1)"]);
        assert_eq!(code, 0);
        assert!(out.contains("width: 1"));
        let (code, out, _) = go(&["--json", "width-group", "S(3) x C(4)"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["width"], 3);
        assert_eq!(v["order"], "24");
    }

    #[test]
    fn symbolic_fallback_for_huge_groups() {
        let (code, out, _) = go(&["width-group", "S(20000)"]);
        assert_eq!(code, 0);
        assert!(out.contains("width: 20000"));
    }

    #[test]
    fn errors() {
        let (code, _, err) = go(&["width-group", "S(4"]);
        assert_eq!(code, 1);
        assert!(err.contains("byte 3"), "{err}");
        let (code, out, _) = go(&["--json", "width-poly", "x^4-1"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["factors"].as_array().unwrap().len(), 3);
        let (code, _, _) = go(&["--oracle-bound", "0", "oracle", "S(3)"]);
        assert_eq!(code, 1);
        let (code, _, err) = go(&["--tol=-1", "monodromy", "y^2 - p"]);
        assert_eq!(code, 1);
        assert!(err.contains("--tol"));
    }

    #[test]
    fn poly_cross_check_and_oracle() {
        let (code, out, _) = go(&["width-poly", "x^2-2"]);
        assert_eq!(code, 0);
        assert!(out.contains("width: 2 (proved)"));
        let (code, out, _) = go(&["--cross-check", "width-group", "D(6)"]);
        assert_eq!(code, 0);
        assert!(out.contains("chain indices"), "{out}");
        let (code, out, _) = go(&["oracle", "wr(S(2),S(3))"]);
        assert_eq!(code, 0);
        assert!(out.contains("width: 3"), "{out}");
    }

    #[test]
    fn monodromy_command() {
        let (code, out, _) = go(&["--json", "monodromy", "y^3 + p*y + p"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["group_order"], "6");
        assert_eq!(v["width"], 3);
        assert_eq!(v["permutations"].as_array().unwrap().len(), 2);
        assert_eq!(v["confidence"], "heuristic-lower-bound");
    }
}
