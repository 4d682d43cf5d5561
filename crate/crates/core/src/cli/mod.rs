//! The `logfan` command line.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error.

mod verify;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cohomology::{graded_cohomology, parse_bundle};
use crate::error::{Error, Result};
use crate::kernel::{chern_log, euler_pairing_traced, parse_kernel, KERNEL_GRAMMAR};
use crate::lattice_fan::{DivisorLabel, Fan};
use crate::log_hkr::{hkr_cohomology, hkr_homology};
use crate::log_product::{log_product, log_product_with_order, parse_order, parse_pairs, LogPair, LogProductSpace};

pub use verify::{verify_suite, verify_suite_with, VerifyCase, VerifyReport};

/// Revision of the command-line interface and output formats.
pub const INTERFACE_REVISION: &str = "4864b60a7ef9";

const PAIR_GRAMMAR: &str = r#"pair   := "P<n>:H" | "P1:pt" | "C<g>:pt" | "A1:0"
pairs  := pair ("," pair)*
order  := stratum (";" stratum)*      stratum := 1-based factor list, e.g. "1,2,3"
bundle := term ("+" term)*            term := ("O" | "O(" int ")" | "K") ["^" mult] ["[" shift "]"]"#;

fn grammar_help() -> String {
    format!("input grammar:\n{PAIR_GRAMMAR}\n\nkernel grammar:\n{KERNEL_GRAMMAR}\n")
}

fn version_string() -> &'static str {
    concat!(env!("CARGO_PKG_VERSION"), " (interface 4864b60a7ef9)")
}

#[derive(Parser, Debug)]
#[command(name = "logfan", version = version_string(), about = "Log products, log HKR tables and strong kernel calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump or check fans in JSON form.
    #[command(subcommand)]
    Fan(FanCommand),
    /// Build a log product of pairs as a fan.
    Logproduct(LogproductArgs),
    /// Cohomology of a shifted split bundle.
    Cohomology(CohomologyArgs),
    /// Log Hochschild homology table via HKR.
    Hkr(HkrArgs),
    /// Log Chern character of a diagonal kernel.
    Chern(ChernArgs),
    /// Log Euler pairing of two kernels.
    Euler(EulerArgs),
    /// Run every worked example and property suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum FanCommand {
    /// Print the fan of a log product (or of the plain product) as JSON.
    Dump {
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        order: Option<String>,
        /// Dump the product fan before any blow-up.
        #[arg(long)]
        product: bool,
    },
    /// Validate a fan JSON document; `-` reads standard input.
    Check {
        path: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct LogproductArgs {
    #[arg(long)]
    pairs: String,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    /// Base space, e.g. `P2` or `C1`.
    #[arg(long)]
    base: String,
    #[arg(long)]
    bundle: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct HkrArgs {
    #[arg(long)]
    pair: String,
    /// Hochschild cohomology instead of homology.
    #[arg(long)]
    cohomology: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ChernArgs {
    #[arg(long)]
    pair: String,
    #[arg(long)]
    kernel: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EulerArgs {
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    kernel: String,
    #[arg(long)]
    against: String,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    json: bool,
}

/// Failure of a command: usage problems (exit 2) versus computation
/// errors (exit 1).
enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            e => Failure::Compute(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs `logfan` on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}\n{}", grammar_help());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = write!(err, "error: {msg}\n\n{}", grammar_help());
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Fan(FanCommand::Dump { pairs, order, product }) => {
            let space = build(&pairs, order.as_deref())?;
            let fan = if product { space.product_fan() } else { space.fan().clone() };
            writeln!(out, "{}", fan.to_json())?;
            Ok(0)
        }
        Command::Fan(FanCommand::Check { path, json }) => fan_check(&path, json, out),
        Command::Logproduct(a) => {
            let space = build(&a.pairs, a.order.as_deref())?;
            if a.json {
                let j = space.to_json_value()?;
                writeln!(out, "{}", serde_json::to_string(&j).expect("serializable"))?;
            } else {
                write_space(&space, out)?;
            }
            Ok(0)
        }
        Command::Cohomology(a) => {
            let base = parse_base(&a.base)?;
            let dims = graded_cohomology(&parse_bundle(base, &a.bundle)?)?;
            if a.json {
                writeln!(out, "{}", dims.to_json())?;
            } else {
                write!(out, "{dims}")?;
            }
            Ok(0)
        }
        Command::Hkr(a) => {
            let pair: LogPair = a.pair.parse()?;
            let dims = if a.cohomology { hkr_cohomology(&pair)? } else { hkr_homology(&pair)? };
            if a.json {
                writeln!(out, "{}", dims.to_json())?;
            } else {
                write!(out, "{dims}")?;
                if pair.genus().is_some_and(|g| g >= 1) {
                    writeln!(out, "note: not concentrated in degree 0 for genus >= 1")?;
                }
            }
            Ok(0)
        }
        Command::Chern(a) => {
            let pair: LogPair = a.pair.parse()?;
            let kernel = parse_kernel(&a.kernel, pair, pair)?;
            let value = chern_log(&kernel)?.value();
            if a.json {
                let j = json!({"pair": pair.to_string(), "kernel": kernel.to_string(), "value": value});
                writeln!(out, "{j}")?;
            } else {
                writeln!(out, "{value}")?;
            }
            Ok(0)
        }
        Command::Euler(a) => {
            let source: LogPair = a.source.parse()?;
            let target: LogPair = a.target.parse()?;
            let e = parse_kernel(&a.kernel, source, target)?;
            let f = parse_kernel(&a.against, source, target)?;
            let trace = euler_pairing_traced(&e, &f)?;
            match (a.json, a.trace) {
                (true, true) => writeln!(out, "{}", serde_json::to_string(&trace).expect("serializable"))?,
                (true, false) => writeln!(out, "{}", json!({"value": trace.value}))?,
                (false, true) => write!(out, "{trace}")?,
                (false, false) => writeln!(out, "{}", trace.value)?,
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let report = verify_suite();
            if a.json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
            } else {
                for c in &report.cases {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{status} {:<28} [{}] expected {} got {}", c.id, c.anchor, c.expected, c.actual)?;
                }
                writeln!(out, "{} cases, {} failures", report.cases.len(), report.failures())?;
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
    }
}

fn build(pairs: &str, order: Option<&str>) -> Result<LogProductSpace> {
    let pairs = parse_pairs(pairs)?;
    match order {
        Some(o) => log_product_with_order(&pairs, &parse_order(o)?),
        None => log_product(&pairs),
    }
}

/// Accepts `P2`, `C1` or a full pair such as `P2:H`.
fn parse_base(s: &str) -> Result<LogPair> {
    if s.contains(':') {
        return s.parse();
    }
    match s {
        "P1" => Ok(LogPair::p1()),
        _ if s.starts_with('P') => format!("{s}:H").parse(),
        _ if s.starts_with('C') => format!("{s}:pt").parse(),
        _ => Err(Error::Parse(format!("unknown base {s:?}"))),
    }
}

fn label_text(l: DivisorLabel) -> String {
    match l {
        DivisorLabel::Boundary(i) => format!("boundary {}", i + 1),
        DivisorLabel::Exceptional(s) => format!("exceptional {s}"),
        DivisorLabel::StrictTransform(i) => format!("strict_transform {}", i + 1),
    }
}

fn write_space(space: &LogProductSpace, out: &mut dyn Write) -> std::io::Result<()> {
    let fan = space.fan();
    let names: Vec<String> = space.factors().iter().map(ToString::to_string).collect();
    writeln!(out, "factors: {}", names.join(", "))?;
    writeln!(out, "rank: {}", fan.rank())?;
    writeln!(out, "maximal cones: {}", fan.max_cones().len())?;
    writeln!(out, "smooth: {}", fan.is_smooth())?;
    writeln!(out, "rays:")?;
    for (i, r) in fan.rays().iter().enumerate() {
        match fan.label(r) {
            Some(l) => writeln!(out, "  {i:>3} {r}  {}", label_text(l))?,
            None => writeln!(out, "  {i:>3} {r}")?,
        }
    }
    writeln!(out, "strata:")?;
    for (s, r) in space.stratum_ray() {
        writeln!(out, "  {s} -> {r}")?;
    }
    Ok(())
}

fn fan_check(path: &str, json: bool, out: &mut dyn Write) -> CmdResult {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    let fan = Fan::from_json(&text)?;
    let smooth = fan.is_smooth();
    if json {
        let j = json!({
            "rank": fan.rank(),
            "rays": fan.rays().len(),
            "max_cones": fan.max_cones().len(),
            "face_closure": true,
            "smooth": smooth,
        });
        writeln!(out, "{j}")?;
    } else {
        writeln!(out, "rank: {}", fan.rank())?;
        writeln!(out, "rays: {}", fan.rays().len())?;
        writeln!(out, "maximal cones: {}", fan.max_cones().len())?;
        writeln!(out, "face closure: ok")?;
        writeln!(out, "smooth: {smooth}")?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("logfan").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hkr_json() {
        let (code, out, _) = run_str(&["hkr", "--pair", "P1:pt", "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"dims":{"0":1}}"#);
    }

    #[test]
    fn euler_graph() {
        let (code, out, _) = run_str(&[
            "euler", "--source", "P1:pt", "--target", "P2:H", "--kernel", "graph(deg=1)", "--against", "graph(deg=1)",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "0");
    }

    #[test]
    fn usage_errors_print_grammar() {
        let (code, _, err) = run_str(&["chern", "--pair", "P1:pt", "--kernel", "diag(O,"]);
        assert_eq!(code, 2);
        assert!(err.contains("kernel grammar"));
        let (code, _, err) = run_str(&["hkr", "--bogus"]);
        assert_eq!(code, 2);
        assert!(err.contains("input grammar"));
    }

    #[test]
    fn computation_errors_exit_one() {
        let (code, _, err) = run_str(&["cohomology", "--base", "C2", "--bundle", "O(1)"]);
        assert_eq!(code, 1);
        assert!(err.contains("genus 2"));
    }

    #[test]
    fn version_mentions_revision() {
        let (code, out, _) = run_str(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains(INTERFACE_REVISION));
    }
}
