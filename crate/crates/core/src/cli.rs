//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::GaussianRational;
use crate::center::{build_c, build_pf_full, is_central, iwasawa_pf_check};
use crate::error::Error;
use crate::gt::{self, GtReport};
use crate::hc::{expected_center_image, expected_pfaffian_image, gamma, verify_center_images, verify_pfaffian_image};
use crate::report::Verification;
use crate::uea::MAX_RANK;

#[derive(Parser, Debug)]
#[command(name = "so-center", version, about = "Central elements of U(so_n) and their actions on Gelfand-Tsetlin modules")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "SO_CENTER_THREADS")]
    threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print C_n(u) in PBW normal form.
    BuildCenter {
        #[arg(long)]
        n: usize,
        /// Specialise u to a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Print PF_{2m}, optionally with its Iwasawa identity and Harish-Chandra image.
    Pfaffian {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        hc: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// C_n(u) commutes with every generator.
    Central {
        #[arg(long)]
        n: usize,
    },
    /// Harish-Chandra images of C_n(u).
    Hc {
        #[arg(long)]
        n: usize,
    },
    /// Centrality, Iwasawa identity and Harish-Chandra image of PF_{2m}.
    Pfaffian {
        #[arg(long)]
        m: usize,
    },
    /// Shift-operator identities on Gelfand-Tsetlin modules of SO(n−1).
    GtLemmas(GtArgs),
}

#[derive(Args, Debug)]
struct GtArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated highest weight of SO(n−1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    lambda: Vec<i64>,
    /// Shift index; all admissible indices when omitted.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<i64>,
    /// Rational "p/q" at which the central element of U(so_{n−2}) is compared.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Overrides every per-lemma tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

struct Outcome {
    ok: bool,
    json: Value,
    text: String,
}

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

fn check_rank(n: usize, min: usize) -> Result<(), Usage> {
    if n < min || n > MAX_RANK {
        return Err(usage(format!("--n must lie in {min}..={MAX_RANK}")));
    }
    Ok(())
}

fn check_half_rank(m: usize, min: usize) -> Result<(), Usage> {
    if m < min || 2 * m > MAX_RANK {
        return Err(usage(format!("--m must lie in {min}..={}", MAX_RANK / 2)));
    }
    Ok(())
}

fn parse_u(s: &str) -> Result<GaussianRational, Usage> {
    GaussianRational::parse_rational(s).map_err(|e| usage(format!("invalid --u {s:?}: {e}")))
}

fn verification_text(label: &str, v: &Verification) -> String {
    if v.ok {
        format!("{label}: pass")
    } else {
        format!("{label}: FAIL (residual terms {}, witness {})", v.residual_terms, v.witness)
    }
}

fn factored_center_image(n: usize) -> String {
    let mut s = String::from("(u^2 - H^2)");
    for i in 1..=(n - 2) / 2 {
        let _ = write!(s, "(u^2 - T{i}^2)");
    }
    s
}

fn factored_pfaffian_image(m: usize) -> String {
    let mut s = format!("(-i)^{m}*H");
    for i in 1..m {
        let _ = write!(s, "*T{i}");
    }
    s
}

fn build_center(n: usize, u: Option<String>) -> Result<Outcome, Usage> {
    if n > MAX_RANK {
        return Err(usage(format!("--n must be at most {MAX_RANK}")));
    }
    eprintln!("building C_{n}(u)");
    let mut c = (*build_c(n)).clone();
    if let Some(u) = u {
        c = c.eval_u(&parse_u(&u)?);
    }
    Ok(Outcome { ok: true, json: c.to_json(), text: c.to_string() })
}

fn verify_central(n: usize) -> Result<Outcome, Usage> {
    check_rank(n, 0)?;
    eprintln!("building C_{n}(u)");
    let c = build_c(n);
    eprintln!("checking commutators with {} generators", n * n.saturating_sub(1) / 2);
    let v = is_central(&c).to_verification();
    let text = verification_text(&format!("C_{n} central"), &v);
    Ok(Outcome { ok: v.ok, json: serde_json::to_value(&v).expect("serializable"), text })
}

fn verify_hc(n: usize) -> Result<Outcome, Usage> {
    check_rank(n, 2)?;
    eprintln!("projecting C_{n}(u)");
    let v = verify_center_images(n)?;
    let image = gamma(&build_c(n))?;
    let shown = if image == expected_center_image(n) { factored_center_image(n) } else { image.to_string() };
    let text = format!("gamma(C_{n}) = {shown}\n{}", verification_text("Harish-Chandra images", &v));
    let mut json = serde_json::to_value(&v).expect("serializable");
    json["image"] = serde_json::to_value(&image).expect("serializable");
    Ok(Outcome { ok: v.ok, json, text })
}

fn verify_pfaffian(m: usize) -> Result<Outcome, Usage> {
    check_half_rank(m, 1)?;
    eprintln!("building PF_{}", 2 * m);
    let pf = build_pf_full(m);
    let central = is_central(&pf).to_verification();
    let iwasawa = iwasawa_pf_check(m);
    let image = verify_pfaffian_image(m)?;
    let text = [
        verification_text(&format!("PF_{} central", 2 * m), &central),
        verification_text("Iwasawa identity", &iwasawa),
        verification_text("Harish-Chandra image", &image),
    ]
    .join("\n");
    let all = central.clone().and(iwasawa.clone()).and(image.clone());
    let mut json = serde_json::to_value(&all).expect("serializable");
    json["checks"] = json!({ "central": central, "iwasawa": iwasawa, "hc": image });
    Ok(Outcome { ok: all.ok, json, text })
}

fn report_line(r: &GtReport) -> String {
    format!(
        "{:<18} n={} lambda={:?} ell={:<3} residual={:.3e} tol={:.0e} {}",
        r.lemma,
        r.n,
        r.lambda,
        r.ell,
        r.max_residual,
        r.tolerance,
        if r.pass { "pass" } else { "FAIL" }
    )
}

fn verify_gt(args: GtArgs) -> Result<Outcome, Usage> {
    check_rank(args.n, 4)?;
    let n = args.n;
    if !gt::is_dominant(n - 1, &args.lambda) {
        return Err(usage(format!("{:?} is not a dominant weight of SO({})", args.lambda, n - 1)));
    }
    let ells = match args.ell {
        Some(ell) if !gt::shift_indices(n).contains(&ell) => {
            return Err(usage(format!("--ell {ell} is not admissible for n = {n}")));
        }
        Some(ell) => vec![ell],
        None => gt::shift_indices(n),
    };
    let u = parse_u(args.u.as_deref().unwrap_or("1/3"))?;
    let mut reports = Vec::new();
    for ell in &ells {
        eprintln!("checking n={n} lambda={:?} ell={ell}", args.lambda);
        reports.extend(gt::shift_reports(n, &args.lambda, *ell)?);
    }
    if n.is_multiple_of(2) && ells.contains(&0) {
        reports.push(gt::verify_pf_shift(n / 2, &args.lambda)?);
        reports.push(gt::pf_diagonal(n / 2, &args.lambda)?);
    }
    reports.push(gt::center_action(n, &args.lambda, &u)?);
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(usage("--tolerance must be positive"));
        }
        for r in &mut reports {
            r.tolerance = t;
            r.pass = r.max_residual <= t;
        }
    }
    let ok = reports.iter().all(|r| r.pass);
    let text = reports.iter().map(report_line).collect::<Vec<_>>().join("\n");
    Ok(Outcome { ok, json: serde_json::to_value(&reports).expect("serializable"), text })
}

fn pfaffian(m: usize, check: bool, hc: bool) -> Result<Outcome, Usage> {
    check_half_rank(m, 0)?;
    let pf = build_pf_full(m);
    let mut json = json!({ "element": pf.to_json() });
    let mut text = vec![pf.to_string()];
    let mut ok = true;
    if check {
        if m == 0 {
            return Err(usage("--check needs m ≥ 1"));
        }
        let v = iwasawa_pf_check(m);
        ok &= v.ok;
        text.push(verification_text("Iwasawa identity", &v));
        json["iwasawa"] = serde_json::to_value(&v).expect("serializable");
    }
    if hc {
        if m == 0 {
            return Err(usage("--hc needs m ≥ 1"));
        }
        let image = gamma(&pf)?;
        let matches = image == expected_pfaffian_image(m);
        ok &= matches;
        let shown = if matches { factored_pfaffian_image(m) } else { image.to_string() };
        text.push(format!("gamma(PF_{}) = {shown}", 2 * m));
        json["hc"] = json!({ "image": image, "ok": matches });
    }
    Ok(Outcome { ok, json, text: text.join("\n") })
}

fn dispatch(cmd: Command) -> Result<Outcome, Usage> {
    match cmd {
        Command::BuildCenter { n, u } => build_center(n, u),
        Command::Verify { kind } => match kind {
            VerifyKind::Central { n } => verify_central(n),
            VerifyKind::Hc { n } => verify_hc(n),
            VerifyKind::Pfaffian { m } => verify_pfaffian(m),
            VerifyKind::GtLemmas(args) => verify_gt(args),
        },
        Command::Pfaffian { m, check, hc } => pfaffian(m, check, hc),
    }
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 on a failed verification, 2 on a usage error.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: could not configure thread pool: {e}");
        }
    }
    let outcome = match dispatch(cli.command) {
        Ok(o) => o,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut body = match cli.format {
        Format::Json => serde_json::to_string(&outcome.json).expect("serializable"),
        Format::Text => outcome.text,
    };
    body.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.ok { 0 } else { 1 })
}
