//! Command-line front end: `verify`, `eval` and `corpus`.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use betafrac::harness::{self, corpus, Check, Format, RunConfig};
use betafrac::{beta_derivatives, beta_integral, integral_remainder, BetaParam, Interval, TaylorExpansion};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "betafrac", version, about = "Beta-fractional calculus verification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification grid and write a report.
    Verify(VerifyArgs),
    /// Evaluate a single derivative, integral or Taylor expansion.
    Eval(EvalArgs),
    /// List corpus entries and their declared tags.
    Corpus,
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Interval::new(a, b).map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|e: betafrac::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: betafrac::Error| e.to_string())
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated beta values in (0, 1].
    #[arg(long, value_delimiter = ',')]
    beta: Vec<f64>,
    /// Interval as a,b; repeat for several.
    #[arg(long, value_parser = parse_interval)]
    interval: Vec<Interval>,
    /// Comma-separated Taylor degrees.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Vec<Check>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    parallel: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Quantity {
    Derivative,
    Integral,
    Taylor,
}

#[derive(Args, Debug)]
struct EvalArgs {
    quantity: Quantity,
    /// Corpus entry name.
    #[arg(long)]
    function: String,
    #[arg(long)]
    beta: f64,
    /// Evaluation point (derivative) or target point (taylor).
    #[arg(long)]
    x: Option<f64>,
    /// Expansion point for taylor.
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, value_parser = parse_interval)]
    interval: Option<Interval>,
    /// Derivative order or Taylor degree.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = betafrac::DEFAULT_TOL)]
    tol: f64,
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_path(path).with_context(|| format!("reading {}", path.display()))?,
        None => RunConfig::default(),
    };
    if !args.beta.is_empty() {
        cfg.betas = args.beta.clone();
    }
    if !args.interval.is_empty() {
        cfg.intervals = args.interval.clone();
    }
    if !args.n.is_empty() {
        cfg.degrees = args.n.clone();
    }
    if let Some(tol) = args.tol {
        cfg.tol = tol;
    }
    if !args.checks.is_empty() {
        cfg.checks = args.checks.clone();
    }
    if let Some(out) = &args.out {
        cfg.output_path = Some(out.clone());
    }
    if let Some(parallel) = args.parallel {
        cfg.parallel = parallel;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<u8> {
    let cfg = build_config(args)?;
    let report = harness::run_suite(&cfg, &corpus::default_corpus())?;
    for line in &report.diagnostics {
        eprintln!("error: {line}");
    }
    harness::emit_report(&report, args.format, cfg.output_path.as_deref())?;
    let s = report.summary;
    eprintln!(
        "holds {} violated {} hypothesis_not_met {} error {}",
        s.holds, s.violated, s.hypothesis_not_met, s.error
    );
    Ok(report.exit_status() as u8)
}

fn eval(args: &EvalArgs) -> Result<u8> {
    let p = BetaParam::new(args.beta)?;
    let entries = corpus::default_corpus();
    let f = corpus::find(&entries, &args.function)?.model(&p);
    let out = match args.quantity {
        Quantity::Derivative => {
            let Some(x) = args.x else { bail!("derivative needs --x") };
            let values = beta_derivatives(&p, &f, args.n, x)?;
            serde_json::json!({
                "function": f.name(), "beta": args.beta, "x": x, "order": args.n,
                "value": values[args.n],
            })
        }
        Quantity::Integral => {
            let Some(iv) = args.interval else {
                bail!("integral needs --interval")
            };
            let q = beta_integral(&p, &f, &iv, args.tol)?;
            serde_json::json!({
                "function": f.name(), "beta": args.beta, "a": iv.a(), "b": iv.b(),
                "value": q.value, "error_estimate": q.error_estimate, "evals": q.evaluations,
            })
        }
        Quantity::Taylor => {
            let (Some(s), Some(t)) = (args.s, args.x) else {
                bail!("taylor needs --s and --x")
            };
            let poly = TaylorExpansion::new(&p, &f, s, args.n)?.eval(t)?;
            let rem = integral_remainder(&p, &f, s, args.n, t, args.tol)?;
            serde_json::json!({
                "function": f.name(), "beta": args.beta, "s": s, "t": t, "n": args.n,
                "polynomial": poly, "remainder": rem.value, "value": f.eval(t)?,
            })
        }
    };
    println!("{out}");
    Ok(0)
}

fn list_corpus() -> Result<u8> {
    for e in corpus::default_corpus() {
        let tags: Vec<String> = e
            .known_properties()
            .iter()
            .map(|t| format!("{}: {:?}/{:?}", t.interval, t.direction, t.sign))
            .collect();
        let per_beta = if e.depends_on_beta() { " (per beta)" } else { "" };
        println!("{}{per_beta}\t{}", e.name(), tags.join("; "));
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval(args) => eval(args),
        Command::Corpus => list_corpus(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
