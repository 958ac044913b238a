//! Command-line front end; the binary only forwards `std::env::args` here.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::action::{ActionModel, DEFAULT_IMAGE_GUARD};
use crate::harness::{full_report, HarnessConfig, Report, Suite};
use crate::homs::{abelianization_image, pgl2_image, perm_image};
use crate::presentation::{parse_expression, Flavor, Presentation};
use crate::todd_coxeter::{enumerate, Enumeration, Limits};
use crate::words::Word;
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "spheremcg", version, about = "Extended mapping class groups of punctured spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Coset enumeration of a subgroup.
    Enumerate(EnumerateArgs),
    /// Order of an element, up to a cap.
    Order(OrderArgs),
    /// Images of a word, and equality with a second word if given.
    Eval(EvalArgs),
    /// Print the relators of a presentation.
    Presentation(PresentationArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Oriented,
    Extended,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Oriented => Flavor::Oriented,
            FlavorArg::Extended => Flavor::Extended,
        }
    }
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Maximum number of live cosets.
    #[arg(long, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Enumeration time limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    max_time: f64,
    /// Maximum total length of automorphism images.
    #[arg(long, default_value_t = DEFAULT_IMAGE_GUARD)]
    image_guard: usize,
}

impl LimitArgs {
    fn limits(&self) -> Result<Limits, String> {
        if self.max_cosets == 0 || self.max_time.is_nan() || self.max_time <= 0.0 || self.image_guard == 0 {
            return Err("limits must be positive".into());
        }
        Ok(Limits { max_cosets: self.max_cosets, max_time: Duration::from_secs_f64(self.max_time) })
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Puncture counts, comma separated; ignored by n4 and sigma2.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// presentation, prop22, section3, lemma-y, lemma-z, main, odd, n4, sigma2, sampling or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    limits: LimitArgs,
    /// Order search cap; defaults to 4n.
    #[arg(long)]
    order_cap: Option<u32>,
    /// Seed for the sampling suite.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Also search for an a,b-word equal to t a0, up to this length.
    #[arg(long)]
    witness_search: Option<usize>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    machine: bool,
    /// Also write the JSON report to this path (atomically).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "extended")]
    flavor: FlavorArg,
    /// Subgroup generators as comma-separated expressions, e.g. "a, b".
    #[arg(long, value_delimiter = ',')]
    subgroup: Vec<String>,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long)]
    machine: bool,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long)]
    n: u32,
    expr: String,
    /// Defaults to 4n.
    #[arg(long)]
    order_cap: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_IMAGE_GUARD)]
    image_guard: usize,
    #[arg(long)]
    machine: bool,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    n: u32,
    expr: String,
    target: Option<String>,
    #[arg(long, default_value_t = DEFAULT_IMAGE_GUARD)]
    image_guard: usize,
    #[arg(long)]
    machine: bool,
}

#[derive(Args, Debug)]
struct PresentationArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "extended")]
    flavor: FlavorArg,
}

enum Failure {
    Usage(String),
    Parse(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidLetter { .. } | Error::InvalidName { .. } => {
                Failure::Parse(e.to_string())
            }
            Error::InvalidN(_) | Error::WrongN { .. } => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if code == EXIT_PASS {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Order(a) => cmd_order(a, out),
        Command::Eval(a) => cmd_eval(a, out),
        Command::Presentation(a) => cmd_presentation(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Parse(m)) => {
            let _ = writeln!(err, "parse error: {m}");
            EXIT_PARSE
        }
        Err(Failure::Other(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAIL
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Other(e.to_string())
}

fn require_n(n: u32) -> Result<(), Failure> {
    if n < 3 {
        return Err(Failure::Usage(format!("n must be at least 3, got {n}")));
    }
    Ok(())
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let cfg = HarnessConfig {
        limits: a.limits.limits().map_err(Failure::Usage)?,
        order_cap: a.order_cap,
        image_guard: a.limits.image_guard,
        seed: a.seed,
        witness_search: a.witness_search,
        ..HarnessConfig::default()
    };
    for &n in &a.n {
        require_n(n)?;
    }
    let report = if a.suite == "all" {
        full_report(&a.n, &cfg)?
    } else {
        let suite = Suite::from_name(&a.suite).ok_or_else(|| Failure::Usage(format!("unknown suite {}", a.suite)))?;
        if suite.is_n_independent() {
            Report::new(suite.run(0, &cfg)?)
        } else {
            if a.n.is_empty() {
                return Err(Failure::Usage(format!("suite {} needs --n", suite.name())));
            }
            let mut checks = Vec::new();
            for &n in &a.n {
                if !suite.applies_to(n) {
                    return Err(Failure::Usage(format!(
                        "suite {} needs {}, got n = {n}",
                        suite.name(),
                        suite.precondition()
                    )));
                }
                checks.extend(suite.run(n, &cfg)?);
            }
            Report::new(checks)
        }
    };
    let json = report.to_json();
    if let Some(path) = &a.out {
        write_atomic(path, &json).map_err(io)?;
    }
    if a.machine {
        writeln!(out, "{json}").map_err(io)?;
    } else {
        write!(out, "{}", report.to_human()).map_err(io)?;
    }
    Ok(report.overall().exit_code())
}

fn parse_all(exprs: &[String], n: u32) -> Result<Vec<Word>, Failure> {
    exprs.iter().map(|e| e.trim()).filter(|e| !e.is_empty()).map(|e| Ok(parse_expression(e, n)?)).collect()
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Outcome {
    require_n(a.n)?;
    let limits = a.limits.limits().map_err(Failure::Usage)?;
    let subgens = parse_all(&a.subgroup, a.n)?;
    let p = Presentation::build(a.n, a.flavor.into())?;
    let e = enumerate(&p, &subgens, &limits)?;
    let (line, code) = match &e {
        Enumeration::Finished { index, .. } => (format!("index {index}"), EXIT_PASS),
        Enumeration::Overflow { .. } => ("OVERFLOW".to_string(), EXIT_OVERFLOW),
    };
    if a.machine {
        let v = json!({
            "n": a.n,
            "flavor": p.flavor(),
            "index": e.index(),
            "overflow": matches!(e, Enumeration::Overflow { .. }),
            "stats": e.stats(),
        });
        writeln!(out, "{v}").map_err(io)?;
    } else {
        writeln!(out, "{line}\n{}", e.stats()).map_err(io)?;
    }
    Ok(code)
}

fn model(n: u32, guard: usize) -> Result<ActionModel, Failure> {
    require_n(n)?;
    if guard == 0 {
        return Err(Failure::Usage("limits must be positive".into()));
    }
    Ok(ActionModel::new(n)?.with_guard(guard))
}

fn cmd_order(a: OrderArgs, out: &mut dyn Write) -> Outcome {
    let m = model(a.n, a.image_guard)?;
    let u = parse_expression(&a.expr, a.n)?;
    let cap = a.order_cap.unwrap_or(4 * a.n);
    if cap == 0 {
        return Err(Failure::Usage("limits must be positive".into()));
    }
    let order = m.order_of(&u, cap)?;
    if a.machine {
        writeln!(out, "{}", json!({ "word": u.to_string(), "order": order, "cap": cap })).map_err(io)?;
    } else {
        match order {
            Some(k) => writeln!(out, "{k}"),
            None => writeln!(out, "exceeds cap {cap}"),
        }
        .map_err(io)?;
    }
    Ok(EXIT_PASS)
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Outcome {
    let m = model(a.n, a.image_guard)?;
    let u = parse_expression(&a.expr, a.n)?;
    let v = a.target.as_deref().map(|t| parse_expression(t, a.n)).transpose()?;
    let equal = v.as_ref().map(|v| m.equal_in_group(&u, v)).transpose()?;
    let images = |w: &Word| -> Result<serde_json::Value, Failure> {
        let mut obj = json!({
            "word": w.to_string(),
            "perm": perm_image(w)?.to_string(),
            "psi": abelianization_image(w).to_string(),
        });
        if a.n == 4 {
            obj["pgl2"] = json!(pgl2_image(w)?.to_string());
        }
        Ok(obj)
    };
    let left = images(&u)?;
    let right = v.as_ref().map(images).transpose()?;
    if a.machine {
        writeln!(out, "{}", json!({ "left": left, "right": right, "equal": equal })).map_err(io)?;
    } else {
        let mut show = |label: &str, obj: &serde_json::Value| -> std::io::Result<()> {
            writeln!(out, "{label}: {}", obj["word"].as_str().unwrap_or_default())?;
            writeln!(out, "  perm {}", obj["perm"].as_str().unwrap_or_default())?;
            writeln!(out, "  psi' {}", obj["psi"].as_str().unwrap_or_default())?;
            if let Some(p) = obj.get("pgl2").and_then(|p| p.as_str()) {
                writeln!(out, "  pgl2 {p}")?;
            }
            Ok(())
        };
        show("left", &left).map_err(io)?;
        if let Some(r) = &right {
            show("right", r).map_err(io)?;
        }
        if let Some(eq) = equal {
            writeln!(out, "{}", if eq { "equal" } else { "not equal" }).map_err(io)?;
        }
    }
    Ok(if equal == Some(false) { EXIT_FAIL } else { EXIT_PASS })
}

fn cmd_presentation(a: PresentationArgs, out: &mut dyn Write) -> Outcome {
    require_n(a.n)?;
    let p = Presentation::build(a.n, a.flavor.into())?;
    write!(out, "{}", p.to_text()).map_err(io)?;
    Ok(EXIT_PASS)
}
