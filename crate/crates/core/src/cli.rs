//! The `kax` command line.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::kcalc::{
    self, Conventions, DualNumbers, GroupExpr, P2OddConvention, QuillenConvention, RingSpec,
    Variant,
};
use crate::oracles::{self, Budget, Suite};
use crate::witt::{restrict, verschiebung, WittRing, WittVector};
use crate::words;

pub const DEFAULT_DEGREE_CEILING: i64 = 200;

#[derive(Debug, Parser)]
#[command(
    name = "kax",
    version,
    about = "K-groups of square-zero extensions R[x_1..x_d]/(x)^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One K-group.
    Compute(ComputeArgs),
    /// K-groups in degrees 0..=max-degree.
    Table(TableArgs),
    /// Count (and list) cyclic words of exact period s.
    CountWords(CountArgs),
    /// Arithmetic in W_n(F_{p^f}).
    Witt(WittArgs),
    /// Run the brute-force verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlainFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum QuillenArg {
    Standard,
    Paper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum P2OddArg {
    Collapsed,
    NuIndexed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComputeVariant {
    Square,
    Axes,
    Dual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableVariant {
    Square,
    Axes,
    Dual,
    Integral,
}

#[derive(Debug, Args)]
struct RingArgs {
    /// The prime; must match the ring.
    #[arg(long)]
    p: Option<u64>,
    /// Number of variables.
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// Fq:<q>, perfect:<name>:<p>, perfectoid:<name>:<p> or zpcycl:<p>. Defaults to Fq:<p>.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, value_enum, default_value_t = QuillenArg::Standard)]
    quillen_exponent: QuillenArg,
    /// Reading of the odd-degree product at p = 2.
    #[arg(long, value_enum, default_value_t = P2OddArg::Collapsed)]
    p2_odd: P2OddArg,
    /// Largest degree accepted.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CEILING)]
    degree_ceiling: i64,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long, value_enum, default_value_t = ComputeVariant::Square)]
    variant: ComputeVariant,
    /// Integral K-groups (finite fields only).
    #[arg(long)]
    integral: bool,
    /// Also print the index triples (and the dual-number checks).
    #[arg(long)]
    explain: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    max_degree: i64,
    #[arg(long, value_enum, default_value_t = TableVariant::Square)]
    variant: TableVariant,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    s: u64,
    #[arg(long)]
    d: u64,
    /// Words with no two cyclically adjacent equal letters.
    #[arg(long)]
    axes: bool,
    /// List the canonical representatives.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
    format: PlainFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WittAction {
    Add,
    Mul,
    Sub,
    Neg,
    /// Verschiebung W_n -> W_{n+1}.
    V,
    /// Restriction W_n -> W_{n-1}.
    R,
}

#[derive(Debug, Args)]
struct WittArgs {
    #[arg(value_enum)]
    action: WittAction,
    #[arg(long)]
    p: u64,
    /// Length of the input vectors.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Comma-separated coordinates; for f > 1 each is a colon-separated F_p-vector.
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Debug, Args)]
struct VerifySuiteArg {
    #[arg(default_value = "all")]
    suite: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    suite: VerifySuiteArg,
    #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
    format: PlainFormat,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Runs `kax` with `args` (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Table(a) => table(a),
        Command::CountWords(a) => count_words(a),
        Command::Witt(a) => witt(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(out) => out,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

impl RingArgs {
    fn resolve(&self) -> Result<(RingSpec, Conventions)> {
        let ring: RingSpec = match (&self.ring, self.p) {
            (Some(text), _) => text.parse()?,
            (None, Some(p)) => RingSpec::finite_field(p)?,
            (None, None) => return Err(Error::Invalid("give --ring or --p".into())),
        };
        if let Some(p) = self.p {
            if p != ring.prime() {
                return Err(Error::Mismatch(format!(
                    "--p {p} but {} has characteristic prime {}",
                    ring.pretty(),
                    ring.prime()
                )));
            }
        }
        if self.d == 0 {
            return Err(Error::NonPositive("d"));
        }
        let conv = Conventions {
            quillen: match self.quillen_exponent {
                QuillenArg::Standard => QuillenConvention::Standard,
                QuillenArg::Paper => QuillenConvention::Shifted,
            },
            p2_odd: match self.p2_odd {
                P2OddArg::Collapsed => P2OddConvention::Collapsed,
                P2OddArg::NuIndexed => P2OddConvention::NuIndexed,
            },
        };
        Ok((ring, conv))
    }

    fn check_degree(&self, degree: i64) -> Result<()> {
        if degree > self.degree_ceiling {
            return Err(Error::Invalid(format!(
                "degree {degree} is above the ceiling {} (see --degree-ceiling)",
                self.degree_ceiling
            )));
        }
        Ok(())
    }
}

fn explain(g: &GroupExpr, ring: &RingSpec) -> String {
    let mut out = String::new();
    for f in &g.factors {
        let name = f.kind.to_text();
        match f.provenance {
            Some(pr) => {
                let _ = write!(out, "  m'={} s={}", pr.m_prime, pr.s);
                if let Some(nu) = pr.nu {
                    let _ = write!(out, " nu={nu}");
                }
                let _ = writeln!(out, ": {name} x{}", f.multiplicity);
            }
            None => {
                let _ = writeln!(out, "  K_{}({}): {name}", g.degree, ring.pretty());
            }
        }
    }
    out
}

fn explain_dual(dual: &DualNumbers) -> String {
    let mut out = String::new();
    for (m, h) in &dual.h {
        let _ = writeln!(out, "  h({m}) = {h}");
    }
    if let Some((top, bottom)) = &dual.big_witt {
        let verdict = if dual.big_witt_consistent() {
            "agrees"
        } else {
            "DISAGREES"
        };
        let _ = writeln!(
            out,
            "  big Witt quotient order: {top} / {bottom} ({verdict})"
        );
    }
    if let Some(order) = &dual.nu_indexed_order {
        let _ = writeln!(out, "  nu-indexed order: {order}");
    }
    out
}

fn compute(a: ComputeArgs) -> Result<Outcome> {
    let (ring, conv) = a.ring.resolve()?;
    a.ring.check_degree(a.degree)?;
    let variant = match a.variant {
        ComputeVariant::Square => Variant::Square,
        ComputeVariant::Axes => Variant::Axes,
        ComputeVariant::Dual => Variant::Dual,
    };
    let g = kcalc::compute(&ring, a.ring.d, a.degree, variant, a.integral, conv)?;
    let mut out = match a.format {
        Format::Text => format!("{}\n", g.to_text()),
        Format::Json => format!("{}\n", g.to_json()),
        Format::Latex => format!("{}\n", g.to_latex()),
    };
    if a.explain && matches!(a.format, Format::Text) {
        out.push_str(&explain(&g, &ring));
        if matches!(variant, Variant::Dual) && a.degree >= 0 {
            out.push_str(&explain_dual(&kcalc::dual_numbers_k_with(
                &ring, a.degree, conv,
            )?));
        }
    }
    Ok(Outcome::ok(out))
}

fn table(a: TableArgs) -> Result<Outcome> {
    let (ring, conv) = a.ring.resolve()?;
    a.ring.check_degree(a.max_degree)?;
    let variant = match a.variant {
        TableVariant::Square => Variant::Square,
        TableVariant::Axes => Variant::Axes,
        TableVariant::Dual => Variant::Dual,
        TableVariant::Integral => Variant::Integral,
    };
    let rows = kcalc::table(&ring, a.ring.d, a.max_degree, variant, conv)?;
    let out = match a.format {
        Format::Json => format!("{}\n", GroupExpr::list_to_json(&rows)),
        Format::Text => rows
            .iter()
            .map(|g| format!("K_{} = {}\n", g.degree, g.to_text()))
            .collect(),
        Format::Latex => rows
            .iter()
            .map(|g| format!("K_{{{}}} &\\cong {} \\\\\n", g.degree, g.to_latex()))
            .collect(),
    };
    Ok(Outcome::ok(out))
}

fn count_words(a: CountArgs) -> Result<Outcome> {
    let count = if a.axes {
        words::count_axes(a.s, a.d)?
    } else {
        words::count_aperiodic(a.s, a.d)?
    };
    let list = if a.list {
        let budget = Budget::from_env()?.words;
        let found = if a.axes {
            words::enumerate_axes(a.s, a.d, budget)?
        } else {
            words::enumerate_aperiodic(a.s, a.d, budget)?
        };
        if count != found.len().into() {
            return Err(Error::Internal(format!(
                "count {count} but enumeration found {}",
                found.len()
            )));
        }
        Some(found.iter().map(|w| w.to_string()).collect::<Vec<_>>())
    } else {
        None
    };
    let out = match a.format {
        PlainFormat::Text => {
            let mut out = format!("{count}\n");
            for w in list.iter().flatten() {
                out.push_str(w);
                out.push('\n');
            }
            out
        }
        PlainFormat::Json => {
            let mut v = json!({
                "s": a.s,
                "d": a.d,
                "variant": if a.axes { "axes" } else { "all" },
                "count": count.to_string(),
            });
            if let Some(list) = list {
                v["words"] = json!(list);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    Ok(Outcome::ok(out))
}

fn parse_vector(ring: &WittRing, text: &str) -> Result<WittVector> {
    let field = ring.field();
    let p = field.characteristic() as i64;
    let coords = text
        .split(',')
        .map(|c| {
            let digits = c
                .split(':')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map(|v| v.rem_euclid(p) as u64)
                        .map_err(|_| Error::Invalid(format!("bad coordinate {c:?} in {text:?}")))
                })
                .collect::<Result<Vec<u64>>>()?;
            if digits.len() > field.degree() as usize {
                return Err(Error::Invalid(format!(
                    "coordinate {c:?} has more than {} F_p-digits",
                    field.degree()
                )));
            }
            let mut digits = digits;
            digits.resize(field.degree() as usize, 0);
            field.from_coeffs(digits)
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != ring.len() {
        return Err(Error::Mismatch(format!(
            "{text:?} has {} coordinates, expected --n {}",
            coords.len(),
            ring.len()
        )));
    }
    ring.vector(coords)
}

fn witt(a: WittArgs) -> Result<Outcome> {
    if a.n == 0 {
        return Err(Error::NonPositive("n"));
    }
    let ring = WittRing::new(a.p, a.f, a.n)?;
    let x = parse_vector(&ring, &a.a)?;
    let second = || -> Result<WittVector> {
        let b =
            a.b.as_deref()
                .ok_or_else(|| Error::Invalid("this action needs two vectors".into()))?;
        parse_vector(&ring, b)
    };
    let unary = || -> Result<()> {
        match a.b {
            Some(_) => Err(Error::Invalid("this action takes one vector".into())),
            None => Ok(()),
        }
    };
    let result = match a.action {
        WittAction::Add => ring.add(&x, &second()?)?,
        WittAction::Mul => ring.mul(&x, &second()?)?,
        WittAction::Sub => ring.sub(&x, &second()?)?,
        WittAction::Neg => {
            unary()?;
            ring.neg(&x)?
        }
        WittAction::V => {
            unary()?;
            verschiebung(&x)
        }
        WittAction::R => {
            unary()?;
            restrict(&x)?
        }
    };
    Ok(Outcome::ok(format!("{result}\n")))
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let suite: Suite = a.suite.suite.parse()?;
    let budget = Budget::from_env()?;
    let report = oracles::run_suite(suite, &budget);
    let stdout = match a.format {
        PlainFormat::Text => report.to_text(),
        PlainFormat::Json => format!("{}\n", report.to_json()),
    };
    Ok(Outcome {
        code: if report.passed() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}
