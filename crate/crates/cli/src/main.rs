mod codes;
mod verify;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use tcodes::asymptotics::{self, Crossover, Grid, RATE_CURVE_HEADER};
use tcodes::qstring::random_pattern;
use tcodes::zero_error::{lambda_q, zero_error_rate};
use tcodes::{ChannelModel, Error, QaryString, TranspositionPattern};

use codes::CodeArgs;
use verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "tcodes", version, about = "Codes correcting adjacent transpositions in q-ary strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test membership of a string, or list the whole code.
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, required_unless_present = "list", conflicts_with = "list")]
        x: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Print the codeword with the given lexicographic rank.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        index: BigUint,
    },
    /// Recover a codeword from a corrupted string.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        y: String,
    },
    /// Push a string through the transposition channel.
    Channel(ChannelArgs),
    /// Evaluate counting bounds and rate curves.
    Bounds(BoundsArgs),
    /// Run exhaustive property checks and print a CSV report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ChannelArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    x: String,
    #[arg(long, value_enum, default_value = "disjoint")]
    model: ModelArg,
    /// Explicit 1-based swap locations, e.g. `1,4,9`.
    #[arg(long, conflicts_with_all = ["t", "seed"])]
    pattern: Option<String>,
    /// Number of swaps to draw at random.
    #[arg(long, required_unless_present = "pattern")]
    t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Disjoint,
    Successive,
}

impl From<ModelArg> for ChannelModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Disjoint => ChannelModel::Disjoint,
            ModelArg::Successive => ChannelModel::Successive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Alpha,
    Beta,
    Betabar,
    Gv,
    Combined,
    Cardinality,
    Crossover,
    Lambda,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    q: usize,
    #[arg(long, value_enum)]
    what: What,
    /// `start:end:step`.
    #[arg(long, conflicts_with = "point")]
    grid: Option<Grid>,
    #[arg(long)]
    point: Option<f64>,
    /// Block length for `cardinality`.
    #[arg(long)]
    n: Option<usize>,
    /// Number of transpositions for `cardinality`.
    #[arg(long, default_value_t = 1)]
    t: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Run past the size caps.
    #[arg(long)]
    force: bool,
}

/// Failure categories, mapped to exit codes 1 and 2.
enum Failure {
    /// A property failed or the input could not be decoded.
    Property(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Uncorrectable => Failure::Property(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn join(x: &QaryString) -> String {
    x.to_string()
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Check { code, x, list } => {
            let built = code.build()?;
            if list {
                let mut out = String::new();
                for w in &built.code().enumerate()? {
                    let _ = writeln!(out, "{}", join(w));
                }
                Ok(out)
            } else {
                let x = built.parse_string(x.as_deref().unwrap_or_default())?;
                Ok(format!("{}\n", built.code().contains(&x)?))
            }
        }
        Command::Encode { code, index } => {
            let built = code.build()?;
            Ok(format!("{}\n", join(&built.codeword(&index)?)))
        }
        Command::Decode { code, y } => {
            let built = code.build()?;
            let y = built.parse_string(&y)?;
            Ok(format!("{}\n", join(&built.code().decode(&y)?)))
        }
        Command::Channel(args) => channel(args),
        Command::Bounds(args) => bounds(args),
        Command::Verify(args) => {
            let report = verify::run(args.suite, args.q, args.max_n, args.force)?;
            let text = report.to_csv();
            if report.all_passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Property("some properties failed".into()))
            }
        }
    }
}

fn channel(args: ChannelArgs) -> CmdResult {
    let x = QaryString::parse(args.q, &args.x)?;
    let model = ChannelModel::from(args.model);
    let pattern = match (&args.pattern, args.t) {
        (Some(text), _) => TranspositionPattern::parse(model, text)?,
        (None, Some(t)) => random_pattern(x.len(), t, model, args.seed)?,
        (None, None) => unreachable!("clap requires --t or --pattern"),
    };
    let y = x.apply(&pattern)?;
    Ok(format!("x={}\nmodel={}\npattern={}\ny={}\n", join(&x), model, pattern, join(&y)))
}

fn fixed(v: f64) -> String {
    format!("{v:.9}")
}

fn bounds(args: BoundsArgs) -> CmdResult {
    let q = args.q;
    let scalar = |f: &dyn Fn(f64) -> tcodes::Result<f64>, axis: &str, name: &str| -> CmdResult {
        match (args.grid, args.point) {
            (Some(grid), _) => {
                let mut out = format!("{axis},{name}\n");
                for v in grid.points() {
                    let _ = writeln!(out, "{},{}", fixed(v), fixed(f(v)?));
                }
                Ok(out)
            }
            (None, Some(v)) => Ok(format!("{}\n", fixed(f(v)?))),
            (None, None) => Err(Failure::Usage("one of --grid or --point is required".into())),
        }
    };
    match args.what {
        What::Alpha => scalar(&|r| asymptotics::alpha(q, r), "rho", "alpha"),
        What::Beta => scalar(&|r| asymptotics::beta(q, r), "rho", "beta"),
        What::Betabar => scalar(&|r| asymptotics::beta_bar_upper(q, r), "rho", "beta_bar_upper"),
        What::Gv => scalar(&|d| asymptotics::gv_rate(q, d), "delta", "r_gv"),
        What::Combined => {
            let points = match (args.grid, args.point) {
                (Some(grid), _) => asymptotics::rate_curve(q, &grid)?,
                (None, Some(d)) => vec![asymptotics::combined_rate(q, d)?],
                (None, None) => return Err(Failure::Usage("one of --grid or --point is required".into())),
            };
            debug_assert!(asymptotics::rate_curve_csv(&points).starts_with(RATE_CURVE_HEADER));
            Ok(asymptotics::rate_curve_csv(&points))
        }
        What::Cardinality => {
            let n = args.n.ok_or_else(|| Failure::Usage("--n is required for cardinality".into()))?;
            let e = if args.t == 1 {
                asymptotics::cardinality_bounds_t1(q, n)?
            } else {
                asymptotics::cardinality_bounds_t(q, n, args.t)?
            };
            Ok(format!("n,t,log2_lower,log2_upper\n{n},{},{},{}\n", args.t, fixed(e.log2_lower), fixed(e.log2_upper)))
        }
        What::Crossover => match asymptotics::crossover_delta0(q)? {
            Crossover::At(d) => Ok(format!("{d:.6}\n")),
            Crossover::NoCrossover => Ok("none\n".into()),
        },
        What::Lambda => Ok(format!(
            "lambda={}\nlog2_lambda={}\nhalf_log={}\n",
            fixed(lambda_q(q)?),
            fixed(zero_error_rate(q)?),
            fixed(asymptotics::half_log_rate(q)?)
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
