mod output;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moya_core::expr::{self, ExprFunction, GRAMMAR};
use moya_core::iprob::{self, Distribution, DistributionSpec, ProbConfig};
use moya_core::{
    integrate, integrate_doubly_improper, integrate_from_lower_infinity,
    integrate_to_upper_infinity, Error, IntegrationConfig, Interval, LimitConfig, LimitOrder,
    OrderBox, QuadratureConfig, Rounding,
};
use output::Record;

#[derive(Parser, Debug)]
#[command(name = "moya", version, about = "Interval integrals over order boxes and interval probability densities")]
struct Cli {
    /// Convergence tolerance in the Moore metric.
    #[arg(long, global = true, env = "MOYA_TOL", default_value_t = 1e-6)]
    tol: f64,
    /// Largest uniform partition tried by the Riemann oracle.
    #[arg(long, global = true, default_value_t = 65536)]
    n_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = RoundingArg::Nearest)]
    rounding: RoundingArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Also run the Riemann-sum oracle next to quadrature.
    #[arg(long, global = true)]
    with_oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RoundingArg {
    Nearest,
    Outward,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Uniform,
    Exponential,
    Gaussian,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Stat {
    Raw,
    Mean,
    Variance,
    StdDev,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrderArg {
    LowerOuter,
    UpperOuter,
}

#[derive(Args, Debug)]
struct DistArgs {
    kind: Kind,
    /// Uniform lower corner.
    #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
    a: Option<Interval>,
    /// Uniform upper corner.
    #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
    b: Option<Interval>,
    #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
    lambda: Option<Interval>,
    #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
    mean: Option<Interval>,
    #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
    variance: Option<Interval>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate an expression over the box from A to B.
    #[command(after_help = GRAMMAR)]
    Integrate {
        expr: String,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        from: Interval,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        to: Interval,
    },
    /// Distribution function at a probe, by quadrature and by closed form.
    Cdf {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        at: Interval,
    },
    /// Density at a probe.
    Pdf {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        at: Interval,
    },
    /// Raw moment E[X^n], or a derived statistic.
    Moment {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Stat::Raw)]
        stat: Stat,
    },
    /// Nonnegativity on a probe grid and total mass.
    CheckDensity {
        #[command(flatten)]
        dist: DistArgs,
    },
    /// Validate a finite interval measure read from a JSON file (`-` for stdin).
    MeasureCheck { file: String },
    /// Integral with infinite endpoints such as `[inf,inf]` or `[-inf,-inf]`.
    #[command(after_help = GRAMMAR)]
    Limits {
        expr: String,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        from: Interval,
        #[arg(long, value_parser = interval_arg, allow_hyphen_values = true)]
        to: Interval,
        /// Limit taken last when both endpoints are infinite.
        #[arg(long, value_enum, default_value_t = OrderArg::LowerOuter)]
        order: OrderArg,
        /// Centre of the probes when both endpoints are infinite.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        #[arg(long, default_value_t = 2.0)]
        growth: f64,
        #[arg(long, default_value_t = 60)]
        max_steps: usize,
        #[arg(long, default_value_t = 1.0)]
        start: f64,
    },
}

/// `[lo,hi]`, or a bare number for a degenerate interval.
fn interval_arg(s: &str) -> Result<Interval, String> {
    let t = s.trim();
    if t.starts_with('[') {
        return t.parse().map_err(|e: Error| e.to_string());
    }
    let v = match t {
        "inf" | "+inf" => f64::INFINITY,
        "-inf" => f64::NEG_INFINITY,
        _ => t.parse::<f64>().map_err(|_| format!("malformed interval literal `{s}`"))?,
    };
    Interval::new(v, v).map_err(|e| e.to_string())
}

enum Failure {
    Domain(String),
    NonConvergent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_non_convergent() {
            Failure::NonConvergent(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

struct Settings {
    integration: IntegrationConfig,
    limits: LimitConfig,
    rounding: Rounding,
}

impl Settings {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(Failure::Domain(format!("--tol must be positive, got {}", cli.tol)));
        }
        if cli.n_max == 0 {
            return Err(Failure::Domain("--n-max must be at least 1".into()));
        }
        let rounding = match cli.rounding {
            RoundingArg::Nearest => Rounding::Nearest,
            RoundingArg::Outward => Rounding::Outward,
        };
        let integration = IntegrationConfig {
            quadrature: QuadratureConfig {
                tol: (cli.tol / 1000.0).max(1e-14),
                ..Default::default()
            },
            riemann_tol: cli.tol,
            n_max: cli.n_max,
            with_oracle: cli.with_oracle,
            rounding,
            ..Default::default()
        };
        let limits = LimitConfig {
            tol: cli.tol,
            ..Default::default()
        };
        Ok(Settings { integration, limits, rounding })
    }

    fn prob(&self) -> ProbConfig {
        ProbConfig {
            integration: self.integration,
            limits: self.limits,
            order: LimitOrder::default(),
        }
    }
}

fn parse_expr(src: &str, rounding: Rounding) -> Result<ExprFunction, Failure> {
    match expr::parse(src) {
        Ok(e) => Ok(ExprFunction::new(e, rounding)),
        Err(err) => {
            let caret = " ".repeat(src[..err.offset.min(src.len())].chars().count());
            Err(Failure::Domain(format!("{err}\n  {src}\n  {caret}^")))
        }
    }
}

fn need(v: Option<Interval>, flag: &str, kind: &str) -> Result<Interval, Failure> {
    v.ok_or_else(|| Failure::Domain(format!("{kind} needs --{flag}")))
}

fn dist_spec(d: &DistArgs) -> Result<DistributionSpec, Failure> {
    Ok(match d.kind {
        Kind::Uniform => DistributionSpec::Uniform {
            a: need(d.a, "a", "uniform")?,
            b: need(d.b, "b", "uniform")?,
        },
        Kind::Exponential => DistributionSpec::Exponential {
            lambda: need(d.lambda, "lambda", "exponential")?,
        },
        Kind::Gaussian => DistributionSpec::Gaussian {
            mean: need(d.mean, "mean", "gaussian")?,
            variance: need(d.variance, "variance", "gaussian")?,
        },
    })
}

fn describe(spec: &DistributionSpec) -> Record {
    match *spec {
        DistributionSpec::Uniform { a, b } => Record::new().with("distribution", "uniform").with("a", a).with("b", b),
        DistributionSpec::Exponential { lambda } => {
            Record::new().with("distribution", "exponential").with("lambda", lambda)
        }
        DistributionSpec::Gaussian { mean, variance } => Record::new()
            .with("distribution", "gaussian")
            .with("mean", mean)
            .with("variance", variance),
    }
}

fn build(d: &DistArgs) -> Result<(DistributionSpec, Distribution), Failure> {
    let spec = dist_spec(d)?;
    let dist = spec.build()?;
    Ok((spec, dist))
}

/// Closed form where one exists for the probe.
fn closed_form(spec: &DistributionSpec, x: Interval) -> Option<Interval> {
    match *spec {
        DistributionSpec::Exponential { lambda } => iprob::exponential_cdf_closed_form(lambda, x).ok(),
        DistributionSpec::Uniform { a, b } => iprob::uniform_cdf_closed_form(a, b, x).ok(),
        DistributionSpec::Gaussian { .. } => None,
    }
}

fn run(cli: &Cli) -> Result<(Record, bool), Failure> {
    let s = Settings::new(cli)?;
    match &cli.command {
        Command::Integrate { expr, from, to } => {
            let f = parse_expr(expr, s.rounding)?;
            let domain = OrderBox::new(*from, *to)?;
            let r = integrate(&f, domain, &s.integration)?;
            let record = Record::new()
                .with("value", r.value)
                .with("lower", r.lower_estimate)
                .with("upper", r.upper_estimate)
                .with("n", r.n_used)
                .with("converged", r.converged);
            Ok((record, r.converged))
        }
        Command::Cdf { dist, at } => {
            let (spec, d) = build(dist)?;
            let quad = iprob::cdf(&d, *at, &s.prob())?;
            let closed = closed_form(&spec, *at);
            let discrepancy = match closed {
                Some(c) => Some(quad.metric(&c)?),
                None => None,
            };
            let record = describe(&spec)
                .with("at", *at)
                .with("value", quad)
                .with("closed_form", closed)
                .with("discrepancy", discrepancy);
            Ok((record, true))
        }
        Command::Pdf { dist, at } => {
            let (spec, d) = build(dist)?;
            let v = iprob::pdf(&d, *at)?;
            Ok((describe(&spec).with("at", *at).with("value", v), true))
        }
        Command::Moment { dist, n, stat } => {
            let (spec, d) = build(dist)?;
            let c = s.prob();
            let record = describe(&spec);
            let record = match stat {
                Stat::Raw => record.with("stat", "raw").with("n", *n).with("value", iprob::nth_moment(&d, *n, &c)?),
                Stat::Mean => record.with("stat", "mean").with("value", iprob::mean(&d, &c)?),
                Stat::Variance => record.with("stat", "variance").with("value", iprob::variance(&d, &c)?),
                Stat::StdDev => {
                    let sd = iprob::std_dev(&d, &c)?;
                    record
                        .with("stat", "std-dev")
                        .with("value", sd.value)
                        .with("variance", sd.variance)
                        .with("clamped", sd.clamped)
                }
            };
            Ok((record, true))
        }
        Command::CheckDensity { dist } => {
            let (spec, d) = build(dist)?;
            let r = iprob::check_density(&d, &s.prob())?;
            let record = describe(&spec)
                .with("nonnegative", r.nonnegative)
                .with("min_lower", r.min_lower)
                .with("probes", r.probes)
                .with("total", r.total)
                .with("deviation", r.deviation)
                .with("normalized", r.normalized);
            Ok((record, true))
        }
        Command::MeasureCheck { file } => {
            let src = read_input(file)?;
            let m = iprob::FiniteIntervalMeasure::from_json(&src)?;
            let r = iprob::validate_measure(&m)?;
            let record = Record::new()
                .with("passes", r.passes())
                .with("atoms", r.atoms)
                .with("nonnegative", r.nonnegative)
                .with("empty_set_zero", r.empty_set_zero)
                .with("additive", r.additive)
                .with("pairs_checked", r.pairs_checked)
                .with("additivity_failures", output::Field::List(r.additivity_failures.clone()))
                .with("total", r.total)
                .with("probability", r.probability)
                .with("probability_deviation", r.probability_deviation);
            Ok((record, true))
        }
        Command::Limits { expr, from, to, order, center, growth, max_steps, start } => {
            let f = parse_expr(expr, s.rounding)?;
            let lcfg = LimitConfig { growth: *growth, max_steps: *max_steps, start: *start, ..s.limits };
            lcfg.validate()?;
            let icfg = &s.integration;
            let (from, to) = (*from, *to);
            let infinite = |x: Interval, sign: f64| x.lo() == sign * f64::INFINITY && x.hi() == x.lo();
            let record = Record::new().with("from", from).with("to", to);
            let record = match (infinite(from, -1.0), infinite(to, 1.0)) {
                (false, false) => {
                    if !(from.is_finite() && to.is_finite()) {
                        return Err(Failure::Domain(
                            "infinite endpoints must be [-inf,-inf] (from) or [inf,inf] (to)".into(),
                        ));
                    }
                    record.with("value", integrate(&f, OrderBox::new(from, to)?, icfg)?.value)
                }
                (false, true) => {
                    finite(from, "from")?;
                    record.with("value", integrate_to_upper_infinity(&f, from, from.hi(), icfg, &lcfg)?)
                }
                (true, false) => {
                    finite(to, "to")?;
                    record.with("value", integrate_from_lower_infinity(&f, to, to.lo(), icfg, &lcfg)?)
                }
                (true, true) => {
                    let (first, second) = match order {
                        OrderArg::LowerOuter => (LimitOrder::LowerOuter, LimitOrder::UpperOuter),
                        OrderArg::UpperOuter => (LimitOrder::UpperOuter, LimitOrder::LowerOuter),
                    };
                    let v = integrate_doubly_improper(&f, *center, first, icfg, &lcfg)?;
                    let w = integrate_doubly_improper(&f, *center, second, icfg, &lcfg)?;
                    record
                        .with("value", v)
                        .with("other_order", w)
                        .with("order_discrepancy", v.metric(&w)?)
                }
            };
            Ok((record, true))
        }
    }
}

fn finite(x: Interval, flag: &str) -> Result<(), Failure> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Failure::Domain(format!("--{flag} must be finite here, got {x}")))
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut src = String::new();
    let res = if file == "-" {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::File::open(file).and_then(|mut f| f.read_to_string(&mut src)).map(|_| ())
    };
    res.map_err(|e| Failure::Domain(format!("cannot read {file}: {e}")))?;
    Ok(src)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((record, converged)) => {
            let text = match cli.output {
                Format::Json => record.to_json(),
                Format::Csv => record.to_csv(),
            };
            println!("{text}");
            if converged {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: Riemann oracle did not settle within --n-max {}", cli.n_max);
                ExitCode::from(3)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NonConvergent(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
