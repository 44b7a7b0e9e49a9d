//! `copulab` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid spec or input (error JSON on stderr),
//! 1 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use copulab::analysis::{
    d_inf, d_p, nondiff_scan, partial_probe, schwarz_check, DEFAULT_THRESHOLD,
};
use copulab::constructions::Checkerboard;
use copulab::json::{fmt17, to_json_string};
use copulab::pickands::MeasureReport;
use copulab::{sample, Copula, CopulaSpec, Error, PickandsMeasure};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "copulab",
    version,
    about = "Copulas through their Markov kernels"
)]
struct Cli {
    /// Print the parsed input spec in canonical form and exit.
    #[arg(long, global = true)]
    dump_spec: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pickands dependence measures.
    #[command(subcommand)]
    Pickands(PickandsCmd),
    /// Extreme value copulas (eval and sample accept any family).
    #[command(subcommand)]
    Evc(EvcCmd),
    /// Distance between two copulas.
    Metric(MetricArgs),
    /// Checkerboard approximation; prints the approximating spec.
    Approx(ApproxArgs),
    /// Derivative diagnostics.
    #[command(subcommand)]
    Diagnose(DiagnoseCmd),
}

#[derive(Subcommand)]
enum PickandsCmd {
    /// Check total mass 1 and mean 1/2.
    Validate { measure: PathBuf },
    /// Tabulate `t,A,DplusA,GA` on `grid` equispaced points.
    ToFunction {
        measure: PathBuf,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvcCmd {
    /// `C(x,y)` and `K(x,[0,y])`.
    Eval {
        spec: String,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// Conditional-inverse sample as CSV `x,y`.
    Sample {
        spec: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Masses on the atom graphs and the remainder.
    MassDecomp { spec: String },
    /// Support endpoints `(L,R)` and, with `--x`, the vertical support extent.
    Support {
        spec: String,
        #[arg(long)]
        x: Option<f64>,
    },
}

#[derive(Args)]
struct MetricArgs {
    a: String,
    b: String,
    /// `d_inf` (uniform distance of the CDFs) or `D_p` (kernel metric).
    #[arg(long, default_value = "d_inf")]
    metric: String,
    /// Exponent of `D_p`: a number >= 1 or `inf`.
    #[arg(short, long, default_value = "1")]
    p: String,
    #[arg(long, default_value_t = 512)]
    grid: usize,
}

#[derive(Args)]
struct ApproxArgs {
    spec: String,
    #[arg(short = 'N', long = "size")]
    size: usize,
    /// Base copula of the cells.
    #[arg(long, default_value = "Pi")]
    base: String,
    /// Also report `d_inf` between the approximation and the input on this grid.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DiagnoseCmd {
    /// One-sided partial derivatives in x; a single point with `--y`,
    /// otherwise the grid `k/(grid+1)`.
    Derivative {
        spec: String,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: Option<f64>,
        #[arg(long, default_value_t = 99)]
        grid: usize,
        /// Emit rows `y,plus,minus,gap` instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Points where the partial derivative in x does not exist.
    Scan {
        spec: String,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 999)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Mismatch of `∂_y K_C` and `∂_x K_{Cᵗ}` on the interior grid.
    Schwarz {
        spec: String,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
}

/// Failure with its exit code and error document.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn invalid(kind: &str, message: impl Into<String>) -> Self {
        Self {
            code: 2,
            body: json!({ "error": kind, "message": message.into() }),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            body: json!({ "error": "internal", "message": message.into() }),
        }
    }

    fn with(mut self, key: &str, value: impl Serialize) -> Self {
        if let Value::Object(m) = &mut self.body {
            m.insert(
                key.into(),
                serde_json::to_value(value).unwrap_or(Value::Null),
            );
        }
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::Domain(_) => "domain",
            Error::MeasureUnavailable(_) => "measure_unavailable",
            Error::NotAnAtom(_) => "not_an_atom",
            Error::NotDoublyStochastic { .. } => "not_doubly_stochastic",
            Error::WeightsInvalid(_) => "weights_invalid",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::EmptySample => return Self::internal(e.to_string()),
            Error::StepUnderflow { .. } => return Self::internal(e.to_string()),
        };
        let f = Self::invalid(kind, e.to_string());
        match e {
            Error::NotDoublyStochastic { residual } => f.with("residual", residual),
            _ => f,
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::internal(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::invalid("parse", format!("{}: {e}", path.display())))
}

fn measure_failure(report: &MeasureReport) -> Failure {
    Failure::invalid(
        "invalid_measure",
        format!(
            "Pickands measure needs mass 1 and mean 1/2 (mass residual {}, mean residual {})",
            fmt17(report.mass_residual),
            fmt17(report.mean_residual)
        ),
    )
    .with("mass_residual", report.mass_residual)
    .with("mean_residual", report.mean_residual)
}

/// A measure file, or an `evc` spec whose measure is taken.
fn load_measure(path: &Path) -> Outcome<PickandsMeasure> {
    let mut doc = read_json(path)?;
    if doc.get("family").is_some() {
        doc = doc
            .get_mut("measure")
            .map(Value::take)
            .ok_or_else(|| Failure::invalid("parse", "spec has no `measure` field"))?;
    }
    serde_json::from_value::<PickandsMeasure>(doc)
        .map_err(|e| Failure::invalid("invalid_measure", format!("{}: {e}", path.display())))
}

/// A built-in name (`M`, `W`, `Pi`) or the path of a spec file.
fn load_spec(arg: &str) -> Outcome<CopulaSpec> {
    if let Some(s) = CopulaSpec::builtin(arg) {
        return Ok(s);
    }
    let doc = read_json(Path::new(arg))?;
    serde_json::from_value(doc).map_err(|e| Failure::invalid("parse", format!("{arg}: {e}")))
}

fn check_measures(spec: &CopulaSpec) -> Outcome<()> {
    match spec {
        CopulaSpec::Evc { measure } => {
            let r = measure.validate();
            if r.passed {
                Ok(())
            } else {
                Err(measure_failure(&r))
            }
        }
        CopulaSpec::Checkerboard { base, .. } => check_measures(base),
        CopulaSpec::Mix { parts } => parts.iter().try_for_each(|(_, s)| check_measures(s)),
        _ => Ok(()),
    }
}

fn build(spec: &CopulaSpec) -> Outcome<Copula> {
    check_measures(spec)?;
    Ok(spec.build()?)
}

fn load(arg: &str) -> Outcome<Copula> {
    build(&load_spec(arg)?)
}

fn unit_open(name: &str, v: f64) -> Outcome<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Failure::invalid(
            "domain",
            format!("--{name} must lie in (0,1), got {v}"),
        ))
    }
}

fn unit_closed(name: &str, v: f64) -> Outcome<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Failure::invalid(
            "domain",
            format!("--{name} must lie in [0,1], got {v}"),
        ))
    }
}

fn emit(text: String, output: Option<&Path>) -> Outcome<()> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn emit_json<T: Serialize + ?Sized>(value: &T, output: Option<&Path>) -> Outcome<()> {
    let text = to_json_string(value).map_err(|e| Failure::internal(e.to_string()))?;
    emit(text + "\n", output)
}

/// The spec echoed by `--dump-spec` for each command.
fn dump_target(cmd: &Command) -> Outcome<Value> {
    let canonical = |arg: &str| -> Outcome<Value> {
        let c = load(arg)?;
        serde_json::to_value(CopulaSpec::from(&c)).map_err(|e| Failure::internal(e.to_string()))
    };
    match cmd {
        Command::Pickands(PickandsCmd::Validate { measure })
        | Command::Pickands(PickandsCmd::ToFunction { measure, .. }) => {
            serde_json::to_value(load_measure(measure)?)
                .map_err(|e| Failure::internal(e.to_string()))
        }
        Command::Evc(
            EvcCmd::Eval { spec, .. }
            | EvcCmd::Sample { spec, .. }
            | EvcCmd::MassDecomp { spec }
            | EvcCmd::Support { spec, .. },
        )
        | Command::Approx(ApproxArgs { spec, .. })
        | Command::Diagnose(
            DiagnoseCmd::Derivative { spec, .. }
            | DiagnoseCmd::Scan { spec, .. }
            | DiagnoseCmd::Schwarz { spec, .. },
        ) => canonical(spec),
        Command::Metric(m) => Ok(Value::Array(vec![canonical(&m.a)?, canonical(&m.b)?])),
    }
}

fn run_pickands(cmd: PickandsCmd) -> Outcome<()> {
    match cmd {
        PickandsCmd::Validate { measure } => {
            let m = load_measure(&measure)?;
            let r = m.validate();
            if !r.passed {
                return Err(measure_failure(&r));
            }
            emit_json(&r, None)
        }
        PickandsCmd::ToFunction {
            measure,
            grid,
            output,
        } => {
            if grid < 2 {
                return Err(Failure::invalid("domain", "--grid must be at least 2"));
            }
            let m = load_measure(&measure)?;
            let r = m.validate();
            if !r.passed {
                return Err(measure_failure(&r));
            }
            let a = copulab::upsilon(&m)?;
            let mut out = String::from("t,A,DplusA,GA\n");
            for k in 0..grid {
                let t = k as f64 / (grid - 1) as f64;
                let row = [t, a.value(t), a.d_plus(t), a.g(t)].map(fmt17);
                out.push_str(&row.join(","));
                out.push('\n');
            }
            emit(out, output.as_deref())
        }
    }
}

fn run_evc(cmd: EvcCmd) -> Outcome<()> {
    match cmd {
        EvcCmd::Eval { spec, x, y } => {
            let c = load(&spec)?;
            let (x, y) = (unit_closed("x", x)?, unit_closed("y", y)?);
            emit_json(
                &json!({
                    "family": c.family().name(),
                    "x": x,
                    "y": y,
                    "cdf": c.cdf(x, y),
                    "kernel_cdf": c.kernel_cdf(x, y),
                    "kernel_jumps": c.kernel_jumps(x),
                }),
                None,
            )
        }
        EvcCmd::Sample {
            spec,
            n,
            seed,
            output,
        } => {
            let c = load(&spec)?;
            emit(sample(&c, n, seed).to_csv(), output.as_deref())
        }
        EvcCmd::MassDecomp { spec } => {
            let c = load(&spec)?;
            emit_json(&c.as_evc()?.component_masses(), None)
        }
        EvcCmd::Support { spec, x } => {
            let c = load(&spec)?;
            let e = c.as_evc()?;
            let (l, r) = e.endpoints();
            let mut doc = json!({ "L": l, "R": r });
            if let Some(x) = x {
                let x = unit_closed("x", x)?;
                let (lo, hi) = e.support_bounds(x);
                doc["x"] = json!(x);
                doc["lower"] = json!(lo);
                doc["upper"] = json!(hi);
            }
            emit_json(&doc, None)
        }
    }
}

fn run_metric(args: MetricArgs) -> Outcome<()> {
    let (a, b) = (load(&args.a)?, load(&args.b)?);
    if args.grid < 2 {
        return Err(Failure::invalid("domain", "--grid must be at least 2"));
    }
    let report = match args.metric.as_str() {
        "d_inf" => d_inf(&a, &b, args.grid),
        "D_p" => {
            let p = match args.p.as_str() {
                "inf" => f64::INFINITY,
                s => s.parse::<f64>().ok().filter(|p| *p >= 1.0).ok_or_else(|| {
                    Failure::invalid("domain", format!("-p must be >= 1 or inf, got {s}"))
                })?,
            };
            d_p(&a, &b, p, args.grid)
        }
        other => {
            return Err(Failure::invalid(
                "domain",
                format!("unknown metric `{other}`, expected d_inf or D_p"),
            ))
        }
    };
    emit_json(&report, None)
}

fn run_approx(args: ApproxArgs) -> Outcome<()> {
    let c = load(&args.spec)?;
    let base = load(&args.base)?;
    let cb = Copula::Checkerboard(Checkerboard::approximate(&c, args.size, base)?);
    let spec = CopulaSpec::from(&cb);
    match args.grid {
        Some(g) => {
            let report = d_inf(&cb, &c, g.max(2));
            emit_json(
                &json!({ "spec": spec, "d_inf": report }),
                args.output.as_deref(),
            )
        }
        None => emit_json(&spec, args.output.as_deref()),
    }
}

fn run_diagnose(cmd: DiagnoseCmd) -> Outcome<()> {
    match cmd {
        DiagnoseCmd::Derivative {
            spec,
            x,
            y,
            grid,
            csv,
            output,
        } => {
            let c = load(&spec)?;
            let x = unit_open("x", x)?;
            let ys: Vec<f64> = match y {
                Some(y) => vec![unit_closed("y", y)?],
                None => (1..=grid).map(|k| k as f64 / (grid + 1) as f64).collect(),
            };
            let probes = ys
                .iter()
                .map(|&y| partial_probe(&c, x, y))
                .collect::<Result<Vec<_>, _>>()?;
            if csv {
                let mut out = String::from("y,plus,minus,gap\n");
                for p in &probes {
                    let row = [
                        p.y,
                        p.plus.unwrap_or(f64::NAN),
                        p.minus.unwrap_or(f64::NAN),
                        p.gap().unwrap_or(f64::NAN),
                    ]
                    .map(fmt17);
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                emit(out, output.as_deref())
            } else {
                let rows: Vec<Value> = probes
                    .iter()
                    .map(|p| json!({ "x": p.x, "y": p.y, "steps": p.steps, "plus": p.plus, "minus": p.minus, "gap": p.gap() }))
                    .collect();
                match y {
                    Some(_) => emit_json(&rows[0], output.as_deref()),
                    None => emit_json(&rows, output.as_deref()),
                }
            }
        }
        DiagnoseCmd::Scan {
            spec,
            x,
            grid,
            threshold,
        } => {
            let c = load(&spec)?;
            let x = unit_open("x", x)?;
            if threshold.is_nan() || threshold <= 0.0 {
                return Err(Failure::invalid("domain", "--threshold must be positive"));
            }
            let found = nondiff_scan(&c, x, grid, threshold)?;
            emit_json(
                &json!({ "x": x, "grid_n": grid, "threshold": threshold, "points": found }),
                None,
            )
        }
        DiagnoseCmd::Schwarz { spec, grid, h } => {
            let c = load(&spec)?;
            if !(h > 0.0 && h < 0.5 / (grid + 1) as f64) {
                return Err(Failure::invalid(
                    "domain",
                    "--h must be positive and smaller than half the grid spacing",
                ));
            }
            emit_json(
                &json!({ "grid_n": grid, "h": h, "residual": schwarz_check(&c, grid, h) }),
                None,
            )
        }
    }
}

fn run(cli: Cli) -> Outcome<()> {
    if cli.dump_spec {
        return emit_json(&dump_target(&cli.command)?, None);
    }
    match cli.command {
        Command::Pickands(c) => run_pickands(c),
        Command::Evc(c) => run_evc(c),
        Command::Metric(a) => run_metric(a),
        Command::Approx(a) => run_approx(a),
        Command::Diagnose(c) => run_diagnose(c),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!(
                "{}",
                to_json_string(&f.body).unwrap_or_else(|_| f.body.to_string())
            );
            ExitCode::from(f.code)
        }
    }
}
