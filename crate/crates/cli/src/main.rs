#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Command-line frontend: fractional operators on sampled functions,
//! order scans, root finding and worked-example reproduction, with CSV and
//! JSON output. All runs are deterministic; identical invocations produce
//! byte-identical files.

use clap::{Parser, Subcommand, ValueEnum};
use fracvar::{
    action, alpha_scan, dalpha_at_one, dalpha_at_zero, dalpha_rl, derivative, digamma,
    el_residual_y, find_alpha_root, rl_integral, rl_left, run_example, scenario_problem,
    ExampleScenario, FractionalOrder, GridFunction, ScenarioId,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fracvar", version, about = "Fractional variational calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RootCond {
    /// psi(1-alpha) + 1 = 0 (the displayed order condition)
    Ex4bDisplayed,
    /// psi(alpha-1) - 1 = 0 (the reduced equation)
    Ex4bReduced,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepOp {
    FracDeriv,
    FracInt,
    Sensitivity,
}

#[derive(Subcommand)]
enum Command {
    /// Left Riemann-Liouville derivative of a sampled function (CSV t,y)
    FracDeriv {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Left fractional integral of a sampled function
    FracInt {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order-sensitivity field of a sampled function (limit forms at 0 and 1)
    Sensitivity {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Action of a scenario's stationary pair at one order
    Action {
        #[arg(long)]
        id: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 0.45)]
        alpha0: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euler-Lagrange residual field of a scenario's pair at one order
    ElResidual {
        #[arg(long)]
        id: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 0.45)]
        alpha0: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the action, residual norm and order condition over a grid
    AlphaScan {
        #[arg(long)]
        id: String,
        /// start:stop:step
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 0.45)]
        alpha0: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bisection root of a named order condition
    Root {
        #[arg(long, value_enum)]
        cond: RootCond,
        /// lo:hi bracket (defaults per condition)
        #[arg(long)]
        bracket: Option<String>,
        /// largest acceptable |condition| at the root
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a worked example and emit its report
    Example {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 0.45)]
        alpha0: f64,
        /// beta weights for the weighted-action remark
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an operator across an order grid on a sampled function
    Sweep {
        #[arg(long, value_enum)]
        op: SweepOp,
        /// start:stop:step
        #[arg(long)]
        grid: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl From<fracvar::Error> for CliError {
    fn from(e: fracvar::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// 17 significant digits; round-trips f64 exactly.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Usage(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 16 {
        return Err(CliError::Usage(format!("n must be at least 16, got {n}")));
    }
    Ok(())
}

fn parse_id(id: &str) -> Result<ScenarioId, CliError> {
    ScenarioId::parse(id).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown scenario id '{id}' (expected ex1, ex1reg, ex2, ex3, ex4a, ex4b or beta)"
        ))
    })
}

fn parse_grid(grid: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("grid must be start:stop:step, got '{grid}'")));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums =
        nums.map_err(|_| CliError::Usage(format!("grid values must be numeric: '{grid}'")))?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || stop < start {
        return Err(CliError::Usage("grid needs stop >= start and step > 0".to_string()));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

/// Read a two-column CSV of (t, y) samples on a uniform grid from t = 0.
fn read_grid_csv(path: &PathBuf) -> Result<GridFunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut ts = Vec::new();
    let mut ys = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let (a, b) = (cols.next().unwrap_or(""), cols.next().unwrap_or(""));
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(t), Ok(y)) => {
                ts.push(t);
                ys.push(y);
            }
            _ if lineno == 0 => continue, // header row
            _ => {
                return Err(CliError::Usage(format!(
                    "{}:{}: expected two numeric columns",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    if ts.len() < 17 {
        return Err(CliError::Usage("input needs at least 17 samples (n >= 16)".to_string()));
    }
    let n = ts.len() - 1;
    let b = ts[n];
    if !(b > 0.0) || ts[0].abs() > 1e-12 * b {
        return Err(CliError::Usage(
            "input grid must start at t = 0 with a positive end".to_string(),
        ));
    }
    let h = b / n as f64;
    for (i, t) in ts.iter().enumerate() {
        if (t - i as f64 * h).abs() > 1e-9 * b {
            return Err(CliError::Usage(format!(
                "input grid is not uniform at row {} (t = {t})",
                i + 1
            )));
        }
    }
    GridFunction::from_values(b, ys).map_err(|e| CliError::Usage(e.to_string()))
}

fn field_csv(header: &str, g: &GridFunction) -> String {
    let mut s = String::with_capacity(48 * (g.n_intervals() + 2));
    s.push_str(header);
    s.push('\n');
    for i in 0..=g.n_intervals() {
        let _ = writeln!(s, "{},{}", fmt_f(g.node(i)), fmt_f(g.value(i)));
    }
    s
}

fn scenario_with(id: ScenarioId, c: f64, d: f64, alpha0: f64) -> ExampleScenario {
    let mut s = ExampleScenario::new(id);
    s.c = c;
    s.coef_d = d;
    s.alpha0 = alpha0;
    s
}

fn order_for(alpha: f64, scenario: &ExampleScenario) -> Result<FractionalOrder, CliError> {
    let cap = match scenario.id {
        ScenarioId::Ex3PrimaryConstraint | ScenarioId::BetaRemark => scenario.alpha0,
        _ => 1.0,
    };
    FractionalOrder::with_max(alpha, cap)
        .map_err(|e| CliError::Usage(format!("order outside the scenario's domain: {e}")))
}

fn sensitivity_field(y: &GridFunction, alpha: f64) -> Result<GridFunction, CliError> {
    Ok(if alpha == 0.0 {
        dalpha_at_zero(y, y.value(0))?.field
    } else if alpha == 1.0 {
        let yp = derivative(y)?;
        dalpha_at_one(y, y.value(0), yp.value(0))?.field
    } else {
        dalpha_rl(y, &FractionalOrder::new(alpha)?)?.field
    })
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::FracDeriv { alpha, input, out } => {
            check_alpha(alpha)?;
            let y = read_grid_csv(&input)?;
            let d = if alpha == 1.0 {
                derivative(&y)?
            } else {
                rl_left(&y, &FractionalOrder::new(alpha)?, y.value(0))?
            };
            emit(&out, &field_csv("t,d_alpha_y", &d))
        }
        Command::FracInt { alpha, input, out } => {
            check_alpha(alpha)?;
            if alpha == 0.0 {
                return Err(CliError::Usage("frac-int needs alpha in (0, 1]".to_string()));
            }
            let y = read_grid_csv(&input)?;
            let v = rl_integral(&y, &FractionalOrder::new(alpha)?)?;
            emit(&out, &field_csv("t,i_alpha_y", &v))
        }
        Command::Sensitivity { alpha, input, out } => {
            check_alpha(alpha)?;
            let y = read_grid_csv(&input)?;
            let field = sensitivity_field(&y, alpha)?;
            emit(&out, &field_csv("t,g_alpha", &field))
        }
        Command::Action { id, alpha, c, d, alpha0, n, out } => {
            check_alpha(alpha)?;
            check_n(n)?;
            let scenario = scenario_with(parse_id(&id)?, c, d, alpha0);
            let problem = scenario_problem(&scenario, n)?;
            let order = order_for(alpha, &scenario)?;
            let y = (problem.family)(alpha)?;
            let value = action(&y, &order, &problem.spec)?;
            emit(&out, &format!("alpha,action\n{},{}\n", fmt_f(alpha), fmt_f(value)))
        }
        Command::ElResidual { id, alpha, c, d, alpha0, n, out } => {
            check_alpha(alpha)?;
            check_n(n)?;
            let scenario = scenario_with(parse_id(&id)?, c, d, alpha0);
            let problem = scenario_problem(&scenario, n)?;
            let order = order_for(alpha, &scenario)?;
            let y = (problem.family)(alpha)?;
            let r = el_residual_y(&y, &order, &problem.spec)?;
            emit(&out, &field_csv("t,el_residual", &r))
        }
        Command::AlphaScan { id, grid, c, d, alpha0, n, out } => {
            check_n(n)?;
            let alphas = parse_grid(&grid)?;
            if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
                return Err(CliError::Usage("grid values must lie in [0, 1]".to_string()));
            }
            let scenario = scenario_with(parse_id(&id)?, c, d, alpha0);
            let problem = scenario_problem(&scenario, n)?;
            let scan = alpha_scan(|a| (problem.family)(a), &problem.spec, &alphas)?;
            let mut s = String::from("alpha,action,el_residual_norm,alpha_condition\n");
            for row in &scan.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt_f(row.alpha),
                    fmt_f(row.action),
                    fmt_f(row.el_residual_norm),
                    fmt_f(row.alpha_condition)
                );
            }
            emit(&out, &s)
        }
        Command::Root { cond, bracket, tol, out } => {
            if !(tol > 0.0) {
                return Err(CliError::Usage("tol must be positive".to_string()));
            }
            let (f, default_bracket): (fn(f64) -> f64, (f64, f64)) = match cond {
                RootCond::Ex4bDisplayed => (|a| digamma(1.0 - a).unwrap() + 1.0, (0.01, 0.9)),
                RootCond::Ex4bReduced => (|a| digamma(a - 1.0).unwrap() - 1.0, (0.02, 0.98)),
            };
            let (lo, hi) = match bracket {
                Some(spec) => {
                    let parts: Vec<&str> = spec.split(':').collect();
                    let parsed = if parts.len() == 2 {
                        parts[0].parse::<f64>().ok().zip(parts[1].parse::<f64>().ok())
                    } else {
                        None
                    };
                    match parsed {
                        Some((lo, hi)) if hi > lo => (lo, hi),
                        _ => {
                            return Err(CliError::Usage(
                                "bracket must be numeric lo:hi with hi > lo".to_string(),
                            ))
                        }
                    }
                }
                None => default_bracket,
            };
            let root = find_alpha_root(f, lo, hi)?;
            if root.condition_value.abs() > tol {
                return Err(CliError::Numeric(format!(
                    "|condition| = {} exceeds tol {tol} at the located root",
                    root.condition_value.abs()
                )));
            }
            emit(
                &out,
                &format!(
                    "alpha_star,condition_value\n{},{}\n",
                    fmt_f(root.alpha_star),
                    fmt_f(root.condition_value)
                ),
            )
        }
        Command::Example { id, c, d, alpha0, beta, n, format, out } => {
            check_n(n)?;
            let mut scenario = scenario_with(parse_id(&id)?, c, d, alpha0);
            if let Some(betas) = beta {
                if betas.iter().any(|b| !(*b > 0.0)) {
                    return Err(CliError::Usage("beta values must be positive".to_string()));
                }
                scenario.beta_values = betas;
            }
            let report = run_example(&scenario, n)?;
            match format {
                Format::Json => {
                    let json = serde_json::to_string_pretty(&report)
                        .map_err(|e| CliError::Io(e.to_string()))?;
                    emit(&out, &format!("{json}\n"))
                }
                Format::Csv => {
                    let mut s =
                        format!("{},action,el_residual_norm,alpha_condition\n", report.row_label);
                    for row in &report.rows {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            fmt_f(row.alpha),
                            fmt_f(row.action),
                            fmt_f(row.el_residual_norm),
                            fmt_f(row.alpha_condition)
                        );
                    }
                    emit(&out, &s)
                }
            }
        }
        Command::Sweep { op, grid, input, out } => {
            let alphas = parse_grid(&grid)?;
            if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
                return Err(CliError::Usage("grid values must lie in [0, 1]".to_string()));
            }
            let y = read_grid_csv(&input)?;
            let mut s = String::from("alpha,t,value\n");
            for &a in &alphas {
                let field = match op {
                    SweepOp::FracDeriv => {
                        if a == 1.0 {
                            derivative(&y)?
                        } else {
                            rl_left(&y, &FractionalOrder::new(a)?, y.value(0))?
                        }
                    }
                    SweepOp::FracInt => {
                        if a == 0.0 {
                            return Err(CliError::Usage(
                                "frac-int sweep needs orders in (0, 1]".to_string(),
                            ));
                        }
                        rl_integral(&y, &FractionalOrder::new(a)?)?
                    }
                    SweepOp::Sensitivity => sensitivity_field(&y, a)?,
                };
                for i in 0..=field.n_intervals() {
                    let _ = writeln!(
                        s,
                        "{},{},{}",
                        fmt_f(a),
                        fmt_f(field.node(i)),
                        fmt_f(field.value(i))
                    );
                }
            }
            emit(&out, &s)
        }
    }
}
