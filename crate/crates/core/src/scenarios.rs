//! Reproducible worked scenarios, each emitting a structured report with
//! per-order table rows and claim records carrying the asserted value, the
//! measured value, and a pass/fail/contested flag. Contested flags are
//! reserved for the two documented inconsistencies (the inertial example's
//! kernel family and the log example's digamma argument).

use crate::error::{Error, Result};
use crate::fractional::{power_law_deriv, rl_left, rl_right, FractionalOrder, PowerPath};
use crate::grid::{integrate, GridFunction, PowerTail, QuadratureRule};
use crate::solvers::{
    alpha_scan, find_alpha_root, joint_minimize, solve_rl_equation, Example2Series, RitzProblem,
    ScanRow,
};
use crate::special::{digamma, gamma_fn};
use crate::variational::{
    action, alpha_condition, beta_action, di_dalpha, el_residual_y, Endpoint, LagrangianSpec,
    INTERIOR_SKIP,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScenarioId {
    Ex1Inertial,
    Ex1Regularized,
    Ex2ConstantForce,
    Ex3PrimaryConstraint,
    Ex4aQuadratic,
    Ex4bLog,
    BetaRemark,
}

impl ScenarioId {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ex1" => Some(Self::Ex1Inertial),
            "ex1reg" => Some(Self::Ex1Regularized),
            "ex2" => Some(Self::Ex2ConstantForce),
            "ex3" => Some(Self::Ex3PrimaryConstraint),
            "ex4a" => Some(Self::Ex4aQuadratic),
            "ex4b" => Some(Self::Ex4bLog),
            "beta" => Some(Self::BetaRemark),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ex1Inertial => "ex1",
            Self::Ex1Regularized => "ex1reg",
            Self::Ex2ConstantForce => "ex2",
            Self::Ex3PrimaryConstraint => "ex3",
            Self::Ex4aQuadratic => "ex4a",
            Self::Ex4bLog => "ex4b",
            Self::BetaRemark => "beta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimStatus {
    Pass,
    Fail,
    Contested,
    Info,
}

/// One checked claim: the assertion, the measured value, the expected value
/// when there is one, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub measured: f64,
    pub expected: Option<f64>,
    pub status: ClaimStatus,
}

impl ClaimRecord {
    fn checked(claim: &str, measured: f64, expected: f64, tol: f64) -> Self {
        let status = if (measured - expected).abs() <= tol {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        };
        ClaimRecord { claim: claim.to_string(), measured, expected: Some(expected), status }
    }

    fn flag(claim: &str, measured: f64, status: ClaimStatus) -> Self {
        ClaimRecord { claim: claim.to_string(), measured, expected: None, status }
    }
}

/// Scenario parameters; `new` installs the defaults (c = d = 1,
/// alpha0 = 0.45, beta in {0.75, 1, 1.5}, unit interval).
#[derive(Debug, Clone)]
pub struct ExampleScenario {
    pub id: ScenarioId,
    pub c: f64,
    pub coef_d: f64,
    pub alpha0: f64,
    pub beta_values: Vec<f64>,
}

impl ExampleScenario {
    pub fn new(id: ScenarioId) -> Self {
        ExampleScenario { id, c: 1.0, coef_d: 1.0, alpha0: 0.45, beta_values: vec![0.75, 1.0, 1.5] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub id: ScenarioId,
    /// What the `alpha` column of `rows` holds ("alpha", or "beta" for the
    /// weighted-action remark).
    pub row_label: &'static str,
    pub rows: Vec<ScanRow>,
    pub claims: Vec<ClaimRecord>,
    pub alpha_star: Option<f64>,
    pub diagnostics: Vec<String>,
}

impl ScenarioReport {
    pub fn has_failures(&self) -> bool {
        self.claims.iter().any(|c| c.status == ClaimStatus::Fail)
    }
}

/// A scenario's Lagrangian together with its per-order stationary path,
/// for driving the generic operators from the command line.
pub struct ScenarioProblem {
    pub spec: LagrangianSpec,
    pub family: Box<dyn Fn(f64) -> Result<GridFunction> + Send + Sync>,
}

/// The (Lagrangian, stationary family) pair behind a scenario id; the
/// regularized and weighted variants have no per-order family.
pub fn scenario_problem(scenario: &ExampleScenario, n: usize) -> Result<ScenarioProblem> {
    let c = scenario.c;
    let coef_d = scenario.coef_d;
    let alpha0 = scenario.alpha0;
    match scenario.id {
        ScenarioId::Ex1Inertial | ScenarioId::Ex1Regularized => Ok(ScenarioProblem {
            spec: inertial_lagrangian(),
            family: Box::new(move |a| PowerPath::from_left(1.0, 1.0 - a)?.sample(1.0, n)),
        }),
        ScenarioId::Ex2ConstantForce => Ok(ScenarioProblem {
            spec: constant_force_lagrangian(c),
            family: Box::new(move |a| ex2_stationary_path(c, a, n)),
        }),
        ScenarioId::Ex3PrimaryConstraint | ScenarioId::BetaRemark => {
            if !(alpha0 < 0.5) {
                return Err(Error::ValidityRegion("the constraint example needs alpha0 < 1/2"));
            }
            Ok(ScenarioProblem {
                spec: primary_constraint_lagrangian(c, alpha0),
                family: Box::new(move |a| constraint_path(c, a, n)),
            })
        }
        ScenarioId::Ex4aQuadratic => Ok(ScenarioProblem {
            spec: quadratic_force_lagrangian(c, coef_d),
            family: Box::new(move |a| {
                PowerPath::from_right(-c / (coef_d * gamma_fn(1.0 - a)?), -a)?.sample(1.0, n)
            }),
        }),
        ScenarioId::Ex4bLog => Ok(ScenarioProblem {
            spec: log_force_lagrangian(c),
            family: Box::new(move |a| {
                PowerPath::from_right(-gamma_fn(1.0 - a)? / c, a)?.sample(1.0, n)
            }),
        }),
    }
}

pub fn run_example(scenario: &ExampleScenario, n: usize) -> Result<ScenarioReport> {
    if n < 16 {
        return Err(Error::GridTooCoarse { n, min: 16 });
    }
    match scenario.id {
        ScenarioId::Ex1Inertial => ex1_inertial(n),
        ScenarioId::Ex1Regularized => ex1_regularized(n),
        ScenarioId::Ex2ConstantForce => ex2_constant_force(scenario.c, n),
        ScenarioId::Ex3PrimaryConstraint => ex3_primary_constraint(scenario.c, scenario.alpha0, n),
        ScenarioId::Ex4aQuadratic => ex4a_quadratic(scenario.c, scenario.coef_d, n),
        ScenarioId::Ex4bLog => ex4b_log(scenario.c, n),
        ScenarioId::BetaRemark => beta_remark(scenario.c, &scenario.beta_values, n),
    }
}

/// L = (D^a y)^2 on paths with y(0) = 0, y(1) = 1.
fn inertial_lagrangian() -> LagrangianSpec {
    LagrangianSpec::new(
        |_t, _y, d, _a| d * d,
        |_t, _y, _d, _a| 0.0,
        |_t, _y, d, _a| 2.0 * d,
        |_t, _y, _d, _a| 0.0,
    )
    .with_boundary(Endpoint::Start, 0.0)
    .with_boundary(Endpoint::End, 1.0)
}

fn ex1_inertial(n: usize) -> Result<ScenarioReport> {
    let spec = inertial_lagrangian();
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    let mut diagnostics = Vec::new();
    let mut worst_resid = 0.0_f64;
    let mut worst_cond = 0.0_f64;

    for k in 1..=7 {
        let a = 0.1 * k as f64;
        let order = FractionalOrder::new(a)?;
        let path = PowerPath::from_left(1.0, 1.0 - a)?;
        let y = path.sample(1.0, n)?;
        // action of the candidate via the exact derivative power, squared
        let d_exact = power_law_deriv(&path, &order)?;
        let sq = PowerTail::exact_power(d_exact.coeff * d_exact.coeff, 2.0 * d_exact.exponent);
        let act = match sq {
            Ok(tail) => {
                let f = GridFunction::sample(1.0, n, |t| {
                    let v = d_exact.eval(t, 1.0);
                    v * v
                })?
                .with_start_tail(tail);
                integrate(&f, &QuadratureRule::Trapezoid)?
            }
            Err(_) => f64::INFINITY,
        };
        let resid = el_residual_y(&y, &order, &spec)?.sup_norm_interior(INTERIOR_SKIP);
        let cond = alpha_condition(&y, &order, &spec)?;
        worst_resid = worst_resid.max(resid);
        worst_cond = worst_cond.max(cond.abs());
        rows.push(ScanRow { alpha: a, action: act, el_residual_norm: resid, alpha_condition: cond });
    }
    claims.push(ClaimRecord::flag(
        "asserted: t^{1-a} solves the derivative-kernel equation (measured EL residual sup)",
        worst_resid,
        ClaimStatus::Contested,
    ));
    claims.push(ClaimRecord::flag(
        "asserted: order condition automatically satisfied on t^{1-a} (measured |condition| sup)",
        worst_cond,
        ClaimStatus::Contested,
    ));
    // the competing kernel family t^{a-1}: annihilated exactly by the
    // power-law formula, so action, residual and condition all vanish
    let mut kernel_zero = 0.0_f64;
    for k in 1..=7 {
        let a = 0.1 * k as f64;
        let d = power_law_deriv(&PowerPath::from_left(1.0, a - 1.0)?, &FractionalOrder::new(a)?)?;
        kernel_zero = kernel_zero.max(d.coeff.abs());
    }
    claims.push(ClaimRecord::checked(
        "power formula: derivative of t^{a-1} is the zero path",
        kernel_zero,
        0.0,
        1e-15,
    ));
    diagnostics.push(
        "t^{a-1} annihilates the derivative but violates y(0) = 0; t^{1-a} satisfies the \
         boundary conditions but leaves a nonzero derivative field"
            .to_string(),
    );
    Ok(ScenarioReport {
        id: ScenarioId::Ex1Inertial,
        row_label: "alpha",
        rows,
        claims,
        alpha_star: None,
        diagnostics,
    })
}

fn ex1_regularized(n: usize) -> Result<ScenarioReport> {
    let alpha0 = 0.3;
    let spec = LagrangianSpec::new(
        move |_t, _y, d, a| d * d + (a - alpha0) * (a - alpha0),
        |_t, _y, _d, _a| 0.0,
        |_t, _y, d, _a| 2.0 * d,
        move |_t, _y, _d, a| 2.0 * (a - alpha0),
    )
    .with_boundary(Endpoint::Start, 0.0)
    .with_boundary(Endpoint::End, 1.0);

    let offset = GridFunction::sample(1.0, n, |t| t)?;
    let basis = vec![GridFunction::sample(1.0, n, |t| t.powf(0.7) - t)?];
    let alpha_grid: Vec<f64> = (0..=40).map(|k| k as f64 / 40.0).collect();
    let problem = RitzProblem { basis, offset, bounds: vec![(-6.0, 6.0)], alpha_grid };
    let report = joint_minimize(&problem, &spec)?;
    let a_star = report.alpha_star.unwrap_or(f64::NAN);

    let mut claims = Vec::new();
    claims.push(ClaimRecord::checked(
        "asserted: regularized problem has its minimizer at alpha = 0.3",
        a_star,
        alpha0,
        0.02,
    ));
    // the asserted minimizer family's value, for comparison
    let order0 = FractionalOrder::new(alpha0)?;
    let asserted = action(
        &PowerPath::from_left(1.0, 1.0 - alpha0)?.sample(1.0, n)?,
        &order0,
        &spec,
    )?;
    claims.push(ClaimRecord::flag(
        "action at the asserted minimizing pair (t^{0.7}, 0.3)",
        asserted,
        ClaimStatus::Info,
    ));
    claims.push(ClaimRecord::flag(
        "minimized action found by the joint search",
        report.action_value,
        ClaimStatus::Info,
    ));
    let mut diagnostics = report.diagnostics.clone();
    diagnostics.push(format!(
        "measured residuals at the returned pair: el {} / condition {}",
        report.el_residual_norm, report.alpha_condition_value
    ));
    Ok(ScenarioReport {
        id: ScenarioId::Ex1Regularized,
        row_label: "alpha",
        rows: vec![ScanRow {
            alpha: a_star,
            action: report.action_value,
            el_residual_norm: report.el_residual_norm,
            alpha_condition: report.alpha_condition_value,
        }],
        claims,
        alpha_star: Some(a_star),
        diagnostics,
    })
}

/// L = d^2/2 - c y, normalized so that the constant-force equation
/// tD1^a (D^a y) = c is exactly its Euler-Lagrange equation.
fn constant_force_lagrangian(c: f64) -> LagrangianSpec {
    LagrangianSpec::new(
        move |_t, y, d, _a| 0.5 * d * d - c * y,
        move |_t, _y, _d, _a| -c,
        |_t, _y, d, _a| d,
        |_t, _y, _d, _a| 0.0,
    )
    .with_boundary(Endpoint::Start, 0.0)
}

fn ex2_stationary_path(c: f64, a: f64, n: usize) -> Result<GridFunction> {
    let order = FractionalOrder::new(a)?;
    let z = PowerPath::from_right(c / gamma_fn(1.0 + a)?, a)?.sample(1.0, n)?;
    solve_rl_equation(&z, &order)
}

fn ex2_constant_force(c: f64, n: usize) -> Result<ScenarioReport> {
    let spec = constant_force_lagrangian(c);
    let mut claims = Vec::new();
    let mut diagnostics = Vec::new();

    // series vs quadrature cross-construction
    let mut worst_cross = 0.0_f64;
    for a in [0.25, 0.5, 0.75] {
        let order = FractionalOrder::new(a)?;
        let y = ex2_stationary_path(c, a, n)?;
        let series = Example2Series::new(c, &order)?;
        let mut sup = 0.0_f64;
        for i in 0..=n {
            let t = y.node(i);
            if t <= 0.95 {
                sup = sup.max((y.value(i) - series.eval(t, 1e-6)?.value).abs());
            }
        }
        worst_cross = worst_cross.max(sup);
    }
    claims.push(ClaimRecord::checked(
        "series and quadrature constructions agree on [0, 0.95]",
        worst_cross,
        0.0,
        1e-3,
    ));

    // rows + the equation-of-motion residual per order
    let grid: Vec<f64> = (1..=9).map(|k| 0.1 * k as f64).collect();
    let scan = alpha_scan(|a| ex2_stationary_path(c, a, n), &spec, &grid)?;
    let mut worst_eom = 0.0_f64;
    for &a in &grid {
        let order = FractionalOrder::new(a)?;
        let y = ex2_stationary_path(c, a, n)?;
        let d = rl_left(&y, &order, 0.0)?;
        let right = rl_right(&d, &order, d.value(n))?;
        let mut sup = 0.0_f64;
        for i in 0..=n {
            let t = y.node(i);
            if (0.05..=0.95).contains(&t) && right.value(i).is_finite() {
                sup = sup.max((right.value(i) - c).abs());
            }
        }
        worst_eom = worst_eom.max(sup);
    }
    claims.push(ClaimRecord::checked(
        "constant-force equation residual ||tD1^a D^a y - c|| on the interior",
        worst_eom,
        0.0,
        5e-2,
    ));
    let increasing = scan.strictly_increasing();
    claims.push(ClaimRecord::flag(
        "asserted: I[alpha] is strictly increasing over the sampled grid",
        if increasing { 1.0 } else { 0.0 },
        if increasing { ClaimStatus::Pass } else { ClaimStatus::Fail },
    ));

    // positivity of the total derivative along the family; skipped (not
    // failed) when the grid is too coarse to certify stationarity
    let mut min_slope = f64::INFINITY;
    let mut gated = None;
    for &a in &[0.15, 0.5, 0.85] {
        let order = FractionalOrder::new(a)?;
        match di_dalpha(|al| ex2_stationary_path(c, al, n), &order, &spec) {
            Ok(slope) => min_slope = min_slope.min(slope),
            Err(Error::StationarityViolation { residual, .. }) => {
                gated = Some(residual);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    match gated {
        None => claims.push(ClaimRecord::flag(
            "asserted: dI/dalpha > 0 along the stationary family (min sampled slope)",
            min_slope,
            if min_slope > 0.0 { ClaimStatus::Pass } else { ClaimStatus::Fail },
        )),
        Some(residual) => claims.push(ClaimRecord::flag(
            "dI/dalpha check skipped: residual too large to certify stationarity at this n",
            residual,
            ClaimStatus::Info,
        )),
    }
    diagnostics.push(
        "stationary field normalized as z = c(1-t)^a/Gamma(1+a); the Lagrangian carries d^2/2 \
         so the printed equation of motion is exactly its stationarity condition"
            .to_string(),
    );
    Ok(ScenarioReport {
        id: ScenarioId::Ex2ConstantForce,
        row_label: "alpha",
        rows: scan.rows,
        claims,
        alpha_star: None,
        diagnostics,
    })
}

/// L = Gamma(1-a) d - (c/2) y^2 with y(0) = 1/c (primary-constraint type).
fn primary_constraint_lagrangian(c: f64, alpha0: f64) -> LagrangianSpec {
    LagrangianSpec::new(
        move |_t, y, d, a| gamma_fn(1.0 - a).unwrap() * d - 0.5 * c * y * y,
        move |_t, y, _d, _a| -c * y,
        move |_t, _y, _d, a| gamma_fn(1.0 - a).unwrap(),
        move |_t, _y, d, a| -gamma_fn(1.0 - a).unwrap() * digamma(1.0 - a).unwrap() * d,
    )
    .with_boundary(Endpoint::Start, 1.0 / c)
    .with_alpha_max(alpha0)
    .with_linear_d(
        |a| gamma_fn(1.0 - a).unwrap(),
        |a| -gamma_fn(1.0 - a).unwrap() * digamma(1.0 - a).unwrap(),
    )
}

fn constraint_path(c: f64, a: f64, n: usize) -> Result<GridFunction> {
    PowerPath::from_right(1.0 / c, -a)?.sample(1.0, n)
}

fn ex3_primary_constraint(c: f64, alpha0: f64, n: usize) -> Result<ScenarioReport> {
    if !(alpha0 < 0.5) {
        return Err(Error::ValidityRegion("the constraint example needs alpha0 < 1/2"));
    }
    let spec = primary_constraint_lagrangian(c, alpha0);
    let grid: Vec<f64> = [0.0, 0.1, 0.2, 0.3, 0.4]
        .iter()
        .copied()
        .filter(|a| *a <= alpha0)
        .collect();
    let scan = alpha_scan(|a| constraint_path(c, a, n), &spec, &grid)?;

    let mut claims = Vec::new();
    let closed = |a: f64| 1.0 / (2.0 * c * (1.0 - 2.0 * a));
    let mut worst_rel = 0.0_f64;
    for row in &scan.rows {
        let want = closed(row.alpha);
        worst_rel = worst_rel.max(((row.action - want) / want).abs());
    }
    claims.push(ClaimRecord::checked(
        "action along y* matches 1/(2c(1-2a)) (worst relative deviation)",
        worst_rel,
        0.0,
        0.01,
    ));
    claims.push(ClaimRecord::checked(
        "asserted: minimal action value 1/(2c) at alpha = 0",
        scan.rows[0].action,
        closed(0.0),
        1e-10,
    ));
    let increasing = scan.strictly_increasing();
    claims.push(ClaimRecord::flag(
        "asserted: action strictly increasing with argmin at 0 and argmax at the top order",
        if increasing && scan.argmin == 0 && scan.argmax == grid.len() - 1 { 1.0 } else { 0.0 },
        if increasing && scan.argmin == 0 && scan.argmax == grid.len() - 1 {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        },
    ));

    // total-derivative identity against the finite difference of the action
    let mut worst_prop2 = 0.0_f64;
    for &a in &[0.1, 0.2, 0.3] {
        let order = FractionalOrder::with_max(a, alpha0)?;
        let lhs = di_dalpha(|al| constraint_path(c, al, n), &order, &spec)?;
        let eps = 1e-3;
        let act = |al: f64| -> Result<f64> {
            action(&constraint_path(c, al, n)?, &FractionalOrder::with_max(al, alpha0)?, &spec)
        };
        let fd = (act(a + eps)? - act(a - eps)?) / (2.0 * eps);
        worst_prop2 = worst_prop2.max(((lhs - fd) / fd).abs());
    }
    claims.push(ClaimRecord::checked(
        "dI/dalpha equals the finite difference of I[alpha] (worst relative gap)",
        worst_prop2,
        0.0,
        0.02,
    ));

    Ok(ScenarioReport {
        id: ScenarioId::Ex3PrimaryConstraint,
        row_label: "alpha",
        rows: scan.rows,
        claims,
        alpha_star: None,
        diagnostics: vec![format!("validity region alpha0 = {alpha0} < 1/2")],
    })
}

/// L = c d + coef_d y^2/2 with no admissible stationary pair.
fn quadratic_force_lagrangian(c: f64, coef_d: f64) -> LagrangianSpec {
    LagrangianSpec::new(
        move |_t, y, d, _a| c * d + 0.5 * coef_d * y * y,
        move |_t, y, _d, _a| coef_d * y,
        move |_t, _y, _d, _a| c,
        |_t, _y, _d, _a| 0.0,
    )
    .with_linear_d(move |_a| c, |_a| 0.0)
}

fn ex4a_quadratic(c: f64, coef_d: f64, n: usize) -> Result<ScenarioReport> {
    let spec = quadratic_force_lagrangian(c, coef_d);
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    let gamma2 = |a: f64| {
        let g = gamma_fn(1.0 - a).unwrap();
        g * g
    };
    // the displayed condition int (psi(1-a) - ln(1-tau)) / (G^2 (1-tau)^{2a}),
    // by product quadrature on a unit smooth factor
    let displayed = |a: f64| -> Result<f64> {
        let one = GridFunction::constant(1.0, n, 1.0)?;
        let i_abel = integrate(&one, &QuadratureRule::ProductAbel { exponent: 2.0 * a })?;
        let i_log = integrate(&one, &QuadratureRule::ProductAbelLog { exponent: 2.0 * a })?;
        Ok((digamma(1.0 - a)? * i_abel + i_log) / gamma2(a))
    };
    let closed = |a: f64| {
        let s = 1.0 - 2.0 * a;
        (digamma(1.0 - a).unwrap() * s + 1.0) / (s * s * gamma2(a))
    };
    let mut min_cond = f64::INFINITY;
    let mut worst_gap = 0.0_f64;
    for k in 1..=20 {
        let a = 0.02 + (0.48 - 0.02) * k as f64 / 21.0;
        let cond = displayed(a)?;
        min_cond = min_cond.min(cond);
        worst_gap = worst_gap.max((cond - closed(a)).abs());
        let order = FractionalOrder::new(a)?;
        let y = PowerPath::from_right(-c / (coef_d * gamma_fn(1.0 - a)?), -a)?.sample(1.0, n)?;
        let act = action(&y, &order, &spec)?;
        let resid = el_residual_y(&y, &order, &spec)?.sup_norm_interior(INTERIOR_SKIP);
        let full_cond = alpha_condition(&y, &order, &spec)?;
        rows.push(ScanRow {
            alpha: a,
            action: act,
            el_residual_norm: resid,
            alpha_condition: full_cond,
        });
    }
    claims.push(ClaimRecord::flag(
        "asserted: the order condition has no root (min sampled value, strictly positive)",
        min_cond,
        if min_cond > 0.0 { ClaimStatus::Pass } else { ClaimStatus::Fail },
    ));
    claims.push(ClaimRecord::checked(
        "quadrature matches the closed form psi(1-a)(1-2a)+1 reduction",
        worst_gap,
        0.0,
        1e-10,
    ));
    // beyond a = 1/2 the positive tail is no longer integrable
    rows.push(ScanRow {
        alpha: 0.5,
        action: f64::INFINITY,
        el_residual_norm: f64::NAN,
        alpha_condition: f64::INFINITY,
    });
    claims.push(ClaimRecord::flag(
        "condition diverges to +inf for a >= 1/2 (reported, not an error)",
        f64::INFINITY,
        ClaimStatus::Info,
    ));
    Ok(ScenarioReport {
        id: ScenarioId::Ex4aQuadratic,
        row_label: "alpha",
        rows,
        claims,
        alpha_star: None,
        diagnostics: vec![
            "the formal stationary path has y(0) != 0 and so leaves the admissible set; rows \
             report its measured fields anyway"
                .to_string(),
        ],
    })
}

/// L = c d + ln|y| with y(1) = 0.
fn log_force_lagrangian(c: f64) -> LagrangianSpec {
    LagrangianSpec::new(
        move |_t, y, d, _a| c * d + y.abs().ln(),
        move |_t, y, _d, _a| 1.0 / y,
        move |_t, _y, _d, _a| c,
        |_t, _y, _d, _a| 0.0,
    )
    .with_boundary(Endpoint::End, 0.0)
    .with_linear_d(move |_a| c, |_a| 0.0)
}

fn ex4b_log(c: f64, n: usize) -> Result<ScenarioReport> {
    let spec = log_force_lagrangian(c);
    let mut claims = Vec::new();
    let mut diagnostics = Vec::new();

    // displayed condition: int_0^1 (psi(1-a) - ln(1-tau)) dtau = psi(1-a) + 1
    let displayed = find_alpha_root(|a| digamma(1.0 - a).unwrap() + 1.0, 0.01, 0.9)?;
    claims.push(ClaimRecord::checked(
        "displayed condition psi(1-a)+1 root (independent oracle 0.2149967)",
        displayed.alpha_star,
        0.21499667462547933,
        1e-6,
    ));
    claims.push(ClaimRecord::checked(
        "|condition| at the displayed root",
        displayed.condition_value.abs(),
        0.0,
        1e-10,
    ));
    // the alternative reduction psi(a-1) = 1
    let reduced = find_alpha_root(|a| digamma(a - 1.0).unwrap() - 1.0, 0.02, 0.98)?;
    claims.push(ClaimRecord::checked(
        "asserted: unique root of psi(a-1) = 1 at alpha = 0.604",
        reduced.alpha_star,
        0.604,
        1e-3,
    ));
    claims.push(ClaimRecord::flag(
        "two reductions disagree (difference of the located roots)",
        displayed.alpha_star - reduced.alpha_star,
        ClaimStatus::Contested,
    ));
    diagnostics.push(
        "the integral form reduces to psi(1-a)+1 = 0 while the quoted reduction is \
         psi(a-1) = 1; both roots are reported and the pair is flagged contested"
            .to_string(),
    );

    // stationary pair residuals at both roots, with the sign-consistent path
    let mut rows = Vec::new();
    for root in [displayed.alpha_star, reduced.alpha_star] {
        let order = FractionalOrder::new(root)?;
        let y = PowerPath::from_right(-gamma_fn(1.0 - root)? / c, root)?.sample(1.0, n)?;
        let act = action(&y, &order, &spec)?;
        let resid = el_residual_y(&y, &order, &spec)?.sup_norm_interior(INTERIOR_SKIP);
        let cond = alpha_condition(&y, &order, &spec)?;
        rows.push(ScanRow { alpha: root, action: act, el_residual_norm: resid, alpha_condition: cond });
    }
    claims.push(ClaimRecord::checked(
        "stationary path satisfies its equation (EL residual at the quoted root)",
        rows[1].el_residual_norm,
        0.0,
        1e-6,
    ));
    // quadrature evaluation of the order condition against the reduction
    let order = FractionalOrder::new(0.3)?;
    let y = PowerPath::from_right(-gamma_fn(0.7)? / c, 0.3)?.sample(1.0, n)?;
    let got = alpha_condition(&y, &order, &spec)?;
    let want = -(digamma(0.7)? + 1.0);
    claims.push(ClaimRecord::checked(
        "order-condition quadrature matches the -(psi(1-a)+1) reduction at a = 0.3",
        got,
        want,
        2e-3,
    ));

    Ok(ScenarioReport {
        id: ScenarioId::Ex4bLog,
        row_label: "alpha",
        rows,
        claims,
        alpha_star: Some(displayed.alpha_star),
        diagnostics,
    })
}

fn beta_remark(c: f64, beta_values: &[f64], n: usize) -> Result<ScenarioReport> {
    let alpha0 = 0.45;
    let spec = primary_constraint_lagrangian(c, alpha0);
    let a = 0.25;
    let order = FractionalOrder::with_max(a, alpha0)?;
    let y = constraint_path(c, a, n)?;
    let plain = action(&y, &order, &spec)?;

    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for &beta in beta_values {
        let v = beta_action(&y, &order, beta, &spec)?;
        rows.push(ScanRow {
            alpha: beta,
            action: v,
            el_residual_norm: f64::NAN,
            alpha_condition: f64::NAN,
        });
        if beta == 1.0 {
            let rel = ((v - plain) / plain).abs();
            claims.push(ClaimRecord::checked(
                "beta = 1 recovers the plain action (relative gap)",
                rel,
                0.0,
                1e-12,
            ));
        }
    }
    Ok(ScenarioReport {
        id: ScenarioId::BetaRemark,
        row_label: "beta",
        rows,
        claims,
        alpha_star: None,
        diagnostics: vec![format!("weighted action of the constraint pair at alpha = {a}")],
    })
}
