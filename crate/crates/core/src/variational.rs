//! Lagrangian abstraction, action evaluation, the two stationarity
//! conditions (in the path and in the order), the total-derivative identity
//! used by nested minimization, the integration-by-parts defect, and the
//! fractionally weighted action.
//!
//! Lagrangians that are linear in the derivative slot (Dirac-type primary
//! constraints) declare that structure; the order condition then evaluates
//! through the boundary value of the f1 convolution instead of forming the
//! sensitivity field pointwise, which keeps endpoint-singular families
//! integrable.

use crate::error::{Error, Result};
use crate::fractional::{frac_deriv, rl_left, rl_right, FractionalOrder};
use crate::grid::{
    derivative, fit_power_tail, integrate, ConvSide, GridFunction, QuadratureRule,
};
use crate::sensitivity::{dalpha_at_one, dalpha_at_zero, dalpha_rl};
use crate::special::{digamma, gamma_fn};
use serde::Serialize;

/// Fraction of nodes excluded at each end by the default interior sup-norm.
pub const INTERIOR_SKIP: f64 = 0.05;

type ScalarFn4 = Box<dyn Fn(f64, f64, f64, f64) -> f64 + Send + Sync>;
type ScalarFn1 = Box<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Start,
    End,
}

/// Structural information about how the Lagrangian depends on the
/// derivative slot.
pub enum DStructure {
    General,
    /// L = weight(alpha) * d + V(t, y, alpha), with the weight independent
    /// of t, y and d. `weight_dalpha` is its alpha-derivative.
    LinearInD { weight: ScalarFn1, weight_dalpha: ScalarFn1 },
}

/// Lagrangian L(t, y, d, alpha) with its three partial derivatives, boundary
/// conditions defining the admissible set, and the alpha domain.
///
/// Evaluators must be stateless; a spec is shared freely across parallel
/// evaluations.
pub struct LagrangianSpec {
    evaluate: ScalarFn4,
    partial_y: ScalarFn4,
    partial_d: ScalarFn4,
    partial_alpha: ScalarFn4,
    boundary: Vec<(Endpoint, f64)>,
    alpha_max: f64,
    d_structure: DStructure,
}

impl LagrangianSpec {
    pub fn new<E, Py, Pd, Pa>(evaluate: E, partial_y: Py, partial_d: Pd, partial_alpha: Pa) -> Self
    where
        E: Fn(f64, f64, f64, f64) -> f64 + Send + Sync + 'static,
        Py: Fn(f64, f64, f64, f64) -> f64 + Send + Sync + 'static,
        Pd: Fn(f64, f64, f64, f64) -> f64 + Send + Sync + 'static,
        Pa: Fn(f64, f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        LagrangianSpec {
            evaluate: Box::new(evaluate),
            partial_y: Box::new(partial_y),
            partial_d: Box::new(partial_d),
            partial_alpha: Box::new(partial_alpha),
            boundary: Vec::new(),
            alpha_max: 1.0,
            d_structure: DStructure::General,
        }
    }

    pub fn with_boundary(mut self, endpoint: Endpoint, value: f64) -> Self {
        self.boundary.push((endpoint, value));
        self
    }

    pub fn with_alpha_max(mut self, alpha_max: f64) -> Self {
        self.alpha_max = alpha_max;
        self
    }

    pub fn with_linear_d<W, Wd>(mut self, weight: W, weight_dalpha: Wd) -> Self
    where
        W: Fn(f64) -> f64 + Send + Sync + 'static,
        Wd: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.d_structure = DStructure::LinearInD {
            weight: Box::new(weight),
            weight_dalpha: Box::new(weight_dalpha),
        };
        self
    }

    pub fn eval(&self, t: f64, y: f64, d: f64, alpha: f64) -> f64 {
        (self.evaluate)(t, y, d, alpha)
    }

    pub fn partial_y(&self, t: f64, y: f64, d: f64, alpha: f64) -> f64 {
        (self.partial_y)(t, y, d, alpha)
    }

    pub fn partial_d(&self, t: f64, y: f64, d: f64, alpha: f64) -> f64 {
        (self.partial_d)(t, y, d, alpha)
    }

    pub fn partial_alpha(&self, t: f64, y: f64, d: f64, alpha: f64) -> f64 {
        (self.partial_alpha)(t, y, d, alpha)
    }

    pub fn boundary(&self) -> &[(Endpoint, f64)] {
        &self.boundary
    }

    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    pub fn d_structure(&self) -> &DStructure {
        &self.d_structure
    }

    /// Self-consistency of the supplied partials against central finite
    /// differences of `evaluate` at the given (t, y, d, alpha) points.
    pub fn check_partials(&self, points: &[(f64, f64, f64, f64)], tol: f64) -> Result<()> {
        for &(t, y, d, a) in points {
            let step = |x: f64| 1e-6 * (1.0 + x.abs());
            let hy = step(y);
            let fd_y = (self.eval(t, y + hy, d, a) - self.eval(t, y - hy, d, a)) / (2.0 * hy);
            let hd = step(d);
            let fd_d = (self.eval(t, y, d + hd, a) - self.eval(t, y, d - hd, a)) / (2.0 * hd);
            let ha = step(a);
            let fd_a = (self.eval(t, y, d, a + ha) - self.eval(t, y, d, a - ha)) / (2.0 * ha);
            let bad = (fd_y - self.partial_y(t, y, d, a)).abs() > tol
                || (fd_d - self.partial_d(t, y, d, a)).abs() > tol
                || (fd_a - self.partial_alpha(t, y, d, a)).abs() > tol;
            if bad {
                return Err(Error::Domain("supplied partials disagree with finite differences"));
            }
            if let DStructure::LinearInD { weight, .. } = &self.d_structure {
                if (self.partial_d(t, y, d, a) - weight(a)).abs() > tol {
                    return Err(Error::Domain("declared linear-in-d weight disagrees with partial_d"));
                }
            }
        }
        Ok(())
    }
}

/// Stationarity diagnostics for a candidate pair (y, alpha).
#[derive(Debug, Clone, Serialize)]
pub struct StationarityReport {
    pub action_value: f64,
    #[serde(skip)]
    pub el_residual: GridFunction,
    pub el_residual_norm: f64,
    pub alpha_condition_value: f64,
    pub alpha_star: Option<f64>,
    pub diagnostics: Vec<String>,
}

fn check_boundary(y: &GridFunction, spec: &LagrangianSpec) -> Result<()> {
    for &(endpoint, expected) in spec.boundary() {
        let (t, actual, finite) = match endpoint {
            Endpoint::Start => (0.0, y.value(0), y.start_finite()),
            Endpoint::End => (y.b(), y.value(y.n_intervals()), y.end_finite()),
        };
        if !finite || (actual - expected).abs() > 1e-6 * (1.0 + expected.abs()) {
            return Err(Error::BoundaryViolation { endpoint: t, expected, actual });
        }
    }
    Ok(())
}

/// Attach fitted power tails to flagged endpoints of an integrand so the
/// trapezoid rule can absorb them; errors if a flagged endpoint does not look
/// like an integrable power blow-up.
fn fit_tails_for_integration(f: GridFunction) -> Result<GridFunction> {
    let mut out = f;
    if !out.start_finite() && out.start_tail().is_none() {
        match fit_power_tail(&out, ConvSide::Left) {
            Some(tail) if tail.exponent > -1.0 => out = out.with_start_tail(tail),
            Some(tail) => return Err(Error::NonIntegrable { exponent: -tail.exponent }),
            None => {
                return Err(Error::SingularEndpoint(
                    "flagged start sample does not match an integrable power tail",
                ))
            }
        }
    }
    if !out.end_finite() && out.end_tail().is_none() {
        match fit_power_tail(&out, ConvSide::Right) {
            Some(tail) if tail.exponent > -1.0 => out = out.with_end_tail(tail),
            Some(tail) => return Err(Error::NonIntegrable { exponent: -tail.exponent }),
            None => {
                return Err(Error::SingularEndpoint(
                    "flagged end sample does not match an integrable power tail",
                ))
            }
        }
    }
    Ok(out)
}

fn pointwise_grid<F: Fn(f64, f64) -> f64>(y: &GridFunction, f: F) -> Result<GridFunction> {
    let vals = (0..=y.n_intervals())
        .map(|i| f(y.node(i), y.value(i)))
        .collect();
    GridFunction::from_values_allow_interior_nan(y.b(), vals)
}

/// int_0^b of the grid data against nothing (plain trapezoid) after tail
/// fitting; shared by the pointwise integral paths.
fn integrate_with_fitted_tails(f: GridFunction) -> Result<f64> {
    let f = fit_tails_for_integration(f)?;
    integrate(&f, &QuadratureRule::Trapezoid)
}

/// Action integral I[y, alpha] = int_0^b L(t, y, D^alpha y, alpha) dt.
pub fn action(y: &GridFunction, order: &FractionalOrder, spec: &LagrangianSpec) -> Result<f64> {
    check_boundary(y, spec)?;
    let a = order.value();
    match spec.d_structure() {
        DStructure::LinearInD { weight, .. } => {
            // int w*d dt reduces to the boundary value of the Abel
            // convolution: w * (Abel_a y)(b) / Gamma(1-a); at alpha = 1 it is
            // the exact telescope w*(y(b) - y(0)).
            let term_d = if a == 1.0 {
                weight(a) * (y.value(y.n_intervals()) - y.value(0))
            } else {
                let conv = integrate(y, &QuadratureRule::ProductAbel { exponent: a })?;
                weight(a) * conv / gamma_fn(1.0 - a)?
            };
            let v_grid = pointwise_grid(y, |t, yv| spec.eval(t, yv, 0.0, a))?;
            Ok(term_d + integrate_with_fitted_tails(v_grid)?)
        }
        DStructure::General => {
            let d = frac_deriv(y, order)?;
            let f_vals = (0..=y.n_intervals())
                .map(|i| spec.eval(y.node(i), y.value(i), d.value(i), a))
                .collect();
            let f = GridFunction::from_values_allow_interior_nan(y.b(), f_vals)?;
            integrate_with_fitted_tails(f)
        }
    }
}

/// Right fractional derivative routed at the interval ends, for the residual.
fn right_frac_deriv(w: &GridFunction, order: &FractionalOrder, w_at_b: f64) -> Result<GridFunction> {
    let a = order.value();
    if a == 0.0 {
        Ok(w.clone())
    } else if a == 1.0 {
        let d = derivative(w)?;
        let vals = d.values().iter().map(|v| -v).collect();
        GridFunction::from_values_allow_interior_nan(w.b(), vals)
    } else {
        rl_right(w, order, w_at_b)
    }
}

/// Pointwise Euler-Lagrange residual in the path:
/// dL/dy + tD_b^alpha (dL/d(D^alpha y)).
pub fn el_residual_y(
    y: &GridFunction,
    order: &FractionalOrder,
    spec: &LagrangianSpec,
) -> Result<GridFunction> {
    let a = order.value();
    let d = frac_deriv(y, order)?;
    let n = y.n_intervals();
    let w_vals: Vec<f64> = (0..=n)
        .map(|i| spec.partial_d(y.node(i), y.value(i), d.value(i), a))
        .collect();
    let w_b = w_vals[n];
    let w = GridFunction::from_values_allow_interior_nan(y.b(), w_vals)?;
    let right = right_frac_deriv(&w, order, w_b)?;
    let vals = (0..=n)
        .map(|i| spec.partial_y(y.node(i), y.value(i), d.value(i), a) + right.value(i))
        .collect();
    GridFunction::from_values_allow_interior_nan(y.b(), vals)
}

/// The stationarity condition in the order:
/// int_0^b [ dL/d(D^alpha y) * G(y, alpha) + dL/dalpha ] dt.
pub fn alpha_condition(
    y: &GridFunction,
    order: &FractionalOrder,
    spec: &LagrangianSpec,
) -> Result<f64> {
    let a = order.value();
    match spec.d_structure() {
        DStructure::LinearInD { weight, weight_dalpha } => {
            if a >= 1.0 {
                return Err(Error::OrderOutOfRange { alpha: a, context: "alpha_condition" });
            }
            let g = gamma_fn(1.0 - a)?;
            let conv_abel = integrate(y, &QuadratureRule::ProductAbel { exponent: a })?;
            let conv_log = integrate(y, &QuadratureRule::ProductAbelLog { exponent: a })?;
            // int w G dt = w * (f1 * y)(b); f1 carries psi(1-a) and -ln u.
            let f1_at_b = (digamma(1.0 - a)? * conv_abel + conv_log) / g;
            // dL/dalpha = w'(alpha) d + dV/dalpha, and int d dt telescopes too.
            let d_int = conv_abel / g;
            let v_alpha = pointwise_grid(y, |t, yv| spec.partial_alpha(t, yv, 0.0, a))?;
            Ok(weight(a) * f1_at_b + weight_dalpha(a) * d_int
                + integrate_with_fitted_tails(v_alpha)?)
        }
        DStructure::General => {
            let d = frac_deriv(y, order)?;
            let sens = if a == 0.0 {
                dalpha_at_zero(y, y.value(0))?
            } else if a == 1.0 {
                let yp = derivative(y)?;
                dalpha_at_one(y, y.value(0), yp.value(0))?
            } else {
                dalpha_rl(y, order)?
            };
            let n = y.n_intervals();
            let vals = (0..=n)
                .map(|i| {
                    let t = y.node(i);
                    let (yv, dv, gv) = (y.value(i), d.value(i), sens.field.value(i));
                    if yv.is_finite() && dv.is_finite() && gv.is_finite() {
                        spec.partial_d(t, yv, dv, a) * gv + spec.partial_alpha(t, yv, dv, a)
                    } else {
                        f64::NAN
                    }
                })
                .collect();
            let integrand = GridFunction::from_values_allow_interior_nan(y.b(), vals)?;
            integrate_with_fitted_tails(integrand)
        }
    }
}

/// Total derivative dI/dalpha along a stationary family: equals the order
/// condition evaluated on the family's path (the content of the equivalence
/// between joint and nested minimization). Refuses families whose
/// Euler-Lagrange residual is not small.
pub fn di_dalpha<F>(family: F, order: &FractionalOrder, spec: &LagrangianSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<GridFunction>,
{
    let y = family(order.value())?;
    let resid = el_residual_y(&y, order, spec)?;
    let norm = resid.sup_norm_interior(INTERIOR_SKIP);
    let d = frac_deriv(&y, order)?;
    let scale = 1.0
        + (0..=y.n_intervals())
            .filter(|&i| y.value(i).is_finite() && d.value(i).is_finite())
            .map(|i| spec.partial_y(y.node(i), y.value(i), d.value(i), order.value()).abs())
            .fold(0.0_f64, f64::max);
    let threshold = 1e-2 * scale;
    if !(norm <= threshold) {
        return Err(Error::StationarityViolation { residual: norm, threshold });
    }
    alpha_condition(&y, order, spec)
}

/// Defect of the fractional integration-by-parts identity
/// int g * D^a f - int f * (tD_b^a g), for f(0) = 0 and g(b) = 0.
pub fn int_by_parts_defect(
    f: &GridFunction,
    g: &GridFunction,
    order: &FractionalOrder,
) -> Result<f64> {
    let n = f.n_intervals();
    if f.value(0).abs() > 1e-12 * f.sup_norm_interior(0.0).max(1.0) {
        return Err(Error::BoundaryViolation { endpoint: 0.0, expected: 0.0, actual: f.value(0) });
    }
    if g.value(n).abs() > 1e-12 * g.sup_norm_interior(0.0).max(1.0) {
        return Err(Error::BoundaryViolation {
            endpoint: g.b(),
            expected: 0.0,
            actual: g.value(n),
        });
    }
    let df = if order.value() == 0.0 { f.clone() } else { rl_left(f, order, 0.0)? };
    let dg = if order.value() == 0.0 { g.clone() } else { rl_right(g, order, 0.0)? };
    let lhs = integrate(&pointwise_product(g, &df)?, &QuadratureRule::Trapezoid)?;
    let rhs = integrate(&pointwise_product(f, &dg)?, &QuadratureRule::Trapezoid)?;
    Ok(lhs - rhs)
}

fn pointwise_product(a: &GridFunction, b: &GridFunction) -> Result<GridFunction> {
    if a.n_intervals() != b.n_intervals() {
        return Err(Error::Domain("grids do not match"));
    }
    let vals = (0..=a.n_intervals()).map(|i| a.value(i) * b.value(i)).collect();
    GridFunction::from_values_allow_interior_nan(a.b(), vals)
}

/// Fractionally weighted action
/// I_beta = (1/Gamma(beta)) int_0^b (b-t)^{beta-1} L dt; beta = 1 recovers
/// the plain action through the same code path.
pub fn beta_action(
    y: &GridFunction,
    order: &FractionalOrder,
    beta: f64,
    spec: &LagrangianSpec,
) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain("beta must be positive"));
    }
    if beta == 1.0 {
        return action(y, order, spec);
    }
    check_boundary(y, spec)?;
    let a = order.value();
    let d = frac_deriv(y, order)?;
    let f_vals = (0..=y.n_intervals())
        .map(|i| {
            let (yv, dv) = (y.value(i), d.value(i));
            if yv.is_finite() && dv.is_finite() {
                spec.eval(y.node(i), yv, dv, a)
            } else {
                f64::NAN
            }
        })
        .collect();
    let f = fit_tails_for_integration(GridFunction::from_values_allow_interior_nan(
        y.b(),
        f_vals,
    )?)?;
    let weighted = integrate(&f, &QuadratureRule::ProductAbel { exponent: 1.0 - beta })?;
    Ok(weighted / gamma_fn(beta)?)
}

/// Bundle of action, residual field and order condition for a pair.
pub fn stationarity_report(
    y: &GridFunction,
    order: &FractionalOrder,
    spec: &LagrangianSpec,
) -> Result<StationarityReport> {
    let action_value = action(y, order, spec)?;
    let el_residual = el_residual_y(y, order, spec)?;
    let el_residual_norm = el_residual.sup_norm_interior(INTERIOR_SKIP);
    let alpha_condition_value = alpha_condition(y, order, spec)?;
    Ok(StationarityReport {
        action_value,
        el_residual,
        el_residual_norm,
        alpha_condition_value,
        alpha_star: None,
        diagnostics: Vec::new(),
    })
}
