//! Inversion of the fractional derivative equation, the constant-force
//! series solution, scalar root finding in the order, order scans, and joint
//! Ritz minimization over (path coefficients, alpha).

use crate::error::{Error, Result};
use crate::fractional::{rl_integral, FractionalOrder};
use crate::grid::GridFunction;
use crate::special::gamma_fn;
use crate::variational::{
    action, alpha_condition, el_residual_y, stationarity_report, LagrangianSpec,
    StationarityReport, INTERIOR_SKIP,
};
use serde::Serialize;

/// Solve 0Dt^alpha y = g for the unique admissible y with y(0) = 0 by
/// applying the fractional integral to both sides.
pub fn solve_rl_equation(g: &GridFunction, order: &FractionalOrder) -> Result<GridFunction> {
    let a = order.value();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OrderOutOfRange { alpha: a, context: "solve_rl_equation" });
    }
    rl_integral(g, order)
}

/// Truncated series for the constant-force stationary path
///   y(t, a) = (c/Gamma(1+a)) sum_p prod_{k<p}(k-a)/Gamma(1+p+a) t^{p+a}.
///
/// Coefficients are generated by the term ratio
/// term_{p+1} = term_p * t * (p-a)/(p+1+a), never through Gamma at negative
/// arguments.
#[derive(Debug, Clone, Copy)]
pub struct Example2Series {
    pub c: f64,
    pub alpha: f64,
}

/// Hard cap on series terms.
const SERIES_MAX_TERMS: usize = 200;

#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: f64,
    pub terms_used: usize,
    pub truncation_error_estimate: f64,
}

impl Example2Series {
    pub fn new(c: f64, order: &FractionalOrder) -> Result<Self> {
        let a = order.value();
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::OrderOutOfRange { alpha: a, context: "Example2Series" });
        }
        Ok(Example2Series { c, alpha: a })
    }

    pub fn eval(&self, t: f64, tol: f64) -> Result<SeriesEval> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain("series defined on t in [0, 1]"));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain("tolerance must be positive"));
        }
        let a = self.alpha;
        if t == 0.0 {
            return Ok(SeriesEval { value: 0.0, terms_used: 0, truncation_error_estimate: 0.0 });
        }
        let prefactor = self.c / gamma_fn(1.0 + a)?;
        let mut term = t.powf(a) / gamma_fn(1.0 + a)?;
        let mut sum = term;
        let mut p = 0usize;
        loop {
            let ratio = t * (p as f64 - a) / (p as f64 + 1.0 + a);
            term *= ratio;
            sum += term;
            p += 1;
            // one-signed decaying tail from p >= 1: geometric bound with a
            // safety factor so the estimate dominates the true remainder
            let ratio_mag = (t * (p as f64 - a) / (p as f64 + 1.0 + a)).abs().min(t);
            let tail = 2.0 * term.abs() * ratio_mag / (1.0 - t).max(1.0 - ratio_mag).max(1e-300);
            if tail <= tol * sum.abs().max(1e-300) {
                return Ok(SeriesEval {
                    value: prefactor * sum,
                    terms_used: p + 1,
                    truncation_error_estimate: prefactor.abs() * tail,
                });
            }
            if p >= SERIES_MAX_TERMS {
                return Err(Error::NoConvergence(
                    "series term cap reached before the tolerance was met",
                ));
            }
        }
    }
}

/// Convenience wrapper returning just the value.
pub fn example2_series(c: f64, order: &FractionalOrder, t: f64, tol: f64) -> Result<f64> {
    Ok(Example2Series::new(c, order)?.eval(t, tol)?.value)
}

/// Result of a scalar root search in the order.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaRoot {
    pub alpha_star: f64,
    pub condition_value: f64,
}

/// Bisection for a root of `condition` inside `[lo, hi]`; if the endpoint
/// signs agree, a 1000-point scan looks for a sign change first.
pub fn find_alpha_root<F>(condition: F, lo: f64, hi: f64) -> Result<AlphaRoot>
where
    F: Fn(f64) -> f64,
{
    if !(hi > lo) {
        return Err(Error::Domain("empty bracket"));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (condition(a), condition(b));
    if fa == 0.0 {
        return Ok(AlphaRoot { alpha_star: a, condition_value: 0.0 });
    }
    if fb == 0.0 {
        return Ok(AlphaRoot { alpha_star: b, condition_value: 0.0 });
    }
    if fa.signum() == fb.signum() {
        let mut found = false;
        let scan = 1000usize;
        let mut prev_x = lo;
        let mut prev_f = fa;
        for k in 1..=scan {
            let x = lo + (hi - lo) * k as f64 / scan as f64;
            let fx = condition(x);
            if fx == 0.0 {
                return Ok(AlphaRoot { alpha_star: x, condition_value: 0.0 });
            }
            if fx.is_finite() && prev_f.is_finite() && fx.signum() != prev_f.signum() {
                a = prev_x;
                b = x;
                fa = prev_f;
                found = true;
                break;
            }
            prev_x = x;
            prev_f = fx;
        }
        if !found {
            return Err(Error::NoBracket { lo, hi });
        }
    }
    while b - a > 1e-12 {
        let mid = 0.5 * (a + b);
        let fm = condition(mid);
        if fm == 0.0 {
            return Ok(AlphaRoot { alpha_star: mid, condition_value: 0.0 });
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let alpha_star = 0.5 * (a + b);
    Ok(AlphaRoot { alpha_star, condition_value: condition(alpha_star) })
}

/// One row of an order scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub action: f64,
    pub el_residual_norm: f64,
    pub alpha_condition: f64,
}

/// Tabulated nested-minimization objective I(alpha) over a family of
/// stationary paths, with the grid argmin/argmax marked.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaScan {
    pub rows: Vec<ScanRow>,
    pub argmin: usize,
    pub argmax: usize,
}

impl AlphaScan {
    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].action > w[0].action)
    }
}

pub fn alpha_scan<F>(family: F, spec: &LagrangianSpec, alpha_grid: &[f64]) -> Result<AlphaScan>
where
    F: Fn(f64) -> Result<GridFunction>,
{
    if alpha_grid.is_empty() {
        return Err(Error::Domain("empty alpha grid"));
    }
    let mut rows = Vec::with_capacity(alpha_grid.len());
    for &a in alpha_grid {
        let order = FractionalOrder::with_max(a, spec.alpha_max())?;
        let y = family(a)?;
        let act = action(&y, &order, spec)?;
        let resid = el_residual_y(&y, &order, spec)?.sup_norm_interior(INTERIOR_SKIP);
        let cond = alpha_condition(&y, &order, spec)?;
        rows.push(ScanRow { alpha: a, action: act, el_residual_norm: resid, alpha_condition: cond });
    }
    let mut argmin = 0;
    let mut argmax = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.action < rows[argmin].action {
            argmin = i;
        }
        if r.action > rows[argmax].action {
            argmax = i;
        }
    }
    Ok(AlphaScan { rows, argmin, argmax })
}

/// Finite-dimensional minimization problem: paths y = offset + sum c_i b_i
/// with every basis element homogeneous at the boundary, coefficients boxed,
/// and the order searched over `alpha_grid`.
pub struct RitzProblem {
    pub basis: Vec<GridFunction>,
    pub offset: GridFunction,
    pub bounds: Vec<(f64, f64)>,
    pub alpha_grid: Vec<f64>,
}

impl RitzProblem {
    fn path(&self, coeffs: &[f64]) -> Result<GridFunction> {
        let mut y = self.offset.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            y = y.linear_comb(1.0, b, *c)?;
        }
        Ok(y)
    }
}

/// Golden-section line search on a unimodal-ish objective over [lo, hi].
fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, iters: usize) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Maximum coordinate-descent sweeps before giving up.
const JOINT_SWEEP_LIMIT: usize = 200;

/// Deterministic joint minimization of the action over (coefficients, alpha):
/// coordinate descent with a golden-section search per coefficient,
/// alternated with an alpha line search over the grid plus two local
/// refinements. Non-evaluable pairs score +infinity. On hitting the sweep
/// limit the best pair so far is returned and flagged in the diagnostics.
pub fn joint_minimize(problem: &RitzProblem, spec: &LagrangianSpec) -> Result<StationarityReport> {
    if problem.basis.is_empty() {
        return Err(Error::Domain("Ritz basis must be non-empty"));
    }
    if problem.bounds.len() != problem.basis.len() {
        return Err(Error::Domain("one coefficient bound per basis element"));
    }
    if problem.alpha_grid.is_empty() {
        return Err(Error::Domain("alpha grid must be non-empty"));
    }
    for &(lo, hi) in &problem.bounds {
        if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
            return Err(Error::Domain("coefficient bounds must be finite intervals"));
        }
    }
    // the offset carries the inhomogeneous boundary values; every basis
    // element must vanish wherever a boundary condition is pinned
    for &(endpoint, _) in spec.boundary() {
        for basis in &problem.basis {
            let v = match endpoint {
                crate::variational::Endpoint::Start => basis.value(0),
                crate::variational::Endpoint::End => basis.value(basis.n_intervals()),
            };
            if v.abs() > 1e-9 * (1.0 + basis.sup_norm_interior(0.0)) {
                return Err(Error::Domain(
                    "basis element violates the homogeneous boundary conditions",
                ));
            }
        }
    }

    let objective = |coeffs: &[f64], a: f64| -> f64 {
        let order = match FractionalOrder::with_max(a, spec.alpha_max()) {
            Ok(o) => o,
            Err(_) => return f64::INFINITY,
        };
        match problem.path(coeffs).and_then(|y| action(&y, &order, spec)) {
            Ok(v) if v.is_finite() => v,
            _ => f64::INFINITY,
        }
    };

    let mut coeffs: Vec<f64> =
        problem.bounds.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
    let mut alpha = problem.alpha_grid[problem.alpha_grid.len() / 2];
    let mut best = objective(&coeffs, alpha);
    let mut converged = false;

    for _sweep in 0..JOINT_SWEEP_LIMIT {
        let before = best;
        for i in 0..coeffs.len() {
            let (lo, hi) = problem.bounds[i];
            if hi > lo {
                let mut trial = coeffs.clone();
                let x = golden_section(
                    |c| {
                        trial[i] = c;
                        objective(&trial, alpha)
                    },
                    lo,
                    hi,
                    60,
                );
                let mut cand = coeffs.clone();
                cand[i] = x;
                let v = objective(&cand, alpha);
                if v < best {
                    coeffs = cand;
                    best = v;
                }
            }
        }
        // alpha line search: grid pass, then two local refinements
        let mut grid: Vec<f64> = problem.alpha_grid.clone();
        for _refine in 0..3 {
            let mut best_a = alpha;
            let mut best_v = best;
            for &a in &grid {
                let v = objective(&coeffs, a);
                if v < best_v {
                    best_v = v;
                    best_a = a;
                }
            }
            alpha = best_a;
            best = best_v;
            // refine around the current best inside its neighboring cells
            let idx = grid
                .iter()
                .position(|&a| a == best_a)
                .unwrap_or(grid.len() / 2);
            let lo = if idx == 0 { grid[0] } else { grid[idx - 1] };
            let hi = if idx + 1 >= grid.len() { grid[grid.len() - 1] } else { grid[idx + 1] };
            if hi <= lo {
                break;
            }
            grid = (0..=10).map(|k| lo + (hi - lo) * k as f64 / 10.0).collect();
        }
        if (before - best).abs() <= 1e-12 * (1.0 + best.abs()) {
            converged = true;
            break;
        }
    }

    let order = FractionalOrder::with_max(alpha, spec.alpha_max())?;
    let y = problem.path(&coeffs)?;
    let mut report = stationarity_report(&y, &order, spec)?;
    report.alpha_star = Some(alpha);
    report
        .diagnostics
        .push(format!("coefficients: {coeffs:?}"));
    if !converged {
        report
            .diagnostics
            .push(format!("sweep limit {JOINT_SWEEP_LIMIT} reached; best pair so far returned"));
    }
    Ok(report)
}
