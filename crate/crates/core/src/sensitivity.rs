//! Sensitivity of the fractional derivative to its order: the kernel
//! G(y, alpha) = d(D^alpha y)/d(alpha), its closed-form limits at
//! alpha = 0+ and alpha = 1-, and the kernel expansion check.
//!
//! The interior formula is
//!   G = psi(1-a) * D^a y - (1/Gamma(1-a)) d/dt int_0^t ln(t-tau) y(tau) (t-tau)^{-a} dtau
//! and the d/dt is never applied numerically: integrating by parts moves it
//! onto the data, leaving a y(0) boundary contribution plus a log-Abel
//! convolution of y' handled by exact kernel moments.

use crate::error::{Error, Result};
use crate::fractional::{rl_left, FractionalOrder};
use crate::grid::{convolve_deriv, convolve_values, derivative, ConvSide, GridFunction, Kernel};
use crate::special::{digamma, gamma_fn, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensitivityMethod {
    KernelFormula,
    LimitZero,
    LimitOne,
    FiniteDifference,
}

/// G(y, alpha) on the grid, tagged with how it was computed.
#[derive(Debug, Clone)]
pub struct SensitivityField {
    pub field: GridFunction,
    pub alpha: f64,
    pub method: SensitivityMethod,
}

/// f1(t, a) = [psi(1-a) - ln t] / (t^a Gamma(1-a)), t > 0.
pub fn f1_kernel(t: f64, order: &FractionalOrder) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("f1_kernel requires t > 0"));
    }
    let a = order.value();
    if !(0.0..1.0).contains(&a) {
        return Err(Error::OrderOutOfRange { alpha: a, context: "f1_kernel" });
    }
    Ok((digamma(1.0 - a)? - t.ln()) / (t.powf(a) * gamma_fn(1.0 - a)?))
}

/// Order-sensitivity kernel at interior orders alpha in (0, 1).
pub fn dalpha_rl(y: &GridFunction, order: &FractionalOrder) -> Result<SensitivityField> {
    let a = order.value();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OrderOutOfRange { alpha: a, context: "dalpha_rl (use the limit forms)" });
    }
    if !y.start_finite() {
        return Err(Error::SingularEndpoint("dalpha_rl requires finite y(0)"));
    }
    let y0 = y.value(0);
    let psi = digamma(1.0 - a)?;
    let g = gamma_fn(1.0 - a)?;
    let d = rl_left(y, order, y0)?;
    // d/dt of the log-Abel convolution, by parts:
    //   y(0) t^{-a} ln t + int_0^t ln(t-tau)(t-tau)^{-a} y'(tau) dtau
    // with ln u * u^{-a} = -(kappa) for the kernel kappa = u^{-a}(-ln u).
    let logconv = log_kernel_deriv_conv(y, a)?;
    let n = y.n_intervals();
    let h = y.h();
    let mut vals = vec![0.0; n + 1];
    for i in 1..=n {
        let t = i as f64 * h;
        let kappa_t = t.powf(-a) * (-t.ln());
        let dv = d.value(i);
        if !dv.is_finite() || !logconv.value(i).is_finite() {
            vals[i] = f64::NAN;
            continue;
        }
        vals[i] = psi * dv + (y0 * kappa_t + logconv.value(i)) / g;
    }
    vals[0] = if y0 == 0.0 { 0.0 } else { f64::NAN };
    let field = GridFunction::from_values_allow_interior_nan(y.b(), vals)?;
    Ok(SensitivityField { field, alpha: a, method: SensitivityMethod::KernelFormula })
}

/// int_0^t kappa(t-tau) y'(tau) dtau for kappa(u) = u^{-a}(-ln u).
///
/// Above order 0.85 the kernel mass concentrates in the cell next to tau = t
/// and the value-difference rule mis-weights y' there, so a second
/// integration by parts moves the convolution onto y'' against the bounded
/// kernel K(u) = int_0^u kappa = u^{1-a}[(-ln u)/(1-a) + 1/(1-a)^2].
fn log_kernel_deriv_conv(y: &GridFunction, a: f64) -> Result<GridFunction> {
    if !(a > 0.85 && y.start_finite() && y.end_finite() && y.n_intervals() >= 4) {
        return convolve_deriv(y, Kernel::abel_log(a)?, ConvSide::Left);
    }
    let yp = derivative(y)?;
    let conv_log = convolve_deriv(&yp, Kernel::abel_log(a - 1.0)?, ConvSide::Left)?;
    let conv_plain = convolve_deriv(&yp, Kernel::abel(a - 1.0)?, ConvSide::Left)?;
    let q = 1.0 - a;
    let yp0 = yp.value(0);
    let n = y.n_intervals();
    let h = y.h();
    let mut vals = vec![0.0; n + 1];
    for i in 1..=n {
        let t = i as f64 * h;
        let k_anti = t.powf(q) * ((-t.ln()) / q + 1.0 / (q * q));
        vals[i] = yp0 * k_anti + conv_log.value(i) / q + conv_plain.value(i) / (q * q);
    }
    GridFunction::from_values_allow_interior_nan(y.b(), vals)
}

/// Limit of G at alpha = 0+:
///   -(gamma + ln t) y(t) + int_0^t (y(t) - y(t-tau))/tau dtau,
/// the 1/tau singularity being removable since y(t)-y(t-tau) = O(tau).
pub fn dalpha_at_zero(y: &GridFunction, y_at_0: f64) -> Result<SensitivityField> {
    if !y.start_finite() {
        return Err(Error::SingularEndpoint("dalpha_at_zero requires finite y(0)"));
    }
    let n = y.n_intervals();
    let h = y.h();
    let v = y.values();
    let mut vals = vec![0.0; n + 1];
    for i in 1..=n {
        let t = i as f64 * h;
        if !v[i].is_finite() {
            vals[i] = f64::NAN;
            continue;
        }
        // integral of m(tau)/tau with m piecewise linear, m(0) = 0
        let mut acc = 0.0;
        for j in 0..i {
            let m_lo = v[i] - v[i - j];
            let m_hi = v[i] - v[i - j - 1];
            if !m_hi.is_finite() || !m_lo.is_finite() {
                acc = f64::NAN;
                break;
            }
            let s = (m_hi - m_lo) / h;
            if j == 0 {
                // m(tau) = s*tau exactly on the first cell
                acc += s * h;
            } else {
                let tau_lo = j as f64 * h;
                let tau_hi = tau_lo + h;
                acc += (m_lo - s * tau_lo) * (tau_hi / tau_lo).ln() + s * h;
            }
        }
        vals[i] = -(EULER_GAMMA + t.ln()) * v[i] + acc;
    }
    vals[0] = if y_at_0 == 0.0 { 0.0 } else { f64::NAN };
    let field = GridFunction::from_values_allow_interior_nan(y.b(), vals)?;
    Ok(SensitivityField { field, alpha: 0.0, method: SensitivityMethod::LimitZero })
}

/// The other printed form of the alpha = 0+ limit,
///   -(gamma + ln t) y(0) - int_0^t (gamma + ln tau) y(t-tau) dtau,
/// kept for cross-reporting only: it does not agree with the primary form for
/// general data.
pub fn dalpha_at_zero_first_form(y: &GridFunction, y_at_0: f64) -> Result<GridFunction> {
    if !y.start_finite() {
        return Err(Error::SingularEndpoint("requires finite y(0)"));
    }
    // int (gamma + ln tau) y(t-tau) dtau = gamma*int y - (logconv of y)
    let plain = convolve_values(y, Kernel::abel(0.0)?, ConvSide::Left)?;
    let logc = convolve_values(y, Kernel::abel_log(0.0)?, ConvSide::Left)?;
    let n = y.n_intervals();
    let h = y.h();
    let mut vals = vec![0.0; n + 1];
    for i in 1..=n {
        let t = i as f64 * h;
        vals[i] = -(EULER_GAMMA + t.ln()) * y_at_0
            - (EULER_GAMMA * plain.value(i) - logc.value(i));
    }
    vals[0] = if y_at_0 == 0.0 { 0.0 } else { f64::NAN };
    GridFunction::from_values_allow_interior_nan(y.b(), vals)
}

/// Limit of G at alpha = 1- for twice-differentiable data:
///   -y(0)/t - y'(0) ln t - gamma y'(t) - int_0^t y''(tau) ln(t-tau) dtau.
/// With y(0) = 0 this is also the Caputo-side reduced form.
pub fn dalpha_at_one(y: &GridFunction, y_at_0: f64, y1_at_0: f64) -> Result<SensitivityField> {
    let n = y.n_intervals();
    if n < 16 {
        return Err(Error::GridTooCoarse { n, min: 16 });
    }
    let yp = derivative(y)?;
    // -int y'' ln(t-tau) dtau = int y''(tau) (-ln(t-tau)) dtau, L1 on y'
    let logconv = convolve_deriv(&yp, Kernel::abel_log(0.0)?, ConvSide::Left)?;
    let h = y.h();
    let mut vals = vec![0.0; n + 1];
    for i in 1..=n {
        let t = i as f64 * h;
        vals[i] = -y_at_0 / t - y1_at_0 * t.ln() - EULER_GAMMA * yp.value(i) + logconv.value(i);
    }
    vals[0] = if y_at_0 == 0.0 && y1_at_0 == 0.0 {
        -EULER_GAMMA * yp.value(0)
    } else {
        f64::NAN
    };
    let field = GridFunction::from_values_allow_interior_nan(y.b(), vals)?;
    Ok(SensitivityField { field, alpha: 1.0, method: SensitivityMethod::LimitOne })
}

/// Central finite difference of the RL derivative in alpha; the step is the
/// toolkit-wide 1e-4 unless overridden.
pub fn dalpha_fd(
    y: &GridFunction,
    order: &FractionalOrder,
    step: Option<f64>,
) -> Result<SensitivityField> {
    let a = order.value();
    let eps = step.unwrap_or(1e-4);
    if !(a - eps > 0.0 && a + eps < 1.0) {
        return Err(Error::OrderOutOfRange { alpha: a, context: "dalpha_fd" });
    }
    let y0 = y.value(0);
    let hi = rl_left(y, &FractionalOrder::new(a + eps)?, y0)?;
    let lo = rl_left(y, &FractionalOrder::new(a - eps)?, y0)?;
    let field = hi.linear_comb(0.5 / eps, &lo, -0.5 / eps)?;
    Ok(SensitivityField { field, alpha: a, method: SensitivityMethod::FiniteDifference })
}

/// Defect of the first-order kernel expansion
///   (t-tau)^eps / Gamma(1+eps) - [1 + eps (gamma + ln(t-tau))],
/// which must be o(eps).
pub fn expansion_check(t: f64, tau: f64, eps: f64) -> Result<f64> {
    if !(tau < t && tau >= 0.0) {
        return Err(Error::Domain("expansion_check requires 0 <= tau < t"));
    }
    if eps.abs() > 0.1 {
        return Err(Error::Domain("expansion_check requires |eps| <= 0.1"));
    }
    let u = t - tau;
    let lhs = u.powf(eps) / gamma_fn(1.0 + eps)?;
    Ok(lhs - (1.0 + eps * (EULER_GAMMA + u.ln())))
}
