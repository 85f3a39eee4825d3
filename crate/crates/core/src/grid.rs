//! Uniform-grid functions, numerical differentiation, and product-integration
//! quadrature for weakly singular kernels.
//!
//! All convolutions and weighted integrals here integrate the singular kernel
//! exactly against piecewise-linear data (product-trapezoidal rules). Nodes sit
//! at t_i = i*b/n, so every kernel distance is an integer multiple of h and the
//! needed antiderivative values can be tabulated once per call.

use crate::error::{Error, Result};
use crate::special::gamma_fn;

/// Local power model `coeff * u^exponent` of a function near an endpoint,
/// with u the distance from that endpoint. `exact` marks models that hold on
/// the whole domain (sampled power paths); leading-order models are trusted
/// only on the few cells adjacent to the endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTail {
    pub coeff: f64,
    pub exponent: f64,
    pub exact: bool,
}

impl PowerTail {
    pub fn new(coeff: f64, exponent: f64) -> Result<Self> {
        if !(exponent > -1.0) {
            return Err(Error::NonIntegrable { exponent: -exponent });
        }
        Ok(PowerTail { coeff, exponent, exact: false })
    }

    pub fn exact_power(coeff: f64, exponent: f64) -> Result<Self> {
        let mut t = Self::new(coeff, exponent)?;
        t.exact = true;
        Ok(t)
    }
}

/// Number of cells adjacent to a singular endpoint that are integrated with
/// the endpoint's tail model instead of piecewise-linear data.
const TAIL_CELLS: usize = 4;

/// Model-refined cells are only worthwhile while the kernel still varies
/// across a cell; further out the value-difference rule's mean-value property
/// is already near-optimal for rough data.
const NEAR_KERNEL_CELLS: usize = 32;

/// Exact tails may be trusted on a window that widens slowly with n; this
/// keeps the kernel-singular near field resolvable without handing the bulk
/// of the convolution to the model.
fn tail_window(n: usize, tail: &PowerTail) -> usize {
    if tail.exact {
        TAIL_CELLS.max((n as f64).powf(0.4).round() as usize).min(n / 2)
    } else {
        TAIL_CELLS.min(n / 2)
    }
}

/// Uniform samples of a real function on [0, b].
///
/// `start_finite` / `end_finite` mark whether the endpoint samples are finite;
/// a false flag records an integrable singularity whose sample is excluded
/// from sup-norms and never summed directly.
#[derive(Debug, Clone)]
pub struct GridFunction {
    b: f64,
    values: Vec<f64>,
    start_finite: bool,
    end_finite: bool,
    start_tail: Option<PowerTail>,
    end_tail: Option<PowerTail>,
}

impl GridFunction {
    pub fn from_values(b: f64, values: Vec<f64>) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::Domain("domain end b must be positive"));
        }
        if values.len() < 3 {
            return Err(Error::GridTooCoarse { n: values.len().saturating_sub(1), min: 2 });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() && i != 0 && i != values.len() - 1 {
                return Err(Error::Domain("interior sample is not finite"));
            }
        }
        let start_finite = values[0].is_finite();
        let end_finite = values[values.len() - 1].is_finite();
        Ok(GridFunction { b, values, start_finite, end_finite, start_tail: None, end_tail: None })
    }

    pub fn sample<F: Fn(f64) -> f64>(b: f64, n: usize, f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridTooCoarse { n, min: 2 });
        }
        let h = b / n as f64;
        let values = (0..=n).map(|i| f(i as f64 * h)).collect();
        Self::from_values(b, values)
    }

    pub fn constant(b: f64, n: usize, c: f64) -> Result<Self> {
        Self::sample(b, n, |_| c)
    }

    pub fn with_start_tail(mut self, tail: PowerTail) -> Self {
        self.start_tail = Some(tail);
        self
    }

    pub fn with_end_tail(mut self, tail: PowerTail) -> Self {
        self.end_tail = Some(tail);
        self
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn h(&self) -> f64 {
        self.b / self.n_intervals() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.h()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn start_finite(&self) -> bool {
        self.start_finite
    }

    pub fn end_finite(&self) -> bool {
        self.end_finite
    }

    pub fn start_tail(&self) -> Option<PowerTail> {
        self.start_tail
    }

    pub fn end_tail(&self) -> Option<PowerTail> {
        self.end_tail
    }

    /// Sup-norm over nodes, skipping a fraction of nodes at each end and any
    /// non-finite (flagged) samples.
    pub fn sup_norm_interior(&self, skip_frac: f64) -> f64 {
        let n = self.n_intervals();
        let skip = (n as f64 * skip_frac).ceil() as usize;
        let lo = skip;
        let hi = n.saturating_sub(skip);
        self.values[lo..=hi]
            .iter()
            .filter(|v| v.is_finite())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Sup-norm of the difference against an analytic reference over [t_lo, t_hi].
    pub fn sup_error_on<F: Fn(f64) -> f64>(&self, t_lo: f64, t_hi: f64, exact: F) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..=self.n_intervals() {
            let t = self.node(i);
            if t >= t_lo - 1e-15 && t <= t_hi + 1e-15 && self.values[i].is_finite() {
                m = m.max((self.values[i] - exact(t)).abs());
            }
        }
        m
    }

    /// Pointwise linear combination a*self + b*other; grids must match.
    pub fn linear_comb(&self, a: f64, other: &GridFunction, c: f64) -> Result<GridFunction> {
        if self.values.len() != other.values.len() || (self.b - other.b).abs() > 1e-12 * self.b {
            return Err(Error::Domain("grids do not match"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + c * y)
            .collect();
        GridFunction::from_values(self.b, values)
    }
}

/// Second-order finite differences: central in the interior, one-sided at the
/// endpoints. Exact for quadratics.
pub fn derivative(y: &GridFunction) -> Result<GridFunction> {
    let n = y.n_intervals();
    if n < 4 {
        return Err(Error::GridTooCoarse { n, min: 4 });
    }
    if !y.start_finite || !y.end_finite {
        return Err(Error::SingularEndpoint("derivative requires finite endpoint samples"));
    }
    let h = y.h();
    let v = &y.values;
    let mut d = vec![0.0; n + 1];
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for i in 1..n {
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    d[n] = (v[n - 2] - 4.0 * v[n - 1] + 3.0 * v[n]) / (2.0 * h);
    GridFunction::from_values(y.b, d)
}

/// Quadrature rules for `integrate`. The product rules integrate the grid data
/// (the smooth factor) against a kernel singular at t = b:
/// `(b-t)^{-exponent}` for abel, `-ln(b-t)` for log, and their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureRule {
    Trapezoid,
    ProductAbel { exponent: f64 },
    ProductLog,
    ProductAbelLog { exponent: f64 },
}

/// Weakly singular kernel u^{-p} or u^{-p} * (-ln u), p < 1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    pub p: f64,
    pub log: bool,
}

impl Kernel {
    pub fn abel(p: f64) -> Result<Self> {
        if !(p < 1.0) {
            return Err(Error::NonIntegrable { exponent: p });
        }
        Ok(Kernel { p, log: false })
    }

    pub fn abel_log(p: f64) -> Result<Self> {
        if !(p < 1.0) {
            return Err(Error::NonIntegrable { exponent: p });
        }
        Ok(Kernel { p, log: true })
    }

    /// Kernel value at distance u > 0.
    fn eval(&self, u: f64) -> f64 {
        let base = u.powf(-self.p);
        if self.log {
            base * (-u.ln())
        } else {
            base
        }
    }

    /// Antiderivative of the kernel: int_0^u k(v) dv.
    fn anti1(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let q = 1.0 - self.p;
        if self.log {
            u.powf(q) * ((-u.ln()) / q + 1.0 / (q * q))
        } else {
            u.powf(q) / q
        }
    }

    /// Antiderivative of v*k(v): int_0^u v k(v) dv.
    fn anti2(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let q = 2.0 - self.p;
        if self.log {
            u.powf(q) * ((-u.ln()) / q + 1.0 / (q * q))
        } else {
            u.powf(q) / q
        }
    }

    /// int over [u_lo, u_hi] of coeff * u^nu * k(u) du (tail against kernel).
    fn tail_integral(&self, tail: PowerTail, u_lo: f64, u_hi: f64) -> Result<f64> {
        let q = 1.0 + tail.exponent - self.p;
        if !(q > 0.0) {
            return Err(Error::NonIntegrable { exponent: self.p - tail.exponent });
        }
        let anti = |u: f64| {
            if u == 0.0 {
                0.0
            } else if self.log {
                u.powf(q) * ((-u.ln()) / q + 1.0 / (q * q))
            } else {
                u.powf(q) / q
            }
        };
        Ok(tail.coeff * (anti(u_hi) - anti(u_lo)))
    }
}

/// Tabulated antiderivative values at integer multiples of h, so inner loops
/// avoid powf entirely.
pub(crate) struct MomentTable {
    a1: Vec<f64>,
    a2: Vec<f64>,
}

impl MomentTable {
    pub fn build(kernel: Kernel, h: f64, n: usize) -> Self {
        let a1 = (0..=n).map(|k| kernel.anti1(k as f64 * h)).collect();
        let a2 = (0..=n).map(|k| kernel.anti2(k as f64 * h)).collect();
        MomentTable { a1, a2 }
    }

    /// Zeroth kernel moment over the cell at distance [(k-1)h, kh].
    #[inline]
    fn m0(&self, k: usize) -> f64 {
        self.a1[k] - self.a1[k - 1]
    }

    /// First kernel moment (weighted by u) over the same cell.
    #[inline]
    fn m1(&self, k: usize) -> f64 {
        self.a2[k] - self.a2[k - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvSide {
    Left,
    Right,
}

/// Value-based product convolution of piecewise-linear data against the
/// kernel: left gives t |-> int_0^t y(tau) k(t-tau) dtau, right gives
/// t |-> int_t^b y(tau) k(tau-t) dtau.
pub(crate) fn convolve_values(
    y: &GridFunction,
    kernel: Kernel,
    side: ConvSide,
) -> Result<GridFunction> {
    let n = y.n_intervals();
    let h = y.h();
    let table = MomentTable::build(kernel, h, n);
    let v = &y.values;
    let mut out = vec![0.0; n + 1];

    match side {
        ConvSide::Left => {
            if !y.start_finite && y.start_tail.is_none() {
                return Err(Error::SingularEndpoint(
                    "left convolution of data singular at t=0 needs a tail model",
                ));
            }
            let start_cells = if y.start_finite {
                0
            } else {
                tail_window(n, &y.start_tail.unwrap())
            };
            for i in 1..=n {
                if start_cells > 0 && i <= start_cells {
                    // the whole range sits inside the tail window
                    out[i] = full_interval_power_value(y.start_tail.unwrap(), kernel, i as f64 * h);
                    continue;
                }
                let mut acc = 0.0;
                let mut ok = true;
                for j in 0..i {
                    let k = i - j;
                    if j < start_cells {
                        // data tail C*tau^nu cell against exact kernel moments
                        let tail = y.start_tail.unwrap();
                        acc += tail_cell_against_kernel(tail, kernel, h, j as f64 * h, k as f64 * h);
                        continue;
                    }
                    let (yj, yjp) = (v[j], v[j + 1]);
                    if !yj.is_finite() || !yjp.is_finite() {
                        // singular far endpoint: combined power * kernel cell
                        let combined = if j + 1 == i && i == n && !y.end_finite {
                            y.end_tail.and_then(|t| kernel.tail_integral(t, 0.0, h).ok())
                        } else {
                            None
                        };
                        match combined {
                            Some(c) => {
                                acc += c;
                                continue;
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    let s = (yjp - yj) / h;
                    let a = k as f64 * h;
                    acc += yj * table.m0(k) + s * (a * table.m0(k) - table.m1(k));
                }
                out[i] = if ok { acc } else { f64::NAN };
            }
            out[0] = 0.0;
        }
        ConvSide::Right => {
            if !y.end_finite && y.end_tail.is_none() {
                return Err(Error::SingularEndpoint(
                    "right convolution of data singular at t=b needs a tail model",
                ));
            }
            let end_cells = if y.end_finite {
                0
            } else {
                tail_window(n, &y.end_tail.unwrap())
            };
            for i in 0..n {
                if end_cells > 0 && i >= n - end_cells {
                    out[i] =
                        full_interval_power_value(y.end_tail.unwrap(), kernel, (n - i) as f64 * h);
                    continue;
                }
                let mut acc = 0.0;
                let mut ok = true;
                for j in i..n {
                    let k = j + 1 - i;
                    if n - 1 - j < end_cells {
                        let tail = y.end_tail.unwrap();
                        acc += tail_cell_against_kernel_right(
                            tail,
                            kernel,
                            h,
                            (n - 1 - j) as f64 * h,
                            (j - i) as f64 * h,
                        );
                        continue;
                    }
                    let (yj, yjp) = (v[j], v[j + 1]);
                    if !yj.is_finite() || !yjp.is_finite() {
                        // mirrored combined cell at the very start
                        let combined = if j == i && i == 0 && !y.start_finite {
                            y.start_tail.and_then(|t| kernel.tail_integral(t, 0.0, h).ok())
                        } else {
                            None
                        };
                        match combined {
                            Some(c) => {
                                acc += c;
                                continue;
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    let s = (yjp - yj) / h;
                    acc += (yj - s * (k - 1) as f64 * h) * table.m0(k) + s * table.m1(k);
                }
                out[i] = if ok { acc } else { f64::NAN };
            }
            out[n] = 0.0;
        }
    }
    GridFunction::from_values_allow_interior_nan(y.b, out)
}

/// Sub-cells used when integrating tail-model data against a kernel whose
/// singular point lies at the opposite end: the data is sampled piecewise
/// linearly on this many sub-cells while the kernel moments stay exact.
const TAIL_SUBDIV: usize = 32;

/// int over [x_lo, x_hi] of c*x^e * k(u(x)) dx, where the kernel distance is
/// affine in x: u = u_at_lo - (x - x_lo) when `decreasing`, else
/// u = u_at_lo + (x - x_lo). Data piecewise linear on sub-cells, kernel
/// integrated exactly per sub-cell.
fn power_against_kernel_subdivided(
    c: f64,
    e: f64,
    kernel: Kernel,
    x_lo: f64,
    x_hi: f64,
    u_at_lo: f64,
    decreasing: bool,
) -> f64 {
    let m = TAIL_SUBDIV;
    let dx = (x_hi - x_lo) / m as f64;
    let mut acc = 0.0;
    let eval = |x: f64| if x == 0.0 && e < 0.0 { f64::INFINITY } else { c * x.powf(e) };
    for k in 0..m {
        let x0 = x_lo + k as f64 * dx;
        let x1 = x0 + dx;
        let f0 = eval(x0);
        let f1 = eval(x1);
        if !f0.is_finite() {
            // data blows up at x0: exact power mass times the kernel at the
            // sub-cell's midpoint distance (kernel smooth away from u = 0)
            let mass = c * (x1.powf(e + 1.0) - x0.powf(e + 1.0)) / (e + 1.0);
            let u_mid = if decreasing {
                u_at_lo - (x0 - x_lo) - 0.5 * dx
            } else {
                u_at_lo + (x0 - x_lo) + 0.5 * dx
            };
            acc += mass * kernel.eval(u_mid);
            continue;
        }
        if decreasing {
            let u0 = u_at_lo - (x0 - x_lo);
            let u1 = u0 - dx;
            let m0 = kernel.anti1(u0) - kernel.anti1(u1);
            let m1 = kernel.anti2(u0) - kernel.anti2(u1);
            let slope = (f1 - f0) / (u0 - u1);
            acc += f0 * m0 + slope * (u0 * m0 - m1);
        } else {
            let u0 = u_at_lo + (x0 - x_lo);
            let u1 = u0 + dx;
            let m0 = kernel.anti1(u1) - kernel.anti1(u0);
            let m1 = kernel.anti2(u1) - kernel.anti2(u0);
            let slope = (f1 - f0) / (u1 - u0);
            acc += f0 * m0 + slope * (m1 - u0 * m0);
        }
    }
    acc
}

/// int over the cell [t_lo, t_lo+h] of C*tau^nu * k(dist), kernel distance
/// u_hi at tau = t_lo and decreasing across the cell.
fn tail_cell_against_kernel(tail: PowerTail, kernel: Kernel, h: f64, t_lo: f64, u_hi: f64) -> f64 {
    power_against_kernel_subdivided(tail.coeff, tail.exponent, kernel, t_lo, t_lo + h, u_hi, true)
}

/// Mirror: data tail measured from b, cell at distance-from-b [v_lo, v_lo+h],
/// kernel distance u_lo at the cell's small-u edge (v = v_hi side).
fn tail_cell_against_kernel_right(
    tail: PowerTail,
    kernel: Kernel,
    h: f64,
    v_lo: f64,
    u_lo: f64,
) -> f64 {
    // integrate in the v coordinate; u = u_lo + (v_hi - v) grows as v drops
    power_against_kernel_subdivided(
        tail.coeff,
        tail.exponent,
        kernel,
        v_lo,
        v_lo + h,
        u_lo + h,
        true,
    )
}

/// int_0^t of the tail power C*x^nu against the kernel over the whole range
/// (valid when [0, t] lies inside the tail window): exact Beta value for the
/// plain Abel kernel, subdivided quadrature for the log kernel.
fn full_interval_power_value(tail: PowerTail, kernel: Kernel, t: f64) -> f64 {
    let nu = tail.exponent;
    if !kernel.log {
        let p = kernel.p;
        let beta = gamma_fn(nu + 1.0)
            .and_then(|g1| Ok(g1 * gamma_fn(1.0 - p)? / gamma_fn(nu + 2.0 - p)?))
            .unwrap_or(f64::NAN);
        tail.coeff * beta * t.powf(nu + 1.0 - p)
    } else {
        power_against_kernel_subdivided(tail.coeff, nu, kernel, 0.0, t, t, true)
    }
}

/// Same for derivative data C*q*x^{q-1} of the tail power C*x^q.
fn full_interval_power_deriv(tail: PowerTail, kernel: Kernel, t: f64) -> f64 {
    let q = tail.exponent;
    if !kernel.log {
        let p = kernel.p;
        let beta = gamma_fn(q)
            .and_then(|g1| Ok(g1 * gamma_fn(1.0 - p)? / gamma_fn(q + 1.0 - p)?))
            .unwrap_or(f64::NAN);
        tail.coeff * q * beta * t.powf(q - p)
    } else {
        power_against_kernel_subdivided(tail.coeff * q, q - 1.0, kernel, 0.0, t, t, true)
    }
}

impl GridFunction {
    /// Like `from_values` but interior NaN marks nodes where a convolution
    /// could not be evaluated; they are excluded from norms.
    pub(crate) fn from_values_allow_interior_nan(b: f64, values: Vec<f64>) -> Result<Self> {
        if !(b > 0.0) || values.len() < 3 {
            return Err(Error::Domain("bad grid"));
        }
        let start_finite = values[0].is_finite();
        let end_finite = values[values.len() - 1].is_finite();
        Ok(GridFunction { b, values, start_finite, end_finite, start_tail: None, end_tail: None })
    }
}

/// Derivative-implied product convolution (L1 style): the data's derivative is
/// taken piecewise constant from value differences and integrated exactly
/// against the kernel. Left gives int_0^t y'(tau) k(t-tau) dtau; right gives
/// int_t^b (-y'(tau)) k(tau-t) dtau.
pub(crate) fn convolve_deriv(
    y: &GridFunction,
    kernel: Kernel,
    side: ConvSide,
) -> Result<GridFunction> {
    let n = y.n_intervals();
    let h = y.h();
    let table = MomentTable::build(kernel, h, n);
    let v = &y.values;
    let mut out = vec![0.0; n + 1];

    match side {
        ConvSide::Left => {
            if !y.start_finite {
                return Err(Error::SingularEndpoint(
                    "derivative convolution requires a finite sample at t=0",
                ));
            }
            // cells near t=0 refined with the data tail when one is attached;
            // only meaningful when the tail's derivative is integrable there
            let refine = y
                .start_tail
                .filter(|t| t.exponent > 0.0)
                .map(|t| (t, tail_window(n, &t)));
            for i in 1..=n {
                if let Some((tail, w)) = refine {
                    if i <= w {
                        out[i] = full_interval_power_deriv(tail, kernel, i as f64 * h);
                        continue;
                    }
                }
                let mut acc = 0.0;
                let mut ok = true;
                for j in 0..i {
                    let k = i - j;
                    if let Some((tail, w)) = refine {
                        if j < w && k <= NEAR_KERNEL_CELLS {
                            acc += power_against_kernel_subdivided(
                                tail.coeff * tail.exponent,
                                tail.exponent - 1.0,
                                kernel,
                                j as f64 * h,
                                (j + 1) as f64 * h,
                                k as f64 * h,
                                true,
                            );
                            continue;
                        }
                    }
                    let (yj, yjp) = (v[j], v[j + 1]);
                    if !yj.is_finite() || !yjp.is_finite() {
                        ok = false;
                        break;
                    }
                    acc += (yjp - yj) / h * table.m0(k);
                }
                out[i] = if ok { acc } else { f64::NAN };
            }
            out[0] = 0.0;
        }
        ConvSide::Right => {
            if !y.end_finite {
                return Err(Error::SingularEndpoint(
                    "derivative convolution requires a finite sample at t=b",
                ));
            }
            let refine = y
                .end_tail
                .filter(|t| t.exponent > 0.0)
                .map(|t| (t, tail_window(n, &t)));
            for i in 0..n {
                if let Some((tail, w)) = refine {
                    if i >= n - w {
                        out[i] = full_interval_power_deriv(tail, kernel, (n - i) as f64 * h);
                        continue;
                    }
                }
                let mut acc = 0.0;
                let mut ok = true;
                for j in i..n {
                    let k = j + 1 - i;
                    if let Some((tail, w)) = refine {
                        if n - 1 - j < w && k <= NEAR_KERNEL_CELLS {
                            // -y' = C q v^{q-1} in the distance-from-b coordinate
                            acc += power_against_kernel_subdivided(
                                tail.coeff * tail.exponent,
                                tail.exponent - 1.0,
                                kernel,
                                (n - 1 - j) as f64 * h,
                                (n - j) as f64 * h,
                                k as f64 * h,
                                true,
                            );
                            continue;
                        }
                    }
                    let (yj, yjp) = (v[j], v[j + 1]);
                    if !yj.is_finite() || !yjp.is_finite() {
                        ok = false;
                        break;
                    }
                    acc += -(yjp - yj) / h * table.m0(k);
                }
                out[i] = if ok { acc } else { f64::NAN };
            }
            out[n] = 0.0;
        }
    }
    GridFunction::from_values_allow_interior_nan(y.b, out)
}

/// Abel convolution: t |-> int y(tau) (t-tau)^{-alpha} dtau (left) or
/// int y(tau) (tau-t)^{-alpha} dtau (right), alpha in [0, 1).
pub fn abel_convolution(y: &GridFunction, alpha: f64, side: ConvSide) -> Result<GridFunction> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::OrderOutOfRange { alpha, context: "abel_convolution" });
    }
    convolve_values(y, Kernel::abel(alpha)?, side)
}

/// Integral of the grid data against the rule's kernel over [0, b].
///
/// Trapezoid refuses flagged singular endpoints unless a tail model is
/// attached; product rules put the kernel singularity at t = b and absorb a
/// flagged data singularity there through the tail model.
pub fn integrate(y: &GridFunction, rule: &QuadratureRule) -> Result<f64> {
    let n = y.n_intervals();
    let h = y.h();
    let v = &y.values;
    match rule {
        QuadratureRule::Trapezoid => {
            let left_cells = if y.start_finite {
                0
            } else {
                match y.start_tail {
                    Some(t) => tail_window(n, &t),
                    None => {
                        return Err(Error::SingularEndpoint(
                            "trapezoid cannot integrate a flagged endpoint without a tail",
                        ))
                    }
                }
            };
            let right_cells = if y.end_finite {
                0
            } else {
                match y.end_tail {
                    Some(t) => tail_window(n, &t),
                    None => {
                        return Err(Error::SingularEndpoint(
                            "trapezoid cannot integrate a flagged endpoint without a tail",
                        ))
                    }
                }
            };
            let mut acc = 0.0;
            if left_cells > 0 {
                let tail = y.start_tail.unwrap();
                let q = 1.0 + tail.exponent;
                if !(q > 0.0) {
                    return Err(Error::NonIntegrable { exponent: -tail.exponent });
                }
                acc += tail.coeff * (left_cells as f64 * h).powf(q) / q;
            }
            if right_cells > 0 {
                let tail = y.end_tail.unwrap();
                let q = 1.0 + tail.exponent;
                if !(q > 0.0) {
                    return Err(Error::NonIntegrable { exponent: -tail.exponent });
                }
                acc += tail.coeff * (right_cells as f64 * h).powf(q) / q;
            }
            for j in left_cells..(n - right_cells) {
                acc += 0.5 * h * (v[j] + v[j + 1]);
            }
            Ok(acc)
        }
        QuadratureRule::ProductAbel { exponent } => {
            integrate_against_kernel(y, Kernel::abel(*exponent)?)
        }
        QuadratureRule::ProductLog => integrate_against_kernel(y, Kernel::abel_log(0.0)?),
        QuadratureRule::ProductAbelLog { exponent } => {
            integrate_against_kernel(y, Kernel::abel_log(*exponent)?)
        }
    }
}

fn integrate_against_kernel(y: &GridFunction, kernel: Kernel) -> Result<f64> {
    let n = y.n_intervals();
    let h = y.h();
    let v = &y.values;
    let start_cells = if y.start_finite {
        0
    } else {
        match y.start_tail {
            Some(t) => tail_window(n, &t),
            None => {
                return Err(Error::SingularEndpoint(
                    "flagged endpoint under a product rule needs a tail model",
                ))
            }
        }
    };
    // exact end tails are used even when the endpoint sample is finite: the
    // combined power-kernel moment is closed-form there
    let end_cells = match (y.end_finite, y.end_tail) {
        (false, Some(t)) | (true, Some(t)) if !y.end_finite || t.exact => tail_window(n, &t),
        (false, None) => {
            return Err(Error::SingularEndpoint(
                "flagged endpoint under a product rule needs a tail model",
            ))
        }
        _ => 0,
    };
    let table = MomentTable::build(kernel, h, n);
    let mut acc = 0.0;
    if end_cells > 0 {
        let tail = y.end_tail.unwrap();
        acc += kernel.tail_integral(tail, 0.0, end_cells as f64 * h)?;
    }
    for j in 0..start_cells.min(n - end_cells) {
        // data tail at t=0 against the (smooth there) kernel at distance b-t
        let tail = y.start_tail.unwrap();
        acc += tail_cell_against_kernel(tail, kernel, h, j as f64 * h, (n - j) as f64 * h);
    }
    for j in start_cells..(n - end_cells) {
        let k = n - j;
        let s = (v[j + 1] - v[j]) / h;
        acc += (v[j] + s * k as f64 * h) * table.m0(k) - s * table.m1(k);
    }
    Ok(acc)
}

/// Fit a power tail C*u^{-p} at a flagged endpoint from the two closest finite
/// samples; exact when the data really is a pure power there. Returns None
/// when the samples do not blow up toward the endpoint.
pub fn fit_power_tail(y: &GridFunction, side: ConvSide) -> Option<PowerTail> {
    let n = y.n_intervals();
    let h = y.h();
    let (v1, v2) = match side {
        ConvSide::Right => (y.values[n - 1], y.values[n - 2]),
        ConvSide::Left => (y.values[1], y.values[2]),
    };
    if !v1.is_finite() || !v2.is_finite() || v1 == 0.0 || v2 == 0.0 {
        return None;
    }
    if v1.signum() != v2.signum() || v1.abs() <= v2.abs() {
        return None;
    }
    let p = (v1.abs() / v2.abs()).ln() / std::f64::consts::LN_2;
    let coeff = v1 * h.powf(p);
    Some(PowerTail { coeff, exponent: -p, exact: false })
}
