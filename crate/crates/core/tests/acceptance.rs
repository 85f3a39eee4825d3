//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured quantities. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use fracvar::*;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn ord(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

#[test]
fn criterion_01_power_law_derivative() {
    // numeric left derivative of t^{0.7} at order 0.3 against the exact
    // power formula, relative sup on [0.05, 1]; halves or better at 2n.
    let coef = gamma_fn(1.7).unwrap() / gamma_fn(1.4).unwrap();
    let a = ord(0.3);
    let rel_sup = |n: usize| {
        let y = PowerPath::from_left(1.0, 0.7).unwrap().sample(1.0, n).unwrap();
        let d = rl_left(&y, &a, 0.0).unwrap();
        let mut rel = 0.0_f64;
        for i in 0..=n {
            let t = d.node(i);
            if t >= 0.05 {
                let want = coef * t.powf(0.4);
                rel = rel.max(((d.value(i) - want) / want).abs());
            }
        }
        rel
    };
    let e1 = rel_sup(2048);
    let e2 = rel_sup(4096);
    let pass = e1 <= 0.01 && e1 / e2 >= 2.0;
    report(
        "1",
        pass,
        &format!("rel sup {e1:.3e} at n=2048 (tol 1e-2); refinement ratio {:.2} (>= 2)", e1 / e2),
    );
}

#[test]
fn criterion_02_rl_caputo_boundary_term() {
    // rl - caputo on y = 1 + t^2 equals 1/(Gamma(1/2) sqrt(t)), rel 1e-4
    let n = 2048;
    let y = GridFunction::sample(1.0, n, |t| 1.0 + t * t).unwrap();
    let a = ord(0.5);
    let r = rl_left(&y, &a, 1.0).unwrap();
    let c = caputo_left(&y, &a).unwrap();
    let g = gamma_fn(0.5).unwrap();
    let mut worst = 0.0_f64;
    for i in 0..=n {
        let t = r.node(i);
        if t >= 0.1 {
            let want = 1.0 / (g * t.sqrt());
            worst = worst.max(((r.value(i) - c.value(i) - want) / want).abs());
        }
    }
    report("2", worst <= 1e-4, &format!("worst relative deviation {worst:.3e} (tol 1e-4)"));
}

#[test]
fn criterion_03_classical_limit() {
    // distance of D^a sin to cos on [0.05, 1] strictly decreasing over
    // {0.9, 0.95, 0.99} and below 0.05 at 0.99
    let n = 2048;
    let y = GridFunction::sample(1.0, n, |t| t.sin()).unwrap();
    let mut dists = Vec::new();
    for al in [0.9, 0.95, 0.99] {
        let d = rl_left(&y, &ord(al), 0.0).unwrap();
        dists.push(d.sup_error_on(0.05, 1.0, |t| t.cos()));
    }
    let pass = dists[0] > dists[1] && dists[1] > dists[2] && dists[2] < 0.05;
    report(
        "3",
        pass,
        &format!("distances {:.4}, {:.4}, {:.4} (strictly decreasing, last < 0.05)", dists[0], dists[1], dists[2]),
    );
}

#[test]
fn criterion_04_sensitivity_kernel_vs_fd() {
    // order-sensitivity formula vs central alpha finite difference (1e-4)
    let n = 2048;
    let y = GridFunction::sample(1.0, n, |t| t * t).unwrap();
    let mut worst = 0.0_f64;
    for al in [0.2, 0.5, 0.8] {
        let s = dalpha_rl(&y, &ord(al)).unwrap();
        let eps = 1e-4;
        let hi = rl_left(&y, &ord(al + eps), 0.0).unwrap();
        let lo = rl_left(&y, &ord(al - eps), 0.0).unwrap();
        for i in 0..=n {
            let t = y.node(i);
            if t >= 0.1 {
                let fd = (hi.value(i) - lo.value(i)) / (2.0 * eps);
                worst = worst.max((s.field.value(i) - fd).abs());
            }
        }
    }
    report("4", worst <= 1e-3, &format!("worst |formula - fd| = {worst:.3e} (tol 1e-3)"));
}

#[test]
fn criterion_05_limit_formulas_vs_fd() {
    // closed-form limits at 0+ and 1- vs one-sided finite differences
    let n = 2048;
    let y = GridFunction::sample(1.0, n, |t| t * t).unwrap();
    let h = 1e-3;
    let zero = dalpha_at_zero(&y, 0.0).unwrap();
    let d_small = rl_left(&y, &ord(h), 0.0).unwrap();
    let mut worst0 = 0.0_f64;
    for i in 0..=n {
        let t = y.node(i);
        if t >= 0.1 {
            let fd = (d_small.value(i) - y.value(i)) / h;
            worst0 = worst0.max((zero.field.value(i) - fd).abs());
        }
    }
    let one = dalpha_at_one(&y, 0.0, 0.0).unwrap();
    let d1 = derivative(&y).unwrap();
    let d_near = rl_left(&y, &ord(1.0 - h), 0.0).unwrap();
    let mut worst1 = 0.0_f64;
    for i in 0..=n {
        let t = y.node(i);
        if t >= 0.1 {
            let fd = (d1.value(i) - d_near.value(i)) / h;
            worst1 = worst1.max((one.field.value(i) - fd).abs());
        }
    }
    let pass = worst0 <= 5e-3 && worst1 <= 5e-3;
    report(
        "5",
        pass,
        &format!("limit at 0+: {worst0:.3e}; limit at 1-: {worst1:.3e} (tol 5e-3 each)"),
    );
}

#[test]
fn criterion_06_integration_by_parts() {
    // defect at n = 2048 below 1e-3 and non-increasing under refinement
    // (the discrete operators are exactly adjoint, so the defect sits at
    // rounding level and cannot strictly decrease below that floor)
    let a = ord(0.4);
    let mut defects = Vec::new();
    for n in [1024usize, 2048, 4096] {
        let f = GridFunction::sample(1.0, n, |t| t * (1.0 - t)).unwrap();
        let g = GridFunction::sample(1.0, n, |t| 1.0 - t).unwrap();
        defects.push(int_by_parts_defect(&f, &g, &a).unwrap().abs());
    }
    let floor = 1e-12;
    let pass = defects[1] <= 1e-3
        && ((defects[0] >= defects[1] && defects[1] >= defects[2])
            || defects.iter().all(|d| *d <= floor));
    report(
        "6",
        pass,
        &format!(
            "defects {:.2e} / {:.2e} / {:.2e} at n = 1024/2048/4096 (tol 1e-3; at rounding floor)",
            defects[0], defects[1], defects[2]
        ),
    );
}

#[test]
fn criterion_07_constraint_action_column() {
    let s = ExampleScenario::new(ScenarioId::Ex3PrimaryConstraint);
    let r = run_example(&s, 2048).unwrap();
    let closed = [0.5, 0.625, 5.0 / 6.0, 1.25, 2.5];
    let mut worst = 0.0_f64;
    for (row, want) in r.rows.iter().zip(closed) {
        worst = worst.max(((row.action - want) / want).abs());
    }
    let at_zero = (r.rows[0].action - 0.5).abs();
    let increasing = r.rows.windows(2).all(|w| w[1].action > w[0].action);
    let argmin_ok = r.rows.iter().all(|row| row.action >= r.rows[0].action)
        && r.rows.iter().all(|row| row.action <= r.rows[r.rows.len() - 1].action);
    let pass = worst <= 0.01 && at_zero <= 1e-10 && increasing && argmin_ok;
    report(
        "7",
        pass,
        &format!(
            "worst rel vs 1/(2(1-2a)) = {worst:.3e} (tol 1e-2); |I(0) - 1/2| = {at_zero:.2e}; strictly increasing = {increasing}"
        ),
    );
}

#[test]
fn criterion_08_constant_force_example() {
    let s = ExampleScenario::new(ScenarioId::Ex2ConstantForce);
    let r = run_example(&s, 2048).unwrap();
    let cross = r
        .claims
        .iter()
        .find(|c| c.claim.contains("series and quadrature"))
        .unwrap();
    let eom = r.claims.iter().find(|c| c.claim.contains("constant-force equation")).unwrap();
    let increasing = r.rows.windows(2).all(|w| w[1].action > w[0].action);
    let pass = cross.measured <= 1e-3 && eom.measured <= 5e-2 && increasing;
    report(
        "8",
        pass,
        &format!(
            "series-vs-quadrature sup {:.3e} (tol 1e-3); equation residual {:.3e} (tol 5e-2); I[alpha] strictly increasing = {increasing}",
            cross.measured, eom.measured
        ),
    );
}

#[test]
fn criterion_09_no_root_for_quadratic_force() {
    let s = ExampleScenario::new(ScenarioId::Ex4aQuadratic);
    let r = run_example(&s, 2048).unwrap();
    let min_cond = r
        .claims
        .iter()
        .find(|c| c.claim.contains("no root"))
        .unwrap();
    let agree = r.claims.iter().find(|c| c.claim.contains("closed form")).unwrap();
    let pass = min_cond.measured > 0.0 && agree.status == ClaimStatus::Pass;
    report(
        "9",
        pass,
        &format!(
            "min sampled displayed condition {:.4} > 0 over 20 points; closed-form gap {:.2e}",
            min_cond.measured, agree.measured
        ),
    );
}

#[test]
fn criterion_10_log_force_roots() {
    let s = ExampleScenario::new(ScenarioId::Ex4bLog);
    let r = run_example(&s, 2048).unwrap();
    let root1 = r.claims.iter().find(|c| c.claim.contains("displayed condition")).unwrap();
    let cond1 = r.claims.iter().find(|c| c.claim.contains("|condition| at the displayed")).unwrap();
    let root2 = r.claims.iter().find(|c| c.claim.contains("psi(a-1) = 1")).unwrap();
    let flagged = r.claims.iter().any(|c| c.status == ClaimStatus::Contested);
    let pass = cond1.measured <= 1e-10
        && (root1.measured - 0.21499667462547933).abs() <= 1e-6
        && (root2.measured - 0.604).abs() <= 1e-3
        && flagged;
    report(
        "10",
        pass,
        &format!(
            "first root {:.7} (|condition| {:.2e}); quoted root {:.4} (0.604 +- 1e-3); discrepancy flagged = {flagged}",
            root1.measured, cond1.measured, root2.measured
        ),
    );
}

#[test]
fn criterion_11_total_derivative_identity() {
    // dI/dalpha on the constraint family vs the finite difference of I[alpha]
    let c = 1.0;
    let n = 2048;
    let alpha0 = 0.45;
    let spec = constraint_spec(c, alpha0);
    let family =
        |a: f64| -> Result<GridFunction> { PowerPath::from_right(1.0 / c, -a)?.sample(1.0, n) };
    let mut worst = 0.0_f64;
    for a in [0.1, 0.2, 0.3] {
        let order = FractionalOrder::with_max(a, alpha0).unwrap();
        let lhs = di_dalpha(family, &order, &spec).unwrap();
        let eps = 1e-3;
        let act = |al: f64| {
            action(&family(al).unwrap(), &FractionalOrder::with_max(al, alpha0).unwrap(), &spec)
                .unwrap()
        };
        let fd = (act(a + eps) - act(a - eps)) / (2.0 * eps);
        worst = worst.max(((lhs - fd) / fd).abs());
    }
    report("11", worst <= 0.02, &format!("worst relative gap {worst:.3e} (tol 2e-2)"));
}

fn constraint_spec(c: f64, alpha0: f64) -> LagrangianSpec {
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

#[test]
fn criterion_12_weighted_action() {
    let c = 1.0;
    let alpha0 = 0.45;
    let spec = constraint_spec(c, alpha0);
    let order = FractionalOrder::with_max(0.25, alpha0).unwrap();
    let y = PowerPath::from_right(1.0, -0.25).unwrap().sample(1.0, 2048).unwrap();
    let plain = action(&y, &order, &spec).unwrap();
    let b1 = beta_action(&y, &order, 1.0, &spec).unwrap();
    let rel = ((b1 - plain) / plain).abs();

    let unit = LagrangianSpec::new(
        |_t, _y, _d, _a| 1.0,
        |_t, _y, _d, _a| 0.0,
        |_t, _y, _d, _a| 0.0,
        |_t, _y, _d, _a| 0.0,
    );
    let flat = GridFunction::constant(1.0, 256, 0.0).unwrap();
    let mut worst_unit = 0.0_f64;
    for beta in [0.75, 1.5] {
        let got = beta_action(&flat, &order, beta, &unit).unwrap();
        let want = 1.0 / gamma_fn(beta + 1.0).unwrap();
        worst_unit = worst_unit.max((got - want).abs());
    }
    let pass = rel <= 1e-12 && worst_unit <= 1e-6;
    report(
        "12",
        pass,
        &format!("beta=1 relative gap {rel:.2e} (tol 1e-12); unit-Lagrangian gap {worst_unit:.2e} (tol 1e-6)"),
    );
}

#[test]
fn criterion_13_joint_minimization_recovers_penalty_target() {
    // The joint search over (coefficients, alpha) for
    // L = (D^a y)^2 + (a - 0.3)^2 on the regularized setup is asserted to
    // return alpha* within 0.02 of 0.3. The assertion fails, and the failure
    // is mathematical, not numerical: the derivative of t^{1-a} is not the
    // zero path (the annihilated power is t^{a-1}, which is inadmissible),
    // so the squared-derivative term grows steeply in alpha on every finite
    // path space and drags the minimizer toward low orders. The search lands
    // at the true discrete minimum.
    let s = ExampleScenario::new(ScenarioId::Ex1Regularized);
    let r = run_example(&s, 1024).unwrap();
    let a_star = r.alpha_star.unwrap();
    let found = r
        .claims
        .iter()
        .find(|c| c.claim.contains("minimized action"))
        .map(|c| c.measured)
        .unwrap_or(f64::NAN);
    let asserted = r
        .claims
        .iter()
        .find(|c| c.claim.contains("asserted minimizing"))
        .map(|c| c.measured)
        .unwrap_or(f64::NAN);
    report(
        "13",
        (a_star - 0.3).abs() <= 0.02,
        &format!(
            "joint minimizer at alpha* = {a_star:.3} with action {found:.4}, below the \
             asserted pair's action {asserted:.4}; the penalty target 0.3 is not recovered \
             because the claimed zero-derivative family t^{{1-a}} has a nonzero derivative"
        ),
    );
}
