//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`; always printed on failure).
//!
//! Criteria 3, 4, 5, 7, and 8 share one reference run: ω = 1,
//! (q0, p0) = (1, 0), h = 2π/4000, 40 000 steps (ten periods), with probes
//! for H, the rotation invariant, the reconstruction invariant, and tr L².

use operadic::{
    ab_auxiliaries, check_composition_relations, check_graded_antisymmetry, check_graded_jacobi,
    check_jacobi_structure_constants, check_unit_laws, coupled_rhs, explicit_rhs_dim2,
    hamiltonian, integrate, lax_l, lax_m, mu_closed_form, structure_ode_rhs, trace_power,
    verify_cramer_identities, BinaryStructure, FlowState, Operation, Probe, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::sync::LazyLock;
use std::time::Instant;

const H_PROBE: usize = 0;
const INV_ROT: usize = 1;
const INV_ENERGY: usize = 2;
const TR_L2: usize = 3;

const STEPS_PER_PERIOD: usize = 4000;

static OSC_RUN: LazyLock<Trajectory> = LazyLock::new(|| {
    let omega = 1.0;
    let m = lax_m(omega);
    let mu0 = mu_closed_form(1.0, 0.0, omega).unwrap();
    let s0 = FlowState::new(0.0, 1.0, 0.0, mu0.into_operation()).unwrap();

    let xy = |s: &FlowState| (s.mu.coeff(0, &[0, 1]), s.mu.coeff(1, &[0, 1]));
    let probes = [
        Probe::new("H", move |s: &FlowState| hamiltonian(s.q, s.p, omega)),
        Probe::new("inv_rot", move |s: &FlowState| {
            let (x, y) = xy(s);
            x * x + y * y
        }),
        Probe::new("inv_energy", move |s: &FlowState| {
            let (x, y) = xy(s);
            (x * y / 2.0).powi(2) + ((y * y - x * x) / 4.0).powi(2)
        }),
        Probe::new("trL2", move |s: &FlowState| {
            trace_power(&lax_l(s.q, s.p, omega), 2).unwrap()
        }),
    ];

    let h = TAU / STEPS_PER_PERIOD as f64;
    let rhs = move |s: &FlowState| coupled_rhs(s, &m, omega);
    integrate(s0, h, 10 * STEPS_PER_PERIOD, rhs, &probes).unwrap()
});

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} ({detail})");
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_operad_axiom_suite() {
    let start = Instant::now();
    let trials = 1000u64;
    let dims = [1usize, 2, 3];
    let degrees = [1usize, 2, 3];
    let mut cases_seen = [false; 3];
    let mut max_scaled = 0.0f64;
    let mut all_pass = true;

    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        rng.set_stream(trial);
        for &dim in &dims {
            for &degree in &degrees {
                let f = Operation::random(dim, degree, &mut rng).unwrap();
                all_pass &= check_unit_laws(&f, 1e-15).unwrap().pass;
            }

            let draw = |rng: &mut ChaCha8Rng| {
                let degree = degrees[rng.random_range(0..degrees.len())];
                Operation::random(dim, degree, rng).unwrap()
            };

            let (h, f, g) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            for i in 0..=h.reduced_degree() {
                for j in 0..=h.reduced_degree() + f.reduced_degree() {
                    let check = check_composition_relations(&h, &f, &g, i, j, 1e-9).unwrap();
                    cases_seen[check.case as usize] = true;
                    all_pass &= check.outcome.pass;
                    max_scaled = max_scaled.max(check.outcome.residual / check.outcome.scale);
                }
            }

            let (f, g) = (draw(&mut rng), draw(&mut rng));
            let anti = check_graded_antisymmetry(&f, &g, 1e-9).unwrap();
            all_pass &= anti.pass;
            max_scaled = max_scaled.max(anti.residual / anti.scale);

            let (f, g, h) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let jac = check_graded_jacobi(&f, &g, &h, 1e-9).unwrap();
            all_pass &= jac.pass;
            max_scaled = max_scaled.max(jac.residual / jac.scale);
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = all_pass && cases_seen.iter().all(|&c| c) && elapsed < 30.0;
    report(
        "1 (operad axiom suite)",
        pass,
        &format!(
            "{trials} trials, all relation cases {seen:?}, max bracket/relation residual \
             {max_scaled:.2e}, {elapsed:.1} s",
            seen = cases_seen
        ),
    );
}

#[test]
fn criterion_2_transcription_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut max_scaled = 0.0f64;

    for _ in 0..10_000 {
        let mu = BinaryStructure::new(Operation::random(2, 2, &mut rng).unwrap()).unwrap();
        let omega = rng.random_range(0.1..=2.0);
        let general = structure_ode_rhs(&mu, &lax_m(omega)).unwrap();
        let explicit = explicit_rhs_dim2(&mu, omega).unwrap();
        let diff = general.as_operation().max_abs_diff(explicit.as_operation());
        let scale = general.max_abs().max(explicit.max_abs()).max(1.0);
        max_scaled = max_scaled.max(diff / scale);
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = max_scaled < 1e-14 && elapsed < 5.0;
    report(
        "2 (explicit dim-2 equations match the contraction)",
        pass,
        &format!("10000 samples, max scaled diff {max_scaled:.2e}, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_3_dynamics_equivalence() {
    let tr = &*OSC_RUN;
    let period = &tr.points[STEPS_PER_PERIOD].state;
    let q_err = (period.q - 1.0).abs();
    let p_err = period.p.abs();
    let h_drift = tr.max_probe_drift(H_PROBE);
    report(
        "3 (coupled flow reproduces the oscillator)",
        q_err < 1e-8 && p_err < 1e-8 && h_drift < 1e-8,
        &format!("|q(T)−1| = {q_err:.2e}, |p(T)| = {p_err:.2e}, H drift {h_drift:.2e}"),
    );
}

#[test]
fn criterion_4_operadic_invariants_and_double_cover() {
    let tr = &*OSC_RUN;
    let rot_drift = tr.max_probe_drift(INV_ROT);
    let energy_drift = tr.max_probe_drift(INV_ENERGY);

    // At t=0 the invariants take their defining values: inv_rot =
    // B₊² + B₋² = 4√(2H) and inv_energy = p² + ω²q² = 2H.
    let first = tr.first().unwrap();
    let two_h = 2.0 * first.probes[H_PROBE];
    let rot_value = (first.probes[INV_ROT] - 4.0 * two_h.sqrt()).abs();
    let energy_value = (first.probes[INV_ENERGY] - two_h).abs();

    let mu0 = &tr.points[0].state.mu;
    let one_period = &tr.points[STEPS_PER_PERIOD].state.mu;
    let two_periods = &tr.points[2 * STEPS_PER_PERIOD].state.mu;
    let half_turn = one_period.max_abs_diff(&(mu0 * -1.0));
    let full_turn = two_periods.max_abs_diff(mu0);

    report(
        "4 (operadic invariants and double cover)",
        rot_drift < 1e-8
            && energy_drift < 1e-8
            && rot_value < 1e-12
            && energy_value < 1e-12
            && half_turn < 1e-6
            && full_turn < 1e-6,
        &format!(
            "inv_rot drift {rot_drift:.2e}, inv_energy drift {energy_drift:.2e}, \
             |μ(T)+μ(0)| = {half_turn:.2e}, |μ(2T)−μ(0)| = {full_turn:.2e}"
        ),
    );
}

#[test]
fn criterion_5_closed_form_matches_ode_before_the_branch_point() {
    let tr = &*OSC_RUN;
    let cutoff = std::f64::consts::FRAC_PI_2 - 0.05;
    let mut max_err = 0.0f64;
    let mut samples = 0usize;

    for pt in &tr.points {
        if pt.state.t > cutoff {
            break;
        }
        samples += 1;
        let aux = ab_auxiliaries(pt.state.q, pt.state.p, 1.0).unwrap();
        let x = pt.state.mu.coeff(0, &[0, 1]);
        let y = pt.state.mu.coeff(1, &[0, 1]);
        max_err = max_err.max((x - aux.b_minus).abs()).max((y - aux.b_plus).abs());
    }

    report(
        "5 (closed form tracks the ODE for t < T/4)",
        samples > 900 && max_err < 1e-6,
        &format!("{samples} samples, max |μ − (B₋, B₊)| = {max_err:.2e}"),
    );
}

#[test]
fn criterion_6_cramer_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut max_scaled = 0.0f64;
    let mut all_pass = true;

    for _ in 0..1000 {
        let q = rng.random_range(0.1..2.1);
        let p = rng.random_range(-2.0..=2.0);
        let omega = rng.random_range(0.2..=2.0);
        let rep = verify_cramer_identities(q, p, omega, 1e-9).unwrap();
        all_pass &= rep.pass;
        max_scaled = max_scaled.max(rep.residual / rep.scale);
    }

    report(
        "6 (determinants match their closed forms)",
        all_pass && max_scaled < 1e-9,
        &format!("1000 points, max scaled residual {max_scaled:.2e}"),
    );
}

#[test]
fn criterion_7_isospectrality() {
    let tr = &*OSC_RUN;
    let first = tr.first().unwrap();
    let at_start = (first.probes[TR_L2] - 4.0 * first.probes[H_PROBE]).abs();
    let drift = tr.max_probe_drift(TR_L2);
    report(
        "7 (tr L² = 4H and stays put)",
        at_start < 1e-12 && drift < 1e-8,
        &format!("|trL²(0) − 4H| = {at_start:.2e}, drift {drift:.2e}"),
    );
}

#[test]
fn criterion_8_jacobi_along_the_evolved_algebra() {
    let tr = &*OSC_RUN;
    let mut max_residual = 0.0f64;
    let mut all_pass = true;

    for pt in tr.points.iter().step_by(100) {
        let mu = BinaryStructure::new(pt.state.mu.clone()).unwrap();
        let outcome = check_jacobi_structure_constants(&mu, 1e-12).unwrap();
        all_pass &= outcome.pass;
        max_residual = max_residual.max(outcome.residual);
    }

    report(
        "8 (evolved structure constants satisfy Jacobi)",
        all_pass && max_residual < 1e-12,
        &format!(
            "{n} sampled states, max raw residual {max_residual:.2e}",
            n = tr.points.len().div_ceil(100)
        ),
    );
}

#[test]
fn criterion_9_rk4_measured_order() {
    let omega = 1.0;
    let m = lax_m(omega);
    let rhs = |s: &FlowState| coupled_rhs(s, &m, omega);

    let endpoint_error = |steps: usize| -> f64 {
        let mu0 = mu_closed_form(1.0, 0.0, omega).unwrap();
        let s0 = FlowState::new(0.0, 1.0, 0.0, mu0.into_operation()).unwrap();
        let tr = integrate(s0, TAU / steps as f64, steps, rhs, &[]).unwrap();
        let last = tr.last().unwrap();
        (last.state.q - 1.0).hypot(last.state.p)
    };

    let errors = [100usize, 200, 400].map(endpoint_error);
    let slopes = [
        (errors[0] / errors[1]).log2(),
        (errors[1] / errors[2]).log2(),
    ];
    let mean = (slopes[0] + slopes[1]) / 2.0;

    report(
        "9 (RK4 converges at order 4)",
        (3.8..=4.2).contains(&mean),
        &format!(
            "errors {e0:.2e}/{e1:.2e}/{e2:.2e}, slopes {s0:.3}/{s1:.3}, mean {mean:.3}",
            e0 = errors[0],
            e1 = errors[1],
            e2 = errors[2],
            s0 = slopes[0],
            s1 = slopes[1]
        ),
    );
}
