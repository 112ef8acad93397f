//! Acceptance suite: one pass/fail line per criterion. Oracles here are
//! written independently of the code under test (closed forms, dense
//! statevectors, integer arithmetic).

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ccc::cli::phase_residual;
use ccc::formats::parse_unitary;
use ccc::parallel::{anticoncentration_parallel, search_gadgets_parallel};
use ccc_core::ccc::{
    classify, dense_distribution, CaseTag, CccInstance, ComplexityClass, EasyReduction, ExactAngle, MarginalSimulator,
    OutcomeDistribution, UnitaryDecomposition,
};
use ccc_core::experiments::{supremacy_parameters, Rational};
use ccc_core::gadgets::{build_gadget_i, build_gadget_j, compile_word, gadget_action, DEFAULT_BEAM_WIDTH};
use ccc_core::linalg::{c64, cis, equal_up_to_phase, gates, ComplexMatrix, Statevector};
use ccc_core::mbqc::{g_closed_form, g_gadget, rotation_angle, universality_check};
use ccc_core::stabilizer::{circuit_to_tableau, random_circuit};
use ccc_core::BitString;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rp(p: i64, q: i64) -> ExactAngle {
    ExactAngle::rational_pi(p, q)
}

fn decomposition(phi: ExactAngle, theta: ExactAngle, lambda: ExactAngle) -> UnitaryDecomposition {
    UnitaryDecomposition::from_angles(ExactAngle::Real(0.37), phi, theta, lambda)
}

/// Table of verdicts: θ columns πZ, (π/2)Z_odd, complement of (π/2)Z; φ rows
/// (π/2)Z and its complement.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = [[rp(0, 1), rp(3, 2)], [rp(1, 3), rp(2, 5)]];
    let cols = [[rp(0, 1), rp(1, 1)], [rp(1, 2), rp(3, 2)], [rp(1, 4), rp(2, 3)]];
    let expected = |row: usize, col: usize| match (row, col) {
        (_, 0) => (CaseTag::I, ComplexityClass::Pweak),
        (0, 1) => (CaseTag::Ii, ComplexityClass::Pweak),
        (1, 1) => (CaseTag::Iii, ComplexityClass::PhSupreme),
        _ => (CaseTag::Iv, ComplexityClass::PhSupreme),
    };
    let mut cells = 0;
    for (r, phis) in rows.iter().enumerate() {
        for (c, thetas) in cols.iter().enumerate() {
            for s in 0..2 {
                let d = decomposition(phis[s], thetas[s], rp(1, 7));
                let v = classify(&d);
                check((v.case, v.class) == expected(r, c), || {
                    format!("phi={} theta={}: got {:?}/{:?}", phis[s], thetas[s], v.case, v.class)
                })?;
                if let Some(form) = &v.canonical_form {
                    check(equal_up_to_phase(&form.matrix(), &d.matrix(), 1e-9), || {
                        format!("canonical form off at phi={} theta={}", phis[s], thetas[s])
                    })?;
                }
                check(v.canonical_form.is_some() == (v.class == ComplexityClass::Pweak), || {
                    "canonical form presence".into()
                })?;
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{cells} samples over 6 cells match, {elapsed:?}"))
}

fn closed_form_i(phi: f64, theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_2x2(
        c64(c * c, 0.0),
        c64(0.0, 0.5 * theta.sin()) * cis(-phi),
        c64(0.0, -0.5 * theta.sin()) * cis(phi),
        c64(-s * s, 0.0),
    )
}

fn closed_form_j(theta: f64) -> ComplexMatrix {
    let pre = cis(-PI / 4.0) * FRAC_1_SQRT_2;
    ComplexMatrix::diagonal(&[pre * c64(theta.cos(), 1.0), pre * c64(1.0, theta.cos())])
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for a in 0..20 {
        for b in 0..20 {
            let (phi, theta) = (2.0 * PI * a as f64 / 20.0, 2.0 * PI * b as f64 / 20.0);
            let (ep, et) = (ExactAngle::Real(phi), ExactAngle::Real(theta));
            let ai = gadget_action(&build_gadget_i(ep, et)).map_err(|e| e.to_string())?.matrix;
            let aj = gadget_action(&build_gadget_j(ep, et)).map_err(|e| e.to_string())?.matrix;
            let di = ai.max_abs_diff(&closed_form_i(phi, theta)).unwrap();
            let dj = aj.max_abs_diff(&closed_form_j(theta)).unwrap();
            worst = worst.max(di).max(dj);
        }
    }
    check(worst < 1e-12, || format!("closed-form deviation {worst:e}"))?;
    // Exceptional sets are multiples of π/4 and π/10; membership is decided
    // here with integer arithmetic.
    let angles: Vec<(i64, i64)> = (0..8).map(|j| (j, 4)).chain((0..20).map(|j| (j, 10))).collect();
    let half_pi_multiple = |(p, q): (i64, i64)| (2 * p) % q == 0;
    let odd_half_pi = |(p, q): (i64, i64)| half_pi_multiple((p, q)) && ((2 * p) / q) % 2 != 0;
    let mut points = 0;
    for &phi in &angles {
        for &theta in &angles {
            let (ep, et) = (rp(phi.0, phi.1), rp(theta.0, theta.1));
            let ai = gadget_action(&build_gadget_i(ep, et)).map_err(|e| e.to_string())?;
            let aj = gadget_action(&build_gadget_j(ep, et)).map_err(|e| e.to_string())?;
            let at = || format!("phi={ep} theta={et}");
            check(ai.is_unitary == odd_half_pi(theta), || format!("I unitary boundary at {}", at()))?;
            check(ai.is_clifford == (odd_half_pi(theta) && half_pi_multiple(phi)), || {
                format!("I Clifford boundary at {}", at())
            })?;
            check(aj.is_unitary, || format!("J unitary at {}", at()))?;
            check(aj.is_clifford == half_pi_multiple(theta), || format!("J Clifford boundary at {}", at()))?;
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("400 grid points within {worst:.1e}, {points} boundary points exact, {elapsed:?}"))
}

fn criterion_3() -> Outcome {
    let n = 6;
    let u = parse_unitary("rz=pi*1/5 rx=pi*1/3").map_err(|e| e.to_string())?;
    let r = anticoncentration_parallel(n, &u.matrix, &BitString::zeros(n), 2000, 0.2, 20_240_601, 16)
        .map_err(|e| e.to_string())?;
    // Oracle values from the 2-design formulas evaluated in integers.
    let mean = 1.0 / 64.0;
    let second = 2.0 * 63.0 / (64.0 * 4095.0);
    check((r.theory_mean - mean).abs() < 1e-15 && (r.theory_second_moment - second).abs() < 1e-15, || {
        "theory values".into()
    })?;
    let detail = format!(
        "mean {:.6e} (theory {:.6e}, {:.2} se), E[p^2] {:.6e} (theory {:.6e}, {:.2} se), tail {:.4} vs bound 0.32 - 3*{:.4}",
        r.mean_p,
        mean,
        (r.mean_p - mean) / r.se_mean,
        r.mean_p_squared,
        second,
        (r.mean_p_squared - second) / r.se_second_moment,
        r.tail_fraction,
        r.tail_sigma
    );
    check(r.mean_within(5.0), || format!("mean outside 5 se: {detail}"))?;
    check(r.second_moment_within(5.0), || format!("second moment outside 5 se: {detail}"))?;
    check(r.tail_above_bound(3.0), || format!("tail below bound: {detail}"))?;
    Ok(detail)
}

fn criterion_4() -> Outcome {
    let p = supremacy_parameters(Rational::new(1, 5), Rational::new(1, 5), Rational::new(1, 100))
        .map_err(|e| e.to_string())?;
    check(p.fraction == Rational::new(6, 50), || format!("fraction {}", p.fraction))?;
    check(p.mult_error == Rational::new(1, 2), || format!("mult_error {}", p.mult_error))?;
    check(p.valid, || "not valid".into())?;
    Ok(format!("fraction {} and multiplicative error {} exactly", p.fraction, p.mult_error))
}

fn empirical_tv(exact: &OutcomeDistribution, samples: &[BitString]) -> f64 {
    let n = exact.num_qubits();
    let emp = OutcomeDistribution::from_samples(n, samples, 16).expect("small n");
    0.5 * exact.probabilities().iter().zip(emp.probabilities()).map(|(p, q)| (p - q).abs()).sum::<f64>()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Exceptional `U` sampled from the classically easy cases.
fn random_easy_u(rng: &mut ChaCha8Rng) -> UnitaryDecomposition {
    let lambda = ExactAngle::Real(rng.gen_range(0.0..2.0 * PI));
    let (phi, theta) = match rng.gen_range(0..3) {
        0 => (ExactAngle::Real(rng.gen_range(0.0..2.0 * PI)), rp(0, 1)),
        1 => (ExactAngle::Real(rng.gen_range(0.0..2.0 * PI)), rp(1, 1)),
        _ => (rp(rng.gen_range(0..4), 2), rp(2 * rng.gen_range(0..2) + 1, 2)),
    };
    decomposition(phi, theta, lambda)
}

fn random_generic_u(rng: &mut ChaCha8Rng) -> UnitaryDecomposition {
    let mut angle = || ExactAngle::Real(rng.gen_range(0.0..2.0 * PI));
    decomposition(angle(), angle(), angle())
}

fn criterion_5() -> Outcome {
    const INSTANCES: usize = 60;
    const SAMPLES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let (mut exact_worst, mut tv_worst, mut marg_worst): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..INSTANCES {
        let n = 1 + i % 6;
        let v = random_circuit(n, 6 * n, &mut rng);
        // Stabilizer sampling against the statevector of V|0^n>.
        let mut psi = Statevector::zero(n).map_err(|e| e.to_string())?;
        v.apply_to(&mut psi).map_err(|e| e.to_string())?;
        let dense = OutcomeDistribution::new(n, psi.probabilities()).map_err(|e| e.to_string())?;
        let tableau = circuit_to_tableau(&v);
        let exact =
            OutcomeDistribution::from_pairs(n, &tableau.outcome_distribution(), 16).map_err(|e| e.to_string())?;
        exact_worst = exact_worst.max(max_diff(exact.probabilities(), dense.probabilities()));
        let samples: Vec<BitString> = (0..SAMPLES).map(|_| tableau.sample(&mut rng)).collect();
        tv_worst = tv_worst.max(empirical_tv(&dense, &samples));
        // Easy-case weak simulation against the dense CCC distribution.
        let easy = CccInstance::from_decomposition(random_easy_u(&mut rng), v.clone());
        let dense = dense_distribution(&easy, 16).map_err(|e| e.to_string())?;
        let reduction = EasyReduction::new(&easy).map_err(|e| e.to_string())?;
        let exact =
            OutcomeDistribution::from_pairs(n, &reduction.exact_distribution(), 16).map_err(|e| e.to_string())?;
        exact_worst = exact_worst.max(max_diff(exact.probabilities(), dense.probabilities()));
        let samples: Vec<BitString> = (0..SAMPLES).map(|_| reduction.sample(&mut rng)).collect();
        tv_worst = tv_worst.max(empirical_tv(&dense, &samples));
        // Strong(1) marginals against the dense marginal, for easy and generic U.
        for inst in [easy, CccInstance::from_decomposition(random_generic_u(&mut rng), v.clone())] {
            let dense = dense_distribution(&inst, 16).map_err(|e| e.to_string())?;
            let sim = MarginalSimulator::new(&inst);
            for j in 0..n {
                let m = sim.marginal(j).map_err(|e| e.to_string())?;
                marg_worst = marg_worst.max((m - dense.marginal_zero(j)).abs());
            }
        }
    }
    let detail = format!(
        "{INSTANCES} instances: exact reductions within {exact_worst:.1e}, sampled TV at most {tv_worst:.4}, marginals within {marg_worst:.1e}"
    );
    check(exact_worst < 1e-10 && marg_worst < 1e-10, || detail.clone())?;
    check(tv_worst < 0.05, || detail.clone())?;
    Ok(detail)
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..40 {
        let theta = rp(k, 20);
        for bit in [false, true] {
            let g = g_gadget(theta, bit).map_err(|e| e.to_string())?;
            worst = worst.max(phase_residual(&g, &g_closed_form(theta.radians(), bit)));
        }
    }
    check(worst < 1e-12, || format!("gadget residual {worst:e}"))?;
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    let mut decided = 0;
    for q in 1..=24i64 {
        for p in 0..2 * q {
            if gcd(p, q) != 1 {
                continue;
            }
            let verdict = universality_check(rp(p, q)).map_err(|e| e.to_string())?;
            // pπ/q is a multiple of π/4 iff q divides 4.
            check(verdict.universal == (4 % q != 0), || format!("universality wrong at pi*{p}/{q}"))?;
            decided += 1;
        }
    }
    // Rotation angles of the contracted gadgets, rescaled to unitaries.
    let angle = |theta: ExactAngle, bit: bool| -> Result<f64, String> {
        let g = g_gadget(theta, bit).map_err(|e| e.to_string())?;
        let scale = g.det().map_err(|e| e.to_string())?.norm().sqrt();
        let u = g.scale(c64(1.0 / scale, 0.0));
        Ok(rotation_angle(&u).map_err(|e| e.to_string())?.angle)
    };
    let angles = |theta: ExactAngle| -> Result<[f64; 2], String> { Ok([angle(theta, false)?, angle(theta, true)?]) };
    let near = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).abs() < 1e-10 && (a[1] - b[1]).abs() < 1e-10;
    let half = angles(rp(1, 2))?;
    check(near(half, [PI / 2.0, PI]), || format!("theta=pi/2 family {half:?}"))?;
    let quarter = angles(rp(1, 4))?;
    check(near(quarter, [2.0 * PI / 3.0, 2.0 * PI / 3.0]), || format!("theta=pi/4 family {quarter:?}"))?;
    Ok(format!(
        "80 gadget contractions within {worst:.1e}, {decided} reduced angles decided, families {{pi/2, pi}} and {{2pi/3, 2pi/3}} reproduced"
    ))
}

fn criterion_7() -> Outcome {
    let specs = [
        ("rz=pi*1/5", CaseTag::I),
        ("rz=0.7 rx=pi", CaseTag::I),
        ("H", CaseTag::Ii),
        ("rz=pi*1/2 rx=pi*1/2", CaseTag::Ii),
        ("rx=pi*3/2", CaseTag::Ii),
        ("rz=pi*1/3 rx=pi*1/2", CaseTag::Iii),
        ("rz=pi*1/5 rx=pi*3/2 rz=pi*1/7", CaseTag::Iii),
        ("rz=pi*1/5 rx=pi*1/3", CaseTag::Iv),
        ("rx=pi*1/4", CaseTag::Iv),
        ("rz=0.3 rx=1.1", CaseTag::Iv),
    ];
    let mut summary = Vec::new();
    for (spec, case) in specs {
        let u = parse_unitary(spec).map_err(|e| e.to_string())?;
        let verdict = classify(&u.decomposition);
        check(verdict.case == case, || format!("{spec}: case {:?}", verdict.case))?;
        let report = search_gadgets_parallel(&u.matrix, 2, 0, 0).map_err(|e| e.to_string())?;
        let hard = verdict.class == ComplexityClass::PhSupreme;
        check(report.hits.is_empty() != hard, || {
            format!("{spec}: {} hits but class {:?}", report.hits.len(), verdict.class)
        })?;
        summary.push(report.hits.len());
    }
    let target = gates::rz(PI / 4.0);
    let j = gadget_action(&build_gadget_j(rp(0, 1), rp(1, 3))).map_err(|e| e.to_string())?;
    let gens = vec![gates::h(), gates::s(), j.normalized().map_err(|e| e.to_string())?];
    let short = compile_word(&target, &gens, 4, DEFAULT_BEAM_WIDTH).map_err(|e| e.to_string())?;
    let long = compile_word(&target, &gens, 12, DEFAULT_BEAM_WIDTH).map_err(|e| e.to_string())?;
    check(long.distance <= short.distance, || format!("distance grew: {} -> {}", short.distance, long.distance))?;
    Ok(format!(
        "hit counts {summary:?} match the classes; compile distance {:.4e} at length 4, {:.4e} at length 12",
        short.distance, long.distance
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("classification table", criterion_1),
        ("gadget closed forms and boundaries", criterion_2),
        ("anticoncentration at n = 6", criterion_3),
        ("supremacy parameter arithmetic", criterion_4),
        ("oracle equivalence suite", criterion_5),
        ("measurement-based gadgets", criterion_6),
        ("gadget search cross-validation", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
