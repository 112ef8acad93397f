use super::*;
use crate::linalg::{c64, cis, equal_up_to_phase};
use core::f64::consts::{FRAC_1_SQRT_2, PI};

fn rp(p: i64, q: i64) -> ExactAngle {
    ExactAngle::rational_pi(p, q)
}

fn action_i(phi: f64, theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_2x2(
        c64(c * c, 0.0),
        c64(0.0, 0.5 * theta.sin()) * cis(-phi),
        c64(0.0, -0.5 * theta.sin()) * cis(phi),
        c64(-s * s, 0.0),
    )
}

fn action_j(theta: f64) -> ComplexMatrix {
    let pre = cis(-PI / 4.0) * FRAC_1_SQRT_2;
    ComplexMatrix::diagonal(&[pre * c64(theta.cos(), 1.0), pre * c64(1.0, theta.cos())])
}

fn grid() -> impl Iterator<Item = (f64, f64)> {
    (0..20).flat_map(|a| (0..20).map(move |b| (2.0 * PI * a as f64 / 20.0, 2.0 * PI * b as f64 / 20.0)))
}

#[test]
fn gadget_i_matches_closed_form() {
    for (phi, theta) in grid() {
        let a = gadget_action(&build_gadget_i(ExactAngle::Real(phi), ExactAngle::Real(theta))).unwrap();
        assert!(a.matrix.max_abs_diff(&action_i(phi, theta)).unwrap() < 1e-12);
    }
}

#[test]
fn gadget_j_matches_closed_form() {
    for (phi, theta) in grid() {
        let a = gadget_action(&build_gadget_j(ExactAngle::Real(phi), ExactAngle::Real(theta))).unwrap();
        assert!(a.matrix.max_abs_diff(&action_j(theta)).unwrap() < 1e-12);
        let det = a.matrix.det().unwrap();
        assert!((det - c64((1.0 + theta.cos().powi(2)) / 2.0, 0.0)).norm() < 1e-12);
        assert!(a.is_unitary);
    }
}

#[test]
fn normalized_i_on_unitary_points() {
    for k in 0..2 {
        let theta = PI * (2 * k + 1) as f64 / 2.0;
        for phi in [0.0, 0.4, PI / 3.0, 2.5] {
            let g = build_gadget_i(ExactAngle::Real(phi), ExactAngle::Real(theta));
            let n = gadget_action(&g).unwrap().normalized().unwrap();
            let sign = if k == 0 { 1.0 } else { -1.0 };
            let expected = ComplexMatrix::from_2x2(
                c64(1.0, 0.0),
                c64(0.0, sign) * cis(-phi),
                c64(0.0, -sign) * cis(phi),
                c64(-1.0, 0.0),
            )
            .scale(c64(0.0, FRAC_1_SQRT_2));
            // Equal up to a square root of unity.
            let plus = n.max_abs_diff(&expected).unwrap();
            let minus = n.max_abs_diff(&expected.scale(c64(-1.0, 0.0))).unwrap();
            assert!(plus.min(minus) < 1e-10);
        }
    }
}

#[test]
fn normalized_j_is_s_dagger_times_rotation() {
    for theta in [0.1, PI / 3.0, 1.9, 4.0] {
        let n =
            gadget_action(&build_gadget_j(ExactAngle::ZERO, ExactAngle::Real(theta))).unwrap().normalized().unwrap();
        let expected = gates::sdg().dot(&gates::rz(2.0 * theta.cos().atan()));
        assert!(equal_up_to_phase(&n, &expected, 1e-10));
    }
}

#[test]
fn builder_examples() {
    let a = gadget_action(&build_gadget_i(ExactAngle::ZERO, rp(1, 2))).unwrap();
    assert!(a.is_unitary && a.is_clifford);
    assert!((a.gamma.unwrap() - 0.5).abs() < 1e-12);
    let a = gadget_action(&build_gadget_i(rp(1, 3), rp(1, 2))).unwrap();
    assert!(a.is_unitary && !a.is_clifford);
    let a = gadget_action(&build_gadget_i(rp(1, 3), rp(1, 3))).unwrap();
    assert!(!a.is_unitary);
    assert_eq!(a.gamma, None);
    let a = gadget_action(&build_gadget_j(rp(2, 7), rp(1, 2))).unwrap();
    assert!(a.is_clifford);
    let n = a.normalized().unwrap();
    assert!(equal_up_to_phase(&n, &gates::sdg(), 1e-10));
    let a = gadget_action(&build_gadget_j(ExactAngle::ZERO, rp(1, 3))).unwrap();
    assert!(a.is_unitary && !a.is_clifford);
    let expected = gates::sdg().dot(&gates::rz(2.0 * 0.5f64.atan()));
    assert!(equal_up_to_phase(&a.normalized().unwrap(), &expected, 1e-10));
}

#[test]
fn pauli_test_examples() {
    let n = gadget_action(&build_gadget_i(rp(1, 3), rp(1, 2))).unwrap().normalized().unwrap();
    assert_eq!(pauli_conjugation_test(&n), ActionClass::UnitaryNonClifford);
    // The diagonal of Ã X Ã† carries ±sin φ.
    let img = n.dot(&gates::x()).dot(&n.adjoint());
    assert!((img[(0, 0)].norm() - (PI / 3.0).sin()).abs() < 1e-10);
    let n = gadget_action(&build_gadget_i(rp(1, 2), rp(1, 2))).unwrap().normalized().unwrap();
    assert_eq!(pauli_conjugation_test(&n), ActionClass::Clifford);
    let img = n.dot(&gates::x()).dot(&n.adjoint());
    let signed = |m: &ComplexMatrix, s: f64| img.max_abs_diff(&m.scale(c64(s, 0.0))).unwrap() < 1e-10;
    assert!(signed(&gates::x(), -1.0) || signed(&gates::z(), 1.0) || signed(&gates::z(), -1.0));
    let raw = gadget_action(&build_gadget_i(ExactAngle::ZERO, rp(1, 3))).unwrap().matrix;
    assert_eq!(pauli_conjugation_test(&raw), ActionClass::NonUnitary);
}

#[test]
fn multi_qubit_clifford_test() {
    assert_eq!(pauli_conjugation_test(&gates::cnot().scale(c64(0.3, 0.2))), ActionClass::Clifford);
    let t1 = gates::t().kron(&gates::identity());
    assert_eq!(pauli_conjugation_test(&gates::cnot().dot(&t1)), ActionClass::UnitaryNonClifford);
}

#[test]
fn unitarity_and_clifford_boundaries() {
    // Exceptional points are exact multiples of π/4 on a 20-step grid in units of π/10 and π/4.
    let angles: Vec<ExactAngle> = (0..8).map(|j| rp(j, 4)).chain((0..20).map(|j| rp(j, 10))).collect();
    for &phi in &angles {
        for &theta in &angles {
            let ai = gadget_action(&build_gadget_i(phi, theta)).unwrap();
            assert_eq!(ai.is_unitary, theta.in_half_pi_z_odd(), "I unitary at {phi}, {theta}");
            assert_eq!(ai.is_clifford, phi.in_half_pi_z() && theta.in_half_pi_z_odd(), "I Clifford at {phi}, {theta}");
            let aj = gadget_action(&build_gadget_j(phi, theta)).unwrap();
            assert!(aj.is_unitary);
            assert_eq!(aj.is_clifford, theta.in_half_pi_z(), "J Clifford at {phi}, {theta}");
        }
    }
}

#[test]
fn validation() {
    let mut g = build_gadget_i(ExactAngle::ZERO, rp(1, 2));
    g.postselect = alloc::vec![2];
    assert_eq!(gadget_action(&g), Err(GadgetError::BadWire(2)));
    let mut g = build_gadget_i(ExactAngle::ZERO, rp(1, 2));
    g.ancilla_bits = BitString::zeros(2);
    assert!(matches!(gadget_action(&g), Err(GadgetError::WrongCount { .. })));
    let mut g = build_gadget_i(ExactAngle::ZERO, rp(1, 2));
    g.k = 13;
    assert!(matches!(g.validate(), Err(GadgetError::BadWidths { .. }) | Err(GadgetError::TooWide { .. })));
    assert!(build_gadget_i(ExactAngle::ZERO, rp(1, 2)).postselects_system_wire());
    assert!(!build_gadget_j(ExactAngle::ZERO, rp(1, 2)).postselects_system_wire());
}

#[test]
fn search_examples() {
    let table = crate::stabilizer::CliffordClassTable::enumerate(2).unwrap();
    let hard = gates::rz(PI / 5.0).dot(&gates::rx(PI / 3.0));
    let report = search_gadgets_with(&table, &hard).unwrap();
    assert!(report.exhaustive);
    assert!(!report.hits.is_empty());
    let target = gadget_action(&build_gadget_j(rp(1, 5), rp(1, 3))).unwrap().normalized().unwrap();
    assert!(report.hits.iter().any(|h| equal_up_to_phase(&h.normalized, &target, 1e-9)));
    // Hits really are what they claim.
    for h in &report.hits {
        let again = gadget_action(&h.gadget).unwrap();
        assert_eq!(again.class(), ActionClass::UnitaryNonClifford);
    }
    assert!(search_gadgets_with(&table, &gates::h()).unwrap().hits.is_empty());
    assert!(search_gadgets_with(&table, &gates::rz(PI / 3.0)).unwrap().hits.is_empty());
    assert_eq!(search_gadgets(&hard, 4).err(), Some(GadgetError::SearchWidth(4)));
}

#[test]
fn sampled_search_is_flagged() {
    let hard = gates::rz(PI / 5.0).dot(&gates::rx(PI / 3.0));
    let report = search_gadgets_sampled(&hard, 3, 40, 1).unwrap();
    assert!(!report.exhaustive);
    assert_eq!(report.cliffords_tried, 40);
    for h in &report.hits {
        assert_eq!(h.gadget.k, 3);
        assert_eq!(gadget_action(&h.gadget).unwrap().class(), ActionClass::UnitaryNonClifford);
    }
}

#[test]
fn compile_with_gadget_generator() {
    let aj = gadget_action(&build_gadget_j(ExactAngle::ZERO, rp(1, 3))).unwrap().normalized().unwrap();
    let gens = [gates::h(), gates::s(), aj];
    let target = gates::rz(PI / 4.0);
    let short = compile_word(&target, &gens, 4, DEFAULT_BEAM_WIDTH).unwrap();
    let long = compile_word(&target, &gens, 8, DEFAULT_BEAM_WIDTH).unwrap();
    assert!(long.distance <= short.distance);
}
