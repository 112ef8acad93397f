//! Standard gate matrices.
//!
//! Rotations follow `R_t(θ) = exp(-iθσ_t/2)`. Two-qubit gates use the first
//! target as the most significant tensor factor, so `cnot()` has its control
//! on the first target.

use core::f64::consts::FRAC_1_SQRT_2;

use super::matrix::{c64, cis, ComplexMatrix};
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn h() -> ComplexMatrix {
    let s = c64(FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_2x2(s, s, s, -s)
}

pub fn s() -> ComplexMatrix {
    ComplexMatrix::from_2x2(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0))
}

pub fn sdg() -> ComplexMatrix {
    ComplexMatrix::from_2x2(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, -1.0))
}

pub fn t() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c64(1.0, 0.0), cis(core::f64::consts::FRAC_PI_4)])
}

pub fn tdg() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c64(1.0, 0.0), cis(-core::f64::consts::FRAC_PI_4)])
}

pub fn x() -> ComplexMatrix {
    ComplexMatrix::from_2x2(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0))
}

pub fn y() -> ComplexMatrix {
    ComplexMatrix::from_2x2(c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0))
}

pub fn z() -> ComplexMatrix {
    ComplexMatrix::from_2x2(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0))
}

pub fn rz(theta: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[cis(-theta / 2.0), cis(theta / 2.0)])
}

pub fn rx(theta: f64) -> ComplexMatrix {
    let c = c64((theta / 2.0).cos(), 0.0);
    let s = c64(0.0, -(theta / 2.0).sin());
    ComplexMatrix::from_2x2(c, s, s, c)
}

pub fn ry(theta: f64) -> ComplexMatrix {
    let c = c64((theta / 2.0).cos(), 0.0);
    let s = c64((theta / 2.0).sin(), 0.0);
    ComplexMatrix::from_2x2(c, -s, s, c)
}

/// `e^{iα} R_z(φ) R_x(θ) R_z(λ)` in closed form.
pub fn euler_zxz(alpha: f64, phi: f64, theta: f64, lambda: f64) -> ComplexMatrix {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let g = cis(alpha);
    ComplexMatrix::from_2x2(
        g * cis(-(phi + lambda) / 2.0) * c,
        g * c64(0.0, -1.0) * cis(-(phi - lambda) / 2.0) * s,
        g * c64(0.0, -1.0) * cis((phi - lambda) / 2.0) * s,
        g * cis((phi + lambda) / 2.0) * c,
    )
}

pub fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = c64(1.0, 0.0);
    m[(1, 1)] = c64(1.0, 0.0);
    m[(2, 3)] = c64(1.0, 0.0);
    m[(3, 2)] = c64(1.0, 0.0);
    m
}

pub fn cz() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(-1.0, 0.0)])
}

/// Single-qubit gate by conventional name (case-insensitive).
pub fn named(name: &str) -> Option<ComplexMatrix> {
    let lower = name.to_ascii_lowercase();
    Some(match lower.as_str() {
        "i" | "id" => identity(),
        "h" => h(),
        "s" => s(),
        "sdg" | "sdag" => sdg(),
        "t" => t(),
        "tdg" | "tdag" => tdg(),
        "x" => x(),
        "y" => y(),
        "z" => z(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_unitary_up_to_scale, proportional_up_to_phase};
    use proptest::prelude::*;

    #[test]
    fn generators_are_unitary() {
        for g in [h(), s(), sdg(), t(), x(), y(), z(), cnot(), cz(), rz(0.3), rx(1.1)] {
            let prod = g.adjoint().dot(&g);
            let id = ComplexMatrix::identity(g.rows());
            assert!(prod.max_abs_diff(&id).unwrap() < 1e-12);
        }
    }

    #[test]
    fn s_squared_is_z() {
        assert!(s().dot(&s()).max_abs_diff(&z()).unwrap() < 1e-12);
    }

    #[test]
    fn h_is_an_involution() {
        assert!(h().dot(&h()).max_abs_diff(&identity()).unwrap() < 1e-12);
        assert!(identity().dot(&h()).max_abs_diff(&h()).unwrap() < 1e-12);
    }

    #[test]
    fn t_is_rz_quarter_up_to_phase() {
        assert!(proportional_up_to_phase(&t(), &rz(core::f64::consts::FRAC_PI_4), 1e-12));
        assert!(is_unitary_up_to_scale(&t(), 1e-12));
    }

    proptest! {
        #[test]
        fn euler_closed_form_matches_product(
            alpha in 0.0..6.3f64, phi in 0.0..6.3f64, theta in 0.0..6.3f64, lambda in 0.0..6.3f64
        ) {
            let prod = rz(phi).dot(&rx(theta)).dot(&rz(lambda)).scale(cis(alpha));
            let direct = euler_zxz(alpha, phi, theta, lambda);
            prop_assert!(prod.max_abs_diff(&direct).unwrap() < 1e-12);
        }
    }
}
