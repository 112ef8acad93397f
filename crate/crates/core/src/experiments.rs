//! Anticoncentration Monte Carlo over uniform random Cliffords, the
//! Paley–Zygmund tail bound, the supremacy parameter constraints in exact
//! rational arithmetic and the Markov-set audit of a simulator.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits::BitString;
use crate::ccc::{tv_distance, CccError, OutcomeDistribution};
use crate::linalg::{is_unitary, ComplexMatrix, LinalgError, Statevector};
use crate::stabilizer::random_clifford;

/// Smallest accepted sample count for an anticoncentration trial.
pub const MIN_SAMPLES: usize = 100;

/// Slack on the Markov-set threshold so ties are counted as inside.
pub const MARKOV_SLACK: f64 = 1e-12;

/// Exact rational used for the supremacy parameters.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error("parameter {name} = {value} must lie strictly between 0 and 1")]
    OutOfRange { name: &'static str, value: String },
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("outcome y has {got} bits but the trial has {n} qubits")]
    OutcomeWidth { got: usize, n: usize },
    #[error("U must be a 2x2 unitary")]
    NotUnitary,
    #[error("second moment must be positive")]
    ZeroSecondMoment,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ccc(#[from] CccError),
}

/// Parses `"0.12"`, `"3/25"` or `"1"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ExperimentError> {
    let bad = || ExperimentError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| bad())?;
        let den: i128 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) || frac.len() > 18 {
        return Err(bad());
    }
    let scale = 10i128.pow(frac.len() as u32);
    let whole: i128 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let part: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = whole.checked_mul(scale).and_then(|w| w.checked_add(part)).ok_or_else(bad)?;
    let r = Ratio::new(num, scale);
    Ok(if negative { -r } else { r })
}

fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Constants of the hardness argument: a `fraction` of outcomes is hit to
/// multiplicative error `mult_error`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupremacyParams {
    pub a: Rational,
    pub c: Rational,
    pub epsilon: Rational,
    /// `(1 − a)²/2 − c`.
    pub fraction: Rational,
    /// `2ε/(ac)`.
    pub mult_error: Rational,
    pub valid: bool,
}

impl Serialize for SupremacyParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SupremacyParams", 7)?;
        st.serialize_field("a", &to_f64(&self.a))?;
        st.serialize_field("c", &to_f64(&self.c))?;
        st.serialize_field("epsilon", &to_f64(&self.epsilon))?;
        st.serialize_field("fraction", &to_f64(&self.fraction))?;
        st.serialize_field("mult_error", &to_f64(&self.mult_error))?;
        st.serialize_field("valid", &self.valid)?;
        st.serialize_field(
            "exact",
            &ExactParams { fraction: self.fraction.to_string(), mult_error: self.mult_error.to_string() },
        )?;
        st.end()
    }
}

#[derive(Serialize)]
struct ExactParams {
    fraction: String,
    mult_error: String,
}

/// Checks `0 < a, c, ε < 1` and evaluates both constraints exactly.
pub fn supremacy_parameters(a: Rational, c: Rational, epsilon: Rational) -> Result<SupremacyParams, ExperimentError> {
    for (name, v) in [("a", a), ("c", c), ("epsilon", epsilon)] {
        if v <= Rational::zero() || v >= Rational::one() {
            return Err(ExperimentError::OutOfRange { name, value: v.to_string() });
        }
    }
    let one_minus_a = Rational::one() - a;
    let fraction = one_minus_a * one_minus_a / Rational::from_integer(2) - c;
    let mult_error = Rational::from_integer(2) * epsilon / (a * c);
    let valid = fraction > Rational::zero() && mult_error < Rational::one();
    Ok(SupremacyParams { a, c, epsilon, fraction, mult_error, valid })
}

/// `(1 − a)² E[p]² / E[p²]`, the Paley–Zygmund lower bound on
/// `Pr[p ≥ a E[p]]`.
pub fn paley_zygmund_bound(a: f64, mean: f64, second_moment: f64) -> Result<f64, ExperimentError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(ExperimentError::OutOfRange { name: "a", value: a.to_string() });
    }
    if second_moment <= 0.0 || second_moment.is_nan() {
        return Err(ExperimentError::ZeroSecondMoment);
    }
    Ok((1.0 - a).powi(2) * mean * mean / second_moment)
}

/// `E[p] = 2^{-n}` over a 2-design.
pub fn theory_mean(n: usize) -> f64 {
    0.5f64.powi(n as i32)
}

/// `E[p²] = 2(1 − 2^{-n})/(2^{2n} − 1)` over a 2-design.
pub fn theory_second_moment(n: usize) -> f64 {
    let d = 2f64.powi(n as i32);
    2.0 * (1.0 - 1.0 / d) / (d * d - 1.0)
}

/// Pairwise (cascade) summation; the result does not depend on how the
/// values were produced, only on their order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Everything an anticoncentration draw needs, prepared once.
#[derive(Clone, Debug)]
pub struct AnticoncentrationSetup {
    n: usize,
    u: ComplexMatrix,
    y: BitString,
    psi: Statevector,
    bra: Statevector,
    cap: usize,
}

impl AnticoncentrationSetup {
    /// Prepares `U^{⊗n}|0^n>` and `U^{⊗n}|y>` once; a draw then only
    /// applies the random Clifford.
    pub fn new(n: usize, u: &ComplexMatrix, y: &BitString, cap: usize) -> Result<Self, ExperimentError> {
        if u.rows() != 2 || u.cols() != 2 || !is_unitary(u, crate::TOL_STRUCTURAL) {
            return Err(ExperimentError::NotUnitary);
        }
        if y.len() != n {
            return Err(ExperimentError::OutcomeWidth { got: y.len(), n });
        }
        let psi = Statevector::product_state(n, u, cap)?;
        let mut bra = Statevector::basis_with_cap(n, y.to_index(), cap)?;
        bra.apply_to_all(u)?;
        Ok(Self { n, u: u.clone(), y: y.clone(), psi, bra, cap })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// `p = |<y|U†^{⊗n} Γ U^{⊗n}|0^n>|²` for draw `index`. Each draw has its
    /// own ChaCha stream keyed by `(seed, index)`, so results do not depend
    /// on how draws are split across workers.
    pub fn draw(&self, seed: u64, index: u64) -> Result<f64, ExperimentError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let gamma = random_clifford(self.n, &mut rng);
        let out = gamma.apply_to_state(&self.psi, self.cap)?;
        Ok(self.bra.inner(&out).norm_sqr())
    }
}

/// Moments and tail of `p` over uniformly random Cliffords.
#[derive(Clone, Debug, Serialize)]
pub struct AnticoncentrationReport {
    pub n: usize,
    pub u: ComplexMatrix,
    pub y: BitString,
    pub num_samples: usize,
    pub seed: u64,
    pub a: f64,
    pub mean_p: f64,
    pub mean_p_squared: f64,
    pub se_mean: f64,
    pub se_second_moment: f64,
    /// Fraction of draws with `p ≥ a/2^n`.
    pub tail_fraction: f64,
    /// Binomial standard error of the tail fraction at the bound.
    pub tail_sigma: f64,
    pub theory_mean: f64,
    pub theory_second_moment: f64,
    /// `(1 − a)²/2`.
    pub pz_bound: f64,
    /// Paley–Zygmund bound with the exact 2-design moments.
    pub pz_bound_exact_moments: f64,
    #[serde(skip)]
    pub p_values: Vec<f64>,
}

impl AnticoncentrationReport {
    /// Aggregates per-draw probabilities in draw order.
    pub fn from_values(
        setup: &AnticoncentrationSetup,
        a: f64,
        seed: u64,
        p_values: Vec<f64>,
    ) -> Result<Self, ExperimentError> {
        let n = setup.n;
        let count = p_values.len();
        if count < MIN_SAMPLES {
            return Err(ExperimentError::TooFewSamples { got: count, min: MIN_SAMPLES });
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(ExperimentError::OutOfRange { name: "a", value: a.to_string() });
        }
        let m = count as f64;
        let squares: Vec<f64> = p_values.iter().map(|p| p * p).collect();
        let fourth: Vec<f64> = squares.iter().map(|p| p * p).collect();
        let mean_p = pairwise_sum(&p_values) / m;
        let mean_p_squared = pairwise_sum(&squares) / m;
        let mean_p_fourth = pairwise_sum(&fourth) / m;
        let var_p = (mean_p_squared - mean_p * mean_p).max(0.0) * m / (m - 1.0);
        let var_p2 = (mean_p_fourth - mean_p_squared * mean_p_squared).max(0.0) * m / (m - 1.0);
        let threshold = a * theory_mean(n);
        let tail_fraction = p_values.iter().filter(|&&p| p >= threshold).count() as f64 / m;
        let pz_bound = (1.0 - a).powi(2) / 2.0;
        let tm = theory_mean(n);
        let ts = theory_second_moment(n);
        Ok(Self {
            n,
            u: setup.u.clone(),
            y: setup.y.clone(),
            num_samples: count,
            seed,
            a,
            mean_p,
            mean_p_squared,
            se_mean: (var_p / m).sqrt(),
            se_second_moment: (var_p2 / m).sqrt(),
            tail_fraction,
            tail_sigma: (pz_bound * (1.0 - pz_bound) / m).sqrt(),
            theory_mean: tm,
            theory_second_moment: ts,
            pz_bound,
            pz_bound_exact_moments: paley_zygmund_bound(a, tm, ts)?,
            p_values,
        })
    }

    /// Mean within `k` standard errors of `2^{-n}`.
    pub fn mean_within(&self, k: f64) -> bool {
        (self.mean_p - self.theory_mean).abs() <= k * self.se_mean
    }

    /// Second moment within `k` standard errors of the 2-design value.
    pub fn second_moment_within(&self, k: f64) -> bool {
        (self.mean_p_squared - self.theory_second_moment).abs() <= k * self.se_second_moment
    }

    /// Tail fraction at least `(1 − a)²/2 − kσ`.
    pub fn tail_above_bound(&self, k: f64) -> bool {
        self.tail_fraction >= self.pz_bound - k * self.tail_sigma
    }
}

/// Runs `num_samples` draws sequentially. The `ccc` crate has a parallel
/// driver producing identical output.
pub fn anticoncentration_trial(
    n: usize,
    u: &ComplexMatrix,
    y: &BitString,
    num_samples: usize,
    a: f64,
    seed: u64,
    cap: usize,
) -> Result<AnticoncentrationReport, ExperimentError> {
    if num_samples < MIN_SAMPLES {
        return Err(ExperimentError::TooFewSamples { got: num_samples, min: MIN_SAMPLES });
    }
    let setup = AnticoncentrationSetup::new(n, u, y, cap)?;
    let values = (0..num_samples as u64).map(|i| setup.draw(seed, i)).collect::<Result<Vec<_>, _>>()?;
    AnticoncentrationReport::from_values(&setup, a, seed, values)
}

/// Outcome of checking Markov's inequality on a concrete simulator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkovAudit {
    pub n: usize,
    pub c: f64,
    /// Realised total variation distance, used as the error budget.
    pub tv_distance: f64,
    /// `2ε'/(c 2^n)`.
    pub threshold: f64,
    /// Fraction of outcomes with `|q_y − p_y| ≤ threshold`.
    pub fraction: f64,
    /// `1 − c`.
    pub guarantee: f64,
    pub holds: bool,
}

impl fmt::Display for MarkovAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fraction {} vs guarantee {} (tv {})", self.fraction, self.guarantee, self.tv_distance)
    }
}

/// Counts outcomes whose error is within the Markov threshold.
pub fn markov_set_audit(
    exact: &OutcomeDistribution,
    approx: &OutcomeDistribution,
    c: f64,
) -> Result<MarkovAudit, ExperimentError> {
    if !(c > 0.0 && c < 1.0) {
        return Err(ExperimentError::OutOfRange { name: "c", value: c.to_string() });
    }
    let tv = tv_distance(exact, approx)?;
    let n = exact.num_qubits();
    let threshold = 2.0 * tv / (c * 2f64.powi(n as i32));
    let p = exact.probabilities();
    let q = approx.probabilities();
    let inside = p.iter().zip(q).filter(|(p, q)| (*q - *p).abs() <= threshold + MARKOV_SLACK).count();
    let fraction = inside as f64 / p.len() as f64;
    let guarantee = 1.0 - c;
    Ok(MarkovAudit { n, c, tv_distance: tv, threshold, fraction, guarantee, holds: fraction >= guarantee })
}

impl FromStr for SupremacyParams {
    type Err = ExperimentError;

    /// `"a,c,eps"`, each parsed with [`parse_rational`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(ExperimentError::BadRational(s.to_string()));
        }
        supremacy_parameters(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?)
    }
}
