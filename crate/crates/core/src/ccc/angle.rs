use alloc::string::{String, ToString};
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest denominator tried when recognising `(p/q)·π` in a float.
pub const RECONSTRUCTION_MAX_DEN: i64 = 64;
/// Radian tolerance for rational-π reconstruction.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// An angle known exactly as `(num/den)·π`, or an opaque real in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExactAngle {
    /// Stored in lowest terms with `den ≥ 1`.
    RationalPi {
        num: i64,
        den: i64,
    },
    Real(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseAngleError {
    #[error("empty angle")]
    Empty,
    #[error("cannot parse angle {0:?}")]
    Invalid(String),
    #[error("zero denominator in angle {0:?}")]
    ZeroDenominator(String),
}

/// Finds the smallest `q ≤ 64` with `|x − (p/q)π| ≤ 1e-9`.
pub fn reconstruct_rational_pi(radians: f64) -> Option<(i64, i64)> {
    if !radians.is_finite() {
        return None;
    }
    let t = radians / PI;
    for q in 1..=RECONSTRUCTION_MAX_DEN {
        let p = (t * q as f64).round();
        if (radians - p * PI / q as f64).abs() <= RECONSTRUCTION_TOL {
            return Some((p as i64, q));
        }
    }
    None
}

impl ExactAngle {
    pub const ZERO: ExactAngle = ExactAngle::RationalPi { num: 0, den: 1 };

    /// `(num/den)·π`, reduced.
    ///
    /// # Panics
    /// If `den == 0`.
    pub fn rational_pi(num: i64, den: i64) -> Self {
        Self::from_ratio(Ratio::new(num, den))
    }

    fn from_ratio(r: Ratio<i64>) -> Self {
        ExactAngle::RationalPi { num: *r.numer(), den: *r.denom() }
    }

    pub fn real(radians: f64) -> Self {
        ExactAngle::Real(radians)
    }

    /// Recognises rational multiples of π; anything else stays opaque.
    pub fn detect(radians: f64) -> Self {
        match reconstruct_rational_pi(radians) {
            Some((p, q)) => Self::rational_pi(p, q),
            None => ExactAngle::Real(radians),
        }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            ExactAngle::RationalPi { num, den } => num as f64 * PI / den as f64,
            ExactAngle::Real(x) => x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExactAngle::RationalPi { .. })
    }

    /// The multiple of π as a fraction: exact for rational angles, by
    /// reconstruction for reals.
    pub fn as_ratio(&self) -> Option<Ratio<i64>> {
        match *self {
            ExactAngle::RationalPi { num, den } => Some(Ratio::new(num, den)),
            ExactAngle::Real(x) => reconstruct_rational_pi(x).map(|(p, q)| Ratio::new(p, q)),
        }
    }

    fn reduced_den(&self) -> Option<i64> {
        self.as_ratio().map(|r| *r.denom())
    }

    /// `θ ∈ πZ`
    pub fn in_pi_z(&self) -> bool {
        self.reduced_den() == Some(1)
    }

    /// `θ ∈ 2πZ`
    pub fn in_two_pi_z(&self) -> bool {
        self.as_ratio().is_some_and(|r| r.is_integer() && r.numer() % 2 == 0)
    }

    /// `θ ∈ (π/2)Z`
    pub fn in_half_pi_z(&self) -> bool {
        matches!(self.reduced_den(), Some(1 | 2))
    }

    /// `θ ∈ (π/2)Z_odd`
    pub fn in_half_pi_z_odd(&self) -> bool {
        self.reduced_den() == Some(2)
    }

    /// `θ ∈ (π/4)Z`
    pub fn in_quarter_pi_z(&self) -> bool {
        matches!(self.reduced_den(), Some(1 | 2 | 4))
    }

    /// Integer `k` with `self = k·π/2`, when there is one.
    pub fn half_pi_multiple(&self) -> Option<i64> {
        let r = self.as_ratio()? * 2;
        r.is_integer().then(|| r.to_integer())
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        match (*self, *other) {
            (ExactAngle::RationalPi { num: a, den: b }, ExactAngle::RationalPi { num: c, den: d }) => {
                Self::from_ratio(Ratio::new(a, b) + Ratio::new(sign * c, d))
            }
            _ => ExactAngle::Real(self.radians() + sign as f64 * other.radians()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        Self::ZERO.sub(self)
    }

    /// Reduces into `[0, 2π)`. Also returns whether an odd number of `2π`
    /// turns was removed, which flips the sign of `R_z` and `R_x`.
    pub fn wrap_two_pi(&self) -> (Self, bool) {
        match *self {
            ExactAngle::RationalPi { num, den } => {
                let turns = num.div_euclid(2 * den);
                (Self::rational_pi(num - turns * 2 * den, den), turns.rem_euclid(2) == 1)
            }
            ExactAngle::Real(x) => {
                let turns = (x / (2.0 * PI)).floor();
                let mut w = x - turns * 2.0 * PI;
                if w >= 2.0 * PI {
                    w -= 2.0 * PI;
                }
                (ExactAngle::Real(w.max(0.0)), (turns as i64).rem_euclid(2) == 1)
            }
        }
    }
}

impl Default for ExactAngle {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactAngle::RationalPi { num: 0, .. } => write!(f, "0"),
            ExactAngle::RationalPi { num, den } => {
                let sign = if num < 0 { "-" } else { "" };
                write!(f, "{sign}pi*{}/{den}", num.abs())
            }
            ExactAngle::Real(x) => write!(f, "{x}"),
        }
    }
}

fn parse_ratio(s: &str, whole: &str) -> Result<Ratio<i64>, ParseAngleError> {
    let invalid = || ParseAngleError::Invalid(whole.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: i64 = if p.is_empty() { 1 } else { p.parse().map_err(|_| invalid())? };
    let q: i64 = q.parse().map_err(|_| invalid())?;
    if q == 0 {
        return Err(ParseAngleError::ZeroDenominator(whole.to_string()));
    }
    Ok(Ratio::new(p, q))
}

impl FromStr for ExactAngle {
    type Err = ParseAngleError;

    /// Accepts `pi`, `pi*p/q`, `pi/q`, `p*pi/q`, a leading `-`, or a decimal
    /// in radians (run through reconstruction).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ParseAngleError::Empty);
        }
        let lower = t.to_ascii_lowercase();
        let (neg, body) = match lower.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, lower.as_str()),
        };
        if body.contains("pi") {
            let (before, after) = body.split_once("pi").expect("checked");
            let before = before.strip_suffix('*').unwrap_or(before);
            let after = after.strip_prefix('*').unwrap_or(after);
            if before.contains('/') || after.contains("pi") {
                return Err(ParseAngleError::Invalid(s.to_string()));
            }
            let coeff = if before.is_empty() { Ratio::from_integer(1) } else { parse_ratio(before, s)? };
            let rest = match after {
                "" => Ratio::from_integer(1),
                a if a.starts_with('/') => parse_ratio(&a[1..], s).map(|r| r.recip())?,
                a => parse_ratio(a, s)?,
            };
            let r = coeff * rest;
            return Ok(Self::from_ratio(if neg { -r } else { r }));
        }
        let x: f64 = t.parse().map_err(|_| ParseAngleError::Invalid(s.to_string()))?;
        Ok(Self::detect(x))
    }
}

impl Serialize for ExactAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn parses_the_accepted_forms() {
        assert_eq!("pi*1/3".parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(1, 3));
        assert_eq!("pi/4".parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(1, 4));
        assert_eq!("-pi*2/4".parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(-1, 2));
        assert_eq!("pi".parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(1, 1));
        assert_eq!("3*pi/2".parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(3, 2));
        assert_eq!("0".parse::<ExactAngle>().unwrap(), ExactAngle::ZERO);
        let quarter = (PI / 4.0).to_string();
        assert_eq!(quarter.parse::<ExactAngle>().unwrap(), ExactAngle::rational_pi(1, 4));
        assert!(matches!("0.7".parse::<ExactAngle>().unwrap(), ExactAngle::Real(_)));
        assert!("pi*1/0".parse::<ExactAngle>().is_err());
        assert!("tau".parse::<ExactAngle>().is_err());
        assert!("".parse::<ExactAngle>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for a in [ExactAngle::rational_pi(-5, 6), ExactAngle::ZERO, ExactAngle::rational_pi(7, 1)] {
            assert_eq!(a.to_string().parse::<ExactAngle>().unwrap(), a);
        }
    }

    #[test]
    fn membership() {
        let half = ExactAngle::rational_pi(1, 2);
        assert!(half.in_half_pi_z() && half.in_half_pi_z_odd() && !half.in_pi_z());
        let three_half = ExactAngle::rational_pi(3, 2);
        assert!(three_half.in_half_pi_z_odd());
        let pi = ExactAngle::rational_pi(1, 1);
        assert!(pi.in_pi_z() && pi.in_half_pi_z() && !pi.in_half_pi_z_odd() && !pi.in_two_pi_z());
        assert!(ExactAngle::rational_pi(4, 1).in_two_pi_z());
        assert!(ExactAngle::rational_pi(3, 4).in_quarter_pi_z());
        assert!(!ExactAngle::rational_pi(1, 3).in_half_pi_z());
        // Reals are decided by reconstruction; failure means "not a member".
        assert!(ExactAngle::Real(PI / 2.0 + 1e-12).in_half_pi_z_odd());
        assert!(!ExactAngle::Real(PI / 2.0 + 1e-6).in_half_pi_z());
        assert!(!ExactAngle::Real(1.0).in_pi_z());
    }

    #[test]
    fn reconstruction_prefers_smallest_denominator() {
        assert_eq!(reconstruct_rational_pi(PI * 2.0 / 6.0), Some((1, 3)));
        assert_eq!(reconstruct_rational_pi(PI / 65.0), None);
        assert_eq!(reconstruct_rational_pi(f64::NAN), None);
    }

    #[test]
    fn wrapping_tracks_turn_parity() {
        assert_eq!(ExactAngle::rational_pi(5, 2).wrap_two_pi(), (ExactAngle::rational_pi(1, 2), true));
        assert_eq!(ExactAngle::rational_pi(-1, 2).wrap_two_pi(), (ExactAngle::rational_pi(3, 2), true));
        assert_eq!(ExactAngle::rational_pi(9, 2).wrap_two_pi(), (ExactAngle::rational_pi(1, 2), false));
        let (w, odd) = ExactAngle::Real(-0.5).wrap_two_pi();
        assert!((w.radians() - (2.0 * PI - 0.5)).abs() < 1e-15 && odd);
    }

    proptest! {
        #[test]
        fn rational_round_trip(p in -200i64..200, q in 1i64..=64) {
            let a = ExactAngle::rational_pi(p, q);
            let back = ExactAngle::detect(a.radians());
            prop_assert_eq!(back, a);
        }

        #[test]
        fn exact_arithmetic(p1 in -50i64..50, q1 in 1i64..20, p2 in -50i64..50, q2 in 1i64..20) {
            let (a, b) = (ExactAngle::rational_pi(p1, q1), ExactAngle::rational_pi(p2, q2));
            prop_assert!((a.add(&b).radians() - (a.radians() + b.radians())).abs() < 1e-9);
            prop_assert_eq!(a.sub(&b).add(&b), a);
        }
    }
}
