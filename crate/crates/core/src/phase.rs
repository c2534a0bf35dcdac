// Copyright (C) 2026 - The zx-core developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact spider phases, stored as rational multiples of π.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use thiserror::Error;

/// A phase expressed in units of π, always normalized to the range [0, 2).
///
/// The underlying fraction is kept in lowest terms with a positive
/// denominator, so structural equality coincides with equality of angles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(Rational64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseParseError {
    #[error("empty phase string")]
    Empty,
    #[error("invalid phase `{0}`: expected `p/q` or an integer")]
    Malformed(String),
    #[error("invalid phase `{0}`: zero denominator")]
    ZeroDenominator(String),
}

impl Phase {
    pub const ZERO: Phase = Phase(Rational64::new_raw(0, 1));
    pub const PI: Phase = Phase(Rational64::new_raw(1, 1));
    pub const HALF_PI: Phase = Phase(Rational64::new_raw(1, 2));
    pub const QUARTER_PI: Phase = Phase(Rational64::new_raw(1, 4));

    /// Builds the phase `numer/denom · π`, reducing and wrapping mod 2.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "phase denominator must be nonzero");
        Self::from_rational(Rational64::new(numer, denom))
    }

    pub fn from_rational(r: Rational64) -> Self {
        let denom = *r.denom();
        let numer = r.numer().rem_euclid(2 * denom);
        Phase(Rational64::new(numer, denom))
    }

    /// The phase `k·π/4`, the grid used by Clifford+T diagrams.
    pub fn eighth_turns(k: i64) -> Self {
        Self::new(k, 4)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_rational(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_pi(&self) -> bool {
        self.0 == Rational64::new_raw(1, 1)
    }

    /// Either 0 or π.
    pub fn is_pauli(&self) -> bool {
        self.denom() == 1
    }

    /// The angle in radians.
    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * (self.numer() as f64) / (self.denom() as f64)
    }

    /// `e^{iα}` for this phase α.
    ///
    /// Multiples of π/2 are returned exactly so that Clifford scalars
    /// do not pick up rounding noise.
    pub fn exp_i(&self) -> Complex64 {
        match (self.numer(), self.denom()) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, self.radians()),
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_rational(-self.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl From<i64> for Phase {
    fn from(n: i64) -> Self {
        Phase::new(n, 1)
    }
}

impl From<Rational64> for Phase {
    fn from(r: Rational64) -> Self {
        Phase::from_rational(r)
    }
}

/// Formats as `p/q` in units of π, e.g. `1/4`, `0/1`, `1/1`.
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}π)", self)
    }
}

/// Accepts `p/q` or a bare integer `p`, both in units of π. Negative
/// numerators and unreduced fractions are normalized.
impl FromStr for Phase {
    type Err = PhaseParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PhaseParseError::Empty);
        }
        let malformed = || PhaseParseError::Malformed(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| malformed())?,
                d.trim().parse::<i64>().map_err(|_| malformed())?,
            ),
            None => (s.parse::<i64>().map_err(|_| malformed())?, 1),
        };
        if denom == 0 {
            return Err(PhaseParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Phase::new(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn wraps_into_range() {
        assert_eq!(Phase::new(5, 2), Phase::new(1, 2));
        assert_eq!(Phase::new(-1, 4), Phase::new(7, 4));
        assert_eq!(Phase::new(2, 1), Phase::ZERO);
        assert_eq!(Phase::new(4, 8), Phase::HALF_PI);
    }

    #[test]
    fn negation() {
        assert_eq!(-Phase::HALF_PI, Phase::new(3, 2));
        assert_eq!(-Phase::PI, Phase::PI);
        assert_eq!(-Phase::ZERO, Phase::ZERO);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/4".parse::<Phase>().unwrap(), Phase::QUARTER_PI);
        assert_eq!("-1/2".parse::<Phase>().unwrap(), Phase::new(3, 2));
        assert_eq!("3".parse::<Phase>().unwrap(), Phase::PI);
        assert_eq!("2/4".parse::<Phase>().unwrap().to_string(), "1/2");
        assert_eq!(Phase::ZERO.to_string(), "0/1");
        assert!(matches!("1/0".parse::<Phase>(), Err(PhaseParseError::ZeroDenominator(_))));
        assert!(matches!("a/b".parse::<Phase>(), Err(PhaseParseError::Malformed(_))));
        assert!(matches!("".parse::<Phase>(), Err(PhaseParseError::Empty)));
    }

    #[test]
    fn exact_clifford_exponentials() {
        assert_eq!(Phase::PI.exp_i(), Complex64::new(-1.0, 0.0));
        assert_eq!(Phase::new(3, 2).exp_i(), Complex64::new(0.0, -1.0));
        let t = Phase::QUARTER_PI.exp_i();
        assert!((t - Complex64::new(0.5f64.sqrt(), 0.5f64.sqrt())).norm() < 1e-15);
    }

    fn in_canonical_form(p: Phase) -> bool {
        let (n, d) = (p.numer(), p.denom());
        d >= 1 && (0..2 * d).contains(&n) && n.gcd(&d) == 1
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in -50i64..50, b in 1i64..24, c in -50i64..50, d in 1i64..24) {
            let p = Phase::new(a, b);
            let q = Phase::new(c, d);
            prop_assert!(in_canonical_form(p));
            prop_assert!(in_canonical_form(p + q));
            prop_assert!(in_canonical_form(-p));
            prop_assert_eq!(p + (-p), Phase::ZERO);
            prop_assert_eq!((p + q) - q, p);
            let expected = (a as f64 / b as f64 + c as f64 / d as f64).rem_euclid(2.0);
            let got = (p + q).numer() as f64 / (p + q).denom() as f64;
            prop_assert!((expected - got).abs() < 1e-12 || (expected - got).abs() > 2.0 - 1e-12);
        }

        #[test]
        fn display_round_trips(a in -100i64..100, b in 1i64..64) {
            let p = Phase::new(a, b);
            prop_assert_eq!(p.to_string().parse::<Phase>().unwrap(), p);
        }
    }
}
