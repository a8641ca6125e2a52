//! Unit-circle phases with exact arithmetic.
//!
//! A [`Phase`] is the unit complex number `e^{2πiq}` stored through its
//! representative `q ∈ [0, 1)`. Twists, braidings, quantum dimensions and
//! monodromy scalars all live here; equality is structural, so every
//! "lies in ℤ" test is an exact zero test.

use core::fmt;

use num_bigint::BigInt;

use crate::rational::Rational;

/// The unit scalar `e^{2πiq}`, reduced so that `0 <= q < 1`.
///
/// Multiplication of phases is addition of representatives modulo 1; the
/// inverse is negation modulo 1 and the identity is `q = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase(Rational);

impl Phase {
    /// The phase `e^{2πiq}` for an arbitrary rational `q`.
    pub fn new(q: Rational) -> Self {
        Phase(q.mod_one())
    }

    /// The twist phase `e^{2πih}` of a module of conformal weight `h`.
    pub fn from_weight(h: &Rational) -> Self {
        Phase(h.mod_one())
    }

    /// The identity phase `1`.
    pub fn one() -> Self {
        Phase(Rational::zero())
    }

    /// The phase `-1`.
    pub fn minus_one() -> Self {
        Phase(Rational::new(1, 2))
    }

    /// Whether this is the identity.
    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    /// The representative `q ∈ [0, 1)`.
    pub fn representative(&self) -> &Rational {
        &self.0
    }

    /// Product of phases.
    pub fn mul(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 + &other.0)
    }

    /// Inverse phase.
    pub fn inv(&self) -> Phase {
        Phase::new(-&self.0)
    }

    /// Quotient `self / other`.
    pub fn div(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 - &other.0)
    }

    /// `self^n` for a machine integer exponent.
    pub fn pow(&self, n: i64) -> Phase {
        self.pow_big(&BigInt::from(n))
    }

    /// `self^n` for an arbitrary integer exponent.
    pub fn pow_big(&self, n: &BigInt) -> Phase {
        Phase::new(self.0.scale_big(n))
    }

    /// Multiplicative order: the denominator of the reduced representative.
    pub fn order(&self) -> BigInt {
        self.0.denominator().clone()
    }

    /// Whether the phase is a sign, i.e. `q ∈ {0, 1/2}`.
    pub fn is_sign(&self) -> bool {
        self.as_sign().is_some()
    }

    /// Reads the phase as a sign: `1 ↦ Plus`, `-1 ↦ Minus`, else `None`.
    pub fn as_sign(&self) -> Option<Sign> {
        if self.0.is_zero() {
            Some(Sign::Plus)
        } else if self.0 == Rational::new(1, 2) {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl From<Sign> for Phase {
    fn from(s: Sign) -> Phase {
        match s {
            Sign::Plus => Phase::one(),
            Sign::Minus => Phase::minus_one(),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{})", self.0)
    }
}

/// A sign `±1`, the only phases a parity classification can consume.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    /// `+1`
    Plus,
    /// `-1`
    Minus,
}

impl Sign {
    /// `+1` or `-1` as a machine integer.
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// The sign of `e^{2πih}` for half-integer `h`, `None` otherwise.
    pub fn of_weight(h: &Rational) -> Option<Sign> {
        Phase::from_weight(h).as_sign()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn weight_reduction() {
        assert_eq!(Phase::from_weight(&Rational::zero()), Phase::one());
        assert_eq!(
            Phase::from_weight(&Rational::new(3, 4)),
            Phase::new(Rational::new(3, 4))
        );
        // X1^- weight at p = 3 is 7/4, the same twist as 3/4.
        assert_eq!(
            Phase::from_weight(&Rational::new(7, 4)),
            Phase::new(Rational::new(3, 4))
        );
    }

    #[test]
    fn powers() {
        assert_eq!(Phase::minus_one().pow(2), Phase::one());
        assert_eq!(
            Phase::new(Rational::new(1, 3)).pow(-1),
            Phase::new(Rational::new(2, 3))
        );
        assert_eq!(
            Phase::new(Rational::new(1, 4)).pow(3),
            Phase::new(Rational::new(3, 4))
        );
    }

    #[test]
    fn signs() {
        assert_eq!(Phase::one().as_sign(), Some(Sign::Plus));
        assert_eq!(Phase::minus_one().as_sign(), Some(Sign::Minus));
        assert_eq!(Phase::new(Rational::new(1, 4)).as_sign(), None);
        assert!(Phase::minus_one().is_sign());
    }

    #[test]
    fn order_is_reduced_denominator() {
        assert_eq!(Phase::one().order(), BigInt::from(1));
        assert_eq!(Phase::new(Rational::new(5, 10)).order(), BigInt::from(2));
        assert_eq!(Phase::new(Rational::new(3, 8)).order(), BigInt::from(8));
    }

    #[test]
    fn display_uses_representative() {
        assert_eq!(Phase::minus_one().to_string(), "1/2");
        assert_eq!(Phase::one().to_string(), "0");
    }
}
