use std::fmt;
use std::ops::{Div, Mul};

use rug::{Integer, Rational};

use crate::bigfloat::{exp_pi_i, BigComplex};

/// The unit complex number `exp(pi i theta)`, stored as the exact exponent
/// `theta` reduced into `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(theta: Rational) -> Self {
        Phase(reduce_mod_two(theta))
    }

    pub fn one() -> Self {
        Phase(Rational::new())
    }

    /// `+1` or `-1` as a phase.
    pub fn from_sign(sign: i32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        if sign == 1 {
            Self::one()
        } else {
            Phase(Rational::from(1))
        }
    }

    pub fn exponent(&self) -> &Rational {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Phase::new(Rational::from(-&self.0))
    }

    pub fn pow(&self, e: i64) -> Self {
        Phase::new(Rational::from(&self.0 * Integer::from(e)))
    }

    pub fn to_complex(&self, prec: u32) -> BigComplex {
        exp_pi_i(&self.0, prec)
    }
}

pub(crate) fn reduce_mod_two(theta: Rational) -> Rational {
    let (num, den) = theta.into_numer_denom();
    let period = Integer::from(&den * 2u32);
    let num = num.modulo(&period);
    Rational::from((num, den))
}

impl Mul for &Phase {
    type Output = Phase;

    fn mul(self, rhs: &Phase) -> Phase {
        Phase::new(Rational::from(&self.0 + &rhs.0))
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        &self * &rhs
    }
}

impl Div for &Phase {
    type Output = Phase;

    fn div(self, rhs: &Phase) -> Phase {
        Phase::new(Rational::from(&self.0 - &rhs.0))
    }
}

impl Div for Phase {
    type Output = Phase;

    fn div(self, rhs: Phase) -> Phase {
        &self / &rhs
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(pi i * {})", self.0)
    }
}
