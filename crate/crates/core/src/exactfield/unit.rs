use std::fmt;
use std::ops::Neg;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Rational power `p/q` of the length-unit space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitExponent {
    num: i64,
    den: i64,
}

impl UnitExponent {
    pub const ZERO: UnitExponent = UnitExponent { num: 0, den: 1 };
    pub const HALF: UnitExponent = UnitExponent { num: 1, den: 2 };

    /// Reduced exponent `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "unit exponent with zero denominator");
        let g = num.gcd(&den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        UnitExponent { num: s * num / g, den: s * den / g }
    }

    pub fn integer(n: i64) -> Self {
        UnitExponent { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exponent of a tensor product of scaled quantities.
    pub fn combine(self, other: UnitExponent) -> UnitExponent {
        let l = self.den.lcm(&other.den);
        UnitExponent::new(self.num * (l / self.den) + other.num * (l / other.den), l)
    }

    /// Exponent of the dual unit space.
    pub fn dual(self) -> UnitExponent {
        -self
    }
}

/// Free-function form of [`UnitExponent::combine`].
pub fn unit_combine(u1: UnitExponent, u2: UnitExponent) -> UnitExponent {
    u1.combine(u2)
}

impl Neg for UnitExponent {
    type Output = UnitExponent;
    fn neg(self) -> UnitExponent {
        UnitExponent { num: -self.num, den: self.den }
    }
}

impl Default for UnitExponent {
    fn default() -> Self {
        UnitExponent::ZERO
    }
}

impl fmt::Display for UnitExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
