use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact element `a + b·i + c·√2 + d·i√2` of the field ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Scalar { a, b, c, d }
    }

    /// Convenience constructor from small integer ratios `(num, den)`.
    pub fn from_ratios(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Self {
        let r = |(n, m): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(m));
        Scalar::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { a: q, ..Scalar::default() }
    }

    pub fn frac(n: i64, m: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    pub fn i() -> Self {
        Scalar { b: rat(1), ..Scalar::default() }
    }

    pub fn sqrt2() -> Self {
        Scalar { c: rat(1), ..Scalar::default() }
    }

    pub fn i_sqrt2() -> Self {
        Scalar { d: rat(1), ..Scalar::default() }
    }

    /// Components in the basis `{1, i, √2, i√2}`.
    pub fn parts(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the element lies in the real subfield ℚ(√2).
    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Complex conjugation: fixes √2, sends i to −i.
    pub fn conj(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    pub fn re(&self) -> Scalar {
        Scalar { a: self.a.clone(), c: self.c.clone(), ..Scalar::default() }
    }

    pub fn im(&self) -> Scalar {
        Scalar { a: self.b.clone(), c: self.d.clone(), ..Scalar::default() }
    }

    /// `|x|² = x·x̄`, an element of ℚ(√2).
    pub fn norm_sqr(&self) -> Scalar {
        self * &self.conj()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        // x⁻¹ = x̄ / |x|², and |x|² = m + n√2 inverts through (m − n√2)/(m² − 2n²).
        let n2 = self.norm_sqr();
        let (m, n) = (&n2.a, &n2.c);
        let den = m * m - rat(2) * n * n;
        let real_inv = Scalar { a: m / &den, c: -(n / &den), ..Scalar::default() };
        Some(&self.conj() * &real_inv)
    }

    /// Sign of a real element, `None` if the element is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let (a, c) = (&self.a, &self.c);
        let sa = a.cmp(&BigRational::zero());
        let sc = c.cmp(&BigRational::zero());
        Some(match (sa, sc) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Opposite signs: whichever of |a| and |c|√2 dominates wins.
            (x, y) => match (a * a).cmp(&(rat(2) * c * c)) {
                Ordering::Greater => x,
                Ordering::Less => y,
                Ordering::Equal => Ordering::Equal,
            },
        })
    }

    pub fn is_positive(&self) -> bool {
        self.real_sign() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.real_sign() == Some(Ordering::Less)
    }

    /// Exact non-negative square root of a non-negative element of ℚ(√2),
    /// when it exists inside ℚ(√2).
    pub fn real_sqrt(&self) -> Option<Scalar> {
        match self.real_sign()? {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Scalar::zero()),
            Ordering::Greater => {}
        }
        let (a, c) = (&self.a, &self.c);
        // (x + y√2)² = (x² + 2y²) + 2xy√2
        let candidates: Vec<(BigRational, BigRational)> = if c.is_zero() {
            let mut v = Vec::new();
            if let Some(x) = rational_sqrt(a) {
                v.push((x, BigRational::zero()));
            }
            if let Some(y) = rational_sqrt(&(a / rat(2))) {
                v.push((BigRational::zero(), y));
            }
            v
        } else {
            let disc = a * a - rat(2) * c * c;
            let root = rational_sqrt(&disc)?;
            let mut v = Vec::new();
            for x2 in [(a + &root) / rat(2), (a - &root) / rat(2)] {
                if let Some(x) = rational_sqrt(&x2) {
                    if !x.is_zero() {
                        let y = c / (rat(2) * &x);
                        v.push((x, y));
                    }
                }
            }
            v
        };
        candidates
            .into_iter()
            .map(|(x, y)| Scalar { a: x, c: y, ..Scalar::default() })
            .map(|s| if s.is_negative() { -s } else { s })
            .find(|s| &(s * s) == self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (p, q, r, s) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let two = rat(2);
        // i² = −1, (√2)² = 2, i·√2 = i√2, i·i√2 = −√2, √2·i√2 = 2i, (i√2)² = −2
        Scalar {
            a: a * p - b * q + &two * c * r - &two * d * s,
            b: a * q + b * p + &two * c * s + &two * d * r,
            c: a * r + c * p - b * s - d * q,
            d: a * s + d * p + b * r + c * q,
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero in ℚ(i,√2)")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_examples() {
        let x = Scalar::one() + Scalar::i();
        assert_eq!(x.conj(), Scalar::one() - Scalar::i());
        assert_eq!(Scalar::sqrt2().conj(), Scalar::sqrt2());
        // (1+i)(1−i) = 1 − i + i − i² = 2
        let y = Scalar::one() - Scalar::i();
        assert_eq!(&x * &y, Scalar::from_int(2));
        assert_eq!((&x * &y).conj(), x.conj() * y.conj());
    }

    #[test]
    fn basis_products() {
        let (i, r, ir) = (Scalar::i(), Scalar::sqrt2(), Scalar::i_sqrt2());
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(&r * &r, Scalar::from_int(2));
        assert_eq!(&ir * &ir, Scalar::from_int(-2));
        assert_eq!(&i * &r, ir);
        assert_eq!(&i * &ir, -&r);
        assert_eq!(&r * &ir, Scalar::from_int(2) * &i);
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = Scalar::from_ratios((1, 2), (-3, 1), (2, 7), (1, 1));
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn real_sign_handles_cancellation() {
        // 3 − 2√2 ≈ 0.17 > 0, 1 − √2 < 0
        assert!(Scalar::from_ratios((3, 1), (0, 1), (-2, 1), (0, 1)).is_positive());
        assert!(Scalar::from_ratios((1, 1), (0, 1), (-1, 1), (0, 1)).is_negative());
        assert_eq!(Scalar::i().real_sign(), None);
    }

    #[test]
    fn sqrt_in_real_subfield() {
        // (1 + √2)² = 3 + 2√2
        let x = Scalar::from_ratios((3, 1), (0, 1), (2, 1), (0, 1));
        assert_eq!(x.real_sqrt().unwrap(), Scalar::one() + Scalar::sqrt2());
        assert_eq!(Scalar::from_int(2).real_sqrt().unwrap(), Scalar::sqrt2());
        assert_eq!(Scalar::frac(9, 4).real_sqrt().unwrap(), Scalar::frac(3, 2));
        assert!(Scalar::from_int(5).real_sqrt().is_none());
        assert!(Scalar::from_int(-4).real_sqrt().is_none());
    }
}
