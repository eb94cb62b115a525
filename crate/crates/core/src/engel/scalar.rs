use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Coefficient field of a [`FreePoly`](super::FreePoly).
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync
{
    fn from_i64(v: i64) -> Self;

    /// The value as an integer, when it is one that fits. Fields whose
    /// elements are not integers return `None`.
    fn to_exact_i128(&self) -> Option<i128>;

    fn from_i128(v: i128) -> Self;

    /// Parses the `Display` form.
    fn parse(s: &str) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_exact_i128(&self) -> Option<i128> {
        if self.is_integer() {
            self.numer().to_i128()
        } else {
            None
        }
    }

    fn from_i128(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(s: &str) -> Option<Self> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let (n, d): (BigInt, BigInt) = (n.parse().ok()?, d.parse().ok()?);
        (!d.is_zero()).then(|| BigRational::new(n, d))
    }
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModP<const P: u64>(u64);

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1 << 61) - 1;

impl<const P: u64> ModP<P> {
    pub fn new(v: u64) -> Self {
        ModP(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> fmt::Display for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for ModP<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ModP(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for ModP<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ModP(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for ModP<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ModP(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for ModP<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in a prime field")
    }
}

impl<const P: u64> Rem for ModP<P> {
    type Output = Self;
    /// Every nonzero element divides every other, so the remainder is zero.
    fn rem(self, o: Self) -> Self {
        assert!(!o.is_zero(), "remainder by zero in a prime field");
        ModP(0)
    }
}

impl<const P: u64> Neg for ModP<P> {
    type Output = Self;
    fn neg(self) -> Self {
        ModP((P - self.0) % P)
    }
}

impl<const P: u64> Zero for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for ModP<P> {
    fn one() -> Self {
        ModP(1 % P)
    }
}

impl<const P: u64> Num for ModP<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let v = i128::from_str_radix(s, radix)?;
        Ok(<Self as Scalar>::from_i128(v))
    }
}

impl<const P: u64> Scalar for ModP<P> {
    fn from_i64(v: i64) -> Self {
        Self::from_i128(v as i128)
    }

    fn to_exact_i128(&self) -> Option<i128> {
        None
    }

    fn from_i128(v: i128) -> Self {
        ModP(v.rem_euclid(P as i128) as u64)
    }

    fn parse(s: &str) -> Option<Self> {
        s.parse::<i128>().ok().map(Self::from_i128)
    }
}

/// Sum of absolute values, when every coefficient is an integer fitting in `i128`.
pub(crate) fn l1_norm<'a, C: Scalar + 'a>(coeffs: impl IntoIterator<Item = &'a C>) -> Option<u128> {
    let mut total: u128 = 0;
    for c in coeffs {
        let v = c.to_exact_i128()?;
        total = total.checked_add(v.unsigned_abs())?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = ModP<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        assert_eq!(a * a.inverse().unwrap(), F7::one());
        assert_eq!(-a + a, F7::zero());
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::new(2) / F7::new(4), F7::new(4));
        assert_eq!(F7::zero().inverse(), None);
    }

    #[test]
    fn mersenne_inverse() {
        let x = ModP::<P61>::new(123_456_789);
        assert_eq!(x * x.inverse().unwrap(), ModP::one());
    }

    #[test]
    fn rational_integer_view() {
        assert_eq!(BigRational::from_i64(-5).to_exact_i128(), Some(-5));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.to_exact_i128(), None);
    }
}
