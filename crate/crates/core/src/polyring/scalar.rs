use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient ring used throughout the crate.
///
/// Implemented for `BigInt` (integer specializations of `t`), `BigRational`
/// (rational `t` and linear algebra) and [`TPoly`](super::TPoly) (symbolic `t`).
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_in(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn sub_in(&mut self, other: &Self) {
        *self = self.sub_ref(other);
    }

    /// `self += a * b`
    fn fma_in(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            self.add_in(&a.mul_ref(b));
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// The value as an integer, when it is one.
    fn to_bigint(&self) -> Option<BigInt>;
}

/// Rings in which every nonzero element can be inverted.
pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Self;

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_in(&mut self, other: &Self) {
        *self -= other;
    }
    fn fma_in(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
    fn to_bigint(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_in(&mut self, other: &Self) {
        *self -= other;
    }
    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Parses `"p/q"`, `"p"` or a decimal integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if Zero::is_zero(&q) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", -r.numer(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
