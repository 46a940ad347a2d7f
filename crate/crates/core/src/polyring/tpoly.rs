use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::Coeff;

/// A polynomial in `t` with integer coefficients, lowest degree first.
///
/// The coefficient vector never ends with a zero, so the zero polynomial is
/// the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        TPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        TPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * t + BigRational::from_integer(c.clone())
            })
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Coeff for TPoly {
    fn zero() -> Self {
        TPoly::default()
    }
    fn one() -> Self {
        TPoly::constant(BigInt::one())
    }
    fn from_i64(v: i64) -> Self {
        TPoly::constant(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        TPoly::constant(v.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_in(other);
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_in(other);
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
    fn neg_ref(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn add_in(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        *self = TPoly::new(std::mem::take(&mut self.coeffs));
    }
    fn sub_in(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        *self = TPoly::new(std::mem::take(&mut self.coeffs));
    }
    fn to_bigint(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}
