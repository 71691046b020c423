//! Exact nonnegative rationals and the factorial-type integers built from them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// A nonnegative rational number in lowest terms with arbitrary-precision
/// numerator and denominator.
///
/// Displays as `p/q` always, including integers (`12/1`), so that serialized
/// prefactors and eigenvalues share one lossless format.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactNonnegativeRational(Ratio<BigUint>);

impl ExactNonnegativeRational {
    /// Panics when `denom` is zero.
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Self {
        Self(Ratio::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigUint>) -> Self {
        Self(Ratio::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }

    /// Correctly rounded conversion; values beyond the `f64` range saturate
    /// to infinity or zero.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `p/q` rendering.
    pub fn to_fraction_string(&self) -> String {
        alloc::format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for ExactNonnegativeRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactNonnegativeRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<u64> for ExactNonnegativeRational {
    fn from(value: u64) -> Self {
        Self::from_integer(value)
    }
}

impl From<BigUint> for ExactNonnegativeRational {
    fn from(value: BigUint) -> Self {
        Self::from_integer(value)
    }
}

impl Add for ExactNonnegativeRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactNonnegativeRational> for &'a ExactNonnegativeRational {
    type Output = ExactNonnegativeRational;
    fn add(self, rhs: Self) -> ExactNonnegativeRational {
        ExactNonnegativeRational(&self.0 + &rhs.0)
    }
}

impl Mul for ExactNonnegativeRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactNonnegativeRational> for &'a ExactNonnegativeRational {
    type Output = ExactNonnegativeRational;
    fn mul(self, rhs: Self) -> ExactNonnegativeRational {
        ExactNonnegativeRational(&self.0 * &rhs.0)
    }
}

impl Div for ExactNonnegativeRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self(self.0 / rhs.0)
    }
}

impl Sum for ExactNonnegativeRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        Self(iter.map(|r| r.0).sum())
    }
}

impl Product for ExactNonnegativeRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        Self(iter.map(|r| r.0).product())
    }
}

/// `a!/(a-k)!` as an exact integer.
pub fn falling_factorial(a: usize, k: usize) -> Result<ExactNonnegativeRational> {
    falling_factorial_int(a, k).map(ExactNonnegativeRational::from_integer)
}

pub(crate) fn falling_factorial_int(a: usize, k: usize) -> Result<BigUint> {
    if k > a {
        return Err(Error::FallingFactorialRange { a, k });
    }
    Ok(product_range(a - k + 1, a))
}

/// Product of `lo..=hi`, split in halves so the operands stay balanced.
fn product_range(lo: usize, hi: usize) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::one();
        for i in lo..=hi {
            acc *= i as u64;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    product_range(lo, mid) * product_range(mid + 1, hi)
}

pub fn factorial(n: usize) -> BigUint {
    product_range(1, n)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// Row `n` of Pascal's triangle, exactly.
pub(crate) fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c *= (n - k) as u64;
        c /= (k + 1) as u64;
        row.push(c.clone());
    }
    row
}

/// Probability of drawing `k` marked items when sampling `m` of `n` items
/// of which `marked` are marked: `C(marked, k) C(n - marked, m - k) / C(n, m)`.
pub fn hypergeometric_pmf(n: usize, marked: usize, m: usize, k: usize) -> ExactNonnegativeRational {
    if marked > n || m > n || k > marked || k > m || m - k > n - marked {
        return ExactNonnegativeRational::zero();
    }
    ExactNonnegativeRational::new(binomial(marked, k) * binomial(n - marked, m - k), binomial(n, m))
}
