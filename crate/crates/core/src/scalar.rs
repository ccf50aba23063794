//! Scalar abstraction shared by the linear algebra and polynomial layers.
//!
//! Everything in the crate is written against [`Scalar`], a field in the
//! `num-traits` sense. The verification routes are only meaningful over an
//! exact field, so the crate root fixes [`crate::Rat`] (arbitrary precision
//! rationals) as the working type; `f64` still satisfies the bound and is
//! handy for quick numeric experiments.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, Zero};

/// A field element usable by every algorithm in the crate.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + NumAssignRef
    + Neg<Output = Self>
    + FromPrimitive
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }

    /// `self^exp` by repeated squaring.
    fn powu(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &base;
            }
            exp >>= 1;
            if exp > 0 {
                let b = base.clone();
                base *= &b;
            }
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Send
        + Sync
        + 'static
        + NumAssignRef
        + Neg<Output = T>
        + FromPrimitive
{
}

/// Binomial coefficient as a scalar; zero outside `0 <= k <= n`.
pub fn binomial<T: Scalar>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc *= T::from_int(i64::from(n - i));
        acc /= T::from_int(i64::from(i + 1));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}` (expected p or p/q)")]
pub struct ParseRatError(pub String);

/// Parses `p` or `p/q` into an exact rational. Floats are rejected.
pub fn parse_rat(s: &str) -> Result<BigRational, ParseRatError> {
    let t = s.trim();
    let err = || ParseRatError(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Parses a comma separated list of rationals, e.g. `1,-1,1/3`.
pub fn parse_rat_list(s: &str) -> Result<Vec<BigRational>, ParseRatError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literals() {
        let r = parse_rat("-6/4").unwrap();
        assert_eq!(r, BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rat(" 7 ").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert_eq!(parse_rat_list("1,-1,2/3").unwrap().len(), 3);
    }

    #[test]
    fn binomials_and_powers() {
        assert_eq!(binomial::<BigRational>(6, 2), BigRational::from_integer(15.into()));
        assert_eq!(binomial::<BigRational>(2, 5), BigRational::zero());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.powu(3), BigRational::new(1.into(), 8.into()));
        assert_eq!(2.0f64.powu(10), 1024.0);
    }
}
