//! Points of the parameter space with exact rational coordinates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Parses an integer or a `p/q` rational. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Rational(s.to_string());
    let int = |p: &str| -> Result<BigInt> {
        let p = p.trim();
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(p).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(p)?, q))
        }
    }
}

/// Parses a comma-separated list of rationals, e.g. `1/2,3`.
pub fn parse_coords(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

/// A point of the n-parameter space.
///
/// The derived `Ord` is lexicographic and only used for canonical ordering of
/// collections; the filtration order is [`Grade::leq`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(Vec<BigRational>);

impl Grade {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Grade(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Grade(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Builds a grade from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Grade(
            coords
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        Grade(vec![BigRational::zero(); n])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    fn check_dim(&self, other: &Grade) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// `self ⪯ other` coordinatewise.
    pub fn leq(&self, other: &Grade) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.leq_unchecked(other))
    }

    /// Coordinatewise maximum.
    pub fn lub(&self, other: &Grade) -> Result<Grade> {
        self.check_dim(other)?;
        Ok(self.lub_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &Grade) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self ≺ other`: strictly smaller in every coordinate.
    pub fn strictly_below(&self, other: &Grade) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    pub(crate) fn lub_unchecked(&self, other: &Grade) -> Grade {
        Grade(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// True iff every coordinate is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|c| c > &BigRational::zero())
    }

    /// Coordinates formatted as strings (`p/q` or integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(coords: &[S]) -> Result<Grade> {
        coords
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Grade)
    }
}

impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_coords(s).map(Grade)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_rational("-1/2").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("4/2").unwrap(), BigRational::from_integer(2.into()));
        for bad in ["0.5", "1e3", "", "1/0", "a", "1/", "/2", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn leq_examples() {
        let g = Grade::from_ints;
        assert!(g(&[3, 2]).leq(&g(&[3, 5])).unwrap());
        assert!(!g(&[3, 5]).leq(&g(&[6, 2])).unwrap());
        assert!(!g(&[6, 2]).leq(&g(&[3, 5])).unwrap());
        assert!(g(&[3, 5]).leq(&g(&[3, 5])).unwrap());
        assert!(g(&[1]).leq(&g(&[1, 2])).is_err());
    }

    #[test]
    fn lub_examples() {
        let g = Grade::from_ints;
        assert_eq!(g(&[3, 5]).lub(&g(&[6, 2])).unwrap(), g(&[6, 5]));
        assert_eq!(g(&[3, 5]).lub(&g(&[3, 5])).unwrap(), g(&[3, 5]));
        assert_eq!(g(&[0, 1]).lub(&g(&[1, 0])).unwrap(), g(&[1, 1]));
        assert!(g(&[0]).lub(&g(&[0, 0])).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let u = Grade::from_ratios(&[(1, 2), (-3, 1)]);
        assert_eq!(u.to_string(), "(1/2,-3)");
        assert_eq!(Grade::from_strings(&u.to_strings()).unwrap(), u);
        assert_eq!("1/2,-3".parse::<Grade>().unwrap(), u);
    }
}
