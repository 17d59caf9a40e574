//! Exact rational scalar used for every coordinate.
//!
//! `Rational` wraps a big-integer fraction that is always kept in lowest
//! terms with a positive denominator. Its text form is canonical: `n` for
//! integers and `n/d` otherwise, so equal values always print identically.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(RBig);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("rational {0:?} is not in canonical lowest terms")]
    NonCanonical(String),
}

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(RBig::from_parts_signed(IBig::from(num), IBig::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(RBig::from(n))
    }

    pub fn from_big(num: IBig, den: UBig) -> Self {
        assert!(den != UBig::ZERO, "zero denominator");
        Rational(RBig::from_parts(num, den))
    }

    pub fn zero() -> Self {
        Rational(RBig::ZERO)
    }

    pub fn one() -> Self {
        Rational(RBig::ONE)
    }

    pub fn numer(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denom(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_zero(&self) -> bool {
        self.0.numerator() == &IBig::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0.numerator() > &IBig::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0.numerator() < &IBig::ZERO
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.numerator().cmp(&IBig::ZERO) {
            core::cmp::Ordering::Greater => 1,
            core::cmp::Ordering::Less => -1,
            core::cmp::Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        (a + b) / Rational::from_integer(2)
    }

    pub fn min<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Nearest `f64`, for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Parses the canonical text form only: `-?n` or `-?n/d` with `d > 1`,
    /// no leading zeros, no `-0`, and `gcd(n, d) = 1`.
    pub fn parse_canonical(s: &str) -> Result<Rational, RationalParseError> {
        let malformed = || RationalParseError::Malformed(String::from(s));
        let non_canonical = || RationalParseError::NonCanonical(String::from(s));

        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num_text.strip_prefix('-').unwrap_or(num_text);
        if !is_digit_run(digits) || den_text.is_some_and(|d| !is_digit_run(d)) {
            return Err(malformed());
        }
        let num: IBig = num_text.parse().map_err(|_| malformed())?;
        let den: UBig = match den_text {
            Some(d) => d.parse().map_err(|_| malformed())?,
            None => UBig::ONE,
        };
        if den == UBig::ZERO {
            return Err(malformed());
        }
        let value = Rational(RBig::from_parts(num.clone(), den.clone()));
        let leading_zero = |t: &str| t.len() > 1 && t.starts_with('0');
        if leading_zero(digits)
            || den_text.is_some_and(leading_zero)
            || num_text == "-0"
            || (den_text.is_some() && den == UBig::ONE)
            || value.numer() != &num
            || value.denom() != &den
        {
            return Err(non_canonical());
        }
        Ok(value)
    }
}

fn is_digit_run(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denominator() == &UBig::ONE {
            write!(f, "{}", self.0.numerator())
        } else {
            write!(f, "{}/{}", self.0.numerator(), self.0.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lenient parse: accepts any `n` or `n/d` and reduces it.
impl FromStr for Rational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RationalParseError::Malformed(String::from(s));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: IBig = n.parse().map_err(|_| malformed())?;
        let den: IBig = d.parse().map_err(|_| malformed())?;
        if den == IBig::ZERO {
            return Err(malformed());
        }
        Ok(Rational(RBig::from_parts_signed(num, den)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_display() {
        assert_eq!(Rational::new(2, 4).to_string(), "1/2");
        assert_eq!(Rational::new(1, -3).to_string(), "-1/3");
        assert_eq!(Rational::new(6, 3).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn strict_parse_rejects_non_canonical() {
        for bad in ["2/4", "1/-3", "3/1", "-0", "01", "1/03", "0/5"] {
            assert!(
                matches!(
                    Rational::parse_canonical(bad),
                    Err(RationalParseError::NonCanonical(_)) | Err(RationalParseError::Malformed(_))
                ),
                "{bad} accepted"
            );
        }
        assert!(matches!(Rational::parse_canonical("2/4"), Err(RationalParseError::NonCanonical(_))));
        assert!(matches!(Rational::parse_canonical("1/-3"), Err(RationalParseError::Malformed(_))));
        for bad in ["", "/", "1/", "a", "1/0", "+1", " 1", "1.5"] {
            assert!(Rational::parse_canonical(bad).is_err(), "{bad:?} accepted");
        }
        for good in ["0", "-7", "1/2", "-13/48", "123456789012345678901234567891/2"] {
            assert_eq!(Rational::parse_canonical(good).unwrap().to_string(), good);
        }
    }

    #[test]
    fn lenient_parse_reduces() {
        assert_eq!("2/4".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("1/-3".parse::<Rational>().unwrap(), Rational::new(-1, 3));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn midpoint_and_order() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 2);
        assert_eq!(Rational::midpoint(&a, &b), Rational::new(5, 12));
        assert_eq!(Rational::min(&a, &b), &a);
        assert_eq!(Rational::max(&a, &b), &b);
        assert_eq!((-&a).signum(), -1);
    }
}
