//! Exact numbers: decimal criterion values and rational levels in (0, 1].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses a plain decimal literal (`-12`, `3.25`, `1e-3`, `.5`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let s = text.trim();
    let (negative, rest) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(pos) => (&rest[..pos], rest[pos + 1..].parse::<i32>().ok()?),
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * Pow::pow(&ten, scale.unsigned_abs()))
    } else {
        BigRational::new(numer, Pow::pow(&ten, scale.unsigned_abs()))
    };
    Some(value)
}

/// Renders an exact ratio in lowest terms as `p/q`, including `1/1` and `0/1`.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A threshold in (0, 1], stored as a reduced integer fraction.
///
/// Used both as the consistency level of the variable-consistency model and as
/// the precision level of the variable-precision model.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    num: u64,
    den: u64,
}

impl Level {
    pub const ONE: Level = Level { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::InvalidLevel(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        Ratio::new_raw(self.num, self.den)
    }

    /// `part / whole >= self`, decided by integer cross-multiplication.
    ///
    /// A zero `whole` never meets a level.
    #[inline]
    pub fn admits(&self, part: usize, whole: usize) -> bool {
        whole != 0 && (part as u128) * (self.den as u128) >= (self.num as u128) * (whole as u128)
    }
}

impl FromStr for Level {
    type Err = Error;

    /// Accepts `p/q` or a decimal literal; both are converted exactly.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidLevel(s.to_string());
        let value = match s.trim().split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| invalid())?;
                let q: BigInt = q.trim().parse().map_err(|_| invalid())?;
                if q.is_zero() {
                    return Err(invalid());
                }
                BigRational::new(p, q)
            }
            None => parse_decimal(s).ok_or_else(invalid)?,
        };
        if value <= BigRational::zero() || value > BigRational::one() {
            return Err(invalid());
        }
        let num = value.numer().to_u64().ok_or_else(invalid)?;
        let den = value.denom().to_u64().ok_or_else(invalid)?;
        Level::new(num, den)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
