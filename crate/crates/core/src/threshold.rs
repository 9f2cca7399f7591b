//! Exact decimal thresholds.
//!
//! A threshold like `0.1` is kept as the rational `1/10`, and tests of the
//! form `count / total >= threshold` are decided by cross-multiplying
//! integers. A support of exactly 35/350 therefore meets `0.1`, which a
//! float comparison would not promise.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest fractional part accepted. Keeps every cross product inside u128.
const MAX_DECIMALS: usize = 18;

/// A fraction in `[0, 1]`, held as a reduced rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub const ZERO: Threshold = Threshold { num: 0, den: 1 };
    pub const ONE: Threshold = Threshold { num: 1, den: 1 };

    /// Converts through the shortest decimal that round-trips `value`, so
    /// `0.1_f64` becomes exactly `1/10`.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidThreshold(value.to_string()));
        }
        format!("{value}").parse()
    }

    /// `numerator / denominator` reduced; must lie in `[0, 1]`.
    pub fn ratio(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator > denominator {
            return Err(Error::InvalidThreshold(format!("{numerator}/{denominator}")));
        }
        let g = gcd(numerator, denominator);
        Ok(Threshold { num: numerator / g, den: denominator / g })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `part / whole >= self`, decided exactly. A zero `whole` never meets a
    /// threshold.
    pub fn is_met_by(self, part: usize, whole: usize) -> bool {
        if whole == 0 {
            return false;
        }
        part as u128 * self.den as u128 >= self.num as u128 * whole as u128
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::ZERO
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidThreshold(s.to_string());
        let text = s.trim();
        let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
        let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty())
            || !digits_ok(int_part)
            || !digits_ok(frac_part)
        {
            return Err(bad());
        }
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.len() > MAX_DECIMALS {
            return Err(bad());
        }
        let int_value: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        if int_value > 1 || (int_value == 1 && !frac_part.is_empty()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let frac: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        Threshold::ratio(int_value * den + frac, den)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        let t: Threshold = "0.1".parse().unwrap();
        assert_eq!((t.numerator(), t.denominator()), (1, 10));
        let t: Threshold = "0.250".parse().unwrap();
        assert_eq!((t.numerator(), t.denominator()), (1, 4));
        assert_eq!("1".parse::<Threshold>().unwrap(), Threshold::ONE);
        assert_eq!("1.000".parse::<Threshold>().unwrap(), Threshold::ONE);
        assert_eq!("0".parse::<Threshold>().unwrap(), Threshold::ZERO);
        assert_eq!(".5".parse::<Threshold>().unwrap(), Threshold::ratio(1, 2).unwrap());
    }

    #[test]
    fn rejects_out_of_range_and_junk() {
        for bad in ["", ".", "1.5", "2", "-0.1", "abc", "0.1.2", "1e-3", "0.0000000000000000001"] {
            assert!(bad.parse::<Threshold>().is_err(), "{bad:?}");
        }
        assert!(Threshold::from_f64(f64::NAN).is_err());
        assert!(Threshold::from_f64(1.01).is_err());
    }

    #[test]
    fn from_f64_uses_shortest_decimal() {
        assert_eq!(Threshold::from_f64(0.1).unwrap(), "0.1".parse().unwrap());
        assert_eq!(Threshold::from_f64(0.05).unwrap(), Threshold::ratio(1, 20).unwrap());
    }

    #[test]
    fn boundary_is_inclusive_and_exact() {
        let t = Threshold::from_f64(0.1).unwrap();
        assert!(t.is_met_by(35, 350));
        assert!(!t.is_met_by(34, 350));
        let t = Threshold::from_f64(0.3).unwrap();
        assert!(t.is_met_by(3, 10));
        assert!(!Threshold::ZERO.is_met_by(0, 0));
        assert!(Threshold::ZERO.is_met_by(0, 5));
    }
}
