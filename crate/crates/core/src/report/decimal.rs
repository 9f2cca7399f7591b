//! Locale-free round-half-up formatting.
//!
//! Measures that are ratios of counts are rounded from the exact rational,
//! so `3/40` at two decimals is `0.08` even though the nearest f64 to 0.075
//! sits just below the tie. Irrational values (most cosines) are rounded
//! from the exact binary expansion of the f64.

use crate::measures::{Measure, RuleCounts};

/// A value to display, exact where possible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exact {
    Ratio(u128, u128),
    Real(f64),
}

impl Exact {
    pub fn format(self, decimals: usize) -> String {
        match self {
            Exact::Ratio(num, den) => round_ratio(num, den, decimals),
            Exact::Real(v) => round_f64(v, decimals),
        }
    }
}

/// The exact form of `measure` for `counts`, or `None` when undefined.
pub fn exact_measure(counts: &RuleCounts, measure: Measure) -> Option<Exact> {
    let n = counts.n_total as u128;
    let x = counts.antecedent as u128;
    let y = counts.consequent as u128;
    let xy = counts.joint as u128;
    match measure {
        Measure::Support => (n > 0).then_some(Exact::Ratio(xy, n)),
        Measure::Confidence => (x > 0).then_some(Exact::Ratio(xy, x)),
        Measure::Lift => (x > 0 && y > 0).then_some(Exact::Ratio(n * xy, x * y)),
        Measure::Cosine => {
            if x == 0 || y == 0 {
                return None;
            }
            match exact_sqrt(x * y) {
                Some(root) => Some(Exact::Ratio(xy, root)),
                None => counts.cosine().map(Exact::Real),
            }
        }
    }
}

fn exact_sqrt(v: u128) -> Option<u128> {
    let guess = (v as f64).sqrt() as u128;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r * r == v)
}

/// `num / den` rounded half up to `decimals` places.
pub fn round_ratio(num: u128, den: u128, decimals: usize) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(decimals as u32);
    let scaled = (2 * num * scale + den) / (2 * den);
    join(scaled / scale, scaled % scale, decimals)
}

/// `value` rounded half up to `decimals` places, judged on its exact
/// binary value.
pub fn round_f64(value: f64, decimals: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    // 1100 places hold every f64 exactly
    let full = format!("{:.1100}", value.abs());
    let (int_part, frac_part) = full.split_once('.').expect("fixed-point output");
    let kept = &frac_part[..decimals];
    let round_up = frac_part.as_bytes()[decimals] >= b'5';

    let mut digits: Vec<u8> = int_part.bytes().chain(kept.bytes()).map(|b| b - b'0').collect();
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let (int_digits, frac_digits) = text.split_at(text.len() - decimals);
    let negative = value < 0.0 && text.bytes().any(|b| b != b'0');
    format!(
        "{}{}{}{}",
        if negative { "-" } else { "" },
        int_digits,
        if decimals > 0 { "." } else { "" },
        frac_digits
    )
}

fn join(int: u128, frac: u128, decimals: usize) -> String {
    if decimals == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0decimals$}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_round_half_up() {
        assert_eq!(round_ratio(10, 350, 4), "0.0286");
        assert_eq!(round_ratio(30, 130, 4), "0.2308");
        assert_eq!(round_ratio(120, 160, 4), "0.7500");
        assert_eq!(round_ratio(3, 40, 2), "0.08");
        assert_eq!(round_ratio(1, 8, 2), "0.13");
        assert_eq!(round_ratio(1, 1, 4), "1.0000");
        assert_eq!(round_ratio(0, 7, 3), "0.000");
        assert_eq!(round_ratio(399, 100, 1), "4.0");
        assert_eq!(round_ratio(7, 2, 0), "4");
    }

    #[test]
    fn floats_use_exact_expansion() {
        assert_eq!(round_f64(0.125, 2), "0.13");
        // the f64 nearest 0.075 is 0.07499999999999999722...
        assert_eq!(round_f64(0.075, 2), "0.07");
        assert_eq!(round_f64(0.99996, 4), "1.0000");
        assert_eq!(round_f64(9.99996, 4), "10.0000");
        assert_eq!(round_f64(120.0 / (160.0f64 * 230.0).sqrt(), 4), "0.6255");
        assert_eq!(round_f64(0.0, 4), "0.0000");
        assert_eq!(round_f64(-0.00001, 2), "0.00");
        assert_eq!(round_f64(-1.25, 1), "-1.3");
    }

    #[test]
    fn cosine_with_square_product_is_exact() {
        let counts = RuleCounts { n_total: 100, antecedent: 40, consequent: 40, joint: 3 };
        assert_eq!(exact_measure(&counts, Measure::Cosine), Some(Exact::Ratio(3, 40)));
        assert_eq!(exact_measure(&counts, Measure::Cosine).unwrap().format(2), "0.08");
        let counts = RuleCounts { n_total: 350, antecedent: 160, consequent: 230, joint: 120 };
        assert!(matches!(exact_measure(&counts, Measure::Cosine), Some(Exact::Real(_))));
        assert_eq!(exact_measure(&counts, Measure::Lift).unwrap().format(4), "1.1413");
    }
}
