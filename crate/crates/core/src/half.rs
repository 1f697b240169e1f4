//! Exact half-integral arithmetic and symbolic large weights.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A multiple of ½, stored as twice its value.
///
/// Capacities, flows, weights and budgets never go through floating point.
/// Budgets may become negative while pruning, so the representation is signed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(v * 2)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }

    /// Halves the value; `None` when the result is not a multiple of ½.
    pub fn halved(self) -> Option<HalfInt> {
        (self.0 % 2 == 0).then_some(HalfInt(self.0 / 2))
    }

    pub fn checked_add(self, rhs: HalfInt) -> Option<HalfInt> {
        self.0.checked_add(rhs.0).map(HalfInt)
    }

    pub fn checked_mul_int(self, rhs: i64) -> Option<HalfInt> {
        self.0.checked_mul(rhs).map(HalfInt)
    }

    pub fn min(self, other: HalfInt) -> HalfInt {
        HalfInt(self.0.min(other.0))
    }

    pub fn max(self, other: HalfInt) -> HalfInt {
        HalfInt(self.0.max(other.0))
    }

    /// Parses `3`, `1.5`, `0.5`, `.5`, `3/2` and `1/2`.
    pub fn parse(text: &str) -> Option<HalfInt> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: i64 = num.trim().parse().ok()?;
            return match den.trim() {
                "1" => Some(HalfInt::from_int(num)),
                "2" => Some(HalfInt(num)),
                _ => None,
            };
        }
        if let Some((int, frac)) = text.split_once('.') {
            let negative = int.starts_with('-');
            let int_part: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return None,
            };
            let doubled = int_part.checked_mul(2)?;
            return Some(HalfInt(if negative { doubled - half } else { doubled + half }));
        }
        text.parse::<i64>().ok().map(HalfInt::from_int)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else if self.0 < 0 {
            write!(f, "-{}.5", (-self.0) / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.0 -= rhs.0;
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 * rhs)
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, Add::add)
    }
}

/// A weight of the form `mu·M + base` where `M` is a symbolic constant larger
/// than anything else in the instance.
///
/// Ordering is lexicographic on `(mu, base)`. Bases are half-integral so the
/// same type carries dual values that mix `M` with halves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BigWeight {
    pub mu: i64,
    pub base: HalfInt,
}

impl BigWeight {
    pub const ZERO: BigWeight = BigWeight { mu: 0, base: HalfInt::ZERO };
    pub const M: BigWeight = BigWeight { mu: 1, base: HalfInt::ZERO };

    pub fn new(mu: i64, base: HalfInt) -> Self {
        BigWeight { mu, base }
    }

    pub fn int(v: i64) -> Self {
        BigWeight { mu: 0, base: HalfInt::from_int(v) }
    }

    pub fn half(v: HalfInt) -> Self {
        BigWeight { mu: 0, base: v }
    }

    pub fn is_finite(self) -> bool {
        self.mu == 0
    }

    pub fn is_nonneg(self) -> bool {
        self >= BigWeight::ZERO
    }

    /// `mu·m + base`, or `None` on overflow.
    pub fn concretize(self, m: i64) -> Option<HalfInt> {
        let scaled = self.mu.checked_mul(m)?.checked_mul(2)?;
        scaled.checked_add(self.base.doubled()).map(HalfInt::from_doubled)
    }

    /// Multiplies by a half-integral scalar. Fails when `mu·s` is not integral.
    pub fn scale(self, s: HalfInt) -> Option<BigWeight> {
        let mu2 = self.mu.checked_mul(s.doubled())?;
        if mu2 % 2 != 0 {
            return None;
        }
        let base4 = self.base.doubled().checked_mul(s.doubled())?;
        if base4 % 2 != 0 {
            return None;
        }
        Some(BigWeight { mu: mu2 / 2, base: HalfInt::from_doubled(base4 / 2) })
    }
}

impl PartialOrd for BigWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mu.cmp(&other.mu).then(self.base.cmp(&other.base))
    }
}

impl Add for BigWeight {
    type Output = BigWeight;
    fn add(self, rhs: BigWeight) -> BigWeight {
        BigWeight { mu: self.mu + rhs.mu, base: self.base + rhs.base }
    }
}

impl Sub for BigWeight {
    type Output = BigWeight;
    fn sub(self, rhs: BigWeight) -> BigWeight {
        BigWeight { mu: self.mu - rhs.mu, base: self.base - rhs.base }
    }
}

impl AddAssign for BigWeight {
    fn add_assign(&mut self, rhs: BigWeight) {
        *self = *self + rhs;
    }
}

impl Sum for BigWeight {
    fn sum<I: Iterator<Item = BigWeight>>(iter: I) -> BigWeight {
        iter.fold(BigWeight::ZERO, Add::add)
    }
}

impl fmt::Display for BigWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mu, self.base.doubled()) {
            (0, _) => write!(f, "{}", self.base),
            (mu, 0) => write!(f, "{mu}M"),
            (mu, b) if b < 0 => write!(f, "{mu}M - {}", -self.base),
            (mu, _) => write!(f, "{mu}M + {}", self.base),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spellings() {
        assert_eq!(HalfInt::parse("0.5"), Some(HalfInt::HALF));
        assert_eq!(HalfInt::parse(".5"), Some(HalfInt::HALF));
        assert_eq!(HalfInt::parse("1/2"), Some(HalfInt::HALF));
        assert_eq!(HalfInt::parse("3/2"), Some(HalfInt::from_doubled(3)));
        assert_eq!(HalfInt::parse("2"), Some(HalfInt::from_int(2)));
        assert_eq!(HalfInt::parse("2.0"), Some(HalfInt::from_int(2)));
        assert_eq!(HalfInt::parse("1.25"), None);
        assert_eq!(HalfInt::parse("1/3"), None);
        assert_eq!(HalfInt::parse("x"), None);
    }

    #[test]
    fn floor_ceil_display() {
        let h = HalfInt::from_doubled(3);
        assert_eq!((h.floor(), h.ceil()), (1, 2));
        let n = HalfInt::from_doubled(-3);
        assert_eq!((n.floor(), n.ceil()), (-2, -1));
        assert_eq!(h.to_string(), "1.5");
        assert_eq!(n.to_string(), "-1.5");
        assert_eq!(HalfInt::from_int(4).to_string(), "4");
    }

    #[test]
    fn bigweight_order_is_lexicographic() {
        let big = BigWeight::M - BigWeight::int(1_000_000);
        assert!(big > BigWeight::int(999_999_999));
        assert!(BigWeight::ZERO < big);
        assert_eq!(big.concretize(10), Some(HalfInt::from_int(-999_990)));
        assert_eq!(BigWeight::M.scale(HalfInt::HALF), None);
        assert_eq!(
            BigWeight::new(1, HalfInt::ONE).scale(HalfInt::from_int(3)),
            Some(BigWeight::new(3, HalfInt::from_int(3)))
        );
    }
}
