use core::cmp::Ordering;
use core::fmt;

use crate::Error;

/// Exact nonnegative rational. Threshold parameters (majority fraction γ,
/// block-size fraction, boundary fractions) are compared with integer
/// cross-multiplication so results never drift under floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> crate::Result<Self> {
        if den == 0 {
            return Err(Error::Parameter("ratio denominator must be nonzero"));
        }
        Ok(Ratio { num, den })
    }

    pub const fn num(&self) -> u64 {
        self.num
    }

    pub const fn den(&self) -> u64 {
        self.den
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const HALF: Ratio = Ratio { num: 1, den: 2 };

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `self > 1`?
    pub fn exceeds_one(&self) -> bool {
        self.num > self.den
    }

    /// `value >= self * scale`, exactly.
    pub fn at_most(&self, scale: u64, value: u64) -> bool {
        (value as u128) * (self.den as u128) >= (self.num as u128) * (scale as u128)
    }

    /// `value <= self * scale`, exactly.
    pub fn at_least(&self, scale: u64, value: u64) -> bool {
        (value as u128) * (self.den as u128) <= (self.num as u128) * (scale as u128)
    }

    /// Largest integer `k` with `k <= self * scale`.
    pub fn floor_times(&self, scale: u64) -> u64 {
        ((self.num as u128 * scale as u128) / self.den as u128) as u64
    }

    /// Smallest integer `k` with `k >= self * scale`.
    pub fn ceil_times(&self, scale: u64) -> u64 {
        let p = self.num as u128 * scale as u128;
        p.div_ceil(self.den as u128) as u64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_comparisons() {
        let third = Ratio::new(1, 3).unwrap();
        // 1 >= 3 * 1/3 and 0 < 3 * 1/3
        assert!(third.at_most(3, 1));
        assert!(!third.at_most(3, 0));
        // ceil(1/3 * 5) = 2, floor = 1
        assert_eq!(third.ceil_times(5), 2);
        assert_eq!(third.floor_times(5), 1);
        assert!(Ratio::new(1, 25).unwrap() < Ratio::HALF);
        assert!(!Ratio::new(3, 5).unwrap().exceeds_one());
        assert!(Ratio::new(6, 5).unwrap().exceeds_one());
        assert!(Ratio::new(1, 0).is_err());
    }
}
