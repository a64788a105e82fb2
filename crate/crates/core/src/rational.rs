//! Exact rational arithmetic for range-endpoint computations.
//!
//! `Rat` is a sign-normalized `i128` fraction. Reduction is lazy: values stay
//! unreduced until their magnitude approaches the overflow guard, so the hot
//! grid loops in the range calculators pay no gcd cost. Comparisons cross-
//! multiply, which is exact below the guard.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Lazy-reduction threshold; cross-multiplying two guarded values stays
/// within i128.
const REDUCE_LIMIT: i128 = 1 << 45;

/// An exact rational number with positive denominator.
#[derive(Debug, Clone, Copy)]
pub struct Rat {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Rat {
    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let mut r = Rat { num, den };
        r.maybe_reduce();
        r
    }

    pub fn from_int(n: i64) -> Self {
        Rat { num: n as i128, den: 1 }
    }

    /// Parses a plain decimal literal (`-3.5`, `0.01`, `7`) exactly.
    pub fn from_decimal_str(s: &str) -> Option<Self> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1i128, r),
            None => (1i128, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let mut num: i128 = 0;
        for c in int_part.chars().chain(frac_part.chars()) {
            let d = c.to_digit(10)? as i128;
            num = num.checked_mul(10)?.checked_add(d)?;
        }
        let mut den: i128 = 1;
        for _ in 0..frac_part.len() {
            den = den.checked_mul(10)?;
        }
        Some(Rat::new(sign * num, den))
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn reduced(mut self) -> Self {
        let g = gcd(self.num, self.den);
        self.num /= g;
        self.den /= g;
        self
    }

    fn maybe_reduce(&mut self) {
        if self.num.abs() > REDUCE_LIMIT || self.den > REDUCE_LIMIT {
            let g = gcd(self.num, self.den);
            self.num /= g;
            self.den /= g;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.reduced();
        r.num as f64 / r.den as f64
    }

    pub fn is_integer(&self) -> bool {
        let r = self.reduced();
        r.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exact `ceil(self / 2)` as an integer.
    pub fn ceil_half(&self) -> i64 {
        let den2 = self.den.checked_mul(2).expect("denominator overflow");
        // ceil(a/b) with b > 0
        let q = -((-self.num).div_euclid(den2));
        q as i64
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.den - rhs.num * self.den, self.den * rhs.den)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(rhs.num != 0, "division by zero");
        Rat::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat { num: -self.num, den: self.den }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den == 1 {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(Rat::from_decimal_str("-3.5").unwrap(), Rat::new(-7, 2));
        assert_eq!(Rat::from_decimal_str("0.01").unwrap(), Rat::new(1, 100));
        assert_eq!(Rat::from_decimal_str("7").unwrap(), Rat::from_int(7));
        assert!(Rat::from_decimal_str("").is_none());
        assert!(Rat::from_decimal_str("1.2.3").is_none());
    }

    #[test]
    fn ceil_half() {
        assert_eq!(Rat::from_int(0).ceil_half(), 0);
        assert_eq!(Rat::from_int(3).ceil_half(), 2);
        assert_eq!(Rat::from_int(-5).ceil_half(), -2);
        assert_eq!(Rat::new(-7, 2).ceil_half(), -1); // ceil(-1.75) = -1
        assert_eq!(Rat::new(1, 100).ceil_half(), 1);
    }

    #[test]
    fn arithmetic_and_ordering() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(a + b, Rat::new(1, 2));
        assert_eq!(a - b, b);
        assert_eq!(a * b, Rat::new(1, 18));
        assert_eq!(a / b, Rat::from_int(2));
        assert!(b < a);
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
    }
}
