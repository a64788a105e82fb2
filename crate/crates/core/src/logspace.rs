//! Log-space arithmetic for nonnegative quantities.
//!
//! The blow-up experiment's off-endpoint norms overflow `f64` (they grow like
//! `n^{cn}`), and the sequence `a_j = j^{-j}` underflows near `j = 150`, so
//! norms and sequence terms are carried as logarithms.

use core::cmp::Ordering;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// A nonnegative real stored as its natural logarithm (`-inf` encodes zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNum {
    ln: f64,
}

impl LogNum {
    pub const ZERO: LogNum = LogNum { ln: f64::NEG_INFINITY };
    pub const ONE: LogNum = LogNum { ln: 0.0 };

    pub fn from_value(x: f64) -> Self {
        debug_assert!(x >= 0.0, "LogNum holds nonnegative values");
        LogNum { ln: x.ln() }
    }

    pub fn from_ln(ln: f64) -> Self {
        LogNum { ln }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn log10(&self) -> f64 {
        self.ln / core::f64::consts::LN_10
    }

    /// The plain value; overflows to `inf` / underflows to `0` gracefully.
    pub fn value(&self) -> f64 {
        self.ln.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn mul(self, o: LogNum) -> LogNum {
        if self.is_zero() || o.is_zero() {
            return LogNum::ZERO;
        }
        LogNum { ln: self.ln + o.ln }
    }

    pub fn div(self, o: LogNum) -> LogNum {
        debug_assert!(!o.is_zero(), "division by log-space zero");
        if self.is_zero() {
            return LogNum::ZERO;
        }
        LogNum { ln: self.ln - o.ln }
    }

    pub fn add(self, o: LogNum) -> LogNum {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.ln >= o.ln { (self.ln, o.ln) } else { (o.ln, self.ln) };
        LogNum { ln: hi + (lo - hi).exp().ln_1p() }
    }

    /// `self - o`, requiring `self >= o`.
    pub fn sub(self, o: LogNum) -> LogNum {
        if o.is_zero() {
            return self;
        }
        debug_assert!(self.ln >= o.ln, "log-space subtraction went negative");
        if self.ln == o.ln {
            return LogNum::ZERO;
        }
        // ln(a - b) = ln a + ln(1 - exp(ln b - ln a))
        LogNum { ln: self.ln + (-(o.ln - self.ln).exp()).ln_1p() }
    }

    pub fn powf(self, q: f64) -> LogNum {
        if self.is_zero() {
            return if q > 0.0 { LogNum::ZERO } else { LogNum { ln: f64::INFINITY } };
        }
        LogNum { ln: self.ln * q }
    }
}

impl PartialOrd for LogNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}
