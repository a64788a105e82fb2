//! Sharp `L^p`-boundedness range formulas.
//!
//! Every exponent `s'` splits uniquely as `s' = s + 2k` with `k` an integer
//! and `s in (0, 2]`. The range maps below are piecewise in `s'`, with case
//! boundaries at even integers; off-by-one in `k` shifts every range, so the
//! decomposition pins the `s in (0, 2]` convention once and for all (even
//! integers decompose as `s = 2`, `k = s'/2 - 1`).
//!
//! All operations are generic over [`RangeScalar`], so endpoints can be
//! computed either in exact rational arithmetic ([`Rat`]) or in `f64` (with a
//! `1e-12` comparison slack where equality matters).

use crate::error::{Error, Result};
use crate::rational::Rat;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Scalar abstraction shared by the exact and floating range calculators.
pub trait RangeScalar:
    Copy
    + PartialOrd
    + core::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn is_finite_scalar(&self) -> bool;
    /// Exact `ceil(self / 2)` as an integer.
    fn ceil_half(&self) -> i64;
    fn to_f64(&self) -> f64;
}

impl RangeScalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
    fn ceil_half(&self) -> i64 {
        (self / 2.0).ceil() as i64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl RangeScalar for Rat {
    fn from_int(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn is_finite_scalar(&self) -> bool {
        true
    }
    fn ceil_half(&self) -> i64 {
        Rat::ceil_half(self)
    }
    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }
}

/// The unique split `s' = s + 2k` with `s in (0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentDecomposition<T> {
    pub s_prime: T,
    pub k: i64,
    pub s: T,
}

/// Splits `s'` as `s + 2k`, `s in (0, 2]`, `k` integer.
pub fn decompose_exponent<T: RangeScalar>(s_prime: T) -> Result<ExponentDecomposition<T>> {
    if !s_prime.is_finite_scalar() {
        return Err(Error::InvalidArgument(String::from(
            "exponent decomposition requires a finite input",
        )));
    }
    // s in (0,2] forces k = ceil(s'/2) - 1; even integers land on s = 2.
    let k = s_prime.ceil_half() - 1;
    let s = s_prime - T::from_int(2 * k);
    Ok(ExponentDecomposition { s_prime, k, s })
}

/// Upper endpoint of a `p`-range: finite or `+infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Endpoint<T> {
    Finite(T),
    Infinity,
}

impl<T: RangeScalar> Endpoint<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Endpoint::Infinity)
    }

    pub fn min(self, other: Self) -> Self {
        match (self, other) {
            (Endpoint::Infinity, e) | (e, Endpoint::Infinity) => e,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => {
                Endpoint::Finite(if a < b { a } else { b })
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::Finite(x) => x.to_f64(),
            Endpoint::Infinity => f64::INFINITY,
        }
    }
}

/// An open interval of exponents `p`, possibly empty, with `lo >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct PRange<T> {
    pub lo: T,
    pub hi: Endpoint<T>,
    pub empty: bool,
}

impl<T: RangeScalar> PRange<T> {
    /// Builds `(lo, hi)`, clamping the lower endpoint to 1 and flagging
    /// emptiness when the endpoints cross.
    pub fn open(lo: T, hi: Endpoint<T>) -> Self {
        let one = T::from_int(1);
        let lo = if lo < one { one } else { lo };
        let empty = match hi {
            Endpoint::Infinity => false,
            Endpoint::Finite(h) => !(lo < h),
        };
        PRange { lo, hi, empty }
    }

    pub fn all_p() -> Self {
        PRange { lo: T::from_int(1), hi: Endpoint::Infinity, empty: false }
    }

    pub fn empty_range() -> Self {
        PRange { lo: T::from_int(1), hi: Endpoint::Finite(T::from_int(1)), empty: true }
    }

    pub fn contains(&self, p: T) -> bool {
        if self.empty || !(self.lo < p) {
            return false;
        }
        match self.hi {
            Endpoint::Infinity => true,
            Endpoint::Finite(h) => p < h,
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }
}

impl<T: RangeScalar> PartialEq for PRange<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.empty || other.empty {
            return self.empty == other.empty;
        }
        self.lo == other.lo && self.hi == other.hi
    }
}

/// Open-interval intersection; empty is absorbing.
pub fn intersect_ranges<T: RangeScalar>(a: &PRange<T>, b: &PRange<T>) -> PRange<T> {
    if a.empty || b.empty {
        return PRange::empty_range();
    }
    let lo = if a.lo < b.lo { b.lo } else { a.lo };
    let hi = a.hi.min(b.hi);
    PRange::open(lo, hi)
}

/// Internal case index of the five-case range maps; shared by the punctured
/// disk and Hartogs selectors (the Hartogs table is the disk table shifted
/// by 2 in `s'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeCase {
    /// `s' > shift`: `((s+2k+2-shift)/(s+k+1-shift/2), (s+2k+2-shift)/(k+1-shift/2))` pattern.
    Positive,
    /// middle closed band: all `p in (1, oo)`.
    Band,
    /// fractional window: `(2-s, (2-s)/(1-s))`.
    Window,
    /// isolated even point: all `p in (1, oo)`.
    Isolated,
    /// far-negative tail: reversed quotient pattern.
    Negative,
}

fn disk_case<T: RangeScalar>(s_prime: T) -> RangeCase {
    let zero = T::from_int(0);
    let m3 = T::from_int(-3);
    let m4 = T::from_int(-4);
    if zero < s_prime {
        RangeCase::Positive
    } else if !(s_prime < m3) {
        RangeCase::Band
    } else if m4 < s_prime {
        RangeCase::Window
    } else if s_prime == m4 {
        RangeCase::Isolated
    } else {
        RangeCase::Negative
    }
}

/// Which of the five punctured-disk cases `s'` falls in.
pub fn disk_star_case<T: RangeScalar>(s_prime: T) -> Result<RangeCase> {
    if !s_prime.is_finite_scalar() {
        return Err(Error::InvalidArgument(String::from("s' must be finite")));
    }
    Ok(disk_case(s_prime))
}

/// Which of the five Hartogs-triangle cases `s'` falls in.
pub fn hartogs_case<T: RangeScalar>(s_prime: T) -> Result<RangeCase> {
    if !s_prime.is_finite_scalar() {
        return Err(Error::InvalidArgument(String::from("s' must be finite")));
    }
    Ok(disk_case(s_prime + T::from_int(2)))
}

/// Sharp range of the weighted Bergman projection on the punctured disk with
/// weight `|z|^{s'}`.
pub fn range_disk_star<T: RangeScalar>(s_prime: T) -> Result<PRange<T>> {
    let d = decompose_exponent(s_prime)?;
    let s = d.s;
    let k = T::from_int(d.k);
    let one = T::from_int(1);
    let two = T::from_int(2);
    let num = s + two * k + two; // s + 2k + 2
    Ok(match disk_case(s_prime) {
        RangeCase::Positive => {
            PRange::open(num / (s + k + one), Endpoint::Finite(num / (k + one)))
        }
        RangeCase::Band | RangeCase::Isolated => PRange::all_p(),
        RangeCase::Window => {
            PRange::open(two - s, Endpoint::Finite((two - s) / (one - s)))
        }
        RangeCase::Negative => {
            PRange::open(num / (k + one), Endpoint::Finite(num / (s + k + one)))
        }
    })
}

/// Sharp range of the weighted Bergman projection on the Hartogs triangle
/// with weight `|z_2|^{s'}`. Equals `range_disk_star(s' + 2)` for every
/// input (inflation consistency); computed here from its own case table.
pub fn range_hartogs<T: RangeScalar>(s_prime: T) -> Result<PRange<T>> {
    let d = decompose_exponent(s_prime)?;
    let s = d.s;
    let k = T::from_int(d.k);
    let one = T::from_int(1);
    let two = T::from_int(2);
    let four = T::from_int(4);
    let num = s + two * k + four; // s + 2k + 4
    Ok(match disk_case(s_prime + two) {
        RangeCase::Positive => {
            PRange::open(num / (s + k + two), Endpoint::Finite(num / (k + two)))
        }
        RangeCase::Band | RangeCase::Isolated => PRange::all_p(),
        RangeCase::Window => {
            PRange::open(two - s, Endpoint::Finite((two - s) / (one - s)))
        }
        RangeCase::Negative => {
            PRange::open(num / (k + two), Endpoint::Finite(num / (s + k + two)))
        }
    })
}

/// Outcome of the two-weight range map: the interval, the conditional
/// sharpness predicate, and the unconditional-unboundedness note.
#[derive(Debug, Clone)]
pub struct RangeVerdict<T> {
    pub range: PRange<T>,
    s_prime: T,
    s: T,
    t: T,
    /// Left threshold below which the projection is unbounded for every `t`.
    pub unbounded_below: T,
    pub notes: String,
}

impl<T: RangeScalar> RangeVerdict<T> {
    /// Whether the stated interval is sharp at `p`: `t - s' <= (2 - s) p`.
    pub fn sharp_at(&self, p: T) -> bool {
        !((T::from_int(2) - self.s) * p < self.t - self.s_prime)
    }
}

/// Range of `p` for which the projection maps `L^p(|z_2|^{s'})` into
/// `L^p(|z_2|^t)` on the Hartogs triangle. Requires `k >= -1`.
pub fn range_two_weight<T: RangeScalar>(s_prime: T, t: T) -> Result<RangeVerdict<T>> {
    if !t.is_finite_scalar() {
        return Err(Error::InvalidArgument(String::from("t must be finite")));
    }
    let d = decompose_exponent(s_prime)?;
    if d.k < -1 {
        return Err(Error::UnsupportedCase(format!(
            "two-weight ranges require k >= -1 (got k = {} from s' = {:?})",
            d.k, s_prime
        )));
    }
    let s = d.s;
    let k = T::from_int(d.k);
    let two = T::from_int(2);
    let four = T::from_int(4);
    let lo = (s + two * k + four) / (s + k + two);
    let hi = (t + four) / (k + two);
    let range = intersect_ranges(&PRange::open(lo, Endpoint::Finite(hi)), &PRange::all_p());
    Ok(RangeVerdict {
        range,
        s_prime,
        s,
        t,
        unbounded_below: lo,
        notes: format!(
            "unbounded for all t when p <= (s+2k+4)/(s+k+2) = {:?}",
            lo
        ),
    })
}

/// Parameters of the generalized Hartogs triangle: ball factors of dimensions
/// `m_1..m_l` and weight exponents `s_1..s_n` on the chain variables.
#[derive(Debug, Clone)]
pub struct GeneralizedHartogsSpec<T> {
    pub ball_dims: Vec<u32>,
    pub weight_exponents: Vec<T>,
}

impl<T: RangeScalar> GeneralizedHartogsSpec<T> {
    pub fn new(ball_dims: Vec<u32>, weight_exponents: Vec<T>) -> Result<Self> {
        if weight_exponents.is_empty() {
            return Err(Error::InvalidArgument(String::from(
                "generalized Hartogs spec needs at least one weight exponent",
            )));
        }
        if ball_dims.iter().any(|&m| m == 0) {
            return Err(Error::InvalidArgument(String::from(
                "ball dimensions must be positive",
            )));
        }
        Ok(GeneralizedHartogsSpec { ball_dims, weight_exponents })
    }

    /// The punctured-disk exponents `e_j = 2M + s_1 + ... + s_j + 2(j-1)`
    /// the chain reduces to, with `M` the total ball dimension.
    pub fn reduced_exponents(&self) -> Vec<T> {
        let m_total: i64 = self.ball_dims.iter().map(|&m| m as i64).sum();
        let mut out = Vec::with_capacity(self.weight_exponents.len());
        let mut acc = T::from_int(2 * m_total);
        for (j, &sj) in self.weight_exponents.iter().enumerate() {
            acc = acc + sj;
            out.push(acc + T::from_int(2 * j as i64));
        }
        out
    }
}

/// Range for the generalized Hartogs triangle: intersection of the disk
/// ranges over the reduced exponent chain.
pub fn range_generalized<T: RangeScalar>(spec: &GeneralizedHartogsSpec<T>) -> Result<PRange<T>> {
    let mut acc = PRange::all_p();
    for e in spec.reduced_exponents() {
        acc = intersect_ranges(&acc, &range_disk_star(e)?);
    }
    Ok(acc)
}

/// Range `((2a+2)/(a+2), (2a+2)/a)` of the `g(z) = (z-1)^alpha` example;
/// its endpoints are conjugate exponents.
pub fn alpha_example_range<T: RangeScalar>(alpha: T) -> Result<PRange<T>> {
    if !alpha.is_finite_scalar() || !(T::from_int(0) < alpha) {
        return Err(Error::InvalidArgument(String::from("alpha must be positive")));
    }
    let two = T::from_int(2);
    let num = two * alpha + two;
    Ok(PRange::open(num / (alpha + two), Endpoint::Finite(num / alpha)))
}

/// Target exponent `t(eps) = p(k+2) - 4 + eps` that makes the two-weight
/// estimate valid at `p`; at `p = (s+2k+4)/(k+2)` it collapses to `s' + eps`.
pub fn sharp_target_exponent<T: RangeScalar>(p: T, k: i64, epsilon: T) -> Result<T> {
    let one = T::from_int(1);
    if !p.is_finite_scalar() || !(one < p) {
        return Err(Error::InvalidArgument(String::from("p must exceed 1")));
    }
    if !epsilon.is_finite_scalar() || !(T::from_int(0) < epsilon) {
        return Err(Error::InvalidArgument(String::from("epsilon must be positive")));
    }
    Ok(p * T::from_int(k + 2) - T::from_int(4) + epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_exponent(0.0).unwrap();
        assert_eq!((d.k, d.s), (-1, 2.0));
        let d = decompose_exponent(-5.0).unwrap();
        assert_eq!((d.k, d.s), (-3, 1.0));
        let d = decompose_exponent(3.5).unwrap();
        assert_eq!((d.k, d.s), (1, 1.5));
        assert!(decompose_exponent(f64::NAN).is_err());
        assert!(decompose_exponent(f64::INFINITY).is_err());
    }

    #[test]
    fn decompose_even_integers_take_s_equal_two() {
        for sp in [-8i64, -6, -4, -2, 0, 2, 4, 6] {
            let d = decompose_exponent(Rat::from_int(sp)).unwrap();
            assert_eq!(d.s, Rat::from_int(2));
            assert_eq!(d.k, sp / 2 - 1);
        }
    }

    #[test]
    fn decompose_is_consistent_between_scalars() {
        for m in -40..=40 {
            let sp = m as f64 * 0.25;
            let df = decompose_exponent(sp).unwrap();
            let dr = decompose_exponent(r(m as i128, 4)).unwrap();
            assert_eq!(df.k, dr.k);
            assert!((df.s - dr.s.to_f64()).abs() < 1e-15);
        }
    }

    #[test]
    fn disk_star_examples() {
        // s' = -2.5 sits in the closed band
        assert_eq!(range_disk_star(r(-5, 2)).unwrap(), PRange::all_p());
        // s' = 2: (4/3, 4)
        let rg = range_disk_star(r(2, 1)).unwrap();
        assert_eq!(rg.lo, r(4, 3));
        assert_eq!(rg.hi, Endpoint::Finite(r(4, 1)));
        // s' = -3.5: k = -2, s = 1/2 gives (3/2, 3)
        let rg = range_disk_star(r(-7, 2)).unwrap();
        assert_eq!(rg.lo, r(3, 2));
        assert_eq!(rg.hi, Endpoint::Finite(r(3, 1)));
    }

    #[test]
    fn hartogs_examples() {
        let rg = range_hartogs(r(0, 1)).unwrap();
        assert_eq!(rg.lo, r(4, 3));
        assert_eq!(rg.hi, Endpoint::Finite(r(4, 1)));
        assert_eq!(range_hartogs(r(-3, 1)).unwrap(), PRange::all_p());
        let rg = range_hartogs(r(2, 1)).unwrap();
        assert_eq!(rg.lo, r(3, 2));
        assert_eq!(rg.hi, Endpoint::Finite(r(3, 1)));
    }

    #[test]
    fn documented_jumps_at_zero_and_minus_four() {
        // crossing 0 (disk table): (1, oo) jumps to a narrow interval
        assert_eq!(range_disk_star(r(0, 1)).unwrap(), PRange::all_p());
        let rg = range_disk_star(r(1, 100)).unwrap();
        assert!(rg.lo > r(19, 10));
        assert_eq!(rg.hi, Endpoint::Finite(r(201, 100)));
        // crossing -4: (1, oo) jumps to a wide interval hugging 1
        assert_eq!(range_disk_star(r(-4, 1)).unwrap(), PRange::all_p());
        let rg = range_disk_star(r(-401, 100)).unwrap();
        assert_eq!(rg.lo, r(201, 200));
        assert_eq!(rg.hi, Endpoint::Finite(r(201, 1)));
    }

    #[test]
    fn inflation_consistency_on_quarter_grid() {
        for m in -48..=48 {
            let sp = r(m as i128, 6);
            assert_eq!(
                range_hartogs(sp).unwrap(),
                range_disk_star(sp + Rat::from_int(2)).unwrap(),
                "s' = {m}/6"
            );
        }
    }

    #[test]
    fn two_weight_examples() {
        let v = range_two_weight(r(0, 1), r(0, 1)).unwrap();
        assert_eq!(v.range, range_hartogs(r(0, 1)).unwrap());
        let v = range_two_weight(r(0, 1), r(2, 1)).unwrap();
        assert_eq!(v.range.lo, r(4, 3));
        assert_eq!(v.range.hi, Endpoint::Finite(r(6, 1)));
        match range_two_weight(r(-4, 1), r(0, 1)) {
            Err(Error::UnsupportedCase(_)) => {}
            other => panic!("expected unsupported-case, got {other:?}"),
        }
    }

    #[test]
    fn two_weight_degenerates_to_hartogs() {
        // t = s' reproduces the one-weight range whenever k >= -1
        for m in [-3i128, -1, 0, 1, 2, 5, 9] {
            let sp = r(m, 2);
            if decompose_exponent(sp).unwrap().k < -1 {
                continue;
            }
            let v = range_two_weight(sp, sp).unwrap();
            assert_eq!(v.range, range_hartogs(sp).unwrap(), "s' = {m}/2");
        }
    }

    #[test]
    fn two_weight_empty_is_first_class() {
        // t far below s' empties the interval without erroring
        let v = range_two_weight(r(0, 1), r(-4, 1)).unwrap();
        assert!(v.range.empty);
    }

    #[test]
    fn sharpness_predicate() {
        let v = range_two_weight(r(0, 1), r(2, 1)).unwrap();
        // s = 2, so 2 - s = 0: sharp iff t - s' <= 0; here t - s' = 2
        assert!(!v.sharp_at(r(2, 1)));
        let v = range_two_weight(r(1, 1), r(1, 1)).unwrap();
        // t - s' = 0 <= (2 - 1) p always
        assert!(v.sharp_at(r(3, 2)));
    }

    #[test]
    fn generalized_examples() {
        let spec = GeneralizedHartogsSpec::new([1].into(), [r(0, 1)].into()).unwrap();
        let rg = range_generalized(&spec).unwrap();
        assert_eq!(rg, range_hartogs(r(0, 1)).unwrap());

        let spec = GeneralizedHartogsSpec::new([].into(), [r(0, 1), r(0, 1)].into()).unwrap();
        let rg = range_generalized(&spec).unwrap();
        assert_eq!(rg.lo, r(4, 3));
        assert_eq!(rg.hi, Endpoint::Finite(r(4, 1)));

        let spec = GeneralizedHartogsSpec::new([].into(), [r(-3, 1)].into()).unwrap();
        assert_eq!(range_generalized(&spec).unwrap(), PRange::all_p());
    }

    #[test]
    fn intersections() {
        let a = PRange::all_p();
        let b = PRange::open(r(4, 3), Endpoint::Finite(r(4, 1)));
        assert_eq!(intersect_ranges(&a, &b), b);
        let c = PRange::open(r(3, 2), Endpoint::Finite(r(3, 1)));
        assert_eq!(intersect_ranges(&b, &c), c);
        let d = PRange::open(r(1, 1), Endpoint::Finite(r(2, 1)));
        let e = PRange::open(r(3, 1), Endpoint::Finite(r(4, 1)));
        assert!(intersect_ranges(&d, &e).empty);
    }

    #[test]
    fn alpha_example() {
        let rg = alpha_example_range(r(2, 1)).unwrap();
        assert_eq!(rg.lo, r(3, 2));
        assert_eq!(rg.hi, Endpoint::Finite(r(3, 1)));
        let rg = alpha_example_range(r(1, 1)).unwrap();
        assert_eq!(rg.lo, r(4, 3));
        assert_eq!(rg.hi, Endpoint::Finite(r(4, 1)));
        assert!(alpha_example_range(r(0, 1)).is_err());
        assert!(alpha_example_range(r(-1, 2)).is_err());
    }

    #[test]
    fn alpha_endpoints_are_conjugate() {
        for m in 1..=40i128 {
            let rg = alpha_example_range(r(m, 7)).unwrap();
            let lo = rg.lo;
            let hi = match rg.hi {
                Endpoint::Finite(h) => h,
                _ => unreachable!(),
            };
            let one = Rat::from_int(1);
            assert_eq!(one / lo + one / hi, one, "alpha = {m}/7");
        }
        // s' = 0 is the conjugate-endpoint case of the one-weight table
        let rg = range_hartogs(r(0, 1)).unwrap();
        assert_eq!(Rat::from_int(1) / rg.lo + r(1, 4), Rat::from_int(1));
    }

    #[test]
    fn sharp_target_examples() {
        let t = sharp_target_exponent(4.0, -1, 0.1).unwrap();
        assert!((t - 0.1).abs() < 1e-15);
        let t = sharp_target_exponent(3.0, 0, 0.5).unwrap();
        assert!((t - 2.5).abs() < 1e-15);
        // limit eps -> 0+ of the affine formula at p = 2, k = 0
        let t = sharp_target_exponent(2.0, 0, 1e-300).unwrap();
        assert!(t.abs() < 1e-299);
        assert!(sharp_target_exponent(1.0, 0, 0.1).is_err());
        assert!(sharp_target_exponent(2.0, 0, 0.0).is_err());
    }

    #[test]
    fn sharp_target_collapses_to_s_prime_at_right_endpoint() {
        for (sp, eps) in [(r(0, 1), r(1, 10)), (r(3, 1), r(1, 4)), (r(-1, 2), r(2, 1))] {
            let d = decompose_exponent(sp).unwrap();
            if d.k < -1 {
                continue;
            }
            let k2 = Rat::from_int(d.k + 2);
            let p = (d.s + Rat::from_int(2 * d.k + 4)) / k2;
            let t = sharp_target_exponent(p, d.k, eps).unwrap();
            assert_eq!(t, sp + eps);
        }
    }
}
