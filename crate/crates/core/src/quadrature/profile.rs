//! Piecewise-power radial profiles and their weighted integrals.
//!
//! Piece boundaries are stored as logarithms: the blow-up sequence's
//! breakpoints `a_j = j^{-j}` underflow `f64` near `j = 150`, while their
//! logarithms stay comfortably representable.

use super::adaptive;
use super::QuadratureSpec;
use crate::error::{Error, Result};
use crate::logspace::LogNum;
use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// `c * r^gamma` on the half-open interval `(lo, hi]`.
#[derive(Debug, Clone, Copy)]
pub struct PowerPiece {
    ln_lo: f64,
    ln_hi: f64,
    pub coeff: f64,
    pub exponent: f64,
}

impl PowerPiece {
    pub fn new(lo: f64, hi: f64, coeff: f64, exponent: f64) -> Result<Self> {
        if !(lo >= 0.0 && lo < hi && hi <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "piece interval ({lo}, {hi}] must satisfy 0 <= lo < hi <= 1"
            )));
        }
        Ok(PowerPiece { ln_lo: lo.ln(), ln_hi: hi.ln(), coeff, exponent })
    }

    /// Builds a piece from log-scale interval bounds (`-inf` encodes 0).
    pub fn from_ln_bounds(ln_lo: f64, ln_hi: f64, coeff: f64, exponent: f64) -> Result<Self> {
        if !(ln_lo < ln_hi && ln_hi <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "log bounds ({ln_lo}, {ln_hi}] must satisfy ln_lo < ln_hi <= 0"
            )));
        }
        Ok(PowerPiece { ln_lo, ln_hi, coeff, exponent })
    }

    pub fn lo(&self) -> f64 {
        self.ln_lo.exp()
    }

    pub fn hi(&self) -> f64 {
        self.ln_hi.exp()
    }

    pub fn ln_lo(&self) -> f64 {
        self.ln_lo
    }

    pub fn ln_hi(&self) -> f64 {
        self.ln_hi
    }
}

/// A radial function on `(0, 1]`: either an ordered contiguous list of power
/// pieces (closed-form integrable) or a generic evaluable map.
pub enum RadialProfile {
    PiecewisePower(Vec<PowerPiece>),
    Map(Box<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl core::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RadialProfile::PiecewisePower(p) => write!(f, "PiecewisePower({} pieces)", p.len()),
            RadialProfile::Map(_) => write!(f, "Map(..)"),
        }
    }
}

impl RadialProfile {
    /// The constant profile `c` on `(0, 1]`.
    pub fn constant(c: f64) -> Self {
        RadialProfile::PiecewisePower(
            [PowerPiece::new(0.0, 1.0, c, 0.0).unwrap()].into_iter().collect(),
        )
    }

    /// The single power `c * r^gamma` on `(0, 1]`.
    pub fn power(c: f64, gamma: f64) -> Self {
        RadialProfile::PiecewisePower(
            [PowerPiece::new(0.0, 1.0, c, gamma).unwrap()].into_iter().collect(),
        )
    }

    /// Validates ordering, disjointness, and that the pieces tile
    /// `(r_min, 1]` contiguously.
    pub fn from_pieces(pieces: Vec<PowerPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "profile needs at least one piece",
            )));
        }
        for w in pieces.windows(2) {
            if w[0].ln_hi != w[1].ln_lo {
                return Err(Error::InvalidArgument(alloc::string::String::from(
                    "pieces must be ordered and contiguous",
                )));
            }
        }
        if pieces.last().unwrap().ln_hi != 0.0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "pieces must cover up to r = 1",
            )));
        }
        Ok(RadialProfile::PiecewisePower(pieces))
    }

    /// Pointwise value; zero below the covered interval.
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Map(f) => f(r),
            RadialProfile::PiecewisePower(pieces) => {
                let ln_r = r.ln();
                for p in pieces {
                    if ln_r > p.ln_lo && ln_r <= p.ln_hi {
                        return p.coeff * (p.exponent * ln_r).exp();
                    }
                }
                0.0
            }
        }
    }
}

/// `2 * int_0^1 profile(r) r^{weight_exponent + 1} dr` — the radial part of a
/// matched-mode integral against `|z|^{weight_exponent}` under the normalized
/// area measure.
///
/// Exact antiderivatives on power pieces; adaptive quadrature otherwise.
/// Detects non-integrability analytically: a piece reaching `r = 0` whose
/// total integrand exponent is `<= -1` diverges.
pub fn integrate_radial(
    profile: &RadialProfile,
    weight_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    match profile {
        RadialProfile::PiecewisePower(pieces) => {
            let mut acc = adaptive::KahanSum::new();
            for p in pieces {
                acc.add(piece_weighted_integral(p, weight_exponent)?);
            }
            Ok(2.0 * acc.value())
        }
        RadialProfile::Map(f) => {
            let g = |r: f64| f(r) * r.powf(weight_exponent + 1.0);
            // dyadic panels toward the origin; stop once contributions die out
            let mut acc = adaptive::KahanSum::new();
            let mut hi = 1.0f64;
            for _ in 0..64 {
                let lo = 0.5 * hi;
                let v = adaptive::integrate(
                    &g,
                    lo,
                    hi,
                    spec.rel_tol * 0.25,
                    spec.abs_tol * 0.25,
                    spec.max_subdivision_depth,
                );
                acc.add(v);
                hi = lo;
                if v.abs() < spec.abs_tol && hi < 1e-8 {
                    break;
                }
            }
            Ok(2.0 * acc.value())
        }
    }
}

fn piece_weighted_integral(p: &PowerPiece, weight_exponent: f64) -> Result<f64> {
    let e = p.exponent + weight_exponent + 2.0; // integrand power + 1
    if p.ln_lo == f64::NEG_INFINITY && e <= 0.0 {
        return Err(Error::DivergentIntegral(format!(
            "piece r^{} against r^{} dr diverges at the origin",
            p.exponent,
            weight_exponent + 1.0
        )));
    }
    if e == 0.0 {
        return Ok(p.coeff * (p.ln_hi - p.ln_lo));
    }
    Ok(p.coeff * ((e * p.ln_hi).exp() - (e * p.ln_lo).exp()) / e)
}

/// Log-space version of [`integrate_radial`] for nonnegative piecewise-power
/// profiles whose integrals overflow `f64` (the off-endpoint blow-up norms).
pub fn log_integrate_radial(profile: &RadialProfile, weight_exponent: f64) -> Result<LogNum> {
    let pieces = match profile {
        RadialProfile::PiecewisePower(p) => p,
        RadialProfile::Map(_) => {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "log-space integration needs a piecewise-power profile",
            )))
        }
    };
    let mut total = LogNum::ZERO;
    for p in pieces {
        if p.coeff < 0.0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "log-space integration needs a nonnegative profile",
            )));
        }
        let e = p.exponent + weight_exponent + 2.0;
        if p.ln_lo == f64::NEG_INFINITY && e <= 0.0 {
            return Err(Error::DivergentIntegral(format!(
                "piece r^{} against r^{} dr diverges at the origin",
                p.exponent,
                weight_exponent + 1.0
            )));
        }
        let val = if e == 0.0 {
            LogNum::from_value(p.coeff * (p.ln_hi - p.ln_lo))
        } else if e > 0.0 {
            // hi^e - lo^e, dominated by the upper bound
            let hi_term = LogNum::from_ln(e * p.ln_hi);
            let lo_term = LogNum::from_ln(e * p.ln_lo);
            hi_term.sub(lo_term).mul(LogNum::from_value(p.coeff / e))
        } else {
            // lo^e - hi^e, dominated by the lower bound; / (-e)
            let hi_term = LogNum::from_ln(e * p.ln_hi);
            let lo_term = LogNum::from_ln(e * p.ln_lo);
            lo_term.sub(hi_term).mul(LogNum::from_value(p.coeff / (-e)))
        };
        total = total.add(val);
    }
    Ok(total.mul(LogNum::from_value(2.0)))
}
