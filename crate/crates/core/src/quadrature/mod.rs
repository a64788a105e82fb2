//! Weighted numerical integration on the disk, punctured disk, and
//! half-plane regions, with closed-form moment shortcuts.
//!
//! Everything is normalized to the measure `Lebesgue / pi`, so the unit disk
//! has area 1. `A_p` quotients are ratios of averages and the normalization
//! cancels there, but a single convention avoids silent factors of `pi`.

pub mod adaptive;
mod disk;
mod half_plane;
mod profile;

pub use adaptive::KahanSum;
pub use disk::eval_i_alpha_beta;
pub(crate) use disk::weighted_poisson_integral;
pub use half_plane::{
    integrate_half_disk, integrate_rect, DiskRegion, GeneralDisk, Rect, SpecialDisk,
};
pub use profile::{integrate_radial, log_integrate_radial, PowerPiece, RadialProfile};

use crate::error::{Error, Result};
use alloc::format;

/// Tolerances and subdivision budget shared by the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivision_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivision_depth: 40 }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec { rel_tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_subdivision_depth < 1 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "tolerances must be positive and depth >= 1",
            )));
        }
        Ok(())
    }
}

/// Closed-form monomial moment on the punctured disk:
/// `int |z|^{2m + s'} dA = 2 / (2m + 2 + s')`, valid when `2m + 2 + s' > 0`.
pub fn weighted_moment(m: i32, s_prime: f64) -> Result<f64> {
    let denom = 2.0 * m as f64 + 2.0 + s_prime;
    if !(denom > 0.0) {
        return Err(Error::DivergentIntegral(format!(
            "monomial moment requires 2m + 2 + s' > 0 (got {denom})"
        )));
    }
    Ok(2.0 / denom)
}

/// Same moment by adaptive radial quadrature; agrees with the closed form
/// within `spec.rel_tol` (asserted by the acceptance suite).
pub fn weighted_moment_quadrature(m: i32, s_prime: f64, spec: &QuadratureSpec) -> Result<f64> {
    let closed = weighted_moment(m, s_prime)?; // also performs the divergence check
    let exponent = 2.0 * m as f64 + s_prime + 1.0;
    let f = move |r: f64| num_traits::Float::powf(r, exponent);
    // dyadic panels toward the origin tame the endpoint power
    let mut acc = adaptive::KahanSum::new();
    let mut hi = 1.0f64;
    for _ in 0..128 {
        let lo = hi * 0.5;
        let v = adaptive::integrate(&f, lo, hi, spec.rel_tol * 0.1, spec.abs_tol * 0.1, 24);
        acc.add(v);
        hi = lo;
        if v.abs() < 1e-16 * acc.value().abs() && hi < 1e-6 {
            break;
        }
    }
    Ok(2.0 * acc.value())
}

/// Squared `A^2(H, |z2|^{s'})` norm of the monomial `z1^a z2^b` on the
/// Hartogs triangle: `1/(a+1) * 2/(2a + 2b + s' + 4)`.
pub fn hartogs_monomial_norm(a: i32, b: i32, s_prime: f64) -> Result<f64> {
    let denom = 2.0 * a as f64 + 2.0 * b as f64 + s_prime + 4.0;
    if a < 0 || !(denom > 0.0) {
        return Err(Error::DivergentIntegral(format!(
            "monomial z1^{a} z2^{b} is not square-integrable for s' = {s_prime}"
        )));
    }
    Ok(2.0 / ((a as f64 + 1.0) * denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        assert_eq!(weighted_moment(0, 0.0).unwrap(), 1.0);
        assert_eq!(weighted_moment(1, 1.0).unwrap(), 0.4);
        assert!(matches!(weighted_moment(0, -2.0), Err(Error::DivergentIntegral(_))));
    }

    #[test]
    fn moment_quadrature_matches_closed_form() {
        let spec = QuadratureSpec::default();
        for m in 0..4 {
            for s_prime in [-1.5, 0.0, 1.0, 2.5] {
                let closed = weighted_moment(m, s_prime).unwrap();
                let quad = weighted_moment_quadrature(m, s_prime, &spec).unwrap();
                assert!(
                    ((quad - closed) / closed).abs() < 1e-10,
                    "m={m} s'={s_prime}: {quad} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn normalization_audit() {
        let spec = QuadratureSpec::default();
        let area = weighted_moment_quadrature(0, 0.0, &spec).unwrap();
        assert!((area - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hartogs_norm_consistency() {
        // a = b = 0, s' = 0: int 1 * |z2|^0 over H = 1/(1) * 2/4 = 1/2
        assert_eq!(hartogs_monomial_norm(0, 0, 0.0).unwrap(), 0.5);
        assert!(hartogs_monomial_norm(0, -2, 0.0).is_err());
        assert!(hartogs_monomial_norm(-1, 0, 0.0).is_err());
    }
}
