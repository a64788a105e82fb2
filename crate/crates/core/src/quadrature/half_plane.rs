//! Weighted integrals over disk and rectangle regions of the upper half
//! plane.
//!
//! The weights (see [`crate::muckenhoupt::HalfPlaneWeight`]) reduce to
//! `scalar * |i - z|^{e1} |i + z|^{e2}`, singular only at the interior point
//! `i`. Regions are integrated in polar coordinates about `i` whenever
//! `e1 != 0`, with the radial power flattened by the exact substitution
//! `tau = rho^{e1 + 2}`; angular panels split at the circle/axis incidence
//! angles, and residual kinks are left to the adaptive engine. Divergence is
//! decided analytically from `e1` before any numerics run.

use super::adaptive;
use super::QuadratureSpec;
use crate::error::{Error, Result};
use crate::muckenhoupt::HalfPlaneWeight;
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// A disk centered on the real axis; the test geometry of the special-disk
/// condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialDisk {
    pub x0: f64,
    pub radius: f64,
}

impl SpecialDisk {
    pub fn new(x0: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !x0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "special disk needs a finite center and positive radius (got {x0}, {radius})"
            )));
        }
        Ok(SpecialDisk { x0, radius })
    }
}

/// A disk centered anywhere in the closed upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl GeneralDisk {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() || center.im < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "general disk needs a closed-half-plane center and positive radius (got {center}, {radius})"
            )));
        }
        Ok(GeneralDisk { center, radius })
    }
}

/// Either disk geometry, intersected with the open upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiskRegion {
    Special(SpecialDisk),
    General(GeneralDisk),
}

impl DiskRegion {
    pub fn center(&self) -> Complex64 {
        match self {
            DiskRegion::Special(d) => Complex64::new(d.x0, 0.0),
            DiskRegion::General(d) => d.center,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            DiskRegion::Special(d) => d.radius,
            DiskRegion::General(d) => d.radius,
        }
    }

    /// Normalized (Lebesgue/pi) area of `D` cap the upper half plane.
    pub fn area(&self) -> f64 {
        let r = self.radius();
        let h = self.center().im;
        if h >= r {
            return r * r;
        }
        // circular segment above the axis
        let theta = (h / r).acos();
        (r * r * (core::f64::consts::PI - theta) + h * (r * r - h * h).sqrt())
            / core::f64::consts::PI
    }

    /// Whether `i` lies in the closure of the region.
    pub fn closure_contains_i(&self) -> bool {
        (self.center() - Complex64::new(0.0, 1.0)).norm() <= self.radius()
    }
}

/// An axis-aligned rectangle in the closed upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rect {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        if !(x_lo < x_hi && y_lo < y_hi && y_lo >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rectangle [{x_lo},{x_hi}]x[{y_lo},{y_hi}] must be nondegenerate in the closed half plane"
            )));
        }
        Ok(Rect { x_lo, x_hi, y_lo, y_hi })
    }

    pub fn contains_i(&self) -> bool {
        self.x_lo <= 0.0 && 0.0 <= self.x_hi && self.y_lo <= 1.0 && 1.0 <= self.y_hi
    }

    /// Normalized (Lebesgue/pi) area.
    pub fn area(&self) -> f64 {
        (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo) / core::f64::consts::PI
    }
}

fn check_integrable_at_i(weight: &HalfPlaneWeight, region_touches_i: bool) -> Result<()> {
    let e1 = weight.i_exponent();
    if region_touches_i && e1 <= -2.0 {
        return Err(Error::DivergentIntegral(format!(
            "factor |i-z|^{e1} is not integrable at i: requires exponent > -2"
        )));
    }
    Ok(())
}

/// Normalized integral of `weight` over `D` cap the upper half plane.
pub fn integrate_half_disk(
    weight: &HalfPlaneWeight,
    region: &DiskRegion,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    check_integrable_at_i(weight, region.closure_contains_i())?;
    let (e1, e2) = weight.reduced_exponents();
    let raw = if e1 == 0.0 {
        disk_center_chart(e2, region, spec)
    } else {
        disk_about_i_chart(e1, e2, region, spec)
    };
    Ok(weight.scalar() * raw / core::f64::consts::PI)
}

/// Polar chart about the region's own center; for weights smooth at `i`.
fn disk_center_chart(e2: f64, region: &DiskRegion, spec: &QuadratureSpec) -> f64 {
    let c = region.center();
    let r_disk = region.radius();
    let h = c.im;
    let i = Complex64::new(0.0, 1.0);
    let inner_rel = spec.rel_tol * 0.25;
    let inner_abs = spec.abs_tol * 0.25;
    let depth = spec.max_subdivision_depth;

    let f_theta = move |theta: f64| {
        let dir = Complex64::from_polar(1.0, theta);
        let r_max = if theta.sin() >= 0.0 || h >= r_disk {
            r_disk
        } else {
            r_disk.min(h / (-theta.sin()))
        };
        if r_max <= 0.0 {
            return 0.0;
        }
        let g = move |r: f64| {
            let z = c + r * dir;
            r * if e2 == 0.0 { 1.0 } else { (i + z).norm().powf(e2) }
        };
        adaptive::integrate(&g, 0.0, r_max, inner_rel, inner_abs, depth)
    };

    // split where the radial bound switches between disk and axis
    let mut breaks = alloc::vec![-core::f64::consts::PI, 0.0, core::f64::consts::PI];
    if h < r_disk {
        let a = (h / r_disk).asin();
        breaks.push(-a);
        breaks.push(-core::f64::consts::PI + a);
        breaks.push(-core::f64::consts::FRAC_PI_2);
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    adaptive::integrate_panels(&f_theta, &breaks, spec.rel_tol, spec.abs_tol, depth)
}

/// Polar chart about `i`, with the radial power `rho^{e1}` flattened exactly.
fn disk_about_i_chart(e1: f64, e2: f64, region: &DiskRegion, spec: &QuadratureSpec) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let c = region.center();
    let r_disk = region.radius();
    let d = c - i;
    let a_dist = d.norm();
    let psi = if a_dist == 0.0 { 0.0 } else { d.im.atan2(d.re) };
    let inner_rel = spec.rel_tol * 0.25;
    let inner_abs = spec.abs_tol * 0.25;
    let depth = spec.max_subdivision_depth;
    let gexp = e1 + 2.0;

    let f_phi = move |phi: f64| {
        let (sin_phi, cos_phi) = phi.sin_cos();
        let u = a_dist * (phi - psi).cos();
        let disc = u * u - a_dist * a_dist + r_disk * r_disk;
        if disc <= 0.0 {
            return 0.0;
        }
        let sq = disc.sqrt();
        let mut lo = (u - sq).max(0.0);
        let mut hi = u + sq;
        if sin_phi < 0.0 {
            hi = hi.min(1.0 / (-sin_phi));
            lo = lo.min(hi);
        }
        if hi <= lo {
            return 0.0;
        }
        let dir = Complex64::new(cos_phi, sin_phi);
        let smooth = move |rho: f64| {
            if e2 == 0.0 {
                1.0
            } else {
                (2.0 * i + rho * dir).norm().powf(e2)
            }
        };
        if gexp > 0.0 {
            // int rho^{e1+1} g drho = (1/gexp) int g(tau^{1/gexp}) dtau
            let f = move |tau: f64| smooth(tau.powf(1.0 / gexp)) / gexp;
            adaptive::integrate(&f, lo.powf(gexp), hi.powf(gexp), inner_rel, inner_abs, depth)
        } else {
            // i is outside the region here, so the power is smooth on [lo, hi]
            let f = move |rho: f64| rho.powf(e1 + 1.0) * smooth(rho);
            adaptive::integrate(&f, lo, hi, inner_rel, inner_abs, depth)
        }
    };

    // feasible angular window and its kink angles
    let (w0, w1) = if a_dist < r_disk {
        (-core::f64::consts::PI + psi, core::f64::consts::PI + psi)
    } else {
        let delta = (r_disk / a_dist).min(1.0).asin();
        (psi - delta, psi + delta)
    };
    let mut breaks = alloc::vec![w0, w1];
    let mut push_candidate = |angle: f64| {
        for shift in [-2.0 * core::f64::consts::PI, 0.0, 2.0 * core::f64::consts::PI] {
            let a = angle + shift;
            if a > w0 + 1e-12 && a < w1 - 1e-12 {
                breaks.push(a);
            }
        }
    };
    if c.im < r_disk {
        // circle meets the axis: angles from i toward the two crossings
        let half_chord = (r_disk * r_disk - c.im * c.im).sqrt();
        for x in [c.re - half_chord, c.re + half_chord] {
            push_candidate((-1.0f64).atan2(x));
        }
    }
    push_candidate(psi);
    push_candidate(-core::f64::consts::FRAC_PI_2);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    adaptive::integrate_panels(&f_phi, &breaks, spec.rel_tol, spec.abs_tol, depth)
}

/// Normalized integral of `weight` over a rectangle of the closed upper half
/// plane. Rectangles with `i` in their closure are split into corner wedges
/// at `i` so the radial power is flattened exactly.
pub fn integrate_rect(
    weight: &HalfPlaneWeight,
    rect: &Rect,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    check_integrable_at_i(weight, rect.contains_i())?;
    let (e1, e2) = weight.reduced_exponents();
    let raw = if e1 != 0.0 && rect.contains_i() {
        let mut total = adaptive::KahanSum::new();
        let xs = split_at(rect.x_lo, rect.x_hi, 0.0);
        let ys = split_at(rect.y_lo, rect.y_hi, 1.0);
        for xw in xs.windows(2) {
            for yw in ys.windows(2) {
                total.add(corner_wedge(e1, e2, xw[0], xw[1], yw[0], yw[1], spec));
            }
        }
        total.value()
    } else {
        rect_tensor_chart(e1, e2, rect, spec)
    };
    Ok(weight.scalar() * raw / core::f64::consts::PI)
}

fn split_at(lo: f64, hi: f64, at: f64) -> Vec<f64> {
    if at > lo && at < hi {
        alloc::vec![lo, at, hi]
    } else {
        alloc::vec![lo, hi]
    }
}

/// Integral over a sub-rectangle having `i` at one (possibly degenerate)
/// corner, in polar coordinates about `i`.
fn corner_wedge(e1: f64, e2: f64, x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64, spec: &QuadratureSpec) -> f64 {
    // local extents from i = (0, 1); the sub-rectangle lies in one quadrant
    let (u_lo, u_hi) = (x_lo - 0.0, x_hi - 0.0);
    let (v_lo, v_hi) = (y_lo - 1.0, y_hi - 1.0);
    let sx: f64 = if u_hi <= 0.0 { -1.0 } else { 1.0 };
    let sy: f64 = if v_hi <= 0.0 { -1.0 } else { 1.0 };
    let w = (u_hi - u_lo).abs();
    let h = (v_hi - v_lo).abs();
    if w == 0.0 || h == 0.0 {
        return 0.0;
    }
    let i = Complex64::new(0.0, 1.0);
    let inner_rel = spec.rel_tol * 0.25;
    let inner_abs = spec.abs_tol * 0.25;
    let depth = spec.max_subdivision_depth;
    let gexp = e1 + 2.0;

    let f_phi = move |phi_local: f64| {
        let (s, c) = phi_local.sin_cos();
        if s <= 0.0 && c <= 0.0 {
            return 0.0;
        }
        let rho_max = (if c > 0.0 { w / c } else { f64::INFINITY })
            .min(if s > 0.0 { h / s } else { f64::INFINITY });
        let dir = Complex64::new(sx * c, sy * s);
        let smooth = move |rho: f64| {
            if e2 == 0.0 {
                1.0
            } else {
                (2.0 * i + rho * dir).norm().powf(e2)
            }
        };
        let f = move |tau: f64| smooth(tau.powf(1.0 / gexp)) / gexp;
        adaptive::integrate(&f, 0.0, rho_max.powf(gexp), inner_rel, inner_abs, depth)
    };

    let diag = h.atan2(w);
    let breaks = [0.0, diag, core::f64::consts::FRAC_PI_2];
    adaptive::integrate_panels(&f_phi, &breaks, spec.rel_tol, spec.abs_tol, depth)
}

fn rect_tensor_chart(e1: f64, e2: f64, rect: &Rect, spec: &QuadratureSpec) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let inner_rel = spec.rel_tol * 0.25;
    let inner_abs = spec.abs_tol * 0.25;
    let depth = spec.max_subdivision_depth;
    let (y_lo, y_hi) = (rect.y_lo, rect.y_hi);
    let f_x = move |x: f64| {
        let g = move |y: f64| {
            let z = Complex64::new(x, y);
            let mut v = 1.0;
            if e1 != 0.0 {
                v *= (i - z).norm().powf(e1);
            }
            if e2 != 0.0 {
                v *= (i + z).norm().powf(e2);
            }
            v
        };
        adaptive::integrate(&g, y_lo, y_hi, inner_rel, inner_abs, depth)
    };
    let breaks = split_at(rect.x_lo, rect.x_hi, 0.0);
    adaptive::integrate_panels(&f_x, &breaks, spec.rel_tol, spec.abs_tol, depth)
}
