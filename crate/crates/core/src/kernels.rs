//! Closed-form weighted Bergman kernels.
//!
//! With the normalization `Area(unit disk) = 1`, the ordinary disk kernel is
//! `B_0(z, zeta) = 1/(1 - z conj(zeta))^2`. The punctured-disk kernel with
//! weight `|z|^{s'}` comes in two algebraically equal forms: the closed
//! two-term quotient indexed by the smallest integer `t > -s'/2`, and the
//! homotopy combination `(s/2) (z conj(zeta))^{-(k+1)} B_0 +
//! (1 - s/2) (z conj(zeta))^{-k} B_0` built on the split `s' = s + 2k`.
//! The Hartogs-triangle kernel is assembled from these through the
//! biholomorphism `(z1, z2) -> (z1/z2, z2)`, and cross-checked by a truncated
//! orthonormal-expansion series.

use crate::error::{Error, Result};
use crate::quadrature::hartogs_monomial_norm;
use crate::ranges::decompose_exponent;
use alloc::boxed::Box;
use alloc::string::String;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Floor below which `|1 - z conj(zeta)|` is treated as singular.
const SINGULAR_FLOOR: f64 = 1e-14;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.norm() < 1.0) {
            return Err(Error::Domain(String::from("point must lie in the open unit disk")));
        }
        Ok(DiskPoint(value))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    fn require_punctured(&self) -> Result<()> {
        if self.0 == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain(String::from(
                "punctured-disk kernel is undefined at the origin",
            )));
        }
        Ok(())
    }
}

/// A point of the Hartogs triangle `|z1| < |z2| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HartogsPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl HartogsPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        if !(z1.norm() < z2.norm() && z2.norm() < 1.0) {
            return Err(Error::Domain(String::from(
                "Hartogs point requires |z1| < |z2| < 1",
            )));
        }
        Ok(HartogsPoint { z1, z2 })
    }
}

/// A point of the open upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.im > 0.0) {
            return Err(Error::Domain(String::from(
                "half-plane point requires positive imaginary part",
            )));
        }
        Ok(HalfPlanePoint(value))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// Ordinary Bergman kernel of the unit disk, `1/(1 - z conj(zeta))^2`.
pub fn disk_kernel(z: DiskPoint, zeta: DiskPoint) -> Result<Complex64> {
    let d = Complex64::new(1.0, 0.0) - z.value() * zeta.value().conj();
    if d.norm() < SINGULAR_FLOOR {
        return Err(Error::NearSingular { distance: d.norm() });
    }
    Ok(1.0 / (d * d))
}

/// Which algebraic form of the punctured-disk kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PuncturedForm {
    /// Two-term quotient indexed by the smallest integer `t > -s'/2`.
    Closed,
    /// `(s/2) w^{-(k+1)} B_0 + (1 - s/2) w^{-k} B_0` with `w = z conj(zeta)`.
    Homotopy,
}

/// Weighted Bergman kernel of the punctured disk with weight `|z|^{s'}`.
pub fn punctured_kernel(
    s_prime: f64,
    z: DiskPoint,
    zeta: DiskPoint,
    form: PuncturedForm,
) -> Result<Complex64> {
    z.require_punctured()?;
    zeta.require_punctured()?;
    if !s_prime.is_finite() {
        return Err(Error::InvalidArgument(String::from("s' must be finite")));
    }
    let w = z.value() * zeta.value().conj();
    let b0 = disk_kernel(z, zeta)?;
    match form {
        PuncturedForm::Closed => {
            // smallest integer strictly above -s'/2
            let t = (-s_prime / 2.0).floor() as i32 + 1;
            let half = s_prime / 2.0;
            let lead = (t as f64 + half) * w.powi(t - 1) - (t as f64 - 1.0 + half) * w.powi(t);
            let d = Complex64::new(1.0, 0.0) - w;
            Ok(lead / (d * d))
        }
        PuncturedForm::Homotopy => {
            let dec = decompose_exponent(s_prime)?;
            let k = dec.k as i32;
            let s = dec.s;
            Ok((s / 2.0) * w.powi(-(k + 1)) * b0 + (1.0 - s / 2.0) * w.powi(-k) * b0)
        }
    }
}

/// A holomorphic function on the disk guaranteed non-vanishing there; the
/// carrier of the `|g|^2` weight family.
pub enum NonVanishingHolomorphic {
    /// `g == 1` (the unweighted case).
    Identity,
    /// `g(z) = (z - 1)^alpha`, principal branch; the cut `[1, oo)` meets the
    /// closed disk only at the boundary point 1.
    PowerOfZMinusOne { alpha: f64 },
    /// A user-supplied map, spot-checked for zeros at construction.
    UserSupplied(Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl core::fmt::Debug for NonVanishingHolomorphic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NonVanishingHolomorphic::Identity => write!(f, "Identity"),
            NonVanishingHolomorphic::PowerOfZMinusOne { alpha } => {
                write!(f, "PowerOfZMinusOne {{ alpha: {alpha} }}")
            }
            NonVanishingHolomorphic::UserSupplied(_) => write!(f, "UserSupplied(..)"),
        }
    }
}

impl NonVanishingHolomorphic {
    /// Wraps a user map after sampling it on a spiral of interior points;
    /// a zero or non-finite value anywhere in the sample is rejected.
    pub fn user_supplied(
        f: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    ) -> Result<Self> {
        for m in 0..96 {
            let z = if m == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                let r = 0.01 + 0.98 * (m as f64) / 95.0;
                let theta = 2.399963229728653 * m as f64; // golden-angle spiral
                Complex64::from_polar(r, theta)
            };
            let v = f(z);
            if !v.re.is_finite() || !v.im.is_finite() || v.norm() == 0.0 {
                return Err(Error::InvalidArgument(String::from(
                    "user-supplied g vanishes or is non-finite on the sample grid",
                )));
            }
        }
        Ok(NonVanishingHolomorphic::UserSupplied(f))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = match self {
            NonVanishingHolomorphic::Identity => Complex64::new(1.0, 0.0),
            NonVanishingHolomorphic::PowerOfZMinusOne { alpha } => {
                (z - Complex64::new(1.0, 0.0)).powf(*alpha)
            }
            NonVanishingHolomorphic::UserSupplied(f) => f(z),
        };
        if !v.re.is_finite() || !v.im.is_finite() || v.norm() == 0.0 {
            return Err(Error::Domain(String::from("g evaluated to zero or non-finite")));
        }
        Ok(v)
    }
}

/// Kernel of the disk weighted by `|g|^2`:
/// `B_0(z, zeta) / (g(z) conj(g(zeta)))`.
pub fn g_weighted_kernel(
    g: &NonVanishingHolomorphic,
    z: DiskPoint,
    zeta: DiskPoint,
) -> Result<Complex64> {
    let b0 = disk_kernel(z, zeta)?;
    Ok(b0 / (g.eval(z.value())? * g.eval(zeta.value())?.conj()))
}

/// Which route to the Hartogs-triangle kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HartogsForm {
    /// Transformation-formula composition through `(z1, z2) -> (z1/z2, z2)`.
    Transform,
    /// Truncated orthonormal-expansion oracle with total degree cutoff.
    Series { degree: i32 },
}

/// Weighted Bergman kernel of the Hartogs triangle with weight `|z2|^{s'}`.
pub fn hartogs_kernel(
    s_prime: f64,
    z: HartogsPoint,
    zeta: HartogsPoint,
    form: HartogsForm,
) -> Result<Complex64> {
    match form {
        HartogsForm::Transform => hartogs_kernel_transform(s_prime, z, zeta),
        HartogsForm::Series { degree } => {
            Ok(hartogs_kernel_series(s_prime, z, zeta, degree)?.0)
        }
    }
}

fn hartogs_kernel_transform(
    s_prime: f64,
    z: HartogsPoint,
    zeta: HartogsPoint,
) -> Result<Complex64> {
    let q_z = DiskPoint::new(z.z1 / z.z2)?;
    let q_zeta = DiskPoint::new(zeta.z1 / zeta.z2)?;
    let fiber_z = DiskPoint::new(z.z2)?;
    let fiber_zeta = DiskPoint::new(zeta.z2)?;
    let base = disk_kernel(q_z, q_zeta)?;
    let fiber = punctured_kernel(s_prime, fiber_z, fiber_zeta, PuncturedForm::Closed)?;
    Ok(base * fiber / (z.z2 * zeta.z2.conj()))
}

/// Truncated orthonormal-expansion evaluation of the Hartogs kernel together
/// with a geometric tail estimate from the last two partial sums.
pub fn hartogs_kernel_series(
    s_prime: f64,
    z: HartogsPoint,
    zeta: HartogsPoint,
    degree: i32,
) -> Result<(Complex64, f64)> {
    if degree <= 0 {
        return Err(Error::InvalidArgument(String::from(
            "series degree cutoff must be positive",
        )));
    }
    let u = z.z1 * zeta.z1.conj();
    let v = z.z2 * zeta.z2.conj();
    let partial = |cap: i32| -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for a in 0..=cap {
            // membership needs 2a + 2b + s' + 4 > 0
            let b_min_strict = (-(2.0 * a as f64 + s_prime + 4.0) / 2.0).floor() as i32 + 1;
            for b in b_min_strict.max(-cap)..=cap {
                let inv_norm = hartogs_monomial_norm(a, b, s_prime)?;
                sum += u.powi(a) * v.powi(b) / inv_norm;
            }
        }
        Ok(sum)
    };
    let s_full = partial(degree)?;
    if degree < 3 {
        return Ok((s_full, f64::INFINITY));
    }
    let s1 = partial(degree - 1)?;
    let s2 = partial(degree - 2)?;
    let d_last = (s_full - s1).norm();
    let d_prev = (s1 - s2).norm();
    let tail = if d_prev > 0.0 {
        let q = (d_last / d_prev).min(0.95);
        d_last * q / (1.0 - q)
    } else {
        d_last
    };
    Ok((s_full, tail))
}

/// Cayley transform `z -> (i - z)/(i + z)` from the upper half plane onto the
/// unit disk.
pub fn cayley(z: HalfPlanePoint) -> Result<DiskPoint> {
    let i = Complex64::new(0.0, 1.0);
    DiskPoint::new((i - z.value()) / (i + z.value()))
}

/// Inverse Cayley transform `w -> i (1 - w)/(1 + w)`.
pub fn cayley_inverse(w: DiskPoint) -> Result<HalfPlanePoint> {
    let one = Complex64::new(1.0, 0.0);
    if (w.value() + one).norm() < SINGULAR_FLOOR {
        return Err(Error::Domain(String::from(
            "inverse Cayley transform is undefined at w = -1",
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    HalfPlanePoint::new(i * (one - w.value()) / (one + w.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_punctured(rng: &mut ChaCha8Rng) -> DiskPoint {
        loop {
            let r: f64 = rng.gen_range(0.05..0.9);
            let th: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
            let z = Complex64::from_polar(r, th);
            if z.norm() > 1e-3 {
                return DiskPoint::new(z).unwrap();
            }
        }
    }

    #[test]
    fn disk_kernel_examples() {
        let zero = DiskPoint::new(c(0.0, 0.0)).unwrap();
        let zeta = DiskPoint::new(c(0.3, -0.4)).unwrap();
        assert_eq!(disk_kernel(zero, zeta).unwrap(), c(1.0, 0.0));
        let half = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let v = disk_kernel(half, half).unwrap();
        assert!((v - c(16.0 / 9.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn disk_kernel_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = random_punctured(&mut rng);
            let w = random_punctured(&mut rng);
            let a = disk_kernel(z, w).unwrap();
            let b = disk_kernel(w, z).unwrap();
            assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn punctured_reduces_to_disk_at_zero_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let z = random_punctured(&mut rng);
            let w = random_punctured(&mut rng);
            let a = punctured_kernel(0.0, z, w, PuncturedForm::Closed).unwrap();
            let b = disk_kernel(z, w).unwrap();
            assert!((a - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn punctured_example_values() {
        let half = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let v = punctured_kernel(2.0, half, half, PuncturedForm::Closed).unwrap();
        assert!((v - c(64.0 / 9.0, 0.0)).norm() < 1e-13);
        // s' = 1 diagonal formula at real radius r
        for r in [0.2, 0.5, 0.8] {
            let z = DiskPoint::new(c(r, 0.0)).unwrap();
            let v = punctured_kernel(1.0, z, z, PuncturedForm::Homotopy).unwrap();
            let expect = (0.5 / (r * r) + 0.5) / ((1.0 - r * r) * (1.0 - r * r));
            assert!((v - c(expect, 0.0)).norm() < 1e-12 * expect);
        }
    }

    #[test]
    fn closed_equals_homotopy() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let s_prime: f64 = rng.gen_range(-8.0..8.0);
            let z = random_punctured(&mut rng);
            let w = random_punctured(&mut rng);
            let a = punctured_kernel(s_prime, z, w, PuncturedForm::Closed).unwrap();
            let b = punctured_kernel(s_prime, z, w, PuncturedForm::Homotopy).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300), "s' = {s_prime}");
        }
    }

    #[test]
    fn period_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let s_prime: f64 = rng.gen_range(-8.0..8.0);
            let z = random_punctured(&mut rng);
            let w = random_punctured(&mut rng);
            let shifted = punctured_kernel(s_prime + 2.0, z, w, PuncturedForm::Closed).unwrap();
            let base = punctured_kernel(s_prime, z, w, PuncturedForm::Closed).unwrap();
            let predicted = base / (z.value() * w.value().conj());
            assert!((shifted - predicted).norm() <= 1e-12 * shifted.norm());
        }
    }

    #[test]
    fn diagonal_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let s_prime: f64 = rng.gen_range(-8.0..8.0);
            let z = random_punctured(&mut rng);
            let v = punctured_kernel(s_prime, z, z, PuncturedForm::Closed).unwrap();
            assert!(v.im.abs() <= 1e-12 * v.re.abs());
            assert!(v.re > 0.0);
        }
    }

    #[test]
    fn punctured_rejects_origin() {
        let origin = DiskPoint::new(c(0.0, 0.0)).unwrap();
        let w = DiskPoint::new(c(0.5, 0.0)).unwrap();
        assert!(matches!(
            punctured_kernel(1.0, origin, w, PuncturedForm::Closed),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn g_weighted_examples() {
        let z = DiskPoint::new(c(0.2, 0.1)).unwrap();
        let w = DiskPoint::new(c(-0.4, 0.3)).unwrap();
        let id = NonVanishingHolomorphic::Identity;
        assert_eq!(
            g_weighted_kernel(&id, z, w).unwrap(),
            disk_kernel(z, w).unwrap()
        );
        // g(z) = (z-1)^alpha at the center: |(-1)^alpha| = 1 for real alpha
        for alpha in [0.5, 1.0, 2.0, 3.7] {
            let g = NonVanishingHolomorphic::PowerOfZMinusOne { alpha };
            let zero = DiskPoint::new(c(0.0, 0.0)).unwrap();
            let v = g_weighted_kernel(&g, zero, zero).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn g_weighted_hermitian() {
        let g = NonVanishingHolomorphic::PowerOfZMinusOne { alpha: 1.5 };
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let z = random_punctured(&mut rng);
            let w = random_punctured(&mut rng);
            let a = g_weighted_kernel(&g, z, w).unwrap();
            let b = g_weighted_kernel(&g, w, z).unwrap();
            assert!((a - b.conj()).norm() <= 1e-11 * a.norm());
        }
    }

    #[test]
    fn user_supplied_rejects_vanishing() {
        let res = NonVanishingHolomorphic::user_supplied(Box::new(|z| z));
        assert!(res.is_err());
        let ok = NonVanishingHolomorphic::user_supplied(Box::new(|z| {
            (z * 0.5).exp()
        }));
        assert!(ok.is_ok());
    }

    #[test]
    fn hartogs_transform_example() {
        let p = HartogsPoint::new(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        let v = hartogs_kernel(0.0, p, p, HartogsForm::Transform).unwrap();
        assert!((v - c(64.0 / 9.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn hartogs_series_converges_to_transform() {
        let z = HartogsPoint::new(c(0.1, 0.05), c(0.5, -0.2)).unwrap();
        let w = HartogsPoint::new(c(-0.08, 0.1), c(0.4, 0.3)).unwrap();
        for s_prime in [0.0, 1.0, -2.5] {
            let reference = hartogs_kernel(s_prime, z, w, HartogsForm::Transform).unwrap();
            let mut last_err = f64::INFINITY;
            for degree in [8, 16, 32, 48] {
                let (val, bound) = hartogs_kernel_series(s_prime, z, w, degree).unwrap();
                let err = (val - reference).norm();
                assert!(err <= last_err * 1.5 + 1e-13, "series error should shrink");
                if degree >= 32 {
                    assert!(err <= bound.max(1e-10) * 4.0, "err {err} vs bound {bound}");
                }
                last_err = err;
            }
            assert!(last_err < 1e-9 * reference.norm().max(1.0));
        }
    }

    #[test]
    fn hartogs_hermitian() {
        let z = HartogsPoint::new(c(0.1, 0.2), c(0.6, 0.1)).unwrap();
        let w = HartogsPoint::new(c(0.2, -0.1), c(-0.3, 0.5)).unwrap();
        let a = hartogs_kernel(1.5, z, w, HartogsForm::Transform).unwrap();
        let b = hartogs_kernel(1.5, w, z, HartogsForm::Transform).unwrap();
        assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn cayley_examples() {
        let i_pt = HalfPlanePoint::new(c(0.0, 1.0)).unwrap();
        assert!(cayley(i_pt).unwrap().value().norm() < 1e-15);
        let center = DiskPoint::new(c(0.0, 0.0)).unwrap();
        let back = cayley_inverse(center).unwrap();
        assert!((back.value() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn cayley_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let z = HalfPlanePoint::new(c(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..5.0)))
                .unwrap();
            let w = cayley(z).unwrap();
            let back = cayley_inverse(w).unwrap();
            assert!((back.value() - z.value()).norm() < 1e-12 * (1.0 + z.value().norm()));
        }
    }
}
