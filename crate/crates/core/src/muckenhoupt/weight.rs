//! Power-factor weights on the upper half plane.
//!
//! Every weight in the half-plane machinery is a product of powers of the
//! three moduli `|i - z|`, `|i + z|` and `|(i - z)/(i + z)|`, so closure
//! under duality (`mu^{-p'/p}`) and rescaling is built in, and local
//! integrability reduces to exponent bookkeeping at the single interior
//! singular point `i`.

use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// The three modulus factors a half-plane weight is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorBase {
    /// `|i - z|` — vanishes at the interior point `i`.
    DistToI,
    /// `|i + z|` — bounded below by 1 on the closed upper half plane.
    DistToMinusI,
    /// `|(i - z)/(i + z)|` — the Cayley-transform modulus, `<= 1`.
    CayleyModulus,
}

/// A product `scalar * prod |factor|^exponent` of half-plane moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneWeight {
    factors: Vec<(FactorBase, f64)>,
    scalar: f64,
}

impl HalfPlaneWeight {
    pub fn new(factors: Vec<(FactorBase, f64)>) -> Self {
        HalfPlaneWeight { factors, scalar: 1.0 }
    }

    pub fn with_scalar(mut self, scalar: f64) -> Self {
        assert!(scalar > 0.0, "weights are strictly positive");
        self.scalar = scalar;
        self
    }

    pub fn constant(c: f64) -> Self {
        assert!(c > 0.0, "weights are strictly positive");
        HalfPlaneWeight { factors: Vec::new(), scalar: c }
    }

    pub fn single(base: FactorBase, exponent: f64) -> Self {
        HalfPlaneWeight::new([(base, exponent)].into_iter().collect())
    }

    pub fn factors(&self) -> &[(FactorBase, f64)] {
        &self.factors
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    /// Net exponents `(e_i, e_minus_i)` of the reduced form
    /// `|i - z|^{e_i} |i + z|^{e_minus_i}`.
    pub fn reduced_exponents(&self) -> (f64, f64) {
        let mut e_i = 0.0;
        let mut e_mi = 0.0;
        for &(base, exp) in &self.factors {
            match base {
                FactorBase::DistToI => e_i += exp,
                FactorBase::DistToMinusI => e_mi += exp,
                FactorBase::CayleyModulus => {
                    e_i += exp;
                    e_mi -= exp;
                }
            }
        }
        (e_i, e_mi)
    }

    /// Exponent that governs local integrability at `i`.
    pub fn i_exponent(&self) -> f64 {
        self.reduced_exponents().0
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        let i = Complex64::new(0.0, 1.0);
        let (e_i, e_mi) = self.reduced_exponents();
        let mut v = self.scalar;
        if e_i != 0.0 {
            v *= (i - z).norm().powf(e_i);
        }
        if e_mi != 0.0 {
            v *= (i + z).norm().powf(e_mi);
        }
        v
    }

    /// Pointwise power `self^q` (exponents scale, scalar is raised).
    pub fn pow(&self, q: f64) -> Self {
        HalfPlaneWeight {
            factors: self.factors.iter().map(|&(b, e)| (b, e * q)).collect(),
            scalar: self.scalar.powf(q),
        }
    }

    /// The dual-average integrand `mu^{-p'/p}` entering the `A_p` quotient.
    pub fn dual_power(&self, p: f64) -> Self {
        let p_conj = p / (p - 1.0);
        self.pow(-p_conj / p)
    }

    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0);
        HalfPlaneWeight { factors: self.factors.clone(), scalar: self.scalar * c }
    }
}

/// The Cayley-transported weight pair attached to the punctured-disk kernel
/// bound: `mu1 = |phi|^{-(k+1)p + s + 2k}`, `mu2 = |phi|^{(1-s-k)p + s + 2k}`
/// with `phi(z) = (i - z)/(i + z)`.
pub fn cayley_weight_pair(s: f64, k: i64, p: f64) -> (HalfPlaneWeight, HalfPlaneWeight) {
    let kf = k as f64;
    let mu1 = HalfPlaneWeight::single(
        FactorBase::CayleyModulus,
        -(kf + 1.0) * p + s + 2.0 * kf,
    );
    let mu2 = HalfPlaneWeight::single(
        FactorBase::CayleyModulus,
        (1.0 - s - kf) * p + s + 2.0 * kf,
    );
    (mu1, mu2)
}

/// The weight `sigma(z) = |1/(i+z)^2|^{2-p}`, which satisfies the special-disk
/// condition for every `p > 1`.
pub fn sigma_weight(p: f64) -> HalfPlaneWeight {
    HalfPlaneWeight::single(FactorBase::DistToMinusI, -2.0 * (2.0 - p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        let s2 = sigma_weight(2.0);
        assert_eq!(s2.reduced_exponents(), (0.0, 0.0));
        assert_eq!(s2.eval(Complex64::new(3.0, 0.7)), 1.0);
        let s4 = sigma_weight(4.0);
        assert_eq!(s4.reduced_exponents(), (0.0, 4.0));
        let z = Complex64::new(0.5, 1.5);
        let expect = (Complex64::new(0.0, 1.0) + z).norm().powi(4);
        assert!((s4.eval(z) - expect).abs() < 1e-14 * expect);
    }

    #[test]
    fn reduction_and_duality() {
        let w = HalfPlaneWeight::new(
            [
                (FactorBase::DistToI, -1.0),
                (FactorBase::CayleyModulus, 2.0),
                (FactorBase::DistToMinusI, 0.5),
            ]
            .into_iter()
            .collect(),
        );
        assert_eq!(w.reduced_exponents(), (1.0, -1.5));
        let d = w.dual_power(2.0); // p = p' = 2: exponents flip sign
        assert_eq!(d.reduced_exponents(), (-1.0, 1.5));
    }

    #[test]
    fn pair_exponents_match_construction() {
        let (mu1, mu2) = cayley_weight_pair(1.0, 0, 2.0);
        // -(k+1)p + s + 2k = -1, (1-s-k)p + s + 2k = 1
        assert_eq!(mu1.reduced_exponents(), (-1.0, 1.0));
        assert_eq!(mu2.reduced_exponents(), (1.0, -1.0));
    }
}
