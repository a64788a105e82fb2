//! The weighted Bergman projection on the punctured disk, exact on angular
//! Fourier modes, with the endpoint blow-up experiment and the Schur-test
//! feasibility machinery.
//!
//! A mode function `f(r e^{i theta}) = sum_j f_j(r) e^{ij theta}` projects
//! mode by mode: the basis monomials are `z^m` with `2m + 2 + s' > 0`, and
//! the surviving coefficient is `(2m + 2 + s') int_0^1 f_m(r) r^{m+s'+1} dr`.
//! Modes outside the basis cutoff are annihilated.
//!
//! The blow-up sequence lives on pieces `(a_{j+1}, a_j]` with
//! `a_j = j^{-j}`; those breakpoints underflow `f64` past `j ~ 150` and the
//! off-endpoint norms overflow it, so norms are carried in log space
//! throughout (`a_j^{1/j} = 1/j` is used exactly to avoid cancellation).

use crate::error::{Error, Result};
use crate::kernels::DiskPoint;
use crate::logspace::LogNum;
use crate::quadrature::{
    integrate_radial, log_integrate_radial, weighted_poisson_integral, PowerPiece,
    QuadratureSpec, RadialProfile,
};
use crate::ranges::decompose_exponent;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// A finite angular-Fourier-mode expansion with radial profiles.
#[derive(Debug)]
pub struct ModeFunction {
    modes: BTreeMap<i64, RadialProfile>,
}

impl ModeFunction {
    pub fn new() -> Self {
        ModeFunction { modes: BTreeMap::new() }
    }

    pub fn with_mode(mut self, mode: i64, profile: RadialProfile) -> Self {
        self.modes.insert(mode, profile);
        self
    }

    /// The monomial `z^m` (radial part `r^m` on mode `m`; `m` may be
    /// negative on the punctured disk).
    pub fn monomial(m: i64) -> Self {
        ModeFunction::new().with_mode(m, RadialProfile::power(1.0, m as f64))
    }

    /// `conj(z)^j`: radial part `r^j` on mode `-j`.
    pub fn conj_monomial(j: u32) -> Self {
        ModeFunction::new().with_mode(-(j as i64), RadialProfile::power(1.0, j as f64))
    }

    pub fn modes(&self) -> impl Iterator<Item = (&i64, &RadialProfile)> {
        self.modes.iter()
    }
}

impl Default for ModeFunction {
    fn default() -> Self {
        Self::new()
    }
}

/// Projection output: `sum_m c_m z^m` over basis modes.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicModeExpansion {
    pub coefficients: BTreeMap<i64, Complex64>,
}

impl HolomorphicModeExpansion {
    pub fn coefficient(&self, m: i64) -> Complex64 {
        self.coefficients.get(&m).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Whether mode `m` survives the basis cutoff `m > -(1 + s'/2)`.
fn in_basis(m: i64, s_prime: f64) -> bool {
    2.0 * m as f64 + 2.0 + s_prime > 0.0
}

/// Projects a mode function onto the weighted Bergman space of `|z|^{s'}`.
pub fn project_modes(
    s_prime: f64,
    f: &ModeFunction,
    spec: &QuadratureSpec,
) -> Result<HolomorphicModeExpansion> {
    if !s_prime.is_finite() {
        return Err(Error::InvalidArgument(String::from("s' must be finite")));
    }
    let mut coefficients = BTreeMap::new();
    for (&m, profile) in &f.modes {
        if !in_basis(m, s_prime) {
            continue; // annihilated: the monomial is not in the basis
        }
        let radial = integrate_radial(profile, m as f64 + s_prime, spec)?;
        let c = (2.0 * m as f64 + 2.0 + s_prime) * radial / 2.0;
        if c != 0.0 {
            coefficients.insert(m, Complex64::new(c, 0.0));
        }
    }
    Ok(HolomorphicModeExpansion { coefficients })
}

/// `a_j = (1/j)^j`, evaluated as `exp(-j ln j)` so large indices degrade to
/// subnormals/zero monotonically instead of misordering.
pub fn sequence_a(j: u32) -> Result<f64> {
    if j < 1 {
        return Err(Error::InvalidArgument(String::from("sequence index starts at 1")));
    }
    if j <= 30 {
        return Ok((1.0 / j as f64).powi(j as i32));
    }
    Ok(sequence_a_ln(j).exp())
}

/// `ln a_j = -j ln j`.
pub fn sequence_a_ln(j: u32) -> f64 {
    let jf = j as f64;
    -jf * jf.ln()
}

/// Partial sum `A_{n,p} = sum_{j<=n} j (a_j^{p/j} - a_{j+1}^{p/j})`.
///
/// Uses `a_j^{p/j} = j^{-p}` exactly; each term is evaluated through
/// `expm1` so the near-cancellation at large `j` keeps full precision.
pub fn partial_sum_a(n: u32, p: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument(String::from("partial sum needs n >= 1")));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(String::from("partial sum needs p >= 1")));
    }
    let mut acc = crate::quadrature::KahanSum::new();
    for j in 1..=n {
        let jf = j as f64;
        // delta = (j+1) ln(j+1)/j - ln j = ln(1 + 1/j) + ln(j+1)/j > 0
        let delta = (1.0 / jf).ln_1p() + (jf + 1.0).ln() / jf;
        let term = jf.powf(1.0 - p) * (-(-p * delta).exp_m1());
        acc.add(term);
    }
    Ok(acc.value())
}

/// Schur-test parameters `h(z) = (1 - |z|^2)^delta |z|^sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurParameters {
    pub delta: f64,
    pub sigma: f64,
    pub p: f64,
}

/// Exact solvability of the Schur feasibility system at `(s', p)`.
///
/// With `L = s + k + 1`, `K = k + 1`, the two-sided constraints on `sigma`
/// collapse (after clearing the positive denominator `p`) to
/// `max(-L, -L(p-1)) < min(-K, -K(p-1))`; the `delta` window is never empty.
pub fn schur_solvable<T: crate::ranges::RangeScalar>(s_prime: T, p: T) -> Result<bool> {
    let one = T::from_int(1);
    if !p.is_finite_scalar() || !(one < p) {
        return Err(Error::InvalidArgument(String::from("Schur test needs p > 1")));
    }
    let d = decompose_exponent(s_prime)?;
    let l = d.s + T::from_int(d.k + 1);
    let k = T::from_int(d.k + 1);
    let pm1 = p - one;
    let lo_a = -l;
    let lo_b = -(l * pm1);
    let hi_a = -k;
    let hi_b = -(k * pm1);
    let lo = if lo_a < lo_b { lo_b } else { lo_a };
    let hi = if hi_a < hi_b { hi_a } else { hi_b };
    Ok(lo < hi)
}

/// Returns a feasible `(delta, sigma)` (midpoint of the feasible box) when
/// the Schur system is solvable at `(s', p)`, and `None` otherwise.
pub fn schur_feasible(s_prime: f64, p: f64) -> Result<Option<SchurParameters>> {
    if !schur_solvable(s_prime, p)? {
        return Ok(None);
    }
    let d = decompose_exponent(s_prime)?;
    let p_conj = p / (p - 1.0);
    let l = d.s + d.k as f64 + 1.0;
    let k = d.k as f64 + 1.0;
    let delta = -0.5 * (1.0 / p).min(1.0 / p_conj);
    let lo = (-l / p).max(-l / p_conj);
    let hi = (-k / p).min(-k / p_conj);
    Ok(Some(SchurParameters { delta, sigma: 0.5 * (lo + hi), p }))
}

/// Sampled sup of the two Schur ratios
/// `T(h^q)(z) / h(z)^q`, `q in {p, p'}`, with the test kernel
/// `|z zeta|^{-(k+1)} / |1 - z conj(zeta)|^2` against the weight `|z|^{s'}`.
///
/// The inner integral reduces to the weighted singular integral
/// `I_{delta q, sigma q + s' - (k+1)}`; its divergence for out-of-range
/// parameters surfaces as a divergent-integral error.
pub fn schur_numeric_check(
    s_prime: f64,
    params: &SchurParameters,
    sample_points: &[DiskPoint],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let d = decompose_exponent(s_prime)?;
    let k1 = d.k as f64 + 1.0;
    let p = params.p;
    let p_conj = p / (p - 1.0);
    let mut sup: f64 = 0.0;
    for &z in sample_points {
        let rho = z.value().norm();
        if rho == 0.0 {
            return Err(Error::Domain(String::from("samples must avoid the origin")));
        }
        for q in [p, p_conj] {
            let alpha = params.delta * q;
            let beta = params.sigma * q + s_prime - k1;
            if !(alpha > -1.0) || !(beta > -2.0) {
                return Err(Error::DivergentIntegral(format!(
                    "Schur inner integral diverges: needs delta*q > -1 and \
                     sigma*q + s' - (k+1) > -2 (got {alpha}, {beta})"
                )));
            }
            let integral = weighted_poisson_integral(alpha, beta, rho, spec)?;
            let h_pow = (1.0 - rho * rho).powf(alpha) * rho.powf(params.sigma * q);
            let ratio = rho.powf(-k1) * integral / h_pow;
            sup = sup.max(ratio);
        }
    }
    Ok(sup)
}

/// One endpoint blow-up run: norms and ratios of the projected test sequence
/// along `n_values`.
#[derive(Debug, Clone)]
pub struct BlowupSeries {
    pub n_values: Vec<u32>,
    /// `||B f_n|| / ||f_n||`; may underflow to 0 or overflow to `inf` —
    /// `log10_ratios` carries the exact magnitudes.
    pub ratios: Vec<f64>,
    pub log10_ratios: Vec<f64>,
    pub norms_f: Vec<f64>,
    pub log10_norms_f: Vec<f64>,
    pub norms_bf: Vec<f64>,
    pub log10_norms_bf: Vec<f64>,
    pub s_prime: f64,
    pub p: f64,
    /// The exponent `(s + 2k + 2)/(s + k + 1)` the blow-up targets.
    pub endpoint_p: f64,
    /// `nu = s + 2k + 2 - (k+1) p`; the image lies in `L^p` iff `nu > 0`.
    pub nu: f64,
    pub image_in_lp: bool,
    /// Largest relative deviation of `||f_n||_p^p` from `(2/p) A_{n,p}`,
    /// recorded when `p` sits at the endpoint.
    pub endpoint_identity_max_rel_dev: Option<f64>,
}

fn blowup_profile(n: u32, exponent_of_j: impl Fn(u32) -> f64) -> Result<RadialProfile> {
    let mut pieces = Vec::with_capacity(n as usize);
    for j in (1..=n).rev() {
        let ln_lo = sequence_a_ln(j + 1);
        let ln_hi = sequence_a_ln(j);
        pieces.push(PowerPiece::from_ln_bounds(ln_lo, ln_hi, 1.0, exponent_of_j(j))?);
    }
    RadialProfile::from_pieces(pieces)
}

/// Runs the endpoint blow-up experiment for the weight `|z|^{s'}` at
/// exponent `p` over the strictly increasing ladder `n_values`.
///
/// The test sequence carries the single angular mode `-(k+1)` with radial
/// part `r^{1/j - (s+k+1)}` on `(a_{j+1}, a_j]`, truncated at `a_{n+1}`. Its
/// projection is exactly `s A_{n,1} z^{-(k+1)}`, so `||B f_n||` comes in
/// closed form `s (2/nu)^{1/p} A_{n,1}` whenever `nu > 0`; otherwise the
/// image is flagged as lying outside `L^p` (a result, not an error).
pub fn blowup_experiment(
    s_prime: f64,
    p: f64,
    n_values: &[u32],
    spec: &QuadratureSpec,
) -> Result<BlowupSeries> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(String::from("blow-up experiment needs p > 1")));
    }
    if n_values.is_empty() || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(String::from(
            "n_values must be nonempty and strictly increasing",
        )));
    }
    let d = decompose_exponent(s_prime)?;
    let (s, k) = (d.s, d.k as f64);
    let gamma = |j: u32| 1.0 / j as f64 - (s + k + 1.0);
    let endpoint_p = (s + 2.0 * k + 2.0) / (s + k + 1.0);
    let at_endpoint = (p - endpoint_p).abs() <= 1e-12 * p;
    let nu = s + 2.0 * k + 2.0 - (k + 1.0) * p;
    let image_in_lp = nu > 0.0;

    let mut series = BlowupSeries {
        n_values: n_values.into(),
        ratios: Vec::new(),
        log10_ratios: Vec::new(),
        norms_f: Vec::new(),
        log10_norms_f: Vec::new(),
        norms_bf: Vec::new(),
        log10_norms_bf: Vec::new(),
        s_prime,
        p,
        endpoint_p,
        nu,
        image_in_lp,
        endpoint_identity_max_rel_dev: if at_endpoint { Some(0.0) } else { None },
    };

    for &n in n_values {
        // ||f_n||_p^p = 2 int g(r)^p r^{s'+1} dr, in log space
        let pow_profile = blowup_profile(n, |j| p * gamma(j))?;
        let norm_f_p = log_integrate_radial(&pow_profile, s_prime)?;
        let norm_f = norm_f_p.powf(1.0 / p);

        if at_endpoint {
            let a_np = partial_sum_a(n, p)?;
            let dev = (norm_f_p.value() - 2.0 / p * a_np).abs() / (2.0 / p * a_np);
            let slot = series.endpoint_identity_max_rel_dev.get_or_insert(0.0);
            if dev > *slot {
                *slot = dev;
            }
        }

        // B f_n through the mode projection; single surviving mode -(k+1)
        let profile = blowup_profile(n, gamma)?;
        let f_n = ModeFunction::new().with_mode(-(d.k + 1), profile);
        let projected = project_modes(s_prime, &f_n, spec)?;
        let coeff = projected.coefficient(-(d.k + 1)).re;

        let (norm_bf, ratio) = if image_in_lp {
            let norm_bf = LogNum::from_value(coeff).mul(
                LogNum::from_value(2.0 / nu).powf(1.0 / p),
            );
            let ratio = norm_bf.div(norm_f);
            (norm_bf, ratio)
        } else {
            (LogNum::from_ln(f64::INFINITY), LogNum::from_ln(f64::INFINITY))
        };

        series.norms_f.push(norm_f.value());
        series.log10_norms_f.push(norm_f.log10());
        series.norms_bf.push(norm_bf.value());
        series.log10_norms_bf.push(norm_bf.log10());
        series.ratios.push(ratio.value());
        series.log10_ratios.push(ratio.log10());
    }
    Ok(series)
}
