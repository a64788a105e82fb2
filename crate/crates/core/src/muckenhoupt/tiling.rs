//! The dyadic tiling of the upper half plane and its averaging operator.
//!
//! `S_{j,k} = [j 2^k, (j+1) 2^k] x [2^k, 2^{k+1}]` has side `2^k`; the squares
//! tile the half plane with disjoint interiors. Boundaries are assigned
//! lower-closed: a point with `Im z` exactly `2^k` belongs to level `k`.

use crate::error::{Error, Result};
use crate::kernels::HalfPlanePoint;
use crate::muckenhoupt::HalfPlaneWeight;
use crate::quadrature::{adaptive, integrate_rect, QuadratureSpec, Rect};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Index pair of one tiling square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TilingSquare {
    pub j: i64,
    pub k: i32,
}

impl TilingSquare {
    pub fn new(j: i64, k: i32) -> Self {
        TilingSquare { j, k }
    }

    pub fn side(&self) -> f64 {
        (self.k as f64).exp2()
    }

    /// Lebesgue area `4^k`.
    pub fn area(&self) -> f64 {
        let s = self.side();
        s * s
    }

    pub fn rect(&self) -> Rect {
        let s = self.side();
        Rect {
            x_lo: self.j as f64 * s,
            x_hi: (self.j + 1) as f64 * s,
            y_lo: s,
            y_hi: 2.0 * s,
        }
    }

    pub fn center(&self) -> Complex64 {
        let r = self.rect();
        Complex64::new(0.5 * (r.x_lo + r.x_hi), 0.5 * (r.y_lo + r.y_hi))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = self.rect();
        z.re >= r.x_lo && z.re <= r.x_hi && z.im >= r.y_lo && z.im <= r.y_hi
    }
}

/// The tile containing `z` (lower-closed tie-break on both coordinates).
pub fn tile_of(z: HalfPlanePoint) -> TilingSquare {
    let im = z.value().im;
    let mut k = im.log2().floor() as i32;
    // float-guard the dyadic band
    if im < (k as f64).exp2() {
        k -= 1;
    } else if im >= ((k + 1) as f64).exp2() {
        k += 1;
    }
    let side = (k as f64).exp2();
    let mut j = (z.value().re / side).floor() as i64;
    if z.value().re < j as f64 * side {
        j -= 1;
    } else if z.value().re >= (j + 1) as f64 * side {
        j += 1;
    }
    TilingSquare { j, k }
}

/// A finitely supported tile-constant function with nonnegative values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    values: BTreeMap<TilingSquare, f64>,
}

impl StepFunction {
    pub fn new() -> Self {
        StepFunction::default()
    }

    pub fn indicator(square: TilingSquare) -> Self {
        let mut values = BTreeMap::new();
        values.insert(square, 1.0);
        StepFunction { values }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (TilingSquare, f64)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (sq, v) in pairs {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidArgument(String::from(
                    "step functions take finite nonnegative values",
                )));
            }
            if v > 0.0 {
                values.insert(sq, v);
            }
        }
        Ok(StepFunction { values })
    }

    pub fn value_on(&self, square: &TilingSquare) -> f64 {
        self.values.get(square).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        if z.im <= 0.0 {
            return 0.0;
        }
        self.value_on(&tile_of(HalfPlanePoint::new(z).unwrap()))
    }

    pub fn support(&self) -> impl Iterator<Item = (&TilingSquare, &f64)> {
        self.values.iter()
    }

    pub fn support_squares(&self) -> Vec<TilingSquare> {
        self.values.keys().copied().collect()
    }
}

/// Anything the averaging operator can take a tile mean of.
pub trait TileAverageable {
    fn tile_average(&self, square: &TilingSquare, spec: &QuadratureSpec) -> Result<f64>;
}

impl TileAverageable for StepFunction {
    fn tile_average(&self, square: &TilingSquare, _spec: &QuadratureSpec) -> Result<f64> {
        Ok(self.value_on(square)) // already tile-constant
    }
}

impl TileAverageable for HalfPlaneWeight {
    fn tile_average(&self, square: &TilingSquare, spec: &QuadratureSpec) -> Result<f64> {
        let rect = square.rect();
        Ok(integrate_rect(self, &rect, spec)? / rect.area())
    }
}

/// Generic evaluable nonnegative maps; averaged by tensor quadrature.
pub struct MapOnTiles<F: Fn(Complex64) -> f64>(pub F);

impl<F: Fn(Complex64) -> f64> TileAverageable for MapOnTiles<F> {
    fn tile_average(&self, square: &TilingSquare, spec: &QuadratureSpec) -> Result<f64> {
        let r = square.rect();
        let f = &self.0;
        let inner = |x: f64| {
            adaptive::integrate(
                &|y: f64| f(Complex64::new(x, y)),
                r.y_lo,
                r.y_hi,
                spec.rel_tol * 0.25,
                spec.abs_tol * 0.25,
                spec.max_subdivision_depth,
            )
        };
        let total = adaptive::integrate(
            &inner,
            r.x_lo,
            r.x_hi,
            spec.rel_tol,
            spec.abs_tol,
            spec.max_subdivision_depth,
        );
        if !total.is_finite() {
            return Err(Error::DivergentIntegral(String::from(
                "tile integral of the supplied map did not converge",
            )));
        }
        Ok(total / (square.area()))
    }
}

/// The averaging operator `E`: replaces a function by its mean on each listed
/// square. Idempotent on step functions by construction.
pub fn averaging_e<T: TileAverageable>(
    f: &T,
    support: &[TilingSquare],
    spec: &QuadratureSpec,
) -> Result<StepFunction> {
    let mut values = BTreeMap::new();
    for sq in support {
        let mean = f.tile_average(sq, spec)?;
        if !(mean >= 0.0) || !mean.is_finite() {
            return Err(Error::DivergentIntegral(String::from(
                "tile average is not a finite nonnegative number",
            )));
        }
        if mean > 0.0 {
            values.insert(*sq, mean);
        }
    }
    Ok(StepFunction { values })
}

/// A tile function refined into an `n x n` grid of constant cells per tile;
/// the carrier on which the averaging-operator identities are checked with
/// exact finite sums (plain step functions are the `n = 1` case, on which
/// `E` acts as the identity and the checks degenerate to equalities).
#[derive(Debug, Clone, PartialEq)]
pub struct SubdividedStep {
    resolution: u32,
    tiles: BTreeMap<TilingSquare, Vec<f64>>,
}

impl SubdividedStep {
    pub fn new(resolution: u32) -> Result<Self> {
        if resolution < 1 {
            return Err(Error::InvalidArgument(String::from("resolution must be >= 1")));
        }
        Ok(SubdividedStep { resolution, tiles: BTreeMap::new() })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn with_tile(mut self, square: TilingSquare, cells: Vec<f64>) -> Result<Self> {
        let n = (self.resolution * self.resolution) as usize;
        if cells.len() != n {
            return Err(Error::InvalidArgument(alloc::format!(
                "tile needs {n} cell values (got {})",
                cells.len()
            )));
        }
        if cells.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidArgument(String::from(
                "cell values must be finite and nonnegative",
            )));
        }
        self.tiles.insert(square, cells);
        Ok(self)
    }

    pub fn from_step(step: &StepFunction) -> Self {
        let tiles = step
            .support()
            .map(|(sq, v)| (*sq, alloc::vec![*v]))
            .collect();
        SubdividedStep { resolution: 1, tiles }
    }

    pub fn squares(&self) -> Vec<TilingSquare> {
        self.tiles.keys().copied().collect()
    }

    fn cells_on(&self, square: &TilingSquare) -> Option<&[f64]> {
        self.tiles.get(square).map(|v| v.as_slice())
    }

    pub fn tile_mean(&self, square: &TilingSquare) -> f64 {
        match self.tiles.get(square) {
            None => 0.0,
            Some(cells) => cells.iter().sum::<f64>() / cells.len() as f64,
        }
    }
}

/// Exact finite-sum check of the three averaging-operator identities on a
/// pair of subdivided step functions (`p > 1`):
///
/// (a) `int E(f) g = int E(f) E(g)`;
/// (b) `int (E f)^p g <= int E(f^p) g`;
/// (c) `E(fg) <= (E(f^p))^{1/p} (E(g^{p'}))^{1/p'}` pointwise.
///
/// Returns the per-property truth values at tolerance `1e-12` relative (for
/// accumulated rounding; the sums themselves are finite and exact).
pub fn check_e_properties(
    f: &SubdividedStep,
    g: &SubdividedStep,
    p: f64,
) -> Result<(bool, bool, bool)> {
    if f.resolution != g.resolution {
        return Err(Error::InvalidArgument(String::from(
            "property check needs matching tile resolutions",
        )));
    }
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(String::from("property check needs p > 1")));
    }
    let p_conj = p / (p - 1.0);
    let n_cells = (f.resolution * f.resolution) as usize;
    let zeros = alloc::vec![0.0; n_cells];

    let mut squares: Vec<TilingSquare> = f.squares();
    squares.extend(g.squares());
    squares.sort();
    squares.dedup();

    let mut lhs_a = adaptive::KahanSum::new();
    let mut rhs_a = adaptive::KahanSum::new();
    let mut lhs_b = adaptive::KahanSum::new();
    let mut rhs_b = adaptive::KahanSum::new();
    let mut scale_a = 0.0f64;
    let mut scale_b = 0.0f64;
    let mut c_ok = true;

    for sq in &squares {
        let fc = f.cells_on(sq).map(|c| c.to_vec()).unwrap_or_else(|| zeros.clone());
        let gc = g.cells_on(sq).map(|c| c.to_vec()).unwrap_or_else(|| zeros.clone());
        let cell_area = sq.area() / n_cells as f64;
        let mean_f: f64 = fc.iter().sum::<f64>() / n_cells as f64;
        let mean_g: f64 = gc.iter().sum::<f64>() / n_cells as f64;
        let mean_fp: f64 = fc.iter().map(|v| v.powf(p)).sum::<f64>() / n_cells as f64;
        let mean_gp: f64 = gc.iter().map(|v| v.powf(p_conj)).sum::<f64>() / n_cells as f64;
        let mean_fg: f64 =
            fc.iter().zip(&gc).map(|(a, b)| a * b).sum::<f64>() / n_cells as f64;
        let area = sq.area();

        // (a) int E(f) g = int E(f) E(g), both sides in their literal form
        let literal_left: f64 = gc.iter().map(|gv| mean_f * gv * cell_area).sum();
        lhs_a.add(literal_left);
        rhs_a.add(mean_f * mean_g * area);
        scale_a += literal_left.abs();

        // (b) int (E f)^p g <= int E(f^p) g
        lhs_b.add(mean_f.powf(p) * mean_g * area);
        rhs_b.add(mean_fp * mean_g * area);
        scale_b += mean_fp * mean_g * area;

        // (c) pointwise per square
        if mean_fg > mean_fp.powf(1.0 / p) * mean_gp.powf(1.0 / p_conj) + 1e-12 {
            c_ok = false;
        }
    }

    let tol_a = 1e-12 * scale_a.max(1.0);
    let a_ok = (lhs_a.value() - rhs_a.value()).abs() <= tol_a;
    let tol_b = 1e-12 * scale_b.max(1.0);
    let b_ok = lhs_b.value() <= rhs_b.value() + tol_b;
    Ok((a_ok, b_ok, c_ok))
}
