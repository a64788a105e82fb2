//! Exploratory two-weight inequality probe for the absolute Bergman
//! operator `Bt(f)(z) = int f(w) / |z - conj(w)|^2 dA(w)`.
//!
//! The kernel is singular only where the upper half plane meets its mirror
//! image (the real axis), so midpoint evaluation on a uniform grid per tile
//! is benign in the interior. The probe gathers ratio statistics only — it
//! claims no verdict on whether the condition it samples is sufficient.

use crate::error::{Error, Result};
use crate::muckenhoupt::{HalfPlaneWeight, StepFunction, TilingSquare};
use crate::quadrature::{integrate_rect, KahanSum, QuadratureSpec, Rect};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Discretization choices for the probe.
#[derive(Debug, Clone, Copy)]
pub struct ProbeOptions {
    /// Midpoint-grid resolution per tile (n x n).
    pub grid_per_tile: u32,
    /// How many dyadic tile levels below the top are kept when the
    /// truncation rectangle reaches down to the real axis.
    pub levels: u32,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { grid_per_tile: 8, levels: 8 }
    }
}

/// Default truncation rectangle `[-8, 8] x (0, 8]`.
pub fn default_truncation() -> Rect {
    Rect { x_lo: -8.0, x_hi: 8.0, y_lo: 0.0, y_hi: 8.0 }
}

/// Ratio statistics of one probe run.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    /// `||Bt f||_{p, mu1} / ||f||_{p, mu2}` per test function; `None` marks a
    /// divergent norm (excluded from the statistics).
    pub ratios: Vec<Option<f64>>,
    pub max_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    /// Smallest admissible constant in the discrete domination
    /// `Bt(f) <= c E(Bt(E f))` over the family (max over functions).
    pub e_domination_c: f64,
    pub e_domination_per_function: Vec<Option<f64>>,
    pub grid_per_tile: u32,
    pub tiles_evaluated: usize,
}

/// All tiles fully inside the truncation rectangle, down to `levels` dyadic
/// bands below the top one.
pub fn tiles_in_rect(truncation: &Rect, levels: u32) -> Vec<TilingSquare> {
    let mut k_top = (truncation.y_hi.log2() - 1.0).floor() as i32;
    while ((k_top + 1) as f64).exp2() > truncation.y_hi {
        k_top -= 1;
    }
    let mut out = Vec::new();
    for k in (k_top - levels as i32 + 1..=k_top).rev() {
        let side = (k as f64).exp2();
        if side < truncation.y_lo {
            break;
        }
        let j_lo = (truncation.x_lo / side).ceil() as i64;
        let j_hi = (truncation.x_hi / side).floor() as i64 - 1;
        for j in j_lo..=j_hi {
            out.push(TilingSquare::new(j, k));
        }
    }
    out
}

struct GridCell {
    point: Complex64,
    area: f64,
}

fn tile_grid(sq: &TilingSquare, n: u32) -> Vec<GridCell> {
    let r = sq.rect();
    let nf = n as f64;
    let dx = (r.x_hi - r.x_lo) / nf;
    let dy = (r.y_hi - r.y_lo) / nf;
    let mut cells = Vec::with_capacity((n * n) as usize);
    for ix in 0..n {
        for iy in 0..n {
            cells.push(GridCell {
                point: Complex64::new(
                    r.x_lo + (ix as f64 + 0.5) * dx,
                    r.y_lo + (iy as f64 + 0.5) * dy,
                ),
                area: dx * dy,
            });
        }
    }
    cells
}

/// Applies the absolute-kernel operator to the test family by grid
/// quadrature and reports the two-weight ratio statistics together with the
/// discrete averaging-domination constant.
pub fn two_weight_probe(
    mu1: &HalfPlaneWeight,
    mu2: &HalfPlaneWeight,
    p: f64,
    test_family: &[StepFunction],
    truncation: &Rect,
    options: ProbeOptions,
    spec: &QuadratureSpec,
) -> Result<ProbeReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(String::from("probe needs p > 1")));
    }
    if test_family.is_empty() {
        return Err(Error::InvalidArgument(String::from("probe needs test functions")));
    }
    if options.grid_per_tile < 1 || options.levels < 1 {
        return Err(Error::InvalidArgument(String::from("degenerate probe options")));
    }
    let tiles = tiles_in_rect(truncation, options.levels);
    if tiles.is_empty() {
        return Err(Error::InvalidArgument(String::from(
            "truncation rectangle holds no whole tile",
        )));
    }
    for f in test_family {
        for (sq, _) in f.support() {
            if !tiles.contains(sq) {
                return Err(Error::InvalidArgument(format!(
                    "test function supported outside the truncation tiles: {sq:?}"
                )));
            }
        }
    }

    // mu1 integrability over the truncation decides all ratios at once
    let i_in_truncation = truncation.x_lo <= 0.0
        && 0.0 <= truncation.x_hi
        && truncation.y_lo <= 1.0
        && 1.0 <= truncation.y_hi;
    let mu1_ok = !(i_in_truncation && mu1.i_exponent() <= -2.0);

    // evaluation grid over all truncation tiles, with mu1 sampled once
    let eval: Vec<(usize, Vec<GridCell>)> = tiles
        .iter()
        .enumerate()
        .map(|(idx, sq)| (idx, tile_grid(sq, options.grid_per_tile)))
        .collect();
    let mu1_vals: Vec<Vec<f64>> = eval
        .iter()
        .map(|(_, cells)| cells.iter().map(|c| mu1.eval(c.point)).collect())
        .collect();

    let mut ratios = Vec::with_capacity(test_family.len());
    let mut e_dom = Vec::with_capacity(test_family.len());
    let mut e_dom_overall: f64 = 0.0;

    for f in test_family {
        // ||f||_{p, mu2}^p by per-tile quadrature of mu2 (exact tile sums)
        let mut f_ok = mu1_ok;
        let mut norm_f_p = KahanSum::new();
        for (sq, &v) in f.support() {
            let rect = sq.rect();
            if sq.rect().contains_i_point() && mu2.i_exponent() <= -2.0 {
                f_ok = false;
                break;
            }
            match integrate_rect(mu2, &rect, spec) {
                Ok(w) => norm_f_p.add(v.powf(p) * w),
                Err(Error::DivergentIntegral(_)) => {
                    f_ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !f_ok {
            ratios.push(None);
            e_dom.push(None);
            continue;
        }

        // support cells once per function
        let support_cells: Vec<(f64, Vec<GridCell>)> = f
            .support()
            .map(|(sq, &v)| (v, tile_grid(sq, options.grid_per_tile)))
            .collect();

        // Bt f on the evaluation grid; per-tile means give E(Bt f)
        let mut norm_bf_p = KahanSum::new();
        let mut c_f: f64 = 0.0;
        for ((_, cells), mu1_row) in eval.iter().zip(&mu1_vals) {
            let mut tile_vals = Vec::with_capacity(cells.len());
            for cell in cells {
                let mut b = KahanSum::new();
                for (v, sc) in &support_cells {
                    for w in sc {
                        let d = cell.point - w.point.conj();
                        b.add(v * w.area / d.norm_sqr());
                    }
                }
                tile_vals.push(b.value() / core::f64::consts::PI);
            }
            let mean: f64 = tile_vals.iter().sum::<f64>() / tile_vals.len() as f64;
            for (val, (cell, mu1_v)) in tile_vals.iter().zip(cells.iter().zip(mu1_row)) {
                norm_bf_p.add(val.powf(p) * mu1_v * cell.area / core::f64::consts::PI);
                if mean > 0.0 {
                    c_f = c_f.max(val / mean);
                }
            }
        }

        let nf = norm_f_p.value();
        let nbf = norm_bf_p.value();
        if !(nf > 0.0) || !nf.is_finite() || !nbf.is_finite() {
            ratios.push(None);
            e_dom.push(None);
            continue;
        }
        ratios.push(Some((nbf / nf).powf(1.0 / p)));
        e_dom.push(Some(c_f));
        e_dom_overall = e_dom_overall.max(c_f);
    }

    let mut finite: Vec<f64> = ratios.iter().flatten().copied().collect();
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_ratio = finite.last().copied();
    let median_ratio = if finite.is_empty() {
        None
    } else {
        let n = finite.len();
        Some(if n % 2 == 1 { finite[n / 2] } else { 0.5 * (finite[n / 2 - 1] + finite[n / 2]) })
    };

    Ok(ProbeReport {
        ratios,
        max_ratio,
        median_ratio,
        e_domination_c: e_dom_overall,
        e_domination_per_function: e_dom,
        grid_per_tile: options.grid_per_tile,
        tiles_evaluated: tiles.len(),
    })
}

trait RectExt {
    fn contains_i_point(&self) -> bool;
}

impl RectExt for Rect {
    fn contains_i_point(&self) -> bool {
        self.x_lo <= 0.0 && 0.0 <= self.x_hi && self.y_lo <= 1.0 && 1.0 <= self.y_hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::muckenhoupt::cayley_weight_pair;

    fn spec() -> QuadratureSpec {
        QuadratureSpec { rel_tol: 1e-8, ..Default::default() }
    }

    #[test]
    fn tile_enumeration_fills_rectangle() {
        let tiles = tiles_in_rect(&default_truncation(), 3);
        // levels k = 2, 1, 0 over [-8, 8]: 4 + 8 + 16 tiles
        assert_eq!(tiles.len(), 28);
        assert!(tiles.iter().all(|sq| {
            let r = sq.rect();
            r.x_lo >= -8.0 && r.x_hi <= 8.0 && r.y_hi <= 8.0
        }));
    }

    #[test]
    fn unweighted_single_tile_ratios_are_finite_and_grid_stable() {
        let one = HalfPlaneWeight::constant(1.0);
        let family = alloc::vec![
            StepFunction::indicator(TilingSquare::new(0, 0)),
            StepFunction::indicator(TilingSquare::new(2, 1)),
        ];
        let run = |n: u32| {
            two_weight_probe(
                &one,
                &one,
                2.0,
                &family,
                &default_truncation(),
                ProbeOptions { grid_per_tile: n, levels: 5 },
                &spec(),
            )
            .unwrap()
        };
        let coarse = run(4);
        let fine = run(8);
        for (a, b) in coarse.ratios.iter().zip(&fine.ratios) {
            let (a, b) = (a.unwrap(), b.unwrap());
            assert!(a.is_finite() && a > 0.0);
            assert!((a - b).abs() < 0.1 * b, "grid refinement moved {a} -> {b}");
        }
        assert!(coarse.max_ratio.unwrap() >= coarse.median_ratio.unwrap());
    }

    #[test]
    fn e_domination_constant_is_stable() {
        let one = HalfPlaneWeight::constant(1.0);
        let family = alloc::vec![StepFunction::indicator(TilingSquare::new(0, 0))];
        let run = |n: u32| {
            two_weight_probe(
                &one,
                &one,
                2.0,
                &family,
                &default_truncation(),
                ProbeOptions { grid_per_tile: n, levels: 5 },
                &spec(),
            )
            .unwrap()
            .e_domination_c
        };
        let (c4, c8) = (run(4), run(8));
        assert!(c4.is_finite() && c4 >= 1.0);
        assert!((c4 - c8).abs() < 0.25 * c8, "{c4} vs {c8}");
    }

    #[test]
    fn inside_range_pair_stays_bounded_toward_axis() {
        // Prop-style pair inside its special-disk range: mu1/mu2 >= 1 and the
        // max ratio stays bounded across indicators descending toward the axis
        let (mu1, mu2) = cayley_weight_pair(1.0, 0, 2.0);
        let family: Vec<StepFunction> = (0..4)
            .map(|k| StepFunction::indicator(TilingSquare::new(0, -k)))
            .collect();
        let report = two_weight_probe(
            &mu1,
            &mu2,
            2.0,
            &family,
            &default_truncation(),
            ProbeOptions { grid_per_tile: 4, levels: 6 },
            &spec(),
        )
        .unwrap();
        let vals: Vec<f64> = report.ratios.iter().flatten().copied().collect();
        assert_eq!(vals.len(), 4);
        let max = vals.iter().cloned().fold(f64::MIN, f64::max);
        let min = vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 3.0, "ratios {vals:?}");
    }

    #[test]
    fn support_outside_truncation_is_rejected() {
        let one = HalfPlaneWeight::constant(1.0);
        let family = alloc::vec![StepFunction::indicator(TilingSquare::new(100, 0))];
        assert!(two_weight_probe(
            &one,
            &one,
            2.0,
            &family,
            &default_truncation(),
            ProbeOptions::default(),
            &spec(),
        )
        .is_err());
    }
}
