//! Evidence run for the averaged-pair property: when a weight pair passes
//! the special-disk scan, the tile averages `(E mu1, E mu2)` — now step
//! functions with the singularity at `i` smoothed out — keep bounded
//! quotients over tile-union regions of every scale, including regions
//! shrinking onto `i`.

use bergman_lab::muckenhoupt::{
    ap_plus_scan, averaging_e, cayley_weight_pair, step_ap_quotient, ApVerdictKind,
    DiskFamily, ScanMode, StepFunction, TilingSquare,
};
use bergman_lab::quadrature::QuadratureSpec;

/// All tiles inside `[-span, span] x (0, 2 span]` down to `levels` below the
/// top band.
fn tile_universe(span_exp: i32, levels: i32) -> Vec<TilingSquare> {
    let mut out = Vec::new();
    for k in (span_exp - levels..=span_exp).rev() {
        let side = (k as f64).exp2();
        let span = (span_exp as f64).exp2() * 2.0;
        let j_hi = (span / side) as i64;
        for j in -j_hi..j_hi {
            out.push(TilingSquare::new(j, k));
        }
    }
    out
}

/// Square block of whole tiles around `x0` at scale `2^t`, with the tile
/// level floored a few bands below the block scale.
fn tile_block(universe: &[TilingSquare], x0: f64, t: i32) -> Vec<TilingSquare> {
    let h = (t as f64).exp2();
    universe
        .iter()
        .filter(|sq| {
            let r = sq.rect();
            sq.k >= t - 4 && r.x_lo >= x0 - h && r.x_hi <= x0 + h && r.y_hi <= 2.0 * h
        })
        .copied()
        .collect()
}

#[test]
fn averaged_pair_keeps_bounded_quotients_on_tile_regions() {
    let spec = QuadratureSpec { rel_tol: 1e-7, ..Default::default() };
    for (s, k, p) in [(1.0, 0i64, 2.0), (1.0, 1, 2.2)] {
        let (mu1, mu2) = cayley_weight_pair(s, k, p);
        // precondition of the statement: the pair passes the special scan
        let family = DiskFamily {
            centers: vec![0.0, 1.0, -1.0, 4.0],
            radii: (-6..=4).map(|m| (m as f64).exp2()).collect(),
        };
        let special = ap_plus_scan(&mu1, &mu2, p, &family, ScanMode::Special, &spec).unwrap();
        assert_eq!(special.verdict, ApVerdictKind::BoundedEvidence);

        let universe = tile_universe(2, 8);
        let e_mu1: StepFunction = averaging_e(&mu1, &universe, &spec).unwrap();
        let e_mu2: StepFunction = averaging_e(&mu2, &universe, &spec).unwrap();

        // blocks shrinking onto i (x0 = 0) and a generic position
        let mut quotients = Vec::new();
        for t in (-4..=2).rev() {
            for x0 in [0.0, 1.0] {
                let region = tile_block(&universe, x0, t);
                if region.is_empty() {
                    continue;
                }
                let q = step_ap_quotient(&e_mu1, &e_mu2, &region, p).unwrap();
                assert!(q.is_finite() && q > 0.0);
                quotients.push(q);
            }
        }
        let max = quotients.iter().cloned().fold(f64::MIN, f64::max);
        let min = quotients.iter().cloned().fold(f64::MAX, f64::min);
        assert!(
            max / min < 50.0 && max < 100.0 * special.sup_quotient.max(1.0),
            "(s={s}, k={k}, p={p}): quotients {quotients:?}"
        );
    }
}

#[test]
fn averaging_smooths_the_singular_tile() {
    // the four tiles meeting at i carry finite averages although mu1 blows up
    let (mu1, _) = cayley_weight_pair(0.5, -2, 2.0); // |i-z|^{-1.5}-type strength
    let spec = QuadratureSpec { rel_tol: 1e-7, ..Default::default() };
    let corners = [
        TilingSquare::new(0, 0),
        TilingSquare::new(-1, 0),
        TilingSquare::new(0, -1),
        TilingSquare::new(-1, -1),
    ];
    let e = averaging_e(&mu1, &corners, &spec).unwrap();
    for sq in &corners {
        let v = e.value_on(sq);
        assert!(v.is_finite() && v > 0.0, "{sq:?}: {v}");
    }
}
