//! `A_p` / `A_p^+` two-weight machinery on the upper half plane: power-factor
//! weights, the dyadic tiling with its averaging operator, disk-family
//! condition scans, and the exploratory two-weight inequality probe.

mod ap;
mod probe;
mod tiling;
mod weight;

pub use ap::{
    ap_plus_scan, ap_quotient, step_ap_quotient, ApVerdict, ApVerdictKind, DiskFamily, ScanMode,
};
pub use probe::{
    default_truncation, tiles_in_rect, two_weight_probe, ProbeOptions, ProbeReport,
};
pub use tiling::{
    averaging_e, check_e_properties, tile_of, MapOnTiles, StepFunction, SubdividedStep,
    TileAverageable, TilingSquare,
};
pub use weight::{cayley_weight_pair, sigma_weight, FactorBase, HalfPlaneWeight};
