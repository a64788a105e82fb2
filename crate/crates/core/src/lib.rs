//! Numerical laboratory for weighted Bergman projections on the punctured
//! disk, the Hartogs triangle, and the upper half plane.
//!
//! The crate is organized around five subsystems:
//!
//! * [`ranges`] — exact arithmetic over the sharp `L^p`-boundedness range
//!   formulas (exponent decomposition, five-case range maps, two-weight
//!   ranges, generalized Hartogs intersections).
//! * [`kernels`] — closed-form evaluation of the disk, punctured-disk,
//!   `|g|^2`-weighted and Hartogs-triangle Bergman kernels, plus the Cayley
//!   transform.
//! * [`quadrature`] — weighted integration on the disk, punctured disk and
//!   half-plane regions, with closed-form moment shortcuts and
//!   singular-endpoint substitutions.
//! * [`projection`] — the exact Fourier-mode weighted Bergman projection,
//!   the `A_{n,p}` sequence machinery, the endpoint blow-up experiment, and
//!   the Schur-test feasibility checker.
//! * [`muckenhoupt`] — `A_p`/`A_p^+` two-weight condition scans on the upper
//!   half plane, the dyadic tiling with its averaging operator, and the
//!   two-weight inequality probe for the absolute Bergman operator.
//!
//! All area measures are normalized to `Area(unit disk) = 1` (Lebesgue/π);
//! every moment and kernel constant in the crate assumes this convention.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded use. Float math routes through `libm` in that
//! configuration.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod kernels;
pub mod logspace;
pub mod muckenhoupt;
pub mod projection;
pub mod quadrature;
pub mod ranges;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rat;
