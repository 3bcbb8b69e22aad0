//! Mesa sets of Stirling permutations.
//!
//! A Stirling permutation of order `n` is a word on `{1, 1, ..., n, n}` in
//! which everything between the two copies of `k` exceeds `k`. A *mesa* is a
//! value `w(i)` with `w(i-1) < w(i) = w(i+1) > w(i+2)`. This crate
//!
//! * validates and exhaustively generates Stirling permutations ([`stirling`]);
//! * decides which sets occur as mesa sets and builds witnesses ([`mesa`]);
//! * maps maximal mesa sets to rational Dyck paths and back ([`dyck`]);
//! * counts admissible mesa sets with four independent engines
//!   ([`enumeration`]);
//! * draws permutation graphs and Dyck grids as SVG ([`render`]).
//!
//! ```
//! use stirling_mesa::{canonical_witness, is_admissible, MesaSet};
//!
//! let m: MesaSet = "5,7".parse().unwrap();
//! assert!(is_admissible(&m));
//! let w = canonical_witness(&m.with_order(9).unwrap()).unwrap();
//! assert_eq!(w.mesa_set().into_iter().collect::<Vec<_>>(), [5, 7]);
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `mesa` binary exposes the
//! same functionality on the command line (see [`cli`]).

// Bounds are written as `3 * |M_x| <= 2x - 1` to match the usual statement.
#![allow(clippy::int_plus_one)]

pub mod arith;
pub mod cli;
pub mod dyck;
pub mod enumeration;
pub mod mesa;
pub mod render;
pub mod stirling;

pub use dyck::{
    area, delta, delta_inverse, inversions, is_rational_dyck, rational_catalan, DyckError,
    LatticePath, RationalDyckPath, Step,
};
pub use enumeration::{
    count_brute_force, count_closed_form, count_recurrence, count_subsets, enumerate_ams,
    enumerate_maximal, full_report, BruteForceOptions, CountReport, Engine, EngineSet,
    ReportOptions,
};
pub use mesa::{
    canonical_witness, extend, is_admissible, max_mesa_count, minimal_mesa_floor, restrict,
    sharp_witness, truncate, MesaError, MesaSet,
};
pub use render::{render_dyck, render_permutation, RenderSpec, Styling};
pub use stirling::{
    generate_all, has_pinnacle, local_minima, mesa_set, validate_stirling, ResourceGuard,
    StirlingPermutation, ValidationError,
};
