//! Exact arithmetic for the parametrized Farey polynomial trees.
//!
//! The forward tree is rooted at `x/(x+1)` and grown by two maps `Φ0`, `Φ1`
//! acting on rational functions `p(x)/q(x)`; the backward tree is rooted at
//! `1/(x+1)` and grown by the inverse branches of the backward Farey map.
//! Evaluating a tree at a fixed parameter `x` ties it to a family of
//! continued-fraction maps `T_x`, implemented exactly in [`cf`].
//!
//! Modules:
//! - [`algebra`]: integers, rationals, integer polynomials, Sturm chains.
//! - [`tree`]: vertices, labels, enumeration and structural checks.
//! - [`cf`]: digit expansions, convergents, error bounds, interval evaluation.
//! - [`roots`]: real root isolation, interlacing, complex roots.
//! - [`density`]: the pole-approaching path construction.
//! - [`dynamics`]: floating simulation of the maps and their statistics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod cf;
pub mod density;
pub mod dynamics;
mod error;
pub mod roots;
pub mod tree;

pub use error::{Error, Result};
