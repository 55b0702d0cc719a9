//! Real root isolation, interlacing of forward vertices, and complex root
//! approximation.

mod complex;
mod interlace;
mod real;

pub use complex::{complex_roots, unit_circle_check, ComplexApprox, UnitCircleReport, MAX_ITERATIONS};
pub use interlace::{interlacing_verdict, InterlacingReport, RootOwner};
pub use real::{isolate_real_roots, refine, IsolatingInterval};
