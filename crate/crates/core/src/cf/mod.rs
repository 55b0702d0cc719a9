//! Digit expansions under the forward and backward fast maps, convergents
//! and evaluation of digit strings.

mod convergents;
mod expansion;
mod interval;
mod orbit;

pub use convergents::{
    all_ones_bounds, all_ones_lower_bound, convergents, error_bound_check, evaluate_label,
    evaluate_label_exact, evaluate_label_interval, roundtrip, BoundRow, Convergent, LabelValue,
    OnesBoundRow, RoundtripVerdict,
};
pub use expansion::{
    backward_digits, expand_exact, expand_real, forward_digits, DigitExpansion, ExpansionStatus,
    InfiniteReason, InvariantRecord, Precision, DEFAULT_MAX_STEPS,
};
pub use interval::{RatInterval, RealParam};
pub use orbit::{fast_step, ExactOrbit};
