//! The slow maps `F_x`, the fast maps `T_x`, and their measure-theoretic
//! statistics.
//!
//! Exact steps run on [`BigRational`]; floating orbits use `f64` with a
//! periodic exact shadow step to catch branch misassignment near the cut
//! points.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{self, int};
use crate::cf::fast_step;
use crate::error::{Error, Result};
use crate::tree::TreeVariant;

/// Steps discarded before Birkhoff averaging.
pub const BURN_IN: u64 = 1_000;
/// Floating orbits are checked against an exact step this often.
pub const SHADOW_INTERVAL: u64 = 100_000;
/// A floating step with a larger digit keeps too few significant bits of
/// its image; the orbit is reseeded instead of following it into the
/// short cycles that low-precision points fall into.
pub const MAX_FLOAT_DIGIT: u64 = 1 << 24;

/// Inverse branch labels of the slow map. Forward `F_{x,0}` and `F_{x,1}`
/// invert `Φ0`, `Φ1`; backward branch 0 is the right piece `[1/(x+1), 1]`
/// and branch 1 the left piece `[0, 1/(x+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlowBranch {
    Zero,
    One,
}

fn check_x(x: &BigRational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::OutOfDomain("x must be positive"))
    }
}

fn check_unit(t: &BigRational) -> Result<()> {
    if t.is_negative() || t > &BigRational::one() {
        Err(Error::OutOfDomain("t must lie in [0, 1]"))
    } else {
        Ok(())
    }
}

/// The cut point between the two slow branches: `x/(x+1)` forward,
/// `1/(x+1)` backward.
pub fn slow_threshold(x: &BigRational, variant: TreeVariant) -> BigRational {
    let d = x + int(1);
    match variant {
        TreeVariant::Forward => x / d,
        TreeVariant::Backward => d.recip(),
    }
}

/// Which branch `farey_step` uses at `t`.
pub fn slow_branch(t: &BigRational, x: &BigRational, variant: TreeVariant) -> SlowBranch {
    let c = slow_threshold(x, variant);
    match variant {
        TreeVariant::Forward if *t >= c => SlowBranch::Zero,
        TreeVariant::Forward => SlowBranch::One,
        TreeVariant::Backward if *t < c => SlowBranch::One,
        TreeVariant::Backward => SlowBranch::Zero,
    }
}

/// Applies one named branch regardless of where `t` sits.
pub fn apply_branch(
    t: &BigRational,
    x: &BigRational,
    variant: TreeVariant,
    branch: SlowBranch,
) -> Result<BigRational> {
    let one = BigRational::one();
    let den = match (variant, branch) {
        (TreeVariant::Forward, SlowBranch::Zero) => t.clone(),
        (TreeVariant::Forward, SlowBranch::One) => x - t,
        (TreeVariant::Backward, SlowBranch::One) => &one - t,
        (TreeVariant::Backward, SlowBranch::Zero) => &one - t - x,
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(match (variant, branch) {
        (TreeVariant::Forward, SlowBranch::Zero) => x * (&one - t) / den,
        (TreeVariant::Forward, SlowBranch::One) => x * t / den,
        (TreeVariant::Backward, SlowBranch::One) => x * t / den,
        (TreeVariant::Backward, SlowBranch::Zero) => &one - x * (t - &one) / den,
    })
}

/// One exact step of the slow map on `[0, 1]`.
pub fn farey_step(t: &BigRational, x: &BigRational, variant: TreeVariant) -> Result<BigRational> {
    check_x(x)?;
    check_unit(t)?;
    apply_branch(t, x, variant, slow_branch(t, x, variant))
}

/// Floating slow step; same branch rule as [`farey_step`].
pub fn farey_step_f64(t: f64, x: f64, variant: TreeVariant) -> f64 {
    match variant {
        TreeVariant::Forward if t >= x / (x + 1.0) => x * (1.0 - t) / t,
        TreeVariant::Forward => x * t / (x - t),
        TreeVariant::Backward if t < 1.0 / (x + 1.0) => x * t / (1.0 - t),
        TreeVariant::Backward => 1.0 - x * (t - 1.0) / (1.0 - t - x),
    }
}

/// One exact step of the fast map: the digit read at `t` and the image.
pub fn gauss_step(t: &BigRational, x: &BigRational, variant: TreeVariant) -> Result<(u64, BigRational)> {
    fast_step(t, x, variant)
}

/// Floating fast step. Returns `None` if the digit does not fit a `u64`
/// or `t` is outside `(0, 1)`.
pub fn gauss_step_f64(t: f64, x: f64, variant: TreeVariant) -> Option<(u64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return None;
    }
    let y = match variant {
        TreeVariant::Forward => x * (1.0 - t) / t,
        TreeVariant::Backward => x * t / (1.0 - t),
    };
    let w = libm::floor(y);
    if w.is_nan() || w >= 1.8e19 {
        return None;
    }
    Some((w as u64 + 1, y - w))
}

/// `log|T_x'(t)|`: `ln(x/t²)` forward, `ln(x/(1-t)²)` backward.
pub fn log_derivative(t: f64, x: f64, variant: TreeVariant) -> f64 {
    let s = match variant {
        TreeVariant::Forward => t,
        TreeVariant::Backward => 1.0 - t,
    };
    libm::log(x) - 2.0 * libm::log(s)
}

/// The first `count` points where the fast-map digit changes:
/// `x/(x+k)` forward, `k/(x+k)` backward, for `k = 1, 2, …`.
pub fn branch_cut_points(x: &BigRational, variant: TreeVariant, count: usize) -> Result<Vec<BigRational>> {
    check_x(x)?;
    Ok((1..=count as i64)
        .map(|k| {
            let num = match variant {
                TreeVariant::Forward => x.clone(),
                TreeVariant::Backward => int(k),
            };
            num / (x + int(k))
        })
        .collect())
}

/// `ln((x+b)/(x+a))`, accurate for short intervals.
fn log_gap(x: f64, a: f64, b: f64) -> f64 {
    libm::log1p((b - a) / (x + a))
}

/// Invariant measure of `[a, b]` for the forward fast map,
/// density `1/((x+t) ln((x+1)/x))`.
pub fn gauss_measure(x: f64, a: f64, b: f64) -> f64 {
    log_gap(x, a, b) / log_gap(x, 0.0, 1.0)
}

/// Explicit preimage branches summed before switching to the closed-form tail.
const EXPLICIT_BRANCHES: usize = 256;

/// Largest `|μ(T⁻¹A) − μ(A)|` over a uniform partition of `[0, 1]` into
/// `n_intervals` pieces, for the forward fast map with `x ≥ 1`.
pub fn invariance_residual(x: f64, n_intervals: usize) -> Result<f64> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::OutOfDomain("invariance is stated for x >= 1"));
    }
    if n_intervals == 0 {
        return Err(Error::OutOfDomain("need at least one interval"));
    }
    let norm = log_gap(x, 0.0, 1.0);
    let mut worst = 0.0f64;
    for j in 0..n_intervals {
        let c = j as f64 / n_intervals as f64;
        let d = (j + 1) as f64 / n_intervals as f64;
        // Digit k pulls [c, d] back to [x/(x+k-1+d), x/(x+k-1+c)].
        let mut pre = 0.0;
        for k in 0..EXPLICIT_BRANCHES {
            let m = k as f64;
            let lo = x / (x + m + d);
            let hi = x / (x + m + c);
            pre += log_gap(x, lo, hi);
        }
        // The remaining branches telescope to ln((x+K+d)/(x+K+c)).
        pre += log_gap(x + EXPLICIT_BRANCHES as f64, c, d);
        let r = libm::fabs(pre / norm - log_gap(x, c, d) / norm);
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Result of an adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed nodes above (and the centre).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for i in 0..7 {
        let dx = h * GK_NODES[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * h, libm::fabs((kronrod - gauss) * h))
}

/// Adaptive Gauss-Kronrod (7/15) on `[a, b]`, splitting the worst
/// subinterval until the summed error estimate is below `tol` or
/// `max_intervals` pieces are in use. Endpoints are never evaluated.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_intervals: usize) -> Quadrature {
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let error: f64 = parts.iter().map(|p| p.3).sum();
        if error <= tol || parts.len() >= max_intervals.max(1) {
            return Quadrature {
                value: parts.iter().map(|p| p.2).sum(),
                error,
                intervals: parts.len(),
            };
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Entropy of the forward fast map as `∫ log|T'| dμ`, by adaptive
/// quadrature with at most `max_intervals` subintervals.
pub fn entropy_rokhlin(x: f64, max_intervals: usize) -> Result<Quadrature> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::OutOfDomain("entropy is computed for x >= 1"));
    }
    let norm = log_gap(x, 0.0, 1.0);
    let lx = libm::log(x);
    Ok(integrate(
        |t| (lx - 2.0 * libm::log(t)) / ((x + t) * norm),
        0.0,
        1.0,
        1e-13,
        max_intervals,
    ))
}

/// Readings of the printed closed-form entropy, for reporting only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormEntropy {
    /// The printed formula with `Li₂(z) = ∫₀ᶻ log t/(1−t) dt` as defined.
    pub as_defined: f64,
    /// The same formula with the integral taken from 1, i.e. the
    /// classical `Li₂(−x)`.
    pub from_one: f64,
}

/// Evaluates the closed form both ways. Neither reading is asserted
/// anywhere; the Rokhlin integral is the reference value.
pub fn entropy_closed_form(x: f64) -> Result<ClosedFormEntropy> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::OutOfDomain("entropy is computed for x >= 1"));
    }
    // log t/(1-t) -> -1 at t = 1, so both pieces are proper integrals.
    let g = |t: f64| {
        if t == 1.0 {
            -1.0
        } else {
            libm::log(t) / (1.0 - t)
        }
    };
    let head = integrate(g, 0.0, 1.0, 1e-14, 4000).value;
    let tail = integrate(g, 1.0, x + 1.0, 1e-14, 4000).value;
    let norm = log_gap(x, 0.0, 1.0);
    let rest = PI * PI / 3.0 + libm::log(x + 1.0) * libm::log(x);
    Ok(ClosedFormEntropy {
        as_defined: (rest + 2.0 * (head + tail)) / norm,
        from_one: (rest + 2.0 * tail) / norm,
    })
}

/// Statistics of a floating fast-map orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitStats {
    pub x: f64,
    pub variant: TreeVariant,
    pub burn_in: u64,
    /// Steps averaged after the burn-in.
    pub length: u64,
    /// Birkhoff average of `log|T'|`.
    pub lyapunov: f64,
    /// Visit frequencies over equal bins of `[0, 1)`; sums to 1.
    pub histogram: Vec<f64>,
    /// Times the orbit left `(0, 1)` or read a digit above
    /// [`MAX_FLOAT_DIGIT`] and was restarted.
    pub reseeds: u64,
    pub shadow_checks: u64,
    /// Shadow checks whose digit or image disagreed with the exact step.
    pub shadow_mismatches: u64,
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Runs `burn_in + length` fast-map steps from `t0` and collects
/// statistics over the last `length` of them.
pub fn orbit_stats(
    x: &BigRational,
    variant: TreeVariant,
    t0: f64,
    length: u64,
    bins: usize,
) -> Result<OrbitStats> {
    check_x(x)?;
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::OutOfDomain("seed must lie in (0, 1)"));
    }
    if length < BURN_IN {
        return Err(Error::OutOfDomain("orbit length must be at least the burn-in"));
    }
    if bins == 0 {
        return Err(Error::OutOfDomain("need at least one histogram bin"));
    }
    let xf = rational::to_f64(x);
    let mut t = t0;
    let mut counts = vec![0u64; bins];
    let mut sum = 0.0;
    let mut reseeds = 0u64;
    let mut shadow_checks = 0u64;
    let mut shadow_mismatches = 0u64;
    for i in 0..BURN_IN + length {
        let averaged = i >= BURN_IN;
        if averaged {
            sum += log_derivative(t, xf, variant);
            let b = ((t * bins as f64) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let step = gauss_step_f64(t, xf, variant);
        if i % SHADOW_INTERVAL == 0 {
            shadow_checks += 1;
            if !shadows(t, x, variant, step) {
                shadow_mismatches += 1;
            }
        }
        t = match step {
            Some((d, next)) if d <= MAX_FLOAT_DIGIT && next > 0.0 && next < 1.0 => next,
            _ => {
                reseeds += 1;
                let s = t0 + reseeds as f64 * GOLDEN;
                let s = s - libm::floor(s);
                if s > 0.0 {
                    s
                } else {
                    GOLDEN
                }
            }
        };
    }
    Ok(OrbitStats {
        x: xf,
        variant,
        burn_in: BURN_IN,
        length,
        lyapunov: sum / length as f64,
        histogram: counts.iter().map(|&c| c as f64 / length as f64).collect(),
        reseeds,
        shadow_checks,
        shadow_mismatches,
    })
}

/// Compares a floating step at `t` with the exact step at the same point.
fn shadows(t: f64, x: &BigRational, variant: TreeVariant, got: Option<(u64, f64)>) -> bool {
    let Some(exact_t) = rational::from_f64(t) else {
        return false;
    };
    let Ok((digit, image)) = fast_step(&exact_t, x, variant) else {
        return got.is_none();
    };
    let Some((d, img)) = got else {
        return false;
    };
    let scale = (digit as f64).max(1.0);
    d == digit && libm::fabs(img - rational::to_f64(&image)) <= 64.0 * f64::EPSILON * scale
}

/// Birkhoff average of `log|T'|` along the forward orbit of `t0`.
pub fn entropy_birkhoff(x: &BigRational, t0: f64, n: u64) -> Result<f64> {
    if x < &int(1) {
        return Err(Error::OutOfDomain("entropy is computed for x >= 1"));
    }
    Ok(orbit_stats(x, TreeVariant::Forward, t0, n, 1)?.lyapunov)
}

/// Orbit of the backward slow map near its attracting fixed point 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeTrace {
    pub x: f64,
    pub orbit: Vec<f64>,
    /// `t_{n+1}/t_n` for consecutive points.
    pub ratios: Vec<f64>,
    pub decreasing: bool,
    pub positive: bool,
}

impl ProbeTrace {
    pub fn final_ratio(&self) -> Option<f64> {
        self.ratios.last().copied()
    }
}

/// Iterates the backward slow map `n` times from `t0 ∈ (0, 1−x)` for
/// `0 < x < 1`; the orbit should decrease to 0 with ratio tending to `x`.
pub fn attracting_fixed_point_probe(x: f64, t0: f64, n: usize, variant: TreeVariant) -> Result<ProbeTrace> {
    if variant != TreeVariant::Backward {
        return Err(Error::OutOfDomain("the fixed-point probe applies to the backward map"));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfDomain("x must lie in (0, 1)"));
    }
    if !(t0 > 0.0 && t0 < 1.0 - x) {
        return Err(Error::OutOfDomain("t0 must lie in (0, 1-x)"));
    }
    let mut orbit = Vec::with_capacity(n + 1);
    orbit.push(t0);
    let mut t = t0;
    for _ in 0..n {
        t = farey_step_f64(t, x, TreeVariant::Backward);
        orbit.push(t);
    }
    let ratios: Vec<f64> = orbit.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(ProbeTrace {
        x,
        decreasing: orbit.windows(2).all(|w| w[1] < w[0]),
        positive: orbit.iter().all(|&t| t > 0.0),
        orbit,
        ratios,
    })
}
