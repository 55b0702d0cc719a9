//! Paths in the forward tree whose poles converge to a chosen `α < 0`.
//!
//! From a vertex `v = p/q` the next vertex is `[b, v] = xq/((x+b-1)q + p)`
//! with `b = max(1, 1 - ⌊α + v(α)⌋)`. Its pole `ζ` nearest to `α` from the
//! left solves `x + v(x) = 1 - b` and is bracketed between the previous `ζ`
//! and `α` by a sign change of the exact denominator.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::rational::{self, int};
use crate::algebra::sturm::count_below;
use crate::algebra::{IntPoly, SturmChain};
use crate::error::{Error, Result};
use crate::roots::{isolate_real_roots, IsolatingInterval};
use crate::tree::{vertex_from_label, RatFunc, TreeVariant, VertexLabel};

/// Value of the digit-selection function at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BDigit {
    Digit(u64),
    /// `α` is a pole of the vertex itself.
    ExactPoleHit,
}

/// `α + v(α)`, or `None` at a pole.
pub fn shifted_value(v: &RatFunc, alpha: &BigRational) -> Option<BigRational> {
    v.eval(alpha).map(|y| y + alpha)
}

/// `max(1, 1 - ⌊α + p(α)/q(α)⌋)` for `α < 0`.
pub fn b_digit(v: &RatFunc, alpha: &BigRational) -> Result<BDigit> {
    if !alpha.is_negative() {
        return Err(Error::OutOfDomain("alpha must be negative"));
    }
    let Some(y) = shifted_value(v, alpha) else {
        return Ok(BDigit::ExactPoleHit);
    };
    let b = (BigInt::one() - rational::floor(&y)).max(BigInt::one());
    b.to_u64()
        .map(BDigit::Digit)
        .ok_or(Error::DigitOverflow)
}

/// `[b, v] = x q / ((x + b - 1) q + p)`.
pub fn prepend_digit(v: &RatFunc, b: u64) -> Result<RatFunc> {
    if b == 0 {
        return Err(Error::ZeroDigit);
    }
    let shift = IntPoly::from_i64s(&[0, 1]) + IntPoly::constant((b - 1).into());
    let den = &shift * v.q() + v.p();
    RatFunc::new(v.q().shift_up(1), den, TreeVariant::Forward)
}

/// Result of one extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// A new pole was bracketed strictly between the previous one and `α`.
    Extended,
    /// The new vertex has `α` as a pole.
    ExactPoleHit,
}

/// Current end of the path together with its history.
#[derive(Clone, Debug)]
pub struct PathState {
    pub vertex: RatFunc,
    pub label: Option<VertexLabel>,
    pub b_history: Vec<u64>,
    /// `ζ_0, ζ_1, …`: for each path vertex its largest pole below `α`.
    /// `ζ_0` is absent when the start vertex has no pole below `α`.
    pub zetas: Vec<IsolatingInterval>,
    pub has_initial_zeta: bool,
    /// Cross-check each new bracket with a Sturm count.
    pub sturm_confirm: bool,
}

/// Bisections allowed while separating a previous pole from the next one.
const MAX_SEPARATION_BISECTIONS: usize = 4096;

impl PathState {
    /// Starts at `v`. Returns `Ok(None)` when `α` is already a pole of `v`.
    pub fn new(v: RatFunc, label: Option<VertexLabel>, alpha: &BigRational) -> Result<Option<Self>> {
        let q = v.q();
        if q.eval(alpha).is_zero() {
            return Ok(None);
        }
        let sf = q.square_free_part();
        let mut best = None;
        for mut iv in isolate_real_roots(&sf)? {
            if iv.compare_root(alpha) == Ordering::Less {
                best = Some(iv);
            }
        }
        Ok(Some(PathState {
            vertex: v,
            label,
            b_history: Vec::new(),
            has_initial_zeta: best.is_some(),
            zetas: best.into_iter().collect(),
            sturm_confirm: false,
        }))
    }

    pub fn step_count(&self) -> usize {
        self.b_history.len()
    }

    /// Appends `[b, v]` for `b = b(v, α)` and brackets its new pole.
    pub fn extend(&mut self, alpha: &BigRational) -> Result<StepOutcome> {
        let step = self.b_history.len() + 1;
        let b = match b_digit(&self.vertex, alpha)? {
            BDigit::Digit(b) => b,
            BDigit::ExactPoleHit => return Ok(StepOutcome::ExactPoleHit),
        };
        let next = prepend_digit(&self.vertex, b)?;
        self.b_history.push(b);
        self.label = self.label.take().map(|l| {
            let mut d = vec![b];
            d.extend_from_slice(l.digits());
            VertexLabel::new(d).expect("digits stay positive")
        });
        let q = next.q().clone();
        let q_alpha = q.sign_at(alpha);
        self.vertex = next;
        if q_alpha == Ordering::Equal {
            return Ok(StepOutcome::ExactPoleHit);
        }

        let lo = match self.zetas.last_mut() {
            None => -q.cauchy_bound()?,
            Some(prev) => {
                let mut found = None;
                for _ in 0..MAX_SEPARATION_BISECTIONS {
                    let s = q.sign_at(prev.hi());
                    if s != Ordering::Equal && s != q_alpha {
                        found = Some(prev.hi().clone());
                        break;
                    }
                    if let Some(root) = prev.bisect() {
                        // The previous pole is rational; start right at it.
                        found = Some(root);
                        break;
                    }
                }
                found.ok_or(Error::BracketFailure { step })?
            }
        };
        let iv = IsolatingInterval::from_sign_change(lo.clone(), alpha.clone(), q.clone())
            .ok_or(Error::BracketFailure { step })?;
        if self.sturm_confirm && SturmChain::new(&q)?.count(&lo, alpha)? != 1 {
            return Err(Error::BracketFailure { step });
        }
        self.zetas.push(iv);
        Ok(StepOutcome::Extended)
    }

    /// Refines the latest pole until its distance to `α` is decided against
    /// `tol`: `Some(true)` when `α - ζ < tol` is certain.
    fn settle_gap(&mut self, alpha: &BigRational, tol: &BigRational) -> Option<bool> {
        let iv = self.zetas.last_mut()?;
        for _ in 0..MAX_SEPARATION_BISECTIONS {
            if &(alpha - iv.lo()) < tol {
                return Some(true);
            }
            if &(alpha - iv.hi()) >= tol {
                // Also tighten relative to the gap so midpoints are faithful.
                if iv.width() * int(64) <= alpha - iv.hi() {
                    return Some(false);
                }
            }
            if let Some(root) = iv.bisect() {
                return Some(&(alpha - root) < tol);
            }
        }
        Some(false)
    }
}

/// How a density run ended.
#[derive(Clone, Debug, PartialEq)]
pub enum DensityStatus {
    /// `α - ζ < tol` was certified.
    Converged,
    ExactPoleHit { step: usize },
    StepCap { gap: f64 },
    /// Experimental mode only: the next pole could not be bracketed.
    BracketLost { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum DensityMode {
    /// `α <= -1`; bracketing failures are hard errors.
    Asserting,
    /// `-1 < α < 0`; runs the same construction and only records evidence.
    Experimental,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityStep {
    pub index: usize,
    pub b: u64,
    pub zeta_lo: BigRational,
    pub zeta_hi: BigRational,
    pub zeta: f64,
    pub gap: f64,
    /// `α + v_i(α)` for the new vertex.
    pub shifted: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityTrace {
    pub alpha: BigRational,
    pub mode: DensityMode,
    pub start: RatFunc,
    /// `Φ1∘Φ0` was applied first because the start had `p(0) != 0`.
    pub pre_stepped: bool,
    pub steps: Vec<DensityStep>,
    pub status: DensityStatus,
    /// Indices `i >= 2` with `b_i < 2`.
    pub b_violations: Vec<usize>,
    /// The pole sequence increased strictly and stayed below `α`.
    pub monotone: bool,
}

impl DensityTrace {
    pub fn reached(&self) -> bool {
        matches!(self.status, DensityStatus::Converged | DensityStatus::ExactPoleHit { .. })
    }

    /// Checks that hold for every run in asserting mode.
    pub fn passed(&self) -> bool {
        self.reached() && self.b_violations.is_empty() && self.monotone
    }
}

#[derive(Clone, Debug)]
pub struct DensityConfig {
    pub steps: usize,
    pub tol: BigRational,
    pub mode: DensityMode,
    pub sturm_confirm: bool,
}

impl DensityConfig {
    pub fn new(steps: usize, tol: BigRational) -> Self {
        DensityConfig {
            steps,
            tol,
            mode: DensityMode::Asserting,
            sturm_confirm: false,
        }
    }
}

pub fn run_density(start: &VertexLabel, alpha: &BigRational, config: &DensityConfig) -> Result<DensityTrace> {
    match config.mode {
        DensityMode::Asserting if alpha > &int(-1) => {
            return Err(Error::OutOfDomain("alpha must be at most -1 outside experimental mode"));
        }
        DensityMode::Experimental if !(alpha > &int(-1) && alpha.is_negative()) => {
            return Err(Error::OutOfDomain("experimental mode needs -1 < alpha < 0"));
        }
        _ => {}
    }
    if !config.tol.is_positive() {
        return Err(Error::OutOfDomain("tol must be positive"));
    }
    let mut v = vertex_from_label(start, TreeVariant::Forward)?;
    let mut label = start.clone();
    let pre_stepped = !v.p().constant_term().is_zero();
    if pre_stepped {
        v = prepend_digit(&v, 2)?;
        let mut d = vec![2];
        d.extend_from_slice(label.digits());
        label = VertexLabel::new(d)?;
    }
    let mut trace = DensityTrace {
        alpha: alpha.clone(),
        mode: config.mode,
        start: v.clone(),
        pre_stepped,
        steps: Vec::new(),
        status: DensityStatus::ExactPoleHit { step: 0 },
        b_violations: Vec::new(),
        monotone: true,
    };
    let Some(mut state) = PathState::new(v, Some(label), alpha)? else {
        return Ok(trace);
    };
    state.sturm_confirm = config.sturm_confirm;

    let mut status = None;
    for i in 1..=config.steps {
        let outcome = match state.extend(alpha) {
            Ok(o) => o,
            Err(Error::BracketFailure { step }) if config.mode == DensityMode::Experimental => {
                status = Some(DensityStatus::BracketLost { step });
                break;
            }
            Err(e) => return Err(e),
        };
        let b = *state.b_history.last().expect("extend pushed a digit");
        if i >= 2 && b < 2 {
            trace.b_violations.push(i);
        }
        if outcome == StepOutcome::ExactPoleHit {
            status = Some(DensityStatus::ExactPoleHit { step: i });
            break;
        }
        let converged = state.settle_gap(alpha, &config.tol) == Some(true);
        let iv = state.zetas.last().expect("extend pushed a pole");
        let zeta = rational::to_f64(&iv.midpoint());
        let shifted = shifted_value(&state.vertex, alpha).map_or(f64::NAN, |y| rational::to_f64(&y));
        trace.steps.push(DensityStep {
            index: i,
            b,
            zeta_lo: iv.lo().clone(),
            zeta_hi: iv.hi().clone(),
            zeta,
            gap: rational::to_f64(alpha) - zeta,
            shifted,
        });
        if converged {
            status = Some(DensityStatus::Converged);
            break;
        }
    }
    trace.status = status.unwrap_or_else(|| DensityStatus::StepCap {
        gap: trace.steps.last().map_or(f64::INFINITY, |s| s.gap),
    });
    // Earlier brackets may have been refined after being recorded; compare
    // the final certified intervals.
    let offset = usize::from(state.has_initial_zeta);
    for (k, step) in trace.steps.iter_mut().enumerate() {
        let iv = &state.zetas[k + offset];
        step.zeta_lo = iv.lo().clone();
        step.zeta_hi = iv.hi().clone();
    }
    trace.monotone = state.zetas.windows(2).all(|w| w[0].hi() <= w[1].lo())
        && state.zetas.iter().all(|iv| iv.hi() <= alpha);
    Ok(trace)
}

/// Pole facts for the subtrees below a vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtreePoleReport {
    pub n: u64,
    /// `[N, a_1, …, a_k]`.
    pub prefixed: RatFunc,
    pub prefixed_poles: Vec<IsolatingInterval>,
    /// Its smallest pole lies strictly below `-N`.
    pub smallest_below_minus_n: bool,
    /// Largest pole of `(Φ1∘Φ0)^k(v)` for `k = 0..=N`.
    pub largest_poles: Vec<IsolatingInterval>,
    /// Step `k` taken from a vertex with `p(0) = 0`: the new largest pole
    /// is at least half the previous one.
    pub halving: Vec<(u64, bool)>,
    /// For `k = 1..=N`: the largest pole of `(Φ1∘Φ0)^k(v)` lies in
    /// `[s_1 / 2^k, 0)`.
    pub cumulative: Vec<(u64, bool)>,
}

impl SubtreePoleReport {
    pub fn halving_holds(&self) -> bool {
        self.halving.iter().all(|&(_, h)| h)
    }

    pub fn cumulative_holds(&self) -> bool {
        self.cumulative.iter().all(|&(_, h)| h)
    }

    pub fn passed(&self) -> bool {
        self.smallest_below_minus_n && self.halving_holds() && self.cumulative_holds()
    }

    /// Largest poles as floats, refined to about 12 digits.
    pub fn largest_pole_values(&self) -> Vec<f64> {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 40usize);
        self.largest_poles
            .iter()
            .map(|iv| crate::roots::refine(iv, &eps).map_or(f64::NAN, |r| r.approx()))
            .collect()
    }
}

fn largest_root(f: &IntPoly) -> Result<Option<IsolatingInterval>> {
    Ok(isolate_real_roots(&f.square_free_part())?.pop())
}

/// Whether `root(new) >= root(old) / k` for `k > 0`, refining both until
/// decided.
fn at_least_scaled(new: &mut IsolatingInterval, old: &mut IsolatingInterval, k: &BigRational) -> bool {
    // Equal irrational roots never separate under bisection. If `k * new`
    // is a root of the old polynomial, only `new` is refined until its
    // scaled interval lies inside the old one or clear of it.
    let shared = new.poly().gcd(&dilate(old.poly(), k));
    let may_coincide = shared.degree().is_some_and(|d| d > 0) && new.sign_change_of(&shared);
    loop {
        if new.lo() * k >= *old.hi() {
            return true;
        }
        if new.hi() * k < *old.lo() {
            return false;
        }
        if may_coincide && new.lo() * k > *old.lo() && new.hi() * k < *old.hi() {
            return true;
        }
        // Exact rational roots end the refinement with a direct comparison.
        if let Some(r) = new.bisect() {
            return old.compare_root(&(r * k)) != Ordering::Greater;
        }
        if may_coincide {
            continue;
        }
        if let Some(r) = old.bisect() {
            return new.compare_root(&(r / k)) != Ordering::Less;
        }
    }
}

/// `f(k x)` scaled to integer coefficients; its roots are those of `f`
/// divided by `k`.
fn dilate(f: &IntPoly, k: &BigRational) -> IntPoly {
    let d = f.degree().unwrap_or(0);
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * num_traits::pow(k.numer().clone(), i) * num_traits::pow(k.denom().clone(), d - i))
        .collect();
    IntPoly::new(coeffs)
}

fn has_pole_below(prefixed: &RatFunc, n: u64) -> Result<bool> {
    let minus_n = -BigRational::from_integer(n.into());
    let q = prefixed.q();
    // `count_below` includes `-N` itself, which may be a pole too.
    let at_minus_n = usize::from(q.eval(&minus_n).is_zero());
    Ok(count_below(q, &minus_n)? > at_minus_n)
}

/// Whether `[N, v]`, the vertex `v` with digit `N` prepended, has a pole
/// strictly below `-N`.
pub fn prefixed_pole_below(v: &RatFunc, n: u64) -> Result<bool> {
    if v.variant() != TreeVariant::Forward {
        return Err(Error::OutOfDomain("subtree limits apply to forward vertices"));
    }
    if n == 0 {
        return Err(Error::ZeroDigit);
    }
    has_pole_below(&prepend_digit(v, n)?, n)
}

/// Poles of `[N, v]` and of the `Φ1∘Φ0` iterates of `v`, with the
/// inequalities of the two subtree lemmas evaluated exactly.
pub fn subtree_pole_limits(v: &RatFunc, n: u64) -> Result<SubtreePoleReport> {
    if v.variant() != TreeVariant::Forward {
        return Err(Error::OutOfDomain("subtree limits apply to forward vertices"));
    }
    if n == 0 {
        return Err(Error::ZeroDigit);
    }
    let prefixed = prepend_digit(v, n)?;
    let prefixed_poles = isolate_real_roots(&prefixed.q().square_free_part())?;
    let smallest_below_minus_n = has_pole_below(&prefixed, n)?;

    let mut current = v.clone();
    let mut s1 = largest_root(current.q())?;
    let mut largest_poles: Vec<IsolatingInterval> = s1.iter().cloned().collect();
    let mut halving = Vec::new();
    let mut cumulative = Vec::new();
    let zero = BigRational::zero();
    for k in 1..=n {
        let asserted = current.p().constant_term().is_zero();
        let next = prepend_digit(&current, 2)?;
        let Some(mut new) = largest_root(next.q())? else {
            return Err(Error::OutOfDomain("vertex without real poles"));
        };
        if asserted {
            if let Some(old) = largest_poles.last_mut() {
                halving.push((k, at_least_scaled(&mut new, old, &int(2))));
            }
        }
        if let Some(first) = s1.as_mut() {
            let scale = BigRational::from_integer(BigInt::one() << (k as usize));
            let ok = at_least_scaled(&mut new, first, &scale) && new.compare_root(&zero) == Ordering::Less;
            cumulative.push((k, ok));
        }
        largest_poles.push(new);
        current = next;
    }
    // The refined copy of the first pole is kept in place.
    if let (Some(first), Some(slot)) = (s1.take(), largest_poles.first_mut()) {
        *slot = first;
    }
    Ok(SubtreePoleReport {
        n,
        prefixed,
        prefixed_poles,
        smallest_below_minus_n,
        largest_poles,
        halving,
        cumulative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn fwd(p: &[i64], q: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64s(p), IntPoly::from_i64s(q), TreeVariant::Forward).unwrap()
    }

    fn label(d: &[u64]) -> VertexLabel {
        VertexLabel::new(d.to_vec()).unwrap()
    }

    #[test]
    fn b_digit_examples() {
        let root = RatFunc::root(TreeVariant::Forward);
        assert_eq!(b_digit(&root, &int(-3)).unwrap(), BDigit::Digit(3));
        assert_eq!(b_digit(&root, &int(-2)).unwrap(), BDigit::Digit(1));
        let v = fwd(&[0, 1, 1], &[1, 3, 1]);
        assert_eq!(b_digit(&v, &int(-2)).unwrap(), BDigit::Digit(5));
        assert_eq!(b_digit(&root, &int(-1)).unwrap(), BDigit::ExactPoleHit);
        assert!(b_digit(&root, &int(0)).is_err());
    }

    #[test]
    fn prepending_matches_tree_maps() {
        for d in [&[2u64][..], &[1, 3], &[2, 2, 4], &[3, 1, 2]] {
            let l = label(d);
            let v = vertex_from_label(&l, TreeVariant::Forward).unwrap();
            for b in 1..5u64 {
                let mut digits = vec![b];
                digits.extend_from_slice(d);
                let want = vertex_from_label(&label(&digits), TreeVariant::Forward).unwrap();
                assert_eq!(prepend_digit(&v, b).unwrap(), want, "{b} {l}");
            }
        }
    }

    #[test]
    fn first_step_from_root_at_minus_ten() {
        let alpha = int(-10);
        let root = RatFunc::root(TreeVariant::Forward);
        let mut state = PathState::new(root, None, &alpha).unwrap().unwrap();
        assert!(state.zetas.is_empty());
        assert_eq!(state.extend(&alpha).unwrap(), StepOutcome::Extended);
        assert_eq!(state.b_history, vec![10]);
        // ζ1 = (-11 - √85)/2 ≈ -10.1098
        let mut iv = state.zetas[0].clone();
        let eps = ratio(1, 1_000_000);
        while iv.width() > eps {
            iv.bisect();
        }
        assert!((iv.approx() - (-11.0 - 85f64.sqrt()) / 2.0).abs() < 1e-5);
    }

    #[test]
    fn first_step_from_quadratic_at_minus_two() {
        let alpha = int(-2);
        let v = fwd(&[0, 1, 1], &[1, 3, 1]);
        let mut state = PathState::new(v.clone(), None, &alpha).unwrap().unwrap();
        // s2 = (-3 - √5)/2 is the pole below -2.
        let s2 = &mut state.zetas[0];
        assert_eq!(s2.compare_root(&ratio(-26, 10)), Ordering::Less);
        assert_eq!(s2.compare_root(&ratio(-27, 10)), Ordering::Greater);
        // α + v(α) = -4 is an integer, so b = 5 puts a pole of
        // xq/((x+4)q + p) exactly at α, the right end of (s2, -2].
        assert_eq!(state.extend(&alpha).unwrap(), StepOutcome::ExactPoleHit);
        assert_eq!(state.b_history, vec![5]);
        let d = IntPoly::from_i64s(&[4, 1]) * v.q() + v.p();
        assert_eq!(d, IntPoly::from_i64s(&[4, 14, 8, 1]));
        assert!(d.eval(&alpha).is_zero());
        assert!(state.vertex.q().eval(&alpha).is_zero());

        // Nudging α off the integer case gives a genuine bracket.
        let alpha = ratio(-21, 10);
        let mut state = PathState::new(v.clone(), None, &alpha).unwrap().unwrap();
        state.sturm_confirm = true;
        assert_eq!(state.extend(&alpha).unwrap(), StepOutcome::Extended);
        let iv = &state.zetas[1];
        assert!(iv.hi() == &alpha && iv.lo() >= state.zetas[0].hi());
    }

    #[test]
    fn exact_pole_hits_are_success() {
        // α = -1 is the pole of the root itself.
        let trace = run_density(&label(&[2]), &int(-1), &DensityConfig::new(10, ratio(1, 100))).unwrap();
        assert_eq!(trace.status, DensityStatus::ExactPoleHit { step: 0 });
        // x/(x+1) at α = -2: b = 1 and [1,2] = x(x+1)/(x^2+2x) reduces to
        // (x+1)/(x+2), whose pole is -2.
        let v = RatFunc::root(TreeVariant::Forward);
        let mut state = PathState::new(v, None, &int(-2)).unwrap().unwrap();
        assert_eq!(state.extend(&int(-2)).unwrap(), StepOutcome::ExactPoleHit);
    }

    #[test]
    fn converges_at_minus_three_halves() {
        let mut config = DensityConfig::new(200, ratio(1, 100_000_000));
        config.sturm_confirm = true;
        let trace = run_density(&label(&[2, 2]), &ratio(-3, 2), &config).unwrap();
        assert!(trace.passed(), "{:?}", trace.status);
        assert_eq!(trace.status, DensityStatus::Converged);
        assert!(trace.steps.windows(2).all(|w| w[1].gap < w[0].gap));
    }

    #[test]
    fn converges_at_minus_one_and_various_alphas() {
        let config = DensityConfig::new(200, ratio(1, 100_000_000));
        for alpha in [int(-1), ratio(-7, 5), int(-2), ratio(-13, 3), ratio(-101, 10)] {
            for start in [&[2u64][..], &[2, 2], &[1, 3], &[3, 2]] {
                let trace = run_density(&label(start), &alpha, &config).unwrap();
                assert!(trace.passed(), "alpha {alpha} start {start:?}: {:?}", trace.status);
            }
        }
    }

    #[test]
    fn experimental_mode_records_evidence() {
        let mut config = DensityConfig::new(30, ratio(1, 1_000_000));
        config.mode = DensityMode::Experimental;
        let trace = run_density(&label(&[2, 2]), &ratio(-1, 2), &config).unwrap();
        assert!(!trace.steps.is_empty() || trace.reached());
        assert!(run_density(&label(&[2]), &ratio(-1, 2), &DensityConfig::new(5, ratio(1, 10))).is_err());
    }

    #[test]
    fn smallest_pole_of_prefixed_vertex() {
        let v = vertex_from_label(&label(&[2]), TreeVariant::Forward).unwrap();
        let rep = subtree_pole_limits(&v, 5).unwrap();
        assert!(rep.smallest_below_minus_n);
        // [5,2]: x + x/(x+1) = -4, smaller root -3 - √5 ≈ -5.236.
        let mut small = rep.prefixed_poles[0].clone();
        assert_eq!(small.compare_root(&ratio(-52, 10)), Ordering::Less);
        assert_eq!(small.compare_root(&ratio(-53, 10)), Ordering::Greater);
        // [2,3,4] has denominator (x+2)(x^2+6x+3): a pole at -2 and another
        // at -3-√6 below it.
        let v = vertex_from_label(&label(&[3, 4]), TreeVariant::Forward).unwrap();
        assert!(prefixed_pole_below(&v, 2).unwrap());
        for d in [&[1u64, 3][..], &[3, 2], &[2, 1, 2], &[4, 1, 1, 3]] {
            let v = vertex_from_label(&label(d), TreeVariant::Forward).unwrap();
            for n in [1, 2, 7, 30] {
                assert!(subtree_pole_limits(&v, n).unwrap().smallest_below_minus_n, "{d:?} {n}");
            }
        }
    }

    #[test]
    fn scaled_comparison_settles_equal_roots() {
        let root_of = |c: &[i64], lo: i64, hi: i64| {
            IsolatingInterval::new(int(lo), int(hi), IntPoly::from_i64s(c)).unwrap()
        };
        // 2·√2 = √8, and neither root is ever a bisection midpoint.
        let (mut new, mut old) = (root_of(&[-2, 0, 1], 1, 3), root_of(&[-8, 0, 1], 2, 5));
        assert!(at_least_scaled(&mut new, &mut old, &int(2)));
        let (mut new, mut old) = (root_of(&[-2, 0, 1], 1, 3), root_of(&[-9, 0, 1], 2, 5));
        assert!(!at_least_scaled(&mut new, &mut old, &int(2)));
        // [1,2] has its only pole at -2 and [2,1,2] its largest at -1.
        let v = vertex_from_label(&label(&[1, 2]), TreeVariant::Forward).unwrap();
        let rep = subtree_pole_limits(&v, 1).unwrap();
        assert_eq!(rep.cumulative, vec![(1, true)]);
    }

    #[test]
    fn largest_poles_under_repeated_twos() {
        let root = RatFunc::root(TreeVariant::Forward);
        let rep = subtree_pole_limits(&root, 12).unwrap();
        let poles = rep.largest_pole_values();
        assert!((poles[0] + 1.0).abs() < 1e-9);
        assert!((poles[1] - (-3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!((poles[2] - (-2.0 + 3f64.sqrt())).abs() < 1e-9);
        // The first step halves; the second does not: -0.268 < -0.382/2.
        assert_eq!(rep.halving[0], (1, true));
        assert_eq!(rep.halving[1], (2, false));
        assert_eq!(rep.cumulative[1], (2, false));
        // The poles creep up towards 2√2 - 3 rather than to 0.
        let limit = 2.0 * 2f64.sqrt() - 3.0;
        assert!(poles.windows(2).all(|w| w[0] < w[1]));
        assert!(poles.iter().all(|&p| p < limit));
        assert!(poles[12] - limit < 5e-3);
        assert!(!rep.passed());
    }
}
