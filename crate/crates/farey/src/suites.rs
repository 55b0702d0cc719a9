//! Verification suites behind `farey verify`. Each suite returns one case
//! per checked group, with the measured values as detail and the
//! offending inputs when a case fails.

use std::collections::BTreeSet;
use std::f64::consts::{LN_2, PI};

use farey_core::algebra::rational::{int, ratio, to_f64};
use farey_core::algebra::sturm::count_above;
use farey_core::algebra::BigRational;
use farey_core::cf::{all_ones_bounds, error_bound_check, expand_exact, roundtrip, ExpansionStatus, DEFAULT_MAX_STEPS};
use farey_core::density::{prefixed_pole_below, run_density, subtree_pole_limits, DensityConfig};
use farey_core::dynamics::{
    attracting_fixed_point_probe, entropy_birkhoff, entropy_rokhlin, invariance_residual,
};
use farey_core::roots::{interlacing_verdict, unit_circle_check};
use farey_core::tree::{
    check_structural_invariants, enumerate_levels, monotonicity_witnesses, vertex_from_label, RatFunc, TreeNode,
    TreeVariant, VertexLabel,
};
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::records::{poly, rat, CaseReport, SuiteReport};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Structure,
    Monotonicity,
    Interlacing,
    Roundtrip,
    Bounds,
    Density,
    Halving,
    Unitcircle,
    Dynamics,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Monotonicity => "monotonicity",
            Suite::Interlacing => "interlacing",
            Suite::Roundtrip => "roundtrip",
            Suite::Bounds => "bounds",
            Suite::Density => "density",
            Suite::Halving => "halving",
            Suite::Unitcircle => "unitcircle",
            Suite::Dynamics => "dynamics",
        }
    }
}

/// Overrides for the suite defaults; `None` keeps the default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub depth: Option<usize>,
    pub xs: Option<Vec<BigRational>>,
    pub max_den: Option<u64>,
    pub samples: Option<usize>,
    pub steps: Option<usize>,
    pub max_n: Option<u64>,
    pub orbit_length: Option<u64>,
    pub alphas: Option<Vec<BigRational>>,
    pub tol: Option<BigRational>,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn run(suite: Suite, params: &SuiteParams) -> Result<SuiteReport, CliError> {
    let results = match suite {
        Suite::Structure => structure(params.depth.unwrap_or(10))?,
        Suite::Monotonicity => monotonicity(params.depth.unwrap_or(8))?,
        Suite::Interlacing => interlacing(params.depth.unwrap_or(10))?,
        Suite::Roundtrip => roundtrip_suite(params)?,
        Suite::Bounds => bounds(params)?,
        Suite::Density => density(params)?,
        Suite::Halving => halving(params)?,
        Suite::Unitcircle => unitcircle(params.max_n.unwrap_or(64), params.tol.as_ref())?,
        Suite::Dynamics => dynamics(params)?,
    };
    Ok(SuiteReport::new(suite.name(), results))
}

fn node_id(node: &TreeNode) -> Value {
    match &node.label {
        Some(l) => json!(l.digits()),
        None => json!(node.word.to_string()),
    }
}

/// At most this many counterexamples are kept per case.
const MAX_WITNESSES: usize = 5;

/// Runs `check` on every vertex to `depth` and reports one case per level.
fn per_level<F>(variant: TreeVariant, depth: usize, what: &str, check: F) -> Result<Vec<CaseReport>, CliError>
where
    F: Fn(&RatFunc) -> farey_core::Result<Option<Value>> + Sync,
{
    let nodes: Vec<TreeNode> = enumerate_levels(variant, depth).collect();
    let verdicts = nodes
        .par_iter()
        .map(|n| check(&n.vertex).map(|bad| bad.map(|why| (node_id(n), n, why))))
        .collect::<farey_core::Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for level in 1..=depth {
        let at_level: Vec<_> = nodes
            .iter()
            .zip(&verdicts)
            .filter(|(n, _)| n.level == level)
            .collect();
        let failing: Vec<Value> = at_level
            .iter()
            .filter_map(|(_, v)| v.as_ref())
            .map(|(id, n, why)| json!({"vertex": id, "p": poly(n.vertex.p()), "q": poly(n.vertex.q()), "why": why}))
            .collect();
        out.push(CaseReport::new(
            format!("{what} level {level}"),
            failing.is_empty(),
            json!({
                "vertices": at_level.len(),
                "failures": failing.len(),
                "counterexamples": failing.into_iter().take(MAX_WITNESSES).collect::<Vec<_>>(),
            }),
        ));
    }
    Ok(out)
}

pub fn structure(depth: usize) -> Result<Vec<CaseReport>, CliError> {
    per_level(TreeVariant::Forward, depth, "structure", |v| {
        let r = check_structural_invariants(v)?;
        Ok((!r.passed()).then(|| {
            json!({
                "equalDegrees": r.equal_degrees,
                "positiveCoefficients": r.positive_coefficients,
                "dominance": r.dominance,
                "leadingOnes": r.leading_ones,
            })
        }))
    })
}

/// `v' > 0` and `x v' - v < 0` on `x > 0`, certified by Sturm counts on
/// `(0, B]` for the Cauchy bound `B` plus the sign at 1.
pub fn monotonicity_failure(v: &RatFunc) -> farey_core::Result<Option<Value>> {
    let w = monotonicity_witnesses(v);
    let one = int(1);
    let deriv_roots = count_above(&w.num_deriv, &BigRational::default())?;
    let defect_roots = count_above(&w.num_defect, &BigRational::default())?;
    let deriv_at_one = w.num_deriv.eval(&one);
    let defect_at_one = w.num_defect.eval(&one);
    let ok = deriv_roots == 0 && defect_roots == 0 && deriv_at_one.is_positive() && defect_at_one.is_negative();
    Ok((!ok).then(|| {
        json!({
            "numDeriv": poly(&w.num_deriv),
            "numDefect": poly(&w.num_defect),
            "numDerivPositiveRoots": deriv_roots,
            "numDefectPositiveRoots": defect_roots,
            "numDerivAtOne": rat(&deriv_at_one),
            "numDefectAtOne": rat(&defect_at_one),
        })
    }))
}

pub fn monotonicity(depth: usize) -> Result<Vec<CaseReport>, CliError> {
    per_level(TreeVariant::Forward, depth, "monotonicity", monotonicity_failure)
}

pub fn interlacing(depth: usize) -> Result<Vec<CaseReport>, CliError> {
    per_level(TreeVariant::Forward, depth, "interlacing", |v| {
        let rep = interlacing_verdict(v)?;
        Ok((!rep.passed()).then(|| json!(rep.failures())))
    })
}

/// Rationals `a/b` in `(0, 1)` in lowest terms with `b <= max_den`.
pub fn farey_rationals(max_den: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for b in 2..=max_den {
        for a in 1..b {
            if a.gcd(&b) == 1 {
                out.push(ratio(a as i64, b as i64));
            }
        }
    }
    out
}

pub fn roundtrip_case(x: &BigRational, variant: TreeVariant, max_den: u64) -> Result<CaseReport, CliError> {
    let ts = farey_rationals(max_den);
    let verdicts = ts
        .par_iter()
        .map(|t| roundtrip(t, x, variant, DEFAULT_MAX_STEPS).map(|v| (t, v)))
        .collect::<farey_core::Result<Vec<_>>>()?;
    let failing: Vec<Value> = verdicts
        .iter()
        .filter(|(_, v)| !v.passed)
        .map(|(t, v)| {
            json!({
                "t": rat(t),
                "digits": v.expansion.digits,
                "status": v.expansion.status.to_string(),
                "value": v.value.as_ref().map(rat),
            })
        })
        .collect();
    Ok(CaseReport::new(
        format!("roundtrip {variant} x={}", rat(x)),
        failing.is_empty(),
        json!({
            "checked": ts.len(),
            "failures": failing.len(),
            "counterexamples": failing.into_iter().take(MAX_WITNESSES).collect::<Vec<_>>(),
        }),
    ))
}

/// Evaluations of every forward vertex to `depth` at `x` are pairwise distinct.
pub fn injectivity_case(x: &BigRational, depth: usize) -> CaseReport {
    let mut seen = BTreeSet::new();
    let mut collision = None;
    let mut count = 0usize;
    for node in enumerate_levels(TreeVariant::Forward, depth) {
        count += 1;
        let Some(val) = node.vertex.eval(x) else {
            collision = Some(json!({"vertex": node_id(&node), "why": "pole at x"}));
            break;
        };
        if !seen.insert(val.clone()) {
            collision = Some(json!({"vertex": node_id(&node), "value": rat(&val)}));
            break;
        }
    }
    CaseReport::new(
        format!("injectivity depth {depth} x={}", rat(x)),
        collision.is_none(),
        json!({"vertices": count, "collision": collision}),
    )
}

/// Seeds `a/(q m)` with `a` prime to `q`, for `x = p/q`.
pub fn invariant_seeds(q: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let mut seeds = BTreeSet::new();
    while seeds.len() < count {
        let m = rng.gen_range(1..=40u64);
        let den = q * m;
        let a = rng.gen_range(1..den);
        if a.gcd(&q) == 1 {
            seeds.insert(ratio(a as i64, den as i64));
        }
    }
    seeds.into_iter().collect()
}

/// No seed terminates within the step budget and the numerator stays prime
/// to `q` while `q` divides the denominator at every step.
pub fn nontermination_case(x: &BigRational, seeds: &[BigRational], max_steps: usize) -> Result<CaseReport, CliError> {
    let q = x.denom().clone();
    let rows = seeds
        .par_iter()
        .map(|t| expand_exact(t, x, TreeVariant::Forward, max_steps).map(|e| (t, e)))
        .collect::<farey_core::Result<Vec<_>>>()?;
    let failing: Vec<Value> = rows
        .iter()
        .filter(|(_, e)| {
            let cycled = matches!(e.status, ExpansionStatus::CertifiedInfinite(_)) && e.digits.len() < max_steps;
            let ran = e.digits.len() == max_steps || cycled;
            let held = e
                .invariant
                .as_ref()
                .is_some_and(|r| r.held && r.steps_checked == e.digits.len());
            e.is_finite() || !ran || !held
        })
        .map(|(t, e)| json!({"t": rat(t), "steps": e.digits.len(), "status": e.status.to_string()}))
        .collect();
    Ok(CaseReport::new(
        format!("nontermination x={}", rat(x)),
        failing.is_empty() && !q.is_one(),
        json!({
            "seeds": seeds.len(),
            "maxSteps": max_steps,
            "modulus": q.to_string(),
            "counterexamples": failing.into_iter().take(MAX_WITNESSES).collect::<Vec<_>>(),
        }),
    ))
}

fn roundtrip_suite(params: &SuiteParams) -> Result<Vec<CaseReport>, CliError> {
    let xs = params
        .xs
        .clone()
        .unwrap_or_else(|| vec![int(1), int(2), int(3), ratio(1, 2), ratio(3, 2), ratio(5, 3)]);
    let max_den = params.max_den.unwrap_or(60);
    let depth = params.depth.unwrap_or(12);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::new();
    for x in &xs {
        if !x.is_positive() {
            return Err(CliError::Usage(format!("x must be positive, got {}", rat(x))));
        }
        if x.is_integer() {
            out.push(roundtrip_case(x, TreeVariant::Forward, max_den)?);
            out.push(roundtrip_case(x, TreeVariant::Backward, max_den)?);
            out.push(injectivity_case(x, depth));
        } else {
            let q = x.denom().to_string().parse::<u64>().map_err(|_| {
                CliError::Usage(format!("denominator of {} is too large", rat(x)))
            })?;
            let seeds = invariant_seeds(q, params.samples.unwrap_or(50), &mut rng);
            out.push(nontermination_case(x, &seeds, params.steps.unwrap_or(DEFAULT_MAX_STEPS))?);
        }
    }
    Ok(out)
}

/// Random rationals `a/b` in `(0, 1)` with `2 <= b <= max_den`.
pub fn random_rationals(count: usize, max_den: u64, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    (0..count)
        .map(|_| {
            let b = rng.gen_range(2..=max_den);
            let a = rng.gen_range(1..b);
            ratio(a as i64, b as i64)
        })
        .collect()
}

/// The forward a priori error bound at every computed convergent.
pub fn forward_bound_case(x: &BigRational, ts: &[BigRational], n_max: usize) -> Result<CaseReport, CliError> {
    let rows = ts
        .par_iter()
        .map(|t| error_bound_check(t, x, TreeVariant::Forward, n_max).map(|r| (t, r)))
        .collect::<farey_core::Result<Vec<_>>>()?;
    let checked: usize = rows.iter().map(|(_, r)| r.len()).sum();
    let failing: Vec<Value> = rows
        .iter()
        .flat_map(|(t, r)| r.iter().filter(|b| !b.holds).map(move |b| (t, b)))
        .map(|(t, b)| json!({"t": rat(t), "n": b.n, "error": rat(&b.error), "bound": rat(&b.bound)}))
        .collect();
    Ok(CaseReport::new(
        format!("forward error bound x={}", rat(x)),
        failing.is_empty(),
        json!({
            "seeds": ts.len(),
            "convergents": checked,
            "counterexamples": failing.into_iter().take(MAX_WITNESSES).collect::<Vec<_>>(),
        }),
    ))
}

pub fn ones_bound_case(x: &BigRational, n_lo: usize, n_hi: usize) -> CaseReport {
    let rows = all_ones_bounds(x, n_lo, n_hi);
    let failing: Vec<Value> = rows
        .iter()
        .filter(|r| !r.holds)
        .map(|r| json!({"n": r.n, "q": rat(&r.q), "bound": rat(&r.bound)}))
        .collect();
    CaseReport::new(
        format!("all-ones denominators x={}", rat(x)),
        failing.is_empty(),
        json!({"n": [n_lo, n_hi], "counterexamples": failing}),
    )
}

/// For `0 < x < 1` and `t` in `(0, 1-x)` every backward digit is 1 and the
/// convergents tend to `1-x`, so the error stays near `1-x-t`. Passes when
/// the error over the last half of the convergents stays above half that
/// gap.
pub fn backward_nonconvergence_case(x: &BigRational, seeds: &[BigRational], n_max: usize) -> Result<CaseReport, CliError> {
    let one = int(1);
    let mut failing = Vec::new();
    let mut tails = Vec::new();
    for t in seeds {
        let rows = error_bound_check(t, x, TreeVariant::Backward, n_max)?;
        let gap = &one - x - t;
        let floor = &gap / int(2);
        let tail = &rows[rows.len() / 2..];
        let min_err = tail.iter().map(|r| r.error.clone()).min().unwrap_or_default();
        tails.push(json!({"t": rat(t), "limitGap": to_f64(&gap), "minTailError": to_f64(&min_err)}));
        if rows.len() < n_max || min_err <= floor {
            failing.push(json!({"t": rat(t), "rows": rows.len(), "minTailError": rat(&min_err)}));
        }
    }
    Ok(CaseReport::new(
        format!("backward nonconvergence x={}", rat(x)),
        failing.is_empty(),
        json!({"convergents": n_max, "seeds": tails, "counterexamples": failing}),
    ))
}

/// Evenly spaced seeds `(1-x) k/(count+1)`.
pub fn attracted_seeds(x: &BigRational, count: usize) -> Vec<BigRational> {
    let gap = int(1) - x;
    (1..=count as i64).map(|k| &gap * ratio(k, count as i64 + 1)).collect()
}

fn bounds(params: &SuiteParams) -> Result<Vec<CaseReport>, CliError> {
    let xs = params
        .xs
        .clone()
        .unwrap_or_else(|| vec![ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1), int(2)]);
    let samples = params.samples.unwrap_or(100);
    let max_den = params.max_den.unwrap_or(1000);
    let n_max = params.steps.unwrap_or(40);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::new();
    for x in &xs {
        let ts = random_rationals(samples, max_den, &mut rng);
        out.push(forward_bound_case(x, &ts, n_max)?);
        if x < &int(1) {
            out.push(ones_bound_case(x, 3, 40));
        }
    }
    for x in [ratio(1, 2), ratio(1, 3)] {
        out.push(backward_nonconvergence_case(&x, &attracted_seeds(&x, 10), 60)?);
    }
    Ok(out)
}

pub fn density_case(start: &VertexLabel, alpha: &BigRational, config: &DensityConfig) -> Result<CaseReport, CliError> {
    let trace = run_density(start, alpha, config)?;
    let record = crate::records::DensityRecord::from(&trace);
    Ok(CaseReport::new(
        format!("density alpha={}", rat(alpha)),
        trace.passed(),
        json!({
            "status": record.status,
            "steps": trace.steps.len(),
            "finalGap": record.final_gap,
            "monotone": trace.monotone,
            "bViolations": trace.b_violations,
            "b": trace.steps.iter().map(|s| s.b).collect::<Vec<_>>(),
        }),
    ))
}

fn density(params: &SuiteParams) -> Result<Vec<CaseReport>, CliError> {
    let alphas = params
        .alphas
        .clone()
        .unwrap_or_else(|| vec![ratio(-3, 2), int(-2), ratio(-7, 3), int(-10)]);
    let tol = params
        .tol
        .clone()
        .unwrap_or_else(|| BigRational::new(1.into(), 100_000_000.into()));
    let config = DensityConfig::new(params.steps.unwrap_or(200), tol);
    let start = VertexLabel::new(vec![2, 2]).expect("nonempty label");
    alphas.par_iter().map(|a| density_case(&start, a, &config)).collect()
}

/// Random canonical labels of length 1 to 4 with digits up to 5.
pub fn random_labels(count: usize, rng: &mut ChaCha8Rng) -> Vec<VertexLabel> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=4);
            let mut d: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
            if let Some(last) = d.last_mut() {
                *last = (*last).max(2);
            }
            VertexLabel::new(d).expect("nonempty label")
        })
        .collect()
}

/// `[N, v]` has a pole below `-N` for every `N` up to `max_n`.
pub fn prefix_case(label: &VertexLabel, max_n: u64) -> Result<CaseReport, CliError> {
    let v = vertex_from_label(label, TreeVariant::Forward)?;
    let failing = (1..=max_n)
        .into_par_iter()
        .map(|n| prefixed_pole_below(&v, n).map(|ok| (n, ok)))
        .collect::<farey_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect::<Vec<_>>();
    Ok(CaseReport::new(
        format!("prefix pole below -N {label}"),
        failing.is_empty(),
        json!({"maxN": max_n, "failingN": failing}),
    ))
}

/// The largest pole of `(Φ1∘Φ0)^N(v)` stays in `[s_1/2^N, 0)`.
pub fn iterate_case(label: &VertexLabel, max_n: u64) -> Result<CaseReport, CliError> {
    let v = vertex_from_label(label, TreeVariant::Forward)?;
    let rep = subtree_pole_limits(&v, max_n)?;
    let failing: Vec<u64> = rep.cumulative.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
    let step_halving: Vec<u64> = rep.halving.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
    Ok(CaseReport::new(
        format!("largest pole scaling {label}"),
        rep.cumulative_holds(),
        json!({
            "maxN": max_n,
            "largestPoles": rep.largest_pole_values(),
            "failingN": failing,
            "stepHalvingFailures": step_halving,
        }),
    ))
}

fn halving(params: &SuiteParams) -> Result<Vec<CaseReport>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let labels = random_labels(params.samples.unwrap_or(20), &mut rng);
    let prefix_n = params.max_n.unwrap_or(50);
    let iterate_n = params.steps.map_or(20, |s| s as u64);
    let mut out = Vec::new();
    for label in &labels {
        out.push(prefix_case(label, prefix_n)?);
    }
    let iterated = labels
        .par_iter()
        .map(|l| iterate_case(l, iterate_n))
        .collect::<Result<Vec<_>, _>>()?;
    out.extend(iterated);
    Ok(out)
}

fn unitcircle(max_n: u64, tol: Option<&BigRational>) -> Result<Vec<CaseReport>, CliError> {
    let tol = tol.map_or(1e-8, to_f64);
    (1..=max_n as u32)
        .into_par_iter()
        .map(|n| {
            let rep = unit_circle_check(n, tol)?;
            Ok(CaseReport::new(
                format!("unit circle n={n}"),
                rep.passed,
                json!({
                    "identity": rep.identity_holds,
                    "bijective": rep.bijective,
                    "maxDistance": rep.max_distance,
                    "roots": rep.roots.len(),
                }),
            ))
        })
        .collect()
}

/// `π²/(6 ln 2)`, the entropy of the classical Gauss map.
pub fn gauss_entropy() -> f64 {
    PI * PI / (6.0 * LN_2)
}

pub const BIRKHOFF_SEED: f64 = 0.377;

pub fn invariance_case(x: &BigRational) -> Result<CaseReport, CliError> {
    let r = invariance_residual(to_f64(x), 64)?;
    Ok(CaseReport::new(
        format!("invariance x={}", rat(x)),
        r < 1e-9,
        json!({"intervals": 64, "residual": r}),
    ))
}

pub fn birkhoff_case(x: &BigRational, length: u64) -> Result<CaseReport, CliError> {
    let birkhoff = entropy_birkhoff(x, BIRKHOFF_SEED, length)?;
    let rokhlin = entropy_rokhlin(to_f64(x), 4000)?.value;
    let rel = (birkhoff - rokhlin).abs() / rokhlin;
    let mut passed = rel < 0.01;
    let mut detail = json!({
        "orbitLength": length,
        "seed": BIRKHOFF_SEED,
        "birkhoff": birkhoff,
        "rokhlin": rokhlin,
        "relativeGap": rel,
    });
    if x.is_one() {
        let rel_classical = (birkhoff - gauss_entropy()).abs() / gauss_entropy();
        passed &= rel_classical < 0.01;
        detail["classical"] = json!(gauss_entropy());
        detail["relativeGapClassical"] = json!(rel_classical);
    }
    Ok(CaseReport::new(format!("entropy x={}", rat(x)), passed, detail))
}

pub fn probe_case(x: &BigRational, t0: &BigRational, steps: usize) -> Result<CaseReport, CliError> {
    let p = attracting_fixed_point_probe(to_f64(x), to_f64(t0), steps, TreeVariant::Backward)?;
    let last = p.final_ratio().unwrap_or(f64::NAN);
    let passed = p.decreasing && p.positive && (last - to_f64(x)).abs() < 1e-3;
    Ok(CaseReport::new(
        format!("attracting fixed point x={} t0={}", rat(x), rat(t0)),
        passed,
        json!({
            "steps": steps,
            "decreasing": p.decreasing,
            "positive": p.positive,
            "finalRatio": last,
            "finalPoint": p.orbit.last(),
        }),
    ))
}

fn dynamics(params: &SuiteParams) -> Result<Vec<CaseReport>, CliError> {
    let xs = params
        .xs
        .clone()
        .unwrap_or_else(|| vec![int(1), int(2), ratio(5, 2)]);
    let length = params.orbit_length.unwrap_or(10_000_000);
    let mut out = Vec::new();
    for x in &xs {
        out.push(invariance_case(x)?);
    }
    let entropy = xs
        .par_iter()
        .map(|x| birkhoff_case(x, length))
        .collect::<Result<Vec<_>, _>>()?;
    out.extend(entropy);
    for (x, t0) in [(ratio(1, 2), ratio(3, 10)), (ratio(1, 3), ratio(1, 2))] {
        out.push(probe_case(&x, &t0, 200)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for case in structure(6).unwrap() {
            assert!(case.passed, "{}", case.name);
        }
        for case in monotonicity(5).unwrap() {
            assert!(case.passed, "{}", case.name);
        }
        assert_eq!(farey_rationals(5).len(), 9);
    }

    #[test]
    fn monotonicity_flags_a_decreasing_function() {
        // (x+2)/(x+1) decreases on x > 0.
        let v = RatFunc::new(
            farey_core::algebra::IntPoly::from_i64s(&[2, 1]),
            farey_core::algebra::IntPoly::from_i64s(&[1, 1]),
            TreeVariant::Forward,
        )
        .unwrap();
        assert!(monotonicity_failure(&v).unwrap().is_some());
    }

    #[test]
    fn seeds_meet_the_hypothesis() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in invariant_seeds(3, 20, &mut rng) {
            assert!(t.denom() % 3 == 0.into());
            assert!(t.numer() % 3 != 0.into());
        }
    }
}
