//! JSON shapes for everything the CLI prints. Polynomials are arrays of
//! decimal coefficient strings in ascending degree; rationals are
//! `"num/den"` strings in lowest terms.

use farey_core::algebra::rational::format_rational;
use farey_core::algebra::{BigRational, IntPoly};
use farey_core::cf::{Convergent, DigitExpansion, ExpansionStatus, InfiniteReason};
use farey_core::density::{DensityMode, DensityStatus, DensityTrace};
use farey_core::dynamics::{ClosedFormEntropy, OrbitStats};
use farey_core::roots::{ComplexApprox, InterlacingReport, IsolatingInterval, RootOwner};
use farey_core::tree::{RatFunc, TreeNode};
use serde::Serialize;

pub fn poly(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn rat(r: &BigRational) -> String {
    format_rational(r)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexRecord {
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_word: Option<String>,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub variant: &'static str,
}

impl VertexRecord {
    /// Forward nodes carry their digit label, backward nodes their branch
    /// word.
    pub fn from_node(node: &TreeNode) -> Self {
        let label = node.label.as_ref().map(|l| l.digits().to_vec());
        VertexRecord {
            level: node.level,
            branch_word: label.is_none().then(|| node.word.to_string()),
            label,
            p: poly(node.vertex.p()),
            q: poly(node.vertex.q()),
            variant: node.vertex.variant().as_str(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuncRecord {
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub variant: &'static str,
}

impl From<&RatFunc> for FuncRecord {
    fn from(v: &RatFunc) -> Self {
        FuncRecord {
            p: poly(v.p()),
            q: poly(v.q()),
            variant: v.variant().as_str(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ReasonRecord {
    ModInvariant { modulus: String },
    Cycle { start: usize, period: usize },
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantRecordJson {
    pub modulus: String,
    pub steps_checked: usize,
    pub held: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpandRecord {
    pub digits: Vec<u64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<ReasonRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<InvariantRecordJson>,
    pub variant: &'static str,
    pub x: String,
    pub t: String,
    pub convergents: Vec<[String; 2]>,
}

pub fn status_name(s: &ExpansionStatus) -> &'static str {
    match s {
        ExpansionStatus::Finite => "Finite",
        ExpansionStatus::Capped { .. } => "Capped",
        ExpansionStatus::CertifiedInfinite(_) => "CertifiedInfinite",
    }
}

impl ExpandRecord {
    pub fn new(
        e: &DigitExpansion,
        conv: &[Convergent],
        x: &BigRational,
        t: &BigRational,
        variant: &'static str,
    ) -> Self {
        let reason = match &e.status {
            ExpansionStatus::CertifiedInfinite(InfiniteReason::ModInvariant { modulus }) => {
                Some(ReasonRecord::ModInvariant {
                    modulus: modulus.to_string(),
                })
            }
            ExpansionStatus::CertifiedInfinite(InfiniteReason::Cycle { start, period }) => Some(ReasonRecord::Cycle {
                start: *start,
                period: *period,
            }),
            _ => None,
        };
        ExpandRecord {
            digits: e.digits.clone(),
            status: status_name(&e.status),
            reason,
            invariant: e.invariant.as_ref().map(|r| InvariantRecordJson {
                modulus: r.modulus.to_string(),
                steps_checked: r.steps_checked,
                held: r.held,
            }),
            variant,
            x: rat(x),
            t: rat(t),
            convergents: conv.iter().map(|c| [c.p.to_string(), c.q.to_string()]).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalRecord {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

impl From<&IsolatingInterval> for IntervalRecord {
    fn from(iv: &IsolatingInterval) -> Self {
        IntervalRecord {
            lo: rat(iv.lo()),
            hi: rat(iv.hi()),
            approx: iv.approx(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl From<&ComplexApprox> for ComplexRecord {
    fn from(c: &ComplexApprox) -> Self {
        ComplexRecord {
            re: c.re,
            im: c.im,
            radius: c.radius,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyRoots {
    pub coeffs: Vec<String>,
    pub real: Vec<IntervalRecord>,
    pub complex: Vec<ComplexRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MergedRoot {
    pub owner: &'static str,
    #[serde(flatten)]
    pub interval: IntervalRecord,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InterlaceRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<u64>>,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub passed: bool,
    pub failures: Vec<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<MergedRoot>,
}

impl InterlaceRecord {
    pub fn new(label: Option<Vec<u64>>, v: &RatFunc, rep: &InterlacingReport, with_roots: bool) -> Self {
        let merged = if with_roots {
            rep.merged
                .iter()
                .map(|(o, iv)| MergedRoot {
                    owner: match o {
                        RootOwner::Numerator => "p",
                        RootOwner::Denominator => "q",
                    },
                    interval: iv.into(),
                })
                .collect()
        } else {
            Vec::new()
        };
        InterlaceRecord {
            label,
            p: poly(v.p()),
            q: poly(v.q()),
            passed: rep.passed(),
            failures: rep.failures(),
            merged,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityStepRecord {
    pub index: usize,
    pub b: u64,
    pub zeta_lo: String,
    pub zeta_hi: String,
    pub zeta: f64,
    pub gap: f64,
    pub shifted: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityRecord {
    pub alpha: String,
    pub mode: &'static str,
    pub start: FuncRecord,
    pub pre_stepped: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_gap: Option<f64>,
    pub reached: bool,
    pub passed: bool,
    pub monotone: bool,
    pub b_violations: Vec<usize>,
    pub steps: Vec<DensityStepRecord>,
}

impl From<&DensityTrace> for DensityRecord {
    fn from(t: &DensityTrace) -> Self {
        let (status, status_step, final_gap) = match &t.status {
            DensityStatus::Converged => ("Converged", None, t.steps.last().map(|s| s.gap)),
            DensityStatus::ExactPoleHit { step } => ("ExactPoleHit", Some(*step), Some(0.0)),
            DensityStatus::StepCap { gap } => ("StepCap", None, Some(*gap)),
            DensityStatus::BracketLost { step } => ("BracketLost", Some(*step), None),
        };
        DensityRecord {
            alpha: rat(&t.alpha),
            mode: match t.mode {
                DensityMode::Asserting => "asserting",
                DensityMode::Experimental => "experimental",
            },
            start: (&t.start).into(),
            pre_stepped: t.pre_stepped,
            status,
            status_step,
            final_gap,
            reached: t.reached(),
            passed: t.passed(),
            monotone: t.monotone,
            b_violations: t.b_violations.clone(),
            steps: t
                .steps
                .iter()
                .map(|s| DensityStepRecord {
                    index: s.index,
                    b: s.b,
                    zeta_lo: rat(&s.zeta_lo),
                    zeta_hi: rat(&s.zeta_hi),
                    zeta: s.zeta,
                    gap: s.gap,
                    shifted: s.shifted,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormRecord {
    pub as_defined: f64,
    pub from_one: f64,
}

impl From<ClosedFormEntropy> for ClosedFormRecord {
    fn from(c: ClosedFormEntropy) -> Self {
        ClosedFormRecord {
            as_defined: c.as_defined,
            from_one: c.from_one,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DynamicsRecord {
    pub x: String,
    pub variant: &'static str,
    pub seed: String,
    pub burn_in: u64,
    pub length: u64,
    pub lyapunov: f64,
    pub histogram: Vec<f64>,
    pub reseeds: u64,
    pub shadow_checks: u64,
    pub shadow_mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_rokhlin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance_residual: Option<f64>,
    /// Reported only; never used as a reference value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormRecord>,
}

impl DynamicsRecord {
    pub fn new(x: &BigRational, seed: &BigRational, s: &OrbitStats) -> Self {
        DynamicsRecord {
            x: rat(x),
            variant: s.variant.as_str(),
            seed: rat(seed),
            burn_in: s.burn_in,
            length: s.length,
            lyapunov: s.lyapunov,
            histogram: s.histogram.clone(),
            reseeds: s.reseeds,
            shadow_checks: s.shadow_checks,
            shadow_mismatches: s.shadow_mismatches,
            entropy_rokhlin: None,
            invariance_residual: None,
            closed_form: None,
        }
    }
}

/// One case of a verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub passed: bool,
    /// Measured values; on failure this is the counterexample.
    pub detail: serde_json::Value,
}

impl CaseReport {
    pub fn new(name: impl Into<String>, passed: bool, detail: serde_json::Value) -> Self {
        CaseReport {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub results: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn new(suite: &'static str, results: Vec<CaseReport>) -> Self {
        let failures = results.iter().filter(|c| !c.passed).count();
        SuiteReport {
            suite,
            passed: failures == 0,
            cases: results.len(),
            failures,
            results,
        }
    }
}
