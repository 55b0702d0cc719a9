//! Forward and backward Farey polynomial trees.
//!
//! Forward vertices stay in the canonical form produced by the maps
//! themselves. Backward vertices are always reduced: polynomial gcd and
//! integer content removed, leading coefficient of `q` positive.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeVariant {
    Forward,
    Backward,
}

impl TreeVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            TreeVariant::Forward => "forward",
            TreeVariant::Backward => "backward",
        }
    }
}

impl fmt::Display for TreeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TreeVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(TreeVariant::Forward),
            "backward" => Ok(TreeVariant::Backward),
            _ => Err(Error::Parse(alloc::format!("unknown variant {s:?}"))),
        }
    }
}

/// Which of the two maps produced a child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Zero,
    One,
}

/// A vertex `p(x)/q(x)` of one of the trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    p: IntPoly,
    q: IntPoly,
    variant: TreeVariant,
}

impl RatFunc {
    /// Builds a vertex. Backward vertices are reduced; forward ones are
    /// stored as given, after cancelling any common power of `x`.
    pub fn new(p: IntPoly, q: IntPoly, variant: TreeVariant) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match variant {
            TreeVariant::Forward => {
                let k = p.x_valuation().min(q.x_valuation());
                let (p, q) = if k > 0 && !p.is_zero() {
                    (p.shift_down(k).unwrap(), q.shift_down(k).unwrap())
                } else {
                    (p, q)
                };
                RatFunc { p, q, variant }
            }
            TreeVariant::Backward => reduce_backward(p, q),
        })
    }

    /// The seed `1/1` from which labels are composed.
    pub fn forward_seed() -> Self {
        RatFunc {
            p: IntPoly::one(),
            q: IntPoly::one(),
            variant: TreeVariant::Forward,
        }
    }

    /// Root of the tree: `x/(x+1)` forward, `1/(x+1)` backward.
    pub fn root(variant: TreeVariant) -> Self {
        let q = IntPoly::from_i64s(&[1, 1]);
        let p = match variant {
            TreeVariant::Forward => IntPoly::x(),
            TreeVariant::Backward => IntPoly::one(),
        };
        RatFunc { p, q, variant }
    }

    pub fn p(&self) -> &IntPoly {
        &self.p
    }

    pub fn q(&self) -> &IntPoly {
        &self.q
    }

    pub fn variant(&self) -> TreeVariant {
        self.variant
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let q = self.q.eval(x);
        if q.is_zero() {
            return None;
        }
        Some(self.p.eval(x) / q)
    }

    pub fn phi(&self, branch: Branch) -> Self {
        match branch {
            Branch::Zero => self.phi0(),
            Branch::One => self.phi1(),
        }
    }

    pub fn phi0(&self) -> Self {
        match self.variant {
            TreeVariant::Forward => {
                if self.p.constant_term().is_zero() {
                    // q / (q + p/x)
                    let p_over_x = self.p.shift_down(1).unwrap();
                    self.forward(self.q.clone(), &self.q + &p_over_x)
                } else {
                    // xq / (xq + p)
                    let xq = self.q.shift_up(1);
                    let den = &xq + &self.p;
                    self.forward(xq, den)
                }
            }
            TreeVariant::Backward => {
                // ((x-1)p + q) / ((x+1)q - p)
                let xm1 = IntPoly::from_i64s(&[-1, 1]);
                let xp1 = IntPoly::from_i64s(&[1, 1]);
                let num = &xm1 * &self.p + &self.q;
                let den = &xp1 * &self.q - &self.p;
                reduce_backward(num, den)
            }
        }
    }

    pub fn phi1(&self) -> Self {
        self.phi1_pow(1)
    }

    /// `Φ1` applied `k` times, in closed form.
    pub fn phi1_pow(&self, k: u64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let kk = BigInt::from(k);
        match self.variant {
            TreeVariant::Forward => {
                if self.p.constant_term().is_zero() {
                    // p / (q + k p/x)
                    let p_over_x = self.p.shift_down(1).unwrap();
                    self.forward(self.p.clone(), &self.q + &p_over_x.scale(&kk))
                } else {
                    // xp / (xq + k p)
                    let xp = self.p.shift_up(1);
                    let den = self.q.shift_up(1) + self.p.scale(&kk);
                    self.forward(xp, den)
                }
            }
            TreeVariant::Backward => {
                // Φ1(p/q) = p/(xq + p) is the Möbius map s -> s/(x+s);
                // its k-th power is s -> s/(x^k + (1 + x + ... + x^(k-1)) s).
                let kz = usize::try_from(k).expect("power fits in usize");
                let geometric = IntPoly::new(alloc::vec![BigInt::one(); kz]);
                let den = self.q.shift_up(kz) + &geometric * &self.p;
                reduce_backward(self.p.clone(), den)
            }
        }
    }

    fn forward(&self, p: IntPoly, q: IntPoly) -> Self {
        RatFunc {
            p,
            q,
            variant: TreeVariant::Forward,
        }
    }

    /// Common degree of `p` and `q` (the larger one if they differ).
    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0).max(self.q.degree().unwrap_or(0))
    }
}

fn reduce_backward(p: IntPoly, q: IntPoly) -> RatFunc {
    let g = p.gcd(&q);
    let (mut p, mut q) = if g.degree().unwrap_or(0) > 0 {
        (p.exact_div(&g).unwrap(), q.exact_div(&g).unwrap())
    } else {
        (p, q)
    };
    let c = {
        use num_integer::Integer;
        p.content().gcd(&q.content())
    };
    let c = if q.leading().is_some_and(Signed::is_negative) { -c } else { c };
    if !c.is_one() && !c.is_zero() {
        p = p.exact_div(&IntPoly::constant(c.clone())).unwrap();
        q = q.exact_div(&IntPoly::constant(c)).unwrap();
    }
    RatFunc {
        p,
        q,
        variant: TreeVariant::Backward,
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.p, self.q)
    }
}

/// Digit string `[a1, ..., ak]` addressing a forward vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(Vec<u64>);

impl VertexLabel {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if digits.contains(&0) {
            return Err(Error::ZeroDigit);
        }
        Ok(VertexLabel(digits))
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    /// Rewrites a trailing 1 into the previous digit:
    /// `[.., a, 1]` becomes `[.., a + 1]`.
    pub fn canonical(&self) -> Self {
        let mut d = self.0.clone();
        while d.len() >= 2 && *d.last().unwrap() == 1 {
            d.pop();
            *d.last_mut().unwrap() += 1;
        }
        VertexLabel(d)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.len() == 1 || *self.0.last().unwrap() >= 2
    }

    /// Level in the tree, root `[2]` at level 1.
    pub fn level(&self) -> u64 {
        self.0.iter().sum::<u64>() - 1
    }

    /// Label of the `Φ0` child: a leading 1 is prepended.
    pub fn child0(&self) -> Self {
        let mut d = Vec::with_capacity(self.0.len() + 1);
        d.push(1);
        d.extend_from_slice(&self.0);
        VertexLabel(d)
    }

    /// Label of the `Φ1` child: the first digit grows by one.
    pub fn child1(&self) -> Self {
        let mut d = self.0.clone();
        d[0] += 1;
        VertexLabel(d)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Path from the root as a sequence of branch choices, written `"0110"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchWord(Vec<Branch>);

impl BranchWord {
    pub fn new(branches: Vec<Branch>) -> Self {
        BranchWord(branches)
    }

    pub fn branches(&self) -> &[Branch] {
        &self.0
    }

    pub fn push(&self, b: Branch) -> Self {
        let mut v = self.0.clone();
        v.push(b);
        BranchWord(v)
    }

    pub fn level(&self) -> usize {
        self.0.len() + 1
    }
}

impl fmt::Display for BranchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .0
            .iter()
            .map(|b| match b {
                Branch::Zero => '0',
                Branch::One => '1',
            })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for BranchWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Branch::Zero),
                '1' => Ok(Branch::One),
                _ => Err(Error::Parse(alloc::format!("branch word {s:?} must use 0/1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BranchWord)
    }
}

/// Forward vertex `Φ1^(a1-1) ∘ Φ0 ∘ ... ∘ Φ0 ∘ Φ1^(ak-1) (1/1)`.
pub fn vertex_from_label(label: &VertexLabel, variant: TreeVariant) -> Result<RatFunc> {
    if variant == TreeVariant::Backward {
        return Err(Error::NoBackwardLabels);
    }
    let digits = label.digits();
    let (last, rest) = digits.split_last().ok_or(Error::EmptyLabel)?;
    let mut v = RatFunc::forward_seed().phi1_pow(last - 1);
    for a in rest.iter().rev() {
        v = v.phi0().phi1_pow(a - 1);
    }
    Ok(v)
}

/// Vertex reached from the root by applying the word's maps in order.
pub fn vertex_from_branch_word(word: &BranchWord, variant: TreeVariant) -> RatFunc {
    word.branches()
        .iter()
        .fold(RatFunc::root(variant), |v, &b| v.phi(b))
}

/// One enumerated vertex with its address.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub level: usize,
    pub word: BranchWord,
    /// Canonical digit label, present for forward vertices.
    pub label: Option<VertexLabel>,
    pub vertex: RatFunc,
}

/// Breadth-first stream of the first `depth` levels; the `Φ1` child is
/// emitted before the `Φ0` child.
pub struct TreeLevels {
    depth: usize,
    queue: VecDeque<TreeNode>,
}

impl Iterator for TreeLevels {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        let node = self.queue.pop_front()?;
        if node.level < self.depth {
            for b in [Branch::One, Branch::Zero] {
                let label = node.label.as_ref().map(|l| match b {
                    Branch::One => l.child1(),
                    Branch::Zero => l.child0(),
                });
                self.queue.push_back(TreeNode {
                    level: node.level + 1,
                    word: node.word.push(b),
                    label,
                    vertex: node.vertex.phi(b),
                });
            }
        }
        Some(node)
    }
}

pub fn enumerate_levels(variant: TreeVariant, depth: usize) -> TreeLevels {
    let mut queue = VecDeque::new();
    if depth >= 1 {
        queue.push_back(TreeNode {
            level: 1,
            word: BranchWord::default(),
            label: (variant == TreeVariant::Forward).then(|| VertexLabel(alloc::vec![2])),
            vertex: RatFunc::root(variant),
        });
    }
    TreeLevels { depth, queue }
}

/// Verdicts on the forward-vertex coefficient pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub equal_degrees: bool,
    /// Every coefficient positive, except that `p(0)` may vanish.
    pub positive_coefficients: bool,
    /// `q_i > p_i` for every non-leading term.
    pub dominance: bool,
    pub leading_ones: bool,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.equal_degrees && self.positive_coefficients && self.dominance && self.leading_ones
    }
}

pub fn check_structural_invariants(v: &RatFunc) -> Result<StructureReport> {
    if v.variant != TreeVariant::Forward {
        return Err(Error::OutOfDomain("structural checks apply to forward vertices"));
    }
    let (p, q) = (&v.p, &v.q);
    let (dp, dq) = (p.degree(), q.degree());
    let equal_degrees = dp.is_some() && dp == dq;
    let positive_coefficients = p
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_positive() || (i == 0 && c.is_zero()))
        && !q.is_zero()
        && q.coeffs().iter().all(Signed::is_positive);
    let n = dp.unwrap_or(0).max(dq.unwrap_or(0));
    let dominance = (0..n).all(|i| q.coeff(i) > p.coeff(i));
    let leading_ones = p.leading().is_some_and(One::is_one) && q.leading().is_some_and(One::is_one);
    Ok(StructureReport {
        equal_degrees,
        positive_coefficients,
        dominance,
        leading_ones,
    })
}

/// Numerators of `v'` and of `x v' - v`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityWitness {
    /// `p'q - pq'`
    pub num_deriv: IntPoly,
    /// `x(p'q - pq') - pq`
    pub num_defect: IntPoly,
}

pub fn monotonicity_witnesses(v: &RatFunc) -> MonotonicityWitness {
    let num_deriv = &v.p.derivative() * &v.q - &v.p * &v.q.derivative();
    let num_defect = num_deriv.shift_up(1) - &v.p * &v.q;
    MonotonicityWitness {
        num_deriv,
        num_defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use alloc::vec;

    fn fwd(p: &[i64], q: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64s(p), IntPoly::from_i64s(q), TreeVariant::Forward).unwrap()
    }

    fn bwd(p: &[i64], q: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64s(p), IntPoly::from_i64s(q), TreeVariant::Backward).unwrap()
    }

    fn label(d: &[u64]) -> VertexLabel {
        VertexLabel::new(d.to_vec()).unwrap()
    }

    #[test]
    fn forward_maps_on_depth_three_vertices() {
        assert_eq!(fwd(&[0, 1], &[1, 1]).phi0(), fwd(&[1, 1], &[2, 1]));
        assert_eq!(fwd(&[1, 1], &[2, 1]).phi0(), fwd(&[0, 2, 1], &[1, 3, 1]));
        assert_eq!(fwd(&[0, 1], &[1, 1]).phi1(), fwd(&[0, 1], &[2, 1]));
        assert_eq!(fwd(&[0, 1], &[3, 1]).phi1(), fwd(&[0, 1], &[4, 1]));
    }

    #[test]
    fn backward_maps_reduce() {
        let root = RatFunc::root(TreeVariant::Backward);
        assert_eq!(root.phi0(), bwd(&[2], &[2, 1]));
        assert_eq!(bwd(&[3], &[3, 1]).phi0(), bwd(&[4], &[4, 1]));
        assert_eq!(root.phi1(), bwd(&[1], &[1, 1, 1]));
    }

    #[test]
    fn backward_reduction_is_idempotent() {
        let v = bwd(&[0, 2], &[0, 2, 1]);
        assert_eq!(v, bwd(&[2], &[2, 1]));
        let again = RatFunc::new(v.p().clone(), v.q().clone(), TreeVariant::Backward).unwrap();
        assert_eq!(again, v);
        // Sign normalisation.
        assert_eq!(bwd(&[-1], &[-1, -1]), RatFunc::root(TreeVariant::Backward));
    }

    #[test]
    fn phi1_power_matches_iteration() {
        for variant in [TreeVariant::Forward, TreeVariant::Backward] {
            for word in ["", "0", "01", "100"] {
                let v = vertex_from_branch_word(&word.parse().unwrap(), variant);
                let mut it = v.clone();
                for k in 1..6 {
                    it = it.phi1();
                    assert_eq!(v.phi1_pow(k), it, "{variant} {word} k={k}");
                }
            }
        }
    }

    #[test]
    fn labels_build_expected_vertices() {
        let f = TreeVariant::Forward;
        assert_eq!(vertex_from_label(&label(&[2]), f).unwrap(), fwd(&[0, 1], &[1, 1]));
        assert_eq!(vertex_from_label(&label(&[5]), f).unwrap(), fwd(&[0, 1], &[4, 1]));
        // The cubic plotted with its poles near -8.259, -3.252, -1.489.
        assert_eq!(
            vertex_from_label(&label(&[1, 2, 6, 5]), f).unwrap(),
            fwd(&[20, 34, 12, 1], &[40, 44, 13, 1])
        );
        assert_eq!(
            vertex_from_label(&label(&[1, 2, 6, 4]), f).unwrap(),
            fwd(&[15, 27, 11, 1], &[30, 36, 12, 1])
        );
        assert_eq!(vertex_from_label(&label(&[1]), f).unwrap(), RatFunc::forward_seed());
        assert_eq!(
            vertex_from_label(&label(&[2]), TreeVariant::Backward),
            Err(Error::NoBackwardLabels)
        );
    }

    #[test]
    fn label_validation() {
        assert_eq!(VertexLabel::new(vec![]), Err(Error::EmptyLabel));
        assert_eq!(VertexLabel::new(vec![2, 0]), Err(Error::ZeroDigit));
        assert_eq!(label(&[3, 1, 1]).canonical(), label(&[3, 2]));
        assert_eq!(label(&[3, 1]).canonical(), label(&[4]));
        assert_eq!(label(&[1, 1]).canonical(), label(&[2]));
        assert!(!label(&[2, 1]).is_canonical());
    }

    #[test]
    fn alias_rule() {
        for d in [vec![1, 2, 6, 4], vec![3], vec![2, 2, 5], vec![1, 1, 1, 3]] {
            let mut aliased = d.clone();
            *aliased.last_mut().unwrap() -= 1;
            aliased.push(1);
            assert_eq!(
                vertex_from_label(&label(&d), TreeVariant::Forward),
                vertex_from_label(&label(&aliased), TreeVariant::Forward)
            );
        }
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let fwd2: Vec<_> = enumerate_levels(TreeVariant::Forward, 2).collect();
        assert_eq!(fwd2.len(), 3);
        assert_eq!(fwd2[1].vertex, fwd(&[0, 1], &[2, 1]));
        assert_eq!(fwd2[2].vertex, fwd(&[1, 1], &[2, 1]));
        let bwd2: Vec<_> = enumerate_levels(TreeVariant::Backward, 2).collect();
        assert_eq!(bwd2[1].vertex, bwd(&[1], &[1, 1, 1]));
        assert_eq!(bwd2[2].vertex, bwd(&[2], &[2, 1]));
        assert_eq!(enumerate_levels(TreeVariant::Backward, 1).count(), 1);
        assert_eq!(enumerate_levels(TreeVariant::Forward, 6).count(), 63);
    }

    #[test]
    fn enumerated_labels_match_vertices() {
        for node in enumerate_levels(TreeVariant::Forward, 7) {
            let l = node.label.clone().unwrap();
            assert!(l.is_canonical());
            assert_eq!(l.level() as usize, node.level);
            assert_eq!(vertex_from_label(&l, TreeVariant::Forward).unwrap(), node.vertex);
            assert_eq!(vertex_from_branch_word(&node.word, TreeVariant::Forward), node.vertex);
        }
    }

    #[test]
    fn structural_reports() {
        assert!(check_structural_invariants(&fwd(&[0, 1], &[1, 1])).unwrap().passed());
        assert!(check_structural_invariants(&fwd(&[0, 3, 1], &[2, 4, 1])).unwrap().passed());
        let bad = check_structural_invariants(&fwd(&[2, 1], &[1, 1])).unwrap();
        assert!(!bad.dominance);
        assert!(bad.equal_degrees && bad.leading_ones && bad.positive_coefficients);
        assert!(check_structural_invariants(&RatFunc::root(TreeVariant::Backward)).is_err());
    }

    #[test]
    fn monotonicity_witness_values() {
        let w = monotonicity_witnesses(&fwd(&[0, 1], &[1, 1]));
        assert_eq!(w.num_deriv, IntPoly::one());
        assert_eq!(w.num_defect, IntPoly::from_i64s(&[0, 0, -1]));
        let w = monotonicity_witnesses(&fwd(&[1, 1], &[2, 1]));
        assert_eq!(w.num_deriv, IntPoly::one());
        assert_eq!(w.num_defect, IntPoly::from_i64s(&[-2, -2, -1]));
        for a in 2..8 {
            let v = vertex_from_label(&label(&[a]), TreeVariant::Forward).unwrap();
            assert_eq!(monotonicity_witnesses(&v).num_deriv, IntPoly::from_i64s(&[a as i64 - 1]));
        }
    }

    #[test]
    fn nesting_identity_on_samples() {
        // Φ1^(a-1) ∘ Φ0 (v) = x / (x + (a-1) + v) at rational points.
        let v = vertex_from_label(&label(&[1, 2, 6, 5]), TreeVariant::Forward).unwrap();
        for a in 1..5u64 {
            let w = v.phi0().phi1_pow(a - 1);
            for x in [ratio(1, 3), int(2), ratio(7, 5)] {
                let expect = &x / (&x + int(a as i64 - 1) + v.eval(&x).unwrap());
                assert_eq!(w.eval(&x).unwrap(), expect);
            }
        }
    }
}
