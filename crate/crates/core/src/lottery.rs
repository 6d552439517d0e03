//! Simple and compound lotteries and their reduction.
//!
//! A [`Lottery`] is a normalized distribution of plausibility over ordered
//! outcomes. The same structure serves possibilistic lotteries (degrees in
//! `[0, 1]`, combined by min/max) and kappa lotteries (ranks, combined by
//! saturating sum/min); the [`Plausibility`] trait carries the difference.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::numbers::{Degree, KappaRank, Utility};

/// The scale a lottery grades its outcomes on.
pub trait Plausibility: Clone + Eq + Ord + fmt::Debug + fmt::Display {
    /// Fully plausible: degree 1, or rank 0.
    fn certain() -> Self;
    /// Impossible: degree 0, or rank infinity.
    fn impossible() -> Self;
    /// Plausibility of reaching an outcome of plausibility `inner` through a
    /// branch of plausibility `self` (min of degrees, sum of ranks).
    fn chain(&self, inner: &Self) -> Self;
    /// The more plausible of two values (max of degrees, min of ranks).
    fn either(&self, other: &Self) -> Self;

    fn is_certain(&self) -> bool {
        *self == Self::certain()
    }

    fn is_impossible(&self) -> bool {
        *self == Self::impossible()
    }
}

impl Plausibility for Degree {
    fn certain() -> Self {
        Degree::one()
    }

    fn impossible() -> Self {
        Degree::zero()
    }

    fn chain(&self, inner: &Self) -> Self {
        self.min(inner).clone()
    }

    fn either(&self, other: &Self) -> Self {
        self.max(other).clone()
    }

    fn is_certain(&self) -> bool {
        self.is_one()
    }

    fn is_impossible(&self) -> bool {
        self.is_zero()
    }
}

impl Plausibility for KappaRank {
    fn certain() -> Self {
        KappaRank::ZERO
    }

    fn impossible() -> Self {
        KappaRank::Infinite
    }

    fn chain(&self, inner: &Self) -> Self {
        self.saturating_add(*inner)
    }

    fn either(&self, other: &Self) -> Self {
        (*self).min(*other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LotteryError {
    #[error("lottery has no outcome with non-zero plausibility")]
    Empty,
    #[error("outcome {0} appears more than once")]
    DuplicateOutcome(String),
    #[error("lottery is not normalized: most plausible entry is {found}, expected {expected}")]
    NotNormalized { found: String, expected: String },
    #[error("compound lottery has no branches")]
    NoBranches,
}

/// A normalized lottery over ordered outcomes.
///
/// Only support entries are stored; impossible outcomes are dropped on
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lottery<O, P> {
    entries: BTreeMap<O, P>,
}

/// `⟨λ1/u1, ..., λn/un⟩` over scalar utilities.
pub type SimpleLottery = Lottery<Utility, Degree>;
/// `⟨κ1/μ1, ..., κn/μn⟩`: dissatisfaction rank to plausibility rank.
pub type KappaLottery = Lottery<KappaRank, KappaRank>;

impl<O, P> Lottery<O, P>
where
    O: Ord + Clone + fmt::Debug,
    P: Plausibility,
{
    pub fn new(entries: impl IntoIterator<Item = (O, P)>) -> Result<Self, LotteryError> {
        let mut map = BTreeMap::new();
        for (outcome, weight) in entries {
            if map.contains_key(&outcome) {
                return Err(LotteryError::DuplicateOutcome(format!("{outcome:?}")));
            }
            map.insert(outcome, weight);
        }
        Self::from_map(map)
    }

    fn from_map(mut map: BTreeMap<O, P>) -> Result<Self, LotteryError> {
        map.retain(|_, w| !w.is_impossible());
        let best = map
            .values()
            .fold(None::<P>, |acc, w| {
                Some(acc.map_or_else(|| w.clone(), |a| a.either(w)))
            })
            .ok_or(LotteryError::Empty)?;
        if !best.is_certain() {
            return Err(LotteryError::NotNormalized {
                found: best.to_string(),
                expected: P::certain().to_string(),
            });
        }
        Ok(Lottery { entries: map })
    }

    /// The degenerate lottery `⟨1/o⟩`.
    pub fn certain(outcome: O) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(outcome, P::certain());
        Lottery { entries }
    }

    /// Two-level reduction: `⟨w1/L1, ..., wm/Lm⟩` to a simple lottery.
    pub fn mix<'a, I>(branches: I) -> Result<Self, LotteryError>
    where
        I: IntoIterator<Item = (&'a P, &'a Lottery<O, P>)>,
        O: 'a,
        P: 'a,
    {
        let mut acc = BTreeMap::new();
        let mut any = false;
        for (weight, sub) in branches {
            any = true;
            absorb(&mut acc, weight, sub);
        }
        if !any {
            return Err(LotteryError::NoBranches);
        }
        Self::from_map(acc)
    }

    /// Plausibility of `outcome`, impossible when outside the support.
    pub fn weight(&self, outcome: &O) -> P {
        self.entries
            .get(outcome)
            .cloned()
            .unwrap_or_else(P::impossible)
    }

    /// Relabels outcomes, merging collisions with [`Plausibility::either`].
    pub fn map_outcomes<T, F>(&self, mut f: F) -> Lottery<T, P>
    where
        T: Ord + Clone + fmt::Debug,
        F: FnMut(&O) -> T,
    {
        let mut entries: BTreeMap<T, P> = BTreeMap::new();
        for (o, w) in &self.entries {
            let key = f(o);
            let merged = match entries.get(&key) {
                Some(prev) => prev.either(w),
                None => w.clone(),
            };
            entries.insert(key, merged);
        }
        Lottery { entries }
    }
}

impl<O: Ord, P: Clone> Lottery<O, P> {
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&O, &P)> + ExactSizeIterator {
        self.entries.iter()
    }

    pub fn outcomes(&self) -> impl DoubleEndedIterator<Item = &O> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn best_outcome(&self) -> &O {
        self.entries
            .keys()
            .next_back()
            .expect("lottery support is never empty")
    }

    pub fn worst_outcome(&self) -> &O {
        self.entries
            .keys()
            .next()
            .expect("lottery support is never empty")
    }
}

fn absorb<O: Ord + Clone, P: Plausibility>(
    acc: &mut BTreeMap<O, P>,
    weight: &P,
    sub: &Lottery<O, P>,
) {
    for (outcome, inner) in &sub.entries {
        let reached = weight.chain(inner);
        match acc.get_mut(outcome) {
            Some(slot) => *slot = slot.either(&reached),
            None => {
                acc.insert(outcome.clone(), reached);
            }
        }
    }
}

impl<O: Ord> Lottery<O, Degree> {
    /// `Π(L ≥ threshold)`: max degree over outcomes at least `threshold`.
    pub fn possibility_ge(&self, threshold: &O) -> Degree {
        self.entries
            .range(threshold..)
            .map(|(_, d)| d)
            .max()
            .cloned()
            .unwrap_or_else(Degree::zero)
    }

    /// `Π(L < threshold)`.
    pub fn possibility_lt(&self, threshold: &O) -> Degree {
        self.entries
            .range(..threshold)
            .map(|(_, d)| d)
            .max()
            .cloned()
            .unwrap_or_else(Degree::zero)
    }

    /// `N(L ≥ threshold) = 1 - Π(L < threshold)`.
    pub fn necessity_ge(&self, threshold: &O) -> Degree {
        self.possibility_lt(threshold).complement()
    }
}

impl<O: fmt::Display, P: fmt::Display> fmt::Display for Lottery<O, P> {
    /// `⟨0.2/0, 1/2, 0.5/9⟩`, ascending outcome order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, (o, w)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}/{o}")?;
        }
        f.write_str("⟩")
    }
}

impl<O: fmt::Display, P: fmt::Display> fmt::Debug for Lottery<O, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sub-lottery of a compound lottery.
#[derive(Clone, PartialEq, Eq)]
pub enum LotteryNode<O, P> {
    Simple(Lottery<O, P>),
    Compound(CompoundLottery<O, P>),
}

/// `⟨λ1/L1, ..., λm/Lm⟩` with arbitrarily nested sub-lotteries.
#[derive(Clone, PartialEq, Eq)]
pub struct CompoundLottery<O, P> {
    branches: Vec<(P, LotteryNode<O, P>)>,
}

impl<O, P> CompoundLottery<O, P>
where
    O: Ord + Clone + fmt::Debug,
    P: Plausibility,
{
    /// Checks normalization at this level; nested compounds were checked when
    /// they were built.
    pub fn new(branches: Vec<(P, LotteryNode<O, P>)>) -> Result<Self, LotteryError> {
        let best = branches
            .iter()
            .map(|(w, _)| w)
            .fold(None::<P>, |acc, w| {
                Some(acc.map_or_else(|| w.clone(), |a| a.either(w)))
            })
            .ok_or(LotteryError::NoBranches)?;
        if !best.is_certain() {
            return Err(LotteryError::NotNormalized {
                found: best.to_string(),
                expected: P::certain().to_string(),
            });
        }
        Ok(CompoundLottery { branches })
    }

    pub fn branches(&self) -> &[(P, LotteryNode<O, P>)] {
        &self.branches
    }

    /// Nesting depth; a compound of simple lotteries has depth 1.
    pub fn depth(&self) -> usize {
        let mut deepest = 0;
        let mut stack = vec![(self, 1usize)];
        while let Some((node, d)) = stack.pop() {
            deepest = deepest.max(d);
            for (_, sub) in &node.branches {
                if let LotteryNode::Compound(c) = sub {
                    stack.push((c, d + 1));
                }
            }
        }
        deepest
    }

    /// Bottom-up reduction to an equivalent simple lottery.
    ///
    /// Iterative post-order walk, so nesting depth is limited by memory only.
    pub fn reduce(&self) -> Lottery<O, P> {
        struct Frame<'a, O, P> {
            node: &'a CompoundLottery<O, P>,
            next: usize,
            acc: BTreeMap<O, P>,
        }

        let mut stack = vec![Frame {
            node: self,
            next: 0,
            acc: BTreeMap::new(),
        }];
        loop {
            let top = stack
                .last_mut()
                .expect("stack holds the root until it returns");
            if let Some((weight, sub)) = top.node.branches.get(top.next) {
                match sub {
                    LotteryNode::Simple(l) => {
                        absorb(&mut top.acc, weight, l);
                        top.next += 1;
                    }
                    LotteryNode::Compound(c) => {
                        stack.push(Frame {
                            node: c,
                            next: 0,
                            acc: BTreeMap::new(),
                        });
                    }
                }
                continue;
            }
            let done = stack.pop().expect("non-empty");
            let reduced = Lottery::from_map(done.acc)
                .expect("normalized compound reduces to a normalized lottery");
            match stack.last_mut() {
                None => return reduced,
                Some(parent) => {
                    let weight = &parent.node.branches[parent.next].0;
                    absorb(&mut parent.acc, weight, &reduced);
                    parent.next += 1;
                }
            }
        }
    }
}

impl<O, P> Drop for CompoundLottery<O, P> {
    // Flattens nested compounds so dropping a deep chain does not recurse.
    fn drop(&mut self) {
        let mut pending: Vec<CompoundLottery<O, P>> = Vec::new();
        let take = |branches: &mut Vec<(P, LotteryNode<O, P>)>,
                    pending: &mut Vec<CompoundLottery<O, P>>| {
            for (_, node) in branches.drain(..) {
                if let LotteryNode::Compound(c) = node {
                    pending.push(c);
                }
            }
        };
        take(&mut self.branches, &mut pending);
        while let Some(mut c) = pending.pop() {
            take(&mut c.branches, &mut pending);
        }
    }
}

impl<O: fmt::Display, P: fmt::Display> fmt::Debug for CompoundLottery<O, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, (w, node)) in self.branches.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match node {
                LotteryNode::Simple(l) => write!(f, "{w}/{l}")?,
                LotteryNode::Compound(c) => write!(f, "{w}/{c:?}")?,
            }
        }
        f.write_str("⟩")
    }
}

/// Possibilistic reduction of a compound lottery.
pub fn reduce(compound: &CompoundLottery<Utility, Degree>) -> SimpleLottery {
    compound.reduce()
}

/// Kappa reduction: `κ(μ) = min_j (κj + κ_j(μ))`.
pub fn reduce_kappa(branches: &[(KappaRank, KappaLottery)]) -> Result<KappaLottery, LotteryError> {
    let best = branches
        .iter()
        .map(|(k, _)| *k)
        .min()
        .ok_or(LotteryError::NoBranches)?;
    if best != KappaRank::ZERO {
        return Err(LotteryError::NotNormalized {
            found: best.to_string(),
            expected: "0".into(),
        });
    }
    Lottery::mix(branches.iter().map(|(k, l)| (k, l)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(entries: &[(&str, &str)]) -> SimpleLottery {
        Lottery::new(
            entries
                .iter()
                .map(|(d, u)| (u.parse().unwrap(), d.parse().unwrap())),
        )
        .unwrap()
    }

    fn kappa(entries: &[(u64, u64)]) -> KappaLottery {
        Lottery::new(
            entries
                .iter()
                .map(|&(k, mu)| (KappaRank::Finite(mu), KappaRank::Finite(k))),
        )
        .unwrap()
    }

    fn u(s: &str) -> Utility {
        s.parse().unwrap()
    }

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    #[test]
    fn possibility_of_reaching_a_threshold() {
        let l = simple(&[("0.2", "0"), ("1", "2"), ("0.5", "9")]);
        assert_eq!(l.possibility_ge(&u("2")), d("1"));
        assert_eq!(l.possibility_ge(&u("9")), d("0.5"));
        assert_eq!(l.possibility_ge(&u("10")), d("0"));
        let single = simple(&[("1", "4")]);
        assert_eq!(single.possibility_ge(&u("4")), d("1"));
    }

    #[test]
    fn necessity_of_reaching_a_threshold() {
        let l = simple(&[("0.2", "0"), ("0.5", "0.51"), ("1", "1")]);
        assert_eq!(l.necessity_ge(&u("0.51")), d("0.8"));
        assert_eq!(l.necessity_ge(&u("1")), d("0.5"));
        assert_eq!(l.necessity_ge(&u("0")), d("1"));
    }

    #[test]
    fn construction_rejects_bad_input() {
        let r: Result<SimpleLottery, _> = Lottery::new([(u("1"), d("0.5"))]);
        assert!(matches!(r, Err(LotteryError::NotNormalized { .. })));
        let r: Result<SimpleLottery, _> = Lottery::new([(u("1"), d("1")), (u("1"), d("0.5"))]);
        assert!(matches!(r, Err(LotteryError::DuplicateOutcome(_))));
        let r: Result<SimpleLottery, _> = Lottery::new([(u("1"), d("0"))]);
        assert_eq!(r, Err(LotteryError::Empty));
        // zero-degree entries are dropped
        let l = simple(&[("1", "1"), ("0", "3")]);
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn reduces_merged_lotteries() {
        let l1 = simple(&[("0.2", "0"), ("1", "2"), ("0.5", "9")]);
        let l2 = simple(&[("0.4", "4"), ("1", "7")]);
        let c = CompoundLottery::new(vec![
            (d("1"), LotteryNode::Simple(l1)),
            (d("1"), LotteryNode::Simple(l2)),
        ])
        .unwrap();
        let expected = simple(&[
            ("0.2", "0"),
            ("1", "2"),
            ("0.4", "4"),
            ("1", "7"),
            ("0.5", "9"),
        ]);
        assert_eq!(reduce(&c), expected);
    }

    #[test]
    fn reduces_the_choquet_trap() {
        let lp = simple(&[("0.1", "0"), ("0.6", "0.5"), ("1", "1")]);
        let lpp = simple(&[("0.01", "0"), ("1", "1")]);
        let c = CompoundLottery::new(vec![
            (d("0.55"), LotteryNode::Simple(lp)),
            (d("1"), LotteryNode::Simple(lpp)),
        ])
        .unwrap();
        assert_eq!(
            c.reduce(),
            simple(&[("0.1", "0"), ("0.55", "0.5"), ("1", "1")])
        );
    }

    #[test]
    fn single_certain_branch_is_identity() {
        let l = simple(&[("0.3", "0"), ("1", "0.5")]);
        let c = CompoundLottery::new(vec![(d("1"), LotteryNode::Simple(l.clone()))]).unwrap();
        assert_eq!(c.reduce(), l);
    }

    #[test]
    fn compound_rejects_unnormalized_branches() {
        let l = simple(&[("1", "0")]);
        let r = CompoundLottery::new(vec![(d("0.9"), LotteryNode::Simple(l))]);
        assert!(matches!(r, Err(LotteryError::NotNormalized { .. })));
        let r = CompoundLottery::<Utility, Degree>::new(vec![]);
        assert!(matches!(r, Err(LotteryError::NoBranches)));
    }

    #[test]
    fn kappa_reduction_examples() {
        let r = reduce_kappa(&[
            (KappaRank::Finite(0), kappa(&[(0, 5)])),
            (KappaRank::Finite(2), kappa(&[(0, 1)])),
        ])
        .unwrap();
        assert_eq!(r, kappa(&[(0, 5), (2, 1)]));

        let k = kappa(&[(1, 3), (0, 7)]);
        assert_eq!(reduce_kappa(&[(KappaRank::ZERO, k.clone())]).unwrap(), k);

        let r = reduce_kappa(&[
            (KappaRank::Finite(0), kappa(&[(1, 3), (0, 7)])),
            (KappaRank::Finite(1), kappa(&[(0, 3)])),
        ])
        .unwrap();
        assert_eq!(r, kappa(&[(1, 3), (0, 7)]));
    }

    #[test]
    fn kappa_reduction_rejects_unnormalized_branches() {
        let r = reduce_kappa(&[(KappaRank::Finite(1), kappa(&[(0, 5)]))]);
        assert!(matches!(r, Err(LotteryError::NotNormalized { .. })));
        assert_eq!(reduce_kappa(&[]), Err(LotteryError::NoBranches));
    }

    #[test]
    fn deep_nesting_does_not_overflow_the_stack() {
        let leaf = simple(&[("1", "1")]);
        let mut node =
            CompoundLottery::new(vec![(d("1"), LotteryNode::Simple(leaf.clone()))]).unwrap();
        for _ in 0..200_000 {
            node = CompoundLottery::new(vec![(d("1"), LotteryNode::Compound(node))]).unwrap();
        }
        assert_eq!(node.depth(), 200_001);
        assert_eq!(node.reduce(), leaf);
    }

    #[test]
    fn display_is_sorted_by_utility() {
        let l = simple(&[("0.5", "9"), ("0.2", "0"), ("1", "2")]);
        assert_eq!(l.to_string(), "⟨0.2/0, 1/2, 0.5/9⟩");
    }
}
