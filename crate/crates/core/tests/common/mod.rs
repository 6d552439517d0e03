//! Independent reference implementations used as test oracles.
//!
//! Lotteries are plain vectors of `(outcome, plausibility)` pairs that may
//! repeat outcomes and carry zero-degree entries; every criterion is computed
//! from its textbook formula without touching the library's criteria code.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use possdt::dtree::{DecisionTree, EdgeWeight, LeafPayload, Node, NodeId, Strategy};
use possdt::KappaRank;

pub type Q = BigRational;

pub fn q(text: &str) -> Q {
    possdt::numbers::parse_rational(text).unwrap()
}

pub fn max_q<'a>(xs: impl Iterator<Item = &'a Q>) -> Q {
    xs.fold(Q::zero(), |m, x| if *x > m { x.clone() } else { m })
}

/// Pairs `(utility, degree)`.
pub type NaiveLottery = Vec<(Q, Q)>;
/// Pairs `((top, bottom), degree)`.
pub type NaiveBinary = Vec<((Q, Q), Q)>;
/// Pairs `(mu, kappa)`; `None` is infinity.
pub type NaiveKappa = Vec<(Option<u64>, Option<u64>)>;

pub fn pi_ge(l: &NaiveLottery, x: &Q) -> Q {
    max_q(l.iter().filter(|(u, _)| u >= x).map(|(_, d)| d))
}

pub fn n_ge(l: &NaiveLottery, x: &Q) -> Q {
    Q::one() - max_q(l.iter().filter(|(u, _)| u < x).map(|(_, d)| d))
}

/// `min_i max(u_i, 1 - λ_i)`.
pub fn upes(l: &NaiveLottery) -> Q {
    l.iter()
        .map(|(u, d)| std::cmp::max(u.clone(), Q::one() - d))
        .min()
        .unwrap()
}

/// `max_i min(u_i, λ_i)`.
pub fn uopt(l: &NaiveLottery) -> Q {
    l.iter()
        .map(|(u, d)| std::cmp::min(u.clone(), d.clone()))
        .max()
        .unwrap()
}

fn distinct_utilities(l: &NaiveLottery) -> Vec<Q> {
    let mut us: Vec<Q> = l
        .iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(u, _)| u.clone())
        .collect();
    us.sort();
    us.dedup();
    us
}

/// `Σ u_(i) · (μ(L ≥ u_(i)) − μ(L ≥ u_(i+1)))`, the non-telescoped form.
pub fn choquet(l: &NaiveLottery, necessity: bool) -> Q {
    let us = distinct_utilities(l);
    let mu = |x: &Q| if necessity { n_ge(l, x) } else { pi_ge(l, x) };
    let mut total = Q::zero();
    for (i, u) in us.iter().enumerate() {
        let next = us.get(i + 1).map(&mu).unwrap_or_else(Q::zero);
        total += u * (mu(u) - next);
    }
    total
}

pub fn pu(l: &NaiveBinary) -> (Q, Q) {
    let top = max_q(l.iter().map(|((t, _), d)| std::cmp::min(t, d)));
    let bottom = max_q(l.iter().map(|((_, b), d)| std::cmp::min(b, d)));
    (top, bottom)
}

/// The weak order on binary utilities, clause by clause.
pub fn binary_weakly_better(u: &(Q, Q), v: &(Q, Q)) -> bool {
    let one = Q::one();
    let (ut, ub) = u;
    let (vt, vb) = v;
    (*ut == one && *vt == one && ub <= vb)
        || (ut >= vt && *ub == one && *vb == one)
        || (*ut == one && *vb == one && *vt < one)
}

pub fn embed(u: &Q, optimistic: bool) -> (Q, Q) {
    if optimistic {
        (u.clone(), Q::one())
    } else {
        (Q::one(), Q::one() - u)
    }
}

pub fn embed_lottery(l: &NaiveLottery, optimistic: bool) -> NaiveBinary {
    l.iter()
        .map(|(u, d)| (embed(u, optimistic), d.clone()))
        .collect()
}

/// `Π(L1 ≥ L2)` and `N(L1 ≥ L2)`.
pub fn overtake(a: &NaiveLottery, b: &NaiveLottery) -> (Q, Q) {
    let mut pi = Q::zero();
    let mut pi_less = Q::zero();
    for (u, da) in a {
        for (v, db) in b {
            let m = std::cmp::min(da, db).clone();
            if u >= v && m > pi {
                pi = m.clone();
            }
            if u < v && m > pi_less {
                pi_less = m;
            }
        }
    }
    (pi, Q::one() - pi_less)
}

pub fn kappa_add(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    Some(a? + b?)
}

/// `None` sorts after every finite rank.
pub fn kappa_cmp(a: Option<u64>, b: Option<u64>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(&y),
    }
}

pub fn omeu(l: &NaiveKappa) -> Option<u64> {
    l.iter()
        .map(|(mu, k)| kappa_add(*mu, *k))
        .min_by(|a, b| kappa_cmp(*a, *b))
        .unwrap()
}

/// Criterion-agnostic oracle lottery.
#[derive(Debug, Clone)]
pub enum Naive {
    Scalar(NaiveLottery),
    Binary(NaiveBinary),
    Kappa(NaiveKappa),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Upes,
    Uopt,
    PuOptimistic,
    PuPessimistic,
    Pu,
    Ln,
    Lpi,
    Chn,
    Chpi,
    Omeu,
}

/// `Some(true)` when `a` is strictly preferred to `b`.
pub fn strictly_prefers(oracle: Oracle, a: &Naive, b: &Naive) -> bool {
    match (oracle, a, b) {
        (Oracle::Upes, Naive::Scalar(x), Naive::Scalar(y)) => upes(x) > upes(y),
        (Oracle::Uopt, Naive::Scalar(x), Naive::Scalar(y)) => uopt(x) > uopt(y),
        (Oracle::Chn, Naive::Scalar(x), Naive::Scalar(y)) => choquet(x, true) > choquet(y, true),
        (Oracle::Chpi, Naive::Scalar(x), Naive::Scalar(y)) => choquet(x, false) > choquet(y, false),
        (Oracle::PuOptimistic | Oracle::PuPessimistic, Naive::Scalar(x), Naive::Scalar(y)) => {
            let opt = oracle == Oracle::PuOptimistic;
            let (px, py) = (pu(&embed_lottery(x, opt)), pu(&embed_lottery(y, opt)));
            binary_weakly_better(&px, &py) && !binary_weakly_better(&py, &px)
        }
        (Oracle::Pu, Naive::Binary(x), Naive::Binary(y)) => {
            let (px, py) = (pu(x), pu(y));
            binary_weakly_better(&px, &py) && !binary_weakly_better(&py, &px)
        }
        (Oracle::Ln, Naive::Scalar(x), Naive::Scalar(y)) => overtake(x, y).1 > overtake(y, x).1,
        (Oracle::Lpi, Naive::Scalar(x), Naive::Scalar(y)) => overtake(x, y).0 > overtake(y, x).0,
        (Oracle::Omeu, Naive::Kappa(x), Naive::Kappa(y)) => {
            kappa_cmp(omeu(x), omeu(y)) == Ordering::Less
        }
        _ => panic!("oracle {oracle:?} does not apply to these lotteries"),
    }
}

fn rank(k: &KappaRank) -> Option<u64> {
    k.finite()
}

/// Reduction of a strategy by direct recursion over the tree, keeping every
/// path as a separate entry.
pub fn naive_strategy_lottery(tree: &DecisionTree, strategy: &Strategy) -> Naive {
    fn walk(
        tree: &DecisionTree,
        strategy: &Strategy,
        id: &NodeId,
        out: &mut Vec<(LeafPayload, Vec<EdgeWeight>)>,
        path: &mut Vec<EdgeWeight>,
    ) {
        match tree.node(id).unwrap() {
            Node::Leaf(p) => out.push((p.clone(), path.clone())),
            Node::Decision { .. } => walk(tree, strategy, strategy.choice(id).unwrap(), out, path),
            Node::Chance { edges } => {
                for e in edges {
                    path.push(e.weight.clone());
                    walk(tree, strategy, &e.child, out, path);
                    path.pop();
                }
            }
        }
    }
    let mut paths = Vec::new();
    walk(tree, strategy, tree.root(), &mut paths, &mut Vec::new());

    let degree_of = |path: &[EdgeWeight]| -> Q {
        path.iter()
            .map(|w| match w {
                EdgeWeight::Degree(d) => d.value().clone(),
                EdgeWeight::Rank(_) => panic!("rank on possibilistic edge"),
            })
            .fold(Q::one(), |m, d| if d < m { d } else { m })
    };
    let kappa_of = |path: &[EdgeWeight]| -> Option<u64> {
        path.iter().try_fold(0u64, |acc, w| match w {
            EdgeWeight::Rank(k) => rank(k).map(|r| acc + r),
            EdgeWeight::Degree(_) => panic!("degree on kappa edge"),
        })
    };

    match &paths[0].0 {
        LeafPayload::Utility(_) => Naive::Scalar(
            paths
                .iter()
                .map(|(p, path)| match p {
                    LeafPayload::Utility(u) => (u.value().clone(), degree_of(path)),
                    _ => panic!("mixed leaves"),
                })
                .collect(),
        ),
        LeafPayload::Binary(_) => Naive::Binary(
            paths
                .iter()
                .map(|(p, path)| match p {
                    LeafPayload::Binary(b) => (
                        (b.top().value().clone(), b.bottom().value().clone()),
                        degree_of(path),
                    ),
                    _ => panic!("mixed leaves"),
                })
                .collect(),
        ),
        LeafPayload::Mu(_) => Naive::Kappa(
            paths
                .iter()
                .map(|(p, path)| match p {
                    LeafPayload::Mu(mu) => (rank(mu), kappa_of(path)),
                    _ => panic!("mixed leaves"),
                })
                .collect(),
        ),
    }
}
