//! Strategy optimization: backward induction for weakly monotone criteria,
//! exhaustive enumeration for everything else.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::criteria::{
    self, AnyLottery, BinaryUtility, Criterion, CriterionError, CriterionId, CriterionValue,
    Preference,
};
use crate::dtree::{
    check_criterion, count_strategies, enumerate_strategies, strategy_lottery_unchecked,
    DecisionTree, Node, NodeId, PayloadKind, Strategy, TreeError, TreeOutcome, Violation,
};
use crate::lottery::{Lottery, Plausibility};
use crate::numbers::{KappaRank, Utility};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dp,
    Exhaustive,
    /// Backward induction applied to a criterion it is not sound for.
    HeuristicDp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dp => "dp",
            Method::Exhaustive => "exhaustive",
            Method::HeuristicDp => "heuristic-dp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MethodChoice {
    /// Backward induction for weakly monotone criteria, enumeration otherwise.
    #[default]
    Auto,
    Dp,
    Exhaustive,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "dp" => Ok(MethodChoice::Dp),
            "exhaustive" => Ok(MethodChoice::Exhaustive),
            other => Err(format!(
                "unknown method `{other}` (expected auto, dp or exhaustive)"
            )),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Allow backward induction under Ch_N and Ch_Π.
    pub unsafe_dp: bool,
    /// Refuse exhaustive search over more strategies than this.
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes_visited: usize,
    pub edges_visited: usize,
    pub strategies_examined: u64,
    pub elapsed: Duration,
}

impl fmt::Display for SolverStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes visited: {}, edges visited: {}, strategies examined: {}, time: {:.3} ms",
            self.nodes_visited,
            self.edges_visited,
            self.strategies_examined,
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub strategy: Strategy,
    pub value: CriterionValue,
    pub reduced: AnyLottery,
    pub method: Method,
    pub stats: SolverStats,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error("criterion does not fit the tree: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    CriterionFit(Vec<Violation>),
    #[error("{0} is not weakly monotone, so backward induction may return a suboptimal strategy; use exhaustive search or allow unsafe dp")]
    NonMonotone(CriterionId),
    #[error("tree has {count} strategies, more than the budget of {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },
}

fn prepare(tree: &DecisionTree, criterion: &Criterion) -> Result<(), SolverError> {
    criterion.check()?;
    let report = tree.validate();
    if !report.is_valid() {
        return Err(TreeError::InvalidTree(report).into());
    }
    let misfit = check_criterion(tree, criterion);
    if misfit.is_empty() {
        Ok(())
    } else {
        Err(SolverError::CriterionFit(misfit))
    }
}

/// Keeps the best lottery seen so far; a later candidate replaces it only when
/// strictly preferred.
struct Incumbent {
    lottery: AnyLottery,
    value: CriterionValue,
}

fn strictly_better(
    criterion: &Criterion,
    lottery: &AnyLottery,
    value: &CriterionValue,
    than: &Incumbent,
) -> Result<bool, SolverError> {
    let pref = if criterion.id.is_pairwise_only() {
        criteria::compare(criterion, lottery, &than.lottery)?
    } else {
        criteria::compare_values(value, &than.value)
    };
    Ok(pref == Preference::FirstStrictlyPreferred)
}

/// Keeps the first action and switches only on strict improvement over the
/// current choice.
fn select<R>(criterion: &Criterion, candidates: &[(Incumbent, R)]) -> Result<usize, SolverError> {
    let mut best = 0;
    for k in 1..candidates.len() {
        if strictly_better(
            criterion,
            &candidates[k].0.lottery,
            &candidates[k].0.value,
            &candidates[best].0,
        )? {
            best = k;
        }
    }
    Ok(best)
}

/// Backward induction (dynamic programming) over the tree.
///
/// Every edge is traversed once. Chance nodes combine their children's
/// lotteries, decision nodes keep their first declared action and switch only
/// to a strictly preferred one. Decision nodes the returned strategy never
/// reaches are left unassigned.
pub fn dp_optimize(
    tree: &DecisionTree,
    criterion: &Criterion,
    options: &SolveOptions,
) -> Result<OptimizationResult, SolverError> {
    prepare(tree, criterion)?;
    let method = if criterion.id.is_weakly_monotone() {
        Method::Dp
    } else if options.unsafe_dp {
        Method::HeuristicDp
    } else {
        return Err(SolverError::NonMonotone(criterion.id));
    };
    let start = Instant::now();
    let mut result = match tree.payload_kind().expect("valid trees have leaves") {
        PayloadKind::Utility => backward_induction::<Utility>(tree, criterion)?,
        PayloadKind::Binary => backward_induction::<BinaryUtility>(tree, criterion)?,
        PayloadKind::Mu => backward_induction::<KappaRank>(tree, criterion)?,
    };
    result.method = method;
    result.stats.elapsed = start.elapsed();
    Ok(result)
}

fn backward_induction<O: TreeOutcome>(
    tree: &DecisionTree,
    criterion: &Criterion,
) -> Result<OptimizationResult, SolverError> {
    let order = tree.postorder();

    // Register positions: the sorted distinct leaf outcomes of the tree.
    let mut outcomes: Vec<O> = order
        .iter()
        .filter_map(|&p| match tree.at(p).1 {
            Node::Leaf(payload) => O::from_payload(payload),
            _ => None,
        })
        .collect();
    outcomes.sort();
    outcomes.dedup();
    let slot = |o: &O| outcomes.binary_search(o).expect("outcome collected above");
    let to_lottery = |reg: &[O::Weight]| -> Result<Lottery<O, O::Weight>, TreeError> {
        Ok(Lottery::new(
            outcomes.iter().cloned().zip(reg.iter().cloned()),
        )?)
    };

    let mut registers: Vec<Option<Vec<O::Weight>>> = vec![None; tree.len()];
    let mut choice: Vec<Option<usize>> = vec![None; tree.len()];
    let mut stats = SolverStats::default();
    let position = |id: &NodeId| tree.position(id).expect("validated");

    for &p in &order {
        stats.nodes_visited += 1;
        let reg = match tree.at(p).1 {
            Node::Leaf(payload) => {
                let o = O::from_payload(payload).expect("payload kind checked");
                let mut reg = vec![O::Weight::impossible(); outcomes.len()];
                reg[slot(&o)] = O::Weight::certain();
                reg
            }
            Node::Chance { edges } => {
                let mut reg = vec![O::Weight::impossible(); outcomes.len()];
                for edge in edges {
                    stats.edges_visited += 1;
                    let w = O::weight(&edge.weight).expect("weight kind checked");
                    let child = registers[position(&edge.child)]
                        .take()
                        .expect("children first");
                    for (acc, inner) in reg.iter_mut().zip(&child) {
                        *acc = acc.either(&w.chain(inner));
                    }
                }
                reg
            }
            Node::Decision { children } => {
                let mut candidates = Vec::with_capacity(children.len());
                for child in children {
                    stats.edges_visited += 1;
                    let reg = registers[position(child)].take().expect("children first");
                    let lottery = O::wrap(to_lottery(&reg)?);
                    let value = criteria::evaluate(criterion, &lottery)?;
                    candidates.push((Incumbent { lottery, value }, reg));
                }
                let k = select(criterion, &candidates)?;
                choice[p] = Some(k);
                candidates.swap_remove(k).1
            }
        };
        registers[p] = Some(reg);
    }
    debug_assert_eq!(stats.edges_visited, tree.edge_count());

    let root = position(tree.root());
    let reduced = O::wrap(to_lottery(registers[root].as_ref().expect("root reduced"))?);
    let value = criteria::evaluate(criterion, &reduced)?;

    let mut strategy = Strategy::new();
    let mut stack = vec![root];
    while let Some(d) = stack.pop() {
        let (id, node) = tree.at(d);
        let Node::Decision { children } = node else {
            unreachable!("only decision nodes are stacked")
        };
        let action = &children[choice[d].expect("every decision node was visited")];
        strategy.assign(id.clone(), action.clone());
        if let Some(Node::Chance { edges }) = tree.node(action) {
            for e in edges {
                let c = position(&e.child);
                if tree.at(c).1.is_decision() {
                    stack.push(c);
                }
            }
        }
    }

    Ok(OptimizationResult {
        strategy,
        value,
        reduced,
        method: Method::Dp,
        stats,
    })
}

/// Evaluates every sound and complete strategy and returns the first one (in
/// enumeration order) that no later strategy strictly beats.
pub fn exhaustive_optimize(
    tree: &DecisionTree,
    criterion: &Criterion,
    options: &SolveOptions,
) -> Result<OptimizationResult, SolverError> {
    prepare(tree, criterion)?;
    if let Some(budget) = options.budget {
        let count = count_strategies(tree)?;
        if count > BigUint::from(budget) {
            return Err(SolverError::BudgetExceeded { count, budget });
        }
    }
    let start = Instant::now();
    let mut stats = SolverStats::default();
    let mut best: Option<(Strategy, Incumbent)> = None;
    for strategy in enumerate_strategies(tree)? {
        stats.strategies_examined += 1;
        let lottery = strategy_lottery_unchecked(tree, &strategy)?;
        let value = criteria::evaluate(criterion, &lottery)?;
        let replace = match &best {
            None => true,
            Some((_, inc)) => strictly_better(criterion, &lottery, &value, inc)?,
        };
        if replace {
            best = Some((strategy, Incumbent { lottery, value }));
        }
    }
    let (strategy, inc) = best.expect("a valid tree has at least one strategy");
    stats.elapsed = start.elapsed();
    Ok(OptimizationResult {
        strategy,
        value: inc.value,
        reduced: inc.lottery,
        method: Method::Exhaustive,
        stats,
    })
}

/// Routes weakly monotone criteria to backward induction and the Choquet
/// criteria to enumeration, unless a method is forced.
pub fn optimize(
    tree: &DecisionTree,
    criterion: &Criterion,
    method: MethodChoice,
    options: &SolveOptions,
) -> Result<OptimizationResult, SolverError> {
    match method {
        MethodChoice::Dp => dp_optimize(tree, criterion, options),
        MethodChoice::Exhaustive => exhaustive_optimize(tree, criterion, options),
        MethodChoice::Auto if criterion.id.is_weakly_monotone() => {
            dp_optimize(tree, criterion, options)
        }
        MethodChoice::Auto => exhaustive_optimize(tree, criterion, options),
    }
}

/// One row of the scaling report.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub decision_nodes: usize,
    pub edges: usize,
    pub dp_edges_visited: usize,
    #[serde(serialize_with = "big_text")]
    pub strategies: BigUint,
    #[serde(serialize_with = "big_text")]
    pub closed_form: BigUint,
    pub exhaustive_examined: Option<u64>,
    #[serde(skip)]
    pub dp_time: Duration,
    #[serde(skip)]
    pub exhaustive_time: Option<Duration>,
}

fn big_text<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ScalingRow {
    /// Backward induction touched every edge once and the enumerator produced
    /// exactly the closed-form number of strategies.
    pub fn consistent(&self) -> bool {
        self.dp_edges_visited == self.edges
            && self.strategies == self.closed_form
            && self
                .exhaustive_examined
                .is_none_or(|n| BigUint::from(n) == self.strategies)
    }
}

/// Work of both solvers on comb trees with `1..=max_decisions` choice points
/// and `branching` actions each. Exhaustive search runs only while the
/// strategy count stays within `budget`.
pub fn scaling_report(
    seed: u64,
    max_decisions: usize,
    branching: usize,
    budget: u64,
    criterion: &Criterion,
) -> Result<Vec<ScalingRow>, SolverError> {
    let profile = crate::dtree::TreeProfile {
        branching: 3,
        ..Default::default()
    };
    let mut rows = Vec::with_capacity(max_decisions);
    for n in 1..=max_decisions {
        let tree = crate::dtree::comb_tree(seed.wrapping_add(n as u64), n, branching, &profile)
            .expect("comb parameters are positive");
        let dp = dp_optimize(
            &tree,
            criterion,
            &SolveOptions {
                unsafe_dp: true,
                budget: None,
            },
        )?;
        let strategies = count_strategies(&tree)?;
        let closed_form = BigUint::from(branching).pow(n as u32);
        let (exhaustive_examined, exhaustive_time) = if strategies <= BigUint::from(budget) {
            let ex = exhaustive_optimize(&tree, criterion, &SolveOptions::default())?;
            (Some(ex.stats.strategies_examined), Some(ex.stats.elapsed))
        } else {
            (None, None)
        };
        rows.push(ScalingRow {
            decision_nodes: tree.decision_nodes().count(),
            edges: tree.edge_count(),
            dp_edges_visited: dp.stats.edges_visited,
            strategies,
            closed_form,
            exhaustive_examined,
            dp_time: dp.stats.elapsed,
            exhaustive_time,
        });
    }
    Ok(rows)
}
