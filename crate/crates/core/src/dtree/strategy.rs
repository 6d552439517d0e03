use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{DecisionTree, Node, NodeId, PayloadKind, Rule, TreeError, TreeOutcome, Violation};
use crate::criteria::{AnyLottery, BinaryUtility};
use crate::lottery::{CompoundLottery, Lottery, LotteryNode};
use crate::numbers::{KappaRank, Utility};

/// Assignment of an action (chance node) to decision nodes.
///
/// Decision nodes absent from the map are unassigned (⊥).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Strategy {
    choices: BTreeMap<NodeId, NodeId>,
}

impl Strategy {
    pub fn new() -> Self {
        Strategy::default()
    }

    pub fn assign(&mut self, decision: impl Into<NodeId>, action: impl Into<NodeId>) -> &mut Self {
        self.choices.insert(decision.into(), action.into());
        self
    }

    pub fn with(mut self, decision: &str, action: &str) -> Self {
        self.assign(decision, action);
        self
    }

    pub fn unassign(&mut self, decision: &NodeId) {
        self.choices.remove(decision);
    }

    pub fn choice(&self, decision: &NodeId) -> Option<&NodeId> {
        self.choices.get(decision)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, &NodeId)> {
        self.choices.iter()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Drops assignments on decision nodes the strategy never reaches.
    pub fn restricted_to_reachable(&self, tree: &DecisionTree) -> Strategy {
        let mut kept = Strategy::new();
        let mut stack = vec![tree.root().clone()];
        while let Some(d) = stack.pop() {
            let Some(c) = self.choice(&d) else { continue };
            kept.assign(d.clone(), c.clone());
            if let Some(Node::Chance { edges }) = tree.node(c) {
                for e in edges {
                    if tree.node(&e.child).is_some_and(Node::is_decision) {
                        stack.push(e.child.clone());
                    }
                }
            }
        }
        kept
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.choices.iter()).finish()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .choices
            .iter()
            .map(|(d, c)| format!("{d}→{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Soundness and completeness of `strategy` on `tree`.
///
/// Unknown node ids are an error; everything else is reported as data.
/// Among unassigned reachable decision nodes only the first (depth-first,
/// declared child order) is reported.
pub fn validate_strategy(
    tree: &DecisionTree,
    strategy: &Strategy,
) -> Result<Vec<Violation>, TreeError> {
    let mut out = Vec::new();
    for (d, c) in strategy.iter() {
        let dnode = tree
            .node(d)
            .ok_or_else(|| TreeError::UnknownNode(d.clone()))?;
        tree.node(c)
            .ok_or_else(|| TreeError::UnknownNode(c.clone()))?;
        match dnode {
            Node::Decision { children } => {
                if !children.contains(c) {
                    out.push(Violation::at(
                        d,
                        Rule::Soundness,
                        format!("`{c}` is not an action of `{d}`"),
                    ));
                }
            }
            other => out.push(Violation::at(
                d,
                Rule::NotDecision,
                format!("strategy assigns an action to a {} node", other.kind_name()),
            )),
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }

    let root = tree.root();
    if strategy.choice(root).is_none() {
        out.push(Violation::at(
            root,
            Rule::Completeness,
            "root decision node is unassigned",
        ));
        return Ok(out);
    }
    let mut stack = vec![root.clone()];
    while let Some(d) = stack.pop() {
        let Some(c) = strategy.choice(&d) else {
            out.push(Violation::at(
                &d,
                Rule::Completeness,
                "reachable decision node is unassigned",
            ));
            break;
        };
        if let Some(Node::Chance { edges }) = tree.node(c) {
            for e in edges.iter().rev() {
                if tree.node(&e.child).is_some_and(Node::is_decision) {
                    stack.push(e.child.clone());
                }
            }
        }
    }
    Ok(out)
}

fn ensure_strategy(tree: &DecisionTree, strategy: &Strategy) -> Result<(), TreeError> {
    let violations = validate_strategy(tree, strategy)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(TreeError::InvalidStrategy(violations))
    }
}

/// Reduced lottery of a strategy, kind chosen by the tree's leaves.
pub fn strategy_lottery(tree: &DecisionTree, strategy: &Strategy) -> Result<AnyLottery, TreeError> {
    tree.ensure_valid()?;
    ensure_strategy(tree, strategy)?;
    strategy_lottery_unchecked(tree, strategy)
}

/// As [`strategy_lottery`] but trusts that tree and strategy were validated.
pub(crate) fn strategy_lottery_unchecked(
    tree: &DecisionTree,
    strategy: &Strategy,
) -> Result<AnyLottery, TreeError> {
    match tree.payload_kind() {
        Some(PayloadKind::Utility) => reduce_strategy::<Utility>(tree, strategy).map(Utility::wrap),
        Some(PayloadKind::Binary) => {
            reduce_strategy::<BinaryUtility>(tree, strategy).map(BinaryUtility::wrap)
        }
        Some(PayloadKind::Mu) => reduce_strategy::<KappaRank>(tree, strategy).map(KappaRank::wrap),
        None => Err(TreeError::InvalidStrategy(vec![Violation {
            node: None,
            rule: Rule::EmptyNode,
            message: "tree has no leaves".into(),
        }])),
    }
}

/// Reduced lottery of a strategy read as outcomes of type `O`.
pub fn strategy_lottery_as<O: TreeOutcome>(
    tree: &DecisionTree,
    strategy: &Strategy,
) -> Result<Lottery<O, O::Weight>, TreeError> {
    tree.ensure_valid()?;
    ensure_strategy(tree, strategy)?;
    reduce_strategy::<O>(tree, strategy)
}

fn kind_error<O>(tree: &DecisionTree) -> TreeError {
    TreeError::KindMismatch {
        criterion: std::any::type_name::<O>()
            .rsplit("::")
            .next()
            .unwrap_or("outcome")
            .to_string(),
        found: tree.payload_kind().unwrap_or(PayloadKind::Utility),
    }
}

fn chosen_action<'t>(
    tree: &'t DecisionTree,
    strategy: &Strategy,
    decision: &NodeId,
) -> Result<(&'t NodeId, &'t [super::Edge]), TreeError> {
    let action = strategy.choice(decision).ok_or_else(|| {
        TreeError::InvalidStrategy(vec![Violation::at(
            decision,
            Rule::Completeness,
            "reachable decision node is unassigned",
        )])
    })?;
    let position = tree
        .position(action)
        .ok_or_else(|| TreeError::UnknownNode(action.clone()))?;
    match tree.at(position) {
        (id, Node::Chance { edges }) => Ok((id, edges.as_slice())),
        (id, _) => Err(TreeError::InvalidStrategy(vec![Violation::at(
            decision,
            Rule::Soundness,
            format!("`{id}` is not a chance node"),
        )])),
    }
}

/// Bottom-up reduction along the strategy: decision nodes delegate to their
/// chosen action, chance nodes mix their children by edge weight, leaves are
/// degenerate lotteries.
fn reduce_strategy<O: TreeOutcome>(
    tree: &DecisionTree,
    strategy: &Strategy,
) -> Result<Lottery<O, O::Weight>, TreeError> {
    struct Frame<'t, O: TreeOutcome> {
        edges: &'t [super::Edge],
        done: Vec<(O::Weight, Lottery<O, O::Weight>)>,
    }

    let (_, root_edges) = chosen_action(tree, strategy, tree.root())?;
    let mut stack: Vec<Frame<'_, O>> = vec![Frame {
        edges: root_edges,
        done: Vec::new(),
    }];
    loop {
        let top = stack.last_mut().expect("root frame present until return");
        if let Some(edge) = top.edges.get(top.done.len()) {
            let weight = O::weight(&edge.weight).ok_or_else(|| kind_error::<O>(tree))?;
            match tree
                .node(&edge.child)
                .ok_or_else(|| TreeError::UnknownNode(edge.child.clone()))?
            {
                Node::Leaf(payload) => {
                    let outcome = O::from_payload(payload).ok_or_else(|| kind_error::<O>(tree))?;
                    top.done.push((weight, Lottery::certain(outcome)));
                }
                Node::Decision { .. } => {
                    let (_, edges) = chosen_action(tree, strategy, &edge.child)?;
                    stack.push(Frame {
                        edges,
                        done: Vec::new(),
                    });
                }
                Node::Chance { .. } => return Err(TreeError::InvalidTree(tree.validate())),
            }
            continue;
        }
        let frame = stack.pop().expect("non-empty");
        let reduced = Lottery::mix(frame.done.iter().map(|(w, l)| (w, l)))?;
        match stack.last_mut() {
            None => return Ok(reduced),
            Some(parent) => {
                let edge = &parent.edges[parent.done.len()];
                let weight = O::weight(&edge.weight).ok_or_else(|| kind_error::<O>(tree))?;
                parent.done.push((weight, reduced));
            }
        }
    }
}

/// The strategy written out as an explicit nested compound lottery, without
/// reducing anything. Its [`CompoundLottery::reduce`] must agree with
/// [`strategy_lottery_as`].
pub fn strategy_compound<O: TreeOutcome>(
    tree: &DecisionTree,
    strategy: &Strategy,
) -> Result<CompoundLottery<O, O::Weight>, TreeError> {
    tree.ensure_valid()?;
    ensure_strategy(tree, strategy)?;

    struct Frame<'t, O: TreeOutcome> {
        edges: &'t [super::Edge],
        built: Vec<(O::Weight, LotteryNode<O, O::Weight>)>,
    }

    let (_, root_edges) = chosen_action(tree, strategy, tree.root())?;
    let mut stack: Vec<Frame<'_, O>> = vec![Frame {
        edges: root_edges,
        built: Vec::new(),
    }];
    loop {
        let top = stack.last_mut().expect("root frame present until return");
        if let Some(edge) = top.edges.get(top.built.len()) {
            let weight = O::weight(&edge.weight).ok_or_else(|| kind_error::<O>(tree))?;
            match tree
                .node(&edge.child)
                .ok_or_else(|| TreeError::UnknownNode(edge.child.clone()))?
            {
                Node::Leaf(payload) => {
                    let outcome = O::from_payload(payload).ok_or_else(|| kind_error::<O>(tree))?;
                    top.built
                        .push((weight, LotteryNode::Simple(Lottery::certain(outcome))));
                }
                Node::Decision { .. } => {
                    let (_, edges) = chosen_action(tree, strategy, &edge.child)?;
                    stack.push(Frame {
                        edges,
                        built: Vec::new(),
                    });
                }
                Node::Chance { .. } => return Err(TreeError::InvalidTree(tree.validate())),
            }
            continue;
        }
        let frame = stack.pop().expect("non-empty");
        let compound = CompoundLottery::new(frame.built)?;
        match stack.last_mut() {
            None => return Ok(compound),
            Some(parent) => {
                let edge = &parent.edges[parent.built.len()];
                let weight = O::weight(&edge.weight).ok_or_else(|| kind_error::<O>(tree))?;
                parent.built.push((weight, LotteryNode::Compound(compound)));
            }
        }
    }
}

/// Number of sound and complete strategies that leave unreachable decision
/// nodes unassigned: a decision node contributes the sum over its actions, a
/// chance node the product over its outcomes.
pub fn count_strategies(tree: &DecisionTree) -> Result<BigUint, TreeError> {
    tree.ensure_valid()?;
    let mut counts: HashMap<usize, BigUint> = HashMap::new();
    for p in tree.postorder() {
        let (_, node) = tree.at(p);
        let value = match node {
            Node::Leaf(_) => BigUint::one(),
            Node::Decision { children } => children
                .iter()
                .map(|c| counts[&tree.position(c).expect("validated")].clone())
                .fold(BigUint::zero(), |a, b| a + b),
            Node::Chance { edges } => edges
                .iter()
                .map(|e| counts[&tree.position(&e.child).expect("validated")].clone())
                .fold(BigUint::one(), |a, b| a * b),
        };
        counts.insert(p, value);
    }
    let root = tree.position(tree.root()).expect("validated");
    Ok(counts.remove(&root).expect("root counted"))
}

/// Deterministic cursor over every sound and complete strategy.
///
/// Strategies are produced in lexicographic order of their choice sequence,
/// where the sequence lists the reachable decision nodes depth-first and
/// actions are indexed in declared order. Unreachable decision nodes are
/// left unassigned.
#[derive(Debug)]
pub struct StrategyCursor<'t> {
    tree: &'t DecisionTree,
    /// Reachable decision nodes (positions) in depth-first order.
    order: Vec<usize>,
    /// Chosen action index per decision position.
    chosen: HashMap<usize, usize>,
    started: bool,
    finished: bool,
}

impl<'t> StrategyCursor<'t> {
    fn new(tree: &'t DecisionTree) -> Self {
        StrategyCursor {
            tree,
            order: Vec::new(),
            chosen: HashMap::new(),
            started: false,
            finished: false,
        }
    }

    fn actions(&self, position: usize) -> &'t [NodeId] {
        match self.tree.at(position).1 {
            Node::Decision { children } => children,
            _ => &[],
        }
    }

    /// Recomputes the reachable decision nodes, defaulting unset choices to
    /// the first action.
    fn rebuild_order(&mut self) {
        self.order.clear();
        let root = self.tree.position(self.tree.root()).expect("validated");
        let mut stack = vec![root];
        while let Some(d) = stack.pop() {
            self.order.push(d);
            let pick = *self.chosen.entry(d).or_insert(0);
            let action = &self.actions(d)[pick];
            if let Node::Chance { edges } = self.tree.node(action).expect("validated") {
                for e in edges.iter().rev() {
                    let c = self.tree.position(&e.child).expect("validated");
                    if self.tree.at(c).1.is_decision() {
                        stack.push(c);
                    }
                }
            }
        }
    }

    fn current(&self) -> Strategy {
        let mut s = Strategy::new();
        for &d in &self.order {
            let (id, _) = self.tree.at(d);
            s.assign(id.clone(), self.actions(d)[self.chosen[&d]].clone());
        }
        s
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.order.len()).rev() {
            let d = self.order[i];
            let next = self.chosen[&d] + 1;
            if next < self.actions(d).len() {
                self.chosen.insert(d, next);
                for &later in &self.order[i + 1..] {
                    self.chosen.remove(&later);
                }
                self.rebuild_order();
                return true;
            }
        }
        false
    }
}

impl Iterator for StrategyCursor<'_> {
    type Item = Strategy;

    fn next(&mut self) -> Option<Strategy> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            self.rebuild_order();
        } else if !self.advance() {
            self.finished = true;
            return None;
        }
        Some(self.current())
    }
}

/// Every sound and complete strategy of a valid tree, each exactly once.
pub fn enumerate_strategies(tree: &DecisionTree) -> Result<StrategyCursor<'_>, TreeError> {
    tree.ensure_valid()?;
    Ok(StrategyCursor::new(tree))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::dtree::fixtures::two_stage;
    use crate::dtree::{TreeBuilder, TreeMode};
    use crate::lottery::{KappaLottery, SimpleLottery};

    fn simple(entries: &[(&str, &str)]) -> SimpleLottery {
        Lottery::new(
            entries
                .iter()
                .map(|(d, u)| (u.parse().unwrap(), d.parse().unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn root_must_be_assigned() {
        let tree = two_stage();
        let v = validate_strategy(&tree, &Strategy::new()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::Completeness);
        assert_eq!(v[0].node, Some("D0".into()));
    }

    #[test]
    fn choices_must_be_children() {
        let tree = two_stage();
        let s = Strategy::new().with("D0", "C3");
        let v = validate_strategy(&tree, &s).unwrap();
        assert_eq!(v[0].rule, Rule::Soundness);
    }

    #[test]
    fn unknown_ids_are_errors() {
        let tree = two_stage();
        assert!(matches!(
            validate_strategy(&tree, &Strategy::new().with("D9", "C1")),
            Err(TreeError::UnknownNode(_))
        ));
        assert!(matches!(
            validate_strategy(&tree, &Strategy::new().with("D0", "C9")),
            Err(TreeError::UnknownNode(_))
        ));
    }

    #[test]
    fn partial_strategy_reports_first_unassigned_node() {
        let tree = two_stage();
        let s = Strategy::new().with("D0", "C1");
        let v = validate_strategy(&tree, &s).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].node, Some("D1".into()));
        let s = Strategy::new().with("D0", "C1").with("D1", "C3");
        assert_eq!(
            validate_strategy(&tree, &s).unwrap()[0].node,
            Some("D2".into())
        );
    }

    #[test]
    fn complete_strategy_is_clean() {
        let tree = two_stage();
        let s = Strategy::new()
            .with("D0", "C1")
            .with("D1", "C4")
            .with("D2", "C5");
        assert!(validate_strategy(&tree, &s).unwrap().is_empty());
        let s = Strategy::new().with("D0", "C2");
        assert!(validate_strategy(&tree, &s).unwrap().is_empty());
    }

    #[test]
    fn depth_one_strategy_lottery() {
        let tree = TreeBuilder::new(TreeMode::Possibilistic)
            .decision("D0", &["C"])
            .chance("C", &[("L1", "0.4"), ("L2", "1")])
            .leaf("L1", "4")
            .leaf("L2", "7")
            .build("D0");
        let l = strategy_lottery(&tree, &Strategy::new().with("D0", "C")).unwrap();
        assert_eq!(l, AnyLottery::Scalar(simple(&[("0.4", "4"), ("1", "7")])));
    }

    #[test]
    fn merged_lottery_through_a_tree() {
        let tree = TreeBuilder::new(TreeMode::Possibilistic)
            .decision("D0", &["C0"])
            .chance("C0", &[("D1", "1"), ("D2", "1")])
            .decision("D1", &["C1"])
            .decision("D2", &["C2"])
            .chance("C1", &[("L0", "0.2"), ("L2", "1"), ("L9", "0.5")])
            .chance("C2", &[("L4", "0.4"), ("L7", "1")])
            .leaf("L0", "0")
            .leaf("L2", "2")
            .leaf("L9", "9")
            .leaf("L4", "4")
            .leaf("L7", "7")
            .build("D0");
        let s = Strategy::new()
            .with("D0", "C0")
            .with("D1", "C1")
            .with("D2", "C2");
        let l = strategy_lottery(&tree, &s).unwrap();
        let expected = simple(&[
            ("0.2", "0"),
            ("1", "2"),
            ("0.4", "4"),
            ("1", "7"),
            ("0.5", "9"),
        ]);
        assert_eq!(l, AnyLottery::Scalar(expected.clone()));
        assert_eq!(
            strategy_compound::<Utility>(&tree, &s).unwrap().reduce(),
            expected
        );
    }

    #[test]
    fn kappa_strategy_lottery() {
        let tree = TreeBuilder::new(TreeMode::Kappa)
            .decision("D0", &["C"])
            .chance("C", &[("L1", "0"), ("L2", "2")])
            .leaf("L1", "5")
            .leaf("L2", "1")
            .build("D0");
        let l = strategy_lottery(&tree, &Strategy::new().with("D0", "C")).unwrap();
        let expected = KappaLottery::new([
            (KappaRank::Finite(5), KappaRank::ZERO),
            (KappaRank::Finite(1), KappaRank::Finite(2)),
        ])
        .unwrap();
        assert_eq!(l, AnyLottery::Kappa(expected));
    }

    #[test]
    fn invalid_strategy_is_refused() {
        let tree = two_stage();
        assert!(matches!(
            strategy_lottery(&tree, &Strategy::new().with("D0", "C1")),
            Err(TreeError::InvalidStrategy(_))
        ));
    }

    #[test]
    fn single_choice_point_enumeration() {
        let tree = TreeBuilder::new(TreeMode::Possibilistic)
            .decision("D0", &["A", "B", "C"])
            .chance("A", &[("L1", "1")])
            .chance("B", &[("L2", "1")])
            .chance("C", &[("L3", "1")])
            .leaf("L1", "0")
            .leaf("L2", "0.5")
            .leaf("L3", "1")
            .build("D0");
        let all: Vec<Strategy> = enumerate_strategies(&tree).unwrap().collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0], Strategy::new().with("D0", "A"));
        assert_eq!(all[2], Strategy::new().with("D0", "C"));
        assert_eq!(count_strategies(&tree).unwrap(), BigUint::from(3u32));
    }

    /// Every assignment of actions (or ⊥) to every decision node, filtered by
    /// the validity predicate, then canonicalized by dropping unreachable
    /// assignments.
    fn brute_force_strategies(tree: &DecisionTree) -> HashSet<Strategy> {
        let decisions: Vec<(NodeId, Vec<Option<NodeId>>)> = tree
            .nodes()
            .filter_map(|(id, n)| match n {
                Node::Decision { children } => {
                    let mut opts: Vec<Option<NodeId>> =
                        children.iter().cloned().map(Some).collect();
                    opts.push(None);
                    Some((id.clone(), opts))
                }
                _ => None,
            })
            .collect();
        let mut out = HashSet::new();
        let mut idx = vec![0usize; decisions.len()];
        loop {
            let mut s = Strategy::new();
            for (k, (d, opts)) in decisions.iter().enumerate() {
                if let Some(c) = &opts[idx[k]] {
                    s.assign(d.clone(), c.clone());
                }
            }
            if validate_strategy(tree, &s).unwrap().is_empty() {
                out.insert(s.restricted_to_reachable(tree));
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < decisions[k].1.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_fixture() {
        let tree = two_stage();
        let listed: Vec<Strategy> = enumerate_strategies(&tree).unwrap().collect();
        let unique: HashSet<Strategy> = listed.iter().cloned().collect();
        assert_eq!(unique.len(), listed.len(), "duplicates in enumeration");
        assert_eq!(unique, brute_force_strategies(&tree));
        // root→C1 reaches D1 and D2 (2×2), root→C2 reaches nothing
        assert_eq!(listed.len(), 5);
        assert_eq!(count_strategies(&tree).unwrap(), BigUint::from(5u32));
        for s in &listed {
            assert!(validate_strategy(&tree, s).unwrap().is_empty());
        }
    }

    #[test]
    fn reachability_limits_the_count() {
        // each root action reaches exactly one two-way decision node
        let tree = TreeBuilder::new(TreeMode::Possibilistic)
            .decision("D0", &["C1", "C2"])
            .chance("C1", &[("D1", "1")])
            .chance("C2", &[("D2", "1")])
            .decision("D1", &["C3", "C4"])
            .decision("D2", &["C5", "C6"])
            .chance("C3", &[("L1", "1")])
            .chance("C4", &[("L2", "1")])
            .chance("C5", &[("L3", "1")])
            .chance("C6", &[("L4", "1")])
            .leaf("L1", "0")
            .leaf("L2", "1")
            .leaf("L3", "0.5")
            .leaf("L4", "0.2")
            .build("D0");
        let listed: Vec<Strategy> = enumerate_strategies(&tree).unwrap().collect();
        assert_eq!(listed.len(), 4);
        assert_eq!(
            listed.iter().cloned().collect::<HashSet<_>>(),
            brute_force_strategies(&tree)
        );
        assert!(listed.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn enumeration_stops_early() {
        let tree = two_stage();
        let first_two: Vec<Strategy> = enumerate_strategies(&tree).unwrap().take(2).collect();
        assert_eq!(first_two.len(), 2);
        assert_eq!(
            first_two[0],
            Strategy::new()
                .with("D0", "C1")
                .with("D1", "C3")
                .with("D2", "C5")
        );
        assert_eq!(
            first_two[1],
            Strategy::new()
                .with("D0", "C1")
                .with("D1", "C3")
                .with("D2", "C6")
        );
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let depth = 50_000;
        let mut b = TreeBuilder::new(TreeMode::Possibilistic);
        for i in 0..depth {
            let d = format!("D{i}");
            let c = format!("C{i}");
            let next = if i + 1 == depth {
                "L".to_string()
            } else {
                format!("D{}", i + 1)
            };
            b = b.decision(&d, &[&c]).chance(&c, &[(&next, "1")]);
        }
        let tree = b.leaf("L", "0.5").build("D0");
        let mut s = Strategy::new();
        for i in 0..depth {
            s.assign(format!("D{i}").as_str(), format!("C{i}").as_str());
        }
        let l = strategy_lottery(&tree, &s).unwrap();
        assert_eq!(l, AnyLottery::Scalar(simple(&[("1", "0.5")])));
        assert_eq!(count_strategies(&tree).unwrap(), BigUint::one());
    }
}
