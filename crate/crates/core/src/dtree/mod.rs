//! Decision trees: structure, validation, strategies and their reduction.

mod generate;
mod strategy;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{AnyLottery, BinaryUtility, Criterion, CriterionId, LotteryKind};
use crate::lottery::{Lottery, LotteryError, Plausibility};
use crate::numbers::{Degree, KappaRank, Utility};

pub use generate::{comb_tree, random_tree, GenerateError, TreeProfile};
pub(crate) use strategy::strategy_lottery_unchecked;
pub use strategy::{
    count_strategies, enumerate_strategies, strategy_compound, strategy_lottery,
    strategy_lottery_as, validate_strategy, Strategy, StrategyCursor,
};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeMode {
    Possibilistic,
    Kappa,
}

impl fmt::Display for TreeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeMode::Possibilistic => "possibilistic",
            TreeMode::Kappa => "kappa",
        })
    }
}

/// Conditional plausibility on a chance edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EdgeWeight {
    Degree(Degree),
    Rank(KappaRank),
}

impl fmt::Display for EdgeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeWeight::Degree(d) => d.fmt(f),
            EdgeWeight::Rank(k) => k.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub child: NodeId,
    pub weight: EdgeWeight,
}

impl Edge {
    pub fn new(child: impl Into<NodeId>, weight: EdgeWeight) -> Self {
        Edge {
            child: child.into(),
            weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LeafPayload {
    Utility(Utility),
    Binary(BinaryUtility),
    Mu(KappaRank),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PayloadKind {
    Utility,
    Binary,
    Mu,
}

impl LeafPayload {
    pub fn kind(&self) -> PayloadKind {
        match self {
            LeafPayload::Utility(_) => PayloadKind::Utility,
            LeafPayload::Binary(_) => PayloadKind::Binary,
            LeafPayload::Mu(_) => PayloadKind::Mu,
        }
    }
}

impl PayloadKind {
    pub fn lottery_kind(self) -> LotteryKind {
        match self {
            PayloadKind::Utility => LotteryKind::Scalar,
            PayloadKind::Binary => LotteryKind::Binary,
            PayloadKind::Mu => LotteryKind::Kappa,
        }
    }

    pub fn mode(self) -> TreeMode {
        match self {
            PayloadKind::Mu => TreeMode::Kappa,
            _ => TreeMode::Possibilistic,
        }
    }
}

impl fmt::Display for PayloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PayloadKind::Utility => "utility",
            PayloadKind::Binary => "utility_pair",
            PayloadKind::Mu => "mu",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Decision { children: Vec<NodeId> },
    Chance { edges: Vec<Edge> },
    Leaf(LeafPayload),
}

impl Node {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Node::Decision { .. } => "decision",
            Node::Chance { .. } => "chance",
            Node::Leaf(_) => "leaf",
        }
    }

    pub fn is_decision(&self) -> bool {
        matches!(self, Node::Decision { .. })
    }

    pub fn is_chance(&self) -> bool {
        matches!(self, Node::Chance { .. })
    }

    fn child_ids(&self) -> Vec<&NodeId> {
        match self {
            Node::Decision { children } => children.iter().collect(),
            Node::Chance { edges } => edges.iter().map(|e| &e.child).collect(),
            Node::Leaf(_) => Vec::new(),
        }
    }
}

/// A decision tree as declared: nodes in declaration order, referenced by id.
///
/// Construction never fails; [`validate_tree`] reports structural problems
/// and every algorithm refuses a tree whose report is not clean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    mode: TreeMode,
    root: NodeId,
    nodes: Vec<(NodeId, Node)>,
    index: HashMap<NodeId, usize>,
}

impl DecisionTree {
    pub fn new(mode: TreeMode, root: impl Into<NodeId>, nodes: Vec<(NodeId, Node)>) -> Self {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, (id, _)) in nodes.iter().enumerate() {
            index.entry(id.clone()).or_insert(i);
        }
        DecisionTree {
            mode,
            root: root.into(),
            nodes,
            index,
        }
    }

    pub fn mode(&self) -> TreeMode {
        self.mode
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.index.get(id).map(|&i| &self.nodes[i].1)
    }

    pub(crate) fn position(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn at(&self, position: usize) -> (&NodeId, &Node) {
        let (id, node) = &self.nodes[position];
        (id, node)
    }

    /// Nodes in declaration order.
    pub fn nodes(&self) -> impl Iterator<Item = (&NodeId, &Node)> {
        self.nodes.iter().map(|(id, n)| (id, n))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|(_, n)| n.child_ids().len()).sum()
    }

    pub fn decision_nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes
            .iter()
            .filter(|(_, n)| n.is_decision())
            .map(|(id, _)| id)
    }

    /// Kind of the first leaf; a valid tree has only one kind.
    pub fn payload_kind(&self) -> Option<PayloadKind> {
        self.nodes.iter().find_map(|(_, n)| match n {
            Node::Leaf(p) => Some(p.kind()),
            _ => None,
        })
    }

    /// Positions of the nodes reachable from the root, children before
    /// parents. Iterative, so any depth is fine.
    pub(crate) fn postorder(&self) -> Vec<usize> {
        let Some(root) = self.position(&self.root) else {
            return Vec::new();
        };
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![root];
        let mut seen = HashSet::new();
        while let Some(p) = stack.pop() {
            if !seen.insert(p) {
                continue;
            }
            order.push(p);
            for child in self.nodes[p].1.child_ids() {
                if let Some(c) = self.position(child) {
                    stack.push(c);
                }
            }
        }
        order.reverse();
        order
    }

    pub fn validate(&self) -> ValidationReport {
        validate_tree(self)
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), TreeError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(TreeError::InvalidTree(report))
        }
    }
}

/// Which structural rule a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    DuplicateId,
    MissingRoot,
    RootKind,
    RootHasParent,
    UnknownChild,
    ChildKind,
    MultipleParents,
    Unreachable,
    EmptyNode,
    Normalization,
    WeightKind,
    PayloadKind,
    MixedPayload,
    TemporalOrder,
    NotDecision,
    Soundness,
    Completeness,
    CriterionKind,
    Scale,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::DuplicateId => "duplicate-id",
            Rule::MissingRoot => "missing-root",
            Rule::RootKind => "root-kind",
            Rule::RootHasParent => "root-has-parent",
            Rule::UnknownChild => "unknown-child",
            Rule::ChildKind => "child-kind",
            Rule::MultipleParents => "multiple-parents",
            Rule::Unreachable => "unreachable",
            Rule::EmptyNode => "empty-node",
            Rule::Normalization => "normalization",
            Rule::WeightKind => "weight-kind",
            Rule::PayloadKind => "payload-kind",
            Rule::MixedPayload => "mixed-payload",
            Rule::TemporalOrder => "temporal-order",
            Rule::NotDecision => "not-decision",
            Rule::Soundness => "soundness",
            Rule::Completeness => "completeness",
            Rule::CriterionKind => "criterion-kind",
            Rule::Scale => "scale",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub node: Option<NodeId>,
    pub rule: Rule,
    pub message: String,
}

impl Violation {
    fn at(node: &NodeId, rule: Rule, message: impl Into<String>) -> Self {
        Violation {
            node: Some(node.clone()),
            rule,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Some(id) => write!(f, "{id}: {}: {}", self.rule, self.message),
            None => write!(f, "-: {}: {}", self.rule, self.message),
        }
    }
}

/// Violations make a tree unusable; warnings are presentational.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree is invalid:\n{0}")]
    InvalidTree(ValidationReport),
    #[error("strategy is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidStrategy(Vec<Violation>),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("tree leaves carry {found} payloads, which {criterion} cannot use")]
    KindMismatch {
        criterion: String,
        found: PayloadKind,
    },
    #[error(transparent)]
    Lottery(#[from] LotteryError),
}

/// Checks every structural invariant of a decision tree.
pub fn validate_tree(tree: &DecisionTree) -> ValidationReport {
    let mut report = ValidationReport::default();
    let v = &mut report.violations;

    let mut seen = HashSet::new();
    for (id, _) in &tree.nodes {
        if !seen.insert(id) {
            v.push(Violation::at(
                id,
                Rule::DuplicateId,
                "node id declared more than once",
            ));
        }
    }

    match tree.node(&tree.root) {
        None => v.push(Violation::at(
            &tree.root,
            Rule::MissingRoot,
            "root id does not name a node",
        )),
        Some(n) if !n.is_decision() => v.push(Violation::at(
            &tree.root,
            Rule::RootKind,
            format!("root must be a decision node, found {}", n.kind_name()),
        )),
        _ => {}
    }

    let mut parents: HashMap<&NodeId, Vec<&NodeId>> = HashMap::new();
    let mut leaf_kinds: Vec<(&NodeId, PayloadKind)> = Vec::new();
    for (id, node) in &tree.nodes {
        match node {
            Node::Decision { children } => {
                if children.is_empty() {
                    v.push(Violation::at(
                        id,
                        Rule::EmptyNode,
                        "decision node has no actions",
                    ));
                }
                for child in children {
                    match tree.node(child) {
                        None => v.push(Violation::at(
                            id,
                            Rule::UnknownChild,
                            format!("child `{child}` does not exist"),
                        )),
                        Some(c) if !c.is_chance() => v.push(Violation::at(
                            id,
                            Rule::ChildKind,
                            format!(
                                "decision node child `{child}` is a {} node, expected chance",
                                c.kind_name()
                            ),
                        )),
                        _ => {}
                    }
                    parents.entry(child).or_default().push(id);
                }
            }
            Node::Chance { edges } => {
                if edges.is_empty() {
                    v.push(Violation::at(
                        id,
                        Rule::EmptyNode,
                        "chance node has no outcomes",
                    ));
                }
                for edge in edges {
                    match tree.node(&edge.child) {
                        None => v.push(Violation::at(
                            id,
                            Rule::UnknownChild,
                            format!("child `{}` does not exist", edge.child),
                        )),
                        Some(c) if c.is_chance() => v.push(Violation::at(
                            id,
                            Rule::ChildKind,
                            format!("chance node child `{}` is a chance node, expected decision or leaf", edge.child),
                        )),
                        _ => {}
                    }
                    parents.entry(&edge.child).or_default().push(id);
                }
                check_edge_weights(tree.mode, id, edges, v);
            }
            Node::Leaf(payload) => {
                let ok = match tree.mode {
                    TreeMode::Possibilistic => payload.kind() != PayloadKind::Mu,
                    TreeMode::Kappa => payload.kind() == PayloadKind::Mu,
                };
                if !ok {
                    v.push(Violation::at(
                        id,
                        Rule::PayloadKind,
                        format!("{} payload in a {} tree", payload.kind(), tree.mode),
                    ));
                }
                leaf_kinds.push((id, payload.kind()));
            }
        }
    }

    if let Some(&(_, first)) = leaf_kinds.first() {
        for &(id, kind) in &leaf_kinds {
            if kind != first {
                v.push(Violation::at(
                    id,
                    Rule::MixedPayload,
                    format!("{kind} payload mixed with {first} payloads"),
                ));
            }
        }
    }

    for (id, _) in &tree.nodes {
        let ps = parents.get(id).map(Vec::as_slice).unwrap_or(&[]);
        if *id == tree.root {
            if !ps.is_empty() {
                v.push(Violation::at(
                    id,
                    Rule::RootHasParent,
                    format!("root is a child of `{}`", ps[0]),
                ));
            }
        } else if ps.len() > 1 {
            let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
            v.push(Violation::at(
                id,
                Rule::MultipleParents,
                format!("node has parents {}", names.join(", ")),
            ));
        }
    }

    if tree.node(&tree.root).is_some() {
        let reachable: HashSet<usize> = tree.postorder().into_iter().collect();
        let mut reported = HashSet::new();
        for (i, (id, _)) in tree.nodes.iter().enumerate() {
            if tree.index.get(id) == Some(&i) && !reachable.contains(&i) && reported.insert(id) {
                v.push(Violation::at(
                    id,
                    Rule::Unreachable,
                    "node is not reachable from the root",
                ));
            }
        }
    }

    if report.violations.is_empty() {
        report.warnings = temporal_order_warnings(tree);
    }
    report
}

fn check_edge_weights(mode: TreeMode, id: &NodeId, edges: &[Edge], v: &mut Vec<Violation>) {
    match mode {
        TreeMode::Possibilistic => {
            let mut best: Option<&Degree> = None;
            for edge in edges {
                match &edge.weight {
                    EdgeWeight::Degree(d) => best = Some(best.map_or(d, |b| b.max(d))),
                    EdgeWeight::Rank(_) => {
                        v.push(Violation::at(
                            id,
                            Rule::WeightKind,
                            "kappa rank on an edge of a possibilistic tree",
                        ));
                        return;
                    }
                }
            }
            if let Some(best) = best {
                if !best.is_one() {
                    v.push(Violation::at(
                        id,
                        Rule::Normalization,
                        format!("maximum edge degree is {best}, expected 1"),
                    ));
                }
            }
        }
        TreeMode::Kappa => {
            let mut best: Option<KappaRank> = None;
            for edge in edges {
                match &edge.weight {
                    EdgeWeight::Rank(k) => best = Some(best.map_or(*k, |b| b.min(*k))),
                    EdgeWeight::Degree(_) => {
                        v.push(Violation::at(
                            id,
                            Rule::WeightKind,
                            "possibility degree on an edge of a kappa tree",
                        ));
                        return;
                    }
                }
            }
            if let Some(best) = best {
                if best != KappaRank::ZERO {
                    v.push(Violation::at(
                        id,
                        Rule::Normalization,
                        format!("minimum edge rank is {best}, expected 0"),
                    ));
                }
            }
        }
    }
}

/// Splits `D12` into `("D", 12)`.
fn numbered(id: &NodeId) -> Option<(&str, u64)> {
    let s = id.as_str();
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if cut == s.len() {
        return None;
    }
    s[cut..].parse().ok().map(|n| (&s[..cut], n))
}

/// A decision node labelled `Dj` whose descendant decision node is labelled
/// `Di` with `i <= j` gets a warning.
fn temporal_order_warnings(tree: &DecisionTree) -> Vec<Violation> {
    let mut warnings = Vec::new();
    let Some(root) = tree.position(&tree.root) else {
        return warnings;
    };
    // (position, nearest decision ancestor label)
    let mut stack: Vec<(usize, Option<(String, u64, NodeId)>)> = vec![(root, None)];
    while let Some((p, ancestor)) = stack.pop() {
        let (id, node) = tree.at(p);
        let mut carry = ancestor.clone();
        if node.is_decision() {
            if let Some((prefix, n)) = numbered(id) {
                if let Some((aprefix, an, aid)) = &ancestor {
                    if aprefix == prefix && n <= *an {
                        warnings.push(Violation::at(
                            id,
                            Rule::TemporalOrder,
                            format!("descendant of `{aid}` should carry a larger index"),
                        ));
                    }
                }
                carry = Some((prefix.to_string(), n, id.clone()));
            }
        }
        for child in node.child_ids() {
            if let Some(c) = tree.position(child) {
                stack.push((c, carry.clone()));
            }
        }
    }
    warnings
}

/// Checks that a tree's leaves fit the criterion about to be applied.
pub fn check_criterion(tree: &DecisionTree, criterion: &Criterion) -> Vec<Violation> {
    let mut out = Vec::new();
    let Some(kind) = tree.payload_kind() else {
        return out;
    };
    if kind.lottery_kind() != criterion.lottery_kind() {
        out.push(Violation {
            node: None,
            rule: Rule::CriterionKind,
            message: format!(
                "{criterion} needs {} leaves, tree has {kind} leaves",
                criterion.lottery_kind()
            ),
        });
        return out;
    }
    let unit_scale = matches!(
        criterion.id,
        CriterionId::Upes | CriterionId::Uopt | CriterionId::Pu
    );
    if unit_scale && kind == PayloadKind::Utility {
        for (id, node) in tree.nodes() {
            if let Node::Leaf(LeafPayload::Utility(u)) = node {
                if !u.is_unit() {
                    out.push(Violation::at(
                        id,
                        Rule::Scale,
                        format!("utility {u} is outside [0, 1]"),
                    ));
                }
            }
        }
    }
    out
}

/// Outcome types a tree's leaves can be read as.
pub trait TreeOutcome: Ord + Clone + fmt::Debug + Sized {
    type Weight: Plausibility;

    fn from_payload(payload: &LeafPayload) -> Option<Self>;
    fn weight(weight: &EdgeWeight) -> Option<Self::Weight>;
    fn wrap(lottery: Lottery<Self, Self::Weight>) -> AnyLottery;
}

impl TreeOutcome for Utility {
    type Weight = Degree;

    fn from_payload(payload: &LeafPayload) -> Option<Self> {
        match payload {
            LeafPayload::Utility(u) => Some(u.clone()),
            _ => None,
        }
    }

    fn weight(weight: &EdgeWeight) -> Option<Degree> {
        match weight {
            EdgeWeight::Degree(d) => Some(d.clone()),
            EdgeWeight::Rank(_) => None,
        }
    }

    fn wrap(lottery: Lottery<Self, Degree>) -> AnyLottery {
        AnyLottery::Scalar(lottery)
    }
}

impl TreeOutcome for BinaryUtility {
    type Weight = Degree;

    fn from_payload(payload: &LeafPayload) -> Option<Self> {
        match payload {
            LeafPayload::Binary(b) => Some(b.clone()),
            _ => None,
        }
    }

    fn weight(weight: &EdgeWeight) -> Option<Degree> {
        <Utility as TreeOutcome>::weight(weight)
    }

    fn wrap(lottery: Lottery<Self, Degree>) -> AnyLottery {
        AnyLottery::Binary(lottery)
    }
}

impl TreeOutcome for KappaRank {
    type Weight = KappaRank;

    fn from_payload(payload: &LeafPayload) -> Option<Self> {
        match payload {
            LeafPayload::Mu(mu) => Some(*mu),
            _ => None,
        }
    }

    fn weight(weight: &EdgeWeight) -> Option<KappaRank> {
        match weight {
            EdgeWeight::Rank(k) => Some(*k),
            EdgeWeight::Degree(_) => None,
        }
    }

    fn wrap(lottery: Lottery<Self, KappaRank>) -> AnyLottery {
        AnyLottery::Kappa(lottery)
    }
}

/// Small builder for hand-written trees.
#[derive(Debug, Clone)]
pub struct TreeBuilder {
    mode: TreeMode,
    nodes: Vec<(NodeId, Node)>,
}

impl TreeBuilder {
    pub fn new(mode: TreeMode) -> Self {
        TreeBuilder {
            mode,
            nodes: Vec::new(),
        }
    }

    pub fn decision(mut self, id: &str, children: &[&str]) -> Self {
        let children = children.iter().map(|c| NodeId::from(*c)).collect();
        self.nodes.push((id.into(), Node::Decision { children }));
        self
    }

    /// Chance node with possibility degrees, e.g. `&[("L1", "0.4"), ("D1", "1")]`.
    pub fn chance(mut self, id: &str, edges: &[(&str, &str)]) -> Self {
        let edges = edges
            .iter()
            .map(|(child, w)| {
                let weight = match self.mode {
                    TreeMode::Possibilistic => {
                        EdgeWeight::Degree(w.parse().expect("degree literal"))
                    }
                    TreeMode::Kappa => EdgeWeight::Rank(w.parse().expect("rank literal")),
                };
                Edge::new(*child, weight)
            })
            .collect();
        self.nodes.push((id.into(), Node::Chance { edges }));
        self
    }

    pub fn leaf(mut self, id: &str, utility: &str) -> Self {
        let payload = match self.mode {
            TreeMode::Possibilistic => {
                LeafPayload::Utility(utility.parse().expect("utility literal"))
            }
            TreeMode::Kappa => LeafPayload::Mu(utility.parse().expect("rank literal")),
        };
        self.nodes.push((id.into(), Node::Leaf(payload)));
        self
    }

    pub fn binary_leaf(mut self, id: &str, top: &str, bottom: &str) -> Self {
        let b = BinaryUtility::new(
            top.parse().expect("degree"),
            bottom.parse().expect("degree"),
        )
        .expect("normalized pair");
        self.nodes
            .push((id.into(), Node::Leaf(LeafPayload::Binary(b))));
        self
    }

    pub fn node(mut self, id: &str, node: Node) -> Self {
        self.nodes.push((id.into(), node));
        self
    }

    pub fn build(self, root: &str) -> DecisionTree {
        DecisionTree::new(self.mode, root, self.nodes)
    }
}
