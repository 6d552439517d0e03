//! Versioned JSON documents for trees, strategies and lotteries.
//!
//! Every number is a JSON string holding a decimal (`"0.51"`), a fraction
//! (`"51/100"`) or, for kappa ranks only, `"inf"`, so nothing passes through
//! floating point. Writers emit a canonical layout: two-space indentation,
//! fields in a fixed order, nodes in declaration order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{AnyLottery, BinaryUtility, LotteryKind};
use crate::dtree::{DecisionTree, Edge, EdgeWeight, LeafPayload, Node, NodeId, Strategy, TreeMode};
use crate::lottery::{KappaLottery, Lottery, LotteryError, SimpleLottery};
use crate::numbers::{Degree, KappaRank, Utility};

pub const TREE_FORMAT: &str = "possdt-tree/1";
pub const STRATEGY_FORMAT: &str = "possdt-strategy/1";
pub const LOTTERY_FORMAT: &str = "possdt-lottery/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format `{found}`, expected `{expected}`")]
    Version {
        found: String,
        expected: &'static str,
    },
    #[error("node `{node}`: {message}")]
    Node { node: String, message: String },
    #[error("entry {index}: {message}")]
    Entry { index: usize, message: String },
    #[error(transparent)]
    Lottery(#[from] LotteryError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn check_version(found: &str, expected: &'static str) -> Result<(), FormatError> {
    if found == expected {
        Ok(())
    } else {
        Err(FormatError::Version {
            found: found.to_string(),
            expected,
        })
    }
}

fn node_error(node: &str, message: impl Into<String>) -> FormatError {
    FormatError::Node {
        node: node.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NodeKind {
    Decision,
    Chance,
    Leaf,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    child: NodeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<Degree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kappa: Option<KappaRank>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: NodeId,
    kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<NodeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    utility: Option<Utility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    utility_pair: Option<(Degree, Degree)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<KappaRank>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    format: String,
    mode: TreeMode,
    root: NodeId,
    nodes: Vec<NodeDoc>,
}

impl NodeDoc {
    fn into_node(self) -> Result<(NodeId, Node), FormatError> {
        let id = self.id;
        let name = id.as_str();
        let payloads = [
            self.utility.is_some(),
            self.utility_pair.is_some(),
            self.mu.is_some(),
        ]
        .into_iter()
        .filter(|&b| b)
        .count();
        let node = match self.kind {
            NodeKind::Decision => {
                if self.edges.is_some() || payloads > 0 {
                    return Err(node_error(name, "a decision node only has `children`"));
                }
                let children = self
                    .children
                    .ok_or_else(|| node_error(name, "decision node needs `children`"))?;
                Node::Decision { children }
            }
            NodeKind::Chance => {
                if self.children.is_some() || payloads > 0 {
                    return Err(node_error(name, "a chance node only has `edges`"));
                }
                let edges = self
                    .edges
                    .ok_or_else(|| node_error(name, "chance node needs `edges`"))?;
                let edges = edges
                    .into_iter()
                    .map(|e| {
                        let weight = match (e.degree, e.kappa) {
                            (Some(d), None) => EdgeWeight::Degree(d),
                            (None, Some(k)) => EdgeWeight::Rank(k),
                            _ => {
                                return Err(node_error(
                                    name,
                                    format!(
                                        "edge to `{}` needs exactly one of `degree` or `kappa`",
                                        e.child
                                    ),
                                ))
                            }
                        };
                        Ok(Edge {
                            child: e.child,
                            weight,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Node::Chance { edges }
            }
            NodeKind::Leaf => {
                if self.children.is_some() || self.edges.is_some() || payloads != 1 {
                    return Err(node_error(
                        name,
                        "a leaf has exactly one of `utility`, `utility_pair` or `mu`",
                    ));
                }
                let payload = if let Some(u) = self.utility {
                    LeafPayload::Utility(u)
                } else if let Some((top, bottom)) = self.utility_pair {
                    LeafPayload::Binary(
                        BinaryUtility::new(top, bottom)
                            .map_err(|e| node_error(name, e.to_string()))?,
                    )
                } else {
                    LeafPayload::Mu(self.mu.expect("one payload present"))
                };
                Node::Leaf(payload)
            }
        };
        Ok((id, node))
    }

    fn from_node(id: &NodeId, node: &Node) -> NodeDoc {
        let mut doc = NodeDoc {
            id: id.clone(),
            kind: NodeKind::Leaf,
            children: None,
            edges: None,
            utility: None,
            utility_pair: None,
            mu: None,
        };
        match node {
            Node::Decision { children } => {
                doc.kind = NodeKind::Decision;
                doc.children = Some(children.clone());
            }
            Node::Chance { edges } => {
                doc.kind = NodeKind::Chance;
                doc.edges = Some(
                    edges
                        .iter()
                        .map(|e| {
                            let (degree, kappa) = match &e.weight {
                                EdgeWeight::Degree(d) => (Some(d.clone()), None),
                                EdgeWeight::Rank(k) => (None, Some(*k)),
                            };
                            EdgeDoc {
                                child: e.child.clone(),
                                degree,
                                kappa,
                            }
                        })
                        .collect(),
                );
            }
            Node::Leaf(LeafPayload::Utility(u)) => doc.utility = Some(u.clone()),
            Node::Leaf(LeafPayload::Binary(b)) => {
                doc.utility_pair = Some((b.top().clone(), b.bottom().clone()))
            }
            Node::Leaf(LeafPayload::Mu(m)) => doc.mu = Some(*m),
        }
        doc
    }
}

fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents always serialize");
    text.push('\n');
    text
}

/// Parses a tree document. Structural problems (bad parents, normalization,
/// mixed payloads, ...) are left to validation; only malformed documents fail.
pub fn parse_tree(text: &str) -> Result<DecisionTree, FormatError> {
    let doc: TreeDoc = serde_json::from_str(text)?;
    check_version(&doc.format, TREE_FORMAT)?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(NodeDoc::into_node)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecisionTree::new(doc.mode, doc.root, nodes))
}

pub fn write_tree(tree: &DecisionTree) -> String {
    let doc = TreeDoc {
        format: TREE_FORMAT.to_string(),
        mode: tree.mode(),
        root: tree.root().clone(),
        nodes: tree
            .nodes()
            .map(|(id, n)| NodeDoc::from_node(id, n))
            .collect(),
    };
    to_canonical_json(&doc)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyDoc {
    format: String,
    choices: BTreeMap<NodeId, NodeId>,
}

const BOTTOM: &str = "bottom";

/// Parses a strategy document; `"bottom"` marks an unassigned decision node.
pub fn parse_strategy(text: &str) -> Result<Strategy, FormatError> {
    let doc: StrategyDoc = serde_json::from_str(text)?;
    check_version(&doc.format, STRATEGY_FORMAT)?;
    let mut strategy = Strategy::new();
    for (d, c) in doc.choices {
        if c.as_str() != BOTTOM {
            strategy.assign(d, c);
        }
    }
    Ok(strategy)
}

/// Writes a strategy. With a tree, decision nodes the strategy leaves
/// unassigned are listed explicitly as `"bottom"`.
pub fn write_strategy(strategy: &Strategy, tree: Option<&DecisionTree>) -> String {
    let mut choices: BTreeMap<NodeId, NodeId> = strategy
        .iter()
        .map(|(d, c)| (d.clone(), c.clone()))
        .collect();
    if let Some(tree) = tree {
        for d in tree.decision_nodes() {
            choices
                .entry(d.clone())
                .or_insert_with(|| NodeId::new(BOTTOM));
        }
    }
    to_canonical_json(&StrategyDoc {
        format: STRATEGY_FORMAT.to_string(),
        choices,
    })
}

/// One lottery entry; which fields appear depends on the lottery kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<Utility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility_pair: Option<(Degree, Degree)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<KappaRank>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Degree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaRank>,
}

/// A lottery as it appears inside documents: a kind tag and its entries in
/// ascending outcome order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LotteryBody {
    pub kind: LotteryKind,
    pub entries: Vec<EntryDoc>,
}

fn entry_error(index: usize, message: impl Into<String>) -> FormatError {
    FormatError::Entry {
        index,
        message: message.into(),
    }
}

impl LotteryBody {
    pub fn from_lottery(lottery: &AnyLottery) -> LotteryBody {
        let empty = EntryDoc {
            utility: None,
            utility_pair: None,
            mu: None,
            degree: None,
            kappa: None,
        };
        let entries = match lottery {
            AnyLottery::Scalar(l) => l
                .iter()
                .map(|(u, d)| EntryDoc {
                    utility: Some(u.clone()),
                    degree: Some(d.clone()),
                    ..empty.clone()
                })
                .collect(),
            AnyLottery::Binary(l) => l
                .iter()
                .map(|(b, d)| EntryDoc {
                    utility_pair: Some((b.top().clone(), b.bottom().clone())),
                    degree: Some(d.clone()),
                    ..empty.clone()
                })
                .collect(),
            AnyLottery::Kappa(l) => l
                .iter()
                .map(|(mu, k)| EntryDoc {
                    mu: Some(*mu),
                    kappa: Some(*k),
                    ..empty.clone()
                })
                .collect(),
        };
        LotteryBody {
            kind: lottery.kind(),
            entries,
        }
    }

    pub fn to_lottery(&self) -> Result<AnyLottery, FormatError> {
        let fields = |e: &EntryDoc| {
            [
                e.utility.is_some(),
                e.utility_pair.is_some(),
                e.mu.is_some(),
                e.degree.is_some(),
                e.kappa.is_some(),
            ]
        };
        match self.kind {
            LotteryKind::Scalar => {
                let mut out = Vec::with_capacity(self.entries.len());
                for (i, e) in self.entries.iter().enumerate() {
                    match (&e.utility, &e.degree, fields(e)) {
                        (Some(u), Some(d), [true, false, false, true, false]) => {
                            out.push((u.clone(), d.clone()))
                        }
                        _ => {
                            return Err(entry_error(
                                i,
                                "scalar entries have exactly `utility` and `degree`",
                            ))
                        }
                    }
                }
                Ok(AnyLottery::Scalar(SimpleLottery::new(out)?))
            }
            LotteryKind::Binary => {
                let mut out = Vec::with_capacity(self.entries.len());
                for (i, e) in self.entries.iter().enumerate() {
                    match (&e.utility_pair, &e.degree, fields(e)) {
                        (Some((t, b)), Some(d), [false, true, false, true, false]) => {
                            let pair = BinaryUtility::new(t.clone(), b.clone())
                                .map_err(|err| entry_error(i, err.to_string()))?;
                            out.push((pair, d.clone()));
                        }
                        _ => {
                            return Err(entry_error(
                                i,
                                "binary entries have exactly `utility_pair` and `degree`",
                            ))
                        }
                    }
                }
                Ok(AnyLottery::Binary(Lottery::new(out)?))
            }
            LotteryKind::Kappa => {
                let mut out = Vec::with_capacity(self.entries.len());
                for (i, e) in self.entries.iter().enumerate() {
                    match (e.mu, e.kappa, fields(e)) {
                        (Some(mu), Some(k), [false, false, true, false, true]) => out.push((mu, k)),
                        _ => {
                            return Err(entry_error(
                                i,
                                "kappa entries have exactly `mu` and `kappa`",
                            ))
                        }
                    }
                }
                Ok(AnyLottery::Kappa(KappaLottery::new(out)?))
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LotteryDoc {
    format: String,
    kind: LotteryKind,
    entries: Vec<EntryDoc>,
}

pub fn parse_lottery(text: &str) -> Result<AnyLottery, FormatError> {
    let doc: LotteryDoc = serde_json::from_str(text)?;
    check_version(&doc.format, LOTTERY_FORMAT)?;
    LotteryBody {
        kind: doc.kind,
        entries: doc.entries,
    }
    .to_lottery()
}

pub fn write_lottery(lottery: &AnyLottery) -> String {
    let body = LotteryBody::from_lottery(lottery);
    to_canonical_json(&LotteryDoc {
        format: LOTTERY_FORMAT.to_string(),
        kind: body.kind,
        entries: body.entries,
    })
}
