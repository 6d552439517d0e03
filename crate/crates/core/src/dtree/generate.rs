use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{DecisionTree, Edge, EdgeWeight, LeafPayload, Node, NodeId, PayloadKind, TreeMode};
use crate::criteria::BinaryUtility;
use crate::numbers::{Degree, KappaRank, Utility};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("branching must be at least 1")]
    ZeroBranching,
    #[error("leaf probability {0} is outside [0, 1]")]
    LeafProbability(String),
    #[error("decision node budget must be at least 1")]
    ZeroBudget,
    #[error("the {0} grid is empty")]
    EmptyGrid(&'static str),
}

/// Shape and value grids for random trees.
#[derive(Debug, Clone)]
pub struct TreeProfile {
    /// Maximum number of decision levels along any path.
    pub depth: usize,
    /// Actions per decision node and outcomes per chance node.
    pub branching: usize,
    /// Draw each node's fan-out uniformly from `1..=branching`.
    pub variable_branching: bool,
    /// Chance that an outcome above the last level is a leaf anyway.
    pub leaf_probability: f64,
    pub payload: PayloadKind,
    pub max_decision_nodes: Option<usize>,
    pub degrees: Vec<Degree>,
    pub utilities: Vec<Utility>,
    /// Edge ranks of kappa trees.
    pub ranks: Vec<KappaRank>,
    /// Leaf μ values of kappa trees.
    pub mus: Vec<KappaRank>,
}

fn degree(text: &str) -> Degree {
    text.parse().expect("grid literal")
}

impl Default for TreeProfile {
    fn default() -> Self {
        TreeProfile {
            depth: 3,
            branching: 2,
            variable_branching: true,
            leaf_probability: 0.2,
            payload: PayloadKind::Utility,
            max_decision_nodes: None,
            degrees: [
                "0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1",
            ]
            .iter()
            .map(|d| degree(d))
            .collect(),
            utilities: ["0", "0.2", "0.4", "0.5", "0.6", "0.8", "1"]
                .iter()
                .map(|u| u.parse().expect("grid literal"))
                .collect(),
            ranks: (0..4).map(KappaRank::Finite).collect(),
            mus: (0..6)
                .map(KappaRank::Finite)
                .chain([KappaRank::Infinite])
                .collect(),
        }
    }
}

impl TreeProfile {
    pub fn with_payload(mut self, payload: PayloadKind) -> Self {
        self.payload = payload;
        self
    }

    fn check(&self) -> Result<(), GenerateError> {
        if self.depth == 0 {
            return Err(GenerateError::ZeroDepth);
        }
        if self.branching == 0 {
            return Err(GenerateError::ZeroBranching);
        }
        if !(0.0..=1.0).contains(&self.leaf_probability) {
            return Err(GenerateError::LeafProbability(
                self.leaf_probability.to_string(),
            ));
        }
        if self.max_decision_nodes == Some(0) {
            return Err(GenerateError::ZeroBudget);
        }
        match self.payload {
            PayloadKind::Utility | PayloadKind::Binary if self.degrees.is_empty() => {
                Err(GenerateError::EmptyGrid("degree"))
            }
            PayloadKind::Utility if self.utilities.is_empty() => {
                Err(GenerateError::EmptyGrid("utility"))
            }
            PayloadKind::Mu if self.ranks.is_empty() => Err(GenerateError::EmptyGrid("rank")),
            PayloadKind::Mu if self.mus.is_empty() => Err(GenerateError::EmptyGrid("mu")),
            _ => Ok(()),
        }
    }
}

struct Generator<'p> {
    profile: &'p TreeProfile,
    rng: ChaCha8Rng,
    nodes: Vec<(NodeId, Node)>,
    decisions: usize,
    chances: usize,
    leaves: usize,
}

impl Generator<'_> {
    fn fan_out(&mut self) -> usize {
        if self.profile.variable_branching {
            self.rng.random_range(1..=self.profile.branching)
        } else {
            self.profile.branching
        }
    }

    fn weight(&mut self, certain: bool) -> EdgeWeight {
        match self.profile.payload.mode() {
            TreeMode::Possibilistic if certain => EdgeWeight::Degree(Degree::one()),
            TreeMode::Possibilistic => EdgeWeight::Degree(
                self.profile
                    .degrees
                    .choose(&mut self.rng)
                    .expect("checked")
                    .clone(),
            ),
            TreeMode::Kappa if certain => EdgeWeight::Rank(KappaRank::ZERO),
            TreeMode::Kappa => {
                EdgeWeight::Rank(*self.profile.ranks.choose(&mut self.rng).expect("checked"))
            }
        }
    }

    fn payload(&mut self) -> LeafPayload {
        let p = self.profile;
        match p.payload {
            PayloadKind::Utility => {
                LeafPayload::Utility(p.utilities.choose(&mut self.rng).expect("checked").clone())
            }
            PayloadKind::Mu => LeafPayload::Mu(*p.mus.choose(&mut self.rng).expect("checked")),
            PayloadKind::Binary => {
                let other = p.degrees.choose(&mut self.rng).expect("checked").clone();
                let pair = if self.rng.random_bool(0.5) {
                    BinaryUtility::new(Degree::one(), other)
                } else {
                    BinaryUtility::new(other, Degree::one())
                };
                LeafPayload::Binary(pair.expect("one side is 1"))
            }
        }
    }

    fn leaf(&mut self) -> NodeId {
        self.leaves += 1;
        let id = NodeId::new(format!("L{}", self.leaves));
        let payload = self.payload();
        self.nodes.push((id.clone(), Node::Leaf(payload)));
        id
    }
}

/// Random valid tree, deterministic in `seed`.
///
/// Nodes are created breadth-first and numbered in creation order (`D0`,
/// `C1`, `L1`, ...), so decision indices grow along every path. Each chance
/// node has one uniformly chosen edge forced to be certain.
pub fn random_tree(seed: u64, profile: &TreeProfile) -> Result<DecisionTree, GenerateError> {
    profile.check()?;
    let mut g = Generator {
        profile,
        rng: ChaCha8Rng::seed_from_u64(seed),
        nodes: Vec::new(),
        decisions: 1,
        chances: 0,
        leaves: 0,
    };
    let budget = profile.max_decision_nodes.unwrap_or(usize::MAX);
    let root = NodeId::new("D0");
    let mut queue: VecDeque<(NodeId, usize)> = VecDeque::from([(root.clone(), 1)]);

    while let Some((id, level)) = queue.pop_front() {
        let actions = g.fan_out();
        let mut children = Vec::with_capacity(actions);
        let mut chance_nodes = Vec::with_capacity(actions);
        for _ in 0..actions {
            g.chances += 1;
            let cid = NodeId::new(format!("C{}", g.chances));
            children.push(cid.clone());
            chance_nodes.push(cid);
        }
        g.nodes.push((id, Node::Decision { children }));

        for cid in chance_nodes {
            let outcomes = g.fan_out();
            let certain = g.rng.random_range(0..outcomes);
            let mut edges = Vec::with_capacity(outcomes);
            let mut pending = Vec::new();
            for k in 0..outcomes {
                let weight = g.weight(k == certain);
                let deeper = level < profile.depth
                    && g.decisions < budget
                    && !g.rng.random_bool(profile.leaf_probability);
                let child = if deeper {
                    let did = NodeId::new(format!("D{}", g.decisions));
                    g.decisions += 1;
                    pending.push(did.clone());
                    did
                } else {
                    g.leaf()
                };
                edges.push(Edge::new(child, weight));
            }
            g.nodes.push((cid, Node::Chance { edges }));
            queue.extend(pending.into_iter().map(|d| (d, level + 1)));
        }
    }

    Ok(DecisionTree::new(profile.payload.mode(), root, g.nodes))
}

/// Tree whose strategy count is exactly `branching ^ decisions`.
///
/// The root has one action whose chance node leads to `decisions` decision
/// nodes `D1..Dn`; each has `branching` actions ending in leaves. Every
/// decision node is reachable under every strategy, so the count is the
/// product of the action counts. Weights and payloads are drawn from the
/// profile's grids.
pub fn comb_tree(
    seed: u64,
    decisions: usize,
    branching: usize,
    profile: &TreeProfile,
) -> Result<DecisionTree, GenerateError> {
    profile.check()?;
    if decisions == 0 {
        return Err(GenerateError::ZeroBudget);
    }
    if branching == 0 {
        return Err(GenerateError::ZeroBranching);
    }
    let mut g = Generator {
        profile,
        rng: ChaCha8Rng::seed_from_u64(seed),
        nodes: Vec::new(),
        decisions: 0,
        chances: 0,
        leaves: 0,
    };
    let root = NodeId::new("D0");
    g.nodes.push((
        root.clone(),
        Node::Decision {
            children: vec![NodeId::new("C0")],
        },
    ));
    let certain = g.rng.random_range(0..decisions);
    let spine = (0..decisions)
        .map(|k| {
            let w = g.weight(k == certain);
            Edge::new(NodeId::new(format!("D{}", k + 1)), w)
        })
        .collect();
    g.nodes
        .push((NodeId::new("C0"), Node::Chance { edges: spine }));
    for k in 0..decisions {
        let children: Vec<NodeId> = (0..branching)
            .map(|_| {
                g.chances += 1;
                NodeId::new(format!("C{}", g.chances))
            })
            .collect();
        g.nodes.push((
            NodeId::new(format!("D{}", k + 1)),
            Node::Decision {
                children: children.clone(),
            },
        ));
        for cid in children {
            let outcomes = g.fan_out();
            let certain = g.rng.random_range(0..outcomes);
            let edges = (0..outcomes)
                .map(|j| {
                    let w = g.weight(j == certain);
                    Edge::new(g.leaf(), w)
                })
                .collect();
            g.nodes.push((cid, Node::Chance { edges }));
        }
    }
    Ok(DecisionTree::new(profile.payload.mode(), root, g.nodes))
}
