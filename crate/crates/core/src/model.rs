//! Instance and solution data model.
//!
//! Node ids are dense indices assigned in declaration order; the textual
//! labels from input files are kept alongside for output. Network edges are
//! addressed by their normalized endpoint pair `(min, max)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{invalid, Result};
use crate::rational::Rational;

pub type NodeId = usize;

/// Normalized key for an undirected edge.
pub fn edge_key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_labels(labels: &[String], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if l.is_empty() || l.contains(char::is_whitespace) || l == ":" {
            return Err(invalid(format!("{what} label {l:?} is not a single token")));
        }
        if !seen.insert(l.as_str()) {
            return Err(invalid(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(())
}

fn build_adjacency(
    n: usize,
    edges: &[(NodeId, NodeId, Rational)],
    what: &str,
) -> Result<Vec<Vec<(NodeId, usize)>>> {
    let mut adjacency = vec![Vec::new(); n];
    let mut seen = BTreeSet::new();
    for (idx, (u, v, w)) in edges.iter().enumerate() {
        if *u >= n || *v >= n {
            return Err(invalid(format!("{what} edge {idx} references unknown node")));
        }
        if u == v {
            return Err(invalid(format!("{what} has a self-loop at node {u}: no self-loops")));
        }
        if !seen.insert(edge_key(*u, *v)) {
            return Err(invalid(format!(
                "{what} has parallel edges between {u} and {v}: at most one edge per node pair"
            )));
        }
        if w.is_negative() {
            return Err(invalid(format!("{what} edge {u}-{v} has negative weight {w}")));
        }
        adjacency[*u].push((*v, idx));
        adjacency[*v].push((*u, idx));
    }
    for list in &mut adjacency {
        list.sort();
    }
    Ok(adjacency)
}

fn is_connected(adjacency: &[Vec<(NodeId, usize)>]) -> bool {
    if adjacency.is_empty() {
        return true;
    }
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == adjacency.len()
}

/// The host network `G` with per-unit edge costs and named terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId, Rational)>,
    terminals: BTreeMap<String, NodeId>,
    terminal_of: Vec<Option<String>>,
    adjacency: Vec<Vec<(NodeId, usize)>>,
    edge_index: HashMap<(NodeId, NodeId), usize>,
}

impl Network {
    pub fn new(
        labels: Vec<String>,
        edges: Vec<(NodeId, NodeId, Rational)>,
        terminals: Vec<(String, NodeId)>,
    ) -> Result<Self> {
        check_labels(&labels, "network node")?;
        let n = labels.len();
        if n == 0 {
            return Err(invalid("network has no nodes"));
        }
        let adjacency = build_adjacency(n, &edges, "network")?;
        if !is_connected(&adjacency) {
            return Err(invalid("network is disconnected: network must be connected"));
        }
        let mut terminal_map = BTreeMap::new();
        let mut terminal_of = vec![None; n];
        for (name, node) in terminals {
            if node >= n {
                return Err(invalid(format!("terminal {name:?} references unknown node")));
            }
            if terminal_of[node].is_some() {
                return Err(invalid(format!(
                    "node {} carries two terminals: terminal node-ids are distinct",
                    labels[node]
                )));
            }
            if terminal_map.insert(name.clone(), node).is_some() {
                return Err(invalid(format!("duplicate terminal name {name:?}")));
            }
            terminal_of[node] = Some(name);
        }
        if terminal_map.len() < 2 {
            return Err(invalid("network needs at least two terminals: |terminals| >= 2"));
        }
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, (u, v, _))| (edge_key(*u, *v), i))
            .collect();
        Ok(Network {
            labels,
            edges,
            terminals: terminal_map,
            terminal_of,
            adjacency,
            edge_index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(NodeId, NodeId, Rational)] {
        &self.edges
    }

    pub fn cost(&self, u: NodeId, v: NodeId) -> Option<&Rational> {
        self.edge_index.get(&edge_key(u, v)).map(|&i| &self.edges[i].2)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_index.contains_key(&edge_key(u, v))
    }

    /// Neighbors in increasing id order, with the connecting edge index.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn terminals(&self) -> &BTreeMap<String, NodeId> {
        &self.terminals
    }

    pub fn terminal_node(&self, name: &str) -> Option<NodeId> {
        self.terminals.get(name).copied()
    }

    pub fn terminal_at(&self, v: NodeId) -> Option<&str> {
        self.terminal_of[v].as_deref()
    }

    pub fn terminal_names(&self) -> BTreeSet<String> {
        self.terminals.keys().cloned().collect()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.node_count()
    }

    /// Total cost of a walk given as a node sequence. Returns `None` if two
    /// consecutive nodes are not adjacent.
    pub fn walk_cost(&self, walk: &[NodeId]) -> Option<Rational> {
        walk.windows(2)
            .map(|w| self.cost(w[0], w[1]).cloned())
            .sum::<Option<Rational>>()
    }
}

/// A capacitated hub tree whose leaves are named by terminals.
///
/// Used both as the universe descriptor `T^b` and as a candidate or
/// solution hub tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapTree {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId, Rational)>,
    leaf_names: Vec<Option<String>>,
    adjacency: Vec<Vec<(NodeId, usize)>>,
}

impl CapTree {
    pub fn new(
        labels: Vec<String>,
        edges: Vec<(NodeId, NodeId, Rational)>,
        leaves: Vec<(NodeId, String)>,
    ) -> Result<Self> {
        check_labels(&labels, "hub tree node")?;
        let n = labels.len();
        if n < 2 {
            return Err(invalid("hub tree needs at least two nodes"));
        }
        let adjacency = build_adjacency(n, &edges, "hub tree")?;
        if edges.len() + 1 != n || !is_connected(&adjacency) {
            return Err(invalid("hub tree edges do not form a tree"));
        }
        let mut leaf_names = vec![None; n];
        let mut names = BTreeSet::new();
        for (node, name) in leaves {
            if node >= n {
                return Err(invalid(format!("leaf {name:?} references unknown tree node")));
            }
            if adjacency[node].len() != 1 {
                return Err(invalid(format!(
                    "tree node {} has degree {} but is labeled {name:?}: leafMap covers exactly degree-1 nodes",
                    labels[node],
                    adjacency[node].len()
                )));
            }
            if leaf_names[node].is_some() || !names.insert(name.clone()) {
                return Err(invalid(format!("leaf name {name:?} used twice: leafMap is a bijection")));
            }
            leaf_names[node] = Some(name);
        }
        if let Some(v) = (0..n).find(|&v| adjacency[v].len() == 1 && leaf_names[v].is_none()) {
            return Err(invalid(format!(
                "tree node {} is a leaf without a terminal: leafMap covers exactly degree-1 nodes",
                labels[v]
            )));
        }
        Ok(CapTree {
            labels,
            edges,
            leaf_names,
            adjacency,
        })
    }

    /// Views a tree network whose leaves are exactly its terminals as a hub
    /// tree with the given per-edge capacities (indexed like the network's
    /// edges). Node ids and labels are preserved.
    pub fn from_tree_network(network: &Network, capacities: &[Rational]) -> Result<Self> {
        if !network.is_tree() {
            return Err(invalid("network is not a tree"));
        }
        if capacities.len() != network.edges().len() {
            return Err(invalid("capacity count does not match edge count"));
        }
        let edges = network
            .edges()
            .iter()
            .zip(capacities)
            .map(|((u, v, _), c)| (*u, *v, c.clone()))
            .collect();
        let leaves = network
            .terminals()
            .iter()
            .map(|(name, &v)| (v, name.clone()))
            .collect();
        CapTree::new(network.labels().to_vec(), edges, leaves)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(NodeId, NodeId, Rational)] {
        &self.edges
    }

    pub fn capacity(&self, edge: usize) -> &Rational {
        &self.edges[edge].2
    }

    pub fn capacities(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.2.clone()).collect()
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.adjacency[u].iter().find(|(w, _)| *w == v).map(|(_, e)| *e)
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.leaf_names[v].is_some()
    }

    pub fn leaf_name(&self, v: NodeId) -> Option<&str> {
        self.leaf_names[v].as_deref()
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        (0..self.node_count()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_nodes(&self) -> Vec<NodeId> {
        (0..self.node_count()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn leaf_of(&self, name: &str) -> Option<NodeId> {
        self.leaf_names.iter().position(|n| n.as_deref() == Some(name))
    }

    pub fn terminal_names(&self) -> BTreeSet<String> {
        self.leaf_names.iter().flatten().cloned().collect()
    }

    /// Same topology and labels with new capacities.
    pub fn with_capacities(&self, capacities: Vec<Rational>) -> CapTree {
        assert_eq!(capacities.len(), self.edges.len());
        assert!(capacities.iter().all(|c| !c.is_negative()));
        let mut tree = self.clone();
        for (edge, c) in tree.edges.iter_mut().zip(capacities) {
            edge.2 = c;
        }
        tree
    }

    /// Membership mask of the component of `T - edge` that does not contain
    /// `anchor`.
    pub fn far_side(&self, edge: usize, anchor: NodeId) -> Vec<bool> {
        let (u, v, _) = self.edges[edge];
        let mut reach = vec![false; self.node_count()];
        reach[anchor] = true;
        let mut stack = vec![anchor];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.adjacency[x] {
                if e != edge && !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        debug_assert!(reach[u] != reach[v]);
        reach.iter().map(|r| !r).collect()
    }

    /// The unique simple path from `from` to `to` as a node sequence.
    pub fn path(&self, from: NodeId, to: NodeId) -> Vec<NodeId> {
        let mut parent = vec![usize::MAX; self.node_count()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, _) in &self.adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Nodes in an order where every node follows its parent, rooted at
    /// `root`, together with the parent of each node (`None` for the root).
    pub fn rooted_order(&self, root: NodeId) -> (Vec<NodeId>, Vec<Option<(NodeId, usize)>>) {
        let mut parent = vec![None; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &(y, e) in self.adjacency[x].iter().rev() {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        (order, parent)
    }
}

/// An input to the hubbing problem: host network plus universe tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub network: Network,
    pub universe: CapTree,
}

impl Instance {
    pub fn new(network: Network, universe: CapTree) -> Result<Self> {
        if network.terminal_names() != universe.terminal_names() {
            return Err(invalid(
                "hub tree leaf names differ from network terminal names: leafMap terminal names equal network terminal names",
            ));
        }
        Ok(Instance { network, universe })
    }

    /// Non-fatal remarks about the input (currently: zero-capacity tree edges).
    pub fn warnings(&self) -> Vec<String> {
        self.universe
            .edges()
            .iter()
            .filter(|(_, _, c)| c.is_zero())
            .map(|(u, v, _)| {
                format!(
                    "hub tree edge {}-{} has zero capacity",
                    self.universe.label(*u),
                    self.universe.label(*v)
                )
            })
            .collect()
    }

    /// Network node hosting the terminal at tree leaf `leaf`.
    pub fn leaf_host(&self, tree: &CapTree, leaf: NodeId) -> Option<NodeId> {
        tree.leaf_name(leaf).and_then(|n| self.network.terminal_node(n))
    }
}

/// A T-hubbing: hub placement, one cable per hub tree edge and a capacity
/// allocation on network edges.
///
/// `cables[f]` runs from `placement[u]` to `placement[v]` where `(u, v)` are
/// the stored endpoints of hub tree edge `f`. A cable whose endpoints share a
/// placement is the single-node path. `allocation` only holds nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hubbing {
    pub hub_tree: CapTree,
    pub placement: Vec<NodeId>,
    pub cables: Vec<Vec<NodeId>>,
    pub allocation: BTreeMap<(NodeId, NodeId), Rational>,
    pub cost: Rational,
}

impl Hubbing {
    /// Builds a hubbing whose allocation is exactly the cable load.
    pub fn tight(
        network: &Network,
        hub_tree: CapTree,
        placement: Vec<NodeId>,
        cables: Vec<Vec<NodeId>>,
    ) -> Hubbing {
        let allocation = cable_loads(&hub_tree, &cables, &hub_tree.capacities());
        let cost = allocation_cost(network, &allocation);
        Hubbing {
            hub_tree,
            placement,
            cables,
            allocation,
            cost,
        }
    }

    pub fn allocation_on(&self, u: NodeId, v: NodeId) -> Rational {
        self.allocation
            .get(&edge_key(u, v))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Cable of hub tree edge `f` oriented from `placement[from]`.
    pub fn cable_from(&self, f: usize, from: NodeId) -> Vec<NodeId> {
        let mut cable = self.cables[f].clone();
        if self.hub_tree.edges()[f].0 != from {
            cable.reverse();
        }
        cable
    }
}

/// Sum of `capacities[f]` over the cables crossing each network edge.
pub fn cable_loads(
    hub_tree: &CapTree,
    cables: &[Vec<NodeId>],
    capacities: &[Rational],
) -> BTreeMap<(NodeId, NodeId), Rational> {
    debug_assert_eq!(hub_tree.edges().len(), cables.len());
    let mut loads: BTreeMap<(NodeId, NodeId), Rational> = BTreeMap::new();
    for (cable, cap) in cables.iter().zip(capacities) {
        if cap.is_zero() {
            continue;
        }
        for w in cable.windows(2) {
            *loads.entry(edge_key(w[0], w[1])).or_default() += cap;
        }
    }
    loads.retain(|_, v| !v.is_zero());
    loads
}

pub fn allocation_cost(network: &Network, allocation: &BTreeMap<(NodeId, NodeId), Rational>) -> Rational {
    allocation
        .iter()
        .map(|(&(u, v), a)| network.cost(u, v).map(|c| c * a).unwrap_or_else(Rational::zero))
        .sum()
}
