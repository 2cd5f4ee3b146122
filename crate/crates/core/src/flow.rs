//! Max-flow / min-cut over undirected capacitated graphs, and the tree
//! quantities built from it: minimal minimum cuts, defining capacities and
//! cable capacities.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{precondition, Result};
use crate::model::{CapTree, NodeId};
use crate::rational::Rational;

/// Multi-source multi-sink flow problem on an undirected graph.
#[derive(Debug, Clone)]
pub struct FlowProblem {
    node_count: usize,
    edges: Vec<(NodeId, NodeId, Rational)>,
    sources: Vec<NodeId>,
    sinks: Vec<NodeId>,
}

impl FlowProblem {
    pub fn new(
        node_count: usize,
        edges: Vec<(NodeId, NodeId, Rational)>,
        sources: Vec<NodeId>,
        sinks: Vec<NodeId>,
    ) -> Result<Self> {
        if sources.is_empty() || sinks.is_empty() {
            return Err(precondition("sources and sinks must be nonempty"));
        }
        if sources.iter().chain(&sinks).any(|&v| v >= node_count) {
            return Err(precondition("terminal out of range"));
        }
        if sources.iter().any(|s| sinks.contains(s)) {
            return Err(precondition("sources and sinks must be disjoint"));
        }
        if edges.iter().any(|(u, v, c)| *u >= node_count || *v >= node_count || c.is_negative()) {
            return Err(precondition("edges must join known nodes with nonnegative capacity"));
        }
        Ok(FlowProblem {
            node_count,
            edges,
            sources,
            sinks,
        })
    }

    fn on_tree(tree: &CapTree, sources: Vec<NodeId>, sinks: Vec<NodeId>) -> Result<Self> {
        FlowProblem::new(tree.node_count(), tree.edges().to_vec(), sources, sinks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: Rational,
    /// Original nodes reachable from the super-source in the final residual
    /// graph.
    pub reachable: Vec<bool>,
}

struct Arc {
    to: usize,
    residual: Rational,
}

/// Shortest augmenting paths (Edmonds–Karp) with exact arithmetic.
///
/// Each undirected edge becomes a pair of opposite arcs that act as each
/// other's residual. Sources and sinks hang off an auxiliary super-source and
/// super-sink through arcs whose capacity exceeds the total edge capacity.
pub fn max_flow(p: &FlowProblem) -> MaxFlow {
    let n = p.node_count;
    let (source, sink) = (n, n + 1);
    let mut arcs: Vec<Arc> = Vec::with_capacity(2 * (p.edges.len() + p.sources.len() + p.sinks.len()));
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    let mut add = |arcs: &mut Vec<Arc>, u: usize, v: usize, forward: Rational, backward: Rational| {
        out[u].push(arcs.len());
        arcs.push(Arc { to: v, residual: forward });
        out[v].push(arcs.len());
        arcs.push(Arc { to: u, residual: backward });
    };
    let unlimited: Rational = p.edges.iter().map(|e| &e.2).sum::<Rational>() + Rational::one();
    for (u, v, c) in &p.edges {
        if !c.is_zero() {
            add(&mut arcs, *u, *v, c.clone(), c.clone());
        }
    }
    for &s in &p.sources {
        add(&mut arcs, source, s, unlimited.clone(), Rational::zero());
    }
    for &t in &p.sinks {
        add(&mut arcs, t, sink, unlimited.clone(), Rational::zero());
    }

    let mut value = Rational::zero();
    loop {
        let mut via = vec![usize::MAX; n + 2];
        let mut seen = vec![false; n + 2];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &out[u] {
                let to = arcs[a].to;
                if !seen[to] && arcs[a].residual.is_positive() {
                    seen[to] = true;
                    via[to] = a;
                    queue.push_back(to);
                }
            }
        }
        if !seen[sink] {
            seen.truncate(n);
            return MaxFlow { value, reachable: seen };
        }
        let mut bottleneck: Option<Rational> = None;
        let mut x = sink;
        while x != source {
            let a = via[x];
            bottleneck = Some(match bottleneck {
                Some(b) => b.min(arcs[a].residual.clone()),
                None => arcs[a].residual.clone(),
            });
            x = arcs[a ^ 1].to;
        }
        let delta = bottleneck.expect("augmenting path has at least one arc");
        let mut x = sink;
        while x != source {
            let a = via[x];
            arcs[a].residual -= &delta;
            arcs[a ^ 1].residual += &delta;
            x = arcs[a ^ 1].to;
        }
        value += delta;
    }
}

/// A cut in a tree: the source side and the capacity of its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: Rational,
    pub source_side: BTreeSet<NodeId>,
}

/// Capacity of the edge boundary of `side`.
pub fn boundary_capacity(edges: &[(NodeId, NodeId, Rational)], side: &[bool]) -> Rational {
    edges
        .iter()
        .filter(|(u, v, _)| side[*u] != side[*v])
        .map(|e| &e.2)
        .sum()
}

fn leaf_groups(tree: &CapTree, side: &BTreeSet<String>) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
    let names = tree.terminal_names();
    if let Some(unknown) = side.iter().find(|n| !names.contains(*n)) {
        return Err(precondition(format!("unknown terminal {unknown:?}")));
    }
    let (inside, outside): (Vec<_>, Vec<_>) = tree
        .leaves()
        .into_iter()
        .partition(|&v| side.contains(tree.leaf_name(v).expect("leaf")));
    if inside.is_empty() || outside.is_empty() {
        return Err(precondition("terminal bipartition must be nontrivial"));
    }
    Ok((inside, outside))
}

/// The inclusion-minimal minimum cut separating the leaves named in `side`
/// from the other leaves.
///
/// Computed as the residual-reachable set after a maximum flow. That set is
/// the same for every maximum flow and is the least element of the lattice of
/// minimum cut source sides, hence also the one of minimum cardinality.
pub fn minimal_min_cut(tree: &CapTree, side: &BTreeSet<String>) -> Result<CutResult> {
    let (sources, sinks) = leaf_groups(tree, side)?;
    let flow = max_flow(&FlowProblem::on_tree(tree, sources, sinks)?);
    Ok(CutResult {
        value: flow.value,
        source_side: (0..tree.node_count()).filter(|&v| flow.reachable[v]).collect(),
    })
}

/// Maximum total demand of the tree's universe across a terminal bipartition.
/// This is the cable capacity of any hub tree edge inducing that bipartition.
pub fn cable_capacity(universe: &CapTree, side: &BTreeSet<String>) -> Result<Rational> {
    let (sources, sinks) = leaf_groups(universe, side)?;
    Ok(max_flow(&FlowProblem::on_tree(universe, sources, sinks)?).value)
}

/// Terminal names on the side of `edge` away from `root`, and the rest.
pub fn leaf_bipartition(tree: &CapTree, edge: usize, root: NodeId) -> (BTreeSet<String>, BTreeSet<String>) {
    let far = tree.far_side(edge, root);
    let mut away = BTreeSet::new();
    let mut rest = BTreeSet::new();
    for v in tree.leaves() {
        let name = tree.leaf_name(v).expect("leaf").to_string();
        if far[v] {
            away.insert(name);
        } else {
            rest.insert(name);
        }
    }
    (away, rest)
}

/// Replaces every capacity by the largest load the universe can put on that
/// edge. The universe described is unchanged.
pub fn defining_capacities(tree: &CapTree) -> CapTree {
    let capacities = (0..tree.edges().len())
        .map(|e| {
            let far = tree.far_side(e, tree.edges()[e].0);
            let (sources, sinks): (Vec<_>, Vec<_>) = tree.leaves().into_iter().partition(|&v| far[v]);
            let problem = FlowProblem::on_tree(tree, sources, sinks).expect("every edge splits the leaves");
            max_flow(&problem).value
        })
        .collect();
    tree.with_capacities(capacities)
}

pub fn is_defining(tree: &CapTree) -> bool {
    defining_capacities(tree).edges() == tree.edges()
}
