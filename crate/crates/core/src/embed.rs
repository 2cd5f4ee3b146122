//! Optimal embedding of a capacitated hub tree into a network.
//!
//! Given placements of the hub tree nodes, the cheapest cables are shortest
//! paths, so the cost of an embedding is
//! `sum over tree edges f = vw of b(f) * dist(place(v), place(w))`.
//! Leaves are pinned to their terminals, and the remaining placements are
//! chosen by a dynamic program over the tree rooted at its smallest-id leaf.

use std::collections::BTreeMap;

use crate::error::{invalid, precondition, Error, Result};
use crate::flow::defining_capacities;
use crate::metric::{all_pairs_shortest_paths, Metric};
use crate::model::{CapTree, Hubbing, Instance, Network, NodeId};
use crate::rational::Rational;

/// `sum b(f) * dist(placement(u), placement(v))` over tree edges.
pub fn embedding_objective(tree: &CapTree, metric: &Metric, placement: &[NodeId]) -> Rational {
    tree.edges()
        .iter()
        .map(|(u, v, b)| b * metric.dist(placement[*u], placement[*v]))
        .sum()
}

/// Embeds `tree` at the given placement using canonical shortest-path cables
/// and the tight allocation.
pub fn embed_at(network: &Network, metric: &Metric, tree: CapTree, placement: Vec<NodeId>) -> Hubbing {
    let cables = tree
        .edges()
        .iter()
        .map(|(u, v, _)| metric.path(placement[*u], placement[*v]))
        .collect();
    Hubbing::tight(network, tree, placement, cables)
}

fn leaf_hosts(network: &Network, tree: &CapTree) -> Result<Vec<Option<NodeId>>> {
    (0..tree.node_count())
        .map(|v| match tree.leaf_name(v) {
            Some(name) => network
                .terminal_node(name)
                .map(Some)
                .ok_or_else(|| invalid(format!("leaf {name:?} is not a network terminal"))),
            None => Ok(None),
        })
        .collect()
}

/// Minimum-cost placement of `tree` as given (no capacity preprocessing).
///
/// `cost(w, v)` is the cheapest embedding of the subtree below `w` when `w`
/// sits at `v`; for each child `x` joined by capacity `b`,
/// `cost(w, v) += min over v' of cost(x, v') + b * dist(v, v')`. Leaves are
/// finite only at their terminal. Ties go to the smallest network node id.
pub fn optimal_embedding(network: &Network, metric: &Metric, tree: &CapTree) -> Result<Hubbing> {
    let hosts = leaf_hosts(network, tree)?;
    let n = network.node_count();
    let root = *tree.leaves().first().expect("tree has leaves");
    let (order, parent) = tree.rooted_order(root);

    let mut cost: Vec<Vec<Option<Rational>>> = vec![Vec::new(); tree.node_count()];
    let mut choice: Vec<Vec<NodeId>> = vec![Vec::new(); tree.node_count()];
    for &w in order.iter().rev() {
        let mut row: Vec<Option<Rational>> = match hosts[w] {
            Some(h) => (0..n).map(|v| (v == h).then(Rational::zero)).collect(),
            None => vec![Some(Rational::zero()); n],
        };
        for &(x, e) in tree.neighbors(w) {
            if parent[x].map(|(p, _)| p) != Some(w) {
                continue;
            }
            let b = tree.capacity(e);
            let child_row = std::mem::take(&mut cost[x]);
            let mut picks = Vec::with_capacity(n);
            for (v, slot) in row.iter_mut().enumerate() {
                let mut best: Option<(Rational, NodeId)> = None;
                for (v2, c) in child_row.iter().enumerate() {
                    let Some(c) = c else { continue };
                    let total = c + b * metric.dist(v, v2);
                    if best.as_ref().is_none_or(|(bt, _)| total < *bt) {
                        best = Some((total, v2));
                    }
                }
                let (total, arg) = best.expect("child row has a finite entry");
                picks.push(arg);
                if let Some(s) = slot.as_mut() {
                    *s += total;
                }
            }
            choice[x] = picks;
        }
        cost[w] = row;
    }

    let mut placement = vec![usize::MAX; tree.node_count()];
    placement[root] = hosts[root].expect("root is a leaf");
    for &w in &order {
        if let Some((p, _)) = parent[w] {
            placement[w] = choice[w][placement[p]];
        }
    }
    let optimum = cost[root][placement[root]].clone().expect("root row is finite at its terminal");
    let hubbing = embed_at(network, metric, tree.clone(), placement);
    if hubbing.cost != optimum {
        return Err(Error::Internal(format!(
            "embedding cost {} differs from table optimum {optimum}",
            hubbing.cost
        )));
    }
    Ok(hubbing)
}

/// Optimal T-hubbing of the instance's universe tree, after replacing its
/// capacities by defining capacities.
pub fn optimal_t_hubbing(inst: &Instance) -> Result<Hubbing> {
    let metric = all_pairs_shortest_paths(&inst.network);
    optimal_embedding(&inst.network, &metric, &defining_capacities(&inst.universe))
}

fn fresh_label(taken: &[String], base: &str) -> String {
    let mut label = base.to_string();
    while taken.contains(&label) {
        label.push('_');
    }
    label
}

/// Single-hub routing for hose-model marginals.
///
/// Marginals are first made defining (`b_i <= sum of the others`), then the
/// hub goes to the node minimizing `sum b_i * dist(i, v)` (smallest id on
/// ties) and every terminal gets a shortest-path cable of capacity `b_i`.
pub fn hub_routing(network: &Network, marginals: &BTreeMap<String, Rational>) -> Result<Hubbing> {
    if marginals.keys().ne(network.terminals().keys()) {
        return Err(precondition("marginals must be given for exactly the network terminals"));
    }
    if marginals.values().any(Rational::is_negative) {
        return Err(precondition("marginals must be nonnegative"));
    }
    if marginals.values().filter(|b| b.is_positive()).count() < 2 {
        return Err(precondition("at least two marginals must be positive"));
    }
    let total: Rational = marginals.values().sum();
    let defining: Vec<(NodeId, Rational)> = marginals
        .iter()
        .map(|(name, b)| {
            let others = &total - b;
            (network.terminal_node(name).expect("checked"), b.clone().min(others))
        })
        .collect();

    let metric = all_pairs_shortest_paths(network);
    let weighted = |v: NodeId| -> Rational { defining.iter().map(|(i, b)| b * metric.dist(*i, v)).sum() };
    let mut hub = 0;
    let mut best = weighted(0);
    for v in 1..network.node_count() {
        let w = weighted(v);
        if w < best {
            best = w;
            hub = v;
        }
    }

    let names: Vec<String> = marginals.keys().cloned().collect();
    let mut labels = vec![fresh_label(&names, "hub")];
    labels.extend(names.iter().cloned());
    let edges = defining
        .iter()
        .enumerate()
        .map(|(i, (_, b))| (0, i + 1, b.clone()))
        .collect();
    let leaves = names.iter().enumerate().map(|(i, n)| (i + 1, n.clone())).collect();
    let tree = CapTree::new(labels, edges, leaves)?;
    let mut placement = vec![hub];
    placement.extend(defining.iter().map(|(i, _)| *i));
    Ok(embed_at(network, &metric, tree, placement))
}

/// The network walk a hubbing uses between terminals `from` and `to`: the
/// concatenation of cables along the tree path. It may revisit nodes.
pub fn extract_route(h: &Hubbing, from: &str, to: &str) -> Result<Vec<NodeId>> {
    let tree = &h.hub_tree;
    let a = tree
        .leaf_of(from)
        .ok_or_else(|| precondition(format!("unknown terminal {from:?}")))?;
    let b = tree
        .leaf_of(to)
        .ok_or_else(|| precondition(format!("unknown terminal {to:?}")))?;
    if a == b {
        return Err(precondition("route endpoints must differ"));
    }
    let mut walk = vec![h.placement[a]];
    for pair in tree.path(a, b).windows(2) {
        let f = tree.edge_between(pair[0], pair[1]).expect("path follows edges");
        walk.extend(h.cable_from(f, pair[0]).into_iter().skip(1));
    }
    Ok(walk)
}

/// Placement space limit for [`brute_force_placement`].
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Exhaustive minimum of the embedding objective over all placements of the
/// internal nodes (after defining preprocessing). Test oracle for the DP.
pub fn brute_force_placement(inst: &Instance) -> Result<Rational> {
    let tree = defining_capacities(&inst.universe);
    let network = &inst.network;
    let metric = all_pairs_shortest_paths(network);
    let internal = tree.internal_nodes();
    let n = network.node_count();
    let space = (n as u64)
        .checked_pow(internal.len() as u32)
        .filter(|&s| s <= BRUTE_FORCE_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{} placements", internal.len())))?;

    let mut placement: Vec<NodeId> = leaf_hosts(network, &tree)?
        .into_iter()
        .map(|h| h.unwrap_or(0))
        .collect();
    let mut best: Option<Rational> = None;
    for mut code in 0..space {
        for &w in &internal {
            placement[w] = (code % n as u64) as usize;
            code /= n as u64;
        }
        let value = embedding_objective(&tree, &metric, &placement);
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("at least one placement"))
}
