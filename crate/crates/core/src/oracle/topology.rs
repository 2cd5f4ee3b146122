//! Series-reduced leaf-labeled tree topologies.
//!
//! Topologies on leaves `w_1 < ... < w_k` are generated by inserting leaves
//! one at a time, either attached to an existing internal node or onto a new
//! node subdividing an existing edge. Deleting the largest leaf (and
//! suppressing a resulting degree-2 node) inverts exactly one such step, so
//! every topology is produced once.

use std::collections::BTreeSet;

use crate::error::{precondition, Result};
use crate::model::{CapTree, NodeId};
use crate::rational::Rational;

pub const MAX_ENUMERATION_LEAVES: usize = 6;

/// A hub tree shape with zero capacities and its canonical code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubTopology {
    pub tree: CapTree,
    pub code: String,
}

#[derive(Clone)]
struct Shape {
    leaves: usize,
    internal: usize,
    edges: Vec<(usize, usize)>,
}

/// Leaf `i` is node `i`; internal node `j` is node `total_leaves + j`.
fn grow(shape: &Shape, total: usize, out: &mut Vec<Shape>) {
    if shape.leaves == total {
        out.push(shape.clone());
        return;
    }
    let leaf = shape.leaves;
    for j in 0..shape.internal {
        let mut next = shape.clone();
        next.leaves += 1;
        next.edges.push((total + j, leaf));
        grow(&next, total, out);
    }
    for e in 0..shape.edges.len() {
        let mut next = shape.clone();
        let (a, b) = next.edges[e];
        let hub = total + next.internal;
        next.internal += 1;
        next.leaves += 1;
        next.edges[e] = (a, hub);
        next.edges.push((hub, b));
        next.edges.push((hub, leaf));
        grow(&next, total, out);
    }
}

fn fresh_labels(names: &[String], count: usize) -> Vec<String> {
    let mut labels = Vec::with_capacity(count);
    let mut k = 0;
    while labels.len() < count {
        let label = format!("h{k}");
        k += 1;
        if !names.contains(&label) {
            labels.push(label);
        }
    }
    labels
}

fn to_tree(shape: &Shape, names: &[String]) -> CapTree {
    let total = names.len();
    let mut labels = names.to_vec();
    labels.extend(fresh_labels(names, shape.internal));
    let edges = shape.edges.iter().map(|&(u, v)| (u, v, Rational::zero())).collect();
    let leaves = names.iter().cloned().enumerate().collect();
    debug_assert_eq!(labels.len(), total + shape.internal);
    CapTree::new(labels, edges, leaves).expect("generated shape is a valid hub tree")
}

/// Canonical code: the tree rooted at its smallest leaf, written as nested
/// parentheses with children sorted by their own codes.
pub fn canonical_code(tree: &CapTree) -> String {
    fn code(tree: &CapTree, v: NodeId, parent: NodeId) -> String {
        if let Some(name) = tree.leaf_name(v) {
            return name.to_string();
        }
        let mut parts: Vec<String> = tree
            .neighbors(v)
            .iter()
            .filter(|(w, _)| *w != parent)
            .map(|(w, _)| code(tree, *w, v))
            .collect();
        parts.sort();
        format!("({})", parts.join(","))
    }
    let root = tree
        .leaves()
        .into_iter()
        .min_by(|a, b| tree.leaf_name(*a).cmp(&tree.leaf_name(*b)))
        .expect("tree has leaves");
    let (next, _) = tree.neighbors(root)[0];
    format!("{}:{}", tree.leaf_name(root).expect("leaf"), code(tree, next, root))
}

/// Every series-reduced topology on the given terminal names, ordered by
/// canonical code.
pub fn enumerate_hub_trees(terminals: &BTreeSet<String>) -> Result<Vec<HubTopology>> {
    let k = terminals.len();
    if !(2..=MAX_ENUMERATION_LEAVES).contains(&k) {
        return Err(precondition(format!(
            "topology enumeration supports 2..={MAX_ENUMERATION_LEAVES} terminals, got {k}"
        )));
    }
    let names: Vec<String> = terminals.iter().cloned().collect();
    let start = Shape {
        leaves: 2,
        internal: 0,
        edges: vec![(0, 1)],
    };
    let mut shapes = Vec::new();
    grow(&start, k, &mut shapes);
    let mut out: Vec<HubTopology> = shapes
        .iter()
        .map(|s| {
            let tree = to_tree(s, &names);
            HubTopology {
                code: canonical_code(&tree),
                tree,
            }
        })
        .collect();
    out.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(out)
}

/// Contracts internal nodes of degree 2, giving the merged edge the smaller
/// of the two capacities. Surviving nodes keep their labels.
pub fn series_reduce(tree: &CapTree) -> CapTree {
    let n = tree.node_count();
    let mut alive = vec![true; n];
    let mut adj: Vec<Vec<(NodeId, Rational)>> = (0..n)
        .map(|v| {
            tree.neighbors(v)
                .iter()
                .map(|&(w, e)| (w, tree.capacity(e).clone()))
                .collect()
        })
        .collect();
    while let Some(v) = (0..n).find(|&v| alive[v] && !tree.is_leaf(v) && adj[v].len() == 2) {
        let (a, ca) = adj[v][0].clone();
        let (b, cb) = adj[v][1].clone();
        let c = ca.min(cb);
        alive[v] = false;
        adj[v].clear();
        adj[a].retain(|(w, _)| *w != v);
        adj[b].retain(|(w, _)| *w != v);
        adj[a].push((b, c.clone()));
        adj[b].push((a, c));
    }
    let ids: Vec<Option<usize>> = {
        let mut next = 0;
        alive
            .iter()
            .map(|&a| {
                a.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let ids = |v: usize| ids[v].expect("alive");
    let labels = (0..n).filter(|&v| alive[v]).map(|v| tree.label(v).to_string()).collect();
    let mut edges = Vec::new();
    for v in (0..n).filter(|&v| alive[v]) {
        for (w, c) in &adj[v] {
            if v < *w {
                edges.push((ids(v), ids(*w), c.clone()));
            }
        }
    }
    // keep the original edge order where possible
    edges.sort_by_key(|(u, v, _)| (*u, *v));
    let leaves = tree
        .leaves()
        .into_iter()
        .map(|v| (ids(v), tree.leaf_name(v).expect("leaf").to_string()))
        .collect();
    CapTree::new(labels, edges, leaves).expect("series reduction keeps a valid tree")
}
