//! Small named instances used by tests, docs and the demo page.
//!
//! Leaves are named `"1"`, `"2"`, ... in order; network terminals use the
//! same names so fixtures combine into instances directly.

use std::collections::BTreeSet;

use crate::model::{CapTree, Network};
use crate::rational::Rational;

pub fn names(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn leaf(i: usize) -> String {
    (i + 1).to_string()
}

/// Star with center `r` (node 0) and leaf `i+1` at node `i+1`.
pub fn star(capacities: &[Rational]) -> CapTree {
    let mut labels = vec!["r".to_string()];
    labels.extend((0..capacities.len()).map(leaf));
    let edges = capacities
        .iter()
        .enumerate()
        .map(|(i, c)| (0, i + 1, c.clone()))
        .collect();
    let leaves = (0..capacities.len()).map(|i| (i + 1, leaf(i))).collect();
    CapTree::new(labels, edges, leaves).expect("valid star")
}

/// Path `1 - x - 2`.
pub fn path_tree(left: Rational, right: Rational) -> CapTree {
    CapTree::new(
        vec!["1".into(), "x".into(), "2".into()],
        vec![(0, 1, left), (1, 2, right)],
        vec![(0, "1".into()), (2, "2".into())],
    )
    .expect("valid path")
}

/// Two hubs `x` and `y` joined by `middle`; `x` carries the first leaves,
/// `y` the remaining ones.
pub fn caterpillar(left: &[Rational], middle: Rational, right: &[Rational]) -> CapTree {
    let mut labels = vec!["x".to_string(), "y".to_string()];
    let mut edges = Vec::new();
    let mut leaves = Vec::new();
    for (i, c) in left.iter().chain(right).enumerate() {
        let hub = usize::from(i >= left.len());
        labels.push(leaf(i));
        edges.push((hub, i + 2, c.clone()));
        leaves.push((i + 2, leaf(i)));
    }
    edges.insert(left.len(), (0, 1, middle));
    CapTree::new(labels, edges, leaves).expect("valid caterpillar")
}

/// Path network `1 - v - 2`.
pub fn path_network(left: Rational, right: Rational) -> Network {
    Network::new(
        vec!["1".into(), "v".into(), "2".into()],
        vec![(0, 1, left), (1, 2, right)],
        vec![("1".into(), 0), ("2".into(), 2)],
    )
    .expect("valid path")
}

/// Triangle on terminals `1`, `2`, `3` with unit costs.
pub fn triangle() -> Network {
    Network::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            (0, 1, Rational::one()),
            (1, 2, Rational::one()),
            (0, 2, Rational::one()),
        ],
        vec![("1".into(), 0), ("2".into(), 1), ("3".into(), 2)],
    )
    .expect("valid triangle")
}

/// Star network with center `m` (node 0) and terminal `i+1` at node `i+1`.
pub fn star_network(costs: &[Rational]) -> Network {
    let mut labels = vec!["m".to_string()];
    labels.extend((0..costs.len()).map(leaf));
    let edges = costs.iter().enumerate().map(|(i, c)| (0, i + 1, c.clone())).collect();
    let terminals = (0..costs.len()).map(|i| (leaf(i), i + 1)).collect();
    Network::new(labels, edges, terminals).expect("valid star network")
}

/// Tree network with the same shape as [`caterpillar`]: hubs `x`, `y`.
pub fn caterpillar_network(left: &[Rational], middle: Rational, right: &[Rational]) -> Network {
    let tree = caterpillar(left, middle, right);
    let terminals = tree
        .leaves()
        .into_iter()
        .map(|v| (tree.leaf_name(v).unwrap().to_string(), v))
        .collect();
    Network::new(tree.labels().to_vec(), tree.edges().to_vec(), terminals).expect("valid caterpillar")
}
