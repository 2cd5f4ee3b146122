//! All-pairs shortest paths with deterministic path reconstruction.

use crate::model::{Network, NodeId};
use crate::rational::Rational;

/// Shortest-path distances of a network.
///
/// Among shortest paths, reconstruction prefers fewer edges and then the
/// smallest-id next hop, so zero-cost edges never produce loops.
#[derive(Debug, Clone)]
pub struct Metric {
    n: usize,
    dist: Vec<Rational>,
    hops: Vec<usize>,
    next: Vec<NodeId>,
}

impl Metric {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: NodeId, v: NodeId) -> &Rational {
        &self.dist[u * self.n + v]
    }

    /// Edge count of the canonical shortest path.
    pub fn hops(&self, u: NodeId, v: NodeId) -> usize {
        self.hops[u * self.n + v]
    }

    /// Neighbor of `u` that starts the canonical shortest path to `v`.
    pub fn first_hop(&self, u: NodeId, v: NodeId) -> Option<NodeId> {
        (u != v).then(|| self.next[u * self.n + v])
    }

    /// Canonical shortest path from `u` to `v` as a node sequence.
    pub fn path(&self, u: NodeId, v: NodeId) -> Vec<NodeId> {
        let mut path = vec![u];
        let mut x = u;
        while let Some(y) = self.first_hop(x, v) {
            path.push(y);
            x = y;
        }
        path
    }
}

pub fn all_pairs_shortest_paths(network: &Network) -> Metric {
    let n = network.node_count();
    let mut best: Vec<Option<(Rational, usize)>> = vec![None; n * n];
    for v in 0..n {
        best[v * n + v] = Some((Rational::zero(), 0));
    }
    for (u, v, c) in network.edges() {
        best[u * n + v] = Some((c.clone(), 1));
        best[v * n + u] = Some((c.clone(), 1));
    }
    for k in 0..n {
        for i in 0..n {
            let Some((dik, hik)) = best[i * n + k].clone() else { continue };
            for j in 0..n {
                let Some((dkj, hkj)) = &best[k * n + j] else { continue };
                let candidate = (&dik + dkj, hik + hkj);
                if best[i * n + j].as_ref().is_none_or(|cur| candidate < *cur) {
                    best[i * n + j] = Some(candidate);
                }
            }
        }
    }
    let (dist, hops): (Vec<_>, Vec<_>) = best
        .into_iter()
        .map(|b| b.expect("network is connected"))
        .unzip();
    let mut next = vec![usize::MAX; n * n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            next[u * n + v] = network
                .neighbors(u)
                .iter()
                .find(|&&(x, e)| {
                    hops[x * n + v] + 1 == hops[u * n + v]
                        && &network.edges()[e].2 + &dist[x * n + v] == dist[u * n + v]
                })
                .map(|&(x, _)| x)
                .expect("some neighbor continues a shortest path");
        }
    }
    Metric { n, dist, hops, next }
}
