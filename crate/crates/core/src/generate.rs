//! Seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{precondition, Result};
use crate::model::{CapTree, Instance, Network, NodeId};
use crate::rational::Rational;

const COSTS: [(i64, i64); 5] = [(1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];
const CAPACITIES: [(i64, i64); 5] = [(1, 2), (1, 1), (2, 1), (3, 1), (5, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeShape {
    Star,
    Caterpillar,
    RandomTree,
}

impl FromStr for TreeShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "star" => Ok(TreeShape::Star),
            "caterpillar" => Ok(TreeShape::Caterpillar),
            "random-tree" => Ok(TreeShape::RandomTree),
            other => Err(format!("unknown shape {other:?} (star, caterpillar, random-tree)")),
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeShape::Star => "star",
            TreeShape::Caterpillar => "caterpillar",
            TreeShape::RandomTree => "random-tree",
        })
    }
}

pub fn terminal_names(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("t{i}")).collect()
}

/// Deterministic source of random networks and hub trees.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick(&mut self, table: &[(i64, i64)]) -> Rational {
        let (n, d) = table[self.rng.gen_range(0..table.len())];
        Rational::new(n, d)
    }

    pub fn cost(&mut self) -> Rational {
        self.pick(&COSTS)
    }

    pub fn capacity(&mut self) -> Rational {
        self.pick(&CAPACITIES)
    }

    /// Connected network on `nodes` nodes: a random spanning tree plus each
    /// remaining pair with probability `density`. Terminals sit on distinct
    /// random nodes.
    pub fn network(&mut self, nodes: usize, terminals: &[String], density: f64) -> Result<Network> {
        if terminals.len() < 2 || terminals.len() > nodes {
            return Err(precondition("need 2 <= terminals <= nodes"));
        }
        let mut edges = Vec::new();
        for v in 1..nodes {
            let u = self.rng.gen_range(0..v);
            edges.push((u, v, self.cost()));
        }
        for u in 0..nodes {
            for v in u + 1..nodes {
                if !edges.iter().any(|(a, b, _)| (*a, *b) == (u, v)) && self.rng.gen_bool(density) {
                    edges.push((u, v, self.cost()));
                }
            }
        }
        let mut hosts: Vec<NodeId> = (0..nodes).collect();
        hosts.shuffle(&mut self.rng);
        hosts.truncate(terminals.len());
        hosts.sort();
        Network::new(
            (0..nodes).map(|i| format!("n{i}")).collect(),
            edges,
            terminals.iter().cloned().zip(hosts).collect(),
        )
    }

    /// Random series-reduced topology over `terminals` (leaves are nodes
    /// `0..k`, hubs follow), grown by random leaf insertions.
    fn random_topology(&mut self, k: usize) -> (usize, Vec<(usize, usize)>) {
        let mut hubs = 0;
        let mut edges = vec![(0, 1)];
        for leaf in 2..k {
            let moves = hubs + edges.len();
            let m = self.rng.gen_range(0..moves);
            if m < hubs {
                edges.push((k + m, leaf));
            } else {
                let e = m - hubs;
                let (a, b) = edges[e];
                let hub = k + hubs;
                hubs += 1;
                edges[e] = (a, hub);
                edges.push((hub, b));
                edges.push((hub, leaf));
            }
        }
        (hubs, edges)
    }

    /// Hub tree of the requested shape with random capacities.
    pub fn hub_tree(&mut self, terminals: &[String], shape: TreeShape) -> Result<CapTree> {
        let k = terminals.len();
        if k < 2 {
            return Err(precondition("a hub tree needs at least two terminals"));
        }
        let (hubs, edges) = match shape {
            TreeShape::Star => (1, (0..k).map(|i| (k, i)).collect()),
            TreeShape::Caterpillar if k == 2 => (0, vec![(0, 1)]),
            TreeShape::Caterpillar => {
                // spine of k-2 hubs; the two ends take two leaves each
                let spine = k - 2;
                let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|h| (k + h, k + h + 1)).collect();
                edges.push((k, 0));
                edges.push((k, 1));
                for h in 1..spine {
                    edges.push((k + h, h + 1));
                }
                edges.push((k + spine - 1, k - 1));
                (spine, edges)
            }
            TreeShape::RandomTree => self.random_topology(k),
        };
        let mut labels = terminals.to_vec();
        labels.extend((0..hubs).map(|h| format!("h{h}")));
        let edges = edges.into_iter().map(|(u, v)| (u, v, self.capacity())).collect();
        CapTree::new(labels, edges, terminals.iter().cloned().enumerate().collect())
    }

    /// Tree network whose leaves are exactly `terminals`: a random
    /// series-reduced topology with `subdivisions` extra degree-2 nodes
    /// inserted on random edges.
    pub fn tree_network(&mut self, terminals: &[String], subdivisions: usize) -> Result<Network> {
        let k = terminals.len();
        if k < 2 {
            return Err(precondition("a tree network needs at least two terminals"));
        }
        let (hubs, mut edges) = self.random_topology(k);
        let mut nodes = k + hubs;
        for _ in 0..subdivisions {
            let e = self.rng.gen_range(0..edges.len());
            let (a, b) = edges[e];
            edges[e] = (a, nodes);
            edges.push((nodes, b));
            nodes += 1;
        }
        let mut labels = terminals.to_vec();
        labels.extend((k..nodes).map(|i| format!("f{}", i - k)));
        let edges = edges.into_iter().map(|(u, v)| (u, v, self.cost())).collect();
        Network::new(labels, edges, terminals.iter().cloned().zip(0..k).collect())
    }

    pub fn instance(&mut self, nodes: usize, terminals: usize, shape: TreeShape) -> Result<Instance> {
        if terminals < 2 || terminals > nodes {
            return Err(precondition(format!(
                "need 2 <= terminals <= nodes, got {terminals} terminals on {nodes} nodes"
            )));
        }
        let names = terminal_names(terminals);
        let network = self.network(nodes, &names, 0.3)?;
        let universe = self.hub_tree(&names, shape)?;
        Instance::new(network, universe)
    }
}

pub fn gen_random_instance(seed: u64, nodes: usize, terminals: usize, shape: TreeShape) -> Result<Instance> {
    Generator::new(seed).instance(nodes, terminals, shape)
}
