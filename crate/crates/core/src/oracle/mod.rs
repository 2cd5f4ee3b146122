//! Exhaustive and LP-based certification on small instances.

pub mod simplex;
pub mod topology;
pub mod verify;

use std::collections::BTreeMap;

use crate::embed::{extract_route, optimal_embedding};
use crate::error::{precondition, Result};
use crate::flow::{cable_capacity, defining_capacities, leaf_bipartition};
use crate::metric::all_pairs_shortest_paths;
use crate::model::{edge_key, CapTree, Hubbing, Instance, NodeId};
use crate::rational::Rational;

pub use simplex::{simplex_solve, LinearProgram, LpSolution};
pub use topology::{canonical_code, enumerate_hub_trees, series_reduce, HubTopology};
pub use verify::{verify_hubbing, Check, Report};

/// Default cap on terminals for [`best_hubbing_over_all_trees`].
pub const DEFAULT_ORACLE_LEAVES: usize = 5;

/// Unordered terminal pair, stored sorted.
pub type Pair = (String, String);

pub fn pair(a: &str, b: &str) -> Pair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Capacities a candidate hub tree must carry for the universe: each edge
/// gets the universe's max flow across the bipartition it induces.
pub fn candidate_capacities(universe: &CapTree, candidate: &CapTree) -> Vec<Rational> {
    let root = candidate.leaves()[0];
    (0..candidate.edges().len())
        .map(|f| {
            let (side, _) = leaf_bipartition(candidate, f, root);
            cable_capacity(universe, &side).expect("candidate edge splits the terminals")
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TopologyRow {
    pub topology: HubTopology,
    pub capacities: Vec<Rational>,
    pub cost: Rational,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub rows: Vec<TopologyRow>,
    /// Index into `rows` of the first minimum-cost topology.
    pub winner: usize,
    pub hubbing: Hubbing,
}

impl OracleOutcome {
    pub fn best(&self) -> (&HubTopology, &Hubbing) {
        (&self.rows[self.winner].topology, &self.hubbing)
    }
}

/// Runs the optimal embedding for every series-reduced hub tree topology on
/// the instance's terminals, each with its required cable capacities, and
/// keeps the cheapest (first in code order on ties).
pub fn best_hubbing_over_all_trees(inst: &Instance, max_leaves: usize) -> Result<OracleOutcome> {
    let k = inst.network.terminals().len();
    if k > max_leaves.min(topology::MAX_ENUMERATION_LEAVES) {
        return Err(precondition(format!("{k} terminals exceed the oracle limit of {max_leaves}")));
    }
    let metric = all_pairs_shortest_paths(&inst.network);
    let mut rows = Vec::new();
    let mut best: Option<(usize, Hubbing)> = None;
    for topology in enumerate_hub_trees(&inst.network.terminal_names())? {
        let capacities = candidate_capacities(&inst.universe, &topology.tree);
        let candidate = topology.tree.with_capacities(capacities.clone());
        let hubbing = optimal_embedding(&inst.network, &metric, &candidate)?;
        if best.as_ref().is_none_or(|(_, b)| hubbing.cost < b.cost) {
            best = Some((rows.len(), hubbing.clone()));
        }
        rows.push(TopologyRow {
            topology,
            capacities,
            cost: hubbing.cost,
        });
    }
    let (winner, hubbing) = best.expect("at least one topology");
    Ok(OracleOutcome { rows, winner, hubbing })
}

/// The universe tree in the form the oracle compares against: defining
/// capacities, then degree-2 hubs contracted.
pub fn reduced_universe(universe: &CapTree) -> CapTree {
    series_reduce(&defining_capacities(universe))
}

/// `max sum k_ij D_ij` over demands `D` routable in the universe tree, by
/// exact simplex. One variable per pair with nonzero multiplicity and one
/// row per universe edge.
pub fn worst_case_edge_load(universe: &CapTree, multiplicities: &BTreeMap<Pair, u64>) -> Result<Rational> {
    let pairs: Vec<(&Pair, u64)> = multiplicities
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|(p, &k)| (p, k))
        .collect();
    if pairs.is_empty() {
        return Ok(Rational::zero());
    }
    let ends: Vec<(NodeId, NodeId)> = pairs
        .iter()
        .map(|((a, b), _)| {
            let a = universe.leaf_of(a).ok_or_else(|| precondition(format!("unknown terminal {a:?}")))?;
            let b = universe.leaf_of(b).ok_or_else(|| precondition(format!("unknown terminal {b:?}")))?;
            if a == b {
                return Err(precondition("pair endpoints must differ"));
            }
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    let constraints = (0..universe.edges().len())
        .map(|e| {
            let far = universe.far_side(e, universe.edges()[e].0);
            let row = ends
                .iter()
                .map(|&(a, b)| if far[a] != far[b] { Rational::one() } else { Rational::zero() })
                .collect();
            (row, universe.capacity(e).clone())
        })
        .collect();
    let lp = LinearProgram {
        objective: pairs.iter().map(|(_, k)| Rational::from_integer(*k as i64)).collect(),
        constraints,
    };
    Ok(simplex_solve(&lp)?.optimum)
}

/// For every network edge, how many times each terminal pair's route uses
/// it in the template induced by `h`.
pub fn induced_template(h: &Hubbing) -> Result<BTreeMap<(NodeId, NodeId), BTreeMap<Pair, u64>>> {
    let names: Vec<String> = h.hub_tree.terminal_names().into_iter().collect();
    let mut out: BTreeMap<(NodeId, NodeId), BTreeMap<Pair, u64>> = BTreeMap::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let walk = extract_route(h, a, b)?;
            for w in walk.windows(2) {
                *out.entry(edge_key(w[0], w[1])).or_default().entry(pair(a, b)).or_default() += 1;
            }
        }
    }
    Ok(out)
}
