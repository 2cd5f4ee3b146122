//! Capacity witnesses on tree networks and composition into general networks.
//!
//! For a tree network `F` with leaf set `W` and universe `T^b`, the least
//! capacity any oblivious template needs on an edge `e` of `F` is `q*(e)`,
//! the max flow in `T^b` across the leaf bipartition of `e`. [`tree_witness`]
//! builds a T-hubbing into `F` whose cable load is exactly `q*`: every edge
//! `e` gets the minimal minimum cut `S_e` of its bipartition (side away from
//! a root leaf), and each hub `w` of `T` is placed at the unique sink of the
//! orientation of `F` that points `e` away from the root iff `w` is in `S_e`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{invalid, precondition, Error, Result};
use crate::flow::{defining_capacities, leaf_bipartition, minimal_min_cut};
use crate::model::{allocation_cost, cable_loads, edge_key, CapTree, Hubbing, Network, NodeId};
use crate::rational::Rational;

fn tree_view(f: &Network, universe: &CapTree) -> Result<CapTree> {
    if !f.is_tree() {
        return Err(precondition("network is not a tree"));
    }
    if let Some(v) = (0..f.node_count()).find(|&v| (f.degree(v) == 1) != f.terminal_at(v).is_some()) {
        return Err(precondition(format!(
            "tree network leaves must be exactly the terminals (node {})",
            f.label(v)
        )));
    }
    if f.terminal_names() != universe.terminal_names() {
        return Err(precondition("tree network terminals differ from the universe leaves"));
    }
    CapTree::from_tree_network(f, &vec![Rational::zero(); f.edges().len()])
}

/// `q*(e)` for every edge of the tree network `f`, indexed like its edges.
pub fn q_star(f: &Network, universe: &CapTree) -> Result<Vec<Rational>> {
    let view = tree_view(f, universe)?;
    let root = *view.leaves().first().expect("tree has leaves");
    (0..view.edges().len())
        .map(|e| {
            let (away, _) = leaf_bipartition(&view, e, root);
            Ok(minimal_min_cut(universe, &away)?.value)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    /// Terminals on the side of the edge away from the root.
    pub away: BTreeSet<String>,
    /// Minimal minimum cut in the universe tree containing the `away` leaves.
    pub cut: BTreeSet<NodeId>,
    pub value: Rational,
}

/// One minimal minimum cut per edge of a tree network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    pub root: String,
    pub per_edge: Vec<EdgeCut>,
}

pub fn cut_family(f: &Network, universe: &CapTree, root: &str) -> Result<CutFamily> {
    let view = tree_view(f, universe)?;
    let root_node = view
        .leaf_of(root)
        .ok_or_else(|| precondition(format!("root {root:?} is not a terminal")))?;
    let per_edge = (0..view.edges().len())
        .map(|e| {
            let (away, _) = leaf_bipartition(&view, e, root_node);
            let cut = minimal_min_cut(universe, &away)?;
            Ok(EdgeCut {
                away,
                cut: cut.source_side,
                value: cut.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CutFamily {
        root: root.to_string(),
        per_edge,
    })
}

/// Orientation of a tree network for one hub of the universe tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub hub: NodeId,
    /// `(tail, head)` per edge of the tree network.
    pub arcs: Vec<(NodeId, NodeId)>,
}

impl Orientation {
    pub fn out_degrees(&self, node_count: usize) -> Vec<usize> {
        let mut out = vec![0; node_count];
        for &(tail, _) in &self.arcs {
            out[tail] += 1;
        }
        out
    }

    pub fn sinks(&self, node_count: usize) -> Vec<NodeId> {
        let out = self.out_degrees(node_count);
        (0..node_count).filter(|&v| out[v] == 0).collect()
    }

    /// The unique sink, after asserting every out-degree is at most one.
    pub fn sink(&self, node_count: usize) -> Result<NodeId> {
        if let Some(v) = self.out_degrees(node_count).iter().position(|&d| d > 1) {
            return Err(Error::Internal(format!("orientation for hub {} leaves node {v} twice", self.hub)));
        }
        match self.sinks(node_count)[..] {
            [v] => Ok(v),
            ref s => Err(Error::Internal(format!("orientation for hub {} has {} sinks", self.hub, s.len()))),
        }
    }
}

/// Points each edge away from the root when `hub` lies in its cut.
pub fn orientation(f: &Network, family: &CutFamily, hub: NodeId) -> Result<Orientation> {
    if family.per_edge.len() != f.edges().len() {
        return Err(precondition("cut family does not match the tree network"));
    }
    let root = f
        .terminal_node(&family.root)
        .ok_or_else(|| precondition("cut family root is not a terminal of the network"))?;
    let view = CapTree::from_tree_network(f, &vec![Rational::zero(); f.edges().len()])?;
    let arcs = f
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b, _))| {
            let far = view.far_side(e, root);
            let (parent, child) = if far[b] { (a, b) } else { (b, a) };
            if family.per_edge[e].cut.contains(&hub) {
                (parent, child)
            } else {
                (child, parent)
            }
        })
        .collect();
    Ok(Orientation { hub, arcs })
}

/// Placement of an internal universe node: the sink of its orientation.
pub fn place_internal(f: &Network, family: &CutFamily, hub: NodeId) -> Result<NodeId> {
    orientation(f, family, hub)?.sink(f.node_count())
}

/// A T-hubbing into a tree network with allocation `q*`, plus the objects
/// that certify it.
#[derive(Debug, Clone)]
pub struct TreeWitness {
    pub hubbing: Hubbing,
    pub q_star: Vec<Rational>,
    pub family: CutFamily,
    pub orientations: Vec<Orientation>,
}

/// Terminal hosted at the smallest network node id.
pub fn default_root(f: &Network) -> String {
    let node = f.terminals().values().min().copied().expect("at least two terminals");
    f.terminal_at(node).expect("terminal").to_string()
}

/// Builds the witness on tree network `f`. The universe is made defining
/// first; `root` defaults to [`default_root`].
pub fn tree_witness(f: &Network, universe: &CapTree, root: Option<&str>) -> Result<TreeWitness> {
    let view = tree_view(f, universe)?;
    let tree = defining_capacities(universe);
    let root = root.map_or_else(|| default_root(f), str::to_string);
    let family = cut_family(f, &tree, &root)?;

    let mut placement = vec![usize::MAX; tree.node_count()];
    let mut orientations = Vec::new();
    for (v, slot) in placement.iter_mut().enumerate() {
        *slot = match tree.leaf_name(v) {
            Some(name) => f.terminal_node(name).expect("checked by tree_view"),
            None => {
                let o = orientation(f, &family, v)?;
                let sink = o.sink(f.node_count())?;
                orientations.push(o);
                sink
            }
        };
    }
    let cables: Vec<Vec<NodeId>> = tree
        .edges()
        .iter()
        .map(|(u, v, _)| view.path(placement[*u], placement[*v]))
        .collect();

    let q: Vec<Rational> = family.per_edge.iter().map(|c| c.value.clone()).collect();
    let allocation: BTreeMap<(NodeId, NodeId), Rational> = f
        .edges()
        .iter()
        .zip(&q)
        .filter(|(_, q)| !q.is_zero())
        .map(|((a, b, _), q)| (edge_key(*a, *b), q.clone()))
        .collect();
    let load = cable_loads(&tree, &cables, &tree.capacities());
    if load != allocation {
        return Err(Error::Internal("cable load differs from q* on some edge".into()));
    }
    let cost = allocation_cost(f, &allocation);
    Ok(TreeWitness {
        hubbing: Hubbing {
            hub_tree: tree,
            placement,
            cables,
            allocation,
            cost,
        },
        q_star: q,
        family,
        orientations,
    })
}

/// Removes cycles from a walk: whenever a node repeats, the loop since its
/// first visit is cut out.
pub fn erase_loops(walk: &[NodeId]) -> Vec<NodeId> {
    let mut path: Vec<NodeId> = Vec::with_capacity(walk.len());
    let mut position: HashMap<NodeId, usize> = HashMap::new();
    for &x in walk {
        if let Some(&i) = position.get(&x) {
            for y in path.drain(i + 1..) {
                position.remove(&y);
            }
        } else {
            position.insert(x, path.len());
            path.push(x);
        }
    }
    path
}

/// Composes an F-hubbing into `G` (`outer`) with a T-hubbing into `F`
/// (`inner`), where `F`'s nodes are identified with `outer`'s hub tree nodes
/// by id.
///
/// Each hub goes to `outer.placement[inner.placement[v]]`; each cable is the
/// loop-erased concatenation of the outer cables along the inner cable. The
/// allocation and cost are those of `outer`.
pub fn compose(outer: &Hubbing, inner: &Hubbing) -> Result<Hubbing> {
    let f = &outer.hub_tree;
    if inner.hub_tree.terminal_names() != f.terminal_names() {
        return Err(invalid("inner and outer hub trees have different terminals"));
    }
    if inner.placement.iter().any(|&p| p >= f.node_count()) {
        return Err(invalid("inner placement refers to a node outside the outer hub tree"));
    }
    for v in inner.hub_tree.leaves() {
        let name = inner.hub_tree.leaf_name(v).expect("leaf");
        if f.leaf_name(inner.placement[v]) != Some(name) {
            return Err(invalid(format!("inner leaf {name:?} is not placed on the matching outer leaf")));
        }
    }
    let placement: Vec<NodeId> = inner.placement.iter().map(|&p| outer.placement[p]).collect();
    let cables = inner
        .cables
        .iter()
        .map(|cable| {
            let start = outer.placement[*cable.first().ok_or_else(|| invalid("empty cable"))?];
            let mut walk = vec![start];
            for pair in cable.windows(2) {
                let e = f
                    .edge_between(pair[0], pair[1])
                    .ok_or_else(|| invalid("inner cable uses a non-edge of the outer hub tree"))?;
                walk.extend(outer.cable_from(e, pair[0]).into_iter().skip(1));
            }
            Ok(erase_loops(&walk))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Hubbing {
        hub_tree: inner.hub_tree.clone(),
        placement,
        cables,
        allocation: outer.allocation.clone(),
        cost: outer.cost.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::optimal_t_hubbing;
    use crate::fixtures::{caterpillar, caterpillar_network, names, path_network, path_tree, star, star_network};
    use crate::model::Instance;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn star_in_star() {
        let f = star_network(&[q(1), q(2), q(3)]);
        let t = star(&[q(1), q(1), q(1)]);
        assert_eq!(q_star(&f, &t).unwrap(), vec![q(1); 3]);

        let fam = cut_family(&f, &t, "1").unwrap();
        assert_eq!(fam.per_edge[1].away, names(&["2"]));
        assert_eq!(fam.per_edge[1].cut, BTreeSet::from([2]));
        assert_eq!(fam.per_edge[0].away, names(&["2", "3"]));
        assert_eq!(fam.per_edge[0].cut, BTreeSet::from([0, 2, 3]));

        let o = orientation(&f, &fam, 0).unwrap();
        assert_eq!(o.arcs, vec![(1, 0), (2, 0), (3, 0)]);
        assert_eq!(place_internal(&f, &fam, 0).unwrap(), 0);

        let w = tree_witness(&f, &t, None).unwrap();
        assert_eq!(w.hubbing.placement[0], 0);
        assert_eq!(w.hubbing.cost, q(6));
    }

    #[test]
    fn path_universe_on_path_network() {
        let f = path_network(q(1), q(1));
        let t = path_tree(q(1), q(1));
        assert_eq!(q_star(&f, &t).unwrap(), vec![q(1), q(1)]);
        // edge 1v: away {2}, cut {2}; edge v2: away {2}, cut {2}; x not in
        // either cut so both edges point at the root and 1 is the sink
        let fam = cut_family(&f, &t, "1").unwrap();
        let x = t.node_by_label("x").unwrap();
        assert!(fam.per_edge.iter().all(|c| !c.cut.contains(&x)));
        assert_eq!(place_internal(&f, &fam, x).unwrap(), 0);
        // from the other root the hub lands on terminal 2
        let fam = cut_family(&f, &t, "2").unwrap();
        assert_eq!(place_internal(&f, &fam, x).unwrap(), 2);
    }

    #[test]
    fn single_edge_network() {
        let f = Network::new(vec!["a".into(), "b".into()], vec![(0, 1, q(3))], vec![
            ("1".into(), 0),
            ("2".into(), 1),
        ])
        .unwrap();
        let t = path_tree(q(2), q(5));
        let w = tree_witness(&f, &t, None).unwrap();
        assert_eq!(w.q_star, vec![q(2)]);
        assert_eq!(w.hubbing.cost, q(6));
    }

    #[test]
    fn aligned_caterpillars_embed_identically() {
        let one = [q(1), q(1)];
        let f = caterpillar_network(&one, q(1), &one);
        let t = caterpillar(&one, q(1), &one);
        let w = tree_witness(&f, &t, None).unwrap();
        assert_eq!(w.q_star, vec![q(1); 5]);
        assert_eq!(w.hubbing.placement, (0..6).collect::<Vec<_>>());
        let inst = Instance::new(f, t).unwrap();
        assert_eq!(optimal_t_hubbing(&inst).unwrap().cost, w.hubbing.cost);
    }

    #[test]
    fn rejects_non_tree_and_bad_leaves() {
        let t = star(&[q(1), q(1), q(1)]);
        assert!(q_star(&crate::fixtures::triangle(), &t).is_err());
        let with_inner_terminal = Network::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![(0, 1, q(1)), (1, 2, q(1))],
            vec![("1".into(), 0), ("2".into(), 1), ("3".into(), 2)],
        )
        .unwrap();
        assert!(q_star(&with_inner_terminal, &t).is_err());
    }

    #[test]
    fn loop_erasure() {
        assert_eq!(erase_loops(&[1, 2, 3, 2, 4]), vec![1, 2, 4]);
        assert_eq!(erase_loops(&[1, 2, 1]), vec![1]);
        assert_eq!(erase_loops(&[5]), vec![5]);
        assert_eq!(erase_loops(&[1, 2, 3, 4, 2, 5, 1, 6]), vec![1, 6]);
    }

    #[test]
    fn identity_composition_returns_inner() {
        let f = star_network(&[q(1), q(2), q(3)]);
        let t = star(&[q(2), q(1), q(1)]);
        let w = tree_witness(&f, &t, None).unwrap();
        let view = CapTree::from_tree_network(&f, &w.q_star).unwrap();
        let identity = Hubbing::tight(
            &f,
            view.clone(),
            (0..f.node_count()).collect(),
            view.edges().iter().map(|(u, v, _)| vec![*u, *v]).collect(),
        );
        let composed = compose(&identity, &w.hubbing).unwrap();
        assert_eq!(composed, w.hubbing);
    }
}
