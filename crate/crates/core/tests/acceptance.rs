//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use treehub::embed::{brute_force_placement, embed_at, hub_routing, optimal_embedding, optimal_t_hubbing};
use treehub::flow::{boundary_capacity, cable_capacity, defining_capacities, minimal_min_cut};
use treehub::generate::{terminal_names, Generator, TreeShape};
use treehub::metric::all_pairs_shortest_paths;
use treehub::model::{cable_loads, edge_key, CapTree, Instance, Network, NodeId};
use treehub::oracle::{best_hubbing_over_all_trees, induced_template, reduced_universe, verify_hubbing, worst_case_edge_load};
use treehub::witness::{compose, cut_family, default_root, orientation, tree_witness, CutFamily};
use treehub::Rational;

const SHAPES: [TreeShape; 3] = [TreeShape::Star, TreeShape::Caterpillar, TreeShape::RandomTree];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    cases: usize,
    violations: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Every minimum cut separating `inside` leaves from the other leaves, by
/// enumerating all assignments of the internal nodes.
fn brute_min_cuts(tree: &CapTree, inside: &BTreeSet<String>) -> (Rational, Vec<BTreeSet<NodeId>>) {
    let free: Vec<NodeId> = tree.internal_nodes();
    let mut side = vec![false; tree.node_count()];
    for v in tree.leaves() {
        side[v] = inside.contains(tree.leaf_name(v).unwrap());
    }
    let mut best: Option<Rational> = None;
    let mut cuts = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let value = boundary_capacity(tree.edges(), &side);
        let set: BTreeSet<NodeId> = (0..side.len()).filter(|&v| side[v]).collect();
        match &best {
            Some(b) if value > *b => {}
            Some(b) if value == *b => cuts.push(set),
            _ => {
                best = Some(value);
                cuts = vec![set];
            }
        }
    }
    (best.unwrap(), cuts)
}

/// All nonempty proper terminal subsets containing the smallest name (one per
/// bipartition).
fn bipartitions(names: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let list: Vec<&String> = names.iter().collect();
    let k = list.len();
    (0u32..(1 << (k - 1)))
        .map(|mask| {
            let mut s = BTreeSet::from([list[0].clone()]);
            for (i, name) in list.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    s.insert((*name).clone());
                }
            }
            s
        })
        .filter(|s| s.len() < k)
        .collect()
}

/// Random universe tree on `k` leaves with up to `extra` degree-2 nodes.
fn random_universe(g: &mut Generator, k: usize, extra: usize) -> CapTree {
    let names = terminal_names(k);
    let shape_net = g.tree_network(&names, extra).unwrap();
    let caps: Vec<Rational> = (0..shape_net.edges().len()).map(|_| g.capacity()).collect();
    CapTree::from_tree_network(&shape_net, &caps).unwrap()
}

/// q*(e) from first principles: the cheapest cut of the universe separating
/// the two leaf groups of F's edge.
fn brute_q_star(f: &Network, universe: &CapTree) -> Vec<Rational> {
    let view = CapTree::from_tree_network(f, &vec![Rational::zero(); f.edges().len()]).unwrap();
    let anchor = view.leaves()[0];
    (0..view.edges().len())
        .map(|e| {
            let far = view.far_side(e, anchor);
            let inside = view
                .leaves()
                .into_iter()
                .filter(|&v| far[v])
                .map(|v| view.leaf_name(v).unwrap().to_string())
                .collect();
            brute_min_cuts(universe, &inside).0
        })
        .collect()
}

fn witness_pairs(count: usize) -> Vec<(Network, CapTree)> {
    let mut g = Generator::new(0xF0F0);
    (0..count)
        .map(|i| {
            let k = 2 + i % 5;
            let names = terminal_names(k);
            let subdivisions = g.rng().gen_range(0..=3);
            let f = g.tree_network(&names, subdivisions).unwrap();
            let t = g.hub_tree(&names, SHAPES[i % 3]).unwrap();
            (f, t)
        })
        .collect()
}

fn criterion_topology_oracle() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(1);
    for i in 0..210 {
        let k = 3 + i % 3;
        let nodes = g.rng().gen_range(k..=8);
        let inst = g.instance(nodes, k, SHAPES[(i / 3) % 3]).unwrap();
        let oracle = best_hubbing_over_all_trees(&inst, 5).unwrap();
        let reduced = Instance::new(inst.network.clone(), reduced_universe(&inst.universe)).unwrap();
        let direct = optimal_t_hubbing(&reduced).unwrap();
        out.cases += 1;
        out.check(oracle.hubbing.cost == direct.cost, || {
            format!("instance {i}: oracle {} vs embedding {}", oracle.hubbing.cost, direct.cost)
        });
    }
    out
}

fn criterion_witness_exactness() -> Outcome {
    let mut out = Outcome::new();
    for (i, (f, t)) in witness_pairs(210).into_iter().enumerate() {
        let w = tree_witness(&f, &t, None).unwrap();
        let q = brute_q_star(&f, &t);
        let loads = cable_loads(&w.hubbing.hub_tree, &w.hubbing.cables, &w.hubbing.hub_tree.capacities());
        let exact = f.edges().iter().zip(&q).all(|((a, b, _), q)| {
            loads.get(&edge_key(*a, *b)).cloned().unwrap_or_default() == *q
        });
        out.check(exact, || format!("pair {i}: load differs from q*"));
        let total: Rational = f.edges().iter().zip(&q).map(|((_, _, c), q)| c * q).sum();
        let dp = optimal_t_hubbing(&Instance::new(f.clone(), t.clone()).unwrap()).unwrap();
        out.check(total == dp.cost && w.hubbing.cost == dp.cost, || {
            format!("pair {i}: sum c*q* = {total}, witness {}, embedding {}", w.hubbing.cost, dp.cost)
        });
        out.cases += 1;
    }
    out
}

fn families(f: &Network, t: &CapTree) -> Vec<CutFamily> {
    let t = defining_capacities(t);
    let first = default_root(f);
    let other = f.terminal_names().into_iter().rev().find(|n| *n != first).unwrap();
    vec![cut_family(f, &t, &first).unwrap(), cut_family(f, &t, &other).unwrap()]
}

fn criterion_orientations() -> Outcome {
    let mut out = Outcome::new();
    for (i, (f, t)) in witness_pairs(210).into_iter().enumerate() {
        for fam in families(&f, &t) {
            for hub in t.internal_nodes() {
                let o = orientation(&f, &fam, hub).unwrap();
                let mut outdeg = vec![0usize; f.node_count()];
                for &(tail, _) in &o.arcs {
                    outdeg[tail] += 1;
                }
                let sinks = outdeg.iter().filter(|&&d| d == 0).count();
                out.cases += 1;
                out.check(outdeg.iter().all(|&d| d <= 1) && sinks == 1, || {
                    format!("pair {i}, root {}, hub {hub}: out-degrees {outdeg:?}", fam.root)
                });
            }
        }
    }
    out
}

fn criterion_nesting() -> Outcome {
    let mut out = Outcome::new();
    for (i, (f, t)) in witness_pairs(210).into_iter().enumerate() {
        for fam in families(&f, &t) {
            for (a, ea) in fam.per_edge.iter().enumerate() {
                for (b, eb) in fam.per_edge.iter().enumerate() {
                    if ea.away.is_subset(&eb.away) {
                        out.cases += 1;
                        out.check(ea.cut.is_subset(&eb.cut), || {
                            format!("pair {i}, root {}: edges {a} and {b} not nested", fam.root)
                        });
                    }
                }
            }
        }
    }
    let mut g = Generator::new(4);
    for i in 0..300 {
        let k = 2 + i % 5;
        let extra = g.rng().gen_range(0..=(10 - (2 * k - 2)).min(4));
        let t = random_universe(&mut g, k, extra);
        assert!(t.node_count() <= 10);
        for side in bipartitions(&t.terminal_names()) {
            let got = minimal_min_cut(&t, &side).unwrap();
            let (value, cuts) = brute_min_cuts(&t, &side);
            let smallest = cuts.iter().map(BTreeSet::len).min().unwrap();
            let minimum: Vec<_> = cuts.iter().filter(|c| c.len() == smallest).collect();
            out.cases += 1;
            out.check(
                got.value == value && minimum.len() == 1 && *minimum[0] == got.source_side,
                || format!("tree {i}, side {side:?}: got {:?}, minimum-cardinality cuts {minimum:?}", got.source_side),
            );
        }
    }
    out
}

fn criterion_brute_force() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(5);
    for i in 0..240 {
        let (k, shape) = match i % 4 {
            0 => (g.rng().gen_range(2..=5), TreeShape::Star),
            1 => (g.rng().gen_range(2..=5), TreeShape::Caterpillar),
            _ => (g.rng().gen_range(2..=5), TreeShape::RandomTree),
        };
        let nodes = g.rng().gen_range(k..=8);
        let inst = g.instance(nodes, k, shape).unwrap();
        assert!(inst.universe.internal_nodes().len() <= 3);
        let dp = optimal_t_hubbing(&inst).unwrap();
        let brute = brute_force_placement(&inst).unwrap();
        out.cases += 1;
        out.check(dp.cost == brute, || format!("instance {i}: embedding {} vs brute force {brute}", dp.cost));
    }
    out
}

fn criterion_hose() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(6);
    let mut violating = 0;
    for i in 0..120 {
        let k = g.rng().gen_range(2..=6);
        let nodes = g.rng().gen_range(k..=9);
        let names = terminal_names(k);
        let network = g.network(nodes, &names, 0.3).unwrap();
        let mut b: Vec<Rational> = (0..k).map(|_| g.capacity()).collect();
        if i % 2 == 0 {
            let rest: Rational = b[1..].iter().sum();
            b[0] = rest + g.capacity();
        }
        let total: Rational = b.iter().sum();
        if b.iter().any(|x| x.clone() + x.clone() > total) {
            violating += 1;
        }
        let star = CapTree::new(
            std::iter::once("hub".to_string()).chain(names.iter().cloned()).collect(),
            (0..k).map(|j| (0, j + 1, b[j].clone())).collect(),
            names.iter().cloned().enumerate().map(|(j, n)| (j + 1, n)).collect(),
        )
        .unwrap();
        let marginals: BTreeMap<String, Rational> = names.iter().cloned().zip(b).collect();
        let hub = hub_routing(&network, &marginals).unwrap();
        let dp = optimal_t_hubbing(&Instance::new(network, star).unwrap()).unwrap();
        out.cases += 1;
        out.check(hub.cost == dp.cost, || format!("instance {i}: hub routing {} vs embedding {}", hub.cost, dp.cost));
    }
    if violating < 50 {
        out.violations.push(format!("only {violating} instances had a marginal above the others' sum"));
    }
    out
}

fn criterion_composition() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(7);
    for i in 0..120 {
        let k = g.rng().gen_range(2..=5);
        let names = terminal_names(k);
        let subdivisions = g.rng().gen_range(0..=2);
        let universe = g.hub_tree(&names, SHAPES[i % 3]).unwrap();
        let f = g.tree_network(&names, subdivisions).unwrap();
        let inner = tree_witness(&f, &universe, None).unwrap();
        let f_tree = CapTree::from_tree_network(&f, &inner.q_star).unwrap();
        let nodes = g.rng().gen_range(k..=9);
        let network = g.network(nodes, &names, 0.3).unwrap();
        let metric = all_pairs_shortest_paths(&network);
        let outer = if i % 2 == 0 {
            optimal_embedding(&network, &metric, &f_tree).unwrap()
        } else {
            let placement = (0..f_tree.node_count())
                .map(|v| match f_tree.leaf_name(v) {
                    Some(name) => network.terminal_node(name).unwrap(),
                    None => g.rng().gen_range(0..nodes),
                })
                .collect();
            embed_at(&network, &metric, f_tree.clone(), placement)
        };
        let composed = compose(&outer, &inner.hubbing).unwrap();
        let inst = Instance::new(network, universe).unwrap();
        let report = verify_hubbing(&inst, &composed);
        out.cases += 1;
        out.check(report.passed(), || format!("chain {i}: verification failed\n{report}"));
        out.check(composed.cost <= outer.cost, || format!("chain {i}: composed cost {} above outer {}", composed.cost, outer.cost));
    }
    out
}

fn criterion_defining() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(8);
    for i in 0..200 {
        let k = 2 + i % 4;
        let extra = g.rng().gen_range(0..=2);
        let t = random_universe(&mut g, k, extra);
        let d = defining_capacities(&t);
        out.cases += 1;
        out.check(defining_capacities(&d) == d, || format!("tree {i}: not idempotent"));
        out.check(d.edges().iter().zip(t.edges()).all(|(a, b)| a.2 <= b.2), || {
            format!("tree {i}: a defining capacity grew")
        });
        for side in bipartitions(&t.terminal_names()) {
            let before = cable_capacity(&t, &side).unwrap();
            let after = cable_capacity(&d, &side).unwrap();
            let brute = brute_min_cuts(&t, &side).0;
            out.check(before == after && before == brute, || {
                format!("tree {i}, side {side:?}: {before} before, {after} after, {brute} by enumeration")
            });
        }
    }
    out
}

fn criterion_worst_case_load() -> Outcome {
    let mut out = Outcome::new();
    let mut g = Generator::new(9);
    for i in 0..150 {
        let k = g.rng().gen_range(2..=4);
        let shape = *SHAPES.choose(g.rng()).unwrap();
        let names = terminal_names(k);
        let inst = if i % 2 == 0 {
            let nodes = g.rng().gen_range(k..=8);
            g.instance(nodes, k, shape).unwrap()
        } else {
            let subdivisions = g.rng().gen_range(0..=3);
            let f = g.tree_network(&names, subdivisions).unwrap();
            Instance::new(f, g.hub_tree(&names, shape).unwrap()).unwrap()
        };
        let mut outputs = vec![("embedding", optimal_t_hubbing(&inst).unwrap())];
        if i % 2 == 1 {
            outputs.push(("witness", tree_witness(&inst.network, &inst.universe, None).unwrap().hubbing));
        }
        for (kind, h) in outputs {
            for (edge, mult) in induced_template(&h).unwrap() {
                let load = worst_case_edge_load(&inst.universe, &mult).unwrap();
                let have = h.allocation_on(edge.0, edge.1);
                out.cases += 1;
                out.check(load <= have, || format!("instance {i} ({kind}), edge {edge:?}: load {load} above {have}"));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 all-topology oracle equals the embedding of the reduced universe", criterion_topology_oracle),
        ("2 tree witness load equals q* and its cost equals the optimum", criterion_witness_exactness),
        ("3 every hub orientation has out-degree <= 1 and one sink", criterion_orientations),
        ("4 cut families nest; minimal min cut is the unique smallest", criterion_nesting),
        ("5 dynamic program equals brute-force placement", criterion_brute_force),
        ("6 hub routing equals the star embedding", criterion_hose),
        ("7 composed hubbings verify and cost no more than the outer", criterion_composition),
        ("8 defining capacities are idempotent and keep cable capacities", criterion_defining),
        ("9 worst-case edge load stays within the allocation", criterion_worst_case_load),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let ok = o.violations.is_empty();
        failed += usize::from(!ok);
        println!(
            "{} criterion {name}: {} cases, {} violations, {:.2}s",
            if ok { "PASS" } else { "FAIL" },
            o.cases,
            o.violations.len(),
            start.elapsed().as_secs_f64()
        );
        for v in o.violations.iter().take(5) {
            println!("    {v}");
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
