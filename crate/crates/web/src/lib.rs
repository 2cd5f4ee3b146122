//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Every export takes and returns plain strings: instance text in, JSON out.
//! The `*_json` functions do the work and are what the native tests call.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use treehub::embed::optimal_t_hubbing;
use treehub::flow::defining_capacities;
use treehub::generate::{terminal_names, Generator, TreeShape};
use treehub::io::{parse_instance, write_instance, write_solution};
use treehub::oracle::verify_hubbing;
use treehub::witness::tree_witness;
use treehub::{Hubbing, Instance, Rational};

#[derive(Serialize)]
struct Node {
    label: String,
    terminal: Option<String>,
    hubs: Vec<String>,
}

#[derive(Serialize)]
struct Edge {
    u: usize,
    v: usize,
    cost: String,
    allocation: String,
    q_star: Option<String>,
}

#[derive(Serialize)]
struct Cable {
    from: String,
    to: String,
    capacity: String,
    path: Vec<usize>,
}

#[derive(Serialize)]
struct View {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    cables: Vec<Cable>,
    cost: String,
    cost_decimal: f64,
    verified: bool,
    log: Vec<String>,
    solution: String,
}

fn view(inst: &Instance, h: &Hubbing, q_star: Option<&[Rational]>, log: Vec<String>) -> View {
    let net = &inst.network;
    let tree = &h.hub_tree;
    View {
        nodes: (0..net.node_count())
            .map(|v| Node {
                label: net.label(v).to_string(),
                terminal: net.terminal_at(v).map(str::to_string),
                hubs: tree
                    .internal_nodes()
                    .into_iter()
                    .filter(|&t| h.placement[t] == v)
                    .map(|t| tree.label(t).to_string())
                    .collect(),
            })
            .collect(),
        edges: net
            .edges()
            .iter()
            .enumerate()
            .map(|(i, (u, v, c))| Edge {
                u: *u,
                v: *v,
                cost: c.to_string(),
                allocation: h.allocation_on(*u, *v).to_string(),
                q_star: q_star.map(|q| q[i].to_string()),
            })
            .collect(),
        cables: tree
            .edges()
            .iter()
            .zip(&h.cables)
            .map(|((a, b, cap), path)| Cable {
                from: tree.label(*a).to_string(),
                to: tree.label(*b).to_string(),
                capacity: cap.to_string(),
                path: path.clone(),
            })
            .collect(),
        cost: h.cost.to_string(),
        cost_decimal: h.cost.to_f64(),
        verified: verify_hubbing(inst, h).passed(),
        log,
        solution: write_solution(h, net),
    }
}

fn to_json(v: &View) -> String {
    serde_json::to_string(v).expect("view serializes")
}

fn shape(name: &str) -> Result<TreeShape, String> {
    name.parse()
}

/// Random instance text. With `tree_network` the network is itself a tree
/// whose leaves are the terminals, so the witness can run on it.
pub fn generate_text(seed: u64, nodes: usize, terminals: usize, shape_name: &str, tree_network: bool) -> Result<String, String> {
    let shape = shape(shape_name)?;
    let inst = if tree_network {
        let mut g = Generator::new(seed);
        let names = terminal_names(terminals);
        let hubs_at_most = terminals.saturating_sub(2);
        let subdivisions = nodes.saturating_sub(terminals + hubs_at_most);
        let f = g.tree_network(&names, subdivisions).map_err(|e| e.to_string())?;
        let t = g.hub_tree(&names, shape).map_err(|e| e.to_string())?;
        Instance::new(f, t).map_err(|e| e.to_string())?
    } else {
        treehub::generate::gen_random_instance(seed, nodes, terminals, shape).map_err(|e| e.to_string())?
    };
    Ok(write_instance(&inst))
}

pub fn solve_json(text: &str) -> Result<String, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let defining = defining_capacities(&inst.universe);
    let mut log = inst.warnings();
    for ((u, v, b), (_, _, d)) in inst.universe.edges().iter().zip(defining.edges()) {
        log.push(format!("capacity {}-{}: {b} -> {d}", inst.universe.label(*u), inst.universe.label(*v)));
    }
    let h = optimal_t_hubbing(&inst).map_err(|e| e.to_string())?;
    Ok(to_json(&view(&inst, &h, None, log)))
}

pub fn witness_json(text: &str, root: &str) -> Result<String, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let root = (!root.trim().is_empty()).then(|| root.trim());
    let w = tree_witness(&inst.network, &inst.universe, root).map_err(|e| e.to_string())?;
    let log = vec![format!("root {}", w.family.root)];
    Ok(to_json(&view(&inst, &w.hubbing, Some(&w.q_star), log)))
}

/// Terminal names, for populating the root selector.
pub fn terminals_of(text: &str) -> Result<Vec<String>, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    Ok(inst.network.terminal_names().into_iter().collect())
}

#[wasm_bindgen]
pub fn generate(seed: u32, nodes: u32, terminals: u32, shape: &str, tree_network: bool) -> Result<String, JsError> {
    generate_text(seed as u64, nodes as usize, terminals as usize, shape, tree_network).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(instance: &str) -> Result<String, JsError> {
    solve_json(instance).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn witness(instance: &str, root: &str) -> Result<String, JsError> {
    witness_json(instance, root).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn terminals(instance: &str) -> Result<String, JsError> {
    terminals_of(instance)
        .map(|t| t.join(" "))
        .map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_reports_cost_and_verifies() {
        let text = generate_text(3, 7, 4, "caterpillar", false).unwrap();
        let out: serde_json::Value = serde_json::from_str(&solve_json(&text).unwrap()).unwrap();
        assert_eq!(out["verified"], true);
        assert_eq!(out["nodes"].as_array().unwrap().len(), 7);
        assert!(out["solution"].as_str().unwrap().contains("cost "));
    }

    #[test]
    fn witness_on_generated_tree() {
        let text = generate_text(5, 9, 4, "random-tree", true).unwrap();
        let out: serde_json::Value = serde_json::from_str(&witness_json(&text, "").unwrap()).unwrap();
        assert_eq!(out["verified"], true);
        assert!(out["edges"].as_array().unwrap().iter().all(|e| e["q_star"] == e["allocation"]));
        assert_eq!(terminals_of(&text).unwrap(), vec!["t1", "t2", "t3", "t4"]);
    }

    #[test]
    fn errors_are_messages() {
        assert!(generate_text(1, 1, 2, "star", false).is_err());
        assert!(generate_text(1, 5, 2, "blob", false).is_err());
        let text = generate_text(1, 6, 3, "star", false).unwrap();
        assert!(witness_json(&text, "").unwrap_err().contains("network is not a tree"));
        assert!(solve_json("network x").is_err());
    }
}
