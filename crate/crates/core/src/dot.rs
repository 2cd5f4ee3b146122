//! Graphviz output.

use std::fmt::Write;

use crate::model::{CapTree, Hubbing, Network};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn network_dot(network: &Network) -> String {
    let mut out = String::from("graph network {\n");
    for v in 0..network.node_count() {
        let label = match network.terminal_at(v) {
            Some(t) => format!("{} [{t}]", network.label(v)),
            None => network.label(v).to_string(),
        };
        let shape = if network.terminal_at(v).is_some() { "box" } else { "ellipse" };
        writeln!(out, "  n{v} [label={}, shape={shape}];", quote(&label)).unwrap();
    }
    for (u, v, c) in network.edges() {
        writeln!(out, "  n{u} -- n{v} [label={}];", quote(&c.to_string())).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn tree_dot(tree: &CapTree) -> String {
    let mut out = String::from("graph hubtree {\n");
    for v in 0..tree.node_count() {
        match tree.leaf_name(v) {
            Some(name) => writeln!(out, "  t{v} [label={}, shape=box];", quote(name)).unwrap(),
            None => writeln!(out, "  t{v} [label={}];", quote(tree.label(v))).unwrap(),
        }
    }
    for (u, v, b) in tree.edges() {
        writeln!(out, "  t{u} -- t{v} [label={}];", quote(&b.to_string())).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The network with each edge's total allocation, plus one dashed cluster
/// per hub showing where it sits and the cables leaving it.
pub fn hubbing_dot(h: &Hubbing, network: &Network) -> String {
    let tree = &h.hub_tree;
    let mut out = String::from("graph hubbing {\n");
    for v in 0..network.node_count() {
        let hosted: Vec<&str> = (0..tree.node_count())
            .filter(|&t| h.placement[t] == v)
            .map(|t| tree.label(t))
            .collect();
        let mut label = network.label(v).to_string();
        if !hosted.is_empty() {
            write!(label, "\\n{{{}}}", hosted.join(",")).unwrap();
        }
        let shape = if network.terminal_at(v).is_some() { "box" } else { "ellipse" };
        writeln!(out, "  n{v} [label={}, shape={shape}];", quote(&label)).unwrap();
    }
    for (u, v, c) in network.edges() {
        let alloc = h.allocation_on(*u, *v);
        let style = if alloc.is_zero() { ", style=dotted" } else { ", penwidth=2" };
        writeln!(out, "  n{u} -- n{v} [label={}{style}];", quote(&format!("c={c} u={alloc}"))).unwrap();
    }
    for (f, (a, b, cap)) in tree.edges().iter().enumerate() {
        let path: Vec<&str> = h.cables[f].iter().map(|&x| network.label(x)).collect();
        writeln!(
            out,
            "  // cable {}-{} b={cap}: {}",
            tree.label(*a),
            tree.label(*b),
            path.join(" ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::optimal_t_hubbing;
    use crate::fixtures::{path_network, star, triangle};
    use crate::model::Instance;
    use crate::rational::Rational;

    #[test]
    fn triangle_graph() {
        let text = network_dot(&triangle());
        assert_eq!(text.matches(" -- ").count(), 3);
        assert_eq!(text.matches("[label=").count(), 6);
    }

    #[test]
    fn star_tree_names_leaves() {
        let one = Rational::one();
        let text = tree_dot(&star(&[one.clone(), one.clone(), one]));
        for name in ["1", "2", "3"] {
            assert!(text.contains(&format!("[label=\"{name}\", shape=box]")));
        }
    }

    #[test]
    fn hubbing_lists_allocations() {
        let t = crate::fixtures::path_tree(Rational::from_integer(5), Rational::from_integer(5));
        let inst = Instance::new(path_network(Rational::one(), Rational::one()), t).unwrap();
        let h = optimal_t_hubbing(&inst).unwrap();
        let text = hubbing_dot(&h, &inst.network);
        assert_eq!(text.matches("u=5").count(), 2);
        assert!(text.contains("// cable"));
    }
}
