//! Independent checking of a hubbing against an instance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::flow::{cable_capacity, leaf_bipartition};
use crate::model::{allocation_cost, edge_key, Hubbing, Instance, NodeId};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Exact margin for numeric checks (negative when failing).
    pub slack: Option<Rational>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, slack: Option<Rational>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            slack,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(s) = &c.slack {
                write!(f, " slack={s}")?;
            }
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn cable_problem(inst: &Instance, cable: &[NodeId], from: NodeId, to: NodeId) -> Option<String> {
    let net = &inst.network;
    if cable.is_empty() {
        return Some("empty node sequence".into());
    }
    if cable.iter().any(|&x| x >= net.node_count()) {
        return Some("unknown network node".into());
    }
    if cable[0] != from || cable[cable.len() - 1] != to {
        return Some("endpoints do not match the placements".into());
    }
    if let Some(w) = cable.windows(2).find(|w| !net.has_edge(w[0], w[1])) {
        return Some(format!("{}-{} is not a network edge", net.label(w[0]), net.label(w[1])));
    }
    let distinct: BTreeSet<_> = cable.iter().collect();
    if distinct.len() != cable.len() {
        return Some("path is not simple".into());
    }
    None
}

/// Checks every hubbing invariant: terminal pinning, cable structure, cable
/// capacities against the universe, allocation coverage and the cost sum.
///
/// Required cable capacities are recomputed from the instance's universe
/// (max flow across each hub tree edge's leaf bipartition), so the check does
/// not trust the capacities stored in `h`.
pub fn verify_hubbing(inst: &Instance, h: &Hubbing) -> Report {
    let mut report = Report::default();
    let tree = &h.hub_tree;
    let net = &inst.network;

    let same_terminals = tree.terminal_names() == net.terminal_names();
    report.push("terminals", same_terminals, None, "hub tree leaves equal the network terminals");
    let shapes_ok = h.placement.len() == tree.node_count()
        && h.cables.len() == tree.edges().len()
        && h.placement.iter().all(|&p| p < net.node_count());
    report.push("shape", shapes_ok, None, "one placement per tree node, one cable per tree edge");
    if !same_terminals || !shapes_ok {
        return report;
    }

    for v in tree.leaves() {
        let name = tree.leaf_name(v).expect("leaf");
        let host = net.terminal_node(name).expect("same terminals");
        report.push(
            format!("pin {name}"),
            h.placement[v] == host,
            None,
            format!("placed at {}", net.label(h.placement[v])),
        );
    }

    let mut cables_ok = true;
    for (f, (u, v, _)) in tree.edges().iter().enumerate() {
        let problem = cable_problem(inst, &h.cables[f], h.placement[*u], h.placement[*v]);
        cables_ok &= problem.is_none();
        report.push(
            format!("cable {}-{}", tree.label(*u), tree.label(*v)),
            problem.is_none(),
            None,
            problem.unwrap_or_default(),
        );
    }

    let root = tree.leaves()[0];
    let required: Vec<Rational> = (0..tree.edges().len())
        .map(|f| {
            let (side, _) = leaf_bipartition(tree, f, root);
            cable_capacity(&inst.universe, &side).expect("hub tree edge splits the terminals")
        })
        .collect();
    for (f, (u, v, b)) in tree.edges().iter().enumerate() {
        let slack = b - &required[f];
        report.push(
            format!("capacity {}-{}", tree.label(*u), tree.label(*v)),
            !slack.is_negative(),
            Some(slack),
            format!("required {}", required[f]),
        );
    }

    let stray: Vec<_> = h
        .allocation
        .iter()
        .filter(|(&(a, b), x)| a >= net.node_count() || b >= net.node_count() || !net.has_edge(a, b) || x.is_negative())
        .collect();
    report.push(
        "allocation domain",
        stray.is_empty(),
        None,
        format!("{} entries off the network or negative", stray.len()),
    );

    if cables_ok {
        let mut load: BTreeMap<(NodeId, NodeId), Rational> = BTreeMap::new();
        for (cable, b) in h.cables.iter().zip(&required) {
            for w in cable.windows(2) {
                *load.entry(edge_key(w[0], w[1])).or_default() += b;
            }
        }
        for (u, v, _) in net.edges() {
            let key = edge_key(*u, *v);
            let need = load.get(&key).cloned().unwrap_or_default();
            let have = h.allocation.get(&key).cloned().unwrap_or_default();
            if need.is_zero() && have.is_zero() {
                continue;
            }
            let slack = have - &need;
            report.push(
                format!("allocation {}-{}", net.label(*u), net.label(*v)),
                !slack.is_negative(),
                Some(slack),
                format!("cable load {need}"),
            );
        }
    }

    if stray.is_empty() {
        let cost = allocation_cost(net, &h.allocation);
        let diff = &h.cost - &cost;
        report.push("cost", diff.is_zero(), Some(diff), format!("sum of c(e) u(e) = {cost}"));
    }
    report
}
