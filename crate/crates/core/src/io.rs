//! Line-oriented text formats for instances and solutions.
//!
//! Instance files:
//!
//! ```text
//! network <nNodes>
//! node <id> [terminal <name>]
//! edge <u> <v> <cost>
//! hubtree <nNodes>
//! tnode <id> [leaf <name>]
//! tedge <u> <v> <capacity>
//! ```
//!
//! Solution files repeat the `hubtree` block of the hub tree used and then
//! list `place`, `cable <tu> <tv> : <path>`, `cap <u> <v> <value>` and
//! `cost <value>` lines. Everything after `#` on a line is a comment.
//! Numbers are decimal or fraction literals and are read exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::model::{edge_key, CapTree, Hubbing, Instance, Network, NodeId};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn number(tok: &Token<'_>) -> Result<Rational> {
    tok.text
        .parse()
        .map_err(|_| syntax(tok.line, tok.column, format!("expected a number, found `{}`", tok.text)))
}

fn count(tok: &Token<'_>) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| syntax(tok.line, tok.column, format!("expected a count, found `{}`", tok.text)))
}

fn arity(line: &[Token<'_>], allowed: &[usize], usage: &str) -> Result<()> {
    if allowed.contains(&line.len()) {
        Ok(())
    } else {
        let at = line.get(allowed[0]).unwrap_or(&line[0]);
        Err(syntax(at.line, at.column, format!("expected `{usage}`")))
    }
}

/// Label → id table built from declaration lines.
#[derive(Default)]
struct Nodes<'a> {
    labels: Vec<String>,
    ids: BTreeMap<&'a str, NodeId>,
    tags: Vec<(NodeId, String)>,
}

impl<'a> Nodes<'a> {
    fn declare(&mut self, tok: &Token<'a>, what: &str) -> Result<NodeId> {
        if self.ids.contains_key(tok.text) {
            return Err(syntax(tok.line, tok.column, format!("{what} `{}` declared twice", tok.text)));
        }
        let id = self.labels.len();
        self.ids.insert(tok.text, id);
        self.labels.push(tok.text.to_string());
        Ok(id)
    }

    fn lookup(&self, tok: &Token<'_>, what: &str) -> Result<NodeId> {
        self.ids
            .get(tok.text)
            .copied()
            .ok_or_else(|| syntax(tok.line, tok.column, format!("unknown {what} `{}`", tok.text)))
    }
}

struct TreeBlock<'a> {
    nodes: Nodes<'a>,
    edges: Vec<(NodeId, NodeId, Rational)>,
    declared: usize,
    header: Token<'a>,
}

impl<'a> TreeBlock<'a> {
    fn new(header: Token<'a>, declared: usize) -> Self {
        TreeBlock {
            nodes: Nodes::default(),
            edges: Vec::new(),
            declared,
            header,
        }
    }

    fn line(&mut self, line: &[Token<'a>]) -> Result<bool> {
        match line[0].text {
            "tnode" => {
                arity(line, &[2, 4], "tnode <id> [leaf <name>]")?;
                let id = self.nodes.declare(&line[1], "tree node")?;
                if line.len() == 4 {
                    if line[2].text != "leaf" {
                        return Err(syntax(line[2].line, line[2].column, "expected `leaf`"));
                    }
                    self.nodes.tags.push((id, line[3].text.to_string()));
                }
                Ok(true)
            }
            "tedge" => {
                arity(line, &[4], "tedge <u> <v> <capacity>")?;
                let u = self.nodes.lookup(&line[1], "tree node")?;
                let v = self.nodes.lookup(&line[2], "tree node")?;
                self.edges.push((u, v, number(&line[3])?));
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn finish(self) -> Result<CapTree> {
        if self.nodes.labels.len() != self.declared {
            return Err(syntax(
                self.header.line,
                self.header.column,
                format!("hubtree declares {} nodes but {} were listed", self.declared, self.nodes.labels.len()),
            ));
        }
        CapTree::new(self.nodes.labels, self.edges, self.nodes.tags)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let lines = tokenize(text);
    let mut iter = lines.iter().peekable();

    let header = iter.next().ok_or_else(|| syntax(1, 1, "empty instance file"))?;
    if header[0].text != "network" {
        return Err(syntax(header[0].line, header[0].column, "expected `network <nNodes>`"));
    }
    arity(header, &[2], "network <nNodes>")?;
    let declared = count(&header[1])?;

    let mut nodes = Nodes::default();
    let mut edges = Vec::new();
    let mut tree: Option<TreeBlock<'_>> = None;
    for line in iter {
        let head = &line[0];
        if let Some(block) = tree.as_mut() {
            if !block.line(line)? {
                return Err(syntax(head.line, head.column, format!("unexpected `{}` inside hubtree", head.text)));
            }
            continue;
        }
        match head.text {
            "node" => {
                arity(line, &[2, 4], "node <id> [terminal <name>]")?;
                let id = nodes.declare(&line[1], "node")?;
                if line.len() == 4 {
                    if line[2].text != "terminal" {
                        return Err(syntax(line[2].line, line[2].column, "expected `terminal`"));
                    }
                    nodes.tags.push((id, line[3].text.to_string()));
                }
            }
            "edge" => {
                arity(line, &[4], "edge <u> <v> <cost>")?;
                let u = nodes.lookup(&line[1], "node")?;
                let v = nodes.lookup(&line[2], "node")?;
                edges.push((u, v, number(&line[3])?));
            }
            "hubtree" => {
                arity(line, &[2], "hubtree <nNodes>")?;
                tree = Some(TreeBlock::new(*head, count(&line[1])?));
            }
            other => {
                return Err(syntax(head.line, head.column, format!("unexpected `{other}`")));
            }
        }
    }
    if nodes.labels.len() != declared {
        return Err(syntax(
            header[0].line,
            header[0].column,
            format!("network declares {declared} nodes but {} were listed", nodes.labels.len()),
        ));
    }
    let tree = tree.ok_or_else(|| syntax(lines.last().map_or(1, |l| l[0].line), 1, "missing `hubtree` block"))?;
    let network = Network::new(
        nodes.labels,
        edges,
        nodes.tags.into_iter().map(|(id, name)| (name, id)).collect(),
    )?;
    Instance::new(network, tree.finish()?)
}

fn write_tree(out: &mut String, tree: &CapTree) {
    let _ = writeln!(out, "hubtree {}", tree.node_count());
    for v in 0..tree.node_count() {
        match tree.leaf_name(v) {
            Some(name) => {
                let _ = writeln!(out, "tnode {} leaf {}", tree.label(v), name);
            }
            None => {
                let _ = writeln!(out, "tnode {}", tree.label(v));
            }
        }
    }
    for (u, v, c) in tree.edges() {
        let _ = writeln!(out, "tedge {} {} {}", tree.label(*u), tree.label(*v), c);
    }
}

/// Canonical text form of an instance.
pub fn write_instance(inst: &Instance) -> String {
    let net = &inst.network;
    let mut out = String::new();
    let _ = writeln!(out, "network {}", net.node_count());
    for v in 0..net.node_count() {
        match net.terminal_at(v) {
            Some(name) => {
                let _ = writeln!(out, "node {} terminal {}", net.label(v), name);
            }
            None => {
                let _ = writeln!(out, "node {}", net.label(v));
            }
        }
    }
    for (u, v, c) in net.edges() {
        let _ = writeln!(out, "edge {} {} {}", net.label(*u), net.label(*v), c);
    }
    write_tree(&mut out, &inst.universe);
    out
}

/// Serializes a hubbing whose node ids refer to `network`.
pub fn write_solution(h: &Hubbing, network: &Network) -> String {
    let tree = &h.hub_tree;
    let mut out = String::new();
    write_tree(&mut out, tree);
    for (v, &p) in h.placement.iter().enumerate() {
        let _ = writeln!(out, "place {} {}", tree.label(v), network.label(p));
    }
    for ((u, v, _), cable) in tree.edges().iter().zip(&h.cables) {
        let _ = write!(out, "cable {} {} :", tree.label(*u), tree.label(*v));
        for &x in cable {
            let _ = write!(out, " {}", network.label(x));
        }
        out.push('\n');
    }
    for (&(u, v), a) in &h.allocation {
        if !a.is_zero() {
            let _ = writeln!(out, "cap {} {} {}", network.label(u), network.label(v), a);
        }
    }
    let _ = writeln!(out, "cost {}", h.cost);
    out
}

/// Reads a solution whose `place`, `cable` and `cap` lines refer to node
/// labels of `network`. Structure is checked (every tree node placed once,
/// every tree edge has one cable, `cap` lines name network edges); cable
/// validity and allocation sufficiency are left to verification.
pub fn parse_solution(text: &str, network: &Network) -> Result<Hubbing> {
    let lines = tokenize(text);
    let mut iter = lines.iter();
    let header = iter.next().ok_or_else(|| syntax(1, 1, "empty solution file"))?;
    if header[0].text != "hubtree" {
        return Err(syntax(header[0].line, header[0].column, "expected `hubtree <nNodes>`"));
    }
    arity(header, &[2], "hubtree <nNodes>")?;
    let mut block = TreeBlock::new(header[0], count(&header[1])?);
    let mut rest = Vec::new();
    for line in iter.by_ref() {
        if !block.line(line)? {
            rest.push(line);
            break;
        }
    }
    rest.extend(iter);
    let tree = block.finish()?;

    let host = |tok: &Token<'_>| {
        network
            .node_by_label(tok.text)
            .ok_or_else(|| syntax(tok.line, tok.column, format!("unknown network node `{}`", tok.text)))
    };
    let tree_node = |tok: &Token<'_>| {
        tree.node_by_label(tok.text)
            .ok_or_else(|| syntax(tok.line, tok.column, format!("unknown tree node `{}`", tok.text)))
    };

    let mut placement = vec![None; tree.node_count()];
    let mut cables = vec![None; tree.edges().len()];
    let mut allocation = BTreeMap::new();
    let mut cost = None;
    for line in rest {
        let head = &line[0];
        match head.text {
            "place" => {
                arity(line, &[3], "place <tree-node> <network-node>")?;
                let t = tree_node(&line[1])?;
                if placement[t].replace(host(&line[2])?).is_some() {
                    return Err(syntax(head.line, head.column, "tree node placed twice"));
                }
            }
            "cable" => {
                if line.len() < 5 || line[3].text != ":" {
                    return Err(syntax(head.line, head.column, "expected `cable <tree-u> <tree-v> : <node path>`"));
                }
                let (a, b) = (tree_node(&line[1])?, tree_node(&line[2])?);
                let f = tree
                    .edge_between(a, b)
                    .ok_or_else(|| syntax(line[1].line, line[1].column, "cable for a non-edge of the hub tree"))?;
                let mut path = line[4..].iter().map(host).collect::<Result<Vec<_>>>()?;
                if tree.edges()[f].0 != a {
                    path.reverse();
                }
                if cables[f].replace(path).is_some() {
                    return Err(syntax(head.line, head.column, "hub tree edge has two cables"));
                }
            }
            "cap" => {
                arity(line, &[4], "cap <u> <v> <value>")?;
                let (u, v) = (host(&line[1])?, host(&line[2])?);
                if !network.has_edge(u, v) {
                    return Err(syntax(line[1].line, line[1].column, "cap on a non-edge of the network"));
                }
                let value = number(&line[3])?;
                if value.is_negative() {
                    return Err(invalid("negative allocation"));
                }
                if !value.is_zero() && allocation.insert(edge_key(u, v), value).is_some() {
                    return Err(syntax(head.line, head.column, "edge allocated twice"));
                }
            }
            "cost" => {
                arity(line, &[2], "cost <value>")?;
                cost = Some(number(&line[1])?);
            }
            other => return Err(syntax(head.line, head.column, format!("unexpected `{other}`"))),
        }
    }
    let placement = placement
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| invalid(format!("tree node {} has no placement", tree.label(v)))))
        .collect::<Result<Vec<_>>>()?;
    let cables = cables
        .into_iter()
        .enumerate()
        .map(|(f, c)| c.ok_or_else(|| invalid(format!("tree edge {f} has no cable"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hubbing {
        hub_tree: tree,
        placement,
        cables,
        allocation,
        cost: cost.ok_or_else(|| invalid("missing `cost` line"))?,
    })
}
