//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::dot::{hubbing_dot, network_dot, tree_dot};
use crate::embed::optimal_t_hubbing;
use crate::error::Error;
use crate::flow::defining_capacities;
use crate::generate::{gen_random_instance, TreeShape};
use crate::io::{parse_instance, parse_solution, write_instance, write_solution};
use crate::model::{Instance, Network};
use crate::oracle::{best_hubbing_over_all_trees, verify_hubbing, DEFAULT_ORACLE_LEAVES};
use crate::rational::Rational;
use crate::witness::{compose, tree_witness};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "treehub", version, about = "Optimal hub tree embeddings for tree demand universes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cheapest embedding of the instance's hub tree (after defining preprocessing)
    Solve {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact-load witness on a tree network, with the q* table
    Witness {
        instance: PathBuf,
        #[arg(long)]
        root: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compose an F-hubbing into G (outer) with a T-hubbing into F (inner)
    Compose {
        /// Instance whose network is G
        instance: PathBuf,
        outer: PathBuf,
        inner: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against an instance
    Verify { instance: PathBuf, solution: PathBuf },
    /// Compare every hub tree topology on the terminals
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LEAVES)]
        max_leaves: usize,
    },
    /// Write a random instance
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, default_value_t = 3)]
        terminals: usize,
        #[arg(long, default_value_t = TreeShape::Star)]
        shape: TreeShape,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write network.dot, hubtree.dot and (with a solution) hubbing.dot
    Dot {
        instance: PathBuf,
        solution: Option<PathBuf>,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn load_instance(path: &Path, stderr: &mut dyn Write) -> Result<Instance, Failure> {
    let inst = parse_instance(&read(path)?)?;
    for w in inst.warnings() {
        let _ = writeln!(stderr, "warning: {w}");
    }
    Ok(inst)
}

/// `10` or `5/2 (2.500000)`.
pub fn exact_and_decimal(x: &Rational) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        format!("{x} ({:.6})", x.to_f64())
    }
}

/// The hub tree of a solution, seen as a network with zero costs so that
/// another solution can refer to its node labels.
fn hub_tree_network(h: &crate::model::Hubbing) -> Result<Network, Failure> {
    let t = &h.hub_tree;
    let edges = t.edges().iter().map(|(u, v, _)| (*u, *v, Rational::zero())).collect();
    let terminals = t
        .leaves()
        .into_iter()
        .map(|v| (t.leaf_name(v).expect("leaf").to_string(), v))
        .collect();
    Ok(Network::new(t.labels().to_vec(), edges, terminals)?)
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { instance, out } => {
            let inst = load_instance(&instance, stderr)?;
            let defining = defining_capacities(&inst.universe);
            for ((u, v, b), (_, _, d)) in inst.universe.edges().iter().zip(defining.edges()) {
                let _ = writeln!(
                    stderr,
                    "capacity {}-{}: {b} -> {d}",
                    inst.universe.label(*u),
                    inst.universe.label(*v)
                );
            }
            let h = optimal_t_hubbing(&inst)?;
            let text = write_solution(&h, &inst.network);
            emit(&out, &text, stdout)?;
            let summary = format!("cost {}\n", exact_and_decimal(&h.cost));
            if out.is_some() {
                let _ = stdout.write_all(summary.as_bytes());
            } else {
                let _ = stderr.write_all(summary.as_bytes());
            }
        }
        Command::Witness { instance, root, out } => {
            let inst = load_instance(&instance, stderr)?;
            let w = tree_witness(&inst.network, &inst.universe, root.as_deref())?;
            let mut text = write_solution(&w.hubbing, &inst.network);
            let _ = writeln!(text, "# root {}", w.family.root);
            for ((u, v, _), q) in inst.network.edges().iter().zip(&w.q_star) {
                let _ = writeln!(text, "# q* {} {} {q}", inst.network.label(*u), inst.network.label(*v));
            }
            emit(&out, &text, stdout)?;
        }
        Command::Compose {
            instance,
            outer,
            inner,
            out,
        } => {
            let inst = load_instance(&instance, stderr)?;
            let outer = parse_solution(&read(&outer)?, &inst.network)?;
            let f = hub_tree_network(&outer)?;
            let inner = parse_solution(&read(&inner)?, &f)?;
            let h = compose(&outer, &inner)?;
            emit(&out, &write_solution(&h, &inst.network), stdout)?;
        }
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance, stderr)?;
            let h = parse_solution(&read(&solution)?, &inst.network)?;
            let report = verify_hubbing(&inst, &h);
            let _ = write!(stdout, "{report}");
            if !report.passed() {
                return Err(Failure::Verify(format!("{} checks failed", report.failures().count())));
            }
        }
        Command::Oracle { instance, max_leaves } => {
            let inst = load_instance(&instance, stderr)?;
            let outcome = best_hubbing_over_all_trees(&inst, max_leaves)?;
            let mut table = String::new();
            for (i, row) in outcome.rows.iter().enumerate() {
                let caps: Vec<String> = row.capacities.iter().map(Rational::to_string).collect();
                let _ = writeln!(
                    table,
                    "{}{}\tcost {}\tcapacities [{}]",
                    if i == outcome.winner { "* " } else { "  " },
                    row.topology.code,
                    row.cost,
                    caps.join(" ")
                );
            }
            let _ = writeln!(table, "best {}", exact_and_decimal(&outcome.hubbing.cost));
            let _ = stdout.write_all(table.as_bytes());
        }
        Command::Gen {
            seed,
            nodes,
            terminals,
            shape,
            out,
        } => {
            let inst = gen_random_instance(seed, nodes, terminals, shape)?;
            emit(&out, &write_instance(&inst), stdout)?;
        }
        Command::Dot { instance, solution, out } => {
            let inst = load_instance(&instance, stderr)?;
            let mut files = vec![
                ("network.dot", network_dot(&inst.network)),
                ("hubtree.dot", tree_dot(&inst.universe)),
            ];
            if let Some(path) = solution {
                let h = parse_solution(&read(&path)?, &inst.network)?;
                files.push(("hubbing.dot", hubbing_dot(&h, &inst.network)));
            }
            for (name, text) in files {
                emit(&Some(out.join(name)), &text, stdout)?;
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_VERIFY
        }
    }
}
