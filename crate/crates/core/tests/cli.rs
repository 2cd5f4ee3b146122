use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const PATH_STAR: &str = "\
network 3
node 1 terminal 1
node v
node 2 terminal 2
edge 1 v 1
edge v 2 1
hubtree 3
tnode r
tnode a leaf 1
tnode b leaf 2
tedge r a 5
tedge r b 5
";

const GRID: &str = "\
network 4
node a terminal 1
node b terminal 2
node c terminal 3
node d
edge a b 1
edge b c 1
edge c d 1
edge d a 1
hubtree 4
tnode r
tnode x leaf 1
tnode y leaf 2
tnode z leaf 3
tedge r x 1
tedge r y 1
tedge r z 1
";

const TREE_NET: &str = "\
network 4
node m
node a terminal 1
node b terminal 2
node c terminal 3
edge m a 1
edge m b 2
edge m c 3
hubtree 4
tnode r
tnode x leaf 1
tnode y leaf 2
tnode z leaf 3
tedge r x 1
tedge r y 1
tedge r z 1
";

fn treehub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treehub")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn solve_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "path.inst", PATH_STAR);
    let sol = dir.path().join("path.sol");
    let o = treehub(&["solve", &inst, "--out", sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "cost 10\n");
    assert!(stderr(&o).contains("capacity r-a: 5 -> 5"));
    let text = fs::read_to_string(&sol).unwrap();
    assert!(text.ends_with("cost 10\n"));
    assert!(text.contains("place r 1\n"));

    let o = treehub(&["verify", &inst, sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn solve_logs_defining_preprocessing() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "p.inst", &PATH_STAR.replace("tedge r b 5", "tedge r b 3"));
    let o = treehub(&["solve", &inst]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("capacity r-a: 5 -> 3"));
    assert!(stderr(&o).contains("cost 6"));
    assert!(stdout(&o).starts_with("hubtree 3\n"));
}

#[test]
fn fractional_cost_prints_decimal() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "p.inst", &PATH_STAR.replace("tedge r a 5", "tedge r a 1/3").replace("tedge r b 5", "tedge r b 1/3"));
    let sol = dir.path().join("p.sol");
    let o = treehub(&["solve", &inst, "--out", sol.to_str().unwrap()]);
    assert_eq!(stdout(&o), "cost 2/3 (0.666667)\n");
}

#[test]
fn tampered_solution_fails_verification() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.inst", GRID);
    let o = treehub(&["solve", &inst]);
    let tampered = stdout(&o).replace("cap a b 1\n", "cap a b 1/2\n");
    assert_ne!(tampered, stdout(&o));
    let sol = write(&dir, "bad.sol", &tampered);
    let o = treehub(&["verify", &inst, &sol]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL allocation a-b"));
}

#[test]
fn witness_requires_tree_network() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.inst", GRID);
    let o = treehub(&["witness", &inst]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("network is not a tree"));
}

#[test]
fn witness_writes_q_star_table() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "t.inst", TREE_NET);
    let o = treehub(&["witness", &inst, "--root", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# root 2\n"));
    assert!(text.contains("# q* m a 1\n# q* m b 1\n# q* m c 1\n"));
    assert!(text.contains("cost 6\n"));
    let sol = write(&dir, "t.sol", &text);
    assert_eq!(treehub(&["verify", &inst, &sol]).status.code(), Some(0));
}

#[test]
fn compose_pipes_solver_output() {
    let dir = TempDir::new().unwrap();
    // inner: universe star into the tree network F
    let f_inst = write(&dir, "f.inst", TREE_NET);
    let inner = treehub(&["witness", &f_inst]);
    let inner = write(&dir, "inner.sol", &stdout(&inner));
    // outer: F (with q* capacities) as the hub tree of G
    let g_with_f = "\
network 4
node a terminal 1
node b terminal 2
node c terminal 3
node d
edge a b 1
edge b c 1
edge c d 1
edge d a 1
hubtree 4
tnode m
tnode a leaf 1
tnode b leaf 2
tnode c leaf 3
tedge m a 1
tedge m b 1
tedge m c 1
";
    let g_inst = write(&dir, "gf.inst", g_with_f);
    let outer = treehub(&["solve", &g_inst]);
    let outer = write(&dir, "outer.sol", &stdout(&outer));
    let g_inst_t = write(&dir, "g.inst", GRID);
    let out = dir.path().join("composed.sol");
    let o = treehub(&["compose", &g_inst_t, &outer, &inner, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = treehub(&["verify", &g_inst_t, out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn oracle_table_marks_winner() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.inst", GRID);
    let o = treehub(&["oracle", &inst]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("* 1:(2,3)"));
    assert!(text.contains("best 2"));
    let o = treehub(&["oracle", &inst, "--max-leaves", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = treehub(&["gen", "--seed", "7", "--nodes", "7", "--terminals", "4", "--shape", "caterpillar"]);
    let b = treehub(&["gen", "--seed", "7", "--nodes", "7", "--terminals", "4", "--shape", "caterpillar"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "r.inst", &stdout(&a));
    let s1 = treehub(&["solve", &inst]);
    let s2 = treehub(&["solve", &inst]);
    assert_eq!(s1.status.code(), Some(0));
    assert_eq!(s1.stdout, s2.stdout);
    let o = treehub(&["gen", "--nodes", "1", "--terminals", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dot_writes_files() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.inst", GRID);
    let sol = write(&dir, "g.sol", &stdout(&treehub(&["solve", &inst])));
    let o = treehub(&["dot", &inst, &sol, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["network.dot", "hubtree.dot", "hubbing.dot"] {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(text.starts_with("graph "));
    }
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(treehub(&[]).status.code(), Some(1));
    assert_eq!(treehub(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(treehub(&["gen", "--shape", "blob"]).status.code(), Some(1));
    assert_eq!(treehub(&["solve", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(treehub(&["--help"]).status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.inst", "network 2\nnode a terminal 1\nedge a a 1\n");
    let o = treehub(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(Path::new(&bad).exists());
}
