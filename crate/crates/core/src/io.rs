//! Text formats: edge lists, JSON graphs, positions, roles, formulas,
//! node lists and simulation traces.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::dynamics::{CascadeOutcome, ConsensusTrace};
use crate::error::{Error, Result};
use crate::generators::GeometricPlacement;
use crate::graph::{Graph, GraphRecord};
use crate::hardness::{CnfFormula, GadgetGraph, Literal};
use crate::nodeset::NodeSet;
use crate::scalar::Scalar;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Meaningful lines with 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

/// Edge-list text: header `n <count>`, then one `u v` pair per line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n <count>` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let n = match toks.as_slice() {
        ["n", count] => parse_num::<usize>(count, hline)?,
        _ => return Err(parse_err(hline, "expected header `n <count>`")),
    };
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(parse_err(line, "expected `u v`"));
        };
        let (u, v) = (parse_num::<usize>(u, line)?, parse_num::<usize>(v, line)?);
        g.add_edge(u, v).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

/// Canonical edge list: `u < v`, lexicographic order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn is_json(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{')
}

/// Reads either graph format, choosing JSON for `.json` files or text starting with `{`.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    if is_json(path, &text) {
        let rec: GraphRecord = serde_json::from_str(&text).map_err(|e| Error::Json {
            path: path.into(),
            source: e,
        })?;
        Graph::try_from(rec)
    } else {
        parse_edge_list(&text)
    }
}

/// Writes JSON for `.json` paths and the edge list otherwise.
pub fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    if path.extension().is_some_and(|e| e == "json") {
        let text = serde_json::to_string(&GraphRecord::from(g)).map_err(|e| Error::Json {
            path: path.into(),
            source: e,
        })?;
        write_text(path, &(text + "\n"))
    } else {
        write_text(path, &format_edge_list(g))
    }
}

/// One line per node with `d` space-separated coordinates in round-trip precision.
pub fn format_positions<T: Scalar>(pl: &GeometricPlacement<T>) -> String {
    let mut s = String::new();
    for p in pl.positions() {
        let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "{}", coords.join(" "));
    }
    s
}

pub fn parse_positions(text: &str) -> Result<Vec<Vec<f64>>> {
    content_lines(text)
        .map(|(line, l)| l.split_whitespace().map(|t| parse_num(t, line)).collect())
        .collect()
}

/// Roles sidecar: `node,role,param1,param2`.
pub fn format_roles(gg: &GadgetGraph) -> String {
    let mut s = String::from("node,role,param1,param2\n");
    for (v, role) in gg.roles.iter().enumerate() {
        let (name, a, b) = role.columns();
        let _ = writeln!(s, "{v},{name},{a},{b}");
    }
    s
}

/// DIMACS-like NAE3SAT text: `p nae3sat <t> <m>` then `m` lines of three
/// signed literals. Lines starting with `c` are comments; a trailing `0` on a
/// clause line is accepted.
pub fn parse_formula(text: &str) -> Result<CnfFormula> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.starts_with('c'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `p nae3sat t m` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (t, m) = match toks.as_slice() {
        ["p", "nae3sat", t, m] => (parse_num::<usize>(t, hline)?, parse_num::<usize>(m, hline)?),
        _ => return Err(parse_err(hline, "expected header `p nae3sat t m`")),
    };
    let mut clauses = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut nums: Vec<i64> = l
            .split_whitespace()
            .map(|tok| parse_num(tok, line))
            .collect::<Result<_>>()?;
        if nums.len() == 4 && nums[3] == 0 {
            nums.pop();
        }
        let [a, b, c] = nums.as_slice() else {
            return Err(parse_err(line, "a clause needs exactly three literals"));
        };
        let lit = |x: i64| -> Result<Literal> {
            let l = Literal::from_signed(x).map_err(|e| parse_err(line, e.to_string()))?;
            if l.var > t {
                return Err(parse_err(line, format!("variable {} exceeds t = {t}", l.var)));
            }
            Ok(l)
        };
        clauses.push([lit(*a)?, lit(*b)?, lit(*c)?]);
    }
    if clauses.len() != m {
        return Err(parse_err(hline, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(t, clauses)
}

pub fn format_formula(phi: &CnfFormula) -> String {
    let mut s = format!("p nae3sat {} {}\n", phi.num_variables(), phi.num_clauses());
    for c in phi.clauses() {
        let _ = writeln!(s, "{} {} {}", c[0].signed(), c[1].signed(), c[2].signed());
    }
    s
}

/// Node indices separated by whitespace or commas.
pub fn parse_node_list(text: &str, n: usize) -> Result<NodeSet> {
    let mut set = NodeSet::new(n);
    for (line, l) in content_lines(text) {
        for tok in l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: usize = parse_num(tok, line)?;
            if v >= n {
                return Err(parse_err(line, format!("node {v} out of range for {n} nodes")));
            }
            set.insert(v);
        }
    }
    Ok(set)
}

/// `round,node,value,is_adversary`, one row per node per round.
pub fn format_consensus_trace<T: Scalar>(trace: &ConsensusTrace<T>) -> String {
    let mut s = String::from("round,node,value,is_adversary\n");
    for (k, values) in trace.rounds.iter().enumerate() {
        for (v, x) in values.iter().enumerate() {
            let _ = writeln!(s, "{k},{v},{x},{}", trace.adversaries.contains(v));
        }
    }
    s
}

/// `round,infected_count,newly_infected`; round 0 is the seed set.
pub fn format_cascade_history(out: &CascadeOutcome) -> String {
    let mut s = String::from("round,infected_count,newly_infected\n");
    for (k, count, newly) in &out.history {
        let _ = writeln!(s, "{k},{count},{newly}");
    }
    s
}
