//! Plain-text instance formats.

use std::fmt::Write as _;

use invmod::{Color, ColorInvolution, Graph, TwoStructure, VertexSet};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Structure(TwoStructure, ColorInvolution),
}

impl Instance {
    pub fn structure(&self) -> (&TwoStructure, ColorInvolution) {
        match self {
            Instance::Graph(g) => (g.as_two_structure(), ColorInvolution::graph()),
            Instance::Structure(ts, inv) => (ts, inv.clone()),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        match self {
            Instance::Graph(g) => Ok(g),
            Instance::Structure(..) => Err(CliError::Usage("this command needs a `graph` file".into())),
        }
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| CliError::parse(line, format!("expected a number, got `{tok}`")))
}

fn arity(line: usize, toks: &[&str], k: usize) -> Result<()> {
    if toks.len() != k {
        return Err(CliError::parse(line, format!("expected {k} fields, got {}", toks.len())));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut it = lines(text);
    let Some((line, head)) = it.next() else {
        return Err(CliError::parse(1, "empty input"));
    };
    match head[0] {
        "graph" => parse_graph_body(line, &head, it).map(Instance::Graph),
        "2struct" => parse_structure_body(line, &head, it),
        other => Err(CliError::parse(line, format!("unknown header `{other}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    match parse_instance(text)? {
        Instance::Graph(g) => Ok(g),
        Instance::Structure(..) => Err(CliError::parse(1, "expected a `graph` header")),
    }
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = num(line, tok)?;
    if v >= n {
        return Err(CliError::parse(line, format!("vertex {v} out of range for {n} vertices")));
    }
    Ok(v)
}

fn parse_graph_body<'a>(line: usize, head: &[&str], rest: impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<Graph> {
    arity(line, head, 2)?;
    let n: usize = num(line, head[1])?;
    let mut g = Graph::empty(n);
    for (line, toks) in rest {
        arity(line, &toks, 2)?;
        let (u, v) = (vertex(line, toks[0], n)?, vertex(line, toks[1], n)?);
        if u == v {
            return Err(CliError::parse(line, format!("self-loop on {u}")));
        }
        if g.adjacent(u, v) {
            return Err(CliError::parse(line, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

fn parse_structure_body<'a>(
    line: usize,
    head: &[&str],
    rest: impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<Instance> {
    arity(line, head, 3)?;
    let n: usize = num(line, head[1])?;
    let c: usize = num(line, head[2])?;
    if c == 0 || c > Color::MAX as usize {
        return Err(CliError::parse(line, format!("bad color count {c}")));
    }
    let mut map: Vec<Option<Color>> = vec![None; c];
    let mut ts = TwoStructure::new(n, c).map_err(|e| CliError::parse(line, e.to_string()))?;
    let mut set = vec![false; n * n];
    let mut inv_done = false;
    for (line, toks) in rest {
        if toks[0] == "inv" {
            if inv_done {
                return Err(CliError::parse(line, "`inv` lines must precede color triples"));
            }
            arity(line, &toks, 3)?;
            let (a, b): (Color, Color) = (num(line, toks[1])?, num(line, toks[2])?);
            if a as usize >= c || b as usize >= c || a == b {
                return Err(CliError::parse(line, format!("bad involution pair {a} {b}")));
            }
            if map[a as usize].is_some() || map[b as usize].is_some() {
                return Err(CliError::parse(line, format!("color in pair {a} {b} already paired")));
            }
            map[a as usize] = Some(b);
            map[b as usize] = Some(a);
            continue;
        }
        if !inv_done {
            if let Some(x) = map.iter().position(Option::is_none) {
                return Err(CliError::parse(line, format!("involution leaves color {x} unpaired")));
            }
            inv_done = true;
        }
        arity(line, &toks, 3)?;
        let (u, v) = (vertex(line, toks[0], n)?, vertex(line, toks[1], n)?);
        let col: Color = num(line, toks[2])?;
        if u >= v {
            return Err(CliError::parse(line, format!("pair {u} {v} must satisfy u < v")));
        }
        if col as usize >= c {
            return Err(CliError::parse(line, format!("color {col} out of range for {c} colors")));
        }
        if std::mem::replace(&mut set[u * n + v], true) {
            return Err(CliError::parse(line, format!("duplicate pair {u} {v}")));
        }
        ts.set_color(u, v, col).map_err(|e| CliError::parse(line, e.to_string()))?;
    }
    let map: Option<Vec<Color>> = map.into_iter().collect();
    let map = map.ok_or_else(|| CliError::parse(line, "involution does not cover every color"))?;
    let inv = ColorInvolution::new(map).map_err(|e| CliError::parse(line, e.to_string()))?;
    Ok(Instance::Structure(ts, inv))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_structure(ts: &TwoStructure, inv: &ColorInvolution) -> String {
    let n = ts.n();
    let mut s = format!("2struct {} {}\n", n, ts.num_colors());
    for (a, &b) in inv.as_slice().iter().enumerate() {
        if a < b as usize {
            let _ = writeln!(s, "inv {a} {b}");
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let c = ts.color(u, v);
            if c != 0 {
                let _ = writeln!(s, "{u} {v} {c}");
            }
        }
    }
    s
}

/// `tag v1 v2 ...`, or just the vertices when `tag` is empty.
pub fn set_line(tag: &str, s: &VertexSet) -> String {
    let mut out = tag.to_string();
    for v in s.iter() {
        if !out.is_empty() {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out
}
