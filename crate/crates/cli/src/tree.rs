//! JSON and DOT renderings of decomposition trees.

use std::fmt::Write as _;

use invmod::switch_cograph::{BinNode, NodeKind};
use invmod::{
    BinaryImdt, Color, CrossingFamilyTree, Direction, Error, ImdLabel, MdKind, Result, RootedDecompTree, VertexSet,
};
use invmod::imd::ImdEdge;
use invmod::modular::MdNode;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Leaf,
    Prime,
    Complete,
    Clique,
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionJson {
    Undirected,
    Forward,
    Backward,
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<Vec<usize>>,
    /// Indices into `edges`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub a: usize,
    pub b: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl NodeJson {
    fn new(id: usize, kind: KindJson) -> Self {
        NodeJson { id, kind, vertex: None, color: None, n1: None, n2: None, unions: Vec::new() }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedTree(msg.into())
}

fn check_ids(j: &TreeJson) -> Result<()> {
    match j.nodes.iter().enumerate().find(|(i, nd)| nd.id != *i) {
        Some((i, nd)) => Err(malformed(format!("node at position {i} has id {}", nd.id))),
        None => Ok(()),
    }
}

pub fn md_to_json(t: &RootedDecompTree) -> TreeJson {
    let mut nodes = Vec::with_capacity(t.nodes.len());
    let mut edges = Vec::new();
    for (i, nd) in t.nodes.iter().enumerate() {
        let mut j = match nd.kind {
            MdKind::Leaf(v) => NodeJson { vertex: Some(v), ..NodeJson::new(i, KindJson::Leaf) },
            MdKind::Prime => NodeJson::new(i, KindJson::Prime),
            MdKind::Complete { color } => NodeJson { color: Some(color), ..NodeJson::new(i, KindJson::Complete) },
        };
        j.id = i;
        nodes.push(j);
        edges.extend(nd.children.iter().map(|&c| EdgeJson { a: i, b: c, direction: None }));
    }
    TreeJson { n: t.n, root: Some(t.root), pivot: None, nodes, edges }
}

pub fn md_from_json(j: &TreeJson) -> Result<RootedDecompTree> {
    check_ids(j)?;
    let k = j.nodes.len();
    let root = j.root.ok_or_else(|| malformed("missing root"))?;
    if root >= k {
        return Err(malformed(format!("root {root} out of range")));
    }
    if j.edges.len() + 1 != k {
        return Err(malformed(format!("{k} nodes but {} edges", j.edges.len())));
    }
    let mut nodes = Vec::with_capacity(k);
    for nd in &j.nodes {
        let kind = match (nd.kind, nd.vertex, nd.color) {
            (KindJson::Leaf, Some(v), None) => MdKind::Leaf(v),
            (KindJson::Prime, None, None) => MdKind::Prime,
            (KindJson::Complete, None, Some(color)) => MdKind::Complete { color },
            _ => return Err(malformed(format!("node {} has inconsistent fields", nd.id))),
        };
        nodes.push(MdNode { kind, children: Vec::new(), parent: None, members: VertexSet::new(j.n) });
    }
    for e in &j.edges {
        if e.a >= k || e.b >= k || e.b == root || e.direction.is_some() {
            return Err(malformed(format!("bad edge {} -> {}", e.a, e.b)));
        }
        if nodes[e.b].parent.replace(e.a).is_some() {
            return Err(malformed(format!("node {} has two parents", e.b)));
        }
        nodes[e.a].children.push(e.b);
    }
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if order.len() > k {
            break;
        }
        order.push(x);
        stack.extend(nodes[x].children.iter().copied());
    }
    if order.len() != k {
        return Err(malformed("edges do not form a tree on the root"));
    }
    let mut seen = vec![false; j.n];
    for &x in order.iter().rev() {
        let mut m = VertexSet::new(j.n);
        match nodes[x].kind {
            MdKind::Leaf(v) => {
                if v >= j.n || std::mem::replace(&mut seen[v], true) {
                    return Err(malformed(format!("leaf {v} repeated or out of range")));
                }
                if !nodes[x].children.is_empty() {
                    return Err(malformed(format!("leaf {v} has children")));
                }
                m.insert(v);
            }
            _ => {
                if nodes[x].children.len() < 2 {
                    return Err(malformed(format!("internal node {x} has fewer than two children")));
                }
                for c in nodes[x].children.clone() {
                    m.union_with(&nodes[c].members);
                }
            }
        }
        nodes[x].members = m;
    }
    if let Some(v) = seen.iter().position(|&b| !b) {
        return Err(malformed(format!("missing leaf {v}")));
    }
    Ok(RootedDecompTree { n: j.n, nodes, root })
}

fn direction_json(d: Direction) -> DirectionJson {
    match d {
        Direction::Undirected => DirectionJson::Undirected,
        Direction::Forward => DirectionJson::Forward,
        Direction::Backward => DirectionJson::Backward,
        Direction::Double => DirectionJson::Double,
    }
}

pub fn imd_to_json(t: &CrossingFamilyTree) -> TreeJson {
    let nodes = t
        .nodes
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut nd = match *l {
                ImdLabel::Leaf(v) => NodeJson { vertex: Some(v), ..NodeJson::new(i, KindJson::Leaf) },
                ImdLabel::Prime => NodeJson::new(i, KindJson::Prime),
                ImdLabel::Complete => NodeJson::new(i, KindJson::Complete),
            };
            nd.unions = t.unions[i].clone();
            nd
        })
        .collect();
    let edges = t
        .edges
        .iter()
        .map(|e| EdgeJson { a: e.a, b: e.b, direction: Some(direction_json(e.direction)) })
        .collect();
    TreeJson { n: t.n, root: None, pivot: t.pivot, nodes, edges }
}

pub fn imd_from_json(j: &TreeJson) -> Result<CrossingFamilyTree> {
    check_ids(j)?;
    let mut nodes = Vec::with_capacity(j.nodes.len());
    for nd in &j.nodes {
        nodes.push(match (nd.kind, nd.vertex, nd.color) {
            (KindJson::Leaf, Some(v), None) => ImdLabel::Leaf(v),
            (KindJson::Prime, None, None) => ImdLabel::Prime,
            (KindJson::Complete, None, None) => ImdLabel::Complete,
            _ => return Err(malformed(format!("node {} has inconsistent fields", nd.id))),
        });
    }
    let mut edges = Vec::with_capacity(j.edges.len());
    for e in &j.edges {
        let direction = match e.direction {
            Some(DirectionJson::Undirected) => Direction::Undirected,
            Some(DirectionJson::Forward) => Direction::Forward,
            Some(DirectionJson::Backward) => Direction::Backward,
            Some(DirectionJson::Double) => Direction::Double,
            None => return Err(malformed(format!("edge {} - {} has no direction", e.a, e.b))),
        };
        edges.push(ImdEdge { a: e.a, b: e.b, direction });
    }
    let unions = j.nodes.iter().map(|nd| nd.unions.clone()).collect();
    let t = CrossingFamilyTree { n: j.n, nodes, edges, unions, pivot: j.pivot };
    t.validate()?;
    Ok(t)
}

pub fn binary_to_json(t: &BinaryImdt) -> TreeJson {
    let mut nodes = Vec::with_capacity(t.nodes.len());
    let mut edges = Vec::new();
    for (i, info) in t.nodes.iter().enumerate() {
        nodes.push(match info.node {
            BinNode::Leaf(v) => NodeJson { vertex: Some(v), ..NodeJson::new(i, KindJson::Leaf) },
            BinNode::Internal { a, b, kind, .. } => {
                edges.push(EdgeJson { a: i, b: a, direction: None });
                edges.push(EdgeJson { a: i, b, direction: None });
                let (p1, p2) = t.parts(i);
                let kind = match kind {
                    NodeKind::Clique => KindJson::Clique,
                    NodeKind::Bipartite => KindJson::Bipartite,
                };
                NodeJson { n1: Some(p1.to_vec()), n2: Some(p2.to_vec()), ..NodeJson::new(i, kind) }
            }
        });
    }
    TreeJson { n: t.n, root: Some(t.root()), pivot: None, nodes, edges }
}

fn dot_node(out: &mut String, nd: &NodeJson) {
    let id = nd.id;
    let _ = match nd.kind {
        KindJson::Leaf => writeln!(out, "  n{id} [label=\"{}\", shape=circle];", nd.vertex.unwrap_or(0)),
        KindJson::Prime => writeln!(out, "  n{id} [label=\"prime\", shape=diamond];"),
        KindJson::Complete => match nd.color {
            Some(c) => writeln!(out, "  n{id} [label=\"complete {c}\", shape=box];"),
            None => writeln!(out, "  n{id} [label=\"complete\", shape=box];"),
        },
        KindJson::Clique | KindJson::Bipartite => {
            let join = |v: &Option<Vec<usize>>| {
                v.iter().flatten().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            };
            let (name, style) = match nd.kind {
                KindJson::Clique => ("clique", ""),
                _ => ("bipartite", ", style=filled, fillcolor=lightgray"),
            };
            writeln!(
                out,
                "  n{id} [label=\"{name}\\nN1: {}\\nN2: {}\", shape=box{style}];",
                join(&nd.n1),
                join(&nd.n2)
            )
        }
    };
}

/// DOT text for any tree in JSON form. Edges with a direction are drawn as
/// arcs, the rest as plain parent-child links.
pub fn to_dot(j: &TreeJson, name: &str) -> String {
    let directed = j.edges.iter().any(|e| e.direction.is_some());
    let mut out = format!("{} {name} {{\n", if directed { "digraph" } else { "graph" });
    for nd in &j.nodes {
        dot_node(&mut out, nd);
    }
    for e in &j.edges {
        let (a, b) = (e.a, e.b);
        let _ = match e.direction {
            None => writeln!(out, "  n{a} -- n{b};"),
            Some(DirectionJson::Forward) => writeln!(out, "  n{a} -> n{b};"),
            Some(DirectionJson::Backward) => writeln!(out, "  n{a} -> n{b} [dir=back];"),
            Some(DirectionJson::Double) => writeln!(out, "  n{a} -> n{b} [dir=both];"),
            Some(DirectionJson::Undirected) => writeln!(out, "  n{a} -> n{b} [dir=none];"),
        };
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use invmod::gen::{random_graph, random_nested_structure};
    use invmod::{binary_imdt, imd_tree, modular_decomposition, ColorInvolution, Graph};
    use proptest::prelude::*;

    fn reparse(j: &TreeJson) -> TreeJson {
        serde_json::from_str(&serde_json::to_string(j).unwrap()).unwrap()
    }

    #[test]
    fn p4_dot() {
        let g = Graph::path(4);
        let c5 = Graph::cycle(5);
        let t = imd_tree(c5.as_two_structure(), &ColorInvolution::graph()).unwrap();
        let dot = to_dot(&imd_to_json(&t), "imd");
        assert!(dot.starts_with("digraph imd {\n"));
        assert!(dot.contains("shape=diamond"));
        let b = to_dot(&binary_to_json(&binary_imdt(&g).unwrap()), "bimdt");
        assert!(b.starts_with("graph bimdt {\n"));
        assert!(b.contains("fillcolor=lightgray"));
    }

    #[test]
    fn rejects_broken_trees() {
        let t = modular_decomposition(Graph::path(4).as_two_structure()).unwrap();
        let mut j = md_to_json(&t);
        j.edges.pop();
        assert!(md_from_json(&j).is_err());
        let mut j = md_to_json(&t);
        j.root = None;
        assert!(md_from_json(&j).is_err());
        let mut j = md_to_json(&t);
        let leaf = j.nodes.iter().position(|nd| nd.vertex == Some(0)).unwrap();
        j.nodes[leaf].vertex = Some(1);
        assert!(md_from_json(&j).is_err());
        let it = imd_tree(Graph::path(4).as_two_structure(), &ColorInvolution::graph()).unwrap();
        let mut j = imd_to_json(&it);
        j.edges[0].direction = None;
        assert!(imd_from_json(&j).is_err());
        assert!(serde_json::from_str::<TreeJson>(r#"{"n":1,"nodes":[{"id":0,"kind":"star"}],"edges":[]}"#).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(seed in any::<u64>(), n in 1usize..=12, colors in prop::sample::select(vec![2usize, 4])) {
            let ts = random_nested_structure(n, colors, seed);
            let inv = ColorInvolution::adjacent_pairs(colors).unwrap();
            let md = modular_decomposition(&ts).unwrap();
            prop_assert_eq!(md_from_json(&reparse(&md_to_json(&md))).unwrap(), md);
            let it = imd_tree(&ts, &inv).unwrap();
            prop_assert_eq!(imd_from_json(&reparse(&imd_to_json(&it))).unwrap(), it);
        }

        #[test]
        fn graph_round_trips(seed in any::<u64>(), n in 1usize..=12, p in 0.0f64..1.0) {
            let g = random_graph(n, p, seed);
            let md = modular_decomposition(g.as_two_structure()).unwrap();
            prop_assert_eq!(md_from_json(&reparse(&md_to_json(&md))).unwrap(), md);
        }
    }
}
