use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::modular::{modular_decomposition, MdKind};
use crate::structure::{Color, ColorInvolution, TwoStructure};
use crate::switch_ops::switch_at_pivot;
use crate::vertex_set::VertexSet;

/// How a member compares to a reference member on the outside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Same,
    Involuted,
}

fn relation(ts: &TwoStructure, inv: &ColorInvolution, r: usize, u: usize, outside: &[usize]) -> Option<Relation> {
    let (rr, ru) = (ts.row(r), ts.row(u));
    let (mut same, mut flip) = (true, true);
    for &x in outside {
        let (cr, cu) = (rr[x], ru[x]);
        same &= cu == cr;
        flip &= cu == inv.apply(cr);
        if !same && !flip {
            return None;
        }
    }
    Some(if same { Relation::Same } else { Relation::Involuted })
}

/// Membership test against the smallest member of `u`.
pub fn is_involution_module(ts: &TwoStructure, inv: &ColorInvolution, u: &VertexSet) -> bool {
    let Some(r) = u.first() else { return true };
    let outside: Vec<usize> = (0..ts.n()).filter(|&x| !u.contains(x)).collect();
    u.iter().all(|m| m == r || relation(ts, inv, r, m, &outside).is_some())
}

fn reps_form_module(ts: &TwoStructure, inv: &ColorInvolution, reps: &[usize], outside: &[usize]) -> bool {
    reps.iter().skip(1).all(|&m| relation(ts, inv, reps[0], m, outside).is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    /// `u`, `v` agree at `a` and are involuted at `b`.
    Pattern1,
    /// The color `u`-`a` is neither the color `v`-`a` nor its involute.
    Pattern2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub u: usize,
    pub v: usize,
    pub a: usize,
    pub b: Option<usize>,
    /// `[E(u,a), E(v,a)]`, followed by `[E(u,b), E(v,b)]` for the first pattern.
    pub colors: Vec<Color>,
}

impl PatternWitness {
    /// Checks the witness against the structure.
    pub fn verify(&self, ts: &TwoStructure, inv: &ColorInvolution, set: &VertexSet) -> bool {
        let (u, v, a) = (self.u, self.v, self.a);
        if u == v || !set.contains(u) || !set.contains(v) || set.contains(a) {
            return false;
        }
        let (ua, va) = (ts.color(u, a), ts.color(v, a));
        match self.kind {
            PatternKind::Pattern2 => ua != va && ua != inv.apply(va) && self.colors == [ua, va],
            PatternKind::Pattern1 => {
                let Some(b) = self.b else { return false };
                if set.contains(b) || b == a {
                    return false;
                }
                let (ub, vb) = (ts.color(u, b), ts.color(v, b));
                ua == va && ub == inv.apply(vb) && self.colors == [ua, va, ub, vb]
            }
        }
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PatternKind::Pattern1 => write!(
                f,
                "pattern1 u={} v={} a={} b={} colors={:?}",
                self.u,
                self.v,
                self.a,
                self.b.unwrap_or(usize::MAX),
                self.colors
            ),
            PatternKind::Pattern2 => {
                write!(f, "pattern2 u={} v={} a={} colors={:?}", self.u, self.v, self.a, self.colors)
            }
        }
    }
}

/// A forbidden configuration inside `u`, or `None` when `u` is an involution module.
pub fn find_forbidden_pattern(ts: &TwoStructure, inv: &ColorInvolution, u: &VertexSet) -> Option<PatternWitness> {
    let r = u.first()?;
    let outside: Vec<usize> = (0..ts.n()).filter(|&x| !u.contains(x)).collect();
    for m in u.iter().filter(|&m| m != r) {
        let (mut same_at, mut flip_at) = (None, None);
        for &x in &outside {
            let (cr, cm) = (ts.color(r, x), ts.color(m, x));
            if cm == cr {
                same_at.get_or_insert(x);
            } else if cm == inv.apply(cr) {
                flip_at.get_or_insert(x);
            } else {
                return Some(PatternWitness {
                    kind: PatternKind::Pattern2,
                    u: r,
                    v: m,
                    a: x,
                    b: None,
                    colors: vec![cr, cm],
                });
            }
        }
        if let (Some(a), Some(b)) = (same_at, flip_at) {
            return Some(PatternWitness {
                kind: PatternKind::Pattern1,
                u: r,
                v: m,
                a,
                b: Some(b),
                colors: vec![ts.color(r, a), ts.color(m, a), ts.color(r, b), ts.color(m, b)],
            });
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImdLabel {
    Leaf(usize),
    Prime,
    Complete,
}

/// Orientation of a tree edge `a - b`. `Forward` is the arc `a -> b`: the
/// leaves on `a`'s side form a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Undirected,
    Forward,
    Backward,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImdEdge {
    pub a: usize,
    pub b: usize,
    pub direction: Direction,
}

impl ImdEdge {
    /// True when the leaves on `from`'s side of this edge form a member.
    pub fn side_is_member(&self, from: usize) -> bool {
        match self.direction {
            Direction::Double => true,
            Direction::Forward => from == self.a,
            Direction::Backward => from == self.b,
            Direction::Undirected => false,
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Unrooted tree with per-edge directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingFamilyTree {
    pub n: usize,
    pub nodes: Vec<ImdLabel>,
    pub edges: Vec<ImdEdge>,
    /// Per node, the incident edges whose far sides combine into members
    /// under any union of two or more.
    pub unions: Vec<Vec<usize>>,
    pub pivot: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionSummary {
    /// Exactly one node with only incoming arcs and no double arc.
    Sink(usize),
    /// Exactly one double arc whose endpoints have only incoming arcs otherwise.
    DoubleArc(usize),
    Other { sinks: Vec<usize>, double_arcs: Vec<usize> },
}

/// Leaf sets on both sides of every edge: `sides[e] = (side of a, side of b)`.
struct Sides {
    sides: Vec<(VertexSet, VertexSet)>,
    parent_edge: Vec<Option<usize>>,
    order: Vec<usize>,
}

impl CrossingFamilyTree {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push(i);
            adj[e.b].push(i);
        }
        adj
    }

    pub fn leaf_of(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|&l| l == ImdLabel::Leaf(v))
    }

    pub fn has_prime(&self) -> bool {
        self.nodes.contains(&ImdLabel::Prime)
    }

    pub fn double_arcs(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].direction == Direction::Double).collect()
    }

    /// Nodes whose every incident edge is a single arc pointing at them.
    pub fn sinks(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.nodes.len())
            .filter(|&x| {
                adj[x].iter().all(|&e| {
                    let ed = &self.edges[e];
                    ed.direction != Direction::Double && ed.side_is_member(ed.other(x)) && !ed.side_is_member(x)
                })
            })
            .collect()
    }

    pub fn summary(&self) -> DirectionSummary {
        let sinks = self.sinks();
        let doubles = self.double_arcs();
        if sinks.len() == 1 && doubles.is_empty() {
            return DirectionSummary::Sink(sinks[0]);
        }
        if sinks.is_empty() && doubles.len() == 1 {
            let adj = self.adjacency();
            let d = doubles[0];
            let ok = [self.edges[d].a, self.edges[d].b].iter().all(|&x| {
                adj[x].iter().filter(|&&e| e != d).all(|&e| {
                    let ed = &self.edges[e];
                    ed.side_is_member(ed.other(x)) && !ed.side_is_member(x)
                })
            });
            if ok {
                return DirectionSummary::DoubleArc(d);
            }
        }
        DirectionSummary::Other { sinks, double_arcs: doubles }
    }

    /// Checks the shape: a tree whose leaves are exactly `0..n`.
    pub fn validate(&self) -> Result<()> {
        let k = self.nodes.len();
        if k == 0 {
            return Err(Error::MalformedTree("no nodes".into()));
        }
        if self.edges.len() + 1 != k {
            return Err(Error::MalformedTree(format!("{} nodes but {} edges", k, self.edges.len())));
        }
        let mut seen_leaf = vec![false; self.n];
        for l in &self.nodes {
            if let ImdLabel::Leaf(v) = *l {
                if v >= self.n || seen_leaf[v] {
                    return Err(Error::MalformedTree(format!("leaf {v} repeated or out of range")));
                }
                seen_leaf[v] = true;
            }
        }
        if let Some(v) = seen_leaf.iter().position(|&b| !b) {
            return Err(Error::MalformedTree(format!("missing leaf {v}")));
        }
        if self.unions.len() != k {
            return Err(Error::MalformedTree(format!("{} union lists for {} nodes", self.unions.len(), k)));
        }
        let adj = self.adjacency();
        for (x, u) in self.unions.iter().enumerate() {
            if u.iter().any(|&e| e >= self.edges.len() || (self.edges[e].a != x && self.edges[e].b != x)) {
                return Err(Error::MalformedTree(format!("union list of node {x} names a foreign edge")));
            }
        }
        for e in &self.edges {
            if e.a >= k || e.b >= k || e.a == e.b {
                return Err(Error::MalformedTree(format!("bad edge {}-{}", e.a, e.b)));
            }
        }
        for (x, l) in self.nodes.iter().enumerate() {
            let d = adj[x].len();
            let ok = match l {
                ImdLabel::Leaf(_) => d == 1 || k == 1,
                _ => d >= 3,
            };
            if !ok {
                return Err(Error::MalformedTree(format!("node {x} has degree {d}")));
            }
        }
        let mut seen = vec![false; k];
        let mut st = vec![0];
        seen[0] = true;
        while let Some(x) = st.pop() {
            for &e in &adj[x] {
                let y = self.edges[e].other(x);
                if !seen[y] {
                    seen[y] = true;
                    st.push(y);
                }
            }
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::MalformedTree("not connected".into()));
        }
        Ok(())
    }

    fn sides(&self) -> Sides {
        let k = self.nodes.len();
        let adj = self.adjacency();
        let mut parent_edge = vec![None; k];
        let mut order = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        let mut st = vec![0];
        seen[0] = true;
        while let Some(x) = st.pop() {
            order.push(x);
            for &e in &adj[x] {
                let y = self.edges[e].other(x);
                if !seen[y] {
                    seen[y] = true;
                    parent_edge[y] = Some(e);
                    st.push(y);
                }
            }
        }
        let mut sub: Vec<VertexSet> = vec![VertexSet::new(self.n); k];
        for &x in order.iter().rev() {
            if let ImdLabel::Leaf(v) = self.nodes[x] {
                sub[x].insert(v);
            }
            if let Some(e) = parent_edge[x] {
                let p = self.edges[e].other(x);
                let s = sub[x].clone();
                sub[p].union_with(&s);
            }
        }
        let full = VertexSet::full(self.n);
        let mut sides = vec![(VertexSet::new(self.n), VertexSet::new(self.n)); self.edges.len()];
        for x in 0..k {
            if let Some(e) = parent_edge[x] {
                let down = sub[x].clone();
                let up = full.difference(&down);
                sides[e] = if self.edges[e].a == x { (down, up) } else { (up, down) };
            }
        }
        Sides { sides, parent_edge, order }
    }

    /// Leaves on `from`'s side of edge `e`.
    pub fn side(&self, e: usize, from: usize) -> VertexSet {
        let s = self.sides();
        let (sa, sb) = &s.sides[e];
        if from == self.edges[e].a {
            sa.clone()
        } else {
            sb.clone()
        }
    }
}

/// The undirected labeled tree obtained from the pivot switch at `pivot`.
pub fn imd_shape(ts: &TwoStructure, inv: &ColorInvolution, pivot: usize) -> Result<CrossingFamilyTree> {
    let n = ts.n();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    inv.check_for(ts)?;
    ts.check_vertex(pivot)?;
    if n == 1 {
        return Ok(CrossingFamilyTree {
            n,
            nodes: vec![ImdLabel::Leaf(0)],
            edges: Vec::new(),
            unions: vec![Vec::new()],
            pivot: None,
        });
    }
    if n == 2 {
        return Ok(CrossingFamilyTree {
            n,
            nodes: vec![ImdLabel::Leaf(0), ImdLabel::Leaf(1)],
            edges: vec![ImdEdge { a: 0, b: 1, direction: Direction::Undirected }],
            unions: vec![Vec::new(); 2],
            pivot: None,
        });
    }
    let sw = switch_at_pivot(ts, inv, pivot)?;
    let md = modular_decomposition(&sw.structure)?;
    let mut nodes = Vec::with_capacity(md.nodes.len() + 1);
    let mut edges = Vec::with_capacity(md.nodes.len());
    for nd in &md.nodes {
        nodes.push(match nd.kind {
            MdKind::Leaf(v) => ImdLabel::Leaf(sw.vertex_map[v]),
            MdKind::Prime => ImdLabel::Prime,
            MdKind::Complete { .. } => ImdLabel::Complete,
        });
    }
    for (i, nd) in md.nodes.iter().enumerate() {
        for &c in &nd.children {
            edges.push(ImdEdge { a: i, b: c, direction: Direction::Undirected });
        }
    }
    let s = nodes.len();
    nodes.push(ImdLabel::Leaf(pivot));
    edges.push(ImdEdge { a: md.root, b: s, direction: Direction::Undirected });
    let unions = vec![Vec::new(); nodes.len()];
    Ok(CrossingFamilyTree { n, nodes, edges, unions, pivot: Some(pivot) })
}

/// Statistics from [`direct_edges_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DirectionStats {
    pub representative_tests: usize,
    pub direct_tests: usize,
}

/// Orients every edge of `shape` for the involution-module family of `ts`.
pub fn direct_edges(shape: &CrossingFamilyTree, ts: &TwoStructure, inv: &ColorInvolution) -> Result<CrossingFamilyTree> {
    direct_edges_with_stats(shape, ts, inv).map(|(t, _)| t)
}

pub fn direct_edges_with_stats(
    shape: &CrossingFamilyTree,
    ts: &TwoStructure,
    inv: &ColorInvolution,
) -> Result<(CrossingFamilyTree, DirectionStats)> {
    if shape.n != ts.n() {
        return Err(Error::MalformedTree(format!("tree has {} leaves, structure {} vertices", shape.n, ts.n())));
    }
    inv.check_for(ts)?;
    shape.validate()?;
    let mut stats = DirectionStats::default();
    let tree = shape.clone();
    if tree.edges.is_empty() {
        return Ok((tree, stats));
    }
    let k = tree.nodes.len();
    let adj = tree.adjacency();
    let Sides { sides, parent_edge, order } = tree.sides();
    // member[e] = (side of a is a member, side of b is a member)
    let mut member = vec![(false, false); tree.edges.len()];
    let set_member = |member: &mut Vec<(bool, bool)>, e: usize, from: usize, val: bool| {
        if tree.edges[e].a == from {
            member[e].0 = val;
        } else {
            member[e].1 = val;
        }
    };
    let get_member = |member: &Vec<(bool, bool)>, e: usize, from: usize| {
        if tree.edges[e].a == from {
            member[e].0
        } else {
            member[e].1
        }
    };
    let side_of = |e: usize, from: usize| -> &VertexSet {
        if tree.edges[e].a == from {
            &sides[e].0
        } else {
            &sides[e].1
        }
    };

    // Tests whether the side of `x` on edge `out` is a member, from the
    // branches at `x` other than `out`.
    let decide = |member: &Vec<(bool, bool)>, x: usize, out: usize, stats: &mut DirectionStats| -> bool {
        if let ImdLabel::Leaf(_) = tree.nodes[x] {
            return true;
        }
        let far = tree.edges[out].other(x);
        let branches: Vec<usize> = adj[x].iter().copied().filter(|&e| e != out).collect();
        let all_members = branches.iter().all(|&e| get_member(member, e, tree.edges[e].other(x)));
        if all_members {
            stats.representative_tests += 1;
            let reps: Vec<usize> = branches.iter().map(|&e| side_of(e, tree.edges[e].other(x)).first().unwrap()).collect();
            let outside = side_of(out, far).to_vec();
            reps_form_module(ts, inv, &reps, &outside)
        } else {
            stats.direct_tests += 1;
            is_involution_module(ts, inv, side_of(out, x))
        }
    };

    // upward pass: sides pointing toward the root
    for &x in order.iter().rev() {
        if let Some(e) = parent_edge[x] {
            let val = decide(&member, x, e, &mut stats);
            set_member(&mut member, e, x, val);
        }
    }
    // downward pass: sides pointing away from the root
    for &x in &order {
        for &e in &adj[x] {
            if parent_edge[x] == Some(e) {
                continue;
            }
            let val = decide(&member, x, e, &mut stats);
            set_member(&mut member, e, x, val);
        }
    }
    debug_assert_eq!(k, order.len());
    let mut directed = tree.clone();
    for (e, ed) in directed.edges.iter_mut().enumerate() {
        ed.direction = match member[e] {
            (true, true) => Direction::Double,
            (true, false) => Direction::Forward,
            (false, true) => Direction::Backward,
            (false, false) => Direction::Undirected,
        };
    }
    // group the member branches of each complete node by pairwise unions
    for (x, inc) in adj.iter().enumerate() {
        if directed.nodes[x] != ImdLabel::Complete || inc.len() < 4 {
            continue;
        }
        let cands: Vec<usize> =
            inc.iter().copied().filter(|&e| get_member(&member, e, tree.edges[e].other(x))).collect();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for e in cands {
            let b = side_of(e, tree.edges[e].other(x));
            let found = groups.iter().position(|g| {
                let r = side_of(g[0], tree.edges[g[0]].other(x));
                stats.representative_tests += 1;
                let outside = b.union(r).complement().to_vec();
                reps_form_module(ts, inv, &[b.first().unwrap(), r.first().unwrap()], &outside)
            });
            match found {
                Some(i) => groups[i].push(e),
                None => groups.push(vec![e]),
            }
        }
        groups.retain(|g| g.len() >= 2);
        match groups.len() {
            0 => directed.nodes[x] = ImdLabel::Prime,
            1 => directed.unions[x] = groups.pop().unwrap(),
            _ => return Err(Error::MalformedTree(format!("node {x} has {} separate union groups", groups.len()))),
        }
    }
    Ok((directed, stats))
}

/// Directed tree of the involution-module family, built through vertex 0.
pub fn imd_tree(ts: &TwoStructure, inv: &ColorInvolution) -> Result<CrossingFamilyTree> {
    imd_tree_with_pivot(ts, inv, 0)
}

pub fn imd_tree_with_pivot(ts: &TwoStructure, inv: &ColorInvolution, pivot: usize) -> Result<CrossingFamilyTree> {
    let shape = imd_shape(ts, inv, pivot)?;
    direct_edges(&shape, ts, inv)
}

/// Every nonempty member represented by the tree, in canonical order.
pub fn enumerate_involution_modules_from_tree(t: &CrossingFamilyTree, cap: usize) -> Result<Vec<VertexSet>> {
    let sides = if t.edges.is_empty() { None } else { Some(t.sides().sides) };
    let mut out = BTreeSet::new();
    let push = |s: VertexSet, out: &mut BTreeSet<VertexSet>| -> Result<()> {
        if !s.is_empty() {
            out.insert(s);
        }
        if out.len() > cap {
            return Err(Error::CapExceeded { cap, reached: out.len() });
        }
        Ok(())
    };
    push(VertexSet::full(t.n), &mut out)?;
    let Some(sides) = sides else { return Ok(out.into_iter().collect()) };
    for (e, ed) in t.edges.iter().enumerate() {
        if ed.side_is_member(ed.a) {
            push(sides[e].0.clone(), &mut out)?;
        }
        if ed.side_is_member(ed.b) {
            push(sides[e].1.clone(), &mut out)?;
        }
    }
    for (x, l) in t.nodes.iter().enumerate() {
        if *l != ImdLabel::Complete {
            continue;
        }
        let branches: Vec<&VertexSet> = t.unions[x]
            .iter()
            .copied()
            .map(|e| if t.edges[e].a == x { &sides[e].1 } else { &sides[e].0 })
            .collect();
        let d = branches.len();
        if d < 2 {
            continue;
        }
        let unions = (1u128 << d.min(120)) - d as u128 - 1;
        if unions > cap as u128 {
            return Err(Error::CapExceeded { cap, reached: unions.min(usize::MAX as u128) as usize });
        }
        for mask in 1u64..(1u64 << d) {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut s = VertexSet::new(t.n);
            for (i, b) in branches.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.union_with(b);
                }
            }
            push(s, &mut out)?;
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_graph, random_nested_structure, random_two_structure};
    use crate::oracles::brute_involution_modules;
    use crate::structure::Graph;
    use proptest::prelude::*;

    fn g() -> ColorInvolution {
        ColorInvolution::graph()
    }

    fn vs(n: usize, it: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, it.iter().copied())
    }

    #[test]
    fn membership_examples() {
        let c5 = Graph::cycle(5);
        let ts = c5.as_two_structure();
        assert!(is_involution_module(ts, &g(), &vs(5, &[3])));
        assert!(is_involution_module(ts, &g(), &VertexSet::full(5)));
        assert!(is_involution_module(ts, &g(), &VertexSet::new(5)));
        assert!(!is_involution_module(ts, &g(), &vs(5, &[0, 1])));
        let w = find_forbidden_pattern(ts, &g(), &vs(5, &[0, 1])).unwrap();
        assert!(w.verify(ts, &g(), &vs(5, &[0, 1])));
    }

    #[test]
    fn p4_tree_shape() {
        let p4 = Graph::path(4);
        let t = imd_tree(p4.as_two_structure(), &g()).unwrap();
        let internal: Vec<usize> = (0..t.nodes.len()).filter(|&x| t.nodes[x] == ImdLabel::Complete).collect();
        assert_eq!(internal.len(), 2);
        let adj = t.adjacency();
        let mut leaf_sets: Vec<Vec<usize>> = internal
            .iter()
            .map(|&x| {
                let mut l: Vec<usize> = adj[x]
                    .iter()
                    .filter_map(|&e| match t.nodes[t.edges[e].other(x)] {
                        ImdLabel::Leaf(v) => Some(v),
                        _ => None,
                    })
                    .collect();
                l.sort();
                l
            })
            .collect();
        leaf_sets.sort();
        assert_eq!(leaf_sets, vec![vec![0, 3], vec![1, 2]]);
        let fam = enumerate_involution_modules_from_tree(&t, 1000).unwrap();
        assert_eq!(fam, brute_involution_modules(p4.as_two_structure(), &g(), 16).unwrap());
    }

    #[test]
    fn small_trees() {
        let t = imd_tree(Graph::empty(1).as_two_structure(), &g()).unwrap();
        assert_eq!(t.nodes, vec![ImdLabel::Leaf(0)]);
        assert_eq!(enumerate_involution_modules_from_tree(&t, 10).unwrap(), vec![vs(1, &[0])]);
        let t = imd_tree(Graph::complete(2).as_two_structure(), &g()).unwrap();
        assert_eq!(t.edges[0].direction, Direction::Double);
        assert_eq!(t.summary(), DirectionSummary::DoubleArc(0));
    }

    #[test]
    fn malformed_shapes_rejected() {
        let ts = Graph::path(3).into_two_structure();
        let bad = CrossingFamilyTree {
            n: 3,
            nodes: vec![ImdLabel::Leaf(0), ImdLabel::Leaf(1)],
            edges: vec![ImdEdge { a: 0, b: 1, direction: Direction::Undirected }],
            unions: vec![Vec::new(); 2],
            pivot: None,
        };
        assert!(matches!(direct_edges(&bad, &ts, &g()), Err(Error::MalformedTree(_))));
        let cyclic = CrossingFamilyTree {
            n: 3,
            nodes: vec![ImdLabel::Leaf(0), ImdLabel::Leaf(1), ImdLabel::Leaf(2), ImdLabel::Complete],
            edges: vec![
                ImdEdge { a: 0, b: 3, direction: Direction::Undirected },
                ImdEdge { a: 1, b: 3, direction: Direction::Undirected },
                ImdEdge { a: 1, b: 2, direction: Direction::Undirected },
            ],
            unions: vec![Vec::new(); 4],
            pivot: None,
        };
        assert!(matches!(direct_edges(&cyclic, &ts, &g()), Err(Error::MalformedTree(_))));
    }

    fn check_family(ts: &TwoStructure, inv: &ColorInvolution) {
        let brute = brute_involution_modules(ts, inv, 16).unwrap();
        for s in 0..ts.n() {
            let t = imd_tree_with_pivot(ts, inv, s).unwrap();
            let fam = enumerate_involution_modules_from_tree(&t, 1 << 20).unwrap();
            assert_eq!(fam, brute, "pivot {s} on {ts:?}");
        }
    }

    #[test]
    fn deep_tree_directs() {
        let n = 2000;
        let mut g2 = Graph::empty(n);
        for v in 1..n {
            if v % 3 == 0 {
                for u in 0..v {
                    g2.add_edge(u, v);
                }
            }
        }
        let t = imd_tree(g2.as_two_structure(), &g()).unwrap();
        assert!(!t.has_prime());
    }

    proptest! {
        #[test]
        fn witness_iff_not_member(seed in any::<u64>(), n in 2usize..=10, mask in any::<u64>()) {
            let gr = random_graph(n, 0.5, seed);
            let u = VertexSet::from_mask(n, mask | 1);
            let ts = gr.as_two_structure();
            let w = find_forbidden_pattern(ts, &g(), &u);
            prop_assert_eq!(w.is_none(), is_involution_module(ts, &g(), &u));
            if let Some(w) = w {
                prop_assert!(w.verify(ts, &g(), &u));
            }
        }

        #[test]
        fn graph_tree_matches_oracle(seed in any::<u64>(), n in 1usize..=9) {
            let gr = random_graph(n, 0.5, seed);
            check_family(gr.as_two_structure(), &g());
        }

        #[test]
        fn colored_tree_matches_oracle(seed in any::<u64>(), n in 1usize..=7) {
            let inv = ColorInvolution::adjacent_pairs(4).unwrap();
            check_family(&random_two_structure(n, 4, seed), &inv);
            check_family(&random_nested_structure(n, 4, seed), &inv);
        }
    }
}
