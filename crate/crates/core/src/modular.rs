use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::{Color, Graph, TwoStructure};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MdKind {
    Leaf(usize),
    Prime,
    /// All pairs of children see each other in `color`.
    Complete { color: Color },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdNode {
    pub kind: MdKind,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    pub members: VertexSet,
}

/// Strong-module tree. Children are ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedDecompTree {
    pub n: usize,
    pub nodes: Vec<MdNode>,
    pub root: usize,
}

impl RootedDecompTree {
    pub fn leaf_of(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|nd| nd.kind == MdKind::Leaf(v))
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !matches!(self.nodes[i].kind, MdKind::Leaf(_)))
    }

    pub fn has_prime(&self) -> bool {
        self.nodes.iter().any(|nd| nd.kind == MdKind::Prime)
    }

    /// Node ids in post-order (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
                continue;
            }
            stack.push((x, true));
            for &c in self.nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }
}

/// True iff no outside vertex distinguishes two members of `m`.
pub fn is_module(ts: &TwoStructure, m: &VertexSet) -> bool {
    let Some(r) = m.first() else { return true };
    let members = m.to_vec();
    for x in 0..ts.n() {
        if m.contains(x) {
            continue;
        }
        let row = ts.row(x);
        let c = row[r];
        if members.iter().any(|&u| row[u] != c) {
            return false;
        }
    }
    true
}

/// Partition of `m \ {v}` into the maximal modules of `ts[m]` avoiding `v`.
fn maximal_modules_avoiding(ts: &TwoStructure, m: &[usize], v: usize) -> Vec<Vec<usize>> {
    let n = ts.n();
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = vec![m.iter().copied().filter(|&x| x != v).collect()];
    for &x in &parts[0] {
        part_of[x] = 0;
    }
    let mut queue: Vec<usize> = m.to_vec();
    let mut queued = vec![false; n];
    for &x in m {
        queued[x] = true;
    }
    let mut buckets: Vec<(Color, Vec<usize>)> = Vec::new();
    while let Some(p) = queue.pop() {
        queued[p] = false;
        let row = ts.row(p);
        let mut idx = 0;
        while idx < parts.len() {
            if part_of[p] == idx || parts[idx].len() < 2 {
                idx += 1;
                continue;
            }
            let first = row[parts[idx][0]];
            if parts[idx].iter().all(|&y| row[y] == first) {
                idx += 1;
                continue;
            }
            buckets.clear();
            for &y in &parts[idx] {
                let c = row[y];
                match buckets.iter_mut().find(|(bc, _)| *bc == c) {
                    Some((_, b)) => b.push(y),
                    None => buckets.push((c, vec![y])),
                }
            }
            let old = std::mem::take(&mut parts[idx]);
            for &y in &old {
                if !queued[y] {
                    queued[y] = true;
                    queue.push(y);
                }
            }
            let mut drained = buckets.drain(..);
            parts[idx] = drained.next().unwrap().1;
            for (_, b) in drained {
                let id = parts.len();
                for &y in &b {
                    part_of[y] = id;
                }
                parts.push(b);
            }
            idx += 1;
        }
    }
    parts
}

/// Strongly connected components of the forcing digraph, peeled from the
/// unique source component inward.
fn source_layers(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = adj.len();
    let mut seen = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for s in 0..k {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((x, i)) = stack.last_mut() {
            if let Some(&y) = adj[*x].get(*i) {
                *i += 1;
                if !seen[y] {
                    seen[y] = true;
                    stack.push((y, 0));
                }
            } else {
                order.push(*x);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); k];
    for (x, ys) in adj.iter().enumerate() {
        for &y in ys {
            radj[y].push(x);
        }
    }
    let mut comp = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut st = vec![s];
        while let Some(x) = st.pop() {
            for &y in &radj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    st.push(y);
                }
            }
        }
        comps.push(members);
    }
    // Kosaraju yields components in topological order of the condensation
    comps
}

/// Connected components of the pairs of `y` whose color differs from `c`.
fn components_avoiding(ts: &TwoStructure, y: &[usize], c: Color) -> Vec<Vec<usize>> {
    let k = y.len();
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![y[s]];
        let mut st = vec![s];
        while let Some(i) = st.pop() {
            let row = ts.row(y[i]);
            for j in 0..k {
                if comp[j] == usize::MAX && row[y[j]] != c {
                    comp[j] = id;
                    members.push(y[j]);
                    st.push(j);
                }
            }
        }
        out.push(members);
    }
    out
}

/// Strong-module tree of a 2-structure with `n >= 1`.
pub fn modular_decomposition(ts: &TwoStructure) -> Result<RootedDecompTree> {
    let n = ts.n();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let mut nodes: Vec<MdNode> = vec![MdNode {
        kind: MdKind::Prime,
        children: Vec::new(),
        parent: None,
        members: VertexSet::full(n),
    }];
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let m = nodes[id].members.to_vec();
        if m.len() == 1 {
            nodes[id].kind = MdKind::Leaf(m[0]);
            continue;
        }
        let v = m[0];
        let parts = maximal_modules_avoiding(ts, &m, v);
        let reps: Vec<usize> = parts.iter().map(|p| p[0]).collect();
        let k = parts.len();
        let mut adj = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && ts.color(reps[j], reps[i]) != ts.color(reps[j], v) {
                    adj[i].push(j);
                }
            }
        }
        // the strong modules containing v form a chain; each layer of the
        // condensation adds one node of it
        let mut rest = nodes[id].members.clone();
        let mut cur = id;
        for layer in source_layers(&adj) {
            let mut child_sets: Vec<Vec<usize>> = Vec::new();
            if layer.len() == 1 {
                let y = &parts[layer[0]];
                let c = ts.color(v, y[0]);
                nodes[cur].kind = MdKind::Complete { color: c };
                child_sets.extend(components_avoiding(ts, y, c));
            } else {
                nodes[cur].kind = MdKind::Prime;
                child_sets.extend(layer.iter().map(|&i| parts[i].clone()));
            }
            for p in &layer {
                for &x in &parts[*p] {
                    rest.remove(x);
                }
            }
            let mut kids: Vec<VertexSet> = child_sets.into_iter().map(|s| VertexSet::from_iter(n, s)).collect();
            kids.sort_by_key(|s| s.first());
            let inner = nodes.len();
            nodes.push(MdNode { kind: MdKind::Prime, children: Vec::new(), parent: Some(cur), members: rest.clone() });
            nodes[cur].children.push(inner);
            for s in kids {
                let cid = nodes.len();
                nodes.push(MdNode { kind: MdKind::Prime, children: Vec::new(), parent: Some(cur), members: s });
                nodes[cur].children.push(cid);
                stack.push(cid);
            }
            cur = inner;
        }
        debug_assert_eq!(rest.len(), 1);
        nodes[cur].kind = MdKind::Leaf(v);
    }
    Ok(RootedDecompTree { n, nodes, root: 0 })
}

fn push_capped(out: &mut BTreeSet<VertexSet>, s: VertexSet, cap: usize) -> Result<()> {
    out.insert(s);
    if out.len() > cap {
        return Err(Error::CapExceeded { cap, reached: out.len() });
    }
    Ok(())
}

/// Every module (nonempty) represented by the tree, in canonical order.
pub fn enumerate_modules_from_tree(t: &RootedDecompTree, cap: usize) -> Result<Vec<VertexSet>> {
    let mut projected: u128 = t.nodes.len() as u128;
    for nd in &t.nodes {
        if let MdKind::Complete { .. } = nd.kind {
            let k = nd.children.len() as u32;
            projected = projected.saturating_add((1u128 << k.min(120)).saturating_sub(k as u128 + 2));
        }
    }
    if projected > cap as u128 {
        return Err(Error::CapExceeded { cap, reached: projected.min(usize::MAX as u128) as usize });
    }
    let mut out = BTreeSet::new();
    for nd in &t.nodes {
        push_capped(&mut out, nd.members.clone(), cap)?;
        if let MdKind::Complete { .. } = nd.kind {
            let k = nd.children.len();
            for mask in 1u64..(1u64 << k) - 1 {
                if mask.count_ones() < 2 {
                    continue;
                }
                let mut s = VertexSet::new(t.n);
                for (i, &c) in nd.children.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.union_with(&t.nodes[c].members);
                    }
                }
                push_capped(&mut out, s, cap)?;
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(usize),
    Series(usize, usize),
    Parallel(usize, usize),
}

/// Binary cotree in post-order; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCotree {
    pub n: usize,
    pub nodes: Vec<CotreeNode>,
}

impl BinaryCotree {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Rebuilds the graph: series joins, parallel takes the disjoint union.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut leaves: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for nd in &self.nodes {
            let l = match *nd {
                CotreeNode::Leaf(v) => vec![v],
                CotreeNode::Series(a, b) | CotreeNode::Parallel(a, b) => {
                    if matches!(nd, CotreeNode::Series(..)) {
                        for &x in &leaves[a] {
                            for &y in &leaves[b] {
                                g.add_edge(x, y);
                            }
                        }
                    }
                    let mut l = std::mem::take(&mut leaves[a]);
                    l.append(&mut std::mem::take(&mut leaves[b]));
                    l
                }
            };
            leaves.push(l);
        }
        g
    }
}

/// Binary cotree with left-leaning chains at every complete node.
pub fn binary_cotree(g: &Graph) -> Result<BinaryCotree> {
    let t = modular_decomposition(g.as_two_structure())?;
    if t.has_prime() {
        return Err(Error::NotACograph);
    }
    let mut built: Vec<usize> = vec![usize::MAX; t.nodes.len()];
    let mut nodes = Vec::with_capacity(2 * g.n());
    for x in t.post_order() {
        let nd = &t.nodes[x];
        built[x] = match nd.kind {
            MdKind::Leaf(v) => {
                nodes.push(CotreeNode::Leaf(v));
                nodes.len() - 1
            }
            MdKind::Complete { color } => {
                let mut acc = built[nd.children[0]];
                for &c in &nd.children[1..] {
                    let b = built[c];
                    nodes.push(if color == 1 { CotreeNode::Series(acc, b) } else { CotreeNode::Parallel(acc, b) });
                    acc = nodes.len() - 1;
                }
                acc
            }
            MdKind::Prime => unreachable!(),
        };
    }
    Ok(BinaryCotree { n: g.n(), nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_graph, random_nested_structure, random_two_structure};
    use crate::oracles::brute_modules;
    use proptest::prelude::*;

    fn vs(n: usize, it: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, it.iter().copied())
    }

    #[test]
    fn is_module_examples() {
        let p4 = Graph::path(4);
        let ts = p4.as_two_structure();
        assert!(is_module(ts, &vs(4, &[2])));
        assert!(is_module(ts, &VertexSet::full(4)));
        assert!(!is_module(ts, &vs(4, &[1, 2])));
        assert!(is_module(ts, &VertexSet::new(4)));
    }

    #[test]
    fn p4_is_prime_with_four_leaves() {
        let t = modular_decomposition(Graph::path(4).as_two_structure()).unwrap();
        assert_eq!(t.nodes[t.root].kind, MdKind::Prime);
        assert_eq!(t.nodes[t.root].children.len(), 4);
        assert_eq!(enumerate_modules_from_tree(&t, 100).unwrap().len(), 5);
    }

    #[test]
    fn k3_single_series_node() {
        let t = modular_decomposition(Graph::complete(3).as_two_structure()).unwrap();
        assert_eq!(t.nodes[t.root].kind, MdKind::Complete { color: 1 });
        assert_eq!(t.nodes.len(), 4);
        assert_eq!(enumerate_modules_from_tree(&t, 100).unwrap().len(), 7);
    }

    #[test]
    fn k2_plus_k1() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let t = modular_decomposition(g.as_two_structure()).unwrap();
        let root = &t.nodes[t.root];
        assert_eq!(root.kind, MdKind::Complete { color: 0 });
        assert_eq!(root.children.len(), 2);
        let a = &t.nodes[root.children[0]];
        assert_eq!(a.kind, MdKind::Complete { color: 1 });
        assert_eq!(a.members, vs(3, &[0, 1]));
        assert_eq!(t.nodes[root.children[1]].kind, MdKind::Leaf(2));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let t = modular_decomposition(g.as_two_structure()).unwrap();
        assert_eq!(enumerate_modules_from_tree(&t, 10).unwrap(), vec![vs(1, &[0])]);
    }

    #[test]
    fn cap_is_reported() {
        let t = modular_decomposition(Graph::complete(12).as_two_structure()).unwrap();
        let err = enumerate_modules_from_tree(&t, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 1000, reached } if reached >= 4095));
    }

    #[test]
    fn cotree_examples() {
        let t = binary_cotree(&Graph::complete(2)).unwrap();
        assert_eq!(t.nodes, vec![CotreeNode::Leaf(0), CotreeNode::Leaf(1), CotreeNode::Series(0, 1)]);
        let t = binary_cotree(&Graph::complete(3)).unwrap();
        assert_eq!(t.nodes[t.root()], CotreeNode::Series(3, 2));
        assert_eq!(t.nodes[3], CotreeNode::Series(0, 1));
        assert_eq!(binary_cotree(&Graph::path(4)).unwrap_err(), Error::NotACograph);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        // threshold graph: every new vertex is isolated or dominating
        let n = 3000;
        let mut g = Graph::empty(n);
        for v in 1..n {
            if v % 2 == 1 {
                for u in 0..v {
                    g.add_edge(u, v);
                }
            }
        }
        let t = binary_cotree(&g).unwrap();
        assert_eq!(t.to_graph(), g);
    }

    fn check_against_oracle(ts: &TwoStructure) {
        let t = modular_decomposition(ts).unwrap();
        let fam = enumerate_modules_from_tree(&t, 1 << 20).unwrap();
        let brute = brute_modules(ts, 16).unwrap();
        assert_eq!(fam, brute, "{ts:?}");
        for nd in &t.nodes {
            assert!(is_module(ts, &nd.members));
            if !matches!(nd.kind, MdKind::Leaf(_)) {
                assert!(nd.children.len() >= 2);
            }
        }
    }

    proptest! {
        #[test]
        fn tree_family_matches_brute_force(seed in any::<u64>(), n in 1usize..=10, colors in prop::sample::select(vec![2usize, 4])) {
            check_against_oracle(&random_two_structure(n, colors, seed));
            check_against_oracle(&random_nested_structure(n, colors, seed));
        }

        #[test]
        fn cotree_rebuilds_input(seed in any::<u64>(), n in 1usize..40) {
            let g = crate::gen::random_cograph(n, seed);
            let t = binary_cotree(&g).unwrap();
            prop_assert_eq!(t.to_graph(), g);
        }

        #[test]
        fn leaves_partition_vertices(seed in any::<u64>(), n in 1usize..30) {
            let g = random_graph(n, 0.3, seed);
            let t = modular_decomposition(g.as_two_structure()).unwrap();
            let mut leaves: Vec<usize> = t.nodes.iter().filter_map(|nd| match nd.kind { MdKind::Leaf(v) => Some(v), _ => None }).collect();
            leaves.sort();
            prop_assert_eq!(leaves, (0..n).collect::<Vec<_>>());
        }
    }
}
