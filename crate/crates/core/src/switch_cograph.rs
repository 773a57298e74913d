use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imd::imd_tree;
use crate::modular::{modular_decomposition, MdKind};
use crate::structure::{ColorInvolution, Graph};
use crate::switch_ops::seidel_switch;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    Gem,
    CoGem,
    Bull,
    C5,
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenKind::Gem => "gem",
            ForbiddenKind::CoGem => "co-gem",
            ForbiddenKind::Bull => "bull",
            ForbiddenKind::C5 => "c5",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenWitness {
    pub vertices: [usize; 5],
    pub kind: ForbiddenKind,
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.vertices;
        write!(f, "{} on {} {} {} {} {}", self.kind, v[0], v[1], v[2], v[3], v[4])
    }
}

/// Which forbidden graph the five vertices induce, if any.
pub fn classify_five(g: &Graph, vs: [usize; 5]) -> Option<ForbiddenKind> {
    let mut deg = [0usize; 5];
    let mut m = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            if g.adjacent(vs[i], vs[j]) {
                deg[i] += 1;
                deg[j] += 1;
                m += 1;
            }
        }
    }
    deg.sort_unstable();
    // each of these graphs is determined by its degree sequence on 5 vertices
    match (m, deg) {
        (7, [2, 2, 3, 3, 4]) => Some(ForbiddenKind::Gem),
        (3, [0, 1, 1, 2, 2]) => Some(ForbiddenKind::CoGem),
        (5, [1, 1, 2, 3, 3]) => Some(ForbiddenKind::Bull),
        (5, [2, 2, 2, 2, 2]) => Some(ForbiddenKind::C5),
        _ => None,
    }
}

impl ForbiddenWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut s = self.vertices;
        s.sort_unstable();
        s.windows(2).all(|w| w[0] < w[1]) && s[4] < g.n() && classify_five(g, self.vertices) == Some(self.kind)
    }
}

/// Exhaustive scan over all 5-subsets in lexicographic order.
pub fn forbidden_subgraph_witness(g: &Graph) -> Option<ForbiddenWitness> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let vs = [a, b, c, d, e];
                        if let Some(kind) = classify_five(g, vs) {
                            return Some(ForbiddenWitness { vertices: vs, kind });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_cograph(g: &Graph) -> bool {
    g.n() == 0 || !modular_decomposition(g.as_two_structure()).map(|t| t.has_prime()).unwrap_or(true)
}

/// Tree route: the involution-module tree has no prime node.
pub fn is_switch_cograph(g: &Graph) -> bool {
    g.n() == 0 || !imd_tree(g.as_two_structure(), &ColorInvolution::graph()).map(|t| t.has_prime()).unwrap_or(true)
}

/// Switches at vertex 0 and tests for a cograph.
pub fn is_switch_cograph_via_seidel(g: &Graph) -> bool {
    g.n() < 2 || seidel_switch(g, 0).map(|h| is_cograph(&h)).unwrap_or(false)
}

/// A forbidden induced subgraph found by vertex deletion, `None` on switch cographs.
pub fn find_forbidden_witness(g: &Graph) -> Option<ForbiddenWitness> {
    if is_switch_cograph_via_seidel(g) {
        return None;
    }
    let n = g.n();
    let mut keep = VertexSet::full(n);
    for v in 0..n {
        if keep.len() <= 5 {
            break;
        }
        keep.remove(v);
        let (h, _) = g.induced(&keep).expect("nonempty");
        if is_switch_cograph_via_seidel(&h) {
            keep.insert(v);
        }
    }
    let vs = keep.to_vec();
    if vs.len() == 5 {
        let arr = [vs[0], vs[1], vs[2], vs[3], vs[4]];
        if let Some(kind) = classify_five(g, arr) {
            return Some(ForbiddenWitness { vertices: arr, kind });
        }
    }
    let (h, map) = g.induced(&keep).expect("nonempty");
    forbidden_subgraph_witness(&h).map(|w| ForbiddenWitness { vertices: w.vertices.map(|i| map[i]), kind: w.kind })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// `A1-B1` and `A2-B2` complete, cross pairs empty.
    Clique,
    /// `A1-B2` and `A2-B1` complete, straight pairs empty.
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinNode {
    Leaf(usize),
    Internal {
        a: usize,
        b: usize,
        kind: NodeKind,
        /// Child part 1 lies in this node's part 2.
        flip_a: bool,
        flip_b: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinNodeInfo {
    pub node: BinNode,
    pub size: usize,
    pub size1: usize,
    pub size2: usize,
    pub min: usize,
}

impl BinNodeInfo {
    pub fn part_size(&self, part: usize) -> usize {
        if part == 1 {
            self.size1
        } else {
            self.size2
        }
    }
}

/// Binary involution-module tree of a switch cograph, in post-order with the root last.
///
/// Every non-root node splits its leaves into `N1` (the leaves related to
/// vertex 0 like the node's smallest leaf) and `N2`. The root holds vertex 0
/// and its neighbors in `N1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryImdt {
    pub n: usize,
    pub nodes: Vec<BinNodeInfo>,
    adj0: VertexSet,
}

impl BinaryImdt {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leaves(&self, x: usize) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        let mut st = vec![x];
        while let Some(y) = st.pop() {
            match self.nodes[y].node {
                BinNode::Leaf(v) => {
                    s.insert(v);
                }
                BinNode::Internal { a, b, .. } => {
                    st.push(a);
                    st.push(b);
                }
            }
        }
        s
    }

    /// `(N1, N2)` of node `x`.
    pub fn parts(&self, x: usize) -> (VertexSet, VertexSet) {
        let l = self.leaves(x);
        let p1 = if x == self.root() {
            let mut p = l.intersection(&self.adj0);
            if self.n > 0 {
                p.insert(0);
            }
            p
        } else {
            let m = self.nodes[x].min;
            let want = self.adj0.contains(m);
            VertexSet::from_iter(self.n, l.iter().filter(|&v| self.adj0.contains(v) == want))
        };
        let p2 = l.difference(&p1);
        (p1, p2)
    }

    pub fn parent_of(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.nodes.len()];
        for (i, nd) in self.nodes.iter().enumerate() {
            if let BinNode::Internal { a, b, .. } = nd.node {
                p[a] = Some(i);
                p[b] = Some(i);
            }
        }
        p
    }
}

/// Builds the binary tree; fails with a forbidden witness on other graphs.
pub fn binary_imdt(g: &Graph) -> Result<BinaryImdt> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let adj0 = VertexSet::from_iter(n, g.neighbors(0));
    let leaf = |v: usize| BinNodeInfo { node: BinNode::Leaf(v), size: 1, size1: 1, size2: 0, min: v };
    if n == 1 {
        return Ok(BinaryImdt { n, nodes: vec![leaf(0)], adj0 });
    }
    let h = seidel_switch(g, 0)?;
    let md = modular_decomposition(h.as_two_structure())?;
    if md.has_prime() {
        let w = find_forbidden_witness(g).or_else(|| forbidden_subgraph_witness(g)).expect("prime node implies a witness");
        return Err(Error::NotASwitchCograph(w));
    }
    let mut nodes: Vec<BinNodeInfo> = Vec::with_capacity(2 * n);
    // part representatives per node, aligned to its own parts
    let mut reps: Vec<(Option<usize>, Option<usize>)> = Vec::with_capacity(2 * n);
    let join = |nodes: &mut Vec<BinNodeInfo>,
                    reps: &mut Vec<(Option<usize>, Option<usize>)>,
                    a: usize,
                    b: usize,
                    is_root: bool|
     -> Result<usize> {
        let (na, nb) = (nodes[a], nodes[b]);
        let min = na.min.min(nb.min);
        let (flip_a, flip_b) = if is_root {
            (false, !adj0.contains(nb.min))
        } else {
            let want = adj0.contains(min);
            (adj0.contains(na.min) != want, adj0.contains(nb.min) != want)
        };
        let orient = |r: (Option<usize>, Option<usize>), f: bool| if f { (r.1, r.0) } else { r };
        let (a1, a2) = orient(reps[a], flip_a);
        let (b1, b2) = orient(reps[b], flip_b);
        let adj = |p: Option<usize>, q: Option<usize>| match (p, q) {
            (Some(p), Some(q)) => Some(g.adjacent(p, q)),
            _ => None,
        };
        let straight = [adj(a1, b1), adj(a2, b2)];
        let cross = [adj(a1, b2), adj(a2, b1)];
        let fits = |on: &[Option<bool>; 2], off: &[Option<bool>; 2]| {
            on.iter().all(|x| x.unwrap_or(true)) && off.iter().all(|x| !x.unwrap_or(false))
        };
        let kind = if fits(&straight, &cross) {
            NodeKind::Clique
        } else if fits(&cross, &straight) {
            NodeKind::Bipartite
        } else {
            return Err(Error::MalformedTree(format!("node over {a} and {b} has mixed part adjacency")));
        };
        let (sa1, sa2) = if flip_a { (na.size2, na.size1) } else { (na.size1, na.size2) };
        let (sb1, sb2) = if flip_b { (nb.size2, nb.size1) } else { (nb.size1, nb.size2) };
        nodes.push(BinNodeInfo {
            node: BinNode::Internal { a, b, kind, flip_a, flip_b },
            size: na.size + nb.size,
            size1: sa1 + sb1,
            size2: sa2 + sb2,
            min,
        });
        reps.push((a1.or(b1), a2.or(b2)));
        Ok(nodes.len() - 1)
    };
    let mut built = vec![usize::MAX; md.nodes.len()];
    for x in md.post_order() {
        let nd = &md.nodes[x];
        built[x] = match nd.kind {
            MdKind::Leaf(v) => {
                nodes.push(leaf(v + 1));
                reps.push((Some(v + 1), None));
                nodes.len() - 1
            }
            MdKind::Complete { .. } => {
                let mut acc = built[nd.children[0]];
                for &c in &nd.children[1..] {
                    acc = join(&mut nodes, &mut reps, acc, built[c], false)?;
                }
                acc
            }
            MdKind::Prime => unreachable!(),
        };
    }
    let top = built[md.root];
    nodes.push(leaf(0));
    reps.push((Some(0), None));
    let zero = nodes.len() - 1;
    join(&mut nodes, &mut reps, zero, top, true)?;
    Ok(BinaryImdt { n, nodes, adj0 })
}

/// Grows a switch cograph by twin and antitwin extensions.
pub fn random_switch_cograph(n: usize, seed: u64, antitwin_prob: f64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&antitwin_prob) {
        return Err(Error::InvalidArgument(format!("probability {antitwin_prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for v in 1..n {
        let t = rng.gen_range(0..v);
        let anti = rng.gen_bool(antitwin_prob);
        for u in 0..v {
            if u != t && g.adjacent(t, u) != anti {
                g.add_edge(u, v);
            }
        }
        if rng.gen_bool(0.5) {
            g.add_edge(t, v);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_graph;
    use proptest::prelude::*;

    fn named(kind: ForbiddenKind) -> Graph {
        let e: &[(usize, usize)] = match kind {
            ForbiddenKind::Gem => &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
            ForbiddenKind::CoGem => &[(0, 1), (1, 2), (2, 3)],
            ForbiddenKind::Bull => &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)],
            ForbiddenKind::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        };
        Graph::from_edges(5, e).unwrap()
    }

    #[test]
    fn named_graphs_are_rejected() {
        for k in [ForbiddenKind::Gem, ForbiddenKind::CoGem, ForbiddenKind::Bull, ForbiddenKind::C5] {
            let g = named(k);
            assert!(!is_switch_cograph(&g), "{k}");
            assert!(!is_switch_cograph_via_seidel(&g));
            let w = forbidden_subgraph_witness(&g).unwrap();
            assert_eq!(w, ForbiddenWitness { vertices: [0, 1, 2, 3, 4], kind: k });
            assert_eq!(find_forbidden_witness(&g), Some(w));
            assert!(matches!(binary_imdt(&g), Err(Error::NotASwitchCograph(_))));
        }
    }

    #[test]
    fn cographs_are_accepted() {
        for g in [Graph::complete(5), Graph::path(3), Graph::cycle(4)] {
            assert!(is_switch_cograph(&g));
            assert!(is_cograph(&g));
        }
        assert!(is_switch_cograph(&Graph::path(4)));
        assert!(forbidden_subgraph_witness(&Graph::path(4)).is_none());
    }

    #[test]
    fn k2_root_is_clique() {
        let t = binary_imdt(&Graph::complete(2)).unwrap();
        assert_eq!(t.nodes.len(), 3);
        assert!(matches!(t.nodes[t.root()].node, BinNode::Internal { kind: NodeKind::Clique, .. }));
        let t = binary_imdt(&Graph::empty(2)).unwrap();
        assert!(matches!(t.nodes[t.root()].node, BinNode::Internal { kind: NodeKind::Clique, .. }));
    }

    #[test]
    fn generator_edge_cases() {
        assert_eq!(random_switch_cograph(1, 3, 0.5).unwrap(), Graph::empty(1));
        assert!(random_switch_cograph(0, 3, 0.5).is_err());
        assert!(random_switch_cograph(4, 3, 1.5).is_err());
    }

    /// Every outside vertex is complete to one part and empty to the other,
    /// and the children's parts follow the node kind.
    pub(crate) fn check_invariants(g: &Graph, t: &BinaryImdt) {
        let n = g.n();
        for x in 0..t.nodes.len() {
            let (p1, p2) = t.parts(x);
            let info = t.nodes[x];
            assert_eq!((p1.len(), p2.len()), (info.size1, info.size2));
            if x != t.root() {
                let leaves = p1.union(&p2);
                for o in (0..n).filter(|&o| !leaves.contains(o)) {
                    let to1: Vec<bool> = p1.iter().map(|v| g.adjacent(o, v)).collect();
                    let to2: Vec<bool> = p2.iter().map(|v| g.adjacent(o, v)).collect();
                    let c1 = to1.iter().all(|&b| b) && to2.iter().all(|&b| !b);
                    let c2 = to1.iter().all(|&b| !b) && to2.iter().all(|&b| b);
                    assert!(c1 || c2, "outside {o} splits node {x}");
                }
            }
            if let BinNode::Internal { a, b, kind, .. } = info.node {
                let (a1, a2) = (t.leaves(a).intersection(&p1), t.leaves(a).intersection(&p2));
                let (b1, b2) = (t.leaves(b).intersection(&p1), t.leaves(b).intersection(&p2));
                let all = |p: &VertexSet, q: &VertexSet, on: bool| p.iter().all(|u| q.iter().all(|v| g.adjacent(u, v) == on));
                let cl = kind == NodeKind::Clique;
                assert!(all(&a1, &b1, cl) && all(&a2, &b2, cl) && all(&a1, &b2, !cl) && all(&a2, &b1, !cl));
                let BinNode::Internal { flip_a, flip_b, .. } = info.node else { unreachable!() };
                for (c, flip, c1, c2) in [(a, flip_a, &a1, &a2), (b, flip_b, &b1, &b2)] {
                    let (q1, q2) = t.parts(c);
                    if flip {
                        assert!(&q2 == c1 && &q1 == c2);
                    } else {
                        assert!(&q1 == c1 && &q2 == c2);
                    }
                }
            }
        }
    }

    #[test]
    fn p4_invariants() {
        let g = Graph::path(4);
        let t = binary_imdt(&g).unwrap();
        check_invariants(&g, &t);
    }

    proptest! {
        #[test]
        fn generated_are_switch_cographs(seed in any::<u64>(), n in 1usize..=50, p in 0.0f64..1.0) {
            let g = random_switch_cograph(n, seed, p).unwrap();
            prop_assert!(is_switch_cograph(&g));
            let t = binary_imdt(&g).unwrap();
            check_invariants(&g, &t);
        }

        #[test]
        fn twin_only_gives_cographs(seed in any::<u64>(), n in 1usize..=50) {
            prop_assert!(is_cograph(&random_switch_cograph(n, seed, 0.0).unwrap()));
        }

        #[test]
        fn routes_agree(seed in any::<u64>(), n in 1usize..=9) {
            let g = random_graph(n, 0.5, seed);
            let tree = is_switch_cograph(&g);
            prop_assert_eq!(tree, forbidden_subgraph_witness(&g).is_none());
            prop_assert_eq!(tree, is_switch_cograph_via_seidel(&g));
            prop_assert_eq!(tree, is_switch_cograph(&g.complement()));
            if let Some(w) = find_forbidden_witness(&g) {
                prop_assert!(w.verify(&g));
            }
        }

        #[test]
        fn parts_induce_cographs(seed in any::<u64>(), n in 1usize..=30) {
            let g = random_switch_cograph(n, seed, 0.5).unwrap();
            let t = binary_imdt(&g).unwrap();
            for x in 0..t.nodes.len() {
                let (p1, p2) = t.parts(x);
                for p in [p1, p2] {
                    if !p.is_empty() {
                        prop_assert!(is_cograph(&g.induced(&p).unwrap().0));
                    }
                }
            }
        }
    }
}
