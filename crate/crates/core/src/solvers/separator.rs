use crate::error::Result;
use crate::modular::{binary_cotree, CotreeNode};
use crate::structure::Graph;
use crate::switch_cograph::{binary_imdt, BinNode, NodeKind};
use crate::vertex_set::VertexSet;

/// Two bags covering every vertex, with every edge inside one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub value: usize,
    pub x1: VertexSet,
    pub x2: VertexSet,
}

const NONE: u64 = u64::MAX;

/// Bag counts of a complete pair `(P, Q)`: no vertex of one side may sit in
/// the first bag only while a vertex of the other sits in the second only.
#[inline]
fn pair_ok(xp: usize, yp: usize, p: usize, xq: usize, yq: usize, q: usize) -> bool {
    !(yp < p && xq < q) && !(xp < p && yq < q)
}

#[inline]
fn pack(a: usize, b: usize) -> u64 {
    (a as u64) << 32 | b as u64
}

#[inline]
fn unpack(c: u64) -> (usize, usize) {
    ((c >> 32) as usize, (c & 0xffff_ffff) as usize)
}

/// Separator of a cograph, from its binary cotree.
pub fn vertex_separator_cograph(g: &Graph) -> Result<Separator> {
    let t = binary_cotree(g)?;
    let k = t.nodes.len();
    let mut size = vec![0usize; k];
    // choice[x][i * (size + 1) + j]: children entries realizing (|X1|, |X2|) = (i, j)
    let mut choice: Vec<Vec<u64>> = Vec::with_capacity(k);
    for x in 0..k {
        let (tab, s) = match t.nodes[x] {
            CotreeNode::Leaf(_) => {
                let mut tab = vec![NONE; 4];
                for (i, j) in [(1, 0), (0, 1), (1, 1)] {
                    tab[i * 2 + j] = 0;
                }
                (tab, 1)
            }
            CotreeNode::Series(a, b) | CotreeNode::Parallel(a, b) => {
                let series = matches!(t.nodes[x], CotreeNode::Series(..));
                let (sa, sb) = (size[a], size[b]);
                let s = sa + sb;
                let w = s + 1;
                let mut tab = vec![NONE; w * w];
                for (ea, ca) in choice[a].iter().enumerate() {
                    if *ca == NONE {
                        continue;
                    }
                    let (ia, ja) = (ea / (sa + 1), ea % (sa + 1));
                    for (eb, cb) in choice[b].iter().enumerate() {
                        if *cb == NONE {
                            continue;
                        }
                        let (ib, jb) = (eb / (sb + 1), eb % (sb + 1));
                        if series && !pair_ok(ia, ja, sa, ib, jb, sb) {
                            continue;
                        }
                        let e = (ia + ib) * w + ja + jb;
                        if tab[e] == NONE {
                            tab[e] = pack(ea, eb);
                        }
                    }
                }
                (tab, s)
            }
        };
        size[x] = s;
        choice.push(tab);
    }
    let root = k - 1;
    let w = size[root] + 1;
    let mut best = (usize::MAX, 0);
    for (e, c) in choice[root].iter().enumerate() {
        let v = (e / w).max(e % w);
        if *c != NONE && v < best.0 {
            best = (v, e);
        }
    }
    let n = g.n();
    let (mut x1, mut x2) = (VertexSet::new(n), VertexSet::new(n));
    let mut stack = vec![(root, best.1)];
    while let Some((x, e)) = stack.pop() {
        match t.nodes[x] {
            CotreeNode::Leaf(v) => {
                if e / 2 == 1 {
                    x1.insert(v);
                }
                if e % 2 == 1 {
                    x2.insert(v);
                }
            }
            CotreeNode::Series(a, b) | CotreeNode::Parallel(a, b) => {
                let (ea, eb) = unpack(choice[x][e]);
                stack.push((a, ea));
                stack.push((b, eb));
            }
        }
    }
    Ok(Separator { value: best.0, x1, x2 })
}

/// Entry `(x1, x2, y1, y2)`: first-bag and second-bag counts in `N1` and `N2`.
struct Dims {
    s1: usize,
    s2: usize,
}

impl Dims {
    fn len(&self) -> usize {
        (self.s1 + 1) * (self.s1 + 1) * (self.s2 + 1) * (self.s2 + 1)
    }

    fn index(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> usize {
        ((x1 * (self.s2 + 1) + x2) * (self.s1 + 1) + y1) * (self.s2 + 1) + y2
    }

    fn decode(&self, mut e: usize) -> (usize, usize, usize, usize) {
        let y2 = e % (self.s2 + 1);
        e /= self.s2 + 1;
        let y1 = e % (self.s1 + 1);
        e /= self.s1 + 1;
        let x2 = e % (self.s2 + 1);
        (e / (self.s2 + 1), x2, y1, y2)
    }
}

/// Separator of a switch cograph.
pub fn vertex_separator(g: &Graph) -> Result<Separator> {
    let t = binary_imdt(g)?;
    let k = t.nodes.len();
    let dims: Vec<Dims> = t.nodes.iter().map(|nd| Dims { s1: nd.size1, s2: nd.size2 }).collect();
    let mut choice: Vec<Vec<u64>> = Vec::with_capacity(k);
    for x in 0..k {
        let d = &dims[x];
        let mut tab = vec![NONE; d.len()];
        match t.nodes[x].node {
            BinNode::Leaf(_) => {
                for (a, b) in [(1, 0), (0, 1), (1, 1)] {
                    tab[d.index(a, 0, b, 0)] = 0;
                }
            }
            BinNode::Internal { a, b, kind, flip_a, flip_b } => {
                let ((pa1, pa2), (pb1, pb2)) = super::child_sizes(&t, x);
                let feasible = |c: usize, flip: bool| -> Vec<(usize, [usize; 4])> {
                    choice[c]
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != NONE)
                        .map(|(e, _)| {
                            let (x1, x2, y1, y2) = dims[c].decode(e);
                            (e, if flip { [x2, x1, y2, y1] } else { [x1, x2, y1, y2] })
                        })
                        .collect()
                };
                let fa = feasible(a, flip_a);
                let fb = feasible(b, flip_b);
                for &(ea, [xa1, xa2, ya1, ya2]) in &fa {
                    for &(eb, [xb1, xb2, yb1, yb2]) in &fb {
                        let ok = match kind {
                            NodeKind::Clique => {
                                pair_ok(xa1, ya1, pa1, xb1, yb1, pb1) && pair_ok(xa2, ya2, pa2, xb2, yb2, pb2)
                            }
                            NodeKind::Bipartite => {
                                pair_ok(xa1, ya1, pa1, xb2, yb2, pb2) && pair_ok(xa2, ya2, pa2, xb1, yb1, pb1)
                            }
                        };
                        if !ok {
                            continue;
                        }
                        let e = d.index(xa1 + xb1, xa2 + xb2, ya1 + yb1, ya2 + yb2);
                        if tab[e] == NONE {
                            tab[e] = pack(ea, eb);
                        }
                    }
                }
            }
        }
        choice.push(tab);
    }
    let root = t.root();
    let mut best = (usize::MAX, 0);
    for (e, c) in choice[root].iter().enumerate() {
        if *c == NONE {
            continue;
        }
        let (x1, x2, y1, y2) = dims[root].decode(e);
        let v = (x1 + x2).max(y1 + y2);
        if v < best.0 {
            best = (v, e);
        }
    }
    let n = g.n();
    let (mut x1, mut x2) = (VertexSet::new(n), VertexSet::new(n));
    let mut stack = vec![(root, best.1)];
    while let Some((x, e)) = stack.pop() {
        match t.nodes[x].node {
            BinNode::Leaf(v) => {
                let (a, _, b, _) = dims[x].decode(e);
                if a == 1 {
                    x1.insert(v);
                }
                if b == 1 {
                    x2.insert(v);
                }
            }
            BinNode::Internal { a, b, .. } => {
                let (ea, eb) = unpack(choice[x][e]);
                stack.push((a, ea));
                stack.push((b, eb));
            }
        }
    }
    Ok(Separator { value: best.0, x1, x2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::gen::random_cograph;
    use crate::oracles::{brute_vertex_separator, is_valid_separator, OracleCaps};
    use crate::switch_cograph::random_switch_cograph;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        for n in 1..6 {
            assert_eq!(vertex_separator(&Graph::complete(n)).unwrap().value, n);
            assert_eq!(vertex_separator_cograph(&Graph::complete(n)).unwrap().value, n);
            assert_eq!(vertex_separator_cograph(&Graph::empty(n)).unwrap().value, n.div_ceil(2));
        }
        let p4 = Graph::path(4);
        let s = vertex_separator(&p4).unwrap();
        assert_eq!(s.value, 3);
        assert!(is_valid_separator(&p4, &s.x1, &s.x2));
        assert_eq!(vertex_separator_cograph(&p4).unwrap_err(), Error::NotACograph);
        // two disjoint edges fit in bags of size 2
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_separator_cograph(&g).unwrap().value, 2);
        assert_eq!(vertex_separator(&g).unwrap().value, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn switch_cograph_matches_oracle(seed in any::<u64>(), n in 1usize..=9, p in 0.0f64..1.0) {
            let g = random_switch_cograph(n, seed, p).unwrap();
            let s = vertex_separator(&g).unwrap();
            prop_assert!(is_valid_separator(&g, &s.x1, &s.x2));
            prop_assert_eq!(s.value, s.x1.len().max(s.x2.len()));
            prop_assert_eq!(s.value, brute_vertex_separator(&g, &OracleCaps::default()).unwrap().0);
        }

        #[test]
        fn cograph_matches_oracle(seed in any::<u64>(), n in 1usize..=9) {
            let g = random_cograph(n, seed);
            let s = vertex_separator_cograph(&g).unwrap();
            prop_assert!(is_valid_separator(&g, &s.x1, &s.x2));
            prop_assert_eq!(s.value, s.x1.len().max(s.x2.len()));
            prop_assert_eq!(s.value, brute_vertex_separator(&g, &OracleCaps::default()).unwrap().0);
            prop_assert_eq!(s.value, vertex_separator(&g).unwrap().value);
        }
    }
}
