use crate::error::Result;
use crate::structure::Graph;
use crate::switch_cograph::{binary_imdt, BinNode, BinaryImdt, NodeKind};
use crate::vertex_set::VertexSet;

use super::{child_part, child_sizes};

/// `value(i, j)`: most edges of the node's subgraph crossing a side `X` with
/// `|X ∩ N1| = i` and `|X ∩ N2| = j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTable {
    pub size1: usize,
    pub size2: usize,
    values: Vec<i64>,
}

impl CutTable {
    fn new(size1: usize, size2: usize) -> Self {
        CutTable { size1, size2, values: vec![i64::MIN; (size1 + 1) * (size2 + 1)] }
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> i64 {
        self.values[i * (self.size2 + 1) + j]
    }

    /// Entry with the child's parts swapped when `flip`.
    #[inline]
    fn aligned(&self, i: usize, j: usize, flip: bool) -> i64 {
        if flip {
            self.value(j, i)
        } else {
            self.value(i, j)
        }
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        let w = self.size2 + 1;
        self.values[i * w + j] = v;
    }
}

/// Cross edges cut when `A` puts `(l, q)` and `B` puts `(k, r)` into the side.
#[allow(clippy::too_many_arguments)]
#[inline]
fn cross(kind: NodeKind, s: ((usize, usize), (usize, usize)), l: usize, q: usize, k: usize, r: usize) -> i64 {
    let ((a1, a2), (b1, b2)) = s;
    let (l, q, k, r) = (l as i64, q as i64, k as i64, r as i64);
    let (a1, a2, b1, b2) = (a1 as i64, a2 as i64, b1 as i64, b2 as i64);
    match kind {
        NodeKind::Clique => l * (b1 - k) + k * (a1 - l) + q * (b2 - r) + r * (a2 - q),
        NodeKind::Bipartite => q * (b1 - k) + k * (a2 - q) + l * (b2 - r) + r * (a1 - l),
    }
}

/// Best split of entry `(i, j)` of node `x` among the children, as `(l, q, k, r)`.
fn combine_entry(t: &BinaryImdt, tables: &[CutTable], x: usize, i: usize, j: usize) -> (i64, (usize, usize, usize, usize)) {
    let BinNode::Internal { a, b, kind, flip_a, flip_b } = t.nodes[x].node else {
        unreachable!()
    };
    let s = child_sizes(t, x);
    let ((a1, a2), (b1, b2)) = s;
    let mut best = (i64::MIN, (0, 0, 0, 0));
    for l in i.saturating_sub(b1)..=i.min(a1) {
        let k = i - l;
        for q in j.saturating_sub(b2)..=j.min(a2) {
            let r = j - q;
            let v = tables[a].aligned(l, q, flip_a) + tables[b].aligned(k, r, flip_b) + cross(kind, s, l, q, k, r);
            if v > best.0 {
                best = (v, (l, q, k, r));
            }
        }
    }
    best
}

/// Tables for every node of the binary tree, in its post-order.
pub fn cut_tables(t: &BinaryImdt) -> Vec<CutTable> {
    let mut tables: Vec<CutTable> = Vec::with_capacity(t.nodes.len());
    for x in 0..t.nodes.len() {
        let info = t.nodes[x];
        let mut tab = CutTable::new(info.size1, info.size2);
        match info.node {
            BinNode::Leaf(_) => {
                tab.set(0, 0, 0);
                tab.set(1, 0, 0);
            }
            BinNode::Internal { .. } => {
                for i in 0..=info.size1 {
                    for j in 0..=info.size2 {
                        let (v, _) = combine_entry(t, &tables, x, i, j);
                        tab.set(i, j, v);
                    }
                }
            }
        }
        tables.push(tab);
    }
    tables
}

/// Maximum cut of a switch cograph and one side achieving it.
pub fn max_cut(g: &Graph) -> Result<(usize, VertexSet)> {
    let t = binary_imdt(g)?;
    let tables = cut_tables(&t);
    let root = &tables[t.root()];
    let mut best = (i64::MIN, 0, 0);
    for i in 0..=root.size1 {
        for j in 0..=root.size2 {
            if root.value(i, j) > best.0 {
                best = (root.value(i, j), i, j);
            }
        }
    }
    let mut side = VertexSet::new(g.n());
    let mut stack = vec![(t.root(), best.1, best.2)];
    while let Some((x, i, j)) = stack.pop() {
        match t.nodes[x].node {
            BinNode::Leaf(v) => {
                if i == 1 {
                    side.insert(v);
                }
            }
            BinNode::Internal { a, b, flip_a, flip_b, .. } => {
                let (_, (l, q, k, r)) = combine_entry(&t, &tables, x, i, j);
                let own = |p1: usize, p2: usize, f: bool| if child_part(1, f) == 1 { (p1, p2) } else { (p2, p1) };
                let (ai, aj) = own(l, q, flip_a);
                let (bi, bj) = own(k, r, flip_b);
                stack.push((a, ai, aj));
                stack.push((b, bi, bj));
            }
        }
    }
    Ok((best.0 as usize, side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_max_cut, OracleCaps};
    use crate::switch_cograph::random_switch_cograph;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let (v, s) = max_cut(&Graph::complete(4)).unwrap();
        assert_eq!(v, 4);
        assert_eq!(Graph::complete(4).cut_value(&s), 4);
        let p4 = Graph::path(4);
        let (v, s) = max_cut(&p4).unwrap();
        assert_eq!(v, 3);
        assert_eq!(p4.cut_value(&s), 3);
        assert_eq!(max_cut(&Graph::empty(1)).unwrap().0, 0);
    }

    proptest! {
        #[test]
        fn matches_oracle(seed in any::<u64>(), n in 1usize..=14, p in 0.0f64..1.0) {
            let g = random_switch_cograph(n, seed, p).unwrap();
            let (v, s) = max_cut(&g).unwrap();
            prop_assert_eq!(g.cut_value(&s), v);
            prop_assert_eq!(v, brute_max_cut(&g, &OracleCaps::default()).unwrap().0);
        }

        #[test]
        fn table_boundaries(seed in any::<u64>(), n in 1usize..=20) {
            let g = random_switch_cograph(n, seed, 0.5).unwrap();
            let t = binary_imdt(&g).unwrap();
            for tab in cut_tables(&t) {
                prop_assert_eq!(tab.value(0, 0), 0);
                prop_assert_eq!(tab.value(tab.size1, tab.size2), 0);
                for i in 0..=tab.size1 {
                    for j in 0..=tab.size2 {
                        prop_assert!(tab.value(i, j) >= 0);
                        prop_assert_eq!(tab.value(i, j), tab.value(tab.size1 - i, tab.size2 - j));
                    }
                }
            }
        }
    }
}
