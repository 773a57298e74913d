use crate::error::Result;
use crate::structure::Graph;
use crate::switch_cograph::{binary_imdt, BinNode, NodeKind};
use crate::vertex_set::VertexSet;

use super::{aligned, child_part, child_sizes};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    A,
    B,
}

/// One ingredient of a cover, with the target given in the parent's part
/// numbering (0 = the whole child).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pick {
    All(Side, usize),
    Cover(Side, usize),
}

use Pick::{All, Cover};
use Side::{A, B};

// Every complete pair between the children must be covered by one of its
// sides entirely.
const CLIQUE_WHOLE: [&[Pick]; 4] = [
    &[All(A, 0), Cover(B, 0)],
    &[All(B, 0), Cover(A, 0)],
    &[All(A, 1), All(B, 2), Cover(A, 2), Cover(B, 1)],
    &[All(B, 1), All(A, 2), Cover(A, 1), Cover(B, 2)],
];
const BIPARTITE_WHOLE: [&[Pick]; 4] = [
    &[All(A, 0), Cover(B, 0)],
    &[All(B, 0), Cover(A, 0)],
    &[All(A, 1), All(B, 1), Cover(A, 2), Cover(B, 2)],
    &[All(A, 2), All(B, 2), Cover(A, 1), Cover(B, 1)],
];
const CLIQUE_PART: [[&[Pick]; 2]; 2] = [
    [&[All(A, 1), Cover(B, 1)], &[All(B, 1), Cover(A, 1)]],
    [&[All(A, 2), Cover(B, 2)], &[All(B, 2), Cover(A, 2)]],
];
const BIPARTITE_PART: [[&[Pick]; 1]; 2] = [[&[Cover(A, 1), Cover(B, 1)]], [&[Cover(A, 2), Cover(B, 2)]]];

fn options(kind: NodeKind, target: usize) -> &'static [&'static [Pick]] {
    match (kind, target) {
        (NodeKind::Clique, 0) => &CLIQUE_WHOLE,
        (NodeKind::Bipartite, 0) => &BIPARTITE_WHOLE,
        (NodeKind::Clique, p) => &CLIQUE_PART[p - 1],
        (NodeKind::Bipartite, p) => &BIPARTITE_PART[p - 1],
    }
}

/// Minimum vertex cover of a switch cograph.
pub fn min_vertex_cover(g: &Graph) -> Result<VertexSet> {
    let t = binary_imdt(g)?;
    let k = t.nodes.len();
    // per node and target (whole, part 1, part 2): optimum size and option index
    let mut size = vec![[0usize; 3]; k];
    let mut choice = vec![[0u8; 3]; k];
    for x in 0..k {
        let BinNode::Internal { a, b, kind, flip_a, flip_b } = t.nodes[x].node else {
            continue;
        };
        let ((sa1, sa2), (sb1, sb2)) = child_sizes(&t, x);
        let (ca1, ca2) = aligned((size[a][1], size[a][2]), flip_a);
        let (cb1, cb2) = aligned((size[b][1], size[b][2]), flip_b);
        let (wa, wb) = (size[a][0], size[b][0]);
        let cost = |p: &Pick| match *p {
            All(A, 0) => sa1 + sa2,
            All(B, 0) => sb1 + sb2,
            All(A, 1) => sa1,
            All(A, _) => sa2,
            All(B, 1) => sb1,
            All(B, _) => sb2,
            Cover(A, 0) => wa,
            Cover(B, 0) => wb,
            Cover(A, 1) => ca1,
            Cover(A, _) => ca2,
            Cover(B, 1) => cb1,
            Cover(B, _) => cb2,
        };
        for target in 0..3 {
            let mut best = (usize::MAX, 0u8);
            for (i, opt) in options(kind, target).iter().enumerate() {
                let c: usize = opt.iter().map(cost).sum();
                if c < best.0 {
                    best = (c, i as u8);
                }
            }
            size[x][target] = best.0;
            choice[x][target] = best.1;
        }
    }
    let mut out = VertexSet::new(g.n());
    // (node, target in the node's own numbering, take every vertex)
    let mut stack: Vec<(usize, usize, bool)> = vec![(t.root(), 0, false)];
    while let Some((x, target, all)) = stack.pop() {
        match t.nodes[x].node {
            BinNode::Leaf(v) => {
                if all && target != 2 {
                    out.insert(v);
                }
            }
            BinNode::Internal { a, b, kind, flip_a, flip_b } => {
                let resolve = |s: Side, p: usize| match s {
                    Side::A => (a, if p == 0 { 0 } else { child_part(p, flip_a) }),
                    Side::B => (b, if p == 0 { 0 } else { child_part(p, flip_b) }),
                };
                if all {
                    for s in [A, B] {
                        let (c, p) = resolve(s, target);
                        stack.push((c, p, true));
                    }
                    continue;
                }
                for pick in options(kind, target)[choice[x][target] as usize] {
                    let (s, p, every) = match *pick {
                        All(s, p) => (s, p, true),
                        Cover(s, p) => (s, p, false),
                    };
                    let (c, cp) = resolve(s, p);
                    stack.push((c, cp, every));
                }
            }
        }
    }
    debug_assert_eq!(out.len(), size[t.root()][0]);
    Ok(out)
}
