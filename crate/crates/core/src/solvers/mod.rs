//! Exact dynamic programs over the binary involution-module tree.

mod clique;
mod cover;
mod cut;
mod cwexpr;
mod separator;

pub use clique::{chromatic_number, clique_cover_number, max_clique, max_independent_set};
pub use cover::min_vertex_cover;
pub use cut::{cut_tables, max_cut, CutTable};
pub use cwexpr::{clique_width_expression, eval_cw_expression, CwExpr, CwOp};
pub use separator::{vertex_separator, vertex_separator_cograph, Separator};

use crate::switch_cograph::{BinNode, BinaryImdt};

/// Child values indexed by the parent's parts.
#[inline]
pub(crate) fn aligned<T: Copy>(v: (T, T), flip: bool) -> (T, T) {
    if flip {
        (v.1, v.0)
    } else {
        v
    }
}

/// Part sizes of both children, aligned to the parent: `((a1, a2), (b1, b2))`.
pub(crate) fn child_sizes(t: &BinaryImdt, x: usize) -> ((usize, usize), (usize, usize)) {
    let BinNode::Internal { a, b, flip_a, flip_b, .. } = t.nodes[x].node else {
        panic!("leaf has no children");
    };
    let (na, nb) = (t.nodes[a], t.nodes[b]);
    (aligned((na.size1, na.size2), flip_a), aligned((nb.size1, nb.size2), flip_b))
}

/// Parent part `p` of a child with the given flip, in the child's numbering.
#[inline]
pub(crate) fn child_part(p: usize, flip: bool) -> usize {
    if flip {
        3 - p
    } else {
        p
    }
}
