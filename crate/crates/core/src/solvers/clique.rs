use crate::error::Result;
use crate::structure::Graph;
use crate::switch_cograph::{binary_imdt, BinNode, NodeKind};

use super::aligned;

/// Clique number of a switch cograph.
pub fn max_clique(g: &Graph) -> Result<usize> {
    let t = binary_imdt(g)?;
    // (whole, part 1, part 2)
    let mut w: Vec<(usize, usize, usize)> = Vec::with_capacity(t.nodes.len());
    for nd in &t.nodes {
        let val = match nd.node {
            BinNode::Leaf(_) => (1, 1, 0),
            BinNode::Internal { a, b, kind, flip_a, flip_b } => {
                let (wa, wb) = (w[a].0, w[b].0);
                let (a1, a2) = aligned((w[a].1, w[a].2), flip_a);
                let (b1, b2) = aligned((w[b].1, w[b].2), flip_b);
                match kind {
                    NodeKind::Clique => {
                        let (n1, n2) = (a1 + b1, a2 + b2);
                        (n1.max(n2).max(wa).max(wb), n1, n2)
                    }
                    NodeKind::Bipartite => {
                        let whole = (a1 + b2).max(a2 + b1).max(wa).max(wb);
                        (whole, a1.max(b1), a2.max(b2))
                    }
                }
            }
        };
        w.push(val);
    }
    Ok(w[t.root()].0)
}

/// Independence number, through the complement.
pub fn max_independent_set(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    max_clique(&g.complement())
}

/// Equal to the clique number on this perfect class.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    max_clique(g)
}

/// Equal to the independence number on this perfect class.
pub fn clique_cover_number(g: &Graph) -> Result<usize> {
    max_independent_set(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::oracles::{brute_max_clique, brute_mis, OracleCaps};
    use crate::switch_cograph::random_switch_cograph;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(max_clique(&Graph::complete(5)).unwrap(), 5);
        assert_eq!(max_clique(&Graph::path(4)).unwrap(), 2);
        assert_eq!(max_independent_set(&Graph::empty(6)).unwrap(), 6);
        assert_eq!(max_independent_set(&Graph::complete(5)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(clique_cover_number(&Graph::complete(4)).unwrap(), 1);
        assert_eq!(clique_cover_number(&Graph::empty(5)).unwrap(), 5);
        assert_eq!(max_clique(&Graph::empty(1)).unwrap(), 1);
        assert!(matches!(max_clique(&Graph::cycle(5)), Err(Error::NotASwitchCograph(_))));
    }

    proptest! {
        #[test]
        fn matches_oracle(seed in any::<u64>(), n in 1usize..=14, p in 0.0f64..1.0) {
            let g = random_switch_cograph(n, seed, p).unwrap();
            let caps = OracleCaps::default();
            prop_assert_eq!(max_clique(&g).unwrap(), brute_max_clique(&g, &caps).unwrap().0);
            prop_assert_eq!(max_independent_set(&g).unwrap(), brute_mis(&g, &caps).unwrap().0);
        }
    }
}
