use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub type Color = u16;

/// Symmetric complete edge-coloring of `0..n`, stored as a dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoStructure {
    n: usize,
    num_colors: usize,
    colors: Vec<Color>,
}

impl TwoStructure {
    /// All pairs get color 0.
    pub fn new(n: usize, num_colors: usize) -> Result<Self> {
        if num_colors == 0 && n >= 2 {
            return Err(Error::ColorOutOfRange { color: 0, num_colors });
        }
        Ok(TwoStructure { n, num_colors, colors: vec![0; n * n] })
    }

    /// `f` is only called for `u < v`.
    pub fn from_fn(n: usize, num_colors: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let mut ts = Self::new(n, num_colors)?;
        for u in 0..n {
            for v in u + 1..n {
                ts.set_color(u, v, f(u, v))?;
            }
        }
        Ok(ts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color of the pair; `u == v` yields 0 and is never read by the algorithms.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    pub fn try_color(&self, u: usize, v: usize) -> Result<Color> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfPair(u));
        }
        Ok(self.color(u, v))
    }

    pub fn set_color(&mut self, u: usize, v: usize, c: Color) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfPair(u));
        }
        if c as usize >= self.num_colors {
            return Err(Error::ColorOutOfRange { color: c as usize, num_colors: self.num_colors });
        }
        self.colors[u * self.n + v] = c;
        self.colors[v * self.n + u] = c;
        Ok(())
    }

    /// Row of `u`; the diagonal entry is meaningless.
    #[inline]
    pub fn row(&self, u: usize) -> &[Color] {
        &self.colors[u * self.n..(u + 1) * self.n]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Substructure on `s`, relabeled `0..|s|` in increasing order; the map sends new ids to old ones.
    pub fn induced(&self, s: &VertexSet) -> Result<(TwoStructure, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptyInducedSet);
        }
        if s.universe() > self.n {
            if let Some(v) = s.iter().find(|&v| v >= self.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let map = s.to_vec();
        let m = map.len();
        let mut colors = vec![0; m * m];
        for (i, &u) in map.iter().enumerate() {
            let row = self.row(u);
            for (j, &v) in map.iter().enumerate() {
                if i != j {
                    colors[i * m + j] = row[v];
                }
            }
        }
        Ok((TwoStructure { n: m, num_colors: self.num_colors, colors }, map))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.color(u, v) == self.color(v, u)))
    }
}

impl fmt::Debug for TwoStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TwoStructure(n={}, colors={})", self.n, self.num_colors)?;
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    write!(f, " .")?;
                } else {
                    write!(f, " {}", self.color(u, v))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Fixed-point-free involution on the colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorInvolution {
    map: Vec<Color>,
}

impl ColorInvolution {
    pub fn new(map: Vec<Color>) -> Result<Self> {
        let k = map.len();
        for (i, &j) in map.iter().enumerate() {
            let j = j as usize;
            if j >= k {
                return Err(Error::InvalidInvolution(format!("image {j} of color {i} out of range")));
            }
            if j == i {
                return Err(Error::InvalidInvolution(format!("color {i} is a fixed point")));
            }
            if map[j] as usize != i {
                return Err(Error::InvalidInvolution(format!("I(I({i})) != {i}")));
            }
        }
        Ok(ColorInvolution { map })
    }

    /// Pairs 0<->1, 2<->3, ...
    pub fn adjacent_pairs(num_colors: usize) -> Result<Self> {
        Self::new((0..num_colors).map(|i| (i ^ 1) as Color).collect())
    }

    /// The unique involution on two colors.
    pub fn graph() -> Self {
        ColorInvolution { map: vec![1, 0] }
    }

    #[inline]
    pub fn apply(&self, c: Color) -> Color {
        self.map[c as usize]
    }

    pub fn num_colors(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.map
    }

    pub fn check_for(&self, ts: &TwoStructure) -> Result<()> {
        if self.map.len() != ts.num_colors() {
            return Err(Error::InvalidInvolution(format!(
                "involution covers {} colors, structure has {}",
                self.map.len(),
                ts.num_colors()
            )));
        }
        Ok(())
    }
}

/// Undirected simple graph: a two-colored structure where color 1 is an edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ts: TwoStructure,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { ts: TwoStructure { n, num_colors: 2, colors: vec![0; n * n] } }
    }

    pub fn complete(n: usize) -> Self {
        Self::empty(n).complement()
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.ts.set_color(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn from_two_structure(ts: TwoStructure) -> Result<Self> {
        if ts.num_colors() != 2 {
            return Err(Error::NotAGraph(ts.num_colors()));
        }
        Ok(Graph { ts })
    }

    pub fn n(&self) -> usize {
        self.ts.n
    }

    pub fn as_two_structure(&self) -> &TwoStructure {
        &self.ts
    }

    pub fn into_two_structure(self) -> TwoStructure {
        self.ts
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.ts.color(u, v) == 1
    }

    /// Panics on a self-pair or out-of-range vertex.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.ts.set_color(u, v, 1).expect("valid edge");
    }

    pub fn set_adjacent(&mut self, u: usize, v: usize, on: bool) {
        self.ts.set_color(u, v, on as Color).expect("valid pair");
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.ts.row(v);
        (0..self.n()).filter(move |&u| u != v && row[u] == 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n).map(|u| (u + 1..n).filter(|&v| self.adjacent(u, v)).count()).sum()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut colors = self.ts.colors.clone();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    colors[u * n + v] ^= 1;
                }
            }
        }
        Graph { ts: TwoStructure { n, num_colors: 2, colors } }
    }

    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        let (ts, map) = self.ts.induced(s)?;
        Ok((Graph { ts }, map))
    }

    /// Checks every edge `(u, v)` has an endpoint in `cover`.
    pub fn is_vertex_cover(&self, cover: &VertexSet) -> bool {
        self.edges().iter().all(|&(u, v)| cover.contains(u) || cover.contains(v))
    }

    pub fn cut_value(&self, side: &VertexSet) -> usize {
        self.edges().iter().filter(|&&(u, v)| side.contains(u) != side.contains(v)).count()
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs = s.to_vec();
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_two_structure;
    use proptest::prelude::*;

    #[test]
    fn induced_full_set_is_identity() {
        let g = Graph::cycle(5);
        let (h, map) = g.induced(&VertexSet::full(5)).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn induced_examples() {
        let p4 = Graph::path(4);
        let (h, _) = p4.induced(&VertexSet::from_iter(4, [0, 1])).unwrap();
        assert_eq!(h, Graph::complete(2));
        let (h, _) = Graph::cycle(5).induced(&VertexSet::from_iter(5, [0, 1, 2])).unwrap();
        assert_eq!(h, Graph::path(3));
        assert_eq!(p4.induced(&VertexSet::new(4)).unwrap_err(), Error::EmptyInducedSet);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        let c5 = Graph::cycle(5);
        let cc = c5.complement();
        // 0-2-4-1-3-0 relabels the complement back onto C5
        let perm = [0, 2, 4, 1, 3];
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(c5.adjacent(i, j), cc.adjacent(perm[i], perm[j]));
                }
            }
        }
    }

    #[test]
    fn involution_validation() {
        assert!(ColorInvolution::new(vec![0, 1]).is_err());
        assert!(ColorInvolution::new(vec![1, 2, 0]).is_err());
        assert!(ColorInvolution::new(vec![1, 0, 3, 2]).is_ok());
        assert!(ColorInvolution::adjacent_pairs(3).is_err());
    }

    #[test]
    fn rejects_bad_colors() {
        let mut ts = TwoStructure::new(3, 2).unwrap();
        assert!(matches!(ts.set_color(0, 1, 2), Err(Error::ColorOutOfRange { .. })));
        assert!(matches!(ts.set_color(0, 0, 1), Err(Error::SelfPair(0))));
        assert!(matches!(ts.set_color(0, 3, 1), Err(Error::VertexOutOfRange { .. })));
    }

    proptest! {
        #[test]
        fn constructed_structures_are_symmetric(seed in any::<u64>(), n in 1usize..12) {
            let ts = random_two_structure(n, 4, seed);
            prop_assert!(ts.is_symmetric());
        }

        #[test]
        fn complement_is_involution(seed in any::<u64>(), n in 1usize..12) {
            let g = crate::gen::random_graph(n, 0.5, seed);
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn induced_composes(seed in any::<u64>(), n in 2usize..10, smask in any::<u64>(), tmask in any::<u64>()) {
            let ts = random_two_structure(n, 3, seed);
            let s = VertexSet::from_mask(n, smask | 1);
            let (sub, smap) = ts.induced(&s).unwrap();
            // T is a subset of S, expressed in the relabeled ids of sub
            let tsub = VertexSet::from_iter(sub.n(), (0..sub.n()).filter(|i| tmask >> i & 1 == 1 || *i == 0));
            let (twice, tmap) = sub.induced(&tsub).unwrap();
            let t = VertexSet::from_iter(n, tsub.iter().map(|i| smap[i]));
            let (once, omap) = ts.induced(&t).unwrap();
            prop_assert_eq!(twice, once);
            let composed: Vec<usize> = tmap.iter().map(|&i| smap[i]).collect();
            prop_assert_eq!(composed, omap);
        }
    }
}
