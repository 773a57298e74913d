use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structure::{Color, ColorInvolution, Graph, TwoStructure};

/// Interning table for the colors produced by [`switch_colors`].
///
/// Original colors keep their ids. Every other triple is canonicalized to the
/// smallest member of its orbit under the group generated by the three
/// pairwise involution flips and the swap of the first two components, and
/// each orbit gets a fresh id in first-use order.
#[derive(Clone, Debug)]
pub struct ExtendedColorTable {
    inv: ColorInvolution,
    fresh: HashMap<(Color, Color, Color), Color>,
    order: Vec<(Color, Color, Color)>,
}

impl ExtendedColorTable {
    pub fn new(inv: ColorInvolution) -> Self {
        ExtendedColorTable { inv, fresh: HashMap::new(), order: Vec::new() }
    }

    pub fn involution(&self) -> &ColorInvolution {
        &self.inv
    }

    pub fn base_colors(&self) -> usize {
        self.inv.num_colors()
    }

    pub fn num_colors(&self) -> usize {
        self.base_colors() + self.order.len()
    }

    /// Canonical triples of the fresh colors, indexed by `id - base_colors()`.
    pub fn fresh_orbits(&self) -> &[(Color, Color, Color)] {
        &self.order
    }

    fn canonical(&self, a: Color, b: Color, e: Color) -> (Color, Color, Color) {
        let i = |c| self.inv.apply(c);
        let klein = [(a, b, e), (i(a), i(b), e), (a, i(b), i(e)), (i(a), b, i(e))];
        klein.into_iter().flat_map(|(x, y, z)| [(x, y, z), (y, x, z)]).min().unwrap()
    }

    fn intern(&mut self, a: Color, b: Color, e: Color) -> Result<Color> {
        let key = self.canonical(a, b, e);
        if let Some(&id) = self.fresh.get(&key) {
            return Ok(id);
        }
        let id = self.num_colors();
        if id > Color::MAX as usize {
            return Err(Error::ColorOverflow);
        }
        let id = id as Color;
        self.fresh.insert(key, id);
        self.order.push(key);
        Ok(id)
    }
}

/// The ternary switch operator on original colors.
pub fn switch_colors(a: Color, b: Color, e: Color, tbl: &mut ExtendedColorTable) -> Result<Color> {
    let k = tbl.base_colors();
    for c in [a, b, e] {
        if c as usize >= k {
            return Err(Error::ColorOutOfRange { color: c as usize, num_colors: k });
        }
    }
    let inv = &tbl.inv;
    if e == a {
        Ok(b)
    } else if e == inv.apply(a) {
        Ok(inv.apply(b))
    } else if e == b {
        Ok(a)
    } else if e == inv.apply(b) {
        Ok(inv.apply(a))
    } else {
        tbl.intern(a, b, e)
    }
}

#[derive(Clone, Debug)]
pub struct PivotSwitchResult {
    pub structure: TwoStructure,
    pub table: ExtendedColorTable,
    pub pivot: usize,
    /// `vertex_map[i]` is the original id of vertex `i` of `structure`.
    pub vertex_map: Vec<usize>,
}

/// Switches every pair `u, v != s` through `s` and deletes `s`.
pub fn switch_at_pivot(ts: &TwoStructure, inv: &ColorInvolution, s: usize) -> Result<PivotSwitchResult> {
    let n = ts.n();
    if n < 2 {
        return Err(Error::NothingToSwitch(n));
    }
    ts.check_vertex(s)?;
    inv.check_for(ts)?;
    let vertex_map: Vec<usize> = (0..n).filter(|&v| v != s).collect();
    let m = n - 1;
    let mut table = ExtendedColorTable::new(inv.clone());
    let mut raw = vec![0 as Color; m * m];
    for i in 0..m {
        let u = vertex_map[i];
        for j in i + 1..m {
            let v = vertex_map[j];
            let c = switch_colors(ts.color(s, u), ts.color(s, v), ts.color(u, v), &mut table)?;
            raw[i * m + j] = c;
            raw[j * m + i] = c;
        }
    }
    let structure = TwoStructure::from_fn(m, table.num_colors(), |i, j| raw[i * m + j])?;
    Ok(PivotSwitchResult { structure, table, pivot: s, vertex_map })
}

/// Toggles every pair split by the neighborhood of `v`, then deletes `v`.
pub fn seidel_switch(g: &Graph, v: usize) -> Result<Graph> {
    let n = g.n();
    if n < 2 {
        return Err(Error::NothingToSwitch(n));
    }
    g.as_two_structure().check_vertex(v)?;
    let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let mut h = Graph::empty(n - 1);
    for i in 0..keep.len() {
        for j in i + 1..keep.len() {
            let (x, y) = (keep[i], keep[j]);
            let toggle = g.adjacent(v, x) != g.adjacent(v, y);
            h.set_adjacent(i, j, g.adjacent(x, y) != toggle);
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_graph, random_two_structure};
    use proptest::prelude::*;

    fn four() -> ColorInvolution {
        ColorInvolution::adjacent_pairs(4).unwrap()
    }

    #[test]
    fn two_color_cases() {
        let mut t = ExtendedColorTable::new(ColorInvolution::graph());
        assert_eq!(switch_colors(0, 1, 0, &mut t).unwrap(), 1);
        assert_eq!(switch_colors(0, 1, 1, &mut t).unwrap(), 0);
        assert_eq!(t.num_colors(), 2);
    }

    #[test]
    fn shared_fresh_id() {
        let mut t = ExtendedColorTable::new(four());
        let x = switch_colors(0, 0, 2, &mut t).unwrap();
        let y = switch_colors(0, 1, 3, &mut t).unwrap();
        assert_eq!(x, y);
        assert_eq!(x, 4);
    }

    #[test]
    fn out_of_range_color() {
        let mut t = ExtendedColorTable::new(ColorInvolution::graph());
        assert!(matches!(switch_colors(0, 2, 0, &mut t), Err(Error::ColorOutOfRange { .. })));
    }

    #[test]
    fn p4_switch_examples() {
        let p4 = Graph::path(4);
        let h = seidel_switch(&p4, 0).unwrap();
        // vertices b,c,d become 0,1,2; edges bd and cd
        assert_eq!(h.edges(), vec![(0, 2), (1, 2)]);
        let r = switch_at_pivot(p4.as_two_structure(), &ColorInvolution::graph(), 0).unwrap();
        assert_eq!(&r.structure, h.as_two_structure());
    }

    #[test]
    fn small_cases() {
        let k2 = Graph::complete(2);
        let r = switch_at_pivot(k2.as_two_structure(), &ColorInvolution::graph(), 1).unwrap();
        assert_eq!(r.structure.n(), 1);
        assert_eq!(r.vertex_map, vec![0]);
        assert!(matches!(
            switch_at_pivot(Graph::empty(1).as_two_structure(), &ColorInvolution::graph(), 0),
            Err(Error::NothingToSwitch(1))
        ));
        assert_eq!(seidel_switch(&Graph::empty(5), 2).unwrap(), Graph::empty(4));
    }

    #[test]
    fn fresh_ids_are_deterministic() {
        let ts = random_two_structure(8, 4, 7);
        let a = switch_at_pivot(&ts, &four(), 3).unwrap();
        let b = switch_at_pivot(&ts, &four(), 3).unwrap();
        assert_eq!(a.structure, b.structure);
        assert_eq!(a.table.fresh_orbits(), b.table.fresh_orbits());
    }

    #[test]
    fn seidel_agrees_with_pivot_switch() {
        for seed in 0..1000u64 {
            let n = 2 + (seed % 11) as usize;
            let g = random_graph(n, 0.5, seed);
            let v = (seed as usize * 7) % n;
            let r = switch_at_pivot(g.as_two_structure(), &ColorInvolution::graph(), v).unwrap();
            assert_eq!(r.structure.num_colors(), 2);
            assert_eq!(&r.structure, seidel_switch(&g, v).unwrap().as_two_structure());
        }
    }

    proptest! {
        #[test]
        fn orbit_well_defined(a in 0u16..6, b in 0u16..6, e in 0u16..6) {
            let inv = ColorInvolution::adjacent_pairs(6).unwrap();
            let i = |c| inv.apply(c);
            let mut t = ExtendedColorTable::new(inv.clone());
            let base = switch_colors(a, b, e, &mut t).unwrap();
            prop_assert_eq!(switch_colors(i(a), i(b), e, &mut t).unwrap(), base);
            prop_assert_eq!(switch_colors(a, i(b), i(e), &mut t).unwrap(), base);
            prop_assert_eq!(switch_colors(i(a), b, i(e), &mut t).unwrap(), base);
            prop_assert_eq!(switch_colors(b, a, e, &mut t).unwrap(), base);
        }

        #[test]
        fn pivot_switch_is_symmetric(seed in any::<u64>(), n in 2usize..10, s in 0usize..10) {
            let ts = random_two_structure(n, 4, seed);
            let r = switch_at_pivot(&ts, &four(), s % n).unwrap();
            prop_assert!(r.structure.is_symmetric());
            prop_assert_eq!(r.structure.n(), n - 1);
        }
    }
}
