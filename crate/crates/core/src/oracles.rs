//! Exhaustive ground truth. Nothing here reuses the decomposition code.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::structure::{Color, ColorInvolution, Graph, TwoStructure};
use crate::vertex_set::VertexSet;

/// Largest instance each oracle accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub family: usize,
    pub clique: usize,
    pub mis: usize,
    pub vertex_cover: usize,
    pub max_cut: usize,
    pub chromatic: usize,
    pub clique_cover: usize,
    pub separator: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            family: 16,
            clique: 16,
            mis: 16,
            vertex_cover: 16,
            max_cut: 18,
            chromatic: 10,
            clique_cover: 10,
            separator: 12,
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 30 {
        Err(Error::OracleCap { n, cap: cap.min(30) })
    } else {
        Ok(())
    }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn outside(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 0).collect()
}

fn family_by<F: Fn(&[usize], &[usize]) -> bool>(n: usize, cap: usize, test: F) -> Result<Vec<VertexSet>> {
    check_cap(n, cap)?;
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if test(&members(mask, n), &outside(mask, n)) {
            out.push(VertexSet::from_mask(n, mask as u64));
        }
    }
    out.sort();
    Ok(out)
}

/// Nonempty modules by definition.
pub fn brute_modules(ts: &TwoStructure, cap: usize) -> Result<Vec<VertexSet>> {
    family_by(ts.n(), cap, |m, out| {
        m.iter().all(|&a| m.iter().all(|&b| out.iter().all(|&x| ts.color(a, x) == ts.color(b, x))))
    })
}

/// Nonempty sets whose members all split the outside into the same color classes.
pub fn brute_umodules(ts: &TwoStructure, cap: usize) -> Result<Vec<VertexSet>> {
    family_by(ts.n(), cap, |m, out| {
        m.iter().all(|&u| {
            m.iter().all(|&w| {
                out.iter().all(|&x| {
                    out.iter().all(|&y| (ts.color(u, x) == ts.color(u, y)) == (ts.color(w, x) == ts.color(w, y)))
                })
            })
        })
    })
}

/// Nonempty involution modules, checked on every pair of members.
pub fn brute_involution_modules(ts: &TwoStructure, inv: &ColorInvolution, cap: usize) -> Result<Vec<VertexSet>> {
    inv.check_for(ts)?;
    family_by(ts.n(), cap, |m, out| {
        m.iter().enumerate().all(|(i, &u)| {
            m[i + 1..].iter().all(|&v| {
                let same = out.iter().all(|&x| ts.color(u, x) == ts.color(v, x));
                let flip = out.iter().all(|&x| ts.color(u, x) == inv.apply(ts.color(v, x)));
                same || flip
            })
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetOp::Union => "union",
            SetOp::Intersection => "intersection",
            SetOp::Difference => "difference",
            SetOp::SymmetricDifference => "symmetric-difference",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub op: SetOp,
    pub a: VertexSet,
    pub b: VertexSet,
    pub result: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: Vec<VertexSet>,
    pub violations: Vec<ClosureViolation>,
}

/// Overlapping with a union short of the ground set.
pub fn crossing(a: &VertexSet, b: &VertexSet, n: usize) -> bool {
    a.crosses(b) && a.union(b).len() < n
}

/// Checks the four set operations on every crossing pair.
pub fn closure_check(family: &[VertexSet], n: usize) -> FamilyReport {
    let set: HashSet<&VertexSet> = family.iter().collect();
    let mut violations = Vec::new();
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if !crossing(a, b, n) {
                continue;
            }
            let results = [
                (SetOp::Union, a.union(b), a, b),
                (SetOp::Intersection, a.intersection(b), a, b),
                (SetOp::Difference, a.difference(b), a, b),
                (SetOp::Difference, b.difference(a), b, a),
                (SetOp::SymmetricDifference, a.symmetric_difference(b), a, b),
            ];
            for (op, r, x, y) in results {
                if !set.contains(&r) {
                    violations.push(ClosureViolation { op, a: x.clone(), b: y.clone(), result: r });
                }
            }
        }
    }
    FamilyReport { family: family.to_vec(), violations }
}

/// Random 3-colored structures on 5 vertices until the umodule family is not
/// closed under crossing intersection. Returns the instance, the violation
/// and the number of samples drawn.
pub fn search_umodule_intersection_violation(
    samples: usize,
    seed: u64,
) -> Option<(TwoStructure, ClosureViolation, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=samples {
        let ts = TwoStructure::from_fn(5, 3, |_, _| rng.gen_range(0..3) as Color).expect("valid");
        let fam = brute_umodules(&ts, 5).expect("small");
        let rep = closure_check(&fam, 5);
        if let Some(v) = rep.violations.into_iter().find(|v| v.op == SetOp::Intersection) {
            return Some((ts, v, k));
        }
    }
    None
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|u| (0..g.n()).filter(|&v| g.adjacent(u, v)).fold(0u32, |m, v| m | 1 << v)).collect()
}

fn to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_mask(n, mask as u64)
}

fn best_mask(n: usize, better: impl Fn(u32, u32) -> bool, ok: impl Fn(u32) -> bool) -> Option<u32> {
    let mut best: Option<u32> = None;
    for mask in 0u32..(1u32 << n) {
        if ok(mask) && best.is_none_or(|b| better(mask, b)) {
            best = Some(mask);
        }
    }
    best
}

fn is_clique_mask(adj: &[u32], mask: u32) -> bool {
    members(mask, adj.len()).iter().all(|&v| mask & !(1 << v) & !adj[v] == 0)
}

fn is_independent_mask(adj: &[u32], mask: u32) -> bool {
    members(mask, adj.len()).iter().all(|&v| mask & adj[v] == 0)
}

pub fn brute_max_clique(g: &Graph, caps: &OracleCaps) -> Result<(usize, VertexSet)> {
    let n = g.n();
    check_cap(n, caps.clique)?;
    let adj = adjacency_masks(g);
    let m = best_mask(n, |a, b| a.count_ones() > b.count_ones(), |m| is_clique_mask(&adj, m)).unwrap();
    Ok((m.count_ones() as usize, to_set(n, m)))
}

pub fn brute_mis(g: &Graph, caps: &OracleCaps) -> Result<(usize, VertexSet)> {
    let n = g.n();
    check_cap(n, caps.mis)?;
    let adj = adjacency_masks(g);
    let m = best_mask(n, |a, b| a.count_ones() > b.count_ones(), |m| is_independent_mask(&adj, m)).unwrap();
    Ok((m.count_ones() as usize, to_set(n, m)))
}

pub fn brute_vertex_cover(g: &Graph, caps: &OracleCaps) -> Result<(usize, VertexSet)> {
    let n = g.n();
    check_cap(n, caps.vertex_cover)?;
    let edges = g.edges();
    let covers = |m: u32| edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1);
    let m = best_mask(n, |a, b| a.count_ones() < b.count_ones(), covers).unwrap();
    Ok((m.count_ones() as usize, to_set(n, m)))
}

/// Maximum number of edges across a bipartition; the last vertex stays outside the side.
pub fn brute_max_cut(g: &Graph, caps: &OracleCaps) -> Result<(usize, VertexSet)> {
    let n = g.n();
    check_cap(n, caps.max_cut)?;
    if n == 0 {
        return Ok((0, VertexSet::new(0)));
    }
    let edges = g.edges();
    let value = |m: u32| edges.iter().filter(|&&(u, v)| (m >> u & 1) != (m >> v & 1)).count();
    let mut best = (0usize, 0u32);
    for mask in 0u32..(1u32 << (n - 1)) {
        let c = value(mask);
        if c > best.0 {
            best = (c, mask);
        }
    }
    Ok((best.0, to_set(n, best.1)))
}

/// Smallest number of independent sets covering the vertices.
pub fn brute_chromatic(g: &Graph, caps: &OracleCaps) -> Result<usize> {
    let n = g.n();
    check_cap(n, caps.chromatic)?;
    let adj = adjacency_masks(g);
    Ok(min_partition(n, |class: u32, v: usize| class & adj[v] == 0))
}

/// Smallest number of cliques covering the vertices.
pub fn brute_clique_cover(g: &Graph, caps: &OracleCaps) -> Result<usize> {
    let n = g.n();
    check_cap(n, caps.clique_cover)?;
    let adj = adjacency_masks(g);
    Ok(min_partition(n, |class: u32, v: usize| class & !adj[v] == 0))
}

/// Branch and bound over assignments of vertices to classes; a vertex may
/// join a class when `fits(class, v)`. Vertex 0 always opens class 0.
fn min_partition(n: usize, fits: impl Fn(u32, usize) -> bool) -> usize {
    if n == 0 {
        return 0;
    }
    fn go(v: usize, n: usize, classes: &mut Vec<u32>, best: &mut usize, fits: &dyn Fn(u32, usize) -> bool) {
        if classes.len() >= *best {
            return;
        }
        if v == n {
            *best = classes.len();
            return;
        }
        for i in 0..classes.len() {
            if fits(classes[i], v) {
                classes[i] |= 1 << v;
                go(v + 1, n, classes, best, fits);
                classes[i] &= !(1 << v);
            }
        }
        classes.push(1 << v);
        go(v + 1, n, classes, best, fits);
        classes.pop();
    }
    let mut best = n + 1;
    go(0, n, &mut Vec::new(), &mut best, &fits);
    best
}

/// Two bags covering all vertices with every edge inside a bag, minimizing
/// the larger bag. Enumerates all `3^n` assignments.
pub fn brute_vertex_separator(g: &Graph, caps: &OracleCaps) -> Result<(usize, VertexSet, VertexSet)> {
    let n = g.n();
    check_cap(n, caps.separator)?;
    let edges = g.edges();
    // 0: first bag only, 1: second bag only, 2: both
    let mut assign = vec![0u8; n];
    let mut best: Option<(usize, Vec<u8>)> = None;
    loop {
        let ok = edges.iter().all(|&(u, v)| !matches!((assign[u], assign[v]), (0, 1) | (1, 0)));
        if ok {
            let x = assign.iter().filter(|&&a| a != 1).count();
            let y = assign.iter().filter(|&&a| a != 0).count();
            let val = x.max(y);
            if best.as_ref().is_none_or(|(b, _)| val < *b) {
                best = Some((val, assign.clone()));
            }
        }
        let mut i = 0;
        while i < n && assign[i] == 2 {
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        assign[i] += 1;
    }
    let (val, a) = best.expect("all-in-both is always valid");
    let x1 = VertexSet::from_iter(n, (0..n).filter(|&v| a[v] != 1));
    let x2 = VertexSet::from_iter(n, (0..n).filter(|&v| a[v] != 0));
    Ok((val, x1, x2))
}

/// True when both bags cover every vertex and every edge lies in one bag.
pub fn is_valid_separator(g: &Graph, x1: &VertexSet, x2: &VertexSet) -> bool {
    x1.union(x2).len() == g.n()
        && g.edges().iter().all(|&(u, v)| (x1.contains(u) && x1.contains(v)) || (x2.contains(u) && x2.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_two_structure;

    fn caps() -> OracleCaps {
        OracleCaps::default()
    }

    #[test]
    fn family_chain() {
        for seed in 0..40 {
            let ts = random_two_structure(6, 4, seed);
            let inv = ColorInvolution::adjacent_pairs(4).unwrap();
            let m: HashSet<_> = brute_modules(&ts, 16).unwrap().into_iter().collect();
            let i: HashSet<_> = brute_involution_modules(&ts, &inv, 16).unwrap().into_iter().collect();
            let u: HashSet<_> = brute_umodules(&ts, 16).unwrap().into_iter().collect();
            assert!(m.is_subset(&i));
            assert!(i.is_subset(&u));
        }
    }

    #[test]
    fn k3_all_subsets_are_modules() {
        assert_eq!(brute_modules(Graph::complete(3).as_two_structure(), 16).unwrap().len(), 7);
    }

    #[test]
    fn full_power_set_is_closed() {
        let all: Vec<VertexSet> = (1u64..32).map(|m| VertexSet::from_mask(5, m)).collect();
        assert!(closure_check(&all, 5).violations.is_empty());
    }

    #[test]
    fn graph_oracles() {
        let c = caps();
        assert_eq!(brute_max_cut(&Graph::complete(4), &c).unwrap().0, 4);
        assert_eq!(brute_vertex_separator(&Graph::complete(5), &c).unwrap().0, 5);
        assert_eq!(brute_chromatic(&Graph::cycle(4), &c).unwrap(), 2);
        assert_eq!(brute_chromatic(&Graph::cycle(5), &c).unwrap(), 3);
        assert_eq!(brute_clique_cover(&Graph::cycle(5), &c).unwrap(), 3);
        assert_eq!(brute_max_clique(&Graph::path(4), &c).unwrap().0, 2);
        assert_eq!(brute_mis(&Graph::empty(6), &c).unwrap().0, 6);
        assert_eq!(brute_vertex_cover(&Graph::path(4), &c).unwrap().0, 2);
        let (v, x1, x2) = brute_vertex_separator(&Graph::path(4), &c).unwrap();
        assert_eq!(v, 3);
        assert!(is_valid_separator(&Graph::path(4), &x1, &x2));
        assert_eq!(brute_vertex_separator(&Graph::empty(5), &c).unwrap().0, 3);
    }

    #[test]
    fn caps_are_enforced() {
        let c = caps();
        assert!(matches!(brute_chromatic(&Graph::empty(11), &c), Err(Error::OracleCap { n: 11, cap: 10 })));
        assert!(matches!(brute_vertex_separator(&Graph::empty(13), &c), Err(Error::OracleCap { .. })));
        assert!(brute_modules(&random_two_structure(17, 2, 0), 16).is_err());
    }

    #[test]
    fn umodule_counterexample_exists() {
        let (ts, v, _) = search_umodule_intersection_violation(100_000, 1).expect("a violation");
        let fam = brute_umodules(&ts, 5).unwrap();
        assert!(fam.contains(&v.a) && fam.contains(&v.b) && !fam.contains(&v.result));
        assert!(crossing(&v.a, &v.b, 5));
    }
}
