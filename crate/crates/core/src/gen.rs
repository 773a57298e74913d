//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::structure::{Color, Graph, TwoStructure};
use crate::switch_cograph::random_switch_cograph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Uniform colors on every pair.
pub fn random_two_structure(n: usize, num_colors: usize, seed: u64) -> TwoStructure {
    let mut r = rng(seed);
    TwoStructure::from_fn(n, num_colors, |_, _| r.gen_range(0..num_colors) as Color).expect("valid colors")
}

pub fn random_cograph(n: usize, seed: u64) -> Graph {
    random_switch_cograph(n.max(1), seed, 0.0).expect("n >= 1")
}

/// A structure with many nontrivial involution modules: vertices are split
/// into parts over a random quotient, and each part carries a random set of
/// members whose colors toward other parts are involuted (`c ^ 1`).
pub fn random_nested_structure(n: usize, num_colors: usize, seed: u64) -> TwoStructure {
    let mut r = rng(seed);
    let mut ts = TwoStructure::new(n, num_colors).expect("valid");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut stack = vec![(order, 0usize)];
    while let Some((vs, depth)) = stack.pop() {
        if vs.len() < 2 {
            continue;
        }
        if depth >= 3 || vs.len() <= 2 || r.gen_bool(0.25) {
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let c = r.gen_range(0..num_colors) as Color;
                    ts.set_color(vs[i], vs[j], c).expect("valid");
                }
            }
            continue;
        }
        let k = r.gen_range(2..=vs.len().min(4));
        let mut cuts: Vec<usize> = (1..vs.len()).collect();
        cuts.shuffle(&mut r);
        let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
        cuts.sort_unstable();
        let mut parts = Vec::with_capacity(k);
        let mut start = 0;
        for &c in cuts.iter().chain(std::iter::once(&vs.len())) {
            parts.push(vs[start..c].to_vec());
            start = c;
        }
        let twisted: Vec<Vec<bool>> = parts
            .iter()
            .map(|p| {
                let on = r.gen_bool(0.5);
                p.iter().map(|_| on && r.gen_bool(0.5)).collect()
            })
            .collect();
        for i in 0..k {
            for j in i + 1..k {
                let base = r.gen_range(0..num_colors) as Color;
                for (x, &tx) in parts[i].iter().zip(&twisted[i]) {
                    for (y, &ty) in parts[j].iter().zip(&twisted[j]) {
                        let c = if tx != ty { base ^ 1 } else { base };
                        ts.set_color(*x, *y, c).expect("valid");
                    }
                }
            }
        }
        for p in parts {
            stack.push((p, depth + 1));
        }
    }
    ts
}
