use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structure::Graph;
use crate::switch_cograph::{binary_imdt, BinNode, NodeKind};

/// One operation; operands refer to earlier entries of the arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CwOp {
    Create { vertex: usize, label: u8 },
    Union(usize, usize),
    Relabel { from: u8, to: u8, expr: usize },
    Join { a: u8, b: u8, expr: usize },
}

/// Clique-width expression as an arena; the root is the last operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CwExpr {
    pub ops: Vec<CwOp>,
}

pub const MAX_LABEL: u8 = 4;

impl CwExpr {
    pub fn root(&self) -> Option<usize> {
        self.ops.len().checked_sub(1)
    }

    pub fn labels_used(&self) -> BTreeSet<u8> {
        let mut s = BTreeSet::new();
        for op in &self.ops {
            match *op {
                CwOp::Create { label, .. } => {
                    s.insert(label);
                }
                CwOp::Relabel { from, to, .. } => {
                    s.insert(from);
                    s.insert(to);
                }
                CwOp::Join { a, b, .. } => {
                    s.insert(a);
                    s.insert(b);
                }
                CwOp::Union(..) => {}
            }
        }
        s
    }

    fn push(&mut self, op: CwOp) -> usize {
        self.ops.push(op);
        self.ops.len() - 1
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidExpression(m));
        if self.ops.is_empty() {
            return bad("empty expression".into());
        }
        let mut uses = vec![0usize; self.ops.len()];
        for (i, op) in self.ops.iter().enumerate() {
            let kids: &[usize] = match op {
                CwOp::Create { .. } => &[],
                CwOp::Union(a, b) => &[*a, *b],
                CwOp::Relabel { expr, .. } | CwOp::Join { expr, .. } => std::slice::from_ref(expr),
            };
            for &c in kids {
                if c >= i {
                    return bad(format!("operation {i} refers forward to {c}"));
                }
                uses[c] += 1;
            }
            let labels: &[u8] = match op {
                CwOp::Create { label, .. } => std::slice::from_ref(label),
                CwOp::Relabel { from, to, .. } => &[*from, *to],
                CwOp::Join { a, b, .. } => &[*a, *b],
                CwOp::Union(..) => &[],
            };
            if let Some(l) = labels.iter().find(|&&l| l == 0 || l > MAX_LABEL) {
                return bad(format!("label {l} outside 1..={MAX_LABEL}"));
            }
            if let CwOp::Join { a, b, .. } = op {
                if a == b {
                    return bad(format!("join of label {a} with itself"));
                }
            }
        }
        let last = self.ops.len() - 1;
        if let Some(i) = (0..self.ops.len()).find(|&i| uses[i] != (i != last) as usize) {
            return bad(format!("operation {i} is not used exactly once"));
        }
        Ok(())
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(root) = self.root() else { return Ok(()) };
        enum Item {
            Op(usize),
            Text(&'static str),
        }
        let mut stack = vec![Item::Op(root)];
        while let Some(it) = stack.pop() {
            match it {
                Item::Text(s) => f.write_str(s)?,
                Item::Op(i) => match self.ops[i] {
                    CwOp::Create { vertex, label } => write!(f, "(v {vertex} {label})")?,
                    CwOp::Union(a, b) => {
                        f.write_str("(union ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Op(b));
                        stack.push(Item::Text(" "));
                        stack.push(Item::Op(a));
                    }
                    CwOp::Relabel { from, to, expr } => {
                        write!(f, "(relabel {from} {to} ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Op(expr));
                    }
                    CwOp::Join { a, b, expr } => {
                        write!(f, "(join {a} {b} ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Op(expr));
                    }
                },
            }
        }
        Ok(())
    }
}

impl FromStr for CwExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidExpression(m.to_string());
        let spaced = s.replace('(', " ( ").replace(')', " ) ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        // open frames: (head, numeric args, operand ids)
        let mut frames: Vec<(String, Vec<usize>, Vec<usize>)> = Vec::new();
        let mut expr = CwExpr { ops: Vec::new() };
        let mut done: Option<usize> = None;
        let mut i = 0;
        while i < toks.len() {
            match toks[i] {
                "(" => {
                    if done.is_some() && frames.is_empty() {
                        return Err(bad("trailing input"));
                    }
                    let head = toks.get(i + 1).ok_or_else(|| bad("missing operator"))?;
                    frames.push((head.to_string(), Vec::new(), Vec::new()));
                    i += 2;
                    continue;
                }
                ")" => {
                    let (head, nums, subs) = frames.pop().ok_or_else(|| bad("unbalanced ')'"))?;
                    let label = |x: usize| u8::try_from(x).map_err(|_| bad("label too large"));
                    let op = match (head.as_str(), nums.as_slice(), subs.as_slice()) {
                        ("v", [v, l], []) => CwOp::Create { vertex: *v, label: label(*l)? },
                        ("union", [], [a, b]) => CwOp::Union(*a, *b),
                        ("relabel", [p, q], [e]) => CwOp::Relabel { from: label(*p)?, to: label(*q)?, expr: *e },
                        ("join", [p, q], [e]) => CwOp::Join { a: label(*p)?, b: label(*q)?, expr: *e },
                        _ => return Err(bad(&format!("malformed '{head}' term"))),
                    };
                    let id = expr.push(op);
                    match frames.last_mut() {
                        Some(f) => f.2.push(id),
                        None => done = Some(id),
                    }
                }
                tok => {
                    let f = frames.last_mut().ok_or_else(|| bad("token outside a term"))?;
                    if !f.2.is_empty() {
                        return Err(bad("number after operand"));
                    }
                    f.1.push(tok.parse().map_err(|_| bad(&format!("bad number '{tok}'")))?);
                }
            }
            i += 1;
        }
        if !frames.is_empty() || done.is_none() {
            return Err(bad("incomplete expression"));
        }
        expr.check_shape()?;
        Ok(expr)
    }
}

/// Underlying graph of the labeled construction. Vertex ids must be `0..n`.
pub fn eval_cw_expression(e: &CwExpr) -> Result<Graph> {
    e.check_shape()?;
    let mut n = 0;
    let mut seen = BTreeSet::new();
    for op in &e.ops {
        if let CwOp::Create { vertex, .. } = *op {
            if !seen.insert(vertex) {
                return Err(Error::InvalidExpression(format!("vertex {vertex} created twice")));
            }
            n += 1;
        }
    }
    if seen.iter().next_back().is_some_and(|&m| m + 1 != n) {
        return Err(Error::InvalidExpression("vertex ids are not 0..n".into()));
    }
    let mut g = Graph::empty(n);
    let k = MAX_LABEL as usize + 1;
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::with_capacity(e.ops.len());
    for op in &e.ops {
        let c = match *op {
            CwOp::Create { vertex, label } => {
                let mut c = vec![Vec::new(); k];
                c[label as usize].push(vertex);
                c
            }
            CwOp::Union(a, b) => {
                let mut c = std::mem::take(&mut classes[a]);
                let mut d = std::mem::take(&mut classes[b]);
                for (x, y) in c.iter_mut().zip(d.iter_mut()) {
                    x.append(y);
                }
                c
            }
            CwOp::Relabel { from, to, expr } => {
                let mut c = std::mem::take(&mut classes[expr]);
                let mut moved = std::mem::take(&mut c[from as usize]);
                c[to as usize].append(&mut moved);
                c
            }
            CwOp::Join { a, b, expr } => {
                let c = std::mem::take(&mut classes[expr]);
                for &u in &c[a as usize] {
                    for &v in &c[b as usize] {
                        g.add_edge(u, v);
                    }
                }
                c
            }
        };
        classes.push(c);
    }
    Ok(g)
}

/// Expression with at most four labels for a switch cograph.
///
/// At every node the part `N1` carries labels 1 and 2 and the part `N2`
/// carries labels 3 and 4.
pub fn clique_width_expression(g: &Graph) -> Result<CwExpr> {
    let t = binary_imdt(g)?;
    let mut e = CwExpr { ops: Vec::with_capacity(4 * t.nodes.len()) };
    // (arena id, labels present) per tree node; leaves are built by their parent
    let mut built: Vec<Option<(usize, [bool; 5])>> = vec![None; t.nodes.len()];
    if let BinNode::Leaf(v) = t.nodes[t.root()].node {
        e.push(CwOp::Create { vertex: v, label: 1 });
        return Ok(e);
    }
    for x in 0..t.nodes.len() {
        let BinNode::Internal { a, b, kind, flip_a, flip_b } = t.nodes[x].node else {
            continue;
        };
        // label of a leaf child, which is its own part 1
        let leaf_label = |is_a: bool, flip: bool| -> u8 {
            match (is_a, flip) {
                (true, false) => 1,
                (true, true) => 3,
                (false, false) => 2,
                (false, true) => 4,
            }
        };
        let mut place = |e: &mut CwExpr, c: usize, is_a: bool, flip: bool| -> (usize, [bool; 5]) {
            if let BinNode::Leaf(v) = t.nodes[c].node {
                let t1 = leaf_label(is_a, flip);
                let mut present = [false; 5];
                present[t1 as usize] = true;
                return (e.push(CwOp::Create { vertex: v, label: t1 }), present);
            }
            let (mut id, mut present) = built[c].take().expect("child built");
            // child part 1 holds labels 1, 2 and part 2 holds 3, 4
            let seq: &[(u8, u8)] = match (is_a, flip) {
                (true, false) => &[(2, 1), (4, 3)],
                (true, true) => &[(1, 2), (3, 1), (4, 1), (2, 3)],
                (false, false) => &[(1, 2), (3, 4)],
                (false, true) => &[(2, 1), (4, 3), (3, 2), (1, 4)],
            };
            for &(from, to) in seq {
                if present[from as usize] {
                    id = e.push(CwOp::Relabel { from, to, expr: id });
                    present[from as usize] = false;
                    present[to as usize] = true;
                }
            }
            (id, present)
        };
        let (ia, pa) = place(&mut e, a, true, flip_a);
        let (ib, pb) = place(&mut e, b, false, flip_b);
        let mut id = e.push(CwOp::Union(ia, ib));
        let mut present = [false; 5];
        for l in 1..5 {
            present[l] = pa[l] || pb[l];
        }
        let joins: [(u8, u8); 2] = match kind {
            NodeKind::Clique => [(1, 2), (3, 4)],
            NodeKind::Bipartite => [(1, 4), (3, 2)],
        };
        for (p, q) in joins {
            if present[p as usize] && present[q as usize] {
                id = e.push(CwOp::Join { a: p, b: q, expr: id });
            }
        }
        built[x] = Some((id, present));
    }
    Ok(e)
}
