//! Dynkin trees with `{3, 4, 6}` labels, their canonical forms, the
//! correspondence with generalized Cartan matrices, and the collapse of a
//! twin building to its rank-2 residue types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::building::BuildingError;
use crate::cartan::{Gcm, GcmError};

pub mod foundation;

pub use foundation::{collapse_foundation, FoundationDescriptor, FoundationEdge};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassificationError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("a[{i}][{j}] a[{j}][{i}] = {product} is not in {{0, 1, 2, 3}}")]
    NotTwoSpherical { i: usize, j: usize, product: i64 },
    #[error("bad edge {0}")]
    BadEdge(String),
    #[error("model is thin (panel of size {0})")]
    NotThick(usize),
    #[error(transparent)]
    Gcm(#[from] GcmError),
    #[error(transparent)]
    Building(#[from] BuildingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: u32,
    /// `[from, to]`, pointing from the long to the short root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrow: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinTree {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl DynkinTree {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<DynkinTree, ClassificationError> {
        let t = DynkinTree { vertices, edges };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ClassificationError> {
        let n = self.vertices;
        if n < 2 {
            return Err(ClassificationError::NotATree(format!("{n} vertices")));
        }
        if self.edges.len() != n - 1 {
            return Err(ClassificationError::NotATree(format!(
                "{} edges on {n} vertices",
                self.edges.len()
            )));
        }
        for e in &self.edges {
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(ClassificationError::BadEdge(format!("{}-{}", e.u, e.v)));
            }
            match (e.label, e.arrow) {
                (3, None) => {}
                (4 | 6, Some([a, b])) if (a == e.u && b == e.v) || (a == e.v && b == e.u) => {}
                _ => {
                    return Err(ClassificationError::BadEdge(format!(
                        "{}-{} label {} arrow {:?}",
                        e.u, e.v, e.label, e.arrow
                    )))
                }
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return Err(ClassificationError::NotATree(format!("cycle through {}-{}", e.u, e.v)));
            }
            parent[a] = b;
        }
        Ok(())
    }

    fn neighbours(&self) -> Vec<Vec<(usize, u8)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.u].push((e.v, decoration(e, e.u)));
            adj[e.v].push((e.u, decoration(e, e.v)));
        }
        adj
    }

    fn centers(&self) -> Vec<usize> {
        let adj = self.neighbours();
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut leaves: Vec<usize> = (0..self.vertices).filter(|&v| degree[v] <= 1).collect();
        let mut left = self.vertices;
        while left > 2 {
            left -= leaves.len();
            let mut next = Vec::new();
            for &l in &leaves {
                for &(w, _) in &adj[l] {
                    if degree[w] == 0 {
                        continue;
                    }
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
                degree[l] = 0;
            }
            leaves = next;
        }
        leaves.sort_unstable();
        leaves
    }

    /// Apply the vertex permutation `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> DynkinTree {
        DynkinTree {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: perm[e.u],
                    v: perm[e.v],
                    label: e.label,
                    arrow: e.arrow.map(|[a, b]| [perm[a], perm[b]]),
                })
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dynkin {\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", v + 1);
        }
        for e in &self.edges {
            match e.arrow {
                None => {
                    let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.label);
                }
                Some([a, b]) => {
                    let _ = writeln!(out, "  {a} -- {b} [label=\"{}\", dir=forward];", e.label);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Edge decoration seen when walking from `from` across `e`.
fn decoration(e: &Edge, from: usize) -> u8 {
    match (e.label, e.arrow) {
        (4, Some([a, _])) => {
            if a == from {
                b'b'
            } else {
                b'c'
            }
        }
        (6, Some([a, _])) => {
            if a == from {
                b'd'
            } else {
                b'e'
            }
        }
        _ => b'a',
    }
}

fn encode(adj: &[Vec<(usize, u8)>], v: usize, parent: Option<usize>) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = adj[v]
        .iter()
        .filter(|(w, _)| Some(*w) != parent)
        .map(|&(w, d)| {
            let mut s = vec![d];
            s.extend(encode(adj, w, Some(v)));
            s
        })
        .collect();
    children.sort();
    let mut out = vec![b'('];
    for c in children {
        out.extend(c);
    }
    out.push(b')');
    out
}

/// Canonical byte string: the smallest center-rooted decorated encoding.
pub fn canonical_code(t: &DynkinTree) -> Result<Vec<u8>, ClassificationError> {
    t.validate()?;
    let adj = t.neighbours();
    Ok(t.centers()
        .into_iter()
        .map(|c| encode(&adj, c, None))
        .min()
        .expect("a tree has a center"))
}

pub fn canonical_hex(t: &DynkinTree) -> Result<String, ClassificationError> {
    Ok(canonical_code(t)?.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn isomorphic(a: &DynkinTree, b: &DynkinTree) -> Result<bool, ClassificationError> {
    Ok(a.vertices == b.vertices && canonical_code(a)? == canonical_code(b)?)
}

/// The five decorated edges between `u` and `v`.
pub fn decorated_edges(u: usize, v: usize) -> [Edge; 5] {
    let e = |label, arrow| Edge { u, v, label, arrow };
    [
        e(3, None),
        e(4, Some([u, v])),
        e(4, Some([v, u])),
        e(6, Some([u, v])),
        e(6, Some([v, u])),
    ]
}

/// One representative per isomorphism class on `n` vertices, sorted by
/// canonical code.
pub fn enumerate_trees(n: usize) -> Result<Vec<DynkinTree>, ClassificationError> {
    if n < 2 {
        return Err(ClassificationError::TooSmall(n));
    }
    let mut classes: BTreeMap<Vec<u8>, DynkinTree> = BTreeMap::new();
    for e in decorated_edges(0, 1) {
        let t = DynkinTree {
            vertices: 2,
            edges: vec![e],
        };
        classes.entry(canonical_code(&t)?).or_insert(t);
    }
    for m in 2..n {
        let mut next = BTreeMap::new();
        for t in classes.values() {
            for v in 0..m {
                for e in decorated_edges(v, m) {
                    let mut edges = t.edges.clone();
                    edges.push(e);
                    let grown = DynkinTree { vertices: m + 1, edges };
                    next.entry(canonical_code(&grown)?).or_insert(grown);
                }
            }
        }
        classes = next;
    }
    Ok(classes.into_values().collect())
}

/// Label 3 gives `(-1, -1)`; an arrow `i -> j` on label `4` or `6` gives
/// `(a_ij, a_ji) = (-1, -2)` or `(-1, -3)`.
pub fn gcm_of_dynkin(t: &DynkinTree) -> Result<Gcm, ClassificationError> {
    t.validate()?;
    let n = t.vertices;
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for e in &t.edges {
        let (from, to) = match e.arrow {
            Some([a, b]) => (a, b),
            None => (e.u, e.v),
        };
        let m = match e.label {
            3 => 1,
            4 => 2,
            _ => 3,
        };
        rows[from][to] = -1;
        rows[to][from] = -m;
    }
    Ok(Gcm::new(rows)?)
}

pub fn dynkin_of_gcm(a: &Gcm) -> Result<DynkinTree, ClassificationError> {
    let n = a.rank();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let product = a.entry(i, j) * a.entry(j, i);
            let label = match product {
                0 => continue,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => return Err(ClassificationError::NotTwoSpherical { i, j, product }),
            };
            let arrow = match (a.entry(i, j), a.entry(j, i)) {
                (-1, -1) => None,
                (-1, _) => Some([i, j]),
                _ => Some([j, i]),
            };
            edges.push(Edge {
                u: i,
                v: j,
                label,
                arrow,
            });
        }
    }
    DynkinTree::new(n, edges)
}

/// Every decorated labelled tree on `n` vertices (Prüfer sequences times
/// edge decorations). Exponential; meant for cross-checks.
pub fn all_decorated_trees(n: usize) -> Vec<DynkinTree> {
    let mut out = Vec::new();
    let count = n.pow(n.saturating_sub(2) as u32);
    for code in 0..count {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let shape = prufer_edges(n, &seq);
        for deco in 0..5usize.pow(shape.len() as u32) {
            let mut d = deco;
            let edges = shape
                .iter()
                .map(|&(u, v)| {
                    let e = decorated_edges(u, v)[d % 5].clone();
                    d /= 5;
                    e
                })
                .collect();
            out.push(DynkinTree { vertices: n, edges });
        }
    }
    out
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = *leaves.iter().next().expect("a leaf");
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(u: usize, v: usize, label: u32, arrow: Option<[usize; 2]>) -> Edge {
        Edge { u, v, label, arrow }
    }

    #[test]
    fn codes_on_small_trees() {
        let a = DynkinTree::new(2, vec![edge(0, 1, 3, None)]).unwrap();
        let b = DynkinTree::new(2, vec![edge(1, 0, 3, None)]).unwrap();
        assert!(isomorphic(&a, &b).unwrap());
        let c = DynkinTree::new(2, vec![edge(0, 1, 4, Some([0, 1]))]).unwrap();
        let d = DynkinTree::new(2, vec![edge(0, 1, 4, Some([1, 0]))]).unwrap();
        assert!(isomorphic(&c, &d).unwrap());
        assert!(!isomorphic(&a, &c).unwrap());
        let p = DynkinTree::new(3, vec![edge(0, 1, 3, None), edge(1, 2, 6, Some([1, 2]))]).unwrap();
        let q = DynkinTree::new(3, vec![edge(2, 1, 3, None), edge(1, 0, 6, Some([1, 0]))]).unwrap();
        assert!(isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_trees(2).unwrap().len(), 3);
        assert_eq!(enumerate_trees(3).unwrap().len(), 15);
        assert!(matches!(enumerate_trees(1), Err(ClassificationError::TooSmall(1))));
    }

    #[test]
    fn gcm_examples() {
        let t = DynkinTree::new(2, vec![edge(0, 1, 3, None)]).unwrap();
        assert_eq!(gcm_of_dynkin(&t).unwrap(), Gcm::named("A2").unwrap());
        let a = Gcm::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let t = dynkin_of_gcm(&a).unwrap();
        assert_eq!(t.edges, vec![edge(0, 1, 4, Some([1, 0]))]);
        assert_eq!(gcm_of_dynkin(&t).unwrap(), a);
        assert!(matches!(
            dynkin_of_gcm(&Gcm::named("A1~").unwrap()),
            Err(ClassificationError::NotTwoSpherical { .. })
        ));
    }

    #[test]
    fn long_paths_have_central_codes() {
        for n in [5, 6, 7] {
            let path: Vec<Edge> = (0..n - 1).map(|i| edge(i, i + 1, 3, None)).collect();
            let t = DynkinTree::new(n, path).unwrap();
            let reversed: Vec<usize> = (0..n).rev().collect();
            assert_eq!(t.centers().len(), 2 - n % 2);
            assert_eq!(
                canonical_code(&t).unwrap(),
                canonical_code(&t.relabel(&reversed)).unwrap()
            );
        }
    }

    #[test]
    fn rejects_non_trees() {
        let cyc = DynkinTree {
            vertices: 3,
            edges: vec![edge(0, 1, 3, None), edge(1, 0, 3, None)],
        };
        assert!(matches!(canonical_code(&cyc), Err(ClassificationError::NotATree(_))));
    }
}
