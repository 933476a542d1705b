//! Positive real roots in a height window, with depths and an enumeration
//! compatible with depth and the Bruhat order on reflections.

use std::cmp::Reverse;
use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::cartan::Gcm;
use crate::coxeter::{CoxeterElement, CoxeterSystem};

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

pub fn simple_root(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

/// `beta(h_i) = sum_k beta_k a_ik`.
pub fn pairing(gcm: &Gcm, beta: &[i64], i: usize) -> i64 {
    (0..gcm.rank()).map(|k| beta[k] * gcm.entry(i, k)).sum()
}

pub fn reflect(gcm: &Gcm, i: usize, beta: &[i64]) -> Vec<i64> {
    let mut out = beta.to_vec();
    out[i] -= pairing(gcm, beta, i);
    out
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

#[derive(Debug, Clone, Serialize)]
pub struct RealRoot {
    pub coords: Vec<i64>,
    pub height: i64,
    /// `min { l(w) : w(alpha) < 0 }`.
    pub depth: usize,
    /// `w` and simple index `i` with `alpha = w(alpha_i)`; `w` is 1-based.
    pub word: Vec<usize>,
    pub simple: usize,
    /// The reflection `t_alpha = w s_i w^-1`.
    pub reflection: CoxeterElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealRootTable {
    pub window: usize,
    /// Enumeration order `beta[1], beta[2], ...`.
    pub roots: Vec<RealRoot>,
}

impl RealRootTable {
    pub fn coords(&self) -> Vec<Vec<i64>> {
        self.roots.iter().map(|r| r.coords.clone()).collect()
    }

    pub fn find(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }
}

/// Depth by breadth-first search along reflections that do not raise the
/// height.
pub fn depth(gcm: &Gcm, beta: &[i64]) -> usize {
    let mut seen = BTreeMap::from([(beta.to_vec(), 0usize)]);
    let mut queue = VecDeque::from([beta.to_vec()]);
    while let Some(v) = queue.pop_front() {
        let d = seen[&v];
        for i in 0..gcm.rank() {
            let u = reflect(gcm, i, &v);
            if !is_positive(&u) {
                return d + 1;
            }
            if height(&u) <= height(&v) && !seen.contains_key(&u) {
                seen.insert(u.clone(), d + 1);
                queue.push_back(u);
            }
        }
    }
    unreachable!("every positive real root has finite depth")
}

/// Orbit of the simple roots under simple reflections, restricted to
/// positive roots of height at most `max_height`. Sorted by depth, then
/// reflection length, then coordinates with `alpha_1` first.
pub fn positive_real_roots(gcm: &Gcm, max_height: usize) -> RealRootTable {
    let n = gcm.rank();
    let sys = CoxeterSystem::from_gcm(gcm.clone());
    let mut found: BTreeMap<Vec<i64>, (Vec<usize>, usize)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let a = simple_root(n, i);
        found.insert(a.clone(), (Vec::new(), i));
        queue.push_back(a);
    }
    while let Some(v) = queue.pop_front() {
        let (word, simple) = found[&v].clone();
        for i in 0..n {
            let u = reflect(gcm, i, &v);
            if is_positive(&u) && height(&u) <= max_height as i64 && !found.contains_key(&u) {
                let mut w = vec![i];
                w.extend(&word);
                found.insert(u.clone(), (w, simple));
                queue.push_back(u);
            }
        }
    }
    let mut roots: Vec<RealRoot> = found
        .into_iter()
        .map(|(coords, (word, simple))| {
            let w = sys.normal_form(&word).expect("valid word");
            let reflection = sys.multiply(&sys.multiply(&w, &sys.generator(simple)), &sys.inverse(&w));
            RealRoot {
                height: height(&coords),
                depth: depth(gcm, &coords),
                word: word.iter().map(|s| s + 1).collect(),
                simple,
                reflection,
                coords,
            }
        })
        .collect();
    roots.sort_by(|a, b| {
        (a.depth, a.reflection.len(), Reverse(&a.coords)).cmp(&(b.depth, b.reflection.len(), Reverse(&b.coords)))
    });
    RealRootTable {
        window: max_height,
        roots,
    }
}

/// Whether the enumeration respects depth and the Bruhat order on the
/// associated reflections; returns the first offending pair otherwise.
pub fn check_enumeration(gcm: &Gcm, table: &RealRootTable) -> Option<(usize, usize)> {
    let sys = CoxeterSystem::from_gcm(gcm.clone());
    let r = &table.roots;
    for i in 0..r.len() {
        for j in 0..i {
            if r[i].depth < r[j].depth {
                return Some((j, i));
            }
            if r[i].reflection != r[j].reflection && sys.bruhat_leq(&r[i].reflection, &r[j].reflection) {
                return Some((j, i));
            }
        }
    }
    None
}
