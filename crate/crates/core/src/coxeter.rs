//! Coxeter systems arising from generalized Cartan matrices.
//!
//! Elements are kept in ShortLex normal form with respect to the input
//! generator order. All length and descent computations go through the
//! integral reflection action on the root lattice, so they are exact for
//! every crystallographic Coxeter matrix (labels 2, 3, 4, 6, inf).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CoxeterLabel, Gcm, GcmError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error(transparent)]
    Gcm(#[from] GcmError),
    #[error("coxeter matrix entry m[{i}][{j}] is not allowed: {reason}")]
    InvalidMatrix { i: usize, j: usize, reason: String },
}

/// Symmetric Coxeter matrix restricted to labels {2, 3, 4, 6, inf}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    labels: Vec<CoxeterLabel>,
}

impl CoxeterMatrix {
    pub fn new(rank: usize, labels: Vec<CoxeterLabel>) -> Result<Self, CoxeterError> {
        if rank == 0 || labels.len() != rank * rank {
            return Err(CoxeterError::InvalidMatrix {
                i: 0,
                j: 0,
                reason: "shape".into(),
            });
        }
        for i in 0..rank {
            for j in 0..rank {
                let m = labels[i * rank + j];
                if m != labels[j * rank + i] {
                    return Err(CoxeterError::InvalidMatrix {
                        i,
                        j,
                        reason: "not symmetric".into(),
                    });
                }
                let ok = if i == j {
                    m == CoxeterLabel::Finite(1)
                } else {
                    matches!(m, CoxeterLabel::Finite(2 | 3 | 4 | 6) | CoxeterLabel::Infinite)
                };
                if !ok {
                    return Err(CoxeterError::InvalidMatrix {
                        i,
                        j,
                        reason: format!("label {m}"),
                    });
                }
            }
        }
        Ok(CoxeterMatrix { rank, labels })
    }

    pub fn from_gcm(gcm: &Gcm) -> CoxeterMatrix {
        let rank = gcm.rank();
        let mut labels = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                labels.push(gcm.coxeter_label(i, j));
            }
        }
        CoxeterMatrix { rank, labels }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self, i: usize, j: usize) -> CoxeterLabel {
        self.labels[i * self.rank + j]
    }
}

/// Which side a generator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A Weyl group element in ShortLex normal form (0-based generator indices).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoxeterElement {
    word: Vec<u8>,
}

impl CoxeterElement {
    pub fn identity() -> Self {
        CoxeterElement { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&s| s as usize).collect()
    }

    pub fn letters(&self) -> &[u8] {
        &self.word
    }

    /// 1-based generator indices, the external serialization.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|&s| s as usize + 1).collect()
    }
}

impl Ord for CoxeterElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for CoxeterElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_based())
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.to_one_based().iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Serialize a map keyed by elements with their display form (`e`, `1.2`) as keys.
pub fn serialize_keyed<V: Serialize, S: serde::Serializer>(
    map: &BTreeMap<CoxeterElement, V>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
}

impl Serialize for CoxeterElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

/// Result of [`CoxeterSystem::parabolic_info`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicInfo {
    pub finite: bool,
    pub longest: Option<CoxeterElement>,
    pub order: Option<u128>,
    /// Finite-type components recognised, e.g. `["A2", "B3"]`.
    pub components: Vec<String>,
}

/// Coxeter system of a GCM with its integral reflection representation.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    cartan: Gcm,
}

type IntMatrix = Vec<i64>;

impl CoxeterSystem {
    pub fn from_gcm(cartan: Gcm) -> Self {
        let matrix = CoxeterMatrix::from_gcm(&cartan);
        CoxeterSystem { matrix, cartan }
    }

    /// Checks that `matrix` is the Coxeter matrix of `cartan`.
    pub fn new(matrix: CoxeterMatrix, cartan: Gcm) -> Result<Self, CoxeterError> {
        let derived = CoxeterMatrix::from_gcm(&cartan);
        if derived != matrix {
            return Err(CoxeterError::InvalidMatrix {
                i: 0,
                j: 0,
                reason: "does not match the cartan matrix".into(),
            });
        }
        Ok(CoxeterSystem { matrix, cartan })
    }

    pub fn named(name: &str) -> Result<Self, CoxeterError> {
        Ok(CoxeterSystem::from_gcm(Gcm::named(name)?))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn cartan(&self) -> &Gcm {
        &self.cartan
    }

    pub fn identity(&self) -> CoxeterElement {
        CoxeterElement::identity()
    }

    pub fn generator(&self, s: usize) -> CoxeterElement {
        assert!(s < self.rank(), "generator {s} out of range");
        CoxeterElement { word: vec![s as u8] }
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank()).collect()
    }

    /// Reflection `s_i` applied to a root-lattice vector.
    pub fn reflect(&self, i: usize, v: &mut [i64]) {
        let n = self.rank();
        let mut pairing = 0;
        for j in 0..n {
            pairing += self.cartan.entry(i, j) * v[j];
        }
        v[i] -= pairing;
    }

    /// `w(v)` for the element given by `word` (rightmost letter acts first).
    pub fn act_word(&self, word: &[usize], v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for &s in word.iter().rev() {
            self.reflect(s, &mut out);
        }
        out
    }

    pub fn act(&self, w: &CoxeterElement, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for &s in w.word.iter().rev() {
            self.reflect(s as usize, &mut out);
        }
        out
    }

    fn simple_root(&self, s: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[s] = 1;
        v
    }

    fn check_word(&self, word: &[usize]) -> Result<(), CoxeterError> {
        let rank = self.rank();
        match word.iter().find(|&&s| s >= rank) {
            Some(&index) => Err(CoxeterError::IndexOutOfRange { index, rank }),
            None => Ok(()),
        }
    }

    /// Column operation `M <- M * S_s`.
    fn right_mul_reflection(&self, m: &mut IntMatrix, s: usize) {
        let n = self.rank();
        for row in 0..n {
            let col_s = m[row * n + s];
            for j in 0..n {
                let a = self.cartan.entry(s, j);
                if a != 0 {
                    m[row * n + j] -= a * col_s;
                }
            }
        }
    }

    /// Row operation `M <- S_s * M`.
    fn left_mul_reflection(&self, m: &mut IntMatrix, s: usize) {
        let n = self.rank();
        for col in 0..n {
            let mut pairing = 0;
            for j in 0..n {
                pairing += self.cartan.entry(s, j) * m[j * n + col];
            }
            m[s * n + col] -= pairing;
        }
    }

    /// Smallest `s` whose column in `m` is a negative root.
    fn first_negative_column(&self, m: &IntMatrix) -> Option<usize> {
        let n = self.rank();
        (0..n).find(|&s| (0..n).any(|row| m[row * n + s] < 0))
    }

    /// ShortLex normal form of the element represented by `word`.
    pub fn normal_form(&self, word: &[usize]) -> Result<CoxeterElement, CoxeterError> {
        self.check_word(word)?;
        Ok(self.normal_form_unchecked(word.iter().copied()))
    }

    pub(crate) fn normal_form_unchecked<I>(&self, word: I) -> CoxeterElement
    where
        I: IntoIterator<Item = usize>,
        I::IntoIter: DoubleEndedIterator,
    {
        let n = self.rank();
        // inverse image matrix: columns are w^{-1}(alpha_j)
        let mut inv: IntMatrix = vec![0; n * n];
        for i in 0..n {
            inv[i * n + i] = 1;
        }
        let letters = word.into_iter();
        for s in letters {
            self.left_mul_reflection(&mut inv, s);
        }
        // peel minimal left descents: s is a left descent iff w^{-1}(alpha_s) < 0
        let mut out = Vec::new();
        while let Some(s) = self.first_negative_column(&inv) {
            out.push(s as u8);
            self.right_mul_reflection(&mut inv, s);
        }
        CoxeterElement { word: out }
    }

    pub fn multiply(&self, x: &CoxeterElement, y: &CoxeterElement) -> CoxeterElement {
        self.normal_form_unchecked(x.word.iter().chain(y.word.iter()).map(|&s| s as usize))
    }

    pub fn multiply_generator(&self, x: &CoxeterElement, s: usize) -> CoxeterElement {
        self.normal_form_unchecked(x.word.iter().map(|&t| t as usize).chain(std::iter::once(s)))
    }

    pub fn generator_multiply(&self, s: usize, x: &CoxeterElement) -> CoxeterElement {
        self.normal_form_unchecked(std::iter::once(s).chain(x.word.iter().map(|&t| t as usize)))
    }

    pub fn inverse(&self, x: &CoxeterElement) -> CoxeterElement {
        self.normal_form_unchecked(x.word.iter().rev().map(|&s| s as usize))
    }

    pub fn length(&self, w: &CoxeterElement) -> usize {
        w.word.len()
    }

    /// `l(ws) < l(w)`.
    pub fn is_right_descent(&self, w: &CoxeterElement, s: usize) -> bool {
        let image = self.act(w, &self.simple_root(s));
        image.iter().any(|&c| c < 0)
    }

    /// `l(sw) < l(w)`.
    pub fn is_left_descent(&self, w: &CoxeterElement, s: usize) -> bool {
        let mut v = self.simple_root(s);
        for &t in w.word.iter() {
            self.reflect(t as usize, &mut v);
        }
        v.iter().any(|&c| c < 0)
    }

    pub fn descents(&self, w: &CoxeterElement, side: Side) -> BTreeSet<usize> {
        (0..self.rank())
            .filter(|&s| match side {
                Side::Right => self.is_right_descent(w, s),
                Side::Left => self.is_left_descent(w, s),
            })
            .collect()
    }

    /// Bruhat order via the lifting recursion: if `ws < w` then
    /// `v <= w` iff `min(v, vs) <= ws`.
    pub fn bruhat_leq(&self, v: &CoxeterElement, w: &CoxeterElement) -> bool {
        let mut v = v.clone();
        let mut w = w.clone();
        loop {
            if v.len() > w.len() {
                return false;
            }
            if w.is_identity() {
                return v.is_identity();
            }
            if v == w {
                return true;
            }
            let s = *w.word.last().expect("non-identity") as usize;
            let ws = CoxeterElement {
                word: w.word[..w.word.len() - 1].to_vec(),
            };
            if self.is_right_descent(&v, s) {
                v = self.multiply_generator(&v, s);
            }
            w = ws;
        }
    }

    /// Whether all letters of the normal form lie in `j`.
    pub fn in_parabolic(&self, w: &CoxeterElement, j: &[usize]) -> bool {
        w.word.iter().all(|&s| j.contains(&(s as usize)))
    }

    /// Finite-type recognition of `W_J` by diagram matching.
    pub fn parabolic_info(&self, j: &[usize]) -> ParabolicInfo {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        let mut components = Vec::new();
        let mut order: u128 = 1;
        let mut finite = true;
        for component in self.diagram_components(&j) {
            match classify_component(&self.matrix, &component) {
                Some((name, ord)) => {
                    components.push(name);
                    order = order.saturating_mul(ord);
                }
                None => {
                    finite = false;
                    break;
                }
            }
        }
        if !finite {
            return ParabolicInfo {
                finite: false,
                longest: None,
                order: None,
                components: Vec::new(),
            };
        }
        let longest = self.longest_in(&j);
        ParabolicInfo {
            finite: true,
            longest: Some(longest),
            order: Some(order),
            components,
        }
    }

    /// Longest element of a finite parabolic subgroup.
    fn longest_in(&self, j: &[usize]) -> CoxeterElement {
        let mut w = self.identity();
        'grow: loop {
            for &s in j {
                if !self.is_right_descent(&w, s) {
                    w = self.multiply_generator(&w, s);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// The longest element of `W`, if finite.
    pub fn longest_element(&self) -> Option<CoxeterElement> {
        self.parabolic_info(&self.generators()).longest
    }

    fn diagram_components(&self, j: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &start in j {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in j {
                    if !seen.contains(&y) && self.matrix.m(x, y) != CoxeterLabel::Finite(2) && x != y {
                        seen.insert(y);
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Elements of `W_J` of length at most `max_len`, grouped by length.
    pub fn enumerate_upto(&self, max_len: usize, j: &[usize]) -> Vec<Vec<CoxeterElement>> {
        let mut levels = vec![vec![self.identity()]];
        for _ in 0..max_len {
            let prev = levels.last().expect("non-empty");
            let mut next = BTreeSet::new();
            for w in prev {
                for &s in j {
                    if !self.is_right_descent(w, s) {
                        next.insert(self.multiply_generator(w, s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }

    /// All elements of `W` up to length `max_len`, in ShortLex order.
    pub fn elements_upto(&self, max_len: usize) -> Vec<CoxeterElement> {
        self.enumerate_upto(max_len, &self.generators())
            .into_iter()
            .flatten()
            .collect()
    }

    /// Every reduced expression of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: &CoxeterElement) -> BTreeSet<Vec<usize>> {
        let mut memo: HashMap<CoxeterElement, BTreeSet<Vec<usize>>> = HashMap::new();
        self.reduced_words_memo(w, &mut memo)
    }

    fn reduced_words_memo(
        &self,
        w: &CoxeterElement,
        memo: &mut HashMap<CoxeterElement, BTreeSet<Vec<usize>>>,
    ) -> BTreeSet<Vec<usize>> {
        if let Some(found) = memo.get(w) {
            return found.clone();
        }
        let mut out = BTreeSet::new();
        if w.is_identity() {
            out.insert(Vec::new());
        } else {
            for s in self.descents(w, Side::Right) {
                let ws = self.multiply_generator(w, s);
                for mut prefix in self.reduced_words_memo(&ws, memo) {
                    prefix.push(s);
                    out.insert(prefix);
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Parse a 1-based word (external format) into a normal form.
    pub fn parse_one_based(&self, word: &[usize]) -> Result<CoxeterElement, CoxeterError> {
        let rank = self.rank();
        let zero_based: Vec<usize> = word
            .iter()
            .map(|&s| {
                if s == 0 || s > rank {
                    Err(CoxeterError::IndexOutOfRange { index: s, rank })
                } else {
                    Ok(s - 1)
                }
            })
            .collect::<Result<_, _>>()?;
        self.normal_form(&zero_based)
    }

    /// Element counts per length (Poincare series coefficients) up to `max_len`.
    pub fn length_counts(&self, max_len: usize) -> BTreeMap<usize, usize> {
        self.enumerate_upto(max_len, &self.generators())
            .iter()
            .enumerate()
            .map(|(l, level)| (l, level.len()))
            .collect()
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Recognise a connected diagram as a finite type; returns name and order.
fn classify_component(matrix: &CoxeterMatrix, comp: &[usize]) -> Option<(String, u128)> {
    let n = comp.len();
    if n == 1 {
        return Some(("A1".into(), 2));
    }
    let mut edges = Vec::new();
    for (a, &x) in comp.iter().enumerate() {
        for &y in &comp[a + 1..] {
            match matrix.m(x, y) {
                CoxeterLabel::Finite(2) => {}
                CoxeterLabel::Finite(m) => edges.push((x, y, m)),
                CoxeterLabel::Infinite => return None,
            }
        }
    }
    // a connected graph on n vertices with n-1 edges is a tree
    if edges.len() != n - 1 {
        return None;
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let sixes = edges.iter().filter(|e| e.2 == 6).count();
    let fours: Vec<_> = edges.iter().filter(|e| e.2 == 4).collect();
    let nn = n as u128;
    if sixes > 0 {
        return if n == 2 { Some(("G2".into(), 12)) } else { None };
    }
    let max_degree = comp.iter().map(|&v| degree(v)).max().unwrap_or(0);
    match fours.len() {
        0 => {}
        1 => {
            if max_degree > 2 {
                return None;
            }
            let (x, y, _) = *fours[0];
            if degree(x) == 1 || degree(y) == 1 {
                return Some((format!("B{n}"), (1u128 << n) * factorial(nn)));
            }
            if n == 4 {
                return Some(("F4".into(), 1152));
            }
            return None;
        }
        _ => return None,
    }
    if max_degree <= 2 {
        return Some((format!("A{n}"), factorial(nn + 1)));
    }
    let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) == 3).collect();
    if max_degree > 3 || branches.len() != 1 {
        return None;
    }
    let centre = branches[0];
    let mut legs = Vec::new();
    for e in edges.iter().filter(|e| e.0 == centre || e.1 == centre) {
        let mut prev = centre;
        let mut cur = if e.0 == centre { e.1 } else { e.0 };
        let mut len = 1;
        loop {
            let next = edges
                .iter()
                .filter(|f| (f.0 == cur || f.1 == cur) && f.0 != prev && f.1 != prev)
                .map(|f| if f.0 == cur { f.1 } else { f.0 })
                .next();
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    len += 1;
                }
                None => break,
            }
        }
        legs.push(len);
    }
    legs.sort_unstable();
    match legs.as_slice() {
        [1, 1, _] => Some((format!("D{n}"), (1u128 << (n - 1)) * factorial(nn))),
        [1, 2, 2] => Some(("E6".into(), 51_840)),
        [1, 2, 3] => Some(("E7".into(), 2_903_040)),
        [1, 2, 4] => Some(("E8".into(), 696_729_600)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> CoxeterSystem {
        CoxeterSystem::named(name).unwrap()
    }

    fn w(s: &CoxeterSystem, one_based: &[usize]) -> CoxeterElement {
        s.parse_one_based(one_based).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let a2 = sys("A2");
        assert!(w(&a2, &[1, 1]).is_identity());
        assert_eq!(w(&a2, &[2, 1, 2]).to_one_based(), vec![1, 2, 1]);
        let b2 = sys("B2");
        assert_eq!(w(&b2, &[1, 2, 1, 2, 1]).to_one_based(), vec![2, 1, 2]);
        assert_eq!(
            a2.normal_form(&[0, 3]),
            Err(CoxeterError::IndexOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn multiply_examples() {
        let a2 = sys("A2");
        let s1 = w(&a2, &[1]);
        let s2 = w(&a2, &[2]);
        assert!(a2.multiply(&s1, &s1).is_identity());
        assert_eq!(a2.multiply(&s1, &s2).to_one_based(), vec![1, 2]);
        assert_eq!(a2.multiply(&w(&a2, &[1, 2]), &s1).to_one_based(), vec![1, 2, 1]);
    }

    #[test]
    fn bruhat_examples() {
        let a2 = sys("A2");
        for x in a2.elements_upto(3) {
            assert!(a2.bruhat_leq(&a2.identity(), &x));
        }
        assert!(a2.bruhat_leq(&w(&a2, &[1]), &w(&a2, &[1, 2, 1])));
        assert!(!a2.bruhat_leq(&w(&a2, &[1, 2]), &w(&a2, &[2, 1])));
    }

    #[test]
    fn descent_examples() {
        let a2 = sys("A2");
        assert!(a2.descents(&a2.identity(), Side::Right).is_empty());
        let top = w(&a2, &[1, 2, 1]);
        assert_eq!(a2.descents(&top, Side::Right), BTreeSet::from([0, 1]));
        assert_eq!(a2.descents(&w(&a2, &[1, 2]), Side::Right), BTreeSet::from([1]));
        assert_eq!(a2.descents(&w(&a2, &[1, 2]), Side::Left), BTreeSet::from([0]));
    }

    #[test]
    fn parabolic_examples() {
        let a2 = sys("A2");
        let one = a2.parabolic_info(&[1]);
        assert!(one.finite);
        assert_eq!(one.order, Some(2));
        assert_eq!(one.longest.unwrap().to_one_based(), vec![2]);
        let full = a2.parabolic_info(&[0, 1]);
        assert_eq!(full.order, Some(6));
        assert_eq!(full.longest.unwrap().to_one_based(), vec![1, 2, 1]);
        assert!(!sys("A1~").parabolic_info(&[0, 1]).finite);
        let empty = a2.parabolic_info(&[]);
        assert_eq!(empty.order, Some(1));
        assert!(empty.longest.unwrap().is_identity());
    }

    #[test]
    fn catalogue_orders_and_longest_lengths() {
        // |W| and l(w0) = number of positive roots
        for (name, order, len) in [
            ("A3", 24u128, 6usize),
            ("B3", 48, 9),
            ("C3", 48, 9),
            ("D4", 192, 12),
            ("F4", 1152, 24),
            ("G2", 12, 6),
            ("E6", 51_840, 36),
        ] {
            let s = sys(name);
            let info = s.parabolic_info(&s.generators());
            assert!(info.finite, "{name}");
            assert_eq!(info.order, Some(order), "{name}");
            assert_eq!(info.longest.unwrap().len(), len, "{name}");
        }
        let a3 = sys("A3");
        assert_eq!(a3.elements_upto(10).len(), 24);
        // affine and hyperbolic diagrams are rejected
        let c2_affine =
            CoxeterSystem::from_gcm(Gcm::new(vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]]).unwrap());
        assert!(!c2_affine.parabolic_info(&[0, 1, 2]).finite);
        let a2_affine =
            CoxeterSystem::from_gcm(Gcm::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap());
        assert!(!a2_affine.parabolic_info(&[0, 1, 2]).finite);
        assert!(a2_affine.parabolic_info(&[0, 2]).finite);
    }

    #[test]
    fn enumerate_examples() {
        let a2 = sys("A2");
        let counts: Vec<usize> = a2.enumerate_upto(3, &[0, 1]).iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 1]);
        assert_eq!(a2.enumerate_upto(0, &[0, 1]).len(), 1);
        let aff = sys("A1~");
        let counts: Vec<usize> = aff.enumerate_upto(4, &[0, 1]).iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = sys("A2");
        assert_eq!(a2.reduced_words(&w(&a2, &[1])), BTreeSet::from([vec![0]]));
        assert_eq!(
            a2.reduced_words(&w(&a2, &[1, 2, 1])),
            BTreeSet::from([vec![0, 1, 0], vec![1, 0, 1]])
        );
        let b2 = sys("B2");
        assert_eq!(b2.reduced_words(&w(&b2, &[1, 2])), BTreeSet::from([vec![0, 1]]));
    }

    #[test]
    fn coxeter_matrix_validation() {
        let bad = CoxeterMatrix::new(
            2,
            vec![
                CoxeterLabel::Finite(1),
                CoxeterLabel::Finite(5),
                CoxeterLabel::Finite(5),
                CoxeterLabel::Finite(1),
            ],
        );
        assert!(bad.is_err());
        let gcm = Gcm::named("B2").unwrap();
        let m = CoxeterMatrix::from_gcm(&gcm);
        assert!(CoxeterSystem::new(m, gcm.clone()).is_ok());
        let wrong = CoxeterMatrix::from_gcm(&Gcm::named("A2").unwrap());
        assert!(CoxeterSystem::new(wrong, gcm).is_err());
    }
}
