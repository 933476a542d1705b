//! Height-truncated Kac–Moody algebra `g'(A)` with exact structure
//! constants.
//!
//! The positive part is built height by height: the candidates of degree
//! `alpha` are the brackets `[e_i, y]` with `y` a basis vector of degree
//! `alpha - alpha_i`, and a candidate combination vanishes exactly when all
//! `[f_j, -]` of it vanish. The negative part is the image of the positive
//! part under the Chevalley anti-involution `e_i <-> f_i`, `h_i -> h_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::Gcm;

use super::linalg::{add_scaled, q, scaled, unit, Echelon, Reduced, Vector, Q};
use super::roots::{height, pairing, simple_root};
use super::KmError;

/// Basis-dimension cap for [`build_algebra`].
pub const DEFAULT_CAP: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
}

#[derive(Debug, Clone)]
struct PosComp {
    degree: Vec<i64>,
    dim: usize,
    /// `(i, y)`: basis vector `b` is `[e_i, y]`, `y` local in degree `alpha - alpha_i`.
    defs: Vec<(usize, usize)>,
    /// `[f_j, b]` in local coordinates of degree `alpha - alpha_j`.
    f_act: Vec<Vec<Option<Vec<Q>>>>,
    /// `[e_i, b]` in local coordinates of degree `alpha + alpha_i`.
    e_act: Vec<Vec<Option<Vec<Q>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elem {
    Pos { comp: usize, local: usize },
    Cartan(usize),
    Neg { comp: usize, local: usize },
}

#[derive(Debug)]
pub struct KmAlgebra {
    gcm: Gcm,
    window: usize,
    pos: Vec<PosComp>,
    pos_index: HashMap<Vec<i64>, usize>,
    pos_offset: Vec<usize>,
    neg_offset: Vec<usize>,
    elems: Vec<Elem>,
    window_dim: usize,
    memo: Mutex<HashMap<(usize, usize), Result<Vector, KmError>>>,
}

impl Clone for KmAlgebra {
    fn clone(&self) -> Self {
        KmAlgebra {
            gcm: self.gcm.clone(),
            window: self.window,
            pos: self.pos.clone(),
            pos_index: self.pos_index.clone(),
            pos_offset: self.pos_offset.clone(),
            neg_offset: self.neg_offset.clone(),
            elems: self.elems.clone(),
            window_dim: self.window_dim,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

fn sub_simple(v: &[i64], i: usize) -> Option<Vec<i64>> {
    let mut u = v.to_vec();
    u[i] -= 1;
    (u.iter().all(|&x| x >= 0) && u.iter().any(|&x| x > 0)).then_some(u)
}

/// Build the algebra on heights `-h..=h` with the default cap.
pub fn build_algebra(gcm: &Gcm, h: usize) -> Result<KmAlgebra, KmError> {
    build_algebra_capped(gcm, h, DEFAULT_CAP)
}

pub fn build_algebra_capped(gcm: &Gcm, h: usize, cap: usize) -> Result<KmAlgebra, KmError> {
    if h == 0 {
        return Err(KmError::WindowTooLarge("window height must be at least 1".into()));
    }
    let n = gcm.rank();
    let mut pos: Vec<PosComp> = Vec::new();
    let mut pos_index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); h + 2];
    for i in 0..n {
        let degree = simple_root(n, i);
        pos_index.insert(degree.clone(), pos.len());
        by_height[1].push(pos.len());
        pos.push(PosComp {
            degree,
            dim: 1,
            defs: Vec::new(),
            f_act: vec![vec![None; n]],
            e_act: vec![vec![None; n]],
        });
    }
    let mut total = n + 2 * n;
    for k in 2..=h + 1 {
        let degrees: BTreeSet<Vec<i64>> = by_height[k - 1]
            .iter()
            .flat_map(|&c| {
                let d = pos[c].degree.clone();
                (0..n).map(move |i| {
                    let mut u = d.clone();
                    u[i] += 1;
                    u
                })
            })
            .collect();
        for alpha in degrees {
            // targets of the f-action, one block per j
            let blocks: Vec<Option<usize>> = (0..n)
                .map(|j| sub_simple(&alpha, j).and_then(|d| pos_index.get(&d).copied()))
                .collect();
            let width: usize = blocks.iter().map(|b| b.map_or(0, |c| pos[c].dim)).sum();
            let mut block_start = vec![0; n];
            let mut acc = 0;
            for j in 0..n {
                block_start[j] = acc;
                acc += blocks[j].map_or(0, |c| pos[c].dim);
            }
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for i in 0..n {
                if let Some(c) = blocks[i] {
                    for y in 0..pos[c].dim {
                        cands.push((i, c, y));
                    }
                }
            }
            let mut ech = Echelon::new();
            let mut chosen: Vec<(usize, usize, Vec<Q>)> = Vec::new();
            let mut coords: Vec<Vec<Q>> = Vec::new();
            let mut pending: Vec<Result<Vec<Q>, usize>> = Vec::new();
            for &(i, c, y) in &cands {
                let beta = &pos[c].degree;
                let mut img = vec![Q::zero(); width];
                for j in 0..n {
                    let Some(target) = blocks[j] else { continue };
                    let start = block_start[j];
                    if height(beta) == 1 {
                        // y = e_m, [f_j, e_m] = -delta_jm h_m, [e_i, -h_j] = a_ji e_i
                        if beta[j] == 1 {
                            img[start] += q(gcm.entry(j, i));
                        }
                    } else if let (Some(fy), Some(d)) = (&pos[c].f_act[y][j], sub_simple(beta, j)) {
                        let d = pos_index[&d];
                        for (z, cz) in fy.iter().enumerate() {
                            if cz.is_zero() {
                                continue;
                            }
                            if let Some(ez) = &pos[d].e_act[z][i] {
                                for (t, x) in ez.iter().enumerate() {
                                    img[start + t] += cz * x;
                                }
                            }
                        }
                    }
                    if i == j {
                        debug_assert_eq!(target, c);
                        img[start + y] -= q(pairing(gcm, beta, i));
                    }
                }
                match ech.insert(&img) {
                    Reduced::New(_) => {
                        chosen.push((i, y, img));
                        pending.push(Err(chosen.len() - 1));
                    }
                    Reduced::Dependent(cf) => pending.push(Ok(cf)),
                }
            }
            let dim = chosen.len();
            if dim == 0 {
                continue;
            }
            for p in pending {
                coords.push(match p {
                    Ok(mut cf) => {
                        cf.resize(dim, Q::zero());
                        cf
                    }
                    Err(k) => {
                        let mut v = vec![Q::zero(); dim];
                        v[k] = Q::one();
                        v
                    }
                });
            }
            let id = pos.len();
            for (&(i, c, y), v) in cands.iter().zip(coords) {
                pos[c].e_act[y][i] = Some(v);
            }
            let f_act = chosen
                .iter()
                .map(|(_, _, img)| {
                    (0..n)
                        .map(|j| blocks[j].map(|c| img[block_start[j]..block_start[j] + pos[c].dim].to_vec()))
                        .collect()
                })
                .collect();
            total += 2 * dim;
            if total > cap {
                return Err(KmError::WindowTooLarge(format!(
                    "more than {cap} basis vectors at height {k}"
                )));
            }
            pos_index.insert(alpha.clone(), id);
            by_height[k].push(id);
            pos.push(PosComp {
                degree: alpha,
                dim,
                defs: chosen.iter().map(|(i, y, _)| (*i, *y)).collect(),
                f_act,
                e_act: vec![vec![None; n]; dim],
            });
        }
    }
    // global basis: positive window, Cartan, negative window, then the boundary
    let mut order: Vec<usize> = (0..pos.len()).collect();
    order.sort_by(|&a, &b| (height(&pos[a].degree), &pos[a].degree).cmp(&(height(&pos[b].degree), &pos[b].degree)));
    let (inner, boundary): (Vec<usize>, Vec<usize>) =
        order.into_iter().partition(|&c| height(&pos[c].degree) <= h as i64);
    let mut elems = Vec::new();
    let mut pos_offset = vec![0; pos.len()];
    let mut neg_offset = vec![0; pos.len()];
    let mut place = |list: &[usize], negative: bool, elems: &mut Vec<Elem>| {
        for &c in list {
            if negative {
                neg_offset[c] = elems.len();
            } else {
                pos_offset[c] = elems.len();
            }
            for local in 0..pos[c].dim {
                elems.push(if negative {
                    Elem::Neg { comp: c, local }
                } else {
                    Elem::Pos { comp: c, local }
                });
            }
        }
    };
    place(&inner, false, &mut elems);
    elems.extend((0..n).map(Elem::Cartan));
    place(&inner, true, &mut elems);
    let window_dim = elems.len();
    place(&boundary, false, &mut elems);
    place(&boundary, true, &mut elems);
    Ok(KmAlgebra {
        gcm: gcm.clone(),
        window: h,
        pos,
        pos_index,
        pos_offset,
        neg_offset,
        elems,
        window_dim,
        memo: Mutex::new(HashMap::new()),
    })
}

impl KmAlgebra {
    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Dimension of the window `|ht| <= H`.
    pub fn dim(&self) -> usize {
        self.window_dim
    }

    /// Window plus the boundary layer just outside it.
    pub fn ambient_dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, x: usize) -> Elem {
        self.elems[x]
    }

    /// Whether nothing lives just outside the window, i.e. the window is
    /// the whole (finite-dimensional) algebra.
    pub fn is_complete(&self) -> bool {
        self.elems.len() == self.window_dim
    }

    pub fn degree(&self, x: usize) -> Vec<i64> {
        match self.elems[x] {
            Elem::Pos { comp, .. } => self.pos[comp].degree.clone(),
            Elem::Neg { comp, .. } => self.pos[comp].degree.iter().map(|v| -v).collect(),
            Elem::Cartan(_) => vec![0; self.rank()],
        }
    }

    pub fn is_boundary(&self, x: usize) -> bool {
        x >= self.window_dim
    }

    /// Global index of `e_i`, `f_i` or `h_i`.
    pub fn generator(&self, g: Generator) -> usize {
        let n = self.rank();
        match g {
            Generator::E(i) => self.pos_offset[self.pos_index[&simple_root(n, i)]],
            Generator::F(i) => self.neg_offset[self.pos_index[&simple_root(n, i)]],
            Generator::H(i) => self.cartan_offset() + i,
        }
    }

    pub fn cartan_offset(&self) -> usize {
        self.elems
            .iter()
            .position(|e| matches!(e, Elem::Cartan(_)))
            .expect("Cartan part")
    }

    /// Window indices of the component of degree `alpha` (any sign).
    pub fn component(&self, alpha: &[i64]) -> Vec<usize> {
        if alpha.iter().all(|&x| x == 0) {
            let c = self.cartan_offset();
            return (c..c + self.rank()).collect();
        }
        let negative = alpha.iter().all(|&x| x <= 0);
        let key: Vec<i64> = if negative {
            alpha.iter().map(|v| -v).collect()
        } else {
            alpha.to_vec()
        };
        let Some(&c) = self.pos_index.get(&key) else {
            return Vec::new();
        };
        let off = if negative {
            self.neg_offset[c]
        } else {
            self.pos_offset[c]
        };
        let out: Vec<usize> = (off..off + self.pos[c].dim).collect();
        if out.iter().any(|&x| self.is_boundary(x)) {
            return Vec::new();
        }
        out
    }

    /// `dim g_alpha` inside the window.
    pub fn component_dim(&self, alpha: &[i64]) -> usize {
        self.component(alpha).len()
    }

    /// Window degrees with their dimensions (Cartan excluded).
    pub fn graded_dims(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for x in 0..self.window_dim {
            if !matches!(self.elems[x], Elem::Cartan(_)) {
                *out.entry(self.degree(x)).or_insert(0) += 1;
            }
        }
        out
    }

    /// `dim n_+` at heights `1..=H`.
    pub fn n_plus_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.window];
        for x in 0..self.window_dim {
            if let Elem::Pos { comp, .. } = self.elems[x] {
                dims[height(&self.pos[comp].degree) as usize - 1] += 1;
            }
        }
        dims
    }

    pub fn label(&self, x: usize) -> String {
        let deg = |c: usize| {
            self.pos[c]
                .degree
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self.elems[x] {
            Elem::Cartan(i) => format!("h{}", i + 1),
            Elem::Pos { comp, local } if self.pos[comp].defs.is_empty() => {
                let _ = local;
                format!(
                    "e{}",
                    self.pos[comp].degree.iter().position(|&v| v == 1).unwrap_or(0) + 1
                )
            }
            Elem::Neg { comp, .. } if self.pos[comp].defs.is_empty() => {
                format!(
                    "f{}",
                    self.pos[comp].degree.iter().position(|&v| v == 1).unwrap_or(0) + 1
                )
            }
            Elem::Pos { comp, local } => format!("e[{}]#{}", deg(comp), local),
            Elem::Neg { comp, local } => format!("f[{}]#{}", deg(comp), local),
        }
    }

    fn pos_vector(&self, comp: usize, coords: &[Q], negate: bool) -> Vector {
        let off = self.pos_offset[comp];
        let mut v = Vector::new();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.insert(off + k, if negate { -c.clone() } else { c.clone() });
            }
        }
        v
    }

    fn neg_vector(&self, comp: usize, coords: &[Q], negate: bool) -> Vector {
        let off = self.neg_offset[comp];
        let mut v = Vector::new();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.insert(off + k, if negate { -c.clone() } else { c.clone() });
            }
        }
        v
    }

    fn escape(&self, x: usize) -> KmError {
        KmError::WindowExceeded(format!(
            "{} lies outside the window of height {}; rebuild with a larger height",
            self.label(x),
            self.window
        ))
    }

    /// `[g, x]` for a generator `g` and a window basis vector `x`.
    pub fn ad_generator(&self, g: Generator, x: usize) -> Result<Vector, KmError> {
        if self.is_boundary(x) {
            return Err(self.escape(x));
        }
        let n = self.rank();
        let h_off = self.cartan_offset();
        Ok(match (g, self.elems[x]) {
            (Generator::H(i), _) => {
                let c = pairing(&self.gcm, &self.degree(x), i);
                scaled(&unit(x), &q(c))
            }
            (Generator::E(i), Elem::Cartan(j)) => {
                scaled(&unit(self.generator(Generator::E(i))), &q(-self.gcm.entry(j, i)))
            }
            (Generator::F(i), Elem::Cartan(j)) => {
                scaled(&unit(self.generator(Generator::F(i))), &q(self.gcm.entry(j, i)))
            }
            (Generator::E(i), Elem::Pos { comp, local }) => {
                let mut d = self.pos[comp].degree.clone();
                d[i] += 1;
                match (&self.pos[comp].e_act[local][i], self.pos_index.get(&d)) {
                    (Some(v), Some(&t)) => self.pos_vector(t, v, false),
                    _ => Vector::new(),
                }
            }
            (Generator::F(i), Elem::Pos { comp, local }) => {
                if self.pos[comp].defs.is_empty() {
                    if self.pos[comp].degree[i] == 1 {
                        scaled(&unit(h_off + i), &q(-1))
                    } else {
                        Vector::new()
                    }
                } else {
                    match (&self.pos[comp].f_act[local][i], sub_simple(&self.pos[comp].degree, i)) {
                        (Some(v), Some(d)) => self.pos_vector(self.pos_index[&d], v, false),
                        _ => Vector::new(),
                    }
                }
            }
            (Generator::E(i), Elem::Neg { comp, local }) => {
                // [e_i, s(b)] = -s([f_i, b])
                if self.pos[comp].defs.is_empty() {
                    if self.pos[comp].degree[i] == 1 {
                        unit(h_off + i)
                    } else {
                        Vector::new()
                    }
                } else {
                    match (&self.pos[comp].f_act[local][i], sub_simple(&self.pos[comp].degree, i)) {
                        (Some(v), Some(d)) => self.neg_vector(self.pos_index[&d], v, true),
                        _ => Vector::new(),
                    }
                }
            }
            (Generator::F(i), Elem::Neg { comp, local }) => {
                let mut d = self.pos[comp].degree.clone();
                d[i] += 1;
                match (&self.pos[comp].e_act[local][i], self.pos_index.get(&d)) {
                    (Some(v), Some(&t)) => self.neg_vector(t, v, true),
                    _ => Vector::new(),
                }
            }
        })
        .map(|v: Vector| {
            debug_assert!(v.keys().all(|&k| k < self.elems.len()));
            let _ = n;
            v
        })
    }

    fn ad_generator_vec(&self, g: Generator, v: &Vector) -> Result<Vector, KmError> {
        let mut out = Vector::new();
        for (k, c) in v {
            add_scaled(&mut out, &self.ad_generator(g, *k)?, c);
        }
        Ok(out)
    }

    fn bracket_with_vec(&self, x: usize, v: &Vector) -> Result<Vector, KmError> {
        let mut out = Vector::new();
        for (k, c) in v {
            add_scaled(&mut out, &self.bracket_basis(x, *k)?, c);
        }
        Ok(out)
    }

    /// `[x, y]` for window basis vectors.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Result<Vector, KmError> {
        if self.is_boundary(x) {
            return Err(self.escape(x));
        }
        if self.is_boundary(y) {
            return Err(self.escape(y));
        }
        let (dx, dy) = (self.degree(x), self.degree(y));
        let sum: Vec<i64> = dx.iter().zip(&dy).map(|(a, b)| a + b).collect();
        let mixed = sum.iter().any(|&v| v > 0) && sum.iter().any(|&v| v < 0);
        if mixed {
            return Ok(Vector::new());
        }
        if height(&sum).unsigned_abs() as usize > self.window {
            if self.is_complete() {
                return Ok(Vector::new());
            }
            return Err(KmError::WindowExceeded(format!(
                "[{}, {}] has height {} outside the window of height {}",
                self.label(x),
                self.label(y),
                height(&sum),
                self.window
            )));
        }
        if let Some(r) = self.memo.lock().expect("memo lock").get(&(x, y)) {
            return r.clone();
        }
        let r = self.bracket_uncached(x, y);
        self.memo.lock().expect("memo lock").insert((x, y), r.clone());
        r
    }

    fn bracket_uncached(&self, x: usize, y: usize) -> Result<Vector, KmError> {
        match self.elems[x] {
            Elem::Cartan(i) => self.ad_generator(Generator::H(i), y),
            Elem::Pos { comp, local } | Elem::Neg { comp, local } => {
                let negative = matches!(self.elems[x], Elem::Neg { .. });
                let pc = &self.pos[comp];
                if pc.defs.is_empty() {
                    let i = pc.degree.iter().position(|&v| v == 1).expect("simple");
                    let g = if negative { Generator::F(i) } else { Generator::E(i) };
                    return self.ad_generator(g, y);
                }
                let (i, z_local) = pc.defs[local];
                let z_comp = self.pos_index[&sub_simple(&pc.degree, i).expect("degree")];
                // x = [e_i, z], or s(x) = -[f_i, s(z)]
                let (g, z, sign) = if negative {
                    (Generator::F(i), self.neg_offset[z_comp] + z_local, -1)
                } else {
                    (Generator::E(i), self.pos_offset[z_comp] + z_local, 1)
                };
                let zy = self.bracket_basis(z, y)?;
                let mut out = self.ad_generator_vec(g, &zy)?;
                let gy = self.ad_generator(g, y)?;
                add_scaled(&mut out, &self.bracket_with_vec(z, &gy)?, &q(-1));
                Ok(scaled(&out, &q(sign)))
            }
        }
    }

    /// Bilinear extension of [`KmAlgebra::bracket_basis`].
    pub fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector, KmError> {
        let mut out = Vector::new();
        for (x, cx) in a {
            for (y, cy) in b {
                add_scaled(&mut out, &self.bracket_basis(*x, *y)?, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// Chevalley involution on a basis vector: `omega(x) = sign * partner`.
    pub fn chevalley(&self, x: usize) -> (usize, i64) {
        match self.elems[x] {
            Elem::Cartan(_) => (x, -1),
            Elem::Pos { comp, local } => (self.neg_offset[comp] + local, -1),
            Elem::Neg { comp, local } => (self.pos_offset[comp] + local, -1),
        }
    }

    pub fn chevalley_vec(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (k, c) in v {
            let (p, s) = self.chevalley(*k);
            add_scaled(&mut out, &unit(p), &(c * q(s)));
        }
        out
    }

    /// Structure constants `[x, y] = sum c z` over window pairs whose
    /// bracket stays in the window.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Q)> {
        let mut out = Vec::new();
        for x in 0..self.window_dim {
            for y in 0..self.window_dim {
                if let Ok(v) = self.bracket_basis(x, y) {
                    for (z, c) in v {
                        out.push((x, y, z, c));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        let a1 = build_algebra(&Gcm::named("A1").unwrap(), 1).unwrap();
        assert_eq!(a1.dim(), 3);
        assert!(a1.is_complete());
        let a2 = build_algebra(&Gcm::named("A2").unwrap(), 3).unwrap();
        assert_eq!(a2.n_plus_dims(), vec![2, 1, 0]);
        assert_eq!(a2.dim(), 8);
        let g2 = build_algebra(&Gcm::named("G2").unwrap(), 5).unwrap();
        assert_eq!(g2.dim(), 14);
        assert!(g2.is_complete());
        let at = build_algebra(&Gcm::named("A1~").unwrap(), 4).unwrap();
        assert_eq!(at.n_plus_dims(), vec![2, 1, 2, 1]);
        assert!(!at.is_complete());
    }

    #[test]
    fn chevalley_relations() {
        let a2 = build_algebra(&Gcm::named("A2").unwrap(), 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = a2.generator(Generator::E(j));
                let h = a2.generator(Generator::H(i));
                let f = a2.generator(Generator::F(j));
                let hij = a2.bracket_basis(h, e).unwrap();
                assert_eq!(hij, scaled(&unit(e), &q(a2.gcm().entry(i, j))));
                let ef = a2.bracket_basis(a2.generator(Generator::E(i)), f).unwrap();
                let expected = if i == j {
                    unit(a2.generator(Generator::H(i)))
                } else {
                    Vector::new()
                };
                assert_eq!(ef, expected);
            }
        }
    }
}
