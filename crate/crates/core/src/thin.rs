//! The thin twin building `Delta(W, S)`: both halves are copies of `W`,
//! `delta(x, y) = x^{-1} y` and `delta*(x, y) = x^{-1} y`.

use std::collections::HashMap;

use crate::building::{Chamber, Sign, TwinBuildingModel};
use crate::coxeter::{CoxeterElement, CoxeterSystem};

#[derive(Debug, Clone)]
pub struct ThinTwinBuilding {
    system: CoxeterSystem,
    cap: usize,
    elements: Vec<CoxeterElement>,
    index: HashMap<CoxeterElement, usize>,
    truncated: bool,
}

impl ThinTwinBuilding {
    /// Chambers are the elements of length at most `cap`.
    pub fn new(system: CoxeterSystem, cap: usize) -> ThinTwinBuilding {
        let elements = system.elements_upto(cap);
        let truncated = elements.iter().any(|w| w.len() == cap) && system.elements_upto(cap + 1).len() > elements.len();
        let index = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        ThinTwinBuilding {
            system,
            cap,
            elements,
            index,
            truncated,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn element(&self, i: usize) -> &CoxeterElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CoxeterElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &CoxeterElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn chamber_of(&self, sign: Sign, w: &CoxeterElement) -> Option<Chamber> {
        self.index_of(w).map(|i| Chamber::new(sign, i))
    }

    /// `delta(x, y) = x^{-1} y` on either half.
    pub fn delta(&self, x: &CoxeterElement, y: &CoxeterElement) -> CoxeterElement {
        self.system.multiply(&self.system.inverse(x), y)
    }

    /// `delta*(x, y) = x^{-1} y` across the halves.
    pub fn codelta(&self, x: &CoxeterElement, y: &CoxeterElement) -> CoxeterElement {
        self.delta(x, y)
    }
}

impl TwinBuildingModel for ThinTwinBuilding {
    fn name(&self) -> String {
        format!("thin {} (cap {})", self.system.cartan(), self.cap)
    }

    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn chamber_count(&self, _sign: Sign) -> usize {
        self.elements.len()
    }

    fn distance(&self, _sign: Sign, x: usize, y: usize) -> CoxeterElement {
        self.delta(&self.elements[x], &self.elements[y])
    }

    fn codistance(&self, x: Chamber, y: Chamber) -> CoxeterElement {
        assert_ne!(x.sign, y.sign, "codistance needs opposite signs");
        self.codelta(&self.elements[x.index], &self.elements[y.index])
    }

    fn is_interior(&self, c: Chamber) -> bool {
        !self.truncated || self.elements[c.index].len() < self.cap
    }

    fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn label(&self, c: Chamber) -> String {
        format!("{}{}", c.sign, self.elements[c.index])
    }

    fn panel(&self, c: Chamber, s: usize) -> Vec<usize> {
        let x = &self.elements[c.index];
        let xs = self.system.multiply_generator(x, s);
        let mut out: Vec<usize> = [Some(c.index), self.index_of(&xs)].into_iter().flatten().collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let b = ThinTwinBuilding::new(sys.clone(), 3);
        let x = sys.parse_one_based(&[1]).unwrap();
        let y = sys.parse_one_based(&[1, 2]).unwrap();
        assert_eq!(b.delta(&x, &y).to_one_based(), vec![2]);
        assert!(b.delta(&y, &y).is_identity());
        assert_eq!(b.delta(&sys.identity(), &y), y);
        assert!(b.codelta(&x, &x).is_identity());
        assert_eq!(b.codelta(&x, &y).to_one_based(), vec![2]);
        assert!(!b.is_truncated());
        assert_eq!(b.chamber_count(Sign::Plus), 6);
    }

    #[test]
    fn truncation_of_infinite_type() {
        let sys = CoxeterSystem::named("A1~").unwrap();
        let b = ThinTwinBuilding::new(sys, 5);
        assert!(b.is_truncated());
        assert_eq!(b.chamber_count(Sign::Minus), 11);
        let interior = (0..11).filter(|&i| b.is_interior(Chamber::plus(i))).count();
        assert_eq!(interior, 9);
    }
}
