use std::collections::HashMap;

use crate::coxeter::{CoxeterElement, CoxeterSystem};

use super::{chambers, BuildingError, Chamber, Sign, TwinBuildingModel};

/// A fully tabulated twin building.
///
/// Both codistance directions are stored independently, so a table can
/// violate (Tw1); this is what the corruption tests rely on.
#[derive(Debug, Clone)]
pub struct TableBuilding {
    name: String,
    system: CoxeterSystem,
    elements: Vec<CoxeterElement>,
    index: HashMap<CoxeterElement, u16>,
    labels: [Vec<String>; 2],
    interior: [Vec<bool>; 2],
    truncated: bool,
    dist: [Vec<u16>; 2],
    /// `cod[0]`: plus x minus, `cod[1]`: minus x plus.
    cod: [Vec<u16>; 2],
    panels: [Vec<Vec<Vec<usize>>>; 2],
}

impl TableBuilding {
    /// Tabulate any model.
    pub fn from_model<B: TwinBuildingModel + ?Sized>(b: &B) -> TableBuilding {
        let system = b.system().clone();
        let n = [b.chamber_count(Sign::Plus), b.chamber_count(Sign::Minus)];
        let mut t = TableBuilding::empty(b.name(), system, n);
        for sign in Sign::both() {
            let k = sign.slot();
            t.labels[k] = chambers(b, sign).map(|c| b.label(c)).collect();
            t.interior[k] = chambers(b, sign).map(|c| b.is_interior(c)).collect();
            for x in 0..n[k] {
                for y in 0..n[k] {
                    let id = t.intern(b.distance(sign, x, y));
                    t.dist[k][x * n[k] + y] = id;
                }
            }
            let other = n[1 - k];
            for x in 0..n[k] {
                for y in 0..other {
                    let w = b.codistance(Chamber::new(sign, x), Chamber::new(sign.opposite(), y));
                    let id = t.intern(w);
                    t.cod[k][x * other + y] = id;
                }
            }
        }
        t.truncated = b.is_truncated();
        t.rebuild_panels();
        t
    }

    fn empty(name: String, system: CoxeterSystem, n: [usize; 2]) -> TableBuilding {
        let mut t = TableBuilding {
            name,
            system,
            elements: Vec::new(),
            index: HashMap::new(),
            labels: [
                (0..n[0]).map(|i| format!("+{i}")).collect(),
                (0..n[1]).map(|i| format!("-{i}")).collect(),
            ],
            interior: [vec![true; n[0]], vec![true; n[1]]],
            truncated: false,
            dist: [vec![0; n[0] * n[0]], vec![0; n[1] * n[1]]],
            cod: [vec![0; n[0] * n[1]], vec![0; n[1] * n[0]]],
            panels: [Vec::new(), Vec::new()],
        };
        t.intern(CoxeterElement::identity());
        t
    }

    /// Build from explicit tables; used by the JSON importer.
    pub(crate) fn from_parts(
        name: String,
        system: CoxeterSystem,
        labels: [Vec<String>; 2],
        interior: [Vec<bool>; 2],
        dist: [Vec<Vec<CoxeterElement>>; 2],
        cod: [Vec<Vec<CoxeterElement>>; 2],
    ) -> Result<TableBuilding, BuildingError> {
        let n = [labels[0].len(), labels[1].len()];
        let mut t = TableBuilding::empty(name, system, n);
        t.labels = labels;
        t.interior = interior;
        for k in 0..2 {
            if dist[k].len() != n[k] || dist[k].iter().any(|r| r.len() != n[k]) {
                return Err(BuildingError::Format("distance table shape".into()));
            }
            if cod[k].len() != n[k] || cod[k].iter().any(|r| r.len() != n[1 - k]) {
                return Err(BuildingError::Format("codistance table shape".into()));
            }
            for x in 0..n[k] {
                for y in 0..n[k] {
                    let id = t.intern(dist[k][x][y].clone());
                    t.dist[k][x * n[k] + y] = id;
                }
                for y in 0..n[1 - k] {
                    let id = t.intern(cod[k][x][y].clone());
                    t.cod[k][x * n[1 - k] + y] = id;
                }
            }
        }
        t.truncated = t.interior.iter().flatten().any(|&i| !i);
        t.rebuild_panels();
        Ok(t)
    }

    fn intern(&mut self, w: CoxeterElement) -> u16 {
        if let Some(&id) = self.index.get(&w) {
            return id;
        }
        let id = u16::try_from(self.elements.len()).expect("too many distinct Weyl elements");
        self.index.insert(w.clone(), id);
        self.elements.push(w);
        id
    }

    fn rebuild_panels(&mut self) {
        let rank = self.system.rank();
        for k in 0..2 {
            let n = self.labels[k].len();
            let mut panels = vec![vec![Vec::new(); rank]; n];
            for x in 0..n {
                for y in 0..n {
                    let w = &self.elements[self.dist[k][x * n + y] as usize];
                    match w.letters() {
                        [] => (0..rank).for_each(|s| panels[x][s].push(y)),
                        [s] => panels[x][*s as usize].push(y),
                        _ => {}
                    }
                }
            }
            self.panels[k] = panels;
        }
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn set_labels(&mut self, sign: Sign, labels: Vec<String>) {
        assert_eq!(labels.len(), self.labels[sign.slot()].len());
        self.labels[sign.slot()] = labels;
    }

    /// Overwrite one codistance entry (only the `x -> y` direction).
    pub fn set_codistance(&mut self, x: Chamber, y: Chamber, w: CoxeterElement) {
        assert_ne!(x.sign, y.sign);
        let k = x.sign.slot();
        let other = self.labels[1 - k].len();
        let id = self.intern(w);
        self.cod[k][x.index * other + y.index] = id;
    }

    /// Overwrite one distance entry (only the `x -> y` direction).
    pub fn set_distance(&mut self, sign: Sign, x: usize, y: usize, w: CoxeterElement) {
        let k = sign.slot();
        let n = self.labels[k].len();
        let id = self.intern(w);
        self.dist[k][x * n + y] = id;
        self.rebuild_panels();
    }

    pub fn labels(&self, sign: Sign) -> &[String] {
        &self.labels[sign.slot()]
    }
}

impl TwinBuildingModel for TableBuilding {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn chamber_count(&self, sign: Sign) -> usize {
        self.labels[sign.slot()].len()
    }

    fn distance(&self, sign: Sign, x: usize, y: usize) -> CoxeterElement {
        let k = sign.slot();
        let n = self.labels[k].len();
        self.elements[self.dist[k][x * n + y] as usize].clone()
    }

    fn codistance(&self, x: Chamber, y: Chamber) -> CoxeterElement {
        assert_ne!(x.sign, y.sign, "codistance needs opposite signs");
        let k = x.sign.slot();
        let other = self.labels[1 - k].len();
        self.elements[self.cod[k][x.index * other + y.index] as usize].clone()
    }

    fn is_interior(&self, c: Chamber) -> bool {
        self.interior[c.sign.slot()][c.index]
    }

    fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn label(&self, c: Chamber) -> String {
        self.labels[c.sign.slot()][c.index].clone()
    }

    fn panel(&self, c: Chamber, s: usize) -> Vec<usize> {
        self.panels[c.sign.slot()][c.index][s].clone()
    }
}
