//! JSON import and export of tabulated twin buildings.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{chambers, BuildingError, Chamber, Sign, TableBuilding, TwinBuildingModel};
use crate::cartan::{Gcm, GcmDocument};
use crate::coxeter::{CoxeterElement, CoxeterSystem};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Halves<T> {
    pub plus: T,
    pub minus: T,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PanelEntry {
    /// 1-based generator.
    #[serde(rename = "type")]
    pub generator: usize,
    pub chambers: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodistanceTables {
    pub plus_minus: Vec<Vec<Vec<usize>>>,
    pub minus_plus: Vec<Vec<Vec<usize>>>,
}

/// Tabulated twin building.
///
/// Distances are given either sparsely by panels (and reconstructed from
/// minimal galleries) or as full tables; words are 1-based.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BuildingDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub gcm: GcmDocument,
    pub chambers: Halves<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior: Option<Halves<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panels: Option<Halves<Vec<PanelEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<Halves<Vec<Vec<Vec<usize>>>>>,
    pub codistance: CodistanceTables,
}

fn word_of(w: &CoxeterElement) -> Vec<usize> {
    w.to_one_based()
}

/// Export with panel lists and both codistance tables.
pub fn export<B: TwinBuildingModel + ?Sized>(b: &B) -> BuildingDocument {
    let sys = b.system();
    let mut panels = Vec::new();
    for sign in Sign::both() {
        let mut list = Vec::new();
        for s in 0..sys.rank() {
            let mut seen = vec![false; b.chamber_count(sign)];
            for c in chambers(b, sign) {
                if seen[c.index] || !b.is_interior(c) {
                    continue;
                }
                let p = b.panel(c, s);
                for &x in &p {
                    seen[x] = true;
                }
                list.push(PanelEntry {
                    generator: s + 1,
                    chambers: p,
                });
            }
        }
        panels.push(list);
    }
    let minus_panels = panels.pop().expect("two halves");
    let plus_panels = panels.pop().expect("two halves");
    let cod = |near: Sign| -> Vec<Vec<Vec<usize>>> {
        chambers(b, near)
            .map(|x| {
                chambers(b, near.opposite())
                    .map(|y| word_of(&b.codistance(x, y)))
                    .collect()
            })
            .collect()
    };
    let labels = |sign| chambers(b, sign).map(|c| b.label(c)).collect();
    let interior = |sign| chambers(b, sign).map(|c| b.is_interior(c)).collect();
    let truncated = b.is_truncated();
    BuildingDocument {
        name: Some(b.name()),
        gcm: sys.cartan().to_document(),
        chambers: Halves {
            plus: labels(Sign::Plus),
            minus: labels(Sign::Minus),
        },
        interior: truncated.then(|| Halves {
            plus: interior(Sign::Plus),
            minus: interior(Sign::Minus),
        }),
        distance: truncated.then(|| Halves {
            plus: dist_table(b, Sign::Plus),
            minus: dist_table(b, Sign::Minus),
        }),
        panels: Some(Halves {
            plus: plus_panels,
            minus: minus_panels,
        }),
        codistance: CodistanceTables {
            plus_minus: cod(Sign::Plus),
            minus_plus: cod(Sign::Minus),
        },
    }
}

fn dist_table<B: TwinBuildingModel + ?Sized>(b: &B, sign: Sign) -> Vec<Vec<Vec<usize>>> {
    (0..b.chamber_count(sign))
        .map(|x| {
            (0..b.chamber_count(sign))
                .map(|y| word_of(&b.distance(sign, x, y)))
                .collect()
        })
        .collect()
}

fn parse_word(sys: &CoxeterSystem, word: &[usize]) -> Result<CoxeterElement, BuildingError> {
    sys.parse_one_based(word)
        .map_err(|e| BuildingError::Format(e.to_string()))
}

fn parse_table(sys: &CoxeterSystem, rows: &[Vec<Vec<usize>>]) -> Result<Vec<Vec<CoxeterElement>>, BuildingError> {
    rows.iter()
        .map(|r| r.iter().map(|w| parse_word(sys, w)).collect())
        .collect()
}

/// Distances from minimal galleries in the panel graph.
fn distances_from_panels(
    sys: &CoxeterSystem,
    n: usize,
    panels: &[PanelEntry],
) -> Result<Vec<Vec<CoxeterElement>>, BuildingError> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for p in panels {
        if p.generator == 0 || p.generator > sys.rank() {
            return Err(BuildingError::Format(format!("panel type {}", p.generator)));
        }
        for &x in &p.chambers {
            if x >= n {
                return Err(BuildingError::Format(format!("panel chamber {x} out of range")));
            }
            for &y in &p.chambers {
                if x != y {
                    adj[x].push((p.generator - 1, y));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for x in 0..n {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[x] = Some(Vec::new());
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            let base = words[y].clone().expect("visited");
            for &(s, z) in &adj[y] {
                if words[z].is_none() {
                    let mut w = base.clone();
                    w.push(s);
                    words[z] = Some(w);
                    queue.push_back(z);
                }
            }
        }
        let row = words
            .into_iter()
            .enumerate()
            .map(|(y, w)| {
                let w =
                    w.ok_or_else(|| BuildingError::Format(format!("chambers {x} and {y} are not gallery-connected")))?;
                sys.normal_form(&w).map_err(|e| BuildingError::Format(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    Ok(out)
}

pub fn import(doc: &BuildingDocument) -> Result<TableBuilding, BuildingError> {
    let gcm = Gcm::from_document(&doc.gcm).map_err(|e| BuildingError::Format(e.to_string()))?;
    let sys = CoxeterSystem::from_gcm(gcm);
    let n = [doc.chambers.plus.len(), doc.chambers.minus.len()];
    let dist = match (&doc.distance, &doc.panels) {
        (Some(d), _) => [parse_table(&sys, &d.plus)?, parse_table(&sys, &d.minus)?],
        (None, Some(p)) => [
            distances_from_panels(&sys, n[0], &p.plus)?,
            distances_from_panels(&sys, n[1], &p.minus)?,
        ],
        (None, None) => return Err(BuildingError::Format("need panels or distance tables".into())),
    };
    let cod = [
        parse_table(&sys, &doc.codistance.plus_minus)?,
        parse_table(&sys, &doc.codistance.minus_plus)?,
    ];
    let interior = match &doc.interior {
        Some(h) => {
            if h.plus.len() != n[0] || h.minus.len() != n[1] {
                return Err(BuildingError::Format("interior flags shape".into()));
            }
            [h.plus.clone(), h.minus.clone()]
        }
        None => [vec![true; n[0]], vec![true; n[1]]],
    };
    TableBuilding::from_parts(
        doc.name.clone().unwrap_or_else(|| "table".into()),
        sys,
        [doc.chambers.plus.clone(), doc.chambers.minus.clone()],
        interior,
        dist,
        cod,
    )
}

pub fn export_json<B: TwinBuildingModel + ?Sized>(b: &B) -> String {
    serde_json::to_string_pretty(&export(b)).expect("serializable")
}

pub fn import_json(text: &str) -> Result<TableBuilding, BuildingError> {
    let doc: BuildingDocument = serde_json::from_str(text).map_err(|e| BuildingError::Format(e.to_string()))?;
    import(&doc)
}

/// Chamber lookup by label.
pub fn find_label<B: TwinBuildingModel + ?Sized>(b: &B, sign: Sign, label: &str) -> Option<Chamber> {
    chambers(b, sign).find(|&c| b.label(c) == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thin::ThinTwinBuilding;

    #[test]
    fn round_trip_through_panels() {
        let b = ThinTwinBuilding::new(CoxeterSystem::named("B2").unwrap(), 4);
        let doc = export(&b);
        assert!(doc.distance.is_none());
        let t = import_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        for sign in Sign::both() {
            for x in 0..8 {
                for y in 0..8 {
                    assert_eq!(t.distance(sign, x, y), b.distance(sign, x, y));
                }
            }
        }
        assert_eq!(export(&t).codistance, doc.codistance);
    }

    #[test]
    fn truncated_export_keeps_tables() {
        let b = ThinTwinBuilding::new(CoxeterSystem::named("A1~").unwrap(), 3);
        let t = import(&export(&b)).unwrap();
        assert!(t.is_truncated());
        assert_eq!(t.distance(Sign::Plus, 1, 2), b.distance(Sign::Plus, 1, 2));
    }
}
