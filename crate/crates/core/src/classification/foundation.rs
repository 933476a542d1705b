//! Collapse of a twin building along a chamber: the rank-2 residues at
//! that chamber with their types.

use serde::Serialize;

use crate::building::{check_chamber, Chamber, Residue, TwinBuildingModel};
use crate::cartan::{CoxeterLabel, Gcm};

use super::{ClassificationError, DynkinTree, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundationEdge {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    /// Sizes of the `i`- and `j`-panels at the base chamber.
    pub panel_sizes: [usize; 2],
    pub residue_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrow: Option<[usize; 2]>,
    /// Gluing maps are not modelled.
    pub gluing: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundationDescriptor {
    pub model: String,
    pub base: String,
    pub rank: usize,
    pub edges: Vec<FoundationEdge>,
}

impl FoundationDescriptor {
    /// Residue types only, without the base chamber.
    pub fn types(&self) -> Vec<FoundationEdge> {
        self.edges.clone()
    }

    /// The Dynkin tree of the foundation when every 4- and 6-edge is oriented.
    pub fn dynkin_tree(&self) -> Result<DynkinTree, ClassificationError> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: e.i,
                v: e.j,
                label: e.m,
                arrow: e.arrow,
            })
            .collect();
        DynkinTree::new(self.rank, edges)
    }
}

/// Collapse `b` along `c`. Orientations of 4- and 6-edges are read from
/// `orientation` when given (arrow `i -> j` when `a_ij = -1`).
pub fn collapse_foundation<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c: Chamber,
    orientation: Option<&Gcm>,
) -> Result<FoundationDescriptor, ClassificationError> {
    check_chamber(b, c)?;
    let sys = b.system();
    let n = sys.rank();
    let panels: Vec<usize> = (0..n).map(|s| b.panel(c, s).len()).collect();
    if let Some(&small) = panels.iter().find(|&&size| size < 3) {
        return Err(ClassificationError::NotThick(small));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = match sys.matrix().m(i, j) {
                CoxeterLabel::Finite(2) => continue,
                CoxeterLabel::Finite(m) => m,
                CoxeterLabel::Infinite => return Err(ClassificationError::NotTwoSpherical { i, j, product: 4 }),
            };
            let arrow = match (m, orientation) {
                (4 | 6, Some(a)) if a.entry(i, j) == -1 && a.entry(j, i) != -1 => Some([i, j]),
                (4 | 6, Some(a)) if a.entry(j, i) == -1 && a.entry(i, j) != -1 => Some([j, i]),
                _ => None,
            };
            edges.push(FoundationEdge {
                i,
                j,
                m,
                panel_sizes: [panels[i], panels[j]],
                residue_size: Residue::of(b, c, &[i, j]).len(),
                arrow,
                gluing: "identity",
            });
        }
    }
    Ok(FoundationDescriptor {
        model: b.name(),
        base: b.label(c),
        rank: n,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{chambers, Sign};
    use crate::coxeter::CoxeterSystem;
    use crate::matrix_groups::{SlGroup, SlTwinBuilding};
    use crate::thin::ThinTwinBuilding;

    #[test]
    fn sl3_f2_collapses_to_one_edge() {
        let b = SlTwinBuilding::new(SlGroup::new(3, 2).unwrap()).unwrap();
        let first = collapse_foundation(&b, Chamber::plus(0), None).unwrap();
        assert_eq!(first.edges.len(), 1);
        assert_eq!(first.edges[0].m, 3);
        assert_eq!(first.edges[0].panel_sizes, [3, 3]);
        assert_eq!(first.edges[0].residue_size, 21);
        for sign in Sign::both() {
            for c in chambers(&b, sign) {
                assert_eq!(collapse_foundation(&b, c, None).unwrap().types(), first.types());
            }
        }
    }

    #[test]
    fn rank_one_and_thin() {
        let b = SlTwinBuilding::new(SlGroup::new(2, 3).unwrap()).unwrap();
        assert!(collapse_foundation(&b, Chamber::plus(0), None)
            .unwrap()
            .edges
            .is_empty());
        let thin = ThinTwinBuilding::new(CoxeterSystem::named("A2").unwrap(), 5);
        assert!(matches!(
            collapse_foundation(&thin, Chamber::plus(0), None),
            Err(ClassificationError::NotThick(2))
        ));
    }
}
