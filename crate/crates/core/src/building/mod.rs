//! Twin buildings over finite (or length-capped) chamber sets.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterSystem};

pub mod axioms;
pub mod census;
pub mod io;
pub mod panel_mul;
pub mod projection;
pub mod properties;
pub mod strata;
mod table;

pub use table::TableBuilding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("no interior chamber in the enumerated region")]
    RegionTooSmall,
    #[error("model is not a twin building: {0}")]
    NotABuilding(String),
    #[error("residue of type {0:?} is not spherical")]
    NotSpherical(Vec<usize>),
    #[error("chambers {0} and {1} are not opposite")]
    NotOpposite(String, String),
    #[error("chamber {0} is not in the twin apartment")]
    NotInApartment(String),
    #[error("bad geometry: {0}")]
    BadGeometry(String),
    #[error("chamber {0} has the wrong sign for this operation")]
    WrongSign(String),
    #[error("chamber index {index} out of range ({count} chambers)")]
    ChamberOutOfRange { index: usize, count: usize },
    #[error("generator {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("malformed building document: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    pub fn slot(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chamber {
    pub sign: Sign,
    pub index: usize,
}

impl Chamber {
    pub fn new(sign: Sign, index: usize) -> Chamber {
        Chamber { sign, index }
    }

    pub fn plus(index: usize) -> Chamber {
        Chamber::new(Sign::Plus, index)
    }

    pub fn minus(index: usize) -> Chamber {
        Chamber::new(Sign::Minus, index)
    }
}

/// The capability every twin-building model exposes.
///
/// Chambers of each half are indexed `0..chamber_count(sign)`.
pub trait TwinBuildingModel: Sync {
    fn name(&self) -> String;

    fn system(&self) -> &CoxeterSystem;

    fn chamber_count(&self, sign: Sign) -> usize;

    /// `delta_sign(x, y)`.
    fn distance(&self, sign: Sign, x: usize, y: usize) -> CoxeterElement;

    /// `delta*(x, y)` for chambers of opposite signs.
    fn codistance(&self, x: Chamber, y: Chamber) -> CoxeterElement;

    /// Chambers whose full neighbourhood lies in the enumerated region.
    fn is_interior(&self, _c: Chamber) -> bool {
        true
    }

    /// Whether the chamber sets are a truncation of an infinite building.
    fn is_truncated(&self) -> bool {
        false
    }

    fn label(&self, c: Chamber) -> String {
        format!("{}{}", c.sign, c.index)
    }

    /// `P_s(c)` including `c`, sorted by index.
    fn panel(&self, c: Chamber, s: usize) -> Vec<usize> {
        (0..self.chamber_count(c.sign))
            .filter(|&y| {
                let d = self.distance(c.sign, c.index, y);
                d.is_identity() || d.letters() == [s as u8]
            })
            .collect()
    }

    /// `delta` or `delta*`, whichever applies.
    fn delta(&self, x: Chamber, y: Chamber) -> CoxeterElement {
        if x.sign == y.sign {
            self.distance(x.sign, x.index, y.index)
        } else {
            self.codistance(x, y)
        }
    }
}

pub fn chambers<B: TwinBuildingModel + ?Sized>(b: &B, sign: Sign) -> impl Iterator<Item = Chamber> {
    (0..b.chamber_count(sign)).map(move |i| Chamber::new(sign, i))
}

pub fn check_chamber<B: TwinBuildingModel + ?Sized>(b: &B, c: Chamber) -> Result<(), BuildingError> {
    let count = b.chamber_count(c.sign);
    if c.index >= count {
        return Err(BuildingError::ChamberOutOfRange { index: c.index, count });
    }
    Ok(())
}

/// A `J`-residue `R_J(c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub sign: Sign,
    pub j: Vec<usize>,
    pub representative: usize,
    pub chambers: Vec<usize>,
}

impl Residue {
    pub fn of<B: TwinBuildingModel + ?Sized>(b: &B, c: Chamber, j: &[usize]) -> Residue {
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        let sys = b.system();
        let chambers = if j.len() == 1 {
            b.panel(c, j[0])
        } else {
            (0..b.chamber_count(c.sign))
                .filter(|&y| sys.in_parabolic(&b.distance(c.sign, c.index, y), &j))
                .collect()
        };
        Residue {
            sign: c.sign,
            j,
            representative: c.index,
            chambers,
        }
    }

    pub fn panel<B: TwinBuildingModel + ?Sized>(b: &B, c: Chamber, s: usize) -> Residue {
        Residue::of(b, c, &[s])
    }

    pub fn contains(&self, c: Chamber) -> bool {
        c.sign == self.sign && self.chambers.binary_search(&c.index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Chamber> + '_ {
        self.chambers.iter().map(move |&i| Chamber::new(self.sign, i))
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }
}

/// A gallery of a given type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gallery {
    pub word: Vec<usize>,
    pub chambers: Vec<Chamber>,
}

/// Whether every panel (of interior chambers) has at least three chambers.
pub fn is_thick<B: TwinBuildingModel + ?Sized>(b: &B) -> bool {
    panel_sizes(b).into_iter().all(|n| n >= 3)
}

/// Whether every panel (of interior chambers) has exactly two chambers.
pub fn is_thin<B: TwinBuildingModel + ?Sized>(b: &B) -> bool {
    panel_sizes(b).into_iter().all(|n| n == 2)
}

fn panel_sizes<B: TwinBuildingModel + ?Sized>(b: &B) -> Vec<usize> {
    let mut out = Vec::new();
    for sign in Sign::both() {
        for c in chambers(b, sign).filter(|&c| b.is_interior(c)) {
            for s in 0..b.system().rank() {
                out.push(b.panel(c, s).len());
            }
        }
    }
    out
}
