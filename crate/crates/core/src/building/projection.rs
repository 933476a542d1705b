//! Projections, co-projections, twin apartments and retractions.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{chambers, check_chamber, BuildingError, Chamber, Residue, TwinBuildingModel};
use crate::coxeter::CoxeterElement;

/// `proj_R(c)`: the chamber of `R` at minimal distance from `c`.
pub fn proj<B: TwinBuildingModel + ?Sized>(b: &B, r: &Residue, c: Chamber) -> Result<Chamber, BuildingError> {
    check_chamber(b, c)?;
    if c.sign != r.sign {
        return Err(BuildingError::WrongSign(b.label(c)));
    }
    let mut best: Option<(usize, usize)> = None;
    let mut tied = false;
    for d in r.iter() {
        let l = b.distance(c.sign, c.index, d.index).len();
        match best {
            Some((bl, _)) if l > bl => {}
            Some((bl, _)) if l == bl => tied = true,
            _ => {
                best = Some((l, d.index));
                tied = false;
            }
        }
    }
    let (_, d) = best.ok_or_else(|| BuildingError::NotABuilding("empty residue".into()))?;
    if tied {
        return Err(BuildingError::NotABuilding(format!(
            "projection of {} onto residue of {} is not unique",
            b.label(c),
            b.label(Chamber::new(r.sign, r.representative))
        )));
    }
    Ok(Chamber::new(r.sign, d))
}

/// `proj*_R(c)`: the chamber of the spherical residue `R` whose
/// codistance from `c` is Bruhat-maximal.
pub fn coproj<B: TwinBuildingModel + ?Sized>(b: &B, r: &Residue, c: Chamber) -> Result<Chamber, BuildingError> {
    check_chamber(b, c)?;
    if c.sign == r.sign {
        return Err(BuildingError::WrongSign(b.label(c)));
    }
    let sys = b.system();
    if !sys.parabolic_info(&r.j).finite {
        return Err(BuildingError::NotSpherical(r.j.iter().map(|s| s + 1).collect()));
    }
    let values: Vec<(Chamber, CoxeterElement)> = r.iter().map(|d| (d, b.codistance(c, d))).collect();
    let maximal: Vec<Chamber> = values
        .iter()
        .filter(|(_, w)| values.iter().all(|(_, v)| v == w || !sys.bruhat_leq(w, v)))
        .map(|(d, _)| *d)
        .collect();
    match maximal.as_slice() {
        [d] => Ok(*d),
        _ => Err(BuildingError::NotABuilding(format!(
            "co-projection of {} onto residue of {} is not unique ({} maximal chambers)",
            b.label(c),
            b.label(Chamber::new(r.sign, r.representative)),
            maximal.len()
        ))),
    }
}

/// Co-projection onto the panel `P_s(target)`.
pub fn coproj_panel<B: TwinBuildingModel + ?Sized>(
    b: &B,
    target: Chamber,
    s: usize,
    c: Chamber,
) -> Result<Chamber, BuildingError> {
    coproj(b, &Residue::panel(b, target, s), c)
}

#[derive(Debug, Clone, Serialize)]
pub struct TwinApartment {
    pub c: Chamber,
    pub d: Chamber,
    /// Chambers of the half containing `c`, keyed by `delta(c, x)`.
    #[serde(serialize_with = "crate::coxeter::serialize_keyed")]
    pub near: BTreeMap<CoxeterElement, usize>,
    /// Chambers of the half containing `d`, keyed by `delta(d, y)`.
    #[serde(serialize_with = "crate::coxeter::serialize_keyed")]
    pub far: BTreeMap<CoxeterElement, usize>,
}

impl TwinApartment {
    pub fn contains(&self, x: Chamber) -> bool {
        if x.sign == self.c.sign {
            self.near.values().any(|&i| i == x.index)
        } else {
            self.far.values().any(|&i| i == x.index)
        }
    }

    pub fn half(&self, sign: super::Sign) -> Vec<usize> {
        let map = if sign == self.c.sign { &self.near } else { &self.far };
        let mut out: Vec<usize> = map.values().copied().collect();
        out.sort_unstable();
        out
    }

    /// Coordinate of an apartment chamber in the thin model.
    pub fn coordinate(&self, x: Chamber) -> Option<&CoxeterElement> {
        let map = if x.sign == self.c.sign { &self.near } else { &self.far };
        map.iter().find(|(_, &i)| i == x.index).map(|(w, _)| w)
    }
}

/// The twin apartment spanned by the opposite pair `(c, d)`.
pub fn twin_apartment<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c: Chamber,
    d: Chamber,
) -> Result<TwinApartment, BuildingError> {
    check_chamber(b, c)?;
    check_chamber(b, d)?;
    if c.sign == d.sign || !b.codistance(c, d).is_identity() {
        return Err(BuildingError::NotOpposite(b.label(c), b.label(d)));
    }
    let collect = |base: Chamber, other: Chamber| -> Result<BTreeMap<CoxeterElement, usize>, BuildingError> {
        let mut out = BTreeMap::new();
        for x in chambers(b, base.sign) {
            let w = b.distance(base.sign, base.index, x.index);
            if w == b.codistance(other, x) && out.insert(w.clone(), x.index).is_some() {
                return Err(BuildingError::NotABuilding(format!(
                    "two chambers at distance {w} from {} in the apartment",
                    b.label(base)
                )));
            }
        }
        Ok(out)
    };
    let apt = TwinApartment {
        c,
        d,
        near: collect(c, d)?,
        far: collect(d, c)?,
    };
    verify_apartment(b, &apt)?;
    Ok(apt)
}

/// Isometry check against the thin model: coordinates `delta(c, x)` on one
/// half and `delta(d, y)` on the other must reproduce every distance and
/// codistance.
fn verify_apartment<B: TwinBuildingModel + ?Sized>(b: &B, apt: &TwinApartment) -> Result<(), BuildingError> {
    let sys = b.system();
    let fail = |msg: String| Err(BuildingError::NotABuilding(msg));
    if !b.is_truncated() {
        if let Some(order) = sys.parabolic_info(&sys.generators()).order {
            if apt.near.len() as u128 != order || apt.far.len() as u128 != order {
                return fail(format!(
                    "apartment halves have {} and {} chambers, |W| = {order}",
                    apt.near.len(),
                    apt.far.len()
                ));
            }
        }
    }
    let halves = [(apt.c.sign, &apt.near), (apt.d.sign, &apt.far)];
    for (sx, hx) in halves {
        for (u, &x) in hx.iter() {
            let ux = sys.inverse(u);
            for (sy, hy) in halves {
                for (v, &y) in hy.iter() {
                    let expected = sys.multiply(&ux, v);
                    let got = b.delta(Chamber::new(sx, x), Chamber::new(sy, y));
                    if got != expected {
                        return fail(format!(
                            "apartment is not isometric to the thin model at ({}, {})",
                            b.label(Chamber::new(sx, x)),
                            b.label(Chamber::new(sy, y))
                        ));
                    }
                }
            }
        }
    }
    // each chamber is opposite exactly one chamber of the other half
    for (sx, hx) in halves {
        let (sy, hy) = if sx == apt.c.sign { halves[1] } else { halves[0] };
        for &x in hx.values() {
            let opposite = hy
                .values()
                .filter(|&&y| b.codistance(Chamber::new(sx, x), Chamber::new(sy, y)).is_identity())
                .count();
            if opposite != 1 {
                return fail(format!(
                    "{} has {opposite} opposites in the apartment",
                    b.label(Chamber::new(sx, x))
                ));
            }
        }
    }
    Ok(())
}

/// `rho_{c, Sigma}(x)`.
pub fn retraction<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c: Chamber,
    apt: &TwinApartment,
    x: Chamber,
) -> Result<Chamber, BuildingError> {
    check_chamber(b, x)?;
    if !apt.contains(c) {
        return Err(BuildingError::NotInApartment(b.label(c)));
    }
    let target = b.delta(c, x);
    let candidates: Vec<usize> = apt
        .half(x.sign)
        .into_iter()
        .filter(|&y| b.delta(c, Chamber::new(x.sign, y)) == target)
        .collect();
    match candidates.as_slice() {
        [y] => Ok(Chamber::new(x.sign, *y)),
        _ => Err(BuildingError::NotABuilding(format!(
            "{} apartment chambers match delta = {target} from {}",
            candidates.len(),
            b.label(c)
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RetractionReport {
    pub centre: String,
    pub pairs: u64,
    /// `delta(rho d, rho e) <= delta(d, e)` on each half.
    pub distance_decreasing: bool,
    /// `delta*(rho d, rho e) <= delta*(d, e)` across halves.
    pub codistance_decreasing: bool,
    /// `delta*(rho d, rho e) >= delta*(d, e)` across halves.
    pub codistance_increasing: bool,
    pub preserves_distance_from_centre: bool,
    pub counterexample: Option<Vec<String>>,
}

/// Evaluate the monotonicity properties of a retraction exhaustively.
pub fn check_retraction<B: TwinBuildingModel + ?Sized>(
    b: &B,
    c: Chamber,
    apt: &TwinApartment,
) -> Result<RetractionReport, BuildingError> {
    let sys = b.system();
    let all: Vec<Chamber> = super::Sign::both().into_iter().flat_map(|s| chambers(b, s)).collect();
    let rho: Vec<Chamber> = all
        .iter()
        .map(|&x| retraction(b, c, apt, x))
        .collect::<Result<_, _>>()?;
    let mut report = RetractionReport {
        centre: b.label(c),
        pairs: 0,
        distance_decreasing: true,
        codistance_decreasing: true,
        codistance_increasing: true,
        preserves_distance_from_centre: true,
        counterexample: None,
    };
    for (i, &x) in all.iter().enumerate() {
        if b.delta(c, x) != b.delta(c, rho[i]) {
            report.preserves_distance_from_centre = false;
        }
        for (j, &y) in all.iter().enumerate() {
            report.pairs += 1;
            let before = b.delta(x, y);
            let after = b.delta(rho[i], rho[j]);
            if x.sign == y.sign {
                if !sys.bruhat_leq(&after, &before) {
                    report.distance_decreasing = false;
                    report
                        .counterexample
                        .get_or_insert_with(|| vec![b.label(x), b.label(y)]);
                }
            } else {
                if !sys.bruhat_leq(&after, &before) {
                    report.codistance_decreasing = false;
                }
                if !sys.bruhat_leq(&before, &after) {
                    report.codistance_increasing = false;
                }
            }
        }
    }
    Ok(report)
}

/// Brute-force projection used as an independent check: all chambers of
/// `R` at minimal distance.
pub fn proj_candidates<B: TwinBuildingModel + ?Sized>(b: &B, r: &Residue, c: Chamber) -> Vec<Chamber> {
    let lens: Vec<(Chamber, usize)> = r
        .iter()
        .map(|d| (d, b.distance(c.sign, c.index, d.index).len()))
        .collect();
    let min = lens.iter().map(|x| x.1).min().unwrap_or(0);
    lens.into_iter().filter(|x| x.1 == min).map(|x| x.0).collect()
}

/// Distinct codistance values from `c` into `R`.
pub fn codistance_values<B: TwinBuildingModel + ?Sized>(b: &B, r: &Residue, c: Chamber) -> HashSet<CoxeterElement> {
    r.iter().map(|d| b.codistance(c, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::Sign;
    use crate::coxeter::CoxeterSystem;
    use crate::thin::ThinTwinBuilding;

    fn thin_a2() -> ThinTwinBuilding {
        ThinTwinBuilding::new(CoxeterSystem::named("A2").unwrap(), 3)
    }

    #[test]
    fn proj_examples() {
        let b = thin_a2();
        let sys = b.system().clone();
        let e = b.chamber_of(Sign::Plus, &sys.identity()).unwrap();
        let w12 = b
            .chamber_of(Sign::Plus, &sys.parse_one_based(&[1, 2]).unwrap())
            .unwrap();
        let r = Residue::panel(&b, w12, 0);
        assert_eq!(r.len(), 2);
        assert_eq!(proj(&b, &r, e).unwrap(), w12);
        assert_eq!(proj(&b, &r, w12).unwrap(), w12);
    }

    #[test]
    fn coproj_examples() {
        let b = thin_a2();
        let sys = b.system().clone();
        let e_plus = b.chamber_of(Sign::Plus, &sys.identity()).unwrap();
        let e_minus = b.chamber_of(Sign::Minus, &sys.identity()).unwrap();
        let s1 = b.chamber_of(Sign::Minus, &sys.generator(0)).unwrap();
        let r = Residue::panel(&b, e_minus, 0);
        assert_eq!(coproj(&b, &r, e_plus).unwrap(), s1);
        let point = Residue::of(&b, e_minus, &[]);
        assert_eq!(coproj(&b, &point, e_plus).unwrap(), e_minus);
    }

    #[test]
    fn thin_apartment_is_everything() {
        let b = thin_a2();
        let apt = twin_apartment(&b, Chamber::plus(0), Chamber::minus(0)).unwrap();
        assert_eq!(apt.near.len(), 6);
        assert_eq!(apt.far.len(), 6);
        for x in chambers(&b, Sign::Minus) {
            assert_eq!(retraction(&b, Chamber::plus(0), &apt, x).unwrap(), x);
        }
        assert!(matches!(
            twin_apartment(&b, Chamber::plus(0), Chamber::minus(1)),
            Err(BuildingError::NotOpposite(..))
        ));
    }
}
