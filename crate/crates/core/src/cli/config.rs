//! Run configuration: a JSON file plus flag and positional overrides, and
//! the models it describes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::building::{io, TableBuilding, TwinBuildingModel};
use crate::cartan::{Gcm, GcmDocument};
use crate::coxeter::CoxeterSystem;
use crate::kac_moody::{build_algebra, KmAlgebra};
use crate::matrix_groups::{SlGroup, SlTwinBuilding};
use crate::thin::ThinTwinBuilding;

/// Default length cap for thin models of infinite Coxeter groups.
pub const DEFAULT_CAP: usize = 5;
/// Default window height for Kac-Moody models.
pub const DEFAULT_HEIGHT: usize = 4;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcm: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dot: bool,
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// `A_2` -> `A2`, `Ã_1` / `A_1~` -> `A1~`.
pub fn normalize_type(name: &str) -> String {
    let mut out: String = name.chars().filter(|&c| c != '_' && c != '\u{303}').collect();
    if out.contains('Ã') {
        out = out.replace('Ã', "A");
        if !out.ends_with('~') {
            out.push('~');
        }
    }
    out
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    /// Positional model words: `thin A_2`, `sl_3 p=2`, `table FILE`,
    /// `kac_moody G_2 H=5`, or `key=value` pairs.
    pub fn apply_words(&mut self, words: &[String]) -> Result<(), InputError> {
        for w in words {
            if let Some((k, v)) = w.split_once('=') {
                let num = || v.parse::<usize>().map_err(|_| bad(format!("bad number in {w}")));
                match k {
                    "n" => self.n = Some(num()?),
                    "p" => self.p = Some(num()? as u32),
                    "H" | "h" | "height" => self.height = Some(num()?),
                    "cap" | "L" => self.cap = Some(num()?),
                    "seed" => self.seed = num()? as u64,
                    "type" => self.cartan_type = Some(v.to_string()),
                    "gcm" => self.gcm = Some(v.into()),
                    _ => return Err(bad(format!("unknown parameter {k}"))),
                }
                continue;
            }
            let lower = w.to_ascii_lowercase();
            let sl_degree = lower.strip_prefix("sl_").or_else(|| lower.strip_prefix("sl"));
            if let Some(n) = sl_degree.filter(|n| n.chars().all(|c| c.is_ascii_digit())) {
                self.model = Some("sl".into());
                if !n.is_empty() {
                    self.n = Some(n.parse().map_err(|_| bad(format!("bad model {w}")))?);
                }
                continue;
            }
            match lower.as_str() {
                "thin" | "table" => {
                    self.model = Some(lower);
                    continue;
                }
                "kac_moody" | "km" => {
                    self.model = Some("kac_moody".into());
                    continue;
                }
                _ => {}
            }
            match self.model.as_deref() {
                Some("table") if self.table.is_none() => self.table = Some(w.into()),
                _ if self.cartan_type.is_none() => self.cartan_type = Some(w.clone()),
                _ => return Err(bad(format!("unexpected argument {w}"))),
            }
        }
        Ok(())
    }

    fn gcm_value(&self) -> Result<Gcm, InputError> {
        if let Some(path) = &self.gcm {
            let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            let doc: GcmDocument = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            return Gcm::from_document(&doc).map_err(|e| bad(e.to_string()));
        }
        let name = self
            .cartan_type
            .as_deref()
            .ok_or_else(|| bad("missing cartan type or --gcm"))?;
        Gcm::named(&normalize_type(name)).map_err(|e| bad(e.to_string()))
    }

    pub fn build(&self) -> Result<Model, InputError> {
        match self.model.as_deref() {
            Some("thin") => {
                let sys = CoxeterSystem::from_gcm(self.gcm_value()?);
                let cap = self
                    .cap
                    .unwrap_or_else(|| sys.longest_element().map_or(DEFAULT_CAP, |w| w.len()));
                Ok(Model::Thin(ThinTwinBuilding::new(sys, cap)))
            }
            Some("sl") => {
                let n = self.n.ok_or_else(|| bad("sl model needs n"))?;
                let p = self.p.ok_or_else(|| bad("sl model needs p"))?;
                let group = SlGroup::new(n, p).map_err(|e| bad(e.to_string()))?;
                Ok(Model::Sl(Box::new(
                    SlTwinBuilding::new(group).map_err(|e| bad(e.to_string()))?,
                )))
            }
            Some("table") => {
                let path = self.table.as_ref().ok_or_else(|| bad("table model needs a file"))?;
                let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
                Ok(Model::Table(io::import_json(&text).map_err(|e| bad(e.to_string()))?))
            }
            Some("kac_moody") => {
                let gcm = self.gcm_value()?;
                let h = self.height.unwrap_or(DEFAULT_HEIGHT);
                let alg = build_algebra(&gcm, h).map_err(|e| bad(e.to_string()))?;
                Ok(Model::KacMoody(Box::new(alg)))
            }
            Some(other) => Err(bad(format!("unknown model {other}"))),
            None => Err(bad("no model given")),
        }
    }
}

pub enum Model {
    Thin(ThinTwinBuilding),
    Sl(Box<SlTwinBuilding>),
    Table(TableBuilding),
    KacMoody(Box<KmAlgebra>),
}

impl Model {
    pub fn building(&self) -> Option<&dyn TwinBuildingModel> {
        match self {
            Model::Thin(b) => Some(b),
            Model::Sl(b) => Some(b.as_ref()),
            Model::Table(b) => Some(b),
            Model::KacMoody(_) => None,
        }
    }
}
